#pragma once

#include <vector>

namespace ineqforge::chains {

// Piecewise cubic Hermite interpolant on strictly increasing nodes. When the data are
// monotone, Fritsch-Carlson limiting keeps the interpolant monotone.
class HermiteTable {
public:
    HermiteTable() = default;
    HermiteTable(std::vector<double> x, std::vector<double> y, std::vector<double> dy);

    bool empty() const { return x_.empty(); }
    double lo() const { return x_.front(); }
    double hi() const { return x_.back(); }
    std::size_t size() const { return x_.size(); }

    double value(double t) const;
    double derivative(double t) const;

private:
    std::size_t cell(double t) const;

    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> dy_;
};

}  // namespace ineqforge::chains
