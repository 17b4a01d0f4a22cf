#include "ineqforge/interp.hpp"

#include <algorithm>
#include <cmath>

#include "ineqforge/errors.hpp"

namespace ineqforge::chains {

HermiteTable::HermiteTable(std::vector<double> x, std::vector<double> y, std::vector<double> dy)
    : x_(std::move(x)), y_(std::move(y)), dy_(std::move(dy)) {
    if (x_.size() < 2 || y_.size() != x_.size() || dy_.size() != x_.size()) {
        throw ParameterError("Hermite table needs >= 2 nodes with matching data");
    }
    for (std::size_t i = 1; i < x_.size(); ++i) {
        if (!(x_[i] > x_[i - 1])) throw ParameterError("Hermite nodes must increase strictly");
    }
    bool increasing = true;
    bool decreasing = true;
    for (std::size_t i = 1; i < y_.size(); ++i) {
        increasing = increasing && y_[i] >= y_[i - 1];
        decreasing = decreasing && y_[i] <= y_[i - 1];
    }
    if (!increasing && !decreasing) return;
    // Fritsch-Carlson limiter.
    for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
        const double slope = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
        if (slope == 0.0) {
            dy_[i] = 0.0;
            dy_[i + 1] = 0.0;
            continue;
        }
        double a = dy_[i] / slope;
        double b = dy_[i + 1] / slope;
        if (a < 0.0) dy_[i] = a = 0.0;
        if (b < 0.0) dy_[i + 1] = b = 0.0;
        const double r2 = a * a + b * b;
        if (r2 > 9.0) {
            const double tau = 3.0 / std::sqrt(r2);
            dy_[i] = tau * a * slope;
            dy_[i + 1] = tau * b * slope;
        }
    }
}

std::size_t HermiteTable::cell(double t) const {
    if (empty()) throw InitializationError("interpolation table not built");
    if (t < x_.front() || t > x_.back()) {
        throw DomainError("table argument " + std::to_string(t) + " outside [" +
                          std::to_string(x_.front()) + ", " + std::to_string(x_.back()) + "]");
    }
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    if (i == 0) i = 1;
    if (i >= x_.size()) i = x_.size() - 1;
    return i - 1;
}

double HermiteTable::value(double t) const {
    const std::size_t i = cell(t);
    const double h = x_[i + 1] - x_[i];
    const double s = (t - x_[i]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y_[i] + (s3 - 2 * s2 + s) * h * dy_[i] +
           (-2 * s3 + 3 * s2) * y_[i + 1] + (s3 - s2) * h * dy_[i + 1];
}

double HermiteTable::derivative(double t) const {
    const std::size_t i = cell(t);
    const double h = x_[i + 1] - x_[i];
    const double s = (t - x_[i]) / h;
    const double s2 = s * s;
    return ((6 * s2 - 6 * s) * y_[i] + (-6 * s2 + 6 * s) * y_[i + 1]) / h +
           (3 * s2 - 4 * s + 1) * dy_[i] + (3 * s2 - 2 * s) * dy_[i + 1];
}

}  // namespace ineqforge::chains
