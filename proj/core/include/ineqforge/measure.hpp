#pragma once

namespace ineqforge::radial {

enum class MeasureKind { Lebesgue, Gaussian, PowerLaw, PowerLawKelvin };

// Radial density rho(r) of a rotationally invariant measure on R^d, surface factor included.
//   Lebesgue        sigma r^{d-1}
//   Gaussian        (2 pi)^{-d/2} e^{-r^2/2} sigma r^{d-1}
//   PowerLaw        (1+r^2)^alpha sigma r^{d-1}
//   PowerLawKelvin  r^{-2 alpha} (1+r^2)^alpha sigma r^{d-1}
class MeasureSpec {
public:
    static MeasureSpec lebesgue(int d);
    static MeasureSpec gaussian(int d);
    static MeasureSpec power_law(int d, double alpha);
    static MeasureSpec power_law_kelvin(int d, double alpha);

    MeasureKind kind() const { return kind_; }
    int dimension() const { return d_; }
    double alpha() const { return alpha_; }
    double sphere_area() const { return sigma_; }

    double density(double r) const;

    // Upper bound on the integral of rho over [R, inf); +inf when no bound is available.
    double tail_bound(double R) const;

private:
    MeasureSpec(MeasureKind kind, int d, double alpha);

    MeasureKind kind_;
    int d_;
    double alpha_;
    double sigma_;
};

// |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2).
double sphere_area(int d);

}  // namespace ineqforge::radial
