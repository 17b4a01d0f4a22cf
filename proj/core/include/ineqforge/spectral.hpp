#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ineqforge/tridiagonal.hpp"
#include "ineqforge/weight_chain.hpp"

namespace ineqforge::spectral {

// Radial domain [r_in, r_out], stored as log radii so that Hardy depths far below the smallest
// double stay representable.
struct Domain {
    double log_r_in = 0.0;
    double log_r_out = 0.0;

    static Domain radii(double r_in, double r_out);
    static Domain log_radii(double log_r_in, double log_r_out) { return {log_r_in, log_r_out}; }
    double r_in() const;
    double r_out() const;
    bool operator==(const Domain&) const = default;
};

struct AssemblyOptions {
    int N = 0;
    double inflation = 0.0;
    chains::RhsConvention conv = chains::RhsConvention::Remainder;
    int ell = 0;
    // Gaussian families only: extra right-hand side terms extra_r2 |x|^2 u^2 + extra_const u^2.
    double extra_r2 = 0.0;
    double extra_const = 0.0;
    bool include_chain = true;
    bool operator==(const AssemblyOptions&) const = default;
};

// Hardy forms live in w = r^{(d-2)/2} u and x = log r; gaussian and d >= 3 Hardy-Poincaré
// forms in the ground-state variable v and x = r; the exterior form J in u and x = r.
Coordinate coordinate_for(const chains::FamilyTag& family);

// Throws DomainError when the domain leaves the family's validity region.
void check_domain(const chains::WeightChain& chain, const Domain& domain);
Domain default_domain(const chains::WeightChain& chain);

// Nodes in the family coordinate: geometric in a - log r (Hardy) or in r (others).
std::vector<double> default_grid(const chains::WeightChain& chain, const Domain& domain, int nodes);

RadialForm reduced_form(const chains::WeightChain& chain, const AssemblyOptions& opts);

TridiagonalSystem assemble(const chains::WeightChain& chain, const Domain& domain,
                           std::vector<double> grid, const AssemblyOptions& opts);

enum class Verdict { Verified, Falsified, Inconclusive };
std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct Refinement {
    Domain domain;
    int nodes = 0;
    double lambda_min = 0.0;
    double tolerance = 0.0;
    double dirichlet = 0.0;
    double potential = 0.0;
    bool operator==(const Refinement&) const = default;
};

struct Witness {
    Coordinate coordinate = Coordinate::Linear;
    std::vector<double> nodes;   // all grid nodes, ends included
    std::vector<double> values;  // reduced variable, zero at both ends
    double q_discrete = 0.0;
    double q_quadrature = 0.0;
    double scale = 0.0;
    bool valid = false;
    bool operator==(const Witness&) const = default;
};

struct VerificationReport {
    chains::FamilyTag family;
    AssemblyOptions options;
    Domain domain;
    Coordinate coordinate = Coordinate::Linear;
    int grid_size = 0;
    double lambda_min = 0.0;
    double tolerance = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<Refinement> refinements;
    std::optional<Witness> witness;
    std::string note;
    bool operator==(const VerificationReport&) const = default;
};

// Verdict tolerance at a normalised minimiser: max(1e-6 (D + |P|), 16 eps G).
double verdict_tolerance(const TridiagonalSystem& t, const FormParts& parts);

// Re-evaluates the reduced form on the P1 interpolant of v by adaptive quadrature per element.
Witness make_witness(const chains::WeightChain& chain, const TridiagonalSystem& t,
                     const std::vector<double>& v, const AssemblyOptions& opts);

Refinement solve(const chains::WeightChain& chain, const Domain& domain, int nodes,
                 const AssemblyOptions& opts, std::vector<double>* minimiser = nullptr,
                 TridiagonalSystem* system = nullptr);

// Verified iff lambda_min >= -tol at every refinement. At least 3 refinements.
VerificationReport verify_inequality(const chains::WeightChain& chain, const Domain& domain,
                                     const AssemblyOptions& opts,
                                     const std::vector<int>& schedule = {1000, 2000, 4000});

// Domains marching toward the singular limit: Hardy log-depths from 16 doubling to 1e6,
// r_out from 25 growing by 4 up to 1e8, and r_in down to 1e-14 for the exterior form.
std::vector<Domain> falsification_schedule(const chains::WeightChain& chain);

// Steps run concurrently (see concurrency()); the first falsifying step in schedule order wins.
VerificationReport falsify_inflation(const chains::WeightChain& chain, const AssemblyOptions& opts,
                                     const std::vector<Domain>& schedule, int nodes = 4000);
VerificationReport falsify_inflation(const chains::WeightChain& chain, const AssemblyOptions& opts);

// INEQ_FORGE_THREADS when set, else the hardware count.
int concurrency();

enum class ProbeVerdict { WithinOptimal, ExceedsOptimal, Inconclusive };
std::string to_string(ProbeVerdict v);

struct ProbeOptions {
    double t_start = 0.0;  // <= 0: family default
    double t_end = 0.0;
    int samples = 40;
    int fit_points = 10;
};

// Ratio (W - sum_{j<k} W_j) / W_k for Hardy and d = 2 chains and
// (W - sum_{j=1}^k W_j) / prod_{j<=k} Y_j for the product-remainder families, sampled on a
// geometric t-grid toward 0 and extrapolated in xi = (level k+1 term)/(level k term), or in
// max(xi, 1 - prod Y_j) for the product families.
struct RemainderProbe {
    chains::FamilyTag family;
    int k = 0;
    std::vector<double> t;
    std::vector<double> xi;
    std::vector<double> ratio;
    double limit = 0.0;
    double uncertainty = 0.0;
    ProbeVerdict verdict = ProbeVerdict::Inconclusive;
};

RemainderProbe remainder_probe(const chains::WeightChain& chain,
                               const std::function<double(double)>& candidate, int k,
                               const ProbeOptions& opts = {});

// sum_{j<=N} W_j(t) in the literal indexing.
std::function<double(double)> partial_sum_candidate(const chains::WeightChain& chain, int N);

}  // namespace ineqforge::spectral
