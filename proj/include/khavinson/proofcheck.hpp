#pragma once

// Numerical verification of the identities and inequalities behind the
// n = 4 sharp gradient bound. Every case is a pair of scalar functions on a
// box of parameters; derivative cases compare a finite-difference derivative
// of lhs with rhs, pointwise cases compare lhs with rhs directly.

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "khavinson/poisson_oracle.hpp"
#include "khavinson/quadrature.hpp"

namespace khav::proofcheck {

enum class CaseKind { derivative_of_equals, pointwise_equal, pointwise_leq };
enum class Spacing { uniform, log };
enum class Role { required, probe };
enum class Verdict { pass, fail, exploratory };

const char* to_string(CaseKind k) noexcept;
const char* to_string(Role r) noexcept;
const char* to_string(Verdict v) noexcept;

struct ParamRange {
    std::string name;
    double lo;
    double hi;
    Spacing spacing = Spacing::uniform;
};

using ScalarFn = std::function<double(std::span<const double>)>;

struct IdentityCase {
    std::string name;
    std::string anchor;  // which display of the argument the case encodes
    CaseKind kind = CaseKind::pointwise_equal;
    ScalarFn lhs;
    ScalarFn rhs;
    std::vector<ParamRange> domain;
    std::size_t wrt = 0;     // derivative variable (derivative_of_equals only)
    double tolerance = 1e-7;
    Role role = Role::required;
    std::string convention;  // empty unless the case depends on a sign convention
    bool strict = false;     // pointwise_leq: demand lhs < rhs
    bool swapped = false;    // evaluate rhs against lhs (changes signs only)
    std::size_t samples = 1024;         // quasi-random points (equal / derivative)
    std::size_t grid_per_axis = 100;    // tensor grid size (leq)

    /// Throws DomainError for an empty or inverted box, a log axis touching
    /// zero, a missing handle or wrt outside the box.
    void validate() const;
};

struct VerificationReport {
    std::string case_name;
    std::string anchor;
    std::string kind;
    std::string sample;  // description of the sample / grid
    double worst_violation = 0.0;  // magnitude for equalities, signed for inequalities
    double worst_signed = 0.0;     // equalities: signed deviation at the worst point
    std::vector<std::pair<std::string, double>> location;
    double tolerance = 0.0;
    Verdict verdict = Verdict::pass;
    Role role = Role::required;
    std::uint64_t seed = 0;
    std::string method;
    std::string convention;
    std::string note;

    bool pass() const noexcept { return verdict != Verdict::fail; }
};

/// Thrown when lhs or rhs is not finite (or throws) at a sample point.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(std::string case_name, std::vector<std::pair<std::string, double>> at);
    const std::vector<std::pair<std::string, double>>& location() const noexcept { return at_; }

private:
    std::vector<std::pair<std::string, double>> at_;
};

struct StepPolicy {
    /// Base step h = rel_step * max(|x|, 1); Richardson combines h and h/2.
    /// Zero selects cbrt(eps).
    double rel_step = 0.0;
};

/// Richardson-extrapolated central difference of f along coordinate i.
double richardson_derivative(const ScalarFn& f, std::span<const double> x, std::size_t i,
                             double rel_step);

/// Halton point `index` in [0,1)^dim (bases 2, 3, 5, 7, 11, 13).
std::vector<double> halton(std::uint64_t index, std::size_t dim);

/// Deviation |D lhs - rhs| / max(1, |D lhs|, |rhs|), worst over `samples`
/// Halton points starting at index seed + 1.
VerificationReport check_derivative_identity(const IdentityCase& c, StepPolicy step = {},
                                             std::uint64_t seed = 0);

/// Pointwise equality: |lhs - rhs| / max(1, |lhs|, |rhs|) over Halton points.
VerificationReport check_pointwise_equal(const IdentityCase& c, std::uint64_t seed = 0);

/// Inequality lhs <= rhs on the tensor grid: violation (lhs - rhs) / max(1, |rhs|),
/// positive when violated.
VerificationReport check_inequality(const IdentityCase& c);

/// Dispatch on c.kind.
VerificationReport run_case(const IdentityCase& c, std::uint64_t seed = 0);

// Registries. Names are stable; the documented counts are asserted by tests.
std::vector<IdentityCase> derivative_cases();
std::vector<IdentityCase> pointwise_cases();
std::vector<IdentityCase> inequality_cases();
std::vector<IdentityCase> chain_cases();

inline constexpr std::size_t kDerivativeRequired = 11;
inline constexpr std::size_t kDerivativeProbes = 1;
inline constexpr std::size_t kPointwiseRequired = 8;
inline constexpr std::size_t kPointwiseProbes = 1;
inline constexpr std::size_t kInequalityCases = 13;
inline constexpr std::size_t kChainCases = 8;

struct SupResult {
    double z_star;
    double c_star;
    double z_max;  // after auto-expansion
    double error;  // bound on the error of c_star (0 for the closed form)
};

/// Maximizes C(z, r) over [0, z_max]: 512-point grid (z = 0 plus a log grid
/// from z_max * 1e-8), golden-section refinement around the best node, and the
/// endpoints. z_max is doubled until C(z_max) < C(0)/2 or the tail has
/// flattened below C(0) (see README); BracketError otherwise. n = 4 uses the
/// closed form, other n the quadrature representation.
SupResult locate_sup(double r, int n, double z_max, const kernelint::QuadratureSpec& q);

/// n = 4: pass iff theta = 0 maximizes within quadrature error at every radius.
/// n = 2: pass iff the profile is flat to 1e-5 relative. Other n: exploratory.
VerificationReport conjecture_report(int n, std::span<const double> r_grid,
                                     std::span<const double> theta_grid,
                                     const oracle::SphereQuadrature& sq);

/// r_j = j / (steps + 1), j = 1..steps.
std::vector<double> radius_grid(int steps);
/// theta_j = j (pi/2) / (steps - 1), j = 0..steps-1 (steps >= 2).
std::vector<double> theta_grid(int steps);

struct SuiteOptions {
    int n = 4;
    double tol = 1e-7;  // derivative identities
    std::uint64_t seed = 0;
    int r_steps = 19;
    int theta_steps = 50;
    oracle::SphereQuadrature sphere{};
};

enum class Suite { identities, lemmas, sup, conjecture, oracle };

const char* to_string(Suite s) noexcept;
/// Throws DomainError for an unknown name.
Suite parse_suite(const std::string& name);

std::vector<VerificationReport> run_suite(Suite s, const SuiteOptions& opts);

}  // namespace khav::proofcheck
