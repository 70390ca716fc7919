#pragma once

// Brute-force directional gradient constants for bounded harmonic functions
// in the unit ball B^n:
//
//   C(x, v) = int_{S^{n-1}} |<grad_x P(x, zeta), v>| dsigma(zeta),
//
// with P(x, zeta) = (1 - |x|^2) / |x - zeta|^n and sigma the normalized
// surface measure. The extremal boundary function is sign<grad_x P, v>.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace khav::oracle {

/// Canonical position x = r e_n, direction v = cos(theta) e_n + sin(theta) e_1.
struct DirectionalQuery {
    int n = 4;
    double r = 0.0;
    double theta = 0.0;

    /// Throws DomainError unless n >= 2, 0 <= r < 1 and 0 <= theta <= pi/2.
    void validate() const;
};

enum class SphereMethod { product_gauss, monte_carlo };

std::string_view to_string(SphereMethod m) noexcept;

struct SphereQuadrature {
    SphereMethod method = SphereMethod::product_gauss;
    int nodes_polar = 24;      // Gauss points per polar piece (coarse pass)
    int nodes_azimuthal = 24;  // Gauss points per azimuthal piece (coarse pass)
    std::int64_t samples = 200000;
    std::uint64_t seed = 0x5eed;
};

struct OracleValue {
    double value = 0.0;
    /// Product rule: |fine - coarse| after doubling both node counts.
    /// Monte Carlo: one standard error.
    double error = 0.0;
    SphereMethod method = SphereMethod::product_gauss;
};

double poisson_kernel(std::span<const double> x, std::span<const double> zeta);

/// grad_x P = -2x / |x-zeta|^n - n (1-|x|^2)(x-zeta) / |x-zeta|^{n+2}.
std::vector<double> poisson_gradient(std::span<const double> x, std::span<const double> zeta);

OracleValue directional_constant(const DirectionalQuery& q, const SphereQuadrature& sq);

/// Arbitrary interior point and direction; reduced to the canonical query by
/// the rotational symmetry of the ball and C(x, -v) = C(x, v).
OracleValue directional_constant(std::span<const double> x, std::span<const double> v,
                                 const SphereQuadrature& sq);

struct ProfilePoint {
    double theta;
    double value;
    double error;
};

struct DirectionProfile {
    double theta_star = 0.0;
    std::vector<ProfilePoint> profile;
    /// Largest value(theta) - value(0) - (error(theta) + error(0)) over the grid.
    double max_excess = 0.0;
    /// Some theta beat theta = 0 by more than the combined quadrature error.
    bool conjecture_violation = false;
};

/// theta_grid must lie in [0, pi/2] and contain 0.
DirectionProfile best_direction(int n, double r, std::span<const double> theta_grid,
                                const SphereQuadrature& sq);

/// Derivative along the normal e_n of the Poisson extension of the boundary
/// data zeta -> sign<grad_x P(x, zeta), e_n>, computed with full gradient
/// vectors on the same nodes that directional_constant uses for theta = 0.
OracleValue extremal_check(int n, double r, const SphereQuadrature& sq);

/// int_{S^{n-1}} P(r e_n, zeta) dsigma(zeta) on the nodes used for theta = 0;
/// equals 1 exactly.
OracleValue kernel_mass(int n, double r, const SphereQuadrature& sq);

/// Counter-based 64-bit generator: the k-th draw depends only on (seed, k).
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter) noexcept;

}  // namespace khav::oracle
