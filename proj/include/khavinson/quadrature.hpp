#pragma once

#include <functional>
#include <span>
#include <vector>

namespace khav::kernelint {

enum class EndpointMode {
    regular,
    /// Integrable algebraic singularity at either endpoint (e.g. (b-x)^{-1/2}).
    /// The interval is remapped through x = a + (b-a) u^2 (3 - 2u), whose
    /// Jacobian vanishes at both ends.
    algebraic_singularity,
};

struct QuadratureSpec {
    double abs_tol = 1e-13;
    double rel_tol = 1e-12;
    int max_subdivisions = 4000;
    EndpointMode endpoint_mode = EndpointMode::regular;

    /// Throws DomainError when a tolerance is below 16 eps or max_subdivisions < 1.
    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) quadrature (GSL qag): the interval
/// with the largest error estimate is bisected until the total meets
/// max(abs_tol, rel_tol |I|). Deterministic for fixed inputs. Throws
/// ConvergenceError when the subdivision budget runs out or roundoff stalls
/// progress short of the target.
QuadResult adaptive_quad(const Integrand& f, double a, double b, const QuadratureSpec& q);

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes by Newton iteration on P_n; accurate to a few ulps for n <= 1024.
GaussRule gauss_legendre(int n);

/// Sum in a fixed pairwise order, independent of how the inputs were produced.
double pairwise_sum(std::span<const double> values);

}  // namespace khav::kernelint
