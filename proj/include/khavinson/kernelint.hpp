#pragma once

// Integral representation of the auxiliary function C(z, r) for general
// dimension n >= 3:
//
//   C(z, r) = 4 w_{n-2} / w_n * 2^{n-1} / (1+r)^{n-1} / sqrt(1+z^2)
//             * int_0^1 [Psi_r(zt) + Psi_r(-zt)] (1-t^2)^{(n-4)/2} dt,
//
//   Psi_r(z) = int_0^{(z + sqrt(z^2 + 1 - a^2)) / (1 - a)}
//              (n - b + n z w - b w^2) w^{n-2}
//              / ((1+w^2)^{n/2+1} (1 + k^2 w^2)^{n/2-1}) dw,
//
// with k = (1-r)/(1+r), a = r(n-2)/n, b = (n - (n-2) r)/2 and w_n the area
// of the unit sphere S^{n-1}. Only n = 4 has a proven link to the sharp
// gradient constant; other dimensions are exploratory.

#include "khavinson/closedform4.hpp"
#include "khavinson/quadrature.hpp"

namespace khav::kernelint {

using closedform4::EvalPoint;
using closedform4::Sign;

struct ParamSet {
    int n;
    double r;
    double k;      // (1 - r) / (1 + r)
    double alpha;  // r (n - 2) / n
    double beta;   // (n - (n - 2) r) / 2

    /// Throws DomainError unless n >= 3 and 0 < r < 1.
    static ParamSet make(int n, double r);
};

/// Area of S^{n-1}: 2 pi^{n/2} / Gamma(n/2), n >= 2.
double sphere_area(int n);

/// True for every dimension where C(z, r) is not tied to a proven sharp bound.
constexpr bool is_exploratory(int n) noexcept { return n != 4; }

/// Integrand of Psi_r at signed auxiliary variable z.
double psi_integrand(double w, double z, const ParamSet& ps);
double psi_integrand(double w, const EvalPoint& p, const ParamSet& ps, Sign sign = Sign::plus);

/// (z + sqrt(z^2 + 1 - a^2)) / (1 - a) for signed z; positive for every z.
double psi_upper_limit(double z, const ParamSet& ps);

QuadResult psi_numeric(const EvalPoint& p, Sign sign, const ParamSet& ps, const QuadratureSpec& q);

enum class InnerPsi {
    automatic,    // closed form for n = 4, quadrature otherwise
    closed_form,  // n = 4 only
    quadrature,
};

enum class WeightScheme {
    automatic,           // sine substitution for odd n, plain t otherwise
    plain,               // integrate in t with regular endpoints
    sine_substitution,   // t = sin(theta): weight becomes cos^{n-3}(theta)
    endpoint_transform,  // integrate in t with EndpointMode::algebraic_singularity
};

struct CrzOptions {
    InnerPsi inner = InnerPsi::automatic;
    WeightScheme weight = WeightScheme::automatic;
};

/// C(z, r) by quadrature. The reported error is the outer estimate plus the
/// worst inner Psi estimate propagated through the prefactor.
QuadResult c_numeric(const EvalPoint& p, const ParamSet& ps, const QuadratureSpec& q,
                     CrzOptions opts = {});

}  // namespace khav::kernelint
