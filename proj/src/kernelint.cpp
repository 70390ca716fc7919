#include "khavinson/kernelint.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "khavinson/errors.hpp"

namespace khav::kernelint {
namespace {

using std::numbers::pi;

// Area of S^{k-1} for k >= 1 (S^0 has two points).
double sphere_area_any(int k) { return 2.0 * std::pow(pi, 0.5 * k) / std::tgamma(0.5 * k); }

void require_matching(const EvalPoint& p, const ParamSet& ps) {
    if (p.r() != ps.r) {
        throw DomainError("kernelint: EvalPoint and ParamSet disagree on r");
    }
}

}  // namespace

ParamSet ParamSet::make(int n, double r) {
    if (n < 3) {
        throw DomainError("ParamSet: dimension must be >= 3, got " + std::to_string(n));
    }
    if (!(r > 0.0 && r < 1.0)) {
        throw DomainError("ParamSet: radius must lie in (0, 1)");
    }
    const double dn = n;
    return {n, r, (1.0 - r) / (1.0 + r), r * (dn - 2.0) / dn, (dn - (dn - 2.0) * r) / 2.0};
}

double sphere_area(int n) {
    if (n < 2) {
        throw DomainError("sphere_area: dimension must be >= 2");
    }
    return sphere_area_any(n);
}

double psi_integrand(double w, double z, const ParamSet& ps) {
    const double dn = ps.n;
    const double w2 = w * w;
    const double numer = (dn - ps.beta + dn * z * w - ps.beta * w2) * std::pow(w, dn - 2.0);
    const double denom = std::pow(1.0 + w2, 0.5 * dn + 1.0) *
                         std::pow(1.0 + ps.k * ps.k * w2, 0.5 * dn - 1.0);
    return numer / denom;
}

double psi_integrand(double w, const EvalPoint& p, const ParamSet& ps, Sign sign) {
    require_matching(p, ps);
    return psi_integrand(w, static_cast<int>(sign) * p.z(), ps);
}

double psi_upper_limit(double z, const ParamSet& ps) {
    const double a = ps.alpha;
    // For z < 0 the numerator cancels; use (1 - a^2) / (sqrt(z^2 + 1 - a^2) - z).
    const double root = std::sqrt(z * z + 1.0 - a * a);
    const double numer = z >= 0.0 ? z + root : (1.0 - a * a) / (root - z);
    return numer / (1.0 - a);
}

QuadResult psi_numeric(const EvalPoint& p, Sign sign, const ParamSet& ps, const QuadratureSpec& q) {
    require_matching(p, ps);
    const double z = static_cast<int>(sign) * p.z();
    return adaptive_quad([&](double w) { return psi_integrand(w, z, ps); }, 0.0,
                         psi_upper_limit(z, ps), q);
}

namespace {

// Integrand varies on the scale t ~ 1/z; split there so the first estimate sees it.
QuadResult split_quad(const Integrand& f, double a, double mid, double b, const QuadratureSpec& q) {
    if (!(mid > a && mid < b)) return adaptive_quad(f, a, b, q);
    QuadratureSpec head = q;
    head.endpoint_mode = EndpointMode::regular;
    const auto left = adaptive_quad(f, a, mid, head);
    const auto right = adaptive_quad(f, mid, b, q);
    return {left.value + right.value, left.error + right.error, left.intervals + right.intervals};
}

}  // namespace

QuadResult c_numeric(const EvalPoint& p, const ParamSet& ps, const QuadratureSpec& q,
                     CrzOptions opts) {
    require_matching(p, ps);
    const int n = ps.n;
    const double r = p.r();
    const double z = p.z();

    InnerPsi inner = opts.inner;
    if (inner == InnerPsi::automatic) {
        inner = n == 4 ? InnerPsi::closed_form : InnerPsi::quadrature;
    }
    if (inner == InnerPsi::closed_form && n != 4) {
        throw DomainError("c_numeric: closed-form Psi exists only for n = 4");
    }

    double inner_err = 0.0;
    const auto pair = [&](double t) {
        const EvalPoint pt(r, z * t);
        if (inner == InnerPsi::closed_form) {
            return closedform4::psi_closed(pt, Sign::plus) + closedform4::psi_closed(pt, Sign::minus);
        }
        const auto plus = psi_numeric(pt, Sign::plus, ps, q);
        const auto minus = psi_numeric(pt, Sign::minus, ps, q);
        inner_err = std::max(inner_err, plus.error + minus.error);
        return plus.value + minus.value;
    };

    WeightScheme scheme = opts.weight;
    if (scheme == WeightScheme::automatic) {
        scheme = n % 2 == 1 ? WeightScheme::sine_substitution : WeightScheme::plain;
    }

    const double expo = 0.5 * (n - 4);
    QuadResult integral;
    if (scheme == WeightScheme::sine_substitution) {
        const double cut = z > 1.0 ? std::asin(1.0 / z) : 0.5 * pi;
        integral = split_quad(
            [&](double th) { return pair(std::sin(th)) * std::pow(std::cos(th), n - 3); }, 0.0, cut,
            0.5 * pi, q);
    } else {
        QuadratureSpec qt = q;
        if (scheme == WeightScheme::endpoint_transform) {
            qt.endpoint_mode = EndpointMode::algebraic_singularity;
        }
        // the endpoint map needs the singular end t = 1 on the last piece only
        integral = split_quad(
            [&](double t) {
                const double wt = n == 4 ? 1.0 : std::pow((1.0 - t) * (1.0 + t), expo);
                return pair(t) * wt;
            },
            0.0, z > 1.0 ? 1.0 / z : 1.0, 1.0, qt);
    }

    const double prefactor = 4.0 * sphere_area_any(n - 2) / sphere_area_any(n) *
                             std::pow(2.0 / (1.0 + r), n - 1) / std::sqrt(1.0 + z * z);
    // int_0^1 (1-t^2)^{(n-4)/2} dt bounds how inner errors accumulate.
    const double weight_mass = 0.5 * std::sqrt(pi) * std::tgamma(0.5 * (n - 2)) /
                               std::tgamma(0.5 * (n - 1));
    return {prefactor * integral.value,
            prefactor * (integral.error + inner_err * weight_mass), integral.intervals};
}

}  // namespace khav::kernelint
