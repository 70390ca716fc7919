#include "khavinson/closedform4.hpp"

#include <array>
#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "khavinson/errors.hpp"

namespace khav::closedform4 {
namespace {

using std::numbers::pi;

// pi * frak_c(r) = sum_k a_k r^{2k}; coefficients from the symbolic expansion,
// checked against 50-digit evaluation.
constexpr std::array<double, 8> kFrakSeries = {
    16.0 / 3.0,         -2.0 / 15.0,         -1.0 / 280.0,       -1.0 / 4032.0,
    -5.0 / 202752.0,    -7.0 / 2342912.0,    -7.0 / 17039360.0,  -11.0 / 178257920.0,
};

// (pi / (2 (1-r))) C(z, r) = sum_k r^{2k} P_k(u) / (d_k (1+u)^k), u = z^2.
// P_k coefficients listed from u^0 upward.
struct SeriesTerm {
    std::array<double, 6> p;
    double denom;
};
constexpr std::array<SeriesTerm, 6> kCSeries = {{
    {{8.0}, 3.0},
    {{39.0, 32.0}, 15.0},
    {{4365.0, 8000.0, 3456.0}, 1680.0},
    {{104755.0, 296800.0, 276864.0, 81920.0}, 40320.0},
    {{36873585.0, 141348480.0, 201884928.0, 127008768.0, 28672000.0}, 14192640.0},
    {{3834850635.0, 18535107360.0, 35696086272.0, 34182365184.0, 16263053312.0,
      2972712960.0},
     1476034560.0},
}};

void require_radius_open(double r, const char* what) {
    if (!(r > 0.0 && r < 1.0)) {
        throw DomainError(std::string(what) + ": radius must lie in (0, 1), got " +
                          std::to_string(r));
    }
}

double frak_series(double r) {
    const double r2 = r * r;
    double acc = 0.0;
    for (auto it = kFrakSeries.rbegin(); it != kFrakSeries.rend(); ++it) {
        acc = acc * r2 + *it;
    }
    return acc / pi;
}

double frak_direct(double r) {
    const double r2 = r * r;
    const double root = std::sqrt(4.0 - r2);
    const double num =
        r * root * (2.0 + r2) + 4.0 * (1.0 - r2) * std::atan(r * root / (r2 - 2.0));
    return num / (pi * r2 * r);
}

double c_series(double r, double z) {
    const double u = z * z;
    const double inv = 1.0 / (1.0 + u);
    const double r2 = r * r;
    double acc = 0.0;
    double rpow = 1.0;
    double upow = 1.0;  // (1+u)^{-k}
    for (const auto& term : kCSeries) {
        double poly = 0.0;
        for (auto it = term.p.rbegin(); it != term.p.rend(); ++it) {
            poly = poly * u + *it;
        }
        acc += rpow * upow * poly / term.denom;
        rpow *= r2;
        upow *= inv;
    }
    return 2.0 * (1.0 - r) / pi * acc;
}

// atanh(r z s / (1 + (1+r^2) z^2)) without the cancellation in 1 - x near x -> 1.
double h3_atanh(double r, double z, double s) {
    const double base = 1.0 + (1.0 + r * r) * z * z;
    const double x = r * z * s / base;
    if (!(x >= 0.0 && x < 1.0)) {
        throw DomainError("h3: atanh argument outside [0, 1)");
    }
    if (x < 0.5) {
        return std::atanh(x);
    }
    const double om = 1.0 - r * r;
    const double upper = base + r * z * s;
    const double lower = std::sqrt((1.0 + z * z) * (1.0 + om * om * z * z));
    return std::log(upper / lower);
}

// L(z) / z, continued to z = 0.
double envelope_L_quotient(double r, double z, double s) {
    const double r2 = r * r;
    if (z < kSeriesZ) {
        const double q = 4.0 - r2;
        const double c = r2 - 3.0;
        const double cubic = r * (-r2 * c * c * c + 7.0 * r2 - 24.0) / (3.0 * q * std::sqrt(q));
        return r * std::sqrt(q) + cubic * z * z;
    }
    return (std::atanh(r * z / s) - std::atanh(r * (r2 - 3.0) * z / s)) / z;
}

}  // namespace

EvalPoint::EvalPoint(double r, double z) : r_(r), z_(z) {
    require_radius_open(r, "EvalPoint");
    if (!(z >= 0.0) || !std::isfinite(z)) {
        throw DomainError("EvalPoint: z must be finite and >= 0, got " + std::to_string(z));
    }
}

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::closed_form: return "closed_form";
        case Method::series_branch: return "series_branch";
    }
    return "unknown";
}

double psi_closed(const EvalPoint& p, Sign sign) {
    const double r = p.r();
    const double r2 = r * r;
    const double om = 1.0 - r2;
    const double z = static_cast<int>(sign) * p.z();
    const double z2 = z * z;
    const double s = std::sqrt(4.0 - r2 + 4.0 * z2);

    const double rational =
        r * ((4.0 + r2 * (4.0 + r)) * z + 4.0 * (1.0 + r2) * z2 * z +
             (2.0 + r2 + 2.0 * (1.0 + r2) * z2) * s) /
        ((1.0 + z2) * om);

    const double den = (2.0 - r2) * (2.0 - r2) + 4.0 * om * z2;
    assert(den > 0.0);
    const double angle = 4.0 * std::atan(r * (-2.0 * r * z + (r2 - 2.0) * s) / den);

    // 1 + z(z + r^2 z - r s) rationalized for z > 0, where it cancels.
    const double opr2 = (1.0 + r) * (1.0 + r);
    double log_arg = 0.0;
    if (z > 0.0) {
        log_arg = (1.0 + om * om * z2) / (opr2 * (1.0 + (1.0 + r2) * z2 + r * z * s));
    } else {
        log_arg = (1.0 + (1.0 + r2) * z2 - r * z * s) / (opr2 * (1.0 + z2));
    }
    if (!(log_arg > 0.0)) {
        throw DomainError("psi_closed: non-positive logarithm argument");
    }
    const double logarithmic = 2.0 * om * z * std::log(log_arg);

    return (1.0 - r) * opr2 * (1.0 + r) / (64.0 * r2 * r) * (rational + angle + logarithmic);
}

CComponents c_components(const EvalPoint& p) {
    const double r = p.r();
    const double z = p.z();
    const double r2 = r * r;
    const double om = 1.0 - r2;
    const double s = std::sqrt(4.0 - r2 + 4.0 * z * z);

    CComponents out{};
    out.h1 = (r * (1.0 + r2) * s + envelope_L_quotient(r, z, s)) / (2.0 * om);

    const double den = (2.0 - r2) * (2.0 - r2) + 4.0 * om * z * z;
    assert(den > 0.0);
    out.h2 = std::atan(r * (2.0 * r * z - (2.0 - r2) * s) / den) -
             std::atan(r * (2.0 * r * z + (2.0 - r2) * s) / den);

    out.h3 = z == 0.0 ? 0.0 : 0.5 * (r2 - 1.0) * z * h3_atanh(r, z, s);
    return out;
}

double envelope_L(const EvalPoint& p) {
    const double r = p.r();
    const double z = p.z();
    const double s = std::sqrt(4.0 - r * r + 4.0 * z * z);
    return std::atanh(r * z / s) - std::atanh(r * (r * r - 3.0) * z / s);
}

double envelope_g1(const EvalPoint& p) {
    const double r = p.r();
    const double z = p.z();
    const double r2 = r * r;
    return (r * std::sqrt(4.0 - r2) + r * (1.0 + r2) * std::sqrt(4.0 - r2 + 4.0 * z * z)) /
           std::sqrt(1.0 + z * z);
}

CValue c_closed_detailed(const EvalPoint& p) {
    const double r = p.r();
    const double z = p.z();
    if (r < kSeriesRadius) {
        return {c_series(r, z), Method::series_branch};
    }
    const auto h = c_components(p);
    const double value =
        2.0 * (1.0 - r) / (pi * r * r * r * std::sqrt(1.0 + z * z)) * (h.h1 + h.h2 + h.h3);
    return {value, Method::closed_form};
}

double c_closed(const EvalPoint& p) { return c_closed_detailed(p).value; }

double c_at_zero(double r) {
    if (!(r >= 0.0 && r < 1.0)) {
        throw DomainError("c_at_zero: radius must lie in [0, 1), got " + std::to_string(r));
    }
    return frak_c(r) / (1.0 + r);
}

double frak_c(double r) {
    if (!(r >= 0.0 && r <= 1.0)) {
        throw DomainError("frak_c: radius must lie in [0, 1], got " + std::to_string(r));
    }
    return r < kSeriesRadius ? frak_series(r) : frak_direct(r);
}

double gradient_bound(double r) {
    if (r == 1.0) {
        return std::numeric_limits<double>::infinity();
    }
    if (!(r >= 0.0 && r < 1.0)) {
        throw DomainError("gradient_bound: radius must lie in [0, 1], got " + std::to_string(r));
    }
    return frak_c(r) / ((1.0 - r) * (1.0 + r));
}

SharpConstantReport sharp_constant(double r) {
    SharpConstantReport rep{};
    rep.r = r;
    rep.frak_c = frak_c(r);
    rep.gradient_bound = gradient_bound(r);
    rep.c_at_zero = rep.frak_c / (1.0 + r);
    rep.method = r < kSeriesRadius ? Method::series_branch : Method::closed_form;
    return rep;
}

double decrease_witness(double r) {
    if (!(r >= 0.0 && r <= 1.0)) {
        throw DomainError("decrease_witness: radius must lie in [0, 1]");
    }
    const double r2 = r * r;
    const double root = std::sqrt(4.0 - r2);
    return r * (4.0 - r2) * (6.0 - r2) / (4.0 * (3.0 - r2) * root) +
           std::atan(r * root / (r2 - 2.0));
}

double halfspace_constant(int n, double x_n) {
    if (n < 2) {
        throw DomainError("halfspace_constant: dimension must be >= 2");
    }
    if (!(x_n > 0.0) || !std::isfinite(x_n)) {
        throw DomainError("halfspace_constant: x_n must be positive and finite");
    }
    const double dn = n;
    const double log_coeff = std::log(4.0) - 0.5 * std::log(pi) +
                             0.5 * (dn - 1.0) * std::log(dn - 1.0) - 0.5 * dn * std::log(dn) +
                             std::lgamma(0.5 * dn) - std::lgamma(0.5 * (dn - 1.0));
    return std::exp(log_coeff) / x_n;
}

double disk_constant(double r) {
    if (!(r >= 0.0 && r < 1.0)) {
        throw DomainError("disk_constant: radius must lie in [0, 1)");
    }
    return 4.0 / pi / ((1.0 - r) * (1.0 + r));
}

}  // namespace khav::closedform4
