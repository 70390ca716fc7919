#pragma once

// Closed-form quantities for the sharp gradient estimate of bounded harmonic
// functions in the unit ball of R^4, plus the classical reference constants
// for the disk and for half-spaces.
//
// All functions are pure; they may be called concurrently.

#include <string_view>

namespace khav::closedform4 {

/// Below this radius every 0/0 quantity in r (c_closed, c_at_zero, frak_c)
/// is evaluated from its Taylor series.
inline constexpr double kSeriesRadius = 0.05;

/// Below this z the difference quotient L(z)/z inside h1 is replaced by its
/// Taylor series.
inline constexpr double kSeriesZ = 1e-6;

/// A point (r, z) with 0 < r < 1 and z >= 0.
class EvalPoint {
public:
    /// Throws DomainError unless 0 < r < 1 and z >= 0 (both finite).
    EvalPoint(double r, double z);

    double r() const noexcept { return r_; }
    double z() const noexcept { return z_; }

private:
    double r_;
    double z_;
};

enum class Sign : int { plus = 1, minus = -1 };

enum class Method { closed_form, series_branch };

std::string_view to_string(Method m) noexcept;

/// h1 + h2 + h3 is the bracket of C(z, r) = 2(1-r) / (pi r^3 sqrt(1+z^2)) * (h1+h2+h3).
/// h2 follows the ordering that is negative at z = 0, which is the one
/// consistent with the integral representation.
struct CComponents {
    double h1;
    double h2;
    double h3;
};

struct CValue {
    double value;
    Method method;
};

struct SharpConstantReport {
    double r;
    double frak_c;
    double c_at_zero;       // frak_c / (1 + r)
    double gradient_bound;  // frak_c / (1 - r^2); +inf at r = 1
    Method method;
};

/// Psi_r(+z) or Psi_r(-z) from its antiderivative closed form (n = 4).
/// Loses roughly eps / r^2 relative accuracy as r -> 0.
double psi_closed(const EvalPoint& p, Sign sign);

CComponents c_components(const EvalPoint& p);

/// L(z) = atanh(r z / s) - atanh(r (r^2 - 3) z / s), s = sqrt(4 - r^2 + 4 z^2).
double envelope_L(const EvalPoint& p);

/// g1(z) = (r sqrt(4-r^2) + r (1+r^2) s) / sqrt(1+z^2).
double envelope_g1(const EvalPoint& p);

/// C(z, r) for n = 4. Uses the series branch for r < kSeriesRadius.
CValue c_closed_detailed(const EvalPoint& p);
double c_closed(const EvalPoint& p);

/// C(0, r) = frak_c(r) / (1 + r), 0 < r < 1 (r = 0 returns the limit 16 / (3 pi)).
double c_at_zero(double r);

/// The decreasing map [0, 1] -> [3 sqrt3 / (2 pi), 16 / (3 pi)].
double frak_c(double r);

/// frak_c(r) / (1 - r^2) for 0 <= r < 1. Returns +infinity at r = 1 exactly;
/// throws DomainError outside [0, 1].
double gradient_bound(double r);

SharpConstantReport sharp_constant(double r);

/// v(r) = r (4-r^2)(6-r^2) / (4 (3-r^2) sqrt(4-r^2)) + atan(r sqrt(4-r^2) / (r^2-2));
/// frak_c is decreasing iff v >= 0.
double decrease_witness(double r);

/// Sharp gradient constant for bounded harmonic functions in the half-space
/// R^n_+ at distance x_n from the boundary.
double halfspace_constant(int n, double x_n);

/// (4 / pi) / (1 - r^2): sharp gradient constant in the unit disk.
double disk_constant(double r);

}  // namespace khav::closedform4
