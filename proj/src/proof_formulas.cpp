#include "khavinson/proof_formulas.hpp"

#include <cmath>
#include <numbers>

namespace khav::proofcheck::formulas {
namespace {

using std::numbers::pi;

double root_s(double r, double x) { return std::sqrt(4.0 - r * r + 4.0 * x * x); }

double denom_d(double r, double x) {
    const double r2 = r * r;
    return (r2 - 2.0) * (r2 - 2.0) - 4.0 * (r2 - 1.0) * x * x;
}

double sq(double x) { return x * x; }

}  // namespace

double q_integrand(double w, double r, double z) {
    const double w2 = w * w;
    return w2 * (4.0 + 0.5 * (-4.0 + 2.0 * r) - 0.5 * (4.0 - 2.0 * r) * w2 + 4.0 * w * z) /
           (std::pow(1.0 + w2, 3) * (1.0 + sq(1.0 - r) * w2 / sq(1.0 + r)));
}

double q_partial_fractions(double w, double r, double z, bool sign_as_printed) {
    const double w2 = w * w;
    const double a = 1.0 + w2;
    const double b = sq(1.0 + r) + sq(r - 1.0) * w2;
    const double r2 = r * r;
    const double r3 = r2 * r;
    const double p2 = sq(1.0 + r);
    const double p4 = p2 * p2;
    const double printed = p2 / (r * a * a * a) - p2 * (1.0 + 4.0 * r) / (4.0 * r2 * a * a) +
                           p4 / (16.0 * r3 * a) - sq(r - 1.0) * p4 / (16.0 * r3 * b) +
                           p2 * z * w / (r * a * a * a) - p4 * z * w / (4.0 * r2 * a * a) +
                           sq(r - 1.0) * p4 * z * w / (16.0 * r3 * a) -
                           sq(sq(r2 - 1.0)) * z * w / (16.0 * r3 * b);
    return sign_as_printed ? printed : -printed;
}

double r_antiderivative(double w, double r, double z) {
    const double w2 = w * w;
    const double r2 = r * r;
    return (4.0 * r * w * (1.0 + w2 + r * (-1.0 + w2)) -
            4.0 * r * (1.0 + r2 + sq(1.0 + r) * w2) * z) /
               sq(1.0 + w2) +
           2.0 * (r2 - 1.0) * std::atan(w) + 2.0 * (r2 - 1.0) * std::atan((r - 1.0) * w / (1.0 + r)) +
           sq(r2 - 1.0) * z * std::log((sq(1.0 + r) + sq(r - 1.0) * w2) / (1.0 + w2));
}

double r_prime_claim(double w, double r, double z) {
    return 32.0 * r * r * r / sq(1.0 + r) * q_integrand(w, r, z);
}

double psi_upper_limit4(double z, double r) {
    const double a = 0.5 * r;
    return (z + std::sqrt(z * z + 1.0 - a * a)) / (1.0 - a);
}

double psi_pair(double t, double r, double z) {
    const double r2 = r * r;
    const double x = t * z;
    const double s = root_s(r, x);
    const double d = denom_d(r, x);
    const double bracket =
        r * s * (2.0 + r2 + 2.0 * (1.0 + r2) * x * x) / (2.0 * (1.0 - r2) * (1.0 + x * x)) -
        std::atan(r * (2.0 * r * x + (2.0 - r2) * s) / d) +
        std::atan(r * (2.0 * r * x - (2.0 - r2) * s) / d) -
        (1.0 - r2) * x * std::atanh(r * x * s / (1.0 + (1.0 + r2) * x * x));
    return (1.0 - r) * std::pow(1.0 + r, 3) / (16.0 * r2 * r) * bracket;
}

double psi_pair_antiderivative(double t, double r, double z) {
    const double r2 = r * r;
    const double x = t * z;
    const double s = root_s(r, x);
    const double d = denom_d(r, x);
    const double bracket =
        0.5 * r * (1.0 + r2) * x * s + 0.5 * std::atanh(r * x / s) -
        0.5 * std::atanh(r * (r2 - 3.0) * x / s) +
        (r2 - 1.0) * x * std::atan(r * (2.0 * r * x + (2.0 - r2) * s) / d) -
        (r2 - 1.0) * x * std::atan(r * (2.0 * r * x - (2.0 - r2) * s) / d) -
        0.5 * sq(r2 - 1.0) * x * x * std::atanh(r * x * s / (1.0 + (1.0 + r2) * x * x));
    return sq(1.0 + r) / (16.0 * r2 * r * z) * bracket;
}

double u_part(double t, double r, double z) {
    const double r2 = r * r;
    const double x = t * z;
    const double s = root_s(r, x);
    const double d = denom_d(r, x);
    return -std::atan(r * (2.0 * r * x + (2.0 - r2) * s) / d) +
           std::atan(r * (2.0 * r * x - (2.0 - r2) * s) / d);
}

namespace {
double common_den(double t, double r, double z) {
    const double x2 = t * t * z * z;
    return (1.0 + x2) * root_s(r, t * z) * (1.0 + sq(r * r - 1.0) * x2);
}
}  // namespace

double u_prime(double t, double r, double z) {
    const double r2 = r * r;
    const double x2 = t * t * z * z;
    return r * t * z * z * (sq(r2 - 2.0) + 2.0 * (2.0 - 3.0 * r2 + r2 * r2) * x2) /
           common_den(t, r, z);
}

double u1_part(double t, double r, double z) {
    const double r2 = r * r;
    const double x = t * z;
    return -z * (1.0 - r2) * std::atanh(r * x * root_s(r, x) / (1.0 + (1.0 + r2) * x * x));
}

double u1_prime(double t, double r, double z) {
    const double r2 = r * r;
    const double r4 = r2 * r2;
    const double x2 = t * t * z * z;
    return r * z * z * (-4.0 + 5.0 * r2 - r4 + (-4.0 + 7.0 * r2 - 4.0 * r4 + r4 * r2) * x2) /
           common_den(t, r, z);
}

double vu_combination(double t, double r, double z) {
    const double r2 = r * r;
    const double r4 = r2 * r2;
    const double x2 = t * t * z * z;
    return -r * x2 * (-4.0 + 3.0 * r2 - r4 - (4.0 - 5.0 * r2 + r4 * r2) * x2) /
           (2.0 * common_den(t, r, z));
}

double y_part(double t, double r, double z) {
    const double r2 = r * r;
    const double x2 = t * t * z * z;
    return r * root_s(r, t * z) * (2.0 + r2 + 2.0 * (1.0 + r2) * x2) /
           (2.0 * (1.0 - r2) * (1.0 + x2));
}

double x_part(double t, double r, double z) { return -vu_combination(t, r, z) + y_part(t, r, z); }

double x_representation(double t, double r, double z) {
    const double r2 = r * r;
    const double x2 = t * t * z * z;
    const double s = root_s(r, t * z);
    const double scaled = 4.0 * r * (1.0 + r2) * t * t * z * z * z / s + r * (1.0 + r2) * z * s +
                          r * z / (s * (1.0 + x2)) -
                          r * (r2 - 3.0) * z / (s * (1.0 + sq(r2 - 1.0) * x2));
    return scaled / (2.0 * (1.0 - r2) * z);
}

double x_antiderivative(double t, double r, double z) {
    const double r2 = r * r;
    const double x = t * z;
    const double s = root_s(r, x);
    return (r * (1.0 + r2) * x * s + std::atanh(r * x / s) - std::atanh(r * (r2 - 3.0) * x / s)) /
           (2.0 * (1.0 - r2) * z);
}

double l_envelope(double z, double r) {
    const double s = root_s(r, z);
    return std::atanh(r * z / s) - std::atanh(r * (r * r - 3.0) * z / s);
}

double l_prime(double z, double r) {
    const double r2 = r * r;
    const double z2 = z * z;
    return r * (4.0 - r2 + (4.0 - 3.0 * r2 + r2 * r2) * z2) /
           ((1.0 + z2) * root_s(r, z) * (1.0 + sq(r2 - 1.0) * z2));
}

double g1(double z, double r) {
    const double r2 = r * r;
    return (r * std::sqrt(4.0 - r2) + r * (1.0 + r2) * root_s(r, z)) / std::sqrt(1.0 + z * z);
}

double g1_prime(double z, double r) {
    const double r2 = r * r;
    const double z2 = z * z;
    return r * z * (r2 + r2 * r2 - std::sqrt((r2 - 4.0) * (r2 - 4.0 * (1.0 + z2)))) /
           (std::pow(1.0 + z2, 1.5) * root_s(r, z));
}

double h2_positive(double z, double r) {
    const double r2 = r * r;
    const double s = root_s(r, z);
    const double d = denom_d(r, z);
    return std::atan(r * (2.0 * r * z + (2.0 - r2) * s) / d) -
           std::atan(r * (2.0 * r * z - (2.0 - r2) * s) / d);
}

double h2_positive_prime(double z, double r, bool half_printed) {
    const double r2 = r * r;
    const double z2 = z * z;
    const double printed = 2.0 * r * (2.0 - r2) * z * (-2.0 + r2 + 2.0 * (r2 - 1.0) * z2) /
                           ((1.0 + z2) * root_s(r, z) * (1.0 + sq(r2 - 1.0) * z2));
    return half_printed ? 0.5 * printed : printed;
}

double h3(double z, double r) {
    const double r2 = r * r;
    return 0.5 * (r2 - 1.0) * z * std::atanh(r * z * root_s(r, z) / (1.0 + (1.0 + r2) * z * z));
}

double frak_c_direct(double r) {
    const double r2 = r * r;
    const double root = std::sqrt(4.0 - r2);
    return (r * root * (2.0 + r2) + 4.0 * (1.0 - r2) * std::atan(r * root / (-2.0 + r2))) /
           (pi * r2 * r);
}

double frak_c_prime(double r) {
    const double r2 = r * r;
    const double root = std::sqrt(4.0 - r2);
    return -((-2.0 + r) * r * (2.0 + r) * (-6.0 + r2) -
             4.0 * root * (-3.0 + r2) * std::atan(r * root / (-2.0 + r2))) /
           (pi * r2 * r2 * root);
}

double v_witness(double r) {
    const double r2 = r * r;
    const double root = std::sqrt(4.0 - r2);
    return r * (4.0 - r2) * (6.0 - r2) / (4.0 * (3.0 - r2) * root) +
           std::atan(r * root / (-2.0 + r2));
}

double v_prime(double r) {
    const double r2 = r * r;
    return r2 * r2 * std::sqrt(4.0 - r2) / (2.0 * sq(3.0 - r2));
}

double c_zero_direct(double r) {
    const double r2 = r * r;
    const double root = std::sqrt(4.0 - r2);
    return (r * root * (2.0 + r2) + 4.0 * (1.0 - r2) * std::atan(r * root / (r2 - 2.0))) /
           (pi * (1.0 + r) * r2 * r);
}

}  // namespace khav::proofcheck::formulas
