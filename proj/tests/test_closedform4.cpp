#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "khavinson/closedform4.hpp"
#include "khavinson/errors.hpp"
#include "khavinson/kernelint.hpp"

using namespace khav;
using namespace khav::closedform4;
using std::numbers::pi;

namespace {

const double kSqrt3 = std::sqrt(3.0);

double psi_quadrature(double r, double z, Sign s) {
    const auto ps = kernelint::ParamSet::make(4, r);
    return kernelint::psi_numeric(EvalPoint(r, z), s, ps, {1e-14, 1e-13, 4000}).value;
}

}  // namespace

TEST_CASE("EvalPoint rejects points outside the domain") {
    CHECK_THROWS_AS(EvalPoint(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(EvalPoint(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(EvalPoint(0.5, -1e-300), DomainError);
    CHECK_THROWS_AS(EvalPoint(0.5, std::numeric_limits<double>::infinity()), DomainError);
    CHECK_THROWS_AS(EvalPoint(std::nan(""), 1.0), DomainError);
    CHECK_NOTHROW(EvalPoint(0.5, 0.0));
}

TEST_CASE("psi_closed matches quadrature of the defining integral") {
    struct Row {
        double r, z;
        Sign s;
    };
    for (const Row row : {Row{0.5, 1.0, Sign::plus}, Row{0.3, 0.0, Sign::plus},
                          Row{0.7, 5.0, Sign::minus}, Row{0.05, 2.0, Sign::minus},
                          Row{0.95, 0.3, Sign::plus}}) {
        CAPTURE(row.r);
        CAPTURE(row.z);
        const double closed = psi_closed(EvalPoint(row.r, row.z), row.s);
        CHECK(std::abs(closed - psi_quadrature(row.r, row.z, row.s)) <= 1e-10);
    }
}

TEST_CASE("c_components at the origin") {
    const double r = 0.5;
    const auto h = c_components(EvalPoint(r, 0.0));
    CHECK(h.h3 == 0.0);
    const double root = std::sqrt(4.0 - r * r);
    CHECK(std::abs(std::abs(h.h2) - 2.0 * std::atan(r * root / (2.0 - r * r))) <= 1e-14);
    // The ordering consistent with the integral is negative at z = 0.
    CHECK(h.h2 < 0.0);
    const double h1_0 = 0.5 * std::sqrt(3.75) * 2.25 / 1.5;
    CHECK(std::abs(h.h1 - h1_0) <= 1e-14);
    // h1(z) = h1(0) + O(z^2): extrapolate from two small z.
    const double a = c_components(EvalPoint(r, 1e-3)).h1;
    const double b = c_components(EvalPoint(r, 5e-4)).h1;
    CHECK(std::abs((4.0 * b - a) / 3.0 - h1_0) <= 1e-12);
}

TEST_CASE("envelope_L") {
    CHECK(envelope_L(EvalPoint(0.5, 0.0)) == 0.0);
    CHECK(envelope_L(EvalPoint(0.9, 2.0)) <= 0.9 * 2.0 * std::sqrt(4.0 - 0.81));
    const double r = 0.2;
    const double z = 0.001;
    const double lin = z * r * std::sqrt(4.0 - r * r);
    CHECK(std::abs(envelope_L(EvalPoint(r, z)) / lin - 1.0) <= 1e-6);
}

TEST_CASE("envelope_g1") {
    const double g0 = envelope_g1(EvalPoint(0.5, 0.0));
    CHECK(std::abs(g0 - 0.5 * std::sqrt(3.75) * 2.25) <= 1e-14);
    CHECK(envelope_g1(EvalPoint(0.5, 10.0)) < g0);
    CHECK(envelope_g1(EvalPoint(1e-12, 3.0)) < 1e-11);
}

TEST_CASE("c_closed against the quadrature representation") {
    const auto ps = kernelint::ParamSet::make(4, 0.5);
    const kernelint::CrzOptions indep{kernelint::InnerPsi::quadrature,
                                      kernelint::WeightScheme::automatic};
    const double num = kernelint::c_numeric(EvalPoint(0.5, 0.7), ps, {}, indep).value;
    const double closed = c_closed(EvalPoint(0.5, 0.7));
    CHECK(std::abs(closed / num - 1.0) <= 1e-9);
    CHECK(std::abs(c_closed(EvalPoint(0.5, 0.0)) - c_at_zero(0.5)) <= 1e-15);
    CHECK(c_closed(EvalPoint(0.9, 3.0)) < c_at_zero(0.9));
}

TEST_CASE("c_closed series branch") {
    for (double r : {1e-6, 1e-3, 0.01, 0.04}) {
        for (double z : {0.0, 0.3, 4.0}) {
            CAPTURE(r);
            CAPTURE(z);
            const auto v = c_closed_detailed(EvalPoint(r, z));
            CHECK(v.method == Method::series_branch);
            const auto ps = kernelint::ParamSet::make(4, r);
            const double num =
                kernelint::c_numeric(EvalPoint(r, z), ps, {},
                                     {kernelint::InnerPsi::quadrature,
                                      kernelint::WeightScheme::automatic})
                    .value;
            CHECK(std::abs(v.value / num - 1.0) <= 1e-9);
        }
    }
    // Both branches agree across the switch.
    for (double z : {0.0, 1.0, 10.0}) {
        const double below = c_closed(EvalPoint(std::nextafter(kSeriesRadius, 0.0), z));
        const double above = c_closed(EvalPoint(kSeriesRadius, z));
        CHECK(std::abs(below / above - 1.0) <= 1e-12);
    }
    CHECK(c_closed_detailed(EvalPoint(0.5, 1.0)).method == Method::closed_form);
}

TEST_CASE("c_at_zero") {
    CHECK(std::abs(c_at_zero(0.0) - 16.0 / (3.0 * pi)) <= 1e-15);
    // C(0, r) = 16/(3 pi) (1 - r) + O(r^2).
    const double r = 1e-4;
    CHECK(std::abs(c_at_zero(r) - 16.0 / (3.0 * pi) * (1.0 - r)) <= 1e-7);
    CHECK(std::abs(c_at_zero(1.0 - 1e-12) - 3.0 * kSqrt3 / (2.0 * pi)) <= 1e-10);
    CHECK(std::abs(c_at_zero(0.5) - 0.5 * frak_c(0.5) / 0.75) <= 1e-15);
    CHECK_THROWS_AS(c_at_zero(1.0), DomainError);
    CHECK_THROWS_AS(c_at_zero(-0.1), DomainError);
}

TEST_CASE("frak_c values") {
    CHECK(std::abs(frak_c(0.0) - 16.0 / (3.0 * pi)) <= 1e-15);
    CHECK(std::abs(frak_c(0.5) - 1.686970080305518549) <= 1e-14);
    CHECK(frak_c(0.5) > 0.826993);
    CHECK(frak_c(0.5) < 1.697653);
    // The displayed formula evaluates to 3 sqrt3 / pi at r = 1 (not 3 sqrt3 / (2 pi));
    // the acceptance binary reports the discrepancy.
    CHECK(std::abs(frak_c(1.0) - 3.0 * kSqrt3 / pi) <= 1e-14);
    CHECK_THROWS_AS(frak_c(1.0 + 1e-12), DomainError);
    const double below = frak_c(std::nextafter(kSeriesRadius, 0.0));
    CHECK(std::abs(below / frak_c(kSeriesRadius) - 1.0) <= 1e-13);
    for (int i = 0; i <= 100; ++i) {
        const double v = frak_c(i / 100.0);
        CHECK(v >= 3.0 * kSqrt3 / (2.0 * pi));
        CHECK(v <= 16.0 / (3.0 * pi) + 1e-15);
    }
}

TEST_CASE("gradient_bound") {
    CHECK(std::abs(gradient_bound(0.0) - 16.0 / (3.0 * pi)) <= 1e-15);
    CHECK(std::abs(gradient_bound(0.5) - frak_c(0.5) / 0.75) <= 1e-15);
    CHECK(std::isinf(gradient_bound(1.0)));
    CHECK_THROWS_AS(gradient_bound(1.5), DomainError);
    // Near the boundary the bound approaches the half-space constant at
    // distance 1 - r: (3 sqrt3 / (2 pi)) / (1 - r).
    const double r = 0.999;
    CHECK(std::abs(gradient_bound(r) * (1.0 - r) / (3.0 * kSqrt3 / (2.0 * pi)) - 1.0) <= 1e-3);
    CHECK(std::abs(gradient_bound(r) * (1.0 - r) - 0.8274520326976547487) <= 1e-13);
    for (int i = 0; i < 100; ++i) {
        const double rr = i / 100.0;
        CHECK(std::abs(c_at_zero(rr) - (1.0 - rr) * gradient_bound(rr)) <=
              1e-13 * gradient_bound(rr));
    }
    const auto rep = sharp_constant(0.3);
    CHECK(rep.gradient_bound == gradient_bound(0.3));
    CHECK(rep.method == Method::closed_form);
    CHECK(sharp_constant(0.01).method == Method::series_branch);
}

TEST_CASE("half-space and disk constants") {
    CHECK(std::abs(halfspace_constant(4, 1.0) - 3.0 * kSqrt3 / (2.0 * pi)) <= 1e-12);
    CHECK(std::abs(halfspace_constant(2, 1.0) - 2.0 / pi) <= 1e-12);
    CHECK(std::abs(halfspace_constant(3, 1.0) - 4.0 / (3.0 * kSqrt3)) <= 1e-12);
    CHECK(std::abs(halfspace_constant(4, 0.25) - 4.0 * halfspace_constant(4, 1.0)) <= 1e-12);
    CHECK(std::isfinite(halfspace_constant(400, 1.0)));
    CHECK_THROWS_AS(halfspace_constant(1, 1.0), DomainError);
    CHECK_THROWS_AS(halfspace_constant(4, 0.0), DomainError);
    CHECK(std::abs(disk_constant(0.0) - 4.0 / pi) <= 1e-15);
    CHECK(std::abs(disk_constant(0.5) - 16.0 / (3.0 * pi)) <= 1e-15);
}

TEST_CASE("decrease witness") {
    CHECK(decrease_witness(0.0) == 0.0);
    for (int i = 0; i <= 1000; ++i) CHECK(decrease_witness(i / 1000.0) >= -1e-12);
}

TEST_CASE("sweep: 0 < C(z,r) <= C(0,r) and the tanh argument stays below one") {
    bool ok = true;
    for (int i = 0; i < 200; ++i) {
        const double r = 1e-3 + (1.0 - 2e-3) * i / 199.0;
        const double c0 = c_at_zero(r);
        for (int j = 0; j < 200; ++j) {
            const double z = 1e-4 * std::pow(5e5, j / 199.0);
            const double c = c_closed(EvalPoint(r, z));
            const double s = std::sqrt(4.0 - r * r + 4.0 * z * z);
            ok = ok && c > 0.0 && c <= c0 + 1e-12 &&
                 r * z * s / (1.0 + (1.0 + r * r) * z * z) < 1.0 &&
                 c_components(EvalPoint(r, z)).h3 <= 0.0;
        }
    }
    CHECK(ok);
}
