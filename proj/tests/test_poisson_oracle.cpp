#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "khavinson/closedform4.hpp"
#include "khavinson/errors.hpp"
#include "khavinson/poisson_oracle.hpp"
#include "khavinson/proofcheck.hpp"

using namespace khav;
using namespace khav::oracle;
using std::numbers::pi;

TEST_CASE("poisson_kernel") {
    const std::vector<double> origin(4, 0.0);
    const std::vector<double> e4 = {0.0, 0.0, 0.0, 1.0};
    const std::vector<double> e1 = {1.0, 0.0, 0.0, 0.0};
    CHECK(poisson_kernel(origin, e1) == doctest::Approx(1.0).epsilon(1e-15));
    const std::vector<double> x = {0.0, 0.0, 0.0, 0.9};
    CHECK(std::abs(poisson_kernel(x, e4) - 0.19 / std::pow(0.1, 4)) <= 1e-9);
    const std::vector<double> outside = {0.0, 0.0, 0.0, 1.0};
    CHECK_THROWS_AS(poisson_kernel(outside, e1), DomainError);
    const std::vector<double> off = {0.0, 0.0, 0.0, 1.1};
    CHECK_THROWS_AS(poisson_kernel(origin, off), DomainError);
    CHECK_THROWS_AS(poisson_kernel(std::vector<double>(3, 0.0), e1), DomainError);
}

TEST_CASE("kernel mass is one") {
    for (int n : {2, 3, 4, 5}) {
        for (double r : {0.0, 0.3, 0.6, 0.9}) {
            CHECK(std::abs(kernel_mass(n, r, {}).value - 1.0) <= 1e-8);
        }
    }
}

TEST_CASE("poisson_gradient") {
    const std::vector<double> origin(4, 0.0);
    const double s = 0.5;
    const std::vector<double> zeta = {s, s, s, s};
    const auto g = poisson_gradient(origin, zeta);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(g[i] - 4.0 * zeta[i]) <= 1e-14);

    const std::vector<double> x = {0.1, -0.2, 0.3, 0.15};
    const std::vector<double> z = {0.6, 0.0, -0.8, 0.0};
    const auto gx = poisson_gradient(x, z);
    const proofcheck::ScalarFn f = [&](std::span<const double> y) { return poisson_kernel(y, z); };
    for (std::size_t i = 0; i < 4; ++i) {
        const double fd = proofcheck::richardson_derivative(f, x, i, 1e-6);
        CHECK(std::abs(fd - gx[i]) <= 1e-8 * std::max(1.0, std::abs(gx[i])));
    }
    std::vector<double> mx = x;
    std::vector<double> mz = z;
    for (auto& c : mx) c = -c;
    for (auto& c : mz) c = -c;
    const auto flipped = poisson_gradient(mx, mz);
    for (int i = 0; i < 4; ++i) CHECK(flipped[i] == doctest::Approx(-gx[i]).epsilon(1e-14));
}

TEST_CASE("directional_constant") {
    CHECK(std::abs(directional_constant({2, 0.0, 0.0}, {}).value - 4.0 / pi) <= 1e-8);
    const auto v = directional_constant({4, 0.5, 0.0}, {});
    CHECK(std::abs(v.value / closedform4::gradient_bound(0.5) - 1.0) <= 1e-6);
    CHECK(v.method == SphereMethod::product_gauss);
    const double at0 = directional_constant({4, 0.0, 0.0}, {}).value;
    for (double th : {0.3, 0.9, pi / 2}) {
        CHECK(std::abs(directional_constant({4, 0.0, th}, {}).value - at0) <= 1e-10);
    }
    CHECK(std::abs(at0 - 16.0 / (3.0 * pi)) <= 1e-10);
    CHECK_THROWS_AS(directional_constant({4, 1.0, 0.0}, {}), DomainError);
    CHECK_THROWS_AS(directional_constant({1, 0.5, 0.0}, {}), DomainError);
    CHECK_THROWS_AS(directional_constant({4, 0.5, 2.0}, {}), DomainError);
}

TEST_CASE("directional_constant for an arbitrary point and direction") {
    const double r = 0.6;
    const double th = 0.7;
    const double canonical = directional_constant({4, r, th}, {}).value;
    // x along a generic axis, v at angle th from x, then sign-flipped.
    const std::vector<double> x = {0.0, r, 0.0, 0.0};
    const std::vector<double> v = {0.0, -std::cos(th), 0.0, -std::sin(th)};
    CHECK(std::abs(directional_constant(x, v, {}).value - canonical) <= 1e-12);
    const std::vector<double> zero = {0.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(directional_constant(x, zero, {}), DomainError);
}

TEST_CASE("best_direction") {
    const auto grid = proofcheck::theta_grid(50);
    for (double r : {0.5, 0.95}) {
        const auto prof = best_direction(4, r, grid, {});
        CHECK(prof.theta_star == 0.0);
        CHECK_FALSE(prof.conjecture_violation);
        CHECK(prof.profile.size() == 50);
    }
    const auto disk = best_direction(2, 0.5, grid, {});
    for (const auto& p : disk.profile) {
        CHECK(std::abs(p.value / disk.profile.front().value - 1.0) <= 1e-5);
    }
    const std::vector<double> no_zero = {0.1, 0.2};
    CHECK_THROWS_AS(best_direction(4, 0.5, no_zero, {}), DomainError);
}

TEST_CASE("extremal_check") {
    const double direct = directional_constant({4, 0.5, 0.0}, {}).value;
    const double ext = extremal_check(4, 0.5, {}).value;
    CHECK(std::abs(ext / direct - 1.0) <= 1e-10);
    CHECK(std::abs(ext / closedform4::gradient_bound(0.5) - 1.0) <= 1e-6);
    CHECK(std::abs(extremal_check(2, 0.0, {}).value - 4.0 / pi) <= 1e-8);
}

TEST_CASE("Monte Carlo is reproducible and consistent") {
    SphereQuadrature mc;
    mc.method = SphereMethod::monte_carlo;
    mc.samples = 40000;
    mc.seed = 7;
    const auto a = directional_constant({4, 0.5, 0.3}, mc);
    const auto b = directional_constant({4, 0.5, 0.3}, mc);
    CHECK(a.value == b.value);
    CHECK(a.error == b.error);
    CHECK(a.method == SphereMethod::monte_carlo);
    mc.seed = 8;
    CHECK(directional_constant({4, 0.5, 0.3}, mc).value != a.value);
    const double exact = directional_constant({4, 0.5, 0.3}, {}).value;
    CHECK(std::abs(a.value - exact) <= 5.0 * a.error);
    mc.samples = 1;
    CHECK_THROWS_AS(directional_constant({4, 0.5, 0.3}, mc), DomainError);
}

TEST_CASE("counter_hash") {
    CHECK(counter_hash(1, 2) == counter_hash(1, 2));
    CHECK(counter_hash(1, 2) != counter_hash(1, 3));
    CHECK(counter_hash(1, 2) != counter_hash(2, 2));
}
