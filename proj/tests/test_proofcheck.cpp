#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "khavinson/closedform4.hpp"
#include "khavinson/errors.hpp"
#include "khavinson/proof_formulas.hpp"
#include "khavinson/proofcheck.hpp"

using namespace khav;
using namespace khav::proofcheck;
namespace f = khav::proofcheck::formulas;

namespace {

IdentityCase find_case(const std::vector<IdentityCase>& reg, const std::string& name) {
    for (const auto& c : reg) {
        if (c.name == name) return c;
    }
    FAIL("no case named " << name);
    return {};
}

std::size_t count_role(const std::vector<IdentityCase>& reg, Role role) {
    std::size_t n = 0;
    for (const auto& c : reg) n += c.role == role;
    return n;
}

// Shrink a case to the single point `at`.
IdentityCase pin(IdentityCase c, std::vector<double> at) {
    for (std::size_t i = 0; i < at.size(); ++i) c.domain[i].lo = c.domain[i].hi = at[i];
    c.samples = 1;
    return c;
}

}  // namespace

TEST_CASE("registries have the documented sizes") {
    const auto d = derivative_cases();
    CHECK(count_role(d, Role::required) == kDerivativeRequired);
    CHECK(count_role(d, Role::probe) == kDerivativeProbes);
    const auto p = pointwise_cases();
    CHECK(count_role(p, Role::required) == kPointwiseRequired);
    CHECK(count_role(p, Role::probe) == kPointwiseProbes);
    CHECK(inequality_cases().size() == kInequalityCases);
    const auto ch = chain_cases();
    CHECK(ch.size() == kChainCases);
    CHECK(count_role(ch, Role::required) == 1);

    std::set<std::string> names;
    std::size_t total = 0;
    for (const auto* reg : {&d, &p}) {
        for (const auto& c : *reg) {
            names.insert(c.name);
            ++total;
            CHECK_NOTHROW(c.validate());
            if (c.kind != CaseKind::pointwise_leq) CHECK(c.samples >= 1000);
        }
    }
    for (const auto& c : inequality_cases()) names.insert(c.name), ++total;
    for (const auto& c : ch) names.insert(c.name), ++total;
    CHECK(names.size() == total);
}

TEST_CASE("derivative identities at the documented points") {
    const auto reg = derivative_cases();
    const auto rq = check_derivative_identity(pin(find_case(reg, "R_prime_eq_Q"), {1.0, 0.5, 0.7}));
    CHECK(rq.worst_violation <= 1e-7);
    const auto lp = check_derivative_identity(pin(find_case(reg, "L_prime"), {1.0, 0.5}));
    CHECK(lp.worst_violation <= 1e-7);
    const auto vp = check_derivative_identity(pin(find_case(reg, "v_prime"), {0.5}));
    CHECK(vp.worst_violation <= 1e-7);
    const double r = 0.5;
    const double displayed = std::pow(r, 4) * std::sqrt(4.0 - r * r) / (2.0 * std::pow(3.0 - r * r, 2));
    CHECK(f::v_prime(r) == doctest::Approx(displayed).epsilon(1e-15));
}

TEST_CASE("every required derivative identity passes at 1e-7") {
    for (const auto& c : derivative_cases()) {
        const auto rep = check_derivative_identity(c);
        CAPTURE(c.name);
        if (c.role == Role::required) {
            CHECK(rep.verdict == Verdict::pass);
        } else {
            // The unmodified h2' display is twice the derivative.
            CHECK(rep.verdict == Verdict::fail);
        }
    }
}

TEST_CASE("pointwise identities") {
    for (const auto& c : pointwise_cases()) {
        const auto rep = check_pointwise_equal(c);
        CAPTURE(c.name);
        CHECK(rep.verdict == (c.role == Role::required ? Verdict::pass : Verdict::fail));
    }
    // The printed partial fractions are exactly the negative of Q.
    CHECK(f::q_partial_fractions(1.3, 0.4, 0.2, true) ==
          doctest::Approx(-f::q_integrand(1.3, 0.4, 0.2)).epsilon(1e-13));
}

TEST_CASE("swapping lhs and rhs flips the sign only") {
    for (const char* name : {"U_prime", "h2_prime_as_displayed"}) {
        auto c = find_case(derivative_cases(), name);
        const auto a = check_derivative_identity(c);
        c.swapped = true;
        const auto b = check_derivative_identity(c);
        CHECK(a.worst_violation == b.worst_violation);
        CHECK(a.worst_signed == -b.worst_signed);
        CHECK(a.verdict == b.verdict);
        CHECK(a.location == b.location);
    }
}

TEST_CASE("sampling is deterministic and seeded") {
    const auto c = find_case(derivative_cases(), "g1_prime");
    const auto a = check_derivative_identity(c, {}, 5);
    const auto b = check_derivative_identity(c, {}, 5);
    CHECK(a.worst_violation == b.worst_violation);
    CHECK(a.location == b.location);
    CHECK(a.seed == 5);
    const auto h = halton(1, 2);
    CHECK(h[0] == 0.5);
    CHECK(h[1] == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(halton(1, 7), DomainError);
}

TEST_CASE("Richardson derivative") {
    const ScalarFn cubic = [](std::span<const double> x) { return x[0] * x[0] * x[0] + x[1]; };
    const std::vector<double> at = {2.0, 5.0};
    CHECK(richardson_derivative(cubic, at, 0, 0.0) == doctest::Approx(12.0).epsilon(1e-9));
    CHECK(richardson_derivative(cubic, at, 1, 0.0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("evaluation failures carry the sample point") {
    IdentityCase c;
    c.name = "broken";
    c.kind = CaseKind::pointwise_equal;
    c.lhs = [](std::span<const double> x) { return x[0] > 0.5 ? std::nan("") : 1.0; };
    c.rhs = [](std::span<const double>) { return 1.0; };
    c.domain = {{"x", 0.0, 1.0}};
    try {
        check_pointwise_equal(c);
        FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
        REQUIRE(e.location().size() == 1);
        CHECK(e.location()[0].first == "x");
        CHECK(e.location()[0].second > 0.5);
    }
    c.domain = {{"x", 1.0, 0.0}};
    CHECK_THROWS_AS(c.validate(), DomainError);
    c.domain = {{"x", 0.0, 1.0, Spacing::log}};
    CHECK_THROWS_AS(c.validate(), DomainError);
    c.domain = {};
    CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("lemma inequalities") {
    const auto reg = inequality_cases();
    const auto lb = check_inequality(find_case(reg, "L_bound"));
    CHECK(lb.sample.rfind("10000-point", 0) == 0);
    CHECK(lb.worst_violation <= 1e-12);
    for (const auto& c : reg) {
        CAPTURE(c.name);
        const auto rep = check_inequality(c);
        CHECK(rep.verdict == Verdict::pass);
        CHECK(rep.pass() == (rep.worst_violation <= rep.tolerance));
    }
    CHECK(f::h3(0.0, 0.5) == 0.0);
}

TEST_CASE("theorem chain") {
    for (const auto& c : chain_cases()) {
        const auto rep = check_inequality(c);
        CAPTURE(c.name);
        if (c.name == "theorem_chain_step2[l1]" || c.name == "theorem_chain_step4[l1]") {
            CHECK(rep.verdict == Verdict::pass);
        }
        if (c.convention == "l4") CHECK(rep.verdict == Verdict::pass);
    }
    const auto lemmas = run_suite(Suite::lemmas, {});
    const auto& sum = lemmas.back();
    CHECK(sum.case_name == "theorem_chain_summary");
    CHECK(sum.note == "step1: l4; step2: l1,l4; step3: l4; step4: l1,l4");
}

TEST_CASE("locate_sup for n = 4") {
    const kernelint::QuadratureSpec q{};
    for (double r : {0.5, 0.05, 0.04, 0.95}) {
        const auto s = locate_sup(r, 4, 10.0, q);
        CAPTURE(r);
        CHECK(s.z_star <= 1e-4);
        CHECK(s.c_star <= closedform4::c_at_zero(r) * (1.0 + 1e-9));
        CHECK(s.c_star >= closedform4::c_at_zero(r) * (1.0 - 1e-14));
    }
    CHECK_THROWS_AS(locate_sup(0.5, 4, 0.0, q), DomainError);
    CHECK_THROWS_AS(locate_sup(1.0, 4, 1.0, q), DomainError);
}

TEST_CASE("locate_sup for n = 3 is exploratory and stable") {
    const kernelint::QuadratureSpec loose{1e-8, 1e-8};
    const kernelint::QuadratureSpec tight{1e-12, 1e-12};
    const auto a = locate_sup(0.5, 3, 10.0, loose);
    const auto b = locate_sup(0.5, 3, 10.0, tight);
    CHECK(std::isfinite(a.c_star));
    CHECK(b.c_star - a.c_star <= a.error);
}

TEST_CASE("conjecture reports") {
    const auto theta = theta_grid(50);
    CHECK(theta.front() == 0.0);
    CHECK(theta.back() == doctest::Approx(std::numbers::pi / 2));
    const auto r19 = radius_grid(19);
    CHECK(r19.front() == doctest::Approx(0.05));
    CHECK(r19.back() == doctest::Approx(0.95));
    const auto four = conjecture_report(4, r19, theta, {});
    CHECK(four.verdict == Verdict::pass);
    const auto r5 = radius_grid(5);
    const auto two = conjecture_report(2, r5, theta, {});
    CHECK(two.verdict == Verdict::pass);
    CHECK(two.worst_violation <= 1e-5);
    const auto five = conjecture_report(5, r5, theta, {});
    CHECK(five.verdict == Verdict::exploratory);
    CHECK(five.pass());
    CHECK_THROWS_AS(conjecture_report(4, {}, theta, {}), DomainError);
}

TEST_CASE("suite names") {
    CHECK(parse_suite("oracle") == Suite::oracle);
    CHECK(std::string(to_string(Suite::sup)) == "sup");
    CHECK_THROWS_AS(parse_suite("everything"), DomainError);
}
