#include "khavinson/proofcheck.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "khavinson/closedform4.hpp"
#include "khavinson/errors.hpp"
#include "khavinson/kernelint.hpp"
#include "khavinson/proof_formulas.hpp"

namespace khav::proofcheck {
namespace {

using std::numbers::pi;
namespace f = formulas;
namespace cf = closedform4;

using Location = std::vector<std::pair<std::string, double>>;
using P = std::span<const double>;

constexpr double kLeqTol = 1e-12;
constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

Location locate(const IdentityCase& c, P x) {
    Location at;
    for (std::size_t i = 0; i < c.domain.size(); ++i) at.emplace_back(c.domain[i].name, x[i]);
    return at;
}

double eval(const IdentityCase& c, const ScalarFn& fn, P x) {
    double v = 0.0;
    try {
        v = fn(x);
    } catch (const std::exception&) {
        throw EvaluationError(c.name, locate(c, x));
    }
    if (!std::isfinite(v)) throw EvaluationError(c.name, locate(c, x));
    return v;
}

double map_unit(const ParamRange& p, double u) {
    if (p.spacing == Spacing::log) return p.lo * std::pow(p.hi / p.lo, u);
    return p.lo + (p.hi - p.lo) * u;
}

double grid_value(const ParamRange& p, std::size_t i, std::size_t count) {
    if (count == 1) return p.lo;
    if (i + 1 == count) return p.hi;
    return map_unit(p, static_cast<double>(i) / static_cast<double>(count - 1));
}

std::string describe_box(const IdentityCase& c) {
    std::string s;
    for (const auto& p : c.domain) {
        if (!s.empty()) s += ", ";
        s += p.name + " in [" + fmt(p.lo) + ", " + fmt(p.hi) + "]" +
             (p.spacing == Spacing::log ? " log" : "");
    }
    return s;
}

VerificationReport base_report(const IdentityCase& c) {
    VerificationReport rep;
    rep.case_name = c.name;
    rep.anchor = c.anchor;
    rep.kind = to_string(c.kind);
    rep.tolerance = c.tolerance;
    rep.role = c.role;
    rep.convention = c.convention;
    return rep;
}

template <class Deviation>
VerificationReport sample_equalities(const IdentityCase& c, std::uint64_t seed, Deviation&& dev) {
    VerificationReport rep = base_report(c);
    rep.seed = seed;
    rep.sample = std::to_string(c.samples) + " Halton points from index " +
                 std::to_string(seed + 1) + " over " + describe_box(c);
    std::vector<double> x(c.domain.size());
    double worst = -1.0;
    for (std::size_t k = 0; k < c.samples; ++k) {
        const auto u = halton(seed + 1 + k, c.domain.size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = map_unit(c.domain[i], u[i]);
        double d = dev(P(x));
        if (c.swapped) d = -d;
        if (std::abs(d) > worst) {
            worst = std::abs(d);
            rep.worst_signed = d;
            rep.location = locate(c, x);
        }
    }
    rep.worst_violation = worst;
    rep.verdict = worst <= c.tolerance ? Verdict::pass : Verdict::fail;
    return rep;
}

double rel_dev(double a, double b) { return (a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

// Parameter boxes shared by many cases.
ParamRange r_mid() { return {"r", 0.05, 0.95}; }
ParamRange r_sweep() { return {"r", 1e-3, 1.0 - 1e-3}; }
ParamRange t_unit() { return {"t", 0.01, 1.0}; }
ParamRange z_pos() { return {"z", 0.01, 20.0, Spacing::log}; }
ParamRange z_sweep() { return {"z", 1e-4, 50.0, Spacing::log}; }

double sq(double x) { return x * x; }

IdentityCase deriv(std::string name, std::string anchor, ScalarFn lhs, ScalarFn rhs,
                   std::vector<ParamRange> dom, Role role = Role::required) {
    IdentityCase c;
    c.name = std::move(name);
    c.anchor = std::move(anchor);
    c.kind = CaseKind::derivative_of_equals;
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
    c.domain = std::move(dom);
    c.wrt = 0;
    c.tolerance = 1e-7;
    c.role = role;
    return c;
}

IdentityCase equal(std::string name, std::string anchor, ScalarFn lhs, ScalarFn rhs,
                   std::vector<ParamRange> dom, double tol, Role role = Role::required) {
    IdentityCase c;
    c.name = std::move(name);
    c.anchor = std::move(anchor);
    c.kind = CaseKind::pointwise_equal;
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
    c.domain = std::move(dom);
    c.tolerance = tol;
    c.role = role;
    return c;
}

IdentityCase leq(std::string name, std::string anchor, ScalarFn lhs, ScalarFn rhs,
                 std::vector<ParamRange> dom, std::size_t per_axis, bool strict = false) {
    IdentityCase c;
    c.name = std::move(name);
    c.anchor = std::move(anchor);
    c.kind = CaseKind::pointwise_leq;
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
    c.domain = std::move(dom);
    c.grid_per_axis = per_axis;
    c.strict = strict;
    c.tolerance = strict ? -std::numeric_limits<double>::denorm_min() : kLeqTol;
    return c;
}

// Chain of bounds in units of 2(1-r)/(pi r^3), so that roundoff does not grow
// like r^{-3}. sigma = +1 keeps the h2 of the integral, -1 flips it.
struct ChainTerms {
    double c;  // (h1 + h2 + h3) / sqrt(1+z^2)
    double a;  // h1 -> envelope form, h2 + h3 -> values at 0
    double b;  // L(z) replaced by its linear bound
    double d;  // g1(z) -> g1(0), sqrt(1+z^2) -> 1
};

ChainTerms chain_terms(double r, double z, double sigma) {
    const cf::EvalPoint p(r, z);
    const cf::EvalPoint p0(r, 0.0);
    const auto h = cf::c_components(p);
    const auto h0 = cf::c_components(p0);
    const double om = 1.0 - r * r;
    const double root = std::sqrt(1.0 + z * z);
    const double s = std::sqrt(4.0 - r * r + 4.0 * z * z);
    const double at0 = sigma * h0.h2 + h0.h3;
    ChainTerms t{};
    t.c = (h.h1 + sigma * h.h2 + h.h3) / root;
    t.a = (r * (1.0 + r * r) * s / (2.0 * om) + f::l_envelope(z, r) / (2.0 * om * z) + at0) / root;
    t.b = f::g1(z, r) / (2.0 * om) + at0 / root;
    t.d = f::g1(0.0, r) / (2.0 * om) + at0;
    return t;
}

double radical_inverse(std::uint64_t i, std::uint64_t base) {
    double inv = 1.0 / static_cast<double>(base);
    double scale = inv;
    double out = 0.0;
    while (i > 0) {
        out += static_cast<double>(i % base) * scale;
        i /= base;
        scale *= inv;
    }
    return out;
}

double unit_uniform(std::uint64_t seed, std::uint64_t k) {
    return (static_cast<double>(oracle::counter_hash(seed, k) >> 11) + 0.5) * 0x1.0p-53;
}

// Uniform point on S^{n-1} from the hash stream.
std::vector<double> random_unit(int n, std::uint64_t seed, std::uint64_t& k) {
    std::vector<double> v(n);
    double nn = 0.0;
    for (int j = 0; j < n; ++j) {
        const double u1 = unit_uniform(seed, k++);
        const double u2 = unit_uniform(seed, k++);
        v[j] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
        nn += v[j] * v[j];
    }
    for (double& c : v) c /= std::sqrt(nn);
    return v;
}

VerificationReport oracle_report(std::string name, std::string anchor, double tol) {
    VerificationReport rep;
    rep.case_name = std::move(name);
    rep.anchor = std::move(anchor);
    rep.kind = "oracle_self_test";
    rep.tolerance = tol;
    rep.worst_violation = -std::numeric_limits<double>::infinity();
    return rep;
}

void finish(VerificationReport& rep) {
    rep.verdict = rep.worst_violation <= rep.tolerance ? Verdict::pass : Verdict::fail;
}

}  // namespace

const char* to_string(CaseKind k) noexcept {
    switch (k) {
        case CaseKind::derivative_of_equals: return "derivative_of_equals";
        case CaseKind::pointwise_equal: return "pointwise_equal";
        case CaseKind::pointwise_leq: return "pointwise_leq";
    }
    return "unknown";
}

const char* to_string(Role r) noexcept { return r == Role::required ? "required" : "probe"; }

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::exploratory: return "exploratory";
    }
    return "unknown";
}

const char* to_string(Suite s) noexcept {
    switch (s) {
        case Suite::identities: return "identities";
        case Suite::lemmas: return "lemmas";
        case Suite::sup: return "sup";
        case Suite::conjecture: return "conjecture";
        case Suite::oracle: return "oracle";
    }
    return "unknown";
}

Suite parse_suite(const std::string& name) {
    for (Suite s : {Suite::identities, Suite::lemmas, Suite::sup, Suite::conjecture, Suite::oracle}) {
        if (name == to_string(s)) return s;
    }
    throw DomainError("unknown suite: " + name);
}

EvaluationError::EvaluationError(std::string case_name, Location at)
    : std::runtime_error([&] {
          std::string msg = case_name + ": evaluation failed at";
          for (const auto& [k, v] : at) msg += " " + k + "=" + fmt(v);
          return msg;
      }()),
      at_(std::move(at)) {}

void IdentityCase::validate() const {
    if (name.empty()) throw DomainError("IdentityCase: empty name");
    if (!lhs || !rhs) throw DomainError("IdentityCase " + name + ": missing function handle");
    if (domain.empty()) throw DomainError("IdentityCase " + name + ": empty domain");
    for (const auto& p : domain) {
        if (!(p.lo <= p.hi) || !std::isfinite(p.lo) || !std::isfinite(p.hi)) {
            throw DomainError("IdentityCase " + name + ": bad range for " + p.name);
        }
        if (p.spacing == Spacing::log && !(p.lo > 0.0)) {
            throw DomainError("IdentityCase " + name + ": log axis " + p.name + " must be positive");
        }
    }
    if (kind == CaseKind::derivative_of_equals && wrt >= domain.size()) {
        throw DomainError("IdentityCase " + name + ": derivative variable outside the box");
    }
    if (kind != CaseKind::pointwise_leq && samples == 0) {
        throw DomainError("IdentityCase " + name + ": no sample points");
    }
    if (kind == CaseKind::pointwise_leq && grid_per_axis == 0) {
        throw DomainError("IdentityCase " + name + ": empty grid");
    }
}

std::vector<double> halton(std::uint64_t index, std::size_t dim) {
    static constexpr std::array<std::uint64_t, 6> kBases = {2, 3, 5, 7, 11, 13};
    if (dim > kBases.size()) throw DomainError("halton: at most 6 dimensions");
    std::vector<double> u(dim);
    for (std::size_t i = 0; i < dim; ++i) u[i] = radical_inverse(index, kBases[i]);
    return u;
}

double richardson_derivative(const ScalarFn& fn, P x, std::size_t i, double rel_step) {
    const double step = rel_step > 0.0 ? rel_step : std::cbrt(kEps);
    std::vector<double> y(x.begin(), x.end());
    const double x0 = x[i];
    const auto central = [&](double h) {
        y[i] = x0 + h;
        const double up = fn(y);
        y[i] = x0 - h;
        const double down = fn(y);
        y[i] = x0;
        return (up - down) / (2.0 * h);
    };
    const double h = step * std::max(std::abs(x0), 1.0);
    const double coarse = central(h);
    const double fine = central(0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

VerificationReport check_derivative_identity(const IdentityCase& c, StepPolicy step,
                                             std::uint64_t seed) {
    c.validate();
    if (c.kind != CaseKind::derivative_of_equals) {
        throw DomainError("check_derivative_identity: " + c.name + " is not a derivative case");
    }
    auto rep = sample_equalities(c, seed, [&](P x) {
        double d = 0.0;
        try {
            d = richardson_derivative(c.lhs, x, c.wrt, step.rel_step);
        } catch (const std::exception&) {
            throw EvaluationError(c.name, locate(c, x));
        }
        if (!std::isfinite(d)) throw EvaluationError(c.name, locate(c, x));
        return rel_dev(d, eval(c, c.rhs, x));
    });
    rep.method = "richardson_central_difference(h=" +
                 fmt(step.rel_step > 0.0 ? step.rel_step : std::cbrt(kEps)) + "*max(|x|,1), h/2)";
    return rep;
}

VerificationReport check_pointwise_equal(const IdentityCase& c, std::uint64_t seed) {
    c.validate();
    auto rep = sample_equalities(
        c, seed, [&](P x) { return rel_dev(eval(c, c.lhs, x), eval(c, c.rhs, x)); });
    rep.method = "direct_evaluation";
    return rep;
}

VerificationReport check_inequality(const IdentityCase& c) {
    c.validate();
    VerificationReport rep = base_report(c);
    const std::size_t dim = c.domain.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < dim; ++i) total *= c.grid_per_axis;
    rep.sample = std::to_string(total) + "-point tensor grid (" + std::to_string(c.grid_per_axis) +
                 " per axis) over " + describe_box(c);
    rep.method = c.strict ? "tensor_grid_strict" : "tensor_grid";
    double worst = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> idx(dim, 0);
    std::vector<double> x(dim);
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t rest = k;
        for (std::size_t i = dim; i-- > 0;) {
            idx[i] = rest % c.grid_per_axis;
            rest /= c.grid_per_axis;
        }
        for (std::size_t i = 0; i < dim; ++i) x[i] = grid_value(c.domain[i], idx[i], c.grid_per_axis);
        const double a = eval(c, c.lhs, x);
        const double b = eval(c, c.rhs, x);
        double v = (a - b) / std::max(1.0, std::abs(b));
        if (c.swapped) v = (b - a) / std::max(1.0, std::abs(a));
        if (v > worst) {
            worst = v;
            rep.location = locate(c, x);
        }
    }
    rep.worst_violation = worst;
    rep.worst_signed = worst;
    rep.verdict = worst <= c.tolerance ? Verdict::pass : Verdict::fail;
    return rep;
}

VerificationReport run_case(const IdentityCase& c, std::uint64_t seed) {
    switch (c.kind) {
        case CaseKind::derivative_of_equals: return check_derivative_identity(c, {}, seed);
        case CaseKind::pointwise_equal: return check_pointwise_equal(c, seed);
        case CaseKind::pointwise_leq: return check_inequality(c);
    }
    throw DomainError("run_case: unknown kind");
}

std::vector<IdentityCase> derivative_cases() {
    const std::vector<ParamRange> wrz = {{"w", 0.01, 20.0, Spacing::log}, r_mid(), {"z", -5.0, 5.0}};
    const std::vector<ParamRange> trz = {t_unit(), r_mid(), z_pos()};
    const std::vector<ParamRange> zr = {{"z", 1e-3, 50.0, Spacing::log}, {"r", 0.01, 0.99}};
    std::vector<IdentityCase> out;
    out.push_back(deriv(
        "R_prime_eq_Q", "dR/dw = 32 r^3 / (1+r)^2 Q(w)",
        [](P x) { return f::r_antiderivative(x[0], x[1], x[2]); },
        [](P x) { return f::r_prime_claim(x[0], x[1], x[2]); }, wrz));
    out.push_back(deriv(
        "U_prime", "U'(t) display", [](P x) { return f::u_part(x[0], x[1], x[2]); },
        [](P x) { return f::u_prime(x[0], x[1], x[2]); }, trz));
    out.push_back(deriv(
        "U1_prime", "U1'(t) display", [](P x) { return f::u1_part(x[0], x[1], x[2]); },
        [](P x) { return f::u1_prime(x[0], x[1], x[2]); }, trz));
    // V = t, V1 = t^2/2: VU' + V1U1' = (VU + V1U1)' - U - t U1.
    out.push_back(deriv(
        "VU_combination", "VU' + V1U1' display",
        [](P x) {
            const double t = x[0];
            return t * f::u_part(t, x[1], x[2]) + 0.5 * t * t * f::u1_part(t, x[1], x[2]);
        },
        [](P x) {
            const double t = x[0];
            return f::vu_combination(t, x[1], x[2]) + f::u_part(t, x[1], x[2]) +
                   t * f::u1_part(t, x[1], x[2]);
        },
        trz));
    out.push_back(deriv(
        "X_antiderivative", "int X dt display",
        [](P x) { return f::x_antiderivative(x[0], x[1], x[2]); },
        [](P x) { return f::x_part(x[0], x[1], x[2]); }, trz));
    out.push_back(deriv(
        "psi_pair_antiderivative", "int_0^t (Psi(zs) + Psi(-zs)) ds closed form",
        [](P x) { return f::psi_pair_antiderivative(x[0], x[1], x[2]); },
        [](P x) { return f::psi_pair(x[0], x[1], x[2]); }, trz));
    out.push_back(deriv(
        "L_prime", "L'(z) display", [](P x) { return f::l_envelope(x[0], x[1]); },
        [](P x) { return f::l_prime(x[0], x[1]); }, zr));
    out.push_back(deriv(
        "g1_prime", "g1'(z) display", [](P x) { return f::g1(x[0], x[1]); },
        [](P x) { return f::g1_prime(x[0], x[1]); }, zr));
    out.push_back(deriv(
        "h2_prime", "h2'(z) display, halved", [](P x) { return f::h2_positive(x[0], x[1]); },
        [](P x) { return f::h2_positive_prime(x[0], x[1], true); }, zr));
    out.push_back(deriv(
        "v_prime", "v'(r) = r^4 sqrt(4-r^2) / (2 (3-r^2)^2)",
        [](P x) { return f::v_witness(x[0]); }, [](P x) { return f::v_prime(x[0]); },
        {{"r", 0.01, 0.99}}));
    out.push_back(deriv(
        "frak_c_prime", "derivative of the sharp-constant map",
        [](P x) { return f::frak_c_direct(x[0]); }, [](P x) { return f::frak_c_prime(x[0]); },
        {{"r", 0.1, 0.99}}));
    out.push_back(deriv(
        "h2_prime_as_displayed", "h2'(z) display, unmodified",
        [](P x) { return f::h2_positive(x[0], x[1]); },
        [](P x) { return f::h2_positive_prime(x[0], x[1], false); }, zr, Role::probe));
    out.back().tolerance = 1e-7;
    return out;
}

std::vector<IdentityCase> pointwise_cases() {
    const std::vector<ParamRange> wrz = {{"w", 1e-3, 20.0, Spacing::log}, r_mid(), {"z", -5.0, 5.0}};
    const std::vector<ParamRange> rz = {r_mid(), {"z", -5.0, 5.0}};
    const std::vector<ParamRange> rzp = {r_mid(), z_pos()};
    const std::vector<ParamRange> trz = {t_unit(), r_mid(), z_pos()};
    const auto psi = [](double r, double z) {
        const cf::EvalPoint p(r, std::abs(z));
        return cf::psi_closed(p, z < 0.0 ? cf::Sign::minus : cf::Sign::plus);
    };
    std::vector<IdentityCase> out;
    out.push_back(equal(
        "Q_partial_fractions", "partial-fraction form of Q(w), overall sign corrected",
        [](P x) { return f::q_integrand(x[0], x[1], x[2]); },
        [](P x) { return f::q_partial_fractions(x[0], x[1], x[2], false); }, wrz, 1e-10));
    out.push_back(equal(
        "psi_from_R", "Psi_r(z) = (1+r)^2 / (32 r^3) [R(W) - R(0)]",
        [](P x) {
            const double r = x[0];
            const double z = x[1];
            const double w = f::psi_upper_limit4(z, r);
            return sq(1.0 + r) / (32.0 * r * r * r) *
                   (f::r_antiderivative(w, r, z) - f::r_antiderivative(0.0, r, z));
        },
        [psi](P x) { return psi(x[0], x[1]); }, rz, 1e-9));
    out.push_back(equal(
        "psi_pair_closed", "Psi_r(z) + Psi_r(-z) closed form",
        [](P x) { return f::psi_pair(1.0, x[0], x[1]); },
        [psi](P x) { return psi(x[0], x[1]) + psi(x[0], -x[1]); }, rzp, 1e-9));
    out.push_back(equal(
        "X_representation", "X as the four-term sum over 2(1-r^2) z",
        [](P x) { return f::x_part(x[0], x[1], x[2]); },
        [](P x) { return f::x_representation(x[0], x[1], x[2]); }, trz, 1e-10));
    out.push_back(equal(
        "c_from_antiderivative", "C(z,r) = 32 / (pi (1+r)^3 sqrt(1+z^2)) int_0^1 pair dt",
        [](P x) {
            const double r = x[0];
            const double z = x[1];
            return 32.0 / (pi * std::pow(1.0 + r, 3) * std::sqrt(1.0 + z * z)) *
                   f::psi_pair_antiderivative(1.0, r, z);
        },
        [](P x) { return cf::c_closed(cf::EvalPoint(x[0], x[1])); }, rzp, 1e-9));
    out.push_back(equal(
        "c_at_zero_formula", "closed formula for C(0,r)",
        [](P x) { return f::c_zero_direct(x[0]); }, [](P x) { return cf::c_at_zero(x[0]); },
        {{"r", 0.05, 0.99}}, 1e-12));
    out.push_back(equal(
        "h3_zero_at_origin", "h3(0) = 0", [](P x) { return f::h3(0.0, x[0]); },
        [](P) { return 0.0; }, {{"r", 0.01, 0.99}}, 0.0));
    out.push_back(equal(
        "gradient_bound_consistency", "frak_c / (1-r^2) = C(0,r) / (1-r)",
        [](P x) { return cf::gradient_bound(x[0]) * (1.0 - x[0]); },
        [](P x) { return cf::c_at_zero(x[0]); }, {{"r", 0.01, 0.99}}, 1e-13));
    out.push_back(equal(
        "Q_partial_fractions_as_displayed", "partial-fraction form of Q(w), unmodified",
        [](P x) { return f::q_integrand(x[0], x[1], x[2]); },
        [](P x) { return f::q_partial_fractions(x[0], x[1], x[2], true); }, wrz, 1e-10,
        Role::probe));
    return out;
}

std::vector<IdentityCase> inequality_cases() {
    const std::vector<ParamRange> zr = {z_sweep(), r_sweep()};
    const std::vector<ParamRange> r1 = {{"r", 0.0, 1.0}};
    const double lo = 3.0 * std::sqrt(3.0) / (2.0 * pi);
    const double hi = 16.0 / (3.0 * pi);
    constexpr double h = 1e-4;
    std::vector<IdentityCase> out;
    out.push_back(leq(
        "L_bound", "L(z) <= r z sqrt(4-r^2)", [](P x) { return f::l_envelope(x[0], x[1]); },
        [](P x) { return x[1] * x[0] * std::sqrt(4.0 - x[1] * x[1]); }, zr, 100));
    out.push_back(leq(
        "g1_bound", "g1(z) <= g1(0)", [](P x) { return f::g1(x[0], x[1]); },
        [](P x) { return f::g1(0.0, x[1]); }, zr, 100));
    out.push_back(leq(
        "g1_prime_nonpositive", "g1'(z) <= 0", [](P x) { return f::g1_prime(x[0], x[1]); },
        [](P) { return 0.0; }, zr, 100));
    out.push_back(leq(
        "h2_prime_nonpositive", "h2'(z) <= 0",
        [](P x) { return f::h2_positive_prime(x[0], x[1], true); }, [](P) { return 0.0; }, zr,
        100));
    out.push_back(leq(
        "h2_bound", "h2(z) <= h2(0)", [](P x) { return f::h2_positive(x[0], x[1]); },
        [](P x) { return f::h2_positive(0.0, x[1]); }, zr, 100));
    out.push_back(leq(
        "h3_nonpositive", "h3(z) <= h3(0) = 0", [](P x) { return f::h3(x[0], x[1]); },
        [](P) { return 0.0; }, zr, 100));
    out.push_back(leq(
        "tanh_argument_below_one", "r z s / (1 + (1+r^2) z^2) < 1",
        [](P x) {
            const double z = x[0];
            const double r = x[1];
            return r * z * std::sqrt(4.0 - r * r + 4.0 * z * z) / (1.0 + (1.0 + r * r) * z * z);
        },
        [](P) { return 1.0; }, zr, 100, true));
    out.push_back(leq(
        "c_positive", "C(z,r) > 0", [](P) { return 0.0; },
        [](P x) { return cf::c_closed(cf::EvalPoint(x[1], x[0])); }, zr, 100, true));
    out.push_back(leq(
        "sup_sweep", "C(z,r) <= C(0,r)",
        [](P x) { return cf::c_closed(cf::EvalPoint(x[1], x[0])); },
        [](P x) { return cf::c_at_zero(x[1]); }, zr, 200));
    out.push_back(leq(
        "v_nonnegative", "v(r) >= 0", [](P x) { return -f::v_witness(x[0]); },
        [](P) { return 0.0; }, r1, 10000));
    out.push_back(leq(
        "frak_c_decreasing", "sharp-constant map strictly decreasing",
        [](P x) { return cf::frak_c(std::min(x[0] + h, 1.0)); },
        [](P x) { return cf::frak_c(x[0]); }, {{"r", 0.0, 1.0 - h}}, 10000, true));
    out.push_back(leq(
        "c_at_zero_upper", "C(0,r) <= 16 / (3 pi)", [](P x) { return cf::c_at_zero(x[0]); },
        [hi](P) { return hi; }, {{"r", 0.0, 0.999}}, 10000));
    out.push_back(leq(
        "c_at_zero_lower", "C(0,r) >= 3 sqrt3 / (2 pi)", [lo](P) { return lo; },
        [](P x) { return cf::c_at_zero(x[0]); }, {{"r", 0.0, 0.999}}, 10000));
    return out;
}

std::vector<IdentityCase> chain_cases() {
    const std::vector<ParamRange> zr = {z_sweep(), r_sweep()};
    using Pick = double (*)(const ChainTerms&);
    struct Step {
        const char* id;
        const char* anchor;
        Pick lhs;
        Pick rhs;
    };
    static constexpr std::array<Step, 4> kSteps = {{
        {"1", "C <= bracket with h2, h3 frozen at 0", [](const ChainTerms& t) { return t.c; },
         [](const ChainTerms& t) { return t.a; }},
        {"2", "C <= (1-r) g1(z) / (pi r^3 (1-r^2)) + 2(1-r)(h2(0)+h3(0)) / (pi r^3 sqrt(1+z^2))",
         [](const ChainTerms& t) { return t.c; }, [](const ChainTerms& t) { return t.b; }},
        {"3", "g1(z) term <= g1(0) term", [](const ChainTerms& t) { return t.b; },
         [](const ChainTerms& t) { return t.d; }},
        {"4", "C(z,r) <= C(0,r) end to end", [](const ChainTerms& t) { return t.c; },
         [](const ChainTerms& t) { return t.d; }},
    }};
    std::vector<IdentityCase> out;
    for (const auto* conv : {"l1", "l4"}) {
        const double sigma = std::string(conv) == "l1" ? 1.0 : -1.0;
        for (const auto& st : kSteps) {
            const Pick pl = st.lhs;
            const Pick pr = st.rhs;
            auto c = leq(
                std::string("theorem_chain_step") + st.id + "[" + conv + "]", st.anchor,
                [pl, sigma](P x) { return pl(chain_terms(x[1], x[0], sigma)); },
                [pr, sigma](P x) { return pr(chain_terms(x[1], x[0], sigma)); }, zr, 100);
            c.convention = conv;
            const bool gate = sigma > 0.0 && std::string(st.id) == "4";
            c.role = gate ? Role::required : Role::probe;
            out.push_back(std::move(c));
        }
    }
    return out;
}

SupResult locate_sup(double r, int n, double z_max, const kernelint::QuadratureSpec& q) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("locate_sup: radius must lie in (0, 1)");
    if (n < 3) throw DomainError("locate_sup: dimension must be >= 3");
    if (!(z_max > 0.0) || !std::isfinite(z_max)) {
        throw DomainError("locate_sup: z_max must be positive and finite");
    }
    q.validate();
    double err = 0.0;
    const auto ps = n == 4 ? kernelint::ParamSet{} : kernelint::ParamSet::make(n, r);
    const auto c_of = [&](double z) {
        const cf::EvalPoint p(r, z);
        if (n == 4) return cf::c_closed(p);
        const auto res = kernelint::c_numeric(p, ps, q);
        err = std::max(err, res.error);
        return res.value;
    };

    const double c0 = c_of(0.0);
    constexpr int kMaxDoublings = 48;
    bool bracketed = false;
    for (int i = 0; i < kMaxDoublings; ++i) {
        const double tail = c_of(z_max);
        if (tail < 0.5 * c0) {
            bracketed = true;
            break;
        }
        // C tends to a positive limit as z grows; accept a tail that has
        // settled strictly below C(0).
        const double further = c_of(2.0 * z_max);
        const double settle = std::max(1e-6 * c0, 4.0 * err);
        if (std::abs(further - tail) <= settle && std::max(tail, further) + settle < c0) {
            bracketed = true;
            break;
        }
        z_max *= 2.0;
    }
    if (!bracketed) {
        throw BracketError("locate_sup: C(z) has not settled below C(0) by z = " + fmt(z_max));
    }

    constexpr int kGrid = 512;
    std::vector<double> zs(kGrid);
    std::vector<double> cs(kGrid);
    zs[0] = 0.0;
    cs[0] = c0;
    for (int i = 1; i < kGrid; ++i) {
        zs[i] = z_max * std::pow(10.0, -8.0 + 8.0 * (i - 1) / (kGrid - 2.0));
        cs[i] = c_of(zs[i]);
    }
    const auto best = static_cast<int>(std::max_element(cs.begin(), cs.end()) - cs.begin());

    double a = zs[std::max(best - 1, 0)];
    double b = zs[std::min(best + 1, kGrid - 1)];
    double z_star = zs[best];
    double c_star = cs[best];
    const auto consider = [&](double z, double c) {
        if (c > c_star || (c == c_star && z < z_star)) {
            z_star = z;
            c_star = c;
        }
    };
    consider(a, c_of(a));
    consider(b, c_of(b));

    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = c_of(x1);
    double f2 = c_of(x2);
    for (int it = 0; it < 200 && b - a > 1e-12 * std::max(1.0, b); ++it) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = c_of(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = c_of(x2);
        }
    }
    consider(x1, f1);
    consider(x2, f2);
    return {z_star, c_star, z_max, err};
}

std::vector<double> radius_grid(int steps) {
    if (steps < 1) throw DomainError("radius_grid: need at least one radius");
    std::vector<double> out(steps);
    for (int j = 1; j <= steps; ++j) out[j - 1] = static_cast<double>(j) / (steps + 1);
    return out;
}

std::vector<double> theta_grid(int steps) {
    if (steps < 2) throw DomainError("theta_grid: need at least two angles");
    std::vector<double> out(steps);
    for (int j = 0; j < steps; ++j) out[j] = 0.5 * pi * j / (steps - 1);
    return out;
}

VerificationReport conjecture_report(int n, std::span<const double> r_grid,
                                     std::span<const double> theta_grid,
                                     const oracle::SphereQuadrature& sq) {
    if (r_grid.empty() || theta_grid.empty()) {
        throw DomainError("conjecture_report: grids must be nonempty");
    }
    VerificationReport rep;
    rep.case_name = "conjecture_n" + std::to_string(n);
    rep.anchor = "normal direction maximizes C(x, v)";
    rep.kind = "direction_profile";
    rep.sample = std::to_string(r_grid.size()) + " radii x " + std::to_string(theta_grid.size()) +
                 " angles";
    rep.method = std::string(oracle::to_string(sq.method));
    rep.seed = sq.method == oracle::SphereMethod::monte_carlo ? sq.seed : 0;
    rep.worst_violation = -std::numeric_limits<double>::infinity();
    for (double r : r_grid) {
        const auto prof = oracle::best_direction(n, r, theta_grid, sq);
        double v = prof.max_excess;
        double where = prof.theta_star;
        if (n == 2) {
            const double ref = prof.profile.front().value;
            v = 0.0;
            for (const auto& p : prof.profile) {
                const double dev = std::abs(p.value - ref) / ref;
                if (dev > v) {
                    v = dev;
                    where = p.theta;
                }
            }
        }
        if (v > rep.worst_violation) {
            rep.worst_violation = v;
            rep.location = {{"r", r}, {"theta", where}};
        }
    }
    rep.worst_signed = rep.worst_violation;
    if (n == 4) {
        rep.tolerance = 0.0;
        rep.note = "violation = value(theta) - value(0) - combined quadrature error";
        rep.verdict = rep.worst_violation <= rep.tolerance ? Verdict::pass : Verdict::fail;
    } else if (n == 2) {
        rep.tolerance = 1e-5;
        rep.note = "flatness: max |value(theta) - value(0)| / value(0)";
        rep.verdict = rep.worst_violation <= rep.tolerance ? Verdict::pass : Verdict::fail;
    } else {
        rep.tolerance = std::numeric_limits<double>::quiet_NaN();
        rep.note = "exploratory: no proven statement for this dimension";
        rep.verdict = Verdict::exploratory;
    }
    return rep;
}

namespace {

std::vector<VerificationReport> identities_suite(const SuiteOptions& o) {
    std::vector<VerificationReport> out;
    for (auto c : derivative_cases()) {
        if (c.role == Role::required) c.tolerance = o.tol;
        out.push_back(check_derivative_identity(c, {}, o.seed));
    }
    for (const auto& c : pointwise_cases()) out.push_back(check_pointwise_equal(c, o.seed));
    return out;
}

std::vector<VerificationReport> lemmas_suite() {
    std::vector<VerificationReport> out;
    for (const auto& c : inequality_cases()) out.push_back(check_inequality(c));
    std::array<std::string, 4> passed;
    for (const auto& c : chain_cases()) {
        out.push_back(check_inequality(c));
        if (out.back().verdict == Verdict::pass) {
            auto& s = passed[static_cast<std::size_t>(c.name[c.name.find("step") + 4] - '1')];
            s += (s.empty() ? "" : ",") + c.convention;
        }
    }
    VerificationReport sum;
    sum.case_name = "theorem_chain_summary";
    sum.anchor = "which h2 ordering makes each step of the chain hold";
    sum.kind = "summary";
    sum.role = Role::probe;
    sum.method = "aggregate";
    sum.tolerance = 0.0;
    for (std::size_t i = 0; i < passed.size(); ++i) {
        sum.note += (i ? "; " : "") + std::string("step") + std::to_string(i + 1) + ": " +
                    (passed[i].empty() ? "none" : passed[i]);
    }
    out.push_back(std::move(sum));
    return out;
}

std::vector<VerificationReport> sup_suite(const SuiteOptions& o) {
    std::vector<VerificationReport> out;
    const auto radii = radius_grid(o.r_steps);
    const kernelint::QuadratureSpec q{};
    if (o.n != 4) {
        for (double r : radii) {
            const auto s = locate_sup(r, o.n, 10.0, q);
            VerificationReport rep;
            rep.case_name = "sup_exploratory_n" + std::to_string(o.n) + "[r=" + fmt(r) + "]";
            rep.anchor = "maximizer of C(z,r) over z >= 0";
            rep.kind = "sup_location";
            rep.sample = "512-point grid plus golden section";
            rep.method = "adaptive_gauss_kronrod";
            rep.worst_violation = s.c_star;
            rep.worst_signed = s.c_star;
            rep.location = {{"r", r}, {"z_star", s.z_star}, {"c_star", s.c_star},
                            {"z_max", s.z_max}, {"error", s.error}};
            rep.tolerance = std::numeric_limits<double>::quiet_NaN();
            rep.verdict = Verdict::exploratory;
            rep.note = "exploratory: c_star reported in worst_violation";
            out.push_back(std::move(rep));
        }
        return out;
    }
    VerificationReport value;
    value.case_name = "sup_value";
    value.anchor = "sup_z C(z,r) = C(0,r)";
    value.kind = "sup_location";
    value.sample = std::to_string(radii.size()) + " radii, 512-point grid plus golden section";
    value.method = "closed_form";
    value.tolerance = 1e-9;
    value.note = "violation = c_star / C(0,r) - 1";
    value.worst_violation = -std::numeric_limits<double>::infinity();
    VerificationReport where = value;
    where.case_name = "sup_location";
    where.tolerance = 1e-4;
    where.note = "violation = z_star";
    for (double r : radii) {
        const auto s = locate_sup(r, 4, 10.0, q);
        const double rel = s.c_star / cf::c_at_zero(r) - 1.0;
        if (rel > value.worst_violation) {
            value.worst_violation = rel;
            value.location = {{"r", r}, {"z_star", s.z_star}, {"c_star", s.c_star}};
        }
        if (s.z_star > where.worst_violation) {
            where.worst_violation = s.z_star;
            where.location = {{"r", r}, {"z_star", s.z_star}, {"c_star", s.c_star}};
        }
    }
    for (auto* rep : {&value, &where}) {
        rep->worst_signed = rep->worst_violation;
        finish(*rep);
        out.push_back(*rep);
    }
    return out;
}

std::vector<VerificationReport> oracle_suite(const SuiteOptions& o) {
    std::vector<VerificationReport> out;
    const auto& sq = o.sphere;
    oracle::SphereQuadrature pg = sq;
    pg.method = oracle::SphereMethod::product_gauss;

    auto norm = oracle_report("oracle_normalization", "int P(x, zeta) dsigma = 1", 1e-8);
    norm.sample = "n in {2,3,4,5} x r in {0,0.3,0.6,0.9}";
    norm.method = "product_gauss";
    for (int n : {2, 3, 4, 5}) {
        for (double r : {0.0, 0.3, 0.6, 0.9}) {
            const double v = std::abs(oracle::kernel_mass(n, r, pg).value - 1.0);
            if (v > norm.worst_violation) {
                norm.worst_violation = v;
                norm.location = {{"n", n}, {"r", r}};
            }
        }
    }
    finish(norm);
    out.push_back(norm);

    auto grad = oracle_report("oracle_gradient_fd", "grad_x P against finite differences", 1e-8);
    grad.sample = "100 random (x, zeta) pairs per n in {2,3,4,5}, |x| <= 0.9";
    grad.method = "richardson_central_difference(h=1e-6)";
    grad.seed = o.seed;
    for (int n : {2, 3, 4, 5}) {
        std::uint64_t k = static_cast<std::uint64_t>(n) << 32;
        for (int pair = 0; pair < 100; ++pair) {
            auto x = random_unit(n, o.seed, k);
            const double rad = 0.9 * unit_uniform(o.seed, k++);
            for (double& c : x) c *= rad;
            const auto zeta = random_unit(n, o.seed, k);
            const auto g = oracle::poisson_gradient(x, zeta);
            const ScalarFn kernel = [&](P y) { return oracle::poisson_kernel(y, zeta); };
            for (int i = 0; i < n; ++i) {
                const double fd = richardson_derivative(kernel, x, i, 1e-6);
                const double v = std::abs(fd - g[i]) / std::max(1.0, std::abs(g[i]));
                if (v > grad.worst_violation) {
                    grad.worst_violation = v;
                    grad.location = {{"n", n}, {"pair", pair}, {"component", i}, {"|x|", rad}};
                }
            }
        }
    }
    finish(grad);
    out.push_back(grad);

    auto disk = oracle_report("oracle_disk", "C(0) = 4 / pi for the unit disk", 1e-8);
    disk.sample = "n = 2, r = 0, theta = 0";
    disk.method = "product_gauss";
    disk.worst_violation =
        std::abs(oracle::directional_constant({2, 0.0, 0.0}, pg).value - 4.0 / pi);
    disk.location = {{"n", 2}, {"r", 0.0}};
    finish(disk);
    out.push_back(disk);

    auto eq = oracle_report("oracle_equality", "C(r e_4, e_4) = frak_c(r) / (1-r^2)", 1e-6);
    eq.sample = "n = 4, r in {0.1,0.3,0.5,0.7,0.9}, theta = 0";
    eq.method = "product_gauss";
    auto ext = oracle_report("oracle_extremal", "Poisson extension of the sign data attains C",
                             1e-10);
    ext.sample = eq.sample;
    ext.method = "product_gauss";
    for (double r : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const double val = oracle::directional_constant({4, r, 0.0}, pg).value;
        const double rel = std::abs(val / cf::gradient_bound(r) - 1.0);
        if (rel > eq.worst_violation) {
            eq.worst_violation = rel;
            eq.location = {{"r", r}, {"oracle", val}, {"closed", cf::gradient_bound(r)}};
        }
        const double e = std::abs(oracle::extremal_check(4, r, pg).value / val - 1.0);
        if (e > ext.worst_violation) {
            ext.worst_violation = e;
            ext.location = {{"r", r}};
        }
    }
    finish(eq);
    finish(ext);
    out.push_back(eq);
    out.push_back(ext);

    auto mc = oracle_report("oracle_mc_agreement", "Monte Carlo within 3 standard errors", 0.0);
    oracle::SphereQuadrature mcq = sq;
    mcq.method = oracle::SphereMethod::monte_carlo;
    mcq.seed = o.seed;
    mc.sample = "20 queries, " + std::to_string(mcq.samples) + " samples each";
    mc.method = "monte_carlo vs product_gauss";
    mc.seed = o.seed;
    mc.note = "violation = |mc - pg| - 3 se - pg error";
    for (int i = 0; i < 20; ++i) {
        const int n = 3 + i % 2;
        const double r = 0.1 + 0.15 * ((i / 2) % 5);
        const double theta = 0.5 * pi * ((i / 10) == 0 ? 0.0 : 0.5);
        mcq.seed = o.seed + static_cast<std::uint64_t>(i);
        const auto a = oracle::directional_constant({n, r, theta}, mcq);
        const auto b = oracle::directional_constant({n, r, theta}, pg);
        const double v = std::abs(a.value - b.value) - 3.0 * a.error - b.error;
        if (v > mc.worst_violation) {
            mc.worst_violation = v;
            mc.location = {{"n", n}, {"r", r}, {"theta", theta}};
        }
    }
    finish(mc);
    out.push_back(mc);
    for (auto& rep : out) rep.worst_signed = rep.worst_violation;
    return out;
}

}  // namespace

std::vector<VerificationReport> run_suite(Suite s, const SuiteOptions& opts) {
    switch (s) {
        case Suite::identities: return identities_suite(opts);
        case Suite::lemmas: return lemmas_suite();
        case Suite::sup: return sup_suite(opts);
        case Suite::conjecture: {
            const auto rs = radius_grid(opts.r_steps);
            const auto ts = theta_grid(opts.theta_steps);
            return {conjecture_report(opts.n, rs, ts, opts.sphere)};
        }
        case Suite::oracle: return oracle_suite(opts);
    }
    throw DomainError("run_suite: unknown suite");
}

}  // namespace khav::proofcheck
