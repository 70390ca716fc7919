#include "khavinson/poisson_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "khavinson/errors.hpp"
#include "khavinson/quadrature.hpp"

namespace khav::oracle {
namespace {

using std::numbers::pi;
using kernelint::gauss_legendre;
using kernelint::GaussRule;
using kernelint::pairwise_sum;

double sphere_area_any(int k) { return 2.0 * std::pow(pi, 0.5 * k) / std::tgamma(0.5 * k); }

// A node of the reduced two-angle rule. zeta_n = cos(phi) and
// zeta_1 = sin(phi) cos(psi); weight already carries the sphere Jacobian and
// the normalization of sigma.
struct ReducedNode {
    double cos_phi;
    double sin_phi;
    double cos_psi;
    double sin_psi;
    double weight;
};

// <grad_x P, v> |x - zeta|^{n+2} = a + b cos(phi) + c sin(phi) at x = r e_n.
struct Numerator {
    double a;
    double b;
    double c_unit;  // c = c_unit * cos(psi)
};

Numerator numerator(int n, double r, double theta) {
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    const double om = 1.0 - r * r;
    return {-2.0 * r * (1.0 + r * r) * ct - n * om * r * ct, 4.0 * r * r * ct + n * om * ct,
            n * om * st};
}

// Zeros of a + b cos(phi) + c sin(phi) strictly inside (0, pi).
void push_roots(double a, double b, double c, std::vector<double>& out) {
    const double amp = std::hypot(b, c);
    if (amp == 0.0 || std::abs(a) > amp) return;
    const double shift = std::atan2(c, b);
    const double spread = std::acos(std::clamp(-a / amp, -1.0, 1.0));
    for (double phi : {shift + spread, shift - spread}) {
        phi = std::fmod(phi, 2.0 * pi);
        if (phi < 0.0) phi += 2.0 * pi;
        if (phi > 0.0 && phi < pi) out.push_back(phi);
    }
}

std::vector<double> sorted_breaks(std::vector<double> pts, double lo, double hi) {
    pts.push_back(lo);
    pts.push_back(hi);
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    for (double p : pts) {
        if (p < lo || p > hi) continue;
        if (out.empty() || p - out.back() > 1e-14) out.push_back(p);
    }
    if (out.back() != hi) out.back() = hi;
    return out;
}

// Every node of the reduced product rule for (n, r, theta) with m polar and
// mm azimuthal Gauss points per piece.
std::vector<ReducedNode> product_nodes(int n, double r, double theta, int m, int mm) {
    const Numerator num = numerator(n, r, theta);
    const GaussRule polar = gauss_legendre(m);

    std::vector<double> graded;
    if (r > 0.0) {
        for (double s = 1.0 - r; s < 0.75 * pi; s *= 2.0) graded.push_back(s);
    }

    struct Azimuth {
        double cos_psi;
        double sin_psi;
        double weight;
    };
    std::vector<Azimuth> azimuths;
    if (n == 2) {
        azimuths.push_back({1.0, 0.0, 1.0 / (2.0 * pi)});
        azimuths.push_back({-1.0, 0.0, 1.0 / (2.0 * pi)});
    } else {
        const GaussRule az = gauss_legendre(mm);
        const double norm = sphere_area_any(n - 2) / sphere_area_any(n);
        // psi where a + b cos + c sin becomes tangent to zero; the inner
        // integral has a (psi - psi0)^{3/2} kink there.
        // psi = pi/2 (cos psi = 0) is where the amplitude of the numerator is
        // smallest; it is a kink itself when a = b = 0.
        std::vector<double> kinks = {0.5 * pi};
        const double disc = num.a * num.a - num.b * num.b;
        if (num.c_unit != 0.0 && disc > 0.0) {
            const double cpsi = std::sqrt(disc) / std::abs(num.c_unit);
            if (cpsi < 1.0) {
                kinks.push_back(std::acos(cpsi));
                kinks.push_back(std::acos(-cpsi));
            }
        }
        const auto breaks = sorted_breaks(kinks, 0.0, pi);
        for (std::size_t piece = 0; piece + 1 < breaks.size(); ++piece) {
            const double lo = breaks[piece];
            const double width = breaks[piece + 1] - lo;
            for (int i = 0; i < mm; ++i) {
                // Smoothstep map clusters nodes at both ends of the piece.
                const double u = 0.5 * (az.nodes[i] + 1.0);
                const double psi = lo + width * u * u * (3.0 - 2.0 * u);
                const double jac = 0.5 * az.weights[i] * 6.0 * u * (1.0 - u) * width;
                const double sp = std::sin(psi);
                azimuths.push_back({std::cos(psi), sp, norm * jac * std::pow(sp, n - 3)});
            }
        }
    }

    std::vector<ReducedNode> nodes;
    std::vector<double> cuts;
    for (const auto& az : azimuths) {
        cuts = graded;
        push_roots(num.a, num.b, num.c_unit * az.cos_psi, cuts);
        const auto breaks = sorted_breaks(cuts, 0.0, pi);
        for (std::size_t piece = 0; piece + 1 < breaks.size(); ++piece) {
            const double lo = breaks[piece];
            const double half = 0.5 * (breaks[piece + 1] - lo);
            for (int i = 0; i < m; ++i) {
                const double phi = lo + half * (polar.nodes[i] + 1.0);
                const double sphi = std::sin(phi);
                nodes.push_back({std::cos(phi), sphi, az.cos_psi, az.sin_psi,
                                 az.weight * half * polar.weights[i] * std::pow(sphi, n - 2)});
            }
        }
    }
    return nodes;
}

double reduced_derivative(int n, double r, const Numerator& num, const ReducedNode& node) {
    const double d2 = 1.0 + r * r - 2.0 * r * node.cos_phi;
    const double top = num.a + num.b * node.cos_phi + num.c_unit * node.cos_psi * node.sin_phi;
    return top / std::pow(d2, 0.5 * (n + 2));
}

template <class Fn>
double product_sum(const std::vector<ReducedNode>& nodes, Fn&& fn) {
    std::vector<double> terms;
    terms.reserve(nodes.size());
    for (const auto& node : nodes) terms.push_back(node.weight * fn(node));
    return pairwise_sum(terms);
}

template <class Fn>
OracleValue product_rule(int n, double r, double theta, const SphereQuadrature& sq, Fn&& fn) {
    const double coarse =
        product_sum(product_nodes(n, r, theta, sq.nodes_polar, sq.nodes_azimuthal), fn);
    const double fine =
        product_sum(product_nodes(n, r, theta, 2 * sq.nodes_polar, 2 * sq.nodes_azimuthal), fn);
    return {fine, std::abs(fine - coarse), SphereMethod::product_gauss};
}

double unit_uniform(std::uint64_t seed, std::uint64_t counter) {
    return (static_cast<double>(counter_hash(seed, counter) >> 11) + 0.5) * 0x1.0p-53;
}

// zeta uniform on S^{n-1} from the sample index alone.
std::vector<double> sphere_sample(int n, std::uint64_t seed, std::uint64_t index) {
    std::vector<double> zeta(n);
    double norm2 = 0.0;
    const std::uint64_t base = index * static_cast<std::uint64_t>(n + 1);
    for (int j = 0; j < n; j += 2) {
        const double u1 = unit_uniform(seed, base + j);
        const double u2 = unit_uniform(seed, base + j + 1);
        const double rad = std::sqrt(-2.0 * std::log(u1));
        zeta[j] = rad * std::cos(2.0 * pi * u2);
        if (j + 1 < n) zeta[j + 1] = rad * std::sin(2.0 * pi * u2);
    }
    for (double c : zeta) norm2 += c * c;
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& c : zeta) c *= inv;
    return zeta;
}

template <class Fn>
OracleValue monte_carlo(int n, const SphereQuadrature& sq, Fn&& fn) {
    if (sq.samples < 2) {
        throw DomainError("monte_carlo: need at least 2 samples");
    }
    std::vector<double> vals(static_cast<std::size_t>(sq.samples));
    for (std::int64_t i = 0; i < sq.samples; ++i) {
        vals[i] = fn(sphere_sample(n, sq.seed, static_cast<std::uint64_t>(i)));
    }
    const double count = static_cast<double>(sq.samples);
    const double mean = pairwise_sum(vals) / count;
    for (double& v : vals) v = (v - mean) * (v - mean);
    const double var = pairwise_sum(vals) / (count - 1.0);
    return {mean, std::sqrt(var / count), SphereMethod::monte_carlo};
}

std::vector<double> canonical_point(int n, double r) {
    std::vector<double> x(n, 0.0);
    x[n - 1] = r;
    return x;
}

double norm(std::span<const double> v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

void require_pair(std::span<const double> x, std::span<const double> zeta) {
    if (x.size() != zeta.size() || x.size() < 2) {
        throw DomainError("poisson: x and zeta must share a dimension >= 2");
    }
    if (!(norm(x) < 1.0)) {
        throw DomainError("poisson: x must lie inside the unit ball");
    }
    if (std::abs(norm(zeta) - 1.0) > 1e-12) {
        throw DomainError("poisson: zeta must lie on the unit sphere");
    }
}

// Representative boundary point for a reduced node (the remaining S^{n-3}
// coordinates are placed on e_2).
std::vector<double> node_point(int n, const ReducedNode& node) {
    std::vector<double> zeta(n, 0.0);
    zeta[0] = node.sin_phi * node.cos_psi;
    if (n >= 3) zeta[1] = node.sin_phi * node.sin_psi;
    zeta[n - 1] = node.cos_phi;
    return zeta;
}

}  // namespace

void DirectionalQuery::validate() const {
    if (n < 2) throw DomainError("DirectionalQuery: dimension must be >= 2");
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("DirectionalQuery: radius must lie in [0, 1)");
    if (!(theta >= 0.0 && theta <= 0.5 * pi + 1e-15)) {
        throw DomainError("DirectionalQuery: theta must lie in [0, pi/2]");
    }
}

std::string_view to_string(SphereMethod m) noexcept {
    switch (m) {
        case SphereMethod::product_gauss: return "product_gauss";
        case SphereMethod::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter) noexcept {
    // Two rounds of the splitmix64 finalizer over (seed, counter).
    auto mix = [](std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(seed + 0x9e3779b97f4a7c15ULL) ^ (counter * 0x9e3779b97f4a7c15ULL + 1));
}

double poisson_kernel(std::span<const double> x, std::span<const double> zeta) {
    require_pair(x, zeta);
    double x2 = 0.0;
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        x2 += x[i] * x[i];
        d2 += (x[i] - zeta[i]) * (x[i] - zeta[i]);
    }
    return (1.0 - x2) / std::pow(d2, 0.5 * static_cast<double>(x.size()));
}

std::vector<double> poisson_gradient(std::span<const double> x, std::span<const double> zeta) {
    require_pair(x, zeta);
    const auto n = static_cast<double>(x.size());
    double x2 = 0.0;
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        x2 += x[i] * x[i];
        d2 += (x[i] - zeta[i]) * (x[i] - zeta[i]);
    }
    const double dn = std::pow(d2, 0.5 * n);
    const double dn2 = dn * d2;
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        g[i] = -2.0 * x[i] / dn - n * (1.0 - x2) * (x[i] - zeta[i]) / dn2;
    }
    return g;
}

OracleValue directional_constant(const DirectionalQuery& q, const SphereQuadrature& sq) {
    q.validate();
    if (sq.method == SphereMethod::monte_carlo) {
        const auto x = canonical_point(q.n, q.r);
        std::vector<double> v(q.n, 0.0);
        v[q.n - 1] = std::cos(q.theta);
        v[0] += std::sin(q.theta);
        return monte_carlo(q.n, sq, [&](const std::vector<double>& zeta) {
            const auto g = poisson_gradient(x, zeta);
            double dot = 0.0;
            for (int i = 0; i < q.n; ++i) dot += g[i] * v[i];
            return std::abs(dot);
        });
    }
    const Numerator num = numerator(q.n, q.r, q.theta);
    return product_rule(q.n, q.r, q.theta, sq, [&](const ReducedNode& node) {
        return std::abs(reduced_derivative(q.n, q.r, num, node));
    });
}

OracleValue directional_constant(std::span<const double> x, std::span<const double> v,
                                 const SphereQuadrature& sq) {
    if (x.size() != v.size() || x.size() < 2) {
        throw DomainError("directional_constant: x and v must share a dimension >= 2");
    }
    const double vn = norm(v);
    if (vn == 0.0) throw DomainError("directional_constant: direction must be nonzero");
    DirectionalQuery q;
    q.n = static_cast<int>(x.size());
    q.r = norm(x);
    if (q.r > 0.0) {
        double dot = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * v[i];
        const double c = std::clamp(std::abs(dot) / (q.r * vn), 0.0, 1.0);
        q.theta = std::acos(c);
    }
    return directional_constant(q, sq);
}

DirectionProfile best_direction(int n, double r, std::span<const double> theta_grid,
                                const SphereQuadrature& sq) {
    if (std::find(theta_grid.begin(), theta_grid.end(), 0.0) == theta_grid.end()) {
        throw DomainError("best_direction: theta grid must contain 0");
    }
    DirectionProfile out;
    ProfilePoint normal{0.0, 0.0, 0.0};
    double best = -1.0;
    for (double theta : theta_grid) {
        const auto val = directional_constant(DirectionalQuery{n, r, theta}, sq);
        out.profile.push_back({theta, val.value, val.error});
        if (theta == 0.0) normal = out.profile.back();
        if (val.value > best) {
            best = val.value;
            out.theta_star = theta;
        }
    }
    out.max_excess = -std::numeric_limits<double>::infinity();
    for (const auto& p : out.profile) {
        if (p.theta == 0.0) continue;
        // Roundoff floor for the product rule, whose doubling delta can vanish.
        const double floor = 64.0 * std::numeric_limits<double>::epsilon() * normal.value;
        const double excess = p.value - normal.value - (p.error + normal.error + floor);
        out.max_excess = std::max(out.max_excess, excess);
    }
    if (out.profile.size() == 1) out.max_excess = 0.0;
    out.conjecture_violation = out.max_excess > 0.0;
    return out;
}

OracleValue extremal_check(int n, double r, const SphereQuadrature& sq) {
    DirectionalQuery{n, r, 0.0}.validate();
    const auto x = canonical_point(n, r);
    const auto normal_part = [&](const std::vector<double>& zeta) {
        const auto g = poisson_gradient(x, zeta);
        const double boundary = g[n - 1] > 0.0 ? 1.0 : (g[n - 1] < 0.0 ? -1.0 : 0.0);
        return g[n - 1] * boundary;
    };
    if (sq.method == SphereMethod::monte_carlo) {
        return monte_carlo(n, sq, normal_part);
    }
    return product_rule(n, r, 0.0, sq,
                        [&](const ReducedNode& node) { return normal_part(node_point(n, node)); });
}

OracleValue kernel_mass(int n, double r, const SphereQuadrature& sq) {
    DirectionalQuery{n, r, 0.0}.validate();
    const auto x = canonical_point(n, r);
    if (sq.method == SphereMethod::monte_carlo) {
        return monte_carlo(n, sq, [&](const std::vector<double>& zeta) { return poisson_kernel(x, zeta); });
    }
    return product_rule(n, r, 0.0, sq, [&](const ReducedNode& node) {
        const double d2 = 1.0 + r * r - 2.0 * r * node.cos_phi;
        return (1.0 - r * r) / std::pow(d2, 0.5 * n);
    });
}

}  // namespace khav::oracle
