#include "khavinson/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <numbers>
#include <string>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include "khavinson/errors.hpp"

namespace khav::kernelint {
namespace {

struct Workspace {
    gsl_integration_workspace* w = nullptr;
    std::size_t size = 0;
    ~Workspace() {
        if (w) gsl_integration_workspace_free(w);
    }
    gsl_integration_workspace* get(std::size_t n) {
        if (n > size) {
            if (w) gsl_integration_workspace_free(w);
            w = gsl_integration_workspace_alloc(n);
            size = n;
        }
        return w;
    }
};

struct Closure {
    const Integrand* f;
    std::exception_ptr failure;
};

// GSL is C; exceptions must not unwind through it.
double trampoline(double x, void* p) {
    auto* c = static_cast<Closure*>(p);
    if (c->failure) return 0.0;
    try {
        return (*c->f)(x);
    } catch (...) {
        c->failure = std::current_exception();
        return 0.0;
    }
}

void silence_gsl() {
    static const bool once = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)once;
}

}  // namespace

void QuadratureSpec::validate() const {
    constexpr double floor = 16.0 * std::numeric_limits<double>::epsilon();
    if (!(abs_tol >= floor) || !(rel_tol >= floor)) {
        throw DomainError("QuadratureSpec: tolerances must be >= 16 eps");
    }
    if (max_subdivisions < 1) {
        throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
    }
}

QuadResult adaptive_quad(const Integrand& f, double a, double b, const QuadratureSpec& q) {
    q.validate();
    if (!(a < b)) {
        throw DomainError("adaptive_quad: need a < b");
    }
    silence_gsl();

    Integrand mapped;
    const Integrand* g = &f;
    double lo = a;
    double hi = b;
    if (q.endpoint_mode == EndpointMode::algebraic_singularity) {
        const double width = b - a;
        mapped = [&f, a, width](double u) {
            const double jac = 6.0 * u * (1.0 - u);
            if (jac == 0.0) return 0.0;
            const double value = f(a + width * u * u * (3.0 - 2.0 * u)) * width * jac;
            // The node rounded onto the singular endpoint; its weight is O(eps).
            return std::isfinite(value) ? value : 0.0;
        };
        g = &mapped;
        lo = 0.0;
        hi = 1.0;
    }

    // one workspace per nesting level (integrands may integrate)
    thread_local std::vector<std::unique_ptr<Workspace>> pool;
    thread_local std::size_t depth = 0;
    if (pool.size() <= depth) pool.push_back(std::make_unique<Workspace>());
    struct Nest {
        std::size_t& d;
        explicit Nest(std::size_t& x) : d(x) { ++d; }
        ~Nest() { --d; }
    } nest(depth);
    const auto limit = static_cast<std::size_t>(q.max_subdivisions);
    gsl_integration_workspace* w = pool[depth - 1]->get(limit);
    Closure closure{g, nullptr};
    gsl_function fn{&trampoline, &closure};
    double value = 0.0;
    double error = 0.0;
    const int status =
        gsl_integration_qag(&fn, lo, hi, q.abs_tol, q.rel_tol, limit, GSL_INTEG_GAUSS15, w, &value, &error);
    if (closure.failure) std::rethrow_exception(closure.failure);
    const int used = static_cast<int>(w->size);
    if (status != GSL_SUCCESS) {
        // a roundoff flag with the target met is still a converged result
        const bool met = error <= std::max(q.abs_tol, q.rel_tol * std::abs(value));
        if (!(status == GSL_EROUND && met)) {
            throw ConvergenceError(std::string("adaptive_quad: ") + gsl_strerror(status) + " after " +
                                   std::to_string(used) + " intervals, error estimate " +
                                   std::to_string(error));
        }
    }
    if (!std::isfinite(value)) {
        throw ConvergenceError("adaptive_quad: non-finite result");
    }
    return {value, error, used};
}

GaussRule gauss_legendre(int n) {
    if (n < 1) {
        throw DomainError("gauss_legendre: need n >= 1");
    }
    // GSL's glfixed rules are off by ~1e-11 for untabulated n; Newton on P_n here.
    const auto legendre = [n](double x, double& dp) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        return p1;
    };
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            const double dx = legendre(x, dp) / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        legendre(x, dp);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[n / 2] = 0.0;
    }
    return rule;
}

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double acc = 0.0;
        for (double v : values) acc += v;
        return acc;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace khav::kernelint
