#include "khavinson/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "khavinson/closedform4.hpp"
#include "khavinson/errors.hpp"
#include "khavinson/kernelint.hpp"
#include "khavinson/poisson_oracle.hpp"

namespace khav::cli {
namespace {

using nlohmann::ordered_json;
namespace cf = closedform4;
namespace pc = proofcheck;

std::string num(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// JSON has no infinities; unbounded values become null.
ordered_json jnum(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

struct Options {
    double r = 0.5;
    int n = 4;
    double z = 0.0;
    double theta = 0.0;
    int r_steps = 19;
    int theta_steps = 50;
    std::optional<double> tol;
    std::uint64_t seed = 0;
    std::string method = "product-gauss";
    std::int64_t samples = 200000;
    std::string out_path;
    bool json = false;
    bool no_timing = false;
    // curve
    std::string quantity = "frak_c";
    double from = 0.0;
    double to = 1.0;
    int steps = 11;
    // verify
    std::string suite;
};

oracle::SphereQuadrature sphere_of(const Options& o) {
    oracle::SphereQuadrature sq;
    if (o.method == "monte-carlo") {
        sq.method = oracle::SphereMethod::monte_carlo;
    } else if (o.method != "product-gauss") {
        throw CLI::ValidationError("--method", "expected product-gauss or monte-carlo");
    }
    sq.samples = o.samples;
    sq.seed = o.seed;
    return sq;
}

class Runner {
public:
    Runner(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
        : args_(args), out_(out), err_(err), start_(std::chrono::steady_clock::now()) {}

    ordered_json manifest(const std::string& command, ordered_json methods) const {
        std::string line;
        for (const auto& a : args_) line += (line.empty() ? "" : " ") + a;
        ordered_json m;
        m["tool"] = kToolName;
        m["version"] = kVersion;
        m["command"] = command;
        m["command_line"] = line;
        m["tolerances"] = {{"identities", o.tol.value_or(1e-7)},
                           {"closed_vs_quadrature", 1e-9},
                           {"oracle_vs_closed", 1e-6},
                           {"inequalities", 1e-12}};
        m["seed"] = o.seed;
        m["methods"] = std::move(methods);
        if (!o.no_timing) {
            const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
            m["wall_time_s"] = dt.count();
        }
        return m;
    }

    // JSON goes to --out when given, else to out.
    void emit_json(const ordered_json& doc) {
        const std::string text = doc.dump(2) + "\n";
        if (o.out_path.empty()) {
            out_ << text;
            return;
        }
        write_file(o.out_path, text);
    }

    void write_file(const std::string& path, const std::string& text) {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + path + " for writing");
        f << text;
    }

    int constant() {
        const bool edge = o.r == 1.0;
        if (!(o.r >= 0.0 && o.r <= 1.0)) throw CLI::ValidationError("--r", "must lie in [0, 1]");
        double frak = 0.0;
        double c0 = 0.0;
        double bound = 0.0;
        std::string method;
        std::string tag = "proven";
        if (o.n == 4) {
            frak = cf::frak_c(o.r);
            bound = cf::gradient_bound(o.r);
            c0 = frak / (1.0 + o.r);
            method = o.r < cf::kSeriesRadius ? "series_branch" : "closed_form";
        } else if (o.n == 2) {
            frak = 4.0 / std::numbers::pi;
            c0 = frak / (1.0 + o.r);
            bound = edge ? std::numeric_limits<double>::infinity() : cf::disk_constant(o.r);
            method = "classical_disk";
        } else {
            if (o.n < 2) throw CLI::ValidationError("--n", "dimension must be >= 2");
            if (!(o.r > 0.0 && o.r < 1.0)) {
                throw CLI::ValidationError("--r", "quadrature values need 0 < r < 1 for n != 4");
            }
            const auto ps = kernelint::ParamSet::make(o.n, o.r);
            c0 = kernelint::c_numeric(cf::EvalPoint(o.r, 0.0), ps, {}).value;
            frak = c0 * (1.0 + o.r);
            bound = c0 / (1.0 - o.r);
            method = "quadrature";
            tag = "exploratory";
        }
        if (o.json) {
            ordered_json rec;
            rec["quantity"] = "constant";
            rec["n"] = o.n;
            rec["r"] = o.r;
            rec["frak_c"] = frak;
            rec["c_at_zero"] = jnum(c0);
            rec["gradient_bound"] = jnum(bound);
            rec["gradient_bound_unbounded"] = !std::isfinite(bound);
            rec["method"] = method;
            rec["tag"] = tag;
            emit_json({{"manifest", manifest("constant", ordered_json::array({method}))},
                       {"reports", ordered_json::array({rec})}});
            return ok;
        }
        out_ << "n = " << o.n << "\n";
        out_ << "r = " << num(o.r) << "\n";
        out_ << "frak_c = " << num(frak) << "\n";
        out_ << "c_at_zero = " << num(c0) << "\n";
        out_ << "gradient_bound = " << (std::isfinite(bound) ? num(bound) : "unbounded") << "\n";
        out_ << "method = " << method << "\n";
        out_ << "tag = " << tag << "\n";
        return ok;
    }

    int curve() {
        if (o.steps < 2) throw CLI::ValidationError("--steps", "need at least 2 steps");
        if (!(o.from < o.to)) throw CLI::ValidationError("--from/--to", "empty range");
        const bool profile = o.quantity == "c_of_z";
        std::function<double(double)> fn;
        if (o.quantity == "frak_c") {
            fn = [](double r) { return cf::frak_c(r); };
        } else if (o.quantity == "c_at_zero") {
            fn = [](double r) { return cf::c_at_zero(r); };
        } else if (o.quantity == "gradient_bound") {
            fn = [](double r) { return cf::gradient_bound(r); };
        } else if (profile) {
            const double r = o.r;
            fn = [r](double z) { return cf::c_closed(cf::EvalPoint(r, z)); };
        } else {
            throw CLI::ValidationError("--quantity",
                                       "expected frak_c, c_at_zero, gradient_bound or c_of_z");
        }
        std::string csv = profile ? "z,value\n" : "r,value\n";
        for (int i = 0; i < o.steps; ++i) {
            const double x =
                i + 1 == o.steps ? o.to : o.from + (o.to - o.from) * i / (o.steps - 1.0);
            double v = std::numeric_limits<double>::quiet_NaN();
            try {
                v = fn(x);
            } catch (const std::exception&) {
            }
            if (!std::isfinite(v)) {
                err_ << "curve: " << o.quantity << " is not finite at " << num(x) << "\n";
                return numerical;
            }
            csv += num(x) + "," + num(v) + "\n";
        }
        if (o.out_path.empty()) {
            out_ << csv;
            return ok;
        }
        write_file(o.out_path, csv);
        auto m = manifest("curve", ordered_json::array({o.quantity}));
        m["quantity"] = o.quantity;
        m["from"] = o.from;
        m["to"] = o.to;
        m["steps"] = o.steps;
        if (profile) m["r"] = o.r;
        write_file(o.out_path + ".manifest.json", ordered_json{{"manifest", m}}.dump(2) + "\n");
        return ok;
    }

    int reports(const std::string& command, const std::vector<pc::VerificationReport>& reps) {
        ordered_json arr = ordered_json::array();
        ordered_json methods = ordered_json::array();
        bool failed = false;
        for (const auto& rep : reps) {
            arr.push_back(to_json(rep));
            if (std::find(methods.begin(), methods.end(), rep.method) == methods.end()) {
                methods.push_back(rep.method);
            }
            if (rep.role == pc::Role::required && rep.verdict == pc::Verdict::fail) failed = true;
        }
        const ordered_json doc = {{"manifest", manifest(command, methods)}, {"reports", arr}};
        if (o.json || !o.out_path.empty()) emit_json(doc);
        if (!o.json) {
            for (const auto& rep : reps) {
                out_ << pc::to_string(rep.verdict) << " " << rep.case_name << " ["
                     << pc::to_string(rep.role) << "] worst=" << num(rep.worst_violation)
                     << " tol=" << num(rep.tolerance);
                if (!rep.note.empty()) out_ << " (" << rep.note << ")";
                out_ << "\n";
            }
        }
        return failed ? violation : ok;
    }

    int verify() {
        pc::SuiteOptions so;
        so.n = o.n;
        so.tol = o.tol.value_or(1e-7);
        so.seed = o.seed;
        so.r_steps = o.r_steps;
        so.theta_steps = o.theta_steps;
        so.sphere = sphere_of(o);
        return reports("verify " + o.suite, pc::run_suite(pc::parse_suite(o.suite), so));
    }

    int sweep() {
        const auto rs = pc::radius_grid(o.r_steps);
        const auto ts = pc::theta_grid(o.theta_steps);
        return reports("sweep", {pc::conjecture_report(o.n, rs, ts, sphere_of(o))});
    }

    int oracle_cmd() {
        const oracle::DirectionalQuery q{o.n, o.r, o.theta};
        const auto v = oracle::directional_constant(q, sphere_of(o));
        const std::string method(oracle::to_string(v.method));
        if (o.json) {
            ordered_json rec;
            rec["quantity"] = "directional_constant";
            rec["n"] = o.n;
            rec["r"] = o.r;
            rec["theta"] = o.theta;
            rec["value"] = v.value;
            rec["error"] = v.error;
            rec["method"] = method;
            rec["tag"] = o.n == 4 || o.n == 2 ? "proven" : "exploratory";
            emit_json({{"manifest", manifest("oracle", ordered_json::array({method}))},
                       {"reports", ordered_json::array({rec})}});
            return ok;
        }
        out_ << "value = " << num(v.value) << "\n";
        out_ << "error = " << num(v.error) << "\n";
        out_ << "method = " << method << "\n";
        return ok;
    }

    Options o;

private:
    const std::vector<std::string>& args_;
    std::ostream& out_;
    std::ostream& err_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

ordered_json to_json(const pc::VerificationReport& rep) {
    ordered_json j;
    j["case"] = rep.case_name;
    j["anchor"] = rep.anchor;
    j["kind"] = rep.kind;
    j["sample"] = rep.sample;
    j["worst_violation"] = jnum(rep.worst_violation);
    j["worst_signed"] = jnum(rep.worst_signed);
    ordered_json loc = ordered_json::object();
    for (const auto& [k, v] : rep.location) loc[k] = jnum(v);
    j["location"] = loc;
    j["tolerance"] = jnum(rep.tolerance);
    j["pass"] = rep.pass();
    j["verdict"] = pc::to_string(rep.verdict);
    j["role"] = pc::to_string(rep.role);
    j["seed"] = rep.seed;
    j["method"] = rep.method;
    if (!rep.convention.empty()) j["convention"] = rep.convention;
    if (!rep.note.empty()) j["note"] = rep.note;
    return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Runner runner(args, out, err);
    Options& o = runner.o;

    CLI::App app{"Sharp gradient constants for bounded harmonic functions", std::string(kToolName)};
    app.require_subcommand(1);
    const auto common = [&](CLI::App* sub) {
        sub->add_option("--r", o.r, "radius |x|");
        sub->add_option("--n", o.n, "dimension");
        sub->add_option("--seed", o.seed, "seed for sampling");
        sub->add_option("--out", o.out_path, "output file");
        sub->add_flag("--json", o.json, "JSON output");
        sub->add_flag("--no-timing", o.no_timing, "omit wall time from the manifest");
    };
    const auto sphere = [&](CLI::App* sub) {
        sub->add_option("--method", o.method, "product-gauss | monte-carlo")
            ->check(CLI::IsMember({"product-gauss", "monte-carlo"}));
        sub->add_option("--samples", o.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
        sub->add_option("--r-steps", o.r_steps, "number of radii")->check(CLI::PositiveNumber);
        sub->add_option("--theta-steps", o.theta_steps, "number of angles")
            ->check(CLI::Range(2, 100000));
    };

    auto* constant = app.add_subcommand("constant", "frak_c(r), C(0,r) and the gradient bound");
    common(constant);
    auto* curve = app.add_subcommand("curve", "CSV of a quantity over a range");
    common(curve);
    curve->add_option("--quantity", o.quantity, "frak_c | c_at_zero | gradient_bound | c_of_z");
    curve->add_option("--from", o.from, "range start");
    curve->add_option("--to", o.to, "range end");
    curve->add_option("--steps", o.steps, "number of rows");
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    common(verify);
    sphere(verify);
    verify->add_option("suite", o.suite, "identities | lemmas | sup | conjecture | oracle")
        ->required();
    verify->add_option("--tol", o.tol, "tolerance for derivative identities");
    verify->add_option("--z", o.z, "unused; accepted for symmetry");
    auto* oracle_sub = app.add_subcommand("oracle", "directional constant by sphere quadrature");
    common(oracle_sub);
    sphere(oracle_sub);
    oracle_sub->add_option("--theta", o.theta, "angle between v and x, in [0, pi/2]");
    auto* sweep = app.add_subcommand("sweep", "direction profile over radii and angles");
    common(sweep);
    sphere(sweep);

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return usage;
    }

    try {
        if (constant->parsed()) return runner.constant();
        if (curve->parsed()) return runner.curve();
        if (verify->parsed()) return runner.verify();
        if (oracle_sub->parsed()) return runner.oracle_cmd();
        if (sweep->parsed()) return runner.sweep();
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return usage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return numerical;
    }
    return usage;
}

}  // namespace khav::cli
