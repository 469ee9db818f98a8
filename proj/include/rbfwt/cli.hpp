#ifndef RBFWT_CLI_HPP
#define RBFWT_CLI_HPP

// Batch front end: one JSON config document selects an operation and its
// parameters; dispatch runs it and writes plot-ready CSV plus a metadata
// sidecar. Nothing in an output file depends on the clock or the process,
// so identical config and inputs reproduce identical bytes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "io.hpp"
#include "kernels.hpp"
#include "quadrature.hpp"
#include "rbffit.hpp"
#include "series.hpp"
#include "specfun.hpp"
#include "transforms.hpp"

namespace rbfwt::cli {

using json = nlohmann::ordered_json;

// Every validation problem from one document, not just the first.
struct config_error : error {
    std::vector<std::string> issues;
    explicit config_error(std::vector<std::string> list)
        : error(join(list)), issues(std::move(list)) {}

  private:
    static std::string join(const std::vector<std::string>& list) {
        std::string all = "invalid config:";
        for (const auto& s : list) all += "\n  - " + s;
        return all;
    }
};

struct GridSpec {
    double min = 0.0;
    double max = 1.0;
    int count = 2;
};

struct RunConfig {
    std::string command;

    // specfun
    std::string kind = "J";
    double nu = 0.0;
    int count = 20;

    // shared numerics
    double n = 2.0;
    double R = 1.0;
    int terms = 0;  // 0 selects the per-command default
    std::string mode = "orthogonal";
    std::string function;  // builtin name; empty selects the per-command default
    std::string input;     // CSV path; overrides the builtin when set
    std::string transform = "b";
    bool gate = true;

    std::optional<GridSpec> grid;         // specfun abscissae
    std::optional<GridSpec> lambda_grid;  // spectral grid
    std::optional<GridSpec> radius_grid;  // radial output grid
    std::optional<std::vector<double>> lambdas;  // explicit spectral points
    std::optional<std::vector<double>> times;    // time-space output times

    double a = 1.0;        // time-space diffusion coefficient
    double lambda0 = 1.0;  // single-kernel lambda for pde checks
    double c = 0.5;        // rbf scale for studies / wave speed for pde checks
    double alpha = 1.0;    // wave initial-displacement weight
    double beta = 0.0;     // wave initial-velocity weight

    std::string kernel = "convdiff-general";
    std::vector<double> v{1.0, 0.0};
    double D = 1.0;
    double k = 1.0;

    std::string rbf = "mq";
    std::vector<double> scales{1.0};
    int centers = 10;
    double lo = -1.0;
    double hi = 1.0;
    int samples = 0;  // 0 collocates at the centers
    bool with_poly = false;
    std::vector<int> n_list{8, 16, 32};
    std::vector<int> terms_list{5, 10, 20, 50};

    // ridgelet: data synthesized from `truth_*`, optimizer started at `init_*`
    std::vector<double> truth_v{2.0, 0.0};
    double truth_D = 1.0;
    double truth_k = 3.0;
    std::vector<double> init_v{2.2, 0.0};
    double init_D = 0.9;
    double init_k = 3.3;
    bool fit_params = true;

    // run controls
    std::string out = ".";
    double tol = 0.0;   // 0 selects the per-command default
    int nodes = 0;      // 0 selects the per-command default
    std::uint64_t seed = 12345;
};

struct RunOutcome {
    int exit_code = 0;
    std::string summary;             // human-readable report
    std::string failure;             // nonempty when exit_code != 0
    std::vector<std::string> files;  // paths written
};

inline const std::vector<std::string>& known_commands() {
    static const std::vector<std::string> cmds = {
        "specfun eval",        "specfun zeros",       "dbt analyze",
        "dbt synthesize",      "dbt error",           "transform b-forward",
        "transform b-inverse", "transform k-forward", "transform k-inverse",
        "transform ts-forward", "transform ts-inverse", "transform calibrate",
        "check orthogonality", "check eigenrelation", "check pde-residual",
        "check roundtrip",     "fit classic",         "study convergence",
        "fit ridgelet",
    };
    return cmds;
}

// Library module exercised by a command, for error records.
inline std::string module_for_command(const std::string& cmd) {
    if (cmd.rfind("specfun", 0) == 0 || cmd == "check orthogonality") return "specfun";
    if (cmd.rfind("dbt", 0) == 0) return "series";
    if (cmd == "check pde-residual") return "kernels";
    if (cmd.rfind("transform", 0) == 0 || cmd == "check eigenrelation" ||
        cmd == "check roundtrip")
        return "transforms";
    if (cmd.rfind("fit", 0) == 0 || cmd.rfind("study", 0) == 0) return "rbffit";
    return "cli";
}

inline const char* error_type_name(const std::exception& e) {
    if (dynamic_cast<const config_error*>(&e)) return "config_error";
    if (dynamic_cast<const calibration_error*>(&e)) return "calibration_error";
    if (dynamic_cast<const solver_error*>(&e)) return "solver_error";
    if (dynamic_cast<const divergence_error*>(&e)) return "divergence_error";
    if (dynamic_cast<const evaluation_error*>(&e)) return "evaluation_error";
    if (dynamic_cast<const domain_error*>(&e)) return "domain_error";
    if (dynamic_cast<const error*>(&e)) return "error";
    return "internal_error";
}

// One-line JSON record for stderr; machine-readable failure channel.
inline std::string error_record(const std::string& module, const std::string& operation,
                                const std::exception& e) {
    json rec;
    rec["error"]["module"] = module;
    rec["error"]["operation"] = operation;
    rec["error"]["type"] = error_type_name(e);
    rec["error"]["message"] = e.what();
    if (const auto* cal = dynamic_cast<const calibration_error*>(&e))
        rec["error"]["measured_discrepancy"] = cal->measured_discrepancy;
    if (const auto* sol = dynamic_cast<const solver_error*>(&e))
        rec["error"]["condition_estimate"] = sol->condition_estimate;
    if (const auto* cfg = dynamic_cast<const config_error*>(&e))
        rec["error"]["issues"] = cfg->issues;
    return rec.dump();
}

inline std::string check_failed_record(const std::string& module,
                                       const std::string& operation,
                                       const std::string& message) {
    json rec;
    rec["error"]["module"] = module;
    rec["error"]["operation"] = operation;
    rec["error"]["type"] = "check_failed";
    rec["error"]["message"] = message;
    return rec.dump();
}

// ---------------------------------------------------------------------------
// Builtin functions, named so configs need no expression parser.

struct RadialBuiltin {
    double (*f)(double);
    double (*lap)(double, double);  // radial Laplacian at dimension n
};

inline const std::map<std::string, RadialBuiltin>& radial_builtins() {
    static const std::map<std::string, RadialBuiltin> fns = {
        {"gauss_half",
         {[](double r) { return std::exp(-0.5 * r * r); },
          [](double r, double n) { return (r * r - n) * std::exp(-0.5 * r * r); }}},
        {"gauss",
         {[](double r) { return std::exp(-r * r); },
          [](double r, double n) { return (4.0 * r * r - 2.0 * n) * std::exp(-r * r); }}},
        {"r2gauss",
         {[](double r) { return r * r * std::exp(-r * r); },
          [](double r, double n) {
              return (2.0 - 10.0 * r * r + 4.0 * r * r * r * r +
                      (n - 1.0) * (2.0 - 2.0 * r * r)) *
                     std::exp(-r * r);
          }}},
        {"poly_cap",
         {[](double r) { return 1.0 - r * r; },
          [](double, double n) { return -2.0 * n; }}},
        {"algebraic",
         {[](double r) {
              const double s = 1.0 + r * r;
              return 1.0 / (s * s);
          },
          [](double r, double n) {
              const double s = 1.0 + r * r;
              return -4.0 * n / (s * s * s) + 24.0 * r * r / (s * s * s * s);
          }}},
        {"zero", {[](double) { return 0.0; }, [](double, double) { return 0.0; }}},
    };
    return fns;
}

// f(r, t) for the time-space transform; separable so forwards have oracles.
inline const std::map<std::string, double (*)(double, double)>& timespace_builtins() {
    static const std::map<std::string, double (*)(double, double)> fns = {
        {"exp_gauss",
         [](double r, double t) { return std::exp(-t) * std::exp(-0.5 * r * r); }},
        {"step_gauss",
         [](double r, double t) {
             return (t >= 0.0 && t <= 1.0) ? std::exp(-0.5 * r * r) : 0.0;
         }},
        {"zero", [](double, double) { return 0.0; }},
    };
    return fns;
}

// 1-D targets for interpolation fits and convergence studies.
inline const std::map<std::string, double (*)(double)>& target_builtins() {
    static const std::map<std::string, double (*)(double)> fns = {
        {"sin_pi", [](double x) { return std::sin(detail::pi * x); }},
        {"runge", [](double x) { return 1.0 / (1.0 + 25.0 * x * x); }},
        {"expx2", [](double x) { return std::exp(x) - x * x; }},
        {"zero", [](double) { return 0.0; }},
    };
    return fns;
}

inline std::string names_of(const auto& m) {
    std::string s;
    for (const auto& [k, v] : m) {
        if (!s.empty()) s += ", ";
        s += k;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Config parsing: typed extraction with aggregated issues.

namespace detail_cfg {

struct Extractor {
    const json& doc;
    std::vector<std::string>& issues;

    bool has(const char* key) const { return doc.contains(key); }

    double num(const char* key, double fallback) {
        if (!has(key)) return fallback;
        if (!doc[key].is_number()) {
            issues.push_back(std::string("'") + key + "' must be a number");
            return fallback;
        }
        return doc[key].get<double>();
    }

    int integer(const char* key, int fallback) {
        if (!has(key)) return fallback;
        if (!doc[key].is_number_integer()) {
            issues.push_back(std::string("'") + key + "' must be an integer");
            return fallback;
        }
        return doc[key].get<int>();
    }

    std::uint64_t uinteger(const char* key, std::uint64_t fallback) {
        if (!has(key)) return fallback;
        if (!doc[key].is_number_unsigned() && !doc[key].is_number_integer()) {
            issues.push_back(std::string("'") + key + "' must be a nonnegative integer");
            return fallback;
        }
        const auto v = doc[key].get<std::int64_t>();
        if (v < 0) {
            issues.push_back(std::string("'") + key + "' must be a nonnegative integer");
            return fallback;
        }
        return static_cast<std::uint64_t>(v);
    }

    bool boolean(const char* key, bool fallback) {
        if (!has(key)) return fallback;
        if (!doc[key].is_boolean()) {
            issues.push_back(std::string("'") + key + "' must be true or false");
            return fallback;
        }
        return doc[key].get<bool>();
    }

    std::string str(const char* key, std::string fallback) {
        if (!has(key)) return fallback;
        if (!doc[key].is_string()) {
            issues.push_back(std::string("'") + key + "' must be a string");
            return fallback;
        }
        return doc[key].get<std::string>();
    }

    std::vector<double> num_list(const char* key, std::vector<double> fallback) {
        if (!has(key)) return fallback;
        if (!doc[key].is_array()) {
            issues.push_back(std::string("'") + key + "' must be an array of numbers");
            return fallback;
        }
        std::vector<double> out;
        for (const auto& e : doc[key]) {
            if (!e.is_number()) {
                issues.push_back(std::string("'") + key + "' must contain numbers only");
                return fallback;
            }
            out.push_back(e.get<double>());
        }
        return out;
    }

    std::vector<int> int_list(const char* key, std::vector<int> fallback) {
        if (!has(key)) return fallback;
        if (!doc[key].is_array()) {
            issues.push_back(std::string("'") + key + "' must be an array of integers");
            return fallback;
        }
        std::vector<int> out;
        for (const auto& e : doc[key]) {
            if (!e.is_number_integer()) {
                issues.push_back(std::string("'") + key + "' must contain integers only");
                return fallback;
            }
            out.push_back(e.get<int>());
        }
        return out;
    }

    std::optional<GridSpec> grid(const char* key) {
        if (!has(key)) return std::nullopt;
        const json& g = doc[key];
        if (!g.is_object() || !g.contains("min") || !g.contains("max") ||
            !g.contains("count") || !g["min"].is_number() || !g["max"].is_number() ||
            !g["count"].is_number_integer()) {
            issues.push_back(std::string("'") + key +
                             "' must be an object {\"min\": a, \"max\": b, \"count\": m}");
            return std::nullopt;
        }
        GridSpec spec;
        spec.min = g["min"].get<double>();
        spec.max = g["max"].get<double>();
        spec.count = g["count"].get<int>();
        if (spec.count < 1)
            issues.push_back(std::string("'") + key + "' needs count >= 1");
        if (spec.count > 1 && !(spec.min < spec.max))
            issues.push_back(std::string("'") + key + "' needs min < max");
        if (!std::isfinite(spec.min) || !std::isfinite(spec.max))
            issues.push_back(std::string("'") + key + "' bounds must be finite");
        return spec;
    }
};

inline const std::map<std::string, std::set<std::string>>& allowed_keys() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"specfun eval", {"kind", "nu", "grid"}},
        {"specfun zeros", {"nu", "count"}},
        {"dbt analyze", {"function", "input", "n", "R", "terms", "mode"}},
        {"dbt synthesize", {"input", "n", "R", "mode", "radius_grid"}},
        {"dbt error", {"function", "input", "n", "R", "terms_list", "mode"}},
        {"transform b-forward", {"function", "input", "n", "lambda_grid"}},
        {"transform k-forward", {"function", "input", "n", "lambda_grid"}},
        {"transform b-inverse", {"input", "n", "radius_grid"}},
        {"transform k-inverse", {"input", "n", "radius_grid"}},
        {"transform ts-forward", {"function", "n", "a", "lambda_grid"}},
        {"transform ts-inverse",
         {"function", "input", "n", "a", "lambda_grid", "radius_grid", "times"}},
        {"transform calibrate", {"transform", "n", "gate"}},
        {"check orthogonality", {"nu", "terms"}},
        {"check eigenrelation", {"transform", "function", "n", "lambdas"}},
        {"check pde-residual",
         {"kernel", "n", "v", "D", "k", "a", "c", "alpha", "beta", "lambda0"}},
        {"check roundtrip",
         {"transform", "function", "n", "R", "terms", "a", "lambda_grid",
          "radius_grid"}},
        {"fit classic",
         {"rbf", "scales", "function", "input", "centers", "lo", "hi", "samples",
          "with_poly"}},
        {"fit ridgelet",
         {"n", "truth_D", "truth_v", "truth_k", "init_D", "init_v", "init_k",
          "centers", "lo", "hi", "samples", "input", "fit_params"}},
        {"study convergence", {"rbf", "c", "function", "n_list", "lo", "hi"}},
    };
    return keys;
}

}  // namespace detail_cfg

// Parse and fully validate a JSON config document. `command_hint` is the
// subcommand named on the command line; the document's own "command" field
// must agree with it when both are present. Throws config_error carrying
// every problem found, not just the first.
inline RunConfig parse_config(const std::string& text,
                              const std::string& command_hint = "") {
    std::vector<std::string> issues;

    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw config_error({std::string("config parse error: ") + e.what()});
    }
    if (!doc.is_object())
        throw config_error({"config must be a JSON object"});

    RunConfig cfg;
    detail_cfg::Extractor ex{doc, issues};

    cfg.command = ex.str("command", command_hint);
    if (cfg.command.empty()) {
        issues.emplace_back("no command: pass a subcommand or set \"command\"");
        throw config_error(issues);
    }
    const auto& cmds = known_commands();
    if (std::find(cmds.begin(), cmds.end(), cfg.command) == cmds.end()) {
        issues.push_back("unknown command '" + cfg.command + "'");
        throw config_error(issues);
    }
    if (!command_hint.empty() && cfg.command != command_hint)
        issues.push_back("config command '" + cfg.command +
                         "' does not match the invoked subcommand '" + command_hint +
                         "'");

    // reject unknown keys so typos never silently fall back to defaults
    static const std::set<std::string> common = {"command", "out", "tol", "nodes",
                                                 "seed"};
    const auto& allowed = detail_cfg::allowed_keys().at(cfg.command);
    for (const auto& [key, value] : doc.items())
        if (!common.count(key) && !allowed.count(key))
            issues.push_back("unknown key '" + key + "' for command '" + cfg.command +
                             "'");

    // run controls
    cfg.out = ex.str("out", cfg.out);
    cfg.tol = ex.num("tol", cfg.tol);
    if (ex.has("tol") && !(cfg.tol > 0.0))
        issues.emplace_back("'tol' must be positive");
    cfg.nodes = ex.integer("nodes", cfg.nodes);
    if (ex.has("nodes") && cfg.nodes < 1) issues.emplace_back("'nodes' must be >= 1");
    cfg.seed = ex.uinteger("seed", cfg.seed);

    // shared numerics
    cfg.n = ex.num("n", cfg.n);
    if (ex.has("n") && !(cfg.n >= 1.0 && 0.5 * cfg.n - 1.0 <= 60.0))
        issues.push_back("HelmholtzKernelSpec invariant: dimension n must satisfy "
                         "1 <= n and n/2 - 1 <= 60, got " +
                         detail::num_str(cfg.n));
    cfg.R = ex.num("R", cfg.R);
    if (ex.has("R") && !(cfg.R > 0.0))
        issues.push_back("BesselSeries invariant: R must be positive, got " +
                         detail::num_str(cfg.R));
    cfg.nu = ex.num("nu", cfg.nu);
    if (ex.has("nu") && !(cfg.nu >= -0.5 && cfg.nu <= 60.0))
        issues.push_back("order nu must lie in [-0.5, 60], got " +
                         detail::num_str(cfg.nu));
    cfg.terms = ex.integer("terms", cfg.terms);
    if (ex.has("terms") && cfg.terms < 1) issues.emplace_back("'terms' must be >= 1");
    cfg.count = ex.integer("count", cfg.count);
    if (ex.has("count") && cfg.count < 1) issues.emplace_back("'count' must be >= 1");

    cfg.kind = ex.str("kind", cfg.kind);
    if (ex.has("kind") && cfg.kind != "J" && cfg.kind != "Y" && cfg.kind != "I" &&
        cfg.kind != "K")
        issues.push_back("'kind' must be one of J, Y, I, K, got '" + cfg.kind + "'");

    cfg.mode = ex.str("mode", cfg.mode);
    if (ex.has("mode") && cfg.mode != "orthogonal" && cfg.mode != "paper_faithful")
        issues.push_back("'mode' must be 'orthogonal' or 'paper_faithful', got '" +
                         cfg.mode + "'");

    cfg.function = ex.str("function", cfg.function);
    cfg.input = ex.str("input", cfg.input);
    cfg.transform = ex.str("transform", cfg.transform);
    cfg.gate = ex.boolean("gate", cfg.gate);

    cfg.grid = ex.grid("grid");
    cfg.lambda_grid = ex.grid("lambda_grid");
    cfg.radius_grid = ex.grid("radius_grid");
    if (ex.has("lambdas")) cfg.lambdas = ex.num_list("lambdas", {});
    if (ex.has("times")) cfg.times = ex.num_list("times", {});

    cfg.a = ex.num("a", cfg.a);
    if (ex.has("a") && !(cfg.a > 0.0))
        issues.push_back("TimeSpaceDiffusionSpec invariant: diffusion coefficient a "
                         "must be positive, got " +
                         detail::num_str(cfg.a));
    cfg.lambda0 = ex.num("lambda0", cfg.lambda0);
    if (ex.has("lambda0") && !(cfg.lambda0 > 0.0))
        issues.emplace_back("'lambda0' must be positive");
    cfg.c = ex.num("c", cfg.c);
    if (ex.has("c") && !(cfg.c > 0.0))
        issues.push_back("ClassicRbfSpec invariant: scale c must be positive, got " +
                         detail::num_str(cfg.c));
    cfg.alpha = ex.num("alpha", cfg.alpha);
    cfg.beta = ex.num("beta", cfg.beta);

    cfg.kernel = ex.str("kernel", cfg.kernel);
    cfg.v = ex.num_list("v", cfg.v);
    cfg.D = ex.num("D", cfg.D);
    if (ex.has("D") && !(cfg.D > 0.0))
        issues.push_back("ConvDiffSpec invariant: diffusivity D must be positive, "
                         "got " +
                         detail::num_str(cfg.D));
    cfg.k = ex.num("k", cfg.k);
    if (ex.has("k") && !(cfg.k >= 0.0))
        issues.push_back("ConvDiffSpec invariant: reaction coefficient k must be "
                         "nonnegative, got " +
                         detail::num_str(cfg.k));

    cfg.rbf = ex.str("rbf", cfg.rbf);
    if (ex.has("rbf") && cfg.rbf != "mq" && cfg.rbf != "gaussian" && cfg.rbf != "tps")
        issues.push_back("'rbf' must be one of mq, gaussian, tps, got '" + cfg.rbf +
                         "'");
    cfg.scales = ex.num_list("scales", cfg.scales);
    for (double s : cfg.scales)
        if (!(s > 0.0))
            issues.push_back("ClassicRbfSpec invariant: scale c must be positive, "
                             "got " +
                             detail::num_str(s));
    // ridgelet reads `centers` as a per-axis grid count, so its default is
    // smaller than the classic-fit center count
    if (cfg.command == "fit ridgelet") cfg.centers = 3;
    cfg.centers = ex.integer("centers", cfg.centers);
    if (ex.has("centers") && cfg.centers < 1)
        issues.emplace_back("'centers' must be >= 1");
    if (cfg.command == "fit ridgelet" && ex.has("centers") && cfg.centers > 20)
        issues.emplace_back("'centers' is a per-axis count for fit ridgelet and "
                            "must be <= 20");
    cfg.lo = ex.num("lo", cfg.lo);
    cfg.hi = ex.num("hi", cfg.hi);
    if ((ex.has("lo") || ex.has("hi")) && !(cfg.lo < cfg.hi))
        issues.emplace_back("'lo' must be less than 'hi'");
    cfg.samples = ex.integer("samples", cfg.samples);
    if (ex.has("samples") && cfg.samples < 1)
        issues.emplace_back("'samples' must be >= 1");
    cfg.with_poly = ex.boolean("with_poly", cfg.with_poly);
    cfg.n_list = ex.int_list("n_list", cfg.n_list);
    cfg.terms_list = ex.int_list("terms_list", cfg.terms_list);

    cfg.truth_v = ex.num_list("truth_v", cfg.truth_v);
    cfg.truth_D = ex.num("truth_D", cfg.truth_D);
    if (ex.has("truth_D") && !(cfg.truth_D > 0.0))
        issues.push_back("ConvDiffSpec invariant: diffusivity D must be positive, "
                         "got " +
                         detail::num_str(cfg.truth_D));
    cfg.truth_k = ex.num("truth_k", cfg.truth_k);
    if (ex.has("truth_k") && !(cfg.truth_k >= 0.0))
        issues.push_back("ConvDiffSpec invariant: reaction coefficient k must be "
                         "nonnegative, got " +
                         detail::num_str(cfg.truth_k));
    cfg.init_v = ex.num_list("init_v", cfg.init_v);
    cfg.init_D = ex.num("init_D", cfg.init_D);
    if (ex.has("init_D") && !(cfg.init_D > 0.0))
        issues.push_back("ConvDiffSpec invariant: diffusivity D must be positive, "
                         "got " +
                         detail::num_str(cfg.init_D));
    cfg.init_k = ex.num("init_k", cfg.init_k);
    if (ex.has("init_k") && !(cfg.init_k >= 0.0))
        issues.push_back("ConvDiffSpec invariant: reaction coefficient k must be "
                         "nonnegative, got " +
                         detail::num_str(cfg.init_k));
    cfg.fit_params = ex.boolean("fit_params", cfg.fit_params);

    // command-specific preconditions
    const std::string& cmd = cfg.command;
    if (cmd == "specfun eval" && (cfg.kind == "Y" || cfg.kind == "K") && cfg.grid &&
        !(cfg.grid->min > 0.0))
        issues.push_back("bessel " + cfg.kind + " requires x > 0: raise grid.min");
    if (cmd == "dbt synthesize" || cmd == "transform b-inverse" ||
        cmd == "transform k-inverse") {
        if (cfg.input.empty())
            issues.push_back("command '" + cmd + "' requires 'input' (path to a CSV)");
    }
    if ((cmd == "transform k-forward" ||
         (cmd == "check roundtrip" && cfg.transform == "k")) &&
        cfg.lambda_grid && !(cfg.lambda_grid->min > 0.0))
        issues.emplace_back("the K kernel needs lambda > 0: raise lambda_grid.min");
    if (cmd == "transform calibrate" || cmd == "check eigenrelation" ||
        cmd == "check roundtrip") {
        static const std::set<std::string> fams = {"b", "k", "dbt", "ts"};
        const bool cal_like = cmd != "check roundtrip";
        if (cal_like && cfg.transform != "b" && cfg.transform != "k")
            issues.push_back("'transform' must be 'b' or 'k', got '" + cfg.transform +
                             "'");
        if (!cal_like && !fams.count(cfg.transform))
            issues.push_back("'transform' must be one of b, k, dbt, ts, got '" +
                             cfg.transform + "'");
    }
    if (cmd == "check pde-residual" && cfg.kernel != "convdiff-general" &&
        cfg.kernel != "convdiff-fundamental" && cfg.kernel != "ts-diffusion" &&
        cfg.kernel != "wave")
        issues.push_back("'kernel' must be one of convdiff-general, "
                         "convdiff-fundamental, ts-diffusion, wave, got '" +
                         cfg.kernel + "'");
    if (ex.has("lambdas")) {
        if (!cfg.lambdas || cfg.lambdas->empty())
            issues.emplace_back("'lambdas' must be a nonempty array of numbers");
        else
            for (double l : *cfg.lambdas)
                if (!(l > 0.0))
                    issues.emplace_back("'lambdas' entries must be positive");
    }
    if (ex.has("times")) {
        if (!cfg.times || cfg.times->empty())
            issues.emplace_back("'times' must be a nonempty array of numbers");
        else
            for (double t : *cfg.times)
                if (!(t >= 0.0)) issues.emplace_back("'times' entries must be >= 0");
    }
    if (ex.has("n_list")) {
        int prev = 0;
        for (int m : cfg.n_list) {
            if (m < 2 || m <= prev) {
                issues.emplace_back("'n_list' must be increasing counts >= 2");
                break;
            }
            prev = m;
        }
    }
    if (ex.has("terms_list")) {
        int prev = 0;
        for (int m : cfg.terms_list) {
            if (m < 1 || m <= prev) {
                issues.emplace_back("'terms_list' must be increasing counts >= 1");
                break;
            }
            prev = m;
        }
    }
    if (ex.has("v") && cfg.v.empty())
        issues.emplace_back("ConvDiffSpec invariant: velocity vector must have at "
                            "least one component");
    if (cmd == "fit ridgelet") {
        if (cfg.truth_v.empty() || cfg.init_v.empty())
            issues.emplace_back("ConvDiffSpec invariant: velocity vector must have "
                                "at least one component");
        else if (cfg.truth_v.size() != cfg.init_v.size())
            issues.emplace_back("'truth_v' and 'init_v' must have the same length");
    }
    if (cmd == "fit classic" || cmd == "fit ridgelet" || cmd == "study convergence") {
        const auto& targets = target_builtins();
        if (cmd != "fit ridgelet" && !cfg.function.empty() &&
            !targets.count(cfg.function))
            issues.push_back("unknown target function '" + cfg.function +
                             "'; builtins: " + names_of(targets));
    } else if (cmd == "transform ts-forward" || cmd == "transform ts-inverse") {
        const auto& ts = timespace_builtins();
        if (!cfg.function.empty() && !ts.count(cfg.function))
            issues.push_back("unknown time-space function '" + cfg.function +
                             "'; builtins: " + names_of(ts));
    } else if (!cfg.function.empty() && !radial_builtins().count(cfg.function)) {
        issues.push_back("unknown radial function '" + cfg.function +
                         "'; builtins: " + names_of(radial_builtins()));
    }

    if (!issues.empty()) throw config_error(issues);
    return cfg;
}

// ---------------------------------------------------------------------------
// Dispatch helpers.

namespace detail_run {

inline std::vector<double> linspace(const GridSpec& g) {
    std::vector<double> xs(static_cast<std::size_t>(g.count));
    if (g.count == 1) {
        xs[0] = g.min;
        return xs;
    }
    for (int i = 0; i < g.count; ++i)
        xs[static_cast<std::size_t>(i)] =
            g.min + (g.max - g.min) * i / (g.count - 1);
    return xs;
}

inline GridSpec pick(const std::optional<GridSpec>& g, GridSpec fallback) {
    return g ? *g : fallback;
}

// uniform in [lo, hi) from the pinned mt19937 stream; avoids
// distribution objects whose sequences the standard leaves open
inline double uniform(std::mt19937_64& gen, double lo, double hi) {
    const double u = std::ldexp(static_cast<double>(gen() >> 11), -53);
    return lo + (hi - lo) * u;
}

inline std::string file_stem(const std::string& command) {
    std::string s = command;
    for (char& ch : s)
        if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
    return s;
}

inline std::string out_path(const RunConfig& cfg, const std::string& name) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out);
    return (fs::path(cfg.out) / name).string();
}

inline json grid_json(const GridSpec& g) {
    return json{{"min", g.min}, {"max", g.max}, {"count", g.count}};
}

// Sidecar with the resolved parameters and measured values; no clock, no
// process identity, so reruns reproduce it byte for byte.
inline std::string write_meta(const RunConfig& cfg, const json& params,
                              const json& values,
                              const std::vector<std::string>& outputs) {
    json meta;
    meta["command"] = cfg.command;
    meta["parameters"] = params;
    meta["values"] = values;
    json names = json::array();
    for (const auto& p : outputs)
        names.push_back(std::filesystem::path(p).filename().string());
    meta["outputs"] = names;
    const std::string path = out_path(cfg, file_stem(cfg.command) + ".meta.json");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw domain_error("cannot open for writing: " + path);
    f << meta.dump(2) << '\n';
    return path;
}

// Radial source: spline through an input CSV (zero outside its knots), or a
// named builtin.
inline std::function<double(double)> radial_source(const RunConfig& cfg,
                                                   const std::string& fallback) {
    if (!cfg.input.empty()) {
        const RadialSamples s = read_radial_csv(cfg.input);
        auto sp = std::make_shared<rbfwt::detail::CubicSpline>(s.radii, s.values);
        return [sp](double r) { return (*sp)(r); };
    }
    const std::string name = cfg.function.empty() ? fallback : cfg.function;
    return radial_builtins().at(name).f;
}

inline std::string source_name(const RunConfig& cfg, const std::string& fallback) {
    if (!cfg.input.empty()) return "input:" + cfg.input;
    return cfg.function.empty() ? fallback : cfg.function;
}

constexpr double fd_h = 1e-3;

template <class F>
double radial_laplacian_fd(F&& phi, double n, double r) {
    const double pp =
        (phi(r + fd_h) - 2.0 * phi(r) + phi(r - fd_h)) / (fd_h * fd_h);
    const double p1 = (phi(r + fd_h) - phi(r - fd_h)) / (2.0 * fd_h);
    return pp + (n - 1.0) / r * p1;
}

template <class F>
double convdiff_residual_fd(F&& u, const ConvDiffSpec& s, double x, double y) {
    const double uxx =
        (u(x + fd_h, y) - 2.0 * u(x, y) + u(x - fd_h, y)) / (fd_h * fd_h);
    const double uyy =
        (u(x, y + fd_h) - 2.0 * u(x, y) + u(x, y - fd_h)) / (fd_h * fd_h);
    const double ux = (u(x + fd_h, y) - u(x - fd_h, y)) / (2.0 * fd_h);
    const double uy = (u(x, y + fd_h) - u(x, y - fd_h)) / (2.0 * fd_h);
    return s.D * (uxx + uyy) + s.v[0] * ux + s.v[1] * uy - s.k * u(x, y);
}

inline std::string fmt(double v) { return rbfwt::detail::num_str(v); }

}  // namespace detail_run

// ---------------------------------------------------------------------------
// Per-command runners.

namespace detail_run {

inline RunOutcome run_specfun_eval(const RunConfig& cfg) {
    const GridSpec g = pick(cfg.grid, {0.1, 10.0, 100});
    const bessel_kind kind = cfg.kind == "J"   ? bessel_kind::J
                             : cfg.kind == "Y" ? bessel_kind::Y
                             : cfg.kind == "I" ? bessel_kind::I
                                               : bessel_kind::K;
    const auto xs = linspace(g);
    CsvTable t;
    t.header = {"r", "value"};
    for (double x : xs) t.rows.push_back({x, bessel_eval(kind, cfg.nu, x)});
    RunOutcome out;
    out.files.push_back(out_path(cfg, "specfun_eval.csv"));
    write_csv(out.files.back(), t);
    json values = {{"rows", t.rows.size()},
                   {"first", t.rows.front()[1]},
                   {"last", t.rows.back()[1]}};
    out.files.push_back(write_meta(
        cfg,
        {{"kind", cfg.kind}, {"nu", cfg.nu}, {"grid", grid_json(g)}}, values,
        out.files));
    out.summary = "specfun eval: kind=" + cfg.kind + " nu=" + fmt(cfg.nu) + ", " +
                  std::to_string(t.rows.size()) + " rows\nwrote: " + out.files[0] +
                  ", " + out.files[1] + "\n";
    return out;
}

inline RunOutcome run_specfun_zeros(const RunConfig& cfg) {
    const auto zeros = jn_zeros(cfg.nu, cfg.count);
    CsvTable t;
    t.header = {"index", "value"};
    for (std::size_t j = 0; j < zeros.size(); ++j)
        t.rows.push_back({static_cast<double>(j + 1), zeros[j]});
    RunOutcome out;
    out.files.push_back(out_path(cfg, "specfun_zeros.csv"));
    write_csv(out.files.back(), t);
    json values = {{"count", zeros.size()}, {"first", zeros.front()},
                   {"last", zeros.back()}};
    out.files.push_back(write_meta(cfg, {{"nu", cfg.nu}, {"count", cfg.count}},
                                   values, out.files));
    out.summary = "specfun zeros: nu=" + fmt(cfg.nu) + ", first zero " +
                  fmt(zeros.front()) + "\nwrote: " + out.files[0] + ", " +
                  out.files[1] + "\n";
    return out;
}

inline series_mode mode_of(const RunConfig& cfg) {
    return cfg.mode == "paper_faithful" ? series_mode::paper_faithful
                                        : series_mode::orthogonal;
}

inline RunOutcome run_dbt_analyze(const RunConfig& cfg) {
    const int terms = cfg.terms > 0 ? cfg.terms : 20;
    const auto f = radial_source(cfg, "poly_cap");
    const BesselSeries s = analyze(f, cfg.n, cfg.R, terms, mode_of(cfg));
    CsvTable t;
    t.header = {"index", "value"};
    t.rows.push_back({0.0, s.alpha0});
    for (std::size_t j = 0; j < s.coeffs[0].size(); ++j)
        t.rows.push_back({static_cast<double>(j + 1), s.coeffs[0][j]});
    RunOutcome out;
    out.files.push_back(out_path(cfg, "dbt_coeffs.csv"));
    write_csv(out.files.back(), t);
    json values = {{"alpha0", s.alpha0}, {"terms", terms},
                   {"first_coeff", s.coeffs[0].front()}};
    out.files.push_back(write_meta(cfg,
                                   {{"function", source_name(cfg, "poly_cap")},
                                    {"n", cfg.n},
                                    {"R", cfg.R},
                                    {"terms", terms},
                                    {"mode", cfg.mode}},
                                   values, out.files));
    out.summary = "dbt analyze: " + source_name(cfg, "poly_cap") + " n=" + fmt(cfg.n) +
                  " R=" + fmt(cfg.R) + " terms=" + std::to_string(terms) +
                  " (index 0 is the constant term)\nwrote: " + out.files[0] + ", " +
                  out.files[1] + "\n";
    return out;
}

inline RunOutcome run_dbt_synthesize(const RunConfig& cfg) {
    const CsvTable t = read_csv(cfg.input);
    if (t.header != std::vector<std::string>{"index", "value"})
        throw domain_error(cfg.input + ": expected header 'index,value'");
    if (t.rows.size() < 2)
        throw domain_error(cfg.input + ": needs the constant term plus coefficients");
    BesselSeries s;
    s.n = cfg.n;
    s.R = cfg.R;
    s.mode = mode_of(cfg);
    s.centers = {point_t{0.0}};
    s.alpha0 = t.rows[0][1];
    std::vector<double> row;
    for (std::size_t i = 1; i < t.rows.size(); ++i) row.push_back(t.rows[i][1]);
    s.zeros = jn_zeros(0.5 * cfg.n - 1.0, static_cast<int>(row.size()));
    s.coeffs = {row};

    const GridSpec rg = pick(cfg.radius_grid, {0.0, cfg.R, 201});
    RadialSamples rec;
    rec.radii = linspace(rg);
    for (double r : rec.radii) rec.values.push_back(synthesize(s, r));
    RunOutcome out;
    out.files.push_back(out_path(cfg, "dbt_synthesis.csv"));
    write_radial_csv(out.files.back(), rec);
    json values = {{"terms", row.size()}, {"alpha0", s.alpha0}};
    out.files.push_back(write_meta(cfg,
                                   {{"input", cfg.input},
                                    {"n", cfg.n},
                                    {"R", cfg.R},
                                    {"mode", cfg.mode},
                                    {"radius_grid", grid_json(rg)}},
                                   values, out.files));
    out.summary = "dbt synthesize: " + std::to_string(row.size()) + " terms on " +
                  std::to_string(rec.radii.size()) + " radii\nwrote: " + out.files[0] +
                  ", " + out.files[1] + "\n";
    return out;
}

inline RunOutcome run_dbt_error(const RunConfig& cfg) {
    const auto f = radial_source(cfg, "poly_cap");
    CsvTable t;
    t.header = {"terms", "linf", "l2_weighted"};
    for (int terms : cfg.terms_list) {
        const BesselSeries s = analyze(f, cfg.n, cfg.R, terms, mode_of(cfg));
        t.rows.push_back({static_cast<double>(terms),
                          reconstruction_error(s, f, error_norm::linf_interior),
                          reconstruction_error(s, f, error_norm::l2_weighted)});
    }
    RunOutcome out;
    out.files.push_back(out_path(cfg, "dbt_error.csv"));
    write_csv(out.files.back(), t);
    json values = {{"final_linf", t.rows.back()[1]},
                   {"final_l2_weighted", t.rows.back()[2]}};
    out.files.push_back(write_meta(cfg,
                                   {{"function", source_name(cfg, "poly_cap")},
                                    {"n", cfg.n},
                                    {"R", cfg.R},
                                    {"terms_list", cfg.terms_list},
                                    {"mode", cfg.mode}},
                                   values, out.files));
    out.summary = "dbt error: " + source_name(cfg, "poly_cap") + ", linf at " +
                  std::to_string(cfg.terms_list.back()) + " terms = " +
                  fmt(t.rows.back()[1]) + "\nwrote: " + out.files[0] + ", " +
                  out.files[1] + "\n";
    return out;
}

inline RunOutcome run_forward(const RunConfig& cfg, transform_kind kind) {
    const double quad_tol = cfg.tol > 0.0 ? cfg.tol : 1e-9;
    const bool is_b = kind == transform_kind::B;
    const GridSpec lg =
        pick(cfg.lambda_grid, is_b ? GridSpec{0.0, 8.0, 321} : GridSpec{0.025, 8.0, 320});
    const auto lambdas = linspace(lg);
    const auto f = radial_source(cfg, "gauss_half");
    const Spectrum s = is_b ? b_forward(f, cfg.n, lambdas, quad_tol)
                            : k_forward(f, cfg.n, lambdas, quad_tol);
    RunOutcome out;
    out.files.push_back(out_path(cfg, is_b ? "b_spectrum.csv" : "k_spectrum.csv"));
    write_spectrum_csv(out.files.back(), s);

    // report the sample nearest lambda = 1 so spot checks need no reader
    std::size_t near = 0;
    for (std::size_t i = 1; i < lambdas.size(); ++i)
        if (std::abs(lambdas[i] - 1.0) < std::abs(lambdas[near] - 1.0)) near = i;
    json values = {{"rows", lambdas.size()},
                   {"lambda_near_1", lambdas[near]},
                   {"value_near_1_re", s.values[near].real()},
                   {"value_near_1_im", s.values[near].imag()}};
    out.files.push_back(write_meta(cfg,
                                   {{"function", source_name(cfg, "gauss_half")},
                                    {"n", cfg.n},
                                    {"lambda_grid", grid_json(lg)},
                                    {"tol", quad_tol}},
                                   values, out.files));
    out.summary = std::string(is_b ? "b-forward" : "k-forward") + ": " +
                  source_name(cfg, "gauss_half") + " n=" + fmt(cfg.n) + ", F(" +
                  fmt(lambdas[near]) + ") = " + fmt(s.values[near].real()) +
                  (is_b ? "" : " + " + fmt(s.values[near].imag()) + "i") +
                  "\nwrote: " + out.files[0] + ", " + out.files[1] + "\n";
    return out;
}

inline RunOutcome run_inverse(const RunConfig& cfg, transform_kind kind) {
    const bool is_b = kind == transform_kind::B;
    const Spectrum s = read_spectrum_csv(
        cfg.input, cfg.n, is_b ? spectrum_kind::B : spectrum_kind::K);
    const GridSpec rg =
        pick(cfg.radius_grid, is_b ? GridSpec{0.0, 3.0, 121} : GridSpec{0.025, 3.0, 120});
    const auto radii = linspace(rg);
    RunOutcome out;
    json values;
    std::string note;
    if (is_b) {
        const TransformCalibration cal = calibrate(cfg.n, transform_kind::B);
        const RadialSamples rec = b_inverse(s, cal, radii);
        out.files.push_back(out_path(cfg, "b_reconstruction.csv"));
        write_radial_csv(out.files.back(), rec);
        values = {{"rows", radii.size()}, {"value_at_first_r", rec.values.front()}};
        note = "calibration gated by the Gaussian round trip";
    } else {
        // the K pair fails its round-trip gate by construction, so the
        // inverse runs on the reduction-derived constants
        const TransformCalibration cal = derive_constants(cfg.n, transform_kind::K);
        const auto rec = k_inverse_complex(s, cal, radii);
        CsvTable t;
        t.header = {"r", "re", "im"};
        double max_im = 0.0;
        for (std::size_t i = 0; i < radii.size(); ++i) {
            t.rows.push_back({radii[i], rec[i].real(), rec[i].imag()});
            max_im = std::max(max_im, std::abs(rec[i].imag()));
        }
        out.files.push_back(out_path(cfg, "k_reconstruction.csv"));
        write_csv(out.files.back(), t);
        values = {{"rows", radii.size()}, {"max_imag", max_im}};
        note = "reduction-derived constants (the K pair has no verified round trip)";
    }
    out.files.push_back(write_meta(
        cfg,
        {{"input", cfg.input}, {"n", cfg.n}, {"radius_grid", grid_json(rg)}}, values,
        out.files));
    out.summary = std::string(is_b ? "b-inverse" : "k-inverse") + ": " +
                  std::to_string(radii.size()) + " radii, " + note +
                  "\nwrote: " + out.files[0] + ", " + out.files[1] + "\n";
    return out;
}

inline RunOutcome run_ts_forward(const RunConfig& cfg) {
    const double quad_tol = cfg.tol > 0.0 ? cfg.tol : 1e-9;
    if (!cfg.input.empty())
        throw domain_error("ts-forward accepts builtin functions only; 2-D sampled "
                           "input is not supported");
    const std::string name = cfg.function.empty() ? "exp_gauss" : cfg.function;
    const auto f = timespace_builtins().at(name);
    const GridSpec lg = pick(cfg.lambda_grid, {0.0, 8.0, 161});
    const auto lambdas = linspace(lg);
    const TimeSpaceDiffusionSpec ts(cfg.n, 1.0, cfg.a);
    const Spectrum s = ts_forward(f, ts, lambdas, quad_tol);
    RunOutcome out;
    out.files.push_back(out_path(cfg, "ts_spectrum.csv"));
    write_spectrum_csv(out.files.back(), s);
    json values = {{"rows", lambdas.size()}, {"first_value", s.values.front().real()}};
    out.files.push_back(write_meta(cfg,
                                   {{"function", name},
                                    {"n", cfg.n},
                                    {"a", cfg.a},
                                    {"lambda_grid", grid_json(lg)},
                                    {"tol", quad_tol}},
                                   values, out.files));
    out.summary = "ts-forward: " + name + " n=" + fmt(cfg.n) + " a=" + fmt(cfg.a) +
                  ", " + std::to_string(lambdas.size()) +
                  " spectral rows\nwrote: " + out.files[0] + ", " + out.files[1] + "\n";
    return out;
}

inline RunOutcome run_ts_inverse(const RunConfig& cfg) {
    const double quad_tol = cfg.tol > 0.0 ? cfg.tol : 1e-9;
    const TimeSpaceDiffusionSpec ts(cfg.n, 1.0, cfg.a);
    Spectrum s;
    std::string source;
    if (!cfg.input.empty()) {
        s = read_spectrum_csv(cfg.input, cfg.n, spectrum_kind::TS_diffusion);
        source = "input:" + cfg.input;
    } else {
        const std::string name = cfg.function.empty() ? "exp_gauss" : cfg.function;
        const GridSpec lg = pick(cfg.lambda_grid, {0.5, 8.0, 161});
        s = ts_forward(timespace_builtins().at(name), ts, linspace(lg), quad_tol);
        source = name;
    }
    const TransformCalibration cal = calibrate(cfg.n, transform_kind::B);
    const GridSpec rg = pick(cfg.radius_grid, {0.0, 3.0, 31});
    const std::vector<double> times =
        cfg.times ? *cfg.times : std::vector<double>{0.5, 1.0, 2.0};
    const TimeSpaceField field = ts_inverse(s, ts, cal, linspace(rg), times);

    CsvTable t;
    t.header = {"r", "t", "value"};
    for (std::size_t i = 0; i < field.radii.size(); ++i)
        for (std::size_t j = 0; j < field.times.size(); ++j)
            t.rows.push_back({field.radii[i], field.times[j], field.values[i][j]});
    RunOutcome out;
    out.files.push_back(out_path(cfg, "ts_field.csv"));
    write_csv(out.files.back(), t);
    json values = {{"rows", t.rows.size()},
                   {"value_at_first", field.values.front().front()}};
    out.files.push_back(write_meta(cfg,
                                   {{"source", source},
                                    {"n", cfg.n},
                                    {"a", cfg.a},
                                    {"radius_grid", grid_json(rg)},
                                    {"times", times}},
                                   values, out.files));
    out.summary = "ts-inverse: " + source + ", " + std::to_string(t.rows.size()) +
                  " field rows\nwrote: " + out.files[0] + ", " + out.files[1] + "\n";
    return out;
}

inline RunOutcome run_calibrate(const RunConfig& cfg) {
    const transform_kind kind =
        cfg.transform == "k" ? transform_kind::K : transform_kind::B;
    // gate=true verifies by Gaussian round trip and throws on failure; the
    // error propagates as the machine-readable failure channel
    const TransformCalibration cal =
        cfg.gate ? calibrate(cfg.n, kind) : derive_constants(cfg.n, kind);
    CsvTable t;
    t.header = {"m", "normalization"};
    t.rows.push_back({cal.m, cal.normalization});
    RunOutcome out;
    out.files.push_back(out_path(cfg, "calibration.csv"));
    write_csv(out.files.back(), t);
    json values = {{"m", cal.m}, {"normalization", cal.normalization},
                   {"gated", cfg.gate}};
    out.files.push_back(write_meta(
        cfg, {{"transform", cfg.transform}, {"n", cfg.n}, {"gate", cfg.gate}}, values,
        out.files));
    out.summary = "calibrate: kind=" + cfg.transform + " n=" + fmt(cfg.n) +
                  " -> m=" + fmt(cal.m) + ", normalization=" + fmt(cal.normalization) +
                  (cfg.gate ? " (round-trip verified)" : " (gate skipped)") +
                  "\nwrote: " + out.files[0] + ", " + out.files[1] + "\n";
    return out;
}

inline RunOutcome run_check_orthogonality(const RunConfig& cfg) {
    const int terms = cfg.terms > 0 ? cfg.terms : 10;
    const int nodes = cfg.nodes > 0 ? cfg.nodes : 512;
    const double tol = cfg.tol > 0.0 ? cfg.tol : 1e-10;
    const auto zeros = jn_zeros(cfg.nu, terms);
    const QuadratureRule rule = make_gauss_legendre(nodes, 0.0, 1.0);

    // J_nu(lambda_i z) tabulated once per zero over the quadrature nodes
    std::vector<std::vector<double>> tab(zeros.size());
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        tab[i].resize(rule.nodes.size());
        for (std::size_t q = 0; q < rule.nodes.size(); ++q)
            tab[i][q] = bessel_eval(bessel_kind::J, cfg.nu, zeros[i] * rule.nodes[q]);
    }
    CsvTable t;
    t.header = {"i", "j", "value"};
    double max_offdiag = 0.0;
    double max_diag_rel = 0.0;
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        for (std::size_t j = 0; j < zeros.size(); ++j) {
            double acc = 0.0;
            for (std::size_t q = 0; q < rule.nodes.size(); ++q)
                acc += rule.weights[q] * rule.nodes[q] * tab[i][q] * tab[j][q];
            t.rows.push_back(
                {static_cast<double>(i + 1), static_cast<double>(j + 1), acc});
            if (i == j) {
                const double jn1 = bessel_eval(bessel_kind::J, cfg.nu + 1.0, zeros[i]);
                const double expect = 0.5 * jn1 * jn1;
                max_diag_rel =
                    std::max(max_diag_rel, std::abs(acc - expect) / std::abs(expect));
            } else {
                max_offdiag = std::max(max_offdiag, std::abs(acc));
            }
        }
    }
    const bool pass = max_offdiag < tol && max_diag_rel < tol;
    RunOutcome out;
    out.files.push_back(out_path(cfg, "orthogonality.csv"));
    write_csv(out.files.back(), t);
    json values = {{"max_offdiag", max_offdiag},
                   {"max_diag_rel", max_diag_rel},
                   {"tol", tol},
                   {"pass", pass}};
    out.files.push_back(write_meta(
        cfg, {{"nu", cfg.nu}, {"terms", terms}, {"nodes", nodes}}, values, out.files));
    out.summary = "check orthogonality: nu=" + fmt(cfg.nu) +
                  " terms=" + std::to_string(terms) + " nodes=" +
                  std::to_string(nodes) + "\n  max off-diagonal " + fmt(max_offdiag) +
                  ", max diagonal relative error " + fmt(max_diag_rel) + " (tol " +
                  fmt(tol) + ")\n  " + (pass ? "PASS" : "FAIL") +
                  "\nwrote: " + out.files[0] + ", " + out.files[1] + "\n";
    if (!pass) {
        out.exit_code = 3;
        out.failure = "orthogonality check failed: max off-diagonal " +
                      fmt(max_offdiag) + ", max diagonal relative error " +
                      fmt(max_diag_rel) + ", tol " + fmt(tol);
    }
    return out;
}

inline RunOutcome run_check_eigenrelation(const RunConfig& cfg) {
    const bool is_b = cfg.transform != "k";
    const double tol = cfg.tol > 0.0 ? cfg.tol : (is_b ? 1e-6 : 1e-4);
    const std::string name = cfg.function.empty() ? "gauss" : cfg.function;
    const RadialBuiltin fb = radial_builtins().at(name);
    const double n = cfg.n;
    const auto lap = [fb, n](double r) { return fb.lap(r, n); };
    const std::vector<double> lambdas =
        cfg.lambdas ? *cfg.lambdas : std::vector<double>{0.5, 1.0, 2.0};

    CsvTable t;
    double worst = 0.0;
    const double boundary = -fb.f(0.0) / (2.0 * detail::pi);
    double measured_re = 0.0;
    if (is_b) {
        t.header = {"lambda", "residual"};
        for (double lam : lambdas) {
            const double res =
                std::abs(eigen_residual(fb.f, lap, cfg.n, lam, transform_kind::B));
            t.rows.push_back({lam, res});
            worst = std::max(worst, res);
        }
    } else {
        // the raw K residual equals the boundary term -f(0)/(2 pi); the
        // check subtracts it and reports the measured sign
        t.header = {"lambda", "residual", "corrected"};
        for (double lam : lambdas) {
            const complex_t res =
                eigen_residual(fb.f, lap, cfg.n, lam, transform_kind::K);
            const double corrected = std::abs(res - complex_t(boundary, 0.0));
            t.rows.push_back({lam, std::abs(res), corrected});
            worst = std::max(worst, corrected);
            measured_re = res.real();
        }
    }
    const bool pass = worst < tol;
    RunOutcome out;
    out.files.push_back(out_path(cfg, "eigenrelation.csv"));
    write_csv(out.files.back(), t);
    json values = {{"worst", worst}, {"tol", tol}, {"pass", pass}};
    if (!is_b) {
        values["boundary_term"] = boundary;
        values["measured_residual_re"] = measured_re;
        values["measured_sign"] = measured_re < 0.0 ? "negative" : "nonnegative";
    }
    out.files.push_back(write_meta(cfg,
                                   {{"transform", cfg.transform},
                                    {"function", name},
                                    {"n", cfg.n},
                                    {"lambdas", lambdas}},
                                   values, out.files));
    out.summary = "check eigenrelation: kind=" + cfg.transform + " " + name +
                  " n=" + fmt(cfg.n) + "\n  worst residual " + fmt(worst) + " (tol " +
                  fmt(tol) + ")";
    if (!is_b)
        out.summary += "\n  boundary term -f(0)/(2 pi) = " + fmt(boundary) +
                       ", measured residual sign: " +
                       (measured_re < 0.0 ? "negative" : "nonnegative");
    out.summary += std::string("\n  ") + (pass ? "PASS" : "FAIL") +
                   "\nwrote: " + out.files[0] + ", " + out.files[1] + "\n";
    if (!pass) {
        out.exit_code = 3;
        out.failure = "eigenrelation check failed: worst residual " + fmt(worst) +
                      ", tol " + fmt(tol);
    }
    return out;
}

inline RunOutcome run_check_pde(const RunConfig& cfg) {
    const double tol = cfg.tol > 0.0 ? cfg.tol : 1e-5;
    CsvTable t;
    double worst = 0.0;
    json params;
    if (cfg.kernel == "convdiff-general" || cfg.kernel == "convdiff-fundamental") {
        if (cfg.v.size() != 2)
            throw domain_error("pde-residual convdiff checks probe 2-D points; "
                               "'v' must have 2 components");
        const ConvDiffSpec spec(cfg.n, cfg.v, cfg.D, cfg.k);
        const bool general = cfg.kernel == "convdiff-general";
        const point_t center{0.0, 0.0};
        const auto u = [&](double x, double y) {
            const point_t p{x, y};
            return general ? convdiff_general(spec, p, center)
                           : convdiff_fundamental(spec, p, center);
        };
        const double pts[5][2] = {
            {0.8, 0.3}, {0.5, -0.4}, {-0.6, 0.2}, {1.1, 0.7}, {-0.9, -0.5}};
        t.header = {"x", "y", "residual"};
        for (const auto& p : pts) {
            const double res = convdiff_residual_fd(u, spec, p[0], p[1]);
            t.rows.push_back({p[0], p[1], res});
            worst = std::max(worst, std::abs(res));
        }
        params = {{"kernel", cfg.kernel}, {"n", cfg.n},
                  {"v", cfg.v},           {"D", cfg.D},
                  {"k", cfg.k},           {"mu", spec.mu()}};
    } else if (cfg.kernel == "ts-diffusion") {
        const TimeSpaceDiffusionSpec spec(cfg.n, cfg.lambda0, cfg.a);
        const auto u = [&](double r, double dt) {
            return timespace_diffusion_kernel(spec, r, dt);
        };
        const double pts[5][2] = {
            {0.6, 0.5}, {0.3, 0.8}, {1.0, 1.5}, {0.5, 0.25}, {1.4, 2.0}};
        t.header = {"r", "dt", "residual"};
        for (const auto& p : pts) {
            const double r0 = p[0], t0 = p[1];
            const double ut = (u(r0, t0 + fd_h) - u(r0, t0 - fd_h)) / (2.0 * fd_h);
            const double lap =
                radial_laplacian_fd([&](double r) { return u(r, t0); }, cfg.n, r0);
            const double res = ut - cfg.a * cfg.a * lap;
            t.rows.push_back({r0, t0, res});
            worst = std::max(worst, std::abs(res));
        }
        params = {{"kernel", cfg.kernel},
                  {"n", cfg.n},
                  {"lambda0", cfg.lambda0},
                  {"a", cfg.a}};
    } else {
        const TimeSpaceWaveSpec spec(cfg.n, cfg.lambda0, cfg.c, cfg.alpha, cfg.beta);
        const double clam = spec.c * spec.lambda;
        const double r0 = 0.3;
        const double t0 = std::max(2.0, (r0 + 1.0) / clam + 1.0);  // inside support
        const auto w = [&](double dt) { return timespace_wave_kernel(spec, r0, dt); };
        const auto phi = [&](double r) { return timespace_wave_kernel(spec, r, t0); };
        const double wtt =
            (w(t0 + fd_h) - 2.0 * w(t0) + w(t0 - fd_h)) / (fd_h * fd_h);
        const double res_t = wtt + clam * clam * w(t0);          // T'' = -(c lam)^2 T
        const double lap = radial_laplacian_fd(phi, cfg.n, r0);
        const double res_sp = lap + spec.lambda * spec.lambda * phi(r0);
        const double res_pde = wtt - spec.c * spec.c * lap;  // w_tt = c^2 lap w
        t.header = {"factor", "r", "dt", "residual"};
        t.rows.push_back({0.0, r0, t0, res_t});   // temporal
        t.rows.push_back({1.0, r0, t0, res_sp});  // spatial
        t.rows.push_back({2.0, r0, t0, res_pde}); // product
        worst = std::max({std::abs(res_t), std::abs(res_sp), std::abs(res_pde)});
        params = {{"kernel", cfg.kernel}, {"n", cfg.n},    {"lambda0", cfg.lambda0},
                  {"c", cfg.c},           {"alpha", cfg.alpha}, {"beta", cfg.beta}};
    }
    const bool pass = worst < tol;
    RunOutcome out;
    out.files.push_back(out_path(cfg, "pde_residual.csv"));
    write_csv(out.files.back(), t);
    json values = {{"worst", worst}, {"tol", tol}, {"pass", pass}};
    out.files.push_back(write_meta(cfg, params, values, out.files));
    out.summary = "check pde-residual: " + cfg.kernel + "\n  worst |residual| " +
                  fmt(worst) + " (tol " + fmt(tol) + ")\n  " +
                  (pass ? "PASS" : "FAIL") + "\nwrote: " + out.files[0] + ", " +
                  out.files[1] + "\n";
    if (!pass) {
        out.exit_code = 3;
        out.failure = "pde residual check failed: worst " + fmt(worst) + ", tol " +
                      fmt(tol);
    }
    return out;
}

inline RunOutcome run_check_roundtrip(const RunConfig& cfg) {
    const double quad_tol = 1e-9;
    RunOutcome out;
    CsvTable t;
    double worst = 0.0;
    double tol = cfg.tol;
    json values;
    json params;

    if (cfg.transform == "b") {
        if (tol <= 0.0) tol = 1e-5;
        const auto f = radial_source(cfg, "gauss_half");
        GridSpec lg = pick(cfg.lambda_grid, {0.0, 20.0, 801});
        auto lambdas = linspace(lg);
        // above n = 2 the lambda = 0 entry is the constant mode, not the
        // kernel limit; keep the spline off that kink
        if (cfg.n > 2.0 && !lambdas.empty() && lambdas.front() == 0.0)
            lambdas.front() = 1e-3;
        const TransformCalibration cal = calibrate(cfg.n, transform_kind::B);
        const Spectrum s = b_forward(f, cfg.n, lambdas, quad_tol);
        const auto radii = linspace(pick(cfg.radius_grid, {0.0, 3.0, 31}));
        const RadialSamples rec = b_inverse(s, cal, radii);
        t.header = {"r", "original", "reconstructed", "abs_error"};
        for (std::size_t i = 0; i < radii.size(); ++i) {
            const double err = std::abs(rec.values[i] - f(radii[i]));
            t.rows.push_back({radii[i], f(radii[i]), rec.values[i], err});
            worst = std::max(worst, err);
        }
        params = {{"transform", "b"},
                  {"function", source_name(cfg, "gauss_half")},
                  {"n", cfg.n}};
    } else if (cfg.transform == "k") {
        if (tol <= 0.0) tol = 1e-4;
        const auto f = radial_source(cfg, "gauss_half");
        const auto lambdas = linspace(pick(cfg.lambda_grid, {0.025, 8.0, 320}));
        const TransformCalibration cal = derive_constants(cfg.n, transform_kind::K);
        const Spectrum s = k_forward(f, cfg.n, lambdas, quad_tol);
        const auto radii = linspace(pick(cfg.radius_grid, {0.025, 3.0, 120}));
        const auto rec = k_inverse_complex(s, cal, radii);
        t.header = {"r", "original", "rec_re", "rec_im", "abs_error"};
        double max_im = 0.0;
        for (std::size_t i = 0; i < radii.size(); ++i) {
            const double err = std::abs(rec[i] - complex_t(f(radii[i]), 0.0));
            t.rows.push_back(
                {radii[i], f(radii[i]), rec[i].real(), rec[i].imag(), err});
            worst = std::max(worst, err);
            max_im = std::max(max_im, std::abs(rec[i].imag()));
        }
        values["max_imag"] = max_im;
        params = {{"transform", "k"},
                  {"function", source_name(cfg, "gauss_half")},
                  {"n", cfg.n}};
    } else if (cfg.transform == "dbt") {
        if (tol <= 0.0) tol = 1e-3;
        const int terms = cfg.terms > 0 ? cfg.terms : 50;
        const auto f = radial_source(cfg, "poly_cap");
        const BesselSeries s =
            analyze(f, cfg.n, cfg.R, terms, series_mode::orthogonal);
        const auto radii = linspace(pick(cfg.radius_grid, {0.0, 0.9 * cfg.R, 181}));
        t.header = {"r", "original", "reconstructed", "abs_error"};
        for (double r : radii) {
            const double rec = synthesize(s, r);
            const double err = std::abs(rec - f(r));
            t.rows.push_back({r, f(r), rec, err});
            worst = std::max(worst, err);
        }
        params = {{"transform", "dbt"},
                  {"function", source_name(cfg, "poly_cap")},
                  {"n", cfg.n},
                  {"R", cfg.R},
                  {"terms", terms}};
    } else {  // ts: saturated inverse agrees with the stationary inverse;
              // both integrate the same spectrum spline, so the default
              // grid stays small
        if (tol <= 0.0) tol = 1e-6;
        const std::string name = cfg.function.empty() ? "exp_gauss" : cfg.function;
        const auto f2 = timespace_builtins().at(name);
        const TimeSpaceDiffusionSpec ts(cfg.n, 1.0, cfg.a);
        const auto lambdas = linspace(pick(cfg.lambda_grid, {0.5, 8.0, 61}));
        const Spectrum s = ts_forward(f2, ts, lambdas, quad_tol);
        const double lam_min = lambdas.front();
        const double t_sat = 30.0 / (cfg.a * cfg.a * lam_min * lam_min);
        const TransformCalibration cal = calibrate(cfg.n, transform_kind::B);
        const auto radii = linspace(pick(cfg.radius_grid, {0.0, 3.0, 21}));
        const TimeSpaceField field = ts_inverse(s, ts, cal, radii, {t_sat});
        Spectrum sb = s;
        sb.kind = spectrum_kind::B;
        const RadialSamples stat = b_inverse(sb, cal, radii);
        t.header = {"r", "saturated", "stationary", "abs_error"};
        for (std::size_t i = 0; i < radii.size(); ++i) {
            const double err = std::abs(field.values[i][0] - stat.values[i]);
            t.rows.push_back({radii[i], field.values[i][0], stat.values[i], err});
            worst = std::max(worst, err);
        }
        values["saturation_time"] = t_sat;
        params = {{"transform", "ts"}, {"function", name}, {"n", cfg.n},
                  {"a", cfg.a}};
    }

    const bool pass = worst < tol;
    out.files.push_back(out_path(cfg, "roundtrip.csv"));
    write_csv(out.files.back(), t);
    values["worst"] = worst;
    values["tol"] = tol;
    values["pass"] = pass;
    out.files.push_back(write_meta(cfg, params, values, out.files));
    out.summary = "check roundtrip: transform=" + cfg.transform + " n=" + fmt(cfg.n) +
                  "\n  worst abs error " + fmt(worst) + " (tol " + fmt(tol) +
                  ")\n  " + (pass ? "PASS" : "FAIL") + "\nwrote: " + out.files[0] +
                  ", " + out.files[1] + "\n";
    if (!pass) {
        out.exit_code = 3;
        out.failure = "roundtrip check failed: transform=" + cfg.transform +
                      ", worst abs error " + fmt(worst) + ", tol " + fmt(tol);
    }
    return out;
}

inline classic_rbf_kind rbf_kind_of(const std::string& name) {
    if (name == "mq") return classic_rbf_kind::MQ;
    if (name == "gaussian") return classic_rbf_kind::Gaussian;
    return classic_rbf_kind::PreWaveletTPS;
}

inline RunOutcome run_fit_classic(const RunConfig& cfg) {
    std::vector<ClassicRbfSpec> scales;
    for (double s : cfg.scales) scales.emplace_back(rbf_kind_of(cfg.rbf), s);
    std::vector<point_t> centers;
    for (int i = 0; i < cfg.centers; ++i)
        centers.push_back({cfg.centers == 1
                               ? cfg.lo
                               : cfg.lo + (cfg.hi - cfg.lo) * i / (cfg.centers - 1)});

    ScatteredSamples samples;
    std::string source;
    if (!cfg.input.empty()) {
        const CsvTable in = read_csv(cfg.input);
        if (in.header != std::vector<std::string>{"x", "value"})
            throw domain_error(cfg.input + ": expected header 'x,value'");
        for (const auto& row : in.rows) {
            samples.points.push_back({row[0]});
            samples.values.push_back(row[1]);
        }
        source = "input:" + cfg.input;
    } else {
        const std::string name = cfg.function.empty() ? "sin_pi" : cfg.function;
        const auto target = target_builtins().at(name);
        source = name;
        if (cfg.samples == 0) {
            for (const auto& c : centers) {
                samples.points.push_back(c);
                samples.values.push_back(target(c[0]));
            }
        } else {
            std::mt19937_64 gen(cfg.seed);
            for (int i = 0; i < cfg.samples; ++i) {
                const double x = uniform(gen, cfg.lo, cfg.hi);
                samples.points.push_back({x});
                samples.values.push_back(target(x));
            }
        }
    }

    const FitResult fit_res = fit(scales, centers, samples, cfg.with_poly);

    RunOutcome out;
    CsvTable ct;
    ct.header = {"index", "value"};
    for (std::size_t i = 0; i < fit_res.coeffs.size(); ++i)
        ct.rows.push_back({static_cast<double>(i), fit_res.coeffs[i]});
    out.files.push_back(out_path(cfg, "fit_coeffs.csv"));
    write_csv(out.files.back(), ct);

    CsvTable rt;
    rt.header = {"residual_norm", "condition_estimate"};
    rt.rows.push_back({fit_res.residual_norm, fit_res.condition_estimate});
    out.files.push_back(out_path(cfg, "fit_report.csv"));
    write_csv(out.files.back(), rt);

    CsvTable curve;
    curve.header = {"x", "value"};
    for (int i = 0; i < 201; ++i) {
        const double x = cfg.lo + (cfg.hi - cfg.lo) * i / 200.0;
        curve.rows.push_back({x, evaluate_fit(fit_res, {x})});
    }
    out.files.push_back(out_path(cfg, "fit_curve.csv"));
    write_csv(out.files.back(), curve);

    json values = {{"residual_norm", fit_res.residual_norm},
                   {"condition_estimate", fit_res.condition_estimate},
                   {"poly_coeffs", fit_res.poly_coeffs}};
    out.files.push_back(write_meta(cfg,
                                   {{"rbf", cfg.rbf},
                                    {"scales", cfg.scales},
                                    {"function", source},
                                    {"centers", cfg.centers},
                                    {"lo", cfg.lo},
                                    {"hi", cfg.hi},
                                    {"samples", cfg.samples},
                                    {"with_poly", cfg.with_poly},
                                    {"seed", cfg.seed}},
                                   values, out.files));
    out.summary = "fit classic: " + cfg.rbf + " on " + source + ", residual " +
                  fmt(fit_res.residual_norm) + ", condition " +
                  fmt(fit_res.condition_estimate) + "\nwrote: " + out.files[0] + ", " +
                  out.files[1] + ", " + out.files[2] + ", " + out.files[3] + "\n";
    return out;
}

inline RunOutcome run_fit_ridgelet(const RunConfig& cfg) {
    const std::size_t dim = cfg.init_v.size();
    // centers on a per-axis grid over the inner 70% of the sampling box
    const int per_axis = cfg.centers;
    std::size_t total = 1;
    for (std::size_t d = 0; d < dim; ++d) total *= static_cast<std::size_t>(per_axis);
    if (total > 400)
        throw domain_error("ridgelet center grid too large: " + std::to_string(total));
    const double mid = 0.5 * (cfg.lo + cfg.hi);
    const double half = 0.35 * (cfg.hi - cfg.lo);  // inner box half-width
    std::vector<point_t> centers(total, point_t(dim));
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (std::size_t d = 0; d < dim; ++d) {
            const int pos = static_cast<int>(rem % static_cast<std::size_t>(per_axis));
            rem /= static_cast<std::size_t>(per_axis);
            centers[idx][d] =
                per_axis == 1
                    ? mid
                    : mid - half + 2.0 * half * pos / (per_axis - 1);
        }
    }

    ScatteredSamples samples;
    std::string source;
    json truth;
    if (!cfg.input.empty()) {
        const CsvTable in = read_csv(cfg.input);
        if (in.header.size() != dim + 1 || in.header.back() != "value")
            throw domain_error(cfg.input + ": expected " + std::to_string(dim) +
                               " coordinate columns plus a final 'value' column");
        for (const auto& row : in.rows) {
            samples.points.emplace_back(row.begin(), row.end() - 1);
            samples.values.push_back(row.back());
        }
        source = "input:" + cfg.input;
        truth = nullptr;
    } else {
        if (cfg.truth_v.size() != dim)
            throw domain_error("'truth_v' and 'init_v' must have the same length");
        const ConvDiffSpec truth_spec(cfg.n, cfg.truth_v, cfg.truth_D, cfg.truth_k);
        // weights first, then sample points, from one seeded stream
        std::mt19937_64 gen(cfg.seed);
        std::vector<double> w(total);
        for (auto& wi : w) wi = uniform(gen, -1.0, 1.0);
        const int count = cfg.samples > 0 ? cfg.samples : 25;
        if (static_cast<std::size_t>(count) < total)
            throw domain_error("ridgelet synthesis needs samples >= centers, got " +
                               std::to_string(count) + " < " + std::to_string(total));
        for (int i = 0; i < count; ++i) {
            point_t p(dim);
            for (auto& coord : p) coord = uniform(gen, cfg.lo, cfg.hi);
            double val = 0.0;
            for (std::size_t j = 0; j < total; ++j)
                val += w[j] * convdiff_general(truth_spec, p, centers[j]);
            samples.points.push_back(std::move(p));
            samples.values.push_back(val);
        }
        source = "synthetic";
        truth = {{"D", cfg.truth_D}, {"v", cfg.truth_v}, {"k", cfg.truth_k},
                 {"mu", truth_spec.mu()}};
    }

    const ConvDiffSpec init(cfg.n, cfg.init_v, cfg.init_D, cfg.init_k);
    const RidgeletFit fit_res = ridgelet_fit(samples, centers, init, cfg.fit_params);
    const double mu = ridgelet_mu(fit_res, cfg.n);

    RunOutcome out;
    CsvTable rt;
    rt.header = {"D"};
    for (std::size_t d = 0; d < dim; ++d) rt.header.push_back("v" + std::to_string(d));
    rt.header.insert(rt.header.end(), {"k", "mu", "loss", "converged", "iterations"});
    std::vector<double> row{fit_res.D};
    row.insert(row.end(), fit_res.v.begin(), fit_res.v.end());
    row.insert(row.end(),
               {fit_res.k, mu, fit_res.loss, fit_res.converged ? 1.0 : 0.0,
                static_cast<double>(fit_res.loss_history.size() - 1)});
    rt.rows.push_back(row);
    out.files.push_back(out_path(cfg, "ridgelet_report.csv"));
    write_csv(out.files.back(), rt);

    CsvTable wt;
    wt.header = {"index", "value"};
    for (std::size_t i = 0; i < fit_res.weights.size(); ++i)
        wt.rows.push_back({static_cast<double>(i), fit_res.weights[i]});
    out.files.push_back(out_path(cfg, "ridgelet_weights.csv"));
    write_csv(out.files.back(), wt);

    CsvTable lt;
    lt.header = {"iteration", "loss"};
    for (std::size_t i = 0; i < fit_res.loss_history.size(); ++i)
        lt.rows.push_back({static_cast<double>(i), fit_res.loss_history[i]});
    out.files.push_back(out_path(cfg, "ridgelet_loss.csv"));
    write_csv(out.files.back(), lt);

    json values = {{"D", fit_res.D},
                   {"v", fit_res.v},
                   {"k", fit_res.k},
                   {"mu", mu},
                   {"loss", fit_res.loss},
                   {"converged", fit_res.converged},
                   {"iterations", fit_res.loss_history.size() - 1}};
    json params = {{"source", source},
                   {"n", cfg.n},
                   {"init", {{"D", cfg.init_D}, {"v", cfg.init_v}, {"k", cfg.init_k}}},
                   {"centers_per_axis", per_axis},
                   {"lo", cfg.lo},
                   {"hi", cfg.hi},
                   {"samples", cfg.samples > 0 ? cfg.samples : 25},
                   {"seed", cfg.seed},
                   {"fit_params", cfg.fit_params}};
    if (!truth.is_null()) params["truth"] = truth;
    out.files.push_back(write_meta(cfg, params, values, out.files));
    out.summary = "fit ridgelet: " + source + ", recovered mu=" + fmt(mu) +
                  " loss=" + fmt(fit_res.loss) +
                  (fit_res.converged ? " (converged)" : " (iteration cap)") +
                  "\nwrote: " + out.files[0] + ", " + out.files[1] + ", " +
                  out.files[2] + ", " + out.files[3] + "\n";
    return out;
}

inline RunOutcome run_study_convergence(const RunConfig& cfg) {
    const std::string name = cfg.function.empty() ? "sin_pi" : cfg.function;
    const auto target = target_builtins().at(name);
    const double c = cfg.c;
    const auto rows = convergence_study(
        target, rbf_kind_of(cfg.rbf), [c](int) { return c; }, cfg.n_list, cfg.lo,
        cfg.hi);
    CsvTable t;
    t.header = {"N", "linf", "condition", "solved"};
    for (const auto& r : rows)
        t.rows.push_back({static_cast<double>(r.N), r.linf_error,
                          r.condition_estimate, r.solved ? 1.0 : 0.0});
    RunOutcome out;
    out.files.push_back(out_path(cfg, "convergence.csv"));
    write_csv(out.files.back(), t);
    json values = {{"first_linf", rows.front().linf_error},
                   {"last_linf", rows.back().linf_error}};
    out.files.push_back(write_meta(cfg,
                                   {{"rbf", cfg.rbf},
                                    {"c", cfg.c},
                                    {"function", name},
                                    {"n_list", cfg.n_list},
                                    {"lo", cfg.lo},
                                    {"hi", cfg.hi}},
                                   values, out.files));
    out.summary = "study convergence: " + cfg.rbf + " on " + name + ", linf " +
                  fmt(rows.front().linf_error) + " -> " + fmt(rows.back().linf_error) +
                  "\nwrote: " + out.files[0] + ", " + out.files[1] + "\n";
    return out;
}

}  // namespace detail_run

// Run the configured operation and write its outputs. Module errors
// propagate to the caller; check failures return exit code 3 with the
// measurement in `failure`.
inline RunOutcome dispatch(const RunConfig& cfg) {
    using namespace detail_run;
    const std::string& c = cfg.command;
    if (c == "specfun eval") return run_specfun_eval(cfg);
    if (c == "specfun zeros") return run_specfun_zeros(cfg);
    if (c == "dbt analyze") return run_dbt_analyze(cfg);
    if (c == "dbt synthesize") return run_dbt_synthesize(cfg);
    if (c == "dbt error") return run_dbt_error(cfg);
    if (c == "transform b-forward") return run_forward(cfg, transform_kind::B);
    if (c == "transform k-forward") return run_forward(cfg, transform_kind::K);
    if (c == "transform b-inverse") return run_inverse(cfg, transform_kind::B);
    if (c == "transform k-inverse") return run_inverse(cfg, transform_kind::K);
    if (c == "transform ts-forward") return run_ts_forward(cfg);
    if (c == "transform ts-inverse") return run_ts_inverse(cfg);
    if (c == "transform calibrate") return run_calibrate(cfg);
    if (c == "check orthogonality") return run_check_orthogonality(cfg);
    if (c == "check eigenrelation") return run_check_eigenrelation(cfg);
    if (c == "check pde-residual") return run_check_pde(cfg);
    if (c == "check roundtrip") return run_check_roundtrip(cfg);
    if (c == "fit classic") return run_fit_classic(cfg);
    if (c == "fit ridgelet") return run_fit_ridgelet(cfg);
    if (c == "study convergence") return run_study_convergence(cfg);
    throw domain_error("unknown command '" + c + "'");
}

// Which subcommand demonstrates each numbered acceptance check; every
// criterion is reachable from the command line.
inline const std::vector<std::pair<int, std::string>>& acceptance_manifest() {
    static const std::vector<std::pair<int, std::string>> rows = {
        {1, "check orthogonality"},  {2, "specfun eval"},
        {2, "specfun zeros"},        {3, "dbt analyze"},
        {3, "dbt error"},            {4, "transform b-forward"},
        {4, "check roundtrip"},      {5, "transform calibrate"},
        {6, "check eigenrelation"},  {7, "check roundtrip"},
        {8, "check pde-residual"},   {9, "fit ridgelet"},
        {10, "transform ts-forward"}, {10, "transform ts-inverse"},
        {11, "study convergence"},   {11, "fit classic"},
        {12, "fit ridgelet"},
    };
    return rows;
}

}  // namespace rbfwt::cli

#endif  // RBFWT_CLI_HPP
