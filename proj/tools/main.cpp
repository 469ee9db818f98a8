// Command-line front end. Exit codes: 0 success, 1 computation error,
// 2 invalid config, 3 check ran but failed its tolerance. Every nonzero
// exit also writes one machine-readable JSON record to stderr.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <rbfwt/cli.hpp>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw rbfwt::domain_error("cannot open config: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct Overrides {
    std::string config_path;
    std::string out;
    double tol = 0.0;
    int nodes = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

int run(const std::string& command, const Overrides& ov) {
    const std::string text =
        ov.config_path.empty() ? std::string("{}") : read_file(ov.config_path);
    rbfwt::cli::RunConfig cfg = rbfwt::cli::parse_config(text, command);
    if (!ov.out.empty()) cfg.out = ov.out;
    if (ov.tol > 0.0) cfg.tol = ov.tol;
    if (ov.nodes > 0) cfg.nodes = ov.nodes;
    if (ov.seed_set) cfg.seed = ov.seed;

    const rbfwt::cli::RunOutcome out = rbfwt::cli::dispatch(cfg);
    std::cout << out.summary;
    if (out.exit_code != 0)
        std::cerr << rbfwt::cli::check_failed_record(
                         rbfwt::cli::module_for_command(command), command,
                         out.failure)
                  << '\n';
    return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orthonormal radial basis wavelet transforms"};
    app.name("rbfwt");
    app.require_subcommand(0, 1);
    app.failure_message(CLI::FailureMessage::help);

    bool manifest = false;
    app.add_flag("--manifest", manifest,
                 "print the acceptance criterion to subcommand map as CSV and exit");

    Overrides ov;
    std::string chosen;
    const auto add_leaf = [&](CLI::App* group, const std::string& name,
                              const std::string& help) {
        CLI::App* leaf = group->add_subcommand(name, help);
        leaf->add_option("--config", ov.config_path,
                         "JSON config file; keys not set fall back to defaults");
        leaf->add_option("--out", ov.out, "output directory (overrides config)");
        leaf->add_option("--tol", ov.tol, "tolerance override")
            ->check(CLI::PositiveNumber);
        leaf->add_option("--nodes", ov.nodes, "quadrature node override")
            ->check(CLI::PositiveNumber);
        leaf->add_option_function<std::uint64_t>(
            "--seed",
            [&](std::uint64_t s) {
                ov.seed = s;
                ov.seed_set = true;
            },
            "RNG seed override");
        const std::string full = group->get_name() + " " + name;
        leaf->callback([&chosen, full] { chosen = full; });
        return leaf;
    };

    CLI::App* specfun =
        app.add_subcommand("specfun", "Bessel function evaluation and zeros");
    specfun->require_subcommand(1);
    add_leaf(specfun, "eval", "tabulate J, Y, I, or K of a given order on a grid");
    add_leaf(specfun, "zeros", "positive zeros of J_nu");

    CLI::App* dbt =
        app.add_subcommand("dbt", "discrete Bessel series on a finite ball");
    dbt->require_subcommand(1);
    add_leaf(dbt, "analyze", "expand a radial function in the zero-indexed basis");
    add_leaf(dbt, "synthesize", "evaluate a coefficient file back on a radius grid");
    add_leaf(dbt, "error", "reconstruction error versus term count");

    CLI::App* transform =
        app.add_subcommand("transform", "continuous transforms and calibration");
    transform->require_subcommand(1);
    add_leaf(transform, "b-forward", "oscillatory-kernel forward transform");
    add_leaf(transform, "b-inverse", "inverse from a B spectrum CSV");
    add_leaf(transform, "k-forward", "decaying-kernel forward transform");
    add_leaf(transform, "k-inverse", "inverse from a K spectrum CSV");
    add_leaf(transform, "ts-forward", "time-space diffusion forward transform");
    add_leaf(transform, "ts-inverse", "reconstruct a time-space field");
    add_leaf(transform, "calibrate", "derive (m, normalization) for a kernel family");

    CLI::App* check = app.add_subcommand("check", "operator identity checks");
    check->require_subcommand(1);
    add_leaf(check, "orthogonality", "weighted Bessel orthogonality on [0, 1]");
    add_leaf(check, "eigenrelation", "transform of the Laplacian versus -lambda^2");
    add_leaf(check, "pde-residual", "kernels against their PDEs by finite differences");
    add_leaf(check, "roundtrip", "inverse-of-forward reconstruction error");

    CLI::App* fit = app.add_subcommand("fit", "scattered-data approximation");
    fit->require_subcommand(1);
    add_leaf(fit, "classic", "interpolate with classic radial basis functions");
    add_leaf(fit, "ridgelet", "recover convection-diffusion kernel parameters");

    CLI::App* study = app.add_subcommand("study", "parameter sweeps");
    study->require_subcommand(1);
    add_leaf(study, "convergence", "interpolation error versus center count");

    CLI11_PARSE(app, argc, argv);

    if (manifest) {
        std::cout << "criterion,subcommand\n";
        for (const auto& [crit, cmd] : rbfwt::cli::acceptance_manifest())
            std::cout << crit << ',' << cmd << '\n';
        return 0;
    }
    if (chosen.empty()) {
        std::cout << app.help();
        return 0;
    }

    try {
        return run(chosen, ov);
    } catch (const rbfwt::cli::config_error& e) {
        std::cerr << e.what() << '\n'
                  << rbfwt::cli::error_record("cli", chosen, e) << '\n';
        return 2;
    } catch (const rbfwt::error& e) {
        std::cerr << e.what() << '\n'
                  << rbfwt::cli::error_record(
                         rbfwt::cli::module_for_command(chosen), chosen, e)
                  << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n'
                  << rbfwt::cli::error_record("cli", chosen, e) << '\n';
        return 1;
    }
}
