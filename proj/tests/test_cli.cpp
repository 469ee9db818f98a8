#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "rbfwt/cli.hpp"

using namespace rbfwt;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Shell out to the built binary; skips when ctest did not provide its path.
struct CliBinary {
    std::string path;
    bool available() const { return !path.empty(); }

    // returns the process exit code; stdout/stderr go to `log`
    int run(const std::string& args, const fs::path& log) const {
        const std::string cmd =
            path + " " + args + " > " + log.string() + " 2>&1";
        const int rc = std::system(cmd.c_str());
        REQUIRE(rc != -1);
        return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    }
};

CliBinary binary() {
    const char* env = std::getenv("RBFWT_CLI");
    return CliBinary{env ? env : ""};
}

}  // namespace

TEST_CASE("empty config resolves to per-command defaults") {
    const cli::RunConfig cfg = cli::parse_config("{}", "specfun eval");
    CHECK(cfg.command == "specfun eval");
    CHECK(cfg.kind == "J");
    CHECK(cfg.nu == 0.0);
    CHECK_FALSE(cfg.grid.has_value());
    CHECK(cfg.out == ".");
    CHECK(cfg.seed == 12345);
}

TEST_CASE("negative diffusivity is rejected by name") {
    try {
        cli::parse_config(R"({"D": -1})", "check pde-residual");
        FAIL("config with D = -1 must not parse");
    } catch (const cli::config_error& e) {
        REQUIRE(e.issues.size() == 1);
        CHECK(e.issues[0].find("ConvDiffSpec invariant") != std::string::npos);
        CHECK(e.issues[0].find("-1") != std::string::npos);
    }
}

TEST_CASE("validation reports every issue at once") {
    try {
        cli::parse_config(R"({"D": -2, "k": -1, "v": [], "typo_key": 5})",
                          "check pde-residual");
        FAIL("config with three invariant violations and a typo must not parse");
    } catch (const cli::config_error& e) {
        REQUIRE(e.issues.size() == 4);
        const std::string all = e.what();
        CHECK(all.find("typo_key") != std::string::npos);
        CHECK(all.find("diffusivity") != std::string::npos);
        CHECK(all.find("reaction coefficient") != std::string::npos);
        CHECK(all.find("velocity vector") != std::string::npos);
    }
}

TEST_CASE("config command must match the invoked subcommand") {
    CHECK_THROWS_AS(
        cli::parse_config(R"({"command": "specfun zeros"})", "specfun eval"),
        cli::config_error);
    CHECK_THROWS_AS(cli::parse_config(R"({"command": "no such thing"})", ""),
                    cli::config_error);
    CHECK_THROWS_AS(cli::parse_config("{}", ""), cli::config_error);
    CHECK_THROWS_AS(cli::parse_config("not json", "specfun eval"),
                    cli::config_error);
}

TEST_CASE("grid objects are validated field by field") {
    CHECK_THROWS_AS(
        cli::parse_config(R"({"grid": {"min": 1.0, "max": 0.0, "count": 5}})",
                          "specfun eval"),
        cli::config_error);
    CHECK_THROWS_AS(cli::parse_config(R"({"grid": [0, 1]})", "specfun eval"),
                    cli::config_error);
    CHECK_THROWS_AS(
        cli::parse_config(
            R"({"kind": "K", "grid": {"min": 0.0, "max": 2.0, "count": 5}})",
            "specfun eval"),
        cli::config_error);
}

TEST_CASE("fractional dimension runs end to end") {
    const fs::path dir = fresh_dir("rbfwt_cli_frac_dim");
    const cli::RunConfig cfg = cli::parse_config(
        R"({"n": 2.5, "lambdas": [1.0], "out": ")" + dir.string() + R"("})",
        "check eigenrelation");
    CHECK(cfg.n == 2.5);
    const cli::RunOutcome out = cli::dispatch(cfg);
    CHECK(out.exit_code == 0);
    REQUIRE(out.files.size() == 2);
    const CsvTable t = read_csv(out.files[0]);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][0] == 1.0);
    CHECK(t.rows[0][1] < 1e-6);  // |B[lap f] + lambda^2 B[f]| for the Gaussian
}

TEST_CASE("acceptance manifest covers every criterion with real subcommands") {
    const auto& rows = cli::acceptance_manifest();
    const auto& cmds = cli::known_commands();
    std::set<int> covered;
    for (const auto& [criterion, cmd] : rows) {
        covered.insert(criterion);
        CHECK(std::find(cmds.begin(), cmds.end(), cmd) != cmds.end());
    }
    for (int c = 1; c <= 12; ++c) CHECK(covered.count(c) == 1);
}

TEST_CASE("csv round trip preserves doubles exactly") {
    const fs::path dir = fresh_dir("rbfwt_cli_csv");
    CsvTable t;
    t.header = {"a", "b"};
    t.rows = {{1.0 / 3.0, -2.5e-17}, {1e300, 0.0}};
    const std::string path = (dir / "t.csv").string();
    write_csv(path, t);
    const CsvTable back = read_csv(path);
    REQUIRE(back.header == t.header);
    REQUIRE(back.rows.size() == 2);
    CHECK(back.rows[0][0] == t.rows[0][0]);
    CHECK(back.rows[0][1] == t.rows[0][1]);
    CHECK(back.rows[1][0] == t.rows[1][0]);

    Spectrum s;
    s.n = 3.0;
    s.kind = spectrum_kind::K;
    s.lambdas = {0.5, 1.0, 2.0};
    s.values = {{1.25, -0.5}, {0.0, 1e-30}, {-3.0, 0.25}};
    const std::string spath = (dir / "s.csv").string();
    write_spectrum_csv(spath, s);
    const Spectrum sb = read_spectrum_csv(spath, 3.0, spectrum_kind::K);
    REQUIRE(sb.lambdas == s.lambdas);
    for (std::size_t i = 0; i < s.values.size(); ++i)
        CHECK(sb.values[i] == s.values[i]);

    CHECK_THROWS_AS(read_csv((dir / "missing.csv").string()), domain_error);
    std::ofstream((dir / "ragged.csv").string()) << "a,b\n1,2\n3\n";
    CHECK_THROWS_AS(read_csv((dir / "ragged.csv").string()), domain_error);
}

TEST_CASE("binary reruns are byte-identical") {
    const CliBinary bin = binary();
    if (!bin.available()) SKIP("RBFWT_CLI not set");
    const fs::path d1 = fresh_dir("rbfwt_cli_det1");
    const fs::path d2 = fresh_dir("rbfwt_cli_det2");
    const fs::path cfg = d1 / "cfg.json";
    std::ofstream(cfg) << R"({"lambda_grid": {"min": 0.0, "max": 2.0, "count": 9}})";
    REQUIRE(bin.run("transform b-forward --config " + cfg.string() + " --out " +
                        d1.string(),
                    d1 / "log.txt") == 0);
    REQUIRE(bin.run("transform b-forward --config " + cfg.string() + " --out " +
                        d2.string(),
                    d2 / "log.txt") == 0);
    CHECK(slurp(d1 / "b_spectrum.csv") == slurp(d2 / "b_spectrum.csv"));
    CHECK(slurp(d1 / "transform_b_forward.meta.json") ==
          slurp(d2 / "transform_b_forward.meta.json"));
}

TEST_CASE("binary forward transform hits the Gaussian eigenvalue") {
    const CliBinary bin = binary();
    if (!bin.available()) SKIP("RBFWT_CLI not set");
    const fs::path dir = fresh_dir("rbfwt_cli_bfwd");
    const fs::path cfg = dir / "cfg.json";
    std::ofstream(cfg) << R"({"lambda_grid": {"min": 0.0, "max": 2.0, "count": 9}})";
    REQUIRE(bin.run("transform b-forward --config " + cfg.string() + " --out " +
                        dir.string(),
                    dir / "log.txt") == 0);
    const CsvTable t = read_csv((dir / "b_spectrum.csv").string());
    REQUIRE(t.rows.size() == 9);
    // e^{-r^2/2} is an eigenfunction: F(lambda) = e^{-lambda^2/2}
    CHECK(t.rows[4][0] == 1.0);
    CHECK(t.rows[4][1] == Catch::Approx(std::exp(-0.5)).epsilon(1e-6));
    CHECK(std::abs(t.rows[4][2]) < 1e-12);
}

TEST_CASE("binary orthogonality check passes at defaults") {
    const CliBinary bin = binary();
    if (!bin.available()) SKIP("RBFWT_CLI not set");
    const fs::path dir = fresh_dir("rbfwt_cli_orth");
    REQUIRE(bin.run("check orthogonality --out " + dir.string(),
                    dir / "log.txt") == 0);
    CHECK(slurp(dir / "log.txt").find("PASS") != std::string::npos);
}

TEST_CASE("binary rejects unknown commands with usage text") {
    const CliBinary bin = binary();
    if (!bin.available()) SKIP("RBFWT_CLI not set");
    const fs::path dir = fresh_dir("rbfwt_cli_unknown");
    const int rc = bin.run("no-such-command", dir / "log.txt");
    CHECK(rc != 0);
    const std::string log = slurp(dir / "log.txt");
    CHECK(log.find("Usage") != std::string::npos);
    CHECK(log.find("SUBCOMMAND") != std::string::npos);
}

TEST_CASE("binary exit codes separate config, computation, and check failures") {
    const CliBinary bin = binary();
    if (!bin.available()) SKIP("RBFWT_CLI not set");
    const fs::path dir = fresh_dir("rbfwt_cli_codes");

    const fs::path bad = dir / "bad.json";
    std::ofstream(bad) << R"({"D": -1})";
    CHECK(bin.run("check pde-residual --config " + bad.string(),
                  dir / "bad.txt") == 2);
    CHECK(slurp(dir / "bad.txt").find("\"type\":\"config_error\"") !=
          std::string::npos);

    const fs::path kcal = dir / "kcal.json";
    std::ofstream(kcal) << R"({"transform": "k"})";
    CHECK(bin.run("transform calibrate --config " + kcal.string() + " --out " +
                      dir.string(),
                  dir / "kcal.txt") == 1);
    CHECK(slurp(dir / "kcal.txt").find("measured_discrepancy") !=
          std::string::npos);
}
