#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "rbfwt/rbffit.hpp"

using namespace rbfwt;
using Catch::Approx;

namespace {

constexpr double pi = 3.14159265358979323846;

std::vector<point_t> line_centers(int count, double lo, double hi) {
    std::vector<point_t> c(count);
    for (int i = 0; i < count; ++i)
        c[i] = {lo + (hi - lo) * i / (count - 1)};
    return c;
}

}  // namespace

TEST_CASE("square fit recovers the generating coefficients") {
    const std::vector<ClassicRbfSpec> scales = {
        ClassicRbfSpec(classic_rbf_kind::MQ, 1.0)};
    const auto centers = line_centers(10, -1.0, 1.0);
    const std::vector<double> truth = {0.5,  -1.2, 0.3, 2.0, -0.7,
                                       0.05, 1.1,  -0.4, 0.9, -1.6};

    FitResult gen;
    gen.scales = scales;
    gen.centers = centers;
    gen.coeffs = truth;
    ScatteredSamples samples;
    for (const point_t& c : centers) {
        samples.points.push_back(c);
        samples.values.push_back(evaluate_fit(gen, c));
    }

    const FitResult f = fit(scales, centers, samples, false);
    REQUIRE(f.coeffs.size() == truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i)
        CHECK(f.coeffs[i] == Approx(truth[i]).margin(1e-8));
    CHECK(f.residual_norm < 1e-10);
    CHECK(f.condition_estimate > 1.0);
}

TEST_CASE("zero samples give zero coefficients with the polynomial block") {
    const std::vector<ClassicRbfSpec> scales = {
        ClassicRbfSpec(classic_rbf_kind::Gaussian, 0.8)};
    const auto centers = line_centers(8, -1.0, 1.0);
    ScatteredSamples samples;
    for (int i = 0; i < 30; ++i) {
        samples.points.push_back({-1.0 + 2.0 * i / 29.0});
        samples.values.push_back(0.0);
    }
    const FitResult f = fit(scales, centers, samples, true);
    REQUIRE(f.poly_coeffs.size() == 2);
    for (double c : f.poly_coeffs) CHECK(std::abs(c) < 1e-12);
    for (double c : f.coeffs) CHECK(std::abs(c) < 1e-12);
    CHECK(f.residual_norm < 1e-12);
}

TEST_CASE("one-sample one-center system returns coefficient 1") {
    const std::vector<ClassicRbfSpec> scales = {
        ClassicRbfSpec(classic_rbf_kind::MQ, 2.0)};
    const std::vector<point_t> centers = {{0.3}};
    ScatteredSamples samples;
    samples.points.push_back({0.9});
    samples.values.push_back(classic_rbf(scales[0], 0.6));
    const FitResult f = fit(scales, centers, samples, false);
    CHECK(f.coeffs[0] == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("interpolatory fit reproduces samples and a smooth target") {
    const std::vector<ClassicRbfSpec> scales = {
        ClassicRbfSpec(classic_rbf_kind::MQ, 0.5)};
    const auto centers = line_centers(20, -1.0, 1.0);
    ScatteredSamples samples;
    for (const point_t& c : centers) {
        samples.points.push_back(c);
        samples.values.push_back(std::sin(pi * c[0]));
    }
    const FitResult f = fit(scales, centers, samples, false);

    // interpolation condition at every node whenever conditioning allows
    if (f.condition_estimate < 1e12) {
        double worst = 0.0;
        for (std::size_t i = 0; i < samples.points.size(); ++i)
            worst = std::max(worst, std::abs(evaluate_fit(f, samples.points[i]) -
                                             samples.values[i]));
        CHECK(worst < 1e-8);
    }
    CHECK(evaluate_fit(f, {0.25}) == Approx(std::sin(0.25 * pi)).margin(1e-3));

    FitResult zero = f;
    zero.coeffs.assign(f.coeffs.size(), 0.0);
    CHECK(evaluate_fit(zero, {0.4}) == 0.0);
}

TEST_CASE("polynomial block never increases the least-squares residual") {
    std::mt19937 rng(777u);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const std::vector<ClassicRbfSpec> scales = {
        ClassicRbfSpec(classic_rbf_kind::MQ, 1.0)};
    const auto centers = line_centers(8, -1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        ScatteredSamples samples;
        for (int i = 0; i < 40; ++i) {
            samples.points.push_back({-1.0 + 2.0 * i / 39.0});
            samples.values.push_back(unif(rng));
        }
        const FitResult plain = fit(scales, centers, samples, false);
        const FitResult poly = fit(scales, centers, samples, true);
        CHECK(poly.residual_norm <= plain.residual_norm + 1e-10);
    }
}

TEST_CASE("residual norm matches the samples it reports on") {
    const std::vector<ClassicRbfSpec> scales = {
        ClassicRbfSpec(classic_rbf_kind::Gaussian, 1.5)};
    const auto centers = line_centers(6, -1.0, 1.0);
    ScatteredSamples samples;
    for (int i = 0; i < 25; ++i) {
        const double t = -1.0 + 2.0 * i / 24.0;
        samples.points.push_back({t});
        samples.values.push_back(std::exp(t) - t * t);
    }
    const FitResult f = fit(scales, centers, samples, true);
    double ssr = 0.0;
    for (std::size_t i = 0; i < samples.points.size(); ++i) {
        const double r = evaluate_fit(f, samples.points[i]) - samples.values[i];
        ssr += r * r;
    }
    CHECK(std::sqrt(ssr) == Approx(f.residual_norm).margin(1e-12));
}

TEST_CASE("convergence study error decreases for smooth targets") {
    const auto target = [](double t) { return std::sin(pi * t); };
    const auto rule = [](int) { return 0.5; };
    const auto mq = convergence_study(target, classic_rbf_kind::MQ, rule,
                                      {8, 16, 32}, -1.0, 1.0);
    REQUIRE(mq.size() == 3);
    for (const ConvergenceRow& row : mq) {
        INFO("N=" << row.N << " err=" << row.linf_error
                  << " cond=" << row.condition_estimate);
        CHECK(row.solved);
    }
    CHECK(mq[1].linf_error < mq[0].linf_error);
    CHECK(mq[2].linf_error < mq[1].linf_error);

    const auto tps = convergence_study(target, classic_rbf_kind::PreWaveletTPS,
                                       rule, {8, 16, 32}, -1.0, 1.0);
    REQUIRE(tps.size() == 3);
    CHECK(tps[0].solved);
    CHECK(tps[2].solved);
    CHECK(tps[2].linf_error < tps[0].linf_error);

    const auto zero = convergence_study([](double) { return 0.0; },
                                        classic_rbf_kind::MQ, rule, {8, 16},
                                        -1.0, 1.0);
    for (const ConvergenceRow& row : zero) {
        CHECK(row.solved);
        CHECK(row.linf_error < 1e-12);
    }
}

TEST_CASE("ridgelet weight recovery with the kernel fixed") {
    const ConvDiffSpec truth(2.0, {2.0, 0.0}, 1.0, 3.0);
    CHECK(truth.mu() == Approx(2.0).margin(1e-15));

    std::vector<point_t> centers;
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j)
            centers.push_back({0.7 * i, 0.7 * j});
    const std::vector<double> wtrue = {0.4, -0.9, 1.3, 0.2, -0.5,
                                       0.8, -1.1, 0.6, 0.35};
    ScatteredSamples samples;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            point_t p = {-1.0 + 0.5 * i, -1.0 + 0.5 * j};
            double v = 0.0;
            for (std::size_t k = 0; k < centers.size(); ++k)
                v += wtrue[k] * convdiff_general(truth, p, centers[k]);
            samples.points.push_back(p);
            samples.values.push_back(v);
        }

    const RidgeletFit lin = ridgelet_fit(samples, centers, truth, false);
    REQUIRE(lin.weights.size() == wtrue.size());
    for (std::size_t k = 0; k < wtrue.size(); ++k)
        CHECK(lin.weights[k] == Approx(wtrue[k]).margin(1e-6));
    CHECK(lin.loss < 1e-12);
    CHECK(lin.D == truth.D);
    CHECK(lin.k == truth.k);

    // parameter recognition from a 10%-ish perturbed start recovers mu
    const ConvDiffSpec init(2.0, {2.2, 0.0}, 0.9, 3.3);
    const RidgeletFit rec = ridgelet_fit(samples, centers, init, true);
    const double mu = ridgelet_mu(rec, 2.0);
    INFO("recovered mu=" << mu << " loss=" << rec.loss
                         << " iters=" << rec.loss_history.size());
    CHECK(std::abs(mu - 2.0) / 2.0 < 0.05);
    for (std::size_t i = 1; i < rec.loss_history.size(); ++i)
        CHECK(rec.loss_history[i] <= rec.loss_history[i - 1]);
    CHECK(rec.loss < rec.loss_history.front());
}

TEST_CASE("ridgelet fit of zero data keeps the initial parameters") {
    const ConvDiffSpec init(2.0, {1.0}, 0.5, 0.0);
    const std::vector<point_t> centers = {{-0.5}, {0.0}, {0.5}};
    ScatteredSamples samples;
    for (int i = 0; i < 9; ++i) {
        samples.points.push_back({-1.0 + 0.25 * i});
        samples.values.push_back(0.0);
    }
    const RidgeletFit f = ridgelet_fit(samples, centers, init, true);
    for (double w : f.weights) CHECK(std::abs(w) < 1e-14);
    CHECK(f.loss == 0.0);
    CHECK(f.converged);
    CHECK(f.D == init.D);
    CHECK(f.v == init.v);
    CHECK(f.k == init.k);
}

TEST_CASE("fit domain and solver errors") {
    const std::vector<ClassicRbfSpec> scales = {
        ClassicRbfSpec(classic_rbf_kind::MQ, 1.0)};
    const auto centers = line_centers(5, -1.0, 1.0);

    ScatteredSamples tiny;
    tiny.points = {{0.0}, {0.5}};
    tiny.values = {1.0, 2.0};
    CHECK_THROWS_AS(fit(scales, centers, tiny, false), domain_error);

    ScatteredSamples mismatched;
    mismatched.points = {{0.0, 0.0}};
    mismatched.values = {1.0};
    CHECK_THROWS_AS(fit(scales, centers, mismatched, false), domain_error);

    // coincident centers make the square system singular
    std::vector<point_t> dup = centers;
    dup[1] = dup[0];
    ScatteredSamples samples;
    for (const point_t& c : centers) {
        samples.points.push_back(c);
        samples.values.push_back(1.0);
    }
    try {
        fit(scales, dup, samples, false);
        FAIL("duplicate centers must be rejected");
    } catch (const solver_error& e) {
        CHECK(e.condition_estimate > 1e15);
    }

    const FitResult f = fit(scales, centers, samples, false);
    CHECK_THROWS_AS(evaluate_fit(f, {0.0, 0.0}), domain_error);

    CHECK_THROWS_AS(convergence_study([](double) { return 1.0; },
                                      classic_rbf_kind::MQ,
                                      [](int) { return 1.0; }, {8, 8}, -1.0, 1.0),
                    domain_error);
    CHECK_THROWS_AS(convergence_study([](double) { return 1.0; },
                                      classic_rbf_kind::MQ,
                                      [](int) { return 1.0; }, {8}, 1.0, -1.0),
                    domain_error);
}
