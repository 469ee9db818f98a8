#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "rbfwt/series.hpp"

using namespace rbfwt;
using Catch::Approx;

namespace {

constexpr double pi = 3.14159265358979323846;

// Composite Gauss-Legendre independent of the library's graded rule.
template <class F>
double composite(F&& f, double a, double b, int panels, int nodes) {
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + (b - a) * p / panels;
        const double hi = a + (b - a) * (p + 1) / panels;
        total += integrate(make_gauss_legendre(nodes, lo, hi), f);
    }
    return total;
}

double classical_coeff(double lam) {  // f = 1 - r^2, n = 2, R = 1
    return 8.0 / (lam * lam * lam * bessel_eval(bessel_kind::J, 1.0, lam));
}

}  // namespace

TEST_CASE("scaled Bessel family is orthogonal under weight z") {
    for (double nu : {0.0, 0.5, 1.0}) {
        const auto lam = jn_zeros(nu, 10);
        for (int i = 0; i < 10; ++i) {
            for (int j = 0; j < i; ++j) {
                const double cross = composite(
                    [&](double z) {
                        return z * bessel_eval(bessel_kind::J, nu, lam[i] * z) *
                               bessel_eval(bessel_kind::J, nu, lam[j] * z);
                    },
                    0.0, 1.0, 24, 32);
                CHECK(std::abs(cross) < 1e-10);
            }
            const double diag = composite(
                [&](double z) {
                    const double v = bessel_eval(bessel_kind::J, nu, lam[i] * z);
                    return z * v * v;
                },
                0.0, 1.0, 24, 32);
            const double jn1 = bessel_eval(bessel_kind::J, nu + 1.0, lam[i]);
            CHECK(diag == Approx(0.5 * jn1 * jn1).epsilon(1e-10));
        }
    }
}

TEST_CASE("literal mode alpha0 is the mean over the ball") {
    for (double n : {2.0, 2.5, 3.0}) {
        const auto s = analyze([](double) { return 5.0; }, n, 2.0, 3,
                               series_mode::paper_faithful);
        CHECK(s.alpha0 == Approx(5.0).epsilon(1e-11));
    }
}

TEST_CASE("a basis function analyzes to a unit coefficient") {
    {
        const auto zeros = jn_zeros(0.0, 5);
        const HelmholtzKernelSpec b1(2.0, zeros[0], 1.0);
        const auto s = analyze([&](double r) { return helmholtz_kernel(b1, r); },
                               2.0, 1.0, 5);
        CHECK(s.coeffs[0][0] == Approx(1.0).epsilon(1e-10));
        for (int j = 1; j < 5; ++j) CHECK(std::abs(s.coeffs[0][j]) < 1e-10);
        CHECK(s.alpha0 == 0.0);
    }
    {
        const auto zeros = jn_zeros(0.5, 4);
        const HelmholtzKernelSpec b2(3.0, zeros[1], 2.0);
        const auto s = analyze([&](double r) { return helmholtz_kernel(b2, r); },
                               3.0, 2.0, 4);
        CHECK(s.coeffs[0][1] == Approx(1.0).epsilon(1e-9));
        for (int j : {0, 2, 3}) CHECK(std::abs(s.coeffs[0][j]) < 1e-9);
    }
}

TEST_CASE("coefficients of 1 - r^2 match the classical closed form") {
    const auto s = analyze([](double r) { return 1.0 - r * r; }, 2.0, 1.0, 10);
    for (int j = 0; j < 10; ++j) {
        const double lam = s.zeros[j];
        CHECK(s.coeffs[0][j] == Approx(classical_coeff(lam)).epsilon(1e-9));

        // independent oracle: plain dense quadrature of the projection
        const double integral = composite(
            [&](double r) {
                return r * (1.0 - r * r) * bessel_eval(bessel_kind::J, 0.0, lam * r);
            },
            0.0, 1.0, 16, 128);
        const double jn1 = bessel_eval(bessel_kind::J, 1.0, lam);
        CHECK(s.coeffs[0][j] == Approx(2.0 * integral / (jn1 * jn1)).epsilon(1e-9));
    }

    // smooth input: coefficient magnitudes decay
    for (int j = 1; j < 10; ++j)
        CHECK(std::abs(s.coeffs[0][j]) < std::abs(s.coeffs[0][j - 1]));
}

TEST_CASE("literal mode differs from orthogonal mode by R^{2-3n/2}") {
    const auto f = [](double r) { return std::exp(-r * r); };
    for (double R : {1.0, 2.0}) {
        const auto orth = analyze(f, 2.0, R, 4, series_mode::orthogonal);
        const auto lit = analyze(f, 2.0, R, 4, series_mode::paper_faithful);
        const double ratio = std::pow(R, 2.0 - 3.0);  // n = 2
        for (int j = 0; j < 4; ++j)
            CHECK(lit.coeffs[0][j] == Approx(ratio * orth.coeffs[0][j]).epsilon(1e-12));
    }
}

TEST_CASE("single-term round trip and constant synthesis") {
    const auto zeros = jn_zeros(0.0, 3);
    const auto s = analyze(
        [&](double r) { return bessel_eval(bessel_kind::J, 0.0, zeros[0] * r); },
        2.0, 1.0, 3);
    CHECK(synthesize(s, 0.3)
          == Approx(bessel_eval(bessel_kind::J, 0.0, zeros[0] * 0.3)).epsilon(1e-10));

    BesselSeries flat;
    flat.n = 2.0;
    flat.R = 1.0;
    flat.centers = {point_t{0.0}};
    flat.zeros = zeros;
    flat.alpha0 = 2.0;
    flat.coeffs = {{0.0, 0.0, 0.0}};
    flat.mode = series_mode::paper_faithful;
    for (double r : {0.0, 0.4, 0.97}) CHECK(synthesize(flat, r) == 2.0);
    CHECK(synthesize(flat, point_t{0.7}) == 2.0);
}

TEST_CASE("truncated synthesis of 1 - r^2 matches the classical partial sum") {
    const auto f = [](double r) { return 1.0 - r * r; };
    const auto s = analyze(f, 2.0, 1.0, 50);

    double direct = 0.0;
    for (int j = 0; j < 50; ++j)
        direct += classical_coeff(s.zeros[j]) *
                  bessel_eval(bessel_kind::J, 0.0, s.zeros[j] * 0.5);
    const double value = synthesize(s, 0.5);
    CHECK(value == Approx(direct).epsilon(1e-9));
    CHECK(std::abs(value - 0.75) < 1e-3);
}

TEST_CASE("reconstruction error: norms, tail bound, monotonicity") {
    const auto f = [](double r) { return 1.0 - r * r; };
    const auto zeros = jn_zeros(0.0, 1);
    const auto basis = analyze(
        [&](double r) { return bessel_eval(bessel_kind::J, 0.0, zeros[0] * r); },
        2.0, 1.0, 1);
    CHECK(reconstruction_error(basis,
                               [&](double r) {
                                   return bessel_eval(bessel_kind::J, 0.0, zeros[0] * r);
                               },
                               error_norm::linf_interior) < 1e-10);

    const auto s50 = analyze(f, 2.0, 1.0, 50);
    const auto s10 = analyze(f, 2.0, 1.0, 10);
    CHECK(reconstruction_error(s50, f, error_norm::linf_interior) < 1e-3);
    CHECK(reconstruction_error(s50, f, error_norm::linf_interior)
          < reconstruction_error(s10, f, error_norm::linf_interior));

    double prev = -1.0;
    for (int terms : {5, 10, 20, 50}) {
        const auto s = analyze(f, 2.0, 1.0, terms);
        const double err = reconstruction_error(s, f, error_norm::l2_weighted);
        if (prev >= 0.0) CHECK(err <= prev);
        prev = err;
    }
}

TEST_CASE("truncated synthesis never exceeds the weighted norm of f") {
    const auto f = [](double r) { return 1.0 - r * r; };
    const auto s = analyze(f, 2.0, 1.0, 50);
    const auto wnorm = [&](auto&& g) {
        return std::sqrt(composite([&](double r) { return r * g(r) * g(r); },
                                   0.0, 1.0, 128, 16));
    };
    const double nf = wnorm(f);
    const double ns = wnorm([&](double r) { return synthesize(s, r); });
    CHECK(ns <= nf + 1e-8);
}

TEST_CASE("multicenter least squares recovers a known expansion") {
    BesselSeries ref;
    ref.n = 2.0;
    ref.R = 1.0;
    ref.centers = {point_t{0.3, 0.0}, point_t{-0.2, 0.1}};
    ref.zeros = jn_zeros(0.0, 3);
    ref.alpha0 = 0.7;
    ref.coeffs = {{0.8, -0.3, 0.1}, {0.5, 0.2, -0.4}};
    ref.mode = series_mode::least_squares;

    const auto fitted = fit_multicenter(
        [&](const point_t& x) { return synthesize(ref, x); }, ref.centers, 2.0,
        1.0, 3);
    CHECK(fitted.alpha0 == Approx(ref.alpha0).margin(1e-6));
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 3; ++j)
            CHECK(fitted.coeffs[k][j] == Approx(ref.coeffs[k][j]).margin(1e-6));
}

TEST_CASE("single-center least squares agrees with the projection") {
    const auto zeros = jn_zeros(0.0, 4);
    const auto radial = [&](double r) {
        return 2.0 * bessel_eval(bessel_kind::J, 0.0, zeros[0] * r) -
               0.5 * bessel_eval(bessel_kind::J, 0.0, zeros[2] * r);
    };
    const auto proj = analyze(radial, 2.0, 1.0, 4);
    const auto fitted = fit_multicenter(
        [&](const point_t& x) {
            return radial(std::sqrt(x[0] * x[0] + x[1] * x[1]));
        },
        {point_t{0.0, 0.0}}, 2.0, 1.0, 4);
    CHECK(std::abs(fitted.alpha0) < 1e-6);
    for (int j = 0; j < 4; ++j)
        CHECK(fitted.coeffs[0][j] == Approx(proj.coeffs[0][j]).margin(1e-6));
}

TEST_CASE("least squares of the zero function is identically zero") {
    const auto s = fit_multicenter([](const point_t&) { return 0.0; },
                                   {point_t{0.0, 0.0}, point_t{0.4, 0.4}}, 2.0,
                                   1.0, 3);
    CHECK(std::abs(s.alpha0) < 1e-12);
    for (const auto& row : s.coeffs)
        for (double c : row) CHECK(std::abs(c) < 1e-12);
}

TEST_CASE("series domain errors") {
    const auto f = [](double r) { return 1.0 - r; };
    CHECK_THROWS_AS(analyze(f, 2.0, 1.0, 0), domain_error);
    CHECK_THROWS_AS(analyze(f, 2.0, -1.0, 3), domain_error);
    CHECK_THROWS_AS(analyze(f, 0.5, 1.0, 3), domain_error);
    CHECK_THROWS_AS(analyze(f, 2.0, 1.0, 3, series_mode::least_squares),
                    domain_error);

    const auto s = analyze(f, 2.0, 1.0, 3);
    CHECK_THROWS_AS(synthesize(s, -0.1), domain_error);
    CHECK_THROWS_AS(synthesize(s, point_t{0.1, 0.2}), domain_error);

    BesselSeries bad = s;
    bad.coeffs[0].pop_back();
    CHECK_THROWS_AS(synthesize(bad, 0.5), domain_error);
    BesselSeries unsorted = s;
    std::swap(unsorted.zeros[0], unsorted.zeros[1]);
    CHECK_THROWS_AS(synthesize(unsorted, 0.5), domain_error);

    const auto zero2 = [](const point_t&) { return 0.0; };
    fit_multicenter_options tight;
    tight.samples = 5;  // below 2 centers x 3 terms
    CHECK_THROWS_AS(fit_multicenter(zero2, {point_t{0.0, 0.0}, point_t{0.4, 0.4}},
                                    2.0, 1.0, 3, tight),
                    domain_error);

    try {
        fit_multicenter(zero2, {point_t{0.2, 0.2}, point_t{0.2, 0.2}}, 2.0, 1.0, 3);
        FAIL("duplicate centers must be rejected as rank deficient");
    } catch (const solver_error& e) {
        CHECK(e.condition_estimate > 1e12);
    }
}
