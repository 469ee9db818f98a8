#include <catch2/catch_amalgamated.hpp>
#include <rbfwt/specfun.hpp>

#include <cmath>
#include <complex>
#include <vector>

using namespace rbfwt;
using Catch::Approx;

namespace {

constexpr double pi = 3.14159265358979323846;

// Closed-form half-integer Bessel functions, used as independent oracles.
double j_half(double x)  { return std::sqrt(2.0 / (pi * x)) * std::sin(x); }
double y_half(double x)  { return -std::sqrt(2.0 / (pi * x)) * std::cos(x); }
double k_half(double x)  { return std::sqrt(pi / (2.0 * x)) * std::exp(-x); }
double i_half(double x)  { return std::sqrt(2.0 / (pi * x)) * std::sinh(x); }

// J_{nu-1} with the integer reflection J_{-1} = -J_1 so the recurrence tests
// can cover nu = 0 without leaving the library's order range.
double j_prev(double nu, double x) {
    if (nu - 1.0 >= order_min) return bessel_eval(bessel_kind::J, nu - 1.0, x);
    return -bessel_eval(bessel_kind::J, -(nu - 1.0), x);
}
double y_prev(double nu, double x) {
    if (nu - 1.0 >= order_min) return bessel_eval(bessel_kind::Y, nu - 1.0, x);
    return -bessel_eval(bessel_kind::Y, -(nu - 1.0), x);
}

// Sign-change bracketing + bisection: an oracle for zeros that shares no
// machinery with the library's zero finder.
std::vector<double> bisection_zeros(double nu, int count) {
    std::vector<double> out;
    double x = std::max(0.05, nu);  // first zero of J_nu exceeds nu
    double fx = bessel_eval(bessel_kind::J, nu, x);
    const double step = pi / 16.0;
    while (static_cast<int>(out.size()) < count) {
        double y = x + step;
        double fy = bessel_eval(bessel_kind::J, nu, y);
        if (fx == 0.0) {
            out.push_back(x);
            fx = fy;
            x = y;
            continue;
        }
        if ((fx < 0.0) != (fy < 0.0)) {
            double a = x, b = y;
            for (int it = 0; it < 200 && (b - a) > 1e-15 * b; ++it) {
                double m = 0.5 * (a + b);
                double fm = bessel_eval(bessel_kind::J, nu, m);
                if ((fm < 0.0) == (fx < 0.0)) a = m; else b = m;
            }
            out.push_back(0.5 * (a + b));
            fx = fy;
        } else {
            fx = fy;
        }
        x = y;
    }
    return out;
}

// Small-argument series for K_0 at complex argument; oracle for the
// K_nu(-ix) = (i pi/2) H1_nu(x) rewrite used by the dual kernels.
std::complex<double> k0_series(std::complex<double> z) {
    const double euler_gamma = 0.57721566490153286;
    const std::complex<double> q = z * z * 0.25;
    std::complex<double> term = 1.0, i0 = 1.0, s = 0.0;
    double hm = 0.0;
    for (int m = 1; m <= 48; ++m) {
        term *= q / static_cast<double>(m * m);
        hm += 1.0 / m;
        i0 += term;
        s += term * hm;
    }
    return -(std::log(z * 0.5) + euler_gamma) * i0 + s;
}

} // namespace

TEST_CASE("bessel_eval pinned values") {
    CHECK(bessel_eval(bessel_kind::J, 0.0, 0.0) == 1.0);
    CHECK(bessel_eval(bessel_kind::I, 0.0, 0.0) == 1.0);
    CHECK(bessel_eval(bessel_kind::J, 2.0, 0.0) == 0.0);
    CHECK(bessel_eval(bessel_kind::J, 0.5, pi / 2)
          == Approx(2.0 / pi).epsilon(1e-12));
    CHECK(bessel_eval(bessel_kind::K, 0.5, 1.0)
          == Approx(std::sqrt(pi / 2.0) * std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("half-integer closed forms on [0.1, 20]") {
    for (int i = 0; i < 200; ++i) {
        const double x = 0.1 + (20.0 - 0.1) * i / 199.0;
        CHECK(bessel_eval(bessel_kind::J, 0.5, x) == Approx(j_half(x)).epsilon(1e-12).margin(1e-300));
        CHECK(bessel_eval(bessel_kind::K, 0.5, x) == Approx(k_half(x)).epsilon(1e-12).margin(1e-300));
        CHECK(bessel_eval(bessel_kind::Y, 0.5, x) == Approx(y_half(x)).epsilon(1e-12).margin(1e-300));
        CHECK(bessel_eval(bessel_kind::I, 0.5, x) == Approx(i_half(x)).epsilon(1e-12).margin(1e-300));
    }
}

TEST_CASE("three-term recurrences") {
    const double xs[] = {0.5, 1.0, 2.0, 5.0, 10.0};
    const double nus[] = {0.0, 0.5, 1.0, 2.5};
    for (double nu : nus) {
        for (double x : xs) {
            {
                const double lhs = j_prev(nu, x) + bessel_eval(bessel_kind::J, nu + 1.0, x);
                const double rhs = (2.0 * nu / x) * bessel_eval(bessel_kind::J, nu, x);
                const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
                CHECK(std::abs(lhs - rhs) / scale < 1e-10);
            }
            {
                const double lhs = y_prev(nu, x) + bessel_eval(bessel_kind::Y, nu + 1.0, x);
                const double rhs = (2.0 * nu / x) * bessel_eval(bessel_kind::Y, nu, x);
                const double scale = std::max({std::abs(lhs), std::abs(rhs),
                                               std::abs(bessel_eval(bessel_kind::Y, nu, x)), 1e-30});
                CHECK(std::abs(lhs - rhs) / scale < 1e-10);
            }
            if (nu >= 1.0) {
                // I_{nu-1} - I_{nu+1} = (2 nu / x) I_nu
                const double lhs = bessel_eval(bessel_kind::I, nu - 1.0, x)
                                 - bessel_eval(bessel_kind::I, nu + 1.0, x);
                const double rhs = (2.0 * nu / x) * bessel_eval(bessel_kind::I, nu, x);
                CHECK(std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-30) < 1e-10);
                // K_{nu+1} - K_{nu-1} = (2 nu / x) K_nu
                const double lhsk = bessel_eval(bessel_kind::K, nu + 1.0, x)
                                  - bessel_eval(bessel_kind::K, nu - 1.0, x);
                const double rhsk = (2.0 * nu / x) * bessel_eval(bessel_kind::K, nu, x);
                CHECK(std::abs(lhsk - rhsk) / std::max(std::abs(rhsk), 1e-30) < 1e-10);
            }
        }
    }
}

TEST_CASE("wronskian J Y' - J' Y = 2/(pi x)") {
    const double xs[] = {0.5, 1.0, 2.0, 5.0, 10.0};
    const double nus[] = {0.0, 0.5, 1.0, 2.5};
    for (double nu : nus) {
        for (double x : xs) {
            const double j  = bessel_eval(bessel_kind::J, nu, x);
            const double y  = bessel_eval(bessel_kind::Y, nu, x);
            const double jp = 0.5 * (j_prev(nu, x) - bessel_eval(bessel_kind::J, nu + 1.0, x));
            const double yp = 0.5 * (y_prev(nu, x) - bessel_eval(bessel_kind::Y, nu + 1.0, x));
            const double w = j * yp - jp * y;
            CHECK(w == Approx(2.0 / (pi * x)).epsilon(1e-9));
        }
    }
}

TEST_CASE("hankel functions") {
    const complex_t h1 = hankel_eval(hankel_kind::H1, 0.0, 1.0);
    CHECK(h1.real() == bessel_eval(bessel_kind::J, 0.0, 1.0));
    CHECK(h1.imag() == bessel_eval(bessel_kind::Y, 0.0, 1.0));

    const complex_t a = hankel_eval(hankel_kind::H1, 0.0, 2.5);
    const complex_t b = hankel_eval(hankel_kind::H2, 0.0, 2.5);
    CHECK(b == std::conj(a));

    // K_nu(-ix) = (i pi/2) H1_nu(x) on the needed ray, checked against a
    // series evaluation of K_0 at complex argument.
    const complex_t lhs = hankel_eval(hankel_kind::H1, 0.0, 1.0);
    const complex_t rhs = 2.0 / (complex_t(0.0, 1.0) * pi) * k0_series(complex_t(0.0, -1.0));
    CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("jn_zeros values and properties") {
    const auto z0 = jn_zeros(0.0, 3);
    CHECK(z0[0] == Approx(2.404825557695773).epsilon(1e-12));
    CHECK(z0[1] == Approx(5.520078110286311).epsilon(1e-12));
    CHECK(z0[2] == Approx(8.653727912911013).epsilon(1e-12));

    const auto zh = jn_zeros(0.5, 4);
    for (int k = 0; k < 4; ++k)
        CHECK(zh[k] == Approx((k + 1) * pi).epsilon(1e-12));

    CHECK(jn_zeros(1.0, 1)[0] > jn_zeros(0.0, 1)[0]);

    for (double nu : {0.0, 0.5, 1.0}) {
        const auto z = jn_zeros(nu, 20);
        for (int k = 0; k < 20; ++k) {
            CHECK(std::abs(bessel_eval(bessel_kind::J, nu, z[k])) < 1e-12);
            if (k > 0) CHECK(z[k] > z[k - 1]);
        }
        // independent bisection oracle
        const auto zb = bisection_zeros(nu, 20);
        for (int k = 0; k < 20; ++k)
            CHECK(z[k] == Approx(zb[k]).epsilon(1e-10));
        // interlacing with J_{nu+1}
        const auto znext = jn_zeros(nu + 1.0, 20);
        for (int k = 0; k < 19; ++k) {
            CHECK(z[k] < znext[k]);
            CHECK(znext[k] < z[k + 1]);
        }
    }
}

TEST_CASE("specfun domain errors") {
    CHECK_THROWS_AS(bessel_eval(bessel_kind::Y, 0.0, 0.0), domain_error);
    CHECK_THROWS_AS(bessel_eval(bessel_kind::K, 1.0, -1.0), domain_error);
    CHECK_THROWS_AS(bessel_eval(bessel_kind::J, 61.0, 1.0), domain_error);
    CHECK_THROWS_AS(bessel_eval(bessel_kind::J, -0.75, 1.0), domain_error);
    CHECK_THROWS_AS(bessel_eval(bessel_kind::J, 0.0, -0.5), domain_error);
    CHECK_THROWS_AS(bessel_eval(bessel_kind::J, -0.5, 0.0), domain_error);
    CHECK_THROWS_AS(jn_zeros(0.0, 0), domain_error);
    CHECK_THROWS_AS(hankel_eval(hankel_kind::H1, 0.0, 0.0), domain_error);
}
