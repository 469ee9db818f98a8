#ifndef RBFWT_SERIES_HPP
#define RBFWT_SERIES_HPP

// Discrete Bessel transform: expansion of a radial function over the ball of
// radius R in the orthogonal family phi_j(r) = (lambda_j/2pi R)^nu r^{-nu}
// J_nu(lambda_j r/R), with lambda_j the positive zeros of J_nu, nu = n/2 - 1.
// Three coefficient routes: the orthogonality-derived normalization (round
// trips converge), the literal printed normalization (off by R^{2-3n/2} from
// the orthogonal one), and scattered-data least squares for several centers.

#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "kernels.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace rbfwt {

using point_t = std::vector<double>;

enum class series_mode { orthogonal, paper_faithful, least_squares };

struct BesselSeries {
    double n = 2.0;
    double R = 1.0;
    std::vector<point_t> centers;             // K expansion centers
    std::vector<double> zeros;                // first J positive zeros of J_nu
    double alpha0 = 0.0;
    std::vector<std::vector<double>> coeffs;  // K rows of J coefficients
    series_mode mode = series_mode::orthogonal;
};

// A radial function tabulated on increasing nonnegative radii.
struct RadialSamples {
    std::vector<double> radii;
    std::vector<double> values;
};

namespace detail {

inline void validate_series(const BesselSeries& s) {
    check_dimension(s.n);
    if (!(s.R > 0.0))
        throw domain_error("BesselSeries requires R > 0, got R = " + num_str(s.R));
    if (s.centers.empty())
        throw domain_error("BesselSeries requires at least one center");
    for (std::size_t j = 0; j < s.zeros.size(); ++j) {
        const double lo = j == 0 ? 0.0 : s.zeros[j - 1];
        if (!(s.zeros[j] > lo))
            throw domain_error("BesselSeries zeros must be positive and strictly increasing");
    }
    if (s.coeffs.size() != s.centers.size())
        throw domain_error("BesselSeries coefficient rows must match centers");
    for (const auto& row : s.coeffs)
        if (row.size() != s.zeros.size())
            throw domain_error("BesselSeries coefficient columns must match zeros");
    if (s.mode == series_mode::orthogonal &&
        (s.centers.size() != 1 || s.alpha0 != 0.0))
        throw domain_error("orthogonal-mode series has one center and alpha0 = 0");
}

template <class F>
double gauss_panel(const QuadratureRule& unit01, F&& f, double a, double b) {
    const double h = b - a;
    double total = 0.0;
    for (std::size_t i = 0; i < unit01.nodes.size(); ++i) {
        const double x = a + h * unit01.nodes[i];
        const double fx = f(x);
        if (!std::isfinite(fx))
            throw evaluation_error("integrand non-finite at x = " + num_str(x));
        total += h * unit01.weights[i] * fx;
    }
    return total;
}

// Integral over [0, b] of an integrand with r^{n-1}-type behavior at the
// origin and at most one oscillation per b/head_panels elsewhere. The panel
// touching 0 is refined geometrically so every Gauss panel sees an analytic
// piece; the leftover stub contributes O(stub^n) and is integrated too.
template <class F>
double integrate_radial(const QuadratureRule& unit01, F&& f, double b, int head_panels) {
    const double h = b / head_panels;
    double total = 0.0;
    double hi = h;
    for (int k = 0; k < 26; ++k) {
        const double lo = 0.5 * hi;
        total += gauss_panel(unit01, f, lo, hi);
        hi = lo;
    }
    total += gauss_panel(unit01, f, 0.0, hi);
    for (int p = 1; p < head_panels; ++p)
        total += gauss_panel(unit01, f, h * p, h * (p + 1));
    return total;
}

inline double distance(const point_t& a, const point_t& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

}  // namespace detail

// Expansion coefficients of a radial f over the ball of radius R. Orthogonal
// mode projects onto the phi_j under the weight r^{n-1} (alpha0 stays 0);
// the literal mode keeps the printed constant 2 (lambda_j/2pi)^{1-n/2} /
// (R^{n+1} J_{n/2}(lambda_j)^2) and sets alpha0 to the mean of f over the
// ball. Coefficient integrals for distinct j are independent; this routine
// is pure given f.
template <class F>
BesselSeries analyze(F&& f, double n, double R, int terms,
                     series_mode mode = series_mode::orthogonal) {
    detail::check_dimension(n);
    if (!(R > 0.0))
        throw domain_error("analyze requires R > 0, got R = " + detail::num_str(R));
    if (terms < 1)
        throw domain_error("analyze requires terms >= 1, got " + std::to_string(terms));
    if (mode == series_mode::least_squares)
        throw domain_error("analyze computes single-center expansions; use fit_multicenter");

    const double nu = 0.5 * n - 1.0;
    BesselSeries s;
    s.n = n;
    s.R = R;
    s.mode = mode;
    s.centers = {point_t{0.0}};
    s.zeros = jn_zeros(nu, terms);

    const QuadratureRule unit = make_gauss_legendre(24, 0.0, 1.0);
    if (mode == series_mode::paper_faithful) {
        const double mass = detail::integrate_radial(
            unit, [&](double r) { return std::pow(r, n - 1.0) * f(r); }, R, 4);
        s.alpha0 = mass * n / std::pow(R, n);
    }

    std::vector<double> row(static_cast<std::size_t>(terms));
    for (int j = 0; j < terms; ++j) {
        const double lam = s.zeros[static_cast<std::size_t>(j)];
        const int panels = std::max(4, static_cast<int>(std::ceil(lam / detail::pi)));
        const double integral = detail::integrate_radial(
            unit,
            [&](double r) {
                return std::pow(r, 0.5 * n) * f(r) *
                       bessel_eval(bessel_kind::J, nu, lam * r / R);
            },
            R, panels);
        const double jn1 = bessel_eval(bessel_kind::J, nu + 1.0, lam);
        double c;
        if (mode == series_mode::paper_faithful) {
            c = 2.0 / (std::pow(R, n + 1.0) * jn1 * jn1) *
                std::pow(lam / (2.0 * detail::pi), -nu) * integral;
        } else {
            const double pj = std::pow(lam / (2.0 * detail::pi * R), nu);
            c = 2.0 / (pj * R * R * jn1 * jn1) * integral;
        }
        row[static_cast<std::size_t>(j)] = c;
    }
    s.coeffs = {row};
    return s;
}

// alpha0 + sum_j coeffs[0][j] phi_j(r) for a single-center series; r is the
// distance from the expansion center.
inline double synthesize(const BesselSeries& s, double r) {
    detail::validate_series(s);
    if (s.centers.size() != 1)
        throw domain_error("radial synthesize requires a single-center series");
    if (r < 0.0)
        throw domain_error("synthesize requires r >= 0, got r = " + detail::num_str(r));
    double acc = s.alpha0;
    for (std::size_t j = 0; j < s.zeros.size(); ++j)
        acc += s.coeffs[0][j] *
               helmholtz_kernel(HelmholtzKernelSpec(s.n, s.zeros[j], s.R), r);
    return acc;
}

// alpha0 + sum_{jk} coeffs[k][j] phi_j(|x - x_k|) at a point.
inline double synthesize(const BesselSeries& s, const point_t& x) {
    detail::validate_series(s);
    double acc = s.alpha0;
    for (std::size_t k = 0; k < s.centers.size(); ++k) {
        if (x.size() != s.centers[k].size())
            throw domain_error("synthesize point dimension does not match center dimension");
        const double d = detail::distance(x, s.centers[k]);
        for (std::size_t j = 0; j < s.zeros.size(); ++j)
            acc += s.coeffs[k][j] *
                   helmholtz_kernel(HelmholtzKernelSpec(s.n, s.zeros[j], s.R), d);
    }
    return acc;
}

enum class error_norm { linf_interior, l2_weighted };

// Difference between synthesize and f on a 200-point radial grid:
// linf_interior is the max abs deviation on [0, 0.9R]; l2_weighted is the
// trapezoid value of (integral_0^R r^{n-1} (s - f)^2 dr)^{1/2}.
template <class F>
double reconstruction_error(const BesselSeries& s, F&& f, error_norm norm) {
    detail::validate_series(s);
    const int m = 200;
    if (norm == error_norm::linf_interior) {
        double worst = 0.0;
        for (int i = 0; i < m; ++i) {
            const double r = 0.9 * s.R * i / (m - 1);
            worst = std::max(worst, std::abs(synthesize(s, r) - f(r)));
        }
        return worst;
    }
    const double h = s.R / (m - 1);
    double acc = 0.0;
    for (int i = 0; i < m; ++i) {
        const double r = s.R * i / (m - 1);
        const double d = synthesize(s, r) - f(r);
        const double w = (i == 0 || i == m - 1) ? 0.5 : 1.0;
        acc += w * h * std::pow(r, s.n - 1.0) * d * d;
    }
    return std::sqrt(acc);
}

struct fit_multicenter_options {
    int samples = 0;  // 0 selects max(8 * unknowns, 256)
    unsigned seed = 12345u;
    double ridge_scale = 1e-10;
    double condition_limit = 1e12;
};

// Least-squares expansion coefficients (alpha0 and the K x J matrix) from f
// sampled on a deterministic scattered set inside the ball of radius R,
// with trace-scaled ridge regularization. Translated kernels at distinct
// centers are not mutually orthogonal, so no per-center projection exists.
template <class F>
BesselSeries fit_multicenter(F&& f, const std::vector<point_t>& centers, double n,
                             double R, int terms,
                             const fit_multicenter_options& opt = {}) {
    detail::check_dimension(n);
    if (!(R > 0.0))
        throw domain_error("fit_multicenter requires R > 0, got R = " + detail::num_str(R));
    if (terms < 1)
        throw domain_error("fit_multicenter requires terms >= 1, got " + std::to_string(terms));
    if (centers.empty())
        throw domain_error("fit_multicenter requires at least one center");
    const std::size_t dim = centers[0].size();
    if (dim == 0)
        throw domain_error("fit_multicenter centers must have at least one coordinate");
    for (const auto& c : centers)
        if (c.size() != dim)
            throw domain_error("fit_multicenter centers must share one dimension");

    const int K = static_cast<int>(centers.size());
    const int unknowns = K * terms + 1;
    const int samples =
        opt.samples > 0 ? opt.samples : std::max(8 * unknowns, 256);
    if (samples < K * terms)
        throw domain_error("fit_multicenter sample budget " + std::to_string(samples) +
                           " is below centers x terms = " + std::to_string(K * terms));

    const double nu = 0.5 * n - 1.0;
    const std::vector<double> zeros = jn_zeros(nu, terms);

    // Deterministic uniform samples in the ball: normal direction, radius
    // R u^{1/dim}.
    std::mt19937 rng(opt.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<point_t> pts(static_cast<std::size_t>(samples), point_t(dim));
    for (auto& p : pts) {
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (auto& c : p) {
                c = gauss(rng);
                norm2 += c * c;
            }
        } while (norm2 == 0.0);
        const double scale =
            R * std::pow(unif(rng), 1.0 / static_cast<double>(dim)) / std::sqrt(norm2);
        for (auto& c : p) c *= scale;
    }

    Eigen::MatrixXd A(samples, unknowns);
    Eigen::VectorXd y(samples);
    for (int i = 0; i < samples; ++i) {
        const point_t& x = pts[static_cast<std::size_t>(i)];
        A(i, 0) = 1.0;
        for (int k = 0; k < K; ++k) {
            const double d = detail::distance(x, centers[static_cast<std::size_t>(k)]);
            for (int j = 0; j < terms; ++j)
                A(i, 1 + k * terms + j) = helmholtz_kernel(
                    HelmholtzKernelSpec(n, zeros[static_cast<std::size_t>(j)], R), d);
        }
        y(i) = f(x);
        if (!std::isfinite(y(i)))
            throw evaluation_error("fit_multicenter target non-finite at a sample point");
    }

    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    const double cond = smin > 0.0 ? smax / smin
                                   : std::numeric_limits<double>::infinity();
    if (!(cond <= opt.condition_limit))
        throw solver_error("fit_multicenter design matrix is rank deficient", cond);

    const Eigen::MatrixXd ata = A.transpose() * A;
    const double ridge = opt.ridge_scale * ata.trace() / unknowns;
    Eigen::MatrixXd reg = ata;
    reg.diagonal().array() += ridge;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(reg);
    if (ldlt.info() != Eigen::Success)
        throw solver_error("fit_multicenter normal equations failed to factor", cond);
    const Eigen::VectorXd c = ldlt.solve(A.transpose() * y);

    BesselSeries s;
    s.n = n;
    s.R = R;
    s.mode = series_mode::least_squares;
    s.centers = centers;
    s.zeros = zeros;
    s.alpha0 = c(0);
    s.coeffs.assign(static_cast<std::size_t>(K),
                    std::vector<double>(static_cast<std::size_t>(terms)));
    for (int k = 0; k < K; ++k)
        for (int j = 0; j < terms; ++j)
            s.coeffs[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
                c(1 + k * terms + j);
    return s;
}

}  // namespace rbfwt

#endif  // RBFWT_SERIES_HPP
