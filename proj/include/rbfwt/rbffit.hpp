#ifndef RBFWT_RBFFIT_HPP
#define RBFWT_RBFFIT_HPP

// Scattered-data fitting with classic RBFs (multi-scale expansion plus an
// optional linear polynomial block), convergence studies over center counts,
// and parameter recognition for the convection-diffusion kernel family.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "kernels.hpp"
#include "series.hpp"

namespace rbfwt {

// Sample points with one value per point.
struct ScatteredSamples {
    std::vector<point_t> points;
    std::vector<double> values;
};

// Multi-scale RBF expansion: value(x) = poly(x) + sum_j sum_k
// coeffs[j*K + k] * rbf(scales[j], |x - centers[k]|), poly the linear
// polynomial alpha_0 + sum_l alpha_l x_l when poly_coeffs is nonempty.
struct FitResult {
    std::vector<ClassicRbfSpec> scales;
    std::vector<point_t> centers;
    std::vector<double> coeffs;       // scale-major, length scales * centers
    std::vector<double> poly_coeffs;  // empty, or 1 + dim entries
    double residual_norm = 0.0;       // l2 over the fitted samples
    double condition_estimate = 1.0;
};

struct ConvergenceRow {
    int N = 0;
    double linf_error = 0.0;
    double condition_estimate = 0.0;
    bool solved = false;
    std::string message;  // failure reason when !solved
};

// Convection-diffusion parameter recognition result. The kernel depends on
// (D, v, k) only through the drift v/(2D) and mu, so individual parameters
// are not identifiable; mu is the recognized quantity.
struct RidgeletFit {
    std::vector<double> weights;
    double D = 1.0;
    std::vector<double> v;
    double k = 0.0;
    double loss = 0.0;  // sum of squared residuals
    bool converged = true;
    std::vector<double> loss_history;  // loss after each accepted iteration
};

namespace detail {

inline void check_samples(const ScatteredSamples& samples, std::size_t dim) {
    if (samples.points.empty())
        throw domain_error("fit requires at least one sample");
    if (samples.points.size() != samples.values.size())
        throw domain_error("sample points/values length mismatch");
    for (const point_t& p : samples.points)
        if (p.size() != dim)
            throw domain_error("sample point dimension mismatch");
    for (double v : samples.values)
        if (!std::isfinite(v)) throw domain_error("sample value not finite");
}

// Condition estimate and solve in one place so ill-conditioning is always
// reported, never silently returned. Square systems use partial-pivot LU,
// rectangular ones ridge-regularized normal equations (weight 1e-12 scaled
// by the Gram trace).
inline Eigen::VectorXd solve_reported(const Eigen::MatrixXd& A,
                                      const Eigen::VectorXd& b,
                                      double& condition_out) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    condition_out = smin > 0.0 ? smax / smin
                               : std::numeric_limits<double>::infinity();
    if (!(condition_out < 1e15))
        throw solver_error("fit system is numerically singular (condition " +
                               num_str(condition_out) + ")",
                           condition_out);
    Eigen::VectorXd x;
    if (A.rows() == A.cols()) {
        x = Eigen::PartialPivLU<Eigen::MatrixXd>(A).solve(b);
    } else {
        Eigen::MatrixXd gram = A.transpose() * A;
        const double ridge = 1e-12 * gram.trace() / gram.rows();
        gram.diagonal().array() += ridge;
        x = Eigen::LDLT<Eigen::MatrixXd>(gram).solve(A.transpose() * b);
    }
    if (!x.allFinite())
        throw solver_error("fit solve produced non-finite coefficients",
                           condition_out);
    return x;
}

}  // namespace detail

// Least-squares / interpolatory fit of the multi-scale expansion. Square
// systems interpolate; rectangular ones minimize the l2 residual.
inline FitResult fit(const std::vector<ClassicRbfSpec>& scales,
                     const std::vector<point_t>& centers,
                     const ScatteredSamples& samples, bool with_poly) {
    if (scales.empty()) throw domain_error("fit requires at least one scale");
    if (centers.empty()) throw domain_error("fit requires at least one center");
    const std::size_t dim = centers.front().size();
    if (dim == 0) throw domain_error("centers must have dimension >= 1");
    for (const point_t& c : centers)
        if (c.size() != dim) throw domain_error("center dimension mismatch");
    detail::check_samples(samples, dim);

    const std::size_t K = centers.size();
    const std::size_t J = scales.size();
    const std::size_t poly = with_poly ? 1 + dim : 0;
    const std::size_t unknowns = poly + J * K;
    const std::size_t rows = samples.points.size();
    if (rows < unknowns)
        throw domain_error("fit needs at least " + std::to_string(unknowns) +
                           " samples for " + std::to_string(unknowns) +
                           " unknowns, got " + std::to_string(rows));

    Eigen::MatrixXd A(rows, unknowns);
    Eigen::VectorXd b(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        const point_t& p = samples.points[i];
        std::size_t col = 0;
        if (with_poly) {
            A(i, col++) = 1.0;
            for (std::size_t l = 0; l < dim; ++l) A(i, col++) = p[l];
        }
        for (std::size_t j = 0; j < J; ++j)
            for (std::size_t k = 0; k < K; ++k)
                A(i, col++) = classic_rbf(scales[j], detail::distance(p, centers[k]));
        b(i) = samples.values[i];
    }

    FitResult result;
    result.scales = scales;
    result.centers = centers;
    const Eigen::VectorXd x = detail::solve_reported(A, b, result.condition_estimate);
    if (with_poly) {
        result.poly_coeffs.assign(x.data(), x.data() + poly);
    }
    result.coeffs.assign(x.data() + poly, x.data() + unknowns);
    result.residual_norm = (A * x - b).norm();
    return result;
}

inline double evaluate_fit(const FitResult& fit, const point_t& x) {
    const std::size_t dim = fit.centers.front().size();
    if (x.size() != dim)
        throw domain_error("evaluation point dimension mismatch");
    double value = 0.0;
    if (!fit.poly_coeffs.empty()) {
        value += fit.poly_coeffs[0];
        for (std::size_t l = 0; l < dim; ++l)
            value += fit.poly_coeffs[1 + l] * x[l];
    }
    const std::size_t K = fit.centers.size();
    for (std::size_t j = 0; j < fit.scales.size(); ++j)
        for (std::size_t k = 0; k < K; ++k)
            value += fit.coeffs[j * K + k] *
                     classic_rbf(fit.scales[j], detail::distance(x, fit.centers[k]));
    return value;
}

// Interpolation error versus center count: uniform centers on [lo, hi],
// square fit, Linf measured on a 10x denser uniform grid. Solver failures
// land in the row and the study continues.
template <class F>
std::vector<ConvergenceRow> convergence_study(F&& target, classic_rbf_kind kind,
                                              const std::function<double(int)>& scale_rule,
                                              const std::vector<int>& n_list,
                                              double lo, double hi) {
    if (!(lo < hi)) throw domain_error("convergence_study requires lo < hi");
    if (n_list.empty()) throw domain_error("convergence_study requires center counts");
    int prev = 0;
    for (int n : n_list) {
        if (n < 2 || n <= prev)
            throw domain_error("center counts must be increasing and >= 2");
        prev = n;
    }

    std::vector<ConvergenceRow> table;
    table.reserve(n_list.size());
    for (int n : n_list) {
        ConvergenceRow row;
        row.N = n;
        std::vector<point_t> centers(n);
        ScatteredSamples samples;
        for (int i = 0; i < n; ++i) {
            const double t = lo + (hi - lo) * i / (n - 1);
            centers[i] = {t};
            samples.points.push_back({t});
            samples.values.push_back(target(t));
        }
        try {
            const std::vector<ClassicRbfSpec> scales = {
                ClassicRbfSpec(kind, scale_rule(n))};
            const FitResult f = fit(scales, centers, samples, false);
            row.condition_estimate = f.condition_estimate;
            const int dense = 10 * n;
            double worst = 0.0;
            for (int i = 0; i <= dense; ++i) {
                const double t = lo + (hi - lo) * i / dense;
                worst = std::max(worst, std::abs(evaluate_fit(f, {t}) - target(t)));
            }
            row.linf_error = worst;
            row.solved = true;
        } catch (const error& e) {
            row.solved = false;
            row.message = e.what();
            row.linf_error = std::numeric_limits<double>::quiet_NaN();
        }
        table.push_back(row);
    }
    return table;
}

namespace detail {

inline Eigen::VectorXd ridgelet_weights(const ConvDiffSpec& spec,
                                        const std::vector<point_t>& centers,
                                        const ScatteredSamples& samples,
                                        double& condition_out) {
    const std::size_t rows = samples.points.size();
    const std::size_t K = centers.size();
    Eigen::MatrixXd G(rows, K);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < K; ++k)
            G(i, k) = convdiff_general(spec, samples.points[i], centers[k]);
    Eigen::VectorXd b(rows);
    for (std::size_t i = 0; i < rows; ++i) b(i) = samples.values[i];
    // SVD least squares: the smooth kernel makes the columns near-collinear,
    // which squared normal equations cannot afford
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        G, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    condition_out = smin > 0.0 ? smax / smin
                               : std::numeric_limits<double>::infinity();
    if (!(condition_out < 1e15))
        throw solver_error("ridgelet system is numerically singular (condition " +
                               num_str(condition_out) + ")",
                           condition_out);
    const Eigen::VectorXd x = svd.solve(b);
    if (!x.allFinite())
        throw solver_error("ridgelet solve produced non-finite weights",
                           condition_out);
    return x;
}

inline double ridgelet_loss(const ConvDiffSpec& spec,
                            const std::vector<point_t>& centers,
                            const ScatteredSamples& samples,
                            const Eigen::VectorXd& w) {
    double acc = 0.0;
    for (std::size_t i = 0; i < samples.points.size(); ++i) {
        double fitted = 0.0;
        for (std::size_t k = 0; k < centers.size(); ++k)
            fitted += w(k) * convdiff_general(spec, samples.points[i], centers[k]);
        const double r = fitted - samples.values[i];
        acc += r * r;
    }
    return acc;
}

// (D, v..., k) stacked into one parameter vector with the ConvDiffSpec
// invariants projected back after every step.
inline ConvDiffSpec ridgelet_spec(double n, const Eigen::VectorXd& theta) {
    const std::size_t vdim = theta.size() - 2;
    std::vector<double> v(vdim);
    for (std::size_t i = 0; i < vdim; ++i) v[i] = theta(1 + i);
    return ConvDiffSpec(n, v, std::max(theta(0), 1e-8),
                        std::max(theta(theta.size() - 1), 0.0));
}

}  // namespace detail

// Linear weight recovery for a fixed convection-diffusion kernel, or, with
// fit_params, alternating weight solves and Gauss-Newton steps on (D, v, k)
// with forward-difference Jacobians. Only drift and mu are identifiable;
// the tiny Gauss-Newton ridge keeps the redundant direction harmless.
inline RidgeletFit ridgelet_fit(const ScatteredSamples& samples,
                                const std::vector<point_t>& centers,
                                const ConvDiffSpec& init, bool fit_params) {
    if (centers.empty()) throw domain_error("ridgelet_fit requires centers");
    const std::size_t dim = init.v.size();
    for (const point_t& c : centers)
        if (c.size() != dim)
            throw domain_error("center dimension does not match velocity dimension");
    detail::check_samples(samples, dim);
    if (samples.points.size() < centers.size())
        throw domain_error("ridgelet_fit needs at least as many samples as centers");

    RidgeletFit out;
    out.D = init.D;
    out.v = init.v;
    out.k = init.k;

    double cond = 1.0;
    Eigen::VectorXd theta(dim + 2);
    theta(0) = init.D;
    for (std::size_t i = 0; i < dim; ++i) theta(1 + i) = init.v[i];
    theta(dim + 1) = init.k;

    ConvDiffSpec spec = detail::ridgelet_spec(init.n, theta);
    Eigen::VectorXd w = detail::ridgelet_weights(spec, centers, samples, cond);
    double loss = detail::ridgelet_loss(spec, centers, samples, w);
    out.loss_history.push_back(loss);

    if (fit_params && loss > 0.0) {
        out.converged = false;
        const std::size_t rows = samples.points.size();
        const auto residual_at = [&](const ConvDiffSpec& s, const Eigen::VectorXd& sw) {
            Eigen::VectorXd r(rows);
            for (std::size_t i = 0; i < rows; ++i) {
                double fitted = 0.0;
                for (std::size_t k = 0; k < centers.size(); ++k)
                    fitted += sw(k) * convdiff_general(s, samples.points[i], centers[k]);
                r(i) = fitted - samples.values[i];
            }
            return r;
        };
        for (int iter = 0; iter < 100 && !out.converged; ++iter) {
            // forward-difference Jacobian of the reduced residual: weights
            // re-solved at every perturbed parameter point, otherwise the
            // weight/scale coupling makes alternation zigzag in place
            Eigen::VectorXd step;
            try {
                const Eigen::VectorXd r = residual_at(spec, w);
                Eigen::MatrixXd jac(rows, theta.size());
                for (Eigen::Index j = 0; j < theta.size(); ++j) {
                    const double h = 1e-6 * std::max(std::abs(theta(j)), 1.0);
                    Eigen::VectorXd tp = theta;
                    tp(j) += h;
                    const ConvDiffSpec ps = detail::ridgelet_spec(init.n, tp);
                    double pcond = 1.0;
                    const Eigen::VectorXd pw =
                        detail::ridgelet_weights(ps, centers, samples, pcond);
                    jac.col(j) = (residual_at(ps, pw) - r) / h;
                }
                Eigen::MatrixXd normal = jac.transpose() * jac;
                normal.diagonal().array() +=
                    1e-12 * normal.trace() / normal.rows() + 1e-300;
                step = Eigen::LDLT<Eigen::MatrixXd>(normal).solve(-jac.transpose() * r);
            } catch (const error&) {
                break;  // Jacobian unavailable at this point: keep best-so-far
            }

            // halve until the re-solved loss improves
            bool accepted = false;
            for (int half = 0; half < 20 && !accepted; ++half) {
                Eigen::VectorXd trial = theta + step;
                trial(0) = std::max(trial(0), 1e-8);                // D floor
                trial(trial.size() - 1) = std::max(trial(trial.size() - 1), 0.0);
                const ConvDiffSpec ts = detail::ridgelet_spec(init.n, trial);
                double tcond = 1.0;
                try {
                    const Eigen::VectorXd tw =
                        detail::ridgelet_weights(ts, centers, samples, tcond);
                    const double tloss = detail::ridgelet_loss(ts, centers, samples, tw);
                    if (std::isfinite(tloss) && tloss <= loss) {
                        const double rel = (loss - tloss) / std::max(loss, 1e-300);
                        theta = trial;
                        spec = ts;
                        w = tw;
                        cond = tcond;
                        loss = tloss;
                        out.loss_history.push_back(loss);
                        accepted = true;
                        if (rel < 1e-10) out.converged = true;
                    }
                } catch (const error&) {
                    // singular or overflowing trial: fail the step and halve
                }
                step *= 0.5;
            }
            // no improving step even at 2^-20 scale: numerical minimum
            if (!accepted) out.converged = true;
        }
    }

    out.weights.assign(w.data(), w.data() + w.size());
    out.D = std::max(theta(0), 1e-8);
    out.v.assign(theta.data() + 1, theta.data() + 1 + dim);
    out.k = std::max(theta(dim + 1), 0.0);
    out.loss = loss;
    return out;
}

inline double ridgelet_mu(const RidgeletFit& fit, double n) {
    return ConvDiffSpec(n, fit.v, fit.D, fit.k).mu();
}

}  // namespace rbfwt

#endif  // RBFWT_RBFFIT_HPP
