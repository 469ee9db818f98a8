#ifndef RBFWT_KERNELS_HPP
#define RBFWT_KERNELS_HPP

// Kernel families: non-singular Helmholtz solutions, their Hankel-type dual
// wavelets, convection-diffusion kernels, time-space diffusion/wave kernels,
// and classic RBFs. All real-dimension aware (nu = n/2 - 1).

#include <cmath>
#include <vector>

#include "errors.hpp"
#include "specfun.hpp"

namespace rbfwt {

namespace detail {

inline constexpr double pi = 3.14159265358979323846;

inline void check_dimension(double n) {
    if (!(n >= 1.0))
        throw domain_error("dimension n must be >= 1, got " + num_str(n));
    check_order(0.5 * n - 1.0);
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Entire part of J_nu: f_nu(z) = sum_m (-1)^m (z^2/4)^m / (m! Gamma(nu+m+1)),
// so that J_nu(z) = (z/2)^nu f_nu(z). sign=+1 gives the I_nu analogue.
inline double bessel_entire_series(double nu, double z, double sign) {
    const double q = sign * z * z * 0.25;
    double term = 1.0 / gamma_fn(nu + 1.0);
    double sum = term;
    for (int m = 1; m <= 60; ++m) {
        term *= q / (m * (nu + m));
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Helmholtz non-singular kernels

struct HelmholtzKernelSpec {
    double n;       // real dimension >= 1
    double lambda;  // wavenumber >= 0; exactly 0 selects the constant kernel
    double R;       // optional scaling radius; 0 means unset (argument lambda*r)

    HelmholtzKernelSpec(double n_, double lambda_, double R_ = 0.0)
        : n(n_), lambda(lambda_), R(R_) {
        detail::check_dimension(n);
        if (!(lambda >= 0.0) || !std::isfinite(lambda))
            throw domain_error("lambda must be >= 0, got " + detail::num_str(lambda));
        if (R != 0.0 && !(R > 0.0))
            throw domain_error("R must be positive when set, got " + detail::num_str(R));
    }

    double nu() const { return 0.5 * n - 1.0; }
    double lambda_eff() const { return R > 0.0 ? lambda / R : lambda; }
};

namespace detail {

// The n >= 2 form (lambda/2pi r)^nu J_nu(lambda r), continuous through the
// removable r -> 0 singularity via (lambda^2/4pi)^nu f_nu(lambda r); n = 1 is
// the sine form. Continuous in lambda down to the lambda -> 0+ limit.
inline double helmholtz_radial(double n, double lam, double r) {
    if (n == 1.0)
        return lam == 0.0 ? 0.5 * r : std::sin(lam * r) / (2.0 * lam);
    const double nu = 0.5 * n - 1.0;
    if (lam == 0.0 && nu < 0.0)
        throw domain_error("helmholtz kernel with n < 2 diverges in the lambda -> 0 limit");
    const double z = lam * r;
    if (z < 0.5)
        return std::pow(lam * lam / (4.0 * pi), nu) * bessel_entire_series(nu, z, -1.0);
    return std::pow(lam / (2.0 * pi * r), nu) * bessel_eval(bessel_kind::J, nu, z);
}

} // namespace detail

inline double helmholtz_kernel(const HelmholtzKernelSpec& spec, double r) {
    if (!(r >= 0.0))
        throw domain_error("helmholtz_kernel requires r >= 0, got " + detail::num_str(r));
    if (spec.lambda == 0.0) return 1.0;  // constant solution branch
    return detail::helmholtz_radial(spec.n, spec.lambda_eff(), r);
}

// Dual wavelet g_n = (1/2pi)(-i lambda/2pi r)^nu K_nu(-i lambda r), computed
// through the Hankel rewrite K_nu(-ix) = (pi/2) i^{nu+1} H1_nu(x); the i^nu
// cancels the (-i)^nu of the prefactor, leaving
//   g_n = (i/4) (lambda/2pi r)^nu [J_nu + i Y_nu](lambda r)
// for every order (checked against the K_{1/2} closed form).
inline complex_t dual_kernel_g(const HelmholtzKernelSpec& spec, double r) {
    if (!(r > 0.0))
        throw domain_error("dual_kernel_g is singular at r = 0");
    if (!(spec.lambda > 0.0))
        throw domain_error("dual_kernel_g requires lambda > 0");
    if (spec.n < 2.0)
        throw domain_error("dual_kernel_g requires n >= 2");
    const double nu = spec.nu();
    const double lam = spec.lambda_eff();
    const double z = lam * r;
    const complex_t phase(0.0, 0.25);
    const double pref = std::pow(lam / (2.0 * detail::pi * r), nu);
    return phase * pref * complex_t(bessel_eval(bessel_kind::J, nu, z),
                                    bessel_eval(bessel_kind::Y, nu, z));
}

// The dual basis is the conjugate of g_n.
inline complex_t dual_basis(const HelmholtzKernelSpec& spec, double r) {
    return std::conj(dual_kernel_g(spec, r));
}

// ---------------------------------------------------------------------------
// Convection-diffusion kernels

struct ConvDiffSpec {
    double n;                // real dimension (Bessel order via nu = n/2 - 1)
    std::vector<double> v;   // velocity; its length is the point dimension
    double D;                // diffusivity > 0
    double k;                // reaction coefficient >= 0

    ConvDiffSpec(double n_, std::vector<double> v_, double D_, double k_)
        : n(n_), v(std::move(v_)), D(D_), k(k_) {
        detail::check_dimension(n);
        if (v.empty())
            throw domain_error("velocity vector must have at least one component");
        for (double c : v)
            if (!std::isfinite(c))
                throw domain_error("velocity component not finite");
        if (!(D > 0.0))
            throw domain_error("diffusivity D must be positive, got " + detail::num_str(D));
        if (!(k >= 0.0))
            throw domain_error("reaction coefficient k must be nonnegative, got " +
                               detail::num_str(k));
    }

    double speed() const { return std::sqrt(detail::dot(v, v)); }
    // mu = sqrt((|v|/2D)^2 + k/D), recomputed on every call (never stale)
    double mu() const {
        const double h = speed() / (2.0 * D);
        return std::sqrt(h * h + k / D);
    }
};

inline double convdiff_mu(const ConvDiffSpec& spec) { return spec.mu(); }

enum class convdiff_part { general, fundamental, dual };

namespace detail {

inline void check_point_pair(const ConvDiffSpec& s, const std::vector<double>& x,
                             const std::vector<double>& center) {
    if (x.size() != s.v.size() || center.size() != s.v.size())
        throw domain_error("point dimension does not match velocity dimension");
}

// radial factor (1/2pi)(mu/2pi r)^nu I_nu(mu r), total in r via the series
inline double convdiff_radial_general(double nu, double mu, double r) {
    const double z = mu * r;
    if (z < 0.5)
        return std::pow(mu * mu / (4.0 * pi), nu) * bessel_entire_series(nu, z, +1.0) /
               (2.0 * pi);
    return std::pow(mu / (2.0 * pi * r), nu) * bessel_eval(bessel_kind::I, nu, z) /
           (2.0 * pi);
}

inline double convdiff_radial_fundamental(double nu, double mu, double r) {
    return std::pow(mu / (2.0 * pi * r), nu) * bessel_eval(bessel_kind::K, nu, mu * r) /
           (2.0 * pi);
}

} // namespace detail

inline double convdiff_general(const ConvDiffSpec& spec, const std::vector<double>& x,
                               const std::vector<double>& center) {
    detail::check_point_pair(spec, x, center);
    std::vector<double> dx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) dx[i] = x[i] - center[i];
    const double r = std::sqrt(detail::dot(dx, dx));
    const double expo = std::exp(-detail::dot(spec.v, dx) / (2.0 * spec.D));
    return expo * detail::convdiff_radial_general(spec.n * 0.5 - 1.0, spec.mu(), r);
}

inline double convdiff_fundamental(const ConvDiffSpec& spec, const std::vector<double>& x,
                                   const std::vector<double>& center) {
    detail::check_point_pair(spec, x, center);
    std::vector<double> dx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) dx[i] = x[i] - center[i];
    const double r = std::sqrt(detail::dot(dx, dx));
    if (!(r > 0.0))
        throw domain_error("fundamental convection-diffusion kernel is singular at the center");
    const double expo = std::exp(-detail::dot(spec.v, dx) / (2.0 * spec.D));
    return expo * detail::convdiff_radial_fundamental(spec.n * 0.5 - 1.0, spec.mu(), r);
}

// dual combination N_nu = I_nu + i K_nu (same prefactor on both parts)
inline complex_t convdiff_kernel(const ConvDiffSpec& spec, const std::vector<double>& x,
                                 const std::vector<double>& center, convdiff_part which) {
    switch (which) {
        case convdiff_part::general:
            return complex_t(convdiff_general(spec, x, center), 0.0);
        case convdiff_part::fundamental:
            return complex_t(convdiff_fundamental(spec, x, center), 0.0);
        default:
            return complex_t(convdiff_general(spec, x, center),
                             convdiff_fundamental(spec, x, center));
    }
}

// ---------------------------------------------------------------------------
// Time-space kernels

struct TimeSpaceDiffusionSpec {
    double n;
    double lambda;  // > 0 per the time-space construction
    double a;       // diffusion coefficient > 0

    TimeSpaceDiffusionSpec(double n_, double lambda_, double a_)
        : n(n_), lambda(lambda_), a(a_) {
        detail::check_dimension(n);
        if (!(lambda > 0.0))
            throw domain_error("time-space lambda must be positive");
        if (!(a > 0.0))
            throw domain_error("diffusion coefficient a must be positive");
    }
};

struct TimeSpaceWaveSpec {
    double n;
    double lambda;  // > 0
    double c;       // wave speed > 0
    double alpha;   // initial-displacement weight
    double beta;    // initial-velocity weight

    TimeSpaceWaveSpec(double n_, double lambda_, double c_, double alpha_, double beta_)
        : n(n_), lambda(lambda_), c(c_), alpha(alpha_), beta(beta_) {
        detail::check_dimension(n);
        if (!(lambda > 0.0))
            throw domain_error("time-space lambda must be positive");
        if (!(c > 0.0))
            throw domain_error("wave speed c must be positive");
        if (!std::isfinite(alpha) || !std::isfinite(beta))
            throw domain_error("wave weights must be finite");
    }
};

inline double timespace_diffusion_kernel(const TimeSpaceDiffusionSpec& spec, double r,
                                         double dt) {
    if (!(r >= 0.0))
        throw domain_error("timespace_diffusion_kernel requires r >= 0");
    if (dt < 0.0) return 0.0;  // H(dt), with H(0) = 1
    const double decay = std::exp(-spec.a * spec.a * spec.lambda * spec.lambda * dt);
    return decay * helmholtz_kernel(HelmholtzKernelSpec(spec.n, spec.lambda), r);
}

// Causality support uses the c-scaled argument H(c lambda dt - r) in every
// dimension; the temporal factor is alpha cos(c lambda dt) + beta sin(...)/(c lambda).
inline double timespace_wave_kernel(const TimeSpaceWaveSpec& spec, double r, double dt) {
    if (!(r >= 0.0))
        throw domain_error("timespace_wave_kernel requires r >= 0");
    if (dt < 0.0) return 0.0;
    const double clam = spec.c * spec.lambda;
    if (clam * dt - r < 0.0) return 0.0;
    const double temporal =
        spec.alpha * std::cos(clam * dt) + spec.beta / clam * std::sin(clam * dt);
    return temporal * helmholtz_kernel(HelmholtzKernelSpec(spec.n, spec.lambda), r);
}

// ---------------------------------------------------------------------------
// Classic RBFs

enum class classic_rbf_kind { MQ, Gaussian, PreWaveletTPS };

struct ClassicRbfSpec {
    classic_rbf_kind kind;
    double c;  // scale (shape) parameter > 0

    ClassicRbfSpec(classic_rbf_kind kind_, double c_) : kind(kind_), c(c_) {
        if (!(c > 0.0))
            throw domain_error("classic RBF scale c must be positive, got " +
                               detail::num_str(c));
    }
};

inline double classic_rbf(const ClassicRbfSpec& spec, double r) {
    if (!(r >= 0.0))
        throw domain_error("classic_rbf requires r >= 0, got " + detail::num_str(r));
    const double c2 = spec.c * spec.c;
    switch (spec.kind) {
        case classic_rbf_kind::MQ:
            return std::sqrt(r * r + c2);
        case classic_rbf_kind::Gaussian:
            return std::exp(-r * r / c2);
        default: {
            // (r^2+c^2) ln sqrt(r^2+c^2); continuous at r = 0 since c > 0
            const double q = r * r + c2;
            return 0.5 * q * std::log(q);
        }
    }
}

} // namespace rbfwt

#endif
