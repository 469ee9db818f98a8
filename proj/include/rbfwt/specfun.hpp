#ifndef RBFWT_SPECFUN_HPP
#define RBFWT_SPECFUN_HPP

// Bessel family (J, Y, I, K) for real order, Hankel functions H1/H2, and
// positive zeros of J_nu. Evaluation is delegated to Boost.Math; this layer
// adds the domain contract shared by the rest of the library.

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "errors.hpp"

namespace rbfwt {

using complex_t = std::complex<double>;

enum class bessel_kind { J, Y, I, K };
enum class hankel_kind { H1, H2 };

// Valid order range; orders come from nu = n/2 - 1 with dimension n in [1, 122].
inline constexpr double order_min = -0.5;
inline constexpr double order_max = 60.0;

namespace detail {

inline void check_order(double nu) {
    if (!(nu >= order_min && nu <= order_max))
        throw domain_error("bessel order " + std::to_string(nu) +
                           " outside [" + std::to_string(order_min) + ", " +
                           std::to_string(order_max) + "]");
}

inline const char* kind_name(bessel_kind k) {
    switch (k) {
        case bessel_kind::J: return "J";
        case bessel_kind::Y: return "Y";
        case bessel_kind::I: return "I";
        default: return "K";
    }
}

} // namespace detail

// Gamma(x); used by the kernel small-argument limits.
inline double gamma_fn(double x) { return boost::math::tgamma(x); }

inline double bessel_eval(bessel_kind kind, double nu, double x) {
    detail::check_order(nu);
    if (!std::isfinite(x))
        throw domain_error("bessel argument not finite");
    const bool singular_kind = (kind == bessel_kind::Y || kind == bessel_kind::K);
    if (singular_kind && x <= 0.0)
        throw domain_error(std::string("bessel ") + detail::kind_name(kind) +
                           " requires x > 0, got " + std::to_string(x));
    if (!singular_kind && x < 0.0)
        throw domain_error(std::string("bessel ") + detail::kind_name(kind) +
                           " requires x >= 0, got " + std::to_string(x));
    if (!singular_kind && x == 0.0) {
        // Series limit: (x/2)^nu / Gamma(nu+1), identical for J and I.
        if (nu == 0.0) return 1.0;
        if (nu > 0.0) return 0.0;
        throw domain_error("bessel J/I of negative order diverges at x = 0");
    }
    try {
        switch (kind) {
            case bessel_kind::J: return boost::math::cyl_bessel_j(nu, x);
            case bessel_kind::Y: return boost::math::cyl_neumann(nu, x);
            case bessel_kind::I: return boost::math::cyl_bessel_i(nu, x);
            default:             return boost::math::cyl_bessel_k(nu, x);
        }
    } catch (const std::exception& e) {
        throw evaluation_error(std::string("bessel ") + detail::kind_name(kind) +
                               "(nu=" + std::to_string(nu) + ", x=" + std::to_string(x) +
                               ") failed: " + e.what());
    }
}

// H1 = J + iY, H2 = J - iY, composed exactly from bessel_eval so the
// definitional identities hold bit-for-bit.
inline complex_t hankel_eval(hankel_kind kind, double nu, double x) {
    if (!(x > 0.0))
        throw domain_error("hankel function requires x > 0, got " + std::to_string(x));
    const double j = bessel_eval(bessel_kind::J, nu, x);
    const double y = bessel_eval(bessel_kind::Y, nu, x);
    return kind == hankel_kind::H1 ? complex_t(j, y) : complex_t(j, -y);
}

// First `count` positive zeros of J_nu, ascending.
inline std::vector<double> jn_zeros(double nu, int count) {
    detail::check_order(nu);
    if (count < 1)
        throw domain_error("jn_zeros requires count >= 1");
    std::vector<double> zeros;
    zeros.reserve(static_cast<std::size_t>(count));
    try {
        for (int k = 1; k <= count; ++k)
            zeros.push_back(boost::math::cyl_bessel_j_zero(nu, k));
    } catch (const std::exception& e) {
        throw evaluation_error("jn_zeros(nu=" + std::to_string(nu) + ") failed: " + e.what());
    }
    return zeros;
}

} // namespace rbfwt

#endif
