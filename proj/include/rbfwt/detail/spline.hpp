#ifndef RBFWT_DETAIL_SPLINE_HPP
#define RBFWT_DETAIL_SPLINE_HPP

// Not-a-knot cubic spline on a strictly increasing grid. Evaluation outside
// the grid returns 0; the inverse transforms extend sampled spectra by zero.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "../errors.hpp"

namespace rbfwt::detail {

class CubicSpline {
  public:
    CubicSpline(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n < 4)
            throw domain_error("cubic spline requires at least 4 points");
        if (y_.size() != n)
            throw domain_error("cubic spline needs matching abscissae and values");
        for (std::size_t i = 1; i < n; ++i)
            if (!(x_[i] > x_[i - 1]))
                throw domain_error("cubic spline abscissae must be strictly increasing");

        // Second-derivative moments: interior continuity rows plus
        // not-a-knot rows (third derivative continuous at x_1, x_{n-2}).
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                  static_cast<Eigen::Index>(n));
        Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = x_[i] - x_[i - 1];
            const double h1 = x_[i + 1] - x_[i];
            A(i, i - 1) = h0 / 6.0;
            A(i, i) = (h0 + h1) / 3.0;
            A(i, i + 1) = h1 / 6.0;
            b(i) = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
        }
        {
            const double h0 = x_[1] - x_[0];
            const double h1 = x_[2] - x_[1];
            A(0, 0) = h1;
            A(0, 1) = -(h0 + h1);
            A(0, 2) = h0;
        }
        {
            const double h0 = x_[n - 2] - x_[n - 3];
            const double h1 = x_[n - 1] - x_[n - 2];
            A(n - 1, n - 3) = h1;
            A(n - 1, n - 2) = -(h0 + h1);
            A(n - 1, n - 1) = h0;
        }
        const Eigen::VectorXd m = A.partialPivLu().solve(b);
        m_.assign(m.data(), m.data() + n);
    }

    double operator()(double t) const {
        if (t < x_.front() || t > x_.back())
            return 0.0;
        const auto it = std::upper_bound(x_.begin(), x_.end(), t);
        std::size_t i = static_cast<std::size_t>(it - x_.begin());
        i = i == 0 ? 0 : i - 1;
        if (i + 1 >= x_.size()) i = x_.size() - 2;
        const double h = x_[i + 1] - x_[i];
        const double a = x_[i + 1] - t;
        const double c = t - x_[i];
        return m_[i] * a * a * a / (6.0 * h) + m_[i + 1] * c * c * c / (6.0 * h) +
               (y_[i] - m_[i] * h * h / 6.0) * a / h +
               (y_[i + 1] - m_[i + 1] * h * h / 6.0) * c / h;
    }

    double front() const { return x_.front(); }
    double back() const { return x_.back(); }
    const std::vector<double>& knots() const { return x_; }

  private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> m_;  // second derivatives at the knots
};

class ComplexSpline {
  public:
    ComplexSpline(const std::vector<double>& x,
                  const std::vector<std::complex<double>>& y)
        : re_(x, real_part(y)), im_(x, imag_part(y)) {}

    std::complex<double> operator()(double t) const {
        return {re_(t), im_(t)};
    }

    const std::vector<double>& knots() const { return re_.knots(); }

  private:
    static std::vector<double> real_part(const std::vector<std::complex<double>>& y) {
        std::vector<double> v(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) v[i] = y[i].real();
        return v;
    }
    static std::vector<double> imag_part(const std::vector<std::complex<double>>& y) {
        std::vector<double> v(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) v[i] = y[i].imag();
        return v;
    }

    CubicSpline re_;
    CubicSpline im_;
};

}  // namespace rbfwt::detail

#endif  // RBFWT_DETAIL_SPLINE_HPP
