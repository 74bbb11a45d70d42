#pragma once

// Small shared numerical helpers: guarded closed-form inverses, adaptive
// Gauss-Kronrod quadrature, and matrix-exponential integral primitives.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>

#include "omherald/errors.hpp"

namespace omh::numerics {

// Closed-form inverse with a cheap condition guard. Eigen already uses
// cofactor formulas for fixed sizes up to 4; we add the guard so callers
// get a diagnostic instead of garbage when a Schur complement degenerates.
template <typename Mat>
Mat inverse_guarded(const Mat& a, const char* label, double cond_limit = 1e12) {
    Mat inv = a.inverse();
    double cond = a.template lpNorm<Eigen::Infinity>() * inv.template lpNorm<Eigen::Infinity>();
    if (!std::isfinite(cond) || cond > cond_limit) {
        throw SingularMatrixError(std::string(label) +
                                  ": matrix inverse condition estimate " +
                                  std::to_string(cond) + " exceeds limit");
    }
    return inv;
}

// Gauss-Kronrod 15(7) node pairs on [-1, 1].
inline constexpr double kGk15Nodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0, 0.207784955007898, 0.405845151377397,
    0.586087235467691, 0.741531185599394, 0.864864423359769,
    0.949107912342759, 0.991455371120813};
inline constexpr double kGk15Weights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
inline constexpr double kGauss7Weights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    long evaluations = 0;
};

namespace detail {

inline void gk15_panel(const std::function<double(double)>& f, double a, double b,
                       double& integral, double& error, long& evals) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    double k = 0.0, g = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double fx = f(c + h * kGk15Nodes[i]);
        k += kGk15Weights[i] * fx;
        if (i % 2 == 1) g += kGauss7Weights[i / 2] * fx;
    }
    evals += 15;
    integral = h * k;
    // |K15 - G7| is a conservative panel error estimate; the adaptive driver
    // splits panels until it drops below the local budget.
    error = std::abs(h * (k - g));
}

inline void gk15_recurse(const std::function<double(double)>& f, double a, double b,
                         double tol, int depth, QuadResult& out) {
    double integral = 0.0, error = 0.0;
    gk15_panel(f, a, b, integral, error, out.evaluations);
    if (error <= tol || depth >= 48 || b - a < 1e-14 * (1.0 + std::abs(a))) {
        out.value += integral;
        out.error += error;
        return;
    }
    const double mid = 0.5 * (a + b);
    gk15_recurse(f, a, mid, 0.5 * tol, depth + 1, out);
    gk15_recurse(f, mid, b, 0.5 * tol, depth + 1, out);
}

}  // namespace detail

// Adaptive Gauss-Kronrod 15(7) on [a, b] with absolute tolerance.
// max_panel_width caps the initial subdivision so oscillatory integrands
// are sampled densely enough before the error estimate is trusted.
inline QuadResult gk15_adaptive(const std::function<double(double)>& f, double a, double b,
                                double abs_tol,
                                double max_panel_width = std::numeric_limits<double>::infinity()) {
    QuadResult out;
    if (!(b > a)) return out;
    int panels = 1;
    if (std::isfinite(max_panel_width) && max_panel_width > 0.0) {
        panels = std::max(1, static_cast<int>(std::ceil((b - a) / max_panel_width)));
    }
    const double w = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
        detail::gk15_recurse(f, a + i * w, a + (i + 1) * w, abs_tol / panels, 0, out);
    }
    return out;
}

// integral_0^tau exp(M s) ds via the augmented-exponential identity
// exp([[M, I], [0, 0]] tau) = [[exp(M tau), integral], [0, I]].
inline Eigen::MatrixXcd integral_exp(const Eigen::MatrixXcd& m, double tau) {
    const auto n = m.rows();
    Eigen::MatrixXcd aug = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    aug.topLeftCorner(n, n) = m;
    aug.topRightCorner(n, n) = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd e = (aug * tau).exp();
    return e.topRightCorner(n, n);
}

// T(p, q; A) = integral_0^tau ds' integral_0^{s'} ds e^{p s} e^{A(s'-s)} e^{q s'}.
// Equals the top-right block of integral_0^tau exp(L s) ds with
// L = [[A + qI, I], [0, (p+q) I]], so one more augmentation level makes it a
// single matrix exponential. Used for the ordered double filter integrals of
// the continuous protocol.
inline Eigen::MatrixXcd double_integral_exp(std::complex<double> p, std::complex<double> q,
                                            const Eigen::MatrixXcd& a, double tau) {
    const auto n = a.rows();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    l.topLeftCorner(n, n) = a + q * id;
    l.topRightCorner(n, n) = id;
    l.bottomRightCorner(n, n) = (p + q) * id;
    return integral_exp(l, tau).topRightCorner(n, n);
}

// Infinite-horizon variants, valid when the exponents decay.
inline Eigen::MatrixXcd integral_exp_inf(const Eigen::MatrixXcd& m) {
    return -inverse_guarded(Eigen::MatrixXcd(m), "integral_exp_inf");
}

inline Eigen::MatrixXcd double_integral_exp_inf(std::complex<double> p, std::complex<double> q,
                                                const Eigen::MatrixXcd& a) {
    const auto n = a.rows();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd aq = a + q * id;
    return inverse_guarded(Eigen::MatrixXcd(aq), "double_integral_exp_inf") / (p + q);
}

}  // namespace omh::numerics
