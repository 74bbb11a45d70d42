#include "omherald/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "omherald/numerics.hpp"

namespace omh::gaussian {

MatrixXd symplectic_form(int n_modes) {
    MatrixXd om = MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int i = 0; i < n_modes; ++i) {
        om(2 * i, 2 * i + 1) = 1.0;
        om(2 * i + 1, 2 * i) = -1.0;
    }
    return om;
}

double wigner_gaussian(const MatrixXd& sigma, const Eigen::VectorXd& point) {
    const auto n = sigma.rows();
    if (point.size() != n) throw std::invalid_argument("wigner_gaussian: dimension mismatch");
    Eigen::LLT<MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("wigner_gaussian: covariance not positive definite");
    }
    const double quad = point.dot(llt.solve(point));
    const double sqrt_det = MatrixXd(llt.matrixL()).diagonal().prod();
    return std::exp(-0.5 * quad) /
           (std::pow(2.0 * std::numbers::pi, n / 2.0) * sqrt_det);
}

double log_negativity(const Matrix4d& sigma) {
    const Matrix2d a = sigma.topLeftCorner<2, 2>();
    const Matrix2d b = sigma.bottomRightCorner<2, 2>();
    const Matrix2d c = sigma.topRightCorner<2, 2>();
    const double det_a = a.determinant();
    const double det_b = b.determinant();
    const double det_c = c.determinant();
    const double det_s = sigma.determinant();
    // Partial transposition flips the sign of det C.
    const double delta = det_a + det_b - 2.0 * det_c;
    double disc = delta * delta - 4.0 * det_s;
    if (disc < 0.0) {
        if (disc < -1e-10 * std::max(1.0, delta * delta)) {
            throw std::invalid_argument("log_negativity: invalid covariance matrix");
        }
        disc = 0.0;  // round-off at a degenerate symplectic spectrum
    }
    const double nu_sq = 0.5 * (delta - std::sqrt(disc));
    if (nu_sq <= 0.0) throw std::invalid_argument("log_negativity: non-physical covariance");
    const double nu = std::sqrt(nu_sq);
    return std::max(0.0, -std::log2(2.0 * nu));
}

double symplectic_residual(const MatrixXd& s) {
    const int n_modes = static_cast<int>(s.rows()) / 2;
    const MatrixXd om = symplectic_form(n_modes);
    return (s * om * s.transpose() - om).cwiseAbs().maxCoeff();
}

double physicality_margin(const Matrix4d& sigma) {
    Eigen::Matrix4cd m = sigma.cast<std::complex<double>>();
    m += std::complex<double>(0.0, 0.5) * symplectic_form(2).cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Matrix4d solve_lyapunov(const Matrix4d& k, const Matrix4d& d) {
    // Vectorize K sigma + sigma K^T = -D as (I (x) K + K (x) I) vec = -vec(D).
    Eigen::Matrix<double, 16, 16> lhs = Eigen::Matrix<double, 16, 16>::Zero();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            for (int l = 0; l < 4; ++l) {
                // column-major vec: entry (l, i) sits at i*4 + l
                lhs(i * 4 + l, i * 4 + j) += k(l, j);      // K sigma
                lhs(i * 4 + l, j * 4 + l) += k(i, j);      // sigma K^T
            }
        }
    }
    Eigen::Matrix<double, 16, 1> rhs;
    for (int i = 0; i < 4; ++i)
        for (int l = 0; l < 4; ++l) rhs(i * 4 + l) = -d(l, i);
    Eigen::Matrix<double, 16, 1> vec = lhs.fullPivLu().solve(rhs);
    Matrix4d sigma;
    for (int i = 0; i < 4; ++i)
        for (int l = 0; l < 4; ++l) sigma(l, i) = vec(i * 4 + l);
    // symmetrize away round-off
    return 0.5 * (sigma + sigma.transpose());
}

ConditionalWigner condition_on_click(const Matrix4d& sigma, const params::DetectorModel& det) {
    params::validate(det);
    const Matrix4d s_inv = numerics::inverse_guarded(sigma, "condition_on_click: sigma");
    const Matrix2d s_m = s_inv.topLeftCorner<2, 2>();
    const Matrix2d s_c = s_inv.topRightCorner<2, 2>();
    const Matrix2d s_o = s_inv.bottomRightCorner<2, 2>();

    ConditionalWigner w;
    // Mechanical marginal: Schur complement of the precision matrix.
    w.sigma_prime = numerics::inverse_guarded(
        Matrix2d(s_m - s_c * numerics::inverse_guarded(s_o, "condition_on_click: s_o") *
                           s_c.transpose()),
        "condition_on_click: sigma_prime");

    // No-click branch: the detector loss channel shifts the optical
    // precision by 2 eta / (2 - eta).
    const double delta_eta = det.eta / (2.0 - det.eta);
    const Matrix2d a = s_o + 2.0 * delta_eta * Matrix2d::Identity();
    w.sigma_dprime = numerics::inverse_guarded(
        Matrix2d(s_m - s_c * numerics::inverse_guarded(a, "condition_on_click: a") *
                           s_c.transpose()),
        "condition_on_click: sigma_dprime");

    // kappa_eta uses the optical precision conditioned on the mechanics.
    const Matrix2d opt_cond = s_o - s_c.transpose() *
                                  numerics::inverse_guarded(s_m, "condition_on_click: s_m") * s_c;
    const double det_ratio =
        opt_cond.determinant() /
        (opt_cond + 2.0 * delta_eta * Matrix2d::Identity()).determinant();
    if (det_ratio < 0.0) {
        throw std::invalid_argument("condition_on_click: negative determinant ratio");
    }
    const double kappa_eta = std::sqrt(det_ratio);
    w.coeff = 2.0 * (1.0 - det.dark) * kappa_eta / (2.0 - det.eta);
    w.p_click = 1.0 - w.coeff;
    return w;
}

double conditional_wigner_value(const ConditionalWigner& w, double x, double p) {
    Eigen::Vector2d z(x, p);
    const double w1 = wigner_gaussian(w.sigma_prime, z);
    const double w2 = wigner_gaussian(w.sigma_dprime, z);
    return (w1 - w.coeff * w2) / w.p_click;
}

}  // namespace omh::gaussian
