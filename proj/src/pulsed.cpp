#include "omherald/pulsed.hpp"

#include <cmath>
#include <stdexcept>

#include "omherald/gaussian.hpp"

namespace omh::pulsed {

using std::complex;
using cplx = complex<double>;

double squeeze_rate(const params::DimensionlessParams& p) {
    params::validate(p);
    return p.g * p.g / (4.0 * p.kappa);
}

double squeeze_parameter(double G, double tau) {
    const double x = G * tau;
    if (x < 0.0) throw std::invalid_argument("squeeze_parameter: negative pulse area");
    if (x > 20.0) {
        // acosh(e^x) = x + log(1 + sqrt(1 - e^{-2x})), stable for large x
        return x + std::log1p(std::sqrt(1.0 - std::exp(-2.0 * x)));
    }
    return std::acosh(std::exp(x));
}

Matrix4d lossless_map(double r) {
    const double mu = std::cosh(r);
    const double nu = std::sinh(r);
    // b_out = mu b_in - nu a_in^dag, a_out = -mu a_in + i nu b_in^dag;
    // on quadratures (q, p, X, Y):
    Matrix4d s;
    s << mu, 0.0, 0.0, -nu,
         0.0, mu, -nu, 0.0,
         0.0, nu, -mu, 0.0,
         nu, 0.0, 0.0, -mu;
    return s;
}

Matrix4d lossless_output_cm(double r, double n0) {
    const Matrix4d s = lossless_map(r);
    const Eigen::Vector4d diag(n0 + 0.5, n0 + 0.5, 0.5, 0.5);
    return s * diag.asDiagonal() * s.transpose();
}

BogoliubovEnvelopes bogoliubov_envelopes(double G, double Gamma, double tau) {
    if (!(G > Gamma)) {
        throw std::invalid_argument("bogoliubov_envelopes: requires G > Gamma");
    }
    if (tau <= 0.0) throw std::invalid_argument("bogoliubov_envelopes: tau must be > 0");
    BogoliubovEnvelopes e;
    const double ein = 2.0 * (G - Gamma);
    const double eout = 2.0 * (G + Gamma);
    e.c_in = std::sqrt(ein / -std::expm1(-ein * tau));
    e.c_out = std::sqrt(eout / std::expm1(eout * tau));
    e.rho_c = Gamma == 0.0 ? e.c_in * e.c_out * tau
                           : e.c_in * e.c_out * std::expm1(2.0 * Gamma * tau) / (2.0 * Gamma);
    return e;
}

namespace {

// Right null vector (smallest singular direction) of a wide complex matrix.
Eigen::VectorXcd null_vector(const Eigen::MatrixXcd& a) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    return svd.matrixV().col(a.cols() - 1);
}

}  // namespace

BogoliubovMap bogoliubov_map(double G, double Gamma, double tau) {
    const BogoliubovEnvelopes env = bogoliubov_envelopes(G, Gamma, tau);
    const double big_e = std::exp(2.0 * G * tau);
    const cplx i(0.0, 1.0);

    BogoliubovMap m;
    m.x = Matrix4cd::Zero();
    m.y = Matrix4cd::Zero();

    // Row 1: optical output packet (exact).
    const double x11 = -env.c_out * big_e / env.c_in;
    m.x(0, 0) = x11;
    m.y(0, 1) = i * env.c_out * (big_e - 1.0) / std::sqrt(2.0 * G);
    m.y(0, 2) = -i * std::sqrt(Gamma / G) * (env.c_out * big_e / env.c_in - env.rho_c);
    m.y(0, 3) = i * std::sqrt((Gamma / G) * (1.0 - env.rho_c * env.rho_c));

    // Row 2: mechanical mode (exact).
    const double x22 = std::exp((G - Gamma) * tau);
    m.x(1, 1) = x22;
    m.x(1, 2) = -std::sqrt(2.0 * Gamma) * x22 / env.c_in;
    m.y(1, 0) = -i * std::sqrt(2.0 * G) * x22 / env.c_in;

    // Rows 3 and 4 are free up to the Bogoliubov constraints
    //   X X^dag - Y Y^dag = I  and  X Y^T = (X Y^T)^T;
    // each new row must be "orthogonal" to the previous ones in the
    // indefinite metric, which is a linear null-space problem.
    {
        Eigen::MatrixXcd a(2, 3);
        a << std::conj(m.x(1, 1)), std::conj(m.x(1, 2)), -std::conj(m.y(1, 0)),
             m.y(0, 1), m.y(0, 2), -m.x(0, 0);
        Eigen::VectorXcd v = null_vector(a);
        const double nrm = std::norm(v(0)) + std::norm(v(1)) - std::norm(v(2));
        if (nrm <= 0.0) {
            throw std::runtime_error("bogoliubov_map: row 3 has non-positive norm");
        }
        v /= std::sqrt(nrm);
        v /= v(1) / std::abs(v(1));  // make the diagonal coefficient real > 0
        m.x(2, 1) = v(0);
        m.x(2, 2) = v(1);
        m.y(2, 0) = v(2);
    }
    {
        Eigen::MatrixXcd a(3, 4);
        a << std::conj(m.x(1, 1)), std::conj(m.x(1, 2)), cplx(0.0), -std::conj(m.y(1, 0)),
             std::conj(m.x(2, 1)), std::conj(m.x(2, 2)), cplx(0.0), -std::conj(m.y(2, 0)),
             m.y(0, 1), m.y(0, 2), m.y(0, 3), -m.x(0, 0);
        Eigen::VectorXcd v = null_vector(a);
        const double nrm = std::norm(v(0)) + std::norm(v(1)) + std::norm(v(2)) - std::norm(v(3));
        if (nrm <= 0.0) {
            throw std::runtime_error("bogoliubov_map: row 4 has non-positive norm");
        }
        v /= std::sqrt(nrm);
        v /= v(2) / std::abs(v(2));
        m.x(3, 1) = v(0);
        m.x(3, 2) = v(1);
        m.x(3, 3) = v(2);
        m.y(3, 0) = v(3);
    }

    // Convert the annihilation-operator map to quadratures, mechanical pair
    // first: u = (q, p, X, Y, X1, Y1, X2, Y2).
    Eigen::Matrix<cplx, 8, 8> sk = Eigen::Matrix<cplx, 8, 8>::Zero();
    sk.topLeftCorner<4, 4>() = m.x;
    sk.topRightCorner<4, 4>() = m.y;
    sk.bottomLeftCorner<4, 4>() = m.y.conjugate();
    sk.bottomRightCorner<4, 4>() = m.x.conjugate();

    Eigen::Matrix<cplx, 8, 8> t = Eigen::Matrix<cplx, 8, 8>::Zero();
    const int pair_mode[4] = {1, 0, 2, 3};  // mech pair first, then optical, baths
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int pair = 0; pair < 4; ++pair) {
        const int mode = pair_mode[pair];
        t(2 * pair, mode) = inv_sqrt2;
        t(2 * pair, 4 + mode) = inv_sqrt2;
        t(2 * pair + 1, mode) = cplx(0.0, -inv_sqrt2);
        t(2 * pair + 1, 4 + mode) = cplx(0.0, inv_sqrt2);
    }
    Eigen::Matrix<cplx, 8, 8> sq = t * sk * t.adjoint();
    if (sq.imag().cwiseAbs().maxCoeff() > 1e-9) {
        throw std::runtime_error("bogoliubov_map: quadrature map not real");
    }
    m.s = sq.real();
    return m;
}

Matrix4d thermal_output_cm(const params::DimensionlessParams& p, double tau) {
    params::validate(p);
    const double grate = squeeze_rate(p);
    const BogoliubovMap m = bogoliubov_map(grate, p.gamma, tau);
    Eigen::Matrix<double, 8, 1> diag;
    diag << p.n0 + 0.5, p.n0 + 0.5, 0.5, 0.5,
            p.nbar + 0.5, p.nbar + 0.5, p.nbar + 0.5, p.nbar + 0.5;
    const Eigen::Matrix<double, 8, 8> out = m.s * diag.asDiagonal() * m.s.transpose();
    return out.topLeftCorner<4, 4>();
}

}  // namespace omh::pulsed
