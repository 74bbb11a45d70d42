#include "omherald/steady.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "omherald/errors.hpp"
#include "omherald/gaussian.hpp"
#include "omherald/numerics.hpp"

namespace omh::steady {

using cplx = std::complex<double>;
using Eigen::Matrix2cd;
using Eigen::Matrix2d;
using Eigen::Matrix4cd;
using Eigen::MatrixXcd;

Matrix4d drift_matrix(const params::DimensionlessParams& p) {
    Matrix4d k;
    k << 0.0, 1.0, 0.0, 0.0,
         -1.0, -p.gamma, p.g, 0.0,
         0.0, 0.0, -p.kappa, p.delta,
         p.g, 0.0, -p.delta, -p.kappa;
    return k;
}

Matrix4d diffusion_matrix(const params::DimensionlessParams& p) {
    Matrix4d d = Matrix4d::Zero();
    d(1, 1) = (2.0 * p.nbar + 1.0) * p.gamma;
    d(2, 2) = p.kappa;
    d(3, 3) = p.kappa;
    return d;
}

StabilityReport stability(const Matrix4d& k) {
    StabilityReport r;
    r.margin = k.eigenvalues().real().maxCoeff();
    r.stable = r.margin < 0.0;
    return r;
}

Matrix4d steady_state_cm(const params::DimensionlessParams& p) {
    params::validate(p);
    const Matrix4d k = drift_matrix(p);
    const StabilityReport st = stability(k);
    if (!st.stable) {
        throw UnstableSystemError("steady_state_cm: drift is not Hurwitz", st.margin);
    }
    return gaussian::solve_lyapunov(k, diffusion_matrix(p));
}

namespace {

struct FilterKernel {
    cplx rho;       // exponent of the kernel e^{rho s}
    double c;       // scalar prefactor
    double t_end;   // window length; infinity for the Lorentzian
    bool finite;
};

FilterKernel make_kernel(const FilterSpec& f) {
    FilterKernel k;
    if (f.shape == FilterShape::Rect) {
        if (f.tau_m <= 0.0) throw std::invalid_argument("filter: tau_m must be > 0");
        k.c = 1.0 / std::sqrt(f.tau_m);
        k.rho = cplx(0.0, f.nu);
        k.t_end = f.tau_m;
        k.finite = true;
    } else {
        if (f.gamma_f <= 0.0) throw std::invalid_argument("filter: gamma_f must be > 0");
        k.c = std::sqrt(2.0 * f.gamma_f);
        k.rho = cplx(-f.gamma_f, f.nu);
        k.t_end = 0.0;
        k.finite = false;
    }
    return k;
}

}  // namespace

Matrix4d filtered_output_cm(const params::DimensionlessParams& p, const FilterSpec& f) {
    const Matrix4d k = drift_matrix(p);
    const Matrix4d d = diffusion_matrix(p);
    const StabilityReport st = stability(k);
    if (!st.stable) {
        throw UnstableSystemError("filtered_output_cm: drift is not Hurwitz", st.margin);
    }
    const Matrix4d s_st = gaussian::solve_lyapunov(k, d);
    const FilterKernel ker = make_kernel(f);

    const MatrixXcd kc = k.cast<cplx>();
    auto e_int = [&](const MatrixXcd& m) {
        return ker.finite ? numerics::integral_exp(m, ker.t_end) : numerics::integral_exp_inf(m);
    };
    auto t_int = [&](cplx pp, cplx qq) {
        return ker.finite ? numerics::double_integral_exp(pp, qq, kc, ker.t_end)
                          : numerics::double_integral_exp_inf(pp, qq, kc);
    };

    const Matrix2d i2 = Matrix2d::Identity();
    Matrix2d j2;
    j2 << 0.0, 1.0, -1.0, 0.0;
    const Matrix2cd ipj = (i2.cast<cplx>() + cplx(0.0, 1.0) * j2.cast<cplx>());
    const Matrix2cd imj = (i2.cast<cplx>() - cplx(0.0, 1.0) * j2.cast<cplx>());

    // Cross block: mechanics against the filtered output mode.
    const double sq2k = std::sqrt(2.0 * p.kappa);
    const Matrix4d w = sq2k * s_st - d / sq2k;
    const MatrixXcd e_kr = e_int(kc + ker.rho * MatrixXcd::Identity(4, 4));
    const Matrix2cd cross_c =
        ker.c * (e_kr * w.cast<cplx>()).topRightCorner<2, 2>() * ipj;
    const Matrix2d cross = cross_c.real();

    // Filtered-mode block from the ordered two-time correlations.
    auto g_of = [&](const Matrix4d& n) -> Matrix2d {
        const MatrixXcd t1 = t_int(ker.rho, ker.rho) * n.cast<cplx>();
        const MatrixXcd t2 = t_int(ker.rho, std::conj(ker.rho)) * n.cast<cplx>();
        const Matrix2cd z1 = imj * t1.bottomRightCorner<2, 2>() * ipj;
        const Matrix2cd z2 = imj * t2.bottomRightCorner<2, 2>() * imj;
        return 0.5 * ker.c * ker.c * (z1.real() + z2.real());
    };
    const Matrix2d gs = g_of(s_st);
    const Matrix2d gd = g_of(d);
    const Matrix2d opt = 0.5 * i2 + 2.0 * p.kappa * (gs + gs.transpose()) -
                         (gd + gd.transpose());

    Matrix4d out;
    out.topLeftCorner<2, 2>() = s_st.topLeftCorner<2, 2>();
    out.topRightCorner<2, 2>() = cross;
    out.bottomLeftCorner<2, 2>() = cross.transpose();
    out.bottomRightCorner<2, 2>() = opt;
    return out;
}

Matrix4d filtered_output_cm_spectral(const params::DimensionlessParams& p, const FilterSpec& f,
                                     double range, double abs_tol) {
    if (f.shape != FilterShape::Rect) {
        throw std::invalid_argument("filtered_output_cm_spectral: rect filter only");
    }
    const Matrix4d k = drift_matrix(p);
    const Matrix4d d = diffusion_matrix(p);
    const StabilityReport st = stability(k);
    if (!st.stable) {
        throw UnstableSystemError("filtered_output_cm_spectral: drift is not Hurwitz",
                                  st.margin);
    }
    const double tau_m = f.tau_m;
    const double nu = f.nu;
    const double sq2k = std::sqrt(2.0 * p.kappa);

    // V_in / (2 kappa): the direct input pass-through of the output relation.
    Matrix4d pc = Matrix4d::Zero();
    pc(2, 2) = pc(3, 3) = 1.0 / (2.0 * p.kappa);
    const Matrix4d cc = pc * d * pc;

    auto transfer = [&](double x) -> cplx {
        // FT of the rect window at offset x, sqrt(tau) e^{i x tau/2} sinc
        const double arg = 0.5 * x * tau_m;
        const double sinc = std::abs(arg) < 1e-8 ? 1.0 - arg * arg / 6.0 : std::sin(arg) / arg;
        return std::sqrt(tau_m) * std::exp(cplx(0.0, arg)) * sinc;
    };

    auto integrand = [&](double w) -> Matrix4d {
        const Matrix4cd m =
            (cplx(0.0, w) * Matrix4cd::Identity() + k.cast<cplx>()).inverse();
        const Matrix4cd mp = m + pc.cast<cplx>();
        const Matrix4cd c = mp * d.cast<cplx>() * mp.adjoint() - cc.cast<cplx>();
        const cplx tp = transfer(w + nu), tm = transfer(w - nu);
        const cplx a = 0.5 * (tp + tm);
        const cplx b = (tp - tm) / cplx(0.0, 2.0);
        Matrix4cd ff = Matrix4cd::Identity();
        ff(2, 2) = sq2k * a;
        ff(2, 3) = sq2k * b;
        ff(3, 2) = -sq2k * b;
        ff(3, 3) = sq2k * a;
        return (ff * c * ff.adjoint()).real() / (2.0 * std::numbers::pi);
    };

    // Integrate entrywise with a shared panel cap resolving both the cavity
    // line and the sinc oscillation.
    const double cap = std::min(p.kappa, 2.0 * std::numbers::pi / tau_m) / 8.0;
    Matrix4d total = Matrix4d::Zero();
    for (int r = 0; r < 4; ++r) {
        for (int c = r; c < 4; ++c) {
            auto fe = [&](double w) { return integrand(w)(r, c); };
            const auto q = numerics::gk15_adaptive(fe, -range, range, abs_tol, cap);
            total(r, c) = q.value;
            total(c, r) = q.value;
        }
    }
    // Exact additions: optical vacuum floor (Parseval of the filter) and the
    // slowly decaying mechanical momentum tail beyond the cutoff.
    total.bottomRightCorner<2, 2>() += 0.5 * Matrix2d::Identity();
    total.topLeftCorner<2, 2>() += d.topLeftCorner<2, 2>() / (std::numbers::pi * range);
    return total;
}

}  // namespace omh::steady
