#include "omherald/negativity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "omherald/fockrep.hpp"
#include "omherald/numerics.hpp"

namespace omh::negativity {

NegativityResult negativity_radial(const Eigen::VectorXd& weights, double abs_tol) {
    NegativityResult res;
    const int kmax = static_cast<int>(weights.size()) - 1;
    const double radius = std::sqrt(2.0 * (kmax + 6.0));
    auto wigner = [&](double r) { return fockrep::wigner_mixture_radial(weights, r); };

    // Bracket the sign changes on a scan fine enough to separate the
    // Laguerre oscillations, then bisect each bracket.
    const int scan = std::max(2001, 40 * (kmax + 1) + 1);
    std::vector<double> edges;
    edges.push_back(0.0);
    double prev_r = 0.0, prev_w = wigner(0.0);
    res.evaluations += 1;
    for (int i = 1; i < scan; ++i) {
        const double r = radius * i / (scan - 1);
        const double w = wigner(r);
        res.evaluations += 1;
        if ((prev_w < 0.0) != (w < 0.0)) {
            double lo = prev_r, hi = r, flo = prev_w;
            for (int it = 0; it < 80 && hi - lo > 1e-14 * radius; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = wigner(mid);
                res.evaluations += 1;
                if ((flo < 0.0) != (fm < 0.0)) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            edges.push_back(0.5 * (lo + hi));
        }
        prev_r = r;
        prev_w = w;
    }
    edges.push_back(radius);

    // Integrate 2 pi r W(r) over each negative segment.
    double value = 0.0, err = 0.0;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        const double a = edges[i], b = edges[i + 1];
        if (b - a < 1e-13) continue;
        const double mid = 0.5 * (a + b);
        if (wigner(mid) >= 0.0) continue;
        res.evaluations += 1;
        auto f = [&](double r) { return r * std::min(0.0, wigner(r)); };
        const auto q = numerics::gk15_adaptive(f, a, b, abs_tol / edges.size());
        value += q.value;
        err += q.error;
        res.evaluations += q.evaluations;
    }
    res.value = 2.0 * std::numbers::pi * value;
    res.error_estimate = 2.0 * std::numbers::pi * err;
    return res;
}

NegativityResult negativity_grid(const gaussian::ConditionalWigner& w, int n_points) {
    NegativityResult res;
    if (n_points < 5) n_points = 5;
    if (n_points % 2 == 0) n_points += 1;  // keep the half-resolution subgrid aligned

    const Eigen::Matrix2d sp = numerics::inverse_guarded(w.sigma_prime, "negativity_grid: prime");
    const Eigen::Matrix2d spp =
        numerics::inverse_guarded(w.sigma_dprime, "negativity_grid: dprime");

    // W < 0 iff z^T (spp - sp) z < c0; the difference of precision matrices
    // is PSD because conditioning only sharpens the subtracted Gaussian.
    const Eigen::Matrix2d m = spp - sp;
    const double c0 = 2.0 * std::log(w.coeff) +
                      std::log(w.sigma_prime.determinant() / w.sigma_dprime.determinant());
    if (!(c0 > 0.0)) return res;  // provably nonnegative Wigner function

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
    double half_x, half_y;
    if (es.eigenvalues().minCoeff() > 0.0) {
        const Eigen::Matrix2d minv = m.inverse();
        half_x = 1.05 * std::sqrt(c0 * minv(0, 0));
        half_y = 1.05 * std::sqrt(c0 * minv(1, 1));
    } else {
        // Degenerate difference: fall back to a wide box on the broad state.
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> ep(w.sigma_prime, Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> epp(w.sigma_dprime, Eigen::EigenvaluesOnly);
        const double sd = std::sqrt(
            std::max(ep.eigenvalues().maxCoeff(), epp.eigenvalues().maxCoeff()));
        half_x = half_y = 6.0 * sd;
    }

    const double log_pref_p =
        -std::log(2.0 * std::numbers::pi * std::sqrt(w.sigma_prime.determinant()));
    const double log_pref_pp =
        -std::log(2.0 * std::numbers::pi * std::sqrt(w.sigma_dprime.determinant()));
    const double log_coeff = std::log(w.coeff);

    const double hx = 2.0 * half_x / (n_points - 1);
    const double hy = 2.0 * half_y / (n_points - 1);
    double fine = 0.0, coarse = 0.0;
    for (int i = 0; i < n_points; ++i) {
        const double x = -half_x + i * hx;
        for (int j = 0; j < n_points; ++j) {
            const double y = -half_y + j * hy;
            const double qp = sp(0, 0) * x * x + 2.0 * sp(0, 1) * x * y + sp(1, 1) * y * y;
            const double qpp = spp(0, 0) * x * x + 2.0 * spp(0, 1) * x * y + spp(1, 1) * y * y;
            const double val = std::exp(log_pref_p - 0.5 * qp) -
                               std::exp(log_coeff + log_pref_pp - 0.5 * qpp);
            const double neg = std::min(0.0, val);
            fine += neg;
            if (i % 2 == 0 && j % 2 == 0) coarse += neg;
        }
    }
    res.evaluations = static_cast<long>(n_points) * n_points;
    const double fine_int = fine * hx * hy / w.p_click;
    const double coarse_int = coarse * (2.0 * hx) * (2.0 * hy) / w.p_click;
    res.value = fine_int;
    res.error_estimate = std::abs(fine_int - coarse_int);
    return res;
}

}  // namespace omh::negativity
