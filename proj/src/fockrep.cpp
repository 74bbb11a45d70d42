#include "omherald/fockrep.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "omherald/errors.hpp"

namespace omh::fockrep {

namespace {

// Thermal weight c_n = n0^n / (1 + n0)^(n+1), in log space for large n.
double thermal_weight(double n0, int n) {
    if (n0 == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(n * std::log(n0) - (n + 1) * std::log1p(n0));
}

}  // namespace

double FockBipartiteState::trace() const {
    double tr = 0.0;
    for (const auto& v : amp) tr += v.squaredNorm();
    return tr;
}

std::complex<double> FockBipartiteState::element(int n, int k, int l) const {
    static const std::complex<double> phase[4] = {
        {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    const double mag = amp[n](k) * amp[n](l);
    return phase[((k - l) % 4 + 4) % 4] * mag;
}

Eigen::Matrix4d FockBipartiteState::covariance_matrix() const {
    double adag_a = 0.0, bdag_b = 0.0, s = 0.0;
    for (int n = 0; n <= nmax; ++n) {
        const auto& v = amp[n];
        for (int k = 0; k < v.size(); ++k) {
            const double d = v(k) * v(k);
            adag_a += k * d;
            bdag_b += (n + k) * d;
            if (k > 0) s += v(k) * v(k - 1) * std::sqrt(double(k) * (n + k));
        }
    }
    // <ab> = i s: only the (q,Y) and (p,X) cross covariances survive.
    Eigen::Matrix4d sigma = Eigen::Matrix4d::Zero();
    sigma(0, 0) = sigma(1, 1) = 0.5 + bdag_b;
    sigma(2, 2) = sigma(3, 3) = 0.5 + adag_a;
    sigma(0, 3) = sigma(3, 0) = s;
    sigma(1, 2) = sigma(2, 1) = s;
    return sigma;
}

FockBipartiteState pulsed_output_state(double n0, double r, int nmax) {
    if (n0 < 0.0 || r < 0.0 || nmax < 0) {
        throw std::invalid_argument("pulsed_output_state: bad arguments");
    }
    const double mu = std::cosh(r);
    const double t = std::tanh(r);
    FockBipartiteState st;
    st.nmax = nmax;
    st.n0 = n0;
    st.r = r;
    st.amp.resize(nmax + 1);
    for (int n = 0; n <= nmax; ++n) {
        const int sz = nmax - n + 1;  // keep total phonon number <= nmax
        Eigen::VectorXd v = Eigen::VectorXd::Zero(sz);
        const double cn = thermal_weight(n0, n);
        if (cn > 0.0) {
            v(0) = std::sqrt(cn) / std::pow(mu, n + 1);
            for (int k = 0; k + 1 < sz; ++k) {
                v(k + 1) = v(k) * t * std::sqrt((n + k + 1.0) / (k + 1.0));
            }
        }
        st.amp[n] = std::move(v);
    }
    return st;
}

int adaptive_nmax(double n0, double r, double tail_tol) {
    int nmax = 32;
    double defect = 1.0;
    while (nmax <= 512) {
        defect = 1.0 - pulsed_output_state(n0, r, nmax).trace();
        if (defect <= tail_tol) return nmax;
        nmax = nmax + nmax / 2;
    }
    throw TruncationError("adaptive_nmax: cap 512 reached", 1.0 - defect);
}

double log_negativity(const FockBipartiteState& st) {
    const int nmax = st.nmax;
    double total = 0.0;
    // Partial transposition preserves the total excitation number N = a + b
    // of the |a>_opt |b>_mech-shifted index pair, so the spectrum splits
    // into small symmetric blocks B[a,b] = M^(N-a-b)[b,a].
    for (int bigN = 0; bigN <= 2 * nmax; ++bigN) {
        const int amin = std::max(0, bigN - nmax);
        const int amax = std::min(bigN, nmax);
        const int sz = amax - amin + 1;
        Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(sz, sz);
        for (int ia = 0; ia < sz; ++ia) {
            for (int ib = ia; ib < sz; ++ib) {
                const int a = amin + ia, b = amin + ib;
                const int n = bigN - a - b;
                if (n < 0 || n > nmax) continue;
                const auto& v = st.amp[n];
                if (a < v.size() && b < v.size()) {
                    blk(ia, ib) = blk(ib, ia) = v(a) * v(b);
                }
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(blk, Eigen::EigenvaluesOnly);
        total += es.eigenvalues().cwiseAbs().sum();
    }
    return std::max(0.0, std::log2(total));
}

double p_click_closed(const params::DetectorModel& det, double n0, double r) {
    params::validate(det);
    const double nu2 = std::sinh(r) * std::sinh(r);
    return 1.0 - (1.0 - det.dark) / (1.0 + det.eta * nu2 * (1.0 + n0));
}

Eigen::VectorXd conditional_weights_closed(const params::DetectorModel& det, double n0,
                                           double r, double tail_tol) {
    params::validate(det);
    const double mu2 = std::cosh(r) * std::cosh(r);
    const double nu2 = std::sinh(r) * std::sinh(r);
    const double a = mu2 * (1.0 + n0);
    // Both geometric ratios are < 1 because a - numerator = 1 and
    // a - numerator2 = 1 + eta nu^2 (1 + n0).
    const double q1 = (n0 + (1.0 + n0) * nu2) / a;
    const double q2 = (n0 + (1.0 + n0) * (1.0 - det.eta) * nu2) / a;

    std::vector<double> w;
    double t1 = 1.0 / a, t2 = 1.0 / a;
    double total = 0.0;
    const int cap = 20000;
    for (int k = 0; k < cap; ++k) {
        const double wk = t1 - (1.0 - det.dark) * t2;
        w.push_back(wk);
        total += wk;
        t1 *= q1;
        t2 *= q2;
        // Remaining tail is bounded by the undamped branch's geometric sum.
        if (k > 2 && t1 / (1.0 - q1) < tail_tol * std::max(total, 1e-300)) break;
        if (k == cap - 1) {
            throw TruncationError("conditional_weights_closed: cap reached", total);
        }
    }
    return Eigen::Map<Eigen::VectorXd>(w.data(), static_cast<long>(w.size()));
}

std::pair<Eigen::VectorXd, double> apply_threshold_povm(const FockBipartiteState& st,
                                                        const params::DetectorModel& det) {
    params::validate(det);
    double p_no = 0.0;
    Eigen::VectorXd w = Eigen::VectorXd::Zero(st.nmax + 1);
    for (int n = 0; n <= st.nmax; ++n) {
        const auto& v = st.amp[n];
        double loss_pow = 1.0;  // (1 - eta)^k
        for (int k = 0; k < v.size(); ++k) {
            const double diag = v(k) * v(k);
            p_no += (1.0 - det.dark) * loss_pow * diag;
            w(n + k) += diag * (1.0 - (1.0 - det.dark) * loss_pow);
            loss_pow *= (1.0 - det.eta);
        }
    }
    return {std::move(w), 1.0 - p_no};
}

double wigner_mixture_radial(const Eigen::VectorXd& weights, double radius) {
    const double total = weights.sum();
    if (total <= 0.0) throw std::invalid_argument("wigner_mixture: non-positive weight sum");
    const double s = 2.0 * radius * radius;
    // T_k = L_k(s) e^{-s/2} by stable three-term recurrence.
    double t_km1 = std::exp(-0.5 * s);
    double acc = weights(0) * t_km1;
    if (weights.size() > 1) {
        double t_k = (1.0 - s) * t_km1;
        double sign = -1.0;
        acc += sign * weights(1) * t_k;
        for (int k = 1; k + 1 < weights.size(); ++k) {
            const double t_kp1 = ((2.0 * k + 1.0 - s) * t_k - k * t_km1) / (k + 1.0);
            sign = -sign;
            acc += sign * weights(k + 1) * t_kp1;
            t_km1 = t_k;
            t_k = t_kp1;
        }
    }
    return acc / (std::numbers::pi * total);
}

double wigner_mixture(const Eigen::VectorXd& weights, double x, double p) {
    return wigner_mixture_radial(weights, std::hypot(x, p));
}

}  // namespace omh::fockrep
