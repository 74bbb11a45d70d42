#include "omherald/semiclassical.hpp"

#include <boost/numeric/odeint/stepper/controlled_runge_kutta.hpp>
#include <boost/numeric/odeint/stepper/generation.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "omherald/errors.hpp"

namespace omh::semiclassical {

namespace {

using State = std::array<double, 4>;  // Re alpha, Im alpha, q, p

struct Rhs {
    const ModelParams& m;
    const DriveEnvelope& drive;

    void operator()(const State& s, State& ds, double t) const {
        const std::complex<double> alpha(s[0], s[1]);
        const double delta_eff = m.delta0 - m.g0 * s[2];
        const std::complex<double> dalpha =
            -(std::complex<double>(m.kappa, delta_eff)) * alpha + drive.value(t, m.kappa);
        ds[0] = dalpha.real();
        ds[1] = dalpha.imag();
        ds[2] = s[3];
        ds[3] = -s[2] - m.gamma * s[3] + m.g0 * std::norm(alpha);
    }
};

}  // namespace

std::complex<double> DriveEnvelope::value(double t, double kappa) const {
    if (shape == DriveShape::Constant) return {amplitude, 0.0};
    if (t < 0.0 || t > tau || tau <= 0.0) return {0.0, 0.0};
    const double ramp = edge_fraction * tau;
    double f = 1.0;
    if (ramp > 0.0 && t < ramp) {
        f = 0.5 * (1.0 - std::cos(std::numbers::pi * t / ramp));
    } else if (ramp > 0.0 && t > tau - ramp) {
        f = 0.5 * (1.0 - std::cos(std::numbers::pi * (tau - t) / ramp));
    }
    // integral f^2 dt = tau (1 - 1.25 edge_fraction) for cosine ramps, which
    // normalizes the envelope so photon_number sets the pulse area.
    const double sq_norm = tau * (1.0 - 1.25 * edge_fraction);
    return {std::sqrt(2.0 * kappa * photon_number / sq_norm) * f, 0.0};
}

Trajectory evolve_mean_field(const ModelParams& m, const DriveEnvelope& drive,
                             MeanFieldState initial, double t_end, int n_samples) {
    if (t_end <= 0.0) throw std::invalid_argument("evolve_mean_field: t_end must be > 0");
    if (n_samples < 2) n_samples = 2;

    namespace ode = boost::numeric::odeint;
    auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<State>>(1e-12, 1e-9);
    Rhs rhs{m, drive};

    Trajectory traj;
    traj.times.reserve(n_samples);
    traj.states.reserve(n_samples);

    State s{initial.alpha.real(), initial.alpha.imag(), initial.q, initial.p};
    double t = 0.0;
    double dt = std::min(0.1, t_end / 100.0);
    traj.times.push_back(0.0);
    traj.states.push_back(initial);

    for (int i = 1; i < n_samples; ++i) {
        const double target = t_end * i / (n_samples - 1);
        while (t < target) {
            if (t + dt > target) dt = target - t;
            int rejections = 0;
            while (true) {
                const auto result = stepper.try_step(rhs, s, t, dt);
                if (result == ode::success) break;
                if (++rejections > 500 || !(dt > 1e-15 * t_end)) {
                    throw IntegrationError("evolve_mean_field: step control failed", t);
                }
            }
        }
        traj.times.push_back(target);
        traj.states.push_back(MeanFieldState{{s[0], s[1]}, s[2], s[3]});
    }

    // Plateau diagnostics for flat-top drives: central 60% of the pulse.
    if (drive.shape == DriveShape::FlatTop && drive.tau > 0.0) {
        const double lo = 0.2 * drive.tau, hi = 0.8 * drive.tau;
        double asum = 0.0, dsum = 0.0;
        int count = 0;
        for (size_t i = 0; i < traj.times.size(); ++i) {
            if (traj.times[i] < lo || traj.times[i] > hi) continue;
            asum += std::abs(traj.states[i].alpha);
            dsum += m.delta0 - m.g0 * traj.states[i].q;
            ++count;
        }
        if (count >= 4) {
            PlateauReport rep;
            rep.valid = true;
            rep.alpha_mean = asum / count;
            rep.delta_mean = dsum / count;
            double amax = 0.0, dmax = 0.0;
            for (size_t i = 0; i < traj.times.size(); ++i) {
                if (traj.times[i] < lo || traj.times[i] > hi) continue;
                amax = std::max(amax, std::abs(std::abs(traj.states[i].alpha) - rep.alpha_mean));
                dmax = std::max(
                    dmax, std::abs((m.delta0 - m.g0 * traj.states[i].q) - rep.delta_mean));
            }
            rep.alpha_variation = amax / std::max(std::abs(rep.alpha_mean), 1e-12);
            rep.delta_variation = dmax / std::max(std::abs(rep.delta_mean), 1e-12);
            traj.plateau = rep;
        }
    }
    return traj;
}

std::pair<MeanFieldState, double> steady_state_means(const ModelParams& m, double eps) {
    // alpha_s = eps / (kappa + i delta_s), q_s = g0 |alpha_s|^2, iterated to
    // self-consistency in the static mirror displacement.
    double q = 0.0;
    std::complex<double> alpha{0.0, 0.0};
    double delta_s = m.delta0;
    for (int it = 0; it < 256; ++it) {
        delta_s = m.delta0 - m.g0 * q;
        alpha = eps / std::complex<double>(m.kappa, delta_s);
        const double q_next = m.g0 * std::norm(alpha);
        if (std::abs(q_next - q) < 1e-14 * (1.0 + std::abs(q_next))) {
            q = q_next;
            break;
        }
        q = q_next;
    }
    delta_s = m.delta0 - m.g0 * q;
    alpha = eps / std::complex<double>(m.kappa, delta_s);
    return {MeanFieldState{alpha, q, 0.0}, delta_s};
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("write_trajectory_csv: cannot open " + path);
    std::fputs("t,re_alpha,im_alpha,q,p\n", f);
    for (size_t i = 0; i < traj.times.size(); ++i) {
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g\n", traj.times[i],
                     traj.states[i].alpha.real(), traj.states[i].alpha.imag(),
                     traj.states[i].q, traj.states[i].p);
    }
    std::fclose(f);
}

}  // namespace omh::semiclassical
