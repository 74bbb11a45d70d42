#include <doctest.h>

#include <cmath>
#include <numbers>

#include "omherald/errors.hpp"
#include "omherald/fockrep.hpp"
#include "omherald/gaussian.hpp"
#include "omherald/pulsed.hpp"

using namespace omh;

TEST_CASE("truncated number-basis state is normalized and phase-patterned") {
    const auto st = fockrep::pulsed_output_state(0.3, 0.7, 90);
    CHECK(st.trace() == doctest::Approx(1.0).epsilon(1e-9));

    // the i^{k-l} pattern: element(n, k+1, k) is purely imaginary
    const auto e = st.element(2, 3, 2);
    CHECK(e.real() == 0.0);
    CHECK(e.imag() > 0.0);
    const auto d = st.element(0, 4, 4);
    CHECK(d.imag() == 0.0);
    CHECK(d.real() > 0.0);

    // vacuum input: only the n = 0 block carries weight
    const auto v = fockrep::pulsed_output_state(0.0, 0.5, 40);
    CHECK(v.amp[1].cwiseAbs().maxCoeff() == 0.0);
    CHECK(v.trace() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("adaptive truncation meets the requested tail") {
    const int n = fockrep::adaptive_nmax(0.3, 0.7, 1e-10);
    const auto st = fockrep::pulsed_output_state(0.3, 0.7, n);
    CHECK(1.0 - st.trace() <= 1e-10);
    CHECK_THROWS_AS(fockrep::adaptive_nmax(5.0, 2.5, 1e-14), TruncationError);
}

TEST_CASE("number-basis moments match the covariance-matrix route") {
    const double n0 = 0.3, r = 0.6;
    const auto st = fockrep::pulsed_output_state(n0, r, 80);
    const Eigen::Matrix4d from_fock = st.covariance_matrix();
    const Eigen::Matrix4d from_map = pulsed::lossless_output_cm(r, n0);
    CHECK((from_fock - from_map).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("log negativity agrees between number basis and covariance matrix") {
    struct Case {
        double n0, r;
        int nmax;
    };
    for (const Case c : {Case{0.0, 0.5, 60}, Case{0.3, 0.7, 90}, Case{1.0, 1.0, 160}}) {
        const auto st = fockrep::pulsed_output_state(c.n0, c.r, c.nmax);
        const double en_f = fockrep::log_negativity(st);
        const double en_g = gaussian::log_negativity(pulsed::lossless_output_cm(c.r, c.n0));
        CHECK(en_f == doctest::Approx(en_g).epsilon(1e-6));
    }
}

TEST_CASE("closed-form click probability anchors") {
    params::DetectorModel perfect;
    perfect.eta = 1.0;
    perfect.dark = 0.0;
    CHECK(fockrep::p_click_closed(perfect, 0.0, 0.5) ==
          doctest::Approx(0.21355226703407257).epsilon(1e-12));

    // operating point of the pulsed protocol: G = g^2/(4 kappa) = 0.00675
    params::DimensionlessParams p;
    p.kappa = 0.3;
    p.g = 0.09;
    const double grate = pulsed::squeeze_rate(p);
    CHECK(grate == doctest::Approx(0.00675).epsilon(1e-15));
    const double r10 = pulsed::squeeze_parameter(grate, 10.0);
    CHECK(r10 == doctest::Approx(0.3715705884118107).epsilon(1e-12));
    params::DetectorModel det;
    det.eta = 0.6;
    det.dark = 0.0;
    CHECK(fockrep::p_click_closed(det, 0.1, r10) ==
          doctest::Approx(0.08708670440986521).epsilon(1e-12));
}

TEST_CASE("closed-form conditional weights match the brute-force POVM") {
    params::DetectorModel det;
    det.eta = 0.6;
    det.dark = 0.01;
    const double n0 = 0.4, r = 0.9;
    const auto st = fockrep::pulsed_output_state(n0, r, 320);
    const auto [w_povm, p_povm] = fockrep::apply_threshold_povm(st, det);
    const double p_closed = fockrep::p_click_closed(det, n0, r);
    CHECK(p_povm == doctest::Approx(p_closed).epsilon(1e-12));

    const Eigen::VectorXd w_closed = fockrep::conditional_weights_closed(det, n0, r);
    CHECK(w_closed.sum() == doctest::Approx(p_closed).epsilon(1e-12));
    const int ncmp = static_cast<int>(std::min(w_povm.size(), w_closed.size()));
    for (int k = 0; k < ncmp; ++k) {
        CHECK(w_povm(k) == doctest::Approx(w_closed(k)).epsilon(1e-10));
    }
}

TEST_CASE("pure dark counts herald the unconditioned thermal state") {
    params::DetectorModel det;
    det.eta = 0.5;
    det.dark = 0.02;
    // r = 0: optics never fires except darks; weights must be d * thermal(n0)
    const Eigen::VectorXd w = fockrep::conditional_weights_closed(det, 0.5, 0.0);
    CHECK(w.sum() == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(w(0) == doctest::Approx(0.02 / 1.5).epsilon(1e-12));
    CHECK(w(1) / w(0) == doctest::Approx(0.5 / 1.5).epsilon(1e-12));
}

TEST_CASE("mixture wigner function hits the textbook number-state values") {
    Eigen::VectorXd one(2);
    one << 0.0, 1.0;
    // W_{|1>}(0) = -1/pi and the node sits at radius 1/sqrt(2)
    CHECK(fockrep::wigner_mixture_radial(one, 0.0) ==
          doctest::Approx(-1.0 / std::numbers::pi).epsilon(1e-12));
    CHECK(fockrep::wigner_mixture_radial(one, 1.0 / std::sqrt(2.0)) ==
          doctest::Approx(0.0).epsilon(1e-12));
    Eigen::VectorXd vac(1);
    vac << 1.0;
    CHECK(fockrep::wigner_mixture(vac, 0.0, 0.0) ==
          doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-12));
    // rotational symmetry by construction
    CHECK(fockrep::wigner_mixture(one, 0.6, 0.8) ==
          doctest::Approx(fockrep::wigner_mixture_radial(one, 1.0)).epsilon(1e-14));
}
