#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "qfan/components.hpp"
#include "qfan/feedback.hpp"

using namespace qfan;
using doctest::Approx;

namespace {
const cplx I(0.0, 1.0);

// independent scalar evaluation of the interconnection at a point
Eigen::MatrixXcd closed_loop_numeric(const TransferMatrix& g, const TransferMatrix& k,
                                     cplx s) {
    Eigen::MatrixXcd gv = g.eval(s), kv = k.eval(s);
    cplx detg = gv(0, 0) * gv(1, 1) - gv(0, 1) * gv(1, 0);
    cplx detk = kv(0, 0) * kv(1, 1) - kv(0, 1) * kv(1, 0);
    cplx den = 1.0 - kv(1, 0) * gv(1, 1);
    Eigen::MatrixXcd r(2, 2);
    r(0, 0) = (gv(0, 0) - kv(1, 0) * detg) / den;
    r(0, 1) = gv(0, 1) * kv(1, 1) / den;
    r(1, 0) = gv(1, 0) * kv(0, 0) / den;
    r(1, 1) = (kv(0, 1) + gv(1, 1) * detk) / den;
    return r;
}

// direct elimination of the three-port interconnection at one point:
// forward amplifier G, return amplifier Gbar, controller K, reverse-pass
// controller K~ (para-conjugate values supplied by the caller)
Eigen::MatrixXcd nonreciprocal_numeric(const Eigen::MatrixXcd& gv,
                                       const Eigen::MatrixXcd& gb,
                                       const Eigen::MatrixXcd& kv,
                                       const Eigen::MatrixXcd& ks) {
    // unknowns: bt1, btt1d, bt2d, btt2, bt3, btt3, bt4, b2
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(8, 8);
    Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(8, 3);  // inputs b1d, b3, b4
    m(0, 0) = 1; m(0, 5) = -gv(0, 0); n(0, 0) = gv(0, 1);
    m(1, 1) = 1; m(1, 5) = -gv(1, 0); n(1, 0) = gv(1, 1);
    m(2, 2) = 1; m(2, 1) = -gb(0, 0); m(2, 7) = -gb(0, 1);
    m(3, 3) = 1; m(3, 1) = -gb(1, 0); m(3, 7) = -gb(1, 1);
    m(4, 4) = 1; m(4, 3) = -kv(0, 1); n(4, 1) = kv(0, 0);
    m(5, 5) = 1; m(5, 3) = -kv(1, 1); n(5, 1) = kv(1, 0);
    m(6, 6) = 1; m(6, 0) = -ks(1, 0); n(6, 2) = ks(0, 0);
    m(7, 7) = 1; m(7, 0) = -ks(1, 1); n(7, 2) = ks(0, 1);
    Eigen::MatrixXcd x = m.partialPivLu().solve(n);
    Eigen::MatrixXcd out(3, 3);
    out.row(0) = x.row(2);  // bt2d
    out.row(1) = x.row(4);  // bt3
    out.row(2) = x.row(6);  // bt4
    return out;
}
}  // namespace

TEST_CASE("close_loop entries match an independent pointwise elimination") {
    TransferMatrix g = make_ndpa({4.5, 2.0});
    for (const TransferMatrix& k :
         {make_cavity_transmission({1.0, 1.0, 0.0}),
          make_cavity_reflection({1.0, 1.5, 0.4}),
          make_butterworth_controller({1.0, 1.5, 1.25})}) {
        ClosedLoop cl = close_loop(g, k);
        for (cplx s : {cplx(0, 0.3), cplx(0, 2.0), cplx(0.1, 1.0)}) {
            Eigen::MatrixXcd want = closed_loop_numeric(g, k, s);
            Eigen::MatrixXcd got = cl.gfb.eval(s);
            CHECK((got - want).cwiseAbs().maxCoeff() < 1e-11);
            CHECK(std::abs(cl.open_loop.eval(s) -
                           (-k.at(1, 0).eval(s) * g.at(1, 1).eval(s))) < 1e-12);
        }
        // the loop preserves the amplifier commutation conditions exactly
        auto rep = check_amplifier_realizable(cl.gfb, default_check_grid(2.0), 1e-10);
        CHECK(rep.pass);
        CHECK(rep.max_violation < 1e-11);
    }
}

TEST_CASE("singular interconnection is rejected") {
    // K21 = 1/G22 identically: use constant K21 = 1 against a unit-gain G22
    TransferMatrix g(2, 2, {Port::Annihilation, Port::Creation},
                     {Port::Annihilation, Port::Creation});
    g.at(0, 0) = Rational::constant(1.0);
    g.at(0, 1) = Rational::zero();
    g.at(1, 0) = Rational::zero();
    g.at(1, 1) = Rational::constant(1.0);
    TransferMatrix k(2, 2, {Port::Creation, Port::Creation},
                     {Port::Creation, Port::Creation});
    k.at(0, 0) = Rational::constant(0.0);
    k.at(0, 1) = Rational::constant(1.0);
    k.at(1, 0) = Rational::constant(1.0);
    k.at(1, 1) = Rational::constant(0.0);
    CHECK_THROWS_AS(close_loop(g, k), std::runtime_error);
}

TEST_CASE("ideal closed loop: differentiator shape and K21 = 0 rejection") {
    double kap = 1.0;
    TransferMatrix k = make_cavity_transmission({kap, kap, 0.0});
    TransferMatrix ideal = ideal_closed_loop(k);
    // -1/K21 = (s + kappa) / kappa
    CHECK(std::abs(ideal.at(0, 0).eval(cplx(0)) - cplx(1.0)) < 1e-12);
    CHECK(std::abs(ideal.at(0, 0).eval(I * kap) - (1.0 + I)) < 1e-12);

    TransferMatrix k0(2, 2, {Port::Creation, Port::Creation},
                      {Port::Creation, Port::Creation});
    k0.at(0, 0) = Rational::constant(1.0);
    k0.at(1, 1) = Rational::constant(1.0);
    CHECK_THROWS_AS(ideal_closed_loop(k0), std::invalid_argument);
}

TEST_CASE("finite-gain integrator loop approaches kappa/s only up to the"
          " amplifier gain ceiling") {
    // closed loop over the high-pass controller: G21fb ~ kappa / s
    double kap = 1.0;
    TransferMatrix k = make_cavity_reflection({kap, kap, 0.0});
    auto max_dev = [&](double lam) {
        TransferMatrix g = make_ndpa({2.01 * lam, lam});
        TransferMatrix fb = close_loop(g, k).gfb;
        double worst = 0.0;
        for (int i = 0; i <= 50; ++i) {
            double w = 0.1 * std::pow(10.0, i / 50.0);
            cplx val = fb.at(1, 0).eval(I * w);
            worst = std::max(worst, std::abs(val / (kap / (I * w)) - 1.0));
        }
        return worst;
    };
    // frozen reference values: the approximation error is set by the finite
    // gain lambda/omega, not by gamma - 2 lambda
    double d2 = max_dev(2.0), d9 = max_dev(9.0);
    CHECK(d2 == Approx(0.491).epsilon(0.02));
    CHECK(d9 == Approx(0.144).epsilon(0.02));
    CHECK(d9 < d2);
}

TEST_CASE("high-gain convergence saturates; error tracks 1/|G11|") {
    double lam = 2.0;
    auto family = [lam](double eps) { return make_ndpa({(2.0 + eps) * lam, lam}); };
    TransferMatrix k = make_cavity_transmission({1.0, 1.0, 0.0});
    std::vector<cplx> sgrid{I * (0.05 * lam)};
    ConvergenceReport rep =
        high_gain_convergence(family, k, sgrid, {1e-1, 1e-2, 1e-3});
    REQUIRE(rep.samples.size() == 3);
    // frozen values: the error stops shrinking once gamma - 2 lambda is small
    // compared with the evaluation frequency
    CHECK(rep.samples[0].err == Approx(0.114).epsilon(0.02));
    CHECK(rep.samples[1].err == Approx(0.100).epsilon(0.02));
    CHECK(rep.samples[2].err == Approx(0.099).epsilon(0.02));
    CHECK(rep.samples[2].err / rep.samples[1].err > 0.9);  // not linear in eps
    for (const auto& s : rep.samples) CHECK(s.in_domain);
    CHECK_FALSE(rep.gain_ceiling);
    // proportionality of err to 1/|G11| across the family
    CHECK(rep.proportionality_spread < 1.5);
}

TEST_CASE("open-loop 3x3 block structure") {
    TransferMatrix g = make_ndpa({4.5, 2.0});
    TransferMatrix k = make_cavity_transmission({1.0, 1.0, 0.0});
    TransferMatrix ol = open_loop_system(g, k);
    cplx s(0, 0.7);
    Eigen::MatrixXcd gv = g.eval(s), kv = k.eval(s), v = ol.eval(s);
    CHECK(std::abs(v(0, 0) - gv(0, 0)) < 1e-13);
    CHECK(std::abs(v(0, 2)) < 1e-13);
    CHECK(std::abs(v(1, 0) - kv(0, 0) * gv(1, 0)) < 1e-13);
    CHECK(std::abs(v(2, 1) - kv(1, 0) * gv(1, 1)) < 1e-13);
    CHECK(std::abs(v(2, 2) - kv(1, 1)) < 1e-13);
}

TEST_CASE("non-reciprocal loop equals the direct network elimination and is"
          " exactly commutation-preserving") {
    double lam = 2.0, gam = 2.01 * lam;
    TransferMatrix g = make_ndpa({gam, lam});
    for (double t : {0.25, 0.9}) {
        TransferMatrix k = make_beam_splitter(t);
        ClosedLoop cl = nonreciprocal_close(g, g, k);
        Eigen::MatrixXd j = TransferMatrix::metric(cl.gfb.sig_out());
        for (double w : {0.1, 1.0, 5.0}) {
            Eigen::MatrixXcd gv = g.eval(I * w), kv = k.eval(I * w);
            Eigen::MatrixXcd want = nonreciprocal_numeric(gv, gv, kv, kv);
            Eigen::MatrixXcd got = cl.gfb.eval(I * w);
            CHECK((got - want).cwiseAbs().maxCoeff() < 1e-10);
            CHECK((got * j * got.adjoint() - j).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("non-reciprocal ideal limit") {
    double t = 0.25;
    TransferMatrix k = make_beam_splitter(t);
    TransferMatrix ideal = nonreciprocal_ideal(k);
    Eigen::MatrixXcd v = ideal.eval(I * 0.3);
    CHECK(v(0, 0).real() == Approx(-2.0));          // -1/sqrt(T)
    CHECK(v(0, 1).real() == Approx(-std::sqrt(3.0)));
    CHECK(v(1, 0).real() == Approx(std::sqrt(3.0)));
    CHECK(v(1, 1).real() == Approx(2.0));
    CHECK(std::abs(v(0, 2)) < 1e-14);
    CHECK(std::abs(v(2, 0)) < 1e-14);
    CHECK(v(2, 2).real() == Approx(1.0));  // isolated return port passes through

    // finite-gain loop approaches the ideal as gamma -> 2 lambda
    double lam = 2.0;
    TransferMatrix g = make_ndpa({(2.0 + 1e-6) * lam, lam});
    ClosedLoop cl = nonreciprocal_close(g, g, k);
    Eigen::MatrixXcd diff = cl.gfb.eval(I * (1e-4 * lam)) - ideal.eval(I * (1e-4 * lam));
    CHECK(diff.cwiseAbs().maxCoeff() < 2e-4);
}
