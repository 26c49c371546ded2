#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "qfan/components.hpp"
#include "qfan/feedback.hpp"
#include "qfan/stability.hpp"

using namespace qfan;

namespace {
const cplx I(0.0, 1.0);

Rational differentiator_loop(double kap, double lam, double gam) {
    TransferMatrix g = make_ndpa({gam, lam});
    TransferMatrix k = make_cavity_transmission({kap, kap, 0.0});
    return -(k.at(1, 0) * g.at(1, 1));
}
}  // namespace

TEST_CASE("differentiator loop encircles -1") {
    NyquistResult res = nyquist(differentiator_loop(1.0, 2.0, 4.02), 1e-4, 1e4);
    CHECK(res.verdict == Verdict::Unstable);
    CHECK(res.winding_number != 0);
    CHECK(std::is_sorted(res.samples.begin(), res.samples.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; }));
}

TEST_CASE("trivial and bounded loops are stable") {
    NyquistResult z = nyquist(Rational::zero(), 1e-2, 1e2);
    CHECK(z.verdict == Verdict::Stable);
    CHECK(z.winding_number == 0);

    Rational lag(Polynomial({cplx(0.5)}), Polynomial({cplx(1), cplx(1)}));
    NyquistResult res = nyquist(lag, 1e-3, 1e3);
    CHECK(res.verdict == Verdict::Stable);
    CHECK(res.winding_number == 0);
    CHECK(res.min_distance >= 0.5 - 1e-9);
    for (const auto& [w, v] : res.samples) CHECK(std::abs(v) <= 0.5 + 1e-12);
}

TEST_CASE("Nyquist preconditions") {
    Rational improper(Polynomial({cplx(0), cplx(0), cplx(1)}),
                      Polynomial({cplx(1), cplx(1)}));
    CHECK_THROWS_WITH_AS(nyquist(improper, 1e-2, 1e2),
                         doctest::Contains("Nyquist precondition violated"),
                         std::invalid_argument);
    Rational unstable(Polynomial({cplx(1)}), Polynomial({cplx(-1), cplx(1)}));
    CHECK_THROWS_WITH_AS(nyquist(unstable, 1e-2, 1e2),
                         doctest::Contains("Nyquist precondition violated"),
                         std::invalid_argument);
}

TEST_CASE("winding number invariant under range refinement") {
    Rational l = differentiator_loop(1.0, 2.0, 4.02);
    NyquistResult a = nyquist(l, 1e-4, 1e4);
    NyquistResult b = nyquist(l, 5e-5, 2e4);
    CHECK(a.winding_number == b.winding_number);
}

TEST_CASE("biproper loops close at L(inf)") {
    // L = (s + 0.2) / (s + 1): curve stays right of the origin, stable
    Rational l(Polynomial({cplx(0.2), cplx(1)}), Polynomial({cplx(1), cplx(1)}));
    NyquistResult res = nyquist(l, 1e-3, 1e3);
    CHECK(res.verdict == Verdict::Stable);
    CHECK(res.min_distance > 1.0);
}

TEST_CASE("Routh-Hurwitz quartic worked examples") {
    CHECK(routh_hurwitz_quartic({cplx(4), cplx(6), cplx(4), cplx(1)}) == Verdict::Stable);
    // fifth roots of unity have a pair with positive real part
    CHECK(routh_hurwitz_quartic({cplx(1), cplx(1), cplx(1), cplx(1)}) ==
          Verdict::Unstable);
    CHECK(routh_hurwitz_quartic({cplx(4), cplx(6), cplx(4), cplx(0)}) ==
          Verdict::Marginal);
    // the added necessary condition: negative constant term
    CHECK(routh_hurwitz_quartic({cplx(4), cplx(6), cplx(4), cplx(-1)}) ==
          Verdict::Unstable);
    CHECK_THROWS_AS(routh_hurwitz_quartic({cplx(1, 0.1), cplx(1), cplx(1), cplx(1)}),
                    std::invalid_argument);
}

TEST_CASE("root-inspection verdicts") {
    TransferMatrix g = make_ndpa({4.02, 2.0});
    CHECK(stable_by_roots(g.at(0, 0).den(), 1e-9) == Verdict::Stable);
    CHECK(stable_by_roots(Polynomial({cplx(-0.5), cplx(1)}), 1e-9) == Verdict::Unstable);
    CHECK(stable_by_roots(Polynomial({cplx(4.0), cplx(0), cplx(1)}), 1e-9) ==
          Verdict::Marginal);
    CHECK_THROWS_AS(stable_by_roots(Polynomial::one(), 1e-9), std::invalid_argument);
}

TEST_CASE("oracle agreement: Nyquist vs closed-loop roots on random loops") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int compared = 0, agreements = 0;
    while (compared < 100) {
        double lam = 0.5 + 3.0 * u(rng);
        double gam = (2.0 + 0.05 + 2.0 * u(rng)) * lam;
        double kap = 0.3 + 3.0 * u(rng);
        TransferMatrix g = make_ndpa({gam, lam});
        TransferMatrix k = make_cavity_transmission({kap, kap, 0.0});
        ClosedLoop cl = close_loop(g, k);
        Rational one_minus_l = Rational::constant(1.0) - (-cl.open_loop);
        // numerator roots of 1 - K21 G22 are the closed-loop poles
        NyquistResult nyq = nyquist(cl.open_loop, 1e-5 * lam, 1e5 * lam);
        if (nyq.min_distance <= 1e-4) continue;
        Verdict byroot = stable_by_roots(one_minus_l.num(), 1e-9);
        if (byroot == Verdict::Marginal) continue;
        ++compared;
        if (nyq.verdict == byroot) ++agreements;
    }
    CHECK(agreements == 100);
}

TEST_CASE("oracle agreement: Routh-Hurwitz vs roots on random quartics") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    int compared = 0, agreements = 0;
    while (compared < 1000) {
        double b3 = u(rng), b2 = u(rng), b1 = u(rng), b0 = u(rng);
        Polynomial p({cplx(b0), cplx(b1), cplx(b2), cplx(b3), cplx(1)});
        double max_re = -1e300;
        for (cplx r : p.roots()) max_re = std::max(max_re, r.real());
        if (std::abs(max_re) < 1e-9) continue;  // marginal band excluded
        Verdict rh = routh_hurwitz_quartic({cplx(b3), cplx(b2), cplx(b1), cplx(b0)});
        if (rh == Verdict::Marginal) continue;
        ++compared;
        Verdict byroot = max_re < 0 ? Verdict::Stable : Verdict::Unstable;
        if (rh == byroot) ++agreements;
    }
    CHECK(agreements == 1000);
}
