#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "qfan/transfer_matrix.hpp"

using namespace qfan;
using doctest::Approx;

namespace {
const cplx I(0.0, 1.0);

std::mt19937 rng(7);
cplx rand_c() {
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    return {d(rng), d(rng)};
}
Polynomial rand_poly(int deg) {
    std::vector<cplx> c;
    for (int i = 0; i <= deg; ++i) c.push_back(rand_c());
    c.back() += cplx(3.0);  // keep the leading coefficient away from zero
    return Polynomial(c);
}
}  // namespace

TEST_CASE("polynomial basics and normalization") {
    Polynomial p({cplx(1), cplx(2), cplx(3)});
    CHECK(p.degree() == 2);
    CHECK(p.eval(cplx(2)) == cplx(17));  // 1 + 4 + 12

    // trailing near-zero coefficients are trimmed
    Polynomial q({cplx(1), cplx(1), cplx(1e-20)});
    CHECK(q.degree() == 1);

    CHECK(Polynomial::zero().is_zero());
    CHECK(Polynomial::zero().degree() == -1);
    CHECK(Polynomial::s().eval(cplx(0, 3)) == cplx(0, 3));

    Polynomial sum = p + (-p);
    CHECK(sum.is_zero());
    Polynomial prod = Polynomial({cplx(1), cplx(1)}) * Polynomial({cplx(-1), cplx(1)});
    CHECK(prod.degree() == 2);
    CHECK(prod.coeff(0) == cplx(-1));
    CHECK(prod.coeff(1) == cplx(0));
    CHECK(prod.coeff(2) == cplx(1));
}

TEST_CASE("roots via companion matrix") {
    std::vector<cplx> want{cplx(-1), cplx(-2), cplx(0, -3)};
    Polynomial p = Polynomial::from_roots(cplx(2), want);
    CHECK(p.degree() == 3);
    auto got = p.roots();
    REQUIRE(got.size() == 3);
    for (cplx w : want) {
        double best = 1e9;
        for (cplx g : got) best = std::min(best, std::abs(g - w));
        CHECK(best < 1e-10);
    }
    CHECK_THROWS_AS(Polynomial::zero().roots(), std::domain_error);
}

TEST_CASE("para-conjugation on the imaginary axis") {
    for (int t = 0; t < 10; ++t) {
        Polynomial p = rand_poly(4);
        Polynomial pc = p.para_conjugate();
        for (double w : {0.1, 1.0, 7.3}) {
            cplx a = pc.eval(I * w), b = std::conj(p.eval(I * w));
            CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(b)));
        }
        // involution
        Polynomial back = pc.para_conjugate();
        for (int k = 0; k <= p.degree(); ++k)
            CHECK(std::abs(back.coeff(k) - p.coeff(k)) < 1e-14);
    }
}

TEST_CASE("all_real detection") {
    CHECK(Polynomial({cplx(1), cplx(-2), cplx(3)}).all_real());
    CHECK_FALSE(Polynomial({cplx(1), cplx(0, 1e-6)}).all_real());
    CHECK(Polynomial({cplx(1), cplx(0, 1e-6)}).all_real(1e-3));
}

TEST_CASE("rational arithmetic and pole guard") {
    Rational r(Polynomial({cplx(1)}), Polynomial({cplx(1), cplx(1)}));  // 1/(s+1)
    CHECK(r.eval(cplx(1)).real() == Approx(0.5));
    CHECK_THROWS_AS(r.eval(cplx(-1)), PoleError);
    try {
        r.eval(cplx(-1));
    } catch (const PoleError& e) {
        CHECK(std::abs(e.where - cplx(-1)) < 1e-12);
    }

    Rational a(Polynomial({cplx(1), cplx(1)}), Polynomial({cplx(2), cplx(1)}));
    Rational b(Polynomial({cplx(3)}), Polynomial({cplx(0), cplx(1)}));
    for (cplx s : {cplx(0.3, 0.7), cplx(-1.5, 2.0), cplx(5.0)}) {
        CHECK(std::abs((a + b).eval(s) - (a.eval(s) + b.eval(s))) < 1e-12);
        CHECK(std::abs((a - b).eval(s) - (a.eval(s) - b.eval(s))) < 1e-12);
        CHECK(std::abs((a * b).eval(s) - a.eval(s) * b.eval(s)) < 1e-12);
        CHECK(std::abs((a / b).eval(s) - a.eval(s) / b.eval(s)) < 1e-12);
    }
    CHECK(Rational::zero().is_zero());
    CHECK_THROWS(a / Rational::zero());
}

TEST_CASE("no silent pole-zero cancellation; explicit cancel reports pairs") {
    // (s+1)(s+2) / ((s+1)(s+3)) keeps the common factor
    Polynomial num = Polynomial::from_roots(cplx(1), {cplx(-1), cplx(-2)});
    Polynomial den = Polynomial::from_roots(cplx(1), {cplx(-1), cplx(-3)});
    Rational r(num, den);
    CHECK(r.degree_num() == 2);
    CHECK(r.degree_den() == 2);
    CancelReport rep;
    Rational c = r.cancel(1e-9, &rep);
    CHECK(c.degree_num() == 1);
    CHECK(c.degree_den() == 1);
    REQUIRE(rep.pairs.size() == 1);
    CHECK(std::abs(rep.pairs[0].first - cplx(-1)) < 1e-9);
    CHECK(std::abs(c.eval(cplx(0)) - 2.0 / 3.0) < 1e-12);
}

TEST_CASE("rational para-conjugation") {
    Rational r(rand_poly(3), rand_poly(2));
    Rational rc = r.para_conjugate();
    for (double w : {0.2, 1.7, 13.0})
        CHECK(std::abs(rc.eval(I * w) - std::conj(r.eval(I * w))) <
              1e-11 * std::max(1.0, std::abs(r.eval(I * w))));
}

TEST_CASE("transfer matrix plumbing") {
    TransferMatrix m(2, 2, {Port::Annihilation, Port::Creation},
                     {Port::Annihilation, Port::Creation});
    m.at(0, 0) = Rational::constant(cplx(2));
    m.at(0, 1) = Rational(Polynomial({cplx(0), cplx(1)}), Polynomial::one());  // s
    m.at(1, 0) = Rational::zero();
    m.at(1, 1) = Rational::constant(cplx(0, 1));
    Eigen::MatrixXcd v = m.eval(cplx(0, 3));
    CHECK(v(0, 0) == cplx(2));
    CHECK(v(0, 1) == cplx(0, 3));
    CHECK(std::abs(m.det2().eval(cplx(0, 3)) - cplx(2) * cplx(0, 1)) < 1e-14);

    Eigen::MatrixXd j = TransferMatrix::metric(m.sig_out());
    CHECK(j(0, 0) == 1.0);
    CHECK(j(1, 1) == -1.0);

    CHECK_THROWS_AS(TransferMatrix(2, 2, {Port::Annihilation}, {Port::Annihilation}),
                    std::invalid_argument);
}

TEST_CASE("properness bookkeeping") {
    Rational strict(Polynomial({cplx(1)}), Polynomial({cplx(1), cplx(1)}));
    Rational biproper(Polynomial({cplx(2), cplx(1)}), Polynomial({cplx(1), cplx(1)}));
    Rational improper(Polynomial({cplx(0), cplx(0), cplx(1)}), Polynomial({cplx(1), cplx(1)}));
    CHECK(strict.is_proper());
    CHECK(biproper.is_proper());
    CHECK_FALSE(improper.is_proper());
}
