#include "qfan/components.hpp"

#include <cmath>

namespace qfan {

namespace {
const cplx I(0.0, 1.0);
}

TransferMatrix make_ndpa(const NdpaParams& p) {
    if (p.gamma <= 0.0 || p.lambda_ < 0.0)
        throw std::invalid_argument("NDPA requires gamma > 0 and lambda >= 0");
    const double g = p.gamma, l = p.lambda_;
    // d = (s + gamma/2)^2 - lambda^2
    Polynomial d({cplx(g * g / 4.0 - l * l), cplx(g), cplx(1.0)});
    Polynomial diag({cplx(-l * l - g * g / 4.0), cplx(0.0), cplx(1.0)});
    Polynomial off({cplx(-g * l)});
    TransferMatrix m(2, 2, {Port::Annihilation, Port::Creation},
                     {Port::Annihilation, Port::Creation});
    m.at(0, 0) = Rational(diag, d);
    m.at(1, 1) = Rational(diag, d);
    m.at(0, 1) = Rational(off, d);
    m.at(1, 0) = Rational(off, d);
    return m;
}

namespace {
void require_cavity(const CavityParams& p) {
    if (p.kappa1 < 0.0 || p.kappa2 < 0.0 || p.kappa1 + p.kappa2 <= 0.0)
        throw std::invalid_argument("cavity requires kappa1, kappa2 >= 0 and kappa1+kappa2 > 0");
}
}  // namespace

TransferMatrix make_cavity_transmission(const CavityParams& p) {
    require_cavity(p);
    const double k1 = p.kappa1, k2 = p.kappa2;
    const cplx id = I * p.delta;
    Polynomial d({cplx((k1 + k2) / 2.0) - id, cplx(1.0)});
    Polynomial n11({cplx((k2 - k1) / 2.0) - id, cplx(1.0)});
    Polynomial n22({cplx((k1 - k2) / 2.0) - id, cplx(1.0)});
    Polynomial off({cplx(-std::sqrt(k1 * k2))});
    TransferMatrix m(2, 2, {Port::Creation, Port::Creation}, {Port::Creation, Port::Creation});
    m.at(0, 0) = Rational(n11, d);
    m.at(1, 1) = Rational(n22, d);
    m.at(0, 1) = Rational(off, d);
    m.at(1, 0) = Rational(off, d);
    return m;
}

TransferMatrix make_cavity_reflection(const CavityParams& p) {
    require_cavity(p);
    const double k1 = p.kappa1, k2 = p.kappa2;
    const cplx id = I * p.delta;
    Polynomial d({cplx((k1 + k2) / 2.0) - id, cplx(1.0)});
    Polynomial adiag({cplx(-std::sqrt(k1 * k2))});
    Polynomial n12({cplx((k1 - k2) / 2.0) - id, cplx(1.0)});
    Polynomial n21({cplx((k2 - k1) / 2.0) - id, cplx(1.0)});
    TransferMatrix m(2, 2, {Port::Creation, Port::Creation}, {Port::Creation, Port::Creation});
    m.at(0, 0) = Rational(adiag, d);
    m.at(1, 1) = Rational(adiag, d);
    m.at(0, 1) = Rational(n12, d);
    m.at(1, 0) = Rational(n21, d);
    return m;
}

TransferMatrix make_beam_splitter(double T) {
    if (!(T > 0.0 && T <= 1.0))
        throw std::invalid_argument("beam splitter requires T in (0, 1]");
    const double t = std::sqrt(T), r = std::sqrt(1.0 - T);
    TransferMatrix m(2, 2, {Port::Creation, Port::Creation}, {Port::Creation, Port::Creation});
    m.at(0, 0) = Rational::constant(t);
    m.at(0, 1) = Rational::constant(-r);
    m.at(1, 0) = Rational::constant(r);
    m.at(1, 1) = Rational::constant(t);
    return m;
}

Rational make_phase_shifter(double phi) {
    return Rational::constant(std::exp(I * phi));
}

TransferMatrix make_butterworth_controller(const CavityParams& p) {
    require_cavity(p);
    const double k1 = p.kappa1, k2 = p.kappa2;
    const cplx id = I * p.delta;
    // left cavity: transmission with -i*delta in the denominator
    TransferMatrix kl = make_cavity_transmission(p);
    // right cavity: same cavity written with +i*delta
    Polynomial dr({cplx((k1 + k2) / 2.0) + id, cplx(1.0)});
    Polynomial r11({cplx((k1 - k2) / 2.0) + id, cplx(1.0)});
    Polynomial r22({cplx((k2 - k1) / 2.0) + id, cplx(1.0)});  // s - (k1-k2)/2 + i delta
    Polynomial roff({cplx(-std::sqrt(k1 * k2))});
    Rational kr[2][2] = {{Rational(r11, dr), Rational(roff, dr)},
                         {Rational(roff, dr), Rational(r22, dr)}};
    // K = K_r * [[0,-1],[1,0]] * K_l
    // (K_r J)_{i0} = kr[i][1], (K_r J)_{i1} = -kr[i][0]
    TransferMatrix m(2, 2, {Port::Creation, Port::Creation}, {Port::Creation, Port::Creation});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            m.at(i, j) = kr[i][1] * kl.at(0, j) - kr[i][0] * kl.at(1, j);
    return m;
}

std::vector<double> default_check_grid(double rate) {
    std::vector<double> w(64);
    for (int i = 0; i < 64; ++i)
        w[static_cast<size_t>(i)] = rate * std::pow(10.0, -3.0 + 6.0 * i / 63.0);
    return w;
}

RealizabilityReport check_amplifier_realizable(const TransferMatrix& g,
                                               const std::vector<double>& omegas,
                                               double tol) {
    if (g.rows() != 2 || g.cols() != 2)
        throw std::invalid_argument("amplifier realizability check requires a 2x2 system");
    RealizabilityReport rep;
    for (double w : omegas) {
        Eigen::MatrixXcd v = g.eval(I * w);
        rep.max_row1 = std::max(rep.max_row1,
                                std::abs(std::norm(v(0, 0)) - std::norm(v(0, 1)) - 1.0));
        rep.max_row2 = std::max(rep.max_row2,
                                std::abs(std::norm(v(1, 1)) - std::norm(v(1, 0)) - 1.0));
        rep.max_cross = std::max(
            rep.max_cross,
            std::abs(v(1, 0) * std::conj(v(0, 0)) - v(1, 1) * std::conj(v(0, 1))));
    }
    rep.max_violation = std::max({rep.max_row1, rep.max_row2, rep.max_cross});
    rep.pass = rep.max_violation < tol;
    return rep;
}

UnitarityReport check_passive_unitary(const TransferMatrix& k,
                                      const std::vector<double>& omegas,
                                      double tol) {
    if (k.rows() != k.cols())
        throw std::invalid_argument("unitarity check requires a square system");
    UnitarityReport rep;
    Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(k.rows(), k.cols());
    for (double w : omegas) {
        Eigen::MatrixXcd v = k.eval(I * w);
        rep.max_violation = std::max(rep.max_violation,
                                     (v * v.adjoint() - eye).cwiseAbs().maxCoeff());
    }
    rep.pass = rep.max_violation < tol;
    return rep;
}

BogoliubovReport check_bogoliubov(const TransferMatrix& g,
                                  const std::vector<double>& omegas,
                                  double tol) {
    if (g.rows() != g.cols())
        throw std::invalid_argument("Bogoliubov check requires a square system");
    BogoliubovReport rep;
    Eigen::MatrixXd jin = TransferMatrix::metric(g.sig_in());
    Eigen::MatrixXd jout = TransferMatrix::metric(g.sig_out());
    for (double w : omegas) {
        Eigen::MatrixXcd v = g.eval(I * w);
        rep.max_violation = std::max(
            rep.max_violation, (v * jin * v.adjoint() - jout).cwiseAbs().maxCoeff());
    }
    rep.pass = rep.max_violation < tol;
    return rep;
}

}  // namespace qfan
