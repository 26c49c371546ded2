#include "qfan/feedback.hpp"

#include <cmath>
#include <limits>

namespace qfan {

namespace {
const cplx I(0.0, 1.0);

void require_amp(const TransferMatrix& g) {
    if (g.rows() != 2 || g.cols() != 2 || g.sig_out()[0] != Port::Annihilation ||
        g.sig_out()[1] != Port::Creation)
        throw std::invalid_argument("amplifier must be 2x2 with (annihilation, creation) ports");
}

void require_passive2(const TransferMatrix& k) {
    if (k.rows() != 2 || k.cols() != 2)
        throw std::invalid_argument("controller must be 2x2");
}
}  // namespace

ClosedLoop close_loop(const TransferMatrix& g, const TransferMatrix& k) {
    require_amp(g);
    require_passive2(k);
    Rational detg = g.det2(), detk = k.det2();
    Rational den = Rational::constant(1.0) - k.at(1, 0) * g.at(1, 1);
    if (den.num().is_zero())
        throw std::runtime_error("singular interconnection: 1 - K21 G22 vanishes identically");
    ClosedLoop cl;
    cl.gfb = TransferMatrix(2, 2, g.sig_out(), g.sig_in());
    cl.gfb.at(0, 0) = (g.at(0, 0) - k.at(1, 0) * detg) / den;
    cl.gfb.at(0, 1) = g.at(0, 1) * k.at(1, 1) / den;
    cl.gfb.at(1, 0) = g.at(1, 0) * k.at(0, 0) / den;
    cl.gfb.at(1, 1) = (k.at(0, 1) + g.at(1, 1) * detk) / den;
    cl.open_loop = -(k.at(1, 0) * g.at(1, 1));
    cl.provenance = "close_loop(amplifier, controller)";
    return cl;
}

TransferMatrix ideal_closed_loop(const TransferMatrix& k) {
    require_passive2(k);
    if (k.at(1, 0).is_zero())
        throw std::invalid_argument("ideal closed loop undefined: K21 identically zero");
    Rational m = -(Rational::constant(1.0) / k.at(1, 0));
    TransferMatrix g(2, 2, {Port::Annihilation, Port::Creation},
                     {Port::Annihilation, Port::Creation});
    g.at(0, 0) = m;
    g.at(0, 1) = m * k.at(1, 1);
    g.at(1, 0) = m * k.at(0, 0);
    g.at(1, 1) = m * k.det2();
    return g;
}

ConvergenceReport high_gain_convergence(
    const std::function<TransferMatrix(double)>& family,
    const TransferMatrix& k, const std::vector<cplx>& s_samples,
    const std::vector<double>& eps_values) {
    ConvergenceReport rep;
    TransferMatrix ideal = ideal_closed_loop(k);
    double prop_min = 0.0, prop_max = 0.0;
    bool any_domain = false, any_gain = false;
    for (double eps : eps_values) {
        TransferMatrix g = family(eps);
        TransferMatrix fb = close_loop(g, k).gfb;
        for (cplx s : s_samples) {
            ConvergenceSample cs;
            cs.eps = eps;
            cs.s = s;
            Eigen::MatrixXcd diff = fb.eval(s) - ideal.eval(s);
            cs.err = diff.cwiseAbs().maxCoeff();
            double g11 = std::abs(g.at(0, 0).eval(s));
            cs.inv_g11 = g11 > 0.0 ? 1.0 / g11 : std::numeric_limits<double>::infinity();
            cs.in_domain = g11 > 10.0;
            if (g11 > 2.0) any_gain = true;
            if (cs.in_domain) {
                double prop = cs.err * g11;
                if (!any_domain) {
                    prop_min = prop_max = prop;
                    any_domain = true;
                } else {
                    prop_min = std::min(prop_min, prop);
                    prop_max = std::max(prop_max, prop);
                }
            }
            rep.samples.push_back(cs);
        }
    }
    rep.proportionality_spread = any_domain && prop_min > 0.0 ? prop_max / prop_min : 0.0;
    rep.gain_ceiling = !any_gain;
    return rep;
}

TransferMatrix open_loop_system(const TransferMatrix& g, const TransferMatrix& k) {
    require_amp(g);
    require_passive2(k);
    TransferMatrix m(3, 3,
                     {Port::Annihilation, Port::Creation, Port::Creation},
                     {Port::Annihilation, Port::Creation, Port::Creation});
    m.at(0, 0) = g.at(0, 0);
    m.at(0, 1) = g.at(0, 1);
    m.at(0, 2) = Rational::zero();
    m.at(1, 0) = k.at(0, 0) * g.at(1, 0);
    m.at(1, 1) = k.at(0, 0) * g.at(1, 1);
    m.at(1, 2) = k.at(0, 1);
    m.at(2, 0) = k.at(1, 0) * g.at(1, 0);
    m.at(2, 1) = k.at(1, 0) * g.at(1, 1);
    m.at(2, 2) = k.at(1, 1);
    return m;
}

ClosedLoop nonreciprocal_close(const TransferMatrix& g, const TransferMatrix& gbar,
                               const TransferMatrix& k) {
    require_amp(g);
    require_amp(gbar);
    require_passive2(k);
    Rational detg = g.det2(), detgb = gbar.det2(), detk = k.det2();
    Rational one = Rational::constant(1.0);
    Rational dh = one - gbar.at(1, 0) * g.at(1, 0) * k.at(1, 1);
    if (dh.num().is_zero())
        throw std::runtime_error("singular interconnection: 1 - Gbar21 G21 K22 vanishes");
    // H maps (b1^dag, b2, b3) -> (b1~, b2~^dag, b3~).
    // Note the +Gbar21 K22 det G term in H11: required for the composed loop
    // to preserve commutation relations exactly (checked against a direct
    // network solve).
    Rational h11 = (g.at(0, 1) + gbar.at(1, 0) * k.at(1, 1) * detg) / dh;
    Rational h12 = g.at(0, 0) * gbar.at(1, 1) * k.at(1, 1) / dh;
    Rational h13 = g.at(0, 0) * k.at(1, 0) / dh;
    Rational h21 = gbar.at(0, 0) * g.at(1, 1) / dh;
    Rational h22 = (gbar.at(0, 1) + g.at(1, 0) * k.at(1, 1) * detgb) / dh;
    Rational h23 = gbar.at(0, 0) * g.at(1, 0) * k.at(1, 0) / dh;
    Rational h31 = k.at(0, 1) * gbar.at(1, 0) * g.at(1, 1) / dh;
    Rational h32 = k.at(0, 1) * gbar.at(1, 1) / dh;
    Rational h33 = (k.at(0, 0) - gbar.at(1, 0) * g.at(1, 0) * detk) / dh;
    // reverse path carries the para-conjugated controller
    Rational k11s = k.at(0, 0).para_conjugate();
    Rational k12s = k.at(0, 1).para_conjugate();
    Rational k21s = k.at(1, 0).para_conjugate();
    Rational k22s = k.at(1, 1).para_conjugate();
    Rational d2 = one - h12 * k22s;
    if (d2.num().is_zero())
        throw std::runtime_error("singular interconnection: 1 - H12 K22~ vanishes");
    ClosedLoop cl;
    cl.gfb = TransferMatrix(3, 3,
                            {Port::Creation, Port::Annihilation, Port::Annihilation},
                            {Port::Creation, Port::Annihilation, Port::Annihilation});
    cl.gfb.at(0, 0) = (h21 + (h11 * h22 - h12 * h21) * k22s) / d2;
    cl.gfb.at(0, 1) = (h23 + (h13 * h22 - h12 * h23) * k22s) / d2;
    cl.gfb.at(0, 2) = h22 * k12s / d2;
    cl.gfb.at(1, 0) = (h31 + (h11 * h32 - h12 * h31) * k22s) / d2;
    cl.gfb.at(1, 1) = (h33 + (h13 * h32 - h12 * h33) * k22s) / d2;
    cl.gfb.at(1, 2) = h32 * k12s / d2;
    cl.gfb.at(2, 0) = h11 * k21s / d2;
    cl.gfb.at(2, 1) = h13 * k21s / d2;
    cl.gfb.at(2, 2) = (k11s + h12 * (k12s * k21s - k11s * k22s)) / d2;
    cl.open_loop = -(gbar.at(1, 0) * g.at(1, 0) * k.at(1, 1));
    cl.provenance = "nonreciprocal_close(forward amp, return amp, controller)";
    return cl;
}

TransferMatrix nonreciprocal_ideal(const TransferMatrix& k) {
    require_passive2(k);
    if (k.at(1, 1).is_zero())
        throw std::invalid_argument("non-reciprocal ideal limit undefined: K22 identically zero");
    Rational one = Rational::constant(1.0);
    Rational k22 = k.at(1, 1);
    TransferMatrix m(3, 3,
                     {Port::Creation, Port::Annihilation, Port::Annihilation},
                     {Port::Creation, Port::Annihilation, Port::Annihilation});
    m.at(0, 0) = -(one / k22);
    m.at(0, 1) = -(k.at(1, 0) / k22);
    m.at(0, 2) = Rational::zero();
    m.at(1, 0) = -(k.at(0, 1) / k22);
    m.at(1, 1) = k.det2() / k22;
    m.at(1, 2) = Rational::zero();
    m.at(2, 0) = Rational::zero();
    m.at(2, 1) = Rational::zero();
    // (K11~ + det(K^dag)~) / (1 + K22~); det(K^dag)(s) para-conjugates det K
    m.at(2, 2) = (k.at(0, 0).para_conjugate() + k.det2().para_conjugate()) /
                 (one + k.at(1, 1).para_conjugate());
    return m;
}

}  // namespace qfan
