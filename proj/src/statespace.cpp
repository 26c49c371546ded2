#include "qfan/statespace.hpp"

#include <algorithm>
#include <random>
#include <set>

#include <unsupported/Eigen/MatrixFunctions>

namespace qfan {

namespace {
const cplx I(0.0, 1.0);
}

StateSpaceModel make_model(Eigen::MatrixXcd a, Eigen::MatrixXcd b, Eigen::MatrixXcd c,
                           Eigen::MatrixXcd d, std::vector<std::string> states,
                           std::vector<std::string> inputs, std::vector<std::string> outputs,
                           std::vector<Port> in_sig, std::vector<Port> out_sig) {
    const auto n = a.rows(), m = b.cols(), p = c.rows();
    if (a.cols() != n || b.rows() != n || c.cols() != n || d.rows() != p || d.cols() != m)
        throw std::invalid_argument("state-space dimensions inconsistent");
    if (static_cast<Eigen::Index>(states.size()) != n ||
        static_cast<Eigen::Index>(inputs.size()) != m ||
        static_cast<Eigen::Index>(outputs.size()) != p)
        throw std::invalid_argument("state-space label counts inconsistent");
    std::set<std::string> seen(states.begin(), states.end());
    seen.insert(inputs.begin(), inputs.end());
    seen.insert(outputs.begin(), outputs.end());
    if (seen.size() != states.size() + inputs.size() + outputs.size())
        throw std::invalid_argument("state-space labels must be unique");
    if (in_sig.empty()) in_sig.assign(static_cast<size_t>(m), Port::Annihilation);
    if (out_sig.empty()) out_sig.assign(static_cast<size_t>(p), Port::Annihilation);
    if (static_cast<Eigen::Index>(in_sig.size()) != m ||
        static_cast<Eigen::Index>(out_sig.size()) != p)
        throw std::invalid_argument("state-space port signatures inconsistent");
    return {std::move(a), std::move(b), std::move(c), std::move(d),
            std::move(states), std::move(inputs), std::move(outputs),
            std::move(in_sig), std::move(out_sig)};
}

Eigen::MatrixXcd freq_response(const StateSpaceModel& m, double omega) {
    const auto n = m.A.rows();
    if (m.B.cols() == 0) return m.D;
    Eigen::MatrixXcd shifted = I * omega * Eigen::MatrixXcd::Identity(n, n) - m.A;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
    if (lu.rcond() < 1e-13) throw PoleError(I * omega);
    return m.D + m.C * lu.solve(m.B);
}

TransferMatrix to_transfer_matrix(const StateSpaceModel& m) {
    const int n = static_cast<int>(m.A.rows());
    const int ni = static_cast<int>(m.B.cols());
    const int no = static_cast<int>(m.C.rows());
    if (n > 16) throw std::invalid_argument("to_transfer_matrix limited to n <= 16 states");

    // Faddeev-LeVerrier: (sI - A)^{-1} = sum_k M_k s^{n-1-k} / p(s)
    std::vector<Eigen::MatrixXcd> mk;
    std::vector<cplx> cs(static_cast<size_t>(n) + 1);
    cs[0] = 1.0;
    Eigen::MatrixXcd cur = Eigen::MatrixXcd::Identity(n, n);
    for (int k = 1; k <= n; ++k) {
        mk.push_back(cur);
        Eigen::MatrixXcd am = m.A * cur;
        cs[static_cast<size_t>(k)] = -am.trace() / static_cast<double>(k);
        cur = am + cs[static_cast<size_t>(k)] * Eigen::MatrixXcd::Identity(n, n);
    }
    // characteristic polynomial, ascending; the coefficients legitimately
    // span |A|^n decades for stiff systems, so no relative trim is applied
    std::vector<cplx> den(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) den[static_cast<size_t>(n - k)] = cs[static_cast<size_t>(k)];
    Polynomial p = Polynomial::from_coeffs(den, 0.0);

    // trailing-noise trim for the numerators, weighted by the natural
    // frequency scale of A so terms negligible on the system's own band
    // (and only those) are dropped
    const double alpha = std::max(1.0, m.A.cwiseAbs().maxCoeff());
    auto weighted_trim = [alpha](std::vector<cplx> v) {
        double imp = 0.0;
        double ak = 1.0;
        for (const auto& c : v) {
            imp = std::max(imp, std::abs(c) * ak);
            ak *= alpha;
        }
        ak /= alpha;
        while (!v.empty() && std::abs(v.back()) * ak <= 1e-12 * imp) {
            v.pop_back();
            ak /= alpha;
        }
        return Polynomial::from_coeffs(std::move(v), 0.0);
    };

    TransferMatrix tm(no, ni, m.out_sig, m.in_sig);
    for (int i = 0; i < no; ++i)
        for (int j = 0; j < ni; ++j) {
            std::vector<cplx> num(static_cast<size_t>(n), cplx(0));
            for (int k = 0; k < n; ++k) {
                cplx v = (m.C.row(i) * mk[static_cast<size_t>(k)] * m.B.col(j)).value();
                num[static_cast<size_t>(n - 1 - k)] = v;
            }
            Polynomial q = weighted_trim(std::move(num));
            tm.at(i, j) = Rational(q, p) + Rational::constant(m.D(i, j));
        }

    // self-check against the direct resolvent at pseudo-random frequencies
    if (ni > 0) {
        double scale = std::max(1.0, m.A.cwiseAbs().maxCoeff());
        std::mt19937 rng(12345);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        int checked = 0;
        while (checked < 8) {
            double w = scale * std::pow(10.0, dist(rng));
            Eigen::MatrixXcd direct;
            try {
                direct = freq_response(m, w);
            } catch (const PoleError&) {
                continue;
            }
            Eigen::MatrixXcd sym = tm.eval(I * w);
            double ref = std::max(1e-300, direct.cwiseAbs().maxCoeff());
            if ((sym - direct).cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, ref))
                throw std::runtime_error(
                    "to_transfer_matrix internal consistency check failed");
            ++checked;
        }
    }
    return tm;
}

void LoopCavityParams::validate() const {
    if (!(gamma > 0.0 && lambda_ > 0.0 && kappa > 0.0 && L4 > 0.0))
        throw std::invalid_argument("loop-cavity parameters must be positive");
}

IntegratorModel build_integrator_model(const LoopCavityParams& p) {
    p.validate();
    const double g = p.gamma, l = p.lambda_, k = p.kappa;
    const double g24 = p.g24(), g34 = p.g34();
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(4, 4);
    a(0, 0) = -g / 2.0;
    a(0, 1) = l;
    a(1, 0) = l;
    a(1, 3) = I * g24;
    a(2, 2) = -k / 2.0;
    a(2, 3) = I * g34;
    a(3, 1) = I * g24;
    a(3, 2) = I * g34;
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(4, 2);
    b(0, 0) = -std::sqrt(g);
    b(2, 1) = -std::sqrt(k);
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(2, 4);
    c(0, 0) = std::sqrt(g);
    c(1, 2) = std::sqrt(k);
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Identity(2, 2);
    IntegratorModel im;
    im.model = make_model(a, b, c, d, {"a1", "a2d", "a3d", "a4d"}, {"b1", "b4d"},
                          {"b1out", "b3dout"},
                          {Port::Annihilation, Port::Creation},
                          {Port::Annihilation, Port::Creation});
    const double s2 = g24 * g24 + g34 * g34;
    // exact coefficient formulas spanning many decades: no relative trim
    Polynomial den = Polynomial::from_coeffs(
        {cplx(g * k * g24 * g24 / 4.0 - l * l * g34 * g34),
         cplx((k * g24 * g24 + g * g24 * g24 + g * g34 * g34 - k * l * l) / 2.0),
         cplx(s2 + g * k / 4.0 - l * l), cplx((g + k) / 2.0), cplx(1.0)},
        0.0);
    Polynomial num({cplx(std::sqrt(g * k) * l * g24 * g34)});
    im.g21_analytic = Rational(num, den);
    return im;
}

StateSpaceModel build_self_oscillator(const LoopCavityParams& p, double delta) {
    p.validate();
    const double g = p.gamma, l = p.lambda_, k = p.kappa;
    const double g24 = p.g24(), g34 = p.g34();
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(4, 4);
    a(0, 0) = -g / 2.0;
    a(0, 1) = l;
    a(1, 0) = l;
    a(1, 3) = I * g24;
    a(2, 2) = cplx(-k / 2.0) + I * delta;
    a(2, 3) = I * g34;
    a(3, 1) = I * g24;
    a(3, 2) = I * g34;
    Eigen::MatrixXcd b(4, 0);
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(1, 4);
    c(0, 2) = std::sqrt(k);
    Eigen::MatrixXcd d(1, 0);
    return make_model(a, b, c, d, {"a1", "a2d", "a3d", "a4d"}, {}, {"b3dout"}, {},
                      {Port::Creation});
}

PhaseFilterModel build_phase_filter(const LoopCavityParams& p) {
    p.validate();
    const double g = p.gamma, l = p.lambda_;
    const double g24 = p.g24(), g34 = p.g34();
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(4, 4);
    a(0, 0) = -g / 2.0;
    a(0, 1) = l;
    a(1, 0) = l;
    a(1, 3) = I * g24;
    a(2, 3) = I * g34;  // control mode: loop coupling only, no decay or input
    a(3, 1) = I * g24;
    a(3, 2) = I * g34;
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(4, 1);
    b(0, 0) = -std::sqrt(g);
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(1, 4);
    c(0, 0) = std::sqrt(g);
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Identity(1, 1);
    PhaseFilterModel pf;
    pf.model = make_model(a, b, c, d, {"a1", "a2d", "a3d", "a4d"}, {"bin"}, {"bout"});
    const double s2 = g24 * g24 + g34 * g34;
    // exact coefficient formulas spanning many decades: no relative trim
    Polynomial den = Polynomial::from_coeffs(
        {cplx(-l * l * g34 * g34), cplx(g / 2.0 * s2), cplx(s2 - l * l),
         cplx(g / 2.0), cplx(1.0)},
        0.0);
    Polynomial num = Polynomial::from_coeffs(
        {cplx(-l * l * g34 * g34), cplx(-g / 2.0 * s2), cplx(s2 - l * l),
         cplx(-g / 2.0), cplx(1.0)},
        0.0);
    pf.z = Rational(num, den);
    return pf;
}

Trajectory simulate_mean(const StateSpaceModel& m, const Eigen::VectorXcd& x0,
                         const std::vector<double>& t_grid) {
    if (x0.size() != m.A.rows())
        throw std::invalid_argument("initial state dimension mismatch");
    if (!std::is_sorted(t_grid.begin(), t_grid.end()))
        throw std::invalid_argument("time grid must be increasing");
    const double anorm = m.A.cwiseAbs().maxCoeff() * static_cast<double>(m.A.rows());
    Trajectory tr;
    Eigen::VectorXcd x = x0;
    double prev = 0.0;
    for (double t : t_grid) {
        double dt = t - prev;
        if (anorm * dt > 50.0)
            throw std::runtime_error("simulation step too large for the exponential guard");
        if (dt != 0.0) x = (m.A * dt).exp() * x;
        prev = t;
        tr.t.push_back(t);
        tr.x.push_back(x);
        tr.y.push_back(m.C * x);
    }
    return tr;
}

std::pair<double, double> qubit_readout_mean(double gamma_qubit, double kappa, double t,
                                             int sigma_x) {
    if (!(gamma_qubit > 0.0 && kappa > 0.0 && t >= 0.0) ||
        (sigma_x != 1 && sigma_x != -1))
        throw std::invalid_argument("qubit readout requires Gamma, kappa > 0, t >= 0, sx = +-1");
    const double e = std::exp(-gamma_qubit * t / 2.0);
    const double q1 = std::sqrt(gamma_qubit / 2.0) * e * sigma_x;
    const double q3 = kappa * std::sqrt(2.0 / gamma_qubit) * (1.0 - e) * sigma_x;
    return {q1, q3};
}

}  // namespace qfan
