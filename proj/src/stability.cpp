#include "qfan/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qfan {

namespace {
const cplx I(0.0, 1.0);

// signed angle swept about -1 going from a to b
double turn_about_minus_one(cplx a, cplx b) {
    cplx u = a + 1.0, v = b + 1.0;
    return std::arg(v / u);
}

double chord_turn(cplx a, cplx b, cplx c) {
    cplx u = b - a, v = c - b;
    double nu = std::abs(u), nv = std::abs(v);
    if (nu == 0.0 || nv == 0.0) return 0.0;
    return std::abs(std::arg(v / u));
}
}  // namespace

NyquistResult nyquist(const Rational& l, double omega_min, double omega_max) {
    if (!(omega_min > 0.0 && omega_max > omega_min))
        throw std::invalid_argument("nyquist requires 0 < omega_min < omega_max");
    if (!l.is_proper())
        throw std::invalid_argument("Nyquist precondition violated: L is improper");
    NyquistResult res;
    if (l.is_zero()) {
        res.samples = {{-omega_max, cplx(0)}, {omega_max, cplx(0)}};
        res.winding_number = 0;
        res.min_distance = 1.0;
        res.verdict = Verdict::Stable;
        return res;
    }
    if (l.degree_den() >= 1) {
        for (cplx p : l.poles())
            if (p.real() >= 0.0)
                throw std::invalid_argument(
                    "Nyquist precondition violated: open-loop pole with Re >= 0");
    }

    // signed frequencies, negative branch first so samples are ordered by omega
    std::vector<double> grid;
    const int n0 = 64;
    double lr = std::log(omega_max / omega_min);
    for (int i = n0 - 1; i >= 0; --i)
        grid.push_back(-omega_min * std::exp(lr * i / (n0 - 1)));
    for (int i = 0; i < n0; ++i)
        grid.push_back(omega_min * std::exp(lr * i / (n0 - 1)));

    auto value = [&](double w) { return l.eval(I * w); };
    std::vector<cplx> pts(grid.size());
    std::transform(grid.begin(), grid.end(), pts.begin(), value);

    const size_t max_pts = 20000;
    bool refined = true;
    while (refined && grid.size() < max_pts) {
        refined = false;
        std::vector<double> g2;
        std::vector<cplx> p2;
        g2.push_back(grid[0]);
        p2.push_back(pts[0]);
        for (size_t i = 1; i < grid.size(); ++i) {
            bool split = false;
            if (i + 1 < grid.size() && grid[i - 1] * grid[i + 1] > 0.0)
                split = chord_turn(pts[i - 1], pts[i], pts[i + 1]) > 0.2;
            if (i >= 2 && grid[i - 2] * grid[i] > 0.0)
                split = split || chord_turn(pts[i - 2], pts[i - 1], pts[i]) > 0.2;
            if (split && grid[i - 1] * grid[i] > 0.0) {
                double sign = grid[i] > 0.0 ? 1.0 : -1.0;
                double mid = sign * std::sqrt(grid[i - 1] * grid[i]);
                g2.push_back(mid);
                p2.push_back(value(mid));
                refined = true;
            }
            g2.push_back(grid[i]);
            p2.push_back(pts[i]);
        }
        grid.swap(g2);
        pts.swap(p2);
    }

    res.samples.reserve(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) res.samples.emplace_back(grid[i], pts[i]);

    // closure point of the large arc: L(inf) when biproper, origin otherwise
    cplx closure(0.0);
    if (l.degree_num() == l.degree_den())
        closure = l.num().leading() / l.den().leading();

    double total = 0.0;
    double mind = std::abs(closure + 1.0);
    for (size_t i = 1; i < pts.size(); ++i) {
        total += turn_about_minus_one(pts[i - 1], pts[i]);
        mind = std::min(mind, std::abs(pts[i - 1] + 1.0));
    }
    mind = std::min(mind, std::abs(pts.back() + 1.0));
    total += turn_about_minus_one(pts.back(), closure);
    total += turn_about_minus_one(closure, pts.front());
    res.winding_number = static_cast<int>(std::lround(total / (2.0 * M_PI)));
    res.min_distance = mind;
    if (res.winding_number != 0)
        res.verdict = Verdict::Unstable;
    else
        res.verdict = mind > 1e-6 ? Verdict::Stable : Verdict::Marginal;
    return res;
}

Verdict routh_hurwitz_quartic(const std::array<cplx, 4>& beta) {
    for (cplx b : beta)
        if (b.imag() != 0.0)
            throw std::invalid_argument("Routh-Hurwitz quartic requires real coefficients");
    const double b3 = beta[0].real(), b2 = beta[1].real(), b1 = beta[2].real(),
                 b0 = beta[3].real();
    double scale = std::max({1.0, std::abs(b3), std::abs(b2), std::abs(b1)});
    if (std::abs(b0) <= 1e-9 * scale) return Verdict::Marginal;
    if (!(b3 > 0.0)) return Verdict::Unstable;
    if (!((b2 * b3 - b1) / b3 > 0.0)) return Verdict::Unstable;
    if (!(b3 * b3 * b0 / (b1 - b2 * b3) + b1 > 0.0)) return Verdict::Unstable;
    if (!(b0 > 0.0)) return Verdict::Unstable;
    return Verdict::Stable;
}

Verdict stable_by_roots(const Polynomial& den, double margin) {
    if (den.degree() < 1)
        throw std::invalid_argument("stable_by_roots requires degree >= 1");
    double max_re = -std::numeric_limits<double>::infinity();
    for (cplx r : den.roots()) max_re = std::max(max_re, r.real());
    if (max_re < -margin) return Verdict::Stable;
    if (max_re <= margin) return Verdict::Marginal;
    return Verdict::Unstable;
}

}  // namespace qfan
