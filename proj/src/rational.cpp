#include "qfan/rational.hpp"

#include <algorithm>
#include <cmath>

namespace qfan {

Rational::Rational(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("rational function with zero denominator");
}

cplx Rational::eval(cplx s) const {
    cplx d = den_.eval(s);
    // scale-aware pole guard
    double scale = std::max(den_.max_abs_coeff(), 1e-300);
    if (std::abs(d) < 1e-300 || std::abs(d) < 1e-250 * scale) throw PoleError(s);
    return num_.eval(s) / d;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_.is_zero()) throw std::invalid_argument("division by the zero rational function");
    return Rational(num_ * o.den_, den_ * o.num_);
}

Rational Rational::para_conjugate() const {
    return Rational(num_.para_conjugate(), den_.para_conjugate());
}

Rational Rational::cancel(double tol, CancelReport* report) const {
    if (tol <= 0.0) throw std::invalid_argument("cancel() requires tol > 0");
    if (num_.is_zero() || num_.degree() == 0 || den_.degree() == 0) return *this;
    std::vector<cplx> zs = zeros(), ps = poles();
    // characteristic scale of the root set
    double scale = 1.0;
    for (const auto& r : zs) scale = std::max(scale, std::abs(r));
    for (const auto& r : ps) scale = std::max(scale, std::abs(r));
    std::vector<bool> zdead(zs.size(), false), pdead(ps.size(), false);
    CancelReport rep;
    for (size_t i = 0; i < zs.size(); ++i) {
        double best = tol * scale;
        int match = -1;
        for (size_t j = 0; j < ps.size(); ++j) {
            if (pdead[j]) continue;
            double d = std::abs(zs[i] - ps[j]);
            if (d <= best) {
                best = d;
                match = static_cast<int>(j);
            }
        }
        if (match >= 0) {
            zdead[i] = true;
            pdead[static_cast<size_t>(match)] = true;
            rep.pairs.emplace_back(zs[i], ps[static_cast<size_t>(match)]);
        }
    }
    if (rep.pairs.empty()) {
        if (report) *report = rep;
        return *this;
    }
    std::vector<cplx> zkeep, pkeep;
    for (size_t i = 0; i < zs.size(); ++i)
        if (!zdead[i]) zkeep.push_back(zs[i]);
    for (size_t j = 0; j < ps.size(); ++j)
        if (!pdead[j]) pkeep.push_back(ps[j]);
    if (report) *report = rep;
    return Rational(Polynomial::from_roots(num_.leading(), zkeep),
                    Polynomial::from_roots(den_.leading(), pkeep));
}

}  // namespace qfan
