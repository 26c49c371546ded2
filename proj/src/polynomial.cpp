#include "qfan/polynomial.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace qfan {

namespace {
// magnitude estimate good enough for trimming / scale decisions
double qabs(__float128 re, __float128 im) {
    return std::hypot(static_cast<double>(re), static_cast<double>(im));
}
}  // namespace

Polynomial::Polynomial(std::vector<cplx> coeffs) {
    c_.reserve(coeffs.size());
    for (const auto& c : coeffs) c_.push_back({c.real(), c.imag()});
    normalize(1e-14);
}

Polynomial::Polynomial(std::initializer_list<cplx> coeffs) {
    c_.reserve(coeffs.size());
    for (const auto& c : coeffs) c_.push_back({c.real(), c.imag()});
    normalize(1e-14);
}

Polynomial::Polynomial(std::vector<qc> coeffs, quad_tag) : c_(std::move(coeffs)) {
    normalize(1e-30);
}

Polynomial Polynomial::from_coeffs(std::vector<cplx> coeffs, double rel_tol) {
    if (rel_tol < 0.0) throw std::invalid_argument("from_coeffs requires rel_tol >= 0");
    Polynomial p;
    p.c_.reserve(coeffs.size());
    for (const auto& c : coeffs) p.c_.push_back({c.real(), c.imag()});
    p.normalize(rel_tol);
    return p;
}

void Polynomial::normalize(double rel_tol) {
    double scale = 0.0;
    for (const auto& c : c_) scale = std::max(scale, qabs(c.re, c.im));
    if (scale == 0.0) {
        c_.clear();
        return;
    }
    const double tol = rel_tol * scale;
    while (!c_.empty() && qabs(c_.back().re, c_.back().im) <= tol) c_.pop_back();
}

std::vector<cplx> Polynomial::coeffs() const {
    std::vector<cplx> out;
    out.reserve(c_.size());
    for (const auto& c : c_)
        out.emplace_back(static_cast<double>(c.re), static_cast<double>(c.im));
    return out;
}

cplx Polynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return cplx(0);
    const qc& c = c_[static_cast<size_t>(k)];
    return {static_cast<double>(c.re), static_cast<double>(c.im)};
}

cplx Polynomial::leading() const {
    if (is_zero()) return cplx(0);
    return {static_cast<double>(c_.back().re), static_cast<double>(c_.back().im)};
}

double Polynomial::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : c_) m = std::max(m, qabs(c.re, c.im));
    return m;
}

cplx Polynomial::eval(cplx s) const {
    __float128 sr = s.real(), si = s.imag();
    __float128 ar = 0, ai = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        __float128 tr = ar * sr - ai * si + it->re;
        ai = ar * si + ai * sr + it->im;
        ar = tr;
    }
    return {static_cast<double>(ar), static_cast<double>(ai)};
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<qc> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) {
        r[i].re += o.c_[i].re;
        r[i].im += o.c_[i].im;
    }
    return Polynomial(std::move(r), quad_tag{});
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial();
    std::vector<qc> r(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) {
            r[i + j].re += c_[i].re * o.c_[j].re - c_[i].im * o.c_[j].im;
            r[i + j].im += c_[i].re * o.c_[j].im + c_[i].im * o.c_[j].re;
        }
    return Polynomial(std::move(r), quad_tag{});
}

Polynomial Polynomial::operator*(cplx k) const {
    __float128 kr = k.real(), ki = k.imag();
    std::vector<qc> r(c_);
    for (auto& c : r) {
        __float128 re = c.re * kr - c.im * ki;
        c.im = c.re * ki + c.im * kr;
        c.re = re;
    }
    return Polynomial(std::move(r), quad_tag{});
}

bool Polynomial::all_real(double tol) const {
    double scale = std::max(max_abs_coeff(), 1e-300);
    for (const auto& c : c_)
        if (std::abs(static_cast<double>(c.im)) > tol * scale) return false;
    return true;
}

Polynomial Polynomial::para_conjugate() const {
    std::vector<qc> r(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) {
        r[k].re = (k % 2 == 1) ? -c_[k].re : c_[k].re;
        r[k].im = (k % 2 == 1) ? c_[k].im : -c_[k].im;
    }
    return Polynomial(std::move(r), quad_tag{});
}

Polynomial Polynomial::from_roots(cplx leading, const std::vector<cplx>& roots) {
    Polynomial p = Polynomial::constant(leading);
    for (const auto& r : roots) p = p * Polynomial({-r, cplx(1.0)});
    return p;
}

std::vector<cplx> Polynomial::roots() const {
    if (degree() < 0) throw std::domain_error("undefined roots of the zero polynomial");
    const int n = degree();
    if (n == 0) return {};
    // companion matrix of the monic polynomial
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        __float128 d = c_.back().re * c_.back().re + c_.back().im * c_.back().im;
        const qc& ci = c_[static_cast<size_t>(i)];
        comp(i, n - 1) = -cplx(static_cast<double>((ci.re * c_.back().re + ci.im * c_.back().im) / d),
                               static_cast<double>((ci.im * c_.back().re - ci.re * c_.back().im) / d));
        if (i >= 1) comp(i, i - 1) = cplx(1.0);
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);
    std::vector<cplx> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(out.begin(), out.end(), [](const cplx& a, const cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

}  // namespace qfan
