#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qfan/polynomial.hpp"

namespace qfan {

/// Thrown when a rational function is evaluated at (numerically) a pole.
struct PoleError : std::runtime_error {
    cplx where;
    explicit PoleError(cplx s)
        : std::runtime_error("evaluation at a pole"), where(s) {}
};

struct CancelReport {
    std::vector<std::pair<cplx, cplx>> pairs;  // (zero, pole) pairs removed
};

/**
 * @brief Ratio of two complex-coefficient polynomials in s.
 *
 * No silent pole-zero cancellation is ever performed: near-cancelling pairs
 * produced by high-gain limits are kept so that conditioning issues remain
 * visible. Use cancel() to remove them explicitly.
 */
class Rational {
   public:
    Rational() : num_(), den_(Polynomial::one()) {}
    Rational(Polynomial num, Polynomial den);
    static Rational constant(cplx c) { return Rational(Polynomial::constant(c), Polynomial::one()); }
    static Rational zero() { return Rational(); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    cplx eval(cplx s) const;

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational operator-() const { return Rational(-num_, den_); }
    Rational operator*(cplx k) const { return Rational(num_ * k, den_); }

    std::vector<cplx> zeros() const { return num_.roots(); }
    std::vector<cplx> poles() const { return den_.roots(); }

    /// r~ with conjugated coefficients evaluated at -s; r~(iw) = conj(r(iw)).
    Rational para_conjugate() const;

    /// Removes (zero, pole) pairs closer than tol * scale; reports what went.
    Rational cancel(double tol, CancelReport* report = nullptr) const;

    int degree_num() const { return num_.degree(); }
    int degree_den() const { return den_.degree(); }
    bool is_proper() const { return degree_num() <= degree_den(); }

   private:
    Polynomial num_, den_;
};

inline Rational operator*(cplx k, const Rational& r) { return r * k; }

}  // namespace qfan
