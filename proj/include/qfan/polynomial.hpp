#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace qfan {

using cplx = std::complex<double>;

/**
 * @brief Polynomial in the Laplace variable s with complex coefficients.
 *
 * Coefficients are stored ascending in degree and held in quad precision
 * internally: repeated products and sums (as produced by network
 * composition) can reach degrees where the evaluation condition number
 * exceeds 1/eps(double), so both the arithmetic and Horner evaluation run
 * in extended precision and only the final results are rounded to double.
 *
 * The representation is kept normalized so degree() always refers to a
 * nonzero leading coefficient (the zero polynomial is the empty list).
 * Coefficient lists supplied through the public constructors are assumed
 * to carry double-precision noise and have trailing coefficients with
 * magnitude <= 1e-14 * max|coeff| trimmed; from_coeffs() takes an explicit
 * trim tolerance instead (0 keeps everything but exact zeros, for stiff
 * coefficient sets that genuinely span many decades). Results of the
 * internal extended-precision arithmetic are trimmed at 1e-30 * max|coeff|,
 * which removes exact-cancellation residue without discarding genuinely
 * small leading coefficients.
 */
class Polynomial {
   public:
    Polynomial() = default;
    explicit Polynomial(std::vector<cplx> coeffs);
    Polynomial(std::initializer_list<cplx> coeffs);

    static Polynomial zero() { return Polynomial(); }
    static Polynomial one() { return Polynomial({cplx(1.0, 0.0)}); }
    static Polynomial s() { return Polynomial({cplx(0.0, 0.0), cplx(1.0, 0.0)}); }
    static Polynomial constant(cplx c) { return Polynomial({c}); }
    // leading * prod_i (s - r_i)
    static Polynomial from_roots(cplx leading, const std::vector<cplx>& roots);
    /// Construction with an explicit relative trailing-trim tolerance.
    static Polynomial from_coeffs(std::vector<cplx> coeffs, double rel_tol);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return is_zero() ? -1 : static_cast<int>(c_.size()) - 1; }
    std::vector<cplx> coeffs() const;  // rounded to double
    cplx coeff(int k) const;           // 0 outside stored range
    cplx leading() const;
    double max_abs_coeff() const;

    cplx eval(cplx s) const;  // Horner, in extended precision

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(cplx k) const;
    Polynomial operator-() const { return (*this) * cplx(-1.0); }

    bool all_real(double tol = 0.0) const;

    /// Coefficients conjugated and s -> -s, so that p~(iw) = conj(p(iw)).
    Polynomial para_conjugate() const;

    /// All roots with multiplicity, via companion-matrix eigenvalues.
    /// Throws std::domain_error on the zero polynomial.
    std::vector<cplx> roots() const;

   private:
    struct qc {
        __float128 re = 0;
        __float128 im = 0;
    };
    struct quad_tag {};
    Polynomial(std::vector<qc> coeffs, quad_tag);
    void normalize(double rel_tol);
    std::vector<qc> c_;
};

inline Polynomial operator*(cplx k, const Polynomial& p) { return p * k; }

}  // namespace qfan
