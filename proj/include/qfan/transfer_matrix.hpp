#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qfan/rational.hpp"

namespace qfan {

/// Port tag in the doubled-up convention: a port carries either an
/// annihilation-mode field b(s) or a creation-mode field b^dag(s*).
enum class Port { Annihilation, Creation };

/**
 * @brief m x n matrix of rational transfer functions with port signatures.
 *
 * The signatures make composition errors (plugging an annihilation output
 * into a creation input) detectable, and determine the Bogoliubov metric
 * J = diag(+1 for annihilation, -1 for creation) used by the realizability
 * checks.
 */
class TransferMatrix {
   public:
    TransferMatrix() = default;
    TransferMatrix(int rows, int cols, std::vector<Port> sig_out, std::vector<Port> sig_in);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int i, int j);
    const Rational& at(int i, int j) const;

    const std::vector<Port>& sig_in() const { return sig_in_; }
    const std::vector<Port>& sig_out() const { return sig_out_; }

    /// Pointwise value; throws PoleError if any entry is evaluated at a pole.
    Eigen::MatrixXcd eval(cplx s) const;

    /// det for 2x2 matrices as an exact rational function.
    Rational det2() const;

    /// Entrywise para-conjugation (signatures preserved).
    TransferMatrix para_conjugate() const;

    /// Bogoliubov metric of a signature: +1 annihilation, -1 creation.
    static Eigen::MatrixXd metric(const std::vector<Port>& sig);

   private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rational> e_;
    std::vector<Port> sig_in_, sig_out_;
};

}  // namespace qfan
