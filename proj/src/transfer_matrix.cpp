#include "qfan/transfer_matrix.hpp"

namespace qfan {

TransferMatrix::TransferMatrix(int rows, int cols, std::vector<Port> sig_out,
                               std::vector<Port> sig_in)
    : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows * cols)),
      sig_in_(std::move(sig_in)), sig_out_(std::move(sig_out)) {
    if (static_cast<int>(sig_out_.size()) != rows_ || static_cast<int>(sig_in_.size()) != cols_)
        throw std::invalid_argument("port signature length mismatch");
}

Rational& TransferMatrix::at(int i, int j) {
    return e_[static_cast<size_t>(i * cols_ + j)];
}

const Rational& TransferMatrix::at(int i, int j) const {
    return e_[static_cast<size_t>(i * cols_ + j)];
}

Eigen::MatrixXcd TransferMatrix::eval(cplx s) const {
    Eigen::MatrixXcd m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(i, j) = at(i, j).eval(s);
    return m;
}

Rational TransferMatrix::det2() const {
    if (rows_ != 2 || cols_ != 2) throw std::invalid_argument("det2 requires a 2x2 matrix");
    return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
}

TransferMatrix TransferMatrix::para_conjugate() const {
    TransferMatrix r(rows_, cols_, sig_out_, sig_in_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j).para_conjugate();
    return r;
}

Eigen::MatrixXd TransferMatrix::metric(const std::vector<Port>& sig) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(static_cast<int>(sig.size()),
                                              static_cast<int>(sig.size()));
    for (size_t i = 0; i < sig.size(); ++i)
        j(static_cast<int>(i), static_cast<int>(i)) = sig[i] == Port::Annihilation ? 1.0 : -1.0;
    return j;
}

}  // namespace qfan
