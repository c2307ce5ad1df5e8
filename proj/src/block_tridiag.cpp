#include "svgp/block_tridiag.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace svgp {

BlockTridiagonal::BlockTridiagonal(int num_blocks, int block_size)
    : block_size_(block_size) {
    if (num_blocks < 1 || block_size < 1) {
        throw std::invalid_argument("BlockTridiagonal: need num_blocks >= 1 and block_size >= 1");
    }
    diag_.assign(num_blocks, Eigen::MatrixXd::Zero(block_size, block_size));
    if (num_blocks > 1) {
        upper_.assign(num_blocks - 1, Eigen::MatrixXd::Zero(block_size, block_size));
    }
}

void BlockTridiagonal::set_zero() {
    for (auto& d : diag_) d.setZero();
    for (auto& u : upper_) u.setZero();
}

void BlockTridiagonal::add_scaled(const BlockTridiagonal& other, double scale) {
    if (other.num_blocks() != num_blocks() || other.block_size_ != block_size_) {
        throw std::invalid_argument("BlockTridiagonal::add_scaled: shape mismatch");
    }
    for (int k = 0; k < num_blocks(); ++k) diag_[k] += scale * other.diag_[k];
    for (int k = 0; k + 1 < num_blocks(); ++k) upper_[k] += scale * other.upper_[k];
}

void BlockTridiagonal::scale(double s) {
    for (auto& d : diag_) d *= s;
    for (auto& u : upper_) u *= s;
}

Eigen::VectorXd BlockTridiagonal::multiply(const Eigen::VectorXd& x) const {
    if (x.size() != dim()) {
        throw std::invalid_argument("BlockTridiagonal::multiply: dimension mismatch");
    }
    const int bs = block_size_;
    Eigen::VectorXd y = Eigen::VectorXd::Zero(dim());
    for (int k = 0; k < num_blocks(); ++k) {
        y.segment(k * bs, bs).noalias() += diag_[k] * x.segment(k * bs, bs);
        if (k + 1 < num_blocks()) {
            y.segment(k * bs, bs).noalias() += upper_[k] * x.segment((k + 1) * bs, bs);
            y.segment((k + 1) * bs, bs).noalias() += upper_[k].transpose() * x.segment(k * bs, bs);
        }
    }
    return y;
}

Eigen::MatrixXd BlockTridiagonal::to_dense() const {
    const int bs = block_size_;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim(), dim());
    for (int k = 0; k < num_blocks(); ++k) {
        a.block(k * bs, k * bs, bs, bs) = diag_[k];
        if (k + 1 < num_blocks()) {
            a.block(k * bs, (k + 1) * bs, bs, bs) = upper_[k];
            a.block((k + 1) * bs, k * bs, bs, bs) = upper_[k].transpose();
        }
    }
    return a;
}

bool BlockCholesky::compute(const BlockTridiagonal& a) {
    const int nb = a.num_blocks();
    const int bs = a.block_size();
    block_size_ = bs;
    lower_.assign(nb, Eigen::MatrixXd());
    sub_.assign(nb > 1 ? nb - 1 : 0, Eigen::MatrixXd());
    ok_ = false;

    Eigen::LLT<Eigen::MatrixXd> llt(a.diag(0));
    if (llt.info() != Eigen::Success) return false;
    lower_[0] = llt.matrixL();

    for (int k = 1; k < nb; ++k) {
        // B_{k-1} = U_{k-1}^T L_{k-1}^{-T}
        Eigen::MatrixXd x = lower_[k - 1].triangularView<Eigen::Lower>().solve(a.upper(k - 1));
        sub_[k - 1] = x.transpose();
        Eigen::MatrixXd s = a.diag(k) - sub_[k - 1] * sub_[k - 1].transpose();
        llt.compute(s);
        if (llt.info() != Eigen::Success) return false;
        lower_[k] = llt.matrixL();
    }
    ok_ = true;
    return true;
}

Eigen::VectorXd BlockCholesky::solve(const Eigen::VectorXd& b) const {
    if (!ok_) throw std::runtime_error("BlockCholesky::solve: factorization not available");
    const int nb = static_cast<int>(lower_.size());
    const int bs = block_size_;
    if (b.size() != nb * bs) throw std::invalid_argument("BlockCholesky::solve: dimension mismatch");

    // L y = b
    Eigen::VectorXd y(b.size());
    for (int k = 0; k < nb; ++k) {
        Eigen::VectorXd rhs = b.segment(k * bs, bs);
        if (k > 0) rhs.noalias() -= sub_[k - 1] * y.segment((k - 1) * bs, bs);
        y.segment(k * bs, bs) = lower_[k].triangularView<Eigen::Lower>().solve(rhs);
    }
    // L^T x = y
    Eigen::VectorXd x(b.size());
    for (int k = nb - 1; k >= 0; --k) {
        Eigen::VectorXd rhs = y.segment(k * bs, bs);
        if (k + 1 < nb) rhs.noalias() -= sub_[k].transpose() * x.segment((k + 1) * bs, bs);
        x.segment(k * bs, bs) = lower_[k].transpose().triangularView<Eigen::Upper>().solve(rhs);
    }
    return x;
}

Eigen::VectorXd BlockCholesky::solve_transposed_factor(const Eigen::VectorXd& z) const {
    if (!ok_) throw std::runtime_error("BlockCholesky: factorization not available");
    const int nb = static_cast<int>(lower_.size());
    const int bs = block_size_;
    if (z.size() != nb * bs) throw std::invalid_argument("BlockCholesky: dimension mismatch");

    Eigen::VectorXd x(z.size());
    for (int k = nb - 1; k >= 0; --k) {
        Eigen::VectorXd rhs = z.segment(k * bs, bs);
        if (k + 1 < nb) rhs.noalias() -= sub_[k].transpose() * x.segment((k + 1) * bs, bs);
        x.segment(k * bs, bs) = lower_[k].transpose().triangularView<Eigen::Upper>().solve(rhs);
    }
    return x;
}

double BlockCholesky::log_det() const {
    if (!ok_) throw std::runtime_error("BlockCholesky::log_det: factorization not available");
    double acc = 0.0;
    for (const auto& l : lower_) {
        for (int i = 0; i < l.rows(); ++i) acc += std::log(l(i, i));
    }
    return 2.0 * acc;
}

}  // namespace svgp
