#ifndef SVGP_BLOCK_TRIDIAG_HPP
#define SVGP_BLOCK_TRIDIAG_HPP

#include <vector>

#include <Eigen/Core>

namespace svgp {

/// Symmetric block-tridiagonal matrix with square blocks of uniform size.
///
/// Stores the diagonal blocks D_0..D_{n-1} and the super-diagonal blocks
/// U_0..U_{n-2} (U_k sits at block position (k, k+1)); the sub-diagonal is
/// implied by symmetry, so the represented matrix is symmetric by
/// construction. This is the envelope shared by the GP prior precision,
/// the Gauss-Newton Hessians, and the averaged metric.
class BlockTridiagonal {
public:
    BlockTridiagonal() = default;
    BlockTridiagonal(int num_blocks, int block_size);

    int num_blocks() const { return static_cast<int>(diag_.size()); }
    int block_size() const { return block_size_; }
    int dim() const { return num_blocks() * block_size_; }

    Eigen::MatrixXd& diag(int k) { return diag_[k]; }
    const Eigen::MatrixXd& diag(int k) const { return diag_[k]; }
    /// Block at position (k, k+1). Valid k: 0..num_blocks()-2.
    Eigen::MatrixXd& upper(int k) { return upper_[k]; }
    const Eigen::MatrixXd& upper(int k) const { return upper_[k]; }

    void set_zero();

    /// this += scale * other (same shape required).
    void add_scaled(const BlockTridiagonal& other, double scale);
    void scale(double s);

    /// y = A x, exploiting the envelope.
    Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;

    /// Dense copy, for tests and small-scale diagnostics.
    Eigen::MatrixXd to_dense() const;

private:
    int block_size_ = 0;
    std::vector<Eigen::MatrixXd> diag_;
    std::vector<Eigen::MatrixXd> upper_;
};

/// Cholesky factorization A = L L^T of an SPD block-tridiagonal matrix.
///
/// L is lower block-bidiagonal: diagonal blocks L_k (lower triangular) and
/// sub-diagonal blocks B_k = L_{k+1,k}. Natural ordering, no fill outside
/// the envelope:
///   L_0 = chol(D_0)
///   B_{k-1} = (L_{k-1}^{-1} U_{k-1})^T
///   L_k = chol(D_k - B_{k-1} B_{k-1}^T)
class BlockCholesky {
public:
    BlockCholesky() = default;

    /// Factorizes; returns false if a diagonal pivot is not positive
    /// definite (matrix not SPD to working precision).
    bool compute(const BlockTridiagonal& a);

    bool ok() const { return ok_; }

    /// Solves A x = b via forward/backward substitution.
    Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

    /// Solves L^T x = z only. With A = precision this maps standard-normal
    /// z to a draw with covariance A^{-1}.
    Eigen::VectorXd solve_transposed_factor(const Eigen::VectorXd& z) const;

    /// log det A = 2 * sum log diag(L).
    double log_det() const;

private:
    bool ok_ = false;
    int block_size_ = 0;
    std::vector<Eigen::MatrixXd> lower_;  // L_k, lower triangular
    std::vector<Eigen::MatrixXd> sub_;    // B_k = L_{k+1,k}
};

}  // namespace svgp

#endif  // SVGP_BLOCK_TRIDIAG_HPP
