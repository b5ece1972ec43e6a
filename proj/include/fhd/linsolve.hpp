#ifndef FHD_LINSOLVE_HPP
#define FHD_LINSOLVE_HPP

#include <memory>
#include <vector>

#include "fhd/spaces.hpp"

namespace fhd {

struct SolverOptions {
  enum class Method { Direct, Iterative };
  Method method = Method::Direct;
  double tol = 1e-10;
  int max_iter = 2000;

  bool operator==(const SolverOptions&) const = default;
};

/// Square system A x = b, optionally bordered by mean-value constraints
/// w_k . x = 0 (one Lagrange multiplier each).
struct LinearSystem {
  SparseMatrix A;
  Vector b;
  std::vector<Vector> mean_constraints;
  SolverOptions options;
};

/// [[A, W], [W^T, 0]] for the constraint vectors W = [w_1 ... w_k].
SparseMatrix border(const SparseMatrix& A, const std::vector<Vector>& w);

/// Assembles a block matrix from a grid of optional blocks. Every row of
/// blocks must agree in height and every column in width; null entries are
/// zero blocks whose size is inferred from their row/column neighbours.
SparseMatrix block_matrix(
    const std::vector<std::vector<const SparseMatrix*>>& blocks);

/// A factorized square matrix that can be reused for many right-hand
/// sides. Direct mode uses a sparse LU factorization; iterative mode runs
/// BiCGSTAB with an incomplete-LU preconditioner.
class Factorization {
 public:
  Factorization(const SparseMatrix& A, SolverOptions options = {});
  ~Factorization();
  Factorization(Factorization&&) noexcept;
  Factorization& operator=(Factorization&&) noexcept;

  /// Refactorizes a matrix with the same sparsity pattern.
  void refactor(const SparseMatrix& A);

  /// Swaps in a nearby matrix without refactorizing. Subsequent solves use
  /// the old factors as a preconditioner and refactorize only when that
  /// iteration fails to reach the tolerance quickly.
  void update(const SparseMatrix& A);

  /// Number of numeric factorizations performed so far.
  int factorizations() const;

  /// Solves A x = b; throws SolverFailure if the relative residual stays
  /// above the tolerance after iterative refinement.
  Vector solve(const Vector& b) const;

  Eigen::Index rows() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Solves a (possibly bordered) system and returns x without multipliers.
Vector solve(const LinearSystem& sys);

/// Solves a block saddle-point system; `mean_constraints` are expressed over
/// the full unknown vector (zeros outside the constrained block).
Vector solve_saddle(const std::vector<std::vector<const SparseMatrix*>>& blocks,
                    const Vector& b,
                    const std::vector<Vector>& mean_constraints = {},
                    SolverOptions options = {});

/// ||A x - b|| / ||b|| (or ||A x|| if b = 0).
double relative_residual(const SparseMatrix& A, const Vector& x,
                         const Vector& b);

}  // namespace fhd

#endif  // FHD_LINSOLVE_HPP
