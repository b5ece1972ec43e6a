#include "fhd/linsolve.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/UmfPackSupport>

#include "fhd/error.hpp"

namespace fhd {

namespace {
constexpr int kRefinementSteps = 3;
// Reuse of stale factors: give up once an iteration contracts the residual
// by less than kReuseContraction, or after kReuseSteps iterations.
constexpr int kReuseSteps = 12;
constexpr double kReuseContraction = 0.25;
}

double relative_residual(const SparseMatrix& A, const Vector& x,
                         const Vector& b) {
  const double nb = b.norm();
  const double nr = (A * x - b).norm();
  return nb > 0.0 ? nr / nb : nr;
}

SparseMatrix border(const SparseMatrix& A, const std::vector<Vector>& w) {
  if (w.empty()) return A;
  const Eigen::Index n = A.rows();
  const Eigen::Index k = static_cast<Eigen::Index>(w.size());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(A.nonZeros() + 2 * n * k);
  for (Eigen::Index j = 0; j < A.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(A, j); it; ++it)
      trip.emplace_back(it.row(), it.col(), it.value());
  for (Eigen::Index c = 0; c < k; ++c) {
    if (w[c].size() != n) throw InvalidArgument("border: constraint length");
    for (Eigen::Index i = 0; i < n; ++i) {
      if (w[c](i) == 0.0) continue;
      trip.emplace_back(i, n + c, w[c](i));
      trip.emplace_back(n + c, i, w[c](i));
    }
  }
  SparseMatrix out(n + k, n + k);
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

SparseMatrix block_matrix(
    const std::vector<std::vector<const SparseMatrix*>>& blocks) {
  const std::size_t nr = blocks.size();
  if (nr == 0) return {};
  const std::size_t nc = blocks[0].size();
  std::vector<Eigen::Index> heights(nr, -1), widths(nc, -1);
  for (std::size_t i = 0; i < nr; ++i) {
    if (blocks[i].size() != nc) throw InvalidArgument("block_matrix: ragged");
    for (std::size_t j = 0; j < nc; ++j) {
      const SparseMatrix* b = blocks[i][j];
      if (!b) continue;
      if ((heights[i] >= 0 && heights[i] != b->rows()) ||
          (widths[j] >= 0 && widths[j] != b->cols()))
        throw InvalidArgument("block_matrix: inconsistent block sizes");
      heights[i] = b->rows();
      widths[j] = b->cols();
    }
  }
  std::vector<Eigen::Index> row_off(nr + 1, 0), col_off(nc + 1, 0);
  for (std::size_t i = 0; i < nr; ++i) {
    if (heights[i] < 0) throw InvalidArgument("block_matrix: empty block row");
    row_off[i + 1] = row_off[i] + heights[i];
  }
  for (std::size_t j = 0; j < nc; ++j) {
    if (widths[j] < 0) throw InvalidArgument("block_matrix: empty block column");
    col_off[j + 1] = col_off[j] + widths[j];
  }
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) {
      const SparseMatrix* b = blocks[i][j];
      if (!b) continue;
      for (Eigen::Index k = 0; k < b->outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(*b, k); it; ++it)
          trip.emplace_back(row_off[i] + it.row(), col_off[j] + it.col(),
                            it.value());
    }
  SparseMatrix out(row_off[nr], col_off[nc]);
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

struct Factorization::Impl {
  SparseMatrix A;
  // The matrix the factors belong to; UMFPACK keeps pointers into it.
  SparseMatrix factored;
  SolverOptions options;
  Eigen::UmfPackLU<SparseMatrix> lu;
  Eigen::BiCGSTAB<SparseMatrix, Eigen::IncompleteLUT<double>> krylov;
  bool analyzed = false;
  // The factors were computed for an earlier matrix (see update()).
  bool stale = false;
  int factorizations = 0;

  void factor() {
    stale = false;
    ++factorizations;
    if (A.rows() != A.cols())
      throw InvalidArgument("Factorization: matrix must be square");
    A.makeCompressed();
    if (A.rows() == 0) return;
    factored = A;
    if (options.method == SolverOptions::Method::Direct) {
      if (!analyzed) {
        // The saddle and block systems here have symmetric patterns; the
        // best-of ordering search pays for itself on refactorization.
        lu.umfpackControl()(UMFPACK_STRATEGY) = UMFPACK_STRATEGY_SYMMETRIC;
        lu.umfpackControl()(UMFPACK_ORDERING) = UMFPACK_ORDERING_BEST;
        lu.analyzePattern(factored);
        analyzed = true;
      }
      lu.factorize(factored);
      if (lu.info() != Eigen::Success)
        throw SingularMatrix("sparse LU factorization failed: matrix is singular");
    } else {
      krylov.setTolerance(options.tol * 1e-2);
      krylov.setMaxIterations(options.max_iter);
      krylov.compute(factored);
      if (krylov.info() != Eigen::Success)
        throw SingularMatrix("incomplete LU preconditioner failed");
    }
  }
};

Factorization::Factorization(const SparseMatrix& A, SolverOptions options)
    : impl_(std::make_unique<Impl>()) {
  impl_->A = A;
  impl_->options = options;
  impl_->factor();
}

Factorization::~Factorization() = default;
Factorization::Factorization(Factorization&&) noexcept = default;
Factorization& Factorization::operator=(Factorization&&) noexcept = default;

void Factorization::refactor(const SparseMatrix& A) {
  if (A.rows() != impl_->A.rows() || A.nonZeros() != impl_->A.nonZeros())
    impl_->analyzed = false;
  impl_->A = A;
  impl_->factor();
}

void Factorization::update(const SparseMatrix& A) {
  if (A.rows() != impl_->A.rows() || A.cols() != impl_->A.cols())
    throw InvalidArgument("Factorization::update: matrix size changed");
  if (impl_->options.method != SolverOptions::Method::Direct) {
    refactor(A);
    return;
  }
  if (A.nonZeros() != impl_->A.nonZeros()) impl_->analyzed = false;
  impl_->A = A;
  impl_->A.makeCompressed();
  impl_->stale = true;
}

int Factorization::factorizations() const { return impl_->factorizations; }

Eigen::Index Factorization::rows() const { return impl_->A.rows(); }

Vector Factorization::solve(const Vector& b) const {
  const auto& A = impl_->A;
  if (b.size() != A.rows()) throw InvalidArgument("solve: rhs length");
  if (A.rows() == 0 || b.squaredNorm() == 0.0) return Vector::Zero(A.cols());
  const double tol = impl_->options.tol;
  Vector x;
  if (impl_->stale) {
    // Stale factors as a preconditioner for the current matrix.
    x = impl_->lu.solve(b);
    double res = relative_residual(A, x, b);
    for (int k = 0; k < kReuseSteps && res > tol && std::isfinite(res); ++k) {
      x += impl_->lu.solve(Vector(b - A * x));
      const double next = relative_residual(A, x, b);
      if (!(next <= kReuseContraction * res)) {
        res = next;
        break;
      }
      res = next;
    }
    if (res <= tol) return x;
    impl_->factor();
  }
  if (impl_->options.method == SolverOptions::Method::Direct) {
    x = impl_->lu.solve(b);
    double res = relative_residual(A, x, b);
    for (int k = 0; k < kRefinementSteps && res > tol && std::isfinite(res); ++k) {
      x += impl_->lu.solve(Vector(b - A * x));
      res = relative_residual(A, x, b);
    }
    if (!(res <= tol)) throw SolverFailure("direct solve missed tolerance", res);
  } else {
    x = impl_->krylov.solve(b);
    const double res = relative_residual(A, x, b);
    if (impl_->krylov.info() != Eigen::Success || !(res <= tol))
      throw SolverFailure("BiCGSTAB did not converge", res);
  }
  return x;
}

Vector solve(const LinearSystem& sys) {
  if (sys.A.rows() != sys.A.cols() || sys.b.size() != sys.A.rows())
    throw InvalidArgument("solve: system dimensions");
  const Eigen::Index n = sys.A.rows();
  const auto k = static_cast<Eigen::Index>(sys.mean_constraints.size());
  Vector rhs = Vector::Zero(n + k);
  rhs.head(n) = sys.b;
  if (rhs.squaredNorm() == 0.0) return Vector::Zero(n);
  Factorization f(border(sys.A, sys.mean_constraints), sys.options);
  return f.solve(rhs).head(n);
}

Vector solve_saddle(const std::vector<std::vector<const SparseMatrix*>>& blocks,
                    const Vector& b, const std::vector<Vector>& mean_constraints,
                    SolverOptions options) {
  LinearSystem sys{block_matrix(blocks), b, mean_constraints, options};
  return solve(sys);
}

}  // namespace fhd
