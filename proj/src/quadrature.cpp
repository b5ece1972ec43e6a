#include "fhd/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include <Eigen/Eigenvalues>

#include "fhd/error.hpp"

namespace fhd {

void gauss_jacobi(int n, double alpha, Eigen::VectorXd& nodes,
                  Eigen::VectorXd& weights) {
  if (n < 1) throw InvalidArgument("gauss_jacobi: n must be >= 1");
  const double a = alpha;
  const double b = 0.0;
  // Symmetric Jacobi matrix of the monic Jacobi recurrence on [-1,1].
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    T(k, k) = (k == 0) ? (b - a) / (a + b + 2.0)
                       : (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    const double off = std::sqrt(4.0 * k * (k + a) * (k + b) * (k + a + b) /
                                 (s * s * (s + 1.0) * (s - 1.0)));
    T(k, k - 1) = T(k - 1, k) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(T);
  const double mu0 = std::pow(2.0, a + b + 1.0) * std::tgamma(a + 1.0) *
                     std::tgamma(b + 1.0) / std::tgamma(a + b + 2.0);
  nodes = (eig.eigenvalues().array() + 1.0) / 2.0;
  weights = mu0 * eig.eigenvectors().row(0).transpose().array().square() /
            std::pow(2.0, a + 1.0);
}

namespace {

QuadratureRule make_conical_rule(int degree) {
  const int n = std::max(1, (degree + 2) / 2);
  Eigen::VectorXd xu, wu, xv, wv, xw, ww;
  gauss_jacobi(n, 2.0, xu, wu);
  gauss_jacobi(n, 1.0, xv, wv);
  gauss_jacobi(n, 0.0, xw, ww);

  QuadratureRule rule;
  rule.degree = 2 * n - 1;
  rule.points.reserve(n * n * n);
  rule.weights.reserve(n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double x = xu(i);
        const double y = xv(j) * (1.0 - x);
        const double z = xw(k) * (1.0 - x) * (1.0 - xv(j));
        rule.points.emplace_back(1.0 - x - y - z, x, y, z);
        rule.weights.push_back(wu(i) * wv(j) * ww(k));
      }
  return rule;
}

}  // namespace

const QuadratureRule& tet_rule(int degree) {
  static std::mutex mutex;
  static std::map<int, QuadratureRule> cache;
  const int key = std::max(1, degree + (degree % 2 == 0 ? 1 : 0));
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, make_conical_rule(key)).first;
  return it->second;
}

const EdgeRule& edge_rule() {
  static const EdgeRule rule = [] {
    Eigen::VectorXd x, w;
    gauss_jacobi(kEntityRulePoints, 0.0, x, w);
    return EdgeRule{{x.data(), x.data() + x.size()}, {w.data(), w.data() + w.size()}};
  }();
  return rule;
}

const FaceRule& face_rule() {
  static const FaceRule rule = [] {
    Eigen::VectorXd x1, w1, x0, w0;
    gauss_jacobi(kEntityRulePoints, 1.0, x1, w1);
    gauss_jacobi(kEntityRulePoints, 0.0, x0, w0);
    FaceRule r;
    for (int i = 0; i < kEntityRulePoints; ++i)
      for (int j = 0; j < kEntityRulePoints; ++j) {
        const double s = x1(i), u = (1.0 - s) * x0(j);
        r.bary.emplace_back(1.0 - s - u, s, u);
        // The collapsed measure integrates to 1/2; rescale to unit sum.
        r.w.push_back(2.0 * w1(i) * w0(j));
      }
    return r;
  }();
  return rule;
}

}  // namespace fhd
