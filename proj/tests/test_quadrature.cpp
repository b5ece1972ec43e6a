#include <gtest/gtest.h>

#include <cmath>

#include "fhd/quadrature.hpp"

using namespace fhd;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// Integral of l1^a l2^b l3^c over the reference tetrahedron.
double monomial(int a, int b, int c) {
  return factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + 3);
}

}  // namespace

TEST(Quadrature, GaussJacobiMoments) {
  for (double alpha : {0.0, 1.0, 2.0})
    for (int n = 1; n <= 6; ++n) {
      Eigen::VectorXd x, w;
      gauss_jacobi(n, alpha, x, w);
      for (int k = 0; k < 2 * n; ++k) {
        // integral_0^1 x^k (1-x)^alpha dx = B(k+1, alpha+1)
        const double exact = std::tgamma(k + 1.0) * std::tgamma(alpha + 1.0) /
                             std::tgamma(k + alpha + 2.0);
        double q = 0.0;
        for (int i = 0; i < n; ++i) q += w[i] * std::pow(x[i], k);
        EXPECT_NEAR(q, exact, 1e-14) << "n=" << n << " alpha=" << alpha << " k=" << k;
      }
    }
}

TEST(Quadrature, TetRuleExactness) {
  for (int deg = 0; deg <= 12; ++deg) {
    const QuadratureRule& r = tet_rule(deg);
    EXPECT_GE(r.degree, deg);
    double wsum = 0.0;
    for (double w : r.weights) {
      EXPECT_GT(w, 0.0);
      wsum += w;
    }
    EXPECT_NEAR(wsum, 1.0 / 6.0, 1e-15);
    for (int a = 0; a <= deg; ++a)
      for (int b = 0; a + b <= deg; ++b)
        for (int c = 0; a + b + c <= deg; ++c) {
          double q = 0.0;
          for (std::size_t i = 0; i < r.size(); ++i)
            q += r.weights[i] * std::pow(r.points[i][1], a) *
                 std::pow(r.points[i][2], b) * std::pow(r.points[i][3], c);
          EXPECT_NEAR(q, monomial(a, b, c), 1e-15 + 1e-13 * monomial(a, b, c));
        }
    for (const auto& p : r.points) {
      EXPECT_NEAR(p.sum(), 1.0, 1e-15);
      EXPECT_GE(p.minCoeff(), 0.0);
    }
  }
}

TEST(Quadrature, CachedRuleIsStable) {
  const QuadratureRule& a = tet_rule(6);
  const QuadratureRule& b = tet_rule(6);
  EXPECT_EQ(&a, &b);
}

TEST(Quadrature, EdgeAndFaceRules) {
  const int degree = 2 * kEntityRulePoints - 1;
  const EdgeRule& e = edge_rule();
  for (int k = 0; k <= degree; ++k) {
    double q = 0.0;
    for (std::size_t i = 0; i < e.w.size(); ++i) q += e.w[i] * std::pow(e.s[i], k);
    EXPECT_NEAR(q, 1.0 / (k + 1), 1e-14);
  }
  const FaceRule& f = face_rule();
  // average of l1^a l2^b over a triangle = 2 a! b! / (a+b+2)!
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b) {
      double q = 0.0;
      for (std::size_t i = 0; i < f.w.size(); ++i)
        q += f.w[i] * std::pow(f.bary[i][0], a) * std::pow(f.bary[i][1], b);
      EXPECT_NEAR(q, 2.0 * factorial(a) * factorial(b) / factorial(a + b + 2), 1e-14);
    }
}
