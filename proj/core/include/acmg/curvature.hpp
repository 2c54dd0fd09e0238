#pragma once

#include "acmg/connection.hpp"

namespace acmg {

/// Riemann curvature and its classical contractions for a left-invariant
/// metric. Sign convention, pinned by the catalog tables:
///   R(A,B,C,D) = < R^_{A,B} C, D >  with  R^_{X,Y} = nabla_{[X,Y]} - [nabla_X, nabla_Y].
/// With this choice the sectional curvature of an orthonormal plane is
/// R(X,Y,X,Y), the round sphere has Ric > 0, and H(1,1) has
/// R(X_1,Z,X_1,Z) = -3/4.
template <typename S>
struct CurvaturePackage {
  Tensor<S> R;    ///< rank-4 curvature
  Tensor<S> Ric;  ///< Ric(X,Y) = sum_i R(e_i, X, e_i, Y)
  S s = ScalarTraits<S>::zero();
  Tensor<S> W;    ///< Weyl tensor (identically zero when m = 3)

  /// Algebraic curvature symmetry residual: skew (1,2), skew (3,4),
  /// pair symmetry, first Bianchi.
  double symmetry_residual() const {
    const int m = R.dim();
    double r = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c)
          for (int d = 0; d < m; ++d) {
            auto v = [&](const S& x) { return std::fabs(ScalarTraits<S>::to_double(x)); };
            r = std::max(r, v(R(a, b, c, d) + R(b, a, c, d)));
            r = std::max(r, v(R(a, b, c, d) + R(a, b, d, c)));
            r = std::max(r, v(R(a, b, c, d) - R(c, d, a, b)));
            r = std::max(r, v(R(a, b, c, d) + R(b, c, a, d) + R(c, a, b, d)));
          }
    return r;
  }
};

template <typename S>
CurvaturePackage<S> curvature(const LieAlgebraModel<S>& model,
                              const ConnectionCoefficients<S>& conn) {
  const int m = model.m;
  CurvaturePackage<S> pkg;
  pkg.R = Tensor<S>(4, m);
  const auto& G = conn.gamma;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          S acc = ScalarTraits<S>::zero();
          for (int a = 0; a < m; ++a)
            acc += model.c(i, j, a) * G(a, k, l) - G(j, k, a) * G(i, a, l) +
                   G(i, k, a) * G(j, a, l);
          pkg.R(i, j, k, l) = acc;
        }

  pkg.Ric = trace_slots(pkg.R, 0, 2);
  pkg.s = trace(pkg.Ric);

  // W = R - (Ric - (s/m) g) (-) g / (m-2) - s g (-) g / (2m(m-1)).
  Tensor<S> g = Tensor<S>::identity(m);
  Tensor<S> ric0 = pkg.Ric;
  ric0 -= (pkg.s * ScalarTraits<S>::fraction(1, m)) * g;
  Tensor<S> w = pkg.R;
  w -= ScalarTraits<S>::fraction(1, m - 2) * kulkarni_nomizu(ric0, g);
  w -= (pkg.s * ScalarTraits<S>::fraction(1, 2 * m * (m - 1))) * kulkarni_nomizu(g, g);
  pkg.W = w;
  return pkg;
}

/// Conformal flatness as vanishing of the Weyl tensor. In dimension 3 the
/// Weyl tensor vanishes identically, so the test returns true there; that is
/// necessary, not sufficient, in dimension 3.
template <typename S>
bool is_conformally_flat(const CurvaturePackage<S>& pkg, int m, double eps = 1e-9) {
  if (m < 3) throw ShapeError("is_conformally_flat: m >= 3 required");
  if (m == 3) return true;
  return pkg.W.is_zero(eps);
}

/// Cyclic second-Bianchi residual sum_{cyc(X,Y,Z)} (nabla_X R)(Y,Z,.,.).
template <typename S>
double second_bianchi_residual(const ConnectionCoefficients<S>& conn,
                               const CurvaturePackage<S>& pkg) {
  Tensor<S> dR = covariant_derivative(conn, pkg.R);
  const int m = pkg.R.dim();
  double r = 0.0;
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z)
        for (int c = 0; c < m; ++c)
          for (int d = 0; d < m; ++d) {
            S acc = dR(x, y, z, c, d) + dR(y, z, x, c, d) + dR(z, x, y, c, d);
            r = std::max(r, std::fabs(ScalarTraits<S>::to_double(acc)));
          }
  return r;
}

}  // namespace acmg
