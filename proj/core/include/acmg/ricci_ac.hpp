#pragma once

#include "acmg/curvature.hpp"
#include "acmg/acms.hpp"

namespace acmg {

/// Ricci-type contraction of the curvature against phi:
/// Ric^ac(X,Y) = <R_{e_i, X} phi e_i, phi Y>, generally non-symmetric,
/// with Ric^ac(X, zeta) = 0 and Ric^ac(phi X, phi Y) = Ric^ac(Y_perp, X_perp).
template <typename S>
struct RicAcPackage {
  Tensor<S> ric_ac;      ///< rank-2
  Tensor<S> ric_ac_alt;  ///< skew part (Ric^ac - transpose)/2
  S s_ac = ScalarTraits<S>::zero();
  Tensor<S> zeta_row;    ///< covector Ric^ac(zeta, .)
  double herm_residual = 0.0;
  double zeta_col_residual = 0.0;
};

template <typename S>
RicAcPackage<S> ricci_ac(const CurvaturePackage<S>& curv, const AcmStructure<S>& acms,
                         double eps = 1e-9) {
  const int m = acms.m();
  const auto& P = acms.phi;
  RicAcPackage<S> pkg;
  pkg.ric_ac = Tensor<S>(2, m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      S acc = ScalarTraits<S>::zero();
      for (int i = 0; i < m; ++i)
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) acc += curv.R(i, x, a, b) * P(a, i) * P(b, y);
      pkg.ric_ac(x, y) = acc;
    }
  pkg.ric_ac_alt = ScalarTraits<S>::fraction(1, 2) * (pkg.ric_ac - transpose(pkg.ric_ac));
  pkg.s_ac = trace(pkg.ric_ac);
  pkg.zeta_row = Tensor<S>(1, m);
  for (int y = 0; y < m; ++y) {
    S acc = ScalarTraits<S>::zero();
    for (int x = 0; x < m; ++x) acc += acms.zeta(x) * pkg.ric_ac(x, y);
    pkg.zeta_row(y) = acc;
  }

  // Structural identities; failure indicates a convention error upstream.
  double col = 0.0;
  for (int x = 0; x < m; ++x) {
    S acc = ScalarTraits<S>::zero();
    for (int y = 0; y < m; ++y) acc += pkg.ric_ac(x, y) * acms.zeta(y);
    col = std::max(col, std::fabs(ScalarTraits<S>::to_double(acc)));
  }
  pkg.zeta_col_residual = col;

  double herm = 0.0;
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      S lhs = ScalarTraits<S>::zero();
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) lhs += P(a, x) * P(b, y) * pkg.ric_ac(a, b);
      S rhs = ScalarTraits<S>::zero();
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          S qa = ScalarTraits<S>::from_int(a == y ? 1 : 0) - acms.zeta(a) * acms.zeta(y);
          S qb = ScalarTraits<S>::from_int(b == x ? 1 : 0) - acms.zeta(b) * acms.zeta(x);
          rhs += qa * qb * pkg.ric_ac(a, b);
        }
      herm = std::max(herm, std::fabs(ScalarTraits<S>::to_double(lhs - rhs)));
    }
  pkg.herm_residual = herm;

  if (col >= eps || herm >= eps)
    throw InternalError("Ric^ac structural identities fail (sign convention error?): zeta-col " +
                        std::to_string(col) + ", hermitian " + std::to_string(herm));
  return pkg;
}

/// Weakly-ac-Einstein: Ric^ac = (s^ac / 2n) (g - eta (x) eta). For
/// left-invariant data s^ac is constant, so this is also ac-Einstein.
template <typename S>
bool weakly_ac_einstein(const RicAcPackage<S>& pkg, const AcmStructure<S>& acms,
                        double eps = 1e-9) {
  const int m = acms.m();
  const S f = pkg.s_ac * ScalarTraits<S>::fraction(1, 2 * acms.n);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      S want = f * (ScalarTraits<S>::from_int(x == y ? 1 : 0) - acms.eta(x) * acms.eta(y));
      if (!ScalarTraits<S>::is_zero(pkg.ric_ac(x, y) - want, eps)) return false;
    }
  return true;
}

/// Einstein in the Riemannian sense: Ric = (s/m) g.
template <typename S>
bool is_einstein(const CurvaturePackage<S>& curv, double eps = 1e-9) {
  const int m = curv.Ric.dim();
  const S f = curv.s * ScalarTraits<S>::fraction(1, m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      S want = (x == y) ? f : ScalarTraits<S>::zero();
      if (!ScalarTraits<S>::is_zero(curv.Ric(x, y) - want, eps)) return false;
    }
  return true;
}

/// The U(n)-maps from Lemma-level Weyl component analysis.
/// phi1 : u(n)^perp|perp -> algebraic curvature tensors,
///   phi1(b) = -1/(4(n+1)) (6 ((phi_1+phi_2) b) (.) F - ((phi_1+phi_2) b) /\ F),
/// with (phi_1 b)(X,Y) = -b(phi X, Y), (phi_2 b)(X,Y) = -b(X, phi Y).
/// Satisfies Ric phi1(b) = 0 and Ric^ac phi1(b) = b.
template <typename S>
Tensor<S> phi1_map(const Tensor<S>& b, const AcmStructure<S>& acms) {
  if (acms.n <= 1) throw ShapeError("phi1_map: requires n > 1");
  const int m = b.dim();
  const auto& P = acms.phi;
  Tensor<S> c(2, m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      S acc = ScalarTraits<S>::zero();
      for (int a = 0; a < m; ++a) acc += -P(a, x) * b(a, y) - b(x, a) * P(a, y);
      c(x, y) = acc;
    }
  Tensor<S> out = ScalarTraits<S>::from_int(6) * sym_prod(c, P) - wedge22(c, P);
  out *= -ScalarTraits<S>::fraction(1, 4 * (acms.n + 1));
  return out;
}

/// phi2 : eta^perp -> algebraic curvature tensors,
///   phi2(theta) = 6 (eta /\ (theta o phi)) (.) F - eta /\ (theta o phi) /\ F
///                 - 6/(2n-1) (eta (.) theta) (-) g.
/// Satisfies Ric phi2(theta) = 0 and
/// Ric^ac phi2(theta) = 4(n^2-1)/(2n-1) eta (x) theta.
template <typename S>
Tensor<S> phi2_map(const Tensor<S>& theta, const AcmStructure<S>& acms) {
  if (acms.n <= 1) throw ShapeError("phi2_map: requires n > 1");
  const int m = theta.dim();
  Tensor<S> k2 = wedge11(acms.eta, acms.compose_phi(theta));
  Tensor<S> g = Tensor<S>::identity(m);
  Tensor<S> out = ScalarTraits<S>::from_int(6) * sym_prod(k2, acms.phi) - wedge22(k2, acms.phi);
  out -= ScalarTraits<S>::fraction(6, 2 * acms.n - 1) *
         kulkarni_nomizu(sym_prod(acms.eta, theta), g);
  return out;
}

/// Ric-type contractions of an arbitrary rank-4 tensor (used to verify the
/// phi-map properties).
template <typename S>
Tensor<S> ric_of(const Tensor<S>& R4) {
  return trace_slots(R4, 0, 2);
}

template <typename S>
Tensor<S> ricac_of(const Tensor<S>& R4, const AcmStructure<S>& acms) {
  const int m = R4.dim();
  const auto& P = acms.phi;
  Tensor<S> out(2, m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      S acc = ScalarTraits<S>::zero();
      for (int i = 0; i < m; ++i)
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) acc += R4(i, x, a, b) * P(a, i) * P(b, y);
      out(x, y) = acc;
    }
  return out;
}

}  // namespace acmg
