#pragma once

#include <optional>

#include "acmg/torsion.hpp"

namespace acmg {

/// Facts a catalog entry is expected to reproduce; the acceptance harness
/// replays these through the analysis pipeline.
struct ExpectedFacts {
  std::optional<std::set<int>> class_active;
  std::optional<bool> harmonic;
  std::optional<bool> harmonic_map;
  std::optional<double> d_star_eta;
  std::optional<double> s_ac;
  std::optional<bool> conformally_flat;
  std::optional<bool> ac_einstein;
  std::optional<double> bending_density;
  std::optional<double> alpha;
  std::optional<bool> nu_vanishes;
};

template <typename S>
struct CatalogEntry {
  LieAlgebraModel<S> model;
  AcmStructure<S> acms;
  ExpectedFacts expected;
  std::optional<Tensor<S>> expected_R;  ///< closed-form curvature table, when known
};

namespace detail {

/// Write one curvature entry together with its eight symmetry images.
template <typename S>
void set_curv(Tensor<S>& R, int a, int b, int c, int d, const S& v) {
  R(a, b, c, d) = v;
  R(b, a, c, d) = -v;
  R(a, b, d, c) = -v;
  R(b, a, d, c) = v;
  R(c, d, a, b) = v;
  R(d, c, a, b) = -v;
  R(c, d, b, a) = -v;
  R(d, c, b, a) = v;
}

/// Constant-curvature tensor kappa/2 * g (-) g.
template <typename S>
Tensor<S> constant_curvature(int m, const S& kappa) {
  Tensor<S> g = Tensor<S>::identity(m);
  Tensor<S> out = kulkarni_nomizu(g, g);
  out *= kappa * ScalarTraits<S>::fraction(1, 2);
  return out;
}

/// Standard block complex structure on span(e_{start}, ..., e_{start+2q-1}):
/// phi e_{start+2k} = e_{start+2k+1}, phi e_{start+2k+1} = -e_{start+2k}.
template <typename S>
Tensor<S> block_phi(int m, int start, int q) {
  Tensor<S> P(2, m);
  for (int k = 0; k < q; ++k) {
    const int a = start + 2 * k;
    const int b = start + 2 * k + 1;
    P(b, a) = ScalarTraits<S>::one();   // phi e_a = e_b
    P(a, b) = -ScalarTraits<S>::one();  // phi e_b = -e_a
  }
  return P;
}

}  // namespace detail

/// Solvable model with [e_1, e_j] = c e_j for j >= 2 and zeta = e_1;
/// the space form of curvature -c^2. Optional phi_hat overrides the block
/// complex structure on zeta-perp.
template <typename S>
CatalogEntry<S> hyperbolic(int n, const S& c, const std::optional<Tensor<S>>& phi_hat = {},
                           double eps = 1e-9) {
  if (!(ScalarTraits<S>::to_double(c) > 0)) throw ModelError("hyperbolic: c > 0 required");
  const int m = 2 * n + 1;
  CatalogEntry<S> e;
  e.model = LieAlgebraModel<S>("hyperbolic", m);
  for (int j = 1; j < m; ++j) e.model.bracket(0, j, j, c);
  e.model.validate(eps);

  Tensor<S> P = phi_hat ? *phi_hat : detail::block_phi<S>(m, 1, n);
  e.acms = make_acms(P, 0, eps);

  const double cd = ScalarTraits<S>::to_double(c);
  e.expected.class_active = std::set<int>{5};
  e.expected.harmonic = true;
  e.expected.harmonic_map = false;
  e.expected.d_star_eta = 2.0 * n * cd;
  e.expected.s_ac = -2.0 * n * cd * cd;
  e.expected.conformally_flat = true;
  e.expected.ac_einstein = true;
  e.expected.bending_density = 2.0 * n * cd * cd;
  e.expected.alpha = -cd;
  e.expected_R = detail::constant_curvature(m, -(c * c));
  return e;
}

/// Generalised Heisenberg group H(1,r): [X_i, Z] = X_{r+i}, zeta = Z = e_{2r}.
/// phi is any compatible structure matrix on span(X_1..X_2r).
template <typename S>
CatalogEntry<S> heisenberg_h1r(int r, const Tensor<S>& phi, double eps = 1e-9) {
  const int m = 2 * r + 1;
  CatalogEntry<S> e;
  e.model = LieAlgebraModel<S>("h1r", m);
  for (int i = 0; i < r; ++i) e.model.bracket(i, m - 1, r + i, ScalarTraits<S>::one());
  e.model.validate(eps);
  e.acms = make_acms(phi, m - 1, eps);
  e.expected.nu_vanishes = true;

  // Curvature table: R(Xi,Xj,X{r+i},X{r+j}) = -1/4 (i != j),
  // R(Xi,X{r+j},Xj,X{r+i}) = 1/4, R(Xi,Z,Xi,Z) = -3/4, R(X{r+i},Z,X{r+i},Z) = 1/4.
  {
    Tensor<S> R(4, m);
    const int z = m - 1;
    const S q = ScalarTraits<S>::fraction(1, 4);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) {
        if (i != j) detail::set_curv(R, i, j, r + i, r + j, -q);
        detail::set_curv(R, i, r + j, j, r + i, q);
      }
      detail::set_curv(R, i, z, i, z, -ScalarTraits<S>::fraction(3, 4));
      detail::set_curv(R, r + i, z, r + i, z, q);
    }
    e.expected_R = R;
  }
  return e;
}

/// Default H(1,r) structure phi X_i = X_{r+i}, phi X_{r+i} = -X_i (type C9).
template <typename S>
Tensor<S> h1r_default_phi(int r) {
  const int m = 2 * r + 1;
  Tensor<S> P(2, m);
  for (int i = 0; i < r; ++i) {
    P(r + i, i) = ScalarTraits<S>::one();
    P(i, r + i) = -ScalarTraits<S>::one();
  }
  return P;
}

/// Generalised Heisenberg group H(p,1): [X_i, X_{p+i}] = Z, zeta = Z.
template <typename S>
CatalogEntry<S> heisenberg_hp1(int p, const Tensor<S>& phi, double eps = 1e-9) {
  const int m = 2 * p + 1;
  CatalogEntry<S> e;
  e.model = LieAlgebraModel<S>("hp1", m);
  for (int i = 0; i < p; ++i) e.model.bracket(i, p + i, m - 1, ScalarTraits<S>::one());
  e.model.validate(eps);
  e.acms = make_acms(phi, m - 1, eps);
  e.expected.nu_vanishes = true;

  // Curvature table: R(Xi,Xj,X{p+i},X{p+j}) = -1/4 (i != j),
  // R(Xi,X{p+i},Xi,X{p+i}) = -3/4, R(Xi,X{p+i},Xj,X{p+j}) = -1/2 (i != j),
  // R(Xi,X{p+j},Xj,X{p+i}) = -1/4 (i != j), R(.,Z,.,Z) = 1/4 on both blocks.
  // The signs follow the Heisenberg anchor: a plane spanning two non-central
  // directions with central bracket has sectional curvature -3/4, a plane
  // containing the central direction +1/4; for p = 1 this is the same group
  // as H(1,r) with r = 1 up to frame relabeling, which pins every sign.
  {
    Tensor<S> R(4, m);
    const int z = m - 1;
    const S q = ScalarTraits<S>::fraction(1, 4);
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < p; ++j) {
        if (i != j) {
          detail::set_curv(R, i, j, p + i, p + j, -q);
          detail::set_curv(R, i, p + i, j, p + j, -ScalarTraits<S>::fraction(1, 2));
          detail::set_curv(R, i, p + j, j, p + i, -q);
        }
      }
      detail::set_curv(R, i, p + i, i, p + i, -ScalarTraits<S>::fraction(3, 4));
      detail::set_curv(R, i, z, i, z, q);
      detail::set_curv(R, p + i, z, p + i, z, q);
    }
    e.expected_R = R;
  }
  return e;
}

/// H(p,1) structure with phi X_i = lambda X_{p+i} (lambda = +/-1, type C6).
template <typename S>
Tensor<S> hp1_sasakian_phi(int p, int lambda) {
  const int m = 2 * p + 1;
  Tensor<S> P(2, m);
  const S l = ScalarTraits<S>::from_int(lambda);
  for (int i = 0; i < p; ++i) {
    P(p + i, i) = l;
    P(i, p + i) = -l;
  }
  return P;
}

/// The three H(1,2) structures with sqrt(2)/2 coefficients (floating only).
inline CatalogEntry<double> h12_example(char tag, double eps = 1e-9) {
  const double s = std::sqrt(2.0) / 2.0;
  Tensor<double> P(2, 5);
  auto set_images = [&](std::initializer_list<std::pair<int, double>> col, int j) {
    for (auto [i, v] : col) P(i, j) = v;
  };
  switch (tag) {
    case 'A':
      set_images({{1, s}, {3, s}}, 0);    // phi X1 = s (X2 + X4)
      set_images({{0, -s}, {2, s}}, 1);   // phi X2 = s (-X1 + X3)
      set_images({{1, -s}, {3, s}}, 2);   // phi X3 = s (-X2 + X4)
      set_images({{0, -s}, {2, -s}}, 3);  // phi X4 = -s (X1 + X3)
      break;
    case 'B':
      set_images({{1, s}, {3, s}}, 0);    // phi X1 = s (X2 + X4)
      set_images({{0, -s}, {2, -s}}, 1);  // phi X2 = -s (X1 + X3)
      set_images({{1, s}, {3, -s}}, 2);   // phi X3 = s (X2 - X4)
      set_images({{0, -s}, {2, s}}, 3);   // phi X4 = s (-X1 + X3)
      break;
    case 'C':
      set_images({{1, s}, {2, s}}, 0);    // phi X1 = s (X2 + X3)
      set_images({{0, -s}, {3, s}}, 1);   // phi X2 = s (-X1 + X4)
      set_images({{0, -s}, {3, -s}}, 2);  // phi X3 = -s (X1 + X4)
      set_images({{1, -s}, {2, s}}, 3);   // phi X4 = s (-X2 + X3)
      break;
    default:
      throw ModelError(std::string("h12_example: unknown tag '") + tag + "'");
  }
  CatalogEntry<double> e = heisenberg_h1r<double>(2, P, eps);
  e.model.name = std::string("h12-") + tag;
  if (tag == 'A') {
    e.expected.class_active = std::set<int>{8, 9};
    e.expected.harmonic = true;
    e.expected.harmonic_map = true;
  } else if (tag == 'B') {
    e.expected.class_active = std::set<int>{8, 9, 11};
    e.expected.harmonic = true;
    e.expected.harmonic_map = true;
  } else {
    // (C) sits in the span C8+C9+C11 without being of any single type;
    // its C8 part happens to vanish identically.
    e.expected.class_active = std::set<int>{9, 11};
    e.expected.harmonic = false;
    e.expected.harmonic_map = false;
  }
  return e;
}

/// Round 3-sphere of radius r as SU(2) with [e_1,e_2] = (2/r) e_3 cyclic,
/// zeta = e_1, phi e_2 = e_3. The 1/r-Sasakian structure.
template <typename S>
CatalogEntry<S> sphere_su2(const S& r, double eps = 1e-9) {
  const double rd = ScalarTraits<S>::to_double(r);
  if (!(rd > 0)) throw ModelError("sphere_su2: r > 0 required");
  CatalogEntry<S> e;
  e.model = LieAlgebraModel<S>("su2", 3);
  const S k = ScalarTraits<S>::from_int(2) / r;
  e.model.bracket(0, 1, 2, k);
  e.model.bracket(1, 2, 0, k);
  e.model.bracket(2, 0, 1, k);
  e.model.validate(eps);
  Tensor<S> P(2, 3);
  P(2, 1) = ScalarTraits<S>::one();   // phi e_2 = e_3
  P(1, 2) = -ScalarTraits<S>::one();  // phi e_3 = -e_2
  e.acms = make_acms(P, 0, eps);
  e.expected.class_active = std::set<int>{6};
  e.expected.harmonic = true;
  e.expected.harmonic_map = true;
  e.expected.ac_einstein = true;
  e.expected.alpha = 1.0 / rd;
  e.expected.bending_density = 2.0 / (rd * rd);
  e.expected.s_ac = 2.0 / (rd * rd);
  e.expected_R = detail::constant_curvature(3, ScalarTraits<S>::one() / (r * r));
  return e;
}

/// Abelian algebra (flat, cosymplectic).
template <typename S>
CatalogEntry<S> abelian(int n, double eps = 1e-9) {
  const int m = 2 * n + 1;
  CatalogEntry<S> e;
  e.model = LieAlgebraModel<S>("abelian", m);
  e.model.validate(eps);
  e.acms = make_acms(detail::block_phi<S>(m, 0, n), m - 1, eps);
  e.expected.class_active = std::set<int>{};
  e.expected.harmonic = true;
  e.expected.harmonic_map = true;
  e.expected.nu_vanishes = true;
  e.expected.bending_density = 0.0;
  e.expected_R = Tensor<S>(4, m);
  return e;
}

}  // namespace acmg
