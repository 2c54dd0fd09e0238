#pragma once

// Shared test fixtures: seeded random structures, torsion generators and a
// couple of extra Lie algebra models that are not part of the catalog.

#include <random>

#include "acmg/analysis.hpp"

namespace acmg::testing {

inline std::mt19937& rng() {
  static std::mt19937 gen(0x5eed);
  return gen;
}

inline double urand() {
  return std::uniform_real_distribution<double>(-1.0, 1.0)(rng());
}

/// Matrix exponential of a scaled skew matrix (scaling and squaring).
inline Tensor<double> mat_exp(Tensor<double> S) {
  const int m = S.dim();
  const int scale = 16;
  for (auto& x : S.data()) x /= scale;
  Tensor<double> E = Tensor<double>::identity(m);
  Tensor<double> term = Tensor<double>::identity(m);
  for (int k = 1; k <= 20; ++k) {
    term = mat_mul(term, S);
    term *= 1.0 / k;
    E += term;
  }
  for (int s = 0; s < 4; ++s) E = mat_mul(E, E);
  return E;
}

/// Random compatible complex structure on zeta-perp (zeta = e_{zi}):
/// conjugate the block structure by a random rotation of the perp space.
inline Tensor<double> random_phi(int m, int zi) {
  std::vector<int> perp;
  for (int k = 0; k < m; ++k)
    if (k != zi) perp.push_back(k);
  const int q = (m - 1) / 2;
  Tensor<double> J0(2, m);
  for (int k = 0; k < q; ++k) {
    J0(perp[static_cast<std::size_t>(2 * k + 1)], perp[static_cast<std::size_t>(2 * k)]) = 1.0;
    J0(perp[static_cast<std::size_t>(2 * k)], perp[static_cast<std::size_t>(2 * k + 1)]) = -1.0;
  }
  Tensor<double> S(2, m);
  for (std::size_t a = 0; a < perp.size(); ++a)
    for (std::size_t b = 0; b < a; ++b) {
      double v = urand();
      S(perp[a], perp[b]) = v;
      S(perp[b], perp[a]) = -v;
    }
  Tensor<double> E = mat_exp(S);
  return mat_mul(mat_mul(E, J0), transpose(E));
}

/// Random element of T* (x) u(n)^perp: random skew-valued rank-3 array with
/// the u(n)-part of every value removed.
inline Tensor<double> random_torsion(const AcmStructure<double>& acms) {
  const int m = acms.m();
  Tensor<double> xi(3, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < j; ++k) {
        double v = urand();
        xi(i, j, k) = v;
        xi(i, k, j) = -v;
      }
  Tensor<double> q = Tensor<double>::identity(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) q(i, j) -= acms.zeta(i) * acms.zeta(j);
  Tensor<double> out(3, m);
  for (int i = 0; i < m; ++i) {
    Tensor<double> w(2, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) w(a, b) = xi(i, a, b);
    Tensor<double> wp = mat_mul(mat_mul(q, w), q);
    Tensor<double> wpp(2, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        double acc = 0;
        for (int x = 0; x < m; ++x)
          for (int y = 0; y < m; ++y) acc += acms.phi(x, a) * acms.phi(y, b) * wp(x, y);
        wpp(a, b) = acc;
      }
    Tensor<double> herm = 0.5 * (wp + wpp);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) out(i, a, b) = xi(i, a, b) - herm(a, b);
  }
  return out;
}

/// Random U(n) x 1 frame rotation: orthogonal g with g phi = phi g, g zeta = zeta.
inline Tensor<double> random_un_rotation(const AcmStructure<double>& acms) {
  const int m = acms.m();
  Tensor<double> S(2, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < a; ++b) {
      double v = urand();
      S(a, b) = v;
      S(b, a) = -v;
    }
  // project to the commutant of phi within so(perp): A = Qperp S Qperp - phi S phi^T ...
  Tensor<double> q = Tensor<double>::identity(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) q(i, j) -= acms.zeta(i) * acms.zeta(j);
  Tensor<double> Sp = mat_mul(mat_mul(q, S), q);
  // A = Sp + phi Sp phi^T commutes with phi (phi^2 = -I on perp)
  Tensor<double> A = Sp + mat_mul(mat_mul(acms.phi, Sp), transpose(acms.phi));
  return mat_exp(A);
}

/// Jacobi eigensolver for small symmetric matrices; returns Q with
/// M = Q diag(w) Q^T.
inline void sym_eigen(const Tensor<double>& M, Tensor<double>& Q, std::vector<double>& w) {
  const int m = M.dim();
  Tensor<double> A = M;
  Q = Tensor<double>::identity(m);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (int p = 0; p < m; ++p)
      for (int q = p + 1; q < m; ++q) off += A(p, q) * A(p, q);
    if (off < 1e-26) break;
    for (int p = 0; p < m; ++p)
      for (int q = p + 1; q < m; ++q) {
        if (std::fabs(A(p, q)) < 1e-15) continue;
        const double theta = 0.5 * std::atan2(2 * A(p, q), A(q, q) - A(p, p));
        const double c = std::cos(theta), s = std::sin(theta);
        for (int k = 0; k < m; ++k) {
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < m; ++k) {
          const double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < m; ++k) {
          const double qkp = Q(k, p), qkq = Q(k, q);
          Q(k, p) = c * qkp - s * qkq;
          Q(k, q) = s * qkp + c * qkq;
        }
      }
  }
  w.assign(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) w[static_cast<std::size_t>(i)] = A(i, i);
}

/// Inverse square root of a symmetric positive-definite matrix.
inline Tensor<double> sym_inv_sqrt(const Tensor<double>& M) {
  Tensor<double> Q;
  std::vector<double> w;
  sym_eigen(M, Q, w);
  const int m = M.dim();
  Tensor<double> D(2, m);
  for (int i = 0; i < m; ++i) D(i, i) = 1.0 / std::sqrt(w[static_cast<std::size_t>(i)]);
  return mat_mul(mat_mul(Q, D), transpose(Q));
}

/// Berger-type deformed SU(2): [e_2,e_3] = l1 e_1, [e_3,e_1] = l2 e_2,
/// [e_1,e_2] = l3 e_3, zeta = e_1, phi e_2 = e_3.
inline CatalogEntry<double> berger(double l1, double l2, double l3) {
  CatalogEntry<double> e;
  e.model = LieAlgebraModel<double>("berger", 3);
  e.model.bracket(1, 2, 0, l1);
  e.model.bracket(2, 0, 1, l2);
  e.model.bracket(0, 1, 2, l3);
  e.model.validate(1e-9);
  Tensor<double> P(2, 3);
  P(2, 1) = 1.0;
  P(1, 2) = -1.0;
  e.acms = make_acms(P, 0);
  return e;
}

/// Product of two su(2) factors and a central direction, zeta central.
/// nabla zeta = 0 whatever phi is, so the whole torsion sits in the
/// C1..C4 range; the standard block phi gives C3+C4, a random one adds C1.
inline CatalogEntry<double> su2xsu2(double a1, double a2,
                                    const std::optional<Tensor<double>>& phi = {}) {
  CatalogEntry<double> e;
  e.model = LieAlgebraModel<double>("su2xsu2xR", 7);
  e.model.bracket(0, 1, 2, a1);
  e.model.bracket(1, 2, 0, a1);
  e.model.bracket(2, 0, 1, a1);
  e.model.bracket(3, 4, 5, a2);
  e.model.bracket(4, 5, 3, a2);
  e.model.bracket(5, 3, 4, a2);
  e.model.validate(1e-9);
  e.acms = make_acms(phi ? *phi : detail::block_phi<double>(7, 0, 3), 6);
  return e;
}

/// Solvable-Heisenberg hybrid: [e_1,e_2] = a e_2, [e_1,e_3] = -a e_3,
/// [e_2,e_3] = b e_4, zeta = e_1. nabla_zeta vanishes, so xi_zeta = 0 for
/// every compatible phi while both torsion blocks are populated; random phi
/// mixes C1..C4 with C8/C9 content.
inline CatalogEntry<double> solvable_heisenberg(int n, double a, double b,
                                                const std::optional<Tensor<double>>& phi = {}) {
  const int m = 2 * n + 1;
  CatalogEntry<double> e;
  e.model = LieAlgebraModel<double>("solv-heis", m);
  e.model.bracket(0, 1, 1, a);
  e.model.bracket(0, 2, 2, -a);
  e.model.bracket(1, 2, 3, b);
  e.model.validate(1e-9);
  e.acms = make_acms(phi ? *phi : detail::block_phi<double>(m, 1, n), 0);
  return e;
}

/// Unimodular solvable model: [e_1,e_2] = a e_2, [e_1,e_3] = -a e_3 plus an
/// abelian rest, zeta = e_1.
inline CatalogEntry<double> solvable(int n, double a) {
  const int m = 2 * n + 1;
  CatalogEntry<double> e;
  e.model = LieAlgebraModel<double>("solvable", m);
  e.model.bracket(0, 1, 1, a);
  e.model.bracket(0, 2, 2, -a);
  e.model.validate(1e-9);
  e.acms = make_acms(detail::block_phi<double>(m, 1, n), 0);
  return e;
}

/// Diagonal solvable model [e_1, e_j] = w_{j-1} e_j with cycling weights,
/// zeta = e_1. Generic weights give type C5+C8+C9; zero weight-sum per pair
/// block keeps the model unimodular.
inline CatalogEntry<double> solvable_weights(int n, const std::vector<double>& w,
                                             const std::optional<Tensor<double>>& phi = {}) {
  const int m = 2 * n + 1;
  CatalogEntry<double> e;
  e.model = LieAlgebraModel<double>("solv-weights", m);
  for (int j = 1; j < m; ++j)
    e.model.bracket(0, j, j, w[static_cast<std::size_t>(j - 1) % w.size()]);
  e.model.validate(1e-9);
  e.acms = make_acms(phi ? *phi : detail::block_phi<double>(m, 1, n), 0);
  return e;
}

}  // namespace acmg::testing
