#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "acmg/acms.hpp"
#include "acmg/curvature.hpp"

namespace acmg {

struct DecompositionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Intrinsic torsion xi of the U(n)x1-structure, xi(i;j,k) = <xi_{e_i} e_j, e_k>.
/// xi = nabla^{U(n)} - nabla lies in T* (x) u(n)^perp.
template <typename S>
struct IntrinsicTorsion {
  Tensor<S> xi;
  double line_agreement = 0.0;  ///< residual between the two defining formulas
  double membership = 0.0;      ///< residual of the torsion-space characterisation
};

/// Residual of phi xi_X Y + xi_X phi Y = eta(Y) phi xi_X zeta + eta(xi_X phi Y) zeta.
template <typename S>
double torsion_membership_residual(const Tensor<S>& xi, const AcmStructure<S>& acms) {
  const int m = acms.m();
  const auto& P = acms.phi;
  double r = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        S lhs = ScalarTraits<S>::zero();
        for (int a = 0; a < m; ++a) lhs += P(k, a) * xi(i, j, a) + P(a, j) * xi(i, a, k);
        S t1 = ScalarTraits<S>::zero();  // eta(Y) (phi xi_X zeta)_k
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) t1 += P(k, a) * xi(i, b, a) * acms.zeta(b);
        t1 *= acms.eta(j);
        S t2 = ScalarTraits<S>::zero();  // eta(xi_X phi Y) zeta_k
        for (int a = 0; a < m; ++a)
          for (int c = 0; c < m; ++c) t2 += P(a, j) * xi(i, a, c) * acms.zeta(c);
        t2 *= acms.zeta(k);
        r = std::max(r, std::fabs(ScalarTraits<S>::to_double(lhs - t1 - t2)));
      }
  return r;
}

/// The intrinsic torsion from the Levi-Civita connection:
///   xi_X = -1/2 phi o nabla_X phi + nabla_X eta (x) zeta - 1/2 eta (x) nabla_X zeta
///        =  1/2 (nabla_X phi) o phi + 1/2 nabla_X eta (x) zeta - eta (x) nabla_X zeta.
/// Both lines are evaluated; disagreement or membership failure is an internal error.
template <typename S>
IntrinsicTorsion<S> intrinsic_torsion(const ConnectionCoefficients<S>& conn,
                                      const AcmStructure<S>& acms, double eps = 1e-9) {
  const int m = acms.m();
  const Tensor<S> gF = covariant_derivative(conn, acms.phi);
  const Tensor<S> gE = covariant_derivative(conn, acms.eta);
  const auto& P = acms.phi;
  const S half = ScalarTraits<S>::fraction(1, 2);

  Tensor<S> xi1(3, m), xi2(3, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        S a1 = ScalarTraits<S>::zero();
        S a2 = ScalarTraits<S>::zero();
        for (int a = 0; a < m; ++a) {
          a1 += P(k, a) * gF(i, a, j);  // <e_k, phi((nabla phi) e_j)>
          a2 += gF(i, k, a) * P(a, j);  // <e_k, (nabla phi)(phi e_j)>
        }
        xi1(i, j, k) = -half * a1 + gE(i, j) * acms.zeta(k) - half * acms.eta(j) * gE(i, k);
        xi2(i, j, k) = half * a2 + half * gE(i, j) * acms.zeta(k) - acms.eta(j) * gE(i, k);
      }

  IntrinsicTorsion<S> out;
  out.xi = xi1;
  out.line_agreement = (xi1 - xi2).max_abs();
  out.membership = torsion_membership_residual(xi1, acms);
  if (out.line_agreement >= eps)
    throw InternalError("intrinsic torsion: defining formulas disagree, residual " +
                        std::to_string(out.line_agreement));
  if (out.membership >= eps)
    throw InternalError("intrinsic torsion: torsion-space membership fails, residual " +
                        std::to_string(out.membership));
  return out;
}

/// Minimal U(n)-connection nabla^{U(n)} = nabla + xi.
template <typename S>
ConnectionCoefficients<S> minimal_connection(const ConnectionCoefficients<S>& conn,
                                             const Tensor<S>& xi) {
  ConnectionCoefficients<S> u;
  u.gamma = conn.gamma + xi;
  return u;
}

/// (nabla F) induced by a torsion (component): (-xi F) with the so-action,
/// i.e. gF(a;b,c) = sum_d xi(a;b,d) F(d,c) + xi(a;c,d) F(b,d).
template <typename S>
Tensor<S> grad_F_of_xi(const Tensor<S>& xi, const AcmStructure<S>& acms) {
  const int m = acms.m();
  const auto& F = acms.phi;
  Tensor<S> out(3, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        S acc = ScalarTraits<S>::zero();
        for (int d = 0; d < m; ++d) acc += xi(a, b, d) * F(d, c) + xi(a, c, d) * F(b, d);
        out(a, b, c) = acc;
      }
  return out;
}

/// (nabla eta) induced by a torsion (component): gE(a;b) = eta(xi_{e_a} e_b).
template <typename S>
Tensor<S> grad_eta_of_xi(const Tensor<S>& xi, const AcmStructure<S>& acms) {
  const int m = acms.m();
  Tensor<S> out(2, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      S acc = ScalarTraits<S>::zero();
      for (int d = 0; d < m; ++d) acc += xi(a, b, d) * acms.zeta(d);
      out(a, b) = acc;
    }
  return out;
}

/// The twelve orthogonal components of the intrinsic torsion, each stored as
/// a full xi-shaped tensor, plus their squared norms and the split residuals.
template <typename S>
struct TorsionComponents {
  std::array<Tensor<S>, 12> comps;  ///< comps[i-1] is the C_i part
  std::array<S, 12> norms_sq;
  double completeness = 0.0;   ///< |sum comps - xi|
  double orthogonality = 0.0;  ///< max |<comps_i, comps_j>|, i != j
  double membership = 0.0;     ///< max torsion-space residual over components

  S total_norm_sq() const {
    S acc = ScalarTraits<S>::zero();
    for (const auto& x : norms_sq) acc += x;
    return acc;
  }
};

namespace detail {

/// b o (phi, phi): out(i,j) = sum_{a,b} P(a,i) P(b,j) t(a,b).
template <typename S>
Tensor<S> compose_phi_phi(const Tensor<S>& t, const Tensor<S>& P) {
  const int m = t.dim();
  Tensor<S> out(2, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      S acc = ScalarTraits<S>::zero();
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) acc += P(a, i) * P(b, j) * t(a, b);
      out(i, j) = acc;
    }
  return out;
}

/// c o (phi, phi, id) on the first two slots of a rank-3 tensor.
template <typename S>
Tensor<S> compose_phi_phi_id(const Tensor<S>& t, const Tensor<S>& P) {
  const int m = t.dim();
  Tensor<S> out(3, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        S acc = ScalarTraits<S>::zero();
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) acc += P(a, i) * P(b, j) * t(a, b, k);
        out(i, j, k) = acc;
      }
  return out;
}

template <typename S>
Tensor<S> cyclic_average3(const Tensor<S>& t) {
  const int m = t.dim();
  Tensor<S> out(3, m);
  const S third = ScalarTraits<S>::fraction(1, 3);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        out(i, j, k) = third * (t(i, j, k) + t(j, k, i) + t(k, i, j));
  return out;
}

/// The C4 model tensor c_theta(X,Y,Z) =
///   <X,Y> theta(Z) - <X,Z> theta(Y) - <X,phiY> theta(phiZ) + <X,phiZ> theta(phiY)
/// on zeta-perp (Q is the perp projector, F the fundamental form).
template <typename S>
Tensor<S> c4_model(const Tensor<S>& theta, const Tensor<S>& Q, const Tensor<S>& P) {
  const int m = theta.dim();
  Tensor<S> thphi(1, m);  // theta o phi
  for (int k = 0; k < m; ++k) {
    S acc = ScalarTraits<S>::zero();
    for (int a = 0; a < m; ++a) acc += theta(a) * P(a, k);
    thphi(k) = acc;
  }
  Tensor<S> out(3, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        out(i, j, k) = Q(i, j) * theta(k) - Q(i, k) * theta(j) - P(i, j) * thphi(k) +
                       P(i, k) * thphi(j);
  return out;
}

}  // namespace detail

/// Orthogonal decomposition of the intrinsic torsion into the twelve
/// irreducible U(n)-modules.
///
/// Block structure: for X in zeta-perp the value splits into its
/// Lambda^2(zeta-perp) part (modules 1..4, Gray-Hervella pattern) and its
/// eta-wedge part b(X,Y) = <xi_X zeta, Y> (modules 5..10, via the Hermitian
/// type and symmetry of b); xi_zeta contributes modules 11 and 12.
template <typename S>
TorsionComponents<S> decompose(const Tensor<S>& xi, const AcmStructure<S>& acms,
                               double eps = 1e-9) {
  const int m = acms.m();
  const int n = acms.n;
  const auto& P = acms.phi;
  const auto& zeta = acms.zeta;

  // Perp projector Q = I - zeta zeta^T.
  Tensor<S> Q = Tensor<S>::identity(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) Q(i, j) -= zeta(i) * zeta(j);

  auto project1 = [&](const Tensor<S>& v) {
    Tensor<S> out(1, m);
    for (int i = 0; i < m; ++i) {
      S acc = ScalarTraits<S>::zero();
      for (int a = 0; a < m; ++a) acc += Q(i, a) * v(a);
      out(i) = acc;
    }
    return out;
  };

  // (B1) fully perp block.
  Tensor<S> c(3, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        S acc = ScalarTraits<S>::zero();
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            for (int d = 0; d < m; ++d) acc += Q(i, a) * Q(j, b) * Q(k, d) * xi(a, b, d);
        c(i, j, k) = acc;
      }

  // (B2) eta-valued block b(X,Y) = <xi_X zeta, Y> on perp x perp.
  Tensor<S> b(2, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      S acc = ScalarTraits<S>::zero();
      for (int a = 0; a < m; ++a)
        for (int s = 0; s < m; ++s)
          for (int d = 0; d < m; ++d) acc += Q(i, a) * zeta(s) * Q(j, d) * xi(a, s, d);
      b(i, j) = acc;
    }

  // (B3)/(B4) xi_zeta blocks.
  Tensor<S> c11(2, m);
  Tensor<S> v(1, m);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      S acc = ScalarTraits<S>::zero();
      for (int a = 0; a < m; ++a)
        for (int bb = 0; bb < m; ++bb)
          for (int d = 0; d < m; ++d) acc += zeta(a) * Q(j, bb) * Q(k, d) * xi(a, bb, d);
      c11(j, k) = acc;
    }
    S acc = ScalarTraits<S>::zero();
    for (int a = 0; a < m; ++a)
      for (int s = 0; s < m; ++s)
        for (int d = 0; d < m; ++d) acc += zeta(a) * zeta(s) * Q(j, d) * xi(a, s, d);
    v(j) = acc;
  }

  const S half = ScalarTraits<S>::fraction(1, 2);

  // B1 subsplit.
  Tensor<S> cpp = detail::compose_phi_phi_id(c, P);
  Tensor<S> p12 = half * (c - cpp);
  Tensor<S> p34 = half * (c + cpp);
  Tensor<S> c1 = detail::cyclic_average3(p12);
  Tensor<S> c2 = p12 - c1;

  Tensor<S> c4(3, m), c3(3, m);
  if (n > 1) {
    // theta = V / (8(n-1)) with <t, c_theta> = theta(V);
    // V = a - b - phi f1 + phi f2 from the four contractions of t = p34.
    Tensor<S> av = trace_slots(p34, 0, 1);
    Tensor<S> bv = trace_slots(p34, 0, 2);
    Tensor<S> f1(1, m), f2(1, m);
    for (int k = 0; k < m; ++k) {
      S s1 = ScalarTraits<S>::zero();
      S s2 = ScalarTraits<S>::zero();
      for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
          s1 += p34(x, y, k) * P(x, y);
          s2 += p34(x, k, y) * P(x, y);
        }
      f1(k) = s1;
      f2(k) = s2;
    }
    Tensor<S> V(1, m);
    for (int i = 0; i < m; ++i) {
      S pf1 = ScalarTraits<S>::zero();
      S pf2 = ScalarTraits<S>::zero();
      for (int j = 0; j < m; ++j) {
        pf1 += P(i, j) * f1(j);
        pf2 += P(i, j) * f2(j);
      }
      V(i) = av(i) - bv(i) - pf1 + pf2;
    }
    Tensor<S> theta = project1(V);
    theta *= ScalarTraits<S>::fraction(1, 8 * (n - 1));
    c4 = detail::c4_model(theta, Q, P);
    c3 = p34 - c4;
  } else {
    c3 = p34;  // both vanish identically when n = 1
  }

  // B2 subsplit.
  Tensor<S> bpp = detail::compose_phi_phi(b, P);
  Tensor<S> bplus = half * (b + bpp);
  Tensor<S> bminus = half * (b - bpp);
  Tensor<S> bplus_sym = half * (bplus + transpose(bplus));
  Tensor<S> bplus_skew = half * (bplus - transpose(bplus));
  Tensor<S> bminus_sym = half * (bminus + transpose(bminus));
  Tensor<S> bminus_skew = half * (bminus - transpose(bminus));

  Tensor<S> b5 = (trace(bplus_sym) * ScalarTraits<S>::fraction(1, 2 * n)) * Q;
  Tensor<S> b8 = bplus_sym - b5;
  Tensor<S> b9 = bminus_sym;
  Tensor<S> b6 = (inner(bplus_skew, P) * ScalarTraits<S>::fraction(1, 2 * n)) * P;
  Tensor<S> b7 = bplus_skew - b6;
  Tensor<S> b10 = bminus_skew;

  auto from_b = [&](const Tensor<S>& bi) {
    Tensor<S> out(3, m);
    for (int a = 0; a < m; ++a)
      for (int y = 0; y < m; ++y)
        for (int z = 0; z < m; ++z)
          out(a, y, z) = acms.eta(y) * bi(a, z) - bi(a, y) * acms.eta(z);
    return out;
  };

  Tensor<S> t11(3, m), t12(3, m);
  for (int a = 0; a < m; ++a)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z) {
        t11(a, y, z) = acms.eta(a) * c11(y, z);
        t12(a, y, z) = acms.eta(a) * (acms.eta(y) * v(z) - v(y) * acms.eta(z));
      }

  TorsionComponents<S> out;
  out.comps = {c1, c2, c3, c4, from_b(b5), from_b(b6), from_b(b7), from_b(b8),
               from_b(b9), from_b(b10), t11, t12};
  for (int i = 0; i < 12; ++i) out.norms_sq[static_cast<std::size_t>(i)] = norm_sq(out.comps[static_cast<std::size_t>(i)]);

  Tensor<S> sum(3, m);
  for (const auto& t : out.comps) sum += t;
  out.completeness = (sum - xi).max_abs();
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j)
      out.orthogonality = std::max(out.orthogonality,
                                   std::fabs(ScalarTraits<S>::to_double(inner(
                                       out.comps[static_cast<std::size_t>(i)], out.comps[static_cast<std::size_t>(j)]))));
  for (const auto& t : out.comps)
    out.membership = std::max(out.membership, torsion_membership_residual(t, acms));

  const double scale = std::max(1.0, ScalarTraits<S>::to_double(norm_sq(xi)));
  if (out.completeness >= eps * scale || out.orthogonality >= eps * scale ||
      out.membership >= eps * scale)
    throw DecompositionError("torsion decomposition invariants failed: completeness " +
                             std::to_string(out.completeness) + ", orthogonality " +
                             std::to_string(out.orthogonality) + ", membership " +
                             std::to_string(out.membership));
  return out;
}

/// Active modules and all matching named classes from the dictionary.
struct ClassSignature {
  std::set<int> active;                ///< subset of {1..12}
  std::vector<std::string> labels;     ///< every matching named class
  std::optional<double> alpha;         ///< for alpha-Sasakian / alpha-Kenmotsu
  std::string alpha_exact;             ///< exact-mode rendering of alpha, if any

  std::string active_string() const {
    std::string s;
    for (int i : active) s += (s.empty() ? "C" : "+C") + std::to_string(i);
    return s.empty() ? "{0}" : s;
  }
};

template <typename S>
ClassSignature class_signature(const TorsionComponents<S>& comps, const AcmStructure<S>& acms,
                               double eps = 1e-9) {
  ClassSignature sig;
  const S total = comps.total_norm_sq();
  for (int i = 0; i < 12; ++i) {
    const S& nsq = comps.norms_sq[static_cast<std::size_t>(i)];
    bool active;
    if constexpr (ScalarTraits<S>::exact) {
      active = !ScalarTraits<S>::is_zero(nsq, eps);
    } else {
      const double thr = std::max(eps * eps, eps * eps * ScalarTraits<S>::to_double(total));
      active = ScalarTraits<S>::to_double(nsq) > thr;
    }
    if (active) sig.active.insert(i + 1);
  }

  static const std::vector<std::pair<std::string, std::set<int>>> dictionary = {
      {"cosymplectic", {}},
      {"nearly-K-cosymplectic", {1}},
      {"alpha-Kenmotsu", {5}},
      {"alpha-Sasakian", {6}},
      {"trans-Sasakian", {5, 6}},
      {"almost cosymplectic", {2, 9}},
      {"quasi-Sasakian", {6, 7}},
      {"nearly-trans-Sasakian", {1, 5, 6}},
      {"quasi-K-cosymplectic", {1, 2, 9, 10}},
      {"normal", {3, 4, 5, 6, 7, 8}},
  };
  for (const auto& [name, span] : dictionary) {
    bool contained = true;
    for (int i : sig.active)
      if (!span.count(i)) {
        contained = false;
        break;
      }
    if (contained) sig.labels.push_back(name);
  }

  // alpha for the trans-Sasakian family: b6 = -alpha F, b5 = -alpha g|perp.
  if (sig.active == std::set<int>{6} || sig.active == std::set<int>{5} ||
      sig.active == std::set<int>{5, 6}) {
    // Recover from the component reconstruction: <xi_X zeta, Y> parts.
    const int m = acms.m();
    auto b_of = [&](const Tensor<S>& comp) {
      Tensor<S> b(2, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          S acc = ScalarTraits<S>::zero();
          for (int s = 0; s < m; ++s) acc += acms.zeta(s) * comp(i, s, j);
          b(i, j) = acc;
        }
      return b;
    };
    if (sig.active.count(6)) {
      Tensor<S> b6 = b_of(comps.comps[5]);
      S gamma = inner(b6, acms.phi) * ScalarTraits<S>::fraction(1, 2 * acms.n);
      S alpha = -gamma;
      sig.alpha = ScalarTraits<S>::to_double(alpha);
      sig.alpha_exact = ScalarTraits<S>::str(alpha);
    } else if (sig.active.count(5)) {
      Tensor<S> b5 = b_of(comps.comps[4]);
      S beta = trace(b5) * ScalarTraits<S>::fraction(1, 2 * acms.n);
      S alpha = -beta;  // 2n alpha = -d* eta and d* eta = 2n beta
      sig.alpha = ScalarTraits<S>::to_double(alpha);
      sig.alpha_exact = ScalarTraits<S>::str(alpha);
    }
  }
  return sig;
}

}  // namespace acmg
