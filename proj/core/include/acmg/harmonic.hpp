#pragma once

#include <array>

#include "acmg/ricci_ac.hpp"
#include "acmg/torsion.hpp"

namespace acmg {

namespace detail {

/// so(m)-slice of a rank-3 torsion at frame direction i: A(j,k) = xi(i;j,k).
template <typename S>
Tensor<S> slice_first(const Tensor<S>& xi, int i) {
  const int m = xi.dim();
  Tensor<S> A(2, m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) A(j, k) = xi(i, j, k);
  return A;
}

/// Vector V = sum_i xi_{e_i} e_i.
template <typename S>
Tensor<S> xi_trace_vector(const Tensor<S>& xi) {
  return trace_slots(xi, 0, 1);
}

/// so-element xi_V for a vector V: (j,k) -> sum_a V(a) xi(a;j,k).
template <typename S>
Tensor<S> xi_of_vector(const Tensor<S>& xi, const Tensor<S>& V) {
  return contract_first(xi, V);
}

/// Perp projector Q = I - zeta zeta^T.
template <typename S>
Tensor<S> perp_projector(const AcmStructure<S>& acms) {
  const int m = acms.m();
  Tensor<S> Q = Tensor<S>::identity(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) Q(i, j) -= acms.zeta(i) * acms.zeta(j);
  return Q;
}

/// Restrict a 2-form to zeta-perp in both slots.
template <typename S>
Tensor<S> restrict_perp2(const Tensor<S>& w, const AcmStructure<S>& acms) {
  Tensor<S> Q = perp_projector(acms);
  return mat_mul(mat_mul(Q, w), Q);
}

/// u(n)-part of a 2-form: Hermitian half of the Lambda^2(zeta-perp) block.
template <typename S>
Tensor<S> un_part(const Tensor<S>& w, const AcmStructure<S>& acms) {
  const int m = acms.m();
  Tensor<S> wp = restrict_perp2(w, acms);
  Tensor<S> wpp(2, m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      S acc = ScalarTraits<S>::zero();
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) acc += acms.phi(a, x) * acms.phi(b, y) * wp(a, b);
      wpp(x, y) = acc;
    }
  return ScalarTraits<S>::fraction(1, 2) * (wp + wpp);
}

/// One-form kappa o phi: (kappa o phi)(x) = kappa(phi e_x).
template <typename S>
Tensor<S> compose_phi_1(const Tensor<S>& kappa, const AcmStructure<S>& acms) {
  return acms.compose_phi(kappa);
}

}  // namespace detail

/// d* xi computed two ways; the result is a u(n)^perp-valued 2-form.
template <typename S>
struct CoderivativeTorsion {
  Tensor<S> d_star_xi;     ///< rank-2
  double agreement = 0.0;  ///< residual between the two defining formulas
  double un_residual = 0.0;///< the u(n)-part must vanish
};

/// d* xi = -(nabla_{e_i} xi)_{e_i} = -(nabla^{U(n)}_{e_i} xi)_{e_i} - xi_{xi_{e_i} e_i}.
template <typename S>
CoderivativeTorsion<S> coderivative_torsion(const ConnectionCoefficients<S>& conn,
                                            const ConnectionCoefficients<S>& conn_u,
                                            const Tensor<S>& xi,
                                            const AcmStructure<S>& acms, double eps = 1e-9) {
  Tensor<S> grad = covariant_derivative(conn, xi);
  Tensor<S> route_a = -trace_slots(grad, 0, 1);

  Tensor<S> grad_u = covariant_derivative(conn_u, xi);
  Tensor<S> V = detail::xi_trace_vector(xi);
  Tensor<S> route_b = -trace_slots(grad_u, 0, 1) - detail::xi_of_vector(xi, V);

  CoderivativeTorsion<S> out;
  out.d_star_xi = route_a;
  out.agreement = (route_a - route_b).max_abs();
  out.un_residual = detail::un_part(route_a, acms).max_abs();
  if (out.agreement >= eps)
    throw InternalError("d*xi: the two defining formulas disagree, residual " +
                        std::to_string(out.agreement));
  return out;
}

/// One-form nu(X) = < xi_{e_i}, R_{e_i, X} >, the curvature-torsion pairing
/// whose vanishing upgrades a harmonic structure to a harmonic map.
template <typename S>
Tensor<S> nu_form(const Tensor<S>& xi, const CurvaturePackage<S>& curv) {
  const int m = xi.dim();
  Tensor<S> nu(1, m);
  for (int x = 0; x < m; ++x) {
    S acc = ScalarTraits<S>::zero();
    for (int i = 0; i < m; ++i)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) acc += xi(i, a, b) * curv.R(i, x, a, b);
    nu(x) = acc;
  }
  return nu;
}

/// The two characteristic contractions of the torsion and their identities
///   -2 xi_{e_i} phi e_i = (d*F)# + d*F(zeta) zeta + phi nabla_zeta zeta,
///   -2 xi_{e_i} e_i     = phi (d*F)# + 2 d*eta zeta + nabla_zeta zeta.
template <typename S>
struct CharacteristicContractions {
  Tensor<S> xi_phi_trace;  ///< sum_i xi_{e_i} phi e_i
  Tensor<S> xi_trace;      ///< sum_i xi_{e_i} e_i
  double residual_phi = 0.0;
  double residual_plain = 0.0;
};

template <typename S>
CharacteristicContractions<S> characteristic_contractions(const Tensor<S>& xi,
                                                          const AcmStructure<S>& acms,
                                                          const ConnectionCoefficients<S>& conn) {
  const int m = acms.m();
  const auto& P = acms.phi;
  CharacteristicContractions<S> out;

  out.xi_phi_trace = Tensor<S>(1, m);
  for (int k = 0; k < m; ++k) {
    S acc = ScalarTraits<S>::zero();
    for (int i = 0; i < m; ++i)
      for (int a = 0; a < m; ++a) acc += P(a, i) * xi(i, a, k);
    out.xi_phi_trace(k) = acc;
  }
  out.xi_trace = detail::xi_trace_vector(xi);

  Tensor<S> gF = covariant_derivative(conn, acms.phi);
  Tensor<S> gE = covariant_derivative(conn, acms.eta);
  Tensor<S> dsF(1, m);
  for (int x = 0; x < m; ++x) {
    S acc = ScalarTraits<S>::zero();
    for (int i = 0; i < m; ++i) acc -= gF(i, i, x);
    dsF(x) = acc;
  }
  S dsF_zeta = ScalarTraits<S>::zero();
  for (int x = 0; x < m; ++x) dsF_zeta += dsF(x) * acms.zeta(x);
  S ds_eta = ScalarTraits<S>::zero();
  for (int i = 0; i < m; ++i) ds_eta -= gE(i, i);
  // nabla_zeta zeta
  Tensor<S> nzz(1, m);
  for (int k = 0; k < m; ++k) {
    S acc = ScalarTraits<S>::zero();
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) acc += acms.zeta(a) * acms.zeta(b) * conn.gamma(a, b, k);
    nzz(k) = acc;
  }

  Tensor<S> lhs1 = ScalarTraits<S>::from_int(-2) * out.xi_phi_trace;
  Tensor<S> rhs1 = dsF + dsF_zeta * acms.zeta + acms.apply_phi(nzz);
  out.residual_phi = (lhs1 - rhs1).max_abs();

  Tensor<S> lhs2 = ScalarTraits<S>::from_int(-2) * out.xi_trace;
  Tensor<S> rhs2 = acms.apply_phi(dsF) + (ScalarTraits<S>::from_int(2) * ds_eta) * acms.zeta + nzz;
  out.residual_plain = (lhs2 - rhs2).max_abs();
  return out;
}

/// The seven equivalent harmonicity conditions, each evaluated independently.
struct HarmonicityVerdict {
  std::array<bool, 7> panel{};
  std::array<double, 7> residuals{};
  bool is_harmonic = false;
  bool is_harmonic_map = false;
  double d_star_xi_norm = 0.0;
  double nu_norm = 0.0;
};

template <typename S>
HarmonicityVerdict harmonicity_panel(const ConnectionCoefficients<S>& conn,
                                     const ConnectionCoefficients<S>& conn_u,
                                     const Tensor<S>& xi, const AcmStructure<S>& acms,
                                     double eps = 1e-9) {
  const int m = acms.m();
  const auto& P = acms.phi;
  const auto& eta = acms.eta;
  const auto& zeta = acms.zeta;

  const Tensor<S> lapF = rough_laplacian(conn, acms.phi);   // = <X, (lap phi) Y>
  const Tensor<S> lapEta = rough_laplacian(conn, acms.eta);

  // sum_i xi_{e_i}(xi_{e_i} eta) and the slice list
  std::vector<Tensor<S>> A(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) A[static_cast<std::size_t>(i)] = detail::slice_first(xi, i);
  Tensor<S> xixi_eta(1, m);
  std::vector<Tensor<S>> kappa(static_cast<std::size_t>(m));  // xi_{e_i} eta
  for (int i = 0; i < m; ++i) {
    kappa[static_cast<std::size_t>(i)] = act_so(A[static_cast<std::size_t>(i)], eta);
    xixi_eta += act_so(A[static_cast<std::size_t>(i)], kappa[static_cast<std::size_t>(i)]);
  }
  const double zeta_residual = (lapEta + xixi_eta).max_abs();  // lap eta = -xi xi eta

  HarmonicityVerdict v;

  // (i) d* xi = 0.
  auto cod = coderivative_torsion(conn, conn_u, xi, acms, eps);
  v.residuals[0] = cod.d_star_xi.max_abs();
  v.d_star_xi_norm = std::sqrt(std::max(0.0, ScalarTraits<S>::to_double(norm_sq(cod.d_star_xi))));

  // (ii) lap phi in u(n) + zeta-perp-c: the anti-Hermitian perp block and the
  // symmetric part both vanish; plus the zeta equation.
  {
    Tensor<S> w(2, m);  // two-form of lap phi: w(a,b) = <(lap phi) e_a, e_b> = lapF(b,a)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) w(a, b) = lapF(b, a);
    Tensor<S> sym = ScalarTraits<S>::fraction(1, 2) * (w + transpose(w));
    Tensor<S> skew = ScalarTraits<S>::fraction(1, 2) * (w - transpose(w));
    Tensor<S> anti = detail::restrict_perp2(skew, acms) - detail::un_part(skew, acms);
    v.residuals[1] = std::max({sym.max_abs(), anti.max_abs(), zeta_residual});
  }

  // (iii) [lap phi, phi] = 3 eta (x) lap zeta - 3 lap eta (x) zeta; plus zeta eq.
  {
    Tensor<S> T = lapF;  // operator matrix: T(i,j) = <e_i, (lap phi) e_j>
    Tensor<S> comm = mat_mul(T, P) - mat_mul(P, T);
    Tensor<S> rhs(2, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        rhs(i, j) = ScalarTraits<S>::from_int(3) * (eta(j) * lapEta(i) - lapEta(j) * zeta(i));
    v.residuals[2] = std::max((comm - rhs).max_abs(), zeta_residual);
  }

  // (iv) lap F (phi X, phi Y) = lap F (X_perp, Y_perp); plus eta equation.
  {
    Tensor<S> Q = detail::perp_projector(acms);
    double r = 0.0;
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) {
        S lhs = ScalarTraits<S>::zero();
        S rhs = ScalarTraits<S>::zero();
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) {
            lhs += P(a, x) * P(b, y) * lapF(a, b);
            rhs += Q(a, x) * Q(b, y) * lapF(a, b);
          }
        r = std::max(r, std::fabs(ScalarTraits<S>::to_double(lhs - rhs)));
      }
    v.residuals[3] = std::max(r, zeta_residual);
  }

  // (v) lap F (phi X, phi Y) = lap F (X,Y) - 3 (eta /\ (lap eta o phi))(X,Y).
  {
    Tensor<S> lephi = detail::compose_phi_1(lapEta, acms);
    double r = 0.0;
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) {
        S lhs = ScalarTraits<S>::zero();
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) lhs += P(a, x) * P(b, y) * lapF(a, b);
        S rhs = lapF(x, y) -
                ScalarTraits<S>::from_int(3) * (eta(x) * lephi(y) - eta(y) * lephi(x));
        r = std::max(r, std::fabs(ScalarTraits<S>::to_double(lhs - rhs)));
      }
    v.residuals[4] = std::max(r, zeta_residual);
  }

  // (vi) lap F = -4 F(xi_{e_i} ., xi_{e_i} .) + (xi eta) /\ (xi eta) o phi
  //      + eta /\ (xi xi eta) o phi.
  {
    Tensor<S> xxephi = detail::compose_phi_1(xixi_eta, acms);
    double r = 0.0;
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) {
        S t1 = ScalarTraits<S>::zero();
        for (int i = 0; i < m; ++i)
          for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) t1 += xi(i, x, a) * xi(i, y, b) * P(a, b);
        S t2 = ScalarTraits<S>::zero();
        for (int i = 0; i < m; ++i) {
          const auto& k = kappa[static_cast<std::size_t>(i)];
          Tensor<S> kphi = detail::compose_phi_1(k, acms);
          t2 += k(x) * kphi(y) - k(y) * kphi(x);
        }
        S t3 = eta(x) * xxephi(y) - eta(y) * xxephi(x);
        S rhs = ScalarTraits<S>::from_int(-4) * t1 + t2 + t3;
        r = std::max(r, std::fabs(ScalarTraits<S>::to_double(lapF(x, y) - rhs)));
      }
    v.residuals[5] = r;
  }

  // (vii) perp block and eta part of (nabla^{U(n)}_{e_i} xi)_{e_i} + xi_{xi_{e_i} e_i}.
  {
    Tensor<S> grad_u = covariant_derivative(conn_u, xi);
    Tensor<S> M = trace_slots(grad_u, 0, 1) +
                  detail::xi_of_vector(xi, detail::xi_trace_vector(xi));
    Tensor<S> Mperp = detail::restrict_perp2(M, acms);
    Tensor<S> Meta = act_so(M, eta);
    v.residuals[6] = std::max(Mperp.max_abs(), Meta.max_abs());
  }

  for (int i = 0; i < 7; ++i) v.panel[static_cast<std::size_t>(i)] = v.residuals[static_cast<std::size_t>(i)] < eps;

  bool all_same = true;
  for (int i = 1; i < 7; ++i)
    if (v.panel[static_cast<std::size_t>(i)] != v.panel[0]) all_same = false;
  if (!all_same) {
    std::string msg = "harmonicity panel disagrees:";
    for (int i = 0; i < 7; ++i)
      msg += " (" + std::to_string(i + 1) + ") " + std::to_string(v.residuals[static_cast<std::size_t>(i)]);
    throw InternalError(msg);
  }

  v.is_harmonic = v.panel[0];
  return v;
}

/// Skew-torsion report: xi_X Y = -xi_Y X makes a harmonic structure a
/// harmonic map automatically.
template <typename S>
struct SkewTorsionReport {
  bool is_skew = false;
  double residual = 0.0;
};

template <typename S>
SkewTorsionReport<S> skew_torsion_check(const Tensor<S>& xi, double eps = 1e-9) {
  const int m = xi.dim();
  SkewTorsionReport<S> out;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        out.residual = std::max(out.residual,
                                std::fabs(ScalarTraits<S>::to_double(xi(i, j, k) + xi(j, i, k))));
  out.is_skew = out.residual < eps;
  return out;
}

/// Residual of the stabilised-tensor Laplacian identity
/// lap Psi = (nabla^{U(n)}_{e_i} xi)_{e_i} Psi + xi_{xi_{e_i} e_i} Psi
///           - xi_{e_i}(xi_{e_i} Psi)
/// for a U(n)-stabilised tensor Psi with constant components.
template <typename S>
double lapstaten_residual(const ConnectionCoefficients<S>& conn,
                          const ConnectionCoefficients<S>& conn_u, const Tensor<S>& xi,
                          const Tensor<S>& psi) {
  Tensor<S> lap = rough_laplacian(conn, psi);
  Tensor<S> grad_u = covariant_derivative(conn_u, xi);
  Tensor<S> D = trace_slots(grad_u, 0, 1);
  Tensor<S> V = detail::xi_trace_vector(xi);
  Tensor<S> rhs = act_so(D, psi) + act_so(detail::xi_of_vector(xi, V), psi);
  const int m = xi.dim();
  for (int i = 0; i < m; ++i) {
    Tensor<S> A = detail::slice_first(xi, i);
    rhs -= act_so(A, act_so(A, psi));
  }
  return (lap - rhs).max_abs();
}

}  // namespace acmg
