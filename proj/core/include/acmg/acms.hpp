#pragma once

#include <string>
#include <vector>

#include "acmg/connection.hpp"

namespace acmg {

struct StructureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Almost contact metric structure (phi, zeta, eta) in frame components.
///
/// phi is stored through its fundamental two-form array
/// phi(i,j) = <e_i, phi e_j>, which doubles as F since the frame is
/// orthonormal. eta and zeta share components; both are kept to keep the
/// formulas aligned with their covariant/contravariant roles.
template <typename S>
struct AcmStructure {
  Tensor<S> phi;   ///< rank-2, phi(i,j) = <e_i, phi e_j> = F(e_i, e_j)
  Tensor<S> zeta;  ///< unit characteristic vector
  Tensor<S> eta;   ///< its metric dual (same components)
  int n = 0;       ///< m = 2n + 1

  int m() const { return phi.dim(); }

  /// Image vector phi(X) for a frame index: (phi e_j)_i = phi(i, j).
  S phi_entry(int i, int j) const { return phi(i, j); }

  /// eta(phi X) composition, phi applied to a covector kappa: kappa(phi .).
  Tensor<S> compose_phi(const Tensor<S>& kappa) const {
    if (kappa.rank() != 1) throw ShapeError("compose_phi: rank-1 input");
    Tensor<S> out(1, m());
    for (int j = 0; j < m(); ++j) {
      S acc = ScalarTraits<S>::zero();
      for (int i = 0; i < m(); ++i) acc += kappa(i) * phi(i, j);
      out(j) = acc;
    }
    return out;
  }

  /// phi applied to a vector: (phi v)_i = sum_j phi(i,j) v_j.
  Tensor<S> apply_phi(const Tensor<S>& v) const {
    if (v.rank() != 1) throw ShapeError("apply_phi: rank-1 input");
    Tensor<S> out(1, m());
    for (int i = 0; i < m(); ++i) {
      S acc = ScalarTraits<S>::zero();
      for (int j = 0; j < m(); ++j) acc += phi(i, j) * v(j);
      out(i) = acc;
    }
    return out;
  }

  /// Projection of a vector/covector onto zeta-perp.
  Tensor<S> project_perp(const Tensor<S>& v) const {
    Tensor<S> out = v;
    S e = ScalarTraits<S>::zero();
    for (int i = 0; i < m(); ++i) e += v(i) * zeta(i);
    for (int i = 0; i < m(); ++i) out(i) -= e * zeta(i);
    return out;
  }
};

/// Named residuals of the structure identities; empty means valid.
template <typename S>
struct StructureResiduals {
  std::vector<std::pair<std::string, double>> entries;

  double max() const {
    double r = 0.0;
    for (const auto& [k, v] : entries) r = std::max(r, v);
    return r;
  }
};

/// Validates phi^2 = -I + eta (x) zeta, the compatibility
/// <phi X, phi Y> = <X,Y> - eta(X) eta(Y), phi zeta = 0, eta o phi = 0,
/// |zeta| = 1, skewness of phi, and eta = zeta componentwise.
template <typename S>
StructureResiduals<S> validate(const AcmStructure<S>& acms) {
  const int m = acms.m();
  StructureResiduals<S> res;
  auto add = [&](const std::string& k, double v) { res.entries.emplace_back(k, v); };

  // Reject non-finite floating input outright; NaN would otherwise slip
  // through max-based residuals.
  {
    bool finite = true;
    for (const auto& x : acms.phi.data())
      finite = finite && std::isfinite(ScalarTraits<S>::to_double(x));
    for (const auto& x : acms.zeta.data())
      finite = finite && std::isfinite(ScalarTraits<S>::to_double(x));
    add("finite entries", finite ? 0.0 : std::numeric_limits<double>::infinity());
  }

  double skew = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      skew = std::max(skew, std::fabs(ScalarTraits<S>::to_double(acms.phi(i, j) + acms.phi(j, i))));
  add("phi skew-symmetric", skew);

  // phi^2 + I - eta (x) zeta
  Tensor<S> p2 = mat_mul(acms.phi, acms.phi);
  double sq = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      S want = -ScalarTraits<S>::from_int(i == j ? 1 : 0) + acms.zeta(i) * acms.eta(j);
      sq = std::max(sq, std::fabs(ScalarTraits<S>::to_double(p2(i, j) - want)));
    }
  add("phi^2 = -I + eta(x)zeta", sq);

  // <phi X, phi Y> = <X,Y> - eta(X) eta(Y); in components phi^T phi = I - eta eta^T.
  Tensor<S> ptp = mat_mul(transpose(acms.phi), acms.phi);
  double comp = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      S want = ScalarTraits<S>::from_int(i == j ? 1 : 0) - acms.eta(i) * acms.eta(j);
      comp = std::max(comp, std::fabs(ScalarTraits<S>::to_double(ptp(i, j) - want)));
    }
  add("<phiX,phiY> = <X,Y> - eta(X)eta(Y)", comp);

  add("phi zeta = 0", acms.apply_phi(acms.zeta).max_abs());
  add("eta o phi = 0", acms.compose_phi(acms.eta).max_abs());

  S nz = ScalarTraits<S>::zero();
  for (int i = 0; i < m; ++i) nz += acms.zeta(i) * acms.zeta(i);
  add("|zeta| = 1", std::fabs(ScalarTraits<S>::to_double(nz - ScalarTraits<S>::one())));

  double ez = 0.0;
  for (int i = 0; i < m; ++i)
    ez = std::max(ez, std::fabs(ScalarTraits<S>::to_double(acms.eta(i) - acms.zeta(i))));
  add("eta = zeta^flat", ez);

  if (acms.m() != 2 * acms.n + 1) add("m = 2n+1", 1.0);
  return res;
}

template <typename S>
void require_valid(const AcmStructure<S>& acms, double eps) {
  auto res = validate(acms);
  for (const auto& [k, v] : res.entries)
    if (v >= eps)
      throw StructureError("invalid almost contact metric structure: " + k +
                           " residual " + std::to_string(v));
}

/// Builds the structure from a phi matrix (given as phi(i,j) = <e_i, phi e_j>)
/// and the index of the characteristic frame vector.
template <typename S>
AcmStructure<S> make_acms(const Tensor<S>& phi, int zeta_index, double eps = 1e-9) {
  AcmStructure<S> acms;
  const int m = phi.dim();
  acms.phi = phi;
  acms.zeta = Tensor<S>(1, m);
  acms.zeta(zeta_index) = ScalarTraits<S>::one();
  acms.eta = acms.zeta;
  acms.n = (m - 1) / 2;
  require_valid(acms, eps);
  return acms;
}

/// Fundamental two-form F(X,Y) = <X, phi Y>; identical components to phi.
template <typename S>
Tensor<S> fundamental_form(const AcmStructure<S>& acms) {
  return acms.phi;
}

}  // namespace acmg
