#pragma once

#include <map>

#include "acmg/harmonic.hpp"

namespace acmg {

struct LedgerError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// dF, d*F, d eta, d* eta and their labeled U(n)-components.
template <typename S>
struct ExteriorPackage {
  Tensor<S> dF;       ///< 3-form
  Tensor<S> dsF;      ///< one-form d*F
  Tensor<S> deta;     ///< 2-form
  S ds_eta = ScalarTraits<S>::zero();

  std::map<std::string, Tensor<S>> dF_parts;   ///< keys "1","3","4","5","8","10,11"
  std::map<std::string, Tensor<S>> dsF_parts;  ///< keys "4,12","6"
  std::map<std::string, Tensor<S>> deta_parts; ///< keys "6","7","10","12"

  Tensor<S> R2;    ///< 2 (grad eta)_(10) o phi + (grad_zeta F)_(11); |dF_(10,11)|^2 = 3 |R2|^2
  Tensor<S> T412;  ///< -e_i -| (grad_{e_i} F)_(4) + (grad_zeta eta)_(12) o phi

  double dF_completeness = 0.0;
  double dsF_completeness = 0.0;
  double deta_completeness = 0.0;
  double vanishing_parts = 0.0;  ///< alt of components with no exterior image
};

template <typename S>
ExteriorPackage<S> exterior_package(const ConnectionCoefficients<S>& conn,
                                    const AcmStructure<S>& acms,
                                    const TorsionComponents<S>& comps) {
  const int m = acms.m();
  ExteriorPackage<S> ext;

  Tensor<S> gF = covariant_derivative(conn, acms.phi);
  Tensor<S> gE = covariant_derivative(conn, acms.eta);
  ext.dF = exterior_from_gradient(gF);
  ext.dsF = codifferential_from_gradient(gF);
  ext.deta = exterior_from_gradient(gE);
  {
    Tensor<S> d = codifferential_from_gradient(gE);
    ext.ds_eta = d.rank() == 0 ? d.data()[0] : ScalarTraits<S>::zero();
  }

  // Per-component gradients through the torsion isomorphism.
  std::array<Tensor<S>, 12> gFc, gEc;
  for (int i = 0; i < 12; ++i) {
    gFc[static_cast<std::size_t>(i)] = grad_F_of_xi(comps.comps[static_cast<std::size_t>(i)], acms);
    gEc[static_cast<std::size_t>(i)] = grad_eta_of_xi(comps.comps[static_cast<std::size_t>(i)], acms);
  }

  for (int i : {1, 3, 4, 5, 8})
    ext.dF_parts[std::to_string(i)] =
        exterior_from_gradient(gFc[static_cast<std::size_t>(i - 1)]);
  ext.dF_parts["10,11"] = exterior_from_gradient(gFc[9] + gFc[10]);

  double vanish = 0.0;
  for (int i : {2, 6, 7, 9, 12})
    vanish = std::max(vanish,
                      exterior_from_gradient(gFc[static_cast<std::size_t>(i - 1)]).max_abs());
  for (int i : {5, 8, 9})
    vanish = std::max(vanish,
                      exterior_from_gradient(gEc[static_cast<std::size_t>(i - 1)]).max_abs());
  ext.vanishing_parts = vanish;

  // d*F components: (d*F)_(6) = d*F(zeta) eta and the (4,12) combination.
  S dsF_zeta = ScalarTraits<S>::zero();
  for (int x = 0; x < m; ++x) dsF_zeta += ext.dsF(x) * acms.zeta(x);
  ext.dsF_parts["6"] = dsF_zeta * acms.eta;
  {
    Tensor<S> t1(1, m);  // -e_i -| (grad_{e_i} F)_(4)
    for (int x = 0; x < m; ++x) {
      S acc = ScalarTraits<S>::zero();
      for (int i = 0; i < m; ++i) acc -= gFc[3](i, i, x);
      t1(x) = acc;
    }
    Tensor<S> k(1, m);  // (grad_zeta eta)_(12)
    for (int x = 0; x < m; ++x) {
      S acc = ScalarTraits<S>::zero();
      for (int a = 0; a < m; ++a) acc += acms.zeta(a) * gEc[11](a, x);
      k(x) = acc;
    }
    ext.T412 = t1 + acms.compose_phi(k);
    ext.dsF_parts["4,12"] = ext.T412;
  }

  for (int i : {6, 7, 10, 12})
    ext.deta_parts[std::to_string(i)] =
        exterior_from_gradient(gEc[static_cast<std::size_t>(i - 1)]);

  // R2 = 2 (grad eta)_(10) o phi + (grad_zeta F)_(11), a 2-form; the sign of
  // the second slot is pinned by |dF_(10,11)|^2 = 3 |R2|^2 on torsions with
  // both components present.
  {
    Tensor<S> w(2, m);
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) {
        S acc = ScalarTraits<S>::zero();
        for (int a = 0; a < m; ++a) acc += gEc[9](x, a) * acms.phi(a, y);
        w(x, y) = acc + acc;
      }
    Tensor<S> sigma(2, m);
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z) {
        S acc = ScalarTraits<S>::zero();
        for (int a = 0; a < m; ++a) acc += acms.zeta(a) * gFc[10](a, y, z);
        sigma(y, z) = acc;
      }
    ext.R2 = w + sigma;
  }

  // Completeness of the splits.
  {
    Tensor<S> sum(3, m);
    for (const auto& [k, t] : ext.dF_parts) sum += t;
    ext.dF_completeness = (sum - ext.dF).max_abs();
    Tensor<S> sum1(1, m);
    for (const auto& [k, t] : ext.dsF_parts) sum1 += t;
    ext.dsF_completeness = (sum1 - ext.dsF).max_abs();
    Tensor<S> sum2(2, m);
    for (const auto& [k, t] : ext.deta_parts) sum2 += t;
    ext.deta_completeness = (sum2 - ext.deta).max_abs();
  }
  return ext;
}

/// Squared norms of the gradient/exterior quantities and the component
/// relations tying them to the torsion norms.
template <typename S>
struct NormLedger {
  S xi_sq, gradF_sq, gradEta_sq, dF_sq, dsF_sq, deta_sq, ds_eta;
  std::array<S, 12> gradF_parts_sq;
  std::array<S, 12> gradEta_parts_sq;
  std::map<std::string, S> dF_parts_sq;
  std::map<std::string, S> dsF_parts_sq;
  std::map<std::string, S> deta_parts_sq;
  std::vector<std::pair<std::string, double>> relations;  ///< name -> residual

  double max_residual() const {
    double r = 0.0;
    for (const auto& [k, v] : relations) r = std::max(r, v);
    return r;
  }
};

template <typename S>
NormLedger<S> norm_ledger(const TorsionComponents<S>& comps, const Tensor<S>& xi,
                          const ConnectionCoefficients<S>& conn, const AcmStructure<S>& acms,
                          const ExteriorPackage<S>& ext, double eps = 1e-9) {
  NormLedger<S> led;
  const int m = acms.m();
  const int n = acms.n;
  Tensor<S> gF = covariant_derivative(conn, acms.phi);
  Tensor<S> gE = covariant_derivative(conn, acms.eta);

  led.xi_sq = norm_sq(xi);
  led.gradF_sq = norm_sq(gF);
  led.gradEta_sq = norm_sq(gE);
  led.dF_sq = norm_sq(ext.dF);
  led.dsF_sq = norm_sq(ext.dsF);
  led.deta_sq = norm_sq(ext.deta);
  led.ds_eta = ext.ds_eta;

  std::array<Tensor<S>, 12> gFc, gEc;
  for (int i = 0; i < 12; ++i) {
    gFc[static_cast<std::size_t>(i)] = grad_F_of_xi(comps.comps[static_cast<std::size_t>(i)], acms);
    gEc[static_cast<std::size_t>(i)] = grad_eta_of_xi(comps.comps[static_cast<std::size_t>(i)], acms);
    led.gradF_parts_sq[static_cast<std::size_t>(i)] = norm_sq(gFc[static_cast<std::size_t>(i)]);
    led.gradEta_parts_sq[static_cast<std::size_t>(i)] = norm_sq(gEc[static_cast<std::size_t>(i)]);
  }
  for (const auto& [k, t] : ext.dF_parts) led.dF_parts_sq[k] = norm_sq(t);
  for (const auto& [k, t] : ext.dsF_parts) led.dsF_parts_sq[k] = norm_sq(t);
  for (const auto& [k, t] : ext.deta_parts) led.deta_parts_sq[k] = norm_sq(t);

  auto rel = [&](const std::string& name, const S& lhs, const S& rhs) {
    led.relations.emplace_back(name,
                               std::fabs(ScalarTraits<S>::to_double(lhs - rhs)));
  };
  auto i64 = [](long v) { return ScalarTraits<S>::from_int(v); };

  // Completeness of the gradient split.
  {
    Tensor<S> sF(3, m), sE(2, m);
    for (int i = 0; i < 12; ++i) {
      sF += gFc[static_cast<std::size_t>(i)];
      sE += gEc[static_cast<std::size_t>(i)];
    }
    led.relations.emplace_back("gradF = sum of parts", (sF - gF).max_abs());
    led.relations.emplace_back("gradEta = sum of parts", (sE - gE).max_abs());
  }

  rel("4|xi|^2 = |gradF|^2 + 6|gradEta|^2", i64(4) * led.xi_sq,
      led.gradF_sq + i64(6) * led.gradEta_sq);

  for (int i : {1, 2, 3, 4, 11}) {
    rel("4|xi_" + std::to_string(i) + "|^2 = |gradF_" + std::to_string(i) + "|^2",
        i64(4) * comps.norms_sq[static_cast<std::size_t>(i - 1)],
        led.gradF_parts_sq[static_cast<std::size_t>(i - 1)]);
    rel("|gradEta_" + std::to_string(i) + "|^2 = 0",
        led.gradEta_parts_sq[static_cast<std::size_t>(i - 1)], ScalarTraits<S>::zero());
  }
  for (int i : {5, 6, 7, 8, 9, 10, 12}) {
    rel("|xi_" + std::to_string(i) + "|^2 = |gradF_" + std::to_string(i) + "|^2",
        comps.norms_sq[static_cast<std::size_t>(i - 1)],
        led.gradF_parts_sq[static_cast<std::size_t>(i - 1)]);
    rel("|xi_" + std::to_string(i) + "|^2 = 2|gradEta_" + std::to_string(i) + "|^2",
        comps.norms_sq[static_cast<std::size_t>(i - 1)],
        i64(2) * led.gradEta_parts_sq[static_cast<std::size_t>(i - 1)]);
  }

  rel("|dF_1|^2 = 9|gradF_1|^2", led.dF_parts_sq["1"], i64(9) * led.gradF_parts_sq[0]);
  rel("|dF_3|^2 = 3|gradF_3|^2", led.dF_parts_sq["3"], i64(3) * led.gradF_parts_sq[2]);
  rel("|dF_4|^2 = 3|gradF_4|^2", led.dF_parts_sq["4"], i64(3) * led.gradF_parts_sq[3]);
  rel("|dF_5|^2 = 6|gradF_5|^2", led.dF_parts_sq["5"], i64(6) * led.gradF_parts_sq[4]);
  rel("|dF_8|^2 = 6|gradF_8|^2", led.dF_parts_sq["8"], i64(6) * led.gradF_parts_sq[7]);
  rel("|dF_10,11|^2 = 3|R2|^2", led.dF_parts_sq["10,11"], i64(3) * norm_sq(ext.R2));

  rel("|d*F_6|^2 = n|gradF_6|^2", led.dsF_parts_sq["6"], i64(n) * led.gradF_parts_sq[5]);
  {
    // |e -| gradF_4|^2 = (n-1)/2 |gradF_4|^2 and |gradEta_12|^2 = |(grad_zeta eta)_12|^2.
    Tensor<S> gF4 = gFc[3];
    Tensor<S> hook(1, m);
    for (int x = 0; x < m; ++x) {
      S acc = ScalarTraits<S>::zero();
      for (int i = 0; i < m; ++i) acc += gF4(i, i, x);
      hook(x) = acc;
    }
    rel("2|e -| gradF_4|^2 = (n-1)|gradF_4|^2", i64(2) * norm_sq(hook),
        i64(n - 1) * led.gradF_parts_sq[3]);
    Tensor<S> k(1, m);
    for (int x = 0; x < m; ++x) {
      S acc = ScalarTraits<S>::zero();
      for (int a = 0; a < m; ++a) acc += acms.zeta(a) * gEc[11](a, x);
      k(x) = acc;
    }
    rel("|gradEta_12|^2 = |(grad_zeta eta)_12|^2", led.gradEta_parts_sq[11], norm_sq(k));
  }

  for (int i : {6, 7, 10})
    rel("|deta_" + std::to_string(i) + "|^2 = 4|gradEta_" + std::to_string(i) + "|^2",
        led.deta_parts_sq[std::to_string(i)],
        i64(4) * led.gradEta_parts_sq[static_cast<std::size_t>(i - 1)]);
  rel("|deta_12|^2 = 2|gradEta_12|^2", led.deta_parts_sq["12"], i64(2) * led.gradEta_parts_sq[11]);
  rel("(d*eta)^2 = 2n|gradEta_5|^2", led.ds_eta * led.ds_eta, i64(2 * n) * led.gradEta_parts_sq[4]);

  led.relations.emplace_back("dF split completeness", ext.dF_completeness);
  led.relations.emplace_back("d*F split completeness", ext.dsF_completeness);
  led.relations.emplace_back("deta split completeness", ext.deta_completeness);
  led.relations.emplace_back("vanishing exterior parts", ext.vanishing_parts);

  const double scale = std::max(1.0, ScalarTraits<S>::to_double(led.xi_sq));
  for (const auto& [name, r] : led.relations)
    if (r >= eps * scale) throw LedgerError("norm ledger relation failed: " + name +
                                            " residual " + std::to_string(r));
  return led;
}

/// Pointwise Bochner-type identities. Left-invariant integrands are constant,
/// so on unimodular groups (which admit compact quotients) the integral
/// identities can be asserted pointwise; otherwise they are evaluated only.
template <typename S>
struct BochnerIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
  bool asserted = false;
  double residual() const { return std::fabs(lhs - rhs); }
};

template <typename S>
struct BochnerReport {
  BochnerIdentity<S> F_identity;        ///< |dF|^2/3 + 2|d*F|^2 - |gradF|^2 = 2(s - s^ac - Ric(z,z))
  BochnerIdentity<S> eta_identity;      ///< |deta|^2/2 + |d*eta|^2 - |gradEta|^2 = Ric(z,z)
  BochnerIdentity<S> eq1;               ///< the signed component identity
  BochnerIdentity<S> eq2;               ///< (2n-1)N5 + N6 + N7 - N8 - N9 + N10 = 2 Ric(z,z)
  BochnerIdentity<S> borlam;            ///< conformally-flat minimiser integrand
  BochnerIdentity<S> eq2_einstein;      ///< Einstein specialisation = 2s/(2n+1)
  bool unimodular = false;
  bool conformally_flat = false;
  bool einstein = false;

  double max_asserted_residual() const {
    double r = 0.0;
    for (const auto* id : {&F_identity, &eta_identity, &eq1, &eq2, &borlam, &eq2_einstein})
      if (id->asserted) r = std::max(r, id->residual());
    return r;
  }
};

template <typename S>
BochnerReport<S> bochner_report(const NormLedger<S>& led, const TorsionComponents<S>& comps,
                                const CurvaturePackage<S>& curv, const AcmStructure<S>& acms,
                                const ExteriorPackage<S>& ext, bool unimodular,
                                double eps = 1e-9) {
  BochnerReport<S> rep;
  const int m = acms.m();
  const int n = acms.n;
  rep.unimodular = unimodular;
  rep.conformally_flat = is_conformally_flat(curv, m, eps);
  rep.einstein = is_einstein(curv, eps);

  auto d = [](const S& x) { return ScalarTraits<S>::to_double(x); };
  double ric_zz = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      ric_zz += d(acms.zeta(a) * acms.zeta(b) * curv.Ric(a, b));
  double s = d(curv.s);
  double s_ac;
  {
    // trace of Ric^ac recomputed locally to keep this module self-contained
    S acc = ScalarTraits<S>::zero();
    for (int x = 0; x < m; ++x)
      for (int i = 0; i < m; ++i)
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            acc += curv.R(i, x, a, b) * acms.phi(a, i) * acms.phi(b, x);
    s_ac = d(acc);
  }

  std::array<double, 12> N;
  for (int i = 0; i < 12; ++i) N[static_cast<std::size_t>(i)] = d(comps.norms_sq[static_cast<std::size_t>(i)]);
  const double R2sq = d(norm_sq(ext.R2));
  const double T412sq = d(norm_sq(ext.T412));

  rep.F_identity.lhs = d(led.dF_sq) / 3.0 + 2.0 * d(led.dsF_sq) - d(led.gradF_sq);
  rep.F_identity.rhs = 2.0 * (s - s_ac - ric_zz);
  rep.F_identity.asserted = unimodular;

  rep.eta_identity.lhs = d(led.deta_sq) / 2.0 + d(led.ds_eta) * d(led.ds_eta) - d(led.gradEta_sq);
  rep.eta_identity.rhs = ric_zz;
  rep.eta_identity.asserted = unimodular;

  rep.eq1.lhs = 8 * N[0] - 4 * N[1] + N[4] + (2 * n - 1) * N[5] - N[6] + N[7] - N[8] - N[9] -
                4 * N[10] - N[11] + R2sq + 2 * T412sq;
  rep.eq1.rhs = 2.0 * (s - s_ac - ric_zz);
  rep.eq1.asserted = unimodular;

  rep.eq2.lhs = (2 * n - 1) * N[4] + N[5] + N[6] - N[7] - N[8] + N[9];
  rep.eq2.rhs = 2.0 * ric_zz;
  rep.eq2.asserted = unimodular;

  rep.borlam.lhs = (2.0 * (n - 1) / (2 * n - 1)) * s;
  rep.borlam.rhs = 4 * N[0] - 2 * N[1] + (n - 1) * N[4] +
                   ((2.0 * n + 1) * (n - 1) / (2 * n - 1)) * N[5] - N[6] / (2 * n - 1) +
                   N[7] / (2 * n - 1) - (2.0 * (n - 1) / (2 * n - 1)) * N[8] -
                   N[9] / (2 * n - 1) - 2 * N[10] - N[11] + 0.5 * R2sq + T412sq;
  rep.borlam.asserted = unimodular && rep.conformally_flat && n > 1;

  rep.eq2_einstein.lhs = rep.eq2.lhs;
  rep.eq2_einstein.rhs = 2.0 * s / (2 * n + 1);
  rep.eq2_einstein.asserted = unimodular && rep.einstein;

  const double scale = std::max(1.0, d(led.xi_sq));
  for (const auto* id : {&rep.F_identity, &rep.eta_identity, &rep.eq1, &rep.eq2, &rep.borlam,
                         &rep.eq2_einstein})
    if (id->asserted && id->residual() >= eps * scale)
      throw LedgerError("Bochner identity failed, |lhs - rhs| = " +
                        std::to_string(id->residual()));
  return rep;
}

/// Per-unit-volume energies: bending density |xi|^2 / 2 and section energy
/// density m/2 + |xi|^2 / 2.
template <typename S>
struct EnergyDensity {
  S bending;
  S energy;
};

template <typename S>
EnergyDensity<S> bending_energy_density(const Tensor<S>& xi) {
  EnergyDensity<S> e{ScalarTraits<S>::zero(), ScalarTraits<S>::zero()};
  e.bending = ScalarTraits<S>::fraction(1, 2) * norm_sq(xi);
  e.energy = ScalarTraits<S>::fraction(xi.dim(), 2) + e.bending;
  return e;
}

}  // namespace acmg
