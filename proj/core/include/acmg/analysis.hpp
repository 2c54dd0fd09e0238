#pragma once

#include "acmg/bochner.hpp"
#include "acmg/catalog.hpp"
#include "acmg/criteria.hpp"

namespace acmg {

/// Everything the pipeline computes for one model/structure pair.
template <typename S>
struct Analysis {
  LieAlgebraModel<S> model;
  AcmStructure<S> acms;
  ConnectionCoefficients<S> conn;
  ConnectionCoefficients<S> conn_u;
  CurvaturePackage<S> curv;
  IntrinsicTorsion<S> torsion;
  TorsionComponents<S> comps;
  ClassSignature sig;
  RicAcPackage<S> ricac;
  bool weakly_einstein = false;
  HarmonicityVerdict verdict;
  Tensor<S> nu;
  SkewTorsionReport<S> skew;
  CharacteristicContractions<S> contractions;
  ExteriorPackage<S> ext;
  NormLedger<S> ledger;
  BochnerReport<S> bochner;
  LemmaReport<S> lemmas;
  std::vector<CriterionReport> class_criteria;
  std::vector<CriterionReport> map_criteria;
  EnergyDensity<S> energy;
  std::vector<std::pair<std::string, double>> invariants;  ///< internal residuals
  double eps = 1e-9;

  double ric_zeta_zeta() const {
    S acc = ScalarTraits<S>::zero();
    const int m = acms.m();
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) acc += acms.zeta(a) * acms.zeta(b) * curv.Ric(a, b);
    return ScalarTraits<S>::to_double(acc);
  }
};

/// Runs the full pipeline. Throws ModelError/StructureError on bad input and
/// InternalError/DecompositionError/LedgerError when a proven identity fails.
template <typename S>
Analysis<S> analyze(const CatalogEntry<S>& entry, double eps = 1e-9) {
  Analysis<S> a;
  a.eps = eps;
  a.model = entry.model;
  a.acms = entry.acms;
  a.model.validate(eps);
  require_valid(a.acms, eps);

  a.conn = levi_civita(a.model, eps);
  a.invariants.emplace_back("connection metric compatibility", a.conn.metric_residual());
  a.invariants.emplace_back("connection torsion-freeness", a.conn.torsion_residual(a.model));

  a.curv = curvature(a.model, a.conn);
  a.invariants.emplace_back("curvature symmetries", a.curv.symmetry_residual());

  a.torsion = intrinsic_torsion(a.conn, a.acms, eps);
  a.invariants.emplace_back("torsion line agreement", a.torsion.line_agreement);
  a.invariants.emplace_back("torsion membership", a.torsion.membership);

  a.conn_u = minimal_connection(a.conn, a.torsion.xi);
  a.invariants.emplace_back("minimal connection parallel phi",
                            covariant_derivative(a.conn_u, a.acms.phi).max_abs());
  a.invariants.emplace_back("minimal connection parallel eta",
                            covariant_derivative(a.conn_u, a.acms.eta).max_abs());

  a.comps = decompose(a.torsion.xi, a.acms, eps);
  a.sig = class_signature(a.comps, a.acms, eps);

  a.ricac = ricci_ac(a.curv, a.acms, eps);
  a.weakly_einstein = weakly_ac_einstein(a.ricac, a.acms, eps);

  a.verdict = harmonicity_panel(a.conn, a.conn_u, a.torsion.xi, a.acms, eps);
  a.nu = nu_form(a.torsion.xi, a.curv);
  a.verdict.nu_norm = std::sqrt(std::max(0.0, ScalarTraits<S>::to_double(norm_sq(a.nu))));
  a.verdict.is_harmonic_map = a.verdict.is_harmonic && a.nu.is_zero(eps);

  a.skew = skew_torsion_check(a.torsion.xi, eps);
  if (a.skew.is_skew && a.verdict.is_harmonic && !a.verdict.is_harmonic_map)
    throw InternalError("skew torsion with harmonic structure must give a harmonic map");

  a.contractions = characteristic_contractions(a.torsion.xi, a.acms, a.conn);
  a.invariants.emplace_back("characteristic contraction (phi)", a.contractions.residual_phi);
  a.invariants.emplace_back("characteristic contraction", a.contractions.residual_plain);

  a.ext = exterior_package(a.conn, a.acms, a.comps);
  a.ledger = norm_ledger(a.comps, a.torsion.xi, a.conn, a.acms, a.ext, eps);
  a.bochner = bochner_report(a.ledger, a.comps, a.curv, a.acms, a.ext, a.model.unimodular, eps);

  a.lemmas = verify_structure_lemmas(a.sig, a.comps, a.torsion.xi, a.acms, a.conn, a.conn_u,
                                     a.curv, a.ricac, eps);
  a.class_criteria = class_criteria_check(a.sig, a.ricac, a.torsion.xi, a.acms, a.conn,
                                          a.verdict.is_harmonic, eps);
  a.map_criteria = map_criteria_check(a.sig, a.ricac, a.torsion.xi, a.acms, a.conn,
                                      a.verdict.is_harmonic, a.verdict.is_harmonic_map,
                                      a.weakly_einstein, eps);

  for (const auto& psi : {a.acms.phi, a.acms.eta}) {
    a.invariants.emplace_back("stabilised Laplacian identity",
                              lapstaten_residual(a.conn, a.conn_u, a.torsion.xi, psi));
  }

  a.energy = bending_energy_density(a.torsion.xi);
  return a;
}

}  // namespace acmg
