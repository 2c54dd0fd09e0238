#pragma once

#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "acmg/analysis.hpp"

namespace acmg {

/// Flat, language-neutral summary of an Analysis; serialises losslessly to
/// JSON (schema 1) and renders to text. All numbers are doubles; exact-mode
/// values additionally appear as p/q strings.
struct AnalysisReport {
  int schema = 1;
  std::string model_name;
  int dimension = 0;
  int n = 0;
  bool unimodular = false;
  bool conformally_flat = false;
  bool einstein = false;
  std::string arithmetic = "double";
  double tolerance = 1e-9;

  std::vector<int> active;
  std::vector<std::string> labels;
  bool has_alpha = false;
  double alpha = 0.0;
  std::string alpha_exact;

  std::vector<double> norms_sq;  // 12 entries
  double xi_sq = 0.0;

  bool harmonic = false;
  bool harmonic_map = false;
  std::vector<bool> panel;            // 7 entries
  std::vector<double> panel_residuals;
  double d_star_xi_norm = 0.0;
  double nu_norm = 0.0;
  std::vector<double> nu;
  bool skew_torsion = false;

  double s = 0.0;
  double s_ac = 0.0;
  double ric_zeta_zeta = 0.0;
  double weyl_norm_sq = 0.0;
  bool weakly_ac_einstein = false;
  bool ac_einstein = false;

  double bending_density = 0.0;
  double energy_density = 0.0;
  double d_star_eta = 0.0;

  struct Residual {
    std::string name;
    double value = 0.0;  // -1 marks skipped
  };
  std::vector<Residual> invariants;
  std::vector<Residual> ledger;
  std::vector<Residual> lemmas;

  struct BochnerRow {
    std::string name;
    double lhs = 0.0, rhs = 0.0;
    bool asserted = false;
  };
  std::vector<BochnerRow> bochner;

  struct CriterionRow {
    std::string name;
    bool applicable = false;
    bool holds = false;
    bool matches = true;
    double residual = 0.0;
  };
  std::vector<CriterionRow> class_criteria;
  std::vector<CriterionRow> map_criteria;

  std::map<std::string, std::string> exact_values;

  /// True when every asserted residual is below tolerance and every
  /// applicable criterion matched the computed verdicts.
  bool all_ok() const {
    for (const auto& r : invariants)
      if (r.value >= tolerance) return false;
    for (const auto& r : ledger)
      if (r.value >= tolerance) return false;
    for (const auto& r : lemmas)
      if (r.value >= 0 && r.value >= tolerance) return false;
    for (const auto& b : bochner)
      if (b.asserted && std::fabs(b.lhs - b.rhs) >= tolerance) return false;
    for (const auto& c : class_criteria)
      if (c.applicable && !c.matches) return false;
    for (const auto& c : map_criteria)
      if (c.applicable && !c.matches) return false;
    return true;
  }
};

template <typename S>
AnalysisReport summarize(const Analysis<S>& a) {
  AnalysisReport r;
  r.model_name = a.model.name;
  r.dimension = a.model.m;
  r.n = a.acms.n;
  r.unimodular = a.model.unimodular;
  r.conformally_flat = is_conformally_flat(a.curv, a.model.m, a.eps);
  r.einstein = is_einstein(a.curv, a.eps);
  r.arithmetic = ScalarTraits<S>::exact ? "rational" : "double";
  r.tolerance = a.eps;

  r.active.assign(a.sig.active.begin(), a.sig.active.end());
  r.labels = a.sig.labels;
  if (a.sig.alpha) {
    r.has_alpha = true;
    r.alpha = *a.sig.alpha;
    r.alpha_exact = a.sig.alpha_exact;
  }
  for (const auto& nsq : a.comps.norms_sq) r.norms_sq.push_back(ScalarTraits<S>::to_double(nsq));
  r.xi_sq = ScalarTraits<S>::to_double(norm_sq(a.torsion.xi));

  r.harmonic = a.verdict.is_harmonic;
  r.harmonic_map = a.verdict.is_harmonic_map;
  r.panel.assign(a.verdict.panel.begin(), a.verdict.panel.end());
  r.panel_residuals.assign(a.verdict.residuals.begin(), a.verdict.residuals.end());
  r.d_star_xi_norm = a.verdict.d_star_xi_norm;
  r.nu_norm = a.verdict.nu_norm;
  for (int i = 0; i < a.nu.dim(); ++i) r.nu.push_back(ScalarTraits<S>::to_double(a.nu(i)));
  r.skew_torsion = a.skew.is_skew;

  r.s = ScalarTraits<S>::to_double(a.curv.s);
  r.s_ac = ScalarTraits<S>::to_double(a.ricac.s_ac);
  r.ric_zeta_zeta = a.ric_zeta_zeta();
  r.weyl_norm_sq = ScalarTraits<S>::to_double(norm_sq(a.curv.W));
  r.weakly_ac_einstein = a.weakly_einstein;
  r.ac_einstein = a.weakly_einstein;  // s^ac constant for left-invariant data
  r.bending_density = ScalarTraits<S>::to_double(a.energy.bending);
  r.energy_density = ScalarTraits<S>::to_double(a.energy.energy);
  r.d_star_eta = ScalarTraits<S>::to_double(a.ext.ds_eta);

  for (const auto& [k, v] : a.invariants) r.invariants.push_back({k, v});
  for (const auto& [k, v] : a.ledger.relations) r.ledger.push_back({k, v});

  r.lemmas.push_back({"ricci-alt identity (perp)", a.lemmas.ricci_alt_perp});
  r.lemmas.push_back({"ricci-alt identity (zeta row)", a.lemmas.ricci_zeta_row});
  r.lemmas.push_back({"d2F torsion-split identity", a.lemmas.d2f_split});
  r.lemmas.push_back({"d2F identity (perp part)", a.lemmas.d2f_perp});
  r.lemmas.push_back({"d2F identity (eta part)", a.lemmas.d2f_eta});
  r.lemmas.push_back({"d2F reduced identity 1", a.lemmas.d2f_reduced_1});
  r.lemmas.push_back({"d2F reduced identity 2", a.lemmas.d2f_reduced_2});
  r.lemmas.push_back({"Ric^ac coderivative identity", a.lemmas.ric_coderivative});
  r.lemmas.push_back({"conformally flat => Ric^ac_alt = 0", a.lemmas.conformally_flat_alt});

  auto boch = [&](const std::string& name, const BochnerIdentity<S>& b) {
    r.bochner.push_back({name, b.lhs, b.rhs, b.asserted});
  };
  boch("F identity", a.bochner.F_identity);
  boch("eta identity", a.bochner.eta_identity);
  boch("component identity 1", a.bochner.eq1);
  boch("component identity 2", a.bochner.eq2);
  boch("conformally-flat integrand", a.bochner.borlam);
  boch("Einstein integrand", a.bochner.eq2_einstein);

  for (const auto& c : a.class_criteria)
    r.class_criteria.push_back({c.name, c.applicable, c.criterion_holds, c.matches_verdict,
                                c.residual});
  for (const auto& c : a.map_criteria)
    r.map_criteria.push_back({c.name, c.applicable, c.criterion_holds, c.matches_verdict,
                              c.residual});

  if constexpr (ScalarTraits<S>::exact) {
    r.exact_values["s"] = ScalarTraits<S>::str(a.curv.s);
    r.exact_values["s_ac"] = ScalarTraits<S>::str(a.ricac.s_ac);
    r.exact_values["xi_sq"] = ScalarTraits<S>::str(norm_sq(a.torsion.xi));
    r.exact_values["bending_density"] = ScalarTraits<S>::str(a.energy.bending);
    r.exact_values["d_star_eta"] = ScalarTraits<S>::str(a.ext.ds_eta);
    for (int i = 0; i < 12; ++i)
      r.exact_values["norm_sq_C" + std::to_string(i + 1)] =
          ScalarTraits<S>::str(a.comps.norms_sq[static_cast<std::size_t>(i)]);
  }
  return r;
}

inline void to_json(nlohmann::json& j, const AnalysisReport::Residual& r) {
  j = nlohmann::json{{"name", r.name}, {"value", r.value}};
}
inline void from_json(const nlohmann::json& j, AnalysisReport::Residual& r) {
  j.at("name").get_to(r.name);
  j.at("value").get_to(r.value);
}
inline void to_json(nlohmann::json& j, const AnalysisReport::BochnerRow& r) {
  j = nlohmann::json{{"name", r.name}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"asserted", r.asserted}};
}
inline void from_json(const nlohmann::json& j, AnalysisReport::BochnerRow& r) {
  j.at("name").get_to(r.name);
  j.at("lhs").get_to(r.lhs);
  j.at("rhs").get_to(r.rhs);
  j.at("asserted").get_to(r.asserted);
}
inline void to_json(nlohmann::json& j, const AnalysisReport::CriterionRow& r) {
  j = nlohmann::json{{"name", r.name},
                     {"applicable", r.applicable},
                     {"holds", r.holds},
                     {"matches", r.matches},
                     {"residual", r.residual}};
}
inline void from_json(const nlohmann::json& j, AnalysisReport::CriterionRow& r) {
  j.at("name").get_to(r.name);
  j.at("applicable").get_to(r.applicable);
  j.at("holds").get_to(r.holds);
  j.at("matches").get_to(r.matches);
  j.at("residual").get_to(r.residual);
}

inline void to_json(nlohmann::json& j, const AnalysisReport& r) {
  std::vector<std::string> cls;
  for (int i : r.active) cls.push_back("C" + std::to_string(i));
  j = nlohmann::json{{"schema", r.schema},
                     {"model", {{"name", r.model_name},
                                {"dimension", r.dimension},
                                {"n", r.n},
                                {"unimodular", r.unimodular},
                                {"conformally_flat", r.conformally_flat},
                                {"einstein", r.einstein}}},
                     {"arithmetic", r.arithmetic},
                     {"tolerance", r.tolerance},
                     {"class", cls},
                     {"labels", r.labels},
                     {"norms_sq", r.norms_sq},
                     {"xi_sq", r.xi_sq},
                     {"harmonic", r.harmonic},
                     {"harmonic_map", r.harmonic_map},
                     {"panel", r.panel},
                     {"panel_residuals", r.panel_residuals},
                     {"d_star_xi_norm", r.d_star_xi_norm},
                     {"nu_norm", r.nu_norm},
                     {"nu", r.nu},
                     {"skew_torsion", r.skew_torsion},
                     {"s", r.s},
                     {"s_ac", r.s_ac},
                     {"ric_zeta_zeta", r.ric_zeta_zeta},
                     {"weyl_norm_sq", r.weyl_norm_sq},
                     {"weakly_ac_einstein", r.weakly_ac_einstein},
                     {"ac_einstein", r.ac_einstein},
                     {"bending_density", r.bending_density},
                     {"energy_density", r.energy_density},
                     {"d_star_eta", r.d_star_eta},
                     {"invariants", r.invariants},
                     {"ledger", r.ledger},
                     {"lemmas", r.lemmas},
                     {"bochner", r.bochner},
                     {"class_criteria", r.class_criteria},
                     {"map_criteria", r.map_criteria},
                     {"exact_values", r.exact_values}};
  if (r.has_alpha) {
    j["alpha"] = r.alpha;
    if (!r.alpha_exact.empty()) j["alpha_exact"] = r.alpha_exact;
  }
}

inline void from_json(const nlohmann::json& j, AnalysisReport& r) {
  j.at("schema").get_to(r.schema);
  const auto& mj = j.at("model");
  mj.at("name").get_to(r.model_name);
  mj.at("dimension").get_to(r.dimension);
  mj.at("n").get_to(r.n);
  mj.at("unimodular").get_to(r.unimodular);
  mj.at("conformally_flat").get_to(r.conformally_flat);
  mj.at("einstein").get_to(r.einstein);
  j.at("arithmetic").get_to(r.arithmetic);
  j.at("tolerance").get_to(r.tolerance);
  r.active.clear();
  for (const auto& c : j.at("class")) {
    const std::string s = c.get<std::string>();
    r.active.push_back(std::stoi(s.substr(1)));
  }
  j.at("labels").get_to(r.labels);
  j.at("norms_sq").get_to(r.norms_sq);
  j.at("xi_sq").get_to(r.xi_sq);
  j.at("harmonic").get_to(r.harmonic);
  j.at("harmonic_map").get_to(r.harmonic_map);
  j.at("panel").get_to(r.panel);
  j.at("panel_residuals").get_to(r.panel_residuals);
  j.at("d_star_xi_norm").get_to(r.d_star_xi_norm);
  j.at("nu_norm").get_to(r.nu_norm);
  j.at("nu").get_to(r.nu);
  j.at("skew_torsion").get_to(r.skew_torsion);
  j.at("s").get_to(r.s);
  j.at("s_ac").get_to(r.s_ac);
  j.at("ric_zeta_zeta").get_to(r.ric_zeta_zeta);
  j.at("weyl_norm_sq").get_to(r.weyl_norm_sq);
  j.at("weakly_ac_einstein").get_to(r.weakly_ac_einstein);
  j.at("ac_einstein").get_to(r.ac_einstein);
  j.at("bending_density").get_to(r.bending_density);
  j.at("energy_density").get_to(r.energy_density);
  j.at("d_star_eta").get_to(r.d_star_eta);
  j.at("invariants").get_to(r.invariants);
  j.at("ledger").get_to(r.ledger);
  j.at("lemmas").get_to(r.lemmas);
  j.at("bochner").get_to(r.bochner);
  j.at("class_criteria").get_to(r.class_criteria);
  j.at("map_criteria").get_to(r.map_criteria);
  j.at("exact_values").get_to(r.exact_values);
  if (j.contains("alpha")) {
    r.has_alpha = true;
    j.at("alpha").get_to(r.alpha);
    if (j.contains("alpha_exact")) j.at("alpha_exact").get_to(r.alpha_exact);
  }
}

/// Replays a catalog entry's expected record against a computed report.
/// Returns the failures; empty means all expected facts reproduced.
inline std::vector<std::string> verify_expected(const AnalysisReport& r,
                                                const ExpectedFacts& e, double tol = 1e-9) {
  std::vector<std::string> fails;
  auto num = [&](const std::string& what, double got, double want) {
    if (std::fabs(got - want) >= tol)
      fails.push_back(what + ": got " + std::to_string(got) + ", expected " +
                      std::to_string(want));
  };
  auto flag = [&](const std::string& what, bool got, bool want) {
    if (got != want)
      fails.push_back(what + ": got " + (got ? "true" : "false") + ", expected " +
                      (want ? "true" : "false"));
  };
  if (e.class_active) {
    std::set<int> got(r.active.begin(), r.active.end());
    if (got != *e.class_active) {
      std::string s = "class: got {";
      for (int i : got) s += "C" + std::to_string(i) + " ";
      s += "}, expected {";
      for (int i : *e.class_active) s += "C" + std::to_string(i) + " ";
      fails.push_back(s + "}");
    }
  }
  if (e.harmonic) flag("harmonic", r.harmonic, *e.harmonic);
  if (e.harmonic_map) flag("harmonic_map", r.harmonic_map, *e.harmonic_map);
  if (e.d_star_eta) num("d*eta", r.d_star_eta, *e.d_star_eta);
  if (e.s_ac) num("s_ac", r.s_ac, *e.s_ac);
  if (e.conformally_flat) flag("conformally_flat", r.conformally_flat, *e.conformally_flat);
  if (e.ac_einstein) flag("ac_einstein", r.ac_einstein, *e.ac_einstein);
  if (e.bending_density) num("bending_density", r.bending_density, *e.bending_density);
  if (e.alpha) {
    if (!r.has_alpha)
      fails.push_back("alpha: not reported");
    else
      num("alpha", r.alpha, *e.alpha);
  }
  if (e.nu_vanishes && *e.nu_vanishes && r.nu_norm >= tol)
    fails.push_back("nu: expected to vanish, |nu| = " + std::to_string(r.nu_norm));
  return fails;
}

namespace detail {

inline std::string fmt6(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

}  // namespace detail

/// Text rendering: 6 significant digits, exact-mode values as p/q.
inline std::string render_text(const AnalysisReport& r) {
  std::ostringstream os;
  auto num = [&](const std::string& key, double v) {
    auto it = r.exact_values.find(key);
    return it != r.exact_values.end() ? it->second : detail::fmt6(v);
  };
  os << "model: " << r.model_name << "  (dim " << r.dimension << ", n = " << r.n << ")\n";
  os << "flags: " << (r.unimodular ? "unimodular" : "non-unimodular") << ", "
     << (r.conformally_flat ? "conformally flat" : "not conformally flat") << ", "
     << (r.einstein ? "Einstein" : "not Einstein") << "\n";
  os << "arithmetic: " << r.arithmetic << ", tolerance " << detail::fmt6(r.tolerance) << "\n";
  os << "class: ";
  if (r.active.empty())
    os << "{0} (cosymplectic)";
  else
    for (std::size_t i = 0; i < r.active.size(); ++i)
      os << (i ? "+" : "") << "C" << r.active[static_cast<std::size_t>(i)];
  os << "\nlabels:";
  for (const auto& l : r.labels) os << " " << l;
  if (r.has_alpha)
    os << "\nalpha: " << (r.alpha_exact.empty() ? detail::fmt6(r.alpha) : r.alpha_exact);
  os << "\ncomponent norms^2:";
  for (int i = 0; i < 12; ++i)
    os << " C" << (i + 1) << "=" << num("norm_sq_C" + std::to_string(i + 1),
                                        r.norms_sq[static_cast<std::size_t>(i)]);
  os << "\n|xi|^2: " << num("xi_sq", r.xi_sq) << "\n";
  os << "harmonic: " << (r.harmonic ? "true" : "false")
     << ", harmonic map: " << (r.harmonic_map ? "true" : "false") << "\n";
  os << "panel:";
  for (bool b : r.panel) os << " " << (b ? "T" : "F");
  os << "\n|d*xi|: " << detail::fmt6(r.d_star_xi_norm) << ", |nu|: " << detail::fmt6(r.nu_norm)
     << "\n";
  os << "s: " << num("s", r.s) << ", s_ac: " << num("s_ac", r.s_ac)
     << ", Ric(zeta,zeta): " << detail::fmt6(r.ric_zeta_zeta) << "\n";
  os << "weakly-ac-Einstein: " << (r.weakly_ac_einstein ? "true" : "false")
     << ", ac-Einstein: " << (r.ac_einstein ? "true" : "false") << "\n";
  os << "d*eta: " << num("d_star_eta", r.d_star_eta)
     << ", bending density: " << num("bending_density", r.bending_density)
     << ", energy density: " << detail::fmt6(r.energy_density) << "\n";
  os << "bochner identities (lhs vs rhs" << "):\n";
  for (const auto& b : r.bochner)
    os << "  " << b.name << ": " << detail::fmt6(b.lhs) << " vs " << detail::fmt6(b.rhs)
       << (b.asserted ? "  [asserted]" : "  [evaluated]") << "\n";
  os << "lemma residuals:\n";
  for (const auto& l : r.lemmas) {
    os << "  " << l.name << ": ";
    if (l.value < 0)
      os << "skipped\n";
    else
      os << detail::fmt6(l.value) << "\n";
  }
  os << "criteria (class):\n";
  for (const auto& c : r.class_criteria)
    if (c.applicable)
      os << "  " << c.name << ": " << (c.holds ? "holds" : "fails")
         << (c.matches ? " (matches verdict)" : " (MISMATCH)") << "\n";
  os << "criteria (map):\n";
  for (const auto& c : r.map_criteria)
    if (c.applicable)
      os << "  " << c.name << ": " << (c.holds ? "holds" : "fails")
         << (c.matches ? " (matches verdict)" : " (MISMATCH)") << "\n";
  os << "max ledger residual: "
     << detail::fmt6([&] {
          double v = 0;
          for (const auto& e : r.ledger) v = std::max(v, e.value);
          return v;
        }())
     << "\n";
  os << "internal check residuals:\n";
  for (const auto& inv : r.invariants) os << "  " << inv.name << ": " << detail::fmt6(inv.value) << "\n";
  os << "status: " << (r.all_ok() ? "ok" : "CHECK FAILED") << "\n";
  return os.str();
}

}  // namespace acmg
