#include <doctest.h>

#include "acmg/report.hpp"
#include "support/models.hpp"

using namespace acmg;

TEST_CASE("JSON report round-trips losslessly") {
  for (auto e : {hyperbolic<double>(2, 1.5), sphere_su2<double>(2.0)}) {
    AnalysisReport rep = summarize(analyze(e));
    nlohmann::json j = rep;
    AnalysisReport back = j.get<AnalysisReport>();
    nlohmann::json j2 = back;
    CHECK(j == j2);
    CHECK(back.model_name == rep.model_name);
    CHECK(back.harmonic == rep.harmonic);
    CHECK(back.s_ac == rep.s_ac);
    CHECK(back.norms_sq == rep.norms_sq);
    CHECK(back.all_ok() == rep.all_ok());
  }
  // rational-mode reports carry exact strings and still round-trip
  auto e = heisenberg_h1r<Rational>(1, h1r_default_phi<Rational>(1));
  AnalysisReport rep = summarize(analyze(e));
  CHECK(rep.exact_values.at("s_ac") == "1/2");
  CHECK(rep.exact_values.at("xi_sq") == "1");
  nlohmann::json j = rep;
  AnalysisReport back = j.get<AnalysisReport>();
  CHECK(nlohmann::json(back) == j);
}

TEST_CASE("text rendering carries the same numeric content") {
  auto rep = summarize(analyze(hyperbolic<double>(1, 1.0)));
  std::string text = render_text(rep);
  CHECK(text.find("harmonic: true, harmonic map: false") != std::string::npos);
  CHECK(text.find("C5") != std::string::npos);
  CHECK(text.find("alpha-Kenmotsu") != std::string::npos);
  CHECK(text.find("s: -6") != std::string::npos);  // s = -m(m-1) c^2 at n = 1, c = 1
  CHECK(text.find("status: ok") != std::string::npos);

  // exact mode renders rationals as p/q
  auto er = summarize(analyze(heisenberg_h1r<Rational>(1, h1r_default_phi<Rational>(1))));
  std::string tr = render_text(er);
  CHECK(tr.find("s_ac: 1/2") != std::string::npos);
  CHECK(tr.find("|xi|^2: 1") != std::string::npos);
}

TEST_CASE("the class field serializes as C-labels") {
  auto rep = summarize(analyze(hyperbolic<double>(1, 1.0)));
  nlohmann::json j = rep;
  CHECK(j["class"] == nlohmann::json::array({"C5"}));
  CHECK(j["harmonic"] == true);
  CHECK(j["harmonic_map"] == false);
}
