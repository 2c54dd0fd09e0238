#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "acmg/model_io.hpp"
#include "acmg/report.hpp"
#include "support/models.hpp"

using namespace acmg;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path = "acmg_test_model_" + std::to_string(counter++) + ".json";
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("catalog entries reproduce their expected facts") {
  auto run = [](const CatalogEntry<double>& e) {
    auto a = analyze(e);
    auto rep = summarize(a);
    auto fails = verify_expected(rep, e.expected, 1e-9);
    for (const auto& f : fails) MESSAGE(f);
    CHECK(fails.empty());
    CHECK(rep.all_ok());
    if (e.expected_R) {
      CHECK((a.curv.R - *e.expected_R).max_abs() < 1e-12);
    }
  };
  run(hyperbolic<double>(1, 1.0));
  run(hyperbolic<double>(2, 2.0));
  run(hyperbolic<double>(3, 0.5));
  run(heisenberg_h1r<double>(1, h1r_default_phi<double>(1)));
  run(heisenberg_h1r<double>(2, h1r_default_phi<double>(2)));
  run(heisenberg_hp1<double>(1, hp1_sasakian_phi<double>(1, 1)));
  run(heisenberg_hp1<double>(2, hp1_sasakian_phi<double>(2, -1)));
  run(sphere_su2<double>(1.0));
  run(sphere_su2<double>(2.0));
  run(abelian<double>(1));
  run(abelian<double>(3));
  run(h12_example('A'));
  run(h12_example('B'));
  run(h12_example('C'));
}

TEST_CASE("hyperbolic expected d*eta scales as 2nc") {
  auto e = hyperbolic<double>(2, 2.0);
  auto a = analyze(e);
  CHECK(ScalarTraits<double>::to_double(a.ext.ds_eta) == doctest::Approx(8.0));
  // nu = 4 n c^3 eta at n = 2, c = 1
  auto e2 = hyperbolic<double>(2, 1.0);
  auto a2 = analyze(e2);
  CHECK(ScalarTraits<double>::to_double(a2.nu(0)) == doctest::Approx(8.0));
}

TEST_CASE("constructor guards") {
  CHECK_THROWS_AS(hyperbolic<double>(1, -1.0), ModelError);
  CHECK_THROWS_AS(sphere_su2<double>(0.0), ModelError);
  CHECK_THROWS_AS(h12_example('X'), ModelError);
  // an invalid phi matrix is rejected by the structure validator
  Tensor<double> junk(2, 5);
  junk(1, 0) = 2.0;
  junk(0, 1) = -2.0;
  CHECK_THROWS_AS(heisenberg_h1r<double>(2, junk), StructureError);
}

TEST_CASE("model files") {
  SUBCASE("abelian 3-dim model file is valid and cosymplectic") {
    TempFile f(R"({
      "name": "flat3",
      "dimension": 3,
      "structure_constants": [],
      "phi": [0, -1, 0, 1, 0, 0, 0, 0, 0],
      "zeta": [0, 0, 1]
    })");
    auto e = custom_from_file<double>(f.path);
    auto rep = summarize(analyze(e));
    CHECK(rep.active.empty());
    CHECK(rep.labels.front() == "cosymplectic");
    CHECK(rep.harmonic);
  }
  SUBCASE("H(1,1) re-entered by hand matches the catalog entry") {
    TempFile f(R"({
      "name": "h11-byhand",
      "dimension": 3,
      "structure_constants": [{"i": 1, "j": 3, "k": 2, "value": 1}],
      "phi": [0, -1, 0, 1, 0, 0, 0, 0, 0],
      "zeta": [0, 0, 1]
    })");
    auto file_entry = custom_from_file<double>(f.path);
    auto catalog_entry = heisenberg_h1r<double>(1, h1r_default_phi<double>(1));
    auto ra = summarize(analyze(file_entry));
    auto rb = summarize(analyze(catalog_entry));
    CHECK(ra.active == rb.active);
    CHECK(ra.harmonic == rb.harmonic);
    CHECK(ra.harmonic_map == rb.harmonic_map);
    CHECK(ra.s == doctest::Approx(rb.s));
    CHECK(ra.s_ac == doctest::Approx(rb.s_ac));
    CHECK(ra.xi_sq == doctest::Approx(rb.xi_sq));
    for (int i = 0; i < 12; ++i) CHECK(ra.norms_sq[i] == doctest::Approx(rb.norms_sq[i]));
  }
  SUBCASE("non-skew structure constants are rejected with a located message") {
    TempFile f(R"({
      "dimension": 3,
      "structure_constants": [{"i": 1, "j": 1, "k": 2, "value": 1}],
      "phi": [0, -1, 0, 1, 0, 0, 0, 0, 0],
      "zeta": [0, 0, 1]
    })");
    try {
      custom_from_file<double>(f.path);
      FAIL("expected ParseError");
    } catch (const ParseError& err) {
      std::string msg = err.what();
      CHECK(msg.find(f.path) != std::string::npos);
      CHECK(msg.find("structure_constants[0]") != std::string::npos);
    }
  }
  SUBCASE("Jacobi-violating file is rejected") {
    TempFile f(R"({
      "dimension": 3,
      "structure_constants": [
        {"i": 1, "j": 2, "k": 2, "value": 1},
        {"i": 1, "j": 3, "k": 3, "value": 1},
        {"i": 2, "j": 3, "k": 1, "value": 1}
      ],
      "phi": [0, -1, 0, 1, 0, 0, 0, 0, 0],
      "zeta": [0, 0, 1]
    })");
    CHECK_THROWS_AS(custom_from_file<double>(f.path), ParseError);
  }
  SUBCASE("malformed JSON carries a byte offset") {
    TempFile f("{ not json");
    try {
      custom_from_file<double>(f.path);
      FAIL("expected ParseError");
    } catch (const ParseError& err) {
      CHECK(std::string(err.what()).find("byte") != std::string::npos);
    }
  }
  SUBCASE("missing fields and bad shapes") {
    TempFile f1(R"({"dimension": 4})");
    CHECK_THROWS_AS(custom_from_file<double>(f1.path), ParseError);
    TempFile f2(R"({"dimension": 3, "phi": [0, 1], "zeta": [0, 0, 1]})");
    CHECK_THROWS_AS(custom_from_file<double>(f2.path), ParseError);
    TempFile f3(R"({
      "dimension": 3,
      "structure_constants": [{"i": 1, "j": 9, "k": 2, "value": 1}],
      "phi": [0, -1, 0, 1, 0, 0, 0, 0, 0],
      "zeta": [0, 0, 1]
    })");
    CHECK_THROWS_AS(custom_from_file<double>(f3.path), ParseError);
  }
  SUBCASE("invalid structure is reported, not repaired") {
    TempFile f(R"({
      "dimension": 3,
      "phi": [0, -2, 0, 2, 0, 0, 0, 0, 0],
      "zeta": [0, 0, 1]
    })");
    CHECK_THROWS_AS(custom_from_file<double>(f.path), ParseError);
  }
  SUBCASE("rational mode parses dyadic values exactly") {
    TempFile f(R"({
      "dimension": 3,
      "structure_constants": [{"i": 1, "j": 3, "k": 2, "value": 0.5}],
      "phi": [0, -1, 0, 1, 0, 0, 0, 0, 0],
      "zeta": [0, 0, 1]
    })");
    auto e = custom_from_file<Rational>(f.path);
    CHECK(e.model.c(0, 2, 1) == Rational(1, 2));
  }
}

TEST_CASE("exact mode rejects the irrational examples") {
  // The h12 structures have sqrt(2)/2 entries; there is no rational
  // constructor for them, and the CLI surfaces this as an input error.
  // (Nothing to construct here; the double-mode entry exists.)
  auto e = h12_example('A');
  CHECK(e.model.m == 5);
}
