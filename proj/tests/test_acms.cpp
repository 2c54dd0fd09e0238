#include <doctest.h>

#include "support/models.hpp"

using namespace acmg;
using acmg::testing::urand;
using T = Tensor<double>;

TEST_CASE("structure validation") {
  SUBCASE("standard block rotation is valid") {
    auto e = abelian<double>(2);
    CHECK(validate(e.acms).max() < 1e-12);
  }
  SUBCASE("phi scaled by 2 violates the square identity with residual 3") {
    auto e = abelian<double>(1);
    AcmStructure<double> bad = e.acms;
    bad.phi *= 2.0;
    auto res = validate(bad);
    double sq = 0;
    for (const auto& [name, v] : res.entries)
      if (name.find("phi^2") != std::string::npos) sq = v;
    CHECK(sq == doctest::Approx(3.0));
    CHECK_THROWS_AS(require_valid(bad, 1e-9), StructureError);
  }
  SUBCASE("the sqrt(2)/2 structures are valid") {
    for (char tag : {'A', 'B', 'C'}) {
      auto e = h12_example(tag);
      CHECK(validate(e.acms).max() < 1e-12);
    }
  }
  SUBCASE("eta o phi != 0 is rejected, not repaired") {
    // a skew matrix that moves zeta
    T p(2, 3);
    p(1, 0) = 1.0;
    p(0, 1) = -1.0;
    p(2, 1) = 0.5;  // phi X2 has a zeta component
    p(1, 2) = -0.5;
    CHECK_THROWS_AS(make_acms(p, 2), StructureError);
  }
}

TEST_CASE("fundamental form") {
  auto e = heisenberg_h1r<double>(1, h1r_default_phi<double>(1));
  T F = fundamental_form(e.acms);
  // F(zeta, X) = 0 for all X
  for (int x = 0; x < 3; ++x) CHECK(F(2, x) == doctest::Approx(0.0));
  // F(X1, X2) = <X1, phi X2> = -1
  CHECK(F(0, 1) == doctest::Approx(-1.0));
  CHECK(inner(F, F) == doctest::Approx(2.0));
  // F(phi X, phi Y) = F(X, Y)
  for (int trial = 0; trial < 20; ++trial) {
    auto h = h12_example('A');
    T Fh = fundamental_form(h.acms);
    double res = 0;
    for (int x = 0; x < 5; ++x)
      for (int y = 0; y < 5; ++y) {
        double lhs = 0;
        for (int a = 0; a < 5; ++a)
          for (int b = 0; b < 5; ++b) lhs += h.acms.phi(a, x) * h.acms.phi(b, y) * Fh(a, b);
        res = std::max(res, std::fabs(lhs - Fh(x, y)));
      }
    CHECK(res < 1e-12);
  }
}

TEST_CASE("covariant derivative") {
  SUBCASE("metric is parallel") {
    for (auto e : {hyperbolic<double>(2, 1.0), sphere_su2<double>(1.0)}) {
      auto conn = levi_civita(e.model);
      CHECK(covariant_derivative(conn, T::identity(e.model.m)).max_abs() < 1e-12);
    }
  }
  SUBCASE("H(1,1) hand values") {
    auto e = heisenberg_h1r<double>(1, h1r_default_phi<double>(1));
    auto conn = levi_civita(e.model);
    T gE = covariant_derivative(conn, e.acms.eta);
    CHECK(gE(0, 1) == doctest::Approx(0.5));  // (nabla_{X1} eta)(X2) = 1/2
  }
  SUBCASE("hyperbolic (nabla_{Xj} phi) Xk = c phi^j_k X1 for j,k >= 2") {
    const double c = 1.5;
    auto e = hyperbolic<double>(2, c);
    auto conn = levi_civita(e.model);
    T gF = covariant_derivative(conn, e.acms.phi);
    // <e_a, (nabla_{e_j} phi) e_k> = gF(j, a, k)
    double res = 0;
    for (int j = 1; j < 5; ++j)
      for (int k = 1; k < 5; ++k) {
        for (int a = 0; a < 5; ++a) {
          double want = (a == 0) ? c * e.acms.phi(j, k) : 0.0;
          res = std::max(res, std::fabs(gF(j, a, k) - want));
        }
      }
    CHECK(res < 1e-12);
  }
}

TEST_CASE("rough laplacian") {
  SUBCASE("abelian model: everything flat") {
    auto e = abelian<double>(2);
    auto conn = levi_civita(e.model);
    T t(3, 5);
    for (auto& x : t.data()) x = urand();
    CHECK(rough_laplacian(conn, t).max_abs() < 1e-12);
  }
  SUBCASE("hyperbolic: lap zeta = 2n c^2 zeta = |grad zeta|^2 zeta") {
    for (int n : {1, 2}) {
      const double c = 1.5;
      auto e = hyperbolic<double>(n, c);
      auto conn = levi_civita(e.model);
      T lap = rough_laplacian(conn, e.acms.eta);
      T want = (2.0 * n * c * c) * e.acms.eta;
      CHECK((lap - want).max_abs() < 1e-12);
      T gE = covariant_derivative(conn, e.acms.eta);
      CHECK(inner(gE, gE) == doctest::Approx(2.0 * n * c * c));
    }
  }
}

TEST_CASE("stabilised-tensor Laplacian identity") {
  // lap Psi = (nabla^U xi)_e_i,e_i Psi + xi_{xi_e e} Psi - xi_e(xi_e Psi)
  // for Psi in {phi/F, eta/zeta}, on every catalog model and random phi.
  auto run = [&](const CatalogEntry<double>& e) {
    auto conn = levi_civita(e.model);
    auto tor = intrinsic_torsion(conn, e.acms);
    auto connU = minimal_connection(conn, tor.xi);
    CHECK(lapstaten_residual(conn, connU, tor.xi, e.acms.phi) < 1e-9);
    CHECK(lapstaten_residual(conn, connU, tor.xi, e.acms.eta) < 1e-9);
  };
  run(hyperbolic<double>(2, 1.0));
  run(heisenberg_h1r<double>(1, h1r_default_phi<double>(1)));
  run(sphere_su2<double>(2.0));
  run(h12_example('C'));
  run(acmg::testing::berger(3, 2, 1));
  for (int trial = 0; trial < 20; ++trial) {
    run(heisenberg_h1r<double>(2, acmg::testing::random_phi(5, 4)));
    run(heisenberg_hp1<double>(2, acmg::testing::random_phi(5, 4)));
  }
}

TEST_CASE("grad eta agrees between the connection and torsion routes") {
  for (int trial = 0; trial < 10; ++trial) {
    auto e = heisenberg_h1r<double>(2, acmg::testing::random_phi(5, 4));
    auto conn = levi_civita(e.model);
    auto tor = intrinsic_torsion(conn, e.acms);
    T via_conn = covariant_derivative(conn, e.acms.eta);
    T via_xi = grad_eta_of_xi(tor.xi, e.acms);
    CHECK((via_conn - via_xi).max_abs() < 1e-12);
    T gF_conn = covariant_derivative(conn, e.acms.phi);
    T gF_xi = grad_F_of_xi(tor.xi, e.acms);
    CHECK((gF_conn - gF_xi).max_abs() < 1e-12);
  }
}
