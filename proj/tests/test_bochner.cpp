#include <doctest.h>

#include "support/models.hpp"

using namespace acmg;
using acmg::testing::random_phi;
using acmg::testing::random_torsion;
using T = Tensor<double>;

TEST_CASE("exterior package on catalog models") {
  SUBCASE("hyperbolic: d*eta = 2 n c") {
    for (int n : {1, 2}) {
      const double c = 1.5;
      auto a = analyze(hyperbolic<double>(n, c));
      CHECK(ScalarTraits<double>::to_double(a.ext.ds_eta) == doctest::Approx(2.0 * n * c));
    }
  }
  SUBCASE("H(1,1): dF, d*F, deta, d*eta all vanish (exact)") {
    auto e = heisenberg_h1r<Rational>(1, h1r_default_phi<Rational>(1));
    auto a = analyze(e);
    CHECK(a.ext.dF.max_abs() == 0.0);
    CHECK(a.ext.dsF.max_abs() == 0.0);
    CHECK(a.ext.deta.max_abs() == 0.0);
    CHECK(a.ext.ds_eta == Rational(0));
  }
  SUBCASE("sphere: deta = (2/r) F and dF = 0") {
    for (double r : {1.0, 2.0}) {
      auto e = sphere_su2<double>(r);
      auto a = analyze(e);
      T want = (2.0 / r) * e.acms.phi;
      CHECK((a.ext.deta - want).max_abs() < 1e-12);
      CHECK(a.ext.dF.max_abs() < 1e-12);
      CHECK(ScalarTraits<double>::to_double(a.ext.ds_eta) == doctest::Approx(0.0));
    }
  }
  SUBCASE("H(p,1): d*F(zeta) = sum phi^{p+i}_i and d*eta = 0") {
    for (int trial = 0; trial < 25; ++trial) {
      const int p = 2;
      T phi = random_phi(2 * p + 1, 2 * p);
      auto e = heisenberg_hp1<double>(p, phi);
      auto a = analyze(e);
      double want = 0;
      for (int i = 0; i < p; ++i) want += phi(p + i, i);
      CHECK(ScalarTraits<double>::to_double(a.ext.dsF(2 * p)) == doctest::Approx(want));
      CHECK(ScalarTraits<double>::to_double(a.ext.ds_eta) == doctest::Approx(0.0));
    }
  }
  SUBCASE("H(1,r): d*F(zeta) = 0 = d*eta") {
    for (int trial = 0; trial < 10; ++trial) {
      auto e = heisenberg_h1r<double>(2, random_phi(5, 4));
      auto a = analyze(e);
      CHECK(ScalarTraits<double>::to_double(a.ext.dsF(4)) == doctest::Approx(0.0));
      CHECK(ScalarTraits<double>::to_double(a.ext.ds_eta) == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("norm ledger") {
  SUBCASE("H(1,1) hand numbers, exact") {
    auto e = heisenberg_h1r<Rational>(1, h1r_default_phi<Rational>(1));
    auto a = analyze(e);
    CHECK(a.ledger.xi_sq == Rational(1));
    CHECK(a.ledger.gradF_sq == Rational(1));
    CHECK(a.ledger.gradEta_sq == Rational(1, 2));
    // 4 |xi|^2 = |gradF|^2 + 6 |gradEta|^2
    CHECK(Rational(4) * a.ledger.xi_sq == a.ledger.gradF_sq + Rational(6) * a.ledger.gradEta_sq);
  }
  SUBCASE("hyperbolic: |xi|^2 = 4nc^2, |gradEta|^2 = 2nc^2, |gradF|^2 = 4nc^2") {
    for (int n : {1, 2}) {
      const double c = 2.0;
      auto a = analyze(hyperbolic<double>(n, c));
      CHECK(ScalarTraits<double>::to_double(a.ledger.xi_sq) == doctest::Approx(4.0 * n * c * c));
      CHECK(ScalarTraits<double>::to_double(a.ledger.gradEta_sq) ==
            doctest::Approx(2.0 * n * c * c));
      CHECK(ScalarTraits<double>::to_double(a.ledger.gradF_sq) == doctest::Approx(4.0 * n * c * c));
    }
  }
  SUBCASE("all ledger relations hold on catalog and random models") {
    auto check = [](const CatalogEntry<double>& e) {
      auto a = analyze(e);  // norm_ledger throws on violation
      CHECK(a.ledger.max_residual() < 1e-9);
    };
    check(hyperbolic<double>(2, 1.0));
    check(sphere_su2<double>(2.0));
    check(h12_example('B'));
    check(acmg::testing::berger(3, 2, 1));
    for (int trial = 0; trial < 25; ++trial) {
      check(heisenberg_h1r<double>(2, random_phi(5, 4)));
      check(heisenberg_hp1<double>(2, random_phi(5, 4)));
    }
  }
  SUBCASE("component relations are representation identities: random torsions") {
    // On a flat model the gradient split is pure algebra in xi, so random
    // torsion elements exercise every relation, including the (10,11) and
    // (4,12) combinations absent from the catalog.
    for (int n : {2, 3}) {
      auto e = abelian<double>(n);
      auto conn = levi_civita(e.model);
      for (int trial = 0; trial < 40; ++trial) {
        T xi = random_torsion(e.acms);
        auto comps = decompose(xi, e.acms);
        // ledger needs a connection whose torsion is xi: build Gamma^U = 0,
        // Gamma = -xi so that the covariant derivative reproduces grad via xi.
        ConnectionCoefficients<double> conn_xi;
        conn_xi.gamma = -xi;
        auto ext = exterior_package(conn_xi, e.acms, comps);
        auto led = norm_ledger(comps, xi, conn_xi, e.acms, ext);
        CHECK(led.max_residual() < 1e-9);
      }
    }
  }
}

TEST_CASE("section-5 remark implications on synthesized instances") {
  // A connection with Gamma = -xi turns the algebraic torsion route into the
  // covariant-derivative route, so exterior packages of synthesized torsions
  // can be formed on the flat model.
  auto e = abelian<double>(2);
  auto package_of = [&](const T& xi) {
    ConnectionCoefficients<double> conn_xi;
    conn_xi.gamma = -xi;
    return exterior_package(conn_xi, e.acms, decompose(xi, e.acms));
  };

  SUBCASE("type C4+C12 with matching contractions has d*F = 0") {
    const int m = e.acms.m();
    int hits = 0;
    for (int trial = 0; trial < 20; ++trial) {
      T xi = random_torsion(e.acms);
      auto comps = decompose(xi, e.acms);
      T xi4 = comps.comps[3];
      if (inner(xi4, xi4) < 1e-10) continue;
      auto ext4 = package_of(xi4);
      // for the pure C4 part d*F is exactly the hook term; cancel it with
      // the C12 block built from v = +- phi(hook)
      T hook = ext4.T412;
      for (double s : {1.0, -1.0}) {
        T v = e.acms.apply_phi(hook);
        v *= s;
        T xi12(3, m);
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
              xi12(a, b, c) = e.acms.eta(a) * (e.acms.eta(b) * v(c) - v(b) * e.acms.eta(c));
        T crafted = xi4 + xi12;
        if (torsion_membership_residual(crafted, e.acms) > 1e-9) continue;
        auto ext = package_of(crafted);
        CHECK((ext.dsF - ext.T412).max_abs() < 1e-10);  // no C6 part: d*F = T412
        if (ext.T412.max_abs() < 1e-9) {
          CHECK(ext.dsF.max_abs() < 1e-8);
          ++hits;
        }
      }
    }
    CHECK(hits > 0);
  }
  SUBCASE("type C10+C11 with vanishing combination has dF = 0") {
    const int m = e.acms.m();
    int hits = 0;
    for (int trial = 0; trial < 20; ++trial) {
      T xi = random_torsion(e.acms);
      auto comps = decompose(xi, e.acms);
      T xi10 = comps.comps[9];
      if (inner(xi10, xi10) < 1e-10) continue;
      auto extA = package_of(xi10);
      T w = 0.5 * extA.R2;
      // solve for the C11 block cancelling the combination: sigma = -2w is
      // achieved by C proportional to w phi (the sign is pinned by testing)
      for (double s : {1.0, -1.0}) {
        T C = mat_mul(w, e.acms.phi);
        C *= s;
        T xi11(3, m);
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c) xi11(a, b, c) = e.acms.eta(a) * C(b, c);
        T crafted = xi10 + xi11;
        if (torsion_membership_residual(crafted, e.acms) > 1e-9) continue;
        auto ext = package_of(crafted);
        if (ext.R2.max_abs() < 1e-9) {
          CHECK(ext.dF.max_abs() < 1e-8);
          ++hits;
        }
      }
    }
    CHECK(hits > 0);
  }
}

TEST_CASE("bochner identities") {
  SUBCASE("H(1,1) values") {
    auto a = analyze(heisenberg_h1r<double>(1, h1r_default_phi<double>(1)));
    CHECK(a.bochner.eta_identity.lhs == doctest::Approx(-0.5));
    CHECK(a.bochner.eta_identity.rhs == doctest::Approx(-0.5));
    CHECK(a.bochner.F_identity.lhs == doctest::Approx(-1.0));
    CHECK(a.bochner.F_identity.rhs == doctest::Approx(-1.0));
    CHECK(a.bochner.eq2.lhs == doctest::Approx(-1.0));
    CHECK(a.bochner.eq2.rhs == doctest::Approx(-1.0));
    CHECK(a.bochner.eq1.asserted);
  }
  SUBCASE("sphere: eq2 = 4/r^2 and the Einstein integrand matches 2s/(2n+1)") {
    for (double r : {1.0, 2.0}) {
      auto a = analyze(sphere_su2<double>(r));
      CHECK(a.bochner.eq2.lhs == doctest::Approx(4.0 / (r * r)));
      CHECK(a.bochner.eq2.rhs == doctest::Approx(4.0 / (r * r)));
      CHECK(a.bochner.eq2_einstein.asserted);
      CHECK(a.bochner.eq2_einstein.rhs == doctest::Approx(4.0 / (r * r)));
    }
  }
  SUBCASE("cosymplectic: everything zero") {
    auto a = analyze(abelian<double>(2));
    for (const auto* id : {&a.bochner.F_identity, &a.bochner.eta_identity, &a.bochner.eq1,
                           &a.bochner.eq2}) {
      CHECK(id->lhs == doctest::Approx(0.0));
      CHECK(id->rhs == doctest::Approx(0.0));
    }
  }
  SUBCASE("asserted on all unimodular catalog models") {
    for (auto e : {sphere_su2<double>(1.0), abelian<double>(1),
                   heisenberg_h1r<double>(2, h1r_default_phi<double>(2)),
                   heisenberg_hp1<double>(2, hp1_sasakian_phi<double>(2, 1))}) {
      auto a = analyze(e);
      CHECK(a.bochner.F_identity.asserted);
      CHECK(a.bochner.max_asserted_residual() < 1e-9);
    }
    for (int trial = 0; trial < 25; ++trial) {
      auto a = analyze(heisenberg_h1r<double>(2, random_phi(5, 4)));
      CHECK(a.bochner.max_asserted_residual() < 1e-9);
    }
  }
  SUBCASE("non-unimodular models are evaluated but not asserted") {
    auto a = analyze(hyperbolic<double>(1, 1.0));
    CHECK_FALSE(a.bochner.F_identity.asserted);
    CHECK_FALSE(a.bochner.eta_identity.asserted);
    // and indeed the pointwise identity genuinely fails there
    CHECK(std::fabs(a.bochner.eta_identity.lhs - a.bochner.eta_identity.rhs) > 0.1);
  }
}

TEST_CASE("energy densities") {
  auto su = analyze(sphere_su2<double>(2.0));
  CHECK(ScalarTraits<double>::to_double(su.energy.bending) == doctest::Approx(0.5));
  CHECK(ScalarTraits<double>::to_double(su.energy.energy) == doctest::Approx(1.5 + 0.5));
  auto hyp = analyze(hyperbolic<double>(2, 1.0));
  CHECK(ScalarTraits<double>::to_double(hyp.energy.bending) == doctest::Approx(4.0));
  auto ab = analyze(abelian<double>(2));
  CHECK(ScalarTraits<double>::to_double(ab.energy.bending) == doctest::Approx(0.0));
  CHECK(ScalarTraits<double>::to_double(ab.energy.energy) == doctest::Approx(2.5));
}
