#include "doctest.h"
#include "qups/metrics.hpp"
#include "qups/pointset.hpp"
#include "qups/errors.hpp"

#include <cmath>
#include <stdexcept>

using namespace qups;

TEST_CASE("separation radius: grids and fibonacci") {
  auto L2 = gen_grid_regular(2, 2);
  auto s = separation_radius(L2, Norm::Linf);
  CHECK(s.value == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(s.exact);
  CHECK(s.measure == 1);
  CHECK(s.den == 2);

  // Gamma grid: closest pair differs by 1/m^2 in the last coordinate.
  for (i64 m : {2LL, 3LL, 5LL}) {
    auto G = gen_grid_aniso(m, 2);
    auto sg = separation_radius(G, Norm::Linf);
    CHECK(sg.exact);
    CHECK(sg.measure == 1);
    CHECK(sg.den == m * m);
    CHECK(sg.value == doctest::Approx(0.5 / double(m * m)).epsilon(1e-14));
  }

  // Fibonacci m=6: shortest lattice vector (2,2)/8 is realized by a pair.
  auto F = gen_fibonacci(6);
  auto sf = separation_radius(F, Norm::Linf);
  CHECK(sf.exact);
  CHECK(sf.measure == 2);
  CHECK(sf.den == 8);
  CHECK(sf.value == doctest::Approx(0.125).epsilon(1e-15));

  // L2 on the same set: pair diff (2,2)/8, squared measure 8.
  auto sf2 = separation_radius(F, Norm::L2);
  CHECK(sf2.measure == 8);
  CHECK(sf2.value == doctest::Approx(std::sqrt(8.0) / 16.0).epsilon(1e-14));

  // duplicate points -> zero separation
  PointSet D;
  D.d = 1;
  D.den = 4;
  D.push_exact({1});
  D.push_exact({1});
  CHECK(separation_radius(D, Norm::Linf).value == 0.0);

  PointSet one;
  one.d = 1;
  one.den = 2;
  one.push_exact({1});
  CHECK_THROWS_AS(separation_radius(one, Norm::Linf), std::domain_error);
}

TEST_CASE("hexagonal rules approach the hexagonal density along odd k") {
  // scaled min distance tends to sqrt(2/sqrt(3)) ~ 1.07457 for odd k
  const double limit = std::sqrt(2.0 / std::sqrt(3.0));
  double prev = 1e9;
  for (int k : {1, 3, 5}) {
    auto P = gen_hexagonal_cf(k);
    auto s = separation_radius(P, Norm::L2);
    double gap = std::abs(2.0 * s.value * std::sqrt(static_cast<double>(P.n())) - limit);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev < 5e-4);
}

TEST_CASE("lemma: point separation at least half the lattice shortest vector") {
  for (int m = 4; m <= 9; ++m) {
    auto P = gen_fibonacci(m);
    auto lam1 = shortest_vector(rank1_lattice(P.gvec, P.modulus), Norm::Linf);
    auto q = separation_radius(P, Norm::Linf);
    CHECK(q.value >= lam1.norm / 2 - 1e-15);
  }
}

TEST_CASE("covering enclosure: corner-dominated cases") {
  // Lambda_2 in d=2: farthest cube point is the corner (1,1), distance 1/2.
  auto L2 = gen_grid_regular(2, 2);
  auto h = covering_radius_enclosure(L2, Norm::Linf, 256);
  CHECK(h.lo == 0.5);  // node (1,1) is on the grid, distance exact
  CHECK(h.hi == doctest::Approx(0.5 + 0.5 / 256.0).epsilon(1e-12));

  // single point at the origin: h_inf = 1 at corner (1,...,1)
  PointSet one;
  one.d = 2;
  one.den = 1;
  one.push_exact({0, 0});
  auto h1 = covering_radius_enclosure(one, Norm::Linf, 64);
  CHECK(h1.lo == 1.0);
  CHECK(h1.hi == doctest::Approx(1.0 + 0.5 / 64.0).epsilon(1e-12));
  // L2: corner distance sqrt(2), half-cell sqrt(2)/(2m)
  auto h2 = covering_radius_enclosure(one, Norm::L2, 64);
  CHECK(h2.lo == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(h2.hi - h2.lo == doctest::Approx(std::sqrt(2.0) / 128.0).epsilon(1e-12));

  // Fibonacci m=6: corner (1,0) sits 3/8 away from the nearest point.
  auto F = gen_fibonacci(6);
  auto hf = covering_radius_enclosure(F, Norm::Linf, 512);
  CHECK(hf.lo >= 0.375);
  CHECK(hf.lo <= 0.3761);
  CHECK(hf.hi - hf.lo == doctest::Approx(0.5 / 512.0).epsilon(1e-12));

  // Enclosures at different resolutions must overlap (both contain h).
  auto c1 = covering_radius_enclosure(F, Norm::Linf, 128);
  auto c2 = covering_radius_enclosure(F, Norm::Linf, 256);
  CHECK(c1.lo <= c2.hi + 1e-15);
  CHECK(c2.lo <= c1.hi + 1e-15);

  // Lemma 2h(X) bound via successive minima (corner inflation at most 2x).
  auto cover_upper = lattice_covering_upper(rank1_lattice({1, 5}, 8), Norm::Linf);
  CHECK(hf.lo <= 2 * cover_upper + 1e-12);

  // node budget
  CHECK_THROWS_AS(covering_radius_enclosure(F, Norm::Linf, 100000, 1000), budget_error);
}

TEST_CASE("mesh ratio enclosure") {
  auto F = gen_fibonacci(6);
  auto mr = mesh_ratio_enclosure(F, Norm::Linf, 512);
  CHECK(mr.q.value == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(mr.rho.lo >= 3.0 - 1e-12);  // h_lo >= 3/8 via the (1,0) corner node
  CHECK(mr.rho.hi >= mr.rho.lo);
  CHECK(mr.rho.hi <= 3.04);

  PointSet D;
  D.d = 1;
  D.den = 4;
  D.push_exact({1});
  D.push_exact({1});
  CHECK_THROWS_AS(mesh_ratio_enclosure(D, Norm::Linf, 16), std::domain_error);
}

TEST_CASE("star discrepancy: exact grid formulas") {
  // D*(Lambda_m, d=1) = 1/m.
  for (i64 m : {2LL, 3LL, 4LL, 7LL, 16LL}) {
    auto P = gen_grid_regular(m, 1);
    auto ds = star_discrepancy_exact(P);
    CHECK(ds.exact);
    CHECK(ds.rat == Rational(1, m));
  }
  // D*(Lambda_m, d=2) = (2m-1)/m^2 (worst box just past ((m-1)/m,(m-1)/m)).
  for (i64 m : {2LL, 3LL, 4LL, 5LL}) {
    auto P = gen_grid_regular(m, 2);
    auto ds = star_discrepancy_exact(P);
    CHECK(ds.exact);
    CHECK(ds.rat == Rational(2 * m - 1, m * m));
  }

  // lb never exceeds the exact value; equals it when the sweep is exhaustive.
  auto F = gen_fibonacci(5);
  auto ex = star_discrepancy_exact(F);
  double lb = star_discrepancy_lb(F, 4096, 1);
  CHECK(lb <= ex.value + 1e-15);
  CHECK(lb == doctest::Approx(ex.value).epsilon(1e-12));
  double lb_small = star_discrepancy_lb(F, 7, 123);
  CHECK(lb_small <= ex.value + 1e-15);

  // Fibonacci m=6, frozen from the committed oracle run.
  auto dsf = star_discrepancy_exact(gen_fibonacci(6));
  CHECK(dsf.exact);
  CHECK(dsf.rat == Rational(15, 64));

  // d > 3 exact evaluation is out of contract
  PointSet P4;
  P4.d = 4;
  P4.den = 2;
  P4.push_exact({0, 0, 0, 0});
  P4.push_exact({1, 1, 1, 1});
  CHECK_THROWS_AS(star_discrepancy_exact(P4), budget_error);
}

TEST_CASE("project and dedup") {
  auto G = gen_grid_aniso(2, 2);
  auto P0 = project(G, {0});
  CHECK(P0.d == 1);
  CHECK(P0.n() == 8);
  auto U = dedup(P0);
  CHECK(U.n() == 2);
  CHECK(U.params.find("dedup=1") != std::string::npos);

  auto F = gen_fibonacci(6);
  auto F1 = project(F, {1});
  CHECK(dedup(F1).n() == 8);  // second coordinates hit all eighths
  CHECK_THROWS_AS(project(F, {2}), std::domain_error);
  CHECK_THROWS_AS(project(F, {}), std::domain_error);
}

TEST_CASE("nestedness") {
  CHECK(nestedness_check(gen_grid_regular(2, 2), gen_grid_regular(4, 2)));
  CHECK(!nestedness_check(gen_grid_regular(2, 2), gen_grid_regular(3, 2)));
  // prefix property of kronecker sequences (float path)
  auto a = alpha_power2(2);
  CHECK(nestedness_check(gen_kronecker(a, 8), gen_kronecker(a, 16)));
  // frolov doubling
  CHECK(nestedness_check(gen_frolov_points(2, 4.0), gen_frolov_points(2, 8.0), 1e-12));
  CHECK(!nestedness_check(gen_frolov_points(2, 8.0), gen_frolov_points(2, 4.0), 1e-12));
}

TEST_CASE("analyze_pointset: fibonacci m=6 end to end") {
  auto F = gen_fibonacci(6);
  AnalyzeOptions opt;
  opt.m_grid = 512;
  opt.want_dstar = true;
  auto r = analyze_pointset(F, opt);
  CHECK(r.n == 8);
  CHECK(r.d == 2);
  CHECK(r.has_sep);
  CHECK(r.q == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(r.q_exact);
  CHECK(r.has_cover);
  CHECK(r.rho_hi <= 12.0);
  CHECK(r.has_dstar);
  CHECK(!r.dstar_is_lb);
  CHECK(r.has_dual);
  CHECK(r.kappa == 4);
  CHECK(r.sigma == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-14));
}

TEST_CASE("profile_prefixes: growth and monotone prefix metrics") {
  auto a = alpha_power2(2);
  auto gen = [&](i64 n) { return gen_kronecker(a, n); };
  AnalyzeOptions opt;
  opt.m_grid = 128;
  opt.want_dual = false;
  auto prof = profile_prefixes(gen, {64, 128, 256}, opt, true);
  REQUIRE(prof.reports.size() == 3);
  CHECK(prof.max_growth_ratio == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(prof.nested == std::vector<int>{1, 1});
  // prefixes only add points: separation can't grow, covering can't grow
  for (size_t i = 1; i < prof.reports.size(); ++i) {
    CHECK(prof.reports[i].q <= prof.reports[i - 1].q + 1e-15);
    CHECK(prof.reports[i].h_hi <= prof.reports[i - 1].h_hi + 1e-12);
  }
  std::vector<i64> bad{64, 64};
  CHECK_THROWS_AS(profile_prefixes(gen, bad, opt), std::domain_error);
}
