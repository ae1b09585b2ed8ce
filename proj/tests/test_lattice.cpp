#include "doctest.h"
#include "qups/lattice.hpp"
#include "qups/errors.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

using namespace qups;

TEST_CASE("norm helpers") {
  std::vector<double> x{3.0, -4.0};
  CHECK(norm_value(x, Norm::L1) == 7.0);
  CHECK(norm_value(x, Norm::L2) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(norm_value(x, Norm::Linf) == 4.0);
  CHECK(norm_from_name("inf") == Norm::Linf);
  CHECK(norm_from_name("2") == Norm::L2);
  CHECK(norm_from_name("1") == Norm::L1);
  CHECK_THROWS_AS(norm_from_name("3"), std::domain_error);
}

TEST_CASE("rank1 lattice (1,5) mod 8: exact successive minima in Linf") {
  auto L = rank1_lattice({1, 5}, 8);
  CHECK(L.exact);
  CHECK(L.den == 8);
  CHECK(L.det_abs == doctest::Approx(1.0 / 8.0).epsilon(1e-15));

  auto sv = shortest_vector(L, Norm::Linf);
  CHECK(sv.measure == 2);  // (2,2)/8, norm 1/4
  CHECK(sv.norm == doctest::Approx(0.25).epsilon(1e-12));

  auto sm = successive_minima(L, Norm::Linf);
  REQUIRE(sm.lambda.size() == 2);
  CHECK(sm.exact);
  CHECK(sm.den == 8);
  CHECK(sm.witness[0].measure == 2);  // lambda_1 = 1/4
  CHECK(sm.witness[1].measure == 3);  // lambda_2 = 3/8
  CHECK(sm.lambda[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(sm.lambda[1] == doctest::Approx(0.375).epsilon(1e-12));

  // Minkowski: prod lambda_j <= det, and the two summary bounds.
  CHECK(sm.lambda[0] * sm.lambda[1] <= L.det_abs * (1 + 1e-12));
  CHECK(lattice_covering_upper(L, Norm::Linf) == doctest::Approx(5.0 / 16.0).epsilon(1e-12));
  CHECK(lattice_mesh_ratio_upper(L, Norm::Linf) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("2d CF fast path matches enumeration") {
  auto cs = shortest_vector_2d_cf(5, 8);
  CHECK(cs.lambda == Rational(1, 4));
  CHECK((cs.w == std::array<i64, 2>{2, 2}));

  auto unit = shortest_vector_2d_cf(1, 5);
  CHECK(unit.lambda == Rational(1, 5));
  CHECK((unit.w == std::array<i64, 2>{1, 1}));

  CHECK_THROWS_AS(shortest_vector_2d_cf(0, 7), std::domain_error);
  CHECK(shortest_vector_2d_cf(1, 1).lambda == Rational(1));

  // Cross-check against generic enumeration for a spread of (g, N).
  for (i64 N : {5LL, 8LL, 13LL, 21LL, 36LL, 101LL}) {
    for (i64 g = 1; g < N; ++g) {
      if (std::gcd(g, N) != 1) continue;
      auto fast = shortest_vector_2d_cf(g, N);
      auto slow = shortest_vector(rank1_lattice({1, g}, N), Norm::Linf);
      CHECK(Rational(slow.measure, N) == fast.lambda);
    }
  }
}

TEST_CASE("dual_shortest: kappa and sigma witnesses for (1,5) mod 8") {
  auto d1 = dual_shortest({1, 5}, 8, Norm::L1);
  CHECK(d1.measure == 4);
  CHECK(d1.value == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(d1.h == std::vector<i64>{1, 3});  // lex-least of (1,3),(2,-2),(3,1)

  auto d2 = dual_shortest({1, 5}, 8, Norm::L2);
  CHECK(d2.measure == 8);  // (2,-2): squared length 8
  CHECK(d2.value == doctest::Approx(std::sqrt(8.0)).epsilon(1e-15));

  // Unit vector e_j is dual iff g_j == 0 (mod N).
  auto dz = dual_shortest({0, 3}, 7, Norm::L1);
  CHECK(dz.measure == 1);
  CHECK(dz.h == std::vector<i64>{1, 0});
}

TEST_CASE("frolov matrix: roots, determinant, admissibility") {
  auto L2 = frolov_matrix(2);
  REQUIRE(L2.roots.size() == 2);
  // p_2(x) = (x-1)(x-3) - 1 = x^2 - 4x + 2, roots 2 -+ sqrt 2.
  CHECK(L2.roots[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
  CHECK(L2.roots[1] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-12));
  CHECK(L2.det_abs == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));

  for (int d = 2; d <= 4; ++d) {
    auto L = frolov_matrix(d);
    REQUIRE(static_cast<int>(L.roots.size()) == d);
    for (double r : L.roots) {
      double v = 1.0;
      for (int j = 1; j <= d; ++j) v *= (r - (2.0 * j - 1.0));
      CHECK(std::abs(v - 1.0) <= 1e-9);  // prod (x-2j+1) = 1 at each root
    }
  }

  // Admissibility: the norm form of an algebraic integer is a nonzero
  // rational integer, so min prod |x_j| over nonzero lattice points is >= 1.
  auto adm = admissibility_min_normform(L2, 10.0);
  CHECK(adm.min_product >= 1.0 - 1e-9);
  CHECK(!adm.zero_coordinate);
}

TEST_CASE("enumeration guards") {
  std::vector<std::pair<i64, i64>> box(3, {0, 99});
  CHECK_THROWS_AS(for_each_coeff(box, 1000, [](const std::vector<i64>&) {}), budget_error);
  CHECK_THROWS_AS(lattice_from_matrix(2, {1.0, 1.0, 1.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(dual_shortest({1, 5}, 8, Norm::L1, 2), budget_error);
}

TEST_CASE("grid lattice identity") {
  // (1/4) I: all successive minima 1/4 in every norm.
  auto L = lattice_from_matrix_exact(2, {1, 0, 0, 1}, 4);
  auto sm = successive_minima(L, Norm::Linf);
  CHECK(sm.lambda[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(sm.lambda[1] == doctest::Approx(0.25).epsilon(1e-15));
  auto sm2 = successive_minima(L, Norm::L2);
  CHECK(sm2.lambda[1] == doctest::Approx(0.25).epsilon(1e-15));
}
