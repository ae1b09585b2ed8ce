#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qups/lattice.hpp"
#include "qups/rational.hpp"

namespace qups {

inline constexpr i64 kDefaultPointBudget = 1 << 22;

// N points in [0,1)^d.  Exact sets carry integer numerators over a common
// denominator `den`; `coords` always mirrors the values as binary64.
struct PointSet {
  int d = 0;
  bool exact = true;
  i64 den = 1;
  std::vector<i64> nums;       // N*d, 0 <= num < den (exact mode only)
  std::vector<double> coords;  // N*d

  std::string family = "custom";
  std::string params;
  std::vector<i64> gvec;  // rank-1 origin, empty otherwise
  i64 modulus = 0;

  i64 n() const { return d ? static_cast<i64>(coords.size()) / d : 0; }
  double at(i64 i, int j) const { return coords[static_cast<size_t>(i) * d + j]; }
  i64 num_at(i64 i, int j) const { return nums[static_cast<size_t>(i) * d + j]; }
  Rational rat_at(i64 i, int j) const { return Rational(num_at(i, j), den); }

  void push_exact(const std::vector<i64>& row);
  void push_float(const std::vector<double>& row);
};

PointSet gen_rank1(const std::vector<i64>& g, i64 N, i64 budget = kDefaultPointBudget);

i64 fibonacci_number(int m);  // F_1 = F_2 = 1
PointSet gen_fibonacci(int m, i64 budget = kDefaultPointBudget);

// g_k/N_k = [0; a_1..a_{2k+1}], a_odd = 2, a_even = 1; returns P((1,g_k), N_k).
std::pair<i64, i64> hexagonal_cf_fraction(int k);
PointSet gen_hexagonal_cf(int k, i64 budget = kDefaultPointBudget);

// {n*alpha} for n = 1..N (include_zero prepends n = 0); float representation.
PointSet gen_kronecker(const std::vector<double>& alpha, i64 N, bool include_zero = false,
                       i64 budget = kDefaultPointBudget);

std::vector<double> alpha_power2(int d);  // (2^{1/(d+1)}, ..., 2^{d/(d+1)})
// named fixtures: "pow2" (any d), "golden" (d=1), "liouville" (d=1)
std::vector<double> alpha_named(const std::string& name, int d);

// { a^{-1}(Tk - delta) : k in Z^d } cap [0,1)^d.  Float membership uses
// tolerance 1e-12 at both ends of [0,1); exact overload compares exactly.
PointSet enumerate_in_cube(const LatticeSpec& L, double a, const std::vector<double>& delta,
                           i64 point_budget = kDefaultPointBudget,
                           i64 box_budget = kDefaultBoxBudget);
PointSet enumerate_in_cube_exact(const LatticeSpec& L, const Rational& a,
                                 const std::vector<Rational>& delta,
                                 i64 point_budget = kDefaultPointBudget,
                                 i64 box_budget = kDefaultBoxBudget);

PointSet gen_frolov_points(int d, double a, const std::vector<double>& delta = {},
                           i64 point_budget = kDefaultPointBudget);

PointSet gen_grid_regular(i64 m, int d, i64 budget = kDefaultPointBudget);  // Lambda_m
PointSet gen_grid_aniso(i64 m, int d, i64 budget = kDefaultPointBudget);    // Gamma_{n(m)}

}  // namespace qups
