#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qups/errors.hpp"
#include "qups/rational.hpp"

namespace qups {

enum class Norm { L1, L2, Linf };

const char* norm_name(Norm p);
Norm norm_from_name(const std::string& s);
double norm_value(const std::vector<double>& x, Norm p);

inline constexpr i64 kDefaultBoxBudget = 80'000'000;  // enumeration cells

// Lattice X = T * Z^d; basis vectors are the COLUMNS of T (row-major storage).
// Exact lattices additionally carry T = Tnum/den with integer Tnum.
struct LatticeSpec {
  int d = 0;
  std::vector<double> T;  // row-major d*d
  double det_abs = 0.0;

  bool exact = false;
  i64 den = 1;
  std::vector<i64> Tnum;  // row-major, T = Tnum/den

  enum class Tag { generic, rank1, frolov } tag = Tag::generic;
  std::vector<i64> g;  // rank1: generating vector mod N
  i64 modulus = 0;     // rank1: N
  std::vector<double> roots;  // frolov: polynomial roots

  double entry(int i, int j) const { return T[static_cast<size_t>(i) * d + j]; }
};

LatticeSpec lattice_from_matrix(int d, const std::vector<double>& T);
LatticeSpec lattice_from_matrix_exact(int d, const std::vector<i64>& Tnum, i64 den);

// Section 3.2 matrix: first column (1/N, g1^{-1}g2/N, ..., g1^{-1}g_d/N),
// remaining columns the unit vectors; N = 1 degenerates to Z^d.
LatticeSpec rank1_lattice(const std::vector<i64>& g, i64 N);

// Vandermonde rows over the real roots of p_d(x) = prod_{j=1..d}(x-2j+1) - 1.
LatticeSpec frolov_matrix(int d);

struct LatticeVector {
  std::vector<i64> k;   // coefficients, canonical sign (first nonzero > 0)
  std::vector<double> x;  // T k
  double norm = 0.0;
  // exact lattices: integer measure of x*den — L1: sum|w|, Linf: max|w|,
  // L2: sum w^2 (squared).  -1 when unavailable.
  i64 measure = -1;
};

struct SuccessiveMinima {
  Norm p = Norm::Linf;
  std::vector<double> lambda;           // λ_1 <= ... <= λ_d
  std::vector<LatticeVector> witness;   // independent, witness[i].norm == λ_i
  bool exact = false;
  i64 den = 1;  // exact: λ_i = measure/den (L1, Linf) or sqrt(measure)/den (L2)
};

LatticeVector shortest_vector(const LatticeSpec& L, Norm p,
                              i64 box_budget = kDefaultBoxBudget);
SuccessiveMinima successive_minima(const LatticeSpec& L, Norm p,
                                   i64 box_budget = kDefaultBoxBudget);

// (1/2) sum_j λ_j^{(p)} >= h_p(X; R^d)
double lattice_covering_upper(const LatticeSpec& L, Norm p = Norm::Linf);
// (sum_j λ_j) / λ_1 >= ρ_p(X; R^d)  (since q = λ_1/2)
double lattice_mesh_ratio_upper(const LatticeSpec& L, Norm p = Norm::Linf);

// d=2 fast path: λ_1^{(inf)} of the rank-1 lattice from the continued
// fraction of g/N; returns the exact value as a rational.
struct CfShortest {
  Rational lambda;           // λ_1^{(inf)}
  std::array<i64, 2> w;      // witness numerators over N
};
CfShortest shortest_vector_2d_cf(i64 g, i64 N);

// Minimal nonzero h with g.h == 0 (mod N), by l1-shell enumeration.
// p selects the minimized norm: L1 (enhanced trig degree kappa) or L2
// (spectral test; measure is the squared l2 norm).
struct DualShortest {
  std::vector<i64> h;
  i64 measure = 0;     // l1 value, or squared l2 value
  double value = 0.0;  // the norm itself
};
DualShortest dual_shortest(const std::vector<i64>& g, i64 N, Norm p,
                           i64 box_budget = kDefaultBoxBudget);

struct AdmissibilityResult {
  double min_product = 0.0;  // min over nonzero |x|_inf <= R of prod_j |x_j|
  std::vector<i64> argmin_k;
  bool zero_coordinate = false;  // witness has some x_j == 0
};
AdmissibilityResult admissibility_min_normform(const LatticeSpec& L, double R,
                                               i64 box_budget = kDefaultBoxBudget);

// Shared enumeration helper: integer coefficient box guaranteed to contain
// all k with T k in the centered p-ball (or cube) of radius R.
std::vector<std::pair<i64, i64>> coeff_box(const LatticeSpec& L, double R, Norm p);
std::vector<double> invert_matrix(int d, const std::vector<double>& T);
double det_abs_of(int d, const std::vector<double>& T);

i128 box_volume(const std::vector<std::pair<i64, i64>>& box);

// Odometer over an integer box; f(k) for every cell.  Throws budget_error
// up front when the box volume exceeds the budget.
template <class F>
void for_each_coeff(const std::vector<std::pair<i64, i64>>& box, i64 budget, F&& f) {
  if (box_volume(box) > budget)
    throw budget_error("enumeration box exceeds budget");
  int d = static_cast<int>(box.size());
  std::vector<i64> k(d);
  for (int i = 0; i < d; ++i) k[i] = box[i].first;
  while (true) {
    f(k);
    int i = d - 1;
    while (i >= 0 && k[i] == box[i].second) { k[i] = box[i].first; --i; }
    if (i < 0) break;
    ++k[i];
  }
}

}  // namespace qups
