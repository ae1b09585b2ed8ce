#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qups/pointset.hpp"
#include "qups/rational.hpp"

namespace qups {

inline constexpr i64 kDefaultNodeBudget = 20'000'000;    // covering grid nodes
inline constexpr i64 kDefaultDstarBudget = 2'000'000'000;  // corner*point*dim ops
inline constexpr double kNestednessTol = 1e-12;

int default_grid_resolution(int d);  // 256 for d <= 2, 64 for d == 3, 16 beyond

// q_p(P) = min pairwise p-distance / 2.  Exact sets report the integer
// measure of the minimal difference vector (L1/Linf: value, L2: squared)
// over P.den, so q = measure/(2 den) resp. sqrt(measure)/(2 den).
struct SeparationResult {
  double value = 0.0;
  bool exact = false;
  i64 measure = -1;
  i64 den = 1;
};
SeparationResult separation_radius(const PointSet& P, Norm p);

// Certified enclosure of h_p(P; [0,1]^d): lower from the (m_grid+1)^d grid
// nodes (boundary included), upper = lower + half-cell p-diameter.
struct Enclosure {
  double lo = 0.0;
  double hi = 0.0;
};
Enclosure covering_radius_enclosure(const PointSet& P, Norm p, int m_grid,
                                    i64 node_budget = kDefaultNodeBudget);

struct MeshRatio {
  Enclosure rho;  // [h_lo/q, h_hi/q]
  Enclosure h;
  SeparationResult q;
};
MeshRatio mesh_ratio_enclosure(const PointSet& P, Norm p, int m_grid,
                               i64 node_budget = kDefaultNodeBudget);

struct StarDisc {
  double value = 0.0;
  bool exact = false;   // exact rational evaluation (value == rat)
  Rational rat;
};
StarDisc star_discrepancy_exact(const PointSet& P, i64 op_budget = kDefaultDstarBudget);
double star_discrepancy_lb(const PointSet& P, i64 trials, u64 seed);

PointSet project(const PointSet& P, const std::vector<int>& dims);  // 0-based
PointSet dedup(const PointSet& P);

// every point of small matches a point of big within linf tol (exact match
// when both sets are exact and the common denominator fits)
bool nestedness_check(const PointSet& small, const PointSet& big, double tol = kNestednessTol);

struct QUReport {
  i64 n = 0;
  int d = 0;
  Norm p = Norm::Linf;
  int m_grid = 0;
  bool has_sep = false;
  double q = 0.0;
  bool q_exact = false;
  bool has_cover = false;
  double h_lo = 0.0, h_hi = 0.0;
  double rho_lo = 0.0, rho_hi = 0.0;
  bool has_dstar = false;
  double dstar = 0.0;
  bool dstar_is_lb = false;
  bool has_dual = false;
  i64 kappa = 0;      // enhanced trig degree (l1 of shortest dual vector)
  double sigma = 0.0;  // spectral test 1/|h|_2
  std::string family, params;
};

struct AnalyzeOptions {
  Norm p = Norm::Linf;
  int m_grid = 0;  // 0 = default for d
  bool want_sep = true;
  bool want_cover = true;
  bool want_dstar = false;
  bool want_dual = true;
  i64 dstar_budget = kDefaultDstarBudget;
  i64 lb_trials = 4096;
  u64 seed = 1;
  i64 node_budget = kDefaultNodeBudget;
};
QUReport analyze_pointset(const PointSet& P, const AnalyzeOptions& opt = {});

struct PrefixProfile {
  std::vector<i64> indices;
  std::vector<QUReport> reports;
  double max_growth_ratio = 0.0;  // consecutive n ratios
  std::vector<int> nested;        // per consecutive pair: 1/0, -1 not checked
};
PrefixProfile profile_prefixes(const std::function<PointSet(i64)>& gen,
                               const std::vector<i64>& indices,
                               const AnalyzeOptions& opt = {},
                               bool check_nested = false,
                               double nest_tol = kNestednessTol);

}  // namespace qups
