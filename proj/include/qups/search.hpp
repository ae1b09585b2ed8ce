#pragma once

#include <string>
#include <vector>

#include "qups/lattice.hpp"
#include "qups/rational.hpp"

namespace qups {

// kappa(X(g,N)): min l1-norm over nonzero lattice points, as an exact rational
// measure/N.  Equals min over k = 1..N-1 of sum_j minres(k*g_j mod N)/N, joined
// with 1 (integer unit vectors); classes with all-zero residues are skipped.
Rational kappa_primal(const std::vector<i64>& g, i64 N);

// kappa(dual): min l1-norm over nonzero integer h with h.g == 0 (mod N)
i64 kappa_dual(const std::vector<i64>& g, i64 N, i64 budget = kDefaultBoxBudget);

struct KappaBound {
  Rational kp;                      // kappa of the point lattice
  i64 kd = 0;                       // kappa of the dual lattice
  double product_reciprocal = 0.0;  // 1 / (kp * kd)
  double rho_hi = 0.0;              // measured mesh-ratio upper bound
};

// Pairs the kappa product with a measured mesh-ratio enclosure for g mod N.
KappaBound verify_mesh_bound_via_kappa(const std::vector<i64>& g, i64 N, Norm p,
                                       int m_grid = 0);

struct SearchConfig {
  i64 N = 0;
  int d = 2;
  bool exhaustive = true;
  i64 samples = 0;  // random mode sample size
  u64 seed = 1;
  i64 g_min = 0;  // scan domain {g_min..N-1}^d
  double kappa_dual_min = 0.0;
  double kappa_primal_min = 0.0;
  double dstar_max = -1.0;  // ignored when negative
  bool eval_dstar = false;  // compute D* for passing g even when not gated
  bool eval_rho = false;    // compute mesh-ratio upper bound for passing g
  int m_grid = 0;           // 0: default resolution
  i64 max_scan = 1'000'000;
  i64 op_budget = kDefaultBoxBudget;
};

struct SearchRecord {
  std::vector<i64> g;
  Rational kp;
  i64 kd = 0;
  bool has_dstar = false;
  double dstar = 0.0;
  bool has_rho = false;
  double rho_hi = 0.0;
};

struct SearchResult {
  i64 scanned = 0;
  i64 passed = 0;
  double fraction = 0.0;
  bool truncated = false;
  std::vector<SearchRecord> records;  // passing g in scan order
};

// Deterministic scan over generating vectors: exhaustive in lexicographic
// order over {g_min..N-1}^d, or a seeded random sample.  A vector passes iff
// kappa_dual >= kappa_dual_min, kappa_primal >= kappa_primal_min, and (when
// gated) D* <= dstar_max; D* is evaluated only for kappa-passing vectors.
SearchResult search_generators(const SearchConfig& cfg);

struct ThresholdEntry {
  int d = 0;
  i64 N = 0;
  double kappa_dual_min = 0.0;
  double kappa_primal_min = 0.0;
  double fraction = 0.0;  // committed passing fraction at these thresholds
};

// Quantile fixture (JSON) lookup; returns false when no (N, d) entry exists.
bool load_threshold_entry(const std::string& path, i64 N, int d, ThresholdEntry& out);

}  // namespace qups
