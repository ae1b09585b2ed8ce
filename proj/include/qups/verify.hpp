#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qups/rational.hpp"

namespace qups {

struct VerifyRow {
  std::string name;
  double measured = 0.0;
  std::string relation;  // "<=", ">=", "=="
  double bound = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<VerifyRow> rows;
  bool all_pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }
};

// Deterministic (g, N) fixtures: N in [2, 512], g in [1, N-1], gcd(g, N) = 1.
inline constexpr u64 kCfPairSeed = 0x20260815ull;
std::vector<std::pair<i64, i64>> seeded_cf_pairs(int count, u64 seed);

// suite in {cf, minima, meshratio, nalpha, frolov, all}
VerifyReport run_verify_suite(const std::string& suite);

std::string verify_table(const VerifyReport& rep);

}  // namespace qups
