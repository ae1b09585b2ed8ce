#pragma once

#include <cstdint>
#include <vector>

#include "qups/rational.hpp"

namespace qups {

// Finite continued fraction of a non-negative rational, normalized so that
// the last partial quotient equals 1 (every rational has exactly one such
// expansion; [a_0] stays as-is for integers).
struct CFExpansion {
  std::vector<i64> a;  // a_0, a_1, ..., a_l ; a_i >= 1 for i >= 1
  i64 num = 0, den = 1;  // reduced input
  int order() const { return static_cast<int>(a.size()) - 1; }
};

struct Convergent {
  int n = 0;   // index, 0-based
  i64 p = 0;   // p_n
  i64 q = 1;   // q_n, q_0 <= q_1 < q_2 < ...
};

CFExpansion cf_expand(i64 num, i64 den);
std::vector<Convergent> convergents(const CFExpansion& cf);

// K(x) = max_{1<=i<=l} a_i; domain error for integer input (no partial
// quotients).
i64 max_partial_quotient(const CFExpansion& cf);

// <x> = distance to the nearest integer; x must be finite.
double nearest_int_dist(double x);
// max_j <x_j>; domain error on empty input.
double vector_nearest_int_dist(const std::vector<double>& x);

// min_{1<=n<=n_max} n^{1/d} * <n alpha> with <.> the vector distance above.
// Evaluated in doubles (error ~ n*ulp(alpha_j)); argmin is the smallest n
// attaining the minimum.
struct BadApproxProfile {
  i64 argmin_n = 0;
  double min_value = 0.0;
};
BadApproxProfile badly_approximable_profile(const std::vector<double>& alpha, i64 n_max);

// Inverse of a mod N (N >= 1); domain error unless gcd(a, N) == 1.
i64 mod_inverse(i64 a, i64 N);

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(u64 n);

}  // namespace qups
