#include "qups/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qups/errors.hpp"

namespace qups {

CFExpansion cf_expand(i64 num, i64 den) {
  if (den <= 0) throw std::domain_error("cf_expand: denominator must be positive");
  if (num < 0) throw std::domain_error("cf_expand: negative input");
  i64 g = gcd_i64(num, den);
  num /= g;
  den /= g;

  CFExpansion cf;
  cf.num = num;
  cf.den = den;
  i64 p = num, q = den;
  while (q != 0) {  // Euclid; quotients after a_0 are >= 1
    cf.a.push_back(p / q);
    i64 r = p % q;
    p = q;
    q = r;
  }
  // Canonical form: last partial quotient == 1 (split a_l >= 2 into a_l-1, 1).
  if (cf.a.size() > 1 && cf.a.back() >= 2) {
    cf.a.back() -= 1;
    cf.a.push_back(1);
  }
  return cf;
}

std::vector<Convergent> convergents(const CFExpansion& cf) {
  std::vector<Convergent> out;
  out.reserve(cf.a.size());
  i64 pm2 = 0, pm1 = 1;  // p_{-2}, p_{-1}
  i64 qm2 = 1, qm1 = 0;  // q_{-2}, q_{-1}
  for (size_t n = 0; n < cf.a.size(); ++n) {
    i128 p = i128(cf.a[n]) * pm1 + pm2;
    i128 q = i128(cf.a[n]) * qm1 + qm2;
    if (p > INT64_MAX || q > INT64_MAX)
      throw budget_error("convergents: p_n/q_n exceeds int64");
    Convergent c;
    c.n = static_cast<int>(n);
    c.p = static_cast<i64>(p);
    c.q = static_cast<i64>(q);
    out.push_back(c);
    pm2 = pm1; pm1 = c.p;
    qm2 = qm1; qm1 = c.q;
  }
  if (!out.empty() && (out.back().p != cf.num || out.back().q != cf.den))
    throw std::logic_error("convergents: recursion does not reproduce the input");
  return out;
}

i64 max_partial_quotient(const CFExpansion& cf) {
  if (cf.a.size() < 2)
    throw std::domain_error("max_partial_quotient: integer input has no partial quotients");
  i64 k = 1;
  for (size_t i = 1; i < cf.a.size(); ++i) k = std::max(k, cf.a[i]);
  return k;
}

double nearest_int_dist(double x) {
  double t = x - std::floor(x);
  return std::min(t, 1.0 - t);
}

double vector_nearest_int_dist(const std::vector<double>& x) {
  if (x.empty()) throw std::domain_error("vector_nearest_int_dist: empty vector");
  double m = 0.0;
  for (double v : x) m = std::max(m, nearest_int_dist(v));
  return m;
}

BadApproxProfile badly_approximable_profile(const std::vector<double>& alpha, i64 n_max) {
  if (alpha.empty()) throw std::domain_error("badly_approximable_profile: empty alpha");
  for (double a : alpha)
    if (!std::isfinite(a)) throw std::domain_error("badly_approximable_profile: non-finite alpha");
  if (n_max < 1) throw std::domain_error("badly_approximable_profile: n_max < 1");

  const double inv_d = 1.0 / static_cast<double>(alpha.size());
  BadApproxProfile best;
  best.min_value = std::numeric_limits<double>::infinity();
  for (i64 n = 1; n <= n_max; ++n) {
    double dist = 0.0;
    for (double a : alpha) dist = std::max(dist, nearest_int_dist(static_cast<double>(n) * a));
    double v = std::pow(static_cast<double>(n), inv_d) * dist;
    if (v < best.min_value) {
      best.min_value = v;
      best.argmin_n = n;
    }
  }
  return best;
}

i64 mod_inverse(i64 a, i64 N) {
  if (N < 1) throw std::domain_error("mod_inverse: modulus must be >= 1");
  if (N == 1) return 0;
  a %= N;
  if (a < 0) a += N;
  // extended Euclid on (a, N)
  i64 r0 = a, r1 = N, s0 = 1, s1 = 0;
  while (r1 != 0) {
    i64 q = r0 / r1;
    i64 r2 = r0 - q * r1;
    i64 s2 = s0 - q * s1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
  }
  if (r0 != 1) throw std::domain_error("mod_inverse: gcd(a, N) != 1");
  s0 %= N;
  if (s0 < 0) s0 += N;
  return s0;
}

namespace {

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  // deterministic witness set for n < 2^64
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace qups
