#include "qups/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "qups/constants.hpp"
#include "qups/lattice.hpp"
#include "qups/metrics.hpp"
#include "qups/numtheory.hpp"
#include "qups/pointset.hpp"
#include "qups/rng.hpp"

namespace qups {

std::vector<std::pair<i64, i64>> seeded_cf_pairs(int count, u64 seed) {
  SplitMix64 rng(seed);
  std::vector<std::pair<i64, i64>> out;
  while (static_cast<int>(out.size()) < count) {
    i64 N = 2 + static_cast<i64>(rng.below(511));  // N in [2, 512]
    i64 g = 1 + static_cast<i64>(rng.below(static_cast<u64>(N - 1)));
    if (gcd_i64(g, N) != 1) continue;
    out.emplace_back(g, N);
  }
  return out;
}

namespace {

void row_le(VerifyReport& R, std::string name, double measured, double bound) {
  R.rows.push_back({std::move(name), measured, "<=", bound, measured <= bound});
}

void row_ge(VerifyReport& R, std::string name, double measured, double bound) {
  R.rows.push_back({std::move(name), measured, ">=", bound, measured >= bound});
}

void row_bool(VerifyReport& R, std::string name, bool ok) {
  R.rows.push_back({std::move(name), ok ? 1.0 : 0.0, "==", 1.0, ok});
}

i64 minres(i64 v, i64 N) {
  i64 r = ((v % N) + N) % N;
  return std::min(r, N - r);
}

void suite_cf(VerifyReport& R) {
  const std::vector<std::pair<i64, i64>> fixtures = {
      {7, 10}, {5, 8}, {3, 8}, {13, 21}, {8, 13}};
  for (auto [g, N] : fixtures) {
    CFExpansion cf = cf_expand(g, N);
    auto cs = convergents(cf);
    std::string tag = "cf[" + std::to_string(g) + "/" + std::to_string(N) + "]";

    bool best_ok = true;
    for (size_t n = 0; n + 1 < cs.size(); ++n) {
      i64 rn = std::llabs(cs[n].q * g - cs[n].p * N);
      for (i64 q = 1; q < cs[n + 1].q; ++q)
        if (minres(q * g, N) < rn) best_ok = false;
    }
    row_bool(R, tag + " convergent residues are minimal up to q_{n+1}", best_ok);

    bool err_ok = true;
    for (size_t n = 0; n + 1 < cs.size(); ++n) {
      i64 rn = std::llabs(cs[n].q * g - cs[n].p * N);
      i64 qn1 = cs[n + 1].q;
      if (rn * (qn1 + cs[n].q) < N) err_ok = false;  // lower: <q_n a> >= 1/(q_{n+1}+q_n)
      if (rn * qn1 > N) err_ok = false;              // upper: <q_n a> <= 1/q_{n+1}
    }
    row_bool(R, tag + " residue within [1/(q'+q), 1/q']", err_ok);
  }
  // normalization: last partial quotient is 1; K ranges over a_1..a_l
  CFExpansion h = cf_expand(3, 8);
  row_bool(R, "cf[3/8] normalized tail is 1", h.a.back() == 1 && h.a.size() == 5);
  row_bool(R, "cf[3/8] K = 2", max_partial_quotient(h) == 2);
}

void suite_minima(VerifyReport& R) {
  struct Fix { std::vector<i64> g; i64 N; };
  const std::vector<Fix> rank1s = {
      {{1, 5}, 8}, {{1, 3}, 7}, {{1, 13}, 21}, {{1, 11}, 30},
      {{1, 2, 3}, 7}, {{1, 5, 7}, 11}};
  for (const Fix& f : rank1s) {
    LatticeSpec L = rank1_lattice(f.g, f.N);
    SuccessiveMinima sm = successive_minima(L, Norm::Linf);
    i128 prod = 1;
    for (const auto& w : sm.witness) prod *= w.measure;
    i128 cap = 1;  // N^{d-1} = |det| * den^d with det = 1/N, den = N
    for (int j = 0; j + 1 < L.d; ++j) cap *= f.N;
    std::string tag = "minkowski[rank1 N=" + std::to_string(f.N) +
                      " d=" + std::to_string(L.d) + "]";
    row_le(R, tag + " prod lambda_inf <= |det|", static_cast<double>(prod),
           static_cast<double>(cap));
    row_le(R, tag + " lambda1 <= |det|^{1/d}", sm.lambda.front(),
           std::pow(L.det_abs, 1.0 / L.d) * (1.0 + 1e-12));
  }
  for (int d = 2; d <= 3; ++d) {
    LatticeSpec F = frolov_matrix(d);
    SuccessiveMinima sm = successive_minima(F, Norm::Linf);
    double prod = 1.0;
    for (double l : sm.lambda) prod *= l;
    std::string tag = "minkowski[frolov d=" + std::to_string(d) + "]";
    row_le(R, tag + " prod lambda_inf <= |det|", prod, F.det_abs * (1.0 + 1e-12));
    row_le(R, tag + " lambda1 <= |det|^{1/d}", sm.lambda.front(),
           std::pow(F.det_abs, 1.0 / d) * (1.0 + 1e-12));
  }
  // regular grid: equality case
  LatticeSpec G = lattice_from_matrix_exact(2, {1, 0, 0, 1}, 4);
  SuccessiveMinima sm = successive_minima(G, Norm::Linf);
  row_bool(R, "minkowski[grid m=4] lambda = (1/4, 1/4)",
           sm.lambda.size() == 2 && sm.witness[0].measure == 1 &&
               sm.witness[1].measure == 1 && sm.den == 4);
}

void suite_meshratio(VerifyReport& R) {
  for (int m = 5; m <= 12; ++m) {
    PointSet P = gen_fibonacci(m);
    MeshRatio mr = mesh_ratio_enclosure(P, Norm::Linf, 512);
    row_le(R, "meshratio[fibonacci m=" + std::to_string(m) + "] rho_hi <= 12",
           mr.rho.hi, 12.0);
  }
  auto pairs = seeded_cf_pairs(20, kCfPairSeed);
  double min_sep_margin = std::numeric_limits<double>::infinity();
  double min_rho_margin = std::numeric_limits<double>::infinity();
  for (auto [g, N] : pairs) {
    i64 K = max_partial_quotient(cf_expand(g, N));
    CfShortest sv = shortest_vector_2d_cf(g, N);
    i64 m = sv.lambda.num * (N / sv.lambda.den);
    // lambda1 >= 1/sqrt((K+2)N)  <=>  m^2 (K+2) >= N
    min_sep_margin = std::min(min_sep_margin,
                              static_cast<double>(i128(m) * m * (K + 2) - N));
    SuccessiveMinima sm = successive_minima(rank1_lattice({1, g}, N), Norm::Linf);
    i64 m1 = sm.witness[0].measure, m2 = sm.witness[1].measure;
    // rho_inf(P) <= 2 (m1+m2)/m1 <= 4(K+2)
    min_rho_margin = std::min(min_rho_margin,
                              static_cast<double>(4 * (K + 2) * m1 - 2 * (m1 + m2)));
  }
  row_ge(R, "meshratio[20 seeded pairs] min margin of lambda1^2 (K+2) N >= 1",
         min_sep_margin, 0.0);
  row_ge(R, "meshratio[20 seeded pairs] min margin of 2(l1+l2)/l1 <= 4(K+2)",
         min_rho_margin, 0.0);
}

void suite_nalpha(VerifyReport& R) {
  auto golden = badly_approximable_profile(alpha_named("golden", 1), 10000);
  row_ge(R, "nalpha[golden] min n<n a> over n<=1e4", golden.min_value, 0.38);
  const double cstars[3] = {frozen::kPow2CStarD1N1e4, frozen::kPow2CStarD2N1e4,
                            frozen::kPow2CStarD3N1e4};
  for (int d = 1; d <= 3; ++d) {
    auto prof = badly_approximable_profile(alpha_power2(d), 10000);
    row_ge(R, "nalpha[pow2 d=" + std::to_string(d) + "] min n^{1/d}<n a> over n<=1e4",
           prof.min_value, cstars[d - 1] - 1e-9);
  }
  auto liou = badly_approximable_profile(alpha_named("liouville", 1), 100000);
  row_le(R, "nalpha[liouville] min n<n a> over n<=1e5 dips below 1e-3",
         liou.min_value, 1e-3);
}

void suite_frolov(VerifyReport& R) {
  for (int d = 2; d <= 4; ++d) {
    LatticeSpec F = frolov_matrix(d);
    auto poly = [d](double x) {
      double v = 1.0;
      for (int j = 1; j <= d; ++j) v *= x - static_cast<double>(2 * j - 1);
      return v - 1.0;
    };
    double worst = 0.0;
    for (double r : F.roots) worst = std::max(worst, std::abs(poly(r)));
    std::string tag = "frolov[d=" + std::to_string(d) + "]";
    row_le(R, tag + " max |p(root)|", worst, 1e-9);
    row_bool(R, tag + " d distinct real roots", static_cast<int>(F.roots.size()) == d);
  }
  LatticeSpec F2 = frolov_matrix(2);
  row_le(R, "frolov[d=2] |det - 2 sqrt 2|", std::abs(F2.det_abs - 2.0 * std::sqrt(2.0)),
         1e-9);
  AdmissibilityResult a2 = admissibility_min_normform(F2, 50.0);
  row_ge(R, "frolov[d=2] min |prod x_j| within R=50", a2.min_product, 1.0 - 1e-9);
  row_bool(R, "frolov[d=2] no zero coordinate at argmin", !a2.zero_coordinate);
  AdmissibilityResult a3 = admissibility_min_normform(frolov_matrix(3), 20.0);
  row_ge(R, "frolov[d=3] min |prod x_j| within R=20", a3.min_product, 1.0 - 1e-9);

  PointSet p4 = gen_frolov_points(2, 4.0), p8 = gen_frolov_points(2, 8.0),
           p16 = gen_frolov_points(2, 16.0);
  row_bool(R, "frolov[d=2] P(a=4) nested in P(a=8)", nestedness_check(p4, p8));
  row_bool(R, "frolov[d=2] P(a=8) nested in P(a=16)", nestedness_check(p8, p16));
}

}  // namespace

VerifyReport run_verify_suite(const std::string& suite) {
  VerifyReport R;
  bool all = suite == "all";
  bool known = all;
  if (all || suite == "cf") { suite_cf(R); known = true; }
  if (all || suite == "minima") { suite_minima(R); known = true; }
  if (all || suite == "meshratio") { suite_meshratio(R); known = true; }
  if (all || suite == "nalpha") { suite_nalpha(R); known = true; }
  if (all || suite == "frolov") { suite_frolov(R); known = true; }
  if (!known)
    throw std::domain_error("unknown suite '" + suite +
                            "' (want cf|minima|meshratio|nalpha|frolov|all)");
  return R;
}

std::string verify_table(const VerifyReport& rep) {
  std::string out;
  size_t width = 0;
  for (const auto& r : rep.rows) width = std::max(width, r.name.size());
  for (const auto& r : rep.rows) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "  measured %.12g %s %.12g\n", r.measured,
                  r.relation.c_str(), r.bound);
    out += r.pass ? "PASS  " : "FAIL  ";
    out += r.name;
    out.append(width - r.name.size(), ' ');
    out += buf;
  }
  out += rep.all_pass() ? "all checks passed\n" : "CHECKS FAILED\n";
  return out;
}

}  // namespace qups
