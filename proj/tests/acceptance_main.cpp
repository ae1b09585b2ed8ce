// End-to-end certification runs, one line per criterion.  Exit code equals
// the number of failed criteria.  Tolerances are pinned here on purpose;
// regression ceilings live in qups/constants.hpp.
#include "qups/constants.hpp"
#include "qups/io.hpp"
#include "qups/metrics.hpp"
#include "qups/numtheory.hpp"
#include "qups/pointset.hpp"
#include "qups/search.hpp"
#include "qups/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace qups;

namespace {

int g_failures = 0;

void run(int id, const std::string& what, const std::function<bool(std::string&)>& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s criterion-%d %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", id,
              what.c_str(), secs, detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

std::vector<std::pair<std::vector<i64>, i64>> rank1_fixtures() {
  std::vector<std::pair<std::vector<i64>, i64>> fx = {
      {{1, 5}, 8}, {{1, 3}, 7}, {{1, 13}, 21}, {{1, 11}, 30},
      {{1, 2, 3}, 7}, {{1, 5, 7}, 11}};
  for (int m = 5; m <= 12; ++m)
    fx.push_back({{1, fibonacci_number(m - 1)}, fibonacci_number(m)});
  for (int k = 1; k <= 4; ++k) {
    auto [g, N] = hexagonal_cf_fraction(k);
    fx.push_back({{1, g}, N});
  }
  return fx;
}

}  // namespace

int main() {
  run(1, "fibonacci mesh ratio <= 12 for m=5..20 (linf, grid 512)", [](std::string& det) {
    double worst = 0.0;
    for (int m = 5; m <= 20; ++m) {
      auto mr = mesh_ratio_enclosure(gen_fibonacci(m), Norm::Linf, 512);
      worst = std::max(worst, mr.rho.hi);
      if (mr.rho.hi > 12.0) {
        det = "m=" + std::to_string(m) + " rho_hi=" + fmt17(mr.rho.hi);
        return false;
      }
    }
    det = "max rho_hi=" + fmt17(worst);
    return true;
  });

  run(2, "CF bound lambda1 >= 1/sqrt((K+2)N) on 200 seeded pairs (exact)", [](std::string& det) {
    auto pairs = seeded_cf_pairs(200, kCfPairSeed);
    i64 worst = -1;
    for (auto [g, N] : pairs) {
      i64 K = max_partial_quotient(cf_expand(g, N));
      auto sv = shortest_vector_2d_cf(g, N);
      i64 m = sv.lambda.num * (N / sv.lambda.den);
      i64 margin = m * m * (K + 2) - N;  // >= 0 iff the bound holds
      if (worst < 0 || margin < worst) worst = margin;
      if (margin < 0) {
        det = "g=" + std::to_string(g) + " N=" + std::to_string(N);
        return false;
      }
    }
    det = "min integer margin=" + std::to_string(worst);
    return true;
  });

  run(3, "CF fast path equals enumeration lambda1 on 200 seeded pairs", [](std::string& det) {
    for (auto [g, N] : seeded_cf_pairs(200, kCfPairSeed)) {
      auto fast = shortest_vector_2d_cf(g, N);
      auto slow = shortest_vector(rank1_lattice({1, g}, N), Norm::Linf);
      if (!(Rational(slow.measure, N) == fast.lambda)) {
        det = "g=" + std::to_string(g) + " N=" + std::to_string(N) + " fast=" +
              fast.lambda.str() + " slow=" + std::to_string(slow.measure) + "/" +
              std::to_string(N);
        return false;
      }
    }
    return true;
  });

  run(4, "Minkowski product bound on rank-1 and Frolov fixtures", [](std::string& det) {
    for (const auto& [g, N] : rank1_fixtures()) {
      auto sm = successive_minima(rank1_lattice(g, N), Norm::Linf);
      // prod (m_j / N) <= 1/N  <=>  prod m_j <= N^(d-1), all integers
      i128 prod = 1;
      for (const auto& w : sm.witness) prod *= w.measure;
      i128 cap = 1;
      for (size_t j = 1; j < g.size(); ++j) cap *= N;
      if (prod > cap) {
        det = "N=" + std::to_string(N);
        return false;
      }
    }
    for (int d = 2; d <= 3; ++d) {
      auto L = frolov_matrix(d);
      auto sm = successive_minima(L, Norm::Linf);
      double prod = 1.0;
      for (double l : sm.lambda) prod *= l;
      if (prod > L.det_abs * (1.0 + 1e-12)) {
        det = "frolov d=" + std::to_string(d);
        return false;
      }
    }
    return true;
  });

  run(5, "restriction lemma: q >= lambda1/2 and h_lo <= 2 h_lattice", [](std::string& det) {
    for (const auto& [g, N] : rank1_fixtures()) {
      auto L = rank1_lattice(g, N);
      auto P = gen_rank1(g, N);
      auto lam1 = shortest_vector(L, Norm::Linf);
      auto q = separation_radius(P, Norm::Linf);
      if (q.value < lam1.norm / 2 - 1e-15) {
        det = "sep N=" + std::to_string(N);
        return false;
      }
      int mg = default_grid_resolution(P.d);
      auto h = covering_radius_enclosure(P, Norm::Linf, mg);
      if (h.lo > 2 * lattice_covering_upper(L, Norm::Linf) + 1e-12) {
        det = "cover N=" + std::to_string(N);
        return false;
      }
    }
    return true;
  });

  run(6, "anisotropic grid: separation 1/(2m^2) exact, mesh ratio grows", [](std::string& det) {
    double prev = 0.0;
    for (i64 m = 2; m <= 8; ++m) {
      auto G = gen_grid_aniso(m, 2);
      auto s = separation_radius(G, Norm::Linf);
      if (!(s.exact && s.measure == 1 && s.den == m * m)) {
        det = "m=" + std::to_string(m) + " separation measure";
        return false;
      }
      auto mr = mesh_ratio_enclosure(G, Norm::Linf, 256);
      if (mr.rho.lo <= prev) {
        det = "m=" + std::to_string(m) + " rho_lo=" + fmt17(mr.rho.lo) +
              " prev=" + fmt17(prev);
        return false;
      }
      prev = mr.rho.lo;
    }
    det = "rho_lo(m=8)=" + fmt17(prev);
    return true;
  });

  run(7, "star discrepancy of regular grids: 1/m (d=1), (2m-1)/m^2 (d=2)", [](std::string& det) {
    for (i64 m = 2; m <= 64; ++m) {
      auto ds = star_discrepancy_exact(gen_grid_regular(m, 1));
      if (!(ds.exact && ds.rat == Rational(1, m))) {
        det = "d=1 m=" + std::to_string(m);
        return false;
      }
    }
    for (i64 m = 2; m <= 8; ++m) {
      auto ds = star_discrepancy_exact(gen_grid_regular(m, 2));
      double oracle = static_cast<double>(2 * m - 1) / static_cast<double>(m * m);
      if (std::abs(ds.value - oracle) > 1e-12) {
        det = "d=2 m=" + std::to_string(m);
        return false;
      }
    }
    return true;
  });

  run(8, "Kronecker characterization: golden/pow2 bounded, liouville collapses", [](std::string& det) {
    auto golden = badly_approximable_profile(alpha_named("golden", 1), 100000);
    if (golden.min_value < 0.38) {
      det = "golden min=" + fmt17(golden.min_value);
      return false;
    }
    auto pow2 = badly_approximable_profile(alpha_power2(2), 100000);
    if (pow2.min_value < frozen::kPow2CStarD2N1e5 - 1e-9) {
      det = "pow2 min=" + fmt17(pow2.min_value);
      return false;
    }
    auto liou = badly_approximable_profile(alpha_named("liouville", 1), 100000);
    if (!(liou.min_value < 1e-3)) {
      det = "liouville min=" + fmt17(liou.min_value);
      return false;
    }
    det = "golden=" + fmt17(golden.min_value) + " pow2=" + fmt17(pow2.min_value) +
          " liouville=" + fmt17(liou.min_value);
    return true;
  });

  run(9, "pow2(2) prefix profile: mesh ratio stays in committed band", [](std::string& det) {
    std::vector<i64> idx;
    for (int i = 4; i <= 14; ++i) idx.push_back(i64(1) << i);
    auto gen = [](i64 n) { return gen_kronecker(alpha_power2(2), n); };
    AnalyzeOptions opt;
    opt.want_dual = false;
    auto prof = profile_prefixes(gen, idx, opt);
    std::vector<double> rhos;
    for (const auto& r : prof.reports) rhos.push_back(r.rho_hi);
    for (size_t i = 0; i < rhos.size(); ++i) {
      if (!(rhos[i] >= 1.0 - 1e-12 && rhos[i] <= frozen::kPow2ProfileRhoMax)) {
        det = "n=" + std::to_string(idx[i]) + " rho_hi=" + fmt17(rhos[i]);
        return false;
      }
    }
    std::vector<double> sorted = rhos;
    std::sort(sorted.begin(), sorted.end());
    double med = sorted[(sorted.size() - 1) / 2];
    if (rhos.back() > 1.25 * med) {
      det = "last=" + fmt17(rhos.back()) + " median=" + fmt17(med);
      return false;
    }
    det = "max=" + fmt17(*std::max_element(rhos.begin(), rhos.end())) +
          " last/median=" + fmt17(rhos.back() / med);
    return true;
  });

  run(10, "Frolov d=2: nested, admissible, mesh ratio within committed bound", [](std::string& det) {
    std::vector<PointSet> sets;
    for (int i = 2; i <= 7; ++i)
      sets.push_back(gen_frolov_points(2, static_cast<double>(i64(1) << i)));
    for (size_t i = 0; i + 1 < sets.size(); ++i)
      if (!nestedness_check(sets[i], sets[i + 1], 1e-12)) {
        det = "nest i=" + std::to_string(i + 2);
        return false;
      }
    auto adm = admissibility_min_normform(frolov_matrix(2), 50.0);
    if (!(adm.min_product >= 1.0 - 1e-9)) {
      det = "admissibility min=" + fmt17(adm.min_product);
      return false;
    }
    double worst = 0.0;
    for (auto& P : sets) {
      auto mr = mesh_ratio_enclosure(P, Norm::Linf, default_grid_resolution(2));
      worst = std::max(worst, mr.rho.hi);
      if (mr.rho.hi > frozen::kFrolovD2RhoMax) {
        det = "n=" + std::to_string(P.n()) + " rho_hi=" + fmt17(mr.rho.hi);
        return false;
      }
    }
    det = "max rho_hi=" + fmt17(worst) + " admissibility=" + fmt17(adm.min_product);
    return true;
  });

  run(11, "existence fraction at N=31 and dual counting bound at N=11", [](std::string& det) {
    SearchConfig cfg;
    cfg.N = 31;
    cfg.kappa_dual_min = frozen::kSearchN31KappaDualMin;
    cfg.kappa_primal_min = frozen::kSearchN31KappaPrimalMin;
    auto res = search_generators(cfg);
    if (res.scanned != frozen::kSearchN31Scanned || res.passed != frozen::kSearchN31Passed) {
      det = "scanned=" + std::to_string(res.scanned) + " passed=" + std::to_string(res.passed);
      return false;
    }
    const i64 N = 11;
    auto binom = [](i64 n, i64 k) {
      i64 r = 1;
      for (i64 i = 1; i <= k; ++i) r = r * (n - k + i) / i;
      return r;
    };
    for (i64 kap = 2; kap <= 4; ++kap) {
      i64 fail = 0;
      for (i64 g1 = 0; g1 < N; ++g1)
        for (i64 g2 = 0; g2 < N; ++g2)
          if (kappa_dual({g1, g2}, N) < kap) ++fail;
      if (fail > N * 4 * binom(kap + 2, 2)) {
        det = "kappa=" + std::to_string(kap) + " fail=" + std::to_string(fail);
        return false;
      }
    }
    det = "fraction=" + fmt17(res.fraction);
    return true;
  });

  run(12, "dual figures for g=(1,5), N=8: kappa=4, sigma=1/(2sqrt2)", [](std::string& det) {
    auto l1 = dual_shortest({1, 5}, 8, Norm::L1);
    auto l2 = dual_shortest({1, 5}, 8, Norm::L2);
    double sigma = 1.0 / l2.value;
    det = "kappa=" + std::to_string(l1.measure) + " sigma=" + fmt17(sigma);
    return l1.measure == 4 && sigma == 1.0 / (2.0 * std::sqrt(2.0));
  });

  if (g_failures == 0) std::printf("all 12 criteria passed\n");
  else std::printf("%d criteria FAILED\n", g_failures);
  return g_failures;
}
