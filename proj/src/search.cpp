#include "qups/search.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "qups/errors.hpp"
#include "qups/metrics.hpp"
#include "qups/numtheory.hpp"
#include "qups/parallel.hpp"
#include "qups/pointset.hpp"
#include "qups/rng.hpp"

namespace qups {

Rational kappa_primal(const std::vector<i64>& g, i64 N) {
  if (N < 1) throw std::domain_error("kappa_primal: N must be >= 1");
  if (g.empty()) throw std::domain_error("kappa_primal: empty g");
  std::vector<i64> gr(g.size());
  for (size_t j = 0; j < g.size(); ++j) gr[j] = ((g[j] % N) + N) % N;
  i64 best = N;  // integer unit vector e_j has l1 measure N
  for (i64 k = 1; k < N; ++k) {
    i64 s = 0;
    bool allzero = true;
    for (i64 gj : gr) {
      i64 r = static_cast<i64>((i128(k) * gj) % N);
      if (r != 0) allzero = false;
      s += std::min(r, N - r);
    }
    if (!allzero) best = std::min(best, s);
  }
  return Rational::make(best, N);
}

i64 kappa_dual(const std::vector<i64>& g, i64 N, i64 budget) {
  return dual_shortest(g, N, Norm::L1, budget).measure;
}

KappaBound verify_mesh_bound_via_kappa(const std::vector<i64>& g, i64 N, Norm p,
                                       int m_grid) {
  KappaBound b;
  b.kp = kappa_primal(g, N);
  b.kd = kappa_dual(g, N);
  b.product_reciprocal = 1.0 / (b.kp.value() * static_cast<double>(b.kd));
  PointSet P = gen_rank1(g, N);
  if (m_grid <= 0) m_grid = default_grid_resolution(P.d);
  b.rho_hi = mesh_ratio_enclosure(P, p, m_grid).rho.hi;
  return b;
}

namespace {

// rank-1 points without the coprimality requirement (search scans all g)
PointSet scan_pointset(const std::vector<i64>& g, i64 N) {
  PointSet P;
  P.d = static_cast<int>(g.size());
  P.exact = true;
  P.den = N;
  std::vector<i64> row(P.d);
  for (i64 k = 0; k < N; ++k) {
    for (int j = 0; j < P.d; ++j) row[j] = static_cast<i64>((i128(k) * g[j]) % N);
    P.push_exact(row);
  }
  return P;
}

SearchRecord eval_vector(const std::vector<i64>& g, const SearchConfig& cfg,
                         bool& passes) {
  SearchRecord rec;
  rec.g = g;
  rec.kp = kappa_primal(g, cfg.N);
  rec.kd = kappa_dual(g, cfg.N, cfg.op_budget);
  // tie slack: thresholds are decimal medians of exact rational values
  passes = static_cast<double>(rec.kd) >= cfg.kappa_dual_min - 1e-12 &&
           rec.kp.value() >= cfg.kappa_primal_min - 1e-12;
  if (passes && (cfg.dstar_max >= 0.0 || cfg.eval_dstar)) {
    StarDisc sd = star_discrepancy_exact(scan_pointset(g, cfg.N), kDefaultDstarBudget);
    rec.has_dstar = true;
    rec.dstar = sd.value;
    if (cfg.dstar_max >= 0.0 && sd.value > cfg.dstar_max + 1e-12) passes = false;
  }
  if (passes && cfg.eval_rho) {
    try {
      PointSet P = scan_pointset(g, cfg.N);
      int m = cfg.m_grid > 0 ? cfg.m_grid : default_grid_resolution(P.d);
      rec.rho_hi = mesh_ratio_enclosure(P, Norm::Linf, m).rho.hi;
      rec.has_rho = true;
    } catch (const std::domain_error&) {
      rec.has_rho = false;  // duplicate points (degenerate g)
    }
  }
  return rec;
}

}  // namespace

SearchResult search_generators(const SearchConfig& cfg) {
  if (cfg.N < 2 || !is_prime(cfg.N))
    throw std::domain_error("search_generators: N must be prime");
  if (cfg.d < 1) throw std::domain_error("search_generators: d must be >= 1");
  if (cfg.g_min < 0 || cfg.g_min >= cfg.N)
    throw std::domain_error("search_generators: g_min must lie in [0, N)");
  if (cfg.kappa_dual_min < 0.0 || cfg.kappa_primal_min < 0.0)
    throw std::domain_error("search_generators: thresholds must be >= 0");
  if (!cfg.exhaustive && cfg.samples < 1)
    throw std::domain_error("search_generators: sample size must be >= 1");

  const i64 base = cfg.N - cfg.g_min;
  SearchResult out;
  i64 total = 0;
  if (cfg.exhaustive) {
    i128 dom = 1;
    for (int j = 0; j < cfg.d; ++j) dom *= base;
    if (cfg.max_scan > 0 && dom > cfg.max_scan) {
      total = cfg.max_scan;
      out.truncated = true;
    } else {
      total = Rational::checked_i64(dom, "search domain");
    }
  } else {
    total = cfg.samples;
    if (cfg.max_scan > 0 && total > cfg.max_scan) {
      total = cfg.max_scan;
      out.truncated = true;
    }
  }

  // pre-generate sampled vectors so the scan order is seed-determined
  std::vector<i64> sampled;
  if (!cfg.exhaustive) {
    SplitMix64 rng(cfg.seed);
    sampled.resize(static_cast<size_t>(total) * cfg.d);
    for (i64 t = 0; t < total; ++t)
      for (int j = 0; j < cfg.d; ++j)
        sampled[t * cfg.d + j] = cfg.g_min + static_cast<i64>(rng.below(base));
  }

  auto vector_at = [&](i64 t, std::vector<i64>& g) {
    if (!cfg.exhaustive) {
      for (int j = 0; j < cfg.d; ++j) g[j] = sampled[t * cfg.d + j];
      return;
    }
    i64 rem = t;
    for (int j = cfg.d - 1; j >= 0; --j) {
      g[j] = cfg.g_min + rem % base;
      rem /= base;
    }
  };

  int workers = thread_count();
  if (total < 2 * workers) workers = 1;
  i64 chunk = (total + workers - 1) / workers;
  std::vector<std::vector<SearchRecord>> recs(workers);
  std::exception_ptr err;

  auto run_chunk = [&](int w) {
    std::vector<i64> g(cfg.d);
    for (i64 t = w * chunk; t < std::min(total, (w + 1) * chunk); ++t) {
      vector_at(t, g);
      bool ok = false;
      SearchRecord rec = eval_vector(g, cfg, ok);
      if (ok) recs[w].push_back(std::move(rec));
    }
  };

  if (workers == 1) {
    run_chunk(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          run_chunk(w);
        } catch (...) {
          if (!err) err = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
  }

  out.scanned = total;
  for (auto& r : recs) {
    out.passed += static_cast<i64>(r.size());
    std::move(r.begin(), r.end(), std::back_inserter(out.records));
  }
  out.fraction = total > 0 ? static_cast<double>(out.passed) / static_cast<double>(total) : 0.0;
  return out;
}

bool load_threshold_entry(const std::string& path, i64 N, int d, ThresholdEntry& out) {
  std::ifstream in(path);
  if (!in) return false;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception&) {
    return false;
  }
  if (!j.contains("entries") || !j["entries"].is_array()) return false;
  for (const auto& e : j["entries"]) {
    if (e.value("d", 0) != d || e.value("N", i64(0)) != N) continue;
    out.d = d;
    out.N = N;
    out.kappa_dual_min = e.value("kappa_dual_min", 0.0);
    out.kappa_primal_min = e.value("kappa_primal_min", 0.0);
    out.fraction = e.value("fraction", 0.0);
    return true;
  }
  return false;
}

}  // namespace qups
