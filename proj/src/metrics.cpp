#include "qups/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "qups/errors.hpp"
#include "qups/numtheory.hpp"
#include "qups/parallel.hpp"
#include "qups/rng.hpp"

namespace qups {

int default_grid_resolution(int d) {
  if (d <= 2) return 256;
  if (d == 3) return 64;
  return 16;
}

namespace {

double dist_p(const PointSet& P, i64 i, i64 j, Norm p) {
  double r = 0.0;
  for (int c = 0; c < P.d; ++c) {
    double t = std::abs(P.at(i, c) - P.at(j, c));
    switch (p) {
      case Norm::L1: r += t; break;
      case Norm::L2: r += t * t; break;
      case Norm::Linf: r = std::max(r, t); break;
    }
  }
  return p == Norm::L2 ? std::sqrt(r) : r;
}

i64 pair_measure(const PointSet& P, i64 i, i64 j, Norm p) {
  i128 r = 0;
  for (int c = 0; c < P.d; ++c) {
    i64 t = P.num_at(i, c) - P.num_at(j, c);
    if (t < 0) t = -t;
    switch (p) {
      case Norm::L1: r += t; break;
      case Norm::L2: r += i128(t) * t; break;
      case Norm::Linf: r = std::max<i128>(r, t); break;
    }
  }
  return Rational::checked_i64(r, "pair measure");
}

u64 cell_key(const std::vector<i64>& c) {
  u64 h = 0x9e3779b97f4a7c15ull;
  for (i64 v : c) {
    u64 x = static_cast<u64>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    x ^= x >> 30; x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27; x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    h ^= x;
  }
  return h;
}

}  // namespace

SeparationResult separation_radius(const PointSet& P, Norm p) {
  const i64 N = P.n();
  if (N < 2) throw std::domain_error("separation_radius: needs |P| >= 2");

  i64 best_i = 0, best_j = 1;
  double best = dist_p(P, 0, 1, p);

  if (best > 0.0) {
    // uniform-cell closest pair: insert points one by one, query the 3^d
    // neighborhood; cell size stays >= 2 * current best
    double cell = 2.0 * best;
    std::unordered_map<u64, std::vector<i64>> buckets;
    std::vector<i64> cc(P.d), nb(P.d);
    auto cell_of = [&](i64 i, std::vector<i64>& out) {
      for (int c = 0; c < P.d; ++c) {
        double f = std::clamp(std::floor(P.at(i, c) / cell), -1e15, 1e15);
        out[c] = static_cast<i64>(f);
      }
    };
    auto insert_upto = [&](i64 upto) {
      buckets.clear();
      for (i64 i = 0; i < upto; ++i) {
        cell_of(i, cc);
        buckets[cell_key(cc)].push_back(i);
      }
    };
    insert_upto(1);
    for (i64 i = 1; i < N; ++i) {
      cell_of(i, cc);
      std::vector<std::pair<i64, i64>> box(P.d);
      for (int c = 0; c < P.d; ++c) box[c] = {cc[c] - 1, cc[c] + 1};
      bool shrunk = false;
      for_each_coeff(box, 1 << 20, [&](const std::vector<i64>& b) {
        auto it = buckets.find(cell_key(b));
        if (it == buckets.end()) return;
        for (i64 j : it->second) {
          double dv = dist_p(P, i, j, p);
          if (dv < best) {
            best = dv;
            best_i = j;
            best_j = i;
            shrunk = true;
          }
        }
      });
      if (best == 0.0) break;
      if (shrunk && cell > 4.0 * best) {
        cell = 2.0 * best;
        insert_upto(i);
      }
      cell_of(i, cc);
      buckets[cell_key(cc)].push_back(i);
    }
  }

  SeparationResult res;
  res.value = 0.5 * best;
  res.exact = P.exact;
  if (P.exact) {
    res.measure = pair_measure(P, best_i, best_j, p);
    res.den = P.den;
    res.value = 0.5 * (p == Norm::L2 ? std::sqrt(static_cast<double>(res.measure))
                                     : static_cast<double>(res.measure)) /
                static_cast<double>(res.den);
  }
  return res;
}

namespace {

// CSR buckets over a uniform mb^d grid for nearest-point ring search
struct CellGrid {
  int d = 0;
  i64 mb = 1;
  std::vector<i64> starts, items;
  const PointSet* P = nullptr;

  void build(const PointSet& ps, i64 cells_per_axis) {
    P = &ps;
    d = ps.d;
    mb = cells_per_axis;
    i64 ncells = 1;
    for (int j = 0; j < d; ++j) ncells *= mb;
    std::vector<i64> cnt(ncells + 1, 0);
    auto cell_index = [&](i64 i) {
      i64 idx = 0;
      for (int j = 0; j < d; ++j) {
        i64 c = static_cast<i64>(ps.at(i, j) * static_cast<double>(mb));
        c = std::clamp<i64>(c, 0, mb - 1);
        idx = idx * mb + c;
      }
      return idx;
    };
    for (i64 i = 0; i < ps.n(); ++i) ++cnt[cell_index(i) + 1];
    for (i64 c = 0; c < ncells; ++c) cnt[c + 1] += cnt[c];
    starts = cnt;
    items.resize(ps.n());
    std::vector<i64> fill = starts;
    for (i64 i = 0; i < ps.n(); ++i) items[fill[cell_index(i)]++] = i;
  }

  // min p-distance from x to P, expanding Chebyshev cell rings until certified
  double nearest(const std::vector<double>& x, Norm p, double seed_best) const {
    const PointSet& ps = *P;
    thread_local std::vector<i64> a, lo, hi, b;
    a.resize(d); lo.resize(d); hi.resize(d); b.resize(d);
    for (int j = 0; j < d; ++j)
      a[j] = std::clamp<i64>(static_cast<i64>(x[j] * static_cast<double>(mb)), 0, mb - 1);
    double best = seed_best;
    const double c = 1.0 / static_cast<double>(mb);
    for (i64 rho = 0; rho <= mb; ++rho) {
      if (static_cast<double>(rho - 1) * c >= best) break;
      // cells with Chebyshev distance exactly rho from the anchor
      for (int j = 0; j < d; ++j) {
        lo[j] = std::max<i64>(a[j] - rho, 0);
        hi[j] = std::min<i64>(a[j] + rho, mb - 1);
      }
      b = lo;
      while (true) {
        i64 cheb = 0;
        for (int j = 0; j < d; ++j) cheb = std::max(cheb, std::abs(b[j] - a[j]));
        if (cheb == rho) {
          i64 idx = 0;
          for (int j = 0; j < d; ++j) idx = idx * mb + b[j];
          for (i64 t = starts[idx]; t < starts[idx + 1]; ++t) {
            i64 i = items[t];
            double r = 0.0;
            for (int j = 0; j < d; ++j) {
              double v = std::abs(ps.at(i, j) - x[j]);
              switch (p) {
                case Norm::L1: r += v; break;
                case Norm::L2: r += v * v; break;
                case Norm::Linf: r = std::max(r, v); break;
              }
            }
            if (p == Norm::L2) r = std::sqrt(r);
            best = std::min(best, r);
          }
        }
        int j = d - 1;
        while (j >= 0 && b[j] == hi[j]) { b[j] = lo[j]; --j; }
        if (j < 0) break;
        ++b[j];
      }
    }
    return best;
  }
};

}  // namespace

Enclosure covering_radius_enclosure(const PointSet& P, Norm p, int m_grid, i64 node_budget) {
  if (P.n() < 1) throw std::domain_error("covering_radius_enclosure: empty point set");
  if (m_grid < 2) throw std::domain_error("covering_radius_enclosure: m_grid must be >= 2");
  i128 nodes = 1;
  for (int j = 0; j < P.d; ++j) {
    nodes *= (m_grid + 1);
    if (nodes > node_budget) throw budget_error("covering_radius_enclosure: grid budget exceeded");
  }
  const i64 total = static_cast<i64>(nodes);

  // bucket resolution ~ N^{1/d}, clamped
  CellGrid grid;
  i64 mb = std::max<i64>(
      1, static_cast<i64>(std::floor(std::pow(static_cast<double>(P.n()), 1.0 / P.d))));
  mb = std::min<i64>(mb, 256);
  grid.build(P, mb);

  const double inf = std::numeric_limits<double>::infinity();
  std::atomic<double> amax{0.0};  // max-reduction is order independent
  parallel_for(total, [&](i64 t) {
    thread_local std::vector<double> x;
    x.resize(P.d);
    i64 rem = t;
    for (int j = P.d - 1; j >= 0; --j) {
      x[j] = static_cast<double>(rem % (m_grid + 1)) / static_cast<double>(m_grid);
      rem /= (m_grid + 1);
    }
    double dmin = grid.nearest(x, p, inf);
    double cur = amax.load(std::memory_order_relaxed);
    while (dmin > cur && !amax.compare_exchange_weak(cur, dmin, std::memory_order_relaxed)) {
    }
  });

  Enclosure e;
  e.lo = amax.load();
  double half = 0.5 / static_cast<double>(m_grid);
  switch (p) {
    case Norm::L1: half *= P.d; break;
    case Norm::L2: half *= std::sqrt(static_cast<double>(P.d)); break;
    case Norm::Linf: break;
  }
  e.hi = e.lo + half;
  return e;
}

MeshRatio mesh_ratio_enclosure(const PointSet& P, Norm p, int m_grid, i64 node_budget) {
  MeshRatio m;
  m.q = separation_radius(P, p);
  if (m.q.value <= 0.0)
    throw std::domain_error("mesh_ratio_enclosure: zero separation (duplicate points)");
  m.h = covering_radius_enclosure(P, p, m_grid, node_budget);
  m.rho.lo = m.h.lo / m.q.value;
  m.rho.hi = m.h.hi / m.q.value;
  return m;
}

namespace {

struct CornerGrid {
  // per-dimension sorted candidate corner values (coordinates plus 1)
  std::vector<std::vector<double>> vals;
  std::vector<std::vector<i64>> nums;  // exact mode, den = P.den (1.0 -> den)
  i64 corners = 1;
};

CornerGrid corner_grid(const PointSet& P) {
  CornerGrid g;
  g.vals.resize(P.d);
  if (P.exact) g.nums.resize(P.d);
  for (int j = 0; j < P.d; ++j) {
    if (P.exact) {
      std::vector<i64>& v = g.nums[j];
      for (i64 i = 0; i < P.n(); ++i) v.push_back(P.num_at(i, j));
      v.push_back(P.den);
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      for (i64 u : v)
        g.vals[j].push_back(static_cast<double>(u) / static_cast<double>(P.den));
    } else {
      std::vector<double>& v = g.vals[j];
      for (i64 i = 0; i < P.n(); ++i) v.push_back(P.at(i, j));
      v.push_back(1.0);
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    g.corners *= static_cast<i64>(g.vals[j].size());
  }
  return g;
}

// discrepancy at one corner (strict/non-strict counts over all points)
double corner_value_float(const PointSet& P, const std::vector<double>& q) {
  i64 open = 0, closed = 0;
  for (i64 i = 0; i < P.n(); ++i) {
    bool in_open = true, in_closed = true;
    for (int j = 0; j < P.d && in_closed; ++j) {
      double x = P.at(i, j);
      if (x >= q[j]) in_open = false;
      if (x > q[j]) in_closed = false;
    }
    if (in_open) ++open;
    if (in_closed) ++closed;
  }
  double vol = 1.0;
  for (double v : q) vol *= v;
  double n = static_cast<double>(P.n());
  return std::max(vol - static_cast<double>(open) / n, static_cast<double>(closed) / n - vol);
}

}  // namespace

StarDisc star_discrepancy_exact(const PointSet& P, i64 op_budget) {
  if (P.n() < 1) throw std::domain_error("star_discrepancy_exact: empty point set");
  if (P.d > 3)
    throw budget_error("star_discrepancy_exact: d > 3; use star_discrepancy_lb");
  CornerGrid g = corner_grid(P);
  i128 ops = i128(g.corners) * P.n() * P.d;
  if (ops > op_budget)
    throw budget_error("star_discrepancy_exact: corner enumeration exceeds budget");

  StarDisc result;
  const int d = P.d;
  const i64 N = P.n();

  bool exact_path = P.exact;
  i128 dend = 1;
  if (exact_path) {
    for (int j = 0; j < d; ++j) dend *= P.den;
    if (dend > (i128(1) << 61) / std::max<i64>(N, 1)) exact_path = false;
  }

  if (exact_path) {
    // maximize |N * prod(c_j) - count * den^d| over the common denominator den^d * N
    const i64 D = P.den;
    i128 best_num = 0;
    std::vector<i64> idx(d, 0);
    std::vector<i64> corner(d);
    while (true) {
      for (int j = 0; j < d; ++j) corner[j] = g.nums[j][idx[j]];
      i64 open = 0, closed = 0;
      for (i64 i = 0; i < N; ++i) {
        bool in_open = true, in_closed = true;
        for (int j = 0; j < d && in_closed; ++j) {
          i64 x = P.num_at(i, j);
          if (x >= corner[j]) in_open = false;
          if (x > corner[j]) in_closed = false;
        }
        if (in_open) ++open;
        if (in_closed) ++closed;
      }
      i128 volnum = N;
      for (int j = 0; j < d; ++j) volnum *= corner[j];
      i128 a = volnum - i128(open) * dend;    // (vol - open/N) * N * den^d
      i128 b = i128(closed) * dend - volnum;  // (closed/N - vol) * N * den^d
      best_num = std::max(best_num, std::max(a, b));
      int j = d - 1;
      while (j >= 0 && idx[j] + 1 == static_cast<i64>(g.nums[j].size())) { idx[j] = 0; --j; }
      if (j < 0) break;
      ++idx[j];
    }
    i128 denom = dend * N;
    i128 gg = best_num;
    i128 hh = denom;
    while (hh) { i128 t = gg % hh; gg = hh; hh = t; }
    if (gg == 0) gg = 1;
    i128 rn = best_num / gg, rd = denom / gg;
    if (rn <= INT64_MAX && rd <= INT64_MAX) {
      result.rat = Rational(static_cast<i64>(rn), static_cast<i64>(rd));
      result.exact = true;
      result.value = result.rat.value();
      return result;
    }
    // falls through to float evaluation when the rational does not fit
  }

  double best = 0.0;
  std::vector<i64> idx(d, 0);
  std::vector<double> corner(d);
  while (true) {
    for (int j = 0; j < d; ++j) corner[j] = g.vals[j][idx[j]];
    best = std::max(best, corner_value_float(P, corner));
    int j = d - 1;
    while (j >= 0 && idx[j] + 1 == static_cast<i64>(g.vals[j].size())) { idx[j] = 0; --j; }
    if (j < 0) break;
    ++idx[j];
  }
  result.value = best;
  result.exact = false;
  return result;
}

double star_discrepancy_lb(const PointSet& P, i64 trials, u64 seed) {
  if (P.n() < 1) throw std::domain_error("star_discrepancy_lb: empty point set");
  if (trials < 1) throw std::domain_error("star_discrepancy_lb: trials must be >= 1");
  CornerGrid g = corner_grid(P);
  std::vector<double> corner(P.d);
  double best = 0.0;
  if (trials >= g.corners) {
    std::vector<i64> idx(P.d, 0);
    while (true) {
      for (int j = 0; j < P.d; ++j) corner[j] = g.vals[j][idx[j]];
      best = std::max(best, corner_value_float(P, corner));
      int j = P.d - 1;
      while (j >= 0 && idx[j] + 1 == static_cast<i64>(g.vals[j].size())) { idx[j] = 0; --j; }
      if (j < 0) break;
      ++idx[j];
    }
    return best;
  }
  SplitMix64 rng(seed * 0x9e3779b97f4a7c15ull + 1);
  for (i64 t = 0; t < trials; ++t) {
    for (int j = 0; j < P.d; ++j)
      corner[j] = g.vals[j][rng.below(g.vals[j].size())];
    best = std::max(best, corner_value_float(P, corner));
  }
  return best;
}

PointSet project(const PointSet& P, const std::vector<int>& dims) {
  if (dims.empty()) throw std::domain_error("project: empty coordinate subset");
  for (int u : dims)
    if (u < 0 || u >= P.d) throw std::domain_error("project: coordinate index out of range");
  PointSet Q;
  Q.d = static_cast<int>(dims.size());
  Q.exact = P.exact;
  Q.den = P.den;
  Q.family = P.family;
  Q.params = P.params + ";proj=" + [&] {
    std::string s;
    for (size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i] + 1);
    return s;
  }();
  if (!P.gvec.empty()) {
    for (int u : dims) Q.gvec.push_back(P.gvec[u]);
    Q.modulus = P.modulus;
  }
  for (i64 i = 0; i < P.n(); ++i) {
    for (int u : dims) {
      if (P.exact) Q.nums.push_back(P.num_at(i, u));
      Q.coords.push_back(P.at(i, u));
    }
  }
  return Q;
}

PointSet dedup(const PointSet& P) {
  std::vector<i64> order(P.n());
  for (i64 i = 0; i < P.n(); ++i) order[i] = i;
  auto row_less = [&](i64 a, i64 b) {
    for (int j = 0; j < P.d; ++j) {
      if (P.exact) {
        if (P.num_at(a, j) != P.num_at(b, j)) return P.num_at(a, j) < P.num_at(b, j);
      } else {
        if (P.at(a, j) != P.at(b, j)) return P.at(a, j) < P.at(b, j);
      }
    }
    return false;
  };
  auto row_eq = [&](i64 a, i64 b) { return !row_less(a, b) && !row_less(b, a); };
  std::sort(order.begin(), order.end(), row_less);
  order.erase(std::unique(order.begin(), order.end(), row_eq), order.end());
  PointSet Q;
  Q.d = P.d;
  Q.exact = P.exact;
  Q.den = P.den;
  Q.family = P.family;
  Q.params = P.params + ";dedup=1";
  Q.gvec = P.gvec;
  Q.modulus = P.modulus;
  for (i64 i : order) {
    for (int j = 0; j < P.d; ++j) {
      if (P.exact) Q.nums.push_back(P.num_at(i, j));
      Q.coords.push_back(P.at(i, j));
    }
  }
  return Q;
}

bool nestedness_check(const PointSet& small, const PointSet& big, double tol) {
  if (small.d != big.d) throw std::domain_error("nestedness_check: dimension mismatch");
  const int d = small.d;
  if (small.exact && big.exact) {
    i64 D = 0;
    bool fits = true;
    try {
      D = lcm_checked(small.den, big.den, "nestedness");
    } catch (const std::overflow_error&) {
      fits = false;
    }
    if (fits && D > 0) {
      i64 fs = D / small.den, fb = D / big.den;
      std::unordered_set<u64> rows;
      std::vector<i64> key(d);
      for (i64 i = 0; i < big.n(); ++i) {
        for (int j = 0; j < d; ++j) key[j] = big.num_at(i, j) * fb;
        rows.insert(cell_key(key));
      }
      for (i64 i = 0; i < small.n(); ++i) {
        for (int j = 0; j < d; ++j) key[j] = small.num_at(i, j) * fs;
        if (!rows.count(cell_key(key))) return false;
      }
      return true;
    }
  }
  // float path: tol-cell hashing with 3^d neighborhood probes
  double cell = std::max(tol, 1e-15);
  std::unordered_map<u64, std::vector<i64>> buckets;
  std::vector<i64> cc(d);
  for (i64 i = 0; i < big.n(); ++i) {
    for (int j = 0; j < d; ++j) cc[j] = static_cast<i64>(std::floor(big.at(i, j) / cell));
    buckets[cell_key(cc)].push_back(i);
  }
  for (i64 i = 0; i < small.n(); ++i) {
    for (int j = 0; j < d; ++j) cc[j] = static_cast<i64>(std::floor(small.at(i, j) / cell));
    bool found = false;
    std::vector<std::pair<i64, i64>> box(d);
    for (int j = 0; j < d; ++j) box[j] = {cc[j] - 1, cc[j] + 1};
    for_each_coeff(box, 1 << 20, [&](const std::vector<i64>& b) {
      if (found) return;
      auto it = buckets.find(cell_key(b));
      if (it == buckets.end()) return;
      for (i64 t : it->second) {
        bool ok = true;
        for (int j = 0; j < d && ok; ++j)
          if (std::abs(big.at(t, j) - small.at(i, j)) > tol) ok = false;
        if (ok) { found = true; return; }
      }
    });
    if (!found) return false;
  }
  return true;
}

QUReport analyze_pointset(const PointSet& P, const AnalyzeOptions& opt) {
  QUReport r;
  r.n = P.n();
  r.d = P.d;
  r.p = opt.p;
  r.m_grid = opt.m_grid > 0 ? opt.m_grid : default_grid_resolution(P.d);
  r.family = P.family;
  r.params = P.params;

  if (opt.want_sep) {
    SeparationResult q = separation_radius(P, opt.p);
    r.has_sep = true;
    r.q = q.value;
    r.q_exact = q.exact;
  }
  if (opt.want_cover) {
    Enclosure h = covering_radius_enclosure(P, opt.p, r.m_grid, opt.node_budget);
    r.has_cover = true;
    r.h_lo = h.lo;
    r.h_hi = h.hi;
    if (opt.want_sep) {
      if (r.q <= 0.0) throw std::domain_error("analyze: zero separation (duplicate points)");
      r.rho_lo = r.h_lo / r.q;
      r.rho_hi = r.h_hi / r.q;
    }
  }
  if (opt.want_dstar) {
    try {
      StarDisc sd = star_discrepancy_exact(P, opt.dstar_budget);
      r.has_dstar = true;
      r.dstar = sd.value;
      r.dstar_is_lb = false;
    } catch (const budget_error&) {
      r.has_dstar = true;
      r.dstar = star_discrepancy_lb(P, opt.lb_trials, opt.seed);
      r.dstar_is_lb = true;
    }
  }
  if (opt.want_dual && P.modulus > 0 && static_cast<int>(P.gvec.size()) == P.d) {
    DualShortest k1 = dual_shortest(P.gvec, P.modulus, Norm::L1);
    DualShortest k2 = dual_shortest(P.gvec, P.modulus, Norm::L2);
    r.has_dual = true;
    r.kappa = k1.measure;
    r.sigma = 1.0 / k2.value;
  }
  return r;
}

PrefixProfile profile_prefixes(const std::function<PointSet(i64)>& gen,
                               const std::vector<i64>& indices,
                               const AnalyzeOptions& opt, bool check_nested, double nest_tol) {
  if (indices.empty()) throw std::domain_error("profile_prefixes: empty index list");
  for (size_t i = 1; i < indices.size(); ++i)
    if (indices[i] <= indices[i - 1])
      throw std::domain_error("profile_prefixes: indices must be strictly increasing");
  PrefixProfile prof;
  prof.indices = indices;
  PointSet prev;
  for (size_t i = 0; i < indices.size(); ++i) {
    PointSet P = gen(indices[i]);
    prof.reports.push_back(analyze_pointset(P, opt));
    if (i > 0) {
      double ratio = static_cast<double>(prof.reports[i].n) /
                     static_cast<double>(prof.reports[i - 1].n);
      prof.max_growth_ratio = std::max(prof.max_growth_ratio, ratio);
      prof.nested.push_back(check_nested ? (nestedness_check(prev, P, nest_tol) ? 1 : 0) : -1);
    }
    prev = std::move(P);
  }
  return prof;
}

}  // namespace qups
