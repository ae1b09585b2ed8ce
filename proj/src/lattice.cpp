#include "qups/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qups/errors.hpp"
#include "qups/numtheory.hpp"

namespace qups {

const char* norm_name(Norm p) {
  switch (p) {
    case Norm::L1: return "1";
    case Norm::L2: return "2";
    case Norm::Linf: return "inf";
  }
  return "?";
}

Norm norm_from_name(const std::string& s) {
  if (s == "1") return Norm::L1;
  if (s == "2") return Norm::L2;
  if (s == "inf" || s == "max") return Norm::Linf;
  throw std::domain_error("unknown norm '" + s + "' (expected 1, 2 or inf)");
}

double norm_value(const std::vector<double>& x, Norm p) {
  double r = 0.0;
  switch (p) {
    case Norm::L1:
      for (double v : x) r += std::abs(v);
      return r;
    case Norm::L2:
      for (double v : x) r += v * v;
      return std::sqrt(r);
    case Norm::Linf:
      for (double v : x) r = std::max(r, std::abs(v));
      return r;
  }
  return r;
}

double det_abs_of(int d, const std::vector<double>& T) {
  std::vector<double> a = T;
  double det = 1.0;
  for (int c = 0; c < d; ++c) {
    int piv = c;
    for (int r = c + 1; r < d; ++r)
      if (std::abs(a[r * d + c]) > std::abs(a[piv * d + c])) piv = r;
    if (a[piv * d + c] == 0.0) return 0.0;
    if (piv != c) {
      for (int j = 0; j < d; ++j) std::swap(a[c * d + j], a[piv * d + j]);
      det = -det;
    }
    det *= a[c * d + c];
    for (int r = c + 1; r < d; ++r) {
      double f = a[r * d + c] / a[c * d + c];
      for (int j = c; j < d; ++j) a[r * d + j] -= f * a[c * d + j];
    }
  }
  return std::abs(det);
}

std::vector<double> invert_matrix(int d, const std::vector<double>& T) {
  std::vector<double> a = T, inv(static_cast<size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) inv[i * d + i] = 1.0;
  for (int c = 0; c < d; ++c) {
    int piv = c;
    for (int r = c + 1; r < d; ++r)
      if (std::abs(a[r * d + c]) > std::abs(a[piv * d + c])) piv = r;
    if (a[piv * d + c] == 0.0) throw std::domain_error("singular matrix");
    if (piv != c)
      for (int j = 0; j < d; ++j) {
        std::swap(a[c * d + j], a[piv * d + j]);
        std::swap(inv[c * d + j], inv[piv * d + j]);
      }
    double pv = a[c * d + c];
    for (int j = 0; j < d; ++j) { a[c * d + j] /= pv; inv[c * d + j] /= pv; }
    for (int r = 0; r < d; ++r) {
      if (r == c) continue;
      double f = a[r * d + c];
      if (f == 0.0) continue;
      for (int j = 0; j < d; ++j) {
        a[r * d + j] -= f * a[c * d + j];
        inv[r * d + j] -= f * inv[c * d + j];
      }
    }
  }
  return inv;
}

namespace {

// |det| of an integer matrix via fraction-free elimination (d <= 4).
i128 int_det(int d, const std::vector<i64>& M) {
  std::vector<i128> a(M.begin(), M.end());
  i128 prev = 1;
  int sign = 1;
  for (int c = 0; c < d; ++c) {
    int piv = -1;
    for (int r = c; r < d; ++r)
      if (a[r * d + c] != 0) { piv = r; break; }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < d; ++j) std::swap(a[c * d + j], a[piv * d + j]);
      sign = -sign;
    }
    for (int r = c + 1; r < d; ++r)
      for (int j = c + 1; j < d; ++j)
        a[r * d + j] = (a[c * d + c] * a[r * d + j] - a[r * d + c] * a[c * d + j]) / prev;
    prev = a[c * d + c];
  }
  return sign * a[(d - 1) * d + (d - 1)];
}

// rank of an m x d integer matrix (Bareiss), used for witness independence
int int_rank(int m, int d, const std::vector<i128>& M0) {
  std::vector<i128> a = M0;
  int rank = 0;
  i128 prev = 1;
  for (int c = 0; c < d && rank < m; ++c) {
    int piv = -1;
    for (int r = rank; r < m; ++r)
      if (a[r * d + c] != 0) { piv = r; break; }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = 0; j < d; ++j) std::swap(a[rank * d + j], a[piv * d + j]);
    for (int r = rank + 1; r < m; ++r)
      for (int j = c + 1; j < d; ++j)
        a[r * d + j] = (a[rank * d + c] * a[r * d + j] - a[r * d + c] * a[rank * d + j]) / prev;
    for (int r = rank + 1; r < m; ++r) a[r * d + c] = 0;
    prev = a[rank * d + c];
    ++rank;
  }
  return rank;
}

bool canonicalize(std::vector<i64>& k) {  // first nonzero > 0; false if zero
  for (i64 v : k) {
    if (v > 0) return true;
    if (v < 0) {
      for (auto& u : k) u = -u;
      return true;
    }
  }
  return false;
}

struct EvalCtx {
  const LatticeSpec& L;
  std::vector<double> x;
  std::vector<i64> w;  // numerators when exact

  explicit EvalCtx(const LatticeSpec& L) : L(L), x(L.d), w(L.exact ? L.d : 0) {}

  void eval(const std::vector<i64>& k) {
    for (int i = 0; i < L.d; ++i) {
      double s = 0.0;
      for (int j = 0; j < L.d; ++j) s += L.entry(i, j) * static_cast<double>(k[j]);
      x[i] = s;
    }
    if (L.exact) {
      for (int i = 0; i < L.d; ++i) {
        i128 s = 0;
        for (int j = 0; j < L.d; ++j) s += i128(L.Tnum[i * L.d + j]) * k[j];
        w[i] = Rational::checked_i64(s, "lattice vector numerator");
        x[i] = static_cast<double>(w[i]) / static_cast<double>(L.den);
      }
    }
  }

  i64 measure(Norm p) const {  // exact lattices only
    i128 m = 0;
    switch (p) {
      case Norm::L1:
        for (i64 v : w) m += v < 0 ? -v : v;
        break;
      case Norm::L2:
        for (i64 v : w) m += i128(v) * v;
        break;
      case Norm::Linf:
        for (i64 v : w) m = std::max<i128>(m, v < 0 ? -v : v);
        break;
    }
    return Rational::checked_i64(m, "norm measure");
  }
};

double norm_from_measure(i64 measure, i64 den, Norm p) {
  if (p == Norm::L2)
    return std::sqrt(static_cast<double>(measure)) / static_cast<double>(den);
  return static_cast<double>(measure) / static_cast<double>(den);
}

}  // namespace

i128 box_volume(const std::vector<std::pair<i64, i64>>& box) {
  i128 vol = 1;
  for (auto& [lo, hi] : box) {
    if (hi < lo) return 0;
    vol *= i128(hi - lo + 1);
    if (vol > i128(1) << 100) return vol;  // saturate; caller compares to budget
  }
  return vol;
}

std::vector<std::pair<i64, i64>> coeff_box(const LatticeSpec& L, double R, Norm p) {
  std::vector<double> inv = invert_matrix(L.d, L.T);
  std::vector<std::pair<i64, i64>> box(L.d);
  for (int i = 0; i < L.d; ++i) {
    double b = 0.0;  // Hoelder: |k_i| <= ||row_i(T^-1)||_q * ||x||_p
    switch (p) {
      case Norm::Linf:
        for (int j = 0; j < L.d; ++j) b += std::abs(inv[i * L.d + j]);
        break;
      case Norm::L1: {
        for (int j = 0; j < L.d; ++j) b = std::max(b, std::abs(inv[i * L.d + j]));
        break;
      }
      case Norm::L2: {
        double s = 0.0;
        for (int j = 0; j < L.d; ++j) s += inv[i * L.d + j] * inv[i * L.d + j];
        b = std::sqrt(s);
        break;
      }
    }
    double lim = b * R * (1.0 + 1e-9) + 1e-9;
    if (lim > 4e18) throw budget_error("enumeration bound overflows int64");
    i64 m = static_cast<i64>(std::floor(lim));
    box[i] = {-m, m};
  }
  return box;
}

LatticeSpec lattice_from_matrix(int d, const std::vector<double>& T) {
  if (d < 1 || T.size() != static_cast<size_t>(d) * d)
    throw std::domain_error("lattice_from_matrix: bad dimensions");
  LatticeSpec L;
  L.d = d;
  L.T = T;
  L.det_abs = det_abs_of(d, T);
  if (L.det_abs <= 1e-12) throw std::domain_error("lattice_from_matrix: |det T| below tolerance");
  return L;
}

LatticeSpec lattice_from_matrix_exact(int d, const std::vector<i64>& Tnum, i64 den) {
  if (d < 1 || Tnum.size() != static_cast<size_t>(d) * d)
    throw std::domain_error("lattice_from_matrix_exact: bad dimensions");
  if (den <= 0) throw std::domain_error("lattice_from_matrix_exact: den must be positive");
  i128 det = int_det(d, Tnum);
  if (det == 0) throw std::domain_error("lattice_from_matrix_exact: singular matrix");
  LatticeSpec L;
  L.d = d;
  L.exact = true;
  L.den = den;
  L.Tnum = Tnum;
  L.T.resize(static_cast<size_t>(d) * d);
  for (size_t i = 0; i < L.T.size(); ++i)
    L.T[i] = static_cast<double>(Tnum[i]) / static_cast<double>(den);
  double dd = static_cast<double>(det < 0 ? -det : det);
  L.det_abs = dd / std::pow(static_cast<double>(den), d);
  return L;
}

LatticeSpec rank1_lattice(const std::vector<i64>& g, i64 N) {
  if (N < 1) throw std::domain_error("rank1_lattice: N must be >= 1");
  int d = static_cast<int>(g.size());
  if (d < 1) throw std::domain_error("rank1_lattice: empty generating vector");
  std::vector<i64> gr(g.size());
  for (size_t j = 0; j < g.size(); ++j) {
    gr[j] = ((g[j] % N) + N) % N;
    if (gcd_i64(gr[j], N) != 1)
      throw std::domain_error("rank1_lattice: gcd(g_" + std::to_string(j + 1) + ", N) != 1");
  }
  std::vector<i64> Tnum(static_cast<size_t>(d) * d, 0);
  if (N == 1) {
    for (int i = 0; i < d; ++i) Tnum[i * d + i] = 1;
    LatticeSpec L = lattice_from_matrix_exact(d, Tnum, 1);
    L.tag = LatticeSpec::Tag::rank1;
    L.g = gr;
    L.modulus = 1;
    return L;
  }
  i64 inv = mod_inverse(gr[0], N);
  for (int i = 0; i < d; ++i) {
    Tnum[i * d + 0] = mul_checked(inv, gr[i], "rank1 matrix") % N;
    if (i >= 1) Tnum[i * d + i] = N;
  }
  LatticeSpec L = lattice_from_matrix_exact(d, Tnum, N);
  L.tag = LatticeSpec::Tag::rank1;
  L.g = gr;
  L.modulus = N;
  return L;
}

LatticeSpec frolov_matrix(int d) {
  if (d < 2 || d > 4) throw std::domain_error("frolov_matrix: d must be in 2..4");
  auto poly = [d](double x) {
    double v = 1.0;
    for (int j = 1; j <= d; ++j) v *= x - static_cast<double>(2 * j - 1);
    return v - 1.0;
  };
  std::vector<double> roots;
  for (int a = -(2 * d + 2); a < 2 * d + 2; ++a) {
    double fa = poly(a), fb = poly(a + 1);
    if (fa == 0.0 || fb == 0.0) throw std::logic_error("frolov_matrix: root at integer grid");
    if (fa * fb > 0.0) continue;
    double lo = a, hi = a + 1;
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (lo + hi);
      double fm = poly(mid);
      if (fm == 0.0) { lo = hi = mid; break; }
      if (fa * fm < 0.0) hi = mid; else { lo = mid; fa = fm; }
    }
    roots.push_back(0.5 * (lo + hi));
  }
  if (static_cast<int>(roots.size()) != d)
    throw std::logic_error("frolov_matrix: expected exactly d real roots");
  std::vector<double> T(static_cast<size_t>(d) * d);
  for (int i = 0; i < d; ++i) {
    double pw = 1.0;
    for (int j = 0; j < d; ++j) { T[i * d + j] = pw; pw *= roots[i]; }
  }
  LatticeSpec L = lattice_from_matrix(d, T);
  L.tag = LatticeSpec::Tag::frolov;
  L.roots = roots;
  return L;
}

namespace {

struct Cand {
  double norm;
  i64 measure;  // -1 when float
  std::vector<i64> k;
};

bool cand_less(const Cand& a, const Cand& b) {
  if (a.measure >= 0 && b.measure >= 0) {
    if (a.measure != b.measure) return a.measure < b.measure;
  } else if (a.norm != b.norm) {
    return a.norm < b.norm;
  }
  return a.k < b.k;
}

std::vector<Cand> collect_candidates(const LatticeSpec& L, double R, Norm p, i64 budget) {
  std::vector<Cand> cands;
  EvalCtx ctx(L);
  for_each_coeff(coeff_box(L, R, p), budget, [&](const std::vector<i64>& k0) {
    std::vector<i64> k = k0;
    if (!canonicalize(k)) return;  // zero vector
    ctx.eval(k);
    Cand c;
    c.k = std::move(k);
    if (L.exact) {
      c.measure = ctx.measure(p);
      c.norm = norm_from_measure(c.measure, L.den, p);
    } else {
      c.measure = -1;
      c.norm = norm_value(ctx.x, p);
    }
    cands.push_back(std::move(c));
  });
  std::sort(cands.begin(), cands.end(), cand_less);
  cands.erase(std::unique(cands.begin(), cands.end(),
                          [](const Cand& a, const Cand& b) { return a.k == b.k; }),
              cands.end());
  return cands;
}

LatticeVector to_vector(const LatticeSpec& L, const Cand& c) {
  EvalCtx ctx(L);
  ctx.eval(c.k);
  LatticeVector v;
  v.k = c.k;
  v.x = ctx.x;
  v.norm = c.norm;
  v.measure = c.measure;
  return v;
}

}  // namespace

LatticeVector shortest_vector(const LatticeSpec& L, Norm p, i64 box_budget) {
  double scale = std::pow(L.det_abs, 1.0 / L.d);
  double factor = p == Norm::Linf ? 1.0 : (p == Norm::L2 ? std::sqrt(static_cast<double>(L.d))
                                                         : static_cast<double>(L.d));
  double R = factor * scale;  // Minkowski: λ_1^{(p)} <= factor * |det|^{1/d}
  for (int round = 0; round < 64; ++round) {
    auto cands = collect_candidates(L, R, p, box_budget);
    if (!cands.empty() && cands.front().norm <= R * (1.0 + 1e-12))
      return to_vector(L, cands.front());
    R *= 2.0;
  }
  throw std::logic_error("shortest_vector: no vector found (radius exhausted)");
}

SuccessiveMinima successive_minima(const LatticeSpec& L, Norm p, i64 box_budget) {
  double scale = std::pow(L.det_abs, 1.0 / L.d);
  double factor = p == Norm::Linf ? 1.0 : (p == Norm::L2 ? std::sqrt(static_cast<double>(L.d))
                                                         : static_cast<double>(L.d));
  double R = factor * scale;
  for (int round = 0; round < 64; ++round) {
    auto cands = collect_candidates(L, R, p, box_budget);
    std::vector<const Cand*> picked;
    std::vector<i128> rows;
    for (const Cand& c : cands) {
      std::vector<i128> trial = rows;
      for (i64 v : c.k) trial.push_back(v);
      int m = static_cast<int>(picked.size()) + 1;
      if (int_rank(m, L.d, trial) == m) {
        picked.push_back(&c);
        rows = std::move(trial);
        if (static_cast<int>(picked.size()) == L.d) break;
      }
    }
    if (static_cast<int>(picked.size()) == L.d &&
        picked.back()->norm <= R * (1.0 + 1e-12)) {
      SuccessiveMinima sm;
      sm.p = p;
      sm.exact = L.exact;
      sm.den = L.den;
      for (const Cand* c : picked) {
        sm.lambda.push_back(c->norm);
        sm.witness.push_back(to_vector(L, *c));
      }
      return sm;
    }
    double lam = picked.size() == static_cast<size_t>(L.d) ? picked.back()->norm : R;
    R = 2.0 * std::max(R, lam);
  }
  throw std::logic_error("successive_minima: radius exhausted");
}

double lattice_covering_upper(const LatticeSpec& L, Norm p) {
  SuccessiveMinima sm = successive_minima(L, p);
  double s = 0.0;
  for (double l : sm.lambda) s += l;
  return 0.5 * s;
}

double lattice_mesh_ratio_upper(const LatticeSpec& L, Norm p) {
  SuccessiveMinima sm = successive_minima(L, p);
  double s = 0.0;
  for (double l : sm.lambda) s += l;
  return s / sm.lambda.front();
}

CfShortest shortest_vector_2d_cf(i64 g, i64 N) {
  if (N < 1) throw std::domain_error("shortest_vector_2d_cf: N must be >= 1");
  g = ((g % N) + N) % N;
  if (N > 1 && gcd_i64(g, N) != 1)
    throw std::domain_error("shortest_vector_2d_cf: gcd(g, N) != 1");
  CfShortest best;
  best.lambda = Rational(1);  // unit vector (0, N)/N
  best.w = {0, N};
  i64 best_m = N;
  if (N == 1) { best.w = {1, 0}; return best; }

  CFExpansion cf = cf_expand(g, N);
  auto cs = convergents(cf);
  for (const Convergent& c : cs) {
    i64 q = c.q % N;
    i64 mr = std::min(q, N - q);                       // minres of first coord
    i64 r = mul_checked(c.q, g, "cf residue") - mul_checked(c.p, N, "cf residue");
    i64 m = std::max(mr, r < 0 ? -r : r);
    if (m == 0) continue;  // zero class (last convergent)
    if (m < best_m) {
      best_m = m;
      best.w = {c.q <= N - c.q ? c.q : c.q - N, r};
    }
  }
  std::vector<i64> w = {best.w[0], best.w[1]};
  if (!canonicalize(w)) throw std::logic_error("shortest_vector_2d_cf: zero witness");
  best.w = {w[0], w[1]};
  best.lambda = Rational(best_m, N);
  return best;
}

DualShortest dual_shortest(const std::vector<i64>& g, i64 N, Norm p, i64 box_budget) {
  if (N < 1) throw std::domain_error("dual_shortest: N must be >= 1");
  if (g.empty()) throw std::domain_error("dual_shortest: empty g");
  if (p == Norm::Linf) throw std::domain_error("dual_shortest: norm must be l1 or l2");
  int d = static_cast<int>(g.size());
  std::vector<i64> gr(g.size());
  for (size_t j = 0; j < g.size(); ++j) gr[j] = ((g[j] % N) + N) % N;

  DualShortest best;
  best.measure = -1;
  i64 visited = 0;

  std::vector<i64> h(d, 0);
  // enumerate all canonical h with ||h||_1 == r (first nonzero > 0)
  auto scan_shell = [&](i64 r, auto&& scan, int pos, i64 left, bool lead) -> void {
    if (pos == d - 1) {
      for (i64 v : {left, -left}) {
        if (lead && v < 0) break;            // canonical representative only
        h[pos] = v;
        ++visited;
        if (visited > box_budget) throw budget_error("dual_shortest: budget exceeded");
        i128 dot = 0;
        for (int j = 0; j < d; ++j) dot += i128(gr[j]) * h[j];
        i128 m = dot % N;
        if (m != 0) { if (left == 0) break; continue; }
        i64 meas = r;
        if (p == Norm::L2) {
          i128 s = 0;
          for (i64 u : h) s += i128(u) * u;
          meas = Rational::checked_i64(s, "dual l2 measure");
        }
        if (best.measure < 0 || meas < best.measure ||
            (meas == best.measure && h < best.h)) {
          best.measure = meas;
          best.h = h;
        }
        if (left == 0) break;  // +0 == -0
      }
      return;
    }
    for (i64 c = 0; c <= left; ++c) {
      for (i64 v : {c, -c}) {
        if (lead && v < 0) break;
        h[pos] = v;
        scan(r, scan, pos + 1, left - c, lead && v == 0);
        if (c == 0) break;
      }
    }
  };

  i64 r_cap = mul_checked(N, d, "dual shell cap") + 1;
  for (i64 r = 1; r <= r_cap; ++r) {
    if (best.measure >= 0) {
      if (p == Norm::L1) break;  // first shell with a hit is minimal
      // l2: later shells have |h|_2^2 >= r^2/d
      if (i128(r) * r > i128(best.measure) * d) break;
    }
    scan_shell(r, scan_shell, 0, r, true);
  }
  if (best.measure < 0) throw std::logic_error("dual_shortest: no dual vector found");
  best.value = p == Norm::L1 ? static_cast<double>(best.measure)
                             : std::sqrt(static_cast<double>(best.measure));
  return best;
}

AdmissibilityResult admissibility_min_normform(const LatticeSpec& L, double R, i64 box_budget) {
  if (R <= 0) throw std::domain_error("admissibility_min_normform: R must be positive");
  AdmissibilityResult res;
  res.min_product = std::numeric_limits<double>::infinity();
  EvalCtx ctx(L);
  for_each_coeff(coeff_box(L, R, Norm::Linf), box_budget, [&](const std::vector<i64>& k0) {
    std::vector<i64> k = k0;
    if (!canonicalize(k)) return;
    ctx.eval(k);
    double ninf = norm_value(ctx.x, Norm::Linf);
    if (ninf > R * (1.0 + 1e-12)) return;
    double prod = 1.0;
    bool zero = false;
    for (int j = 0; j < L.d; ++j) {
      double a = std::abs(ctx.x[j]);
      if (L.exact ? ctx.w[j] == 0 : a <= 1e-12) { zero = true; a = 0.0; }
      prod *= a;
    }
    if (prod < res.min_product || (prod == res.min_product && (res.argmin_k.empty() || k < res.argmin_k))) {
      res.min_product = prod;
      res.argmin_k = k;
      res.zero_coordinate = zero;
    }
  });
  if (res.argmin_k.empty())
    throw std::domain_error("admissibility_min_normform: no nonzero lattice point within R");
  return res;
}

}  // namespace qups
