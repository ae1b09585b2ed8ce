#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qups/errors.hpp"
#include "qups/numtheory.hpp"
#include "qups/pointset.hpp"

namespace qups {

void PointSet::push_exact(const std::vector<i64>& row) {
  for (int j = 0; j < d; ++j) {
    i64 v = row[j];
    if (v < 0 || v >= den) throw std::logic_error("point numerator outside [0, den)");
    nums.push_back(v);
    coords.push_back(static_cast<double>(v) / static_cast<double>(den));
  }
}

void PointSet::push_float(const std::vector<double>& row) {
  for (int j = 0; j < d; ++j) {
    double v = row[j];
    if (v < 0.0 || v >= 1.0) throw std::logic_error("point coordinate outside [0,1)");
    coords.push_back(v);
  }
}

namespace {

std::string join_i64(const std::vector<i64>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

PointSet gen_rank1(const std::vector<i64>& g, i64 N, i64 budget) {
  if (N < 1) throw std::domain_error("gen_rank1: N must be >= 1");
  if (g.empty()) throw std::domain_error("gen_rank1: empty generating vector");
  if (N > budget) throw budget_error("gen_rank1: N exceeds point budget");
  int d = static_cast<int>(g.size());
  std::vector<i64> gr(g.size());
  for (size_t j = 0; j < g.size(); ++j) {
    gr[j] = ((g[j] % N) + N) % N;
    if (gcd_i64(gr[j], N) != 1)
      throw std::domain_error("gen_rank1: gcd(g_" + std::to_string(j + 1) + ", N) != 1");
  }
  PointSet P;
  P.d = d;
  P.exact = true;
  P.den = N;
  P.nums.reserve(static_cast<size_t>(N) * d);
  P.coords.reserve(static_cast<size_t>(N) * d);
  std::vector<i64> row(d);
  for (i64 k = 0; k < N; ++k) {
    for (int j = 0; j < d; ++j) row[j] = mul_checked(k, gr[j], "gen_rank1") % N;
    P.push_exact(row);
  }
  P.family = "rank1";
  P.params = "g=" + join_i64(gr) + ";N=" + std::to_string(N);
  P.gvec = gr;
  P.modulus = N;
  return P;
}

i64 fibonacci_number(int m) {
  if (m < 1) throw std::domain_error("fibonacci_number: m must be >= 1");
  i64 a = 1, b = 1;  // F_1, F_2
  for (int i = 3; i <= m; ++i) {
    i64 c = Rational::checked_i64(i128(a) + b, "fibonacci");
    a = b;
    b = c;
  }
  return m == 1 ? a : b;
}

PointSet gen_fibonacci(int m, i64 budget) {
  if (m < 3) throw std::domain_error("gen_fibonacci: m must be >= 3");
  i64 N = fibonacci_number(m);
  i64 g = fibonacci_number(m - 1);
  PointSet P = gen_rank1({1, g}, N, budget);
  P.family = "fibonacci";
  P.params = "m=" + std::to_string(m) + ";g=1," + std::to_string(g) + ";N=" + std::to_string(N);
  return P;
}

std::pair<i64, i64> hexagonal_cf_fraction(int k) {
  if (k < 1) throw std::domain_error("hexagonal_cf_fraction: k must be >= 1");
  // [0; a_1..a_{2k+1}] with a_odd = 2, a_even = 1, via the convergent
  // recursion; state after a_0 = 0 is (p_{-1}, p_0) = (1, 0), (q_{-1}, q_0) = (0, 1)
  i64 pm2 = 1, pm1 = 0, qm2 = 0, qm1 = 1;
  for (int i = 1; i <= 2 * k + 1; ++i) {
    i64 a = (i % 2 == 1) ? 2 : 1;
    i128 pn = i128(a) * pm1 + pm2;
    i128 qn = i128(a) * qm1 + qm2;
    if (pn > INT64_MAX || qn > INT64_MAX)
      throw budget_error("hexagonal_cf_fraction: convergent overflow");
    pm2 = pm1; pm1 = static_cast<i64>(pn);
    qm2 = qm1; qm1 = static_cast<i64>(qn);
  }
  return {pm1, qm1};
}

PointSet gen_hexagonal_cf(int k, i64 budget) {
  auto [g, N] = hexagonal_cf_fraction(k);
  PointSet P = gen_rank1({1, g}, N, budget);
  P.family = "hexcf";
  P.params = "k=" + std::to_string(k) + ";g=1," + std::to_string(g) + ";N=" + std::to_string(N);
  return P;
}

namespace {

double frac_mod1(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0 - 1e-15) f = 0.0;  // wrapped: value is within 1e-15 of an integer
  if (f < 0.0) f = 0.0;
  return f;
}

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

PointSet gen_kronecker(const std::vector<double>& alpha, i64 N, bool include_zero, i64 budget) {
  if (alpha.empty()) throw std::domain_error("gen_kronecker: empty alpha");
  if (N < 1) throw std::domain_error("gen_kronecker: N must be >= 1");
  for (double a : alpha)
    if (!std::isfinite(a)) throw std::domain_error("gen_kronecker: non-finite alpha");
  i64 total = N + (include_zero ? 1 : 0);
  if (total > budget) throw budget_error("gen_kronecker: N exceeds point budget");
  PointSet P;
  P.d = static_cast<int>(alpha.size());
  P.exact = false;
  P.coords.reserve(static_cast<size_t>(total) * P.d);
  std::vector<double> row(P.d);
  for (i64 n = include_zero ? 0 : 1; n <= N; ++n) {
    for (int j = 0; j < P.d; ++j) row[j] = frac_mod1(static_cast<double>(n) * alpha[j]);
    P.push_float(row);
  }
  P.family = "kronecker";
  std::string as;
  for (size_t j = 0; j < alpha.size(); ++j) {
    if (j) as += ",";
    as += format17(alpha[j]);
  }
  P.params = "alpha=" + as + ";N=" + std::to_string(N) + ";start=" + (include_zero ? "0" : "1");
  return P;
}

std::vector<double> alpha_power2(int d) {
  if (d < 1) throw std::domain_error("alpha_power2: d must be >= 1");
  // 2^{j/(d+1)}; fixed high-precision literals for the desk-scale dimensions
  static const std::vector<std::vector<double>> table = {
      {1.41421356237309504880168872420969807856967187537694},
      {1.25992104989487316476721060727822835057025146470150,
       1.58740105196819947475170563927230826039149332789985},
      {1.18920711500272106671749997056047591529297209246381,
       1.41421356237309504880168872420969807856967187537694,
       1.68179283050742908606225095246642979008006852471356},
      {1.14869835499703500679862694677792758944385088909779,
       1.31950791077289425937400197122964013303346901319341,
       1.51571656651039808234725980130644523868128354297814,
       1.74110112659224827827254003495949219795825084869600}};
  if (d <= 4) return table[d - 1];
  std::vector<double> a(d);
  for (int j = 1; j <= d; ++j)
    a[j - 1] = std::pow(2.0, static_cast<double>(j) / static_cast<double>(d + 1));
  return a;
}

std::vector<double> alpha_named(const std::string& name, int d) {
  if (name == "pow2") return alpha_power2(d);
  if (name == "golden") {
    if (d != 1) throw std::domain_error("alpha golden: d must be 1");
    return {0.61803398874989484820458683436563811772030917980576};
  }
  if (name == "liouville") {
    if (d != 1) throw std::domain_error("alpha liouville: d must be 1");
    // base-2 Liouville constant truncation: 2^-1 + 2^-2 + 2^-6 + 2^-24,
    // exactly representable in binary64
    return {0.765625059604644775390625};
  }
  throw std::domain_error("unknown alpha name '" + name + "'");
}

namespace {

// integer coefficient box covering T^{-1}([delta, a + delta])
std::vector<std::pair<i64, i64>> cube_coeff_box(const LatticeSpec& L, double a,
                                                const std::vector<double>& delta) {
  std::vector<double> inv = invert_matrix(L.d, L.T);
  std::vector<std::pair<i64, i64>> box(L.d);
  for (int i = 0; i < L.d; ++i) {
    double center = 0.0, radius = 0.0;
    for (int j = 0; j < L.d; ++j) {
      double r = inv[i * L.d + j];
      center += r * (delta[j] + 0.5 * a);
      radius += std::abs(r) * 0.5 * a;
    }
    radius = radius * (1.0 + 1e-9) + 1e-6;
    box[i] = {static_cast<i64>(std::floor(center - radius)),
              static_cast<i64>(std::ceil(center + radius))};
  }
  return box;
}

}  // namespace

PointSet enumerate_in_cube(const LatticeSpec& L, double a, const std::vector<double>& delta,
                           i64 point_budget, i64 box_budget) {
  if (a <= 0) throw std::domain_error("enumerate_in_cube: scale must be positive");
  std::vector<double> dlt = delta.empty() ? std::vector<double>(L.d, 0.0) : delta;
  if (static_cast<int>(dlt.size()) != L.d)
    throw std::domain_error("enumerate_in_cube: shift dimension mismatch");
  PointSet P;
  P.d = L.d;
  P.exact = false;
  std::vector<double> x(L.d), row(L.d);
  for_each_coeff(cube_coeff_box(L, a, dlt), box_budget, [&](const std::vector<i64>& k) {
    bool in = true;
    for (int i = 0; i < L.d && in; ++i) {
      double s = 0.0;
      for (int j = 0; j < L.d; ++j) s += L.entry(i, j) * static_cast<double>(k[j]);
      x[i] = (s - dlt[i]) / a;
      if (x[i] < -1e-12 || x[i] >= 1.0 - 1e-12) in = false;
    }
    if (!in) return;
    if (P.n() >= point_budget) throw budget_error("enumerate_in_cube: point budget exceeded");
    for (int i = 0; i < L.d; ++i) row[i] = std::max(x[i], 0.0);
    P.push_float(row);
  });
  if (P.n() == 0) throw std::domain_error("enumerate_in_cube: empty point set");
  P.family = "lattice-cube";
  return P;
}

PointSet enumerate_in_cube_exact(const LatticeSpec& L, const Rational& a,
                                 const std::vector<Rational>& delta,
                                 i64 point_budget, i64 box_budget) {
  if (!L.exact) throw std::domain_error("enumerate_in_cube_exact: lattice is not exact");
  if (!(Rational(0) < a)) throw std::domain_error("enumerate_in_cube_exact: scale must be positive");
  std::vector<Rational> dlt = delta.empty() ? std::vector<Rational>(L.d, Rational(0)) : delta;
  if (static_cast<int>(dlt.size()) != L.d)
    throw std::domain_error("enumerate_in_cube_exact: shift dimension mismatch");

  std::vector<double> dlt_f(L.d);
  for (int i = 0; i < L.d; ++i) dlt_f[i] = dlt[i].value();
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> cell(L.d);
  const Rational one(1);
  for_each_coeff(cube_coeff_box(L, a.value(), dlt_f), box_budget, [&](const std::vector<i64>& k) {
    for (int i = 0; i < L.d; ++i) {
      i128 s = 0;
      for (int j = 0; j < L.d; ++j) s += i128(L.Tnum[i * L.d + j]) * k[j];
      Rational xi = Rational::make(s, L.den);
      cell[i] = (xi - dlt[i]) / a;
      if (cell[i] < Rational(0) || !(cell[i] < one)) return;
    }
    if (static_cast<i64>(rows.size()) >= point_budget)
      throw budget_error("enumerate_in_cube_exact: point budget exceeded");
    rows.push_back(cell);
  });
  if (rows.empty()) throw std::domain_error("enumerate_in_cube_exact: empty point set");

  i64 D = 1;
  for (auto& r : rows)
    for (auto& v : r) D = lcm_checked(D, v.den, "enumerate_in_cube_exact denominator");
  PointSet P;
  P.d = L.d;
  P.exact = true;
  P.den = D;
  std::vector<i64> row(L.d);
  for (auto& r : rows) {
    for (int j = 0; j < L.d; ++j) row[j] = mul_checked(r[j].num, D / r[j].den, "numerator");
    P.push_exact(row);
  }
  P.family = "lattice-cube";
  return P;
}

PointSet gen_frolov_points(int d, double a, const std::vector<double>& delta, i64 point_budget) {
  LatticeSpec L = frolov_matrix(d);
  PointSet P = enumerate_in_cube(L, a, delta, point_budget);
  P.family = "frolov";
  std::string ds;
  std::vector<double> dlt = delta.empty() ? std::vector<double>(d, 0.0) : delta;
  for (int j = 0; j < d; ++j) {
    if (j) ds += ",";
    ds += format17(dlt[j]);
  }
  P.params = "d=" + std::to_string(d) + ";a=" + format17(a) + ";delta=" + ds;
  return P;
}

PointSet gen_grid_regular(i64 m, int d, i64 budget) {
  if (m < 1) throw std::domain_error("gen_grid_regular: m must be >= 1");
  if (d < 1) throw std::domain_error("gen_grid_regular: d must be >= 1");
  i128 total = 1;
  for (int j = 0; j < d; ++j) total *= m;
  if (total > budget) throw budget_error("gen_grid_regular: m^d exceeds point budget");
  PointSet P;
  P.d = d;
  P.exact = true;
  P.den = m;
  std::vector<std::pair<i64, i64>> box(d, {0, m - 1});
  for_each_coeff(box, budget, [&](const std::vector<i64>& k) { P.push_exact(k); });
  P.family = "grid";
  P.params = "m=" + std::to_string(m) + ";d=" + std::to_string(d);
  return P;
}

PointSet gen_grid_aniso(i64 m, int d, i64 budget) {
  if (m < 2) throw std::domain_error("gen_grid_aniso: m must be >= 2");
  if (d < 2) throw std::domain_error("gen_grid_aniso: d must be >= 2");
  i64 m2 = mul_checked(m, m, "gen_grid_aniso");
  i128 total = m2;
  for (int j = 0; j < d - 1; ++j) total *= m;
  if (total > budget) throw budget_error("gen_grid_aniso: m^{d+1} exceeds point budget");
  PointSet P;
  P.d = d;
  P.exact = true;
  P.den = m2;
  std::vector<std::pair<i64, i64>> box(d, {0, m - 1});
  box[d - 1] = {0, m2 - 1};
  std::vector<i64> row(d);
  for_each_coeff(box, budget, [&](const std::vector<i64>& k) {
    for (int j = 0; j < d - 1; ++j) row[j] = k[j] * m;
    row[d - 1] = k[d - 1];
    P.push_exact(row);
  });
  P.family = "grid-aniso";
  P.params = "m=" + std::to_string(m) + ";d=" + std::to_string(d);
  return P;
}

}  // namespace qups
