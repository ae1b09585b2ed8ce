// Computes the regression constants that get frozen into
// include/qups/constants.hpp and data/threshold_quantiles.json.  Run once,
// paste the emitted blocks, commit.  Not part of the test suite.
#include "qups/io.hpp"
#include "qups/metrics.hpp"
#include "qups/numtheory.hpp"
#include "qups/pointset.hpp"
#include "qups/search.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

using namespace qups;

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];  // lower median
}

struct ScanStats {
  i64 N = 0;
  double med_kd = 0.0;
  double med_kp = 0.0;
  i64 passed = 0;
  double fraction = 0.0;
  double crec = 0.0;  // max rho_hi * kp * kd over non-degenerate g
};

ScanStats scan_stats(i64 N) {
  ScanStats st;
  st.N = N;
  SearchConfig cfg;
  cfg.N = N;
  cfg.eval_rho = true;
  auto res = search_generators(cfg);  // thresholds 0: every g passes
  std::vector<double> kds, kps;
  for (const auto& rec : res.records) {
    kds.push_back(static_cast<double>(rec.kd));
    kps.push_back(rec.kp.value());
    if (rec.has_rho) {
      double c = rec.rho_hi * rec.kp.value() * static_cast<double>(rec.kd);
      if (c > st.crec) st.crec = c;
    }
  }
  st.med_kd = median(kds);
  st.med_kp = median(kps);
  for (size_t i = 0; i < kds.size(); ++i)
    if (kds[i] >= st.med_kd - 1e-12 && kps[i] >= st.med_kp - 1e-12) ++st.passed;
  st.fraction = static_cast<double>(st.passed) / static_cast<double>(res.scanned);
  return st;
}

}  // namespace

int main() {
  std::string out;

  // Kronecker pow2 constants
  double c1 = badly_approximable_profile(alpha_power2(1), 10000).min_value;
  double c2 = badly_approximable_profile(alpha_power2(2), 10000).min_value;
  double c3 = badly_approximable_profile(alpha_power2(3), 10000).min_value;
  double c2e5 = badly_approximable_profile(alpha_power2(2), 100000).min_value;

  // pow2 d=2 prefix profile
  std::vector<i64> idx;
  for (int i = 4; i <= 14; ++i) idx.push_back(i64(1) << i);
  auto gen = [](i64 n) { return gen_kronecker(alpha_power2(2), n); };
  AnalyzeOptions popt;
  popt.want_dual = false;
  auto prof = profile_prefixes(gen, idx, popt);
  std::vector<double> rhos;
  for (const auto& r : prof.reports) rhos.push_back(r.rho_hi);
  double rho_max = *std::max_element(rhos.begin(), rhos.end());

  // Frolov d=2 ceiling and point counts
  double frolov_max = 0.0;
  std::string frolov_counts;
  for (int i = 2; i <= 7; ++i) {
    auto P = gen_frolov_points(2, static_cast<double>(i64(1) << i));
    auto mr = mesh_ratio_enclosure(P, Norm::Linf, default_grid_resolution(2));
    frolov_max = std::max(frolov_max, mr.rho.hi);
    frolov_counts += " a=2^" + std::to_string(i) + ":" + std::to_string(P.n());
  }

  // exhaustive generator scans
  auto s5 = scan_stats(5);
  auto s7 = scan_stats(7);
  auto s11 = scan_stats(11);
  auto s31 = scan_stats(31);
  double crec = std::max({s5.crec, s7.crec, s11.crec});

  // Fibonacci h * kappa_dual band, m = 6..18
  double fib_lo = 1e300, fib_hi = -1e300;
  for (int m = 6; m <= 18; ++m) {
    auto P = gen_fibonacci(m);
    auto h = covering_radius_enclosure(P, Norm::Linf, default_grid_resolution(2));
    double kd = static_cast<double>(kappa_dual(P.gvec, P.modulus));
    fib_lo = std::min(fib_lo, h.lo * kd);
    fib_hi = std::max(fib_hi, h.hi * kd);
  }

  out += "=== include/qups/constants.hpp ===\n";
  out += "#pragma once\n\n";
  out +=
      "// Regression constants frozen from the committed oracle run\n"
      "// (tools/oracle_dump).  Do not edit by hand; re-run the tool to "
      "refresh.\n\n";
  out += "namespace qups::frozen {\n\n";
  out += "// min_{1<=n<=n_max} n^{1/d} * <n alpha>_inf for alpha = alpha_power2(d)\n";
  out += "inline constexpr double kPow2CStarD1N1e4 = " + fmt17(c1) + ";\n";
  out += "inline constexpr double kPow2CStarD2N1e4 = " + fmt17(c2) + ";\n";
  out += "inline constexpr double kPow2CStarD3N1e4 = " + fmt17(c3) + ";\n";
  out += "inline constexpr double kPow2CStarD2N1e5 = " + fmt17(c2e5) + ";\n\n";
  out += "// Kronecker pow2 d=2 prefix profile (n = 2^4..2^14, linf, default grid):\n";
  out += "// committed mesh-ratio ceiling\n";
  out += "inline constexpr double kPow2ProfileRhoMax = " + fmt17(rho_max) + ";\n\n";
  out += "// Frolov d=2, a = 2^i, i = 2..7: committed mesh-ratio ceiling (linf)\n";
  out += "inline constexpr double kFrolovD2RhoMax = " + fmt17(frolov_max) + ";\n\n";
  out += "// Exhaustive generator scan at N=31, d=2 over {0..30}^2 at the median\n";
  out += "// kappa thresholds\n";
  out += "inline constexpr long long kSearchN31Scanned = 961;\n";
  out += "inline constexpr double kSearchN31KappaDualMin = " + fmt17(s31.med_kd) + ";\n";
  out += "inline constexpr double kSearchN31KappaPrimalMin = " + fmt17(s31.med_kp) + ";\n";
  out += "inline constexpr long long kSearchN31Passed = " + std::to_string(s31.passed) + ";\n\n";
  out += "// mesh_ratio_upper <= C_rec / (kappa_primal * kappa_dual), d=2 linf\n";
  out += "// (max product over exhaustive scans at N = 5, 7, 11)\n";
  out += "inline constexpr double kKappaMeshCrecD2 = " + fmt17(crec) + ";\n\n";
  out += "// covering_upper * kappa_dual over Fibonacci m = 6..18 (linf, default grid)\n";
  out += "inline constexpr double kFibHKappaLo = " + fmt17(fib_lo) + ";\n";
  out += "inline constexpr double kFibHKappaHi = " + fmt17(fib_hi) + ";\n\n";
  out += "}  // namespace qups::frozen\n";

  out += "=== data/threshold_quantiles.json ===\n";
  nlohmann::json tj;
  tj["entries"] = nlohmann::json::array();
  for (const auto& st : {s5, s7, s11, s31}) {
    nlohmann::json e;
    e["d"] = 2;
    e["N"] = st.N;
    e["kappa_dual_min"] = st.med_kd;
    e["kappa_primal_min"] = st.med_kp;
    e["fraction"] = st.fraction;
    tj["entries"].push_back(e);
  }
  out += tj.dump(2) + "\n";

  out += "=== aux ===\n";
  out += "pow2 d2 profile rho_hi:";
  for (double r : rhos) out += " " + fmt17(r);
  out += "\n";
  {
    std::vector<double> sorted = rhos;
    std::sort(sorted.begin(), sorted.end());
    double med = sorted[(sorted.size() - 1) / 2];
    out += "pow2 d2 profile median=" + fmt17(med) +
           " last/median=" + fmt17(rhos.back() / med) + "\n";
  }
  out += "frolov d2 counts:" + frolov_counts + "\n";
  out += "scan stats (N med_kd med_kp passed fraction crec):\n";
  for (const auto& st : {s5, s7, s11, s31})
    out += "  N=" + std::to_string(st.N) + " " + fmt17(st.med_kd) + " " +
           fmt17(st.med_kp) + " " + std::to_string(st.passed) + " " +
           fmt17(st.fraction) + " " + fmt17(st.crec) + "\n";
  {
    auto prof31 = badly_approximable_profile(alpha_named("golden", 1), 100000);
    out += "golden 1e5 min=" + fmt17(prof31.min_value) +
           " argmin=" + std::to_string(prof31.argmin_n) + "\n";
    auto liou = badly_approximable_profile(alpha_named("liouville", 1), 100000);
    out += "liouville 1e5 min=" + fmt17(liou.min_value) +
           " argmin=" + std::to_string(liou.argmin_n) + "\n";
  }
  for (int k = 1; k <= 5; ++k) {
    auto P = gen_hexagonal_cf(k);
    auto s = separation_radius(P, Norm::L2);
    double scaled = 2.0 * s.value * std::sqrt(static_cast<double>(P.n()));
    out += "hexcf k=" + std::to_string(k) + " N=" + std::to_string(P.n()) +
           " mindist*sqrtN=" + fmt17(scaled) + "\n";
  }
  {
    auto F = gen_fibonacci(6);
    auto ds = star_discrepancy_exact(F);
    out += "fib m=6 dstar=" + fmt17(ds.value);
    if (ds.exact) out += " (= " + ds.rat.str() + ")";
    out += "\n";
  }

  std::fputs(out.c_str(), stdout);
  return 0;
}
