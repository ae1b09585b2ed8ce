#pragma once

// Regression constants frozen from the committed oracle run
// (tools/oracle_dump).  Do not edit by hand; re-run the tool to refresh.

namespace qups::frozen {

// min_{1<=n<=n_max} n^{1/d} * <n alpha>_inf for alpha = alpha_power2(d)
inline constexpr double kPow2CStarD1N1e4 = 0.34314575050761942;
inline constexpr double kPow2CStarD2N1e4 = 0.29592461992293445;
inline constexpr double kPow2CStarD3N1e4 = 0.37981863574749652;
inline constexpr double kPow2CStarD2N1e5 = 0.29592461992293445;

// Kronecker pow2 d=2 prefix profile (n = 2^4..2^14, linf, default grid):
// committed mesh-ratio ceiling
inline constexpr double kPow2ProfileRhoMax = 7.5466878589221036;

// Frolov d=2, a = 2^i, i = 2..7: committed mesh-ratio ceiling (linf)
inline constexpr double kFrolovD2RhoMax = 3.3040405071066914;

// Exhaustive generator scan at N=31, d=2 over {0..30}^2 at the median
// kappa thresholds
inline constexpr long long kSearchN31Scanned = 961;
inline constexpr double kSearchN31KappaDualMin = 5;
inline constexpr double kSearchN31KappaPrimalMin = 0.16129032258064516;
inline constexpr long long kSearchN31Passed = 600;

// mesh_ratio_upper <= C_rec / (kappa_primal * kappa_dual), d=2 linf
// (max product over exhaustive scans at N = 5, 7, 11)
inline constexpr double kKappaMeshCrecD2 = 4.8156249999999998;

// covering_upper * kappa_dual over Fibonacci m = 6..18 (linf, default grid)
inline constexpr double kFibHKappaLo = 1.153846153846154;
inline constexpr double kFibHKappaHi = 1.5801809210526316;

}  // namespace qups::frozen
