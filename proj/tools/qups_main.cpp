#include <cstdio>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qups/errors.hpp"
#include "qups/io.hpp"
#include "qups/metrics.hpp"
#include "qups/pointset.hpp"
#include "qups/search.hpp"
#include "qups/verify.hpp"
#include "qups/version.hpp"

namespace {

using namespace qups;

std::string echo_args(int argc, char** argv) {
  std::string s = "qups";
  for (int i = 1; i < argc; ++i) {
    s += ' ';
    s += argv[i];
  }
  return s;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::fputs(content.c_str(), stdout);
  else
    write_text_file(out_path, content);
}

struct GenParams {
  std::string kind;
  std::vector<i64> g;
  i64 N = 0;
  i64 m = 0;
  int k = 0;
  int dim = 2;
  i64 count = 0;
  std::string alpha = "pow2";
  std::vector<double> alpha_values;
  bool include_zero = false;
  double a = 4.0;
  std::vector<double> delta;
};

PointSet make_pointset(const GenParams& gp) {
  if (gp.kind == "rank1") {
    if (gp.g.empty() || gp.N < 1)
      throw std::domain_error("rank1 needs --g and --N");
    return gen_rank1(gp.g, gp.N);
  }
  if (gp.kind == "fibonacci") {
    if (gp.m < 3) throw std::domain_error("fibonacci needs --m >= 3");
    return gen_fibonacci(static_cast<int>(gp.m));
  }
  if (gp.kind == "hexcf") {
    if (gp.k < 1) throw std::domain_error("hexcf needs --k >= 1");
    return gen_hexagonal_cf(gp.k);
  }
  if (gp.kind == "kronecker") {
    if (gp.count < 1) throw std::domain_error("kronecker needs --count >= 1");
    std::vector<double> alpha = gp.alpha_values.empty()
                                    ? alpha_named(gp.alpha, gp.dim)
                                    : gp.alpha_values;
    return gen_kronecker(alpha, gp.count, gp.include_zero);
  }
  if (gp.kind == "frolov") {
    if (gp.a <= 0.0) throw std::domain_error("frolov needs --a > 0");
    return gen_frolov_points(gp.dim, gp.a, gp.delta);
  }
  if (gp.kind == "grid") {
    if (gp.m < 1) throw std::domain_error("grid needs --m >= 1");
    return gen_grid_regular(gp.m, gp.dim);
  }
  if (gp.kind == "grid-aniso") {
    if (gp.m < 2) throw std::domain_error("grid-aniso needs --m >= 2");
    return gen_grid_aniso(gp.m, gp.dim);
  }
  throw std::domain_error("unknown kind '" + gp.kind + "'");
}

void add_gen_flags(CLI::App* cmd, GenParams& gp) {
  cmd->add_option("--kind", gp.kind,
                  "rank1|fibonacci|hexcf|kronecker|frolov|grid|grid-aniso")
      ->required();
  cmd->add_option("--g", gp.g, "generating vector (comma separated)")->delimiter(',');
  cmd->add_option("--N", gp.N, "rank-1 modulus");
  cmd->add_option("--m", gp.m, "fibonacci index / grid resolution");
  cmd->add_option("--k", gp.k, "hexagonal-cf index");
  cmd->add_option("--dim", gp.dim, "dimension");
  cmd->add_option("--count", gp.count, "kronecker point count");
  cmd->add_option("--alpha", gp.alpha, "kronecker alpha: pow2|golden|liouville");
  cmd->add_option("--alpha-values", gp.alpha_values, "explicit alpha coordinates")
      ->delimiter(',');
  cmd->add_flag("--include-zero", gp.include_zero, "kronecker: start at n = 0");
  cmd->add_option("--a", gp.a, "frolov scale");
  cmd->add_option("--delta", gp.delta, "frolov shift (comma separated)")->delimiter(',');
}

AnalyzeOptions parse_metrics(const std::vector<std::string>& metrics, const std::string& norm,
                             int grid) {
  AnalyzeOptions opt;
  opt.p = norm_from_name(norm);
  opt.m_grid = grid;
  opt.want_sep = opt.want_cover = opt.want_dstar = opt.want_dual = false;
  for (const std::string& m : metrics) {
    if (m == "sep") opt.want_sep = true;
    else if (m == "cover") opt.want_cover = true;
    else if (m == "mesh") opt.want_sep = opt.want_cover = true;
    else if (m == "dstar") opt.want_dstar = true;
    else if (m == "dual") opt.want_dual = true;
    else if (m == "all") opt.want_sep = opt.want_cover = opt.want_dstar = opt.want_dual = true;
    else throw std::domain_error("unknown metric '" + m + "' (sep|cover|mesh|dstar|dual|all)");
  }
  return opt;
}

std::vector<i64> parse_index_spec(const std::string& spec) {
  std::vector<i64> out;
  if (spec.rfind("pow2:", 0) == 0) {
    std::string range = spec.substr(5);
    size_t dots = range.find("..");
    if (dots == std::string::npos)
      throw std::domain_error("index spec: want pow2:a..b");
    int a = std::stoi(range.substr(0, dots));
    int b = std::stoi(range.substr(dots + 2));
    if (a < 0 || b < a || b > 62) throw std::domain_error("index spec: bad pow2 range");
    for (int e = a; e <= b; ++e) out.push_back(i64(1) << e);
    return out;
  }
  if (spec.rfind("list:", 0) == 0) {
    std::string rest = spec.substr(5);
    size_t pos = 0;
    while (pos <= rest.size()) {
      size_t c = rest.find(',', pos);
      if (c == std::string::npos) c = rest.size();
      out.push_back(std::stoll(rest.substr(pos, c - pos)));
      pos = c + 1;
    }
    if (out.empty()) throw std::domain_error("index spec: empty list");
    return out;
  }
  throw std::domain_error("index spec: want pow2:a..b or list:v1,v2,...");
}

std::function<PointSet(i64)> prefix_generator(const GenParams& gp) {
  if (gp.kind == "kronecker") {
    std::vector<double> alpha = gp.alpha_values.empty()
                                    ? alpha_named(gp.alpha, gp.dim)
                                    : gp.alpha_values;
    bool inc0 = gp.include_zero;
    return [alpha, inc0](i64 n) { return gen_kronecker(alpha, n, inc0); };
  }
  if (gp.kind == "fibonacci")
    return [](i64 m) { return gen_fibonacci(static_cast<int>(m)); };
  if (gp.kind == "hexcf")
    return [](i64 k) { return gen_hexagonal_cf(static_cast<int>(k)); };
  if (gp.kind == "frolov") {
    int d = gp.dim;
    double a0 = 1.0;
    std::vector<double> delta = gp.delta;
    return [d, a0, delta](i64 v) {
      return gen_frolov_points(d, a0 * static_cast<double>(v), delta);
    };
  }
  if (gp.kind == "grid") {
    int d = gp.dim;
    return [d](i64 m) { return gen_grid_regular(m, d); };
  }
  if (gp.kind == "grid-aniso") {
    int d = gp.dim;
    return [d](i64 m) { return gen_grid_aniso(m, d); };
  }
  throw std::domain_error("profile: unsupported kind '" + gp.kind + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice point sets and certified quasi-uniformity diagnostics"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  std::string args = echo_args(argc, argv);
  int rc = 0;

  // gen
  auto* gen = app.add_subcommand("gen", "generate a point set file");
  GenParams gen_p;
  std::string gen_out;
  add_gen_flags(gen, gen_p);
  gen->add_option("--out", gen_out, "output path (default stdout)");
  gen->callback([&] { emit(gen_out, serialize_pointset(make_pointset(gen_p))); });

  // analyze
  auto* an = app.add_subcommand("analyze", "metrics report for a point set file");
  std::string an_in, an_out, an_norm = "inf";
  std::vector<std::string> an_metrics;
  int an_grid = 0;
  i64 an_dstar_budget = kDefaultDstarBudget, an_lb_trials = 4096;
  u64 an_seed = 1;
  an->add_option("input", an_in, "qups point-set file")->required();
  an->add_option("--metrics", an_metrics, "sep|cover|mesh|dstar|dual|all (comma separated)")
      ->delimiter(',')
      ->required();
  an->add_option("--norm", an_norm, "1|2|inf (default inf)");
  an->add_option("--grid", an_grid, "covering grid resolution (0 = auto)");
  an->add_option("--dstar-budget", an_dstar_budget, "exact D* operation budget");
  an->add_option("--lb-trials", an_lb_trials, "D* lower-bound sample count");
  an->add_option("--seed", an_seed, "D* lower-bound seed");
  an->add_option("--out", an_out, "output path (default stdout)");
  an->callback([&] {
    AnalyzeOptions opt = parse_metrics(an_metrics, an_norm, an_grid);
    opt.dstar_budget = an_dstar_budget;
    opt.lb_trials = an_lb_trials;
    opt.seed = an_seed;
    QUReport rep = analyze_pointset(read_pointset(an_in), opt);
    emit(an_out, report_json(rep, args));
  });

  // profile
  auto* pr = app.add_subcommand("profile", "metrics across a prefix sequence");
  GenParams pr_p;
  std::string pr_index, pr_out, pr_norm = "inf";
  std::vector<std::string> pr_metrics = {"sep", "cover", "dual"};
  int pr_grid = 0;
  bool pr_nested = false;
  add_gen_flags(pr, pr_p);
  pr->add_option("--index", pr_index, "index spec: pow2:a..b or list:v1,v2,...")->required();
  pr->add_option("--metrics", pr_metrics, "metrics per prefix")->delimiter(',');
  pr->add_option("--norm", pr_norm, "1|2|inf (default inf)");
  pr->add_option("--grid", pr_grid, "covering grid resolution (0 = auto)");
  pr->add_flag("--nested", pr_nested, "check consecutive prefixes for nestedness");
  pr->add_option("--out", pr_out, "output path (default stdout)");
  pr->callback([&] {
    AnalyzeOptions opt = parse_metrics(pr_metrics, pr_norm, pr_grid);
    PrefixProfile prof = profile_prefixes(prefix_generator(pr_p), parse_index_spec(pr_index),
                                          opt, pr_nested);
    emit(pr_out, profile_csv(prof));
  });

  // search
  auto* se = app.add_subcommand("search", "scan rank-1 generating vectors (prime N)");
  SearchConfig cfg;
  std::string se_mode = "exhaustive", se_thresholds, se_out;
  std::string se_tfile = "data/threshold_quantiles.json";
  se->add_option("--N", cfg.N, "modulus (prime)")->required();
  se->add_option("--dim", cfg.d, "dimension (default 2)");
  se->add_option("--mode", se_mode, "exhaustive|random");
  se->add_option("--samples", cfg.samples, "random mode sample count");
  se->add_option("--seed", cfg.seed, "random mode seed");
  se->add_option("--g-min", cfg.g_min, "scan domain lower bound (default 0)");
  se->add_option("--kappa-dual-min", cfg.kappa_dual_min, "dual kappa threshold");
  se->add_option("--kappa-primal-min", cfg.kappa_primal_min, "primal kappa threshold");
  se->add_option("--dstar-max", cfg.dstar_max, "exact D* gate (negative = off)");
  se->add_flag("--with-dstar", cfg.eval_dstar, "evaluate D* for passing vectors");
  se->add_flag("--with-rho", cfg.eval_rho, "evaluate mesh-ratio upper bound for passing vectors");
  se->add_option("--grid", cfg.m_grid, "covering grid resolution for --with-rho");
  se->add_option("--max-scan", cfg.max_scan, "scan cap (flags truncation)");
  se->add_option("--thresholds", se_thresholds, "'auto' loads the quantile fixture");
  se->add_option("--thresholds-file", se_tfile, "quantile fixture path");
  se->add_option("--out", se_out, "output prefix: writes <prefix>.csv and <prefix>.json");
  se->callback([&] {
    if (se_mode == "exhaustive") cfg.exhaustive = true;
    else if (se_mode == "random") cfg.exhaustive = false;
    else throw std::domain_error("mode must be exhaustive or random");
    if (!se_thresholds.empty()) {
      if (se_thresholds != "auto")
        throw std::domain_error("--thresholds only supports 'auto'");
      ThresholdEntry te;
      if (!load_threshold_entry(se_tfile, cfg.N, cfg.d, te))
        throw std::domain_error("no threshold fixture entry for N=" + std::to_string(cfg.N) +
                                " d=" + std::to_string(cfg.d) + " in " + se_tfile);
      cfg.kappa_dual_min = te.kappa_dual_min;
      cfg.kappa_primal_min = te.kappa_primal_min;
    }
    SearchResult res = search_generators(cfg);
    std::string csv = search_csv(cfg.d, res);
    std::string summary = search_summary_json(cfg, res, args);
    if (se_out.empty()) {
      emit("", csv);
      emit("", summary);
    } else {
      write_text_file(se_out + ".csv", csv);
      write_text_file(se_out + ".json", summary);
    }
  });

  // verify-bounds
  auto* vb = app.add_subcommand("verify-bounds", "run a bound-check suite");
  std::string vb_suite = "all";
  vb->add_option("--suite", vb_suite, "cf|minima|meshratio|nalpha|frolov|all");
  vb->callback([&] {
    VerifyReport rep = run_verify_suite(vb_suite);
    std::fputs(verify_table(rep).c_str(), stdout);
    if (!rep.all_pass()) rc = 4;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const budget_error& e) {
    std::fprintf(stderr, "error (budget): %s\n", e.what());
    return 3;
  } catch (const std::overflow_error& e) {
    std::fprintf(stderr, "error (overflow): %s\n", e.what());
    return 3;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return rc;
}
