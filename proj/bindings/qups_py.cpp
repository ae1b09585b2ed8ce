#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qups/io.hpp"
#include "qups/metrics.hpp"
#include "qups/numtheory.hpp"
#include "qups/pointset.hpp"
#include "qups/search.hpp"
#include "qups/verify.hpp"
#include "qups/version.hpp"

namespace py = pybind11;
using namespace qups;

namespace {

py::dict sep_dict(const SeparationResult& s) {
  py::dict d;
  d["value"] = s.value;
  d["exact"] = s.exact;
  d["measure"] = s.measure;
  d["den"] = s.den;
  return d;
}

py::dict report_dict(const QUReport& r) {
  py::dict d;
  d["n"] = r.n;
  d["d"] = r.d;
  d["p"] = std::string(norm_name(r.p));
  d["m_grid"] = r.m_grid;
  d["family"] = r.family;
  d["params"] = r.params;
  if (r.has_sep) {
    d["q"] = r.q;
    d["q_exact"] = r.q_exact;
  }
  if (r.has_cover) {
    d["h_lo"] = r.h_lo;
    d["h_hi"] = r.h_hi;
  }
  if (r.has_sep && r.has_cover) {
    d["rho_lo"] = r.rho_lo;
    d["rho_hi"] = r.rho_hi;
  }
  if (r.has_dstar) {
    d["dstar"] = r.dstar;
    d["dstar_is_lb"] = r.dstar_is_lb;
  }
  if (r.has_dual) {
    d["kappa"] = r.kappa;
    d["sigma"] = r.sigma;
  }
  return d;
}

int effective_grid(const PointSet& P, int m_grid) {
  return m_grid > 0 ? m_grid : default_grid_resolution(P.d);
}

}  // namespace

PYBIND11_MODULE(_qups, m) {
  m.doc() = "lattice point sets and quasi-uniformity diagnostics";
  m.attr("__version__") = kVersion;

  py::class_<PointSet>(m, "PointSet")
      .def_readonly("d", &PointSet::d)
      .def_readonly("exact", &PointSet::exact)
      .def_readonly("den", &PointSet::den)
      .def_readonly("nums", &PointSet::nums)
      .def_readonly("coords", &PointSet::coords)
      .def_readonly("family", &PointSet::family)
      .def_readonly("params", &PointSet::params)
      .def_readonly("gvec", &PointSet::gvec)
      .def_readonly("modulus", &PointSet::modulus)
      .def_property_readonly("n", [](const PointSet& P) { return P.n(); })
      .def("at", &PointSet::at, py::arg("i"), py::arg("j"))
      .def("row", [](const PointSet& P, i64 i) {
        if (i < 0 || i >= P.n()) throw std::out_of_range("row index");
        std::vector<double> r(P.d);
        for (int j = 0; j < P.d; ++j) r[j] = P.at(i, j);
        return r;
      })
      .def("write", [](const PointSet& P, const std::string& path) {
        write_pointset(path, P);
      })
      .def("serialize", [](const PointSet& P) { return serialize_pointset(P); })
      .def("__len__", [](const PointSet& P) { return P.n(); })
      .def("__repr__", [](const PointSet& P) {
        return "<PointSet " + P.family + " n=" + std::to_string(P.n()) +
               " d=" + std::to_string(P.d) + ">";
      });

  m.def("read_pointset", &read_pointset, py::arg("path"));

  m.def("gen_rank1", [](const std::vector<i64>& g, i64 N) { return gen_rank1(g, N); },
        py::arg("g"), py::arg("N"));
  m.def("gen_fibonacci", [](int mm) { return gen_fibonacci(mm); }, py::arg("m"));
  m.def("gen_hexagonal_cf", [](int k) { return gen_hexagonal_cf(k); }, py::arg("k"));
  m.def("gen_kronecker",
        [](const std::vector<double>& alpha, i64 N, bool include_zero) {
          return gen_kronecker(alpha, N, include_zero);
        },
        py::arg("alpha"), py::arg("N"), py::arg("include_zero") = false);
  m.def("gen_frolov", [](int d, double a) { return gen_frolov_points(d, a); },
        py::arg("d"), py::arg("a"));
  m.def("gen_grid", [](i64 mm, int d) { return gen_grid_regular(mm, d); },
        py::arg("m"), py::arg("d"));
  m.def("gen_grid_aniso", [](i64 mm, int d) { return gen_grid_aniso(mm, d); },
        py::arg("m"), py::arg("d"));

  m.def("alpha_power2", &alpha_power2, py::arg("d"));
  m.def("alpha_named", &alpha_named, py::arg("name"), py::arg("d"));
  m.def("fibonacci_number", &fibonacci_number, py::arg("m"));
  m.def("hexagonal_cf_fraction", &hexagonal_cf_fraction, py::arg("k"));
  m.def("is_prime", [](i64 n) { return n >= 2 && is_prime(static_cast<u64>(n)); },
        py::arg("n"));

  m.def("separation_radius",
        [](const PointSet& P, const std::string& p) {
          return sep_dict(separation_radius(P, norm_from_name(p)));
        },
        py::arg("P"), py::arg("p") = "inf");
  m.def("covering_radius_enclosure",
        [](const PointSet& P, const std::string& p, int m_grid) {
          auto h = covering_radius_enclosure(P, norm_from_name(p), effective_grid(P, m_grid));
          return py::make_tuple(h.lo, h.hi);
        },
        py::arg("P"), py::arg("p") = "inf", py::arg("m_grid") = 0);
  m.def("mesh_ratio_enclosure",
        [](const PointSet& P, const std::string& p, int m_grid) {
          auto mr = mesh_ratio_enclosure(P, norm_from_name(p), effective_grid(P, m_grid));
          py::dict d;
          d["rho_lo"] = mr.rho.lo;
          d["rho_hi"] = mr.rho.hi;
          d["h_lo"] = mr.h.lo;
          d["h_hi"] = mr.h.hi;
          d["q"] = sep_dict(mr.q);
          return d;
        },
        py::arg("P"), py::arg("p") = "inf", py::arg("m_grid") = 0);
  m.def("star_discrepancy_exact",
        [](const PointSet& P) {
          auto ds = star_discrepancy_exact(P);
          py::dict d;
          d["value"] = ds.value;
          d["exact"] = ds.exact;
          if (ds.exact) {
            d["num"] = ds.rat.num;
            d["den"] = ds.rat.den;
          }
          return d;
        },
        py::arg("P"));
  m.def("star_discrepancy_lb", &star_discrepancy_lb, py::arg("P"),
        py::arg("trials") = 4096, py::arg("seed") = 1);

  m.def("project", &project, py::arg("P"), py::arg("dims"));
  m.def("dedup", &dedup, py::arg("P"));
  m.def("nestedness_check", &nestedness_check, py::arg("small"), py::arg("big"),
        py::arg("tol") = kNestednessTol);

  m.def("analyze",
        [](const PointSet& P, const std::string& p, int m_grid, bool dstar,
           bool dual, i64 lb_trials, u64 seed) {
          AnalyzeOptions opt;
          opt.p = norm_from_name(p);
          opt.m_grid = m_grid;
          opt.want_dstar = dstar;
          opt.want_dual = dual;
          opt.lb_trials = lb_trials;
          opt.seed = seed;
          return report_dict(analyze_pointset(P, opt));
        },
        py::arg("P"), py::arg("p") = "inf", py::arg("m_grid") = 0,
        py::arg("dstar") = false, py::arg("dual") = true,
        py::arg("lb_trials") = 4096, py::arg("seed") = 1);

  m.def("cf_expand", [](i64 num, i64 den) { return cf_expand(num, den).a; },
        py::arg("num"), py::arg("den"));
  m.def("convergents",
        [](i64 num, i64 den) {
          std::vector<std::pair<i64, i64>> out;
          for (const auto& c : convergents(cf_expand(num, den)))
            out.emplace_back(c.p, c.q);
          return out;
        },
        py::arg("num"), py::arg("den"));
  m.def("max_partial_quotient",
        [](i64 num, i64 den) { return max_partial_quotient(cf_expand(num, den)); },
        py::arg("num"), py::arg("den"));
  m.def("badly_approximable_profile",
        [](const std::vector<double>& alpha, i64 n_max) {
          auto prof = badly_approximable_profile(alpha, n_max);
          return py::make_tuple(prof.argmin_n, prof.min_value);
        },
        py::arg("alpha"), py::arg("n_max"));

  m.def("shortest_vector_2d_cf",
        [](i64 g, i64 N) {
          auto cs = shortest_vector_2d_cf(g, N);
          py::dict d;
          d["num"] = cs.lambda.num;
          d["den"] = cs.lambda.den;
          d["value"] = cs.lambda.value();
          d["w"] = std::vector<i64>{cs.w[0], cs.w[1]};
          return d;
        },
        py::arg("g"), py::arg("N"));
  m.def("successive_minima_rank1",
        [](const std::vector<i64>& g, i64 N, const std::string& p) {
          auto sm = successive_minima(rank1_lattice(g, N), norm_from_name(p));
          py::dict d;
          d["lambda"] = sm.lambda;
          d["exact"] = sm.exact;
          d["den"] = sm.den;
          std::vector<i64> meas;
          for (const auto& w : sm.witness) meas.push_back(w.measure);
          d["measures"] = meas;
          return d;
        },
        py::arg("g"), py::arg("N"), py::arg("p") = "inf");
  m.def("frolov_minima",
        [](int d, const std::string& p) {
          return successive_minima(frolov_matrix(d), norm_from_name(p)).lambda;
        },
        py::arg("d"), py::arg("p") = "inf");
  m.def("admissibility_min_normform",
        [](int d, double R) {
          auto a = admissibility_min_normform(frolov_matrix(d), R);
          return py::make_tuple(a.min_product, a.argmin_k);
        },
        py::arg("d"), py::arg("R"));
  m.def("dual_shortest",
        [](const std::vector<i64>& g, i64 N, const std::string& p) {
          auto ds = dual_shortest(g, N, norm_from_name(p));
          py::dict d;
          d["h"] = ds.h;
          d["measure"] = ds.measure;
          d["value"] = ds.value;
          return d;
        },
        py::arg("g"), py::arg("N"), py::arg("p") = "1");
  m.def("kappa_primal",
        [](const std::vector<i64>& g, i64 N) {
          auto k = kappa_primal(g, N);
          return py::make_tuple(k.num, k.den);
        },
        py::arg("g"), py::arg("N"));
  m.def("kappa_dual", [](const std::vector<i64>& g, i64 N) { return kappa_dual(g, N); },
        py::arg("g"), py::arg("N"));
  m.def("verify_mesh_bound_via_kappa",
        [](const std::vector<i64>& g, i64 N, const std::string& p, int m_grid) {
          auto b = verify_mesh_bound_via_kappa(g, N, norm_from_name(p), m_grid);
          py::dict d;
          d["kappa_primal"] = py::make_tuple(b.kp.num, b.kp.den);
          d["kappa_dual"] = b.kd;
          d["product_reciprocal"] = b.product_reciprocal;
          d["rho_hi"] = b.rho_hi;
          return d;
        },
        py::arg("g"), py::arg("N"), py::arg("p") = "inf", py::arg("m_grid") = 0);

  m.def("search_generators",
        [](i64 N, int d, bool exhaustive, i64 samples, u64 seed, i64 g_min,
           double kappa_dual_min, double kappa_primal_min, double dstar_max,
           bool eval_dstar, bool eval_rho, int m_grid, i64 max_scan) {
          SearchConfig cfg;
          cfg.N = N;
          cfg.d = d;
          cfg.exhaustive = exhaustive;
          cfg.samples = samples;
          cfg.seed = seed;
          cfg.g_min = g_min;
          cfg.kappa_dual_min = kappa_dual_min;
          cfg.kappa_primal_min = kappa_primal_min;
          cfg.dstar_max = dstar_max;
          cfg.eval_dstar = eval_dstar;
          cfg.eval_rho = eval_rho;
          cfg.m_grid = m_grid;
          cfg.max_scan = max_scan;
          auto res = search_generators(cfg);
          py::dict out;
          out["scanned"] = res.scanned;
          out["passed"] = res.passed;
          out["fraction"] = res.fraction;
          out["truncated"] = res.truncated;
          py::list recs;
          for (const auto& r : res.records) {
            py::dict e;
            e["g"] = r.g;
            e["kappa_primal"] = py::make_tuple(r.kp.num, r.kp.den);
            e["kappa_dual"] = r.kd;
            if (r.has_dstar) e["dstar"] = r.dstar;
            if (r.has_rho) e["rho_hi"] = r.rho_hi;
            recs.append(e);
          }
          out["records"] = recs;
          return out;
        },
        py::arg("N"), py::arg("d") = 2, py::arg("exhaustive") = true,
        py::arg("samples") = 0, py::arg("seed") = 1, py::arg("g_min") = 0,
        py::arg("kappa_dual_min") = 0.0, py::arg("kappa_primal_min") = 0.0,
        py::arg("dstar_max") = -1.0, py::arg("eval_dstar") = false,
        py::arg("eval_rho") = false, py::arg("m_grid") = 0,
        py::arg("max_scan") = 1000000);

  m.def("run_verify_suite",
        [](const std::string& suite) {
          auto rep = run_verify_suite(suite);
          py::list rows;
          for (const auto& r : rep.rows) {
            py::dict e;
            e["name"] = r.name;
            e["measured"] = r.measured;
            e["relation"] = r.relation;
            e["bound"] = r.bound;
            e["pass"] = r.pass;
            rows.append(e);
          }
          py::dict out;
          out["rows"] = rows;
          out["all_pass"] = rep.all_pass();
          return out;
        },
        py::arg("suite") = "all");
}
