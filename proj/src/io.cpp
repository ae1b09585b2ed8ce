#include "qups/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "qups/errors.hpp"
#include "qups/version.hpp"

namespace qups {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::domain_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::domain_error("write failed: " + path);
}

std::string serialize_pointset(const PointSet& P) {
  std::ostringstream out;
  out << "qups 1 " << P.d << ' ' << P.n() << ' ' << (P.exact ? "rat" : "f64") << '\n';
  if (!P.family.empty()) out << "# family=" << P.family << " params=" << P.params << '\n';
  for (i64 i = 0; i < P.n(); ++i) {
    for (int j = 0; j < P.d; ++j) {
      if (j) out << ' ';
      if (P.exact) {
        i64 num = P.num_at(i, j);
        i64 g = gcd_i64(num, P.den);
        out << num / g << '/' << P.den / g;
      } else {
        out << fmt17(P.at(i, j));
      }
    }
    out << '\n';
  }
  return out.str();
}

void write_pointset(const std::string& path, const PointSet& P) {
  write_text_file(path, serialize_pointset(P));
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// "key=value;key=value" lookup; empty string when absent
std::string param_value(const std::string& params, const std::string& key) {
  size_t pos = 0;
  while (pos < params.size()) {
    size_t end = params.find(';', pos);
    if (end == std::string::npos) end = params.size();
    std::string kv = params.substr(pos, end - pos);
    size_t eq = kv.find('=');
    if (eq != std::string::npos && kv.substr(0, eq) == key) return kv.substr(eq + 1);
    pos = end + 1;
  }
  return "";
}

}  // namespace

PointSet parse_pointset(std::istream& in) {
  std::string line;
  std::string family, params;
  bool have_header = false;
  int d = 0;
  i64 n = 0;
  bool exact = false;
  std::vector<std::pair<i64, i64>> rat_rows;  // (num, den) per field
  std::vector<double> f64_rows;
  i64 rows = 0;

  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const std::string tag = "# family=";
      if (line.rfind(tag, 0) == 0) {
        std::string rest = line.substr(tag.size());
        size_t sp = rest.find(" params=");
        if (sp != std::string::npos) {
          family = rest.substr(0, sp);
          params = rest.substr(sp + 8);
        }
      }
      continue;
    }
    if (!have_header) {
      std::istringstream hs(t);
      std::string magic, ver, repr;
      if (!(hs >> magic >> ver >> d >> n >> repr) || magic != "qups" || ver != "1")
        throw std::domain_error("pointset file: bad header (want 'qups 1 <d> <N> <repr>')");
      if (d < 1) throw std::domain_error("pointset file: d must be >= 1");
      if (n < 1) throw std::domain_error("pointset file: N must be >= 1");
      if (repr == "rat") exact = true;
      else if (repr == "f64") exact = false;
      else throw std::domain_error("pointset file: repr must be rat or f64");
      have_header = true;
      continue;
    }
    if (rows == n) throw std::domain_error("pointset file: more data lines than declared N");
    std::istringstream ls(t);
    for (int j = 0; j < d; ++j) {
      std::string field;
      if (!(ls >> field)) throw std::domain_error("pointset file: short data line");
      if (exact) {
        size_t slash = field.find('/');
        if (slash == std::string::npos)
          throw std::domain_error("pointset file: rat field needs num/den");
        i64 num, den;
        try {
          num = std::stoll(field.substr(0, slash));
          den = std::stoll(field.substr(slash + 1));
        } catch (const std::exception&) {
          throw std::domain_error("pointset file: unparsable rational field '" + field + "'");
        }
        if (den <= 0) throw std::domain_error("pointset file: denominator must be positive");
        if (num < 0 || num >= den)
          throw std::domain_error("pointset file: value outside [0,1)");
        i64 g = gcd_i64(num, den);
        rat_rows.emplace_back(num / g, den / g);
      } else {
        double v;
        try {
          v = std::stod(field);
        } catch (const std::exception&) {
          throw std::domain_error("pointset file: unparsable float field '" + field + "'");
        }
        if (!(v >= 0.0 && v < 1.0))
          throw std::domain_error("pointset file: value outside [0,1)");
        f64_rows.push_back(v);
      }
    }
    std::string extra;
    if (ls >> extra) throw std::domain_error("pointset file: too many fields on data line");
    ++rows;
  }
  if (!have_header) throw std::domain_error("pointset file: missing header");
  if (rows != n) throw std::domain_error("pointset file: fewer data lines than declared N");

  PointSet P;
  P.d = d;
  P.exact = exact;
  P.family = family.empty() ? "custom" : family;
  P.params = params;
  if (exact) {
    i64 D = 1;
    for (auto& [num, den] : rat_rows) D = lcm_checked(D, den, "pointset denominator");
    P.exact = true;
    P.den = D;
    std::vector<i64> row(d);
    for (size_t i = 0; i < rat_rows.size(); i += d) {
      for (int j = 0; j < d; ++j)
        row[j] = mul_checked(rat_rows[i + j].first, D / rat_rows[i + j].second, "pointset");
      P.push_exact(row);
    }
  } else {
    std::vector<double> row(d);
    for (size_t i = 0; i < f64_rows.size(); i += d) {
      for (int j = 0; j < d; ++j) row[j] = f64_rows[i + j];
      P.push_float(row);
    }
  }
  // rank-1 style origin comment restores the generating vector for dual figures
  std::string gs = param_value(params, "g"), Ns = param_value(params, "N");
  if (!gs.empty() && !Ns.empty()) {
    try {
      std::vector<i64> g;
      size_t pos = 0;
      while (pos <= gs.size()) {
        size_t c = gs.find(',', pos);
        if (c == std::string::npos) c = gs.size();
        g.push_back(std::stoll(gs.substr(pos, c - pos)));
        pos = c + 1;
      }
      if (static_cast<int>(g.size()) == d) {
        P.gvec = g;
        P.modulus = std::stoll(Ns);
      }
    } catch (const std::exception&) {
      // malformed origin comment: ignore, metrics stay file-driven
    }
  }
  return P;
}

PointSet read_pointset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::domain_error("cannot open: " + path);
  return parse_pointset(in);
}

std::string report_json(const QUReport& r, const std::string& args_echo) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["args"] = args_echo;
  j["n"] = r.n;
  j["d"] = r.d;
  j["p"] = norm_name(r.p);
  j["m_grid"] = r.m_grid;
  j["family"] = r.family;
  j["params"] = r.params;
  if (r.has_sep) {
    j["q"] = r.q;
    j["q_exact"] = r.q_exact;
  }
  if (r.has_cover) {
    j["h_lo"] = r.h_lo;
    j["h_hi"] = r.h_hi;
  }
  if (r.has_sep && r.has_cover) {
    j["rho_lo"] = r.rho_lo;
    j["rho_hi"] = r.rho_hi;
  }
  if (r.has_dstar) {
    j["dstar"] = r.dstar;
    j["dstar_is_lb"] = r.dstar_is_lb;
  }
  if (r.has_dual) {
    j["kappa"] = r.kappa;
    j["sigma"] = r.sigma;
  }
  return j.dump(2) + "\n";
}

std::string profile_csv(const PrefixProfile& prof) {
  std::ostringstream out;
  out << "index,n,d,p,q,h_lo,h_hi,rho_lo,rho_hi,dstar,dstar_is_lb,kappa,sigma,nested\n";
  for (size_t i = 0; i < prof.reports.size(); ++i) {
    const QUReport& r = prof.reports[i];
    out << prof.indices[i] << ',' << r.n << ',' << r.d << ',' << norm_name(r.p) << ',';
    if (r.has_sep) out << fmt17(r.q);
    out << ',';
    if (r.has_cover) out << fmt17(r.h_lo);
    out << ',';
    if (r.has_cover) out << fmt17(r.h_hi);
    out << ',';
    if (r.has_sep && r.has_cover) out << fmt17(r.rho_lo);
    out << ',';
    if (r.has_sep && r.has_cover) out << fmt17(r.rho_hi);
    out << ',';
    if (r.has_dstar) out << fmt17(r.dstar);
    out << ',';
    if (r.has_dstar) out << (r.dstar_is_lb ? 1 : 0);
    out << ',';
    if (r.has_dual) out << r.kappa;
    out << ',';
    if (r.has_dual) out << fmt17(r.sigma);
    out << ',';
    if (i > 0 && i - 1 < prof.nested.size() && prof.nested[i - 1] >= 0)
      out << prof.nested[i - 1];
    out << '\n';
  }
  return out.str();
}

std::string search_csv(int d, const SearchResult& res) {
  std::ostringstream out;
  for (int j = 0; j < d; ++j) out << 'g' << (j + 1) << ',';
  out << "kappa_primal,kappa_dual,dstar,rho_hi\n";
  for (const SearchRecord& rec : res.records) {
    for (i64 gj : rec.g) out << gj << ',';
    out << fmt17(rec.kp.value()) << ',' << rec.kd << ',';
    if (rec.has_dstar) out << fmt17(rec.dstar);
    out << ',';
    if (rec.has_rho) out << fmt17(rec.rho_hi);
    out << '\n';
  }
  return out.str();
}

std::string search_summary_json(const SearchConfig& cfg, const SearchResult& res,
                                const std::string& args_echo) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["args"] = args_echo;
  j["N"] = cfg.N;
  j["d"] = cfg.d;
  j["mode"] = cfg.exhaustive ? "exhaustive" : "random";
  if (!cfg.exhaustive) {
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
  }
  j["g_min"] = cfg.g_min;
  j["kappa_dual_min"] = cfg.kappa_dual_min;
  j["kappa_primal_min"] = cfg.kappa_primal_min;
  if (cfg.dstar_max >= 0.0) j["dstar_max"] = cfg.dstar_max;
  j["scanned"] = res.scanned;
  j["passed"] = res.passed;
  j["fraction"] = res.fraction;
  j["truncated"] = res.truncated;
  return j.dump(2) + "\n";
}

}  // namespace qups
