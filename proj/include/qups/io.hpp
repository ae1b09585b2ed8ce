#pragma once

#include <iosfwd>
#include <string>

#include "qups/metrics.hpp"
#include "qups/pointset.hpp"
#include "qups/search.hpp"

namespace qups {

// qups v1 point-set file:
//   qups 1 <d> <N> <repr>      repr in {rat, f64}
//   # family=<family> params=<params>     (optional origin comment)
//   <N data lines: d fields, "num/den" in lowest terms or %.17g decimals>
// '#' lines are comments; all values lie in [0,1).
std::string serialize_pointset(const PointSet& P);
void write_pointset(const std::string& path, const PointSet& P);
PointSet parse_pointset(std::istream& in);
PointSet read_pointset(const std::string& path);

// QUReport as JSON: documented metric keys plus tool version and a full
// parameter echo; keys sorted, bytes deterministic for fixed inputs.
std::string report_json(const QUReport& r, const std::string& args_echo);

// CSV emission (one row per prefix / per passing vector)
std::string profile_csv(const PrefixProfile& prof);
std::string search_csv(int d, const SearchResult& res);
std::string search_summary_json(const SearchConfig& cfg, const SearchResult& res,
                                const std::string& args_echo);

std::string fmt17(double v);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qups
