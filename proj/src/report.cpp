#include "baeract/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace baeract {

namespace {

using Json = nlohmann::ordered_json;

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << r.num;
  if (r.den != 1) os << '/' << r.den;
  return os.str();
}

Json series_json(const SeriesBound& s, unsigned q) {
  return Json{{"c5", rational_str(s.c5)},
              {"c4", rational_str(s.c4)},
              {"c4_sqrt", rational_str(s.s4)},
              {"value", s.value(q)}};
}

Json rows_json(const std::vector<ClassCount>& rows) {
  Json arr = Json::array();
  for (const ClassCount& r : rows)
    arr.push_back(Json{{"class", r.label},
                       {"order", r.stab_order},
                       {"length", r.length},
                       {"fix", r.fix},
                       {"count", r.count}});
  return arr;
}

Json oracle_rows_json(const std::vector<OracleRow>& rows) {
  Json arr = Json::array();
  for (const OracleRow& r : rows)
    arr.push_back(Json{{"class", r.label},
                       {"order", r.stab_order},
                       {"length", r.length},
                       {"fix", r.fix},
                       {"count", r.count}});
  return arr;
}

bool rows_match(const std::vector<ClassCount>& got,
                const std::vector<OracleRow>& want) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i)
    if (got[i].label != want[i].label ||
        got[i].stab_order != want[i].stab_order ||
        got[i].length != want[i].length || got[i].fix != want[i].fix ||
        got[i].count != want[i].count)
      return false;
  return true;
}

std::uint64_t class_count(const std::vector<ClassCount>& rows,
                          const std::string& label) {
  for (const ClassCount& r : rows)
    if (r.label == label) return r.count;
  return 0;
}

}  // namespace

bool census_matches(const Action& A, const Census& C, const CensusOracle& O) {
  return rows_match(aggregate_census(C), O.rows) && O.omega == A.size() &&
         O.gamma_r == C.gamma_r;
}

bool all_checks_pass(const CheckMap& checks) {
  for (const auto& [tag, line] : checks)
    if (line.asserted && !line.violations.empty()) return false;
  return true;
}

std::string census_report_json(const Action& A, const Census& C,
                               const CensusOracle& O, const NeighborReport& N,
                               const Timings& timings) {
  const Field& F = A.field();
  const std::vector<ClassCount> rows = aggregate_census(C);

  Json j;
  j["q"] = F.q();
  j["p"] = F.p();
  j["m"] = F.m();
  j["d"] = F.d();
  j["gram"] = A.plane().gram() == Gram::identity ? "identity" : "antidiag";
  j["omega_size"] = A.size();
  j["suborbits"] = rows_json(rows);
  j["gamma_r"] = C.gamma_r;
  j["expected"] = Json{{"omega_size", O.omega},
                       {"gamma_r", O.gamma_r},
                       {"suborbits", oracle_rows_json(O.rows)}};
  j["matches_expected"] = census_matches(A, C, O);
  j["order2_split"] =
      Json{{"enumerated",
            Json::array({class_count(rows, "Z2a"), class_count(rows, "Z2b")})},
           {"congruence_block", Json::array({O.z2_congruence_split[0],
                                             O.z2_congruence_split[1]})},
           {"agrees", O.z2_split_agrees}};
  Json witnesses = Json::array();
  for (const NeighborWitness& w : N.witnesses)
    witnesses.push_back(Json{{"rep", w.rep}, {"neighbor", w.neighbor}});
  j["common_neighbor"] =
      Json{{"verified", N.verified}, {"witnesses", witnesses}};
  j["timings"] = Json(timings);
  return j.dump(2) + "\n";
}

std::string lab_report_json(unsigned q, std::uint64_t seed, unsigned trials,
                            const CheckMap& checks, const Timings& timings) {
  Json j;
  j["q"] = q;
  j["seed"] = seed;
  j["trials"] = trials;
  Json cj;
  for (const auto& [tag, line] : checks)
    cj[tag] = Json{{"checked", line.checked},
                   {"violations", line.violations},
                   {"asserted", line.asserted}};
  j["checks"] = cj;
  j["all_asserted_pass"] = all_checks_pass(checks);
  j["timings"] = Json(timings);
  return j.dump(2) + "\n";
}

std::string bounds_report_json(unsigned q, unsigned p, unsigned m) {
  const unsigned d = q % 3 == 2 ? 3 : 1;
  Json j;
  j["q"] = q;
  j["d"] = d;
  j["hypothesis_sqrt_q_ge_15d"] =
      static_cast<double>(q) >= 225.0 * d * d;  // √q ≥ 15d, squared
  j["common_non_neighbor_lower"] =
      series_json(common_non_neighbor_series_bound(q), q);
  const DecompositionBounds D = decomposition_series_bounds(q);
  j["decomposition"] = Json{{"a_lower", series_json(D.a_lower, q)},
                            {"b_upper", series_json(D.b_upper, q)},
                            {"c_upper", series_json(D.c_upper, q)},
                            {"d_upper", series_json(D.d_upper, q)}};
  j["regular_points_lower_bound"] = regular_points_lower_bound(q);
  Json fixed;
  fixed["2"] = rational_str(fixed_regular_suborbits_bound(q, p, m, 2));
  for (unsigned r = 3; r <= m; r += 2) {
    bool prime = r >= 2;
    for (unsigned k = 2; k * k <= r; ++k)
      if (r % k == 0) prime = false;
    if (prime && m % r == 0)
      fixed[std::to_string(r)] =
          rational_str(fixed_regular_suborbits_bound(q, p, m, r));
  }
  j["fixed_regular_suborbits_upper"] = fixed;
  return j.dump(2) + "\n";
}

std::string census_report_text(const Action& A, const Census& C,
                               const CensusOracle& O, const NeighborReport& N) {
  const Field& F = A.field();
  const std::vector<ClassCount> rows = aggregate_census(C);
  std::ostringstream os;
  os << "q=" << F.q() << " (p=" << F.p() << ", m=" << F.m()
     << ", d=" << F.d() << ")  |Omega|=" << A.size()
     << (A.size() == O.omega ? " (as expected)" : " (MISMATCH)") << "\n";
  os << "class            order  length    fix  count\n";
  for (const ClassCount& r : rows) {
    os.width(15);
    os << std::left << r.label << std::right << "  ";
    os.width(5);
    os << r.stab_order;
    os.width(8);
    os << r.length;
    os.width(7);
    os << r.fix;
    os.width(7);
    os << r.count << "\n";
  }
  os << "regular members: " << C.gamma_r
     << (C.gamma_r == O.gamma_r ? " (as expected)" : " (MISMATCH)") << "\n";
  os << "rows match closed forms: " << (rows_match(rows, O.rows) ? "yes" : "NO")
     << "\n";
  os << "order-2 split vs congruence-block form: "
     << (O.z2_split_agrees ? "agrees" : "DIFFERS (enumerated truth reported)")
     << "\n";
  os << "common neighbor for every suborbit representative: "
     << (N.verified ? "verified" : "FAILED") << " (" << N.witnesses.size()
     << " witnesses)\n";
  return os.str();
}

std::string lab_report_text(unsigned q, std::uint64_t seed, unsigned trials,
                            const CheckMap& checks) {
  std::ostringstream os;
  os << "q=" << q << " seed=" << seed << " trials=" << trials << "\n";
  for (const auto& [tag, line] : checks) {
    os << (line.violations.empty() ? "pass " : "FAIL ");
    os.width(34);
    os << std::left << tag << std::right << " checked=" << line.checked;
    if (!line.asserted) os << " (report-only)";
    if (!line.violations.empty())
      os << " violations=" << line.violations.size();
    os << "\n";
  }
  os << (all_checks_pass(checks) ? "all asserted checks pass"
                                 : "ASSERTED CHECK FAILED")
     << "\n";
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out << content;
    out.flush();
    if (!out.good()) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("rename failed: " + path);
  }
}

}  // namespace baeract
