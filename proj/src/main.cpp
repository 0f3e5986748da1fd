// Command-line front door: builds the field/action contexts, runs the census,
// the common-neighbor verifications, the constructive finder, the bound
// evaluations, and the verification lab, and emits JSON reports (stdout or
// --out, atomically) plus human-readable summaries and progress on stderr.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

#include "baeract/report.hpp"

using namespace baeract;

namespace {

struct Config {
  unsigned q = 0, p = 0, m = 0;
  std::string gram = "antidiag";
  std::uint64_t seed = 1;
  unsigned trials = 200;
  unsigned jobs = 1;
  std::string cache;
  std::string out;
  unsigned max_reps = 0;  // survey cap; 0 = all at q=7, 2 otherwise
};

class Stopwatch {
public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double ms =
        std::chrono::duration<double, std::milli>(now - mark_).count();
    mark_ = now;
    return ms;
  }

private:
  std::chrono::steady_clock::time_point mark_ =
      std::chrono::steady_clock::now();
};

int resolve_q(Config& c) {
  if (c.q == 0 && c.p == 0) {
    std::cerr << "error: give --q or --p/--m\n";
    return 2;
  }
  if (c.q != 0 && c.p != 0) {
    std::cerr << "error: give either --q or --p/--m, not both\n";
    return 2;
  }
  if (c.q != 0) {
    if (c.q == 9)
      c.p = 3, c.m = 2;
    else
      c.p = c.q, c.m = 1;
  } else {
    if (c.m == 0) c.m = 1;
    unsigned long long v = 1;
    for (unsigned k = 0; k < c.m; ++k) v *= c.p;
    if (v > 13) {
      std::cerr << "error: q = " << v << " exceeds desk scale\n";
      return 2;
    }
    c.q = static_cast<unsigned>(v);
  }
  if (c.q != 7 && c.q != 9 && c.q != 11 && c.q != 13) {
    std::cerr << "error: q must be an odd prime power in {7, 9, 11, 13}; got "
              << c.q << "\n";
    return 2;
  }
  if (c.jobs < 1) {
    std::cerr << "error: --jobs must be at least 1\n";
    return 2;
  }
  return 0;
}

Gram gram_of(const Config& c) {
  return c.gram == "identity" ? Gram::identity : Gram::antidiag;
}

// Delivers one report: JSON to --out (atomically) or stdout — or into
// *capture when a combined run collects phases — and the summary to stderr.
void emit(const Config& c, const std::string& json, const std::string& text,
          std::string* capture = nullptr) {
  if (capture)
    *capture = json;
  else if (c.out.empty())
    std::cout << json;
  else
    write_file_atomic(c.out, json);
  std::cerr << text;
}

Action build_action(const Config& c, const Field& F, Timings& t) {
  Stopwatch w;
  std::cerr << "[build] enumerating the orbit at q=" << c.q << "...\n";
  Action A = c.cache.empty() ? Action(F, gram_of(c))
                             : Action(F, c.cache, gram_of(c));
  t["action_ms"] = w.lap();
  std::cerr << "[build] |Omega| = " << A.size() << "\n";
  return A;
}

int run_census(const Config& c, bool require_neighbors_only,
               std::string* capture = nullptr) {
  Field F(c.p, c.m);
  Timings t;
  Stopwatch w;
  Action A = build_action(c, F, t);
  std::cerr << "[census] classifying suborbits...\n";
  w.lap();
  const Census C = compute_census(A);
  t["census_ms"] = w.lap();
  const CensusOracle O = census_oracle(c.q);
  std::cerr << "[census] verifying common neighbors...\n";
  const NeighborReport N = verify_common_neighbors(A, C);
  t["neighbors_ms"] = w.lap();

  const std::string json = census_report_json(A, C, O, N, t);
  emit(c, json, census_report_text(A, C, O, N), capture);

  if (require_neighbors_only) return N.verified ? 0 : 1;
  return (census_matches(A, C, O) && N.verified) ? 0 : 1;
}

int run_construct(const Config& c) {
  if (gram_of(c) != Gram::antidiag) {
    std::cerr << "error: the constructive finder needs the antidiagonal "
                 "Gram\n";
    return 2;
  }
  Field F(c.p, c.m);
  Timings t;
  Action A = build_action(c, F, t);
  std::cerr << "[construct] classifying suborbits...\n";
  Stopwatch w;
  const Census C = compute_census(A);
  t["census_ms"] = w.lap();

  unsigned attempted = 0, found = 0;
  std::uint64_t tried = 0;
  std::vector<std::uint32_t> failures;
  for (std::size_t id = 1; id < C.suborbits.size(); ++id) {
    const std::uint32_t rep = C.suborbits[id].rep;
    const ConstructResult R = construct_common_neighbor(A, 0, rep);
    ++attempted;
    tried += R.tried;
    bool ok = R.found && is_base_pair_stabilizer(A, 0, R.witness) &&
              is_base_pair_stabilizer(A, rep, R.witness);
    if (ok)
      ++found;
    else
      failures.push_back(rep);
  }
  t["construct_ms"] = w.lap();

  std::ostringstream json, text;
  json << "{\n  \"q\": " << c.q << ",\n  \"construct\": {\n"
       << "    \"pairs_attempted\": " << attempted
       << ",\n    \"found\": " << found << ",\n    \"candidates_tried\": "
       << tried << ",\n    \"failures\": [";
  for (std::size_t i = 0; i < failures.size(); ++i)
    json << (i ? ", " : "") << failures[i];
  json << "]\n  },\n  \"timings\": {\"total_ms\": " << t["action_ms"] +
              t["census_ms"] + t["construct_ms"]
       << "}\n}\n";
  text << "constructive common neighbors: " << found << "/" << attempted
       << " representatives (" << tried << " candidates tried)\n";
  emit(c, json.str(), text.str());
  return failures.empty() ? 0 : 1;
}

int run_bounds(const Config& c, std::string* capture = nullptr) {
  const std::string json = bounds_report_json(c.q, c.p, c.m);
  emit(c, json, "bound tables for q=" + std::to_string(c.q) + " written\n",
       capture);
  return 0;
}

void add_violation(CheckLine& line, const std::string& what) {
  if (line.violations.size() < 32) line.violations.push_back(what);
}

int run_lab(const Config& c, std::string* capture = nullptr) {
  Field F(c.p, c.m);
  const unsigned q = c.q, d = F.d();
  Timings t;
  Stopwatch w;
  CheckMap checks;

  // --- frame systems and loci ------------------------------------------------
  std::cerr << "[lab] frame systems (" << c.trials << " per family)...\n";
  auto& lin = checks["determinant_is_linear_in_b"];
  auto& cap = checks["locus_solvable_cap"];
  auto& deg = checks["locus_degenerate_structure"];
  auto& cop = checks["locus_coprimality"];
  auto& third = checks["one_third_resolvent"];
  third.asserted = (d == 3);  // needs the cube map 3-to-1, i.e. q ≡ 2 (mod 3)
  auto& cube = checks["cube_condition_scope"];
  std::uint64_t cube_rejections_total = 0;
  for (FrameFamily fam : {FrameFamily::unit_det, FrameFamily::scaled_det}) {
    const bool unit = fam == FrameFamily::unit_det;
    std::mt19937_64 rng(c.seed + (unit ? 0 : 1));
    for (unsigned trial = 0; trial < c.trials; ++trial) {
      const FrameSystem sys = sample_frame_system(F, fam, rng);
      const std::string id = (unit ? "unit_det#" : "scaled_det#") +
                             std::to_string(trial);
      // determinant linearity on a sampled slice
      ++lin.checked;
      for (Fel a : F.subfield())
        for (Fel b : F.subfield()) {
          const Fel cc = F.subfield()[(a + b) % q];
          const CoeffPair fg = determinant_coefficients(F, sys, a, cc);
          if (pair_determinant(F, sys, a, b, cc) !=
              F.sub(F.mul(fg.f, b), fg.g)) {
            add_violation(lin, id);
            break;
          }
        }
      const LocusCounts L = count_loci(F, sys);
      ++cap.checked;
      if (L.solvable + L.cube_rejections > static_cast<std::uint64_t>(q) * q)
        add_violation(cap, id);
      ++deg.checked;
      if (unit ? !(L.degenerate <= q && L.degenerate_centered)
               : L.degenerate != 0)
        add_violation(deg, id);
      ++cop.checked;
      if (!L.coprime_off_center) add_violation(cop, id);
      ++third.checked;
      if (3 * L.solvable_off_diagonal > L.resolvent) add_violation(third, id);
      cube_rejections_total += L.cube_rejections;
    }
  }
  cube.checked = 2 * c.trials;
  // the cube-class condition is vacuous exactly when 3 does not divide q²−1,
  // i.e. when q is a power of 3
  if ((q % 3 == 0) != (cube_rejections_total == 0))
    add_violation(cube, "rejections=" + std::to_string(cube_rejections_total));
  t["loci_ms"] = w.lap();

  // --- curves and cubics -----------------------------------------------------
  std::cerr << "[lab] curve points and cubics...\n";
  auto& curve = checks["curve_point_bound"];
  {
    std::mt19937_64 rng(c.seed + 2);
    std::uniform_int_distribution<unsigned> dpick(1, 12);
    std::uniform_int_distribution<std::size_t> cpick(0, F.subfield().size() - 1);
    for (unsigned trial = 0; trial < c.trials; ++trial) {
      std::vector<Fel> g(dpick(rng) + 1);
      for (Fel& x : g) x = F.subfield()[cpick(rng)];
      while (g.back() == 0) g.back() = F.subfield()[cpick(rng)];
      const CurvePointCount R = count_curve_points(F, g);
      if (!R.absolutely_irreducible) continue;  // reducible inputs are skipped
      ++curve.checked;
      if (!R.bound_holds) add_violation(curve, "trial#" + std::to_string(trial));
    }
  }
  auto& cubic = checks["cubic_classification"];
  for (Fel a2 : F.subfield())
    for (Fel a1 : F.subfield())
      for (Fel a0 : F.subfield()) {
        ++cubic.checked;
        const CubicRootClass cls = classify_cubic(F, a2, a1, a0);
        const CubicRoots R = cubic_roots(F, a2, a1, a0);
        const bool ok =
            (cls == CubicRootClass::multiple_root && R.repeated) ||
            (cls == CubicRootClass::single_root && R.distinct == 1 &&
             !R.repeated) ||
            (cls == CubicRootClass::zero_or_three_roots &&
             (R.distinct == 0 || R.distinct == 3) && !R.repeated);
        if (!ok) add_violation(cubic, "cubic mismatch");
      }
  auto& rdisc = checks["resolvent_discriminant"];
  rdisc.checked = q;
  if (resolvent_discriminant_square_for_all(F) != (d == 3))
    add_violation(rdisc, "square-for-all disagreed with gcd(3,q+1)");
  t["curves_ms"] = w.lap();

  // --- orbit surveys -----------------------------------------------------------
  std::cerr << "[lab] building the orbit for surveys...\n";
  Action A = build_action(c, F, t);
  w.lap();
  const Census C = compute_census(A);
  t["census_ms"] = w.lap();
  const unsigned nreps = static_cast<unsigned>(C.suborbits.size() - 1);
  unsigned reps = c.max_reps ? std::min(c.max_reps, nreps)
                             : (q == 7 ? nreps : std::min(2u, nreps));
  std::cerr << "[lab] surveying " << reps << "/" << nreps
            << " suborbit representatives...\n";
  auto& laws = checks["survey_involution_products"];
  auto& fixlaw = checks["survey_pairwise_fix_law"];
  auto& counts = checks["survey_count_consistency"];
  auto& chain = checks["survey_chain_gap"];
  auto& cells = checks["survey_vanishing_cells"];
  auto& decomp = checks["survey_decomposition"];
  auto& shared = checks["survey_shared_involutions"];
  for (unsigned id = 1; id <= reps; ++id) {
    const PairSurvey S = pair_survey(A, C, C.suborbits[id].rep);
    const std::string tag = "rep#" + std::to_string(S.rep);
    ++laws.checked;
    if (!S.involution_product_laws_ok) add_violation(laws, tag);
    ++fixlaw.checked;
    if (!S.pairwise_fix_ok) add_violation(fixlaw, tag);
    if (d == 1 && S.orderp_nonfixing != 0) add_violation(fixlaw, tag + " split");
    ++counts.checked;
    if (!S.two_way_count_equal || !S.coefficient_identity_ok)
      add_violation(counts, tag);
    ++chain.checked;
    if (!S.chain_gap_explained) add_violation(chain, tag);
    ++cells.checked;
    if (!S.vanishing_cells_ok) add_violation(cells, tag);
    ++decomp.checked;
    if (!S.decomposition_identity_ok || !S.w_inside_nr_common)
      add_violation(decomp, tag);
    ++shared.checked;
    if (S.common_involutions != C.suborbits[id].involutions ||
        S.common_involutions > q + 2)
      add_violation(shared, tag);
  }
  t["surveys_ms"] = w.lap();

  // --- the excess criterion ------------------------------------------------------
  std::cerr << "[lab] common-neighbor excess over all representatives...\n";
  auto& excess = checks["common_neighbor_excess"];
  const CommonNeighborExcess E = common_neighbor_excess(A, C);
  excess.checked = nreps;
  if (!E.positive)
    add_violation(excess, "excess=" + std::to_string(E.excess) + " at rep " +
                              std::to_string(E.argmin_rep));
  t["excess_ms"] = w.lap();

  const std::string json = lab_report_json(q, c.seed, c.trials, checks, t);
  std::ostringstream text;
  text << lab_report_text(q, c.seed, c.trials, checks)
       << "excess=" << E.excess << " (min common non-neighbors "
       << E.min_pair_nonregular << ", series value "
       << E.series_value << ")\n";
  emit(c, json, text.str(), capture);
  return all_checks_pass(checks) ? 0 : 1;
}

int run_all(const Config& c) {
  // one combined JSON document; the exit status is the worst of the phases
  std::string cj, lj, bj;
  const int a = run_census(c, false, &cj);
  const int b = run_lab(c, &lj);
  const int d = run_bounds(c, &bj);
  nlohmann::ordered_json all;
  all["q"] = c.q;
  all["census"] = nlohmann::ordered_json::parse(cj);
  all["lab"] = nlohmann::ordered_json::parse(lj);
  all["bounds"] = nlohmann::ordered_json::parse(bj);
  emit(c, all.dump(2) + "\n", "");
  return std::max({a, b, d});
}

void add_common(CLI::App* s, Config& c, bool with_trials) {
  s->add_option("--q", c.q, "field size q (odd prime power, 7..13)");
  s->add_option("--p", c.p, "characteristic (with --m)");
  s->add_option("--m", c.m, "field degree (with --p)");
  s->add_option("--gram", c.gram, "Hermitian form model")
      ->check(CLI::IsMember({"identity", "antidiag"}));
  s->add_option("--seed", c.seed, "seed for all sampling");
  if (with_trials)
    s->add_option("--trials", c.trials, "sampled systems per family");
  s->add_option("--jobs", c.jobs, "parallelism degree (reserved; runs are "
                                  "single-threaded and deterministic)");
  s->add_option("--cache", c.cache, "orbit cache file (built if absent)");
  s->add_option("--out", c.out, "report file (stdout when omitted)");
  s->add_option("--max-reps", c.max_reps,
                "cap on surveyed representatives (0 = all at q=7, else 2)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact engine for the primitive unitary action on subplanes"};
  app.require_subcommand(1);
  Config cfg;
  CLI::App* census = app.add_subcommand("census", "suborbit census vs closed forms");
  CLI::App* neighbors =
      app.add_subcommand("neighbors", "common-neighbor verification");
  CLI::App* construct =
      app.add_subcommand("construct", "search-free common-neighbor finder");
  CLI::App* bounds = app.add_subcommand("bounds", "bound tables for q");
  CLI::App* lab = app.add_subcommand("lab", "counting-law verification lab");
  CLI::App* all = app.add_subcommand("all", "census + lab + bounds");
  for (CLI::App* s : {census, neighbors, construct, bounds, lab, all})
    add_common(s, cfg, s == lab || s == all);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (const int bad = resolve_q(cfg)) return bad;

  try {
    if (census->parsed()) return run_census(cfg, false);
    if (neighbors->parsed()) return run_census(cfg, true);
    if (construct->parsed()) return run_construct(cfg);
    if (bounds->parsed()) return run_bounds(cfg);
    if (lab->parsed()) return run_lab(cfg);
    if (all->parsed()) return run_all(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
