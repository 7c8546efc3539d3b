// knotfert: command-line front end.
//
// Every command prints one JSON RunReport on stdout:
//   {"command": ..., "config": ..., "results": ..., "timing_ms": ..., "cache": ...}
// "results" depends only on the inputs and config.  Errors print
//   {"error": {"kind": ..., "message": ..., "exit_code": ...}}
// and exit with the code of the error class (see README).

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "knotfert/knotfert.hpp"

using namespace knotfert;
using nlohmann::json;

namespace {

struct Common {
  std::string table_path;
  std::string cache_dir;
  std::string format = "json";
  int limit = kDefaultEnumerationLimit;
  int jobs = 1;
  bool no_timing = false;
};

KnotTable open_table(const Common& c) {
  if (c.table_path.empty()) return load_bundled_table();
  return load_table(c.table_path);
}

std::string cache_dir(const Common& c) {
  if (!c.cache_dir.empty()) return c.cache_dir;
  if (const char* env = std::getenv("KNOTFERT_CACHE"); env && *env) return env;
  return "";
}

json knot_json(const KnotId& k) {
  return {{"name", k.name}, {"chirality", to_string(k.chirality)}, {"id", k.to_string()}};
}

json stats_json(const DiagramStats& s) {
  return {{"c", s.c}, {"s", s.s}, {"g", s.g}, {"w", s.w}};
}

json identification_json(const Identification& id) {
  json m = json::array();
  for (const auto& k : id.matches) m.push_back(knot_json(k));
  return {{"status", to_string(id.status)}, {"matches", m}, {"jones", id.jones.to_string()},
          {"jones_pairs", id.jones.to_pairs()}, {"det", id.det}};
}

json supported_json(const Shadow& s, const SupportedSet& set) {
  json knots = json::array(), residue = json::array();
  for (const auto& k : set.knots) {
    json e = knot_json(k.knot);
    e["witness"] = k.witness.to_string();
    e["diagram"] = serialize_diagram(apply(s, k.witness));
    e["count"] = k.count;
    knots.push_back(e);
  }
  for (const auto& r : set.residue) {
    json cands = json::array();
    for (const auto& k : r.candidates) cands.push_back(knot_json(k));
    residue.push_back({{"status", to_string(r.status)},
                       {"candidates", cands},
                       {"jones", r.jones.to_string()},
                       {"det", r.det},
                       {"witness", r.witness.to_string()},
                       {"count", r.count}});
  }
  return {{"shadow", serialize_shadow(s)},
          {"fingerprint", shadow_fingerprint(s)},
          {"c", set.c},
          {"s", set.s},
          {"g", set.g},
          {"braid_index_upper", set.s},
          {"resolutions", set.resolutions},
          {"supported", knots},
          {"residue", residue}};
}

/// Wraps a command: timing, cache counters, report assembly, CSV projection.
struct Report {
  std::string command;
  json config;
  json results;
  std::string csv;
  std::size_t cache_hits = 0, cache_misses = 0;
  std::vector<std::string> warnings;
};

void emit(const Report& r, const Common& c, double ms) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  if (c.format == "csv") {
    std::cout << r.csv;
    return;
  }
  json out{{"command", r.command}, {"config", r.config}, {"results", r.results},
           {"cache", {{"hits", r.cache_hits}, {"misses", r.cache_misses}}}};
  if (!c.no_timing) out["timing_ms"] = ms;
  std::cout << out.dump(2) << '\n';
}

json common_config(const Common& c) {
  return {{"table", c.table_path.empty() ? data_dir() + "/knot_table.csv" : c.table_path},
          {"limit", c.limit},
          {"jobs", c.jobs},
          {"format", c.format}};
}

// ------------------------------------------------------------------ commands

Report cmd_resolve(const Common& c, const std::string& file) {
  Report r;
  r.command = "resolve";
  r.config = common_config(c);
  r.config["input"] = file;
  const KnotTable table = open_table(c);
  SupportOptions opt;
  opt.enumeration = {c.limit, c.jobs};
  std::unique_ptr<ResultCache> cache;
  if (const auto dir = cache_dir(c); !dir.empty()) {
    cache = std::make_unique<ResultCache>(dir, table_digest(table));
    r.config["cache_dir"] = dir;
  }
  r.results = json::array();
  std::ostringstream csv;
  csv << "shadow,knot,chirality,witness,count\n";
  for (const auto& text : read_pd_file(file)) {
    const Shadow s = parse_shadow(text);
    const SupportedSet set = supported_set_canonical(s, table, opt, cache.get());
    r.results.push_back(supported_json(s, set));
    const std::string pd = serialize_shadow(s);
    for (const auto& k : set.knots)
      csv << detail::csv_quote(pd) << ',' << k.knot.name << ',' << to_string(k.knot.chirality)
          << ',' << k.witness.to_string() << ',' << k.count << '\n';
    for (const auto& x : set.residue)
      csv << detail::csv_quote(pd) << ",?" << to_string(x.status) << ",," << x.witness.to_string()
          << ',' << x.count << '\n';
  }
  r.csv = csv.str();
  if (cache) {
    r.cache_hits = cache->hits();
    r.cache_misses = cache->misses();
    r.warnings = cache->warnings();
  }
  return r;
}

Report cmd_identify(const Common& c, const std::string& input, std::optional<int> bound) {
  Report r;
  r.command = "identify";
  r.config = common_config(c);
  r.config["input"] = input;
  if (bound) r.config["bound"] = *bound;
  const KnotTable table = open_table(c);
  std::vector<std::string> pds;
  if (input.find('[') != std::string::npos || input == "U") pds.push_back(input);
  else pds = read_pd_file(input);
  r.results = json::array();
  std::ostringstream csv;
  csv << "diagram,status,knot,chirality,det\n";
  for (const auto& text : pds) {
    const Diagram d = parse_diagram(text);
    const int b = bound.value_or(std::min(d.crossing_count(), table.horizon()));
    const auto id = identify(d, b, table);
    r.results.push_back({{"diagram", serialize_diagram(d)},
                         {"stats", stats_json(stats(d))},
                         {"bound", b},
                         {"identification", identification_json(id)}});
    const std::string pd = detail::csv_quote(serialize_diagram(d));
    if (id.matches.empty()) csv << pd << ',' << to_string(id.status) << ",,," << id.det << '\n';
    for (const auto& k : id.matches)
      csv << pd << ',' << to_string(id.status) << ',' << k.name << ',' << to_string(k.chirality)
          << ',' << id.det << '\n';
  }
  r.csv = csv.str();
  return r;
}

struct FertilityArgs {
  std::string knot;
  std::string manifest;
  std::optional<int> upto;
  bool strict = false;
  bool exclude_unknot = false;
};

Report cmd_fertility(const Common& c, const FertilityArgs& a) {
  Report r;
  r.command = "fertility";
  const KnotTable table = open_table(c);
  const auto& rec = table.at(a.knot);
  const std::string manifest =
      a.manifest.empty() ? data_dir() + "/manifests/" + a.knot + ".json" : a.manifest;
  const int n = a.upto.value_or(std::max(0, rec.c - 1));
  r.config = common_config(c);
  r.config["knot"] = a.knot;
  r.config["manifest"] = manifest;
  r.config["upto"] = n;
  r.config["strict_chirality"] = a.strict;
  r.config["include_unknot"] = !a.exclude_unknot;
  if (n > table.horizon())
    throw HorizonError("--upto " + std::to_string(n) + " exceeds the table horizon " +
                       std::to_string(table.horizon()));

  DiagramSet ds = load_diagram_set(manifest);
  if (ds.knot.name != a.knot)
    throw DataError(manifest + " describes " + ds.knot.name + ", not " + a.knot);
  FertilityOptions opt;
  opt.support.enumeration = {c.limit, c.jobs};
  opt.include_unknot = !a.exclude_unknot;
  opt.strict_chirality = a.strict;
  std::unique_ptr<ResultCache> cache;
  if (const auto dir = cache_dir(c); !dir.empty()) {
    cache = std::make_unique<ResultCache>(dir, table_digest(table));
    r.config["cache_dir"] = dir;
  }
  const FertilityAnalysis fa(ds, table, opt, [&](const Shadow& s) {
    return supported_set_canonical(s, table, opt.support, cache.get());
  });
  const auto rep = fa.n_fertile(n);

  json cands = json::array();
  std::ostringstream csv;
  csv << "candidate,supported,undecided,diagram,witness\n";
  for (const auto& st : rep.candidates) {
    json e = knot_json(st.knot);
    e["supported"] = st.supported;
    e["undecided"] = st.undecided;
    if (st.supported) {
      e["diagram"] = st.diagram;
      e["witness"] = st.witness->to_string();
    }
    cands.push_back(e);
    csv << st.knot.to_string() << ',' << st.supported << ',' << st.undecided << ','
        << (st.supported ? std::to_string(st.diagram) : "") << ','
        << (st.supported ? st.witness->to_string() : "") << '\n';
  }
  const auto bounds = fertility_upper_bounds(rec.c, rec.b);
  json bj{{"general", bounds.general}, {"best", bounds.best()}};
  if (bounds.braid3) bj["braid3"] = *bounds.braid3;
  const auto p2 = prop2_witness_check(ds, rec.g);
  json shadows = json::array();
  for (std::size_t i = 0; i < ds.diagrams.size(); ++i)
    shadows.push_back(supported_json(forget(ds.diagrams[i]), fa.supported_sets()[i]));
  r.results = {
      {"knot", {{"name", rec.name}, {"c", rec.c}, {"b", rec.b}, {"g", rec.g}}},
      {"diagrams", ds.diagrams.size()},
      {"complete", ds.complete},
      {"n", n},
      {"verdict", to_string(rep.verdict)},
      {"missing", rep.missing()},
      {"candidates", cands},
      {"fertility_lower", fa.fertility_number_lower()},
      {"upper_bounds", bj},
      {"main_theorem", to_string(main_theorem_verdict(rec.c, rec.b))},
      {"corollary_braid_bound", {{"bound", corollary_braid_bound(rec.c)},
                                 {"satisfied", rec.b <= corollary_braid_bound(rec.c)}}},
      {"minimal_diagram_witness", {{"s_bound", p2.s_bound},
                 {"min_s", p2.min_s},
                 {"witness_diagram", p2.witness},
                 {"s_ok", p2.s_ok},
                 {"genus_lhs", p2.genus_lhs.to_string()},
                 {"genus_rhs", p2.genus_rhs.to_string()},
                 {"genus_ok", p2.genus_ok},
                 {"holds", p2.holds()}}},
      {"shadows", shadows}};
  r.csv = csv.str();
  if (cache) {
    r.cache_hits = cache->hits();
    r.cache_misses = cache->misses();
    r.warnings = cache->warnings();
  }
  return r;
}

Report cmd_braid3(const Common& c, const std::string& word, const BandSearchOptions& so) {
  Report r;
  r.command = "braid3";
  r.config = common_config(c);
  r.config["word"] = word;
  r.config["depth"] = so.depth;
  r.config["budget"] = so.budget;
  const BandWord w = parse_band_word(word);
  const auto a = w.counts();
  if (!closes_to_knot(w))
    throw NonKnotClosureError("closure of '" + w.to_string() +
                              "' is not a knot (permutation is not a 3-cycle)");
  const auto bg = bennequin_genus(w, so);
  const KnotTable table = open_table(c);
  const Diagram d = closure_pd(w);
  const int bound = std::min(crossing_count(w), table.horizon());
  const auto id = identify(d, bound, table);
  r.results = {{"band_word", w.to_string()},
               {"sigma_word", to_string(to_sigma(w))},
               {"length", w.length()},
               {"A", {a[0], a[1], a[2]}},
               {"crossing_count", crossing_count(w)},
               {"min_band_length", {{"value", bg.search.value},
                                    {"exact", bg.search.exact},
                                    {"witness", bg.search.witness.to_string()},
                                    {"states", bg.search.states},
                                    {"layers", bg.search.layers}}},
               {"bennequin_genus", {{"g", bg.g}, {"exact", bg.exact}}},
               {"closure", {{"diagram", serialize_diagram(d)},
                            {"stats", stats_json(stats(d))},
                            {"bound", bound},
                            {"identification", identification_json(id)}}}};
  std::ostringstream csv;
  csv << "word,length,A1,A2,A3,crossing_count,min_length,exact,genus,closure\n"
      << detail::csv_quote(w.to_string()) << ',' << w.length() << ',' << a[0] << ',' << a[1] << ','
      << a[2] << ',' << crossing_count(w) << ',' << bg.search.value << ',' << bg.exact << ','
      << bg.g << ',' << (id.identified() ? id.knot().to_string() : to_string(id.status)) << '\n';
  r.csv = csv.str();
  return r;
}

json threshold_json(const ThresholdDerivation& t) {
  return {{"parity", t.parity},
          {"chain", t.chain},
          {"bound", t.bound.to_string()},
          {"max_c", t.max_c},
          {"first_excluded", t.first_excluded},
          {"sharp", threshold_is_sharp(t, t.parity == "even")}};
}

Report cmd_bounds(const Common& c, int cr, std::optional<int> b, bool parity_auto) {
  Report r;
  r.command = "bounds";
  r.config = {{"c", cr}, {"parity_auto", parity_auto}, {"format", c.format}};
  if (b) r.config["b"] = *b;
  if (cr < 0) throw ValidationError("--c must be >= 0");
  json thresholds = json::array();
  if (!parity_auto || cr % 2 == 0) thresholds.push_back(threshold_json(derive_threshold(true)));
  if (!parity_auto || cr % 2 == 1) thresholds.push_back(threshold_json(derive_threshold(false)));
  r.results = {{"c", cr},
               {"parity", cr % 2 == 0 ? "even" : "odd"},
               {"corollary_braid_bound", corollary_braid_bound(cr)},
               {"main_theorem", to_string(main_theorem_verdict(cr, b))},
               {"thresholds", thresholds}};
  std::ostringstream csv;
  csv << "c,b,corollary_braid_bound,main_theorem,F_general,F_braid3\n"
      << cr << ',' << (b ? std::to_string(*b) : "") << ',' << corollary_braid_bound(cr) << ','
      << to_string(main_theorem_verdict(cr, b)) << ',';
  if (b) {
    const auto ub = fertility_upper_bounds(cr, *b);
    json bj{{"general", ub.general}, {"best", ub.best()}};
    if (ub.braid3) bj["braid3"] = *ub.braid3;
    r.results["upper_bounds"] = bj;
    csv << ub.general << ',' << (ub.braid3 ? std::to_string(*ub.braid3) : "");
  } else {
    csv << ',';
  }
  csv << '\n';
  r.csv = csv.str();
  return r;
}

Report cmd_table_check(const Common& c) {
  Report r;
  r.command = "table-check";
  r.config = common_config(c);
  const KnotTable table = open_table(c);
  json census = json::object();
  std::map<int, int> counts;
  for (const auto& rec : table.records()) ++counts[rec.c];
  for (const auto& [n, k] : counts) census[std::to_string(n)] = k;
  json collisions = json::array();
  for (const auto& g : table.collisions()) collisions.push_back(g);
  int genus_rows = 0;
  json genus_failures = json::array(), jones_failures = json::array();
  for (const auto& rec : table.records()) {
    if (rec.b <= 3) {
      ++genus_rows;
      if (!genus_theorem_check(rec.c, rec.g)) genus_failures.push_back(rec.name);
    }
    const Diagram d = parse_diagram(rec.pd.front());
    const auto v = jones(d);
    if (v != rec.jones || jones(mirror(d)) != rec.jones.mirrored() || determinant_of(v) != rec.det)
      jones_failures.push_back(rec.name);
  }
  r.results = {{"records", table.size()},
               {"horizon", table.horizon()},
               {"census", census},
               {"collisions", collisions},
               {"digest", table_digest(table)},
               {"genus_theorem", {{"rows", genus_rows}, {"failures", genus_failures}}},
               {"jones_recomputed", {{"failures", jones_failures}}}};
  std::ostringstream csv;
  csv << "records,horizon,collision_groups,genus_rows,genus_failures,jones_failures\n"
      << table.size() << ',' << table.horizon() << ',' << table.collisions().size() << ','
      << genus_rows << ',' << genus_failures.size() << ',' << jones_failures.size() << '\n';
  r.csv = csv.str();
  return r;
}

void print_error(const std::string& kind, const std::string& message, int code) {
  std::cout << json{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump(2)
            << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knot shadows, resolutions, 3-braid band words and fertility checks"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--table", common.table_path, "knot table (CSV or JSON)");
    sub->add_option("--cache-dir", common.cache_dir, "result cache directory (or $KNOTFERT_CACHE)");
    sub->add_option("--format", common.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--no-timing", common.no_timing, "omit timing from the report");
  };

  std::string input;
  auto* resolve = app.add_subcommand("resolve", "supported knots of each shadow in a file");
  resolve->add_option("shadows", input, "file of shadows (one PD per line or a JSON array)")->required();
  resolve->add_option("--limit", common.limit, "enumeration limit in crossings");
  resolve->add_option("--jobs", common.jobs, "worker threads")->check(CLI::PositiveNumber);
  add_common(resolve);

  std::optional<int> bound;
  auto* ident = app.add_subcommand("identify", "identify diagrams against the table");
  ident->add_option("diagram", input, "PD string or file of diagrams")->required();
  ident->add_option("--bound", bound, "crossing bound (default: c(D) capped at the horizon)");
  add_common(ident);

  FertilityArgs fargs;
  auto* fert = app.add_subcommand("fertility", "n-fertility of a knot's minimal diagram set");
  fert->add_option("knot", fargs.knot, "table name, e.g. 4_1")->required();
  fert->add_option("--diagrams", fargs.manifest, "manifest (default: bundled)");
  fert->add_option("--upto", fargs.upto, "n (default: c(K) - 1)");
  fert->add_flag("--strict-chirality", fargs.strict, "require each chirality separately");
  fert->add_flag("--exclude-unknot", fargs.exclude_unknot, "leave 0_1 out of the candidates");
  fert->add_option("--limit", common.limit, "enumeration limit in crossings");
  fert->add_option("--jobs", common.jobs, "worker threads")->check(CLI::PositiveNumber);
  add_common(fert);

  std::string word;
  BandSearchOptions so;
  auto* braid = app.add_subcommand("braid3", "band-word analysis of a 3-braid");
  braid->add_option("word", word, "e.g. \"a1 a1 a1 a2\" or \"s2 s1 s2^-1\"")->required();
  braid->add_option("--depth", so.depth, "BFS layers");
  braid->add_option("--budget", so.budget, "BFS state budget");
  add_common(braid);

  int cr = 0;
  std::optional<int> b;
  bool parity_auto = false;
  auto* bounds = app.add_subcommand("bounds", "fertility bounds and thresholds");
  bounds->add_option("--c", cr, "crossing number")->required();
  bounds->add_option("--b", b, "braid index");
  bounds->add_flag("--parity-auto", parity_auto, "only the threshold for the parity of c");
  add_common(bounds);

  auto* tcheck = app.add_subcommand("table-check", "load and self-check the knot table");
  add_common(tcheck);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    print_error("usage", e.what(), 2);
    return 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    Report r;
    if (*resolve) r = cmd_resolve(common, input);
    else if (*ident) r = cmd_identify(common, input, bound);
    else if (*fert) r = cmd_fertility(common, fargs);
    else if (*braid) r = cmd_braid3(common, word, so);
    else if (*bounds) r = cmd_bounds(common, cr, b, parity_auto);
    else r = cmd_table_check(common);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    emit(r, common, ms);
    return 0;
  } catch (const Error& e) {
    print_error(e.kind(), e.what(), e.exit_code());
    return e.exit_code();
  } catch (const std::exception& e) {
    print_error("internal", e.what(), 1);
    return 1;
  }
}
