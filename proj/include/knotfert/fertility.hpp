#pragma once

// Supported knots of a shadow, n-fertility of a minimal diagram set, and the
// numeric bounds and thresholds around fertility.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "knotfert/codec.hpp"
#include "knotfert/diagram.hpp"
#include "knotfert/error.hpp"
#include "knotfert/invariants.hpp"
#include "knotfert/rational.hpp"
#include "knotfert/tables.hpp"

#include <json.hpp>

namespace knotfert {

// ------------------------------------------------------------ supported set

struct SupportedKnot {
  KnotId knot;
  Assignment witness;       // first assignment (in enumeration order)
  std::uint64_t count = 0;  // resolutions identifying to this knot

  friend bool operator==(const SupportedKnot&, const SupportedKnot&) = default;
};

/// Resolutions that did not identify to a single table knot, grouped by
/// their invariants.
struct Residue {
  Identification::Status status = Identification::Status::unknown;
  std::vector<KnotId> candidates;  // ambiguous only
  LaurentPoly jones;
  std::int64_t det = 0;
  Assignment witness;
  std::uint64_t count = 0;

  friend bool operator==(const Residue&, const Residue&) = default;
};

struct SupportedSet {
  int c = 0;
  int s = 1;
  int g = 0;
  std::uint64_t resolutions = 0;
  std::vector<SupportedKnot> knots;  // KnotId order
  std::vector<Residue> residue;      // by first witness

  bool contains(std::string_view name) const {
    return std::any_of(knots.begin(), knots.end(),
                       [&](const SupportedKnot& k) { return k.knot.name == name; });
  }

  friend bool operator==(const SupportedSet&, const SupportedSet&) = default;
};

struct SupportOptions {
  EnumerationOptions enumeration;
  bool beyond_horizon = false;  // allow c(S) above the table horizon
};

/// Identifies every resolution of `s` against `table` with crossing bound
/// c(S).  Throws LimitError above the enumeration limit and HorizonError
/// when c(S) exceeds the table horizon (unless allowed).
inline SupportedSet supported_set(const Shadow& s, const KnotTable& table,
                                  const SupportOptions& opt = {}) {
  check_enumeration_limit(s.crossing_count(), opt.enumeration.limit);
  if (s.crossing_count() > table.horizon() && !opt.beyond_horizon)
    throw HorizonError("shadow has " + std::to_string(s.crossing_count()) +
                       " crossings, table horizon is " + std::to_string(table.horizon()));
  SupportedSet out;
  out.c = s.crossing_count();
  out.s = seifert_circle_count(s);
  out.g = detail::genus_from_counts(out.c, out.s);

  std::map<KnotId, std::size_t> knot_at;
  std::map<std::pair<std::string, std::int64_t>, std::size_t> residue_at;
  std::map<std::string, Identification> id_memo;
  for_each_resolution(
      s, opt.enumeration, [](const Assignment&, const Diagram& d) { return jones(d); },
      [&](const Assignment& a, LaurentPoly v) {
        ++out.resolutions;
        const std::string key = v.to_pairs();
        auto it = id_memo.find(key);
        if (it == id_memo.end()) it = id_memo.emplace(key, identify_invariants(v, out.c, table)).first;
        const Identification& id = it->second;
        if (id.identified()) {
          auto [pos, fresh] = knot_at.try_emplace(id.knot(), out.knots.size());
          if (fresh) out.knots.push_back({id.knot(), a, 0});
          ++out.knots[pos->second].count;
        } else {
          auto [pos, fresh] = residue_at.try_emplace({key, id.det}, out.residue.size());
          if (fresh) out.residue.push_back({id.status, id.matches, v, id.det, a, 0});
          ++out.residue[pos->second].count;
        }
      });
  std::sort(out.knots.begin(), out.knots.end(),
            [](const SupportedKnot& x, const SupportedKnot& y) { return x.knot < y.knot; });
  return out;
}

struct SupportAnswer {
  bool supported = false;
  std::optional<Assignment> witness;
  bool undecided = false;  // unsupported, but an ambiguous residue names the knot
};

inline bool knot_matches(const KnotId& have, const KnotId& want, bool strict) {
  if (have.name != want.name) return false;
  if (!strict || have.chirality == Chirality::amphichiral) return true;
  return have.chirality == want.chirality;
}

inline SupportAnswer supports(const SupportedSet& set, const KnotId& k, bool strict = false) {
  SupportAnswer ans;
  for (const auto& sk : set.knots) {
    if (!knot_matches(sk.knot, k, strict)) continue;
    if (!ans.witness || sk.witness.bits < ans.witness->bits) ans.witness = sk.witness;
    ans.supported = true;
  }
  if (!ans.supported)
    for (const auto& r : set.residue)
      for (const auto& cand : r.candidates)
        if (cand.name == k.name) ans.undecided = true;
  return ans;
}

inline SupportAnswer supports(const Shadow& s, const KnotId& k, const KnotTable& table,
                              const SupportOptions& opt = {}, bool strict = false) {
  return supports(supported_set(s, table, opt), k, strict);
}

// --------------------------------------------------------------- DiagramSet

struct DiagramSet {
  KnotId knot;
  std::vector<Diagram> diagrams;
  bool complete = false;  // supplier attests these are all minimal diagrams
  std::string provenance;
};

/// Manifest schema: {"knot": name, "diagrams": [PD, ...], "complete": bool,
/// "provenance": text}.
inline DiagramSet parse_diagram_set(const nlohmann::json& j, const std::string& source = "manifest") {
  DiagramSet ds;
  try {
    ds.knot.name = j.at("knot").get<std::string>();
    ds.complete = j.at("complete").get<bool>();
    if (j.contains("provenance")) ds.provenance = j.at("provenance").get<std::string>();
    for (const auto& pd : j.at("diagrams")) ds.diagrams.push_back(parse_diagram(pd.get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(source + ": schema violation (" + e.what() + ")");
  }
  if (ds.diagrams.empty()) throw DataError(source + ": no diagrams");
  return ds;
}

inline DiagramSet load_diagram_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
  return parse_diagram_set(j, path);
}

inline nlohmann::json to_json(const DiagramSet& ds) {
  nlohmann::json pds = nlohmann::json::array();
  for (const auto& d : ds.diagrams) pds.push_back(serialize_diagram(d));
  return {{"knot", ds.knot.name}, {"complete", ds.complete}, {"provenance", ds.provenance},
          {"diagrams", pds}};
}

/// Every diagram must have c(D) = table c(K).
inline void check_diagram_set(const DiagramSet& ds, const KnotTable& table) {
  const auto& rec = table.at(ds.knot.name);
  for (std::size_t i = 0; i < ds.diagrams.size(); ++i)
    if (ds.diagrams[i].crossing_count() != rec.c)
      throw ValidationError("diagram " + std::to_string(i + 1) + " of " + ds.knot.name + " has " +
                            std::to_string(ds.diagrams[i].crossing_count()) +
                            " crossings, table says " + std::to_string(rec.c));
}

// ---------------------------------------------------------------- fertility

enum class Verdict { verified, refuted, conditional, undecided };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::verified: return "verified";
    case Verdict::refuted: return "refuted";
    case Verdict::conditional: return "conditional-on-completeness";
    case Verdict::undecided: return "undecided";
  }
  return "?";
}

struct FertilityOptions {
  SupportOptions support;
  bool include_unknot = true;
  bool strict_chirality = false;
};

struct CandidateStatus {
  KnotId knot;
  bool supported = false;
  bool undecided = false;
  int diagram = -1;  // index of the first supporting diagram
  std::optional<Assignment> witness;
};

struct NFertileReport {
  int n = 0;
  Verdict verdict = Verdict::verified;
  std::vector<CandidateStatus> candidates;

  std::vector<std::string> missing() const {
    std::vector<std::string> out;
    for (const auto& c : candidates)
      if (!c.supported && !c.undecided) out.push_back(c.knot.to_string());
    return out;
  }
};

/// Supported sets of every diagram's shadow, computed once.
class FertilityAnalysis {
 public:
  template <class SupportFn>
  FertilityAnalysis(const DiagramSet& ds, const KnotTable& table, const FertilityOptions& opt,
                    SupportFn&& support)
      : ds_(&ds), table_(&table), opt_(opt) {
    check_diagram_set(ds, table);
    for (const auto& d : ds.diagrams) sets_.push_back(support(forget(d)));
  }

  FertilityAnalysis(const DiagramSet& ds, const KnotTable& table, const FertilityOptions& opt = {})
      : FertilityAnalysis(ds, table, opt, [&](const Shadow& s) {
          return supported_set(s, table, opt.support);
        }) {}

  const std::vector<SupportedSet>& supported_sets() const { return sets_; }

  NFertileReport n_fertile(int n) const {
    if (n > table_->horizon())
      throw HorizonError("n = " + std::to_string(n) + " exceeds the table horizon " +
                         std::to_string(table_->horizon()));
    NFertileReport rep;
    rep.n = n;
    for (const auto& r : table_->records()) {
      if (r.c > n) continue;
      if (r.c == 0 && !opt_.include_unknot) continue;
      std::vector<KnotId> wanted{{r.name, r.amphichiral ? Chirality::amphichiral : Chirality::as_tabled}};
      if (opt_.strict_chirality && !r.amphichiral) wanted.push_back({r.name, Chirality::mirrored});
      for (const auto& k : wanted) {
        CandidateStatus st;
        st.knot = k;
        for (std::size_t i = 0; i < sets_.size() && !st.supported; ++i) {
          const auto ans = supports(sets_[i], k, opt_.strict_chirality);
          if (ans.supported) {
            st.supported = true;
            st.diagram = static_cast<int>(i);
            st.witness = ans.witness;
          }
          st.undecided = st.undecided || ans.undecided;
        }
        if (st.supported) st.undecided = false;
        rep.candidates.push_back(std::move(st));
      }
    }
    bool missing = false, undecided = false;
    for (const auto& c : rep.candidates) {
      if (c.supported) continue;
      (c.undecided ? undecided : missing) = true;
    }
    if (missing && ds_->complete) rep.verdict = Verdict::refuted;
    else if (undecided) rep.verdict = Verdict::undecided;
    else if (missing) rep.verdict = Verdict::conditional;
    else rep.verdict = Verdict::verified;
    return rep;
  }

  /// Largest n <= horizon with a verified n-fertility verdict; -1 if none.
  int fertility_number_lower() const {
    int best = -1;
    for (int n = 0; n <= table_->horizon(); ++n) {
      if (n_fertile(n).verdict != Verdict::verified) break;
      best = n;
    }
    return best;
  }

 private:
  const DiagramSet* ds_;
  const KnotTable* table_;
  FertilityOptions opt_;
  std::vector<SupportedSet> sets_;
};

inline NFertileReport n_fertile(const DiagramSet& ds, int n, const KnotTable& table,
                                const FertilityOptions& opt = {}) {
  if (n > table.horizon())
    throw HorizonError("n = " + std::to_string(n) + " exceeds the table horizon " +
                       std::to_string(table.horizon()));
  return FertilityAnalysis(ds, table, opt).n_fertile(n);
}

inline int fertility_number_lower(const DiagramSet& ds, const KnotTable& table,
                                  const FertilityOptions& opt = {}) {
  return FertilityAnalysis(ds, table, opt).fertility_number_lower();
}

// ------------------------------------------------------------------- bounds

struct FertilityBounds {
  int general = 0;              // c - b + 3
  std::optional<int> braid3;    // floor(4c/5) + 6, only when b <= 3

  int best() const { return braid3 ? std::min(general, *braid3) : general; }
};

inline FertilityBounds fertility_upper_bounds(int c, int b) {
  if (c < 0 || b < 1) throw ValidationError("bounds need c >= 0 and b >= 1");
  FertilityBounds out;
  out.general = c - b + 3;
  if (b <= 3) out.braid3 = static_cast<int>((Rational(4 * c, 5) + Rational(6)).floor());
  return out;
}

enum class MainVerdict { not_fertile, inconclusive };

inline const char* to_string(MainVerdict v) {
  return v == MainVerdict::not_fertile ? "not-fertile" : "inconclusive";
}

/// not-fertile iff (c even and c > 30) or (c odd, b <= 3 and c > 25).
inline MainVerdict main_theorem_verdict(int c, std::optional<int> b = std::nullopt) {
  if (c % 2 == 0 && c > 30) return MainVerdict::not_fertile;
  if (c % 2 == 1 && b && *b <= 3 && c > 25) return MainVerdict::not_fertile;
  return MainVerdict::inconclusive;
}

/// Braid index a fertile knot with c crossings can have at most.
inline int corollary_braid_bound(int c) { return c % 2 == 0 ? 3 : 4; }

/// s(S): bounds the braid index of every knot the shadow supports.
inline int braid_index_upper(const Shadow& s) { return seifert_circle_count(s); }

/// -3 + 3c/5 <= 2g - 1, exactly.
inline bool genus_theorem_check(int c, int g) {
  return Rational(-3) + Rational(3 * c, 5) <= Rational(2 * g - 1);
}

struct Prop2Report {
  int c = 0;
  int s_bound = 0;            // 3 for even c, 4 for odd c
  int min_s = 0;              // smallest s(D) over the set
  int witness = -1;           // index of a diagram attaining it
  bool s_ok = false;
  Rational genus_lhs;         // 2g - 1
  Rational genus_rhs;         // c/2 or (c-1)/2
  bool genus_ok = false;

  bool holds() const { return s_ok && genus_ok; }
};

inline Prop2Report prop2_witness_check(const DiagramSet& ds, int g) {
  if (ds.diagrams.empty()) throw ValidationError("witness check needs at least one diagram");
  Prop2Report r;
  r.c = ds.diagrams.front().crossing_count();
  const bool even = r.c % 2 == 0;
  r.s_bound = even ? 3 : 4;
  r.min_s = -1;
  for (std::size_t i = 0; i < ds.diagrams.size(); ++i) {
    const int s = seifert_circle_count(ds.diagrams[i]);
    if (r.min_s < 0 || s < r.min_s) {
      r.min_s = s;
      r.witness = static_cast<int>(i);
    }
  }
  r.s_ok = r.min_s <= r.s_bound;
  r.genus_lhs = Rational(2 * g - 1);
  r.genus_rhs = even ? Rational(r.c, 2) : Rational(r.c - 1, 2);
  r.genus_ok = r.genus_lhs <= r.genus_rhs;
  return r;
}

/// Solves alpha*c + beta <= gamma*c + delta for c (alpha > gamma): the
/// largest admissible c is floor((delta - beta) / (alpha - gamma)).
struct ThresholdDerivation {
  std::string parity;    // "even" or "odd"
  std::string chain;     // human-readable inequality chain
  Rational bound;        // c <= bound
  int max_c = 0;         // largest admissible c of the right parity
  int first_excluded = 0;
};

inline ThresholdDerivation derive_threshold(bool even) {
  // Genus theorem: 2g - 1 >= -3 + (3/5) c.
  const Rational alpha(3, 5), beta(-3);
  // Minimal-diagram bound: 2g - 1 <= c/2 (even) or (c - 1)/2 (odd).
  const Rational gamma(1, 2), delta = even ? Rational(0) : Rational(-1, 2);
  ThresholdDerivation t;
  t.parity = even ? "even" : "odd";
  t.bound = (delta - beta) / (alpha - gamma);
  t.chain = std::string("-3 + 3c/5 <= 2g - 1 <= ") + (even ? "c/2" : "(c-1)/2") +
            "  =>  (3/5 - 1/2) c <= " + (delta - beta).to_string() + "  =>  c <= " +
            t.bound.to_string();
  int m = static_cast<int>(t.bound.floor());
  if ((m % 2 == 0) != even) --m;
  t.max_c = m;
  t.first_excluded = m + 2;
  return t;
}

/// Exact check that the derived bound is the true boundary: the chained
/// inequality is solvable for every c <= bound and fails above it, for
/// c in [0, limit].
inline bool threshold_is_sharp(const ThresholdDerivation& t, bool even, int limit = 200) {
  const Rational alpha(3, 5), beta(-3), gamma(1, 2), delta = even ? Rational(0) : Rational(-1, 2);
  for (int c = 0; c <= limit; ++c) {
    const bool ok = alpha * Rational(c) + beta <= gamma * Rational(c) + delta;
    if (ok != (Rational(c) <= t.bound)) return false;
  }
  return true;
}

}  // namespace knotfert
