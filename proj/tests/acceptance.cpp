// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Each criterion pins its tolerance (exact truth-table
// equivalence, zero failures) and its runtime budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bb/bb.hpp"
#include "support/conditions.hpp"
#include "support/generators.hpp"
#include "support/qe_oracle.hpp"
#include "support/truth_tables.hpp"

using namespace bb;

namespace {

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<bool(std::string&)> run;
};

bool table_equiv(const Formula& a, const Formula& b) {
  Vocabulary v = vocabulary(a);
  collect_vocabulary(b, v);
  auto atoms = bbtest::sorted_atoms(v);
  return bbtest::table_equivalent(a, b, atoms);
}

// --- 1-3: the worked examples ----------------------------------------------

bool game_player_tightest(std::string& detail) {
  Theory source{parse("mood -> (g1 | g2)"), parse("(g1 | g2) -> (play & enjoy)")};
  Theory bridge{parse("(g1 | g2) -> game")};
  AlphaAbstraction a = tightest(source, bridge, {"mood", "game", "play", "enjoy"});
  bool lower_ok = table_equiv(a.lower.as_formula(), parse("~mood & (~game | (play & enjoy))"));
  bool upper_ok =
      table_equiv(a.upper.as_formula(), parse("(mood -> (play & enjoy)) & (mood -> game)"));
  if (!lower_ok) detail = "lower bound mismatch";
  if (!upper_ok) detail = "upper bound mismatch";
  return lower_ok && upper_ok;
}

bool engine_exactness(std::string& detail) {
  Theory source{parse("(bc | ef) -> ecs")};
  Theory bridge{parse("sp <-> (bc | ef)")};
  AlphaAbstraction a = tightest(source, bridge, {"sp", "ecs"});
  bool bounds_ok = table_equiv(a.lower.as_formula(), parse("sp -> ecs")) &&
                   table_equiv(a.upper.as_formula(), parse("sp -> ecs"));
  bool exact = is_exact(a, bridge);
  if (!bounds_ok) detail = "bounds differ from sp -> ecs";
  if (!exact) detail = "abstraction not exact";
  return bounds_ok && exact;
}

bool definitional_player(std::string& detail) {
  Theory source{parse("mood -> (g1 | g2)"), parse("(g1 | g2) -> (play & enjoy)")};
  Theory bridge{parse("game <-> (g1 | g2)")};
  AlphaAbstraction a = tightest(source, bridge, {"mood", "game", "play", "enjoy"});
  Formula expected = parse("(mood -> game) & (game -> (play & enjoy))");
  bool bounds_ok = table_equiv(a.lower.as_formula(), expected) &&
                   table_equiv(a.upper.as_formula(), expected);
  bool exact = is_exact(a, bridge);
  if (!bounds_ok) detail = "bounds differ from the expected conjunction";
  if (!exact) detail = "abstraction not exact";
  return bounds_ok && exact;
}

// --- 4 & 6: projections against cofactor enumeration ------------------------

bool oracle_equivalence(std::string& detail) {
  bbtest::Rng rng(20250401);
  int failures = 0;
  for (int i = 0; i < 500; ++i) {
    auto inst = bbtest::random_instance(rng, 10, 6);
    Formula upper = snc(inst.source, inst.bridge, inst.keep);
    Formula lower = wsc(inst.source, inst.bridge, inst.keep);

    std::vector<std::string> eliminate;
    std::vector<std::string> remaining(inst.keep.begin(), inst.keep.end());
    for (const std::string& a : inst.all_atoms)
      if (!inst.keep.count(a)) eliminate.push_back(a);
    Formula src = inst.source.as_formula(), bridge = inst.bridge.as_formula();

    if (!bbtest::Table::tabulate(upper, remaining)
             .same_function(bbtest::exists_oracle(bridge & src, eliminate, remaining)))
      ++failures;
    if (!bbtest::Table::tabulate(lower, remaining)
             .same_function(bbtest::forall_oracle(implies(bridge, src), eliminate, remaining)))
      ++failures;
  }
  if (failures) detail = std::to_string(failures) + " projection mismatches";
  return failures == 0;
}

bool approximation_invariant(std::string& detail) {
  bbtest::Rng rng(20250401);  // same instances as criterion 4
  int failures = 0;
  for (int i = 0; i < 500; ++i) {
    auto inst = bbtest::random_instance(rng, 10, 6);
    Formula upper = snc(inst.source, inst.bridge, inst.keep);
    Formula lower = wsc(inst.source, inst.bridge, inst.keep);
    if (!entails(inst.bridge, implies(lower, upper))) ++failures;
  }
  if (failures) detail = std::to_string(failures) + " instances violate lower -> upper";
  return failures == 0;
}

// --- 5: tightestness against all 65 536 candidate conditions ----------------

bool tightestness_brute_force(std::string& detail) {
  bbtest::Rng rng(20250505);
  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    auto inst = bbtest::random_instance(rng, 8, 4);
    // Exactly four kept atoms so every instance enumerates 2^16 candidates.
    std::vector<std::string> pool = inst.all_atoms;
    pool.push_back("z1");
    inst.keep.clear();
    for (const std::string& a : pool) {
      if (inst.keep.size() < 4) inst.keep.insert(a);
    }
    Vocabulary all_v(pool.begin(), pool.end());
    Formula upper = snc(inst.source, inst.bridge, inst.keep);
    Formula lower = wsc(inst.source, inst.bridge, inst.keep);

    std::vector<std::string> all(all_v.begin(), all_v.end());
    std::vector<std::string> keep(inst.keep.begin(), inst.keep.end());
    bbtest::KeepProjection proj(all, keep);
    auto bridge_t = bbtest::Table::tabulate(inst.bridge, all);
    auto source_t = bbtest::Table::tabulate(inst.source, all);
    auto lower_t = bbtest::Table::tabulate(lower, all);
    auto upper_t = bbtest::Table::tabulate(upper, all);

    std::uint32_t suff_src = proj.rows_hit(bridge_t & ~source_t);
    std::uint32_t suff_wsc = proj.rows_hit(bridge_t & ~lower_t);
    std::uint32_t need_src = proj.rows_hit(bridge_t & source_t);
    std::uint32_t need_snc = proj.rows_hit(bridge_t & upper_t);

    for (std::uint32_t c = 0; c < proj.candidate_count(); ++c) {
      if (bbtest::candidate_sufficient(c, suff_src) && !bbtest::candidate_sufficient(c, suff_wsc))
        ++failures;
      if (bbtest::candidate_necessary(c, need_src) && !bbtest::candidate_necessary(c, need_snc))
        ++failures;
    }
  }
  if (failures) detail = std::to_string(failures) + " dominated candidates escaped the bounds";
  return failures == 0;
}

// --- 7: Ackermann against Shannon -------------------------------------------

bool ackermann_agreement(std::string& detail) {
  bbtest::Rng rng(20250707);
  const std::vector<std::string> others = {"a", "b", "c", "d"};
  int applied = 0, failures = 0, attempts = 0;
  while (applied < 200 && attempts < 2000) {
    ++attempts;
    bool case_pos = bbtest::chance(rng, 0.5);
    Formula a = bbtest::random_formula(rng, others, 3);
    Formula pivot = case_pos ? implies(Formula::atom("p"), a) : implies(a, Formula::atom("p"));
    Formula rest = bbtest::random_polarized(rng, others, "p", case_pos, 4);
    Formula body = bbtest::chance(rng, 0.5) ? (pivot & rest) : (rest & pivot);
    if (bbtest::chance(rng, 0.3)) body = body & bbtest::random_formula(rng, others, 2);

    auto result = ackermann(body, "p");
    if (!result) continue;
    ++applied;
    auto atoms = bbtest::sorted_atoms(vocabulary(body));
    std::erase(atoms, std::string("p"));
    if (!bbtest::Table::tabulate(*result, atoms)
             .same_function(bbtest::exists_oracle(body, {"p"}, atoms)))
      ++failures;
  }
  if (applied < 200) {
    detail = "only " + std::to_string(applied) + " applicable bodies generated";
    return false;
  }
  if (failures) detail = std::to_string(failures) + " disagreements with Shannon";
  return failures == 0;
}

// --- 8: proper covers certify exactness -------------------------------------

bool cover_implies_exactness(std::string& detail) {
  bbtest::Rng rng(20250808);
  int found = 0, failures = 0, attempts = 0;
  while (found < 100 && attempts < 1000) {
    ++attempts;
    auto inst = bbtest::random_definitional_instance(rng, /*allow_stray=*/true);
    auto cover = find_proper_cover(inst.source, inst.defs, inst.drop);
    if (!cover) continue;
    ++found;
    if (!is_exact(tightest(inst.source, inst.bridge, inst.abstract_vocab), inst.bridge)) ++failures;
  }
  if (found < 100) {
    detail = "only " + std::to_string(found) + " covered instances generated";
    return false;
  }
  if (failures) detail = std::to_string(failures) + " covered instances were not exact";
  return failures == 0;
}

// --- 9: layered composition -------------------------------------------------

bool layered_compositionality(std::string& detail) {
  bbtest::Rng rng(20250909);
  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    auto inst = bbtest::random_layered_instance(rng);
    AlphaAbstraction staged = compose(
        as_bounds(inst.source), {{inst.bridge1, inst.mid_vocab}, {inst.bridge2, inst.final_vocab}});
    Theory joined = inst.bridge1;
    for (const Formula& f : inst.bridge2) joined.push_back(f);
    AlphaAbstraction oneshot = tightest(inst.source, joined, inst.final_vocab);
    if (!table_equiv(staged.lower.as_formula(), oneshot.lower.as_formula())) ++failures;
    if (!table_equiv(staged.upper.as_formula(), oneshot.upper.as_formula())) ++failures;
  }
  if (failures) detail = std::to_string(failures) + " staged/one-shot mismatches";
  return failures == 0;
}

// --- 10: the two-entailment reduction of candidate verification --------------

bool verification_reduction(std::string& detail) {
  bbtest::Rng rng(20251010);
  int failures = 0, checked = 0;
  while (checked < 100) {
    auto inst = bbtest::random_instance(rng, 5, 3);
    while (inst.keep.size() > 3) inst.keep.erase(std::prev(inst.keep.end()));
    std::vector<std::string> keep(inst.keep.begin(), inst.keep.end());
    if (keep.empty()) continue;
    ++checked;
    Theory lower{bbtest::random_formula(rng, keep, 3)};
    Theory upper{bbtest::random_formula(rng, keep, 3)};

    Vocabulary all_v(inst.all_atoms.begin(), inst.all_atoms.end());
    std::vector<std::string> all(all_v.begin(), all_v.end());
    bbtest::KeepProjection proj(all, keep);
    auto bridge_t = bbtest::Table::tabulate(inst.bridge, all);
    auto source_t = bbtest::Table::tabulate(inst.source, all);
    auto lower_t = bbtest::Table::tabulate(lower, all);
    auto upper_t = bbtest::Table::tabulate(upper, all);

    std::uint32_t suff_lower = proj.rows_hit(bridge_t & ~lower_t);
    std::uint32_t suff_src = proj.rows_hit(bridge_t & ~source_t);
    std::uint32_t need_upper = proj.rows_hit(bridge_t & upper_t);
    std::uint32_t need_src = proj.rows_hit(bridge_t & source_t);

    bool lower_ok_enum = true, upper_ok_enum = true;
    for (std::uint32_t c = 0; c < proj.candidate_count(); ++c) {
      if (bbtest::candidate_sufficient(c, suff_lower) && !bbtest::candidate_sufficient(c, suff_src))
        lower_ok_enum = false;
      if (bbtest::candidate_necessary(c, need_upper) && !bbtest::candidate_necessary(c, need_src))
        upper_ok_enum = false;
    }

    VerifyReport r = verify(inst.source, inst.bridge, {lower, upper, inst.keep});
    if (r.lower_ok != lower_ok_enum || r.upper_ok != upper_ok_enum) ++failures;
  }
  if (failures) detail = std::to_string(failures) + " verdicts differ from the enumeration";
  return failures == 0;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"game-player tightest abstraction matches the worked bounds", 1.0, game_player_tightest},
      {"engine abstraction collapses to sp -> ecs and is exact", 1.0, engine_exactness},
      {"definitional player bridge yields the exact abstraction", 1.0, definitional_player},
      {"snc/wsc equal cofactor enumeration on 500 random instances", 60.0, oracle_equivalence},
      {"bounds dominate all 65536 candidate conditions on 200 instances", 120.0,
       tightestness_brute_force},
      {"bridge entails lower -> upper on all criterion-4 instances", 60.0, approximation_invariant},
      {"ackermann agrees with shannon on 200 pivot bodies", 30.0, ackermann_agreement},
      {"proper covers certify exactness on 100 definitional instances", 120.0,
       cover_implies_exactness},
      {"two-stage composition equals the one-shot abstraction on 200 instances", 120.0,
       layered_compositionality},
      {"verify matches candidate enumeration on 100 instances", 60.0, verification_reduction},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = criteria[i].run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > criteria[i].budget_seconds) {
      ok = false;
      detail += (detail.empty() ? "" : "; ");
      detail += "over budget of " + std::to_string(criteria[i].budget_seconds) + " s";
    }
    if (!ok) ++failed;
    std::printf("[%s] criterion %zu: %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].name.c_str(), seconds, detail.empty() ? "" : " -- ", detail.c_str());
  }
  if (failed) std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  else std::printf("all %zu criteria passed\n", criteria.size());
  return failed == 0 ? 0 : 1;
}
