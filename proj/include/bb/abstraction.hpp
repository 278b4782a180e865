#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bb/formula.hpp"
#include "bb/qe.hpp"
#include "bb/semantics.hpp"

namespace bb {

/// Pair of bound theories over an abstract vocabulary. The lower bound
/// collects sufficient conditions of the source under the bridging theory,
/// the upper bound its necessary conditions.
struct AlphaAbstraction {
  Theory lower;
  Theory upper;
  Vocabulary abstract_vocabulary;
};

/// Reads a plain theory as the pair of bounds <T, T> over its own vocabulary.
inline AlphaAbstraction as_bounds(const Theory& t) { return {t, t, t.vocab()}; }

/// Conjunction of defining equivalences head_i <-> definiens_i. Heads are
/// pairwise distinct fresh atoms: none may occur in any definiens.
class DefinitionSet {
 public:
  using Entry = std::pair<std::string, Formula>;

  explicit DefinitionSet(std::vector<Entry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("definition set is empty");
    Vocabulary definiens_vocab;
    for (const Entry& e : entries_) collect_vocabulary(e.second, definiens_vocab);
    Vocabulary heads;
    for (const Entry& e : entries_) {
      if (!valid_atom_name(e.first))
        throw std::invalid_argument("invalid definition head: '" + e.first + "'");
      if (!heads.insert(e.first).second)
        throw std::invalid_argument("duplicate definition head: '" + e.first + "'");
      if (definiens_vocab.count(e.first))
        throw std::invalid_argument("definition head '" + e.first + "' occurs in a definiens");
    }
  }

  const std::vector<Entry>& entries() const { return entries_; }

  Vocabulary heads() const {
    Vocabulary out;
    for (const Entry& e : entries_) out.insert(e.first);
    return out;
  }

  /// The bridging theory these definitions induce: one equivalence per entry.
  Theory as_bridge() const {
    Theory t;
    for (const Entry& e : entries_) t.push_back(iff(Formula::atom(e.first), e.second));
    return t;
  }

 private:
  std::vector<Entry> entries_;
};

/// One matched subformula of a source theory: formula_index picks the theory
/// member, position the node within it, head the definition it is equivalent
/// to.
struct CoverElement {
  std::size_t formula_index;
  Position position;
  std::string head;

  friend bool operator==(const CoverElement& x, const CoverElement& y) {
    return x.formula_index == y.formula_index && x.position == y.position && x.head == y.head;
  }
};

/// Non-overlapping matched subformulas that jointly contain every occurrence
/// of the dropped atoms; certifies exactness of the tightest abstraction for
/// definitional bridges.
struct Cover {
  std::vector<CoverElement> elements;
};

/// Outcome of checking a candidate pair of bounds. exact implies lower_ok
/// and upper_ok; counterexample holds the first world violating a failed
/// check.
struct VerifyReport {
  bool lower_ok = false;
  bool upper_ok = false;
  bool exact = false;
  std::optional<World> counterexample;
};

namespace detail {

inline Vocabulary atoms_to_eliminate(const Theory& a, const Theory& t, const Vocabulary& keep) {
  Vocabulary all = a.vocab();
  for (const std::string& s : t.vocab()) all.insert(s);
  Vocabulary out;
  std::set_difference(all.begin(), all.end(), keep.begin(), keep.end(),
                      std::inserter(out, out.end()));
  return out;
}

}  // namespace detail

/// Strongest necessary condition of theory `a` over `keep` under assumptions
/// `t`: the exists-projection of t & a onto keep.
inline Formula snc(const Theory& a, const Theory& t, const Vocabulary& keep,
                   std::size_t max_atoms = kDefaultAtomLimit) {
  Vocabulary eliminate = detail::atoms_to_eliminate(a, t, keep);
  if (eliminate.size() > max_atoms) throw VocabularyLimitError(eliminate.size(), max_atoms);
  return simplify(shannon_exists(t.as_formula() & a.as_formula(), eliminate));
}

/// Weakest sufficient condition of `a` over `keep` under `t`: the
/// forall-projection of t -> a onto keep.
inline Formula wsc(const Theory& a, const Theory& t, const Vocabulary& keep,
                   std::size_t max_atoms = kDefaultAtomLimit) {
  Vocabulary eliminate = detail::atoms_to_eliminate(a, t, keep);
  if (eliminate.size() > max_atoms) throw VocabularyLimitError(eliminate.size(), max_atoms);
  return simplify(shannon_forall(implies(t.as_formula(), a.as_formula()), eliminate));
}

/// The tightest abstraction <wsc, snc> from `source` with respect to `bridge`
/// over `abstract_vocab`.
inline AlphaAbstraction tightest(const Theory& source, const Theory& bridge,
                                 const Vocabulary& abstract_vocab,
                                 std::size_t max_atoms = kDefaultAtomLimit) {
  return {Theory{wsc(source, bridge, abstract_vocab, max_atoms)},
          Theory{snc(source, bridge, abstract_vocab, max_atoms)}, abstract_vocab};
}

/// True iff the candidate's bounds are equivalent under the bridging theory.
inline bool is_exact(const AlphaAbstraction& candidate, const Theory& bridge,
                     std::size_t max_atoms = kDefaultAtomLimit) {
  return equivalent(candidate.lower.as_formula(), candidate.upper.as_formula(), bridge, max_atoms);
}

namespace detail {

inline bool subset(const Vocabulary& inner, const Vocabulary& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

}  // namespace detail

/// Checks a candidate pair of bounds: lower_ok iff bridge |= lower -> source,
/// upper_ok iff bridge |= source -> upper, exact iff additionally the bounds
/// are equivalent under the bridge. These two single entailments decide the
/// for-all-conditions formulation by instantiation and transitivity.
inline VerifyReport verify(const Theory& source, const Theory& bridge,
                           const AlphaAbstraction& candidate,
                           std::size_t max_atoms = kDefaultAtomLimit) {
  if (!detail::subset(candidate.lower.vocab(), candidate.abstract_vocabulary) ||
      !detail::subset(candidate.upper.vocab(), candidate.abstract_vocabulary))
    throw std::invalid_argument("candidate bounds mention atoms outside the abstract vocabulary");

  const Formula source_f = source.as_formula();
  const Formula lower_f = candidate.lower.as_formula();
  const Formula upper_f = candidate.upper.as_formula();

  VerifyReport report;
  std::optional<World> lower_cm = countermodel(bridge, implies(lower_f, source_f), max_atoms);
  std::optional<World> upper_cm = countermodel(bridge, implies(source_f, upper_f), max_atoms);
  report.lower_ok = !lower_cm.has_value();
  report.upper_ok = !upper_cm.has_value();

  std::optional<World> exact_cm;
  if (report.lower_ok && report.upper_ok) {
    exact_cm = countermodel(bridge, iff(lower_f, upper_f), max_atoms);
    report.exact = !exact_cm.has_value();
  }

  if (lower_cm)
    report.counterexample = std::move(lower_cm);
  else if (upper_cm)
    report.counterexample = std::move(upper_cm);
  else
    report.counterexample = std::move(exact_cm);
  return report;
}

namespace detail {

struct CoverCandidate {
  std::size_t formula_index;
  Position position;
  Formula subformula;
  std::string head;
};

// Every candidate subformula whose vocabulary is a non-empty subset of
// `drop`, matched to the first definiens it is semantically equivalent to.
// Ordered by formula, then pre-order (outermost first).
inline std::vector<CoverCandidate> cover_candidates(const Theory& source, const DefinitionSet& defs,
                                                    const Vocabulary& drop, std::size_t max_atoms) {
  std::vector<CoverCandidate> out;
  for (std::size_t fi = 0; fi < source.size(); ++fi) {
    for (auto& [pos, sub] : positioned_subformulas(source.formulas()[fi])) {
      Vocabulary v = vocabulary(sub);
      if (v.empty() || !subset(v, drop)) continue;
      for (const auto& [head, definiens] : defs.entries()) {
        if (equivalent(sub, definiens, Theory{}, max_atoms)) {
          out.push_back({fi, pos, sub, head});
          break;
        }
      }
    }
  }
  return out;
}

// Positions of every occurrence of a dropped atom, per source formula.
inline std::vector<std::pair<std::size_t, Position>> dropped_occurrences(const Theory& source,
                                                                         const Vocabulary& drop) {
  std::vector<std::pair<std::size_t, Position>> out;
  for (std::size_t fi = 0; fi < source.size(); ++fi) {
    for (auto& [pos, sub] : positioned_subformulas(source.formulas()[fi])) {
      if (sub.is_atom() && drop.count(sub.atom_name())) out.emplace_back(fi, pos);
    }
  }
  return out;
}

inline bool covers_all_occurrences(const std::vector<const CoverCandidate*>& chosen,
                                   const std::vector<std::pair<std::size_t, Position>>& occurrences) {
  if (chosen.empty()) return false;
  for (const auto& [fi, pos] : occurrences) {
    bool inside = false;
    for (const CoverCandidate* c : chosen) {
      if (c->formula_index == fi && c->position.is_prefix_of(pos)) {
        inside = true;
        break;
      }
    }
    if (!inside) return false;
  }
  return true;
}

inline bool disjoint_from(const CoverCandidate& c, const std::vector<const CoverCandidate*>& chosen) {
  for (const CoverCandidate* e : chosen) {
    if (e->formula_index == c.formula_index && e->position.overlaps(c.position)) return false;
  }
  return true;
}

// Exhaustive include/exclude search over the candidate list, first-found
// wins; `budget` caps the number of complete selections examined.
inline bool cover_search(const std::vector<CoverCandidate>& candidates, std::size_t i,
                         std::vector<const CoverCandidate*>& chosen,
                         const std::vector<std::pair<std::size_t, Position>>& occurrences,
                         std::uint64_t& budget) {
  if (i == candidates.size()) {
    if (budget == 0) return false;
    --budget;
    return covers_all_occurrences(chosen, occurrences);
  }
  if (budget == 0) return false;
  if (disjoint_from(candidates[i], chosen)) {
    chosen.push_back(&candidates[i]);
    if (cover_search(candidates, i + 1, chosen, occurrences, budget)) return true;
    chosen.pop_back();
  }
  return cover_search(candidates, i + 1, chosen, occurrences, budget);
}

}  // namespace detail

inline constexpr std::uint64_t kDefaultCoverBudget = std::uint64_t{1} << 16;

/// Searches the source theory for a proper cover of `drop` with respect to
/// the definitions: pairwise non-overlapping subformulas over `drop`, each
/// equivalent to a definiens, jointly containing every occurrence of every
/// dropped atom. Greedy outermost-first matching is tried before a budgeted
/// exhaustive search. Returns nullopt when none is found.
inline std::optional<Cover> find_proper_cover(const Theory& source, const DefinitionSet& defs,
                                              const Vocabulary& drop,
                                              std::uint64_t budget = kDefaultCoverBudget,
                                              std::size_t max_atoms = kDefaultAtomLimit) {
  const Vocabulary source_vocab = source.vocab();
  for (const auto& [head, definiens] : defs.entries()) {
    if (source_vocab.count(head))
      throw std::invalid_argument("definition head '" + head + "' occurs in the source theory");
    if (drop.count(head))
      throw std::invalid_argument("definition head '" + head + "' is listed among the dropped atoms");
  }

  const std::vector<detail::CoverCandidate> candidates =
      detail::cover_candidates(source, defs, drop, max_atoms);
  const std::vector<std::pair<std::size_t, Position>> occurrences =
      detail::dropped_occurrences(source, drop);

  auto to_cover = [](const std::vector<const detail::CoverCandidate*>& chosen) {
    Cover cover;
    for (const detail::CoverCandidate* c : chosen)
      cover.elements.push_back({c->formula_index, c->position, c->head});
    return cover;
  };

  // Greedy pass: accept every candidate that does not overlap an earlier one.
  std::vector<const detail::CoverCandidate*> chosen;
  for (const detail::CoverCandidate& c : candidates) {
    if (detail::disjoint_from(c, chosen)) chosen.push_back(&c);
  }
  if (detail::covers_all_occurrences(chosen, occurrences)) return to_cover(chosen);

  chosen.clear();
  std::uint64_t remaining = budget;
  if (detail::cover_search(candidates, 0, chosen, occurrences, remaining)) return to_cover(chosen);
  return std::nullopt;
}

/// Tightest abstraction plus its exactness verdict. When the bridge is given
/// as explicit definitions with all heads inside the abstract vocabulary, a
/// proper cover is searched for and returned as an exactness certificate.
struct AbstractionOutcome {
  AlphaAbstraction abstraction;
  bool exact = false;
  std::optional<Cover> cover;
};

inline AbstractionOutcome abstract_with_exactness(const Theory& source, const Theory& bridge,
                                                  const Vocabulary& abstract_vocab,
                                                  const std::optional<DefinitionSet>& defs,
                                                  std::size_t max_atoms = kDefaultAtomLimit) {
  if (defs) {
    std::vector<Formula> conjuncts;
    for (const Formula& f : bridge) detail::flatten(Kind::And, f, conjuncts);
    const auto& entries = defs->entries();
    bool matches = conjuncts.size() == entries.size();
    for (std::size_t i = 0; matches && i < entries.size(); ++i)
      matches = conjuncts[i] == iff(Formula::atom(entries[i].first), entries[i].second);
    if (!matches)
      throw std::invalid_argument("bridge theory is not the conjunction of the given definitions");
  }

  AbstractionOutcome out{tightest(source, bridge, abstract_vocab, max_atoms), false, std::nullopt};
  out.exact = is_exact(out.abstraction, bridge, max_atoms);

  // The exactness certificate applies only when every defined head survives
  // into the abstract vocabulary.
  if (defs && detail::subset(defs->heads(), abstract_vocab)) {
    Vocabulary drop;
    const Vocabulary source_vocab = source.vocab();
    std::set_difference(source_vocab.begin(), source_vocab.end(), abstract_vocab.begin(),
                        abstract_vocab.end(), std::inserter(drop, drop.end()));
    out.cover = find_proper_cover(source, *defs, drop, kDefaultCoverBudget, max_atoms);
    if (out.cover && !out.exact)
      throw std::logic_error("proper cover found for an inexact abstraction; this is a bug");
  }
  return out;
}

/// One abstraction layer: a bridging theory and the vocabulary to keep.
struct Stage {
  Theory bridge;
  Vocabulary abstract_vocabulary;
};

/// Folds the stages left to right, the lower bound flowing through wsc and
/// the upper through snc, yielding the tightest layered abstraction over the
/// last stage's vocabulary.
inline AlphaAbstraction compose(const AlphaAbstraction& source_bounds,
                                const std::vector<Stage>& stages,
                                std::size_t max_atoms = kDefaultAtomLimit) {
  AlphaAbstraction acc = source_bounds;
  for (const Stage& stage : stages) {
    Formula lower = wsc(acc.lower, stage.bridge, stage.abstract_vocabulary, max_atoms);
    Formula upper = snc(acc.upper, stage.bridge, stage.abstract_vocabulary, max_atoms);
    acc = {Theory{std::move(lower)}, Theory{std::move(upper)}, stage.abstract_vocabulary};
  }
  return acc;
}

}  // namespace bb
