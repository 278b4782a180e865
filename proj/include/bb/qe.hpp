#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bb/formula.hpp"

namespace bb {

namespace detail {

inline void flatten(Kind k, const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == k) {
    flatten(k, f.lhs(), out);
    flatten(k, f.rhs(), out);
  } else {
    out.push_back(f);
  }
}

inline bool complementary(const Formula& a, const Formula& b) {
  if (a.kind() == Kind::Not && a.child() == b) return true;
  if (b.kind() == Kind::Not && b.child() == a) return true;
  return false;
}

}  // namespace detail

/// Equivalence-preserving cleanup: constant propagation, double negation,
/// ∧/∨ flattening with duplicate and complement detection. Never grows the
/// formula; returns the input node unchanged when no rule applies.
inline Formula simplify(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Const:
      return f;

    case Kind::Not: {
      Formula c = simplify(f.child());
      if (c.is_const()) return Formula::constant(!c.const_value());
      if (c.kind() == Kind::Not) return c.child();
      return c.same_node(f.child()) ? f : ~std::move(c);
    }

    case Kind::And:
    case Kind::Or: {
      const Kind k = f.kind();
      const bool is_and = k == Kind::And;
      std::vector<Formula> raw;
      detail::flatten(k, f, raw);

      std::vector<Formula> items;
      bool changed = false;
      for (const Formula& part : raw) {
        Formula s = simplify(part);
        if (!s.same_node(part)) changed = true;
        // A part may simplify into this connective again; keep the list flat.
        std::vector<Formula> flat;
        detail::flatten(k, s, flat);
        if (flat.size() != 1) changed = true;
        for (Formula& g : flat) {
          if (g.is_const()) {
            if (g.const_value() == is_and) {
              changed = true;  // neutral element, drop
              continue;
            }
            return Formula::constant(!is_and);  // absorbing element
          }
          bool duplicate = false;
          for (const Formula& seen : items) {
            if (seen == g) {
              duplicate = true;
              break;
            }
            if (detail::complementary(seen, g))
              return Formula::constant(!is_and);
          }
          if (duplicate) {
            changed = true;
            continue;
          }
          items.push_back(std::move(g));
        }
      }
      if (items.empty()) return Formula::constant(is_and);
      if (items.size() == 1) return items.front();
      if (!changed) return f;
      Formula acc = items.front();
      for (std::size_t i = 1; i < items.size(); ++i)
        acc = is_and ? (std::move(acc) & items[i]) : (std::move(acc) | items[i]);
      return acc;
    }

    case Kind::Implies: {
      Formula l = simplify(f.lhs());
      Formula r = simplify(f.rhs());
      if (l.is_const()) return l.const_value() ? r : Formula::constant(true);
      if (r.is_const()) {
        if (r.const_value()) return Formula::constant(true);
        return simplify(~std::move(l));
      }
      if (l == r) return Formula::constant(true);
      if (l.same_node(f.lhs()) && r.same_node(f.rhs())) return f;
      return implies(std::move(l), std::move(r));
    }

    default: {  // Equiv
      Formula l = simplify(f.lhs());
      Formula r = simplify(f.rhs());
      if (l.is_const()) return l.const_value() ? r : simplify(~std::move(r));
      if (r.is_const()) return r.const_value() ? l : simplify(~std::move(l));
      if (l == r) return Formula::constant(true);
      if (l.same_node(f.lhs()) && r.same_node(f.rhs())) return f;
      return iff(std::move(l), std::move(r));
    }
  }
}

/// Eliminates boolean exists-quantifiers over `atoms` by Shannon expansion:
/// each atom p is replaced by body[p:=false] | body[p:=true]. Atoms are
/// processed in sorted order, innermost first, simplifying between steps.
inline Formula shannon_exists(const Formula& body, const Vocabulary& atoms) {
  Formula f = body;
  std::vector<std::string> sorted(atoms.begin(), atoms.end());
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
    f = simplify(substitute(f, *it, Formula::constant(false)) |
                 substitute(f, *it, Formula::constant(true)));
  }
  return f;
}

/// Dual of shannon_exists: body[p:=false] & body[p:=true] per atom.
inline Formula shannon_forall(const Formula& body, const Vocabulary& atoms) {
  Formula f = body;
  std::vector<std::string> sorted(atoms.begin(), atoms.end());
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
    f = simplify(substitute(f, *it, Formula::constant(false)) &
                 substitute(f, *it, Formula::constant(true)));
  }
  return f;
}

enum class Quantifier { Exists, ForAll };

/// A block of boolean second-order quantifiers in front of a body.
struct QuantifiedFormula {
  QuantifiedFormula(Quantifier q, Vocabulary bound, Formula b)
      : quantifier(q), bound_atoms(std::move(bound)), body(std::move(b)) {
    if (bound_atoms.empty()) throw std::invalid_argument("quantifier block binds no atoms");
  }

  Quantifier quantifier;
  Vocabulary bound_atoms;
  Formula body;
};

inline Formula eliminate(const QuantifiedFormula& qf) {
  return qf.quantifier == Quantifier::Exists ? shannon_exists(qf.body, qf.bound_atoms)
                                             : shannon_forall(qf.body, qf.bound_atoms);
}

/// Occurrence parity of an atom. Antecedents of -> count as one negation;
/// both sides of <-> count as occurring under both parities.
enum class Polarity { Positive, Negative, Mixed, Absent };

namespace detail {

struct OccurrenceFlags {
  bool positive = false;
  bool negative = false;
};

inline void scan_polarity(const Formula& f, const std::string& atom, bool flipped, OccurrenceFlags& out) {
  switch (f.kind()) {
    case Kind::Atom:
      if (f.atom_name() == atom) {
        if (flipped)
          out.negative = true;
        else
          out.positive = true;
      }
      return;
    case Kind::Const:
      return;
    case Kind::Not:
      scan_polarity(f.child(), atom, !flipped, out);
      return;
    case Kind::And:
    case Kind::Or:
      scan_polarity(f.lhs(), atom, flipped, out);
      scan_polarity(f.rhs(), atom, flipped, out);
      return;
    case Kind::Implies:
      scan_polarity(f.lhs(), atom, !flipped, out);
      scan_polarity(f.rhs(), atom, flipped, out);
      return;
    default:  // Equiv: each occurrence is effectively under both parities
      if (mentions(f.lhs(), atom) || mentions(f.rhs(), atom)) {
        out.positive = true;
        out.negative = true;
      }
      return;
  }
}

}  // namespace detail

inline Polarity polarity(const Formula& f, const std::string& atom) {
  detail::OccurrenceFlags flags;
  detail::scan_polarity(f, atom, false, flags);
  if (flags.positive && flags.negative) return Polarity::Mixed;
  if (flags.positive) return Polarity::Positive;
  if (flags.negative) return Polarity::Negative;
  return Polarity::Absent;
}

/// Propositional Ackermann elimination of exists-atom from a conjunction.
/// Looks for a pivot conjunct (atom -> A) with the rest positive in the atom,
/// or (A -> atom) with the rest negative, A atom-free in both cases, and
/// substitutes A for the atom in the rest. Returns nullopt when no pivot
/// fits; the caller falls back to Shannon expansion.
inline std::optional<Formula> ackermann(const Formula& body, const std::string& atom) {
  std::vector<Formula> raw;
  detail::flatten(Kind::And, body, raw);

  // Definitional equivalences with the pivot atom on either side feed both
  // pivot shapes, so split them into the two implications first.
  std::vector<Formula> conjuncts;
  conjuncts.reserve(raw.size());
  for (const Formula& c : raw) {
    bool pivot_equiv = c.kind() == Kind::Equiv &&
                       ((c.lhs().is_atom() && c.lhs().atom_name() == atom) ||
                        (c.rhs().is_atom() && c.rhs().atom_name() == atom));
    if (pivot_equiv) {
      conjuncts.push_back(implies(c.lhs(), c.rhs()));
      conjuncts.push_back(implies(c.rhs(), c.lhs()));
    } else {
      conjuncts.push_back(c);
    }
  }

  auto rest_of = [&](std::size_t skip) {
    std::optional<Formula> acc;
    for (std::size_t j = 0; j < conjuncts.size(); ++j) {
      if (j == skip) continue;
      acc = acc ? (*std::move(acc) & conjuncts[j]) : conjuncts[j];
    }
    return acc ? *acc : Formula::constant(true);
  };

  for (std::size_t i = 0; i < conjuncts.size(); ++i) {
    const Formula& c = conjuncts[i];
    if (c.kind() != Kind::Implies) continue;
    const Formula l = c.lhs(), r = c.rhs();

    if (l.is_atom() && l.atom_name() == atom && !mentions(r, atom)) {
      Formula rest = rest_of(i);
      Polarity p = polarity(rest, atom);
      if (p == Polarity::Positive || p == Polarity::Absent)
        return simplify(substitute(rest, atom, r));
    }
    if (r.is_atom() && r.atom_name() == atom && !mentions(l, atom)) {
      Formula rest = rest_of(i);
      Polarity p = polarity(rest, atom);
      if (p == Polarity::Negative || p == Polarity::Absent)
        return simplify(substitute(rest, atom, l));
    }
  }
  return std::nullopt;
}

}  // namespace bb
