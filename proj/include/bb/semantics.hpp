#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bb/formula.hpp"

namespace bb {

/// Hard ceiling on the number of distinct atoms an exhaustive check may
/// enumerate over. Checks beyond the limit fail loudly instead of silently
/// degrading.
inline constexpr std::size_t kDefaultAtomLimit = 20;

class UnboundAtomError : public std::runtime_error {
 public:
  explicit UnboundAtomError(const std::string& atom)
      : std::runtime_error("atom '" + atom + "' is not bound in this world"), atom_(atom) {}
  const std::string& atom() const { return atom_; }

 private:
  std::string atom_;
};

class VocabularyLimitError : public std::runtime_error {
 public:
  VocabularyLimitError(std::size_t atom_count, std::size_t limit)
      : std::runtime_error("vocabulary has " + std::to_string(atom_count) +
                           " atoms, exceeding the enumeration limit of " + std::to_string(limit)),
        atom_count_(atom_count),
        limit_(limit) {}
  std::size_t atom_count() const { return atom_count_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t atom_count_;
  std::size_t limit_;
};

/// Total truth assignment over a finite vocabulary.
class World {
 public:
  World() = default;
  explicit World(std::map<std::string, bool> assignment) : assignment_(std::move(assignment)) {}

  bool value(const std::string& atom) const {
    auto it = assignment_.find(atom);
    if (it == assignment_.end()) throw UnboundAtomError(atom);
    return it->second;
  }
  bool binds(const std::string& atom) const { return assignment_.count(atom) != 0; }
  void assign(const std::string& atom, bool v) { assignment_[atom] = v; }

  const std::map<std::string, bool>& assignment() const { return assignment_; }
  friend bool operator==(const World& x, const World& y) { return x.assignment_ == y.assignment_; }

 private:
  std::map<std::string, bool> assignment_;
};

/// Standard truth-functional evaluation; every atom of f must be bound in w.
inline bool evaluate(const Formula& f, const World& w) {
  switch (f.kind()) {
    case Kind::Atom:
      return w.value(f.atom_name());
    case Kind::Const:
      return f.const_value();
    case Kind::Not:
      return !evaluate(f.child(), w);
    case Kind::And:
      return evaluate(f.lhs(), w) && evaluate(f.rhs(), w);
    case Kind::Or:
      return evaluate(f.lhs(), w) || evaluate(f.rhs(), w);
    case Kind::Implies:
      return !evaluate(f.lhs(), w) || evaluate(f.rhs(), w);
    default:
      return evaluate(f.lhs(), w) == evaluate(f.rhs(), w);
  }
}

namespace detail {

// Formula evaluator over index-compiled worlds, used by the enumerator to
// avoid per-world map lookups.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, const std::map<std::string, std::size_t>& index)
      : root_(build(f, index)) {}

  bool eval(const std::vector<bool>& values) const { return eval(root_, values); }

 private:
  struct Expr {
    Kind kind;
    bool value = false;
    std::size_t atom = 0;
    int a = -1, b = -1;
  };

  int build(const Formula& f, const std::map<std::string, std::size_t>& index) {
    Expr e;
    e.kind = f.kind();
    switch (f.kind()) {
      case Kind::Atom:
        e.atom = index.at(f.atom_name());
        break;
      case Kind::Const:
        e.value = f.const_value();
        break;
      case Kind::Not:
        e.a = build(f.child(), index);
        break;
      default:
        e.a = build(f.lhs(), index);
        e.b = build(f.rhs(), index);
    }
    nodes_.push_back(e);
    return static_cast<int>(nodes_.size()) - 1;
  }

  bool eval(int i, const std::vector<bool>& values) const {
    const Expr& e = nodes_[i];
    switch (e.kind) {
      case Kind::Atom:
        return values[e.atom];
      case Kind::Const:
        return e.value;
      case Kind::Not:
        return !eval(e.a, values);
      case Kind::And:
        return eval(e.a, values) && eval(e.b, values);
      case Kind::Or:
        return eval(e.a, values) || eval(e.b, values);
      case Kind::Implies:
        return !eval(e.a, values) || eval(e.b, values);
      default:
        return eval(e.a, values) == eval(e.b, values);
    }
  }

  std::vector<Expr> nodes_;
  int root_;
};

}  // namespace detail

/// First world over the combined vocabulary that satisfies every premise
/// formula but falsifies the conclusion, or nullopt when the entailment
/// holds. Worlds are enumerated with atoms sorted lexicographically and the
/// last atom toggling fastest, so the reported world is deterministic.
inline std::optional<World> countermodel(const Theory& premise, const Formula& conclusion,
                                         std::size_t max_atoms = kDefaultAtomLimit) {
  Vocabulary vocab = premise.vocab();
  collect_vocabulary(conclusion, vocab);
  if (vocab.size() > max_atoms) throw VocabularyLimitError(vocab.size(), max_atoms);

  std::map<std::string, std::size_t> index;
  std::vector<std::string> atoms(vocab.begin(), vocab.end());
  for (std::size_t i = 0; i < atoms.size(); ++i) index[atoms[i]] = i;

  std::vector<detail::CompiledFormula> premises;
  premises.reserve(premise.size());
  for (const Formula& f : premise) premises.emplace_back(f, index);
  detail::CompiledFormula goal(conclusion, index);

  const std::size_t n = atoms.size();
  std::vector<bool> values(n, false);
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) {
    for (std::size_t j = 0; j < n; ++j) values[j] = (w >> (n - 1 - j)) & 1u;
    bool premise_holds = true;
    for (const auto& p : premises) {
      if (!p.eval(values)) {
        premise_holds = false;
        break;
      }
    }
    if (!premise_holds || goal.eval(values)) continue;
    std::map<std::string, bool> assignment;
    for (std::size_t j = 0; j < n; ++j) assignment[atoms[j]] = values[j];
    return World(std::move(assignment));
  }
  return std::nullopt;
}

/// True iff every world over the combined vocabulary satisfying all premise
/// formulas satisfies the conclusion. An empty premise tests tautology.
inline bool entails(const Theory& premise, const Formula& conclusion,
                    std::size_t max_atoms = kDefaultAtomLimit) {
  return !countermodel(premise, conclusion, max_atoms).has_value();
}

/// True iff assumptions |= a <-> b.
inline bool equivalent(const Formula& a, const Formula& b, const Theory& assumptions,
                       std::size_t max_atoms = kDefaultAtomLimit) {
  return entails(assumptions, iff(a, b), max_atoms);
}

inline bool equivalent(const Theory& a, const Theory& b, const Theory& assumptions,
                       std::size_t max_atoms = kDefaultAtomLimit) {
  return equivalent(a.as_formula(), b.as_formula(), assumptions, max_atoms);
}

/// Finite set of atoms held true; everything unlisted is false.
class FactBase {
 public:
  FactBase() = default;
  explicit FactBase(std::set<std::string> true_atoms) : true_atoms_(std::move(true_atoms)) {}
  FactBase(std::initializer_list<std::string> atoms) : true_atoms_(atoms) {}

  bool holds(const std::string& atom) const { return true_atoms_.count(atom) != 0; }
  const std::set<std::string>& true_atoms() const { return true_atoms_; }

 private:
  std::set<std::string> true_atoms_;
};

/// Evaluates q in the closed-world completion of the fact base: atoms absent
/// from the base are false.
inline bool query(const FactBase& facts, const Formula& q) {
  std::map<std::string, bool> assignment;
  for (const std::string& atom : facts.true_atoms()) assignment[atom] = true;
  for (const std::string& atom : vocabulary(q)) {
    if (!assignment.count(atom)) assignment[atom] = false;
  }
  return evaluate(q, World(std::move(assignment)));
}

}  // namespace bb
