#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bb {

enum class Kind { Atom, Const, Not, And, Or, Implies, Equiv };

inline bool valid_atom_name(const std::string& name) {
  if (name.empty()) return false;
  auto head = [](char c) { return c == '_' || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
  auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
  if (!head(name[0])) return false;
  return std::all_of(name.begin() + 1, name.end(), tail);
}

/// Immutable propositional formula. Copies share structure; all operations
/// build new formulas rather than mutating.
class Formula {
 public:
  static Formula atom(std::string name) {
    if (!valid_atom_name(name))
      throw std::invalid_argument("invalid atom name: '" + name + "'");
    return Formula(std::make_shared<Node>(Node{Kind::Atom, false, std::move(name), nullptr, nullptr}));
  }
  static Formula constant(bool value) {
    return Formula(std::make_shared<Node>(Node{Kind::Const, value, {}, nullptr, nullptr}));
  }
  static Formula negation(Formula f) {
    return Formula(std::make_shared<Node>(Node{Kind::Not, false, {}, std::move(f.node_), nullptr}));
  }
  static Formula conjunction(Formula l, Formula r) { return binary(Kind::And, std::move(l), std::move(r)); }
  static Formula disjunction(Formula l, Formula r) { return binary(Kind::Or, std::move(l), std::move(r)); }
  static Formula implication(Formula l, Formula r) { return binary(Kind::Implies, std::move(l), std::move(r)); }
  static Formula equivalence(Formula l, Formula r) { return binary(Kind::Equiv, std::move(l), std::move(r)); }

  Kind kind() const { return node_->kind; }
  bool is_atom() const { return node_->kind == Kind::Atom; }
  bool is_const() const { return node_->kind == Kind::Const; }
  bool is_binary() const {
    Kind k = node_->kind;
    return k == Kind::And || k == Kind::Or || k == Kind::Implies || k == Kind::Equiv;
  }

  const std::string& atom_name() const {
    require(Kind::Atom);
    return node_->name;
  }
  bool const_value() const {
    require(Kind::Const);
    return node_->value;
  }
  /// Operand of a negation.
  Formula child() const {
    require(Kind::Not);
    return Formula(node_->a);
  }
  Formula lhs() const {
    require_binary();
    return Formula(node_->a);
  }
  Formula rhs() const {
    require_binary();
    return Formula(node_->b);
  }

  std::size_t node_count() const { return count(node_.get()); }

  /// Structural equality.
  friend bool operator==(const Formula& x, const Formula& y) { return equal(x.node_.get(), y.node_.get()); }
  friend bool operator!=(const Formula& x, const Formula& y) { return !(x == y); }

  /// True when both handles point at the very same node.
  bool same_node(const Formula& other) const { return node_ == other.node_; }

 private:
  struct Node {
    Kind kind;
    bool value;        // Const only
    std::string name;  // Atom only
    std::shared_ptr<const Node> a, b;
  };
  using NodePtr = std::shared_ptr<const Node>;

  explicit Formula(NodePtr n) : node_(std::move(n)) {}

  static Formula binary(Kind k, Formula l, Formula r) {
    return Formula(std::make_shared<Node>(Node{k, false, {}, std::move(l.node_), std::move(r.node_)}));
  }

  void require(Kind k) const {
    if (node_->kind != k) throw std::logic_error("formula node kind mismatch");
  }
  void require_binary() const {
    if (!is_binary()) throw std::logic_error("formula node kind mismatch");
  }

  static std::size_t count(const Node* n) {
    if (!n) return 0;
    return 1 + count(n->a.get()) + count(n->b.get());
  }

  static bool equal(const Node* x, const Node* y) {
    if (x == y) return true;
    if (x->kind != y->kind) return false;
    switch (x->kind) {
      case Kind::Atom:
        return x->name == y->name;
      case Kind::Const:
        return x->value == y->value;
      case Kind::Not:
        return equal(x->a.get(), y->a.get());
      default:
        return equal(x->a.get(), y->a.get()) && equal(x->b.get(), y->b.get());
    }
  }

  NodePtr node_;
};

inline Formula operator~(Formula f) { return Formula::negation(std::move(f)); }
inline Formula operator&(Formula l, Formula r) { return Formula::conjunction(std::move(l), std::move(r)); }
inline Formula operator|(Formula l, Formula r) { return Formula::disjunction(std::move(l), std::move(r)); }
inline Formula implies(Formula l, Formula r) { return Formula::implication(std::move(l), std::move(r)); }
inline Formula iff(Formula l, Formula r) { return Formula::equivalence(std::move(l), std::move(r)); }

/// Finite set of atom names.
using Vocabulary = std::set<std::string>;

inline void collect_vocabulary(const Formula& f, Vocabulary& out) {
  switch (f.kind()) {
    case Kind::Atom:
      out.insert(f.atom_name());
      break;
    case Kind::Const:
      break;
    case Kind::Not:
      collect_vocabulary(f.child(), out);
      break;
    default:
      collect_vocabulary(f.lhs(), out);
      collect_vocabulary(f.rhs(), out);
  }
}

inline Vocabulary vocabulary(const Formula& f) {
  Vocabulary v;
  collect_vocabulary(f, v);
  return v;
}

inline bool mentions(const Formula& f, const std::string& atom) {
  switch (f.kind()) {
    case Kind::Atom:
      return f.atom_name() == atom;
    case Kind::Const:
      return false;
    case Kind::Not:
      return mentions(f.child(), atom);
    default:
      return mentions(f.lhs(), atom) || mentions(f.rhs(), atom);
  }
}

/// Replaces every occurrence of `atom` by `replacement`. Untouched subtrees
/// are shared with the input.
inline Formula substitute(const Formula& f, const std::string& atom, const Formula& replacement) {
  switch (f.kind()) {
    case Kind::Atom:
      return f.atom_name() == atom ? replacement : f;
    case Kind::Const:
      return f;
    case Kind::Not: {
      Formula c = substitute(f.child(), atom, replacement);
      return c.same_node(f.child()) ? f : Formula::negation(std::move(c));
    }
    default: {
      Formula l = substitute(f.lhs(), atom, replacement);
      Formula r = substitute(f.rhs(), atom, replacement);
      if (l.same_node(f.lhs()) && r.same_node(f.rhs())) return f;
      switch (f.kind()) {
        case Kind::And:
          return Formula::conjunction(std::move(l), std::move(r));
        case Kind::Or:
          return Formula::disjunction(std::move(l), std::move(r));
        case Kind::Implies:
          return Formula::implication(std::move(l), std::move(r));
        default:
          return Formula::equivalence(std::move(l), std::move(r));
      }
    }
  }
}

/// Path of child indices from the root of a subject formula; 0 addresses the
/// left (or only) child, 1 the right one. Two positions overlap exactly when
/// one path is a prefix of the other.
struct Position {
  std::vector<int> path;

  bool is_prefix_of(const Position& other) const {
    if (path.size() > other.path.size()) return false;
    return std::equal(path.begin(), path.end(), other.path.begin());
  }
  bool overlaps(const Position& other) const { return is_prefix_of(other) || other.is_prefix_of(*this); }

  friend bool operator==(const Position& x, const Position& y) { return x.path == y.path; }
  friend bool operator!=(const Position& x, const Position& y) { return !(x == y); }
  friend bool operator<(const Position& x, const Position& y) { return x.path < y.path; }
};

inline void enumerate_subformulas(const Formula& f, Position at,
                                  std::vector<std::pair<Position, Formula>>& out) {
  out.emplace_back(at, f);
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Const:
      break;
    case Kind::Not: {
      Position p = at;
      p.path.push_back(0);
      enumerate_subformulas(f.child(), std::move(p), out);
      break;
    }
    default: {
      Position l = at, r = at;
      l.path.push_back(0);
      r.path.push_back(1);
      enumerate_subformulas(f.lhs(), std::move(l), out);
      enumerate_subformulas(f.rhs(), std::move(r), out);
    }
  }
}

/// Pre-order enumeration of every node with its path; the root has the empty
/// path.
inline std::vector<std::pair<Position, Formula>> positioned_subformulas(const Formula& f) {
  std::vector<std::pair<Position, Formula>> out;
  enumerate_subformulas(f, Position{}, out);
  return out;
}

/// Finite sequence of formulas read as their conjunction; the empty theory
/// is true.
class Theory {
 public:
  Theory() = default;
  Theory(std::initializer_list<Formula> fs) : formulas_(fs) {}
  explicit Theory(std::vector<Formula> fs) : formulas_(std::move(fs)) {}

  bool empty() const { return formulas_.empty(); }
  std::size_t size() const { return formulas_.size(); }
  const std::vector<Formula>& formulas() const { return formulas_; }
  auto begin() const { return formulas_.begin(); }
  auto end() const { return formulas_.end(); }
  void push_back(Formula f) { formulas_.push_back(std::move(f)); }

  /// The conjunction of all member formulas; true when empty.
  Formula as_formula() const {
    if (formulas_.empty()) return Formula::constant(true);
    Formula acc = formulas_.front();
    for (std::size_t i = 1; i < formulas_.size(); ++i) acc = acc & formulas_[i];
    return acc;
  }

  Vocabulary vocab() const {
    Vocabulary v;
    for (const Formula& f : formulas_) collect_vocabulary(f, v);
    return v;
  }

 private:
  std::vector<Formula> formulas_;
};

inline Vocabulary vocabulary(const Theory& t) { return t.vocab(); }

namespace detail {

inline const char* connective_text(Kind k) {
  switch (k) {
    case Kind::And:
      return " & ";
    case Kind::Or:
      return " | ";
    case Kind::Implies:
      return " -> ";
    default:
      return " <-> ";
  }
}

inline void render_full(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::Atom:
      out += f.atom_name();
      break;
    case Kind::Const:
      out += f.const_value() ? "true" : "false";
      break;
    case Kind::Not:
      out += '~';
      render_full(f.child(), out);
      break;
    default:
      out += '(';
      render_full(f.lhs(), out);
      out += connective_text(f.kind());
      render_full(f.rhs(), out);
      out += ')';
  }
}

}  // namespace detail

/// Fully parenthesized canonical text; parse(render(f)) == f.
inline std::string render(const Formula& f) {
  std::string out;
  detail::render_full(f, out);
  return out;
}

/// Same text with the outermost pair of parentheses dropped.
inline std::string render_pretty(const Formula& f) {
  std::string out = render(f);
  if (f.is_binary()) return out.substr(1, out.size() - 2);
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << render_pretty(f); }

}  // namespace bb
