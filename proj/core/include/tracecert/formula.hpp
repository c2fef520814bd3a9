#ifndef TRACECERT_FORMULA_HPP
#define TRACECERT_FORMULA_HPP

#include <cassert>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "tracecert/errors.hpp"

namespace tracecert {

// A literal over variable `var` (>= 1), positive or negated.
struct Lit {
  int var = 0;
  bool pos = true;

  static Lit from_dimacs(int l) {
    assert(l != 0);
    return Lit{l < 0 ? -l : l, l > 0};
  }
  int to_dimacs() const { return pos ? var : -var; }
  Lit negated() const { return Lit{var, !pos}; }

  friend bool operator==(const Lit&, const Lit&) = default;
  friend auto operator<=>(const Lit&, const Lit&) = default;
};

using Clause = std::vector<Lit>;

inline Clause clause_from_dimacs(const std::vector<int>& lits) {
  Clause c;
  c.reserve(lits.size());
  for (int l : lits) c.push_back(Lit::from_dimacs(l));
  return c;
}

enum class Polarity { Positive, Negative };

// Polarized propositional formulas as the kernel consumes them. Atoms are
// positive, their negations negative; conjunction is positive, disjunction
// negative. The other two polarized connectives never arise from translated
// clauses, so they do not exist here: a negative conjunction or a positive
// disjunction cannot be built.
//
// Values are immutable trees behind shared nodes; copying is cheap and
// structural equality is the only equality.
class Formula {
public:
  enum class Kind : std::uint8_t { PosAtom, NegAtom, AndPos, OrNeg, True, False };

  static Formula pos_atom(int var);
  static Formula neg_atom(int var);
  static Formula and_pos(Formula left, Formula right);
  static Formula or_neg(Formula left, Formula right);
  static Formula truth();
  static Formula falsity();

  Kind kind() const;
  Polarity polarity() const;
  bool is_positive() const { return polarity() == Polarity::Positive; }
  bool is_negative() const { return polarity() == Polarity::Negative; }

  // Atoms only.
  int var() const;
  // Connectives only.
  const Formula& left() const;
  const Formula& right() const;

  // De Morgan dual: swaps atom sign, AndPos/OrNeg, True/False. An involution.
  Formula negated() const;

  // Prefix text: x(3), not(x(3)), and(A,B), or(A,B), true, false.
  std::string to_string() const;

  bool operator==(const Formula& other) const;

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Kind kind;
  int var;
  Formula child_left;  // null-node Formula on leaves; never exposed there
  Formula child_right;
};

inline Formula Formula::pos_atom(int var) {
  assert(var >= 1);
  return Formula(std::make_shared<const Node>(
      Node{Kind::PosAtom, var, Formula(nullptr), Formula(nullptr)}));
}

inline Formula Formula::neg_atom(int var) {
  assert(var >= 1);
  return Formula(std::make_shared<const Node>(
      Node{Kind::NegAtom, var, Formula(nullptr), Formula(nullptr)}));
}

inline Formula Formula::and_pos(Formula l, Formula r) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::AndPos, 0, std::move(l), std::move(r)}));
}

inline Formula Formula::or_neg(Formula l, Formula r) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::OrNeg, 0, std::move(l), std::move(r)}));
}

inline Formula Formula::truth() {
  static const auto n = std::make_shared<const Node>(
      Node{Kind::True, 0, Formula(nullptr), Formula(nullptr)});
  return Formula(n);
}

inline Formula Formula::falsity() {
  static const auto n = std::make_shared<const Node>(
      Node{Kind::False, 0, Formula(nullptr), Formula(nullptr)});
  return Formula(n);
}

inline Formula::Kind Formula::kind() const { return node_->kind; }

inline Polarity Formula::polarity() const {
  switch (kind()) {
    case Kind::PosAtom:
    case Kind::AndPos:
    case Kind::True:
      return Polarity::Positive;
    case Kind::NegAtom:
    case Kind::OrNeg:
    case Kind::False:
      return Polarity::Negative;
  }
  std::abort();
}

inline int Formula::var() const {
  assert(kind() == Kind::PosAtom || kind() == Kind::NegAtom);
  return node_->var;
}

inline const Formula& Formula::left() const {
  assert(kind() == Kind::AndPos || kind() == Kind::OrNeg);
  return node_->child_left;
}

inline const Formula& Formula::right() const {
  assert(kind() == Kind::AndPos || kind() == Kind::OrNeg);
  return node_->child_right;
}

Formula negate(const Formula& f);
inline Formula Formula::negated() const { return negate(*this); }

bool equal(const Formula& a, const Formula& b);
inline bool Formula::operator==(const Formula& other) const { return equal(*this, other); }

std::string to_string(const Formula& f);
inline std::string Formula::to_string() const { return tracecert::to_string(*this); }

// The formula a literal denotes: x(v) or not(x(v)).
inline Formula literal_formula(Lit l) {
  return l.pos ? Formula::pos_atom(l.var) : Formula::neg_atom(l.var);
}

// Right-nested conjunction of the *negations* of c's literals; this is the
// negation image of the clause, so the empty clause (whose negation is
// vacuously true) is the caller's business.
Formula clause_to_conjunction(const Clause& c);

// Right-nested disjunction of c's literals verbatim; empty clause -> false,
// singleton -> the bare atom.
Formula clause_to_disjunction(const Clause& c);

} // namespace tracecert

#endif
