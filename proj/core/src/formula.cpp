#include "tracecert/formula.hpp"

namespace tracecert {

Formula negate(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::PosAtom: return Formula::neg_atom(f.var());
    case K::NegAtom: return Formula::pos_atom(f.var());
    case K::AndPos: return Formula::or_neg(negate(f.left()), negate(f.right()));
    case K::OrNeg: return Formula::and_pos(negate(f.left()), negate(f.right()));
    case K::True: return Formula::falsity();
    case K::False: return Formula::truth();
  }
  std::abort();
}

bool equal(const Formula& a, const Formula& b) {
  using K = Formula::Kind;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case K::PosAtom:
    case K::NegAtom:
      return a.var() == b.var();
    case K::AndPos:
    case K::OrNeg:
      return equal(a.left(), b.left()) && equal(a.right(), b.right());
    case K::True:
    case K::False:
      return true;
  }
  std::abort();
}

std::string to_string(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::PosAtom: return "x(" + std::to_string(f.var()) + ")";
    case K::NegAtom: return "not(x(" + std::to_string(f.var()) + "))";
    case K::AndPos: return "and(" + to_string(f.left()) + "," + to_string(f.right()) + ")";
    case K::OrNeg: return "or(" + to_string(f.left()) + "," + to_string(f.right()) + ")";
    case K::True: return "true";
    case K::False: return "false";
  }
  std::abort();
}

Formula clause_to_conjunction(const Clause& c) {
  if (c.empty())
    throw TranslateError("empty clause has no conjunctive form");
  // Right-nested, so build from the last literal backward.
  Formula acc = literal_formula(c.back().negated());
  for (std::size_t i = c.size() - 1; i-- > 0;)
    acc = Formula::and_pos(literal_formula(c[i].negated()), std::move(acc));
  return acc;
}

Formula clause_to_disjunction(const Clause& c) {
  if (c.empty()) return Formula::falsity();
  Formula acc = literal_formula(c.back());
  for (std::size_t i = c.size() - 1; i-- > 0;)
    acc = Formula::or_neg(literal_formula(c[i]), std::move(acc));
  return acc;
}

} // namespace tracecert
