#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tracecert/errors.hpp"
#include "tracecert/formula.hpp"

using namespace tracecert;

TEST_CASE("literals convert to and from signed integers") {
  CHECK(Lit::from_dimacs(3) == Lit{3, true});
  CHECK(Lit::from_dimacs(-7) == Lit{7, false});
  CHECK(Lit{5, false}.to_dimacs() == -5);
  CHECK(Lit{5, false}.negated() == Lit{5, true});
  CHECK(clause_from_dimacs({1, -2, 3}) ==
        Clause{Lit{1, true}, Lit{2, false}, Lit{3, true}});
}

TEST_CASE("kinds and polarities") {
  CHECK(Formula::pos_atom(1).kind() == Formula::Kind::PosAtom);
  CHECK(Formula::pos_atom(1).is_positive());
  CHECK(Formula::neg_atom(1).is_negative());
  CHECK(Formula::and_pos(Formula::truth(), Formula::truth()).is_positive());
  CHECK(Formula::or_neg(Formula::falsity(), Formula::falsity()).is_negative());
  CHECK(Formula::truth().is_positive());
  CHECK(Formula::falsity().is_negative());
  CHECK(Formula::pos_atom(4).var() == 4);
}

TEST_CASE("structural equality ignores sharing") {
  const Formula a = Formula::and_pos(Formula::pos_atom(1), Formula::neg_atom(2));
  const Formula b = Formula::and_pos(Formula::pos_atom(1), Formula::neg_atom(2));
  const Formula c = Formula::and_pos(Formula::neg_atom(2), Formula::pos_atom(1));
  CHECK(a == b);
  CHECK(a != c);
  CHECK(a == a);
}

TEST_CASE("negation swaps duals") {
  CHECK(negate(Formula::pos_atom(3)) == Formula::neg_atom(3));
  CHECK(negate(Formula::truth()) == Formula::falsity());
  const Formula f = Formula::and_pos(Formula::pos_atom(1), Formula::neg_atom(2));
  CHECK(negate(f) == Formula::or_neg(Formula::neg_atom(1), Formula::pos_atom(2)));
}

namespace {

Formula random_formula(std::mt19937_64& rng, int depth) {
  const int var = 1 + static_cast<int>(rng() % 9);
  switch (depth <= 0 ? rng() % 4 : rng() % 6) {
    case 0: return Formula::pos_atom(var);
    case 1: return Formula::neg_atom(var);
    case 2: return Formula::truth();
    case 3: return Formula::falsity();
    case 4:
      return Formula::and_pos(random_formula(rng, depth - 1),
                              random_formula(rng, depth - 1));
    default:
      return Formula::or_neg(random_formula(rng, depth - 1),
                             random_formula(rng, depth - 1));
  }
}

Clause random_clause(std::mt19937_64& rng) {
  Clause c;
  const std::size_t len = 1 + rng() % 5;
  for (std::size_t i = 0; i < len; ++i)
    c.push_back(Lit{1 + static_cast<int>(rng() % 9), rng() % 2 == 0});
  return c;
}

} // namespace

TEST_CASE("negation is an involution") {
  std::mt19937_64 rng(20240817);
  for (int i = 0; i < 1000; ++i) {
    const Formula f = random_formula(rng, 8);
    CHECK(negate(negate(f)) == f);
    CHECK(f.is_positive() == negate(f).is_negative());
  }
}

TEST_CASE("rendering uses prefix syntax") {
  CHECK(Formula::pos_atom(3).to_string() == "x(3)");
  CHECK(Formula::neg_atom(3).to_string() == "not(x(3))");
  CHECK(Formula::truth().to_string() == "true");
  CHECK(Formula::falsity().to_string() == "false");
  CHECK(Formula::and_pos(Formula::pos_atom(1), Formula::neg_atom(2)).to_string() ==
        "and(x(1),not(x(2)))");
  CHECK(Formula::or_neg(Formula::falsity(), Formula::truth()).to_string() ==
        "or(false,true)");
}

TEST_CASE("a clause becomes the conjunction of its negated literals") {
  // [-1, 2, -4] negates literal by literal, nesting to the right.
  const Clause c = clause_from_dimacs({-1, 2, -4});
  const Formula want = Formula::and_pos(
      Formula::pos_atom(1),
      Formula::and_pos(Formula::neg_atom(2), Formula::pos_atom(4)));
  CHECK(clause_to_conjunction(c) == want);

  CHECK(clause_to_conjunction(clause_from_dimacs({5})) == Formula::neg_atom(5));
  CHECK_THROWS_AS(clause_to_conjunction(Clause{}), TranslateError);
}

TEST_CASE("a clause becomes the disjunction of its literals verbatim") {
  const Clause c = clause_from_dimacs({-1, 2, -4});
  const Formula want = Formula::or_neg(
      Formula::neg_atom(1),
      Formula::or_neg(Formula::pos_atom(2), Formula::neg_atom(4)));
  CHECK(clause_to_disjunction(c) == want);

  CHECK(clause_to_disjunction(Clause{}) == Formula::falsity());
  CHECK(clause_to_disjunction(clause_from_dimacs({-9})) == Formula::neg_atom(9));
}

TEST_CASE("conjunction form is the negation of the disjunction form") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 500; ++i) {
    const Clause c = random_clause(rng);
    CHECK(clause_to_conjunction(c) == negate(clause_to_disjunction(c)));
  }
}
