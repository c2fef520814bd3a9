#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "fixtures.hpp"
#include "tracecert/errors.hpp"
#include "tracecert/harness.hpp"
#include "tracecert/oracle.hpp"
#include "tracecert/translate.hpp"

using namespace tracecert;

TEST_CASE("the running example translates structurally") {
  const TranslatedProblem p = build_translated(fixtures::trace_from(fixtures::kSquareTrace));

  const Formula n1 = Formula::neg_atom(1), n2 = Formula::neg_atom(2);
  const Formula p1 = Formula::pos_atom(1), p2 = Formula::pos_atom(2);
  const Formula want_root = Formula::or_neg(
      Formula::and_pos(n1, n2),
      Formula::or_neg(Formula::and_pos(p1, n2),
                      Formula::or_neg(Formula::and_pos(n1, p2),
                                      Formula::and_pos(p1, p2))));
  CHECK(p.root == want_root);
  CHECK(p.dex_list == std::vector<int>{1, 2, 3, 4});

  REQUIRE(p.cut_chains.size() == 2);
  CHECK(p.cut_chains[0].index == 5);
  CHECK(p.cut_chains[0].decide_list == std::vector<int>{3, 1});
  CHECK(p.cut_chains[0].cut_formula == Formula::pos_atom(1));
  CHECK(p.cut_chains[1].index == 6);
  CHECK(p.cut_chains[1].decide_list == std::vector<int>{4, 2, 5});
  CHECK(p.cut_chains[1].cut_formula == Formula::falsity());
  CHECK(p.warnings.empty());
}

TEST_CASE("a lone original is the whole root") {
  const TranslatedProblem p = build_translated(fixtures::trace_from("1 1 0 0\n"));
  CHECK(p.root == Formula::neg_atom(1));
  CHECK(p.dex_list == std::vector<int>{1});
  CHECK(p.cut_chains.empty());
}

TEST_CASE("originals keep trace order, whatever their indices") {
  const TranslatedProblem p =
      build_translated(fixtures::trace_from("2 1 0 0\n7 -1 0 0\n9 0 2 7 0\n"));
  CHECK(p.root == Formula::or_neg(Formula::neg_atom(1), Formula::pos_atom(1)));
  CHECK(p.dex_list == std::vector<int>{2, 7});
  REQUIRE(p.cut_chains.size() == 1);
  CHECK(p.cut_chains[0].decide_list == std::vector<int>{2, 7});
}

TEST_CASE("an empty original contributes a vacuously true disjunct") {
  const TranslatedProblem p =
      build_translated(fixtures::trace_from("1 0 0\n2 1 0 0\n"));
  CHECK(p.root == Formula::or_neg(Formula::truth(), Formula::neg_atom(1)));
}

TEST_CASE("derived unit clauses become bare cut atoms") {
  const TranslatedProblem p =
      build_translated(fixtures::trace_from(fixtures::kTwinLemmaTrace));
  REQUIRE(p.cut_chains.size() == 3);
  CHECK(p.cut_chains[0].cut_formula == Formula::pos_atom(2));
  CHECK(p.cut_chains[1].cut_formula == Formula::pos_atom(4));
  CHECK(p.cut_chains[2].cut_formula == Formula::falsity());
}

TEST_CASE("translation errors") {
  SUBCASE("implicit literals must be resolved first") {
    CHECK_THROWS_AS(build_translated(
                        fixtures::trace_from(fixtures::kSquareTraceImplicit)),
                    TranslateError);
  }
  SUBCASE("a trace needs at least one original") {
    CHECK_THROWS_AS(build_translated(fixtures::trace_from("")), TranslateError);
    CHECK_THROWS_AS(build_translated(fixtures::trace_from("3 1 0 1 2 0\n")),
                    TranslateError);
  }
  SUBCASE("antecedents must name some chain in the trace") {
    CHECK_THROWS_AS(
        build_translated(fixtures::trace_from("1 1 0 0\n2 0 1 9 0\n")),
        TranslateError);
  }
}

TEST_CASE("chains after an empty-clause chain are flagged, not dropped") {
  const TranslatedProblem p = build_translated(
      fixtures::trace_from("1 1 0 0\n2 -1 0 0\n3 0 1 2 0\n4 1 0 1 2 0\n"));
  REQUIRE(p.cut_chains.size() == 2);
  REQUIRE(p.warnings.size() == 1);
  CHECK(p.warnings[0] ==
        "chain 4 follows an empty-clause chain and will never be examined");
}

TEST_CASE("dump lists root, dex, chains, and warnings") {
  const TranslatedProblem p =
      build_translated(fixtures::trace_from(fixtures::kSquareTrace));
  const std::string text = dump_translated(p);
  CHECK(text ==
        "root: or(and(not(x(1)),not(x(2))),or(and(x(1),not(x(2))),"
        "or(and(not(x(1)),x(2)),and(x(1),x(2)))))\n"
        "dex: 1 2 3 4\n"
        "chain 5: decide [3 1] formula x(1)\n"
        "chain 6: decide [4 2 5] formula false\n");
}

TEST_CASE("the root is the negation of the clause set") {
  // On every assignment the root must evaluate opposite to the conjunction
  // of the originals.
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const CnfProblem cnf = sample_cnf(9, 14, seed);
    TraceFile t;
    for (std::size_t i = 0; i < cnf.clauses.size(); ++i)
      t.chains.push_back(
          Chain{static_cast<int>(i) + 1, cnf.clauses[i], {}});
    const TranslatedProblem p = build_translated(t);

    for (std::uint64_t mask = 0; mask < (1u << 9); ++mask) {
      std::vector<bool> assignment(10);
      for (int v = 1; v <= 9; ++v) assignment[v] = (mask >> (v - 1)) & 1;
      bool all_clauses = true;
      for (const Clause& c : cnf.clauses)
        all_clauses = all_clauses && eval_clause(c, assignment);
      CHECK(eval_formula(p.root, assignment) == !all_clauses);
    }
  }
}
