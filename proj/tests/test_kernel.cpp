#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <vector>

#include "tracecert/kernel.hpp"

using namespace tracecert;

namespace {

// Guidance with scriptable choice points. The certificate is a bare integer
// that scripts may use to tell branches apart; store defaults to the
// anonymous bucket and release/and/or pass the certificate through.
struct TestGuidance {
  using certificate_type = int;

  bool init_ok = true;
  std::function<std::vector<CutCandidate<int>>(int)> cuts =
      [](int) { return std::vector<CutCandidate<int>>{}; };
  std::function<std::vector<IndexedCandidate<int>>(int)> decides =
      [](int) { return std::vector<IndexedCandidate<int>>{}; };
  std::function<std::vector<IndexedCandidate<int>>(int, const Formula&)> stores =
      [](int c, const Formula&) {
        return std::vector<IndexedCandidate<int>>{{c, -1}};
      };

  bool init_e(int) const { return init_ok; }
  std::vector<CutCandidate<int>> cut_e(int c) const { return cuts(c); }
  std::vector<IndexedCandidate<int>> decide_e(int c) const { return decides(c); }
  std::vector<IndexedCandidate<int>> store_e(int c, const Formula& f) const {
    return stores(c, f);
  }
  std::vector<int> release_e(int c) const { return {c}; }
  std::vector<SplitCandidate<int>> and_e(int c) const { return {{c, c}}; }
  std::vector<int> or_e(int c) const { return {c}; }
};

Formula X(int v) { return Formula::pos_atom(v); }
Formula N(int v) { return Formula::neg_atom(v); }

std::vector<IndexedCandidate<int>> decide_probe(int c) {
  return {{c, -1}};
}

bool same_events(const std::vector<RuleEvent>& got,
                 const std::vector<RuleEvent>& want) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i)
    if (got[i].rule != want[i].rule || got[i].arg != want[i].arg) return false;
  return true;
}

} // namespace

TEST_CASE("a focused truth costs exactly one node") {
  const CheckReport r = check(0, Storage{}, Goal::focused(Formula::truth()),
                              TestGuidance{});
  CHECK(r.verdict == Verdict::Accepted);
  CHECK(r.nodes_visited == 1);
  CHECK(r.max_depth == 1);
  CHECK(r.backtracks == 0);
}

TEST_CASE("an unfocused truth closes the branch") {
  const CheckReport r = check(0, Storage{}, Goal::unfocused({Formula::truth()}),
                              TestGuidance{});
  CHECK(r.verdict == Verdict::Accepted);
  CHECK(r.nodes_visited == 1);
}

TEST_CASE("nothing stored, nothing to decide: rejected at zero cost") {
  const CheckReport r = check(0, Storage{}, Goal::unfocused({}), TestGuidance{});
  CHECK(r.verdict == Verdict::Rejected);
  CHECK(r.nodes_visited == 0);
}

TEST_CASE("init succeeds only against a stored complementary atom") {
  TestGuidance g;
  Storage with;
  with.nl.push_back(N(3));

  CHECK(check(0, with, Goal::focused(X(3)), g).verdict == Verdict::Accepted);
  CHECK(check(0, Storage{}, Goal::focused(X(3)), g).verdict == Verdict::Rejected);

  Storage wrong;
  wrong.nl.push_back(N(4));
  CHECK(check(0, wrong, Goal::focused(X(3)), g).verdict == Verdict::Rejected);

  // The guidance may refuse init outright.
  g.init_ok = false;
  CHECK(check(0, with, Goal::focused(X(3)), g).verdict == Verdict::Rejected);
}

TEST_CASE("the excluded middle closes through the anonymous bucket") {
  TestGuidance g;
  g.decides = decide_probe;
  const Formula f = Formula::or_neg(N(1), X(1));
  const CheckReport r = check(0, Storage{}, Goal::unfocused({f}), g,
                              CheckOptions{0, true});
  CHECK(r.verdict == Verdict::Accepted);
  CHECK(r.nodes_visited == 5);
  CHECK(same_events(r.rule_trace,
                    {{RuleEvent::Rule::OrSplit, -1},
                     {RuleEvent::Rule::StoreNeg, -1},
                     {RuleEvent::Rule::StorePos, -1},
                     {RuleEvent::Rule::Decide, -1},
                     {RuleEvent::Rule::Init, 1}}));
}

TEST_CASE("a stored false is dropped, not used") {
  TestGuidance g;
  const Formula f = Formula::or_neg(Formula::falsity(), Formula::truth());
  const CheckReport r = check(0, Storage{}, Goal::unfocused({f}), g,
                              CheckOptions{0, true});
  CHECK(r.verdict == Verdict::Accepted);
  CHECK(same_events(r.rule_trace,
                    {{RuleEvent::Rule::OrSplit, -1},
                     {RuleEvent::Rule::DropFalse, -1},
                     {RuleEvent::Rule::UnfocusedTrue, -1}}));
}

TEST_CASE("a focused negative releases back to the unfocused phase") {
  TestGuidance g;
  g.decides = [](int c) { return std::vector<IndexedCandidate<int>>{{c, 3}}; };
  Storage store;
  store.sl.emplace_back(3, X(1));

  const CheckReport r = check(0, store, Goal::focused(N(1)), g);
  CHECK(r.verdict == Verdict::Accepted);
  // release, store, decide 3, init.
  CHECK(r.nodes_visited == 4);
}

TEST_CASE("a disjunction under focus releases like any negative") {
  const Formula f =
      Formula::and_pos(Formula::or_neg(Formula::falsity(), Formula::truth()),
                       Formula::truth());
  const CheckReport r = check(0, Storage{}, Goal::focused(f), TestGuidance{},
                              CheckOptions{0, true});
  CHECK(r.verdict == Verdict::Accepted);
  CHECK(same_events(r.rule_trace,
                    {{RuleEvent::Rule::AndSplit, -1},
                     {RuleEvent::Rule::Release, -1},
                     {RuleEvent::Rule::OrSplit, -1},
                     {RuleEvent::Rule::DropFalse, -1},
                     {RuleEvent::Rule::UnfocusedTrue, -1},
                     {RuleEvent::Rule::FocusedTrue, -1}}));
}

TEST_CASE("a full cut derivation leaves the expected rule trace") {
  TestGuidance g;
  g.cuts = [](int c) {
    if (c != 0) return std::vector<CutCandidate<int>>{};
    return std::vector<CutCandidate<int>>{{1, 2, N(1)}};
  };
  g.decides = [](int c) {
    if (c == 1) return std::vector<IndexedCandidate<int>>{{c, 5}};
    return std::vector<IndexedCandidate<int>>{{c, -1}};
  };
  Storage store;
  store.sl.emplace_back(5, Formula::and_pos(X(1), X(1)));
  store.nl.push_back(N(1));

  const CheckReport r = check(0, store, Goal::unfocused({}), g,
                              CheckOptions{0, true});
  CHECK(r.verdict == Verdict::Accepted);
  CHECK(r.nodes_visited == 9);
  CHECK(same_events(r.rule_trace,
                    {{RuleEvent::Rule::Cut, -1},
                     {RuleEvent::Rule::StoreNeg, -1},
                     {RuleEvent::Rule::Decide, 5},
                     {RuleEvent::Rule::AndSplit, -1},
                     {RuleEvent::Rule::Init, 1},
                     {RuleEvent::Rule::Init, 1},
                     {RuleEvent::Rule::StorePos, -1},
                     {RuleEvent::Rule::Decide, -1},
                     {RuleEvent::Rule::Init, 1}}));
}

TEST_CASE("deciding an index nothing is stored under fails without a node") {
  TestGuidance g;
  g.decides = [](int c) { return std::vector<IndexedCandidate<int>>{{c, 9}}; };
  Storage store;
  store.sl.emplace_back(5, Formula::truth());

  const CheckReport r = check(0, store, Goal::unfocused({}), g);
  CHECK(r.verdict == Verdict::Rejected);
  CHECK(r.nodes_visited == 0);
  CHECK(r.named_decide_failures == 1);
  CHECK(r.backtracks == 0);
}

TEST_CASE("failed alternatives are counted as backtracks") {
  TestGuidance g;
  g.decides = [](int c) {
    return std::vector<IndexedCandidate<int>>{{c, 5}, {c, 6}};
  };
  Storage store;
  store.sl.emplace_back(5, X(9));  // init will fail: nothing stored for 9
  store.sl.emplace_back(6, Formula::truth());

  const CheckReport r = check(0, store, Goal::unfocused({}), g);
  CHECK(r.verdict == Verdict::Accepted);
  CHECK(r.nodes_visited == 3);  // decide 5, failed init, then decide 6
  CHECK(r.backtracks == 1);
  CHECK(r.named_decide_failures == 1);
}

TEST_CASE("an empty anonymous bucket is one probe failure, no node") {
  TestGuidance g;
  g.decides = decide_probe;
  const CheckReport r = check(0, Storage{}, Goal::unfocused({}), g);
  CHECK(r.verdict == Verdict::Rejected);
  CHECK(r.nodes_visited == 0);
  CHECK(r.probe_decide_failures == 1);
}

TEST_CASE("probing tries newest anonymous entries first") {
  TestGuidance g;
  g.decides = decide_probe;
  Storage store;
  store.sl.emplace_back(-1, X(7));
  store.sl.emplace_back(-1, Formula::truth());  // newer: tried first

  const CheckReport r = check(0, store, Goal::unfocused({}), g);
  CHECK(r.verdict == Verdict::Accepted);
  CHECK(r.nodes_visited == 2);  // one probe decide, one focused truth
  CHECK(r.probe_decide_failures == 0);
}

TEST_CASE("the budget aborts the search at an exact node count") {
  TestGuidance g;
  g.decides = decide_probe;
  const Formula f = Formula::or_neg(N(1), X(1));  // needs 5 nodes

  for (std::uint64_t budget : {1u, 3u, 4u}) {
    const CheckReport r =
        check(0, Storage{}, Goal::unfocused({f}), g, CheckOptions{budget, false});
    CHECK(r.verdict == Verdict::BudgetExceeded);
    CHECK(r.nodes_visited == budget);
  }
  const CheckReport r =
      check(0, Storage{}, Goal::unfocused({f}), g, CheckOptions{5, false});
  CHECK(r.verdict == Verdict::Accepted);
}

TEST_CASE("identical runs yield identical reports") {
  TestGuidance g;
  g.decides = [](int c) {
    return std::vector<IndexedCandidate<int>>{{c, 9}, {c, 5}, {c, -1}};
  };
  Storage store;
  store.sl.emplace_back(5, X(2));
  store.sl.emplace_back(-1, X(1));
  store.nl.push_back(N(1));

  const CheckReport a = check(0, store, Goal::unfocused({}), g, CheckOptions{0, true});
  const CheckReport b = check(0, store, Goal::unfocused({}), g, CheckOptions{0, true});
  CHECK(a.verdict == b.verdict);
  CHECK(a.nodes_visited == b.nodes_visited);
  CHECK(a.max_depth == b.max_depth);
  CHECK(a.backtracks == b.backtracks);
  CHECK(a.named_decide_failures == b.named_decide_failures);
  CHECK(a.probe_decide_failures == b.probe_decide_failures);
  CHECK(same_events(a.rule_trace, b.rule_trace));
}

TEST_CASE("extra useless candidates never turn acceptance into rejection") {
  // The same proof as "failed alternatives", with junk alternatives piled in
  // front at every choice point.
  TestGuidance g;
  g.decides = [](int c) {
    return std::vector<IndexedCandidate<int>>{{c, 41}, {c, 40}, {c, 5}, {c, 6}};
  };
  g.stores = [](int c, const Formula&) {
    return std::vector<IndexedCandidate<int>>{{c, -1}, {c, -1}};
  };
  Storage store;
  store.sl.emplace_back(5, X(9));
  store.sl.emplace_back(6, Formula::truth());

  CHECK(check(0, store, Goal::unfocused({}), g).verdict == Verdict::Accepted);
}

TEST_CASE("malformed guidance surfaces as a guidance error, not a crash") {
  SUBCASE("callback throws") {
    TestGuidance g;
    g.decides = [](int) -> std::vector<IndexedCandidate<int>> {
      throw std::runtime_error("scripted failure");
    };
    const CheckReport r = check(0, Storage{}, Goal::unfocused({}), g);
    CHECK(r.verdict == Verdict::GuidanceError);
    CHECK(r.guidance_message == "scripted failure");
  }
  SUBCASE("store reuses a named index") {
    TestGuidance g;
    g.stores = [](int c, const Formula&) {
      return std::vector<IndexedCandidate<int>>{{c, 5}};
    };
    Storage store;
    store.sl.emplace_back(5, Formula::truth());
    const CheckReport r = check(0, store, Goal::unfocused({X(1)}), g);
    CHECK(r.verdict == Verdict::GuidanceError);
  }
  SUBCASE("store hands back a negative index") {
    TestGuidance g;
    g.stores = [](int c, const Formula&) {
      return std::vector<IndexedCandidate<int>>{{c, -2}};
    };
    const CheckReport r = check(0, Storage{}, Goal::unfocused({X(1)}), g);
    CHECK(r.verdict == Verdict::GuidanceError);
  }
  SUBCASE("initial storage is validated") {
    Storage bad_sl;
    bad_sl.sl.emplace_back(1, N(1));
    CHECK(check(0, bad_sl, Goal::unfocused({}), TestGuidance{}).verdict ==
          Verdict::GuidanceError);

    Storage bad_nl;
    bad_nl.nl.push_back(X(1));
    CHECK(check(0, bad_nl, Goal::unfocused({}), TestGuidance{}).verdict ==
          Verdict::GuidanceError);

    Storage dup;
    dup.sl.emplace_back(4, Formula::truth());
    dup.sl.emplace_back(4, Formula::truth());
    CHECK(check(0, dup, Goal::unfocused({}), TestGuidance{}).verdict ==
          Verdict::GuidanceError);
  }
}

TEST_CASE("storage is restored around failed branches") {
  // First candidate stores under a name and fails deep inside; the second
  // plain probe must not see leftovers from the first.
  TestGuidance g;
  int calls = 0;
  g.stores = [&calls](int c, const Formula&) {
    ++calls;
    if (calls == 1)
      return std::vector<IndexedCandidate<int>>{{c, 7}, {c, -1}};
    return std::vector<IndexedCandidate<int>>{{c, -1}};
  };
  g.decides = [](int c) {
    // Deciding 7 succeeds only if the named store stuck; the probe follows.
    return std::vector<IndexedCandidate<int>>{{c, 7}, {c, -1}};
  };
  Storage store;
  store.nl.push_back(N(2));

  // Unfocused [x(2)]: store (named 7, then anon on retry), decide, init.
  const CheckReport r = check(0, store, Goal::unfocused({X(2)}), g);
  CHECK(r.verdict == Verdict::Accepted);
  CHECK(calls == 1);  // the named candidate already closes it
}
