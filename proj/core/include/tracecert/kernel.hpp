#ifndef TRACECERT_KERNEL_HPP
#define TRACECERT_KERNEL_HPP

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tracecert/formula.hpp"

// The trusted checking engine: a polarized, focused sequent calculus for the
// propositional fragment built from formula.hpp's four connectives. The
// engine owns rule dispatch, storage, and backtracking; everything
// proof-specific lives in a guidance object whose callbacks may only narrow
// the choices (pick a cut formula, pick a decide index, admit or refuse a
// rule). Guidance can therefore cause rejection, never wrong acceptance.
//
// Guidance is a duck-typed template parameter. It must provide:
//
//   using certificate_type = ...;                  // immutable value
//   bool init_e(const C&) const;
//   std::vector<CutCandidate<C>>     cut_e(const C&) const;
//   std::vector<IndexedCandidate<C>> decide_e(const C&) const;
//   std::vector<IndexedCandidate<C>> store_e(const C&, const Formula&) const;
//   std::vector<C>                   release_e(const C&) const;
//   std::vector<SplitCandidate<C>>   and_e(const C&) const;
//   std::vector<C>                   or_e(const C&) const;
//
// Candidates are tried in the returned order; the engine backtracks through
// them depth-first. Callbacks must be pure. A callback that throws, or that
// hands back a malformed index, surfaces as Verdict::GuidanceError.

namespace tracecert {

template <typename Cert>
struct CutCandidate {
  Cert left;
  Cert right;
  Formula formula;
};

template <typename Cert>
struct IndexedCandidate {
  Cert cert;
  int index = -1;
};

template <typename Cert>
struct SplitCandidate {
  Cert left;
  Cert right;
};

// Hypothesis storage. `sl` holds positive formulas under an integer index;
// index -1 may repeat (an anonymous bucket), any other index must be unique.
// `nl` holds negated atoms only, and deliberately without indices: they are
// consulted by the init rule, never decided on.
struct Storage {
  std::vector<std::pair<int, Formula>> sl;  // oldest first
  std::vector<Formula> nl;
};

// A sequent's right-hand side. Unfocused carries a worklist of formulas
// (head first); Focused carries exactly one formula under focus.
struct Goal {
  enum class Phase { Unfocused, Focused };
  Phase phase = Phase::Unfocused;
  std::vector<Formula> formulas;

  static Goal unfocused(std::vector<Formula> fs) {
    return Goal{Phase::Unfocused, std::move(fs)};
  }
  static Goal focused(Formula f) {
    return Goal{Phase::Focused, {std::move(f)}};
  }
};

enum class Verdict { Accepted, Rejected, BudgetExceeded, GuidanceError };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Accepted: return "accepted";
    case Verdict::Rejected: return "rejected";
    case Verdict::BudgetExceeded: return "budget-exceeded";
    case Verdict::GuidanceError: return "guidance-error";
  }
  return "?";
}

// One rule application on the accepted derivation's depth-first spine,
// recorded only when CheckOptions::record_rule_trace is set. `arg` is the
// decide or store index where the rule has one, else -1.
struct RuleEvent {
  enum class Rule : std::uint8_t {
    FocusedTrue,
    UnfocusedTrue,
    DropFalse,
    Init,
    Release,
    Cut,
    Decide,
    AndSplit,
    OrSplit,
    StoreNeg,
    StorePos,
  };
  Rule rule;
  int arg = -1;
};

struct CheckOptions {
  // Abort with Verdict::BudgetExceeded once nodes_visited reaches this;
  // 0 means unlimited.
  std::uint64_t node_budget = 0;
  bool record_rule_trace = false;
};

struct CheckReport {
  Verdict verdict = Verdict::Rejected;
  // Rule applications attempted. Every candidate the engine actually starts
  // counts one node, whether or not its subproof closes.
  std::uint64_t nodes_visited = 0;
  // Deepest sequent reached (root sequent = 1).
  std::uint64_t max_depth = 0;
  // Alternatives entered beyond the first at some sequent, i.e. how often
  // the engine resumed a choice point after a failure.
  std::uint64_t backtracks = 0;
  // Failed decide alternatives, split by whether the guidance named a
  // storage index or probed the anonymous bucket.
  std::uint64_t named_decide_failures = 0;
  std::uint64_t probe_decide_failures = 0;
  std::vector<RuleEvent> rule_trace;
  std::string guidance_message;  // set iff verdict == GuidanceError
};

// Thrown (internally, and by guidance that wants to abort) when a callback
// misbehaves; check() converts it to Verdict::GuidanceError.
struct GuidanceViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

template <typename G>
class Engine {
public:
  using Cert = typename G::certificate_type;

  Engine(const G& guide, const CheckOptions& opts) : guide_(guide), opts_(opts) {}

  CheckReport run(const Cert& cert, Storage store, Goal goal) {
    load(std::move(store));
    bool ok = false;
    try {
      if (goal.phase == Goal::Phase::Focused) {
        assert(goal.formulas.size() == 1);
        ok = prove_focused(cert, goal.formulas.front(), 1);
      } else {
        // Internal worklist keeps the head at the back.
        for (auto it = goal.formulas.rbegin(); it != goal.formulas.rend(); ++it)
          stack_.push_back(*it);
        ok = prove_unfocused(cert, 1);
      }
    } catch (const std::exception& e) {
      rep_.verdict = Verdict::GuidanceError;
      rep_.guidance_message = e.what();
      return std::move(rep_);
    }
    if (aborted_)
      rep_.verdict = Verdict::BudgetExceeded;
    else
      rep_.verdict = ok ? Verdict::Accepted : Verdict::Rejected;
    return std::move(rep_);
  }

private:
  const G& guide_;
  CheckOptions opts_;
  CheckReport rep_;
  bool aborted_ = false;

  std::unordered_map<int, Formula> named_;  // sl, unique indices; lookup only
  std::vector<Formula> anon_;               // sl index -1 bucket, newest last
  std::vector<int> nl_;                     // vars of stored negated atoms
  std::vector<Formula> stack_;              // unfocused worklist, head at back

  void load(Storage store) {
    for (auto& [index, f] : store.sl) {
      if (!f.is_positive())
        throw GuidanceViolation("storage: sl entries must be positive");
      if (index == -1) {
        anon_.push_back(std::move(f));
      } else if (index < -1 || !named_.emplace(index, std::move(f)).second) {
        throw GuidanceViolation("storage: bad or duplicate sl index " +
                                std::to_string(index));
      }
    }
    for (auto& f : store.nl) {
      if (f.kind() != Formula::Kind::NegAtom)
        throw GuidanceViolation("storage: nl entries must be negated atoms");
      nl_.push_back(f.var());
    }
  }

  // Each attempted rule application costs one node; hitting the budget trips
  // a flag that makes every pending choice point fail without further work.
  bool tick() {
    ++rep_.nodes_visited;
    if (opts_.node_budget != 0 && rep_.nodes_visited >= opts_.node_budget)
      aborted_ = true;
    return !aborted_;
  }

  void touch_depth(std::uint64_t depth) {
    if (depth > rep_.max_depth) rep_.max_depth = depth;
  }

  std::size_t trace_mark() const { return rep_.rule_trace.size(); }
  void trace_cut_back(std::size_t mark) {
    if (opts_.record_rule_trace) rep_.rule_trace.resize(mark);
  }
  void record(RuleEvent::Rule rule, int arg = -1) {
    if (opts_.record_rule_trace) rep_.rule_trace.push_back(RuleEvent{rule, arg});
  }

  // Counts entered alternatives at one sequent so that resuming after a
  // failure is visible in the report.
  struct AltCounter {
    CheckReport& rep;
    int started = 0;
    void begin() {
      if (++started >= 2) ++rep.backtracks;
    }
  };

  bool prove_unfocused(const Cert& cert, std::uint64_t depth) {
    if (aborted_) return false;
    touch_depth(depth);
    if (stack_.empty()) return prove_unfocused_empty(cert, depth);

    const Formula head = stack_.back();
    switch (head.kind()) {
      case Formula::Kind::True:
        // An unfocused true closes the branch outright.
        if (!tick()) return false;
        record(RuleEvent::Rule::UnfocusedTrue);
        return true;

      case Formula::Kind::False: {
        // A stored false would assert nothing; drop it.
        if (!tick()) return false;
        const std::size_t mark = trace_mark();
        record(RuleEvent::Rule::DropFalse);
        stack_.pop_back();
        const bool ok = prove_unfocused(cert, depth + 1);
        stack_.push_back(head);
        if (!ok) trace_cut_back(mark);
        return ok;
      }

      case Formula::Kind::OrNeg: {
        AltCounter alt{rep_};
        for (const Cert& next : guide_.or_e(cert)) {
          if (aborted_) return false;
          alt.begin();
          if (!tick()) return false;
          const std::size_t mark = trace_mark();
          record(RuleEvent::Rule::OrSplit);
          stack_.pop_back();
          stack_.push_back(head.right());
          stack_.push_back(head.left());
          const bool ok = prove_unfocused(next, depth + 1);
          stack_.pop_back();
          stack_.pop_back();
          stack_.push_back(head);
          if (ok) return true;
          trace_cut_back(mark);
        }
        return false;
      }

      case Formula::Kind::NegAtom: {
        // Store a negated atom; the index the guidance hands back is
        // consumed but not kept, since nl entries are never decided on.
        AltCounter alt{rep_};
        for (const auto& cand : guide_.store_e(cert, head)) {
          if (aborted_) return false;
          alt.begin();
          if (!tick()) return false;
          const std::size_t mark = trace_mark();
          record(RuleEvent::Rule::StoreNeg);
          stack_.pop_back();
          nl_.push_back(head.var());
          const bool ok = prove_unfocused(cand.cert, depth + 1);
          nl_.pop_back();
          stack_.push_back(head);
          if (ok) return true;
          trace_cut_back(mark);
        }
        return false;
      }

      case Formula::Kind::PosAtom:
      case Formula::Kind::AndPos: {
        AltCounter alt{rep_};
        for (const auto& cand : guide_.store_e(cert, head)) {
          if (aborted_) return false;
          alt.begin();
          if (!tick()) return false;
          const std::size_t mark = trace_mark();
          record(RuleEvent::Rule::StorePos, cand.index);
          stack_.pop_back();
          bool stored_named = false;
          if (cand.index == -1) {
            anon_.push_back(head);
          } else if (cand.index < -1) {
            throw GuidanceViolation("store_e returned bad index " +
                                    std::to_string(cand.index));
          } else if (named_.emplace(cand.index, head).second) {
            stored_named = true;
          } else {
            throw GuidanceViolation("store_e reused index " +
                                    std::to_string(cand.index));
          }
          const bool ok = prove_unfocused(cand.cert, depth + 1);
          if (stored_named)
            named_.erase(cand.index);
          else
            anon_.pop_back();
          stack_.push_back(head);
          if (ok) return true;
          trace_cut_back(mark);
        }
        return false;
      }
    }
    return false;  // unreachable
  }

  // Unfocused sequent with an exhausted worklist: cut or decide.
  bool prove_unfocused_empty(const Cert& cert, std::uint64_t depth) {
    AltCounter alt{rep_};

    for (const auto& cand : guide_.cut_e(cert)) {
      if (aborted_) return false;
      alt.begin();
      if (!tick()) return false;
      const std::size_t mark = trace_mark();
      record(RuleEvent::Rule::Cut);
      stack_.push_back(cand.formula);
      const bool left = prove_unfocused(cand.left, depth + 1);
      stack_.pop_back();
      if (left) {
        stack_.push_back(negate(cand.formula));
        const bool right = prove_unfocused(cand.right, depth + 1);
        stack_.pop_back();
        if (right) return true;
      }
      trace_cut_back(mark);
    }

    for (const auto& cand : guide_.decide_e(cert)) {
      if (aborted_) return false;
      if (cand.index >= 0) {
        auto it = named_.find(cand.index);
        if (it == named_.end()) {
          // The guidance asked for an index nothing was stored under; a
          // failed alternative, though no rule ever fired.
          ++rep_.named_decide_failures;
          continue;
        }
        alt.begin();
        if (!tick()) return false;
        const std::size_t mark = trace_mark();
        record(RuleEvent::Rule::Decide, cand.index);
        if (prove_focused(cand.cert, it->second, depth + 1)) return true;
        ++rep_.named_decide_failures;
        trace_cut_back(mark);
      } else {
        if (anon_.empty()) {
          ++rep_.probe_decide_failures;
          continue;
        }
        // Most recently stored first.
        for (auto rit = anon_.rbegin(); rit != anon_.rend(); ++rit) {
          if (aborted_) return false;
          alt.begin();
          if (!tick()) return false;
          const std::size_t mark = trace_mark();
          record(RuleEvent::Rule::Decide, -1);
          if (prove_focused(cand.cert, *rit, depth + 1)) return true;
          ++rep_.probe_decide_failures;
          trace_cut_back(mark);
        }
      }
    }
    return false;
  }

  bool prove_focused(const Cert& cert, const Formula& f, std::uint64_t depth) {
    if (aborted_) return false;
    touch_depth(depth);

    switch (f.kind()) {
      case Formula::Kind::True:
        if (!tick()) return false;
        record(RuleEvent::Rule::FocusedTrue);
        return true;

      case Formula::Kind::PosAtom: {
        // init: the complementary literal must have been stored.
        if (!tick()) return false;
        record(RuleEvent::Rule::Init, f.var());
        if (!guide_.init_e(cert)) return false;
        for (auto it = nl_.rbegin(); it != nl_.rend(); ++it)
          if (*it == f.var()) return true;
        return false;
      }

      case Formula::Kind::AndPos: {
        AltCounter alt{rep_};
        for (const auto& cand : guide_.and_e(cert)) {
          if (aborted_) return false;
          alt.begin();
          if (!tick()) return false;
          const std::size_t mark = trace_mark();
          record(RuleEvent::Rule::AndSplit);
          if (prove_focused(cand.left, f.left(), depth + 1) &&
              prove_focused(cand.right, f.right(), depth + 1))
            return true;
          trace_cut_back(mark);
        }
        return false;
      }

      case Formula::Kind::NegAtom:
      case Formula::Kind::OrNeg:
      case Formula::Kind::False: {
        // release: negative under focus goes back to the unfocused phase.
        AltCounter alt{rep_};
        for (const Cert& next : guide_.release_e(cert)) {
          if (aborted_) return false;
          alt.begin();
          if (!tick()) return false;
          const std::size_t mark = trace_mark();
          record(RuleEvent::Rule::Release);
          stack_.push_back(f);
          const bool ok = prove_unfocused(next, depth + 1);
          stack_.pop_back();
          if (ok) return true;
          trace_cut_back(mark);
        }
        return false;
      }
    }
    return false;  // unreachable
  }
};

}  // namespace detail

// Runs the engine to exhaustion (or budget) and reports the verdict with its
// search counters. Deterministic: identical inputs give identical reports.
template <typename G>
CheckReport check(const typename G::certificate_type& cert, Storage store,
                  Goal goal, const G& guide, const CheckOptions& opts = {}) {
  detail::Engine<G> engine(guide, opts);
  return engine.run(cert, std::move(store), std::move(goal));
}

}  // namespace tracecert

#endif
