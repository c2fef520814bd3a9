#include "tracecert/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>

#include "tracecert/errors.hpp"

namespace tracecert {

bool eval_clause(const Clause& c, const std::vector<bool>& assignment) {
  for (const Lit& l : c)
    if (assignment[static_cast<std::size_t>(l.var)] == l.pos) return true;
  return false;
}

bool eval_formula(const Formula& f, const std::vector<bool>& assignment) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::PosAtom: return assignment[static_cast<std::size_t>(f.var())];
    case K::NegAtom: return !assignment[static_cast<std::size_t>(f.var())];
    case K::AndPos:
      return eval_formula(f.left(), assignment) && eval_formula(f.right(), assignment);
    case K::OrNeg:
      return eval_formula(f.left(), assignment) || eval_formula(f.right(), assignment);
    case K::True: return true;
    case K::False: return false;
  }
  std::abort();
}

bool truth_table_unsat(const CnfProblem& p) {
  if (p.num_vars > 20)
    throw OracleError("truth table is limited to 20 variables, got " +
                      std::to_string(p.num_vars));
  const std::uint32_t total = 1u << p.num_vars;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    bool all = true;
    for (const Clause& c : p.clauses) {
      bool sat = false;
      for (const Lit& l : c)
        if (((mask >> (l.var - 1)) & 1u) == static_cast<std::uint32_t>(l.pos)) {
          sat = true;
          break;
        }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return false;
  }
  return true;
}

namespace {

// Sorted literal set.
Clause canon(Clause c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

bool has_lit(const Clause& c, Lit l) {
  return std::binary_search(c.begin(), c.end(), l);
}

// Resolvent of two canonical clauses, provided they clash on exactly one
// variable (more would make the resolvent tautological, zero means the step
// is not a resolution at all).
std::optional<Clause> resolve_once(const Clause& a, const Clause& b) {
  Lit pivot{0, true};
  int clashes = 0;
  for (const Lit& l : a)
    if (has_lit(b, l.negated())) {
      pivot = l;
      if (++clashes > 1) return std::nullopt;
    }
  if (clashes == 0) return std::nullopt;
  Clause out;
  out.reserve(a.size() + b.size() - 2);
  for (const Lit& l : a)
    if (!(l == pivot)) out.push_back(l);
  for (const Lit& l : b)
    if (!(l == pivot.negated())) out.push_back(l);
  return canon(std::move(out));
}

} // namespace

Clause verify_chain_resolution(const Chain& ch,
                               const std::map<int, Clause>& context) {
  const std::string tag = "chain " + std::to_string(ch.index);
  const std::size_t n = ch.antecedents.size();
  if (n == 0) throw OracleError(tag + ": no antecedents to resolve");
  if (n > 20) throw OracleError(tag + ": too many antecedents to search");

  std::vector<Clause> ants;
  ants.reserve(n);
  for (int a : ch.antecedents) {
    auto it = context.find(a);
    if (it == context.end())
      throw OracleError(tag + ": antecedent " + std::to_string(a) +
                        " is not available");
    ants.push_back(canon(it->second));
  }

  std::optional<Clause> want;
  if (ch.literals) want = canon(*ch.literals);
  const std::uint32_t full = (n == 32) ? ~0u : (1u << n) - 1u;

  // Depth-first over antecedent orderings, pruning states (used set,
  // running resolvent) already explored.
  std::set<std::pair<std::uint32_t, Clause>> seen;
  std::optional<Clause> found;
  auto dfs = [&](auto&& self, std::uint32_t used, const Clause& cur) -> bool {
    if (used == full) {
      if (want && !(cur == *want)) return false;
      found = cur;
      return true;
    }
    if (!seen.insert({used, cur}).second) return false;
    for (std::size_t i = 0; i < n; ++i) {
      if (used & (1u << i)) continue;
      if (auto next = resolve_once(cur, ants[i]))
        if (self(self, used | (1u << i), *next)) return true;
    }
    return false;
  };
  for (std::size_t i = 0; i < n && !found; ++i)
    dfs(dfs, 1u << i, ants[i]);

  if (!found)
    throw OracleError(tag + (want ? ": no linear resolution ordering of the"
                                    " antecedents derives its literals"
                                  : ": no linear resolution ordering of the"
                                    " antecedents goes through"));
  return *found;
}

TraceFile resolve_implicit(const TraceFile& t) {
  TraceFile out = t;
  std::map<int, Clause> context;
  for (Chain& ch : out.chains) {
    if (ch.has_implicit_literals()) {
      Chain probe = ch;  // literals stay unset: any resolvent is acceptable
      ch.literals = verify_chain_resolution(probe, context);
    }
    context[ch.index] = *ch.literals;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trace generation.
//
// The prover records every resolution as a binary step (positive parent,
// negative parent, pivot). Unit propagation runs to a fixpoint, then
// variables are eliminated in ascending order, propagating again after each,
// until the empty clause shows up (the input was already confirmed UNSAT, so
// it must). The binary steps touching the empty clause are then fused into
// longer chains wherever a parent is derived and used only once, which is
// what gives the emitted traces antecedent lists worth permuting.

namespace {

struct Parents {
  int pos = 0;   // id of the clause contributing the positive pivot literal
  int neg = 0;
  int pivot = 0; // 0 marks an original clause
};

struct Prover {
  std::vector<Clause> clauses{Clause{}};  // 1-based ids
  std::vector<Parents> parents{Parents{}};
  std::vector<char> active{0};
  std::map<Clause, int> known;            // canonical clause -> first id
  std::vector<int> units;                 // stack: finish one unit's fallout first
  int empty_id = 0;
  int n_orig = 0;

  explicit Prover(const CnfProblem& p) {
    n_orig = static_cast<int>(p.clauses.size());
    for (const Clause& raw : p.clauses) {
      Clause c = canon(raw);
      const int id = static_cast<int>(clauses.size());
      clauses.push_back(c);
      parents.push_back(Parents{});
      bool taut = false;
      for (const Lit& l : c)
        if (has_lit(c, l.negated())) taut = true;
      // Duplicates stay in the trace as originals but only the first copy
      // takes part in the search; tautologies take no part at all.
      const bool usable = !taut && known.try_emplace(c, id).second;
      active.push_back(usable ? 1 : 0);
      if (usable && c.empty() && !empty_id) empty_id = id;
      if (usable && c.size() == 1) units.push_back(id);
    }
  }

  void add_resolvent(int pos_id, int neg_id, int pivot, Clause r) {
    if (known.count(r)) return;
    const int id = static_cast<int>(clauses.size());
    if (id > 100000)
      throw OracleError("resolution saturation blew past the clause cap");
    known.emplace(r, id);
    clauses.push_back(r);
    parents.push_back(Parents{pos_id, neg_id, pivot});
    active.push_back(1);
    if (r.empty() && !empty_id) empty_id = id;
    if (r.size() == 1) units.push_back(id);
  }

  void propagate() {
    while (!units.empty() && !empty_id) {
      const int uid = units.back();
      units.pop_back();
      if (!active[static_cast<std::size_t>(uid)]) continue;
      const Lit u = clauses[static_cast<std::size_t>(uid)][0];
      const int snapshot = static_cast<int>(clauses.size());
      for (int cid = 1; cid < snapshot && !empty_id; ++cid) {
        if (!active[static_cast<std::size_t>(cid)] || cid == uid) continue;
        const Clause& c = clauses[static_cast<std::size_t>(cid)];
        if (has_lit(c, u)) {
          active[static_cast<std::size_t>(cid)] = 0;  // subsumed by the unit
          continue;
        }
        if (!has_lit(c, u.negated())) continue;
        if (auto r = resolve_once(c, clauses[static_cast<std::size_t>(uid)])) {
          add_resolvent(u.pos ? uid : cid, u.pos ? cid : uid, u.var,
                        std::move(*r));
          active[static_cast<std::size_t>(cid)] = 0;  // subsumed by resolvent
        }
      }
    }
  }

  void eliminate(int num_vars) {
    propagate();
    for (int v = 1; v <= num_vars && !empty_id; ++v) {
      std::vector<int> pos, neg;
      for (int id = 1; id < static_cast<int>(clauses.size()); ++id) {
        if (!active[static_cast<std::size_t>(id)]) continue;
        if (has_lit(clauses[static_cast<std::size_t>(id)], Lit{v, true}))
          pos.push_back(id);
        else if (has_lit(clauses[static_cast<std::size_t>(id)], Lit{v, false}))
          neg.push_back(id);
      }
      if (!pos.empty() && !neg.empty()) {
        for (int pi : pos) {
          for (int nj : neg) {
            if (auto r = resolve_once(clauses[static_cast<std::size_t>(pi)],
                                      clauses[static_cast<std::size_t>(nj)]))
              add_resolvent(pi, nj, v, std::move(*r));
            if (empty_id) break;
          }
          if (empty_id) break;
        }
      }
      // With the variable resolved away (or pure), its clauses are spent.
      for (int id : pos) active[static_cast<std::size_t>(id)] = 0;
      for (int id : neg) active[static_cast<std::size_t>(id)] = 0;
      propagate();
    }
  }
};

} // namespace

std::optional<TraceFile> generate_trace(const CnfProblem& p) {
  if (p.num_vars > 16)
    throw OracleError("trace generation is limited to 16 variables, got " +
                      std::to_string(p.num_vars));
  if (!truth_table_unsat(p)) return std::nullopt;

  Prover prover(p);
  if (!prover.empty_id) prover.eliminate(p.num_vars);
  if (!prover.empty_id)
    throw OracleError("saturation missed the empty clause on an UNSAT input");

  const int n_orig = prover.n_orig;
  const auto& parents = prover.parents;
  const auto& clauses = prover.clauses;

  // Keep only the steps the empty clause actually descends from.
  std::vector<char> needed(clauses.size(), 0);
  std::vector<int> work{prover.empty_id};
  while (!work.empty()) {
    const int id = work.back();
    work.pop_back();
    if (needed[static_cast<std::size_t>(id)]) continue;
    needed[static_cast<std::size_t>(id)] = 1;
    if (parents[static_cast<std::size_t>(id)].pivot != 0) {
      work.push_back(parents[static_cast<std::size_t>(id)].pos);
      work.push_back(parents[static_cast<std::size_t>(id)].neg);
    }
  }

  std::vector<int> survivors;  // derived, ascending
  std::unordered_map<int, int> uses;
  for (int id = n_orig + 1; id < static_cast<int>(clauses.size()); ++id) {
    if (!needed[static_cast<std::size_t>(id)]) continue;
    survivors.push_back(id);
    const Parents& par = parents[static_cast<std::size_t>(id)];
    if (par.pos > n_orig) ++uses[par.pos];
    if (par.neg > n_orig) ++uses[par.neg];
  }

  // Fusion. Every step decides its positive parent first, then its negative
  // parent, so a parent that is derived, used nowhere else, and within the
  // length cap can donate its own antecedent list in place of its index:
  //  - through the positive parent P, when the pivot occurs exactly once
  //    among P's collected clauses and in the last live one (the pivot's
  //    branch is then the link into N);
  //  - through the negative parent N unconditionally, with P up front (or,
  //    when P is a unit, parked at the tail, since a stored unit is reached
  //    through the literal it planted rather than by index).
  // When both parents qualify, the one already carrying the longer list wins,
  // so a long chain keeps growing instead of being chopped at every merge.
  // "Live" antecedents are decided in order; "dead" ones are positive units
  // whose planted literal does the work, kept at the tail.
  constexpr std::size_t live_cap = 10;
  struct Emitted {
    std::vector<int> live, dead;
    bool absorbed = false;
  };
  std::unordered_map<int, Emitted> emitted;

  for (int z : survivors) {
    const Parents& par = parents[static_cast<std::size_t>(z)];
    const int P = par.pos;
    const int N = par.neg;
    const bool p_unit = clauses[static_cast<std::size_t>(P)].size() == 1;
    Emitted e;

    auto pos_extendable = [&]() -> bool {
      if (P <= n_orig || uses[P] != 1) return false;
      const Emitted& ep = emitted[P];
      if (ep.live.size() + 1 > live_cap) return false;
      const Lit pivot{par.pivot, true};
      int occurrences = 0;
      for (int a : ep.live)
        occurrences += has_lit(clauses[static_cast<std::size_t>(a)], pivot);
      for (int a : ep.dead)
        occurrences += has_lit(clauses[static_cast<std::size_t>(a)], pivot);
      return occurrences == 1 &&
             has_lit(clauses[static_cast<std::size_t>(ep.live.back())], pivot);
    };
    auto neg_extendable = [&]() -> bool {
      if (N <= n_orig || uses[N] != 1) return false;
      return emitted[N].live.size() + (p_unit ? 0 : 1) <= live_cap;
    };

    const bool pos_ok = pos_extendable();
    const bool neg_ok = neg_extendable();
    if (pos_ok &&
        (!neg_ok || emitted[P].live.size() >= emitted[N].live.size())) {
      Emitted& ep = emitted[P];
      e.live = ep.live;
      e.live.push_back(N);
      e.dead = ep.dead;
      ep.absorbed = true;
    } else if (neg_ok) {
      Emitted& en = emitted[N];
      if (p_unit) {
        e.live = en.live;
        e.dead = en.dead;
        e.dead.push_back(P);
      } else {
        e.live.push_back(P);
        e.live.insert(e.live.end(), en.live.begin(), en.live.end());
        e.dead = en.dead;
      }
      en.absorbed = true;
    } else if (p_unit) {
      e.live = {N};
      e.dead = {P};
    } else {
      e.live = {P, N};
    }
    emitted[z] = std::move(e);
  }

  // Renumber: originals keep 1..C, surviving unabsorbed steps follow.
  std::unordered_map<int, int> renumber;
  for (int i = 1; i <= n_orig; ++i) renumber[i] = i;
  int next_index = n_orig + 1;
  for (int z : survivors)
    if (!emitted[z].absorbed) renumber[z] = next_index++;

  TraceFile out;
  for (int i = 1; i <= n_orig; ++i)
    out.chains.push_back(Chain{i, p.clauses[static_cast<std::size_t>(i - 1)], {}});
  for (int z : survivors) {
    const Emitted& e = emitted[z];
    if (e.absorbed) continue;
    Chain ch;
    ch.index = renumber[z];
    ch.literals = clauses[static_cast<std::size_t>(z)];
    for (int a : e.live) ch.antecedents.push_back(renumber.at(a));
    for (int a : e.dead) ch.antecedents.push_back(renumber.at(a));
    out.chains.push_back(std::move(ch));
  }
  return out;
}

} // namespace tracecert
