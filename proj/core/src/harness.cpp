#include "tracecert/harness.hpp"

#include <algorithm>
#include <fstream>
#include <random>

#include "tracecert/errors.hpp"
#include "tracecert/translate.hpp"

namespace tracecert {

namespace {

// Seeded generator with engine-only arithmetic, so sequences are identical
// across standard libraries.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  std::uint64_t next(std::uint64_t bound) { return eng() % bound; }
};

template <typename T>
void shuffle_vec(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng.next(i)]);
}

std::string join_ints(const std::vector<int>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(xs[i]);
  }
  return s;
}

CheckReport run_check(const TraceFile& explicit_trace, CheckMode mode,
                      std::uint64_t budget) {
  TranslatedProblem p = build_translated(explicit_trace);
  CheckOptions opts;
  opts.node_budget = budget;
  return check_trace(p, mode, opts);
}

ExperimentRecord make_record(const std::string& trace_id, int chain_index,
                             std::string permutation, CheckMode mode,
                             const CheckReport& report) {
  ExperimentRecord rec;
  rec.trace_id = trace_id;
  rec.chain_index = chain_index;
  rec.permutation = std::move(permutation);
  rec.mode = mode;
  rec.verdict = report.verdict;
  rec.nodes = report.nodes_visited;
  rec.backtracks = report.backtracks;
  rec.budget_hit = report.verdict == Verdict::BudgetExceeded;
  return rec;
}

ExperimentSummary summarize(const std::vector<ExperimentRecord>& records,
                            const TraceFile& trace) {
  ExperimentSummary s;

  std::vector<std::uint64_t> nodes;
  for (const ExperimentRecord& r : records) {
    if (r.budget_hit) {
      ++s.timeouts;
      continue;
    }
    if (r.verdict == Verdict::Accepted) ++s.accepted;
    nodes.push_back(r.nodes);
  }
  if (!nodes.empty()) {
    std::sort(nodes.begin(), nodes.end());
    s.best_nodes = nodes.front();
    s.worst_nodes = nodes.back();
    const std::size_t n = nodes.size();
    s.median_nodes = (n % 2) ? double(nodes[n / 2])
                             : (double(nodes[n / 2 - 1]) + double(nodes[n / 2])) / 2.0;
    double sum = 0;
    for (std::uint64_t v : nodes) sum += double(v);
    s.mean_nodes = sum / double(n);
  }

  std::vector<std::size_t> lens;
  for (const Chain& ch : trace.chains)
    if (!ch.is_original()) lens.push_back(ch.antecedents.size());
  if (!lens.empty()) {
    std::sort(lens.begin(), lens.end());
    s.longest_chain_len = lens.back();
    const std::size_t n = lens.size();
    s.median_chain_len = (n % 2) ? double(lens[n / 2])
                                 : (double(lens[n / 2 - 1]) + double(lens[n / 2])) / 2.0;
    double sum = 0;
    for (std::size_t v : lens) sum += double(v);
    s.avg_chain_len = sum / double(n);
  }
  return s;
}

std::vector<int> derived_index_order(const TraceFile& t) {
  std::vector<int> order;
  for (const Chain& ch : t.chains)
    if (!ch.is_original()) order.push_back(ch.index);
  return order;
}

} // namespace

int find_longest_chain(const TraceFile& t) {
  const Chain* best = nullptr;
  for (const Chain& ch : t.chains) {
    if (ch.is_original()) continue;
    if (!best || ch.antecedents.size() > best->antecedents.size()) best = &ch;
  }
  if (!best) throw HarnessError("trace has no derived chains");
  return best->index;
}

TraceFile swap_chains(const TraceFile& t, std::size_t i, std::size_t j) {
  if (i >= t.chains.size() || j >= t.chains.size())
    throw HarnessError("chain position out of range");
  for (std::size_t pos : {i, j})
    if (t.chains[pos].is_original())
      throw HarnessError("position " + std::to_string(pos) +
                         " holds an original clause, not a derived chain");
  TraceFile out = t;
  std::swap(out.chains[i], out.chains[j]);
  return out;
}

ExperimentResult run_experiment1(const TraceFile& t, const std::string& trace_id,
                                 std::uint64_t budget) {
  const TraceFile base = resolve_implicit(t);

  std::vector<std::size_t> dpos;
  for (std::size_t i = 0; i < base.chains.size(); ++i)
    if (!base.chains[i].is_original()) dpos.push_back(i);

  ExperimentResult result;
  auto run_variant = [&](const TraceFile& variant) {
    result.records.push_back(make_record(
        trace_id, -1, join_ints(derived_index_order(variant)),
        CheckMode::Backtracking,
        run_check(variant, CheckMode::Backtracking, budget)));
  };

  run_variant(base);
  for (std::size_t k = 0; k + 1 < dpos.size(); ++k)
    run_variant(swap_chains(base, dpos[k], dpos[k + 1]));

  result.summary = summarize(result.records, base);
  return result;
}

ExperimentResult run_experiment2(const TraceFile& t, const std::string& trace_id,
                                 std::uint64_t budget, std::size_t sample_cap,
                                 std::uint64_t seed) {
  const TraceFile base = resolve_implicit(t);
  const int target = find_longest_chain(base);
  const std::size_t pos = static_cast<std::size_t>(base.position_of(target));
  const std::vector<int>& ants = base.chains[pos].antecedents;
  const std::size_t n = ants.size();

  // n! without overflow worry (antecedent lists are far below 20).
  std::uint64_t total = 1;
  for (std::size_t i = 2; i <= n && total <= sample_cap; ++i) total *= i;

  std::vector<std::vector<int>> perms;
  if (total <= sample_cap) {
    std::vector<int> p = ants;
    std::sort(p.begin(), p.end());
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  } else {
    Rng rng(seed);
    for (std::size_t k = 0; k < sample_cap; ++k) {
      std::vector<int> p = ants;
      shuffle_vec(p, rng);
      perms.push_back(std::move(p));
    }
  }

  ExperimentResult result;
  for (const std::vector<int>& p : perms) {
    TraceFile variant = base;
    variant.chains[pos].antecedents = p;
    result.records.push_back(
        make_record(trace_id, target, join_ints(p), CheckMode::Backtracking,
                    run_check(variant, CheckMode::Backtracking, budget)));
  }
  result.summary = summarize(result.records, base);
  return result;
}

ExperimentResult run_experiment3(const TraceFile& t, const std::string& trace_id,
                                 std::uint64_t budget, std::uint64_t combo_cap) {
  const TraceFile base = resolve_implicit(t);

  std::vector<std::size_t> dpos;
  for (std::size_t i = 0; i < base.chains.size(); ++i)
    if (!base.chains[i].is_original()) dpos.push_back(i);

  std::uint64_t total = 1;
  for (std::size_t p : dpos) {
    const std::size_t n = base.chains[p].antecedents.size();
    for (std::size_t i = 2; i <= n; ++i) {
      total *= i;
      if (total > combo_cap)
        throw HarnessError(
            "combination count exceeds the cap of " + std::to_string(combo_cap) +
            "; use a smaller trace or raise the cap");
    }
  }

  // Lexicographic permutations per chain; the odometer spins the last chain
  // fastest.
  std::vector<std::vector<std::vector<int>>> perms;
  for (std::size_t p : dpos) {
    std::vector<int> a = base.chains[p].antecedents;
    std::sort(a.begin(), a.end());
    std::vector<std::vector<int>> list;
    do {
      list.push_back(a);
    } while (std::next_permutation(a.begin(), a.end()));
    perms.push_back(std::move(list));
  }

  ExperimentResult result;
  std::vector<std::size_t> odo(dpos.size(), 0);
  for (std::uint64_t combo = 0; combo < total; ++combo) {
    TraceFile variant = base;
    std::string label;
    for (std::size_t c = 0; c < dpos.size(); ++c) {
      variant.chains[dpos[c]].antecedents = perms[c][odo[c]];
      if (c) label += " / ";
      label += join_ints(perms[c][odo[c]]);
    }
    result.records.push_back(
        make_record(trace_id, -1, label, CheckMode::Strict,
                    run_check(variant, CheckMode::Strict, budget)));
    for (std::size_t c = dpos.size(); c-- > 0;) {
      if (++odo[c] < perms[c].size()) break;
      odo[c] = 0;
    }
  }
  result.summary = summarize(result.records, base);
  return result;
}

TraceFile reorder_trace(const TraceFile& t) {
  TraceFile out = resolve_implicit(t);
  TranslatedProblem p = build_translated(out);

  CheckOptions opts;
  opts.record_rule_trace = true;
  const CheckReport report = check_trace(p, CheckMode::Backtracking, opts);
  if (report.verdict != Verdict::Accepted)
    throw HarnessError("trace is not accepted (" +
                       std::string(to_string(report.verdict)) +
                       "); nothing to reorder");

  // Cut events arrive in chain order; the named decides between cut k and
  // cut k+1 are chain k's left branch spending its antecedents.
  std::vector<std::vector<int>> spent(p.cut_chains.size());
  std::size_t current = 0;
  bool inside = false;
  for (const RuleEvent& ev : report.rule_trace) {
    if (ev.rule == RuleEvent::Rule::Cut) {
      current = inside ? current + 1 : 0;
      inside = true;
    } else if (inside && ev.rule == RuleEvent::Rule::Decide && ev.arg >= 0) {
      std::vector<int>& s = spent[current];
      if (std::find(s.begin(), s.end(), ev.arg) == s.end()) s.push_back(ev.arg);
    }
  }

  for (std::size_t k = 0; k < p.cut_chains.size(); ++k) {
    const int index = p.cut_chains[k].index;
    Chain& ch = out.chains[static_cast<std::size_t>(out.position_of(index))];
    std::vector<int> reordered = spent[k];
    for (int a : ch.antecedents)
      if (std::find(reordered.begin(), reordered.end(), a) == reordered.end())
        reordered.push_back(a);
    ch.antecedents = std::move(reordered);
  }
  return out;
}

std::string to_csv(const std::vector<ExperimentRecord>& records) {
  std::string out =
      "trace_id,chain_index,permutation,mode,verdict,nodes,backtracks,budget_hit\n";
  for (const ExperimentRecord& r : records) {
    out += r.trace_id + ',' + std::to_string(r.chain_index) + ",\"" +
           r.permutation + "\"," +
           (r.mode == CheckMode::Strict ? "strict" : "backtracking") + ',' +
           to_string(r.verdict) + ',' + std::to_string(r.nodes) + ',' +
           std::to_string(r.backtracks) + ',' + (r.budget_hit ? "1" : "0") + '\n';
  }
  return out;
}

void write_csv(const std::string& path, const std::vector<ExperimentRecord>& records) {
  std::ofstream out(path);
  if (!out) throw HarnessError("cannot open '" + path + "' for writing");
  out << to_csv(records);
  if (!out) throw HarnessError("write to '" + path + "' failed");
}

CnfProblem sample_cnf(int num_vars, int num_clauses, std::uint64_t seed) {
  if (num_vars < 1 || num_clauses < 1)
    throw HarnessError("need at least one variable and one clause");
  Rng rng(seed);
  CnfProblem p;
  p.num_vars = num_vars;

  const bool laddered = num_vars >= 6 && num_clauses >= num_vars + 2;
  if (!laddered) {
    // Uniform junk; the caller retries until an unsatisfiable draw.
    for (int c = 0; c < num_clauses; ++c) {
      const std::uint64_t r = rng.next(10);
      int len = r < 1 ? 1 : (r < 4 ? 2 : 3);
      len = std::min(len, num_vars);
      Clause cl;
      while (static_cast<int>(cl.size()) < len) {
        const int v = 1 + static_cast<int>(rng.next(static_cast<std::uint64_t>(num_vars)));
        bool dup = false;
        for (const Lit& l : cl) dup = dup || l.var == v;
        if (!dup) cl.push_back(Lit{v, rng.next(2) == 0});
      }
      p.clauses.push_back(std::move(cl));
    }
    return p;
  }

  // Implication ladder u1 -> u2 -> ... -> uk with both ends pinned, which is
  // unsatisfiable whatever else is around. Some rungs also demand a side
  // variable w that a little unit ladder of its own derives, and the last
  // three variables host noise clauses kept satisfiable (under a hidden
  // assignment) so they cannot offer a second refutation.
  const int nw = num_vars >= 13 ? 2 : (num_vars >= 10 ? 1 : 0);
  const int pad_vars = 3;
  const int k = num_vars - pad_vars - 2 * nw;
  const int pc = num_clauses - (k + 1) - 2 * nw;

  std::vector<Clause> core;
  core.push_back({Lit{1, true}});  // u1
  std::vector<int> w_rungs;
  for (int j = 0; j < nw; ++j) {
    while (true) {
      const int rung = 1 + static_cast<int>(rng.next(static_cast<std::uint64_t>(k - 1)));
      if (std::find(w_rungs.begin(), w_rungs.end(), rung) == w_rungs.end()) {
        w_rungs.push_back(rung);
        break;
      }
    }
  }
  // The implied variable leads each rung. Its stored image then starts with
  // a negative conjunct, so replaying a rung out of order wanders deep into
  // the remaining chain before the misplaced guard literal can fail, which
  // is what separates good antecedent orders from bad ones by whole strata
  // rather than a constant handful of steps.
  for (int i = 1; i < k; ++i) {
    Clause impl{Lit{i + 1, true}, Lit{i, false}};
    for (int j = 0; j < nw; ++j)
      if (w_rungs[static_cast<std::size_t>(j)] == i)
        impl.push_back(Lit{k + 2 * j + 2, false});  // the w of mini ladder j
    core.push_back(std::move(impl));
  }
  core.push_back({Lit{k, false}});  // terminator
  for (int j = 0; j < nw; ++j) {
    const int a = k + 2 * j + 1;
    const int w = k + 2 * j + 2;
    core.push_back({Lit{a, true}});
    core.push_back({Lit{w, true}, Lit{a, false}});
  }

  const int pv0 = num_vars - pad_vars + 1;
  const std::uint64_t hidden = rng.next(8);  // satisfying signs for the noise
  for (int c = 0; c < pc; ++c) {
    std::uint64_t bits;
    do {
      bits = rng.next(8);
    } while (bits == (~hidden & 7u));  // the one all-false pattern
    Clause cl;
    for (int b = 0; b < 3; ++b)
      cl.push_back(Lit{pv0 + b, ((bits >> b) & 1u) != 0});
    core.push_back(std::move(cl));
  }

  // Seeded relabeling and reordering hide the construction.
  std::vector<int> relabel(static_cast<std::size_t>(num_vars) + 1);
  for (int v = 1; v <= num_vars; ++v) relabel[static_cast<std::size_t>(v)] = v;
  for (std::size_t i = static_cast<std::size_t>(num_vars); i > 1; --i)
    std::swap(relabel[i], relabel[1 + rng.next(i)]);
  for (Clause& cl : core)
    for (Lit& l : cl) l.var = relabel[static_cast<std::size_t>(l.var)];
  shuffle_vec(core, rng);

  p.clauses = std::move(core);
  return p;
}

std::pair<CnfProblem, TraceFile> generate_unsat_instance(int num_vars,
                                                         int num_clauses,
                                                         std::uint64_t seed,
                                                         int max_tries) {
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    CnfProblem cnf = sample_cnf(num_vars, num_clauses,
                                seed + static_cast<std::uint64_t>(attempt));
    if (auto trace = generate_trace(cnf))
      return {std::move(cnf), std::move(*trace)};
  }
  throw HarnessError("no unsatisfiable instance within " +
                     std::to_string(max_tries) + " draws (vars=" +
                     std::to_string(num_vars) + ", clauses=" +
                     std::to_string(num_clauses) + ")");
}

} // namespace tracecert
