#ifndef TRACECERT_HARNESS_HPP
#define TRACECERT_HARNESS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tracecert/fpc.hpp"
#include "tracecert/oracle.hpp"

// Antecedent-ordering studies. Three experiments, all reporting node counts
// (the deterministic stand-in for wall-clock):
//   1. reorder whole derived chains (baseline plus every adjacent swap);
//   2. permute the antecedent list of the longest derived chain, exhaustively
//      or by seeded sample, under backtracking;
//   3. enumerate the product of all derived chains' antecedent permutations
//      under strict checking.

namespace tracecert {

struct ExperimentRecord {
  std::string trace_id;
  // The permuted chain, or -1 when the variation reorders whole chains.
  int chain_index = -1;
  // The order under test, space-separated; experiment 3 joins the per-chain
  // lists with " / ".
  std::string permutation;
  CheckMode mode = CheckMode::Backtracking;
  Verdict verdict = Verdict::Rejected;
  std::uint64_t nodes = 0;
  std::uint64_t backtracks = 0;
  bool budget_hit = false;
};

// Aggregates over one experiment's records. Node statistics cover only the
// runs that finished within budget; `timeouts` counts the rest. Chain-length
// figures describe the input trace's derived chains, as context for how hard
// the instance is.
struct ExperimentSummary {
  std::uint64_t best_nodes = 0;
  std::uint64_t worst_nodes = 0;
  double median_nodes = 0.0;
  double mean_nodes = 0.0;
  std::uint64_t timeouts = 0;
  std::uint64_t accepted = 0;
  std::size_t longest_chain_len = 0;
  double avg_chain_len = 0.0;
  double median_chain_len = 0.0;
};

struct ExperimentResult {
  std::vector<ExperimentRecord> records;
  ExperimentSummary summary;
};

// Index (not position) of the derived chain with the most antecedents,
// earliest position winning ties. Throws HarnessError without derived chains.
int find_longest_chain(const TraceFile& t);

// Positions i and j (into t.chains) must both hold derived chains; the two
// lines trade places, contents untouched. Throws HarnessError otherwise.
TraceFile swap_chains(const TraceFile& t, std::size_t i, std::size_t j);

// Baseline plus one record per adjacent derived-chain swap, backtracking
// mode. Shows how fragile the global chain order is.
ExperimentResult run_experiment1(const TraceFile& t, const std::string& trace_id,
                                 std::uint64_t budget);

// Permutes the longest chain's antecedents: all of them when their count is
// at most sample_cap, otherwise sample_cap seeded draws. Backtracking mode.
ExperimentResult run_experiment2(const TraceFile& t, const std::string& trace_id,
                                 std::uint64_t budget, std::size_t sample_cap,
                                 std::uint64_t seed);

// Strict mode over every combination of antecedent orders across all derived
// chains. Throws HarnessError when the combination count exceeds combo_cap.
ExperimentResult run_experiment3(const TraceFile& t, const std::string& trace_id,
                                 std::uint64_t budget, std::uint64_t combo_cap);

// Replays t once (backtracking, rule trace on) and rewrites every derived
// chain's antecedents into the order the successful run actually spent them,
// unconsumed antecedents keeping their relative order at the tail. The
// result carries explicit literals and passes strict checking. Throws
// HarnessError when t is rejected.
TraceFile reorder_trace(const TraceFile& t);

std::string to_csv(const std::vector<ExperimentRecord>& records);
void write_csv(const std::string& path, const std::vector<ExperimentRecord>& records);

// Seeded random CNF for corpus generation. Above a size floor the sampler
// plants an unsatisfiable implication-ladder core and pads with noise
// clauses, keeping derived chains long enough to be interesting; tiny
// instances are sampled uniformly.
CnfProblem sample_cnf(int num_vars, int num_clauses, std::uint64_t seed);

// Draws CNFs (bumping the seed) until generate_trace succeeds; throws
// HarnessError after max_tries satisfiable draws.
std::pair<CnfProblem, TraceFile> generate_unsat_instance(int num_vars,
                                                         int num_clauses,
                                                         std::uint64_t seed,
                                                         int max_tries = 64);

} // namespace tracecert

#endif
