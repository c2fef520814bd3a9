#ifndef TRACECERT_ORACLE_HPP
#define TRACECERT_ORACLE_HPP

#include <map>
#include <optional>
#include <vector>

#include "tracecert/parse.hpp"

// Brute-force machinery, independent of the kernel on purpose: these
// functions answer the same questions by exhaustive means, so the two
// implementations can be played against each other in tests.

namespace tracecert {

// assignment[v] is the value of variable v; index 0 is unused.
bool eval_clause(const Clause& c, const std::vector<bool>& assignment);
bool eval_formula(const Formula& f, const std::vector<bool>& assignment);

// Exhaustive satisfiability check. Throws OracleError above 20 variables.
bool truth_table_unsat(const CnfProblem& p);

// Replays one chain as linear input resolution: some ordering of the
// antecedent clauses must chain together, each step resolving on exactly one
// complementary pair. Returns the final resolvent; if ch carries explicit
// literals they must match it as a set. Throws OracleError when no ordering
// works or an antecedent is missing from context.
Clause verify_chain_resolution(const Chain& ch,
                               const std::map<int, Clause>& context);

// Fills in every elided (`*`) literal list via verify_chain_resolution,
// processing chains in file order so antecedents are already explicit.
// Throws OracleError (naming the chain) when recovery fails.
TraceFile resolve_implicit(const TraceFile& t);

// A small resolution prover for corpus generation: unit propagation to
// saturation, then variable elimination, recording every resolvent as a
// chain. Returns nullopt when p is satisfiable. The result parses, validates
// against p, ends in the empty clause, and every derived chain passes
// verify_chain_resolution. Throws OracleError above 16 variables.
std::optional<TraceFile> generate_trace(const CnfProblem& p);

} // namespace tracecert

#endif
