#ifndef TRACECERT_TRANSLATE_HPP
#define TRACECERT_TRANSLATE_HPP

#include <string>
#include <vector>

#include "tracecert/parse.hpp"

namespace tracecert {

// A derived chain, shaped for checking: the clause it claims (as the positive
// disjunction the cut introduces) plus the antecedent indices the guidance
// will feed to decide, in trace order.
struct CutChain {
  int index = 0;
  std::vector<int> decide_list;
  Formula cut_formula = Formula::falsity();
};

// Everything the checker needs, derived from one trace:
//  - root: the negation of the original clause set, as one right-nested
//    disjunction of per-clause conjunctions, in trace order;
//  - dex_list: the original chain indices, aligned with root's disjuncts;
//  - cut_chains: the derived chains in trace order.
struct TranslatedProblem {
  Formula root = Formula::falsity();
  std::vector<int> dex_list;
  std::vector<CutChain> cut_chains;
  std::vector<std::string> warnings;
};

// Throws TranslateError if any chain still has implicit literals (run the
// implicit-literal oracle first), if there are no original chains, or if an
// antecedent index appears nowhere in the trace. Antecedents that merely
// come *later* are left for the checker to reject. Chains after one that
// derives the empty clause are translated anyway but noted in `warnings`,
// since the checker will never look at them.
TranslatedProblem build_translated(const TraceFile& trace);

// Debug rendering: root formula plus one line per cut chain.
std::string dump_translated(const TranslatedProblem& p);

} // namespace tracecert

#endif
