// Shared test fixtures: small traces with fully worked-out behavior.
#ifndef TRACECERT_TESTS_FIXTURES_HPP
#define TRACECERT_TESTS_FIXTURES_HPP

#include <sstream>
#include <string>

#include "tracecert/parse.hpp"

namespace fixtures {

// Four clauses over two variables exhausting all sign patterns, refuted by
// first deriving the unit [1] and then resolving it away. The derived
// antecedent lists are deliberately in an order a first-choice-only replay
// cannot follow: [3,1] must be consumed as [1,3] and [4,2,5] as [2,4,5].
inline const char* kSquareTrace =
    "1 1 2 0 0\n"
    "2 -1 2 0 0\n"
    "3 1 -2 0 0\n"
    "4 -1 -2 0 0\n"
    "5 1 0 3 1 0\n"
    "6 0 4 2 5 0\n";

// The same refutation with derived literals left implicit.
inline const char* kSquareTraceImplicit =
    "1 1 2 0 0\n"
    "2 -1 2 0 0\n"
    "3 1 -2 0 0\n"
    "4 -1 -2 0 0\n"
    "5 * 3 1 0\n"
    "6 * 4 2 5 0\n";

inline const char* kSquareDimacs =
    "p cnf 2 4\n"
    "1 2 0\n"
    "-1 2 0\n"
    "1 -2 0\n"
    "-1 -2 0\n";

// Two independent unit lemmas (over disjoint variables) feeding one final
// chain. Chains 6 and 7 may appear in either order.
inline const char* kTwinLemmaTrace =
    "1 1 0 0\n"
    "2 2 -1 0 0\n"
    "3 3 0 0\n"
    "4 4 -3 0 0\n"
    "5 -2 -4 0 0\n"
    "6 2 0 2 1 0\n"
    "7 4 0 4 3 0\n"
    "8 0 5 6 7 0\n";

inline tracecert::TraceFile trace_from(const std::string& text) {
  std::istringstream in(text);
  return tracecert::parse_trace(in);
}

inline tracecert::CnfProblem dimacs_from(const std::string& text) {
  std::istringstream in(text);
  return tracecert::parse_dimacs(in);
}

} // namespace fixtures

#endif
