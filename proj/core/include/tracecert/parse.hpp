#ifndef TRACECERT_PARSE_HPP
#define TRACECERT_PARSE_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tracecert/formula.hpp"

namespace tracecert {

// One line of a trace: `index literals 0 antecedents 0`. Original clauses
// carry no antecedents; derived clauses list the chains they resolve against.
// The literal list may be elided in the input (written `*`), in which case
// `literals` stays empty until an oracle reconstructs it.
struct Chain {
  int index = 0;
  std::optional<Clause> literals;   // nullopt = implicit, to be resolved
  std::vector<int> antecedents;

  bool is_original() const { return antecedents.empty(); }
  bool has_implicit_literals() const { return !literals.has_value(); }
};

struct TraceFile {
  std::vector<Chain> chains;        // file order

  // Position in `chains` for a given chain index, or -1.
  int position_of(int index) const;
  const Chain* find(int index) const;
};

struct CnfProblem {
  int num_vars = 0;
  std::vector<Clause> clauses;
};

// Token-oriented trace reader. Chains may span lines and several may share a
// line; `*` marks elided literals and is only legal on a chain with
// antecedents. Throws ParseError (with the current line number) on anything
// unexpected: non-integer tokens, a missing terminating zero, duplicate or
// non-positive chain indices.
TraceFile parse_trace(std::istream& in);
TraceFile parse_trace_file(const std::string& path);

// DIMACS CNF reader: `c` comment lines, one `p cnf VARS CLAUSES` header,
// zero-terminated clauses. Throws ParseError on malformed input, a literal
// out of the declared range, or a clause-count mismatch.
CnfProblem parse_dimacs(std::istream& in);
CnfProblem parse_dimacs_file(const std::string& path);

// Writers, inverse to the parsers up to whitespace. Chains with implicit
// literals are written back as `*`.
std::string to_trace_text(const TraceFile& trace);
std::string to_dimacs_text(const CnfProblem& cnf);
void write_trace_file(const std::string& path, const TraceFile& trace);
void write_dimacs_file(const std::string& path, const CnfProblem& cnf);

// Comparison of a trace's original chains against a CNF, as multisets of
// clauses (literal order inside a clause is immaterial, duplicates are not).
struct ValidationReport {
  bool ok = true;
  std::vector<std::string> mismatches;  // human-readable, one per finding
};

ValidationReport validate_against_cnf(const TraceFile& trace, const CnfProblem& cnf);

} // namespace tracecert

#endif
