#include "tracecert/parse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "tracecert/errors.hpp"

namespace tracecert {

namespace {

// Whitespace-separated tokens with a running line count, so errors can point
// at the offending line even though chains may span several.
class Tokenizer {
public:
  explicit Tokenizer(std::istream& in) : in_(in) {}

  // False at end of input.
  bool next(std::string& tok) {
    tok.clear();
    int ch = in_.get();
    while (ch != EOF && std::isspace(static_cast<unsigned char>(ch))) {
      if (ch == '\n') ++line_;
      ch = in_.get();
    }
    token_line_ = line_;
    if (ch == EOF) return false;
    while (ch != EOF && !std::isspace(static_cast<unsigned char>(ch))) {
      tok.push_back(static_cast<char>(ch));
      ch = in_.get();
    }
    if (ch == '\n') ++line_;
    return true;
  }

  // Line the last token started on.
  long line() const { return token_line_; }

private:
  std::istream& in_;
  long line_ = 1;
  long token_line_ = 1;
};

int token_to_int(const std::string& tok, long line) {
  int value = 0;
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw ParseError("expected an integer, got '" + tok + "'", line);
  return value;
}

std::string clause_text(const Clause& c) {
  std::string s;
  for (const Lit& l : c) {
    if (!s.empty()) s += ' ';
    s += std::to_string(l.to_dimacs());
  }
  return s.empty() ? "<empty>" : s;
}

} // namespace

int TraceFile::position_of(int index) const {
  for (std::size_t i = 0; i < chains.size(); ++i)
    if (chains[i].index == index) return static_cast<int>(i);
  return -1;
}

const Chain* TraceFile::find(int index) const {
  int pos = position_of(index);
  return pos < 0 ? nullptr : &chains[pos];
}

TraceFile parse_trace(std::istream& in) {
  Tokenizer tokens(in);
  TraceFile trace;
  std::unordered_set<int> seen;
  std::string tok;

  while (tokens.next(tok)) {
    Chain chain;
    const long at = tokens.line();
    chain.index = token_to_int(tok, at);
    if (chain.index < 1)
      throw ParseError("chain index must be positive, got " +
                           std::to_string(chain.index),
                       at);
    if (!seen.insert(chain.index).second)
      throw ParseError("duplicate chain index " + std::to_string(chain.index), at);

    // Literal section: either a lone '*' or integers up to a zero.
    if (!tokens.next(tok))
      throw ParseError("chain " + std::to_string(chain.index) +
                           ": missing literal section",
                       tokens.line());
    if (tok != "*") {
      Clause lits;
      while (true) {
        int l = token_to_int(tok, tokens.line());
        if (l == 0) break;
        lits.push_back(Lit::from_dimacs(l));
        if (!tokens.next(tok))
          throw ParseError("chain " + std::to_string(chain.index) +
                               ": missing terminating zero after literals",
                           tokens.line());
      }
      chain.literals = std::move(lits);
    }

    // Antecedent section, always closed by a zero.
    while (true) {
      if (!tokens.next(tok))
        throw ParseError("chain " + std::to_string(chain.index) +
                             ": missing terminating zero after antecedents",
                         tokens.line());
      int a = token_to_int(tok, tokens.line());
      if (a == 0) break;
      if (a < 0)
        throw ParseError("chain " + std::to_string(chain.index) +
                             ": antecedent must be positive, got " +
                             std::to_string(a),
                         tokens.line());
      chain.antecedents.push_back(a);
    }

    if (chain.has_implicit_literals() && chain.antecedents.empty())
      throw ParseError("chain " + std::to_string(chain.index) +
                           ": '*' needs antecedents to recover the literals",
                       at);

    trace.chains.push_back(std::move(chain));
  }
  return trace;
}

CnfProblem parse_dimacs(std::istream& in) {
  CnfProblem cnf;
  bool have_header = false;
  long declared_clauses = 0;
  long line_no = 0;
  Clause current;
  bool clause_open = false;

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == 'c') continue;
    if (line[0] == 'p') {
      if (have_header) throw ParseError("second 'p' header", line_no);
      std::istringstream hs(line);
      std::string p, kind;
      hs >> p >> kind >> cnf.num_vars >> declared_clauses;
      if (hs.fail() || kind != "cnf" || cnf.num_vars < 0 || declared_clauses < 0)
        throw ParseError("malformed header '" + line + "'", line_no);
      have_header = true;
      continue;
    }
    if (!have_header)
      throw ParseError("clause data before 'p cnf' header", line_no);

    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      int l = token_to_int(tok, line_no);
      if (l == 0) {
        cnf.clauses.push_back(std::move(current));
        current.clear();
        clause_open = false;
        continue;
      }
      if (std::abs(l) > cnf.num_vars)
        throw ParseError("literal " + std::to_string(l) + " out of range (" +
                             std::to_string(cnf.num_vars) + " vars declared)",
                         line_no);
      current.push_back(Lit::from_dimacs(l));
      clause_open = true;
    }
  }

  if (!have_header) throw ParseError("missing 'p cnf' header");
  if (clause_open)
    throw ParseError("last clause missing its terminating zero", line_no);
  if (static_cast<long>(cnf.clauses.size()) != declared_clauses)
    throw ParseError("header declares " + std::to_string(declared_clauses) +
                     " clauses but " + std::to_string(cnf.clauses.size()) +
                     " were given");
  return cnf;
}

TraceFile parse_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_trace(in);
}

CnfProblem parse_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_dimacs(in);
}

std::string to_trace_text(const TraceFile& trace) {
  std::string out;
  for (const Chain& ch : trace.chains) {
    out += std::to_string(ch.index);
    if (ch.has_implicit_literals()) {
      out += " *";
    } else {
      for (const Lit& l : *ch.literals) out += ' ' + std::to_string(l.to_dimacs());
      out += " 0";
    }
    for (int a : ch.antecedents) out += ' ' + std::to_string(a);
    out += " 0\n";
  }
  return out;
}

std::string to_dimacs_text(const CnfProblem& cnf) {
  std::string out = "p cnf " + std::to_string(cnf.num_vars) + ' ' +
                    std::to_string(cnf.clauses.size()) + '\n';
  for (const Clause& c : cnf.clauses) {
    for (const Lit& l : c) out += std::to_string(l.to_dimacs()) + ' ';
    out += "0\n";
  }
  return out;
}

namespace {
void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw ParseError("write to '" + path + "' failed");
}
} // namespace

void write_trace_file(const std::string& path, const TraceFile& trace) {
  write_text_file(path, to_trace_text(trace));
}

void write_dimacs_file(const std::string& path, const CnfProblem& cnf) {
  write_text_file(path, to_dimacs_text(cnf));
}

ValidationReport validate_against_cnf(const TraceFile& trace, const CnfProblem& cnf) {
  ValidationReport report;

  // Multiset comparison over sorted literal lists.
  std::map<Clause, int> pool;
  for (const Clause& c : cnf.clauses) {
    Clause key = c;
    std::sort(key.begin(), key.end());
    ++pool[key];
  }

  for (const Chain& ch : trace.chains) {
    if (!ch.is_original()) continue;
    Clause key = *ch.literals;  // originals always have explicit literals
    std::sort(key.begin(), key.end());
    auto it = pool.find(key);
    if (it == pool.end() || it->second == 0) {
      report.ok = false;
      report.mismatches.push_back("original chain " + std::to_string(ch.index) +
                                  " [" + clause_text(*ch.literals) +
                                  "] has no matching CNF clause");
    } else {
      --it->second;
    }
  }

  for (const auto& [key, count] : pool) {
    for (int i = 0; i < count; ++i) {
      report.ok = false;
      report.mismatches.push_back("CNF clause [" + clause_text(key) +
                                  "] not among the trace's original chains");
    }
  }
  return report;
}

} // namespace tracecert
