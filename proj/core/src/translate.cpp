#include "tracecert/translate.hpp"

#include <unordered_set>

#include "tracecert/errors.hpp"

namespace tracecert {

TranslatedProblem build_translated(const TraceFile& trace) {
  std::unordered_set<int> known;
  for (const Chain& ch : trace.chains) known.insert(ch.index);

  std::vector<const Chain*> originals;
  std::vector<const Chain*> derived;
  for (const Chain& ch : trace.chains) {
    if (ch.has_implicit_literals())
      throw TranslateError("chain " + std::to_string(ch.index) +
                           " still has implicit ('*') literals");
    for (int a : ch.antecedents)
      if (!known.count(a))
        throw TranslateError("chain " + std::to_string(ch.index) +
                             " references antecedent " + std::to_string(a) +
                             " which appears nowhere in the trace");
    (ch.is_original() ? originals : derived).push_back(&ch);
  }
  if (originals.empty())
    throw TranslateError("trace has no original clauses");

  TranslatedProblem p;

  // The goal is the negation of the original clause set: a disjunction of
  // per-clause conjunctions, in trace order. An empty original clause
  // negates to truth, which ends the check on the spot once reached.
  auto negated_clause = [](const Chain& ch) {
    return ch.literals->empty() ? Formula::truth()
                                : clause_to_conjunction(*ch.literals);
  };
  Formula root = negated_clause(*originals.back());
  for (std::size_t i = originals.size() - 1; i-- > 0;)
    root = Formula::or_neg(negated_clause(*originals[i]), std::move(root));
  p.root = std::move(root);

  for (const Chain* ch : originals) p.dex_list.push_back(ch->index);

  bool past_empty = false;
  for (const Chain* ch : derived) {
    if (past_empty)
      p.warnings.push_back("chain " + std::to_string(ch->index) +
                           " follows an empty-clause chain and will never be"
                           " examined");
    p.cut_chains.push_back(
        CutChain{ch->index, ch->antecedents, clause_to_disjunction(*ch->literals)});
    if (ch->literals->empty()) past_empty = true;
  }
  return p;
}

std::string dump_translated(const TranslatedProblem& p) {
  std::string out = "root: " + to_string(p.root) + "\n";
  out += "dex:";
  for (int d : p.dex_list) out += ' ' + std::to_string(d);
  out += '\n';
  for (const CutChain& c : p.cut_chains) {
    out += "chain " + std::to_string(c.index) + ": decide [";
    for (std::size_t i = 0; i < c.decide_list.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(c.decide_list[i]);
    }
    out += "] formula " + to_string(c.cut_formula) + '\n';
  }
  for (const std::string& w : p.warnings) out += "warning: " + w + '\n';
  return out;
}

} // namespace tracecert
