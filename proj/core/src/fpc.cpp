#include "tracecert/fpc.hpp"

namespace tracecert {

std::vector<CutCandidate<Certificate>> TraceGuidance::cut_e(const Certificate& c) const {
  const CertRight* r = std::get_if<CertRight>(&c);
  if (!r || !r->pending.empty() || r->chains_left() == 0) return {};
  const CutChain& ch = r->head_chain();
  // Left proves the derived clause from what is stored; right carries on
  // with the clause assumed, owing one store under the chain's index.
  return {CutCandidate<Certificate>{
      Certificate(CertLeft{ch.decide_list, true}),
      Certificate(CertRight{{ch.index}, r->chains, r->next + 1}),
      ch.cut_formula}};
}

std::vector<IndexedCandidate<Certificate>> TraceGuidance::decide_e(
    const Certificate& c) const {
  const CertLeft* l = std::get_if<CertLeft>(&c);
  if (!l) return {};

  std::vector<IndexedCandidate<Certificate>> out;
  // One probe of the anonymously stored literals per flag window, offered
  // before any antecedent.
  if (l->flag)
    out.push_back({Certificate(CertLeft{l->decide_list, false}), -1});

  const std::vector<int>& dl = l->decide_list;
  if (mode_ == CheckMode::Backtracking) {
    for (std::size_t i = 0; i < dl.size(); ++i) {
      std::vector<int> rest;
      rest.reserve(dl.size() - 1);
      rest.insert(rest.end(), dl.begin(), dl.begin() + static_cast<long>(i));
      rest.insert(rest.end(), dl.begin() + static_cast<long>(i) + 1, dl.end());
      out.push_back({Certificate(CertLeft{std::move(rest), l->flag}), dl[i]});
    }
  } else if (!dl.empty()) {
    out.push_back({Certificate(CertLeft{{dl.begin() + 1, dl.end()}, l->flag}),
                   dl.front()});
  }
  return out;
}

std::vector<IndexedCandidate<Certificate>> TraceGuidance::store_e(
    const Certificate& c, const Formula&) const {
  if (const CertLeft* l = std::get_if<CertLeft>(&c))
    return {{Certificate(*l), -1}};
  const CertRight& r = std::get<CertRight>(c);
  if (r.pending.empty()) return {};
  return {{Certificate(CertRight{{r.pending.begin() + 1, r.pending.end()},
                                 r.chains, r.next}),
           r.pending.front()}};
}

std::vector<Certificate> TraceGuidance::release_e(const Certificate& c) const {
  if (std::holds_alternative<CertLeft>(c)) return {c};
  return {};
}

std::vector<SplitCandidate<Certificate>> TraceGuidance::and_e(
    const Certificate& c) const {
  if (std::holds_alternative<CertLeft>(c)) return {SplitCandidate<Certificate>{c, c}};
  return {};
}

std::vector<Certificate> TraceGuidance::or_e(const Certificate& c) const {
  return {c};
}

Certificate initial_certificate(const TranslatedProblem& p) {
  return CertRight{p.dex_list,
                   std::make_shared<const std::vector<CutChain>>(p.cut_chains), 0};
}

CheckReport check_trace(const TranslatedProblem& p, CheckMode mode,
                        const CheckOptions& opts) {
  TraceGuidance guide(mode);
  return check(initial_certificate(p), Storage{},
               Goal::unfocused({p.root}), guide, opts);
}

namespace {
std::string int_list(const std::vector<int>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(xs[i]);
  }
  return s + "]";
}
} // namespace

std::string to_string(const Certificate& c) {
  if (const CertLeft* l = std::get_if<CertLeft>(&c))
    return "certLeft(" + int_list(l->decide_list) + "," + (l->flag ? "1" : "0") + ")";
  const CertRight& r = std::get<CertRight>(c);
  std::string s = "certRight(" + int_list(r.pending) + ",chains([";
  for (std::size_t i = 0; i < r.chains_left(); ++i) {
    if (i) s += ',';
    s += std::to_string((*r.chains)[r.next + i].index);
  }
  return s + "]))";
}

} // namespace tracecert
