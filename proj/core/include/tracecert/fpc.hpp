#ifndef TRACECERT_FPC_HPP
#define TRACECERT_FPC_HPP

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "tracecert/kernel.hpp"
#include "tracecert/translate.hpp"

// Guidance that replays a resolution trace through the kernel. The
// certificate is a small state machine over the translated problem: on the
// right of every cut it walks the remaining chains (and carries the storage
// indices still to hand out), on the left it spends one chain's antecedent
// list on decide steps.

namespace tracecert {

// Right state: `pending` are storage indices owed to upcoming store steps;
// the chains not yet cut live in the shared vector from `next` onward.
struct CertRight {
  std::vector<int> pending;
  std::shared_ptr<const std::vector<CutChain>> chains;
  std::size_t next = 0;

  std::size_t chains_left() const {
    return chains ? chains->size() - next : 0;
  }
  const CutChain& head_chain() const { return (*chains)[next]; }

  friend bool operator==(const CertRight& a, const CertRight& b) {
    if (a.pending != b.pending || a.chains_left() != b.chains_left()) return false;
    for (std::size_t i = 0; i < a.chains_left(); ++i) {
      const CutChain& x = (*a.chains)[a.next + i];
      const CutChain& y = (*b.chains)[b.next + i];
      if (x.index != y.index || x.decide_list != y.decide_list ||
          !(x.cut_formula == y.cut_formula))
        return false;
    }
    return true;
  }
};

// Left state: the decide indices still unspent, and a one-shot flag that
// allows a single probe of the anonymously stored literals.
struct CertLeft {
  std::vector<int> decide_list;
  bool flag = true;

  friend bool operator==(const CertLeft&, const CertLeft&) = default;
};

using Certificate = std::variant<CertRight, CertLeft>;

std::string to_string(const Certificate& c);

enum class CheckMode {
  // decide may spend any remaining antecedent, in list order.
  Backtracking,
  // decide may spend only the head of the antecedent list, so the list is
  // consumed strictly left to right.
  Strict,
};

class TraceGuidance {
public:
  using certificate_type = Certificate;

  explicit TraceGuidance(CheckMode mode) : mode_(mode) {}
  CheckMode mode() const { return mode_; }

  bool init_e(const Certificate&) const { return true; }
  std::vector<CutCandidate<Certificate>> cut_e(const Certificate& c) const;
  std::vector<IndexedCandidate<Certificate>> decide_e(const Certificate& c) const;
  std::vector<IndexedCandidate<Certificate>> store_e(const Certificate& c,
                                                     const Formula& f) const;
  std::vector<Certificate> release_e(const Certificate& c) const;
  std::vector<SplitCandidate<Certificate>> and_e(const Certificate& c) const;
  std::vector<Certificate> or_e(const Certificate& c) const;

private:
  CheckMode mode_;
};

// The starting certificate for a translated problem: all original-clause
// indices pending, all derived chains ahead.
Certificate initial_certificate(const TranslatedProblem& p);

// End-to-end: run the kernel on p's root goal under trace guidance.
CheckReport check_trace(const TranslatedProblem& p, CheckMode mode,
                        const CheckOptions& opts = {});

} // namespace tracecert

#endif
