#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "vag/group.hpp"

namespace vag {

/// A DFA as written in a file: symbolic transitions, not yet bound to an
/// alphabet.
struct Dfa {
  struct Transition {
    std::size_t from = 0;
    std::string symbol;
    std::size_t to = 0;
  };

  std::size_t states = 0;
  std::size_t start = 0;
  std::vector<std::size_t> accepting;
  std::vector<Transition> transitions;
};

/// Line format: `states N`, `start i`, `accept i j ...`, `trans from symbol to`.
/// '#' starts a comment.
Dfa parse_dfa(std::string_view text, const std::string& source = "<input>");
Dfa load_dfa(const std::string& path);
std::string format_dfa(const Dfa& dfa);

inline constexpr std::size_t kNoState = static_cast<std::size_t>(-1);

/// A DFA bound to a group alphabet: transitions indexed by letter.
class ValidatedDfa {
 public:
  std::size_t state_count() const noexcept { return states_; }
  std::size_t alphabet_size() const noexcept { return letters_; }
  std::size_t start() const noexcept { return start_; }
  bool accepting(std::size_t s) const { return accepting_[s]; }
  /// kNoState when the transition is missing.
  std::size_t next(std::size_t s, std::size_t letter) const { return delta_[s * letters_ + letter]; }
  bool reachable(std::size_t s) const { return reachable_[s]; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }
  /// Minimum weight of a path from s to an accepting state, or -1.
  Int min_accept_weight(std::size_t s) const { return min_accept_weight_[s]; }

 private:
  friend ValidatedDfa dfa_validate(const Dfa&, const VAGroup&);
  std::size_t states_ = 0, letters_ = 0, start_ = 0;
  std::vector<bool> accepting_;
  std::vector<std::size_t> delta_;
  std::vector<bool> reachable_;
  std::vector<Int> min_accept_weight_;
  std::vector<std::string> warnings_;
};

/// Throws SymbolMismatch for symbols outside the group alphabet and
/// DomainError for bad state indices or conflicting transitions.
/// Unreachable accepting states produce warnings, not errors.
ValidatedDfa dfa_validate(const Dfa& dfa, const VAGroup& group);

struct DfaRun {
  bool accepted = false;
  /// trace[i] is the state before reading letter i; one entry longer than the
  /// word when the run completes, shorter when a transition is missing.
  std::vector<std::size_t> trace;
};

DfaRun dfa_run(const ValidatedDfa& dfa, const Word& w);
bool dfa_accepts(const ValidatedDfa& dfa, const Word& w);

/// w with positions [start, start + length) removed.
Word excise_loop(const Word& w, std::size_t start, std::size_t length);

// Corpus builders over explicit symbol lists.
Dfa accept_all_dfa(const std::vector<std::string>& symbols);
/// One state, transitions only on the listed symbols.
Dfa restricted_dfa(const std::vector<std::string>& symbols);
/// (x|y)* tau x+ tau (x|y)* : four states.
Dfa star_pattern_dfa(const std::string& x, const std::string& y, const std::string& tau);
/// (x|y)* tau x* tau (x|y)* : three states.
Dfa star_shape_dfa(const std::string& x, const std::string& y, const std::string& tau);
/// x^a y^b for integers a, b: the freely reduced two-generator normal forms.
Dfa two_generator_dfa(const std::string& x, const std::string& x_inv, const std::string& y, const std::string& y_inv);
/// Random DFA with 1..max_states states. Deterministic in the engine state.
Dfa random_dfa(const std::vector<std::string>& symbols, std::size_t max_states, std::mt19937_64& rng);

std::vector<std::string> alphabet_symbols(const VAGroup& group);

}  // namespace vag
