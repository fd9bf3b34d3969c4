#include "vag/automata.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <sstream>

#include "vag/errors.hpp"

namespace vag {

namespace {

std::optional<std::size_t> parse_index(const std::string& s) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

Dfa parse_dfa(std::string_view text, const std::string& source) {
  Dfa dfa;
  bool have_states = false, have_start = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  auto index = [&](const std::string& tok) {
    auto v = parse_index(tok);
    if (!v) throw ParseError(source, number, "expected a state index, got '" + tok + "'");
    return *v;
  };
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream line(raw);
    std::vector<std::string> t;
    for (std::string tok; line >> tok;) t.push_back(tok);
    if (t.empty()) continue;
    if (t[0] == "states") {
      if (t.size() != 2) throw ParseError(source, number, "expected 'states N'");
      dfa.states = index(t[1]);
      have_states = true;
    } else if (t[0] == "start") {
      if (t.size() != 2) throw ParseError(source, number, "expected 'start i'");
      dfa.start = index(t[1]);
      have_start = true;
    } else if (t[0] == "accept") {
      for (std::size_t i = 1; i < t.size(); ++i) dfa.accepting.push_back(index(t[i]));
    } else if (t[0] == "trans") {
      if (t.size() != 4) throw ParseError(source, number, "expected 'trans from symbol to'");
      dfa.transitions.push_back({index(t[1]), t[2], index(t[3])});
    } else {
      throw ParseError(source, number, "unknown directive '" + t[0] + "'");
    }
  }
  if (!have_states) throw ParseError(source, number, "missing 'states' line");
  if (!have_start) throw ParseError(source, number, "missing 'start' line");
  return dfa;
}

Dfa load_dfa(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open DFA file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_dfa(buf.str(), path);
}

std::string format_dfa(const Dfa& dfa) {
  std::ostringstream os;
  os << "states " << dfa.states << "\nstart " << dfa.start << "\naccept";
  for (auto s : dfa.accepting) os << ' ' << s;
  os << '\n';
  for (const auto& tr : dfa.transitions) os << "trans " << tr.from << ' ' << tr.symbol << ' ' << tr.to << '\n';
  return os.str();
}

ValidatedDfa dfa_validate(const Dfa& dfa, const VAGroup& group) {
  if (dfa.states == 0) throw DomainError("DFA must have at least one state");
  if (dfa.start >= dfa.states) throw DomainError("DFA start state out of range");
  ValidatedDfa v;
  v.states_ = dfa.states;
  v.letters_ = group.letters().size();
  v.start_ = dfa.start;
  v.accepting_.assign(dfa.states, false);
  for (auto s : dfa.accepting) {
    if (s >= dfa.states) throw DomainError("accepting state " + std::to_string(s) + " out of range");
    v.accepting_[s] = true;
  }
  v.delta_.assign(v.states_ * v.letters_, kNoState);
  for (const auto& tr : dfa.transitions) {
    auto l = group.letter_index(tr.symbol);
    if (!l) throw SymbolMismatch("DFA symbol '" + tr.symbol + "' is not in the alphabet of group '" + group.name() + "'");
    if (tr.from >= dfa.states || tr.to >= dfa.states) throw DomainError("DFA transition state out of range");
    auto& slot = v.delta_[tr.from * v.letters_ + *l];
    if (slot != kNoState && slot != tr.to)
      throw DomainError("DFA has two transitions from state " + std::to_string(tr.from) + " on '" + tr.symbol + "'");
    slot = tr.to;
  }

  v.reachable_.assign(v.states_, false);
  std::deque<std::size_t> queue{v.start_};
  v.reachable_[v.start_] = true;
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    for (std::size_t l = 0; l < v.letters_; ++l) {
      auto n = v.next(s, l);
      if (n != kNoState && !v.reachable_[n]) {
        v.reachable_[n] = true;
        queue.push_back(n);
      }
    }
  }
  for (std::size_t s = 0; s < v.states_; ++s)
    if (v.accepting_[s] && !v.reachable_[s])
      v.warnings_.push_back("accepting state " + std::to_string(s) + " is unreachable from start");

  // Bellman-Ford style relaxation; state counts are tiny.
  v.min_accept_weight_.assign(v.states_, -1);
  for (std::size_t s = 0; s < v.states_; ++s)
    if (v.accepting_[s]) v.min_accept_weight_[s] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t s = 0; s < v.states_; ++s)
      for (std::size_t l = 0; l < v.letters_; ++l) {
        auto n = v.next(s, l);
        if (n == kNoState || v.min_accept_weight_[n] < 0) continue;
        Int cand = v.min_accept_weight_[n] + group.letter(l).weight;
        if (v.min_accept_weight_[s] < 0 || cand < v.min_accept_weight_[s]) {
          v.min_accept_weight_[s] = cand;
          changed = true;
        }
      }
  }
  return v;
}

DfaRun dfa_run(const ValidatedDfa& dfa, const Word& w) {
  DfaRun run;
  run.trace.reserve(w.size() + 1);
  std::size_t s = dfa.start();
  run.trace.push_back(s);
  for (auto l : w) {
    if (l >= dfa.alphabet_size()) return run;
    s = dfa.next(s, l);
    if (s == kNoState) return run;
    run.trace.push_back(s);
  }
  run.accepted = dfa.accepting(s);
  return run;
}

bool dfa_accepts(const ValidatedDfa& dfa, const Word& w) { return dfa_run(dfa, w).accepted; }

Word excise_loop(const Word& w, std::size_t start, std::size_t length) {
  if (start + length > w.size()) throw DomainError("loop excision out of range");
  Word out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(start));
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(start + length), w.end());
  return out;
}

Dfa accept_all_dfa(const std::vector<std::string>& symbols) {
  Dfa d;
  d.states = 1;
  d.accepting = {0};
  for (const auto& s : symbols) d.transitions.push_back({0, s, 0});
  return d;
}

Dfa restricted_dfa(const std::vector<std::string>& symbols) { return accept_all_dfa(symbols); }

Dfa star_pattern_dfa(const std::string& x, const std::string& y, const std::string& tau) {
  Dfa d;
  d.states = 4;
  d.accepting = {3};
  d.transitions = {{0, x, 0}, {0, y, 0}, {0, tau, 1}, {1, x, 2}, {2, x, 2}, {2, tau, 3}, {3, x, 3}, {3, y, 3}};
  return d;
}

Dfa star_shape_dfa(const std::string& x, const std::string& y, const std::string& tau) {
  Dfa d;
  d.states = 3;
  d.accepting = {2};
  d.transitions = {{0, x, 0}, {0, y, 0}, {0, tau, 1}, {1, x, 1}, {1, tau, 2}, {2, x, 2}, {2, y, 2}};
  return d;
}

Dfa two_generator_dfa(const std::string& x, const std::string& x_inv, const std::string& y, const std::string& y_inv) {
  // 0 start, 1 in x^+, 2 in x^-, 3 in y^+, 4 in y^-
  Dfa d;
  d.states = 5;
  d.accepting = {0, 1, 2, 3, 4};
  d.transitions = {{0, x, 1},     {0, x_inv, 2}, {0, y, 3}, {0, y_inv, 4}, {1, x, 1}, {1, y, 3},
                   {1, y_inv, 4}, {2, x_inv, 2}, {2, y, 3}, {2, y_inv, 4}, {3, y, 3}, {4, y_inv, 4}};
  return d;
}

Dfa random_dfa(const std::vector<std::string>& symbols, std::size_t max_states, std::mt19937_64& rng) {
  auto below = [&](std::uint64_t n) { return static_cast<std::size_t>(rng() % n); };
  Dfa d;
  d.states = 1 + below(max_states);
  d.start = 0;
  // Mostly-complete tables: each transition present with probability 3/4.
  for (std::size_t s = 0; s < d.states; ++s) {
    if (below(3) != 0) d.accepting.push_back(s);
    for (const auto& sym : symbols)
      if (below(4) != 0) d.transitions.push_back({s, sym, below(d.states)});
  }
  return d;
}

std::vector<std::string> alphabet_symbols(const VAGroup& group) {
  std::vector<std::string> out;
  for (const auto& l : group.letters()) out.push_back(l.symbol);
  return out;
}

}  // namespace vag
