#include "vag/refute.hpp"

#include <absl/container/flat_hash_set.h>

#include <algorithm>
#include <sstream>

#include "vag/errors.hpp"

namespace vag {

const char* to_string(LengthSource s) { return s == LengthSource::Table ? "table" : "closed-form"; }

const char* witness_kind(const RefutationWitness& w) {
  switch (w.index()) {
    case 0:
      return "NonGeodesicAccepted";
    case 1:
      return "UncoveredElement";
    default:
      return "PumpedNonGeodesic";
  }
}

namespace {

std::string params_string(const FamilyBParams& p) {
  return "d=" + std::to_string(p.d) + " e=" + std::to_string(p.e) + " f=" + std::to_string(p.f);
}

std::string word_or_empty(const VAGroup& g, const Word& w) { return w.empty() ? "(empty)" : g.format_word(w); }

}  // namespace

std::string format_witness(const VAGroup& group, const RefutationWitness& witness) {
  std::ostringstream os;
  os << "WITNESS " << witness_kind(witness) << "\n";
  os << "group " << group.name() << "\n";
  std::visit(
      [&](const auto& w) {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, NonGeodesicAccepted>) {
          os << "word " << word_or_empty(group, w.word) << "\n";
          os << "weight " << w.weight << "\n";
          os << "element " << group.format_element(w.element) << "\n";
          os << "length " << w.length << "\n";
        } else if constexpr (std::is_same_v<T, UncoveredElement>) {
          os << "element " << group.format_element(w.element) << "\n";
          if (w.params) os << "params " << params_string(*w.params) << "\n";
          os << "length " << w.length << "\n";
          os << "radius_certified " << w.radius_certified << "\n";
          os << "length_source " << to_string(w.source) << "\n";
        } else {
          os << "original_word " << word_or_empty(group, w.original_word) << "\n";
          os << "original_weight " << w.original_weight << "\n";
          os << "original_element " << group.format_element(w.original_element) << "\n";
          os << "original_params " << params_string(w.original_params) << "\n";
          os << "original_length " << w.original_length << "\n";
          for (const auto& loop : w.loops)
            os << "loop start=" << loop.start << " length=" << loop.length << " state=" << loop.state << "\n";
          os << "pumped_word " << word_or_empty(group, w.pumped_word) << "\n";
          os << "pumped_weight " << w.pumped_weight << "\n";
          os << "pumped_element " << group.format_element(w.pumped_element) << "\n";
          os << "pumped_params " << params_string(w.pumped_params) << "\n";
          os << "pumped_length " << w.pumped_length << "\n";
          os << "length_source " << to_string(w.source) << "\n";
        }
      },
      witness);
  os << "END\n";
  return os.str();
}

LengthOracle::LengthOracle(const VAGroup& group, const LengthTable* table, const HModel* h, Push push)
    : group_(&group), table_(table), h_(h), push_(std::move(push)) {
  if (!push_) push_ = [](const GroupElement& g) { return g; };
}

std::optional<std::pair<Int, LengthSource>> LengthOracle::length(const GroupElement& g,
                                                                 const std::optional<FamilyBParams>& params) const {
  if (table_)
    if (auto len = table_->find(g)) return std::make_pair(*len, LengthSource::Table);
  if (params && h_ && push_(h_->family_b(params->d, params->e, params->f)) == g)
    return std::make_pair(closed_form_length_b(params->d, params->e, params->f), LengthSource::ClosedForm);
  return std::nullopt;
}

AuditResult bounded_language_audit(const ValidatedDfa& dfa, const LengthTable& table, Int radius,
                                   std::uint64_t max_words) {
  if (table.radius() < radius)
    throw OutOfRadius("audit radius " + std::to_string(radius) + " exceeds table radius " + std::to_string(table.radius()),
                      radius);
  const VAGroup& group = table.group();
  AuditResult result;
  result.report.name = "language_audit";
  absl::flat_hash_set<PackedKey> hit;
  Word word;

  // Accepted words of weight exactly `target`, lexicographic; stops at the
  // first non-geodesic.
  auto dfs = [&](auto&& self, std::size_t state, const GroupElement& el, Int weight, Int target) -> bool {
    if (weight == target) {
      if (!dfa.accepting(state)) return false;
      if (++result.words > max_words)
        throw ResourceLimit("audit enumerated more than " + std::to_string(max_words) + " accepted words");
      const Int len = table.length(el);
      if (len != weight) {
        result.witness = NonGeodesicAccepted{word, weight, el, len};
        return true;
      }
      hit.insert(table.codec().encode(el));
      return false;
    }
    const Int remaining = target - weight;
    const Int need = dfa.min_accept_weight(state);
    if (need < 0 || need > remaining) return false;
    for (std::size_t l = 0; l < dfa.alphabet_size(); ++l) {
      const std::size_t next = dfa.next(state, l);
      if (next == kNoState || group.letter(l).weight > remaining) continue;
      word.push_back(l);
      const bool stop = self(self, next, group.multiply_letter(el, l), weight + group.letter(l).weight, target);
      word.pop_back();
      if (stop) return true;
    }
    return false;
  };

  for (Int target = 0; target <= radius; ++target) {
    if (dfs(dfs, dfa.start(), group.identity(), 0, target)) {
      const auto& w = std::get<NonGeodesicAccepted>(*result.witness);
      result.report.add_violation("accepted non-geodesic '" + word_or_empty(group, w.word) + "'");
      result.report.detail = "NonGeodesicAccepted radius=" + std::to_string(radius) + " words=" + std::to_string(result.words);
      return result;
    }
  }
  for (std::size_t i = 0; i < table.size() && table.length_at(i) <= radius; ++i) {
    if (hit.contains(table.key_at(i))) continue;
    UncoveredElement u;
    u.element = table.element_at(i);
    u.length = table.length_at(i);
    u.radius_certified = radius;
    result.witness = u;
    result.report.add_violation("element " + group.format_element(u.element) + " of length " + std::to_string(u.length) +
                                " is not reached by an accepted geodesic");
    result.report.detail = "UncoveredElement radius=" + std::to_string(radius) + " words=" + std::to_string(result.words);
    return result;
  }
  result.report.detail = "PASS(" + std::to_string(radius) + ") words=" + std::to_string(result.words);
  return result;
}

Int required_refutation_radius(const ValidatedDfa& dfa) { return 2 * static_cast<Int>(dfa.state_count()) + 6; }

namespace {

struct NodeKey {
  PackedKey key;
  std::uint32_t state = 0;
  friend bool operator==(const NodeKey&, const NodeKey&) = default;
  template <typename H>
  friend H AbslHashValue(H h, const NodeKey& k) {
    return H::combine(std::move(h), k.key, k.state);
  }
};

struct Label {
  std::size_t letter;
  std::size_t alternative;
};

// Accepted DFA word for a geodesic of `target`, chosen greedily by label
// order; nullopt when none exists.
struct FoundWord {
  Word h_word;
  Word dfa_word;
  std::vector<std::size_t> offsets;  // DFA-word position where each H letter's image starts
};

std::optional<FoundWord> search_geodesic_acceptance(const ValidatedDfa& dfa, const SearchSpace& space,
                                                    const GroupElement& target, const RefuteOptions& options) {
  const LengthTable& table = *space.h_table;
  const VAGroup& h = table.group();
  const ElementCodec& codec = table.codec();

  // Geodesic DAG of the target: every prefix of every geodesic.
  absl::flat_hash_set<PackedKey> dag;
  {
    std::vector<GroupElement> stack{target};
    dag.insert(codec.encode(target));
    while (!stack.empty()) {
      GroupElement cur = std::move(stack.back());
      stack.pop_back();
      const std::uint32_t preds = table.optimal_last_letters(cur);
      for (std::size_t l = 0; l < h.letters().size(); ++l) {
        if (!(preds & (std::uint32_t{1} << l))) continue;
        GroupElement prev = h.multiply_letter(cur, h.letter(l).inverse);
        if (dag.insert(codec.encode(prev)).second) stack.push_back(std::move(prev));
      }
    }
  }

  std::vector<Label> labels;
  for (std::size_t l = 0; l < space.images.size(); ++l)
    for (std::size_t k = 0; k < space.images[l].size(); ++k) labels.push_back({l, k});
  std::stable_sort(labels.begin(), labels.end(), [&](const Label& a, const Label& b) {
    return space.images[a.letter][a.alternative] < space.images[b.letter][b.alternative];
  });
  auto read = [&](std::size_t state, const Word& w) {
    for (auto l : w) {
      state = dfa.next(state, l);
      if (state == kNoState) break;
    }
    return state;
  };

  struct Node {
    PackedKey key;
    std::uint32_t state;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // (label index, node)
  };
  const Int goal_length = table.length(target);
  const PackedKey goal_key = codec.encode(target);
  std::vector<Node> nodes;
  absl::flat_hash_map<NodeKey, std::uint32_t> index;
  std::vector<std::vector<std::uint32_t>> buckets(static_cast<std::size_t>(goal_length) + 1);
  std::vector<std::uint32_t> order;

  auto add_node = [&](PackedKey key, std::size_t state, Int len) -> std::uint32_t {
    auto [it, inserted] = index.try_emplace(NodeKey{key, static_cast<std::uint32_t>(state)},
                                            static_cast<std::uint32_t>(nodes.size()));
    if (inserted) {
      if (nodes.size() >= options.max_product_nodes)
        throw ResourceLimit("product search exceeds " + std::to_string(options.max_product_nodes) + " nodes");
      nodes.push_back({key, static_cast<std::uint32_t>(state), {}});
      buckets[static_cast<std::size_t>(len)].push_back(it->second);
    }
    return it->second;
  };

  add_node(codec.encode(h.identity()), dfa.start(), 0);
  IntVector coords;
  QuotientIndex q = 0;
  for (Int len = 0; len <= goal_length; ++len) {
    for (std::size_t bi = 0; bi < buckets[static_cast<std::size_t>(len)].size(); ++bi) {
      const std::uint32_t id = buckets[static_cast<std::size_t>(len)][bi];
      order.push_back(id);
      codec.decode(nodes[id].key, coords, q);
      const GroupElement cur{coords, q};
      const std::size_t state = nodes[id].state;
      for (std::uint32_t li = 0; li < labels.size(); ++li) {
        const Label& lab = labels[li];
        const GroupElement next = h.multiply_letter(cur, lab.letter);
        const PackedKey nkey = codec.encode(next);
        if (!dag.contains(nkey)) continue;
        if (!(table.optimal_last_letters(next) & (std::uint32_t{1} << lab.letter))) continue;
        const std::size_t nstate = read(state, space.images[lab.letter][lab.alternative]);
        if (nstate == kNoState) continue;
        const std::uint32_t nid = add_node(nkey, nstate, len + h.letter(lab.letter).weight);
        nodes[id].edges.emplace_back(li, nid);
      }
    }
  }

  std::vector<bool> good(nodes.size(), false);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Node& n = nodes[*it];
    if (n.key == goal_key) {
      good[*it] = dfa.accepting(n.state);
      continue;
    }
    good[*it] = std::any_of(n.edges.begin(), n.edges.end(), [&](const auto& e) { return good[e.second]; });
  }
  if (!good[0]) return std::nullopt;

  FoundWord found;
  std::uint32_t cur = 0;
  while (nodes[cur].key != goal_key) {
    const auto& edges = nodes[cur].edges;
    auto best = edges.end();
    for (auto e = edges.begin(); e != edges.end(); ++e)
      if (good[e->second] && (best == edges.end() || e->first < best->first)) best = e;
    const Label& lab = labels[best->first];
    found.h_word.push_back(lab.letter);
    found.offsets.push_back(found.dfa_word.size());
    const Word& image = space.images[lab.letter][lab.alternative];
    found.dfa_word.insert(found.dfa_word.end(), image.begin(), image.end());
    cur = best->second;
  }
  return found;
}

}  // namespace

RefutationWitness refute_with_transport(const ValidatedDfa& dfa, const SearchSpace& space,
                                        const RefuteOptions& options) {
  const HModel& h = *space.h;
  const LengthOracle& oracle = *space.oracle;
  const VAGroup& target_group = oracle.group();
  const Int needed = required_refutation_radius(dfa);
  if (space.h_table->radius() < needed)
    throw ResourceLimit("refutation needs an H ball of radius " + std::to_string(needed));

  const Int n = static_cast<Int>(dfa.state_count());
  const FamilyBParams target_params{n, n + 2, 0};
  const GroupElement target = h.family_b(target_params.d, target_params.e, target_params.f);
  const Int target_length = space.h_table->length(target);
  if (target_length != closed_form_length_b(target_params.d, target_params.e, target_params.f))
    throw TheoremViolation("length of x^d (x^tau)^e disagrees with the closed form at " + params_string(target_params));
  const GroupElement pushed_target = oracle.push(target);
  auto pushed_length = oracle.length(pushed_target, target_params);
  if (!pushed_length) throw ResourceLimit("no length oracle covers the refutation target");

  auto found = search_geodesic_acceptance(dfa, space, target, options);
  if (!found) {
    UncoveredElement u;
    u.element = pushed_target;
    u.length = pushed_length->first;
    u.radius_certified = space.h_table->radius();
    u.source = pushed_length->second;
    u.params = target_params;
    return u;
  }

  auto star = h.match_star(found->h_word);
  if (!star)
    throw TheoremViolation("accepted geodesic '" + h.group().format_word(found->h_word) +
                           "' for x^d (x^tau)^e does not have shape (*)");
  auto [flank_x, flank_y] = h.flank_counts(*star);
  if (star->e != target_params.e || flank_x != target_params.d || flank_y != target_params.f)
    throw TheoremViolation("accepted geodesic '" + h.group().format_word(found->h_word) + "' has the wrong (*) exponents");

  PumpedNonGeodesic p;
  p.original_word = found->dfa_word;
  const Evaluation original = target_group.evaluate(p.original_word);
  p.original_weight = original.weight;
  p.original_element = original.element;
  p.original_params = target_params;
  p.original_length = pushed_length->first;
  if (!(original.element == pushed_target) || original.weight != p.original_length)
    throw TheoremViolation("transported word is not a geodesic for the pushed target");

  // DFA-word span of the x-run between the two tau images.
  const std::size_t first_tau = star->w1.size();
  std::size_t run_start = found->offsets[first_tau + 1];
  Int run_length = star->e;
  Word current = p.original_word;
  while (run_length > n) {
    const DfaRun run = dfa_run(dfa, current);
    std::vector<std::size_t> first_seen(dfa.state_count(), kNoState);
    bool excised = false;
    for (std::size_t j = 0; j <= static_cast<std::size_t>(run_length) && !excised; ++j) {
      const std::size_t s = run.trace[run_start + j];
      if (first_seen[s] == kNoState) {
        first_seen[s] = j;
        continue;
      }
      const std::size_t i = first_seen[s];
      p.loops.push_back({run_start + i, j - i, s});
      current = excise_loop(current, run_start + i, j - i);
      run_length -= static_cast<Int>(j - i);
      excised = true;
    }
    if (!excised) throw TheoremViolation("x-run longer than the state count has no repeated state");
  }
  if (!dfa_accepts(dfa, current)) throw TheoremViolation("loop excision lost acceptance");

  p.pumped_word = current;
  p.pumped_params = FamilyBParams{target_params.d, run_length, target_params.f};
  const Evaluation pumped = target_group.evaluate(current);
  p.pumped_weight = pumped.weight;
  p.pumped_element = pumped.element;
  if (!(pumped.element == oracle.push(h.family_b(p.pumped_params.d, p.pumped_params.e, p.pumped_params.f))))
    throw TheoremViolation("pumped word does not evaluate to x^d (x^tau)^e'");
  auto pumped_length = oracle.length(pumped.element, p.pumped_params);
  if (!pumped_length) throw ResourceLimit("no length oracle covers the pumped element");
  p.pumped_length = pumped_length->first;
  p.source = (pushed_length->second == LengthSource::Table && pumped_length->second == LengthSource::Table)
                 ? LengthSource::Table
                 : LengthSource::ClosedForm;
  if (p.pumped_weight <= p.pumped_length) throw TheoremViolation("pumped word is geodesic although e' <= d");
  return p;
}

RefutationWitness pump_refute(const ValidatedDfa& dfa, const HModel& h, const RefuteOptions& options,
                              const LengthTable* table) {
  const Int needed = required_refutation_radius(dfa);
  std::optional<LengthTable> own;
  if (!table || table->radius() < needed) {
    if (needed > options.max_radius)
      throw ResourceLimit("pump_refute needs ball radius " + std::to_string(needed) + " but max_radius is " +
                          std::to_string(options.max_radius));
    own.emplace(enumerate_ball(h.group(), needed, options.ball));
    table = &*own;
  }
  SearchSpace space;
  space.h = &h;
  space.h_table = table;
  for (std::size_t l = 0; l < h.group().letters().size(); ++l) space.images.push_back({Word{l}});
  const LengthOracle oracle(h.group(), table, &h, nullptr);
  space.oracle = &oracle;
  return refute_with_transport(dfa, space, options);
}

namespace {

VerifyResult fail(std::string reason) { return {false, std::move(reason)}; }

VerifyResult verify_uncovered(const UncoveredElement& u, const ValidatedDfa& dfa, const LengthOracle& oracle,
                              std::uint64_t max_words) {
  const VAGroup& group = oracle.group();
  auto len = oracle.length(u.element, u.params);
  if (!len) return fail("no oracle covers the uncovered element");
  if (len->first != u.length) return fail("claimed length " + std::to_string(u.length) + " but oracle gives " + std::to_string(len->first));

  const LengthTable* table = oracle.table();
  const bool use_table = table && table->radius() >= u.length;
  const bool use_eps = !use_table && group.has_epsilon();
  const Int target_eps = use_eps ? group.epsilon(u.element) : 0;
  std::uint64_t visited = 0;
  bool found = false;
  bool budget = false;

  auto dfs = [&](auto&& self, std::size_t state, const GroupElement& el, Int weight) -> void {
    if (found || budget) return;
    if (++visited > max_words) {
      budget = true;
      return;
    }
    if (weight == u.length) {
      if (dfa.accepting(state) && el == u.element) found = true;
      return;
    }
    const Int remaining = u.length - weight;
    if (dfa.min_accept_weight(state) < 0 || dfa.min_accept_weight(state) > remaining) return;
    if (use_table) {
      auto here = table->find(el);
      if (!here || *here != weight) return;
      auto rest = table->find(group.multiply(group.invert(el), u.element));
      if (!rest || *rest != remaining) return;
    } else if (use_eps) {
      const Int gap = target_eps - group.epsilon(el);
      if ((gap < 0 ? -gap : gap) > remaining) return;
    }
    for (std::size_t l = 0; l < dfa.alphabet_size(); ++l) {
      const std::size_t next = dfa.next(state, l);
      if (next == kNoState || group.letter(l).weight > remaining) continue;
      self(self, next, group.multiply_letter(el, l), weight + group.letter(l).weight);
    }
  };
  dfs(dfs, dfa.start(), group.identity(), 0);
  if (budget) return fail("verification budget of " + std::to_string(max_words) + " nodes exceeded");
  if (found) return fail("an accepted word of weight " + std::to_string(u.length) + " reaches the element");
  return {true, std::string("no accepted geodesic (") + (use_table ? "table" : use_eps ? "epsilon" : "brute") +
                    "-pruned enumeration, " + std::to_string(visited) + " nodes)"};
}

VerifyResult verify_pumped(const PumpedNonGeodesic& p, const ValidatedDfa& dfa, const LengthOracle& oracle) {
  const VAGroup& group = oracle.group();
  if (!dfa_accepts(dfa, p.original_word)) return fail("original word is not accepted");
  const Evaluation orig = group.evaluate(p.original_word);
  if (!(orig.element == p.original_element)) return fail("original word evaluates elsewhere");
  if (orig.weight != p.original_weight) return fail("original weight mismatch");
  auto olen = oracle.length(orig.element, p.original_params);
  if (!olen || olen->first != p.original_length) return fail("original length mismatch");
  if (p.original_length != p.original_weight) return fail("original word is not geodesic");

  Word current = p.original_word;
  for (const auto& loop : p.loops) {
    const DfaRun run = dfa_run(dfa, current);
    if (run.trace.size() <= loop.start + loop.length) return fail("loop lies outside the run");
    if (loop.length == 0) return fail("empty loop");
    if (run.trace[loop.start] != loop.state || run.trace[loop.start + loop.length] != loop.state)
      return fail("loop endpoints are not the recorded repeated state");
    current = excise_loop(current, loop.start, loop.length);
  }
  if (current != p.pumped_word) return fail("excising the loops does not give the pumped word");
  if (!dfa_accepts(dfa, p.pumped_word)) return fail("pumped word is not accepted");
  const Evaluation pumped = group.evaluate(p.pumped_word);
  if (!(pumped.element == p.pumped_element)) return fail("pumped word evaluates elsewhere");
  if (pumped.weight != p.pumped_weight) return fail("pumped weight mismatch");
  auto plen = oracle.length(pumped.element, p.pumped_params);
  if (!plen) return fail("no oracle covers the pumped element");
  if (plen->first != p.pumped_length) return fail("pumped length mismatch");
  if (p.pumped_weight <= p.pumped_length) return fail("pumped word is geodesic");
  return {true, "pumped word accepted with weight " + std::to_string(p.pumped_weight) + " > length " +
                    std::to_string(p.pumped_length) + " (" + to_string(plen->second) + ")"};
}

VerifyResult verify_non_geodesic(const NonGeodesicAccepted& w, const ValidatedDfa& dfa, const LengthOracle& oracle) {
  const VAGroup& group = oracle.group();
  if (!dfa_accepts(dfa, w.word)) return fail("word is not accepted");
  const Evaluation ev = group.evaluate(w.word);
  if (!(ev.element == w.element)) return fail("word evaluates elsewhere");
  if (ev.weight != w.weight) return fail("weight mismatch");
  auto len = oracle.length(ev.element, std::nullopt);
  if (!len || len->first != w.length) return fail("length mismatch");
  if (w.weight <= w.length) return fail("word is geodesic");
  return {true, "accepted word of weight " + std::to_string(w.weight) + " > length " + std::to_string(w.length)};
}

}  // namespace

VerifyResult verify_witness(const RefutationWitness& w, const ValidatedDfa& dfa, const LengthOracle& oracle,
                            std::uint64_t max_words) {
  try {
    return std::visit(
        [&](const auto& v) -> VerifyResult {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, NonGeodesicAccepted>) return verify_non_geodesic(v, dfa, oracle);
          else if constexpr (std::is_same_v<T, UncoveredElement>) return verify_uncovered(v, dfa, oracle, max_words);
          else return verify_pumped(v, dfa, oracle);
        },
        w);
  } catch (const Error& e) {
    return fail(e.what());
  }
}

}  // namespace vag
