#include "vag/embedcheck.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <string>

#include "vag/errors.hpp"

namespace vag {

namespace {

IntMatrix build_lattice_map(const VAGroup& source, const VAGroup& target, const std::vector<std::size_t>& generator_map) {
  const IntMatrix& lift = source.lift();
  const IntMatrix& proj = target.projection();
  if (generator_map.size() != lift.rows()) throw ActionError("generator map must cover every source generator");
  IntMatrix correspondence(proj.cols(), lift.rows());
  for (std::size_t i = 0; i < generator_map.size(); ++i) {
    if (generator_map[i] >= proj.cols()) throw ActionError("generator map points outside the target generators");
    correspondence(generator_map[i], i) = 1;
  }
  return proj * correspondence * lift;
}

std::vector<IntVector> columns(const IntMatrix& m) {
  std::vector<IntVector> out;
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.column(c));
  return out;
}

}  // namespace

EmbeddingMap::EmbeddingMap(const VAGroup& source, const VAGroup& target, std::vector<QuotientIndex> quotient_map,
                           std::vector<std::size_t> generator_map, std::vector<std::vector<Word>> letter_images)
    : source_(&source),
      target_(&target),
      quotient_map_(std::move(quotient_map)),
      lattice_map_(build_lattice_map(source, target, generator_map)),
      image_(target.rank(), columns(lattice_map_)),
      letter_images_(std::move(letter_images)) {
  const FiniteGroup& qs = source.quotient();
  const FiniteGroup& qt = target.quotient();
  if (quotient_map_.size() != qs.order()) throw ActionError("quotient map must cover the source quotient");
  quotient_image_.assign(qt.order(), false);
  for (QuotientIndex a = 0; a < qs.order(); ++a) {
    if (quotient_map_[a] >= qt.order()) throw ActionError("quotient map points outside the target quotient");
    if (quotient_image_[quotient_map_[a]]) throw ActionError("quotient map is not injective");
    quotient_image_[quotient_map_[a]] = true;
    for (QuotientIndex b = 0; b < qs.order(); ++b)
      if (quotient_map_[qs.multiply(a, b)] != qt.multiply(quotient_map_[a], quotient_map_[b]))
        throw ActionError("quotient map is not a homomorphism at (" + qs.name(a) + ", " + qs.name(b) + ")");
  }
  if (image_.rank() != source.rank())
    throw ActionError("lattice map has rank " + std::to_string(image_.rank()) + ", expected " +
                      std::to_string(source.rank()));
  for (QuotientIndex q = 0; q < qs.order(); ++q)
    if (lattice_map_ * source.action_matrix(q) != target.action_matrix(quotient_map_[q]) * lattice_map_)
      throw ActionError("lattice map does not intertwine the actions of " + qs.name(q));

  // Relations of the source must vanish in the target.
  const IntMatrix& proj = target.projection();
  for (const auto& r : source.relations()) {
    IntVector pushed(proj.cols(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) pushed[generator_map[i]] += r[i];
    for (Int v : proj.apply(pushed))
      if (v != 0) throw ActionError("a source relation does not hold in the target");
  }

  if (letter_images_.size() != source.letters().size()) throw ActionError("letter images must cover the source alphabet");
  for (std::size_t l = 0; l < letter_images_.size(); ++l) {
    if (letter_images_[l].empty()) throw ActionError("letter '" + source.letter(l).symbol + "' has no image");
    const GroupElement expected = phi(source.letter(l).image);
    for (const Word& w : letter_images_[l]) {
      const Evaluation ev = target.evaluate(w);
      if (!(ev.element == expected) || ev.weight != source.letter(l).weight)
        throw ActionError("image '" + target.format_word(w) + "' of letter '" + source.letter(l).symbol +
                          "' disagrees with the lattice map or the weight");
    }
  }

  const std::size_t n = target.letters().size();
  block_letter_.assign(n, false);
  for (const auto& alternatives : letter_images_)
    for (const Word& w : alternatives)
      if (w.size() > 1)
        for (auto l : w) block_letter_[l] = true;
  commute_.assign(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const GroupElement& ga = target.letter(a).image;
      const GroupElement& gb = target.letter(b).image;
      commute_[a][b] = target.multiply(ga, gb) == target.multiply(gb, ga);
    }
}

EmbeddingMap EmbeddingMap::tau_to_s2(const VAGroup& h, const VAGroup& g) {
  const std::map<std::string, std::string> quotient_names{{"e", "e"}, {"t", "t"}, {"tau", "s2"}, {"ttau", "ts2"}};
  const FiniteGroup& qh = h.quotient();
  const FiniteGroup& qg = g.quotient();
  std::vector<QuotientIndex> qmap(qh.order());
  for (QuotientIndex q = 0; q < qh.order(); ++q) {
    auto it = quotient_names.find(qh.name(q));
    auto target = it == quotient_names.end() ? std::nullopt : qg.find(it->second);
    if (!target) throw ActionError("no tau = s^2 image for quotient element '" + qh.name(q) + "'");
    qmap[q] = *target;
  }

  // x^a -> x^{a'}: each source generator is a translate of one shared with
  // the target by the quotient action.
  const VAPresentation& ph = h.presentation();
  const VAPresentation& pg = g.presentation();
  std::vector<std::size_t> gmap(ph.generators.size());
  for (std::size_t i = 0; i < ph.generators.size(); ++i) {
    bool found = false;
    for (std::size_t b = 0; b < ph.generators.size() && !found; ++b) {
      auto gb = pg.generator_index(ph.generators[b]);
      if (!gb) continue;
      for (QuotientIndex q = 0; q < qh.order() && !found; ++q)
        if (ph.action[q][b] == i) {
          gmap[i] = pg.action[qmap[q]][*gb];
          found = true;
        }
    }
    if (!found) throw ActionError("no target generator corresponds to '" + ph.generators[i] + "'");
  }

  std::vector<std::vector<Word>> images;
  for (const auto& letter : h.letters()) {
    if (letter.symbol == "tau") {
      const std::size_t s = g.require_letter("s"), s_inv = g.require_letter("S");
      images.push_back({Word{s, s}, Word{s_inv, s_inv}});
    } else {
      images.push_back({Word{g.require_letter(letter.symbol)}});
    }
  }
  return EmbeddingMap(h, g, std::move(qmap), std::move(gmap), std::move(images));
}

GroupElement EmbeddingMap::phi(const GroupElement& h) const {
  return {lattice_map_.apply(h.coords), quotient_map_[h.q]};
}

Word EmbeddingMap::substitute(const Word& w) const {
  Word out;
  for (auto l : w) {
    const Word& image = letter_images_.at(l).front();
    out.insert(out.end(), image.begin(), image.end());
  }
  return out;
}

std::optional<Word> EmbeddingMap::pull_back(const Word& w) const {
  Word out;
  std::size_t i = 0;
  while (i < w.size()) {
    bool matched = false;
    for (std::size_t l = 0; l < letter_images_.size() && !matched; ++l)
      for (const Word& image : letter_images_[l])
        if (i + image.size() <= w.size() && std::equal(image.begin(), image.end(), w.begin() + static_cast<std::ptrdiff_t>(i))) {
          out.push_back(l);
          i += image.size();
          matched = true;
          break;
        }
    if (!matched) return std::nullopt;
  }
  return out;
}

std::optional<Word> EmbeddingMap::pull_back_commuting(const Word& w) const {
  Word v = w;
  for (std::size_t i = 1; i < v.size(); ++i)
    for (std::size_t j = i; j > 0 && block_letter_[v[j]] && !block_letter_[v[j - 1]] && commute_[v[j - 1]][v[j]]; --j)
      std::swap(v[j - 1], v[j]);
  return pull_back(v);
}

bool EmbeddingMap::in_image(const GroupElement& g) const { return quotient_image_[g.q] && image_.contains(g.coords); }

CheckReport EmbeddingMap::check_homomorphism(std::uint64_t seed, std::size_t samples) const {
  CheckReport report;
  report.name = "embedding_homomorphism";
  std::mt19937_64 rng(seed);
  const std::size_t letters = source_->letters().size();
  auto random_word = [&] {
    Word w(rng() % 13);
    for (auto& l : w) l = static_cast<std::size_t>(rng() % letters);
    return w;
  };
  for (std::size_t i = 0; i < samples; ++i) {
    const Word u = random_word(), v = random_word();
    const GroupElement a = source_->evaluate(u).element, b = source_->evaluate(v).element;
    const Evaluation pushed = target_->evaluate(substitute(u));
    ++report.checked;
    if (!(pushed.element == phi(a)) || pushed.weight != source_->weight(u))
      report.add_violation("substitution of '" + source_->format_word(u) + "' is not coherent");
    ++report.checked;
    if (!(phi(source_->multiply(a, b)) == target_->multiply(phi(a), phi(b))))
      report.add_violation("phi(gh) != phi(g)phi(h) for '" + source_->format_word(u) + "', '" + source_->format_word(v) + "'");
  }
  report.status = report.violation_count == 0 ? CheckStatus::Pass : CheckStatus::Fail;
  report.detail = "samples=" + std::to_string(samples) + " violations=" + std::to_string(report.violation_count);
  return report;
}

CheckReport check_totally_geodesic(const EmbeddingMap& emb, const LengthTable& h_table, const LengthTable& g_table,
                                   Int radius, PullBackMode mode, std::size_t max_geodesics) {
  if (h_table.radius() < radius || g_table.radius() < radius)
    throw OutOfRadius("totally geodesic check at radius " + std::to_string(radius) + " needs both balls at that radius",
                      radius);
  const VAGroup& h = emb.source();
  const VAGroup& g = emb.target();
  CheckReport report;
  report.name = "totally_geodesic";
  std::size_t elements = 0, geodesics = 0, literal_failures = 0, commuting_failures = 0;
  std::optional<std::string> literal_example;
  for (std::size_t i = 0; i < h_table.size() && h_table.length_at(i) <= radius; ++i) {
    ++elements;
    const GroupElement el = h_table.element_at(i);
    const Int lh = h_table.length_at(i);
    const GroupElement image = emb.phi(el);
    const auto lg = g_table.find(image);
    ++report.checked;
    if (!lg || *lg != lh) {
      report.add_violation("l_G(phi(" + h.format_element(el) + ")) = " + (lg ? std::to_string(*lg) : "?") +
                           " but l_H = " + std::to_string(lh));
      continue;
    }
    for (const Word& w : all_geodesics(g_table, image, max_geodesics)) {
      ++geodesics;
      ++report.checked;
      for (PullBackMode m : {PullBackMode::Literal, PullBackMode::Commuting}) {
        auto back = m == PullBackMode::Literal ? emb.pull_back(w) : emb.pull_back_commuting(w);
        std::string problem;
        if (!back) {
          problem = "G-geodesic '" + g.format_word(w) + "' is not a substituted word";
        } else {
          const Evaluation ev = h.evaluate(*back);
          if (!(ev.element == el) || ev.weight != lh)
            problem = "pull-back '" + h.format_word(*back) + "' is not an H-geodesic of " + h.format_element(el);
        }
        if (problem.empty()) continue;
        if (m == PullBackMode::Literal) {
          ++literal_failures;
          if (!literal_example) literal_example = g.format_word(w);
        } else {
          ++commuting_failures;
        }
        if (m == mode) report.add_violation(problem);
      }
    }
  }
  std::size_t images = 0;
  for (std::size_t i = 0; i < g_table.size() && g_table.length_at(i) <= radius; ++i)
    if (emb.in_image(g_table.element_at(i))) ++images;
  ++report.checked;
  if (images != elements)
    report.add_violation(std::to_string(images) + " image elements in the G ball but " + std::to_string(elements) +
                         " H elements within radius");
  report.status = report.violation_count == 0 ? CheckStatus::Pass : CheckStatus::Fail;
  report.detail = "radius=" + std::to_string(radius) + " elements=" + std::to_string(elements) +
                  " geodesics=" + std::to_string(geodesics) + " literal_pullback_failures=" +
                  std::to_string(literal_failures) + (literal_example ? " (first '" + *literal_example + "')" : "") +
                  " commuting_pullback_failures=" + std::to_string(commuting_failures) +
                  " mode=" + (mode == PullBackMode::Literal ? "literal" : "commuting") +
                  " violations=" + std::to_string(report.violation_count) + " (bounded-radius evidence)";
  return report;
}

LengthOracle subgroup_oracle(const EmbeddingMap& emb, const HModel& h, const LengthTable* g_table) {
  return LengthOracle(emb.target(), g_table, &h, [&emb](const GroupElement& x) { return emb.phi(x); });
}

RefutationWitness refute_on_subgroup(const ValidatedDfa& dfa, const EmbeddingMap& emb, const HModel& h,
                                     const RefuteOptions& options, const LengthTable* h_table,
                                     const LengthTable* g_table) {
  const Int needed = required_refutation_radius(dfa);
  std::optional<LengthTable> own;
  if (!h_table || h_table->radius() < needed) {
    if (needed > options.max_radius)
      throw ResourceLimit("refutation needs H ball radius " + std::to_string(needed) + " but max_radius is " +
                          std::to_string(options.max_radius));
    own.emplace(enumerate_ball(h.group(), needed, options.ball));
    h_table = &*own;
  }
  const LengthOracle oracle = subgroup_oracle(emb, h, g_table);
  SearchSpace space;
  space.h = &h;
  space.h_table = h_table;
  space.images = emb.letter_images();
  space.oracle = &oracle;
  return refute_with_transport(dfa, space, options);
}

}  // namespace vag
