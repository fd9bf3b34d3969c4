#include "vag/group.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "vag/errors.hpp"

namespace vag {

namespace {

IntVector permute(const IntVector& v, const std::vector<std::size_t>& perm) {
  IntVector out(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) out[perm[i]] = v[i];
  return out;
}

IntVector negated(const IntVector& v) {
  IntVector out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](Int x) { return checked::neg(x); });
  return out;
}

bool all_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](Int x) { return x == 0; });
}

// Relations closed under the action, zero vectors and duplicates up to sign
// dropped, in (listed relation, quotient element) order.
std::vector<IntVector> close_relations(const VAPresentation& p) {
  std::vector<IntVector> out;
  for (const auto& rel : p.relations)
    for (QuotientIndex q = 0; q < p.quotient.order(); ++q) {
      IntVector image = permute(rel, p.action[q]);
      if (all_zero(image)) continue;
      IntVector neg = negated(image);
      if (std::find(out.begin(), out.end(), image) != out.end()) continue;
      if (std::find(out.begin(), out.end(), neg) != out.end()) continue;
      out.push_back(std::move(image));
    }
  return out;
}

IntMatrix permutation_matrix(const std::vector<std::size_t>& perm) {
  IntMatrix m(perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) m(perm[i], i) = 1;
  return m;
}

}  // namespace

VAGroup compile_presentation(const VAPresentation& p) {
  p.validate();
  const std::size_t n = p.generators.size();
  const std::size_t m = p.quotient.order();

  VAGroup g;
  g.presentation_ = p;
  g.relations_ = close_relations(p);

  std::size_t rel_rank = 0;
  IntMatrix rel_matrix = IntMatrix::from_rows(g.relations_, n);
  if (!g.relations_.empty()) {
    SmithForm smith = smith_normal_form(rel_matrix);
    rel_rank = smith.rank;
    for (Int d : smith.invariant_factors())
      if (d != 1)
        throw TorsionError("relation lattice is not primitive: invariant factor " + std::to_string(d) +
                           " gives torsion in the quotient module");

    std::vector<IntVector> kernel;
    for (std::size_t i = smith.rank; i < smith.row_transform.rows(); ++i) {
      auto row = smith.row_transform.row(i);
      kernel.emplace_back(row.begin(), row.end());
    }
    if (!kernel.empty()) {
      HermiteForm hk = hermite_normal_form(IntMatrix::from_rows(kernel, g.relations_.size()));
      for (std::size_t i = 0; i < hk.rank(); ++i) {
        auto row = hk.form.row(i);
        g.dependencies_.emplace_back(row.begin(), row.end());
      }
    }

    HermiteForm hermite = hermite_normal_form(rel_matrix);
    const bool unit_pivots = std::all_of(hermite.pivot_columns.begin(), hermite.pivot_columns.end(),
                                         [&, i = std::size_t{0}](std::size_t c) mutable { return hermite.form(i++, c) == 1; });
    g.rank_ = n - rel_rank;
    g.projection_ = IntMatrix(g.rank_, n);
    g.lift_ = IntMatrix(n, g.rank_);
    if (unit_pivots) {
      std::vector<std::size_t> coord_of(n, n);
      for (std::size_t j = 0; j < n; ++j)
        if (std::find(hermite.pivot_columns.begin(), hermite.pivot_columns.end(), j) == hermite.pivot_columns.end()) {
          coord_of[j] = g.basis_generators_.size();
          g.basis_generators_.push_back(j);
        }
      for (std::size_t a = 0; a < g.rank_; ++a) {
        g.projection_(a, g.basis_generators_[a]) = 1;
        g.lift_(g.basis_generators_[a], a) = 1;
      }
      // Row i reads e_pivot = -sum_j H(i, j) e_j modulo relations.
      for (std::size_t i = 0; i < rel_rank; ++i) {
        const std::size_t pc = hermite.pivot_columns[i];
        for (std::size_t j = 0; j < n; ++j)
          if (coord_of[j] != n && hermite.form(i, j) != 0)
            g.projection_(coord_of[j], pc) = checked::neg(hermite.form(i, j));
      }
    } else {
      for (std::size_t a = 0; a < g.rank_; ++a)
        for (std::size_t i = 0; i < n; ++i) {
          g.projection_(a, i) = smith.col_transform(i, rel_rank + a);
          g.lift_(i, a) = smith.col_inverse(rel_rank + a, i);
        }
    }
  } else {
    g.rank_ = n;
    g.projection_ = IntMatrix::identity(n);
    g.lift_ = IntMatrix::identity(n);
    for (std::size_t j = 0; j < n; ++j) g.basis_generators_.push_back(j);
  }

  if (!(g.projection_ * g.lift_).is_identity()) throw ActionError("internal: projection does not split");
  for (const auto& rel : g.relations_)
    if (!all_zero(g.projection_.apply(rel))) throw ActionError("internal: relation not in projection kernel");

  g.action_.reserve(m);
  for (QuotientIndex q = 0; q < m; ++q) {
    IntMatrix perm = permutation_matrix(p.action[q]);
    IntMatrix a = g.projection_ * perm * g.lift_;
    if (!(g.projection_ * perm == a * g.projection_))
      throw ActionError("action of '" + p.quotient.name(q) +
                        "' does not preserve the relation lattice (projection is not equivariant)");
    g.action_.push_back(std::move(a));
  }
  for (QuotientIndex q = 0; q < m; ++q)
    for (QuotientIndex r = 0; r < m; ++r)
      if (!(g.action_[q] * g.action_[r] == g.action_[p.quotient.multiply(q, r)]))
        throw ActionError("action matrices do not compose as the quotient multiplies");

  for (const auto& letter : p.alphabet) {
    CompiledLetter c;
    c.symbol = letter.symbol;
    c.inverse = *p.letter_index(letter.inverse_symbol);
    c.image = GroupElement{g.projection_.apply(letter.lattice), letter.quotient};
    c.weight = letter.weight;
    g.letters_.push_back(std::move(c));
  }
  for (const auto& c : g.letters_)
    if (!(g.invert(c.image) == g.letters_[c.inverse].image))
      throw PresentationError("letter '" + g.letters_[c.inverse].symbol + "' is not the group inverse of '" + c.symbol + "'");

  g.letter_shift_.reserve(m * g.letters_.size());
  for (QuotientIndex q = 0; q < m; ++q)
    for (const auto& c : g.letters_) g.letter_shift_.push_back(g.action_[q].apply(c.image.coords));

  if (p.epsilon) {
    const IntVector& eps = *p.epsilon;
    for (const auto& rel : g.relations_) {
      Int s = 0;
      for (std::size_t i = 0; i < n; ++i) s = checked::fma(s, eps[i], rel[i]);
      if (s != 0) throw PresentationError("EPSILON does not vanish on the relations");
    }
    for (QuotientIndex q = 0; q < m; ++q)
      for (std::size_t i = 0; i < n; ++i)
        if (eps[p.action[q][i]] != eps[i]) throw PresentationError("EPSILON is not invariant under the action");
    IntVector induced(g.rank_, 0);
    for (std::size_t a = 0; a < g.rank_; ++a)
      for (std::size_t i = 0; i < n; ++i) induced[a] = checked::fma(induced[a], eps[i], g.lift_(i, a));
    for (std::size_t i = 0; i < n; ++i) {
      Int s = 0;
      for (std::size_t a = 0; a < g.rank_; ++a) s = checked::fma(s, induced[a], g.projection_(a, i));
      if (s != eps[i]) throw PresentationError("internal: induced EPSILON disagrees with the datum");
    }
    g.epsilon_ = std::move(induced);
  }
  return g;
}

std::string VAGroup::basis_description() const {
  std::ostringstream os;
  const auto& gens = presentation_.generators;
  if (!basis_generators_.empty() || rank_ == 0) {
    os << "basis:";
    for (auto j : basis_generators_) os << ' ' << gens[j];
    os << '\n';
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (std::find(basis_generators_.begin(), basis_generators_.end(), i) != basis_generators_.end()) continue;
      os << "  " << gens[i] << " =";
      bool first = true;
      for (std::size_t a = 0; a < rank_; ++a) {
        Int c = projection_(a, i);
        if (c == 0) continue;
        os << ' ' << (c < 0 ? (first ? "-" : "- ") : (first ? "" : "+ "));
        Int mag = c < 0 ? -c : c;
        if (mag != 1) os << mag << '*';
        os << gens[basis_generators_[a]];
        first = false;
      }
      if (first) os << " 0";
      os << '\n';
    }
  } else {
    os << "basis: Smith column transform\n" << "projection:\n" << projection_;
  }
  return os.str();
}

std::optional<std::size_t> VAGroup::letter_index(std::string_view symbol) const {
  for (std::size_t i = 0; i < letters_.size(); ++i)
    if (letters_[i].symbol == symbol) return i;
  return std::nullopt;
}

std::size_t VAGroup::require_letter(std::string_view symbol) const {
  auto i = letter_index(symbol);
  if (!i) throw UnknownSymbol("unknown symbol '" + std::string(symbol) + "'");
  return *i;
}

GroupElement VAGroup::identity() const { return GroupElement{IntVector(rank_, 0), quotient().identity()}; }

GroupElement VAGroup::multiply(const GroupElement& g, const GroupElement& h) const {
  IntVector shifted = action_[g.q].apply(h.coords);
  for (std::size_t i = 0; i < rank_; ++i) shifted[i] = checked::add(shifted[i], g.coords[i]);
  return GroupElement{std::move(shifted), quotient().multiply(g.q, h.q)};
}

GroupElement VAGroup::invert(const GroupElement& g) const {
  // (a, q)^{-1} = (-A_{q^{-1}} a, q^{-1})
  const QuotientIndex qi = quotient().inverse(g.q);
  IntVector c = action_[qi].apply(g.coords);
  for (auto& v : c) v = checked::neg(v);
  return GroupElement{std::move(c), qi};
}

void VAGroup::multiply_letter_in_place(IntVector& coords, QuotientIndex& q, std::size_t l) const {
  const IntVector& shift = letter_shift_[q * letters_.size() + l];
  for (std::size_t i = 0; i < rank_; ++i) coords[i] = checked::add(coords[i], shift[i]);
  q = quotient().multiply(q, letters_[l].image.q);
}

GroupElement VAGroup::multiply_letter(const GroupElement& g, std::size_t l) const {
  GroupElement out = g;
  multiply_letter_in_place(out.coords, out.q, l);
  return out;
}

GroupElement VAGroup::lattice_element(const IntVector& generator_vector, QuotientIndex q) const {
  return GroupElement{projection_.apply(generator_vector), q};
}

IntVector VAGroup::generator_image(std::string_view generator) const {
  auto i = presentation_.generator_index(generator);
  if (!i) throw NotConfigured("group has no lattice generator '" + std::string(generator) + "'");
  IntVector e(presentation_.generators.size(), 0);
  e[*i] = 1;
  return projection_.apply(e);
}

Evaluation VAGroup::evaluate(const Word& w) const {
  Evaluation ev{identity(), 0};
  for (auto l : w) {
    if (l >= letters_.size()) throw UnknownSymbol("letter index out of range");
    multiply_letter_in_place(ev.element.coords, ev.element.q, l);
    ev.weight = checked::add(ev.weight, letters_[l].weight);
  }
  return ev;
}

Int VAGroup::weight(const Word& w) const {
  Int s = 0;
  for (auto l : w) s = checked::add(s, letters_.at(l).weight);
  return s;
}

Word VAGroup::parse_word(std::string_view text) const {
  Word out;
  std::istringstream in{std::string(text)};
  std::string chunk;
  while (in >> chunk) {
    // Greedy longest match, so "xtau" splits as x, tau.
    std::size_t pos = 0;
    while (pos < chunk.size()) {
      std::size_t best = letters_.size();
      std::size_t best_len = 0;
      for (std::size_t i = 0; i < letters_.size(); ++i) {
        const auto& s = letters_[i].symbol;
        if (s.size() > best_len && chunk.compare(pos, s.size(), s) == 0) best = i, best_len = s.size();
      }
      if (best == letters_.size())
        throw UnknownSymbol("unknown symbol at '" + chunk.substr(pos) + "' in word '" + std::string(text) + "'");
      out.push_back(best);
      pos += best_len;
    }
  }
  return out;
}

std::string VAGroup::format_word(const Word& w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += letters_.at(w[i]).symbol;
  }
  return out;
}

Word VAGroup::inverse_word(const Word& w) const {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(letters_.at(*it).inverse);
  return out;
}

std::string VAGroup::format_element(const GroupElement& g) const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < g.coords.size(); ++i) os << (i ? " " : "") << g.coords[i];
  os << " | " << quotient().name(g.q) << ')';
  return os.str();
}

Int VAGroup::epsilon(const GroupElement& g) const {
  if (!epsilon_) throw NotConfigured("group '" + name() + "' has no EPSILON datum");
  Int s = 0;
  for (std::size_t i = 0; i < rank_; ++i) s = checked::fma(s, (*epsilon_)[i], g.coords[i]);
  return s;
}

Evaluation evaluate_word(const VAGroup& group, std::string_view word) {
  return group.evaluate(group.parse_word(word));
}

namespace {

std::vector<QuotientIndex> generated_subgroup(const FiniteGroup& quotient, const std::vector<QuotientIndex>& gens) {
  std::vector<QuotientIndex> members{quotient.identity()};
  for (std::size_t i = 0; i < members.size(); ++i)
    for (auto g : gens) {
      QuotientIndex p = quotient.multiply(members[i], g);
      if (std::find(members.begin(), members.end(), p) == members.end()) members.push_back(p);
    }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<IntVector> orbit_span_generators(const VAGroup& group, const std::vector<std::size_t>& letters,
                                             const std::vector<QuotientIndex>& subgroup) {
  std::vector<IntVector> gens;
  for (auto l : letters)
    for (auto q : subgroup) gens.push_back(group.action_matrix(q).apply(group.letter(l).image.coords));
  if (gens.empty()) gens.emplace_back(group.rank(), 0);
  return gens;
}

std::vector<QuotientIndex> letter_quotients(const VAGroup& group, const std::vector<std::size_t>& letters) {
  std::vector<QuotientIndex> qs;
  for (auto l : letters) qs.push_back(group.letter(l).image.q);
  return qs;
}

}  // namespace

SubgroupLatticeTest::SubgroupLatticeTest(const VAGroup& group, const std::vector<std::size_t>& letters)
    : identity_(group.quotient().identity()),
      quotient_subgroup_(generated_subgroup(group.quotient(), letter_quotients(group, letters))),
      lattice_(group.rank(), orbit_span_generators(group, letters, quotient_subgroup_)) {}

bool SubgroupLatticeTest::contains(const GroupElement& g) const {
  return g.q == identity_ && lattice_.contains(g.coords);
}

SubgroupLatticeTest sublattice_membership(const VAGroup& group, const std::vector<std::string>& symbols) {
  std::vector<std::size_t> letters;
  for (const auto& s : symbols) letters.push_back(group.require_letter(s));
  return SubgroupLatticeTest(group, letters);
}

}  // namespace vag
