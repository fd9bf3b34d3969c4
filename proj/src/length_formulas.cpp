#include "vag/length_formulas.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "vag/errors.hpp"

namespace vag {

Int closed_form_length_a(Int a, Int b, Int c) {
  if (a < 0 || b < 0 || c <= 0)
    throw DomainError("family A needs a, b >= 0 and c > 0 (got " + std::to_string(a) + ", " + std::to_string(b) +
                      ", " + std::to_string(c) + ")");
  return a + b + c + 2;
}

Int closed_form_length_b(Int d, Int e, Int f) {
  if (d < 0 || f < 0 || e <= 0)
    throw DomainError("family B needs d, f >= 0 and e > 0 (got " + std::to_string(d) + ", " + std::to_string(e) +
                      ", " + std::to_string(f) + ")");
  return e <= d ? d + e + f + 2 : d + e + f + 4;
}

Int closed_form_length_h(Family family, Int p1, Int p2, Int p3) {
  return family == Family::A ? closed_form_length_a(p1, p2, p3) : closed_form_length_b(p1, p2, p3);
}

namespace {

std::size_t need_letter(const VAGroup& g, const char* symbol) {
  auto i = g.letter_index(symbol);
  if (!i) throw NotConfigured(std::string("group has no letter '") + symbol + "'");
  return *i;
}

IntVector scaled_sum(std::initializer_list<std::pair<Int, const IntVector*>> terms) {
  IntVector out(terms.begin()->second->size(), 0);
  for (const auto& [k, v] : terms)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = checked::fma(out[i], k, (*v)[i]);
  return out;
}

void append(Word& w, std::size_t letter, Int count) {
  for (Int i = 0; i < count; ++i) w.push_back(letter);
}

}  // namespace

HModel::HModel(const VAGroup& group)
    : group_(&group),
      x_(need_letter(group, "x")),
      X_(need_letter(group, "X")),
      y_(need_letter(group, "y")),
      Y_(need_letter(group, "Y")),
      t_(need_letter(group, "t")),
      tau_(need_letter(group, "tau")),
      gx_(group.generator_image("x")),
      gx_tau_(group.generator_image("x_tau")),
      gy_(group.generator_image("y")),
      gy_t_(group.generator_image("y_t")) {}

GroupElement HModel::family_a(Int a, Int b, Int c) const {
  return GroupElement{scaled_sum({{a, &gx_}, {b, &gy_}, {c, &gy_t_}}), group_->quotient().identity()};
}

GroupElement HModel::family_b(Int d, Int e, Int f) const {
  return GroupElement{scaled_sum({{d, &gx_}, {e, &gx_tau_}, {f, &gy_}}), group_->quotient().identity()};
}

GroupElement HModel::mixed(Int d, Int e, Int f, Int c) const {
  return GroupElement{scaled_sum({{d, &gx_}, {e, &gx_tau_}, {f, &gy_}, {c, &gy_t_}}), group_->quotient().identity()};
}

Word HModel::family_a_word(Int a, Int b, Int c) const {
  Word w;
  append(w, x_, a);
  append(w, y_, b);
  w.push_back(t_);
  append(w, y_, c);
  w.push_back(t_);
  return w;
}

Word HModel::star_word(Int d, Int e, Int f) const {
  Word w;
  append(w, x_, d);
  w.push_back(tau_);
  append(w, x_, e);
  w.push_back(tau_);
  append(w, y_, f);
  return w;
}

Word HModel::alternative_word(Int e, Int f) const {
  Word w{X_};
  append(w, y_, f + e);
  w.push_back(t_);
  append(w, y_, e);
  w.push_back(t_);
  return w;
}

std::optional<StarDecomposition> HModel::match_star(const Word& w) const {
  std::vector<std::size_t> taus;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == tau_) {
      taus.push_back(i);
    } else if (w[i] != x_ && w[i] != y_) {
      return std::nullopt;
    }
  }
  if (taus.size() != 2 || taus[1] == taus[0] + 1) return std::nullopt;
  for (std::size_t i = taus[0] + 1; i < taus[1]; ++i)
    if (w[i] != x_) return std::nullopt;
  StarDecomposition s;
  s.w1.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(taus[0]));
  s.e = static_cast<Int>(taus[1] - taus[0] - 1);
  s.w2.assign(w.begin() + static_cast<std::ptrdiff_t>(taus[1]) + 1, w.end());
  return s;
}

Word HModel::reassemble(const StarDecomposition& s) const {
  Word w = s.w1;
  w.push_back(tau_);
  append(w, x_, s.e);
  w.push_back(tau_);
  w.insert(w.end(), s.w2.begin(), s.w2.end());
  return w;
}

std::pair<Int, Int> HModel::flank_counts(const StarDecomposition& s) const {
  Int xs = 0, ys = 0;
  for (const Word* part : {&s.w1, &s.w2})
    for (auto l : *part) (l == x_ ? xs : ys) += 1;
  return {xs, ys};
}

DeltaShift delta_shift(const HModel& h, Int d, Int e, Int f, Int delta) {
  if (delta < 0 || delta > std::min(d, e))
    throw DomainError("delta must lie in [0, min(d, e)] (got " + std::to_string(delta) + ")");
  DeltaShift out{d - delta, e - delta, f + delta, delta};
  if (!(h.mixed(d, e, f, 0) == h.mixed(out.d, out.e, out.f, out.c)))
    throw TheoremViolation("delta shift changes the element at (d, e, f, delta) = (" + std::to_string(d) + ", " +
                           std::to_string(e) + ", " + std::to_string(f) + ", " + std::to_string(delta) + ")");
  return out;
}

Int FormulaGrid::required_radius() const {
  Int r = 0;
  if (c_max >= 1) r = std::max(r, closed_form_length_a(ab_max, ab_max, c_max));
  for (Int d = 0; d <= d_max; ++d)
    for (Int e = 1; e <= e_max; ++e) r = std::max(r, closed_form_length_b(d, e, f_max));
  return r;
}

namespace {

void require_radius(const LengthTable& table, Int needed, const std::string& what) {
  if (table.radius() < needed)
    throw OutOfRadius(what + " needs radius " + std::to_string(needed) + ", table has " + std::to_string(table.radius()),
                      needed);
}

std::string tuple_string(std::initializer_list<std::pair<const char*, Int>> kv) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (const auto& [k, v] : kv) {
    os << (first ? "" : ",") << k << '=' << v;
    first = false;
  }
  os << ')';
  return os.str();
}

}  // namespace

CheckReport verify_length_formulas(const HModel& h, const LengthTable& table, const FormulaGrid& grid) {
  require_radius(table, grid.required_radius(), "formula grid");
  const VAGroup& g = h.group();
  CheckReport report;
  report.name = "length_formulas";
  for (Int a = 0; a <= grid.ab_max; ++a)
    for (Int b = 0; b <= grid.ab_max; ++b)
      for (Int c = 1; c <= grid.c_max; ++c) {
        ++report.checked;
        const GroupElement el = h.family_a(a, b, c);
        const Int predicted = closed_form_length_a(a, b, c);
        const Int actual = table.length(el);
        if (actual != predicted)
          report.add_violation("A" + tuple_string({{"a", a}, {"b", b}, {"c", c}}) + ": oracle " + std::to_string(actual) +
                               " vs formula " + std::to_string(predicted));
        const Evaluation ev = g.evaluate(h.family_a_word(a, b, c));
        if (!(ev.element == el) || ev.weight != predicted)
          report.add_violation("A" + tuple_string({{"a", a}, {"b", b}, {"c", c}}) + ": witness word x^a y^b t y^c t is wrong");
      }
  for (Int d = 0; d <= grid.d_max; ++d)
    for (Int e = 1; e <= grid.e_max; ++e)
      for (Int f = 0; f <= grid.f_max; ++f) {
        ++report.checked;
        const Int predicted = closed_form_length_b(d, e, f);
        const Int actual = table.length(h.family_b(d, e, f));
        if (actual != predicted)
          report.add_violation("B" + tuple_string({{"d", d}, {"e", e}, {"f", f}}) + ": oracle " + std::to_string(actual) +
                               " vs formula " + std::to_string(predicted));
      }
  report.detail = "elements=" + std::to_string(report.checked) + " violations=" + std::to_string(report.violation_count) +
                  " radius=" + std::to_string(table.radius());
  return report;
}

CheckReport verify_star_characterization(const HModel& h, const LengthTable& table, Int d_max, Int e_max, Int f_max) {
  require_radius(table, d_max + e_max + f_max + 4, "star characterization");
  const VAGroup& g = h.group();
  CheckReport report;
  report.name = "star_characterization";
  std::uint64_t geodesics_checked = 0;
  for (Int d = 0; d <= d_max; ++d)
    for (Int e = 1; e <= e_max; ++e)
      for (Int f = 0; f <= f_max; ++f) {
        ++report.checked;
        const std::string tag = tuple_string({{"d", d}, {"e", e}, {"f", f}});
        const GroupElement el = h.family_b(d, e, f);
        const Int len = table.length(el);

        const Word star = h.star_word(d, e, f);
        const Evaluation ev = g.evaluate(star);
        if (!(ev.element == el)) report.add_violation(tag + ": (*) word evaluates to the wrong element");
        if (ev.weight != d + e + f + 4) report.add_violation(tag + ": (*) word has weight " + std::to_string(ev.weight));
        const bool geodesic = ev.weight == len;
        if (geodesic != (e > d))
          report.add_violation(tag + ": (*) word geodesic=" + (geodesic ? "yes" : "no") + " but e>d is " +
                               (e > d ? "true" : "false"));

        if (e > d + 1) {
          for (const Word& w : all_geodesics(table, el)) {
            ++geodesics_checked;
            auto s = h.match_star(w);
            if (!s) {
              report.add_violation(tag + ": geodesic '" + g.format_word(w) + "' does not match (*)");
              continue;
            }
            auto [xs, ys] = h.flank_counts(*s);
            if (s->e != e || xs != d || ys != f)
              report.add_violation(tag + ": geodesic '" + g.format_word(w) + "' matches (*) with wrong exponents");
          }
        } else if (e == d + 1) {
          const Word alt = h.alternative_word(e, f);
          const Evaluation aev = g.evaluate(alt);
          if (aev.weight != 2 * e + f + 3 || aev.weight != d + e + f + 4)
            report.add_violation(tag + ": alternative word has weight " + std::to_string(aev.weight));
          if (!(aev.element == el)) report.add_violation(tag + ": alternative word evaluates to the wrong element");
          if (aev.weight != len) report.add_violation(tag + ": alternative word is not geodesic");
          if (h.match_star(alt)) report.add_violation(tag + ": alternative word matches (*)");
        }
      }
  report.detail = "elements=" + std::to_string(report.checked) + " geodesics=" + std::to_string(geodesics_checked) +
                  " violations=" + std::to_string(report.violation_count);
  return report;
}

CheckReport epsilon_audit(const HModel& h, const LengthTable& table) {
  const VAGroup& g = h.group();
  const SubgroupLatticeTest xy(g, {h.x(), h.y()});
  const SubgroupLatticeTest xyt(g, {h.x(), h.y(), h.t()});
  CheckReport report;
  report.name = "epsilon_audit";
  std::uint64_t in_lattice = 0, plus2 = 0, plus4 = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    ++report.checked;
    const GroupElement el = table.element_at(i);
    const Int len = table.length_at(i);
    const Int eps = g.epsilon(el);
    const Int abs_eps = eps < 0 ? -eps : eps;
    if (len < abs_eps) report.add_violation(g.format_element(el) + ": length " + std::to_string(len) + " < |eps|");
    if (el.q != g.quotient().identity()) continue;
    ++in_lattice;
    if ((len - eps) % 2 != 0) report.add_violation(g.format_element(el) + ": parity of length differs from eps");
    if (xy.contains(el)) continue;
    ++plus2;
    if (len < abs_eps + 2) report.add_violation(g.format_element(el) + ": outside <x,y> but length < |eps|+2");
    if (xyt.contains(el)) continue;
    ++plus4;
    if (len < abs_eps + 4) report.add_violation(g.format_element(el) + ": outside <x,y,t> but length < |eps|+4");
  }
  report.detail = "elements=" + std::to_string(report.checked) + " in_N=" + std::to_string(in_lattice) +
                  " outside_xy=" + std::to_string(plus2) + " outside_xyt=" + std::to_string(plus4) +
                  " violations=" + std::to_string(report.violation_count) + " radius=" + std::to_string(table.radius());
  return report;
}

}  // namespace vag
