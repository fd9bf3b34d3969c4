#include "vag/finite_group.hpp"

#include <algorithm>

#include "vag/errors.hpp"

namespace vag {

FiniteGroup::FiniteGroup(std::vector<std::vector<QuotientIndex>> table, std::vector<std::string> names)
    : table_(std::move(table)), names_(std::move(names)) {
  const std::size_t m = table_.size();
  if (m == 0) throw PresentationError("quotient group must have positive order");
  for (const auto& row : table_) {
    if (row.size() != m) throw PresentationError("quotient multiplication table is not square");
    for (auto v : row)
      if (v >= m) throw PresentationError("quotient multiplication table entry out of range");
  }
  if (names_.empty())
    for (std::size_t i = 0; i < m; ++i) names_.push_back(std::to_string(i));
  if (names_.size() != m) throw PresentationError("quotient element name count differs from order");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (names_[i] == names_[j]) throw PresentationError("duplicate quotient element name '" + names_[i] + "'");

  std::optional<QuotientIndex> id;
  for (std::size_t e = 0; e < m && !id; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < m && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
    if (ok) id = e;
  }
  if (!id) throw PresentationError("quotient multiplication table has no identity");
  identity_ = *id;

  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw PresentationError("quotient multiplication table is not associative");

  inverse_.assign(m, m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b)
      if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
    if (inverse_[a] == m) throw PresentationError("quotient element '" + names_[a] + "' has no inverse");
  }
}

std::size_t FiniteGroup::element_order(QuotientIndex a) const {
  std::size_t n = 1;
  for (QuotientIndex p = a; p != identity_; p = multiply(p, a)) ++n;
  return n;
}

std::optional<QuotientIndex> FiniteGroup::find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<QuotientIndex>(it - names_.begin());
}

}  // namespace vag
