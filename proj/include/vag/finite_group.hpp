#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vag {

using QuotientIndex = std::size_t;

/// A finite group given by its multiplication table.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  /// Validates the table as a group law (closure, associativity, identity,
  /// inverses). Throws PresentationError on failure. Names default to the
  /// element indices when empty.
  FiniteGroup(std::vector<std::vector<QuotientIndex>> table, std::vector<std::string> names);

  std::size_t order() const noexcept { return table_.size(); }
  QuotientIndex identity() const noexcept { return identity_; }
  QuotientIndex multiply(QuotientIndex a, QuotientIndex b) const { return table_[a][b]; }
  QuotientIndex inverse(QuotientIndex a) const { return inverse_[a]; }
  std::size_t element_order(QuotientIndex a) const;

  const std::string& name(QuotientIndex a) const { return names_[a]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<QuotientIndex> find(std::string_view name) const;

  const std::vector<std::vector<QuotientIndex>>& table() const noexcept { return table_; }

 private:
  std::vector<std::vector<QuotientIndex>> table_;
  std::vector<std::string> names_;
  std::vector<QuotientIndex> inverse_;
  QuotientIndex identity_ = 0;
};

}  // namespace vag
