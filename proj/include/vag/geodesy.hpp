#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "vag/group.hpp"

namespace vag {

/// 128-bit packing of (coords, quotient) used as the hash key of a ball.
struct PackedKey {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  friend bool operator==(const PackedKey&, const PackedKey&) = default;
  template <typename H>
  friend H AbslHashValue(H h, const PackedKey& k) {
    return H::combine(std::move(h), k.lo, k.hi);
  }
};

/// Fixed-width signed fields per coordinate; throws ResourceLimit when a
/// coordinate does not fit.
class ElementCodec {
 public:
  ElementCodec(std::size_t rank, std::size_t quotient_order);

  PackedKey encode(const IntVector& coords, QuotientIndex q) const;
  PackedKey encode(const GroupElement& g) const { return encode(g.coords, g.q); }
  void decode(PackedKey key, IntVector& coords, QuotientIndex& q) const;
  GroupElement decode(PackedKey key) const;
  unsigned coordinate_bits() const noexcept { return coord_bits_; }

 private:
  std::size_t rank_;
  unsigned quotient_bits_;
  unsigned coord_bits_;
  Int bias_;
};

struct BallOptions {
  std::size_t max_elements = 200'000'000;
};

/// Every element within weighted distance `radius` of the identity, with its
/// exact length and the set of letters l such that g = p * l for some
/// optimal predecessor p (all of them, not one).
///
/// Holds a reference to the group; the group must outlive the table.
class LengthTable {
 public:
  const VAGroup& group() const noexcept { return *group_; }
  Int radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return order_.size(); }

  std::optional<Int> find(const GroupElement& g) const;
  bool contains(const GroupElement& g) const { return find(g).has_value(); }
  /// Throws OutOfRadius when g is farther than radius().
  Int length(const GroupElement& g) const;
  /// Bitmask over letters of optimal last letters of g. Zero for identity.
  std::uint32_t optimal_last_letters(const GroupElement& g) const;

  /// Elements in settle order (non-decreasing length).
  GroupElement element_at(std::size_t i) const;
  Int length_at(std::size_t i) const;
  PackedKey key_at(std::size_t i) const { return entries_[order_[i]].key; }
  const ElementCodec& codec() const noexcept { return codec_; }

 private:
  friend LengthTable enumerate_ball(const VAGroup&, Int, const BallOptions&);
  LengthTable(const VAGroup& g, Int radius);

  struct Entry {
    PackedKey key;
    std::uint32_t preds = 0;
    std::uint16_t length = 0;
  };
  const Entry* lookup(const GroupElement& g) const;

  const VAGroup* group_;
  Int radius_;
  ElementCodec codec_;
  std::vector<Entry> entries_;
  std::vector<std::uint32_t> order_;
  absl::flat_hash_map<PackedKey, std::uint32_t> index_;
};

/// Uniform-cost search over the weighted Cayley graph with a bucket queue.
LengthTable enumerate_ball(const VAGroup& group, Int radius, const BallOptions& options = {});

/// Exact length of g; OutOfRadius (with a suggested radius of 0) when g is not
/// in the table.
Int length(const LengthTable& table, const GroupElement& g);

/// Every word of weight l(g) evaluating to g, in lexicographic letter order.
/// Throws ResourceLimit when more than max_words exist.
std::vector<Word> all_geodesics(const LengthTable& table, const GroupElement& g, std::size_t max_words = 1'000'000);

/// Number of geodesic words for g, without enumerating them.
std::uint64_t count_geodesics(const LengthTable& table, const GroupElement& g);

/// c_n = number of elements of length n, 0 <= n <= radius.
std::vector<std::uint64_t> growth_coefficients(const LengthTable& table);

}  // namespace vag
