#include "vag/geodesy.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "vag/errors.hpp"

namespace vag {

namespace {

using U128 = unsigned __int128;

unsigned bits_for(std::size_t values) {
  unsigned b = 0;
  while ((std::size_t{1} << b) < values) ++b;
  return b;
}

}  // namespace

ElementCodec::ElementCodec(std::size_t rank, std::size_t quotient_order)
    : rank_(rank), quotient_bits_(bits_for(quotient_order)), coord_bits_(0), bias_(0) {
  if (rank_ == 0) return;
  coord_bits_ = std::min<unsigned>(32, (128 - quotient_bits_) / static_cast<unsigned>(rank_));
  if (coord_bits_ < 4) throw ResourceLimit("lattice rank " + std::to_string(rank) + " too large for packed keys");
  bias_ = Int{1} << (coord_bits_ - 1);
}

PackedKey ElementCodec::encode(const IntVector& coords, QuotientIndex q) const {
  U128 acc = q;
  const Int limit = bias_;
  for (std::size_t i = 0; i < rank_; ++i) {
    const Int c = coords[i];
    if (c >= limit || c < -limit)
      throw ResourceLimit("coordinate " + std::to_string(c) + " exceeds packed key range of " +
                          std::to_string(coord_bits_) + " bits");
    acc = (acc << coord_bits_) | static_cast<U128>(static_cast<std::uint64_t>(c + bias_));
  }
  return PackedKey{static_cast<std::uint64_t>(acc), static_cast<std::uint64_t>(acc >> 64)};
}

void ElementCodec::decode(PackedKey key, IntVector& coords, QuotientIndex& q) const {
  U128 acc = (static_cast<U128>(key.hi) << 64) | key.lo;
  coords.resize(rank_);
  const U128 mask = (U128{1} << coord_bits_) - 1;
  for (std::size_t i = rank_; i-- > 0;) {
    coords[i] = static_cast<Int>(static_cast<std::uint64_t>(acc & mask)) - bias_;
    acc >>= coord_bits_;
  }
  q = static_cast<QuotientIndex>(acc);
}

GroupElement ElementCodec::decode(PackedKey key) const {
  GroupElement g;
  decode(key, g.coords, g.q);
  return g;
}

LengthTable::LengthTable(const VAGroup& g, Int radius)
    : group_(&g), radius_(radius), codec_(g.rank(), g.quotient().order()) {}

const LengthTable::Entry* LengthTable::lookup(const GroupElement& g) const {
  PackedKey key;
  try {
    key = codec_.encode(g);
  } catch (const ResourceLimit&) {
    return nullptr;
  }
  auto it = index_.find(key);
  if (it == index_.end()) return nullptr;
  return &entries_[it->second];
}

std::optional<Int> LengthTable::find(const GroupElement& g) const {
  const Entry* e = lookup(g);
  if (!e) return std::nullopt;
  return static_cast<Int>(e->length);
}

Int LengthTable::length(const GroupElement& g) const {
  const Entry* e = lookup(g);
  if (!e)
    throw OutOfRadius("element " + group_->format_element(g) + " has length > " + std::to_string(radius_),
                      radius_ + 1);
  return e->length;
}

std::uint32_t LengthTable::optimal_last_letters(const GroupElement& g) const {
  const Entry* e = lookup(g);
  if (!e)
    throw OutOfRadius("element " + group_->format_element(g) + " has length > " + std::to_string(radius_),
                      radius_ + 1);
  return e->preds;
}

GroupElement LengthTable::element_at(std::size_t i) const { return codec_.decode(entries_[order_[i]].key); }

Int LengthTable::length_at(std::size_t i) const { return entries_[order_[i]].length; }

LengthTable enumerate_ball(const VAGroup& group, Int radius, const BallOptions& options) {
  if (radius < 0) throw DomainError("radius must be non-negative");
  if (radius > 0xFFFF) throw ResourceLimit("radius too large");
  const std::size_t nletters = group.letters().size();
  if (nletters > 32) throw ResourceLimit("alphabet larger than 32 letters");

  LengthTable table(group, radius);
  std::vector<std::vector<std::uint32_t>> buckets(static_cast<std::size_t>(radius) + 1);

  auto id = group.identity();
  table.entries_.push_back({table.codec_.encode(id), 0, 0});
  table.index_.emplace(table.entries_.back().key, 0);
  buckets[0].push_back(0);

  IntVector coords;
  QuotientIndex q = 0;
  IntVector next;
  for (Int r = 0; r <= radius; ++r) {
    auto& bucket = buckets[static_cast<std::size_t>(r)];
    for (std::size_t bi = 0; bi < bucket.size(); ++bi) {
      const std::uint32_t idx = bucket[bi];
      if (table.entries_[idx].length != r) continue;  // stale
      table.order_.push_back(idx);
      const PackedKey key = table.entries_[idx].key;
      table.codec_.decode(key, coords, q);
      for (std::size_t l = 0; l < nletters; ++l) {
        const Int nd = r + group.letter(l).weight;
        if (nd > radius) continue;
        next = coords;
        QuotientIndex nq = q;
        group.multiply_letter_in_place(next, nq, l);
        const PackedKey nkey = table.codec_.encode(next, nq);
        const std::uint32_t bit = std::uint32_t{1} << l;
        auto [it, inserted] = table.index_.try_emplace(nkey, static_cast<std::uint32_t>(table.entries_.size()));
        if (inserted) {
          if (table.entries_.size() >= options.max_elements)
            throw ResourceLimit("ball of radius " + std::to_string(radius) + " exceeds " +
                                std::to_string(options.max_elements) + " elements");
          table.entries_.push_back({nkey, bit, static_cast<std::uint16_t>(nd)});
          buckets[static_cast<std::size_t>(nd)].push_back(it->second);
          continue;
        }
        auto& e = table.entries_[it->second];
        if (e.length == nd) {
          e.preds |= bit;
        } else if (e.length > nd) {
          e.length = static_cast<std::uint16_t>(nd);
          e.preds = bit;
          buckets[static_cast<std::size_t>(nd)].push_back(it->second);
        }
      }
    }
    std::vector<std::uint32_t>().swap(bucket);
  }
  return table;
}

Int length(const LengthTable& table, const GroupElement& g) { return table.length(g); }

std::vector<Word> all_geodesics(const LengthTable& table, const GroupElement& g, std::size_t max_words) {
  const VAGroup& group = table.group();
  table.length(g);  // OutOfRadius check
  std::vector<Word> out;
  Word suffix;  // reversed
  // Depth-first walk back along optimal in-edges.
  auto walk = [&](auto&& self, const GroupElement& cur) -> void {
    const std::uint32_t preds = table.optimal_last_letters(cur);
    if (preds == 0) {
      if (out.size() >= max_words)
        throw ResourceLimit("more than " + std::to_string(max_words) + " geodesics for " + group.format_element(g));
      out.emplace_back(suffix.rbegin(), suffix.rend());
      return;
    }
    for (std::size_t l = 0; l < group.letters().size(); ++l) {
      if (!(preds & (std::uint32_t{1} << l))) continue;
      suffix.push_back(l);
      self(self, group.multiply_letter(cur, group.letter(l).inverse));
      suffix.pop_back();
    }
  };
  walk(walk, g);
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t count_geodesics(const LengthTable& table, const GroupElement& g) {
  const VAGroup& group = table.group();
  std::map<GroupElement, std::uint64_t> memo;
  auto count = [&](auto&& self, const GroupElement& cur) -> std::uint64_t {
    const std::uint32_t preds = table.optimal_last_letters(cur);
    if (preds == 0) return 1;
    if (auto it = memo.find(cur); it != memo.end()) return it->second;
    std::uint64_t total = 0;
    for (std::size_t l = 0; l < group.letters().size(); ++l)
      if (preds & (std::uint32_t{1} << l)) total += self(self, group.multiply_letter(cur, group.letter(l).inverse));
    memo.emplace(cur, total);
    return total;
  };
  return count(count, g);
}

std::vector<std::uint64_t> growth_coefficients(const LengthTable& table) {
  std::vector<std::uint64_t> c(static_cast<std::size_t>(table.radius()) + 1, 0);
  for (std::size_t i = 0; i < table.size(); ++i) ++c[static_cast<std::size_t>(table.length_at(i))];
  return c;
}

}  // namespace vag
