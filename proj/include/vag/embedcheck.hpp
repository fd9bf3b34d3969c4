#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vag/geodesy.hpp"
#include "vag/length_formulas.hpp"
#include "vag/refute.hpp"
#include "vag/report.hpp"

namespace vag {

/// An injective homomorphism between compiled groups, given by a quotient map
/// and a correspondence of abstract lattice generators, together with a
/// letter substitution that realises it on words.
class EmbeddingMap {
 public:
  /// quotient_map[q] is the target quotient element of source q;
  /// generator_map[i] the target abstract generator of source generator i;
  /// letter_images[l] the target words a source letter may read as, the
  /// first being the canonical substitution.
  ///
  /// Throws ActionError unless the maps define an injective homomorphism
  /// compatible with the letters.
  EmbeddingMap(const VAGroup& source, const VAGroup& target, std::vector<QuotientIndex> quotient_map,
               std::vector<std::size_t> generator_map, std::vector<std::vector<Word>> letter_images);

  /// H into G by tau = s^2: quotient e,t,tau,ttau -> e,t,s2,ts2; lattice
  /// generators follow the quotient map; tau reads as "s s" or "S S".
  static EmbeddingMap tau_to_s2(const VAGroup& h, const VAGroup& g);

  const VAGroup& source() const noexcept { return *source_; }
  const VAGroup& target() const noexcept { return *target_; }
  /// target rank x source rank.
  const IntMatrix& lattice_map() const noexcept { return lattice_map_; }
  QuotientIndex map_quotient(QuotientIndex q) const { return quotient_map_[q]; }
  const std::vector<std::vector<Word>>& letter_images() const noexcept { return letter_images_; }

  GroupElement phi(const GroupElement& h) const;
  /// Canonical substitution, letter by letter.
  Word substitute(const Word& w) const;
  /// Inverse substitution: splits w into letter images. nullopt when some
  /// segment is not an image (for tau = s^2: an s-run that is not made of
  /// "s s" or "S S" blocks).
  std::optional<Word> pull_back(const Word& w) const;
  /// pull_back after moving letters that occur inside multi-letter images
  /// leftwards past letters they commute with in the target (s past t for
  /// tau = s^2), so "s t s" reads as "s s t".
  std::optional<Word> pull_back_commuting(const Word& w) const;
  /// Image membership: quotient part in the image and lattice part in the
  /// span of the lattice map.
  bool in_image(const GroupElement& g) const;

  /// Homomorphism and coherence on `samples` random pairs and words.
  CheckReport check_homomorphism(std::uint64_t seed, std::size_t samples = 1000) const;

 private:
  const VAGroup* source_;
  const VAGroup* target_;
  std::vector<QuotientIndex> quotient_map_;
  std::vector<bool> quotient_image_;
  IntMatrix lattice_map_;
  Sublattice image_;
  std::vector<std::vector<Word>> letter_images_;
  std::vector<bool> block_letter_;  // target letters inside multi-letter images
  std::vector<std::vector<bool>> commute_;  // target letters commute as elements
};

enum class PullBackMode { Literal, Commuting };

/// Bounded-radius evidence for the totally geodesic property. For every h
/// with l_H(h) <= radius: l_G(phi(h)) = l_H(h), and every G-geodesic of
/// phi(h) pulls back to an H-geodesic of h. Also checks that the G ball
/// holds no further image elements of length <= radius. Throws OutOfRadius
/// when either table is smaller than radius. The detail reports violations
/// for both pull-back modes; the status follows `mode`.
CheckReport check_totally_geodesic(const EmbeddingMap& emb, const LengthTable& h_table, const LengthTable& g_table,
                                   Int radius, PullBackMode mode = PullBackMode::Literal,
                                   std::size_t max_geodesics = 1'000'000);

/// The loop-elimination argument inside the target group: H geodesics of the
/// targets x^d (x^tau)^e are read through the letter images, lengths come
/// from g_table when it covers the element, otherwise from the H closed form
/// transported by the totally geodesic property.
RefutationWitness refute_on_subgroup(const ValidatedDfa& dfa, const EmbeddingMap& emb, const HModel& h,
                                     const RefuteOptions& options = {}, const LengthTable* h_table = nullptr,
                                     const LengthTable* g_table = nullptr);

/// Length oracle on the target side for witnesses from refute_on_subgroup.
LengthOracle subgroup_oracle(const EmbeddingMap& emb, const HModel& h, const LengthTable* g_table);

}  // namespace vag
