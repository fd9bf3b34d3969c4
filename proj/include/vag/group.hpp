#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vag/lattice.hpp"
#include "vag/presentation.hpp"

namespace vag {

/// (lattice coordinates, quotient element). Multiplication is
/// (a, q)(b, r) = (a + A_q b, qr).
struct GroupElement {
  IntVector coords;
  QuotientIndex q = 0;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// Word over a compiled alphabet, as letter indices.
using Word = std::vector<std::size_t>;

struct CompiledLetter {
  std::string symbol;
  std::size_t inverse = 0;
  GroupElement image;
  Int weight = 1;
};

struct Evaluation {
  GroupElement element;
  Int weight = 0;
};

class VAGroup;

/// Compiles a presentation. The lattice Z^S / <orbit of relations> gets a
/// deterministic basis: when the Hermite form of the relation lattice has unit
/// pivots the basis is the set of non-pivot generators, otherwise it comes
/// from the Smith column transform.
///
/// Throws PresentationError, TorsionError or ActionError.
VAGroup compile_presentation(const VAPresentation& p);

class VAGroup {
 public:
  const std::string& name() const noexcept { return presentation_.name; }
  const VAPresentation& presentation() const noexcept { return presentation_; }
  const FiniteGroup& quotient() const noexcept { return presentation_.quotient; }

  std::size_t rank() const noexcept { return rank_; }
  /// rank x |S| matrix sending abstract generator vectors to coordinates.
  const IntMatrix& projection() const noexcept { return projection_; }
  /// |S| x rank matrix with projection * lift = identity.
  const IntMatrix& lift() const noexcept { return lift_; }
  const IntMatrix& action_matrix(QuotientIndex q) const { return action_[q]; }

  /// The relation list after closure under the quotient action.
  const std::vector<IntVector>& relations() const noexcept { return relations_; }
  /// Integer dependencies c with sum c_i R_i = 0 among relations(), in
  /// Hermite form.
  const std::vector<IntVector>& relation_dependencies() const noexcept { return dependencies_; }
  /// Generators whose images form the basis, when the basis is a subset of
  /// the abstract generators.
  const std::vector<std::size_t>& basis_generators() const noexcept { return basis_generators_; }
  std::string basis_description() const;

  const std::vector<CompiledLetter>& letters() const noexcept { return letters_; }
  const CompiledLetter& letter(std::size_t i) const { return letters_[i]; }
  std::optional<std::size_t> letter_index(std::string_view symbol) const;
  std::size_t require_letter(std::string_view symbol) const;

  GroupElement identity() const;
  GroupElement multiply(const GroupElement& g, const GroupElement& h) const;
  GroupElement invert(const GroupElement& g) const;
  /// g * letter(l), using the precomputed action on letter images.
  GroupElement multiply_letter(const GroupElement& g, std::size_t l) const;
  void multiply_letter_in_place(IntVector& coords, QuotientIndex& q, std::size_t l) const;

  /// Coordinates of an abstract generator combination, with quotient part q.
  GroupElement lattice_element(const IntVector& generator_vector, QuotientIndex q) const;
  GroupElement lattice_element(const IntVector& generator_vector) const {
    return lattice_element(generator_vector, quotient().identity());
  }
  IntVector generator_image(std::string_view generator) const;

  Evaluation evaluate(const Word& w) const;
  Int weight(const Word& w) const;
  Word parse_word(std::string_view text) const;
  std::string format_word(const Word& w) const;
  Word inverse_word(const Word& w) const;
  std::string format_element(const GroupElement& g) const;

  bool has_epsilon() const noexcept { return epsilon_.has_value(); }
  /// Homomorphism to Z. Throws NotConfigured without an EPSILON datum.
  Int epsilon(const GroupElement& g) const;
  const std::optional<IntVector>& epsilon_vector() const noexcept { return epsilon_; }

 private:
  friend VAGroup compile_presentation(const VAPresentation& p);

  VAPresentation presentation_;
  std::size_t rank_ = 0;
  IntMatrix projection_;
  IntMatrix lift_;
  std::vector<IntMatrix> action_;
  std::vector<IntVector> relations_;
  std::vector<IntVector> dependencies_;
  std::vector<std::size_t> basis_generators_;
  std::vector<CompiledLetter> letters_;
  // letter_shift_[q * |letters| + l] = A_q * coords(letter l)
  std::vector<IntVector> letter_shift_;
  std::optional<IntVector> epsilon_;
};

/// evaluate_word with symbol parsing; throws UnknownSymbol.
Evaluation evaluate_word(const VAGroup& group, std::string_view word);

/// Tests membership in (subgroup generated by the letters) ∩ N, where N is the
/// lattice. The lattice part is the integer span of the orbit of the letters'
/// lattice images under the quotient subgroup their quotient parts generate.
class SubgroupLatticeTest {
 public:
  SubgroupLatticeTest(const VAGroup& group, const std::vector<std::size_t>& letters);

  bool contains(const GroupElement& g) const;
  const std::vector<QuotientIndex>& quotient_subgroup() const noexcept { return quotient_subgroup_; }
  std::size_t lattice_rank() const noexcept { return lattice_.rank(); }

 private:
  QuotientIndex identity_;
  std::vector<QuotientIndex> quotient_subgroup_;
  Sublattice lattice_;
};

SubgroupLatticeTest sublattice_membership(const VAGroup& group, const std::vector<std::string>& symbols);

}  // namespace vag
