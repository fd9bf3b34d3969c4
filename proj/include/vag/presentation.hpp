#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vag/finite_group.hpp"
#include "vag/lattice.hpp"

namespace vag {

/// One symbol of a weighted symmetric alphabet. The lattice part is a vector
/// over the abstract lattice generators.
struct Letter {
  std::string symbol;
  std::string inverse_symbol;
  IntVector lattice;
  QuotientIndex quotient = 0;
  Int weight = 1;
};

/// Symbolic description of a split extension Z^S/relations ⋊ quotient.
///
/// action[q][i] is the index of the generator q g_i q^{-1}. Relations are
/// integer vectors over the generators; the compiler closes them under the
/// action. epsilon, when present, assigns an integer to every abstract
/// generator and induces a homomorphism to Z.
struct VAPresentation {
  std::string name;
  FiniteGroup quotient;
  std::vector<std::string> generators;
  std::vector<std::vector<std::size_t>> action;
  std::vector<IntVector> relations;
  std::vector<Letter> alphabet;
  std::optional<IntVector> epsilon;

  std::optional<std::size_t> generator_index(std::string_view generator) const;
  std::optional<std::size_t> letter_index(std::string_view symbol) const;

  /// Checks the action is a group action, the alphabet is symmetric with
  /// matching weights, and vector lengths agree. Throws PresentationError.
  void validate() const;
};

/// Parses the line-oriented group spec format (sections QUOTIENT,
/// LATTICE_GENERATORS, ACTION, RELATIONS, ALPHABET, optional NAME and
/// EPSILON). Errors carry the source name and line number.
VAPresentation parse_presentation(std::string_view text, const std::string& source = "<input>");
VAPresentation load_presentation(const std::string& path);

/// Built-in presets "H" and "G". The text is the shipped preset file.
std::string_view preset_text(std::string_view name);
VAPresentation preset_presentation(std::string_view name);
bool is_preset(std::string_view name);

}  // namespace vag
