#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vag/automata.hpp"
#include "vag/geodesy.hpp"
#include "vag/length_formulas.hpp"
#include "vag/report.hpp"

namespace vag {

enum class LengthSource { Table, ClosedForm };
const char* to_string(LengthSource s);

/// Parameters of x^d (x^tau)^e y^f.
struct FamilyBParams {
  Int d = 0, e = 0, f = 0;
  friend bool operator==(const FamilyBParams&, const FamilyBParams&) = default;
};

struct LoopExcision {
  std::size_t start = 0;   // index into the word before excision
  std::size_t length = 0;  // number of letters removed
  std::size_t state = 0;   // DFA state at both ends of the loop
  friend bool operator==(const LoopExcision&, const LoopExcision&) = default;
};

struct NonGeodesicAccepted {
  Word word;
  Int weight = 0;
  GroupElement element;
  Int length = 0;
};

struct UncoveredElement {
  GroupElement element;
  Int length = 0;
  Int radius_certified = 0;
  LengthSource source = LengthSource::Table;
  std::optional<FamilyBParams> params;
};

struct PumpedNonGeodesic {
  Word original_word;
  Int original_weight = 0;
  GroupElement original_element;
  Int original_length = 0;
  FamilyBParams original_params;
  std::vector<LoopExcision> loops;
  Word pumped_word;
  Int pumped_weight = 0;
  GroupElement pumped_element;
  Int pumped_length = 0;
  FamilyBParams pumped_params;
  LengthSource source = LengthSource::Table;
};

using RefutationWitness = std::variant<NonGeodesicAccepted, UncoveredElement, PumpedNonGeodesic>;

const char* witness_kind(const RefutationWitness& w);
/// Byte-stable text block, terminated by "END".
std::string format_witness(const VAGroup& group, const RefutationWitness& w);

/// Lengths in the group a DFA reads: the ball table when it covers the
/// element, otherwise the family-B closed form for elements recognised as
/// push(x^d (x^tau)^e y^f).
class LengthOracle {
 public:
  using Push = std::function<GroupElement(const GroupElement&)>;

  LengthOracle(const VAGroup& group, const LengthTable* table, const HModel* h, Push push);

  const VAGroup& group() const noexcept { return *group_; }
  const LengthTable* table() const noexcept { return table_; }
  const HModel* h() const noexcept { return h_; }
  GroupElement push(const GroupElement& h_element) const { return push_(h_element); }

  std::optional<std::pair<Int, LengthSource>> length(const GroupElement& g,
                                                     const std::optional<FamilyBParams>& params) const;

 private:
  const VAGroup* group_;
  const LengthTable* table_;
  const HModel* h_;
  Push push_;
};

struct AuditResult {
  CheckReport report;
  std::optional<RefutationWitness> witness;
  std::uint64_t words = 0;
};

/// Enumerates accepted words of weight <= radius in (weight, lexicographic)
/// order. Fails with NonGeodesicAccepted on the first accepted non-geodesic,
/// otherwise with UncoveredElement on the first ball element that no accepted
/// geodesic reaches. Throws ResourceLimit past max_words.
AuditResult bounded_language_audit(const ValidatedDfa& dfa, const LengthTable& table, Int radius,
                                   std::uint64_t max_words = 50'000'000);

struct RefuteOptions {
  Int max_radius = 24;
  BallOptions ball;
  std::size_t max_product_nodes = 50'000'000;
};

/// How DFA words are matched against geodesics of H: every H letter reads as
/// one of several DFA-alphabet words, and H elements map into the DFA's group.
struct SearchSpace {
  const HModel* h = nullptr;
  const LengthTable* h_table = nullptr;
  std::vector<std::vector<Word>> images;
  const LengthOracle* oracle = nullptr;
};

/// Ball radius pump_refute needs: 2 * states + 6.
Int required_refutation_radius(const ValidatedDfa& dfa);

/// The loop-elimination argument against a DFA over H's alphabet. Targets
/// x^d (x^tau)^(d+2) with d = state count. Throws TheoremViolation if an
/// accepted geodesic for the target does not have shape (*), ResourceLimit if
/// the needed radius exceeds options.max_radius.
RefutationWitness pump_refute(const ValidatedDfa& dfa, const HModel& h, const RefuteOptions& options = {},
                              const LengthTable* table = nullptr);

/// Same argument with H geodesics read through `space.images`.
RefutationWitness refute_with_transport(const ValidatedDfa& dfa, const SearchSpace& space,
                                        const RefuteOptions& options = {});

struct VerifyResult {
  bool ok = false;
  std::string reason;
};

/// Re-checks a witness from scratch: DFA membership by simulation, words by
/// evaluation, lengths through the oracle. UncoveredElement is re-checked by
/// enumerating accepted words of weight l(g).
VerifyResult verify_witness(const RefutationWitness& w, const ValidatedDfa& dfa, const LengthOracle& oracle,
                            std::uint64_t max_words = 20'000'000);

}  // namespace vag
