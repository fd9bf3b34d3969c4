#pragma once

#include <cstdint>

#include "vag/group.hpp"
#include "vag/report.hpp"

namespace vag {

/// Action matrices form a representation of the quotient (A_e = I,
/// A_q A_r = A_qr), every orbit relation projects to zero, and A_q agrees
/// with the generator permutation on the quotient lattice (A_q pi = pi P_q).
CheckReport check_relation_kernel(const VAGroup& group);

/// Associativity, identity and inverses on random elements built from words
/// of up to 12 letters.
CheckReport check_group_laws(const VAGroup& group, std::uint64_t seed, std::size_t samples = 1000);

}  // namespace vag
