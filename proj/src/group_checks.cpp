#include "vag/group_checks.hpp"

#include <random>
#include <string>

namespace vag {

CheckReport check_relation_kernel(const VAGroup& group) {
  CheckReport report;
  report.name = "relation_kernel";
  const FiniteGroup& q = group.quotient();
  const IntMatrix& proj = group.projection();
  const auto& action = group.presentation().action;

  ++report.checked;
  if (!group.action_matrix(q.identity()).is_identity()) report.add_violation("identity acts non-trivially");
  for (QuotientIndex a = 0; a < q.order(); ++a)
    for (QuotientIndex b = 0; b < q.order(); ++b) {
      ++report.checked;
      if (group.action_matrix(a) * group.action_matrix(b) != group.action_matrix(q.multiply(a, b)))
        report.add_violation("A_" + q.name(a) + " A_" + q.name(b) + " != A_" + q.name(q.multiply(a, b)));
    }
  for (std::size_t r = 0; r < group.relations().size(); ++r) {
    ++report.checked;
    for (Int v : proj.apply(group.relations()[r]))
      if (v != 0) {
        report.add_violation("relation " + std::to_string(r) + " does not project to zero");
        break;
      }
  }
  for (QuotientIndex a = 0; a < q.order(); ++a)
    for (std::size_t i = 0; i < proj.cols(); ++i) {
      ++report.checked;
      if (group.action_matrix(a).apply(proj.column(i)) != proj.column(action[a][i]))
        report.add_violation("A_" + q.name(a) + " disagrees with the generator permutation on generator " +
                             group.presentation().generators[i]);
    }
  report.status = report.violation_count == 0 ? CheckStatus::Pass : CheckStatus::Fail;
  report.detail = "rank=" + std::to_string(group.rank()) + " relations=" + std::to_string(group.relations().size()) +
                  " checks=" + std::to_string(report.checked) + " violations=" + std::to_string(report.violation_count);
  return report;
}

CheckReport check_group_laws(const VAGroup& group, std::uint64_t seed, std::size_t samples) {
  CheckReport report;
  report.name = "group_laws";
  std::mt19937_64 rng(seed);
  const std::size_t letters = group.letters().size();
  auto random_element = [&] {
    Word w(rng() % 13);
    for (auto& l : w) l = static_cast<std::size_t>(rng() % letters);
    return group.evaluate(w).element;
  };
  const GroupElement e = group.identity();
  for (std::size_t i = 0; i < samples; ++i) {
    const GroupElement a = random_element(), b = random_element(), c = random_element();
    report.checked += 3;
    if (!(group.multiply(group.multiply(a, b), c) == group.multiply(a, group.multiply(b, c))))
      report.add_violation("associativity fails at " + group.format_element(a));
    if (!(group.multiply(a, e) == a) || !(group.multiply(e, a) == a))
      report.add_violation("identity law fails at " + group.format_element(a));
    if (!(group.multiply(a, group.invert(a)) == e) || !(group.multiply(group.invert(a), a) == e))
      report.add_violation("inverse law fails at " + group.format_element(a));
  }
  report.status = report.violation_count == 0 ? CheckStatus::Pass : CheckStatus::Fail;
  report.detail = "samples=" + std::to_string(samples) + " violations=" + std::to_string(report.violation_count);
  return report;
}

}  // namespace vag
