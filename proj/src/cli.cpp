#include "vag/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>

#include "vag/automata.hpp"
#include "vag/embedcheck.hpp"
#include "vag/errors.hpp"
#include "vag/geodesy.hpp"
#include "vag/group_checks.hpp"
#include "vag/length_formulas.hpp"
#include "vag/refute.hpp"

namespace vag {

VAGroup load_group(const std::string& selector) {
  return compile_presentation(is_preset(selector) ? preset_presentation(selector) : load_presentation(selector));
}

namespace {

constexpr Int kDefaultBallRadius = 6;
constexpr Int kDefaultAuditRadius = 8;
constexpr Int kDefaultEmbeddingRadius = 5;
constexpr Int kDefaultTargetRadius = 6;

BallOptions ball_options(const RunConfig& cfg) {
  BallOptions o;
  o.max_elements = cfg.max_elements;
  return o;
}

Int radius_or(const RunConfig& cfg, Int fallback) { return cfg.radius >= 0 ? cfg.radius : fallback; }

std::string word_text(const VAGroup& g, const Word& w) { return w.empty() ? "(empty)" : g.format_word(w); }

void print_report(std::ostream& out, const CheckReport& r, OutputFormat f) {
  out << (f == OutputFormat::Text ? r.text() : r.summary_line() + "\n");
}

CheckReport skipped(const std::string& name, const std::string& why) {
  CheckReport r;
  r.name = name;
  r.status = CheckStatus::Skipped;
  r.detail = why;
  return r;
}

/// Runs one check; OutOfRadius and ResourceLimit mark it SKIPPED, other
/// library errors mark it FAIL.
CheckReport guarded(const std::string& name, const std::function<CheckReport()>& body) {
  try {
    return body();
  } catch (const OutOfRadius& e) {
    return skipped(name, std::string("OutOfRadius: ") + e.what() + " (suggested radius " +
                             std::to_string(e.suggested_radius()) + ")");
  } catch (const ResourceLimit& e) {
    return skipped(name, std::string("ResourceLimit: ") + e.what());
  } catch (const Error& e) {
    CheckReport r;
    r.name = name;
    r.add_violation(e.what());
    r.status = CheckStatus::Fail;
    r.detail = e.what();
    return r;
  }
}

int exit_for(const std::vector<CheckReport>& reports) {
  bool skip = false;
  for (const auto& r : reports) {
    if (r.status == CheckStatus::Fail) return exit_code::kFail;
    skip |= r.status == CheckStatus::Skipped;
  }
  return skip ? exit_code::kResource : exit_code::kOk;
}

int cmd_compile(const RunConfig& cfg, std::ostream& out) {
  const VAGroup g = load_group(cfg.group);
  const FiniteGroup& q = g.quotient();
  std::vector<CheckReport> reports{check_relation_kernel(g), check_group_laws(g, cfg.seed)};
  if (cfg.format == OutputFormat::Text) {
    out << "group " << g.name() << "\n";
    out << "quotient order " << q.order() << ":";
    for (const auto& n : q.names()) out << ' ' << n;
    out << "\nlattice generators " << g.presentation().generators.size() << "\n";
    out << "rank " << g.rank() << "\n";
    out << g.basis_description();
    out << "relations " << g.relations().size() << " (orbit-closed), dependencies "
        << g.relation_dependencies().size() << "\n";
    for (const auto& d : g.relation_dependencies()) {
      out << "  dependency";
      for (Int c : d) out << ' ' << c;
      out << "\n";
    }
    for (QuotientIndex i = 0; i < q.order(); ++i) out << "action " << q.name(i) << ":\n" << g.action_matrix(i);
    out << "letters:";
    for (const auto& l : g.letters()) out << ' ' << l.symbol << "/" << l.weight;
    out << "\n";
  }
  for (const auto& r : reports) print_report(out, r, cfg.format);
  return exit_for(reports);
}

int cmd_ball(const RunConfig& cfg, bool list, std::ostream& out) {
  const VAGroup g = load_group(cfg.group);
  const Int radius = radius_or(cfg, kDefaultBallRadius);
  const LengthTable t = enumerate_ball(g, radius, ball_options(cfg));
  out << "group " << g.name() << " radius " << radius << " elements " << t.size() << "\n";
  out << "growth";
  for (auto c : growth_coefficients(t)) out << ' ' << c;
  out << "\n";
  // coords... | quotient | length
  if (list)
    for (std::size_t i = 0; i < t.size(); ++i) {
      const GroupElement el = t.element_at(i);
      for (Int c : el.coords) out << c << ' ';
      out << "| " << g.quotient().name(el.q) << " | " << t.length_at(i) << "\n";
    }
  return exit_code::kOk;
}

struct FamilyArgs {
  std::string family;
  Int a = 0, b = 0, c = 1, d = 0, e = 1, f = 0;
};

struct Target {
  GroupElement element;
  Int upper_bound = 0;  // weight of a word for the element
  std::optional<Int> closed_form;
};

Target resolve_target(const VAGroup& g, const std::string& word, const FamilyArgs& fam) {
  if (!fam.family.empty() && !word.empty()) throw DomainError("give either --word or --family, not both");
  if (fam.family.empty()) {
    if (word.empty()) throw DomainError("one of --word or --family is required");
    const Evaluation ev = evaluate_word(g, word);
    return {ev.element, ev.weight, std::nullopt};
  }
  const HModel h(g);
  if (fam.family == "A") {
    const Int cf = closed_form_length_a(fam.a, fam.b, fam.c);
    return {h.family_a(fam.a, fam.b, fam.c), g.weight(h.family_a_word(fam.a, fam.b, fam.c)), cf};
  }
  if (fam.family == "B") {
    const Int cf = closed_form_length_b(fam.d, fam.e, fam.f);
    return {h.family_b(fam.d, fam.e, fam.f), g.weight(h.star_word(fam.d, fam.e, fam.f)), cf};
  }
  throw DomainError("--family must be A or B");
}

int cmd_length(const RunConfig& cfg, const std::string& word, const FamilyArgs& fam, std::ostream& out,
               std::ostream& err) {
  const VAGroup g = load_group(cfg.group);
  const Target target = resolve_target(g, word, fam);
  const LengthTable t = enumerate_ball(g, radius_or(cfg, target.upper_bound), ball_options(cfg));
  const Int len = length(t, target.element);
  out << len << "\n";
  if (target.closed_form && *target.closed_form != len) {
    err << "closed form gives " << *target.closed_form << "\n";
    return exit_code::kFail;
  }
  return exit_code::kOk;
}

int cmd_geodesics(const RunConfig& cfg, const std::string& word, const FamilyArgs& fam, bool count_only,
                  std::ostream& out) {
  const VAGroup g = load_group(cfg.group);
  const Target target = resolve_target(g, word, fam);
  const LengthTable t = enumerate_ball(g, radius_or(cfg, target.upper_bound), ball_options(cfg));
  if (count_only) {
    out << count_geodesics(t, target.element) << "\n";
    return exit_code::kOk;
  }
  for (const Word& w : all_geodesics(t, target.element, cfg.max_geodesics)) out << word_text(g, w) << "\n";
  return exit_code::kOk;
}

int cmd_growth(const RunConfig& cfg, std::ostream& out) {
  const VAGroup g = load_group(cfg.group);
  const LengthTable t = enumerate_ball(g, radius_or(cfg, kDefaultBallRadius), ball_options(cfg));
  const auto coeffs = growth_coefficients(t);
  for (std::size_t i = 0; i < coeffs.size(); ++i) out << (i ? " " : "") << coeffs[i];
  out << "\n";
  return exit_code::kOk;
}

PullBackMode parse_mode(const std::string& s) { return s == "literal" ? PullBackMode::Literal : PullBackMode::Commuting; }

int cmd_verify(const RunConfig& cfg, bool group_given, Int embed_radius, const std::string& pullback,
               std::ostream& out) {
  std::vector<CheckReport> reports;
  const std::vector<std::string> groups = group_given ? std::vector<std::string>{cfg.group}
                                                      : std::vector<std::string>{"H", "G"};
  for (const auto& name : groups) {
    std::optional<VAGroup> g;
    reports.push_back(guarded("relation_kernel", [&] {
      g.emplace(load_group(name));
      CheckReport r = check_relation_kernel(*g);
      r.detail = "group=" + g->name() + " " + r.detail;
      return r;
    }));
    if (g) {
      CheckReport r = check_group_laws(*g, cfg.seed);
      r.detail = "group=" + g->name() + " " + r.detail;
      reports.push_back(r);
    } else {
      reports.push_back(skipped("group_laws", "group " + name + " did not compile"));
    }
  }

  const VAGroup h_group = load_group("H");
  const HModel h(h_group);
  const FormulaGrid grid;
  const Int radius = radius_or(cfg, grid.required_radius());
  std::optional<LengthTable> h_table;
  auto table = [&]() -> const LengthTable& {
    if (!h_table) h_table.emplace(enumerate_ball(h_group, radius, ball_options(cfg)));
    return *h_table;
  };
  reports.push_back(guarded("length_formulas", [&] { return verify_length_formulas(h, table(), grid); }));
  reports.push_back(guarded("epsilon_audit", [&] { return epsilon_audit(h, table()); }));
  reports.push_back(guarded("star_characterization", [&] {
    return verify_star_characterization(h, table(), grid.d_max, grid.d_max, grid.f_max);
  }));

  const VAGroup g_group = load_group("G");
  const EmbeddingMap emb = EmbeddingMap::tau_to_s2(h_group, g_group);
  reports.push_back(emb.check_homomorphism(cfg.seed));
  reports.push_back(guarded("totally_geodesic", [&] {
    const LengthTable ht = enumerate_ball(h_group, embed_radius, ball_options(cfg));
    const LengthTable gt = enumerate_ball(g_group, embed_radius, ball_options(cfg));
    return check_totally_geodesic(emb, ht, gt, embed_radius, parse_mode(pullback), cfg.max_geodesics);
  }));

  for (const auto& r : reports) print_report(out, r, cfg.format);
  return exit_for(reports);
}

std::optional<HModel> h_model_for(const VAGroup& g) {
  try {
    return HModel(g);
  } catch (const NotConfigured&) {
    return std::nullopt;
  }
}

int witness_exit(const RefutationWitness& w) {
  switch (w.index()) {
    case 0:
      return exit_code::kNonGeodesicAccepted;
    case 1:
      return exit_code::kUncoveredElement;
    default:
      return exit_code::kPumpedNonGeodesic;
  }
}

int cmd_refute(const RunConfig& cfg, const std::string& dfa_path, Int max_radius, std::ostream& out,
               std::ostream& err) {
  const VAGroup g = load_group(cfg.group);
  const ValidatedDfa dfa = dfa_validate(load_dfa(dfa_path), g);
  for (const auto& w : dfa.warnings()) err << "warning: " << w << "\n";
  RefuteOptions options;
  options.max_radius = max_radius;
  options.ball = ball_options(cfg);
  const Int needed = required_refutation_radius(dfa);
  if (needed > max_radius)
    throw ResourceLimit("refutation needs H ball radius " + std::to_string(needed) + " but --max-radius is " +
                        std::to_string(max_radius));

  std::optional<RefutationWitness> witness;
  VerifyResult verdict;
  if (auto h = h_model_for(g)) {
    const LengthTable t = enumerate_ball(g, needed, options.ball);
    witness = pump_refute(dfa, *h, options, &t);
    verdict = verify_witness(*witness, dfa, LengthOracle(g, &t, &*h, nullptr), cfg.max_words);
  } else {
    const VAGroup h_group = load_group("H");
    const HModel hm(h_group);
    const EmbeddingMap emb = EmbeddingMap::tau_to_s2(h_group, g);
    const Int radius = radius_or(cfg, kDefaultTargetRadius);
    const LengthTable ht = enumerate_ball(h_group, std::max(needed, radius), options.ball);
    const LengthTable gt = enumerate_ball(g, radius, options.ball);
    const CheckReport tg = check_totally_geodesic(emb, ht, gt, radius, PullBackMode::Commuting, cfg.max_geodesics);
    print_report(out, tg, OutputFormat::Summary);
    if (!tg.passed()) return exit_code::kFail;
    witness = refute_on_subgroup(dfa, emb, hm, options, &ht, &gt);
    verdict = verify_witness(*witness, dfa, subgroup_oracle(emb, hm, &gt), cfg.max_words);
  }
  if (cfg.format == OutputFormat::Text) out << format_witness(g, *witness);
  CheckReport r;
  r.name = "witness_verified";
  r.status = verdict.ok ? CheckStatus::Pass : CheckStatus::Fail;
  r.detail = std::string(witness_kind(*witness)) + ": " + verdict.reason;
  print_report(out, r, OutputFormat::Summary);
  return verdict.ok ? witness_exit(*witness) : exit_code::kFail;
}

int cmd_audit(const RunConfig& cfg, const std::string& dfa_path, std::ostream& out, std::ostream& err) {
  const VAGroup g = load_group(cfg.group);
  const ValidatedDfa dfa = dfa_validate(load_dfa(dfa_path), g);
  for (const auto& w : dfa.warnings()) err << "warning: " << w << "\n";
  const Int radius = radius_or(cfg, kDefaultAuditRadius);
  const LengthTable t = enumerate_ball(g, radius, ball_options(cfg));
  const AuditResult a = bounded_language_audit(dfa, t, radius, cfg.max_words);
  print_report(out, a.report, OutputFormat::Summary);
  if (a.witness && cfg.format == OutputFormat::Text) out << format_witness(g, *a.witness);
  return a.report.passed() ? exit_code::kOk : exit_code::kFail;
}

int cmd_check_embedding(const RunConfig& cfg, const std::string& pullback, std::ostream& out) {
  const VAGroup h_group = load_group("H");
  const VAGroup g_group = load_group(cfg.group == "H" ? "G" : cfg.group);
  const EmbeddingMap emb = EmbeddingMap::tau_to_s2(h_group, g_group);
  const Int radius = radius_or(cfg, kDefaultEmbeddingRadius);
  const LengthTable ht = enumerate_ball(h_group, radius, ball_options(cfg));
  const LengthTable gt = enumerate_ball(g_group, radius, ball_options(cfg));
  std::vector<CheckReport> reports{emb.check_homomorphism(cfg.seed)};
  print_report(out, reports.back(), OutputFormat::Summary);
  for (Int r = 0; r <= radius; ++r) {
    reports.push_back(check_totally_geodesic(emb, ht, gt, r, parse_mode(pullback), cfg.max_geodesics));
    print_report(out, reports.back(), r == radius ? cfg.format : OutputFormat::Summary);
  }
  return exit_for(reports);
}

void add_common(CLI::App* sub, RunConfig& cfg, std::string& format) {
  sub->add_option("--group", cfg.group, "Preset name (H, G) or group spec file");
  sub->add_option("--radius", cfg.radius, "Ball radius")->check(CLI::NonNegativeNumber);
  sub->add_option("--max-elements", cfg.max_elements, "Cap on ball size")->check(CLI::PositiveNumber);
  sub->add_option("--max-geodesics", cfg.max_geodesics, "Cap on geodesics per element")->check(CLI::PositiveNumber);
  sub->add_option("--max-words", cfg.max_words, "Cap on enumerated words")->check(CLI::PositiveNumber);
  sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "summary"}));
  sub->add_option("--seed", cfg.seed, "Seed for randomized checks");
}

void add_target(CLI::App* sub, std::string& word, FamilyArgs& fam) {
  sub->add_option("--word", word, "Word over the group alphabet");
  sub->add_option("--family", fam.family, "Element family")->check(CLI::IsMember({"A", "B"}));
  sub->add_option("--a", fam.a, "family A: x exponent");
  sub->add_option("--b", fam.b, "family A: y exponent");
  sub->add_option("--c", fam.c, "family A: (y^t) exponent");
  sub->add_option("--d", fam.d, "family B: x exponent");
  sub->add_option("--e", fam.e, "family B: (x^tau) exponent");
  sub->add_option("--f", fam.f, "family B: y exponent");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geodesic languages of virtually abelian groups", "vagtool"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "text";
  std::string word, dfa_path, pullback = "commuting";
  FamilyArgs fam;
  bool list = false, count_only = false;
  Int embed_radius = kDefaultEmbeddingRadius;
  Int max_radius = RefuteOptions{}.max_radius;

  auto* compile = app.add_subcommand("compile", "Compile a group and check its action");
  auto* ball = app.add_subcommand("ball", "Enumerate a ball");
  ball->add_flag("--list", list, "Print every element with its length");
  auto* len = app.add_subcommand("length", "Length of an element");
  add_target(len, word, fam);
  auto* geo = app.add_subcommand("geodesics", "All geodesic words of an element");
  add_target(geo, word, fam);
  geo->add_flag("--count", count_only, "Print only the number of geodesics");
  auto* growth = app.add_subcommand("growth", "Growth coefficients up to a radius");
  auto* verify = app.add_subcommand("verify", "Run the verification grid");
  verify->add_option("--embed-radius", embed_radius, "Radius of the totally geodesic check")
      ->check(CLI::NonNegativeNumber);
  auto* refute = app.add_subcommand("refute", "Find a witness against a candidate DFA");
  refute->add_option("--dfa", dfa_path, "DFA file")->required();
  refute->add_option("--max-radius", max_radius, "Largest H ball the refutation may build");
  auto* embed = app.add_subcommand("check-embedding", "Totally geodesic check for tau = s^2");
  auto* audit = app.add_subcommand("audit", "Bounded audit of a candidate DFA");
  audit->add_option("--dfa", dfa_path, "DFA file")->required();
  for (auto* sub : {verify, embed})
    sub->add_option("--pullback", pullback, "Pull-back mode")->check(CLI::IsMember({"literal", "commuting"}));
  for (auto* sub : {compile, ball, len, geo, growth, verify, refute, embed, audit}) add_common(sub, cfg, format);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::kOk : exit_code::kUsage;
  }
  cfg.format = format == "summary" ? OutputFormat::Summary : OutputFormat::Text;

  try {
    if (*compile) return cmd_compile(cfg, out);
    if (*ball) return cmd_ball(cfg, list, out);
    if (*len) return cmd_length(cfg, word, fam, out, err);
    if (*geo) return cmd_geodesics(cfg, word, fam, count_only, out);
    if (*growth) return cmd_growth(cfg, out);
    if (*verify) return cmd_verify(cfg, verify->count("--group") > 0, embed_radius, pullback, out);
    if (*refute) return cmd_refute(cfg, dfa_path, max_radius, out, err);
    if (*embed) return cmd_check_embedding(cfg, pullback, out);
    if (*audit) return cmd_audit(cfg, dfa_path, out, err);
  } catch (const OutOfRadius& e) {
    err << "error: " << e.what() << " (suggested radius " << e.suggested_radius() << ")\n";
    return exit_code::kResource;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kResource;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kResource;
  } catch (const TorsionError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kFail;
  } catch (const ActionError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kFail;
  } catch (const TheoremViolation& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kFail;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kUsage;
  }
  return exit_code::kUsage;
}

}  // namespace vag
