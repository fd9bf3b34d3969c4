// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--known-red N]... [--embed-radius R] [--only N]...
//
// A criterion listed with --known-red is expected to fail in a specific,
// documented way; the exit status is 0 iff every other criterion passes and
// every known-red criterion fails exactly that way.

#include <CLI11.hpp>
#include <absl/container/flat_hash_map.h>

#include <chrono>
#include <algorithm>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "vag/automata.hpp"
#include "vag/cli.hpp"
#include "vag/embedcheck.hpp"
#include "vag/errors.hpp"
#include "vag/geodesy.hpp"
#include "vag/group.hpp"
#include "vag/group_checks.hpp"
#include "vag/length_formulas.hpp"
#include "vag/refute.hpp"

using namespace vag;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  // For a known-red criterion: whether the failure matches the documented one.
  bool expected_red = false;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const VAGroup& group_h() {
  static const VAGroup g = compile_presentation(preset_presentation("H"));
  return g;
}

const VAGroup& group_g() {
  static const VAGroup g = compile_presentation(preset_presentation("G"));
  return g;
}

const HModel& model() {
  static const HModel h(group_h());
  return h;
}

const LengthTable& h_ball(Int radius) {
  static std::map<Int, LengthTable> cache;
  auto it = cache.find(radius);
  if (it == cache.end()) it = cache.emplace(radius, enumerate_ball(group_h(), radius)).first;
  return it->second;
}

std::string join(const CheckReport& r) { return r.name + ": " + std::string(to_string(r.status)) + " " + r.detail; }

Outcome compilation() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  const VAGroup h = compile_presentation(preset_presentation("H"));
  const VAGroup g = compile_presentation(preset_presentation("G"));
  std::vector<CheckReport> reports = {check_relation_kernel(h), check_group_laws(h, 1), check_relation_kernel(g),
                                      check_group_laws(g, 1)};
  const double secs = seconds_since(t0);
  o.pass = h.rank() == 5 && g.rank() == 10 && secs < 1.0;
  std::ostringstream d;
  d << "rank H=" << h.rank() << " G=" << g.rank();
  for (const auto& r : reports) {
    o.pass = o.pass && r.passed();
    d << "; " << join(r);
  }
  d << "; " << secs << " s (limit 1 s)";
  o.detail = d.str();
  return o;
}

Outcome length_grid() {
  const FormulaGrid grid;
  const CheckReport r = verify_length_formulas(model(), h_ball(grid.required_radius()));
  return {r.passed(), "ball radius " + std::to_string(grid.required_radius()) + "; " + join(r)};
}

Outcome epsilon() {
  const CheckReport r = epsilon_audit(model(), h_ball(10));
  return {r.passed(), "ball radius 10, " + std::to_string(h_ball(10).size()) + " elements; " + join(r)};
}

Outcome star() {
  try {
    const CheckReport r = verify_star_characterization(model(), h_ball(15), 4, 4, 2);
    return {r.passed(), join(r)};
  } catch (const TheoremViolation& e) {
    return {false, std::string("TheoremViolation: ") + e.what()};
  }
}

Outcome refutation_corpus(const std::string& corpus_dir) {
  std::vector<std::pair<std::string, ValidatedDfa>> dfas;
  for (const char* name : {"accept_all_H", "xy_only_H", "star4_H", "star3_H", "xy_geodesic_H"})
    dfas.emplace_back(name, dfa_validate(load_dfa(corpus_dir + "/" + name + ".dfa"), group_h()));
  std::mt19937_64 rng(20240611);
  const auto symbols = alphabet_symbols(group_h());
  for (int i = 0; i < 24; ++i)
    dfas.emplace_back("random" + std::to_string(i), dfa_validate(random_dfa(symbols, 4, rng), group_h()));

  Int radius = 0;
  for (const auto& [name, d] : dfas) radius = std::max(radius, required_refutation_radius(d));
  const LengthTable& table = h_ball(std::max<Int>(radius, 15));
  const LengthOracle oracle(group_h(), &table, &model(), nullptr);

  Outcome o{true, ""};
  std::map<std::string, int> kinds;
  for (const auto& [name, d] : dfas) {
    try {
      const RefutationWitness w = pump_refute(d, model(), {}, &table);
      const VerifyResult v = verify_witness(w, d, oracle);
      ++kinds[witness_kind(w)];
      if (!v.ok) {
        o.pass = false;
        o.detail += name + " witness rejected: " + v.reason + "; ";
      }
    } catch (const Error& e) {
      o.pass = false;
      o.detail += name + " no witness: " + e.what() + "; ";
    }
  }
  std::ostringstream d;
  d << dfas.size() << " DFAs (5 shipped, 24 random), all refuted and verified:";
  for (const auto& [k, n] : kinds) d << " " << k << "=" << n;
  o.detail = o.pass ? d.str() : o.detail;
  return o;
}

Outcome totally_geodesic(Int radius) {
  const EmbeddingMap emb = EmbeddingMap::tau_to_s2(group_h(), group_g());
  const LengthTable& ht = h_ball(radius);
  const LengthTable gt = enumerate_ball(group_g(), radius);
  const CheckReport literal = check_totally_geodesic(emb, ht, gt, radius, PullBackMode::Literal);
  const CheckReport commuting = check_totally_geodesic(emb, ht, gt, radius, PullBackMode::Commuting);
  Outcome o;
  o.pass = literal.passed();
  // The documented failure: lengths agree and every G-geodesic pulls back
  // once s is slid past the letters it commutes with, but literal
  // substitution misses geodesics such as "s t s".
  o.expected_red = !literal.passed() && commuting.passed();
  o.detail = "literal: " + join(literal) + " | commuting: " + std::string(to_string(commuting.status));
  return o;
}


Outcome oracle_cross_checks() {
  // Brute force: every word of weight <= 6, kept per element at minimal weight.
  const VAGroup& h = group_h();
  const LengthTable& t = h_ball(6);
  absl::flat_hash_map<PackedKey, std::pair<Int, std::set<Word>>> naive;
  Word w;
  auto dfs = [&](auto&& self, const GroupElement& cur, Int used) -> void {
    auto& slot = naive[t.codec().encode(cur)];
    if (slot.second.empty() || used < slot.first) slot = {used, {w}};
    else if (used == slot.first) slot.second.insert(w);
    for (std::size_t l = 0; l < h.letters().size(); ++l) {
      const Int next = used + h.letter(l).weight;
      if (next > 6) continue;
      w.push_back(l);
      self(self, h.multiply_letter(cur, l), next);
      w.pop_back();
    }
  };
  dfs(dfs, h.identity(), 0);

  std::uint64_t mismatches = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto fast = all_geodesics(t, t.element_at(i));
    const auto it = naive.find(t.key_at(i));
    if (it == naive.end() || it->second.first != t.length_at(i) ||
        std::set<Word>(fast.begin(), fast.end()) != it->second.second)
      ++mismatches;
  }
  const auto growth = growth_coefficients(t);
  const VAGroup z2 = compile_presentation(parse_presentation(
      "NAME Z2\nQUOTIENT\nnames e\ne\nLATTICE_GENERATORS\na b\nACTION\ne : a b\nRELATIONS\nALPHABET\n"
      "a A a e 1\nA a -a e 1\nb B b e 1\nB b -b e 1\n"));
  const auto z2_growth = growth_coefficients(enumerate_ball(z2, 2));

  Outcome o;
  o.pass = mismatches == 0 && naive.size() == t.size() && growth.size() > 1 && growth[0] == 1 && growth[1] == 5 &&
           z2_growth == std::vector<std::uint64_t>{1, 4, 8};
  std::ostringstream d;
  d << "geodesic sets compared for " << t.size() << " elements, mismatches=" << mismatches
    << "; naive elements=" << naive.size() << "; H growth c0=" << growth[0] << " c1=" << growth[1] << "; Z2 growth [";
  for (std::size_t i = 0; i < z2_growth.size(); ++i) d << (i ? "," : "") << z2_growth[i];
  d << "]";
  o.detail = d.str();
  return o;
}

Outcome determinism() {
  auto run = [] {
    std::ostringstream out, err;
    const int code = run_cli({"verify", "--format", "summary", "--seed", "17"}, out, err);
    return std::make_pair(code, out.str());
  };
  const auto a = run(), b = run();
  return {a == b && a.first == exit_code::kOk,
          "two verify runs, exit " + std::to_string(a.first) + "/" + std::to_string(b.first) + ", " +
              std::to_string(a.second.size()) + " bytes, " + (a.second == b.second ? "identical" : "DIFFERENT")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("Acceptance criteria");
  std::vector<int> known_red, only;
  Int embed_radius = 5;
  std::string corpus = VAG_SOURCE_DIR "/corpus";
  app.add_option("--known-red", known_red, "Criterion expected to fail in its documented way");
  app.add_option("--only", only, "Run only these criteria");
  app.add_option("--embed-radius", embed_radius, "Radius for criterion 6 (6 is the stretch goal)")
      ->check(CLI::Range(0, 8));
  app.add_option("--corpus", corpus, "Directory of shipped DFAs");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"compilation", compilation},
      {"length_formula_grid", length_grid},
      {"epsilon_audit", epsilon},
      {"star_characterization", star},
      {"refutation_corpus", [&] { return refutation_corpus(corpus); }},
      {"totally_geodesic_embedding", [&] { return totally_geodesic(embed_radius); }},
      {"oracle_cross_checks", oracle_cross_checks},
      {"determinism", determinism},
  };

  bool ok = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i + 1);
    if (!only.empty() && std::find(only.begin(), only.end(), n) == only.end()) continue;
    const bool red = std::find(known_red.begin(), known_red.end(), n) != known_red.end();
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = seconds_since(t0);
    std::cout << "CRITERION " << n << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first;
    if (red) std::cout << (o.expected_red ? " [known red]" : " [known red, unexpected outcome]");
    std::cout << " (" << std::fixed << std::setprecision(2) << secs << " s) " << o.detail << "\n" << std::flush;
    ok = ok && (red ? (!o.pass && o.expected_red) : o.pass);
  }
  return ok ? 0 : 1;
}
