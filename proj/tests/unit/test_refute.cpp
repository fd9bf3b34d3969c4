#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "vag/automata.hpp"
#include "vag/errors.hpp"
#include "vag/refute.hpp"

using namespace vag;
using fixtures::ball;
using fixtures::eval;
using fixtures::H;
using fixtures::model;

namespace {

ValidatedDfa h_dfa(const Dfa& d) { return dfa_validate(d, H()); }

const LengthTable& refutation_ball() { return ball(H(), 16); }

LengthOracle oracle() { return LengthOracle(H(), &refutation_ball(), &model(), nullptr); }

RefutationWitness refute(const ValidatedDfa& d) { return pump_refute(d, model(), {}, &refutation_ball()); }

}  // namespace

TEST_SUITE("refute") {
  TEST_CASE("audit: accept-all fails on x X") {
    const ValidatedDfa d = h_dfa(accept_all_dfa(alphabet_symbols(H())));
    const AuditResult a = bounded_language_audit(d, ball(H(), 2), 2);
    REQUIRE(a.witness);
    const auto& w = std::get<NonGeodesicAccepted>(*a.witness);
    CHECK(H().format_word(w.word) == "x X");
    CHECK(w.weight == 2);
    CHECK(w.length == 0);
    CHECK(w.element == H().identity());
    CHECK(verify_witness(*a.witness, d, oracle()).ok);
  }

  TEST_CASE("audit: star pattern fails on x tau x tau") {
    const ValidatedDfa d = h_dfa(star_pattern_dfa("x", "y", "tau"));
    const AuditResult a = bounded_language_audit(d, ball(H(), 6), 6);
    REQUIRE(a.witness);
    const auto& w = std::get<NonGeodesicAccepted>(*a.witness);
    CHECK(H().format_word(w.word) == "x tau x tau");
    CHECK(w.length == 4);
  }

  TEST_CASE("audit: x/y normal forms miss t") {
    const ValidatedDfa d = h_dfa(two_generator_dfa("x", "X", "y", "Y"));
    const AuditResult a = bounded_language_audit(d, ball(H(), 2), 2);
    REQUIRE(a.witness);
    const auto& u = std::get<UncoveredElement>(*a.witness);
    CHECK(u.element == eval(H(), "t"));
    CHECK(u.length == 1);
    CHECK(verify_witness(*a.witness, d, oracle()).ok);
  }

  TEST_CASE("audit passes on a geodesic language at radius 0") {
    const ValidatedDfa d = h_dfa(two_generator_dfa("x", "X", "y", "Y"));
    const AuditResult a = bounded_language_audit(d, ball(H(), 2), 0);
    CHECK(a.report.passed());
    CHECK_FALSE(a.witness);
    CHECK_THROWS_AS(bounded_language_audit(d, ball(H(), 2), 3), OutOfRadius);
    CHECK_THROWS_AS(bounded_language_audit(d, ball(H(), 6), 6, 10),
                    ResourceLimit);
  }

  TEST_CASE("pump: accept-all") {
    const ValidatedDfa d = h_dfa(accept_all_dfa(alphabet_symbols(H())));
    const RefutationWitness w = refute(d);
    const auto& p = std::get<PumpedNonGeodesic>(w);
    CHECK(H().format_word(p.original_word) == "x tau x x x tau");
    CHECK(H().format_word(p.pumped_word) == "x tau x tau");
    CHECK(p.pumped_weight == 6);
    CHECK(p.pumped_length == 4);
    CHECK(p.original_params == FamilyBParams{1, 3, 0});
    CHECK(p.pumped_params == FamilyBParams{1, 1, 0});
    CHECK(verify_witness(w, d, oracle()).ok);
    CHECK(format_witness(H(), w) ==
          "WITNESS PumpedNonGeodesic\n"
          "group H\n"
          "original_word x tau x x x tau\n"
          "original_weight 8\n"
          "original_element (2 0 0 1 1 | e)\n"
          "original_params d=1 e=3 f=0\n"
          "original_length 8\n"
          "loop start=2 length=1 state=0\n"
          "loop start=2 length=1 state=0\n"
          "pumped_word x tau x tau\n"
          "pumped_weight 6\n"
          "pumped_element (0 0 0 1 1 | e)\n"
          "pumped_params d=1 e=1 f=0\n"
          "pumped_length 4\n"
          "length_source table\n"
          "END\n");
  }

  TEST_CASE("pump: x/y only") {
    const ValidatedDfa d = h_dfa(restricted_dfa({"x", "X", "y", "Y"}));
    const RefutationWitness w = refute(d);
    const auto& u = std::get<UncoveredElement>(w);
    CHECK(u.element == model().family_b(1, 3, 0));
    CHECK(u.length == 8);
    CHECK(verify_witness(w, d, oracle()).ok);
  }

  TEST_CASE("pump: 3-state star shape") {
    const ValidatedDfa d = h_dfa(star_shape_dfa("x", "y", "tau"));
    const RefutationWitness w = refute(d);
    const auto& p = std::get<PumpedNonGeodesic>(w);
    CHECK(p.original_params == FamilyBParams{3, 5, 0});
    CHECK(p.pumped_params.e <= 3);
    CHECK(p.pumped_weight == closed_form_length_b(3, p.pumped_params.e, 0) + 2);
    CHECK(p.pumped_length == closed_form_length_b(3, p.pumped_params.e, 0));
    CHECK(verify_witness(w, d, oracle()).ok);
    // Closed-form lengths only: no table at all.
    const LengthOracle closed(H(), nullptr, &model(), nullptr);
    CHECK(verify_witness(w, d, closed).ok);
  }

  TEST_CASE("tampered witnesses fail verification") {
    const ValidatedDfa d = h_dfa(star_pattern_dfa("x", "y", "tau"));
    const RefutationWitness w = refute(d);
    auto p = std::get<PumpedNonGeodesic>(w);
    REQUIRE(verify_witness(w, d, oracle()).ok);

    auto edited = p;
    edited.pumped_word.push_back(H().require_letter("y"));
    CHECK_FALSE(verify_witness(edited, d, oracle()).ok);
    edited = p;
    edited.pumped_length -= 1;
    CHECK_FALSE(verify_witness(edited, d, oracle()).ok);
    edited = p;
    edited.loops.front().state += 1;
    CHECK_FALSE(verify_witness(edited, d, oracle()).ok);
    edited = p;
    edited.original_word.insert(edited.original_word.begin(), H().require_letter("t"));
    CHECK_FALSE(verify_witness(edited, d, oracle()).ok);

    UncoveredElement u{model().family_b(1, 1, 0), 4, 16, LengthSource::Table, std::nullopt};
    const ValidatedDfa all = h_dfa(accept_all_dfa(alphabet_symbols(H())));
    CHECK_FALSE(verify_witness(u, all, oracle()).ok);
    NonGeodesicAccepted g{H().parse_word("x tau x tau"), 6, model().family_b(1, 1, 0), 4};
    CHECK_FALSE(verify_witness(g, h_dfa(restricted_dfa({"x", "y"})), oracle()).ok);
    g.length = 6;
    CHECK_FALSE(verify_witness(g, all, oracle()).ok);
  }

  TEST_CASE("radius budget") {
    const ValidatedDfa d = h_dfa(star_pattern_dfa("x", "y", "tau"));
    RefuteOptions o;
    o.max_radius = 10;
    CHECK(required_refutation_radius(d) == 14);
    CHECK_THROWS_AS(pump_refute(d, model(), o), ResourceLimit);
  }

  TEST_CASE("soundness on random DFAs") {
    std::mt19937_64 rng(2024);
    const auto symbols = alphabet_symbols(H());
    int pumped = 0, uncovered = 0;
    for (int i = 0; i < 40; ++i) {
      const ValidatedDfa d = h_dfa(random_dfa(symbols, 4, rng));
      RefutationWitness w;
      CHECK_NOTHROW(w = refute(d));
      const VerifyResult v = verify_witness(w, d, oracle());
      CHECK_MESSAGE(v.ok, v.reason);
      pumped += std::holds_alternative<PumpedNonGeodesic>(w);
      uncovered += std::holds_alternative<UncoveredElement>(w);
    }
    CHECK(pumped > 0);
    CHECK(uncovered > 0);
  }
}
