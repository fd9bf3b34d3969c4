#include <doctest.h>

#include "fixtures.hpp"
#include "vag/errors.hpp"
#include "vag/length_formulas.hpp"

using namespace vag;
using fixtures::ball;
using fixtures::eval;
using fixtures::H;
using fixtures::model;

TEST_SUITE("length_formulas") {
  TEST_CASE("closed forms") {
    CHECK(closed_form_length_a(0, 0, 1) == 3);
    CHECK(closed_form_length_b(3, 2, 0) == 7);
    CHECK(closed_form_length_b(1, 3, 2) == 10);
    CHECK(closed_form_length_h(Family::B, 1, 3, 2) == 10);
    CHECK_THROWS_AS(closed_form_length_a(1, 1, 0), DomainError);
    CHECK_THROWS_AS(closed_form_length_b(1, 0, 1), DomainError);
    CHECK_THROWS_AS(closed_form_length_b(-1, 2, 1), DomainError);
  }

  TEST_CASE("grid needs radius 15") { CHECK(FormulaGrid{}.required_radius() == 15); }

  TEST_CASE("formula grid against the ball") {
    const auto r = verify_length_formulas(model(), ball(H(), 15));
    CHECK(r.passed());
    CHECK(r.violation_count == 0);
    CHECK_THROWS_AS(verify_length_formulas(model(), ball(H(), 10)), OutOfRadius);
  }

  TEST_CASE("star characterization") {
    const auto r = verify_star_characterization(model(), ball(H(), 15), 4, 4, 2);
    CHECK(r.passed());
    CHECK(r.violation_count == 0);
  }

  TEST_CASE("epsilon audit") {
    const auto r = epsilon_audit(model(), ball(H(), 12));
    CHECK(r.passed());
    const LengthTable& t = ball(H(), 10);
    const GroupElement yyt = eval(H(), "y t y t");
    CHECK(H().epsilon(yyt) == 2);
    CHECK(t.find(yyt) == 4);
    const GroupElement b12 = model().family_b(1, 2, 0);
    CHECK(H().epsilon(b12) == 3);
    CHECK(t.find(b12) == 7);
  }

  TEST_CASE("match_star") {
    const HModel& h = model();
    auto m = h.match_star(H().parse_word("x tau x x tau y"));
    REQUIRE(m);
    CHECK(m->w1 == H().parse_word("x"));
    CHECK(m->e == 2);
    CHECK(m->w2 == H().parse_word("y"));
    CHECK(h.reassemble(*m) == H().parse_word("x tau x x tau y"));
    auto bare = h.match_star(H().parse_word("tau x tau"));
    REQUIRE(bare);
    CHECK(bare->w1.empty());
    CHECK(bare->e == 1);
    CHECK_FALSE(h.match_star(H().parse_word("x y")));
    CHECK_FALSE(h.match_star(H().parse_word("X y y y t y t")));
    CHECK_FALSE(h.match_star(H().parse_word("tau tau")));
    CHECK_FALSE(h.match_star(H().parse_word("tau x y tau")));
    CHECK_FALSE(h.match_star(H().parse_word("X tau x tau")));
    CHECK_FALSE(h.match_star(H().parse_word("tau x tau x tau")));
  }

  TEST_CASE("match_star round trips on random (*) words") {
    const HModel& h = model();
    for (Int d = 0; d <= 3; ++d)
      for (Int e = 1; e <= 4; ++e)
        for (Int f = 0; f <= 3; ++f) {
          const Word w = h.star_word(d, e, f);
          auto m = h.match_star(w);
          REQUIRE(m);
          CHECK(h.reassemble(*m) == w);
          CHECK(m->e == e);
          CHECK(h.flank_counts(*m) == std::pair<Int, Int>{d, f});
          CHECK(H().evaluate(w).element == h.family_b(d, e, f));
        }
  }

  TEST_CASE("specific geodesy of the (*) word") {
    const LengthTable& t = ball(H(), 10);
    const HModel& h = model();
    CHECK(t.find(h.family_b(0, 1, 0)) == 5);
    CHECK(H().weight(h.star_word(1, 1, 0)) == 6);
    CHECK(t.find(h.family_b(1, 1, 0)) == 4);
    const Word alt = h.alternative_word(2, 1);
    CHECK(H().format_word(alt) == "X y y y t y y t");
    CHECK(H().weight(alt) == 8);
    CHECK(H().evaluate(alt).element == h.family_b(1, 2, 1));
    CHECK(t.find(h.family_b(1, 2, 1)) == 8);
    CHECK_FALSE(h.match_star(alt));
  }

  TEST_CASE("delta shift") {
    const HModel& h = model();
    CHECK(delta_shift(h, 2, 1, 0, 1) == DeltaShift{1, 0, 1, 1});
    CHECK(delta_shift(h, 2, 1, 0, 0) == DeltaShift{2, 1, 0, 0});
    CHECK(delta_shift(h, 3, 3, 1, 3) == DeltaShift{0, 0, 4, 3});
    CHECK(h.mixed(1, 0, 1, 1) == h.family_b(2, 1, 0));
    CHECK_THROWS_AS(delta_shift(h, 1, 2, 0, 2), DomainError);
    CHECK_THROWS_AS(delta_shift(h, 1, 2, 0, -1), DomainError);
  }
}
