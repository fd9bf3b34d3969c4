#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "vag/automata.hpp"
#include "vag/embedcheck.hpp"
#include "vag/errors.hpp"

using namespace vag;
using fixtures::ball;
using fixtures::embedding;
using fixtures::eval;
using fixtures::G;
using fixtures::H;
using fixtures::model;

TEST_SUITE("embedcheck") {
  TEST_CASE("lattice map is injective and intertwines the actions") {
    const EmbeddingMap& e = embedding();
    CHECK(e.lattice_map().rows() == 10);
    CHECK(e.lattice_map().cols() == 5);
    const FiniteGroup& qh = H().quotient();
    const FiniteGroup& qg = G().quotient();
    CHECK(qg.name(e.map_quotient(*qh.find("tau"))) == "s2");
    CHECK(qg.name(e.map_quotient(*qh.find("ttau"))) == "ts2");
    CHECK(qg.name(e.map_quotient(*qh.find("t"))) == "t");
  }

  TEST_CASE("substitution") {
    const EmbeddingMap& e = embedding();
    CHECK(G().format_word(e.substitute(H().parse_word("x tau x tau"))) == "x s s x s s");
    CHECK(e.substitute(Word{}).empty());
    CHECK(G().format_word(e.substitute(H().parse_word("x y t"))) == "x y t");
  }

  TEST_CASE("phi") {
    const EmbeddingMap& e = embedding();
    CHECK(e.phi(H().identity()) == G().identity());
    const GroupElement img = e.phi(eval(H(), "x tau x tau"));
    CHECK(img == eval(G(), "x s s x s s"));
    CHECK(img.q == G().quotient().identity());
    CHECK(img == eval(G(), "y t y t"));
    CHECK(e.phi(eval(H(), "t")) == eval(G(), "t"));
  }

  TEST_CASE("coherence and homomorphism on random words") {
    const auto r = embedding().check_homomorphism(42, 1000);
    CHECK(r.passed());
    CHECK(r.checked == 2000);
  }

  TEST_CASE("pull back") {
    const EmbeddingMap& e = embedding();
    CHECK(e.pull_back(G().parse_word("x s s x S S")) == H().parse_word("x tau x tau"));
    CHECK_FALSE(e.pull_back(G().parse_word("s")));
    CHECK_FALSE(e.pull_back(G().parse_word("s S")));
    CHECK_FALSE(e.pull_back(G().parse_word("s t s")));
    CHECK(e.pull_back_commuting(G().parse_word("s t s")) == H().parse_word("tau t"));
    CHECK_FALSE(e.pull_back_commuting(G().parse_word("s x s")));
    std::mt19937_64 rng(8);
    for (int i = 0; i < 200; ++i) {
      Word w(rng() % 10);
      for (auto& l : w) l = rng() % H().letters().size();
      CHECK(e.pull_back(e.substitute(w)) == w);
    }
  }

  TEST_CASE("image membership") {
    const EmbeddingMap& e = embedding();
    CHECK(e.in_image(eval(G(), "x s s x s s")));
    CHECK(e.in_image(eval(G(), "s s")));
    CHECK_FALSE(e.in_image(eval(G(), "s")));
    CHECK_FALSE(e.in_image(eval(G(), "s x S")));
  }

  TEST_CASE("tau lift and y + y^t from the text") {
    const LengthTable& gt = ball(G(), 4);
    const EmbeddingMap& e = embedding();
    const GroupElement tau = e.phi(eval(H(), "tau"));
    CHECK(gt.find(tau) == 2);
    const auto geo = all_geodesics(gt, tau);
    REQUIRE(geo.size() == 2);
    CHECK(G().format_word(geo[0]) == "s s");
    CHECK(G().format_word(geo[1]) == "S S");
    const GroupElement yyt = e.phi(eval(H(), "y t y t"));
    CHECK(gt.find(yyt) == 4);
    const auto hg = all_geodesics(ball(H(), 4), eval(H(), "y t y t"));
    const auto gg = all_geodesics(gt, yyt);
    REQUIRE(hg.size() == gg.size());
    for (std::size_t i = 0; i < hg.size(); ++i) CHECK(H().format_word(hg[i]) == G().format_word(gg[i]));
  }

  TEST_CASE("totally geodesic at radius 5") {
    const auto commuting =
        check_totally_geodesic(embedding(), ball(H(), 5), ball(G(), 5), 5, PullBackMode::Commuting);
    CHECK(commuting.passed());
    // Literally, "s t s" is a G-geodesic of phi(t tau) that is no substitution.
    const auto literal = check_totally_geodesic(embedding(), ball(H(), 5), ball(G(), 5), 5, PullBackMode::Literal);
    CHECK_FALSE(literal.passed());
    CHECK(literal.detail.find("first 's t s'") != std::string::npos);
    CHECK_THROWS_AS(check_totally_geodesic(embedding(), ball(H(), 5), ball(G(), 4), 5), OutOfRadius);
    // radius 0: identity only
    CHECK(check_totally_geodesic(embedding(), ball(H(), 5), ball(G(), 5), 0).passed());
  }

  TEST_CASE("wrong correspondences are rejected") {
    std::vector<QuotientIndex> qmap{0, 4, 1, 5};  // tau -> s is no homomorphism image of order 2
    std::vector<std::size_t> gmap(8, 0);
    CHECK_THROWS_AS(EmbeddingMap(H(), G(), qmap, gmap, {}), ActionError);
  }

  TEST_CASE("refutation inside G") {
    const EmbeddingMap& e = embedding();
    const LengthTable& ht = ball(H(), 16);
    const LengthTable& gt = ball(G(), 5);
    const LengthOracle oracle = subgroup_oracle(e, model(), &gt);

    const ValidatedDfa all = dfa_validate(accept_all_dfa(alphabet_symbols(G())), G());
    const RefutationWitness w = refute_on_subgroup(all, e, model(), {}, &ht, &gt);
    const auto& p = std::get<PumpedNonGeodesic>(w);
    CHECK(G().format_word(p.original_word) == "x s s x x x s s");
    CHECK(G().format_word(p.pumped_word) == "x s s x s s");
    CHECK(p.pumped_length == 4);
    CHECK(verify_witness(w, all, oracle).ok);

    const ValidatedDfa xyt = dfa_validate(restricted_dfa({"x", "X", "y", "Y", "t"}), G());
    const RefutationWitness u = refute_on_subgroup(xyt, e, model(), {}, &ht, &gt);
    CHECK(std::get<UncoveredElement>(u).element == e.phi(model().family_b(1, 3, 0)));
    CHECK(verify_witness(u, xyt, oracle).ok);

    const ValidatedDfa sample = dfa_validate(load_dfa(fixtures::source_path("corpus/sample2_G.dfa")), G());
    const RefutationWitness s = refute_on_subgroup(sample, e, model(), {}, &ht, &gt);
    CHECK(std::holds_alternative<PumpedNonGeodesic>(s));
    CHECK(verify_witness(s, sample, oracle).ok);
  }
}
