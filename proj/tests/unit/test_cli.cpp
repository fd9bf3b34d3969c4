#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "vag/cli.hpp"

using namespace vag;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("compile") {
    auto h = run({"compile", "--group", "H"});
    CHECK(h.code == 0);
    CHECK(has(h.out, "rank 5\n"));
    CHECK(has(h.out, "CHECK relation_kernel PASS"));
    auto g = run({"compile", "--group", "G", "--format", "summary"});
    CHECK(g.code == 0);
    CHECK(has(g.out, "rank=10"));
    auto bad = run({"compile", "--group", fixtures::source_path("tests/fixtures/corrupted_action.group")});
    CHECK(bad.code == exit_code::kUsage);
    CHECK(has(bad.err, "corrupted_action.group:15:"));
  }

  TEST_CASE("length") {
    auto b = run({"length", "--family", "B", "--d", "1", "--e", "3", "--f", "2"});
    CHECK(b.code == 0);
    CHECK(b.out == "10\n");
    CHECK(run({"length", "--family", "A", "--a", "0", "--b", "0", "--c", "1"}).out == "3\n");
    CHECK(run({"length", "--word", "x tau x tau"}).out == "4\n");
    auto small = run({"length", "--word", "x tau x tau", "--radius", "2"});
    CHECK(small.code == exit_code::kResource);
    CHECK(has(small.err, "suggested radius"));
    CHECK(run({"length", "--family", "A", "--c", "0"}).code == exit_code::kUsage);
    CHECK(run({"length"}).code == exit_code::kUsage);
  }

  TEST_CASE("geodesics and growth") {
    auto g = run({"geodesics", "--word", "ytyt"});
    CHECK(g.code == 0);
    CHECK(g.out == "y t y t\nt y t y\n");
    CHECK(run({"geodesics", "--word", "ytyt", "--count"}).out == "2\n");
    CHECK(run({"growth", "--radius", "0"}).out == "1\n");
    CHECK(run({"growth", "--radius", "3", "--group", "G"}).out == "1 7 35 169\n");
  }

  TEST_CASE("ball dump") {
    auto b = run({"ball", "--radius", "1", "--list"});
    CHECK(b.code == 0);
    CHECK(has(b.out, "elements 6\n"));
    CHECK(has(b.out, "0 0 0 0 0 | e | 0\n"));
    CHECK(has(b.out, "0 0 0 0 0 | t | 1\n"));
  }

  TEST_CASE("usage errors") {
    CHECK(run({}).code == exit_code::kUsage);
    CHECK(run({"frobnicate"}).code == exit_code::kUsage);
    CHECK(run({"growth", "--bogus", "1"}).code == exit_code::kUsage);
    CHECK(run({"growth", "--radius", "-1"}).code == exit_code::kUsage);
    CHECK(run({"growth", "--format", "xml"}).code == exit_code::kUsage);
    CHECK(run({"growth", "--group", "/nonexistent.group"}).code == exit_code::kUsage);
    CHECK(run({"--help"}).code == 0);
  }

  TEST_CASE("refute") {
    auto all = run({"refute", "--dfa", fixtures::source_path("corpus/accept_all_H.dfa")});
    CHECK(all.code == exit_code::kPumpedNonGeodesic);
    CHECK(has(all.out, "WITNESS PumpedNonGeodesic\n"));
    CHECK(has(all.out, "CHECK witness_verified PASS"));
    auto xy = run({"refute", "--dfa", fixtures::source_path("corpus/xy_only_H.dfa"), "--format", "summary"});
    CHECK(xy.code == exit_code::kUncoveredElement);
    auto missing = run({"refute", "--dfa", "/nonexistent.dfa"});
    CHECK(missing.code == exit_code::kUsage);
    CHECK(has(missing.err, "cannot open"));
    auto mismatch = run({"refute", "--group", "G", "--dfa", fixtures::source_path("corpus/accept_all_H.dfa")});
    CHECK(mismatch.code == exit_code::kUsage);
    auto budget = run({"refute", "--dfa", fixtures::source_path("corpus/star4_H.dfa"), "--max-radius", "10"});
    CHECK(budget.code == exit_code::kResource);
    auto g = run({"refute", "--group", "G", "--dfa", fixtures::source_path("corpus/sample2_G.dfa"), "--radius", "5"});
    CHECK(g.code == exit_code::kPumpedNonGeodesic);
    CHECK(has(g.out, "CHECK totally_geodesic PASS"));
  }

  TEST_CASE("audit") {
    auto a = run({"audit", "--dfa", fixtures::source_path("corpus/star4_H.dfa"), "--radius", "6"});
    CHECK(a.code == exit_code::kFail);
    CHECK(has(a.out, "word x tau x tau\n"));
    auto xy = run({"audit", "--dfa", fixtures::source_path("corpus/xy_geodesic_H.dfa"), "--radius", "2"});
    CHECK(xy.code == exit_code::kFail);
    CHECK(has(xy.out, "WITNESS UncoveredElement"));
  }

  TEST_CASE("check-embedding") {
    auto c = run({"check-embedding", "--radius", "3", "--format", "summary"});
    CHECK(c.code == 0);
    CHECK(has(c.out, "CHECK totally_geodesic PASS radius=3"));
    auto literal = run({"check-embedding", "--radius", "3", "--pullback", "literal", "--format", "summary"});
    CHECK(literal.code == exit_code::kFail);
  }

  TEST_CASE("verify") {
    auto v = run({"verify", "--format", "summary", "--seed", "7"});
    CHECK(v.code == 0);
    CHECK_FALSE(has(v.out, "FAIL"));
    CHECK(has(v.out, "CHECK length_formulas PASS"));
    auto again = run({"verify", "--format", "summary", "--seed", "7"});
    CHECK(again.out == v.out);
    auto small = run({"verify", "--radius", "10", "--format", "summary"});
    CHECK(small.code == exit_code::kResource);
    CHECK(has(small.out, "CHECK length_formulas SKIPPED"));
    CHECK(has(small.out, "CHECK epsilon_audit PASS"));
    auto bad = run({"verify", "--group", fixtures::source_path("tests/fixtures/corrupted_action.group"), "--format",
                    "summary", "--radius", "10"});
    CHECK(bad.code == exit_code::kFail);
    CHECK(has(bad.out, "CHECK relation_kernel FAIL"));
  }
}
