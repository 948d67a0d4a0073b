#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <string>

using namespace webtensor;

namespace {

Manifest parse(const std::string& text) { return parse_manifest(text); }

std::string error_of(const std::string& text) {
  try {
    parse_manifest(text);
  } catch (const ManifestError& e) {
    return e.what();
  }
  return "";
}

const char* kSmall = R"(# comment line
name demo
dim 3
v_dim 2

bracket 1 2 3 1
bracket 3 1 1 2
bracket 3 2 2 -2
R 1 1 3 1/2
S 1 1 2 3 -1/3
)";

}  // namespace

TEST_CASE("a full manifest parses into the expected data") {
  Manifest m = parse(kSmall);
  CHECK(m.name == "demo");
  CHECK(m.dim == 3);
  CHECK(m.v_dim == 2);
  CHECK(m.algebra.structure(0, 1, 2) == Rat(1));
  CHECK(m.algebra.structure(1, 0, 2) == Rat(-1));
  CHECK(m.algebra.structure(2, 0, 0) == Rat(2));
  CHECK(m.R.value_at({0, 0}) == vec_scaled(make_rat(1, 2), basis_vec(3, 2)));
  // S entries are stored fully symmetrically
  AlgVec s = vec_scaled(make_rat(-1, 3), basis_vec(3, 2));
  CHECK(m.S.value_at({0, 0, 1}) == s);
  CHECK(m.S.value_at({0, 1, 0}) == s);
  CHECK(m.S.value_at({1, 0, 0}) == s);
}

TEST_CASE("emit and parse round-trip") {
  Manifest m = parse(kSmall);
  CHECK(parse_manifest(emit_manifest(m)) == m);
  // fixture files on disk round-trip too
  for (const char* name : {"A", "B", "SL2R", "B-R", "heisenberg", "abelian",
                           "abelian-RS", "whole-group", "C", "D", "D4"}) {
    CAPTURE(name);
    Manifest fx = load_manifest_file(std::string(FIXTURES_DIR) + "/" + name + ".wtm");
    CHECK(parse_manifest(emit_manifest(fx)) == fx);
  }
}

TEST_CASE("parse errors carry the offending line") {
  CHECK(error_of("dim 3\nv_dim 2\nbracket 1 2 4 1\n") == "line 3: index out of range");
  CHECK(error_of("dim 3\nv_dim 9\n").find("line 2") == 0);
  CHECK(error_of("bracket 1 2 3 1\n").find("line 1") == 0);  // dim not set yet
  CHECK(error_of("dim 3\nv_dim 2\nbracket 1 2 3 1/0\n").find("line 3") == 0);
  CHECK(error_of("dim 3\nv_dim 2\nnonsense 1 2\n").find("line 3") == 0);
  CHECK(error_of("dim 3\nv_dim 2\nbracket 1 2 3\n").find("line 3") == 0);
  CHECK(error_of("dim 0\n").find("line 1") == 0);
  CHECK(!error_of("dim 3\n").empty());  // v_dim missing entirely
}

TEST_CASE("conflicting duplicate entries are rejected, agreeing ones are not") {
  std::string base = "dim 3\nv_dim 2\n";
  CHECK_NOTHROW(parse(base + "bracket 1 2 3 1\nbracket 1 2 3 1\n"));
  // same bracket restated with swapped slots and flipped sign is consistent
  CHECK_NOTHROW(parse(base + "bracket 1 2 3 1\nbracket 2 1 3 -1\n"));
  CHECK(error_of(base + "bracket 1 2 3 1\nbracket 1 2 3 2\n").find("line 4") == 0);
  CHECK(error_of(base + "bracket 1 2 3 1\nbracket 2 1 3 1\n").find("line 4") == 0);
  CHECK(error_of(base + "bracket 1 1 3 1\n").find("line 3") == 0);  // [x,x] != 0
  CHECK_NOTHROW(parse(base + "bracket 1 1 3 0\n"));
  CHECK(error_of(base + "R 1 2 3 1\nR 2 1 3 -1\n").find("line 4") == 0);  // R symmetric
  CHECK_NOTHROW(parse(base + "R 1 2 3 1\nR 2 1 3 1\n"));
  CHECK(error_of(base + "S 1 2 1 3 1\nS 2 1 1 3 2\n").find("line 4") == 0);
}

TEST_CASE("manifest parsing does not police algebra laws") {
  // a Jacobi violation parses fine; the validate command owns that check
  Manifest m = parse("dim 3\nv_dim 1\nbracket 1 2 3 1\nbracket 1 3 1 1\n");
  CHECK(!validate_algebra(m.algebra).ok);
}

TEST_CASE("instances built from fixture files match the programmatic fixtures") {
  struct Pair {
    const char* file;
    support::Fixture fx;
  };
  std::vector<Pair> pairs = {{"A", support::fixture_a()},
                             {"B", support::fixture_b()},
                             {"SL2R", support::fixture_sl2r()},
                             {"B-R", support::fixture_b_r()},
                             {"heisenberg", support::fixture_heis()},
                             {"abelian", support::fixture_abelian()},
                             {"abelian-RS", support::fixture_abelian_rs()},
                             {"whole-group", support::fixture_h_trivial()},
                             {"C", support::fixture_c()},
                             {"D", support::fixture_d()},
                             {"D4", support::fixture_d4()}};
  for (const auto& p : pairs) {
    CAPTURE(p.file);
    Manifest m = load_manifest_file(std::string(FIXTURES_DIR) + "/" + p.file + ".wtm");
    Instance inst = build_instance(m);
    CHECK(inst.alg.dim == p.fx.alg.dim);
    CHECK(inst.split.v_dim == p.fx.split.v_dim);
    CHECK(inst.alg.c == p.fx.alg.c);
    CHECK(map_mismatches(inst.section.R, p.fx.section.R).empty());
    CHECK(map_mismatches(inst.section.S, p.fx.section.S).empty());
  }
}

TEST_CASE("missing files raise a file-level error") {
  CHECK_THROWS_AS(load_manifest_file("/nonexistent/path.wtm"), ManifestError);
}
