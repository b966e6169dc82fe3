#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "gpcat/errors.hpp"
#include "gpcat/gposet.hpp"

using namespace gpcat;

namespace {

GroupPtr s3() { return group_from_permutations(3, {{1, 0, 2}, {1, 2, 0}}); }

GroupPtr trivial() { return group_from_permutations(1, {}); }

// S_3 permuting three incomparable points under a common top element.
GPoset points_poset(GroupPtr g, bool trivial_links = true) {
  GPoset p;
  p.group = g;
  p.items = {"a", "b", "c", "*"};
  p.leq.assign(4, std::vector<char>(4, 0));
  for (int i = 0; i < 4; ++i) p.leq[i][i] = 1;
  for (int i = 0; i < 3; ++i) p.leq[i][3] = 1;
  p.action.assign(g->order(), std::vector<int>(4));
  for (std::size_t e = 0; e < g->order(); ++e) {
    for (int i = 0; i < 3; ++i) p.action[e][i] = g->forms[e][i];
    p.action[e][3] = 3;
  }
  if (trivial_links)
    p.links.assign(4, trivial_subgroup(g));
  return p;
}

// n-chain under the trivial group, handy for corrupting order axioms.
GPoset chain_poset(int n) {
  GPoset p;
  p.group = trivial();
  for (int i = 0; i < n; ++i) p.items.push_back("x" + std::to_string(i));
  p.leq.assign(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) p.leq[i][j] = 1;
  p.action.assign(1, std::vector<int>(n));
  for (int i = 0; i < n; ++i) p.action[0][i] = i;
  p.links.assign(n, trivial_subgroup(p.group));
  return p;
}

bool mentions(const Report& rep, const std::string& what) {
  return std::any_of(rep.violations.begin(), rep.violations.end(),
                     [&](const std::string& v) { return v.find(what) != std::string::npos; });
}

}  // namespace

TEST_CASE("valid point poset passes both validations") {
  GPoset p = points_poset(s3());
  CHECK(validate_action(p).passed());
  CHECK(validate_links(p).passed());
}

TEST_CASE("stabilizers of the point poset") {
  GPoset p = points_poset(s3());
  CHECK(stabilizer(p, 0).order() == 2);
  CHECK(stabilizer(p, 1).order() == 2);
  CHECK(stabilizer(p, 2).order() == 2);
  CHECK(stabilizer(p, 3).order() == 6);
  CHECK(stabilizer(p, 0).contains(0));
}

TEST_CASE("order axiom corruptions are reported by name") {
  SUBCASE("reflexivity") {
    GPoset p = chain_poset(3);
    p.leq[1][1] = 0;
    Report r = validate_action(p);
    CHECK_FALSE(r.passed());
    CHECK(mentions(r, "reflexivity"));
  }
  SUBCASE("antisymmetry") {
    GPoset p = chain_poset(3);
    p.leq[2][0] = 1;
    Report r = validate_action(p);
    CHECK_FALSE(r.passed());
    CHECK(mentions(r, "antisymmetry"));
  }
  SUBCASE("transitivity") {
    GPoset p = chain_poset(3);
    p.leq[0][2] = 0;
    Report r = validate_action(p);
    CHECK_FALSE(r.passed());
    CHECK(mentions(r, "transitivity"));
  }
}

TEST_CASE("action table corruptions are reported") {
  SUBCASE("identity row") {
    GPoset p = points_poset(s3());
    p.action[0][1] = 2;
    p.action[0][2] = 1;
    Report r = validate_action(p);
    CHECK_FALSE(r.passed());
    CHECK(mentions(r, "identity does not fix"));
  }
  SUBCASE("multiplicativity") {
    GPoset p = points_poset(s3());
    // Swap two values in one non-identity row; some product now disagrees.
    p.action[1][0] = 0;
    p.action[1][1] = 1;
    Report r = validate_action(p);
    CHECK_FALSE(r.passed());
    CHECK(mentions(r, "not multiplicative"));
  }
  SUBCASE("value out of range") {
    GPoset p = points_poset(s3());
    p.action[2][0] = 17;
    Report r = validate_action(p);
    CHECK_FALSE(r.passed());
  }
  SUBCASE("order preservation and strict down moves") {
    GroupPtr c2 = group_from_permutations(2, {{1, 0}});
    GPoset p;
    p.group = c2;
    p.items = {"x", "y"};
    p.leq = {{1, 1}, {0, 1}};
    p.action = {{0, 1}, {0, 1}};
    p.links.assign(2, trivial_subgroup(c2));
    CHECK(validate_action(p).passed());  // trivial action on a chain is fine
    p.action[1] = {1, 0};                // swapping a chain is not
    Report r = validate_action(p);
    CHECK_FALSE(r.passed());
    CHECK(mentions(r, "does not preserve"));
    CHECK(mentions(r, "strictly down"));
  }
}

TEST_CASE("generator-based action validation on a large group") {
  GroupPtr s7 = group_from_permutations(
      7, {{1, 0, 2, 3, 4, 5, 6}, {1, 2, 3, 4, 5, 6, 0}});
  REQUIRE(s7->order() == 5040);
  GPoset p;
  p.group = s7;
  p.items = {"p0", "p1", "p2", "p3", "p4", "p5", "p6", "*"};
  p.leq.assign(8, std::vector<char>(8, 0));
  for (int i = 0; i < 8; ++i) p.leq[i][i] = 1;
  for (int i = 0; i < 7; ++i) p.leq[i][7] = 1;
  p.action.assign(s7->order(), std::vector<int>(8));
  for (std::size_t e = 0; e < s7->order(); ++e) {
    for (int i = 0; i < 7; ++i) p.action[e][i] = s7->forms[e][i];
    p.action[e][7] = 7;
  }
  p.links.assign(8, trivial_subgroup(s7));
  CHECK(validate_action(p).passed());
  CHECK(validate_links(p).passed());

  p.action[100][0] = p.action[100][0] == 0 ? 1 : 0;  // single corrupt cell
  CHECK_FALSE(validate_action(p).passed());
}

TEST_CASE("link containment in the stabilizer") {
  GPoset p = points_poset(s3());
  // (a b) does not stabilize a.
  p.links[0] = subgroup_generate(p.group, {p.group->generators[0]});
  REQUIRE_FALSE(p.action[p.group->generators[0]][0] == 0);
  Report r = validate_links(p);
  CHECK_FALSE(r.passed());
  CHECK(mentions(r, "not contained in its stabilizer"));
  CHECK_THROWS_AS(stabilizer(p, 0), LinkNotInStabilizer);
}

TEST_CASE("link monotonicity along the order") {
  GPoset p = points_poset(s3());
  // A nontrivial link at the top violates link(top) <= link(point).
  int swap_bc = -1;
  for (std::size_t g = 1; g < p.group->order(); ++g)
    if (p.action[g][0] == 0 && p.action[g][1] == 2) swap_bc = static_cast<int>(g);
  REQUIRE(swap_bc > 0);
  p.links[3] = subgroup_generate(p.group, {swap_bc});
  Report r = validate_links(p);
  CHECK_FALSE(r.passed());
  CHECK(mentions(r, "monotonicity"));
}

TEST_CASE("link conjugation equivariance") {
  GPoset p = points_poset(s3());
  int swap_bc = -1;
  for (std::size_t g = 1; g < p.group->order(); ++g)
    if (p.action[g][0] == 0 && p.action[g][1] == 2) swap_bc = static_cast<int>(g);
  REQUIRE(swap_bc > 0);
  p.links[0] = subgroup_generate(p.group, {swap_bc});  // equals stab(a)
  // Leaving the other point links trivial breaks equivariance at a -> b.
  Report r = validate_links(p);
  CHECK_FALSE(r.passed());
  CHECK(mentions(r, "equivariance"));

  // Filling in the conjugate links everywhere repairs it.
  for (int i = 1; i < 3; ++i) {
    for (std::size_t g = 0; g < p.group->order(); ++g)
      if (p.action[g][0] == i) {
        p.links[i] = conjugate_subgroup(static_cast<int>(g), p.links[0]);
        break;
      }
  }
  Report ok = validate_links(p);
  CHECK(ok.passed());
  CHECK(ok.notes.empty());
}

TEST_CASE("non-normal link in the stabilizer is noted") {
  GroupPtr g = s3();
  GPoset p;
  p.group = g;
  p.items = {"*"};
  p.leq = {{1}};
  p.action.assign(g->order(), {0});
  p.links = {subgroup_generate(g, {g->generators[0]})};  // order 2, not normal in S_3
  Report r = validate_links(p);
  CHECK_FALSE(r.notes.empty());  // flagged as a note
  CHECK_FALSE(r.passed());       // and equivariance genuinely fails here
}

TEST_CASE("orbit poset of the point poset") {
  GPoset p = points_poset(s3());
  OrbitPoset op = orbit_poset(p);
  REQUIRE(op.classes.size() == 2);
  CHECK(op.classes[0] == std::vector<int>{0, 1, 2});
  CHECK(op.classes[1] == std::vector<int>{3});
  CHECK(op.class_of == std::vector<int>{0, 0, 0, 1});
  CHECK(op.leq[0][0]);
  CHECK(op.leq[0][1]);
  CHECK_FALSE(op.leq[1][0]);
}

TEST_CASE("orbit poset rejects a relation that is not a partial order") {
  GPoset p = chain_poset(2);
  p.leq[1][0] = 1;  // mutual comparability between distinct singleton orbits
  CHECK_THROWS_AS(orbit_poset(p), NotAPartialOrder);
}

TEST_CASE("with_trivial_links replaces every link") {
  GPoset p = points_poset(s3());
  int swap_bc = -1;
  for (std::size_t g = 1; g < p.group->order(); ++g)
    if (p.action[g][0] == 0 && p.action[g][1] == 2) swap_bc = static_cast<int>(g);
  p.links[0] = subgroup_generate(p.group, {swap_bc});
  GPoset t = with_trivial_links(p);
  for (const auto& l : t.links) CHECK(l.order() == 1);
  CHECK(t.items == p.items);
  CHECK(validate_links(t).passed());
}
