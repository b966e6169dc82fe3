// Release gate: one pass/fail line per blocking property, nonzero exit when
// anything fails.  Each check carries the wall-clock budget it must meet on
// this hardware; exceeding the budget fails the check even if the math is
// right.
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "gpcat/fingroup.hpp"
#include "gpcat/gposet.hpp"
#include "gpcat/lietype.hpp"
#include "gpcat/nerve.hpp"
#include "gpcat/pi1.hpp"
#include "gpcat/quotcat.hpp"
#include "support/oracles.hpp"

using namespace gpcat;

namespace {

struct Gate {
  int failures = 0;

  void run(const char* label, double budget_s,
           const std::function<void(std::string&)>& body) {
    std::string why;
    auto t0 = std::chrono::steady_clock::now();
    try {
      body(why);
    } catch (const std::exception& e) {
      if (why.empty()) why = std::string("threw: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (why.empty() && secs > budget_s)
      why = "exceeded the " + std::to_string(budget_s) + " s budget";
    if (why.empty()) {
      std::printf("PASS  %-56s (%.2f s)\n", label, secs);
    } else {
      std::printf("FAIL  %-56s (%.2f s): %s\n", label, secs, why.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
};

void expect(std::string& why, bool ok, const std::string& msg) {
  if (!ok && why.empty()) why = msg;
}

bool mentions(const Report& rep, const std::string& needle) {
  for (const auto& v : rep.violations)
    if (v.find(needle) != std::string::npos) return true;
  return false;
}

GPoset one_point_poset(const GroupPtr& g) {
  GPoset p;
  p.group = g;
  p.items = {"*"};
  p.leq = {{1}};
  p.action.assign(g->order(), {0});
  p.links = {trivial_subgroup(g)};
  return p;
}

bool same_invariants(const HomologyResult& h, std::size_t rank,
                     const std::vector<long long>& torsion) {
  if (h.rank != rank || h.torsion.size() != torsion.size()) return false;
  for (std::size_t i = 0; i < torsion.size(); ++i)
    if (h.torsion[i] != torsion[i]) return false;
  return true;
}

// The categories every cross-check below runs over: both quotients of the
// GL_2(F_2) flag poset plus one-object categories for C_2 and S_3.
std::vector<std::pair<std::string, QuotCategory>> test_categories() {
  std::vector<std::pair<std::string, QuotCategory>> out;
  FlagData fd = flag_gposet(2, 2);
  out.emplace_back("refined flag category", build_category(fd.poset));
  out.emplace_back("undivided flag category",
                   build_category(with_trivial_links(fd.poset)));
  out.emplace_back("one-object C2",
                   build_category(one_point_poset(group_from_permutations(2, {{1, 0}}))));
  out.emplace_back("one-object S3",
                   build_category(one_point_poset(
                       group_from_permutations(3, {{1, 0, 2}, {1, 2, 0}}))));
  return out;
}

void check_construction_validation(std::string& why) {
  FlagData small = flag_gposet(2, 2);
  FlagData big = flag_gposet(3, 2);
  for (const GPoset* p : {&small.poset, &big.poset}) {
    expect(why, validate_action(*p).passed(), "a clean action failed validation");
    expect(why, validate_links(*p).passed(), "clean links failed validation");
  }

  // one flipped action entry
  GPoset bad = small.poset;
  bad.action[1][0] = bad.action[1][1];
  Report act = validate_action(bad);
  expect(why, !act.passed(), "corrupted action entry not caught");
  expect(why, mentions(act, "multiplicative") || mentions(act, "preserve"),
         "corrupted action entry not named");

  // one link replaced by the link of a different flag in the same orbit
  bad = small.poset;
  int donor = -1, victim = -1;
  for (std::size_t i = 0; i < bad.links.size() && donor < 0; ++i)
    for (std::size_t j = i + 1; j < bad.links.size(); ++j)
      if (bad.links[i].order() == 2 && bad.links[j].order() == 2 &&
          bad.links[i].members != bad.links[j].members) {
        donor = static_cast<int>(j);
        victim = static_cast<int>(i);
        break;
      }
  expect(why, donor >= 0, "no pair of distinct order-2 links found");
  if (donor >= 0) {
    bad.links[victim] = bad.links[donor];
    Report lk = validate_links(bad);
    expect(why, !lk.passed(), "conjugacy-breaking link not caught");
    expect(why, mentions(lk, "equivariance"), "conjugacy violation not named");
  }

  // a nontrivial link on the top element, above flags with other links
  bad = small.poset;
  int top = -1;
  for (std::size_t i = 0; i < bad.items.size(); ++i)
    if (bad.items[i] == "()") top = static_cast<int>(i);
  expect(why, top >= 0, "empty flag not found");
  if (top >= 0 && donor >= 0) {
    bad.links[top] = bad.links[donor];
    Report lk = validate_links(bad);
    expect(why, !lk.passed(), "monotonicity-breaking link not caught");
    expect(why, mentions(lk, "monotonic"), "monotonicity violation not named");
  }
}

void check_refined_hom_sizes(std::string& why) {
  FlagData fd = flag_gposet(2, 2);
  QuotCategory crbs = build_category(fd.poset);
  const std::vector<std::vector<std::size_t>> want = {
      {1, 1, 1, 3}, {1, 1, 1, 3}, {1, 1, 1, 3}, {0, 0, 0, 6}};
  expect(why, crbs.num_objects() == 4, "wrong object count");
  for (int i = 0; i < 4 && why.empty(); ++i)
    for (int j = 0; j < 4; ++j)
      expect(why, crbs.hom[i][j].classes.size() == want[i][j],
             "hom(" + std::to_string(i) + "," + std::to_string(j) + ") has " +
                 std::to_string(crbs.hom[i][j].classes.size()) + " classes");
  expect(why, check_category_axioms(crbs).passed(), "refined category axioms fail");

  GPoset undiv = with_trivial_links(fd.poset);
  QuotCategory cbs = build_category(undiv);
  expect(why, check_category_axioms(cbs).passed(), "undivided category axioms fail");
  for (int i = 0; i < 4 && why.empty(); ++i)
    for (int j = 0; j < 4; ++j)
      expect(why, cbs.hom[i][j].classes.size() == oracle::transporter_count(undiv, i, j),
             "undivided hom size is not the transporter count at (" +
                 std::to_string(i) + "," + std::to_string(j) + ")");

  CatFunctor quot = quotient_functor(cbs, crbs);
  expect(why, verify_functor(quot).passed(), "quotient functor fails verification");
  for (int i = 0; i < 4; ++i)
    expect(why, quot.obj_map[i] == i, "quotient functor moves an object");
  for (int i = 0; i < 4 && why.empty(); ++i)
    for (int j = 0; j < 4; ++j) {
      std::set<int> image(quot.class_map[i][j].begin(), quot.class_map[i][j].end());
      expect(why, image.size() == crbs.hom[i][j].classes.size(),
             "quotient functor misses a class in hom(" + std::to_string(i) + "," +
                 std::to_string(j) + ")");
    }
}

void check_orbit_category_comparison(std::string& why) {
  for (auto [n, p] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
    FlagData fd = flag_gposet(n, p);
    QuotCategory crbs = build_category(fd.poset);
    BorelTitsData bt = borel_tits_functors(fd, crbs);
    std::string tag = "GL_" + std::to_string(n) + "(F_" + std::to_string(p) + ")";
    expect(why, bt.report.passed(),
           tag + ": " + (bt.report.violations.empty() ? "comparison failed"
                                                      : bt.report.violations.front()));
    expect(why, functor_is_isomorphism(bt.phi).is_iso, tag + ": phi is not an isomorphism");
    for (std::size_t f = 0; f < fd.flags.size(); ++f)
      expect(why, verify_normalizer_is_parabolic(fd, static_cast<int>(f)),
             tag + ": normalizer of a link is not the full stabilizer");
  }

  FlagData fd = flag_gposet(2, 2);
  RadicalCollection scan = exhaustive_radical_enumeration(fd.group, 2);
  RadicalCollection links = flag_link_collection(fd);
  expect(why, scan.members.size() == 4, "radical scan found " +
                                            std::to_string(scan.members.size()) +
                                            " subgroups, wanted 4");
  std::set<std::vector<int>> a, b;
  for (const auto& u : scan.members) a.insert(u.members);
  for (const auto& u : links.members) b.insert(u.members);
  expect(why, a == b, "radical scan disagrees with the graded links");
}

void check_pi1_vs_quotient(std::string& why) {
  struct Case {
    int n, p;
    bool graded;
    std::size_t order;
  };
  for (const Case& c : {Case{2, 2, true, 1}, Case{2, 3, true, 2}, Case{2, 2, false, 6}}) {
    auto t0 = std::chrono::steady_clock::now();
    FlagData fd = flag_gposet(c.n, c.p);
    GPoset p = c.graded ? fd.poset : with_trivial_links(fd.poset);
    QuotCategory cat = build_category(p);
    Pi1Check chk = pi1_vs_quotient(p, cat, 0, 10000);
    std::string tag = "GL_" + std::to_string(c.n) + "(F_" + std::to_string(c.p) + ")" +
                      (c.graded ? " graded" : " trivial links");
    expect(why, chk.report.passed(),
           tag + ": " + (chk.report.violations.empty() ? "comparison failed"
                                                       : chk.report.violations.front()));
    expect(why, chk.quotient->order() == c.order,
           tag + ": quotient order " + std::to_string(chk.quotient->order()));
    expect(why, chk.enumeration.completed && chk.enumeration.index == c.order,
           tag + ": enumeration did not close at the right index");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    expect(why, secs < 60.0, tag + ": over the per-case minute budget");
  }
}

void check_category_homology(std::string& why) {
  FlagData fd = flag_gposet(2, 2);

  GPoset undiv = with_trivial_links(fd.poset);
  QuotCategory cbs = build_category(undiv);
  ChainComplex cx = nerve_chains(cbs, 3);
  expect(why, same_invariants(homology(cx, 0), 1, {}), "undivided H_0 is not Z");
  expect(why, same_invariants(homology(cx, 1), 0, {2}), "undivided H_1 is not Z/2");
  expect(why, same_invariants(homology(cx, 2), 0, {}), "undivided H_2 is not 0");

  // independent reference: the bar complex of the acting group itself
  std::vector<std::vector<long long>> triv(fd.group->order(), {1});
  oracle::BarHomology bar = oracle::bar_homology(whole_group(fd.group), 1, triv, 3);
  for (int k = 0; k <= 2; ++k)
    expect(why,
           same_invariants(homology(cx, k), static_cast<std::size_t>(bar.rank[k]), bar.torsion[k]),
           "undivided H_" + std::to_string(k) + " differs from the bar complex");

  QuotCategory crbs = build_category(fd.poset);
  ChainComplex rx = nerve_chains(crbs, 2);
  expect(why, same_invariants(homology(rx, 0), 1, {}), "refined H_0 is not Z");
  expect(why, same_invariants(homology(rx, 1), 0, {}), "refined H_1 is not 0");
}

void check_functor_coefficients(std::string& why) {
  for (auto& [name, cat] : test_categories()) {
    ChainComplex cx = nerve_chains(cat, 3);
    CoefficientFunctor f = constant_functor(cat, 1);
    for (int k = 0; k <= 2; ++k) {
      HomologyResult plain = homology(cx, k);
      HomologyResult with = functor_homology(cx, f, k);
      expect(why, with.rank == plain.rank && with.torsion == plain.torsion,
             name + ": constant coefficients differ from the nerve in degree " +
                 std::to_string(k));
    }
  }

  // nonconstant module on the one-object C_2 category: the sign action
  auto c2 = group_from_permutations(2, {{1, 0}});
  QuotCategory bc2 = build_category(one_point_poset(c2));
  ChainComplex cx = nerve_chains(bc2, 3);
  CoefficientFunctor sgn;
  sgn.cat = &bc2;
  sgn.rank = {1};
  sgn.mats.assign(1, std::vector<std::vector<std::vector<long long>>>(1));
  sgn.mats[0][0].resize(bc2.hom[0][0].classes.size());
  for (std::size_t cls = 0; cls < bc2.hom[0][0].classes.size(); ++cls) {
    int rep = bc2.hom[0][0].classes[cls].rep();
    sgn.mats[0][0][cls] = {rep == 0 ? 1LL : -1LL};  // identity is element 0
  }
  expect(why, check_coefficient_functor(sgn).passed(), "sign module is not a functor");

  std::vector<std::vector<long long>> mats(c2->order());
  for (int g = 0; g < static_cast<int>(c2->order()); ++g)
    mats[g] = {g == 0 ? 1LL : -1LL};
  oracle::BarHomology bar = oracle::bar_homology(whole_group(c2), 1, mats, 3);
  for (int k = 0; k <= 2; ++k)
    expect(why,
           same_invariants(functor_homology(cx, sgn, k), static_cast<std::size_t>(bar.rank[k]), bar.torsion[k]),
           "sign coefficients differ from the bar complex in degree " + std::to_string(k));
}

void check_internal_consistency(std::string& why) {
  for (auto& [name, cat] : test_categories()) {
    ChainComplex cx = nerve_chains(cat, 3);
    expect(why, verify_boundaries(cx).passed(), name + ": boundary maps do not square to zero");
    AbelianInvariants ab = abelianization(pi1_presentation(cat, 0));
    HomologyResult h1 = homology(cx, 1);
    expect(why, ab.rank == h1.rank && ab.torsion == h1.torsion,
           name + ": abelianized fundamental group differs from H_1");
  }

  for (auto [n, p] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
    FlagData fd = flag_gposet(n, p);
    for (std::size_t f = 0; f < fd.flags.size(); ++f)
      expect(why, verify_link_is_op(fd, static_cast<int>(f)),
             "GL_" + std::to_string(n) + "(F_" + std::to_string(p) +
                 "): a graded link is not the unipotent radical of its stabilizer");
  }
}

}  // namespace

int main() {
  Gate gate;
  gate.run("construction validation and corruption detection", 5.0,
           check_construction_validation);
  gate.run("refined hom sizes, axioms and the quotient functor", 5.0,
           check_refined_hom_sizes);
  gate.run("orbit category comparison and radical scan", 300.0,
           check_orbit_category_comparison);
  gate.run("fundamental group vs group quotient", 180.0, check_pi1_vs_quotient);
  gate.run("integral homology of both flag categories", 120.0,
           check_category_homology);
  gate.run("functor coefficients vs nerve and bar complex", 60.0,
           check_functor_coefficients);
  gate.run("abelianization, boundary squares and link identities", 120.0,
           check_internal_consistency);
  if (gate.failures) {
    std::printf("%d check(s) failed\n", gate.failures);
    return 1;
  }
  std::printf("all acceptance checks passed\n");
  return 0;
}
