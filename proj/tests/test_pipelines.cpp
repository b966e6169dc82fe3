#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gpcat/errors.hpp"
#include "gpcat/fingroup.hpp"
#include "gpcat/gposet.hpp"
#include "gpcat/jsonio.hpp"
#include "gpcat/lietype.hpp"
#include "gpcat/pipelines.hpp"
#include "gpcat/quotcat.hpp"

using namespace gpcat;

namespace {

Json gl_spec(int n, int p, const char* links = nullptr) {
  Json j = {{"family", "GL"}, {"n", n}, {"p", p}};
  if (links) j["links"] = links;
  return j;
}

// Chain a < b acted on trivially by C_2; the links are configurable so a
// monotonicity violation can be staged (link(b) must sit inside link(a)).
Json chain_poset_doc(bool bad_links) {
  auto c2 = group_from_permutations(2, {{1, 0}});
  GPoset p;
  p.group = c2;
  p.items = {"a", "b"};
  p.leq = {{1, 1}, {0, 1}};
  p.action.assign(c2->order(), {0, 1});
  p.links.assign(2, trivial_subgroup(c2));
  if (bad_links) p.links[1] = whole_group(c2);
  return poset_to_json(p);
}

std::vector<std::pair<int, std::vector<long long>>> homology_pairs(const Json& rep) {
  std::vector<std::pair<int, std::vector<long long>>> out;
  for (const auto& h : rep.at("homology"))
    out.emplace_back(h.at("rank").get<int>(),
                     h.at("torsion").get<std::vector<long long>>());
  return out;
}

}  // namespace

TEST_CASE("borel-tits pipeline verifies the orbit category comparison") {
  auto res = run_pipeline("borel-tits", gl_spec(2, 2), {});
  CHECK(res.exit_code == 0);
  CHECK(res.report.at("isomorphism") == true);
  CHECK(res.report.at("group_order") == 6);
  CHECK(res.report.at("radicals") == 4);
  CHECK(res.report.at("passed") == true);

  // only the generator-spec form makes sense here
  auto direct = run_pipeline("borel-tits", chain_poset_doc(false), {});
  CHECK(direct.exit_code == 2);
  CHECK(direct.report.contains("error"));
}

TEST_CASE("pi1 pipeline reports the quotient comparison") {
  auto res = run_pipeline("pi1", gl_spec(2, 3), {});
  CHECK(res.exit_code == 0);
  CHECK(res.report.at("quotient_order") == 2);
  CHECK(res.report.at("passed") == true);
  CHECK(res.report.at("enumeration").at("completed") == true);
  CHECK(res.report.at("enumeration").at("index") == 2);

  auto triv = run_pipeline("pi1", gl_spec(2, 2, "trivial"), {});
  CHECK(triv.exit_code == 0);
  CHECK(triv.report.at("quotient_order") == 6);
  CHECK(triv.report.at("enumeration").at("index") == 6);

  JobParams bad;
  bad.basepoint = "nonexistent-object";
  auto miss = run_pipeline("pi1", gl_spec(2, 2), bad);
  CHECK(miss.exit_code == 2);

  JobParams named;
  named.basepoint = "()";
  auto top = run_pipeline("pi1", gl_spec(2, 2), named);
  CHECK(top.exit_code == 0);
  CHECK(top.report.at("quotient_order") == 1);
}

TEST_CASE("homology pipeline emits chain sizes, ranks and torsion") {
  JobParams prm;
  prm.degree = 2;
  auto res = run_pipeline("homology", gl_spec(2, 2, "trivial"), prm);
  CHECK(res.exit_code == 0);
  CHECK(res.report.at("chains") == Json({4, 38, 280, 1850}));
  CHECK(res.report.at("boundaries_square_to_zero") == true);
  auto hs = homology_pairs(res.report);
  REQUIRE(hs.size() == 3);
  CHECK(hs[0] == std::pair<int, std::vector<long long>>{1, {}});
  CHECK(hs[1] == std::pair<int, std::vector<long long>>{0, {2}});
  CHECK(hs[2] == std::pair<int, std::vector<long long>>{0, {}});

  JobParams one;
  one.degree = 1;
  auto graded = run_pipeline("homology", gl_spec(2, 2), one);
  CHECK(graded.exit_code == 0);
  auto gh = homology_pairs(graded.report);
  REQUIRE(gh.size() == 2);
  CHECK(gh[0].first == 1);
  CHECK(gh[1].first == 0);
  CHECK(gh[1].second.empty());

  JobParams neg;
  neg.degree = -1;
  CHECK(run_pipeline("homology", gl_spec(2, 2), neg).exit_code == 2);

  JobParams tight;
  tight.degree = 2;
  tight.max_chains = 100;
  auto capped = run_pipeline("homology", gl_spec(2, 2, "trivial"), tight);
  CHECK(capped.exit_code == 2);
  CHECK(capped.report.at("error").get<std::string>().find("chains") != std::string::npos);
}

TEST_CASE("functor-homology pipeline cross-checks the plain nerve") {
  JobParams prm;
  prm.degree = 1;
  auto res = run_pipeline("functor-homology", gl_spec(2, 2), prm);
  CHECK(res.exit_code == 0);
  CHECK(res.report.at("matches_plain_nerve") == true);
  CHECK(res.report.at("rank") == 1);
  CHECK(res.report.at("prime") == 0);

  // mod-2 coefficients on the one-point S_3 poset: dimensions 1, 1, 1
  auto s3 = group_from_permutations(3, {{1, 0, 2}, {1, 2, 0}});
  GPoset pt;
  pt.group = s3;
  pt.items = {"*"};
  pt.leq = {{1}};
  pt.action.assign(s3->order(), {0});
  pt.links = {trivial_subgroup(s3)};
  JobParams mod2;
  mod2.degree = 2;
  mod2.prime = 2;
  auto f2 = run_pipeline("functor-homology", poset_to_json(pt), mod2);
  CHECK(f2.exit_code == 0);
  auto hs = homology_pairs(f2.report);
  REQUIRE(hs.size() == 3);
  for (const auto& h : hs) {
    CHECK(h.first == 1);
    CHECK(h.second.empty());
  }

  JobParams badp;
  badp.prime = 6;
  CHECK(run_pipeline("functor-homology", gl_spec(2, 2), badp).exit_code == 2);
}

TEST_CASE("radicals pipeline accepts specs and raw group descriptors") {
  auto res = run_pipeline("radicals", gl_spec(2, 2), {});
  CHECK(res.exit_code == 0);
  CHECK(res.report.at("count") == 4);
  auto ords = res.report.at("orders").get<std::vector<int>>();
  std::sort(ords.begin(), ords.end());
  CHECK(ords == std::vector<int>{1, 2, 2, 2});

  Json desc = {{"group", group_to_json(*group_from_permutations(3, {{1, 0, 2}, {1, 2, 0}}))}};
  JobParams prm;
  prm.p = 2;
  auto s3 = run_pipeline("radicals", desc, prm);
  CHECK(s3.exit_code == 0);
  CHECK(s3.report.at("count") == 4);

  // descriptor form without a prime is a usage error
  auto nop = run_pipeline("radicals", desc, {});
  CHECK(nop.exit_code == 2);

  Json singular = {{"group",
                    {{"type", "matrix"}, {"degree", 2}, {"p", 2}, {"generators", {{1, 0, 1, 0}}}}}};
  auto sing = run_pipeline("radicals", singular, prm);
  CHECK(sing.exit_code == 2);
  CHECK(sing.report.at("pointer") == "/group/generators/0");
}

TEST_CASE("validate pipeline separates mathematical failures from bad input") {
  auto fp = run_pipeline("flagposet", gl_spec(2, 2), {});
  REQUIRE(fp.exit_code == 0);
  CHECK(run_pipeline("validate", fp.report, {}).exit_code == 0);

  Json corrupt = fp.report;
  corrupt["action"][1][0] = corrupt["action"][1][1];
  auto bad = run_pipeline("validate", corrupt, {});
  CHECK(bad.exit_code == 1);
  CHECK(bad.report.at("passed") == false);
  CHECK(bad.report.at("action").at("violations").size() > 0);

  auto mono = run_pipeline("validate", chain_poset_doc(true), {});
  CHECK(mono.exit_code == 1);
  std::string txt = mono.report.at("links").at("violations").dump();
  CHECK(txt.find("monotonic") != std::string::npos);

  Json broken = fp.report;
  broken["items"][0] = 5;
  auto schema = run_pipeline("validate", broken, {});
  CHECK(schema.exit_code == 2);
  CHECK(schema.report.at("pointer") == "/items/0");
}

TEST_CASE("build-cat pipeline rejects invalid actions and dumps categories verbatim") {
  auto bad = run_pipeline("build-cat", chain_poset_doc(true), {});
  CHECK(bad.exit_code == 1);

  auto good = run_pipeline("build-cat", chain_poset_doc(false), {});
  REQUIRE(good.exit_code == 0);
  GPoset p = poset_from_json(chain_poset_doc(false));
  CHECK(good.report == category_to_json(build_category(p)));

  auto again = run_pipeline("build-cat", chain_poset_doc(false), {});
  CHECK(good.report.dump() == again.report.dump());
}

TEST_CASE("flagposet pipeline emits descriptors that load back") {
  auto res = run_pipeline("flagposet", gl_spec(2, 3), {});
  REQUIRE(res.exit_code == 0);
  GPoset p = poset_from_json(res.report);
  CHECK(p.items.size() == 5);  // four lines in F_3^2 plus the empty flag
  CHECK(validate_action(p).passed());
  CHECK(validate_links(p).passed());

  auto triv = run_pipeline("flagposet", gl_spec(2, 3, "trivial"), {});
  REQUIRE(triv.exit_code == 0);
  GPoset t = poset_from_json(triv.report);
  for (const auto& l : t.links) CHECK(l.members.size() == 1);

  CHECK(run_pipeline("flagposet", chain_poset_doc(false), {}).exit_code == 2);
  CHECK(run_pipeline("flagposet", gl_spec(2, 2, "weird"), {}).report.at("pointer") == "/links");
}

TEST_CASE("unknown pipelines and malformed specs exit with code 2") {
  auto unk = run_pipeline("no-such-pipeline", gl_spec(2, 2), {});
  CHECK(unk.exit_code == 2);
  CHECK(unk.report.contains("error"));

  auto badf = run_pipeline("build-cat", Json{{"family", "SL"}, {"n", 2}, {"p", 2}}, {});
  CHECK(badf.exit_code == 2);
  CHECK(badf.report.at("pointer") == "/family");

  auto badp = run_pipeline("build-cat", Json{{"family", "GL"}, {"n", 2}, {"p", 4}}, {});
  CHECK(badp.exit_code == 2);
  CHECK(badp.report.at("pointer") == "/p");
}

TEST_CASE("write_json_atomic leaves no partial files") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "gpcat_pipeline_test";
  fs::create_directories(dir);
  fs::path out = dir / "report.json";

  Json doc = {{"k", 1}};
  write_json_atomic(doc, out.string());
  std::ifstream in(out);
  Json back = Json::parse(in);
  CHECK(back == doc);
  CHECK(!fs::exists(out.string() + ".tmp"));

  Json doc2 = {{"k", 2}};
  write_json_atomic(doc2, out.string());
  std::ifstream in2(out);
  CHECK(Json::parse(in2) == doc2);

  fs::path missing = dir / "no" / "such" / "dir" / "x.json";
  CHECK_THROWS_AS(write_json_atomic(doc, missing.string()), InvalidArgument);
  fs::remove_all(dir);
}
