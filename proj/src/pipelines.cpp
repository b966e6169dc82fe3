#include "gpcat/pipelines.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "gpcat/lietype.hpp"

namespace gpcat {

namespace {

bool is_spec(const Json& in) { return in.is_object() && in.contains("family"); }

struct ExpandedSpec {
  FlagData fd;
  bool graded = true;
};

ExpandedSpec expand_spec(const Json& in, const JobParams& prm) {
  auto fam = in.find("family");
  if (!fam->is_string() || fam->get<std::string>() != "GL")
    throw SchemaError("/family", "only the GL family is supported");
  auto n = in.find("n");
  if (n == in.end() || !n->is_number_integer() || n->get<int>() < 1)
    throw SchemaError("/n", "n must be a positive integer");
  auto p = in.find("p");
  if (p == in.end() || !p->is_number_integer() || !is_prime(p->get<int>()))
    throw SchemaError("/p", "p must be prime");

  ExpandedSpec out{flag_gposet(n->get<int>(), p->get<int>(), prm.max_order), true};
  if (auto links = in.find("links"); links != in.end()) {
    if (!links->is_string() ||
        (links->get<std::string>() != "graded" && links->get<std::string>() != "trivial"))
      throw SchemaError("/links", "links must be 'graded' or 'trivial'");
    out.graded = links->get<std::string>() == "graded";
  }
  return out;
}

GPoset load_poset(const Json& in, const JobParams& prm) {
  if (is_spec(in)) {
    ExpandedSpec s = expand_spec(in, prm);
    return s.graded ? s.fd.poset : with_trivial_links(s.fd.poset);
  }
  return poset_from_json(in, prm.max_order);
}

int resolve_basepoint(const QuotCategory& c, const std::string& name) {
  if (name.empty()) return 0;
  auto it = std::find(c.objects.begin(), c.objects.end(), name);
  if (it == c.objects.end())
    throw InvalidArgument("no object named '" + name + "'");
  return static_cast<int>(it - c.objects.begin());
}

Json header(const std::string& pipeline) {
  Json j;
  j["format"] = kFormatVersion;
  j["pipeline"] = pipeline;
  return j;
}

Json enum_to_json(const EnumResult& e) {
  Json j;
  j["completed"] = e.completed;
  j["index"] = e.index;
  j["cosets_defined"] = e.cosets_defined;
  return j;
}

JobResult run_validate(const Json& in, const JobParams& prm) {
  GPoset p = load_poset(in, prm);
  Report action = validate_action(p);
  Report links = validate_links(p);
  JobResult out;
  out.report = header("validate");
  out.report["action"] = report_to_json(action);
  out.report["links"] = report_to_json(links);
  bool ok = action.passed() && links.passed();
  out.report["passed"] = ok;
  out.exit_code = ok ? 0 : 1;
  return out;
}

JobResult run_build_cat(const Json& in, const JobParams& prm) {
  QuotCategory c = build_category(load_poset(in, prm));
  return {0, category_to_json(c)};
}

JobResult run_borel_tits(const Json& in, const JobParams& prm) {
  if (!is_spec(in))
    throw InvalidArgument("borel-tits needs a generator spec with a 'family' key");
  ExpandedSpec s = expand_spec(in, prm);
  QuotCategory crbs = build_category(s.fd.poset);
  BorelTitsData bt = borel_tits_functors(s.fd, crbs);

  JobResult out;
  out.report = header("borel-tits");
  out.report["family"] = "GL";
  out.report["n"] = s.fd.n;
  out.report["p"] = s.fd.p;
  out.report["group_order"] = s.fd.group->order();
  out.report["flags"] = s.fd.flags.size();
  out.report["radicals"] = bt.radicals.size();
  out.report["isomorphism"] = bt.report.passed();
  out.report["passed"] = bt.report.passed();
  out.report["details"] = report_to_json(bt.report);
  out.exit_code = bt.report.passed() ? 0 : 1;
  return out;
}

JobResult run_pi1(const Json& in, const JobParams& prm) {
  GPoset p = load_poset(in, prm);
  QuotCategory c = build_category(p);
  int base = resolve_basepoint(c, prm.basepoint);
  Pi1Check chk = pi1_vs_quotient(p, c, base, prm.max_cosets);

  JobResult out;
  out.report = header("pi1");
  out.report["presentation"] = presentation_to_json(chk.pres);
  out.report["normal_closure_order"] = chk.normal_e.order();
  out.report["quotient_order"] = chk.quotient->order();
  out.report["enumeration"] = enum_to_json(chk.enumeration);
  out.report["check"] = report_to_json(chk.report);
  bool ok = chk.report.passed();
  out.report["passed"] = ok;
  out.exit_code = ok ? 0 : 1;
  return out;
}

JobResult run_homology(const Json& in, const JobParams& prm) {
  if (prm.degree < 0) throw InvalidArgument("degree must be nonnegative");
  QuotCategory c = build_category(load_poset(in, prm));
  ChainComplex cx = nerve_chains(c, prm.degree + 1, prm.max_chains);

  JobResult out;
  out.report = header("homology");
  Json sizes = Json::array();
  for (int k = 0; k <= cx.top; ++k) sizes.push_back(cx.size(k));
  out.report["chains"] = std::move(sizes);
  Report dd = verify_boundaries(cx);
  out.report["boundaries_square_to_zero"] = dd.passed();
  Json hs = Json::array();
  for (int k = 0; k <= prm.degree; ++k) hs.push_back(homology_to_json(homology(cx, k)));
  out.report["homology"] = std::move(hs);
  out.exit_code = dd.passed() ? 0 : 1;
  return out;
}

JobResult run_functor_homology(const Json& in, const JobParams& prm) {
  if (prm.degree < 0) throw InvalidArgument("degree must be nonnegative");
  if (prm.rank < 0) throw InvalidArgument("rank must be nonnegative");
  if (prm.prime != 0 && !is_prime(prm.prime))
    throw InvalidArgument("coefficient prime must be 0 (integers) or a prime number");
  QuotCategory c = build_category(load_poset(in, prm));
  ChainComplex cx = nerve_chains(c, prm.degree + 1, prm.max_chains);
  CoefficientFunctor f = constant_functor(c, prm.rank);
  f.prime = prm.prime;

  JobResult out;
  out.report = header("functor-homology");
  out.report["rank"] = prm.rank;
  out.report["prime"] = prm.prime;
  Json hs = Json::array();
  for (int k = 0; k <= prm.degree; ++k) hs.push_back(homology_to_json(functor_homology(cx, f, k)));
  out.report["homology"] = std::move(hs);

  if (prm.rank == 1 && prm.prime == 0) {
    bool agrees = true;
    for (int k = 0; k <= prm.degree; ++k) {
      HomologyResult plain = homology(cx, k);
      HomologyResult with = functor_homology(cx, f, k);
      if (plain.rank != with.rank || plain.torsion != with.torsion) agrees = false;
    }
    out.report["matches_plain_nerve"] = agrees;
    if (!agrees) out.exit_code = 1;
  }
  return out;
}

JobResult run_radicals(const Json& in, const JobParams& prm) {
  GroupPtr g;
  int p = 0;
  if (is_spec(in)) {
    ExpandedSpec s = expand_spec(in, prm);
    g = s.fd.group;
    p = s.fd.p;
  } else {
    auto git = in.is_object() ? in.find("group") : in.end();
    if (git == in.end()) throw SchemaError("/group", "missing group descriptor");
    g = group_from_json(*git, "/group", prm.max_order);
    p = prm.p;
    if (!is_prime(p))
      throw InvalidArgument("descriptor input needs a prime --p");
  }
  RadicalCollection rc = exhaustive_radical_enumeration(g, p, prm.radical_max_order);

  JobResult out;
  out.report = header("radicals");
  out.report["p"] = p;
  out.report["group_order"] = g->order();
  out.report["count"] = rc.size();
  Json orders = Json::array();
  Json members = Json::array();
  for (const auto& u : rc.members) {
    orders.push_back(u.order());
    members.push_back(u.members);
  }
  out.report["orders"] = std::move(orders);
  out.report["members"] = std::move(members);
  return out;
}

JobResult run_flagposet(const Json& in, const JobParams& prm) {
  if (!is_spec(in))
    throw InvalidArgument("flagposet needs a generator spec with a 'family' key");
  ExpandedSpec s = expand_spec(in, prm);
  return {0, poset_to_json(s.graded ? s.fd.poset : with_trivial_links(s.fd.poset))};
}

bool verified_mathematical_failure(const Error& e) {
  return dynamic_cast<const ValidationFailed*>(&e) != nullptr ||
         dynamic_cast<const NotAPartialOrder*>(&e) != nullptr ||
         dynamic_cast<const LinkNotInStabilizer*>(&e) != nullptr ||
         dynamic_cast<const NotNormal*>(&e) != nullptr ||
         dynamic_cast<const NotRadical*>(&e) != nullptr ||
         dynamic_cast<const NotFunctorial*>(&e) != nullptr ||
         dynamic_cast<const NotBijection*>(&e) != nullptr ||
         dynamic_cast<const DisconnectedBasepoint*>(&e) != nullptr;
}

}  // namespace

JobResult run_pipeline(const std::string& pipeline, const Json& input,
                       const JobParams& params) {
  try {
    if (pipeline == "validate") return run_validate(input, params);
    if (pipeline == "build-cat") return run_build_cat(input, params);
    if (pipeline == "borel-tits") return run_borel_tits(input, params);
    if (pipeline == "pi1") return run_pi1(input, params);
    if (pipeline == "homology") return run_homology(input, params);
    if (pipeline == "functor-homology") return run_functor_homology(input, params);
    if (pipeline == "radicals") return run_radicals(input, params);
    if (pipeline == "flagposet") return run_flagposet(input, params);
    Json rep = header(pipeline);
    rep["error"] = "unknown pipeline '" + pipeline + "'";
    return {2, rep};
  } catch (const SchemaError& e) {
    Json rep = header(pipeline);
    rep["error"] = e.what();
    rep["pointer"] = e.pointer;
    return {2, rep};
  } catch (const Error& e) {
    Json rep = header(pipeline);
    rep["error"] = e.what();
    return {verified_mathematical_failure(e) ? 1 : 2, rep};
  } catch (const std::exception& e) {
    Json rep = header(pipeline);
    rep["error"] = e.what();
    return {2, rep};
  }
}

void write_json_atomic(const Json& j, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw InvalidArgument("cannot open '" + tmp + "' for writing");
    out << j.dump(2) << "\n";
    out.flush();
    if (!out) throw InvalidArgument("short write to '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw InvalidArgument("cannot move report into '" + path + "'");
  }
}

}  // namespace gpcat
