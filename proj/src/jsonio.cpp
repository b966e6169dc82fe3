#include "gpcat/jsonio.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace gpcat {

namespace {

std::string ptr(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string ptr(const std::string& base, std::size_t idx) {
  return base + "/" + std::to_string(idx);
}

[[noreturn]] void bad(const std::string& msg, const std::string& at) {
  throw SchemaError(at.empty() ? "/" : at, msg);
}

const Json& need(const Json& j, const std::string& key, const std::string& at) {
  if (!j.is_object()) bad("expected an object", at);
  auto it = j.find(key);
  if (it == j.end()) bad("missing required key '" + key + "'", at);
  return *it;
}

int need_int(const Json& j, const std::string& at) {
  if (!j.is_number_integer()) bad("expected an integer", at);
  return j.get<int>();
}

bool singular_mod_p(std::vector<int> m, int n, int p) {
  for (auto& x : m) x = ((x % p) + p) % p;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (m[i * n + col] != 0) { piv = i; break; }
    if (piv < 0) return true;
    for (int e = 0; e < n; ++e) std::swap(m[col * n + e], m[piv * n + e]);
    int vi = 1;
    for (int x = 1; x < p; ++x)
      if (x * m[col * n + col] % p == 1) { vi = x; break; }
    for (int e = 0; e < n; ++e) m[col * n + e] = m[col * n + e] * vi % p;
    for (int i = col + 1; i < n; ++i) {
      int f = m[i * n + col];
      if (f == 0) continue;
      for (int e = 0; e < n; ++e)
        m[i * n + e] = ((m[i * n + e] - f * m[col * n + e]) % p + p) % p;
    }
  }
  return false;
}

long long torsion_entry(const BigInt& d) {
  // Torsion in every case this tool can build fits comfortably; guard anyway.
  if (d > BigInt(std::numeric_limits<long long>::max()))
    throw InvalidArgument("torsion factor too large to serialize");
  return d.convert_to<long long>();
}

}  // namespace

Json group_to_json(const FinGroup& g) {
  Json j;
  switch (g.kind) {
    case FinGroup::Kind::Perm: j["type"] = "perm"; break;
    case FinGroup::Kind::Matrix: j["type"] = "matrix"; break;
    default:
      throw InvalidArgument("group_to_json: coset groups have no serialized form");
  }
  j["degree"] = g.degree;
  if (g.kind == FinGroup::Kind::Matrix) j["p"] = g.prime;
  Json gens = Json::array();
  for (int e : g.generators) gens.push_back(g.forms[e]);
  j["generators"] = std::move(gens);
  return j;
}

GroupPtr group_from_json(const Json& j, const std::string& at, std::size_t max_order) {
  const Json& type = need(j, "type", at);
  if (!type.is_string()) bad("expected a string", ptr(at, "type"));
  const std::string kind = type.get<std::string>();
  if (kind != "perm" && kind != "matrix")
    bad("type must be 'perm' or 'matrix'", ptr(at, "type"));

  int degree = need_int(need(j, "degree", at), ptr(at, "degree"));
  if (degree < 1) bad("degree must be positive", ptr(at, "degree"));

  int p = 0;
  if (kind == "matrix") {
    p = need_int(need(j, "p", at), ptr(at, "p"));
    if (!is_prime(p)) bad("p must be prime", ptr(at, "p"));
  }

  const Json& gens = need(j, "generators", at);
  if (!gens.is_array()) bad("expected an array", ptr(at, "generators"));
  const std::size_t width =
      kind == "perm" ? static_cast<std::size_t>(degree)
                     : static_cast<std::size_t>(degree) * static_cast<std::size_t>(degree);

  std::vector<std::vector<int>> forms;
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    const std::string gat = ptr(ptr(at, "generators"), gi);
    const Json& gen = gens[gi];
    if (!gen.is_array() || gen.size() != width)
      bad("generator must be an array of " + std::to_string(width) +
                            " integers",
                        gat);
    std::vector<int> form(width);
    for (std::size_t e = 0; e < width; ++e) {
      form[e] = need_int(gen[e], ptr(gat, e));
      if (kind == "matrix") form[e] = ((form[e] % p) + p) % p;
    }
    if (kind == "perm") {
      std::vector<char> hit(degree, 0);
      for (std::size_t e = 0; e < width; ++e) {
        if (form[e] < 0 || form[e] >= degree)
          bad("image out of range", ptr(gat, e));
        if (hit[form[e]]) bad("repeated image, not a permutation", ptr(gat, e));
        hit[form[e]] = 1;
      }
    }
    forms.push_back(std::move(form));
  }

  if (kind == "perm") return group_from_permutations(degree, forms, max_order);
  try {
    return group_from_matrices(degree, p, forms, max_order);
  } catch (const NotInvertible&) {
    // Find the offending generator again so the pointer names it.
    for (std::size_t gi = 0; gi < forms.size(); ++gi)
      if (singular_mod_p(forms[gi], degree, p))
        bad("generator matrix is singular mod p",
                          ptr(ptr(at, "generators"), gi));
    bad("generator matrix is singular mod p", ptr(at, "generators"));
  }
}

Json poset_to_json(const GPoset& p) {
  Json j;
  j["format"] = kFormatVersion;
  j["group"] = group_to_json(*p.group);
  j["items"] = p.items;
  Json pairs = Json::array();
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t k = 0; k < p.size(); ++k)
      if (p.leq[i][k]) pairs.push_back(Json::array({i, k}));
  j["leq"] = std::move(pairs);
  j["action"] = p.action;
  Json links = Json::object();
  for (std::size_t i = 0; i < p.size(); ++i) links[p.items[i]] = p.links[i].members;
  j["links"] = std::move(links);
  return j;
}

GPoset poset_from_json(const Json& j, std::size_t max_order) {
  if (!j.is_object()) bad("expected an object", "");
  if (auto it = j.find("format"); it != j.end()) {
    if (!it->is_number_integer() || it->get<int>() != kFormatVersion)
      bad("unsupported format version", "/format");
  }

  GPoset p;
  p.group = group_from_json(need(j, "group", ""), "/group", max_order);

  const Json& items = need(j, "items", "");
  if (!items.is_array() || items.empty()) bad("expected a nonempty array", "/items");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!items[i].is_string()) bad("item name must be a string", ptr("/items", i));
    std::string name = items[i].get<std::string>();
    if (!seen.insert(name).second) bad("duplicate item name", ptr("/items", i));
    p.items.push_back(std::move(name));
  }
  const int n = static_cast<int>(p.items.size());

  const Json& leq = need(j, "leq", "");
  if (!leq.is_array()) bad("expected an array of pairs", "/leq");
  p.leq.assign(n, std::vector<char>(n, 0));
  for (std::size_t e = 0; e < leq.size(); ++e) {
    const std::string eat = ptr("/leq", e);
    if (!leq[e].is_array() || leq[e].size() != 2)
      bad("expected a pair [i, j]", eat);
    int a = need_int(leq[e][0], ptr(eat, 0));
    int b = need_int(leq[e][1], ptr(eat, 1));
    if (a < 0 || a >= n) bad("item index out of range", ptr(eat, 0));
    if (b < 0 || b >= n) bad("item index out of range", ptr(eat, 1));
    p.leq[a][b] = 1;
  }

  const Json& action = need(j, "action", "");
  if (!action.is_array() || action.size() != p.group->order())
    bad("action table needs one row per group element", "/action");
  for (std::size_t g = 0; g < action.size(); ++g) {
    const std::string gat = ptr("/action", g);
    if (!action[g].is_array() || action[g].size() != static_cast<std::size_t>(n))
      bad("action row needs one entry per item", gat);
    std::vector<int> row(n);
    for (int i = 0; i < n; ++i) {
      row[i] = need_int(action[g][i], ptr(gat, i));
      if (row[i] < 0 || row[i] >= n)
        bad("item index out of range", ptr(gat, i));
    }
    p.action.push_back(std::move(row));
  }

  p.links.assign(n, trivial_subgroup(p.group));
  if (auto it = j.find("links"); it != j.end()) {
    if (!it->is_object()) bad("expected an object keyed by item name", "/links");
    for (const auto& [key, value] : it->items()) {
      auto pos = std::find(p.items.begin(), p.items.end(), key);
      if (pos == p.items.end())
        bad("link key is not an item name", ptr("/links", key));
      const std::string lat = ptr("/links", key);
      if (!value.is_array()) bad("expected an array of element indices", lat);
      std::vector<int> seed;
      for (std::size_t e = 0; e < value.size(); ++e) {
        int v = need_int(value[e], ptr(lat, e));
        if (v < 0 || v >= static_cast<int>(p.group->order()))
          bad("element index out of range", ptr(lat, e));
        seed.push_back(v);
      }
      p.links[pos - p.items.begin()] = subgroup_generate(p.group, seed);
    }
  }
  return p;
}

Json category_to_json(const QuotCategory& c) {
  Json j;
  j["format"] = kFormatVersion;
  j["objects"] = c.objects;
  j["representative_product"] = c.second_first ? "second*first" : "first*second";
  j["identity_class"] = c.identity_class;

  Json hom = Json::array();
  for (std::size_t i = 0; i < c.num_objects(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < c.num_objects(); ++k) {
      Json classes = Json::array();
      for (const auto& cls : c.hom[i][k].classes) {
        Json entry;
        entry["rep"] = cls.rep();
        entry["members"] = cls.members;
        classes.push_back(std::move(entry));
      }
      row.push_back(std::move(classes));
    }
    hom.push_back(std::move(row));
  }
  j["hom"] = std::move(hom);

  Json comp = Json::array();
  for (std::size_t i = 0; i < c.num_objects(); ++i)
    for (std::size_t k = 0; k < c.num_objects(); ++k)
      for (std::size_t l = 0; l < c.num_objects(); ++l) {
        if (c.hom[i][k].classes.empty() || c.hom[k][l].classes.empty()) continue;
        Json entry;
        entry["i"] = i;
        entry["j"] = k;
        entry["k"] = l;
        entry["table"] = c.comp[i][k][l];
        comp.push_back(std::move(entry));
      }
  j["composition"] = std::move(comp);
  return j;
}

Json homology_to_json(const HomologyResult& h) {
  Json j;
  j["degree"] = h.degree;
  j["rank"] = h.rank;
  Json tor = Json::array();
  for (const auto& d : h.torsion) tor.push_back(torsion_entry(d));
  j["torsion"] = std::move(tor);
  return j;
}

Json presentation_to_json(const Presentation& p) {
  Json j;
  j["format"] = kFormatVersion;
  j["basepoint"] = p.basepoint;
  Json gens = Json::array();
  for (const auto& g : p.generators) {
    Json e;
    e["name"] = g.name;
    e["source"] = g.src;
    e["target"] = g.dst;
    e["class"] = g.cls;
    e["representative"] = g.rep;
    gens.push_back(std::move(e));
  }
  j["generators"] = std::move(gens);
  j["relators"] = p.relators;
  Json tree = Json::array();
  for (std::size_t g = 0; g < p.in_tree.size(); ++g)
    if (p.in_tree[g]) tree.push_back(g);
  j["tree"] = std::move(tree);
  return j;
}

Json report_to_json(const Report& r) {
  Json j;
  j["passed"] = r.passed();
  j["violations"] = r.violations;
  j["total_violations"] = r.total_violations;
  j["notes"] = r.notes;
  return j;
}

}  // namespace gpcat
