#include "gpcat/lietype.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>

namespace gpcat {

namespace {

int inv_mod(int a, int p) {
  int r = 1, base = ((a % p) + p) % p;
  for (int e = p - 2; e > 0; e >>= 1) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
  }
  return r;
}

// v minus its projection onto the span of RREF rows (pivots are 1, so a
// single pass clears every pivot column).
std::vector<int> reduce_by_flat(const std::vector<int>& flat, int nrows, int n, int p,
                                std::vector<int> v) {
  for (int r = 0; r < nrows; ++r) {
    int c = 0;
    while (c < n && flat[r * n + c] == 0) ++c;
    if (c == n) continue;
    int coef = v[c] % p;
    if (coef == 0) continue;
    for (int k = 0; k < n; ++k)
      v[k] = ((v[k] - coef * flat[r * n + k]) % p + p) % p;
  }
  return v;
}

bool is_zero(const std::vector<int>& v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

std::vector<int> mat_vec(const std::vector<int>& m, const std::vector<int>& v, int n,
                         int p) {
  std::vector<int> w(n, 0);
  for (int i = 0; i < n; ++i) {
    long long acc = 0;
    for (int k = 0; k < n; ++k) acc += m[i * n + k] * v[k];
    w[i] = static_cast<int>(acc % p);
  }
  return w;
}

std::vector<int> flatten(const std::vector<std::vector<int>>& rows) {
  std::vector<int> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return flat;
}

// Graded unipotent subgroup of a chain: pick a basis adapted to the chain
// (each vector tagged with the first chain member containing it, the full
// space counting as the last level) and keep the elements moving every
// adapted vector by something in the previous level.
Subgroup graded_link_impl(const SubspaceSet& s, const GroupPtr& group,
                          const std::vector<int>& chain) {
  const FinGroup& G = *group;
  const int n = s.n, p = s.p;
  const int k = static_cast<int>(chain.size());

  std::vector<std::pair<std::vector<int>, int>> adapted;  // vector, level 1..k+1
  std::vector<std::vector<int>> accum;
  auto feed = [&](std::vector<int> v, int level) {
    std::vector<int> w = reduce_by_flat(flatten(accum), static_cast<int>(accum.size()),
                                        n, p, std::move(v));
    if (is_zero(w)) return;
    adapted.emplace_back(w, level);
    accum.push_back(std::move(w));
    accum = rref_mod_p(std::move(accum), n, p);
  };
  for (int l = 1; l <= k; ++l) {
    const auto& flat = s.basis[chain[l - 1]];
    int d = s.dim[chain[l - 1]];
    for (int r = 0; r < d; ++r)
      feed(std::vector<int>(flat.begin() + r * n, flat.begin() + (r + 1) * n), l);
  }
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    feed(std::move(e), k + 1);
  }

  // previous-level basis per level: level 1 sits over the zero space
  std::vector<const std::vector<int>*> lower(k + 2, nullptr);
  std::vector<int> lower_rows(k + 2, 0);
  for (int l = 2; l <= k + 1; ++l) {
    lower[l] = &s.basis[chain[l - 2]];
    lower_rows[l] = s.dim[chain[l - 2]];
  }

  std::vector<int> members;
  for (std::size_t g = 0; g < G.order(); ++g) {
    const auto& m = G.forms[g];
    bool ok = true;
    for (const auto& [vec, level] : adapted) {
      std::vector<int> diff = mat_vec(m, vec, n, p);
      for (int i = 0; i < n; ++i) diff[i] = ((diff[i] - vec[i]) % p + p) % p;
      if (lower[level])
        diff = reduce_by_flat(*lower[level], lower_rows[level], n, p, std::move(diff));
      if (!is_zero(diff)) { ok = false; break; }
    }
    if (ok) members.push_back(static_cast<int>(g));
  }
  return Subgroup{group, std::move(members)};
}

std::string radical_name(int i) { return "R" + std::to_string(i); }

}  // namespace

int SubspaceSet::index_of(const std::vector<int>& rref_rows) const {
  auto it = index.find(rref_rows);
  return it == index.end() ? -1 : it->second;
}

std::vector<std::vector<int>> rref_mod_p(std::vector<std::vector<int>> rows, int ncols,
                                         int p) {
  for (auto& row : rows)
    for (auto& x : row) x = ((x % p) + p) % p;
  std::size_t r = 0;
  for (int c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    int iv = inv_mod(rows[r][c], p);
    for (int k = 0; k < ncols; ++k) rows[r][k] = rows[r][k] * iv % p;
    for (std::size_t q = 0; q < rows.size(); ++q) {
      if (q == r || rows[q][c] == 0) continue;
      int f = rows[q][c];
      for (int k = 0; k < ncols; ++k)
        rows[q][k] = ((rows[q][k] - f * rows[r][k]) % p + p) % p;
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

SubspaceSet enumerate_subspaces(int n, int p) {
  if (n < 1 || n > 4)
    throw ScaleGuard("enumerate_subspaces: dimension " + std::to_string(n) +
                     " outside 1..4");
  if (p != 2 && p != 3 && p != 5)
    throw ScaleGuard("enumerate_subspaces: field size " + std::to_string(p) +
                     " not one of 2, 3, 5");

  SubspaceSet s;
  s.n = n;
  s.p = p;
  for (int d = 1; d < n; ++d) {
    std::vector<std::vector<int>> block;
    for (int mask = 0; mask < (1 << n); ++mask) {
      if (__builtin_popcount(mask) != d) continue;
      std::vector<int> pivots;
      for (int c = 0; c < n; ++c)
        if (mask & (1 << c)) pivots.push_back(c);
      std::vector<std::pair<int, int>> free_pos;
      for (int r = 0; r < d; ++r)
        for (int c = pivots[r] + 1; c < n; ++c)
          if (!(mask & (1 << c))) free_pos.emplace_back(r, c);

      std::vector<int> vals(free_pos.size(), 0);
      for (;;) {
        std::vector<int> flat(d * n, 0);
        for (int r = 0; r < d; ++r) flat[r * n + pivots[r]] = 1;
        for (std::size_t t = 0; t < free_pos.size(); ++t)
          flat[free_pos[t].first * n + free_pos[t].second] = vals[t];
        block.push_back(std::move(flat));

        std::size_t t = 0;
        while (t < vals.size() && vals[t] == p - 1) vals[t++] = 0;
        if (t == vals.size()) break;
        ++vals[t];
      }
    }
    std::sort(block.begin(), block.end());
    for (auto& flat : block) {
      s.dim.push_back(d);
      s.basis.push_back(std::move(flat));
    }
  }
  for (std::size_t i = 0; i < s.basis.size(); ++i)
    s.index[s.basis[i]] = static_cast<int>(i);
  return s;
}

bool subspace_leq(const SubspaceSet& s, int a, int b) {
  if (a == b) return true;
  if (s.dim[a] > s.dim[b]) return false;
  const auto& fa = s.basis[a];
  for (int r = 0; r < s.dim[a]; ++r) {
    std::vector<int> v(fa.begin() + r * s.n, fa.begin() + (r + 1) * s.n);
    if (!is_zero(reduce_by_flat(s.basis[b], s.dim[b], s.n, s.p, std::move(v))))
      return false;
  }
  return true;
}

GroupPtr gl_group(int n, int p, std::size_t order_cap) {
  if (n < 1) throw InvalidArgument("gl_group: n must be positive");
  if (!is_prime(p)) throw InvalidArgument("gl_group: p must be prime");
  auto ident = [n] {
    std::vector<int> m(n * n, 0);
    for (int i = 0; i < n; ++i) m[i * n + i] = 1;
    return m;
  };
  std::vector<std::vector<int>> gens;
  if (n >= 2) {
    auto t = ident();
    t[1] = 1;  // elementary transvection on the first two coordinates
    gens.push_back(std::move(t));
    std::vector<int> c(n * n, 0);
    for (int i = 0; i < n; ++i) c[((i + 1) % n) * n + i] = 1;
    gens.push_back(std::move(c));
  }
  if (p > 2) {
    int r = 2;
    for (;; ++r) {
      int v = r % p, ord = 1;
      while (v != 1) { v = v * r % p; ++ord; }
      if (ord == p - 1) break;
    }
    auto dgen = ident();
    dgen[0] = r;
    gens.push_back(std::move(dgen));
  }
  return group_from_matrices(n, p, gens, order_cap);
}

FlagData flag_gposet(int n, int p, std::size_t order_cap) {
  FlagData fd;
  fd.n = n;
  fd.p = p;
  fd.spaces = enumerate_subspaces(n, p);
  fd.group = gl_group(n, p, order_cap);
  const FinGroup& G = *fd.group;
  const int S = static_cast<int>(fd.spaces.size());

  std::vector<std::vector<int>> sact(G.order(), std::vector<int>(S));
  for (std::size_t g = 0; g < G.order(); ++g) {
    const auto& m = G.forms[g];
    for (int s = 0; s < S; ++s) {
      const auto& flat = fd.spaces.basis[s];
      int d = fd.spaces.dim[s];
      std::vector<std::vector<int>> img(d);
      for (int r = 0; r < d; ++r)
        img[r] = mat_vec(m, std::vector<int>(flat.begin() + r * n,
                                             flat.begin() + (r + 1) * n),
                         n, p);
      int t = fd.spaces.index_of(flatten(rref_mod_p(std::move(img), n, p)));
      if (t < 0) throw Error("flag_gposet: subspace image not found");
      sact[g][s] = t;
    }
  }

  fd.flags.push_back({});
  std::vector<int> chain;
  std::function<void()> extend = [&] {
    for (int s = chain.empty() ? 0 : chain.back() + 1; s < S; ++s) {
      if (!chain.empty() && !subspace_leq(fd.spaces, chain.back(), s)) continue;
      chain.push_back(s);
      fd.flags.push_back(chain);
      extend();
      chain.pop_back();
    }
  };
  extend();
  std::sort(fd.flags.begin(), fd.flags.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a < b;
            });

  const int F = static_cast<int>(fd.flags.size());
  std::map<std::vector<int>, int> flag_index;
  for (int f = 0; f < F; ++f) flag_index[fd.flags[f]] = f;

  GPoset& po = fd.poset;
  po.group = fd.group;
  po.items.resize(F);
  for (int f = 0; f < F; ++f) {
    std::string name = "(";
    for (std::size_t t = 0; t < fd.flags[f].size(); ++t) {
      if (t) name += "<";
      name += std::to_string(fd.flags[f][t]);
    }
    name += ")";
    po.items[f] = std::move(name);
  }

  po.leq.assign(F, std::vector<char>(F, 0));
  for (int a = 0; a < F; ++a)
    for (int b = 0; b < F; ++b)
      po.leq[a][b] = std::includes(fd.flags[a].begin(), fd.flags[a].end(),
                                   fd.flags[b].begin(), fd.flags[b].end())
                         ? 1
                         : 0;

  po.action.assign(G.order(), std::vector<int>(F));
  for (std::size_t g = 0; g < G.order(); ++g)
    for (int f = 0; f < F; ++f) {
      std::vector<int> img;
      img.reserve(fd.flags[f].size());
      for (int s : fd.flags[f]) img.push_back(sact[g][s]);
      po.action[g][f] = flag_index.at(img);
    }

  po.links.reserve(F);
  for (int f = 0; f < F; ++f)
    po.links.push_back(graded_link_impl(fd.spaces, fd.group, fd.flags[f]));

  Report va = validate_action(po);
  if (!va.passed()) throw ValidationFailed("flag_gposet: action invalid: " + va.summary());
  Report vl = validate_links(po);
  if (!vl.passed()) throw ValidationFailed("flag_gposet: links invalid: " + vl.summary());
  return fd;
}

Subgroup flag_stabilizer(const FlagData& fd, int flag) {
  return stabilizer(fd.poset, flag);
}

Subgroup graded_link(const FlagData& fd, int flag) {
  return graded_link_impl(fd.spaces, fd.group, fd.flags[flag]);
}

bool verify_link_is_op(const FlagData& fd, int flag) {
  return o_p(flag_stabilizer(fd, flag), fd.p).members == fd.poset.links[flag].members;
}

bool verify_normalizer_is_parabolic(const FlagData& fd, int flag) {
  return normalizer(fd.poset.links[flag]).members ==
         flag_stabilizer(fd, flag).members;
}

bool p_radical_test(const Subgroup& u, int p) {
  std::size_t o = u.order();
  while (o % p == 0) o /= p;
  if (o != 1) return false;  // not a p-group
  return o_p(normalizer(u), p).members == u.members;
}

int RadicalCollection::index_of(const std::vector<int>& subgroup_members) const {
  for (std::size_t i = 0; i < members.size(); ++i)
    if (members[i].members == subgroup_members) return static_cast<int>(i);
  return -1;
}

RadicalCollection exhaustive_radical_enumeration(const GroupPtr& g, int p,
                                                 std::size_t max_order) {
  if (!is_prime(p)) throw InvalidArgument("exhaustive_radical_enumeration: p not prime");
  if (g->order() > max_order)
    throw ScaleGuard("exhaustive_radical_enumeration: group order " +
                     std::to_string(g->order()) + " exceeds " +
                     std::to_string(max_order));

  // Every p-group of order p^(k+1) is generated by a p-group of order p^k
  // and a p-power-order element of its normalizer, so a level-wise sweep
  // finds them all.
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> frontier{{0}};
  seen.insert({0});
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& mem : frontier) {
      Subgroup u{g, mem};
      Subgroup norm = normalizer(u);
      for (int x : norm.members) {
        if (u.contains(x) || !g->is_p_power_order(x, p)) continue;
        std::vector<int> seed = mem;
        seed.push_back(x);
        Subgroup w = subgroup_generate(g, seed);
        if (seen.insert(w.members).second) next.push_back(w.members);
      }
    }
    frontier = std::move(next);
  }

  RadicalCollection r;
  r.group = g;
  r.p = p;
  for (const auto& mem : seen) {
    Subgroup u{g, mem};
    if (p_radical_test(u, p)) r.members.push_back(std::move(u));
  }
  std::sort(r.members.begin(), r.members.end(),
            [](const Subgroup& a, const Subgroup& b) {
              if (a.order() != b.order()) return a.order() < b.order();
              return a.members < b.members;
            });
  return r;
}

RadicalCollection flag_link_collection(const FlagData& fd) {
  RadicalCollection r;
  r.group = fd.group;
  r.p = fd.p;
  std::set<std::vector<int>> seen;
  for (const auto& link : fd.poset.links)
    if (seen.insert(link.members).second) r.members.push_back(link);
  std::sort(r.members.begin(), r.members.end(),
            [](const Subgroup& a, const Subgroup& b) {
              if (a.order() != b.order()) return a.order() < b.order();
              return a.members < b.members;
            });
  return r;
}

QuotCategory orbit_category(const RadicalCollection& r) {
  const FinGroup& G = *r.group;
  const int n = static_cast<int>(r.size());
  const int ord = static_cast<int>(G.order());

  for (const auto& u : r.members)
    if (!p_radical_test(u, r.p))
      throw NotRadical("orbit_category: a subgroup of order " +
                       std::to_string(u.order()) + " is not " +
                       std::to_string(r.p) + "-radical");
  for (const auto& u : r.members)
    for (int gen : G.generators)
      if (r.index_of(conjugate_subgroup(gen, u).members) < 0)
        throw InvalidArgument("orbit_category: collection not closed under conjugation");

  std::vector<std::vector<char>> mask(n, std::vector<char>(ord, 0));
  for (int a = 0; a < n; ++a)
    for (int m : r.members[a].members) mask[a][m] = 1;

  QuotCategory c;
  c.group = r.group;
  c.second_first = false;
  c.objects.resize(n);
  for (int a = 0; a < n; ++a) c.objects[a] = "G/" + radical_name(a);

  c.hom.assign(n, std::vector<HomSet>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      HomSet& hs = c.hom[a][b];
      hs.class_of.assign(ord, -1);
      for (int g = 0; g < ord; ++g) {
        if (hs.class_of[g] >= 0) continue;
        int gi = G.inv(g);
        bool in = true;
        for (int x : r.members[a].members)
          if (!mask[b][G.conj(gi, x)]) { in = false; break; }
        if (!in) continue;
        MorphClass cls;
        cls.members.reserve(r.members[b].order());
        for (int k : r.members[b].members) cls.members.push_back(G.mul(g, k));
        std::sort(cls.members.begin(), cls.members.end());
        int idx = static_cast<int>(hs.classes.size());
        for (int m : cls.members) {
          if (hs.class_of[m] >= 0)
            throw ValidationFailed("orbit_category: cosets overlap");
          hs.class_of[m] = idx;
        }
        hs.classes.push_back(std::move(cls));
      }
    }

  c.identity_class.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    c.identity_class[a] = c.hom[a][a].class_of[0];
    if (c.identity_class[a] < 0)
      throw ValidationFailed("orbit_category: missing identity at " + c.objects[a]);
  }

  c.comp.assign(n, std::vector<std::vector<QuotCategory::CompTable>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      c.comp[i][j].assign(n, {});
      const auto& hij = c.hom[i][j];
      if (hij.classes.empty()) continue;
      for (int k = 0; k < n; ++k) {
        const auto& hjk = c.hom[j][k];
        if (hjk.classes.empty()) continue;
        auto& table = c.comp[i][j][k];
        table.assign(hjk.classes.size(), std::vector<int>(hij.classes.size(), -1));
        for (std::size_t b = 0; b < hjk.classes.size(); ++b)
          for (std::size_t a = 0; a < hij.classes.size(); ++a) {
            int t = c.hom[i][k].class_of[G.mul(hij.classes[a].rep(),
                                               hjk.classes[b].rep())];
            if (t < 0)
              throw ValidationFailed("orbit_category: composite escapes hom(" +
                                     c.objects[i] + "," + c.objects[k] + ")");
            table[b][a] = t;
          }
      }
    }

  Report ax = check_category_axioms(c);
  if (!ax.passed())
    throw ValidationFailed("orbit_category: axioms fail: " + ax.summary());
  return c;
}

GPoset radical_transport_gposet(const RadicalCollection& r) {
  const FinGroup& G = *r.group;
  const int n = static_cast<int>(r.size());
  GPoset p;
  p.group = r.group;
  p.items.resize(n);
  for (int a = 0; a < n; ++a) p.items[a] = radical_name(a);
  p.leq.assign(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      p.leq[a][b] = r.members[b].contains_all(r.members[a]) ? 1 : 0;
  p.action.assign(G.order(), std::vector<int>(n));
  for (std::size_t g = 0; g < G.order(); ++g)
    for (int a = 0; a < n; ++a) {
      int t = r.index_of(conjugate_subgroup(static_cast<int>(g), r.members[a]).members);
      if (t < 0)
        throw InvalidArgument("radical_transport_gposet: not closed under conjugation");
      p.action[g][a] = t;
    }
  p.links.assign(n, trivial_subgroup(r.group));
  return p;
}

BorelTitsData borel_tits_functors(const FlagData& fd, const QuotCategory& crbs) {
  const FinGroup& G = *fd.group;
  const int ord = static_cast<int>(G.order());
  const int F = static_cast<int>(fd.flags.size());

  if (crbs.group != fd.group || crbs.objects != fd.poset.items || !crbs.second_first)
    throw IncompatibleInputs("borel_tits_functors: category does not match the flags");

  BorelTitsData out;
  out.crbs = &crbs;
  Report& rep = out.report;

  std::vector<Subgroup> stabs;
  stabs.reserve(F);
  for (int f = 0; f < F; ++f) stabs.push_back(flag_stabilizer(fd, f));
  const std::vector<Subgroup>& links = fd.poset.links;

  for (int f = 0; f < F; ++f) {
    if (!p_radical_test(links[f], fd.p))
      rep.fail("link of flag " + fd.poset.items[f] + " is not " +
               std::to_string(fd.p) + "-radical");
    if (normalizer(links[f]).members != stabs[f].members)
      rep.fail("normalizer of the link of " + fd.poset.items[f] +
               " is not the flag stabilizer");
  }

  out.radicals = flag_link_collection(fd);
  out.flag_to_radical.assign(F, -1);
  for (int f = 0; f < F; ++f)
    out.flag_to_radical[f] = out.radicals.index_of(links[f].members);
  {
    std::vector<char> hit(out.radicals.size(), 0);
    bool inj = true;
    for (int f = 0; f < F; ++f) {
      int t = out.flag_to_radical[f];
      if (t < 0 || hit[t]) inj = false;
      else hit[t] = 1;
    }
    if (!inj || out.radicals.size() != static_cast<std::size_t>(F))
      rep.fail("flags and radicals do not correspond bijectively (" +
               std::to_string(F) + " flags, " + std::to_string(out.radicals.size()) +
               " radicals)");
  }

  // Transporter identity per flag pair: the radical condition, the
  // stabilizer condition and the poset transporter must agree elementwise.
  std::vector<std::vector<char>> stab_mask(F, std::vector<char>(ord, 0));
  std::vector<std::vector<char>> link_mask(F, std::vector<char>(ord, 0));
  for (int f = 0; f < F; ++f) {
    for (int m : stabs[f].members) stab_mask[f][m] = 1;
    for (int m : links[f].members) link_mask[f][m] = 1;
  }
  for (int i = 0; i < F; ++i)
    for (int j = 0; j < F; ++j) {
      bool same = true;
      for (int g = 0; g < ord && same; ++g) {
        int gi = G.inv(g);
        bool rad = true;
        for (int x : links[j].members)
          if (!link_mask[i][G.conj(gi, x)]) { rad = false; break; }
        bool par = true;
        for (int x : stabs[i].members)
          if (!stab_mask[j][G.conj(g, x)]) { par = false; break; }
        bool tra = fd.poset.le(fd.poset.act(g, i), j);
        same = (rad == par) && (par == tra);
      }
      if (!same)
        rep.fail("transporter identity fails between " + fd.poset.items[i] + " and " +
                 fd.poset.items[j]);
    }

  out.cbs = std::make_shared<QuotCategory>(
      build_category(with_trivial_links(fd.poset)));
  out.transport_op = std::make_shared<QuotCategory>(
      opposite_category(build_category(radical_transport_gposet(out.radicals))));
  out.orbit_op =
      std::make_shared<QuotCategory>(opposite_category(orbit_category(out.radicals)));

  out.quot = quotient_functor(*out.cbs, crbs);

  // psi: invert each singleton morphism of the trivial-link category
  out.psi.src = out.cbs.get();
  out.psi.dst = out.transport_op.get();
  out.psi.obj_map = out.flag_to_radical;
  out.psi.class_map.assign(F, std::vector<std::vector<int>>(F));
  for (int i = 0; i < F; ++i)
    for (int j = 0; j < F; ++j) {
      const auto& hs = out.cbs->hom[i][j];
      auto& cm = out.psi.class_map[i][j];
      cm.assign(hs.classes.size(), 0);
      const auto& target =
          out.transport_op->hom[out.flag_to_radical[i]][out.flag_to_radical[j]];
      for (std::size_t cl = 0; cl < hs.classes.size(); ++cl) {
        int t = target.class_of[G.inv(hs.classes[cl].rep())];
        if (t < 0)
          rep.fail("inverse of a morphism " + fd.poset.items[i] + "->" +
                   fd.poset.items[j] + " does not conjugate the links correctly");
        else
          cm[cl] = t;
      }
    }

  // phi: a class of the link category and its image are the same subset of G
  out.phi.src = &crbs;
  out.phi.dst = out.orbit_op.get();
  out.phi.obj_map = out.flag_to_radical;
  out.phi.class_map.assign(F, std::vector<std::vector<int>>(F));
  for (int i = 0; i < F; ++i)
    for (int j = 0; j < F; ++j) {
      const auto& hs = crbs.hom[i][j];
      auto& cm = out.phi.class_map[i][j];
      cm.assign(hs.classes.size(), 0);
      const auto& target =
          out.orbit_op->hom[out.flag_to_radical[i]][out.flag_to_radical[j]];
      for (std::size_t cl = 0; cl < hs.classes.size(); ++cl) {
        int t = target.class_of[hs.classes[cl].rep()];
        if (t < 0) {
          rep.fail("class " + fd.poset.items[i] + "->" + fd.poset.items[j] +
                   " has no counterpart among the coset classes");
          continue;
        }
        cm[cl] = t;
        if (target.classes[t].members != hs.classes[cl].members)
          rep.fail("class " + fd.poset.items[i] + "->" + fd.poset.items[j] +
                   " and its counterpart are different subsets of the group");
      }
    }

  // kappa_op: objects in place, representatives inverted
  const int R = static_cast<int>(out.radicals.size());
  out.kappa_op.src = out.transport_op.get();
  out.kappa_op.dst = out.orbit_op.get();
  out.kappa_op.obj_map.resize(R);
  for (int a = 0; a < R; ++a) out.kappa_op.obj_map[a] = a;
  out.kappa_op.class_map.assign(R, std::vector<std::vector<int>>(R));
  for (int a = 0; a < R; ++a)
    for (int b = 0; b < R; ++b) {
      const auto& hs = out.transport_op->hom[a][b];
      auto& cm = out.kappa_op.class_map[a][b];
      cm.assign(hs.classes.size(), 0);
      const auto& target = out.orbit_op->hom[a][b];
      for (std::size_t cl = 0; cl < hs.classes.size(); ++cl) {
        int t = target.class_of[G.inv(hs.classes[cl].rep())];
        if (t < 0)
          rep.fail("conjugation morphism " + std::to_string(a) + "->" +
                   std::to_string(b) + " has no coset class image");
        else
          cm[cl] = t;
      }
    }

  Report vpsi = verify_functor(out.psi);
  if (!vpsi.passed()) rep.fail("inversion map is not functorial: " + vpsi.summary());
  Report vphi = verify_functor(out.phi);
  if (!vphi.passed()) rep.fail("class map is not functorial: " + vphi.summary());
  Report vkap = verify_functor(out.kappa_op);
  if (!vkap.passed())
    rep.fail("transport-to-coset map is not functorial: " + vkap.summary());

  IsoCheck iphi = functor_is_isomorphism(out.phi);
  if (!iphi.is_iso) rep.fail("class map is not an isomorphism: " + iphi.witness);
  IsoCheck ipsi = functor_is_isomorphism(out.psi);
  if (!ipsi.is_iso) rep.fail("inversion map is not an isomorphism: " + ipsi.witness);

  if (!functors_equal(compose_functors(out.quot, out.phi),
                      compose_functors(out.psi, out.kappa_op)))
    rep.fail("the functor square does not commute");

  rep.note(std::to_string(F) + " flags, " + std::to_string(out.radicals.size()) +
           " radical subgroups");
  return out;
}

}  // namespace gpcat
