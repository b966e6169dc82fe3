#include "gpcat/gposet.hpp"

#include <algorithm>

namespace gpcat {

namespace {

std::string tup(const GPoset& p, int i) { return p.items[i]; }

// Full pairwise action check is quadratic in |G|; past this size the
// generator-based check below is equivalent (induction over the closure).
constexpr std::size_t kExhaustivePairLimit = 1000;

}  // namespace

Report validate_action(const GPoset& p) {
  Report rep;
  const FinGroup& G = *p.group;
  const int n = static_cast<int>(p.size());

  if (p.leq.size() != p.size() || p.action.size() != G.order()) {
    rep.fail("table dimensions do not match item/group counts");
    return rep;
  }
  for (const auto& row : p.leq)
    if (row.size() != p.size()) { rep.fail("leq row has wrong length"); return rep; }
  for (const auto& row : p.action) {
    if (row.size() != p.size()) { rep.fail("action row has wrong length"); return rep; }
    for (int v : row)
      if (v < 0 || v >= n) { rep.fail("action value out of range"); return rep; }
  }

  for (int i = 0; i < n; ++i)
    if (!p.le(i, i)) rep.fail("reflexivity fails at " + tup(p, i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && p.le(i, j) && p.le(j, i))
        rep.fail("antisymmetry fails at (" + tup(p, i) + "," + tup(p, j) + ")");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!p.le(i, j)) continue;
      for (int k = 0; k < n; ++k)
        if (p.le(j, k) && !p.le(i, k))
          rep.fail("transitivity fails at (" + tup(p, i) + "," + tup(p, j) + "," +
                   tup(p, k) + ")");
    }

  for (int i = 0; i < n; ++i)
    if (p.act(0, i) != i) rep.fail("identity does not fix " + tup(p, i));

  if (G.order() <= kExhaustivePairLimit) {
    for (std::size_t a = 0; a < G.order(); ++a)
      for (std::size_t b = 0; b < G.order(); ++b) {
        int ab = G.mul(static_cast<int>(a), static_cast<int>(b));
        for (int i = 0; i < n; ++i)
          if (p.act(ab, i) != p.act(static_cast<int>(a), p.act(static_cast<int>(b), i)))
            rep.fail("action not multiplicative at (g=" + std::to_string(a) + ",h=" +
                     std::to_string(b) + "," + tup(p, i) + ")");
      }
  } else {
    // (x, gen) products reach every element of the closure, so checking them
    // pins down the whole table.
    for (std::size_t x = 0; x < G.order(); ++x)
      for (int gen : G.generators) {
        int xg = G.mul(static_cast<int>(x), gen);
        for (int i = 0; i < n; ++i)
          if (p.act(xg, i) != p.act(static_cast<int>(x), p.act(gen, i)))
            rep.fail("action not multiplicative at (g=" + std::to_string(x) + ",h=gen" +
                     std::to_string(gen) + "," + tup(p, i) + ")");
      }
  }

  // Order preservation by every element; for big groups the generators
  // suffice since products of order-embeddings are order-embeddings.
  std::vector<int> elems;
  if (G.order() <= kExhaustivePairLimit) {
    elems.resize(G.order());
    for (std::size_t g = 0; g < G.order(); ++g) elems[g] = static_cast<int>(g);
  } else {
    elems = G.generators;
  }
  for (int g : elems)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (p.le(i, j) && !p.le(p.act(g, i), p.act(g, j)))
          rep.fail("element " + std::to_string(g) + " does not preserve " + tup(p, i) +
                   " <= " + tup(p, j));

  // g.i < i is impossible over a valid action; catches corrupted tables.
  for (std::size_t g = 0; g < G.order(); ++g)
    for (int i = 0; i < n; ++i) {
      int gi = p.act(static_cast<int>(g), i);
      if (gi != i && p.le(gi, i))
        rep.fail("element " + std::to_string(g) + " moves " + tup(p, i) +
                 " strictly down to " + tup(p, gi));
    }

  return rep;
}

Report validate_links(const GPoset& p) {
  Report rep;
  const FinGroup& G = *p.group;
  const int n = static_cast<int>(p.size());
  if (p.links.size() != p.size()) {
    rep.fail("link count does not match item count");
    return rep;
  }
  for (int i = 0; i < n; ++i)
    if (p.links[i].parent != p.group) {
      rep.fail("link of " + tup(p, i) + " belongs to a different group");
      return rep;
    }

  std::vector<Subgroup> stabs;
  stabs.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> m;
    for (std::size_t g = 0; g < G.order(); ++g)
      if (p.act(static_cast<int>(g), i) == i) m.push_back(static_cast<int>(g));
    stabs.push_back(Subgroup{p.group, std::move(m)});
  }

  for (int i = 0; i < n; ++i)
    if (!stabs[i].contains_all(p.links[i]))
      rep.fail("link of " + tup(p, i) + " is not contained in its stabilizer");

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (p.le(i, j) && !p.links[i].contains_all(p.links[j]))
        rep.fail("link monotonicity fails: link(" + tup(p, j) + ") not inside link(" +
                 tup(p, i) + ") although " + tup(p, i) + " <= " + tup(p, j));

  for (std::size_t g = 0; g < G.order(); ++g)
    for (int i = 0; i < n; ++i) {
      Subgroup conj = conjugate_subgroup(static_cast<int>(g), p.links[i]);
      if (!(conj.members == p.links[p.act(static_cast<int>(g), i)].members))
        rep.fail("link equivariance fails at (g=" + std::to_string(g) + "," + tup(p, i) +
                 ")");
    }

  for (int i = 0; i < n; ++i)
    if (!is_normal_in(p.links[i], stabs[i]))
      rep.note("link of " + tup(p, i) + " is not normal in its stabilizer");

  return rep;
}

Subgroup stabilizer(const GPoset& p, int item) {
  const FinGroup& G = *p.group;
  std::vector<int> m;
  for (std::size_t g = 0; g < G.order(); ++g)
    if (p.act(static_cast<int>(g), item) == item) m.push_back(static_cast<int>(g));
  Subgroup stab{p.group, std::move(m)};
  if (!stab.contains_all(p.links[item]))
    throw LinkNotInStabilizer("link of " + p.items[item] + " not inside its stabilizer");
  return stab;
}

OrbitPoset orbit_poset(const GPoset& p) {
  const FinGroup& G = *p.group;
  const int n = static_cast<int>(p.size());
  OrbitPoset op;
  op.class_of.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (op.class_of[i] >= 0) continue;
    int idx = static_cast<int>(op.classes.size());
    std::vector<int> orb;
    for (std::size_t g = 0; g < G.order(); ++g) {
      int j = p.act(static_cast<int>(g), i);
      if (op.class_of[j] < 0) { op.class_of[j] = idx; orb.push_back(j); }
    }
    std::sort(orb.begin(), orb.end());
    op.classes.push_back(std::move(orb));
  }

  const int k = static_cast<int>(op.classes.size());
  op.leq.assign(k, std::vector<char>(k, 0));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      bool le = false;
      for (int i : op.classes[a]) {
        for (int j : op.classes[b])
          if (p.le(i, j)) { le = true; break; }
        if (le) break;
      }
      op.leq[a][b] = le ? 1 : 0;
    }

  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      if (a != b && op.leq[a][b] && op.leq[b][a])
        throw NotAPartialOrder("orbit classes " + std::to_string(a) + " and " +
                               std::to_string(b) + " are mutually comparable");
    }
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c)
        if (op.leq[a][b] && op.leq[b][c] && !op.leq[a][c])
          throw NotAPartialOrder("orbit order is not transitive");
  return op;
}

GPoset with_trivial_links(GPoset p) {
  for (auto& l : p.links) l = trivial_subgroup(p.group);
  return p;
}

}  // namespace gpcat
