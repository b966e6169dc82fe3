#include "gpcat/pi1.hpp"

#include <deque>
#include <string>
#include <utility>

#include "gpcat/errors.hpp"

namespace gpcat {

Presentation pi1_presentation(const QuotCategory& c, int basepoint) {
  const int n = static_cast<int>(c.num_objects());
  if (basepoint < 0 || basepoint >= n)
    throw InvalidArgument("pi1_presentation: basepoint out of range");

  Presentation pres;
  pres.cat = &c;
  pres.basepoint = basepoint;

  std::vector<std::vector<std::vector<int>>> gen_idx(n, std::vector<std::vector<int>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      gen_idx[i][j].assign(c.hom[i][j].size(), -1);
      for (std::size_t cls = 0; cls < c.hom[i][j].size(); ++cls) {
        if (c.is_identity(i, j, static_cast<int>(cls))) continue;
        gen_idx[i][j][cls] = static_cast<int>(pres.generators.size());
        PresGen g;
        g.src = i;
        g.dst = j;
        g.cls = static_cast<int>(cls);
        g.rep = c.hom[i][j].classes[cls].rep();
        g.name = c.objects[i] + ">" + c.objects[j] + "#" + std::to_string(cls);
        pres.generators.push_back(std::move(g));
      }
    }

  pres.in_tree.assign(pres.generators.size(), 0);
  pres.parent_gen.assign(n, -1);
  pres.parent_reversed.assign(n, 0);

  std::vector<char> seen(n, 0);
  std::deque<int> queue{basepoint};
  seen[basepoint] = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    pres.bfs_order.push_back(u);
    for (int v = 0; v < n; ++v) {
      if (seen[v] || v == u) continue;
      int g = -1;
      bool rev = false;
      if (!c.hom[u][v].classes.empty()) {
        g = gen_idx[u][v][0];
      } else if (!c.hom[v][u].classes.empty()) {
        g = gen_idx[v][u][0];
        rev = true;
      }
      if (g < 0) continue;
      seen[v] = 1;
      pres.parent_gen[v] = g;
      pres.parent_reversed[v] = rev ? 1 : 0;
      pres.in_tree[g] = 1;
      queue.push_back(v);
    }
  }
  for (int v = 0; v < n; ++v)
    if (!seen[v])
      throw DisconnectedBasepoint("pi1_presentation: object '" + c.objects[v] +
                                  "' cannot be reached from '" +
                                  c.objects[basepoint] + "'");

  for (std::size_t g = 0; g < pres.generators.size(); ++g)
    if (pres.in_tree[g]) pres.relators.push_back({static_cast<int>(g) + 1});

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (std::size_t a = 0; a < c.hom[i][j].size(); ++a) {
        if (gen_idx[i][j][a] < 0) continue;
        for (int k = 0; k < n; ++k)
          for (std::size_t b = 0; b < c.hom[j][k].size(); ++b) {
            if (gen_idx[j][k][b] < 0) continue;
            int comp = c.comp[i][j][k][b][a];
            std::vector<int> w{gen_idx[i][j][a] + 1, gen_idx[j][k][b] + 1};
            if (!c.is_identity(i, k, comp)) w.push_back(-(gen_idx[i][k][comp] + 1));
            pres.relators.push_back(std::move(w));
          }
      }
  return pres;
}

EnumResult coset_enumeration(int ngens, const std::vector<std::vector<int>>& relators,
                             std::size_t max_cosets) {
  if (ngens < 0) throw InvalidArgument("coset_enumeration: negative generator count");
  if (max_cosets == 0) throw InvalidArgument("coset_enumeration: zero coset bound");
  const int L = 2 * ngens;

  std::vector<std::vector<int>> rels;
  for (const auto& w : relators) {
    std::vector<int> r;
    for (int s : w) {
      if (s == 0 || s > ngens || -s > ngens)
        throw InvalidArgument("coset_enumeration: relator letter out of range");
      r.push_back(s > 0 ? 2 * (s - 1) : 2 * (-s - 1) + 1);
    }
    if (!r.empty()) rels.push_back(std::move(r));
  }

  std::vector<std::vector<int>> tab;
  std::vector<int> parent;
  std::deque<std::pair<int, int>> merges;

  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto new_coset = [&]() {
    tab.emplace_back(L, -1);
    parent.push_back(static_cast<int>(parent.size()));
    return static_cast<int>(tab.size()) - 1;
  };

  // Defines tab[c][l] = d together with the inverse entry; a clash with an
  // existing value queues a merge instead of overwriting.
  auto set_entry = [&](int c, int l, int d) {
    c = find(c);
    d = find(d);
    int cur = tab[c][l] < 0 ? -1 : find(tab[c][l]);
    if (cur < 0) {
      tab[c][l] = d;
    } else if (cur != d) {
      merges.emplace_back(cur, d);
      return;
    }
    int back = tab[d][l ^ 1] < 0 ? -1 : find(tab[d][l ^ 1]);
    if (back < 0)
      tab[d][l ^ 1] = c;
    else if (back != c)
      merges.emplace_back(back, c);
  };

  // Union-find keeps the smaller index alive; the dead row's entries move
  // onto the survivor, and every disagreement cascades as another merge.
  // Entries elsewhere that still name the dead coset resolve through find.
  auto process_merges = [&]() {
    while (!merges.empty()) {
      auto [a, b] = merges.front();
      merges.pop_front();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      parent[b] = a;
      for (int l = 0; l < L; ++l) {
        int t = tab[b][l];
        if (t < 0) continue;
        t = find(t);
        int have = tab[a][l] < 0 ? -1 : find(tab[a][l]);
        if (have < 0)
          tab[a][l] = t;
        else if (have != t)
          merges.emplace_back(have, t);
      }
    }
  };

  new_coset();
  bool capped = false;
  for (int c = 0; c < static_cast<int>(tab.size()) && !capped; ++c) {
    if (find(c) != c) continue;
    for (const auto& r : rels) {
      if (find(c) != c) break;
      for (;;) {
        // Trace the relator cycle at c as far as the table allows, forward
        // from the front and backward from the back.
        int f = c;
        std::size_t i = 0;
        while (i < r.size() && tab[f][r[i]] >= 0) f = find(tab[f][r[i++]]);
        if (i == r.size()) {
          if (f != c) {
            merges.emplace_back(f, c);
            process_merges();
          }
          break;
        }
        int b = c;
        std::size_t j = r.size();
        while (j > i && tab[b][r[j - 1] ^ 1] >= 0) b = find(tab[b][r[--j] ^ 1]);
        if (j == i) {
          if (f != b) {
            merges.emplace_back(f, b);
            process_merges();
          }
          break;
        }
        if (j == i + 1) {
          set_entry(f, r[i], b);
          process_merges();
          break;
        }
        if (tab.size() >= max_cosets) {
          capped = true;
          break;
        }
        int d = new_coset();
        set_entry(f, r[i], d);
        process_merges();
      }
      if (capped) break;
    }
    for (int l = 0; l < L && !capped; ++l) {
      if (find(c) != c) break;
      if (tab[c][l] >= 0) continue;
      if (tab.size() >= max_cosets) {
        capped = true;
        break;
      }
      int d = new_coset();
      set_entry(c, l, d);
      process_merges();
    }
  }

  EnumResult out;
  out.cosets_defined = tab.size();
  if (capped) return out;
  out.completed = true;
  for (int i = 0; i < static_cast<int>(tab.size()); ++i)
    if (find(i) == i) ++out.index;
  return out;
}

Subgroup e_subgroup(const GPoset& p) { return normal_closure(p.group, p.links); }

AbelianInvariants abelianization(const Presentation& pres) {
  const std::size_t n = pres.generators.size();
  BigMat m(pres.relators.size(), n);
  for (std::size_t r = 0; r < pres.relators.size(); ++r)
    for (int s : pres.relators[r]) {
      if (s > 0)
        m.at(r, s - 1) += 1;
      else
        m.at(r, -s - 1) -= 1;
    }
  SmithResult sm = smith_normal_form(m);
  AbelianInvariants out;
  out.rank = n - sm.rank;
  for (const auto& d : sm.invariants)
    if (d > 1) out.torsion.push_back(d);
  return out;
}

Pi1Check pi1_vs_quotient(const GPoset& p, const QuotCategory& c, int basepoint,
                         std::size_t max_cosets) {
  if (p.group != c.group)
    throw IncompatibleInputs("pi1_vs_quotient: category does not share the poset's group");

  Pi1Check out;
  out.pres = pi1_presentation(c, basepoint);
  out.normal_e = e_subgroup(p);
  QuotientGroup q = quotient_group(p.group, out.normal_e);
  out.quotient = q.group;
  const FinGroup& Q = *q.group;
  const auto& proj = q.projection;

  // Potential of a vertex: the image in the quotient of the tree path from
  // the basepoint.  A loop gamma: a -> b then maps to pot[b]^-1 proj(rep) pot[a],
  // which kills every tree edge by construction.
  const int n = static_cast<int>(c.num_objects());
  std::vector<int> pot(n, 0);
  for (int v : out.pres.bfs_order) {
    if (v == basepoint) continue;
    const PresGen& g = out.pres.generators[out.pres.parent_gen[v]];
    bool rev = out.pres.parent_reversed[v] != 0;
    int u = rev ? g.dst : g.src;
    int img = proj[g.rep];
    pot[v] = rev ? Q.mul(Q.inv(img), pot[u]) : Q.mul(img, pot[u]);
  }

  out.rho.reserve(out.pres.generators.size());
  for (const PresGen& g : out.pres.generators)
    out.rho.push_back(Q.mul(Q.inv(pot[g.dst]), Q.mul(proj[g.rep], pot[g.src])));

  for (std::size_t i = 0; i < out.pres.generators.size(); ++i)
    if (out.pres.in_tree[i] && out.rho[i] != 0)
      out.report.fail("tree generator " + out.pres.generators[i].name +
                      " has a nontrivial image in the quotient");

  // Relator words are in path order; the quotient applies the first edge
  // first, so the product accumulates on the left.
  for (const auto& w : out.pres.relators) {
    int acc = 0;
    for (int s : w) {
      int term = s > 0 ? out.rho[s - 1] : Q.inv(out.rho[-s - 1]);
      acc = Q.mul(term, acc);
    }
    if (acc != 0) {
      out.report.fail("a relator has a nontrivial image in the quotient");
      break;
    }
  }

  Subgroup image = subgroup_generate(q.group, out.rho);
  if (image.order() != Q.order())
    out.report.fail("generator images span " + std::to_string(image.order()) + " of " +
                    std::to_string(Q.order()) + " quotient elements");

  out.enumeration = coset_enumeration(static_cast<int>(out.pres.generators.size()),
                                      out.pres.relators, max_cosets);
  if (!out.enumeration.completed)
    out.report.fail("coset enumeration still open after " +
                    std::to_string(out.enumeration.cosets_defined) + " cosets");
  else if (out.enumeration.index != Q.order())
    out.report.fail("presented group has order " + std::to_string(out.enumeration.index) +
                    ", the quotient has order " + std::to_string(Q.order()));
  return out;
}

}  // namespace gpcat
