#include "gpcat/quotcat.hpp"

#include <algorithm>

namespace gpcat {

namespace {

std::string mref(const QuotCategory& c, int i, int j, int cls) {
  return "[" + c.objects[i] + "->" + c.objects[j] + "#" + std::to_string(cls) + "]";
}

}  // namespace

QuotCategory build_category(const GPoset& p) {
  Report va = validate_action(p);
  if (!va.passed()) throw ValidationFailed("build_category: action invalid: " + va.summary());
  Report vl = validate_links(p);
  if (!vl.passed()) throw ValidationFailed("build_category: links invalid: " + vl.summary());

  const FinGroup& G = *p.group;
  const int n = static_cast<int>(p.size());
  const int ord = static_cast<int>(G.order());

  QuotCategory c;
  c.group = p.group;
  c.objects = p.items;
  c.hom.assign(n, std::vector<HomSet>(n));

  for (int i = 0; i < n; ++i) {
    const auto& link = p.links[i].members;
    for (int j = 0; j < n; ++j) {
      HomSet& hs = c.hom[i][j];
      hs.class_of.assign(ord, -1);
      // Ascending scan makes class order = order by minimal representative.
      for (int g = 0; g < ord; ++g) {
        if (!p.le(p.act(g, i), j) || hs.class_of[g] >= 0) continue;
        MorphClass cls;
        cls.members.reserve(link.size());
        for (int u : link) cls.members.push_back(G.mul(g, u));
        std::sort(cls.members.begin(), cls.members.end());
        int idx = static_cast<int>(hs.classes.size());
        for (int m : cls.members) {
          if (hs.class_of[m] >= 0)
            throw ValidationFailed("build_category: link cosets overlap in hom(" +
                                   p.items[i] + "," + p.items[j] + ")");
          hs.class_of[m] = idx;
        }
        hs.classes.push_back(std::move(cls));
      }
    }
  }

  c.identity_class.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    c.identity_class[i] = c.hom[i][i].class_of[0];
    if (c.identity_class[i] < 0)
      throw ValidationFailed("build_category: missing identity at " + p.items[i]);
  }

  c.comp.assign(n, std::vector<std::vector<QuotCategory::CompTable>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      c.comp[i][j].assign(n, {});
      const auto& hij = c.hom[i][j];
      if (hij.classes.empty()) continue;
      for (int k = 0; k < n; ++k) {
        const auto& hjk = c.hom[j][k];
        const auto& hik = c.hom[i][k];
        if (hjk.classes.empty()) continue;
        auto& table = c.comp[i][j][k];
        table.assign(hjk.classes.size(), std::vector<int>(hij.classes.size(), -1));
        for (std::size_t b = 0; b < hjk.classes.size(); ++b) {
          int hrep = hjk.classes[b].rep();
          for (std::size_t a = 0; a < hij.classes.size(); ++a) {
            int target = hik.class_of[G.mul(hrep, hij.classes[a].rep())];
            if (target < 0)
              throw ValidationFailed("build_category: composite escapes hom(" +
                                     p.items[i] + "," + p.items[k] + ")");
            table[b][a] = target;
          }
        }
      }
    }

  Report ax = check_category_axioms(c);
  if (!ax.passed())
    throw ValidationFailed("build_category: category axioms fail: " + ax.summary());
  return c;
}

Report check_category_axioms(const QuotCategory& c) {
  Report rep;
  rep.max_stored = 100;
  const int n = static_cast<int>(c.num_objects());
  const FinGroup& G = *c.group;

  // hom-set internal consistency: sorted disjoint classes, minimum as
  // representative, reverse lookup matching.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const HomSet& hs = c.hom[i][j];
      std::vector<char> seen(G.order(), 0);
      int prev_rep = -1;
      for (std::size_t cl = 0; cl < hs.classes.size(); ++cl) {
        const auto& mem = hs.classes[cl].members;
        if (mem.empty()) { rep.fail("empty class " + mref(c, i, j, static_cast<int>(cl))); continue; }
        if (!std::is_sorted(mem.begin(), mem.end()))
          rep.fail("unsorted members in " + mref(c, i, j, static_cast<int>(cl)));
        if (mem.front() <= prev_rep)
          rep.fail("classes out of order in hom(" + c.objects[i] + "," + c.objects[j] + ")");
        prev_rep = mem.front();
        for (int m : mem) {
          if (seen[m]) rep.fail("overlapping classes in hom(" + c.objects[i] + "," +
                                c.objects[j] + ") at element " + std::to_string(m));
          seen[m] = 1;
          if (hs.class_of[m] != static_cast<int>(cl))
            rep.fail("reverse lookup mismatch in " + mref(c, i, j, static_cast<int>(cl)));
        }
      }
      for (std::size_t g = 0; g < G.order(); ++g)
        if (hs.class_of[g] >= 0 && !seen[g])
          rep.fail("reverse lookup points to a missing member in hom(" + c.objects[i] +
                   "," + c.objects[j] + ")");
    }

  for (int i = 0; i < n; ++i) {
    if (c.identity_class[i] < 0 ||
        c.identity_class[i] >= static_cast<int>(c.hom[i][i].classes.size())) {
      rep.fail("identity class out of range at " + c.objects[i]);
      return rep;
    }
    if (c.hom[i][i].class_of[0] != c.identity_class[i])
      rep.fail("identity class of " + c.objects[i] + " does not contain the identity");
  }

  // Composition table shape and range; nothing below may index the tables
  // until this holds.
  bool tables_ok = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& hij = c.hom[i][j];
      if (hij.classes.empty()) continue;
      for (int k = 0; k < n; ++k) {
        const auto& hjk = c.hom[j][k];
        const auto& hik = c.hom[i][k];
        if (hjk.classes.empty()) continue;
        const auto& table = c.comp[i][j][k];
        if (table.size() != hjk.classes.size()) {
          rep.fail("composition table has wrong shape at (" + c.objects[i] + "," +
                   c.objects[j] + "," + c.objects[k] + ")");
          tables_ok = false;
          continue;
        }
        for (std::size_t b = 0; b < hjk.classes.size(); ++b) {
          if (table[b].size() != hij.classes.size()) {
            rep.fail("composition table row has wrong length at (" + c.objects[i] + "," +
                     c.objects[j] + "," + c.objects[k] + ")");
            tables_ok = false;
            continue;
          }
          for (std::size_t a = 0; a < hij.classes.size(); ++a) {
            int t = table[b][a];
            if (t < 0 || t >= static_cast<int>(hik.classes.size())) {
              rep.fail("composition target out of range for " +
                       mref(c, i, j, static_cast<int>(a)) + " then " +
                       mref(c, j, k, static_cast<int>(b)));
              tables_ok = false;
            }
          }
        }
      }
    }
  if (!tables_ok) return rep;

  // Unit laws.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& hij = c.hom[i][j];
      for (std::size_t a = 0; a < hij.classes.size(); ++a) {
        if (c.comp[i][i][j][a][c.identity_class[i]] != static_cast<int>(a))
          rep.fail("right unit law fails for " + mref(c, i, j, static_cast<int>(a)));
        if (c.comp[i][j][j][c.identity_class[j]][a] != static_cast<int>(a))
          rep.fail("left unit law fails for " + mref(c, i, j, static_cast<int>(a)));
      }
    }

  // Well-definedness: composing any members of two classes stays in the
  // class the table names.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& hij = c.hom[i][j];
      if (hij.classes.empty()) continue;
      for (int k = 0; k < n; ++k) {
        const auto& hjk = c.hom[j][k];
        const auto& hik = c.hom[i][k];
        if (hjk.classes.empty()) continue;
        const auto& table = c.comp[i][j][k];
        for (std::size_t b = 0; b < hjk.classes.size(); ++b)
          for (std::size_t a = 0; a < hij.classes.size(); ++a) {
            int t = table[b][a];
            bool bad = false;
            for (int hm : hjk.classes[b].members) {
              for (int gm : hij.classes[a].members) {
                int prod = c.second_first ? G.mul(hm, gm) : G.mul(gm, hm);
                if (hik.class_of[prod] != t) { bad = true; break; }
              }
              if (bad) break;
            }
            if (bad)
              rep.fail("composition not well defined on members of " +
                       mref(c, i, j, static_cast<int>(a)) + " then " +
                       mref(c, j, k, static_cast<int>(b)));
          }
      }
    }

  // Associativity over every composable triple of classes.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::size_t nij = c.hom[i][j].classes.size();
      if (nij == 0) continue;
      for (int k = 0; k < n; ++k) {
        std::size_t njk = c.hom[j][k].classes.size();
        if (njk == 0) continue;
        const auto& comp_ijk = c.comp[i][j][k];
        for (int l = 0; l < n; ++l) {
          std::size_t nkl = c.hom[k][l].classes.size();
          if (nkl == 0) continue;
          const auto& comp_ikl = c.comp[i][k][l];
          const auto& comp_jkl = c.comp[j][k][l];
          const auto& comp_ijl = c.comp[i][j][l];
          for (std::size_t cc = 0; cc < nkl; ++cc) {
            const auto& row_c_ikl = comp_ikl[cc];
            for (std::size_t b = 0; b < njk; ++b) {
              const auto& row_b_ijk = comp_ijk[b];
              const auto& row_cb_ijl = comp_ijl[comp_jkl[cc][b]];
              for (std::size_t a = 0; a < nij; ++a)
                if (row_c_ikl[row_b_ijk[a]] != row_cb_ijl[a]) {
                  rep.fail("associativity fails at " + mref(c, i, j, static_cast<int>(a)) +
                           ", " + mref(c, j, k, static_cast<int>(b)) + ", " +
                           mref(c, k, l, static_cast<int>(cc)));
                  if (rep.total_violations > 10000) return rep;
                }
            }
          }
        }
      }
    }

  return rep;
}

QuotCategory opposite_category(const QuotCategory& c) {
  const int n = static_cast<int>(c.num_objects());
  QuotCategory op;
  op.group = c.group;
  op.objects = c.objects;
  op.identity_class = c.identity_class;
  // Reversing arrows swaps which factor of the composite was applied first.
  op.second_first = !c.second_first;
  op.hom.assign(n, std::vector<HomSet>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) op.hom[i][j] = c.hom[j][i];
  op.comp.assign(n, std::vector<std::vector<QuotCategory::CompTable>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      op.comp[i][j].assign(n, {});
      for (int k = 0; k < n; ++k) {
        std::size_t na = op.hom[i][j].classes.size();
        std::size_t nb = op.hom[j][k].classes.size();
        if (na == 0 || nb == 0) continue;
        auto& table = op.comp[i][j][k];
        table.assign(nb, std::vector<int>(na, -1));
        for (std::size_t b = 0; b < nb; ++b)
          for (std::size_t a = 0; a < na; ++a)
            table[b][a] = c.comp[k][j][i][a][b];
      }
    }
  Report ax = check_category_axioms(op);
  if (!ax.passed())
    throw ValidationFailed("opposite_category: axioms fail: " + ax.summary());
  return op;
}

QuotCategory full_subcategory(const QuotCategory& c, const std::vector<int>& objs) {
  if (objs.empty()) throw EmptySelection("full_subcategory: no objects selected");
  const int m = static_cast<int>(objs.size());
  for (int o : objs)
    if (o < 0 || o >= static_cast<int>(c.num_objects()))
      throw InvalidArgument("full_subcategory: object index out of range");
  QuotCategory s;
  s.group = c.group;
  s.second_first = c.second_first;
  s.identity_class.resize(m);
  s.objects.resize(m);
  s.hom.assign(m, std::vector<HomSet>(m));
  for (int i = 0; i < m; ++i) {
    s.objects[i] = c.objects[objs[i]];
    s.identity_class[i] = c.identity_class[objs[i]];
    for (int j = 0; j < m; ++j) s.hom[i][j] = c.hom[objs[i]][objs[j]];
  }
  s.comp.assign(m, std::vector<std::vector<QuotCategory::CompTable>>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      s.comp[i][j].assign(m, {});
      for (int k = 0; k < m; ++k) s.comp[i][j][k] = c.comp[objs[i]][objs[j]][objs[k]];
    }
  return s;
}

CatFunctor quotient_functor(const QuotCategory& fine, const QuotCategory& coarse) {
  if (fine.group != coarse.group)
    throw IncompatibleInputs("quotient_functor: different groups");
  if (fine.objects != coarse.objects)
    throw IncompatibleInputs("quotient_functor: different object lists");
  if (fine.second_first != coarse.second_first)
    throw IncompatibleInputs("quotient_functor: mismatched composition conventions");
  const int n = static_cast<int>(fine.num_objects());
  CatFunctor f;
  f.src = &fine;
  f.dst = &coarse;
  f.obj_map.resize(n);
  for (int i = 0; i < n; ++i) f.obj_map[i] = i;
  f.class_map.assign(n, std::vector<std::vector<int>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& hf = fine.hom[i][j];
      const auto& hc = coarse.hom[i][j];
      auto& cm = f.class_map[i][j];
      cm.resize(hf.classes.size());
      for (std::size_t cl = 0; cl < hf.classes.size(); ++cl) {
        int target = hc.class_of[hf.classes[cl].rep()];
        if (target < 0)
          throw IncompatibleInputs("quotient_functor: class " +
                                   mref(fine, i, j, static_cast<int>(cl)) +
                                   " has no image");
        for (int m : hf.classes[cl].members)
          if (hc.class_of[m] != target)
            throw IncompatibleInputs("quotient_functor: class " +
                                     mref(fine, i, j, static_cast<int>(cl)) +
                                     " straddles two coarse classes");
        cm[cl] = target;
      }
      // fullness: every coarse class is hit because the transporter sets
      // coincide; verify rather than assume.
      std::vector<char> hit(hc.classes.size(), 0);
      for (int t : cm) hit[t] = 1;
      for (std::size_t t = 0; t < hit.size(); ++t)
        if (!hit[t])
          throw IncompatibleInputs("quotient_functor: not full at hom(" + fine.objects[i] +
                                   "," + fine.objects[j] + ")");
    }
  Report vf = verify_functor(f);
  if (!vf.passed())
    throw IncompatibleInputs("quotient_functor: not a functor: " + vf.summary());
  return f;
}

Report verify_functor(const CatFunctor& f) {
  Report rep;
  rep.max_stored = 100;
  const QuotCategory& S = *f.src;
  const QuotCategory& D = *f.dst;
  const int n = static_cast<int>(S.num_objects());

  if (static_cast<int>(f.obj_map.size()) != n) {
    rep.fail("object map has wrong length");
    return rep;
  }
  for (int i = 0; i < n; ++i)
    if (f.obj_map[i] < 0 || f.obj_map[i] >= static_cast<int>(D.num_objects())) {
      rep.fail("object map out of range at " + S.objects[i]);
      return rep;
    }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (f.class_map[i][j].size() != S.hom[i][j].classes.size()) {
        rep.fail("class map has wrong length at hom(" + S.objects[i] + "," + S.objects[j] + ")");
        return rep;
      }
      const auto& hd = D.hom[f.obj_map[i]][f.obj_map[j]];
      for (int t : f.class_map[i][j])
        if (t < 0 || t >= static_cast<int>(hd.classes.size())) {
          rep.fail("class map out of range at hom(" + S.objects[i] + "," + S.objects[j] + ")");
          return rep;
        }
    }

  for (int i = 0; i < n; ++i)
    if (f.class_map[i][i][S.identity_class[i]] != D.identity_class[f.obj_map[i]])
      rep.fail("identity of " + S.objects[i] + " is not sent to an identity");

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::size_t nij = S.hom[i][j].classes.size();
      if (nij == 0) continue;
      for (int k = 0; k < n; ++k) {
        std::size_t njk = S.hom[j][k].classes.size();
        if (njk == 0) continue;
        int fi = f.obj_map[i], fj = f.obj_map[j], fk = f.obj_map[k];
        for (std::size_t b = 0; b < njk; ++b)
          for (std::size_t a = 0; a < nij; ++a) {
            int lhs = f.class_map[i][k][S.comp[i][j][k][b][a]];
            int rhs = D.comp[fi][fj][fk][f.class_map[j][k][b]][f.class_map[i][j][a]];
            if (lhs != rhs)
              rep.fail("functor breaks composition at " + mref(S, i, j, static_cast<int>(a)) +
                       " then " + mref(S, j, k, static_cast<int>(b)));
          }
      }
    }
  return rep;
}

IsoCheck functor_is_isomorphism(const CatFunctor& f) {
  IsoCheck out;
  Report vf = verify_functor(f);
  if (!vf.passed()) {
    out.witness = "not a functor: " + vf.violations.front();
    return out;
  }
  const QuotCategory& S = *f.src;
  const QuotCategory& D = *f.dst;
  if (S.num_objects() != D.num_objects()) {
    out.witness = "object counts differ";
    return out;
  }
  std::vector<char> hit(D.num_objects(), 0);
  for (int t : f.obj_map) {
    if (hit[t]) { out.witness = "object map not injective"; return out; }
    hit[t] = 1;
  }
  const int n = static_cast<int>(S.num_objects());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& hd = D.hom[f.obj_map[i]][f.obj_map[j]];
      if (f.class_map[i][j].size() != hd.classes.size()) {
        out.witness = "hom(" + S.objects[i] + "," + S.objects[j] + ") sizes differ: " +
                      std::to_string(f.class_map[i][j].size()) + " vs " +
                      std::to_string(hd.classes.size());
        return out;
      }
      std::vector<char> chit(hd.classes.size(), 0);
      for (int t : f.class_map[i][j]) {
        if (chit[t]) {
          out.witness = "hom(" + S.objects[i] + "," + S.objects[j] + ") map not injective";
          return out;
        }
        chit[t] = 1;
      }
    }
  out.is_iso = true;
  out.witness = "bijective on objects and all hom-sets";
  return out;
}

CatFunctor compose_functors(const CatFunctor& f, const CatFunctor& g) {
  if (f.dst != g.src) throw IncompatibleInputs("compose_functors: middle categories differ");
  CatFunctor h;
  h.src = f.src;
  h.dst = g.dst;
  const int n = static_cast<int>(f.obj_map.size());
  h.obj_map.resize(n);
  for (int i = 0; i < n; ++i) h.obj_map[i] = g.obj_map[f.obj_map[i]];
  h.class_map.assign(n, std::vector<std::vector<int>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& fm = f.class_map[i][j];
      auto& hm = h.class_map[i][j];
      hm.resize(fm.size());
      const auto& gm = g.class_map[f.obj_map[i]][f.obj_map[j]];
      for (std::size_t cl = 0; cl < fm.size(); ++cl) hm[cl] = gm[fm[cl]];
    }
  return h;
}

bool functors_equal(const CatFunctor& a, const CatFunctor& b) {
  return a.src == b.src && a.dst == b.dst && a.obj_map == b.obj_map &&
         a.class_map == b.class_map;
}

}  // namespace gpcat
