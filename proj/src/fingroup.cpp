#include "gpcat/fingroup.hpp"

#include <algorithm>
#include <deque>

namespace gpcat {

namespace {

// Dense multiplication tables are only worth the memory for small groups.
constexpr std::size_t kDenseMulLimit = 2048;

int mod_p(long long x, int p) {
  int r = static_cast<int>(x % p);
  return r < 0 ? r + p : r;
}

// Row-reduces an n x (2n) augmented system to invert a matrix mod p.
std::vector<int> invert_matrix_mod_p(const std::vector<int>& m, int n, int p) {
  std::vector<int> a(n * 2 * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i * 2 * n + j] = m[i * n + j];
    a[i * 2 * n + n + i] = 1;
  }
  int w = 2 * n;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[r * w + col] != 0) { piv = r; break; }
    if (piv < 0) return {};
    if (piv != col)
      for (int j = 0; j < w; ++j) std::swap(a[piv * w + j], a[col * w + j]);
    // scale pivot row to 1
    int v = a[col * w + col];
    int vinv = 1;
    for (int t = 1; t < p; ++t)
      if (t * v % p == 1) { vinv = t; break; }
    for (int j = 0; j < w; ++j) a[col * w + j] = mod_p(1LL * a[col * w + j] * vinv, p);
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r * w + col] == 0) continue;
      int f = a[r * w + col];
      for (int j = 0; j < w; ++j)
        a[r * w + j] = mod_p(a[r * w + j] - 1LL * f * a[col * w + j], p);
    }
  }
  std::vector<int> out(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i * n + j] = a[i * w + n + j];
  return out;
}

}  // namespace

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<int> FinGroup::compose(const std::vector<int>& a, const std::vector<int>& b) const {
  if (kind == Kind::Perm) {
    // (a*b)(x) = a(b(x)), matching a left action on points.
    std::vector<int> r(degree);
    for (int x = 0; x < degree; ++x) r[x] = a[b[x]];
    return r;
  }
  if (kind == Kind::Matrix) {
    int n = degree;
    std::vector<int> r(n * n, 0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        long long aik = a[i * n + k];
        if (aik == 0) continue;
        for (int j = 0; j < n; ++j)
          r[i * n + j] = mod_p(r[i * n + j] + aik * b[k * n + j], prime);
      }
    return r;
  }
  throw Error("compose: coset elements multiply through the parent group");
}

std::vector<int> FinGroup::invert_form(const std::vector<int>& f) const {
  if (kind == Kind::Perm) {
    std::vector<int> r(degree);
    for (int x = 0; x < degree; ++x) r[f[x]] = x;
    return r;
  }
  if (kind == Kind::Matrix) {
    auto inv = invert_matrix_mod_p(f, degree, prime);
    if (inv.empty()) throw NotInvertible("matrix is singular mod p");
    return inv;
  }
  throw Error("invert_form: unsupported for coset groups");
}

int FinGroup::index_of(const std::vector<int>& f) const {
  auto it = form_index.find(f);
  return it == form_index.end() ? -1 : it->second;
}

int FinGroup::mul(int a, int b) const {
  if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(a) * order() + b];
  if (kind == Kind::Coset) return parent_proj[parent->mul(coset_rep[a], coset_rep[b])];
  int r = index_of(compose(forms[a], forms[b]));
  if (r < 0) throw Error("mul: product form not in group (corrupt element table)");
  return r;
}

int FinGroup::element_order(int a) const {
  int x = a, n = 1;
  while (x != 0) { x = mul(x, a); ++n; }
  return n;
}

bool FinGroup::is_p_power_order(int a, int p) const {
  int n = element_order(a);
  while (n % p == 0) n /= p;
  return n == 1;
}

void FinGroup::finalize() {
  form_index.clear();
  form_index.reserve(forms.size() * 2);
  for (std::size_t i = 0; i < forms.size(); ++i) form_index[forms[i]] = static_cast<int>(i);

  inverse.assign(order(), -1);
  if (kind == Kind::Coset) {
    for (std::size_t i = 0; i < order(); ++i)
      inverse[i] = parent_proj[parent->inv(coset_rep[i])];
  } else {
    for (std::size_t i = 0; i < order(); ++i) {
      int j = index_of(invert_form(forms[i]));
      if (j < 0) throw Error("finalize: inverse not in group (corrupt element table)");
      inverse[i] = j;
    }
  }

  mul_table_.clear();
  if (order() <= kDenseMulLimit && order() > 0) {
    std::size_t n = order();
    std::vector<int32_t> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        int r;
        if (kind == Kind::Coset) {
          r = parent_proj[parent->mul(coset_rep[a], coset_rep[b])];
        } else {
          r = index_of(compose(forms[a], forms[b]));
          if (r < 0) throw Error("finalize: set not closed under multiplication");
        }
        table[a * n + b] = r;
      }
    mul_table_ = std::move(table);
  }
}

namespace {

GroupPtr close_group(FinGroup&& g, const std::vector<std::vector<int>>& gen_forms,
                     std::size_t cap) {
  std::vector<int> identity;
  if (g.kind == FinGroup::Kind::Perm) {
    identity.resize(g.degree);
    for (int i = 0; i < g.degree; ++i) identity[i] = i;
  } else {
    identity.assign(g.degree * g.degree, 0);
    for (int i = 0; i < g.degree; ++i) identity[i * g.degree + i] = 1;
  }

  g.forms.clear();
  g.form_index.clear();
  g.forms.push_back(identity);
  g.form_index[identity] = 0;

  // Breadth-first closure, right multiplication by generators in input order.
  for (std::size_t head = 0; head < g.forms.size(); ++head) {
    for (const auto& gf : gen_forms) {
      auto prod = g.compose(g.forms[head], gf);
      if (g.form_index.count(prod)) continue;
      if (g.forms.size() + 1 > cap)
        throw CapExceeded("group closure exceeds order cap " + std::to_string(cap));
      g.form_index[prod] = static_cast<int>(g.forms.size());
      g.forms.push_back(std::move(prod));
    }
  }

  g.generators.clear();
  for (const auto& gf : gen_forms) g.generators.push_back(g.form_index.at(gf));
  g.finalize();
  return std::make_shared<FinGroup>(std::move(g));
}

}  // namespace

GroupPtr group_from_permutations(int degree, const std::vector<std::vector<int>>& gens,
                                 std::size_t cap) {
  if (degree < 0) throw InvalidArgument("degree must be nonnegative");
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto& p = gens[k];
    if (static_cast<int>(p.size()) != degree)
      throw NotBijection("generator " + std::to_string(k) + " has wrong length");
    std::vector<char> seen(degree, 0);
    for (int v : p) {
      if (v < 0 || v >= degree || seen[v])
        throw NotBijection("generator " + std::to_string(k) + " is not a bijection");
      seen[v] = 1;
    }
  }
  FinGroup g;
  g.kind = FinGroup::Kind::Perm;
  g.degree = degree;
  return close_group(std::move(g), gens, cap);
}

GroupPtr group_from_matrices(int n, int p, const std::vector<std::vector<int>>& gens,
                             std::size_t cap) {
  if (n < 1) throw InvalidArgument("matrix dimension must be positive");
  if (!is_prime(p)) throw InvalidArgument("p must be prime, got " + std::to_string(p));
  std::vector<std::vector<int>> reduced;
  reduced.reserve(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (static_cast<int>(gens[k].size()) != n * n)
      throw InvalidArgument("generator " + std::to_string(k) + " has wrong length");
    std::vector<int> m(n * n);
    for (int i = 0; i < n * n; ++i) m[i] = mod_p(gens[k][i], p);
    if (invert_matrix_mod_p(m, n, p).empty())
      throw NotInvertible("generator " + std::to_string(k) + " is singular mod " +
                          std::to_string(p));
    reduced.push_back(std::move(m));
  }
  FinGroup g;
  g.kind = FinGroup::Kind::Matrix;
  g.degree = n;
  g.prime = p;
  return close_group(std::move(g), reduced, cap);
}

bool Subgroup::contains(int e) const {
  return std::binary_search(members.begin(), members.end(), e);
}

bool Subgroup::contains_all(const Subgroup& other) const {
  return std::includes(members.begin(), members.end(), other.members.begin(),
                       other.members.end());
}

Subgroup trivial_subgroup(GroupPtr g) { return Subgroup{std::move(g), {0}}; }

Subgroup whole_group(GroupPtr g) {
  std::vector<int> all(g->order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return Subgroup{std::move(g), std::move(all)};
}

Subgroup subgroup_generate(GroupPtr g, const std::vector<int>& seed) {
  std::vector<char> present(g->order(), 0);
  std::vector<int> members;
  auto add = [&](int e) {
    if (!present[e]) { present[e] = 1; members.push_back(e); }
  };
  add(0);
  for (int e : seed) {
    if (e < 0 || e >= static_cast<int>(g->order()))
      throw InvalidArgument("seed element out of range");
    add(e);
  }
  // Worklist closure under multiplication; inverses come for free in a
  // finite group.
  for (std::size_t head = 0; head < members.size(); ++head) {
    int x = members[head];
    for (std::size_t j = 0; j < members.size(); ++j) {
      add(g->mul(x, members[j]));
      add(g->mul(members[j], x));
    }
  }
  std::sort(members.begin(), members.end());
  return Subgroup{std::move(g), std::move(members)};
}

Subgroup conjugate_subgroup(int g, const Subgroup& h) {
  const FinGroup& G = *h.parent;
  std::vector<int> m;
  m.reserve(h.members.size());
  int gi = G.inv(g);
  for (int x : h.members) m.push_back(G.mul(G.mul(g, x), gi));
  std::sort(m.begin(), m.end());
  return Subgroup{h.parent, std::move(m)};
}

Subgroup normalizer(const Subgroup& h) { return normalizer_in(whole_group(h.parent), h); }

Subgroup normalizer_in(const Subgroup& ambient, const Subgroup& h) {
  const FinGroup& G = *h.parent;
  std::vector<int> m;
  for (int g : ambient.members) {
    int gi = G.inv(g);
    bool ok = true;
    for (int x : h.members)
      if (!h.contains(G.mul(G.mul(g, x), gi))) { ok = false; break; }
    if (ok) m.push_back(g);
  }
  return Subgroup{h.parent, std::move(m)};
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<int> m;
  std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(),
                        b.members.end(), std::back_inserter(m));
  return Subgroup{a.parent, std::move(m)};
}

bool is_normal_in(const Subgroup& n, const Subgroup& ambient) {
  const FinGroup& G = *n.parent;
  for (int g : ambient.members) {
    int gi = G.inv(g);
    for (int x : n.members)
      if (!n.contains(G.mul(G.mul(g, x), gi))) return false;
  }
  return true;
}

Subgroup normal_closure(GroupPtr g, const std::vector<Subgroup>& seeds) {
  std::vector<int> seed;
  for (const auto& s : seeds) {
    if (s.parent != g) throw IncompatibleInputs("normal_closure: subgroup of a different group");
    seed.insert(seed.end(), s.members.begin(), s.members.end());
  }
  Subgroup h = subgroup_generate(g, seed);
  // Conjugation by the generators reaches all conjugations once the set is
  // stable under them.
  for (;;) {
    std::vector<int> next = h.members;
    bool grew = false;
    for (int gen : g->generators) {
      int gi = g->inv(gen);
      for (int x : h.members) {
        int c = g->mul(g->mul(gen, x), gi);
        if (!h.contains(c)) { next.push_back(c); grew = true; }
      }
    }
    if (!grew) break;
    h = subgroup_generate(g, next);
  }
  if (!is_normal_in(h, whole_group(g)))
    throw Error("normal_closure: result not normal (internal error)");
  return h;
}

Subgroup sylow_p(const Subgroup& h, int p) {
  if (!is_prime(p)) throw InvalidArgument("p must be prime");
  std::size_t target = 1;
  {
    std::size_t n = h.order();
    while (n % p == 0) { n /= p; target *= p; }
  }
  Subgroup part = trivial_subgroup(h.parent);
  while (part.order() < target) {
    Subgroup norm = normalizer_in(h, part);
    bool grew = false;
    for (int x : norm.members) {
      if (part.contains(x) || !h.parent->is_p_power_order(x, p)) continue;
      auto seed = part.members;
      seed.push_back(x);
      Subgroup bigger = subgroup_generate(h.parent, seed);
      if (bigger.order() > part.order()) {
        part = std::move(bigger);
        grew = true;
        break;
      }
    }
    if (!grew) throw Error("sylow_p: stuck below the full p-part (internal error)");
  }
  return part;
}

Subgroup o_p(const Subgroup& h, int p) {
  Subgroup s = sylow_p(h, p);
  Subgroup core = s;
  for (int g : h.members) {
    if (core.order() == 1) break;
    core = intersect(core, conjugate_subgroup(g, s));
  }
  if (!is_normal_in(core, h))
    throw Error("o_p: Sylow core not normal (internal error)");
  return core;
}

std::vector<int> transporter(const Subgroup& h, const Subgroup& k) {
  if (h.parent != k.parent) throw IncompatibleInputs("transporter: different parent groups");
  const FinGroup& G = *h.parent;
  std::vector<int> out;
  for (std::size_t g = 0; g < G.order(); ++g) {
    int gi = G.inv(static_cast<int>(g));
    bool ok = true;
    for (int x : h.members)
      if (!k.contains(G.mul(G.mul(static_cast<int>(g), x), gi))) { ok = false; break; }
    if (ok) out.push_back(static_cast<int>(g));
  }
  return out;
}

QuotientGroup quotient_group(GroupPtr g, const Subgroup& n) {
  if (n.parent != g) throw IncompatibleInputs("quotient_group: subgroup of a different group");
  // Normality under the generators implies normality.
  for (int gen : g->generators) {
    int gi = g->inv(gen);
    for (int x : n.members)
      if (!n.contains(g->mul(g->mul(gen, x), gi)))
        throw NotNormal("quotient_group: subgroup is not normal");
  }

  std::vector<int> proj(g->order(), -1);
  FinGroup q;
  q.kind = FinGroup::Kind::Coset;
  q.parent = g;
  for (std::size_t e = 0; e < g->order(); ++e) {
    if (proj[e] >= 0) continue;
    int idx = static_cast<int>(q.coset_rep.size());
    std::vector<int> coset;
    coset.reserve(n.order());
    for (int x : n.members) coset.push_back(g->mul(static_cast<int>(e), x));
    std::sort(coset.begin(), coset.end());
    for (int m : coset) proj[m] = idx;
    q.coset_rep.push_back(static_cast<int>(e));
    q.forms.push_back(std::move(coset));
  }
  q.parent_proj = proj;
  for (int gen : g->generators) {
    int img = proj[gen];
    if (img == 0) continue;
    if (std::find(q.generators.begin(), q.generators.end(), img) == q.generators.end())
      q.generators.push_back(img);
  }
  q.finalize();
  return QuotientGroup{std::make_shared<FinGroup>(std::move(q)), std::move(proj)};
}

Report verify_group_axioms(const FinGroup& g, std::size_t exhaustive_limit) {
  Report rep;
  std::size_t n = g.order();
  if (n == 0) {
    rep.fail("group is empty");
    return rep;
  }
  for (std::size_t a = 0; a < n; ++a) {
    int ai = static_cast<int>(a);
    if (g.mul(0, ai) != ai || g.mul(ai, 0) != ai)
      rep.fail("identity law fails at element " + std::to_string(a));
    if (g.mul(ai, g.inv(ai)) != 0 || g.mul(g.inv(ai), ai) != 0)
      rep.fail("inverse law fails at element " + std::to_string(a));
  }
  auto check_triple = [&](int a, int b, int c) {
    if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
      rep.fail("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) +
               "," + std::to_string(c) + ")");
  };
  if (n <= exhaustive_limit) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          check_triple(static_cast<int>(a), static_cast<int>(b), static_cast<int>(c));
  } else {
    // Deterministic sample: fixed-seed linear congruential stream.
    std::uint64_t state = 0x2545f4914f6cdd1dull;
    auto next = [&]() {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      return static_cast<std::size_t>(state >> 33) % n;
    };
    for (int t = 0; t < 1000000; ++t)
      check_triple(static_cast<int>(next()), static_cast<int>(next()),
                   static_cast<int>(next()));
  }
  return rep;
}

}  // namespace gpcat
