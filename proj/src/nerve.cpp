#include "gpcat/nerve.hpp"

#include <algorithm>

#include "gpcat/errors.hpp"
#include "gpcat/fingroup.hpp"

namespace gpcat {

namespace {

// Face m of a chain: 0 drops the start, k drops the last step, inner faces
// compose two adjacent steps.  Returns false when the inner composite is an
// identity (degenerate image).
bool face(const QuotCategory& c, const ChainComplex::Chain& ch, int m,
          ChainComplex::Chain& out) {
  const int k = static_cast<int>(ch.steps.size());
  out.steps.clear();
  if (m == 0) {
    out.start = ch.steps[0].second;
    out.steps.assign(ch.steps.begin() + 1, ch.steps.end());
    return true;
  }
  if (m == k) {
    out.start = ch.start;
    out.steps.assign(ch.steps.begin(), ch.steps.end() - 1);
    return true;
  }
  int u = m >= 2 ? ch.steps[m - 2].second : ch.start;
  int v = ch.steps[m - 1].second;
  int w = ch.steps[m].second;
  int composite = c.comp[u][v][w][ch.steps[m].first][ch.steps[m - 1].first];
  if (c.is_identity(u, w, composite)) return false;
  out.start = ch.start;
  out.steps.assign(ch.steps.begin(), ch.steps.end());
  out.steps.erase(out.steps.begin() + (m - 1));
  out.steps[m - 1] = {composite, w};
  return true;
}

}  // namespace

std::vector<int> chain_key(const ChainComplex::Chain& ch) {
  std::vector<int> key;
  key.reserve(1 + 2 * ch.steps.size());
  key.push_back(ch.start);
  for (const auto& [cls, to] : ch.steps) {
    key.push_back(cls);
    key.push_back(to);
  }
  return key;
}

int ChainComplex::find(int k, const std::vector<int>& key) const {
  const auto& m = index[k];
  auto it = m.find(key);
  return it == m.end() ? -1 : it->second;
}

ChainComplex nerve_chains(const QuotCategory& c, int top, std::size_t max_chains) {
  if (top < 0) throw InvalidArgument("nerve_chains: negative degree");
  ChainComplex cx;
  cx.cat = &c;
  cx.top = top;
  cx.chains.resize(top + 1);
  cx.index.resize(top + 1);

  const int n = static_cast<int>(c.num_objects());
  for (int v = 0; v < n; ++v) cx.chains[0].push_back({v, {}});

  for (int k = 1; k <= top; ++k) {
    for (const auto& prev : cx.chains[k - 1]) {
      int from = prev.steps.empty() ? prev.start : prev.steps.back().second;
      for (int to = 0; to < n; ++to) {
        const HomSet& hs = c.hom[from][to];
        for (std::size_t cls = 0; cls < hs.classes.size(); ++cls) {
          if (c.is_identity(from, to, static_cast<int>(cls))) continue;
          if (cx.chains[k].size() >= max_chains)
            throw ChainCap("nerve_chains: more than " + std::to_string(max_chains) +
                           " chains in degree " + std::to_string(k));
          ChainComplex::Chain ch = prev;
          ch.steps.emplace_back(static_cast<int>(cls), to);
          cx.chains[k].push_back(std::move(ch));
        }
      }
    }
  }
  for (int k = 0; k <= top; ++k)
    for (std::size_t i = 0; i < cx.chains[k].size(); ++i)
      cx.index[k][chain_key(cx.chains[k][i])] = static_cast<int>(i);
  return cx;
}

BigMat boundary_matrix(const ChainComplex& cx, int k) {
  if (k < 1 || k > cx.top) throw DegreeOutOfRange("boundary_matrix: degree " +
                                                  std::to_string(k));
  const QuotCategory& c = *cx.cat;
  BigMat m(cx.size(k - 1), cx.size(k));
  ChainComplex::Chain f;
  for (std::size_t j = 0; j < cx.size(k); ++j) {
    const auto& ch = cx.chains[k][j];
    int sign = 1;
    for (int face_idx = 0; face_idx <= k; ++face_idx, sign = -sign) {
      if (!face(c, ch, face_idx, f)) continue;
      int row = cx.find(k - 1, chain_key(f));
      if (row < 0) throw Error("boundary_matrix: face not found");
      m.at(row, j) += sign;
    }
  }
  return m;
}

Report verify_boundaries(const ChainComplex& cx) {
  Report rep;
  for (int k = 2; k <= cx.top; ++k) {
    BigMat a = boundary_matrix(cx, k - 1);
    BigMat b = boundary_matrix(cx, k);
    for (std::size_t i = 0; i < a.rows; ++i)
      for (std::size_t j = 0; j < b.cols; ++j) {
        BigInt acc = 0;
        for (std::size_t t = 0; t < a.cols; ++t)
          if (!a.at(i, t).is_zero() && !b.at(t, j).is_zero())
            acc += a.at(i, t) * b.at(t, j);
        if (!acc.is_zero()) {
          rep.fail("boundary of boundary nonzero at degree " + std::to_string(k) +
                   " entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
          if (rep.total_violations > 20) return rep;
        }
      }
  }
  return rep;
}

HomologyResult homology(const ChainComplex& cx, int k) {
  if (k < 0 || k >= cx.top)
    throw DegreeOutOfRange("homology: degree " + std::to_string(k) +
                           " needs chains through degree " + std::to_string(k + 1));
  std::size_t rank_k = k == 0 ? 0 : smith_normal_form(boundary_matrix(cx, k)).rank;
  SmithResult up = smith_normal_form(boundary_matrix(cx, k + 1));
  HomologyResult h;
  h.degree = k;
  h.rank = cx.size(k) - rank_k - up.rank;
  for (const auto& d : up.invariants)
    if (d > 1) h.torsion.push_back(d);
  return h;
}

CoefficientFunctor constant_functor(const QuotCategory& c, int rank) {
  if (rank < 0) throw InvalidArgument("constant_functor: negative rank");
  CoefficientFunctor f;
  f.cat = &c;
  f.rank.assign(c.num_objects(), rank);
  const int n = static_cast<int>(c.num_objects());
  std::vector<long long> ident(rank * rank, 0);
  for (int t = 0; t < rank; ++t) ident[t * rank + t] = 1;
  f.mats.assign(n, {});
  for (int i = 0; i < n; ++i) {
    f.mats[i].assign(n, {});
    for (int j = 0; j < n; ++j)
      f.mats[i][j].assign(c.hom[i][j].classes.size(), ident);
  }
  return f;
}

namespace {

long long norm_entry(long long x, int prime) {
  if (prime == 0) return x;
  long long r = x % prime;
  return r < 0 ? r + prime : r;
}

}  // namespace

Report check_coefficient_functor(const CoefficientFunctor& f) {
  Report rep;
  rep.max_stored = 50;
  const QuotCategory& c = *f.cat;
  const int n = static_cast<int>(c.num_objects());
  if (f.prime != 0 && !is_prime(f.prime)) {
    rep.fail("coefficient modulus is not prime");
    return rep;
  }
  if (static_cast<int>(f.rank.size()) != n ||
      static_cast<int>(f.mats.size()) != n) {
    rep.fail("coefficient data has the wrong number of objects");
    return rep;
  }
  for (int i = 0; i < n; ++i) {
    if (f.rank[i] < 0) { rep.fail("negative rank"); return rep; }
    if (static_cast<int>(f.mats[i].size()) != n) {
      rep.fail("coefficient data has the wrong shape");
      return rep;
    }
    for (int j = 0; j < n; ++j) {
      if (f.mats[i][j].size() != c.hom[i][j].classes.size()) {
        rep.fail("one matrix per class is required at hom(" + c.objects[i] + "," +
                 c.objects[j] + ")");
        return rep;
      }
      for (const auto& m : f.mats[i][j])
        if (m.size() != static_cast<std::size_t>(f.rank[j] * f.rank[i])) {
          rep.fail("matrix shape mismatch at hom(" + c.objects[i] + "," +
                   c.objects[j] + ")");
          return rep;
        }
    }
  }

  for (int i = 0; i < n; ++i) {
    const auto& m = f.mats[i][i][c.identity_class[i]];
    for (int r = 0; r < f.rank[i]; ++r)
      for (int s = 0; s < f.rank[i]; ++s)
        if (norm_entry(m[r * f.rank[i] + s] - (r == s ? 1 : 0), f.prime) != 0) {
          rep.fail("identity of " + c.objects[i] + " is not sent to the identity matrix");
          r = s = f.rank[i];
        }
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (c.hom[i][j].classes.empty()) continue;
      for (int k = 0; k < n; ++k) {
        if (c.hom[j][k].classes.empty()) continue;
        for (std::size_t b = 0; b < c.hom[j][k].classes.size(); ++b)
          for (std::size_t a = 0; a < c.hom[i][j].classes.size(); ++a) {
            const auto& ma = f.mats[i][j][a];
            const auto& mb = f.mats[j][k][b];
            const auto& mc = f.mats[i][k][c.comp[i][j][k][b][a]];
            bool ok = true;
            for (int r = 0; r < f.rank[k] && ok; ++r)
              for (int s = 0; s < f.rank[i] && ok; ++s) {
                long long acc = 0;
                for (int t = 0; t < f.rank[j]; ++t)
                  acc += mb[r * f.rank[j] + t] * ma[t * f.rank[i] + s];
                if (norm_entry(acc - mc[r * f.rank[i] + s], f.prime) != 0) ok = false;
              }
            if (!ok)
              rep.fail("matrices break composition at hom(" + c.objects[i] + "," +
                       c.objects[j] + ") class " + std::to_string(a) + " then hom(" +
                       c.objects[j] + "," + c.objects[k] + ") class " +
                       std::to_string(b));
          }
      }
    }
  return rep;
}

BigMat functor_boundary_matrix(const ChainComplex& cx, const CoefficientFunctor& f,
                               int k) {
  if (k < 1 || k > cx.top)
    throw DegreeOutOfRange("functor_boundary_matrix: degree " + std::to_string(k));
  const QuotCategory& c = *cx.cat;

  auto block_starts = [&](int deg) {
    std::vector<std::size_t> off(cx.size(deg) + 1, 0);
    for (std::size_t i = 0; i < cx.size(deg); ++i)
      off[i + 1] = off[i] + f.rank[cx.chains[deg][i].start];
    return off;
  };
  std::vector<std::size_t> row_off = block_starts(k - 1);
  std::vector<std::size_t> col_off = block_starts(k);

  BigMat m(row_off.back(), col_off.back());
  ChainComplex::Chain fc;
  for (std::size_t j = 0; j < cx.size(k); ++j) {
    const auto& ch = cx.chains[k][j];
    int rs = f.rank[ch.start];
    int sign = 1;
    for (int face_idx = 0; face_idx <= k; ++face_idx, sign = -sign) {
      if (!face(c, ch, face_idx, fc)) continue;
      int row = cx.find(k - 1, chain_key(fc));
      if (row < 0) throw Error("functor_boundary_matrix: face not found");
      if (face_idx == 0) {
        int v1 = ch.steps[0].second;
        const auto& blk = f.mats[ch.start][v1][ch.steps[0].first];
        int rt = f.rank[v1];
        for (int r = 0; r < rt; ++r)
          for (int s = 0; s < rs; ++s)
            m.at(row_off[row] + r, col_off[j] + s) += sign * blk[r * rs + s];
      } else {
        for (int s = 0; s < rs; ++s)
          m.at(row_off[row] + s, col_off[j] + s) += sign;
      }
    }
  }
  if (f.prime != 0)
    for (auto& x : m.a) {
      x %= f.prime;
      if (x < 0) x += f.prime;
    }
  return m;
}

HomologyResult functor_homology(const ChainComplex& cx, const CoefficientFunctor& f,
                                int k) {
  Report chk = check_coefficient_functor(f);
  if (!chk.passed())
    throw NotFunctorial("functor_homology: " + chk.summary());
  if (k < 0 || k >= cx.top)
    throw DegreeOutOfRange("functor_homology: degree " + std::to_string(k) +
                           " needs chains through degree " + std::to_string(k + 1));

  std::size_t dim_k = 0;
  for (std::size_t i = 0; i < cx.size(k); ++i) dim_k += f.rank[cx.chains[k][i].start];

  HomologyResult h;
  h.degree = k;
  if (f.prime == 0) {
    std::size_t rank_k =
        k == 0 ? 0 : smith_normal_form(functor_boundary_matrix(cx, f, k)).rank;
    SmithResult up = smith_normal_form(functor_boundary_matrix(cx, f, k + 1));
    h.rank = dim_k - rank_k - up.rank;
    for (const auto& d : up.invariants)
      if (d > 1) h.torsion.push_back(d);
  } else {
    std::size_t rank_k =
        k == 0 ? 0 : rank_mod_p(functor_boundary_matrix(cx, f, k), f.prime);
    std::size_t rank_up = rank_mod_p(functor_boundary_matrix(cx, f, k + 1), f.prime);
    h.rank = dim_k - rank_k - rank_up;
  }
  return h;
}

}  // namespace gpcat
