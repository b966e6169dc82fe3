#include "gpcat/smith.hpp"

#include <cstdlib>

namespace gpcat {

namespace {

BigInt big_abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

}  // namespace

SmithResult smith_normal_form(BigMat m) {
  const std::size_t R = m.rows, C = m.cols;
  SmithResult out;
  std::size_t t = 0;
  while (t < R && t < C) {
    // Minimal nonzero entry of the trailing submatrix becomes the pivot.
    std::size_t pi = R, pj = C;
    BigInt best = 0;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j) {
        const BigInt& v = m.at(i, j);
        if (v == 0) continue;
        BigInt av = big_abs(v);
        if (pi == R || av < best) { best = av; pi = i; pj = j; }
      }
    if (pi == R) break;  // trailing submatrix is zero

    for (;;) {
      if (pi != t)
        for (std::size_t j = t; j < C; ++j) std::swap(m.at(pi, j), m.at(t, j));
      if (pj != t)
        for (std::size_t i = t; i < R; ++i) std::swap(m.at(i, pj), m.at(i, t));

      bool remainder = false;
      const BigInt piv = m.at(t, t);
      for (std::size_t i = t + 1; i < R; ++i) {
        if (m.at(i, t) == 0) continue;
        BigInt q = m.at(i, t) / piv;
        if (q != 0)
          for (std::size_t j = t; j < C; ++j) m.at(i, j) -= q * m.at(t, j);
        if (m.at(i, t) != 0) remainder = true;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (m.at(t, j) == 0) continue;
        BigInt q = m.at(t, j) / piv;
        if (q != 0)
          for (std::size_t i = t; i < R; ++i) m.at(i, j) -= q * m.at(i, t);
        if (m.at(t, j) != 0) remainder = true;
      }

      if (remainder) {
        // A leftover entry is strictly smaller than the pivot; re-pivot on
        // the new minimum.  |pivot| strictly decreases, so this terminates.
        pi = R; pj = C;
        BigInt nb = 0;
        for (std::size_t i = t; i < R; ++i)
          for (std::size_t j = t; j < C; ++j) {
            const BigInt& v = m.at(i, j);
            if (v == 0) continue;
            BigInt av = big_abs(v);
            if (pi == R || av < nb) { nb = av; pi = i; pj = j; }
          }
        continue;
      }

      // Row and column are clear.  Make the pivot divide the rest of the
      // submatrix before moving on, so invariants come out in chain order.
      bool fixed = true;
      for (std::size_t i = t + 1; i < R && fixed; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (m.at(i, j) % piv != 0) {
            for (std::size_t jj = t; jj < C; ++jj) m.at(t, jj) += m.at(i, jj);
            fixed = false;
            break;
          }
      if (fixed) break;
      pi = t; pj = t;
      // After the row addition the pivot column has one nonzero (the pivot),
      // but the pivot row does not; re-run elimination.
    }

    if (m.at(t, t) < 0) m.at(t, t) = -m.at(t, t);
    ++t;
  }

  for (std::size_t i = 0; i < t; ++i)
    if (m.at(i, i) != 0) out.invariants.push_back(m.at(i, i));
  out.rank = out.invariants.size();
  return out;
}

std::size_t rank_mod_p(const BigMat& m, int p) {
  const std::size_t R = m.rows, C = m.cols;
  std::vector<std::vector<int>> a(R, std::vector<int>(C));
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) {
      BigInt v = m.at(i, j) % p;
      if (v < 0) v += p;
      a[i][j] = static_cast<int>(v);
    }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < C && rank < R; ++col) {
    std::size_t piv = R;
    for (std::size_t i = rank; i < R; ++i)
      if (a[i][col] != 0) { piv = i; break; }
    if (piv == R) continue;
    std::swap(a[piv], a[rank]);
    int v = a[rank][col], vinv = 1;
    for (int x = 1; x < p; ++x)
      if (x * v % p == 1) { vinv = x; break; }
    for (std::size_t j = col; j < C; ++j) a[rank][j] = a[rank][j] * vinv % p;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == rank || a[i][col] == 0) continue;
      int f = a[i][col];
      for (std::size_t j = col; j < C; ++j)
        a[i][j] = ((a[i][j] - f * a[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

}  // namespace gpcat
