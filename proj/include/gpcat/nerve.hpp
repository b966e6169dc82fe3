#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gpcat/quotcat.hpp"
#include "gpcat/report.hpp"
#include "gpcat/smith.hpp"

namespace gpcat {

constexpr std::size_t kDefaultChainCap = 1000000;

/// Nondegenerate simplices of the nerve up to a fixed degree: paths of
/// composable non-identity morphism classes.  A k-chain is a start object
/// and k (class, target object) steps; chains of each degree are listed in
/// lexicographic order of (start, step, step, ...).
struct ChainComplex {
  struct Chain {
    int start = 0;
    std::vector<std::pair<int, int>> steps;  // (class, to-object)
  };

  const QuotCategory* cat = nullptr;
  int top = 0;
  std::vector<std::vector<Chain>> chains;  // [degree]
  std::vector<std::unordered_map<std::vector<int>, int, VecHash>> index;

  std::size_t size(int k) const { return chains[k].size(); }
  int find(int k, const std::vector<int>& key) const;
};

/// Keys a chain for index lookups: start, then each (class, target).
std::vector<int> chain_key(const ChainComplex::Chain& ch);

/// Enumerates chains of degree 0..top.  Throws ChainCap when any one degree
/// would exceed max_chains.
ChainComplex nerve_chains(const QuotCategory& c, int top,
                          std::size_t max_chains = kDefaultChainCap);

/// Boundary of degree k (mapping k-chains to (k-1)-chains) with constant
/// integer coefficients.  Inner faces whose composite is an identity are
/// degenerate and contribute nothing.
BigMat boundary_matrix(const ChainComplex& cx, int k);

/// Checks boundary(k) * boundary(k+1) == 0 for every built degree.
Report verify_boundaries(const ChainComplex& cx);

struct HomologyResult {
  int degree = 0;
  std::size_t rank = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1, each dividing the next
};

/// H_k with integer coefficients.  Needs chains through degree k+1, so
/// requires 0 <= k < top; throws DegreeOutOfRange otherwise.
HomologyResult homology(const ChainComplex& cx, int k);

/// Functor from a category to modules: a free module of the given rank per
/// object (over the integers when prime == 0, over F_prime otherwise) and a
/// matrix per morphism class, row-major with shape rank[target] x
/// rank[source], acting on column vectors.
struct CoefficientFunctor {
  const QuotCategory* cat = nullptr;
  int prime = 0;
  std::vector<int> rank;
  std::vector<std::vector<std::vector<std::vector<long long>>>> mats;  // [i][j][cls]
};

/// Rank-r constant functor: every object gets Z^r, every class the identity.
CoefficientFunctor constant_functor(const QuotCategory& c, int rank = 1);

/// Identity on identities and compatibility with every composition,
/// entrywise (mod the prime when one is set).
Report check_coefficient_functor(const CoefficientFunctor& f);

/// Boundary in functor coefficients: the face dropping the start object
/// maps its block through the first morphism's matrix; all other faces act
/// blockwise by the identity.
BigMat functor_boundary_matrix(const ChainComplex& cx, const CoefficientFunctor& f,
                               int k);

/// H_k of the nerve with coefficients in the functor.  Torsion is reported
/// only over the integers; over F_p the rank is the dimension.  Throws
/// NotFunctorial when the coefficient data fails its checks, and
/// DegreeOutOfRange as homology does.
HomologyResult functor_homology(const ChainComplex& cx, const CoefficientFunctor& f,
                                int k);

}  // namespace gpcat
