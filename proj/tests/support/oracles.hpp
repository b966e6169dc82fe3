#pragma once

// Independent cross-checks used by the tests.  Everything here recomputes
// results from first principles, away from the library code paths it is
// checking: set-based closure instead of indexed BFS, level-by-level
// p-subgroup enumeration, an unnormalized bar complex for group homology,
// and brute-force transporter/coset counting for hom-sets.

#include <cstdint>
#include <set>
#include <vector>

#include "gpcat/fingroup.hpp"
#include "gpcat/gposet.hpp"
#include "gpcat/smith.hpp"

namespace oracle {

// Order of the permutation group generated by the given image lists,
// computed by repeated set products until stable.
std::size_t perm_closure_order(int degree, const std::vector<std::vector<int>>& gens);

// Same for matrix groups over F_p.
std::size_t matrix_closure_order(int n, int p, const std::vector<std::vector<int>>& gens);

// Determinant mod p of a row-major n x n matrix.
int det_mod_p(std::vector<int> m, int n, int p);

// Every subgroup of g, as sorted member lists.  Exponential-ish; keep |g|
// small (<= 48 in the tests).
std::vector<std::vector<int>> all_subgroups(const gpcat::GroupPtr& g);

// Every p-subgroup of g, found level by level: each p-group of order p^(k+1)
// contains a normal subgroup of index p, so extending normalizer elements of
// p-power order finds them all.
std::vector<std::vector<int>> all_p_subgroups(const gpcat::GroupPtr& g, int p);

// Gaussian binomial: number of k-dimensional subspaces of F_p^n.
long long gaussian_binomial(int n, int k, int p);

// H_0..H_top of the group generated by `members` inside its parent, with
// coefficients in the module given by rank and one matrix per member
// (row-major, integer entries).  Unnormalized bar complex, Smith reduction.
struct BarHomology {
  std::vector<int> rank;
  std::vector<std::vector<long long>> torsion;
};
BarHomology bar_homology(const gpcat::Subgroup& h,
                         int module_rank,
                         const std::vector<std::vector<long long>>& member_matrices,
                         int top);

// |{g : g.i <= j}| in a GPoset, by direct scan.
std::size_t transporter_count(const gpcat::GPoset& p, int i, int j);

// Number of right link-cosets in the transporter set, by direct partition.
std::size_t hom_class_count(const gpcat::GPoset& p, int i, int j);

}  // namespace oracle
