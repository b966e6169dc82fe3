#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "gpcat/fingroup.hpp"
#include "gpcat/gposet.hpp"
#include "gpcat/quotcat.hpp"
#include "gpcat/report.hpp"

namespace gpcat {

/// Proper nontrivial subspaces of F_p^n, each stored as its reduced
/// row-echelon basis (rows flattened into one vector), sorted by dimension
/// and then lexicographically.  Everything downstream is exhaustive, so n
/// and p are deliberately capped small.
struct SubspaceSet {
  int n = 0;
  int p = 0;
  std::vector<int> dim;
  std::vector<std::vector<int>> basis;
  std::unordered_map<std::vector<int>, int, VecHash> index;

  std::size_t size() const { return dim.size(); }
  int index_of(const std::vector<int>& rref_rows) const;
};

/// Throws ScaleGuard unless 1 <= n <= 4 and p is one of 2, 3, 5.
SubspaceSet enumerate_subspaces(int n, int p);

/// Reduced row echelon form over F_p; zero rows are dropped.
std::vector<std::vector<int>> rref_mod_p(std::vector<std::vector<int>> rows,
                                         int ncols, int p);

/// Subspace a contained in subspace b.
bool subspace_leq(const SubspaceSet& s, int a, int b);

/// GL_n(F_p) generated by the elementary transvection, the basis cycle and,
/// for p > 2, a primitive-root scaling of the first coordinate.
GroupPtr gl_group(int n, int p, std::size_t order_cap = kDefaultOrderCap);

/// Flags are chains of proper nontrivial subspaces, the empty chain
/// included, ordered by reverse refinement: a longer chain sits below every
/// subchain of it, and the empty flag is the unique top.  The link of a
/// flag is its graded unipotent subgroup: the elements inducing the
/// identity on every successive quotient of the chain.
struct FlagData {
  int n = 0;
  int p = 0;
  GroupPtr group;
  SubspaceSet spaces;
  std::vector<std::vector<int>> flags;  // ascending subspace indices
  GPoset poset;
};

FlagData flag_gposet(int n, int p, std::size_t order_cap = kDefaultOrderCap);

/// {g : g fixes the flag}.
Subgroup flag_stabilizer(const FlagData& fd, int flag);

/// Elements acting as the identity on every successive quotient of the
/// chain (recomputed from the linear algebra, not read off the poset).
Subgroup graded_link(const FlagData& fd, int flag);

/// graded_link(flag) == O_p(flag_stabilizer(flag)).
bool verify_link_is_op(const FlagData& fd, int flag);

/// N_G(graded_link(flag)) == flag_stabilizer(flag).
bool verify_normalizer_is_parabolic(const FlagData& fd, int flag);

/// U is a p-group with O_p(N_G(U)) == U.
bool p_radical_test(const Subgroup& u, int p);

struct RadicalCollection {
  GroupPtr group;
  int p = 0;
  std::vector<Subgroup> members;  // sorted by order, then by member list

  std::size_t size() const { return members.size(); }
  int index_of(const std::vector<int>& subgroup_members) const;  // -1 if absent
};

/// Every p-radical subgroup of g, found by exhaustive p-subgroup
/// enumeration and filtering.  Throws ScaleGuard when |g| > max_order.
RadicalCollection exhaustive_radical_enumeration(const GroupPtr& g, int p,
                                                 std::size_t max_order = 200);

/// The graded links of all flags, deduplicated and sorted.
RadicalCollection flag_link_collection(const FlagData& fd);

/// Coset category on a conjugation-closed radical collection:
/// hom(a,b) = {g : g^-1 U_a g <= U_b} partitioned into cosets g U_b, and
/// the composite of [g]: a->b with [h]: b->c is [gh].  Throws NotRadical
/// when a member fails p_radical_test, InvalidArgument when the collection
/// is not closed under conjugation.
QuotCategory orbit_category(const RadicalCollection& r);

/// The radicals as a poset under inclusion, with the conjugation action
/// and trivial links.  Its category has singleton hom-classes, one per g
/// with g U_a g^-1 <= U_b.
GPoset radical_transport_gposet(const RadicalCollection& r);

/// The square of categories and functors over a flag category:
///
///       cbs --quot--> crbs
///        |              |
///       psi            phi
///        |              |
///        v              v
///   transport_op --> orbit_op
///             kappa_op
///
/// where psi sends a morphism g to g^-1, phi sends a class to the class
/// with the same members, and kappa_op inverts representatives.  The
/// report records: the transporter identity
/// {g : U'^g <= U} == {g : g P g^-1 <= P'} for every flag pair, the
/// normalizer of each link being the full stabilizer, each link passing
/// the p-radical test, flags corresponding bijectively to radicals,
/// functoriality of all four maps, phi and psi being isomorphisms, and the
/// square commuting class by class.
struct BorelTitsData {
  const QuotCategory* crbs = nullptr;
  std::shared_ptr<QuotCategory> cbs;
  std::shared_ptr<QuotCategory> transport_op;
  std::shared_ptr<QuotCategory> orbit_op;
  RadicalCollection radicals;
  std::vector<int> flag_to_radical;
  CatFunctor quot;
  CatFunctor psi;
  CatFunctor phi;
  CatFunctor kappa_op;
  Report report;
};

/// crbs must be build_category(fd.poset) and stays owned by the caller.
BorelTitsData borel_tits_functors(const FlagData& fd, const QuotCategory& crbs);

}  // namespace gpcat
