#pragma once

#include <string>
#include <vector>

#include "gpcat/gposet.hpp"

namespace gpcat {

/// One morphism class: a set of group elements closed under right
/// multiplication by the source link.  Members are sorted; the canonical
/// representative is the minimum.
struct MorphClass {
  std::vector<int> members;
  int rep() const { return members.front(); }
};

/// hom(i,j) with a reverse lookup from group elements to class indices.
/// Classes are ordered by representative, so the identity class (when
/// present, i == j) is always class 0.
struct HomSet {
  std::vector<MorphClass> classes;
  std::vector<int> class_of;  // group element -> class index, -1 outside

  std::size_t size() const { return classes.size(); }
};

/// Finite category presented by hom-set classes of group elements together
/// with a full composition table.  comp(i,j,k) maps (class a: i->j,
/// class b: j->k) to the composite class in hom(i,k).  `second_first`
/// records which group product realizes the composite on members:
/// true means [g]: i->j followed by [h]: j->k is [hg] (the quotient
/// categories built from a GPoset), false means it is [gh] (coset-style
/// hom-sets such as the orbit category).  Taking opposites flips the flag.
struct QuotCategory {
  using CompTable = std::vector<std::vector<int>>;  // [b][a]

  GroupPtr group;
  std::vector<std::string> objects;
  std::vector<std::vector<HomSet>> hom;                    // [i][j]
  std::vector<std::vector<std::vector<CompTable>>> comp;   // [i][j][k]
  std::vector<int> identity_class;                         // index within hom[i][i]
  bool second_first = true;

  std::size_t num_objects() const { return objects.size(); }
  int compose(int i, int j, int k, int a, int b) const { return comp[i][j][k][b][a]; }
  bool is_identity(int i, int j, int cls) const {
    return i == j && cls == identity_class[i];
  }
};

/// Builds the quotient category of a validated GPoset: objects are the
/// items, hom(i,j) is {g : g.i <= j} divided by right multiplication with
/// the link of i, composition multiplies representatives.  The poset and
/// link axioms are validated first and the category axioms are re-verified
/// before returning; both failures throw ValidationFailed.
QuotCategory build_category(const GPoset& p);

/// Unit laws, associativity over all composable triples, well-definedness of
/// the composition table on every pair of class members, and disjointness /
/// coverage of each hom-set partition.  Stores the first 100 violations.
Report check_category_axioms(const QuotCategory& c);

QuotCategory opposite_category(const QuotCategory& c);

/// Restricts to the given object indices (order preserved).  Throws
/// EmptySelection when no objects are chosen.
QuotCategory full_subcategory(const QuotCategory& c, const std::vector<int>& objs);

/// Functor between quotient categories: an object map plus a per-hom-set
/// class map.
struct CatFunctor {
  const QuotCategory* src = nullptr;
  const QuotCategory* dst = nullptr;
  std::vector<int> obj_map;
  std::vector<std::vector<std::vector<int>>> class_map;  // [i][j][class]

  int map_class(int i, int j, int cls) const { return class_map[i][j][cls]; }
};

/// Identity-on-objects functor sending each morphism class of `fine` to the
/// class of any of its members in `coarse`.  Inputs must share the group,
/// objects, and underlying transporter sets; otherwise IncompatibleInputs.
CatFunctor quotient_functor(const QuotCategory& fine, const QuotCategory& coarse);

/// Checks identity preservation and compatibility with every composition.
Report verify_functor(const CatFunctor& f);

struct IsoCheck {
  bool is_iso = false;
  std::string witness;  // first obstruction when not an isomorphism
};

/// Bijective on objects and on every hom-set (and a verified functor).
IsoCheck functor_is_isomorphism(const CatFunctor& f);

/// Composite g after f; f.dst must be g.src's category.
CatFunctor compose_functors(const CatFunctor& f, const CatFunctor& g);

bool functors_equal(const CatFunctor& a, const CatFunctor& b);

}  // namespace gpcat
