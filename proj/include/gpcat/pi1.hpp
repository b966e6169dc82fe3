#pragma once

#include <string>
#include <vector>

#include "gpcat/fingroup.hpp"
#include "gpcat/gposet.hpp"
#include "gpcat/quotcat.hpp"
#include "gpcat/report.hpp"
#include "gpcat/smith.hpp"

namespace gpcat {

/// One generator of the edge-path presentation: a non-identity morphism
/// class, tagged with its canonical representative in the group.
struct PresGen {
  int src = 0;
  int dst = 0;
  int cls = 0;
  int rep = 0;
  std::string name;
};

/// Fundamental group of the category read off its nerve: one generator per
/// non-identity morphism class, singleton relators killing a spanning tree
/// of the underlying graph, and one relator per composable pair saying the
/// two-step path equals its composite.  Relator words are in path order:
/// +k is generator k-1 traversed forward, -k backward, first entry first.
struct Presentation {
  const QuotCategory* cat = nullptr;
  int basepoint = 0;
  std::vector<PresGen> generators;
  std::vector<std::vector<int>> relators;
  std::vector<char> in_tree;          // per generator
  std::vector<int> bfs_order;         // objects, basepoint first
  std::vector<int> parent_gen;        // per object, -1 at the basepoint
  std::vector<char> parent_reversed;  // tree edge used against its direction
};

/// Builds the presentation at the given object.  The spanning tree is grown
/// breadth-first with neighbours in ascending order, taking class 0 of the
/// forward hom-set when it is nonempty and class 0 of the reverse one
/// otherwise, so the result is deterministic.  Throws DisconnectedBasepoint
/// when some object cannot be reached through morphisms in either direction.
Presentation pi1_presentation(const QuotCategory& c, int basepoint);

struct EnumResult {
  bool completed = false;
  std::size_t index = 0;           // order of the presented group when completed
  std::size_t cosets_defined = 0;  // rows ever allocated, live or merged
};

/// Coset enumeration of the trivial subgroup: relators are traced at every
/// coset, gaps are filled with fresh cosets, clashes merge through a
/// union-find, and remaining undefined entries are filled row by row.  When
/// the table closes, `index` is the order of the presented group.  Stops
/// inconclusively once `max_cosets` rows have been allocated; that bounds
/// memory but says nothing about the group.
EnumResult coset_enumeration(int ngens, const std::vector<std::vector<int>>& relators,
                             std::size_t max_cosets = 10000);

/// Normal closure of all the links taken together.
Subgroup e_subgroup(const GPoset& p);

struct AbelianInvariants {
  std::size_t rank = 0;
  std::vector<BigInt> torsion;
};

/// Abelianization of the presented group, via the Smith form of the
/// relator exponent-sum matrix.
AbelianInvariants abelianization(const Presentation& pres);

struct Pi1Check {
  Presentation pres;
  Subgroup normal_e;       // normal closure of the links
  GroupPtr quotient;       // group / normal_e
  std::vector<int> rho;    // generator -> quotient element
  EnumResult enumeration;
  Report report;
};

/// Verifies that the fundamental group of the category at `basepoint` is
/// the acting group modulo the normal closure of the links.  Every
/// generator is mapped into the quotient through spanning-tree potentials;
/// the check passes when tree generators and relators die, the images
/// generate the quotient, and the enumerated order of the presented group
/// equals the quotient order.  Failures land in the report, not in throws;
/// an enumeration that exceeds max_cosets is reported as unresolved.
Pi1Check pi1_vs_quotient(const GPoset& p, const QuotCategory& c, int basepoint = 0,
                         std::size_t max_cosets = 10000);

}  // namespace gpcat
