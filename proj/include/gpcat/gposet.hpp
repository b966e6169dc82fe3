#pragma once

#include <string>
#include <vector>

#include "gpcat/fingroup.hpp"
#include "gpcat/report.hpp"

namespace gpcat {

/// Finite poset with a group action and one distinguished "link" subgroup
/// per item.  The order relation is a dense boolean table; the action is a
/// full element-by-item table.  Consumers assume validate_action and
/// validate_links both pass.
struct GPoset {
  GroupPtr group;
  std::vector<std::string> items;
  std::vector<std::vector<char>> leq;     // leq[i][j] == 1 iff i <= j
  std::vector<std::vector<int>> action;   // action[g][i] = g.i
  std::vector<Subgroup> links;

  std::size_t size() const { return items.size(); }
  bool le(int i, int j) const { return leq[i][j] != 0; }
  int act(int g, int i) const { return action[g][i]; }
};

/// Checks that leq is a partial order (reflexive, antisymmetric, transitive
/// as given; transitivity is validated, never inferred), that the action
/// table is a genuine action by order-preserving maps, and that no element
/// moves an item strictly down.  Violations name the offending tuples.
Report validate_action(const GPoset& p);

/// Checks the two link axioms: containment reversal along the order
/// (i <= j implies link(j) inside link(i)) and conjugation equivariance
/// (g link(i) g^-1 == link(g.i) as sets), plus link(i) inside the
/// stabilizer of i.  Non-normal links in their stabilizer are reported as
/// notes, not violations.
Report validate_links(const GPoset& p);

/// {g : g.i == i}.  Throws LinkNotInStabilizer when the stored link is not
/// contained in it.
Subgroup stabilizer(const GPoset& p, int item);

struct OrbitPoset {
  std::vector<std::vector<int>> classes;  // sorted members, sorted by minimum
  std::vector<int> class_of;              // item -> class index
  std::vector<std::vector<char>> leq;
};

/// Quotient poset of G-orbits with [i] <= [j] iff i <= g.j for some g.
/// Antisymmetry of the induced relation is verified; throws NotAPartialOrder.
OrbitPoset orbit_poset(const GPoset& p);

/// Same poset and action with every link replaced by the trivial subgroup.
GPoset with_trivial_links(GPoset p);

}  // namespace gpcat
