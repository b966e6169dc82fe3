#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "gpcat/errors.hpp"
#include "gpcat/report.hpp"

namespace gpcat {

constexpr std::size_t kDefaultOrderCap = 20000;

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return h;
  }
};

class FinGroup;
using GroupPtr = std::shared_ptr<const FinGroup>;

/// Finite group with elements indexed 0..order-1; index 0 is always the
/// identity.  Indices are assigned by breadth-first closure from the identity
/// over the generators in input order, so the same input reproduces the same
/// indexing.  Elements carry a canonical form: the image list of a
/// permutation, the row-major entries of a matrix over F_p, or the sorted
/// member list of a coset for quotient groups.
class FinGroup {
 public:
  enum class Kind { Perm, Matrix, Coset };

  Kind kind = Kind::Perm;
  int degree = 0;  // permutation points, or matrix dimension
  int prime = 0;   // field characteristic (Matrix only)

  std::vector<std::vector<int>> forms;
  std::vector<int> generators;  // element indices, input order
  std::vector<int> inverse;

  // Coset groups multiply through the parent group (see quotient_group).
  GroupPtr parent;
  std::vector<int> coset_rep;
  std::vector<int> parent_proj;

  std::unordered_map<std::vector<int>, int, VecHash> form_index;

  std::size_t order() const { return forms.size(); }
  int mul(int a, int b) const;
  int mul3(int a, int b, int c) const { return mul(mul(a, b), c); }
  int conj(int g, int x) const { return mul3(g, x, inverse[g]); }
  int inv(int a) const { return inverse[a]; }
  int index_of(const std::vector<int>& f) const;
  int element_order(int a) const;
  bool is_p_power_order(int a, int p) const;

  std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) const;
  std::vector<int> invert_form(const std::vector<int>& f) const;

  // Builds the inverse table, the form index, and (for small orders) a dense
  // multiplication table.  Called once by the factory functions.
  void finalize();

 private:
  std::vector<int32_t> mul_table_;
};

/// gens are image lists on 0..degree-1.  Throws NotBijection for a bad
/// generator, CapExceeded when the closure grows past cap.
GroupPtr group_from_permutations(int degree, const std::vector<std::vector<int>>& gens,
                                 std::size_t cap = kDefaultOrderCap);

/// gens are row-major n*n matrices; entries are reduced mod p on ingest.
/// p must be prime.  Throws NotInvertible for a singular generator.
GroupPtr group_from_matrices(int n, int p, const std::vector<std::vector<int>>& gens,
                             std::size_t cap = kDefaultOrderCap);

struct Subgroup {
  GroupPtr parent;
  std::vector<int> members;  // sorted ascending, always contains 0

  std::size_t order() const { return members.size(); }
  bool contains(int e) const;
  bool contains_all(const Subgroup& other) const;
  bool operator==(const Subgroup& o) const {
    return parent == o.parent && members == o.members;
  }
};

Subgroup trivial_subgroup(GroupPtr g);
Subgroup whole_group(GroupPtr g);
Subgroup subgroup_generate(GroupPtr g, const std::vector<int>& seed);
Subgroup conjugate_subgroup(int g, const Subgroup& h);
Subgroup normalizer(const Subgroup& h);
Subgroup normalizer_in(const Subgroup& ambient, const Subgroup& h);
Subgroup normal_closure(GroupPtr g, const std::vector<Subgroup>& seeds);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
bool is_normal_in(const Subgroup& n, const Subgroup& ambient);

/// Sylow p-subgroup of h, grown by normalizer steps; deterministic.
Subgroup sylow_p(const Subgroup& h, int p);

/// Largest normal p-subgroup of h: the intersection of the h-conjugates of
/// one Sylow p-subgroup.  Verified normal before returning.
Subgroup o_p(const Subgroup& h, int p);

/// {g : g H g^-1 is contained in K}, ascending.
std::vector<int> transporter(const Subgroup& h, const Subgroup& k);

struct QuotientGroup {
  GroupPtr group;
  std::vector<int> projection;  // parent element -> quotient element
};

/// Throws NotNormal when n is not normal.  Cosets are indexed by their
/// minimal member, ascending, so the identity coset is index 0.
QuotientGroup quotient_group(GroupPtr g, const Subgroup& n);

/// Identity, inverse and associativity axioms.  Associativity is exhaustive
/// up to exhaustive_limit elements, deterministically sampled above that.
Report verify_group_axioms(const FinGroup& g, std::size_t exhaustive_limit = 1000);

bool is_prime(int p);

}  // namespace gpcat
