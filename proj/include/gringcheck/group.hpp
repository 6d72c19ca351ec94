#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gringcheck/common.hpp"

namespace gring {

// Finite group given by an explicit multiplication table. Element 0 is the
// identity. Immutable after construction.
class Group {
 public:
  static Group from_table(std::string id, std::vector<int> mul, int order,
                          std::vector<std::string> labels = {});

  const std::string& id() const { return id_; }
  int order() const { return n_; }
  int mul(int a, int b) const { return mul_[(size_t)a * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int conj(int a, int g) const { return mul(mul(inv_[g], a), g); }  // a^g
  int pow(int g, long e) const;
  int elem_order(int g) const { return order_[g]; }
  int exponent() const { return exponent_; }
  bool is_abelian() const { return abelian_; }
  const std::string& label(int g) const { return labels_[g]; }

  // Conjugacy classes, sorted internally; class 0 is {identity}.
  int num_classes() const { return (int)classes_.size(); }
  int class_of(int g) const { return class_of_[g]; }
  const std::vector<int>& class_elems(int c) const { return classes_[c]; }
  int class_rep(int c) const { return classes_[c][0]; }

  // Distinguished parts (sorted element lists; may be trivial/absent).
  const std::vector<int>& gamma_part() const { return gamma_; }
  const std::vector<int>& z_part() const { return z_; }
  const std::vector<int>& abelian_normal() const { return abelA_; }
  int z_order() const { return z_.empty() ? 1 : (int)z_.size(); }

  std::vector<int> center() const;

  void set_parts(std::vector<int> gamma, std::vector<int> z,
                 std::vector<int> abelA);
  // complement subgroup of a nontrivial gamma part (internal direct product);
  // defaults to the whole group when the gamma part is trivial
  void set_gamma_complement(std::vector<int> comp);
  const std::vector<int>& gamma_complement() const;

 private:
  std::string id_;
  int n_ = 1;
  std::vector<int> mul_, inv_, order_;
  std::vector<std::string> labels_;
  std::vector<int> class_of_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> gamma_, z_, abelA_, gamma_comp_;
  int exponent_ = 1;
  bool abelian_ = true;
};

// Subgroup of a parent group: sorted element-index list containing 0.
struct Subgroup {
  const Group* parent = nullptr;
  std::vector<int> elems;  // sorted, elems[0] == 0

  int order() const { return (int)elems.size(); }
  bool contains(int g) const;
  bool contains_all(const std::vector<int>& gs) const;
  bool operator==(const Subgroup& o) const { return elems == o.elems; }
  bool operator<(const Subgroup& o) const {
    if (elems.size() != o.elems.size()) return elems.size() < o.elems.size();
    return elems < o.elems;
  }
};

Subgroup closure(const Group& G, std::vector<int> gens);
Subgroup whole_group(const Group& G);
Subgroup trivial_subgroup(const Group& G);
bool is_subgroup(const Group& G, const std::vector<int>& elems);
bool is_normal(const Group& G, const Subgroup& U);
bool is_abelian_sub(const Group& G, const Subgroup& U);
Subgroup conjugate_subgroup(const Group& G, const Subgroup& U, int g);
Subgroup normalizer(const Group& G, const Subgroup& U);
Subgroup intersect(const Subgroup& U, const Subgroup& V);
Subgroup commutator_subgroup(const Group& G, const Subgroup& U);

// Materialize a subgroup as a Group of its own (indices 0..|U|-1).
// to_parent maps new indices to parent indices. gamma/z parts are the
// intersections with the parent's parts (z must be contained in U when
// present); the designated abelian normal subgroup is not carried over.
struct MaterializedGroup {
  std::shared_ptr<Group> group;
  std::vector<int> to_parent;
  std::map<int, int> from_parent;
};
MaterializedGroup materialize(const Group& G, const Subgroup& U);

// Quotient G/N for N normal: cosets ordered by minimal element; coset of the
// identity is element 0. to_rep maps quotient elements to minimal coset
// representatives in G.
struct QuotientGroup {
  std::shared_ptr<Group> group;
  std::vector<int> to_rep;
  std::vector<int> proj;  // G-element -> quotient element
};
QuotientGroup quotient(const Group& G, const Subgroup& N,
                       const std::string& id_suffix = "");

// Exhaustive subgroup lattice. Throws SizeBoundError beyond |G| <= 3^5 * w.
struct Lattice {
  const Group* G = nullptr;
  std::vector<Subgroup> subs;             // canonically sorted
  std::vector<std::vector<char>> leq;     // leq[i][j]: subs[i] <= subs[j]
  std::vector<int> normalizer_idx;

  int index_of(const Subgroup& U) const;
  std::vector<int> below(int i) const;  // strictly smaller subgroups
};
Lattice subgroup_lattice(const Group& G);
int lattice_size_bound(const Group& G);

// Moebius values mu(V) on the subgroup lattice: mu(1) = 1,
// mu(V) = -sum_{W < V} mu(W). Independent of the ambient top element.
struct MoebiusTable {
  const Lattice* lat = nullptr;
  std::vector<long> values;  // per subs index
};
MoebiusTable moebius_table(const Lattice& lat);

// Moebius table on the full lattice of a (small) group given directly.
std::vector<long> moebius_of_group(const Group& Q, Lattice& lat_out);

// All U with A <= U <= G for A normal, via pullback of subgroups of G/A.
// Sorted by (order, elements). No lattice size bound.
std::vector<Subgroup> intermediate_subgroups(const Group& G,
                                             const Subgroup& A);

// Subgroups of index l or l^2 (nilpotent catalog groups: obtained by one or
// two steps of maximal descent through Frattini hyperplanes).
std::vector<Subgroup> low_index_subgroups(const Group& G, int l,
                                          int max_power);

// Index-l subgroups of W containing V (Frattini hyperplane enumeration).
std::vector<Subgroup> index_l_over(const Group& G, const Subgroup& W,
                                   const Subgroup& V, int l);

// Transversal of a normal subgroup A with the attached 2-cocycle:
// r_{q1} r_{q2} = r_{q1 q2} a_{q1,q2}, a values in A. Representative policy
// MinRep picks the minimal element index per coset (the canonical choice);
// MaxRep is the alternative used by transversal-independence tests.
enum class RepPolicy { MinRep, MaxRep };

struct Transversal {
  const Group* G = nullptr;
  Subgroup A;
  QuotientGroup Q;
  std::vector<int> rep;                 // Q-element -> G-element
  std::vector<std::vector<int>> cocyc;  // [q1][q2] -> element of A (G index)

  int q_of(int g) const { return Q.proj[g]; }
  int conj_in_A(int a, int q) const {  // a^{r_q}, result in A
    return G->conj(a, rep[q]);
  }
};
Transversal make_transversal(const Group& G, const Subgroup& A,
                             RepPolicy policy = RepPolicy::MinRep);

// Classical group transfer Ver: U -> A for A <= U abelian, computed from the
// deterministic coset transversal (u t_i = t_{j(i)} a_i, Ver(u) = prod a_i).
// Returns the map on all of U as G-element indices.
std::vector<int> transfer_map(const Group& G, const Subgroup& U,
                              const Subgroup& A,
                              RepPolicy policy = RepPolicy::MinRep);

// ---- catalog ----

struct CatalogEntry {
  std::string id;
  int order;
  int w;        // z-part order
  int m;        // gamma exponent (gamma order = l^m)
  std::string note;
};
std::vector<CatalogEntry> catalog_entries();

// Build a catalog group. Validates the id against LevelParams (catalog is
// l = 3 throughout; w must be prime to l).
Group build_group(const std::string& id, const LevelParams& params);

}  // namespace gring
