#pragma once

#include <functional>
#include <map>

#include "gringcheck/gring.hpp"

namespace gring {

// Shared setup for the ver/res identities over a fixed abelian normal A:
// transversal of A in G with its cocycle, the quotient Q acting on A.
struct MWContext {
  const Group* G = nullptr;
  const CoeffRing* R = nullptr;
  Subgroup A;
  Transversal T;     // transversal of A in G (with cocycle)
  ConjAction act;    // Q = G/A acting on A
  GRingCtx XG, XA;

  MWContext(const Group& g, const CoeffRing& r, const Subgroup& a,
            RepPolicy policy = RepPolicy::MinRep);
  int q_order() const { return T.Q.group->order(); }
  // A-element (parent index) -> index in act.Amat
  int a_index(int parent_elem) const {
    return act.Amat.from_parent.at(parent_elem);
  }
};

// permutation of Q fixed by V, with sign (an element of Sigma^V)
struct FixedPointPermutation {
  std::vector<int> pi;  // Q-element -> Q-element
  int sign = 1;
};

// Enumerate Sigma^V through the (sigma, f) parametrization:
// pi(kappa(s) v) = kappa(sigma(s)) f(s) v. Calls fn for each element exactly
// once; enumeration order is lexicographic in (sigma, f).
void enumerate_sigma_fixed(
    const MWContext& C, const std::vector<int>& V_elems,
    const std::function<void(const FixedPointPermutation&,
                             const std::vector<int>& sigma,
                             const std::vector<int>& f)>& fn);

// sections and coset labels of V in Q (left cosets sV, minimal-element reps)
struct CosetSection {
  std::vector<int> kappa;     // coset index -> representative in Q
  std::vector<int> coset_of;  // Q element -> coset index
  std::vector<int> v_part;    // Q element q -> v with q = kappa(coset) v
};
CosetSection make_section(const MWContext& C, const std::vector<int>& V_elems);

// decomposition eps = sum_q r_q e_q with e_q over R[A]
std::vector<GRElt> r_decompose(const MWContext& C, const GRElt& eps);

// ver_U^A res_G^U(eps) via the Sigma^V expansion (per-slot factorized form
// plus a division-free determinant).
GRElt lemmaA_formula(const MWContext& C, const Subgroup& U, const GRElt& eps);

// the same value via the literal (sigma, f) stream; cost |Sym(Q/V)|*|V|^m,
// guarded by term_bound (throws SizeBoundError beyond it)
GRElt lemmaA_formula_literal(const MWContext& C, const Subgroup& U,
                             const GRElt& eps, long term_bound = 500000);

// the proof-side oracle: matrix of the action of eps on the right U-module
// R[G], transfer applied entrywise, determinant over R[A]
GRElt lemmaA_direct(const MWContext& C, const Subgroup& U, const GRElt& eps);

// division-free determinants over the commutative ring R[A]
GRElt det_subset_dp(const GRingCtx& X, const std::vector<std::vector<GRElt>>& M);
GRElt det_bird(const GRingCtx& X, const std::vector<std::vector<GRElt>>& M);

struct CongruenceReport {
  bool pass = true;
  std::string detail;    // first failure description
  GRElt residue;         // the offending value (over R[A]) when failing
};

// Lemma B: sum_{V <= Q'} mu(V) prod_{s in Q'/V} vr_V(e^s) in tr_{Q'}(R[A])
CongruenceReport lemmaB_check(const MWContext& C,
                              const std::vector<int>& Qprime_elems,
                              const GRElt& e, int precision);

// Proposition 5: sum_U mu_Q(U/A) ver_U^A(res_G^U eps) in tr_Q(R[A])
struct Prop5Report {
  bool pass = true;
  std::vector<std::pair<std::string, GRElt>> terms;  // per-U dumps
  GRElt sum;
};
Prop5Report prop5_check(const MWContext& C, const GRElt& eps, int precision);

// Proposition 6 over a user-supplied pseudomeasure table: entries are units
// of R[U^ab] per intermediate subgroup U, keyed by the canonical index in
// intermediate_subgroups(G, A).
struct PseudomeasureTable {
  std::map<int, GRElt> by_intermediate_index;
};
CongruenceReport prop6_check(const MWContext& C,
                             const PseudomeasureTable& table, int precision);

// ver_{U^ab}^A applied to an element over R[U^ab] (the transfer factored
// through the abelianization); returns over R[A]. Exposed for prop6 and its
// tests. The quotient structure used is returned via the out parameters of
// uab_context.
struct UabContext {
  MaterializedGroup Umat;
  QuotientGroup Uab;  // Umat / [U,U]
  GRingCtx XUab;
};
UabContext uab_context(const MWContext& C, const Subgroup& U);
GRElt ver_uab_to_A(const MWContext& C, const Subgroup& U, const UabContext& J,
                   const GRElt& lam);

// vr and trace re-exports with subgroup-of-Q element lists (convenience)
GRElt mw_vr(const MWContext& C, const std::vector<int>& V_elems,
            const GRElt& e);
GRElt mw_trace(const MWContext& C, const std::vector<int>& W_elems,
               const GRElt& x);

}  // namespace gring
