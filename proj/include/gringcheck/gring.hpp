#pragma once

#include <memory>

#include "gringcheck/group.hpp"
#include "gringcheck/linalg.hpp"
#include "gringcheck/zmod.hpp"

namespace gring {

// Group ring R[G] with R = GR(l^n, d). Elements are flat coefficient arrays
// (|G| * d entries, little-endian per group element).
struct GRingCtx {
  const Group* G = nullptr;
  const CoeffRing* R = nullptr;

  int size() const { return G->order() * R->deg(); }
};

struct GRElt {
  std::vector<u64> c;

  bool operator==(const GRElt& o) const { return c == o.c; }
};

GRElt gr_zero(const GRingCtx& X);
GRElt gr_one(const GRingCtx& X);
GRElt gr_basis(const GRingCtx& X, int g);
GRElt gr_scalar(const GRingCtx& X, CoeffRing::Elem s);
CoeffRing::Elem gr_coeff(const GRingCtx& X, const GRElt& x, int g);
void gr_set_coeff(const GRingCtx& X, GRElt& x, int g, CoeffRing::Elem s);

GRElt gr_add(const GRingCtx& X, const GRElt& a, const GRElt& b);
GRElt gr_sub(const GRingCtx& X, const GRElt& a, const GRElt& b);
GRElt gr_neg(const GRingCtx& X, const GRElt& a);
GRElt gr_mul(const GRingCtx& X, const GRElt& a, const GRElt& b);
GRElt gr_scale(const GRingCtx& X, const CoeffRing::Elem& s, const GRElt& a);
GRElt gr_pow(const GRingCtx& X, const GRElt& a, u64 e);
GRElt gr_conj(const GRingCtx& X, const GRElt& a, int g);  // a^g
CoeffRing::Elem gr_aug(const GRingCtx& X, const GRElt& a);
bool gr_is_zero(const GRingCtx& X, const GRElt& a);
bool gr_eq_mod(const GRingCtx& X, const GRElt& a, const GRElt& b, int digits);
GRElt gr_reduce(const GRingCtx& X, const GRElt& a, int digits);
int gr_val(const GRingCtx& X, const GRElt& a);  // min coeff valuation
GRElt gr_frobenius_coeffs(const GRingCtx& X, const GRElt& a);

GRElt gr_random(const GRingCtx& X, Rng& rng);
bool gr_is_unit(const GRingCtx& X, const GRElt& a);
GRElt gr_inverse(const GRingCtx& X, const GRElt& a);
GRElt gr_random_unit(const GRingCtx& X, Rng& rng);
// 1 + l*(random): always a unit
GRElt gr_random_one_unit(const GRingCtx& X, Rng& rng);

// serialization order: canonical element order of G, little-endian coeffs
std::vector<u64> gr_serialize(const GRingCtx& X, const GRElt& a);

// ---- trace quotient T(R[G]) ----

struct TElt {
  std::vector<u64> c;  // num_classes * deg

  bool operator==(const TElt& o) const { return c == o.c; }
};

TElt t_zero(const GRingCtx& X);
TElt project_T(const GRingCtx& X, const GRElt& a);
TElt t_add(const GRingCtx& X, const TElt& a, const TElt& b);
TElt t_sub(const GRingCtx& X, const TElt& a, const TElt& b);
TElt t_scale(const GRingCtx& X, const CoeffRing::Elem& s, const TElt& a);
TElt t_basis(const GRingCtx& X, int cls);
bool t_is_zero(const GRingCtx& X, const TElt& a);
bool t_eq_mod(const GRingCtx& X, const TElt& a, const TElt& b, int digits);
TElt t_reduce(const GRingCtx& X, const TElt& a, int digits);
int t_val(const GRingCtx& X, const TElt& a);
CoeffRing::Elem t_coeff(const GRingCtx& X, const TElt& a, int cls);
// multiplication by a central group element permutes classes
TElt t_mul_central(const GRingCtx& X, const TElt& a, int gamma);
// conjugation action tau_U(u)^g -> tau over the conjugate subgroup: for
// same-group T this is trivial (classes are conjugation-invariant); the
// subgroup-level version lives in restriction.hpp.

// l-power map on T: class [g] -> class [g^l], Frobenius on coefficients
TElt phi_T(const GRingCtx& X, const TElt& a);

// deflation along G -> G/N (ring hom; kernel = ideal generated by g(n-1))
GRElt defl_ring(const GRingCtx& XG, const GRingCtx& XQ,
                const QuotientGroup& Q, const GRElt& x);
TElt defl_T(const GRingCtx& XG, const GRingCtx& XQ, const QuotientGroup& Q,
            const TElt& x);
// inflation on class data: pull back along classes of the quotient
TElt infl_T_classdata(const GRingCtx& XG, const GRingCtx& XQ,
                      const QuotientGroup& Q, const TElt& y);

// ---- conjugation action of a quotient on an abelian normal subgroup ----

// Q acts on A (abelian) via lifts; act[q][i] = index in Amat of a^{r_q}.
struct ConjAction {
  const Group* G = nullptr;
  Subgroup A;
  MaterializedGroup Amat;
  QuotientGroup Q;  // G/A when A is normal; otherwise a designated quotient
  std::vector<std::vector<int>> act;  // [q][a] -> a^{r_q}
};
ConjAction make_conj_action(const Group& G, const Subgroup& A);

// transfer ver_U^A : R[U] -> R[A] (coefficient-linear extension of Ver)
GRElt transfer_ver(const GRingCtx& XU, const MaterializedGroup& Umat,
                   const GRingCtx& XA, const MaterializedGroup& Amat,
                   const Group& G, const Subgroup& U, const Subgroup& A,
                   const GRElt& x, RepPolicy policy = RepPolicy::MinRep);

// vr_V(e): coefficient-linear, basis a -> prod_{v in V} a^v. V is a subgroup
// of the acting quotient in `act`.
GRElt vr_power_endo(const GRingCtx& XA, const ConjAction& act,
                    const std::vector<int>& V_elems, const GRElt& e);

// x^{q} for x over R[A], q in the acting quotient
GRElt conj_by_q(const GRingCtx& XA, const ConjAction& act, int q,
                const GRElt& x);

// tr_W(x) = sum_{q in W} x^{q^{-1}} for W a subgroup of the acting quotient
GRElt trace_op(const GRingCtx& XA, const ConjAction& act,
               const std::vector<int>& W_elems, const GRElt& x);
// relative trace over W/V for x fixed by V (throws if not fixed)
GRElt trace_rel(const GRingCtx& XA, const ConjAction& act,
                const std::vector<int>& W_elems,
                const std::vector<int>& V_elems, const GRElt& x);

// membership y in tr_W(R[A]) at given precision (orbit criterion)
bool trace_membership(const GRingCtx& XA, const ConjAction& act,
                      const std::vector<int>& W_elems, const GRElt& y,
                      int precision);
// same but for y in l^k * tr_W(R[A])
bool trace_membership_scaled(const GRingCtx& XA, const ConjAction& act,
                             const std::vector<int>& W_elems, const GRElt& y,
                             int precision, int extra_l);

// ---- ideal generators ----

enum class IdealTag { A_frak, B_frak, C_ab, U_frak };

struct IdealGens {
  IdealTag tag;
  std::vector<GRElt> gens;  // over the ambient ring of the tag
};

// kernel of R[G] -> R[G/C] as {g (c-1)} for coset reps g, c in C\1
IdealGens ideal_a(const GRingCtx& XG, const Subgroup& C);
// spanning check against the deflation kernel (Howell rank over Z/l^n)
bool ideal_spans_kernel(const GRingCtx& XG, const QuotientGroup& Q,
                        const IdealGens& I);

// ---- beta decomposition over the z-part ----

struct BetaComponent {
  CoeffRing ring;               // GR(l^n, d_beta)
  std::vector<u64> factor;      // modulus factor of x^w - 1
  std::vector<u64> idempotent;  // e_beta in (Z/l^n)[x]/(x^w-1)
};

struct BetaDecomposition {
  const GRingCtx* X = nullptr;
  int w = 1;
  MaterializedGroup Pl;  // l-part subgroup of G
  std::vector<int> zpow_of;  // G elt -> exponent i with g = z^i * (l-part)
  std::vector<int> lpart_of; // G elt -> Pl index of the l-part
  std::vector<int> zl_to_g;  // (i * |Pl| + p) -> G element index
  std::vector<BetaComponent> comps;

  std::vector<GRElt> decompose(const GRElt& x) const;
  GRElt reassemble(const std::vector<GRElt>& parts) const;
  std::vector<TElt> decompose_T(const TElt& x) const;
  TElt reassemble_T(const std::vector<TElt>& parts) const;
  GRingCtx comp_ctx(int i) const {
    return GRingCtx{Pl.group.get(), &comps[i].ring};
  }
};

BetaDecomposition make_beta_decomposition(const GRingCtx& X);

// idempotents of R[G] itself (images of e_beta under z^i -> group element)
std::vector<GRElt> beta_idempotents_in_ring(const BetaDecomposition& B);

}  // namespace gring
