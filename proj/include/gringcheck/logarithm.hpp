#pragma once

#include "gringcheck/gring.hpp"
#include "gringcheck/moebius_wall.hpp"

namespace gring {

// l-power ring endomorphism of an abelian group ring: basis a -> a^l,
// Frobenius on coefficients.
GRElt psi_ring(const GRingCtx& X, const GRElt& u);

// log(1+j) as num / l^shift with num exact mod l^n; requires j topologically
// nilpotent (j^k -> 0 mod l^n). Throws on non-1-units.
struct ScaledRing {
  GRElt num;
  int shift = 0;
};
ScaledRing log_scaled(const GRingCtx& X, const GRElt& j);

// log of a 1-unit with v_l(u-1) >= 1: integral; reported mod l^digits
GRElt log_one_unit(const GRingCtx& X, const GRElt& u, int digits);
// exp for v_l(x) >= 1 (l odd); inverse of log on 1 + l R[G]
GRElt exp_one_unit(const GRingCtx& X, const GRElt& x, int digits);

// Wall congruences
bool wall_abelian(const GRingCtx& X, const GRElt& u);         // u^l = Psi(u) mod l
bool wall_T(const GRingCtx& X, const GRElt& x);               // tau(x^l) = phi_T tau(x) mod l

// integral logarithm on units of R[G], G l-elementary; result reported mod
// l^{report_digits}. Computed per beta component as
//   tau(log(1+j)) - (1/l) phi_T(tau(log(1+j)))
// after the Teichmueller factorization u = c (1 + j). Throws GuardExhausted
// when the working precision cannot support the divisions.
TElt integral_log(const GRingCtx& X, const GRElt& u, int report_digits);

// abelian closed form (1/l) log(u^l / Psi(u)) (independent oracle)
GRElt integral_log_abelian(const GRingCtx& X, const GRElt& u,
                           int report_digits);

// guard-stability: compute at guard g and 2g, compare mod l^a, escalate on
// disagreement or guard exhaustion. u_exact carries coefficient residues at
// generation precision (>= any working modulus used here; they are reduced).
struct StableLog {
  TElt value;  // over the ring with the guard that stabilized
  bool stable = false;
  int guard_used = 0;
};
StableLog integral_log_stable(const Group& G, const LevelParams& params,
                              const std::vector<u64>& u_exact);

// generation precision for exact unit coefficients (fits u64 for l = 3)
inline int generation_digits(const LevelParams& params) {
  (void)params;
  return 36;
}

// Lemma F checker: L(1 + tr_Q beta) in tr_Q(R[A]) for beta in the ideal b.
struct LemmaFReport {
  bool pass = true;
  bool intermediate_pass = true;  // (tr_Q beta)^l = 0 mod l tr_Q(R[A])
  std::string detail;
};
LemmaFReport lemmaF_check(const MWContext& C, const Subgroup& C_sub,
                          const GRElt& beta_over_A, int precision);

// random element of the ideal b = ker(R[A] -> R[A/C]) inside R[A]
GRElt random_ideal_b(const MWContext& C, const Subgroup& C_sub, Rng& rng);

// surjectivity probe: solve L(1 + x) = y with x in the ideal spanned by
// a_gens, y a T-element in tau(ideal). Returns true with a witness on
// success (exact equality mod l^{report_digits}).
bool solve_integral_log(const GRingCtx& X, const std::vector<GRElt>& a_gens,
                        const TElt& y, int report_digits, GRElt* witness);

}  // namespace gring
