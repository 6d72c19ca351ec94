#pragma once

#include <gmpxx.h>

#include <memory>
#include <vector>

#include "gringcheck/common.hpp"

namespace gring {

// Exact arithmetic in Q(zeta_N): polynomials modulo the N-th cyclotomic
// polynomial over mpq. Denominators are tracked exactly; l-valuations are
// queried coefficientwise (the power basis is an integral basis here).
class CycField {
 public:
  explicit CycField(int N);

  int conductor() const { return N_; }
  int degree() const { return deg_; }
  const std::vector<mpz_class>& modulus() const { return phi_; }

  using Elem = std::vector<mpq_class>;  // size = degree

  Elem zero() const { return Elem(deg_, 0); }
  Elem one() const {
    Elem e(deg_, 0);
    e[0] = 1;
    return e;
  }
  Elem from_int(long v) const {
    Elem e(deg_, 0);
    e[0] = v;
    return e;
  }
  Elem from_mpq(const mpq_class& v) const {
    Elem e(deg_, 0);
    e[0] = v;
    return e;
  }
  Elem zeta_pow(long k) const;  // zeta_N^k

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(const mpq_class& s, const Elem& a) const;
  Elem inv(const Elem& a) const;
  Elem pow(const Elem& a, long e) const;  // negative allowed
  bool is_zero(const Elem& a) const;
  bool eq(const Elem& a, const Elem& b) const;

  // Galois action zeta -> zeta^k, gcd(k, N) = 1
  Elem galois(const Elem& a, long k) const;
  Elem conj(const Elem& a) const { return galois(a, N_ - 1 == 0 ? 1 : N_ - 1); }

  // min_coeff v_l (INT32_MAX for 0); x in l^k Z_(l)[zeta] iff val >= k
  int val_l(const Elem& a, int l) const;
  bool is_rational_integer(const Elem& a) const;
  // reduce an integral element mod l^digits into [0, l^digits) coefficients
  std::vector<u64> to_residues(const Elem& a, int l, int digits) const;

  // embedding Q(zeta_M) -> Q(zeta_N) for M | N (small->this)
  Elem embed_from(const CycField& small, const Elem& a) const;

 private:
  int N_, deg_;
  std::vector<mpz_class> phi_;                 // monic, size deg_+1
  std::vector<std::vector<mpz_class>> xpow_;   // x^k mod phi for k < 2*deg
};

std::vector<mpz_class> cyclotomic_poly(int N);

// group algebra of a cyclic gamma-part of order gord over the field
struct GammaAlg {
  std::vector<CycField::Elem> c;  // length gord
};

struct GammaAlgCtx {
  const CycField* F = nullptr;
  int gord = 1;

  GammaAlg zero() const;
  GammaAlg one() const;
  GammaAlg scalar(const CycField::Elem& s) const;
  GammaAlg gamma_pow(int j) const;
  GammaAlg add(const GammaAlg& a, const GammaAlg& b) const;
  GammaAlg sub(const GammaAlg& a, const GammaAlg& b) const;
  GammaAlg neg(const GammaAlg& a) const;
  GammaAlg mul(const GammaAlg& a, const GammaAlg& b) const;
  GammaAlg scale(const CycField::Elem& s, const GammaAlg& a) const;
  GammaAlg scale_q(const mpq_class& s, const GammaAlg& a) const;
  GammaAlg inv(const GammaAlg& a) const;  // linear solve over the field
  GammaAlg pow(const GammaAlg& a, long e) const;
  bool is_zero(const GammaAlg& a) const;
  bool eq(const GammaAlg& a, const GammaAlg& b) const;
  int val_l(const GammaAlg& a, int l) const;
  // Psi: gamma -> gamma^l on the group part, identity on scalars
  GammaAlg psi(const GammaAlg& a, int l) const;
  // Galois action on scalars only
  GammaAlg galois(const GammaAlg& a, long k) const;
};

}  // namespace gring
