#pragma once

#include <vector>

#include "gringcheck/common.hpp"

namespace gring {

// Coefficient ring GR(l^n, d): (Z/l^n)[x]/(f) with f a monic degree-d lift of
// an irreducible polynomial over F_l. d = 1 is the residue ring Z/l^n.
// Elements are coefficient vectors of length d (little-endian in x).
class CoeffRing {
 public:
  CoeffRing() = default;
  // plain Z/l^n
  CoeffRing(int l, int n);
  // GR(l^n, d) with modulus polynomial fpoly (monic, degree d, coeffs mod l^n)
  CoeffRing(int l, int n, std::vector<u64> fpoly);

  int l() const { return l_; }
  int n() const { return n_; }
  u64 mod() const { return mod_; }
  int deg() const { return deg_; }
  const std::vector<u64>& fpoly() const { return fpoly_; }

  using Elem = std::vector<u64>;

  Elem zero() const { return Elem(deg_, 0); }
  Elem one() const {
    Elem e(deg_, 0);
    e[0] = 1 % mod_;
    return e;
  }
  Elem from_int(u64 v) const {
    Elem e(deg_, 0);
    e[0] = v % mod_;
    return e;
  }
  Elem x() const {
    Elem e(deg_, 0);
    if (deg_ > 1) e[1] = 1;
    else e[0] = 0;  // no x in degree 1
    return e;
  }

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(u64 s, const Elem& a) const;
  Elem pow(const Elem& a, u64 e) const;
  bool is_zero(const Elem& a) const;
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  // minimal l-valuation over coefficients (INT32_MAX for 0)
  int val(const Elem& a) const;
  bool divisible(const Elem& a, int k) const { return val(a) >= k; }
  Elem div_l(const Elem& a, int k) const;  // exact; throws if not divisible
  Elem reduce(const Elem& a, int digits) const;  // mod l^digits

  bool is_unit(const Elem& a) const;  // unit iff val == 0
  Elem inv(const Elem& a) const;      // Newton lift of the mod-l inverse

  // Frobenius: the unique ring automorphism with Fr(x) = x^l mod l.
  Elem frobenius(const Elem& a) const;
  // Teichmüller-type lift: the limit of a^{(l^d)^k}; satisfies c^{l^d} = c.
  Elem teichmuller(const Elem& a) const;

 private:
  int l_ = 3, n_ = 1, deg_ = 1;
  u64 mod_ = 3;
  std::vector<u64> fpoly_;    // size deg_+1, monic
  std::vector<u64> fr_image_; // image of x under Frobenius (size deg_)
  void compute_frobenius();
};

// dense polynomial helpers over Z/m (little-endian coefficient vectors)
std::vector<u64> poly_mul_mod(const std::vector<u64>& a,
                              const std::vector<u64>& b, u64 m);
std::vector<u64> poly_mod_monic(std::vector<u64> a, const std::vector<u64>& f,
                                u64 m);
void poly_trim(std::vector<u64>& a);

// factor x^w - 1 over F_l into monic irreducibles (gcd(w,l) = 1), then
// Hensel-lift the factorization to Z/l^n. Factors are sorted canonically
// (by degree, then coefficient list).
std::vector<std::vector<u64>> factor_xw_minus_1(int w, int l, int n);

// CRT idempotents of (Z/l^n)[x]/(x^w-1) for the lifted factors: e_i is the
// polynomial (deg < w) that is 1 mod f_i and 0 mod f_j (j != i).
std::vector<std::vector<u64>> crt_idempotents(
    const std::vector<std::vector<u64>>& factors, int w, int l, int n);

}  // namespace gring
