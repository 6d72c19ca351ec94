#include "gringcheck/zmod.hpp"

#include <algorithm>
#include <numeric>

namespace gring {

CoeffRing::CoeffRing(int l, int n) : l_(l), n_(n), deg_(1) {
  mod_ = pow_u64((u64)l, (u64)n);
  fpoly_ = {0, 1};
  fr_image_ = {0};
}

CoeffRing::CoeffRing(int l, int n, std::vector<u64> fpoly)
    : l_(l), n_(n), fpoly_(std::move(fpoly)) {
  mod_ = pow_u64((u64)l, (u64)n);
  deg_ = (int)fpoly_.size() - 1;
  if (deg_ < 1 || fpoly_.back() % mod_ != 1)
    throw std::invalid_argument("CoeffRing: modulus polynomial not monic");
  for (auto& c : fpoly_) c %= mod_;
  compute_frobenius();
}

CoeffRing::Elem CoeffRing::add(const Elem& a, const Elem& b) const {
  Elem r(deg_);
  for (int i = 0; i < deg_; ++i) r[i] = (a[i] + b[i]) % mod_;
  return r;
}
CoeffRing::Elem CoeffRing::sub(const Elem& a, const Elem& b) const {
  Elem r(deg_);
  for (int i = 0; i < deg_; ++i) r[i] = (a[i] + mod_ - b[i]) % mod_;
  return r;
}
CoeffRing::Elem CoeffRing::neg(const Elem& a) const {
  Elem r(deg_);
  for (int i = 0; i < deg_; ++i) r[i] = a[i] ? mod_ - a[i] : 0;
  return r;
}

CoeffRing::Elem CoeffRing::mul(const Elem& a, const Elem& b) const {
  if (deg_ == 1) return {mulmod(a[0], b[0], mod_)};
  std::vector<u64> prod(2 * deg_ - 1, 0);
  for (int i = 0; i < deg_; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < deg_; ++j)
      prod[i + j] = (prod[i + j] + (u128)a[i] * b[j]) % mod_;
  }
  auto r = poly_mod_monic(std::move(prod), fpoly_, mod_);
  r.resize(deg_, 0);
  return r;
}

CoeffRing::Elem CoeffRing::scale(u64 s, const Elem& a) const {
  s %= mod_;
  Elem r(deg_);
  for (int i = 0; i < deg_; ++i) r[i] = mulmod(s, a[i], mod_);
  return r;
}

CoeffRing::Elem CoeffRing::pow(const Elem& a, u64 e) const {
  Elem r = one(), b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

bool CoeffRing::is_zero(const Elem& a) const {
  return std::all_of(a.begin(), a.end(), [](u64 c) { return c == 0; });
}

int CoeffRing::val(const Elem& a) const {
  int v = INT32_MAX;
  for (u64 c : a) v = std::min(v, val_l(c, l_));
  return v;
}

CoeffRing::Elem CoeffRing::div_l(const Elem& a, int k) const {
  u64 lk = pow_u64((u64)l_, (u64)k);
  Elem r(deg_);
  for (int i = 0; i < deg_; ++i) {
    if (a[i] % lk != 0) throw GuardExhausted("div_l: inexact division");
    r[i] = a[i] / lk;
  }
  return r;
}

CoeffRing::Elem CoeffRing::reduce(const Elem& a, int digits) const {
  u64 m = pow_u64((u64)l_, (u64)digits);
  Elem r(deg_);
  for (int i = 0; i < deg_; ++i) r[i] = a[i] % m;
  return r;
}

bool CoeffRing::is_unit(const Elem& a) const { return val(a) == 0; }

CoeffRing::Elem CoeffRing::inv(const Elem& a) const {
  if (!is_unit(a)) throw std::invalid_argument("CoeffRing::inv of non-unit");
  // inverse mod l via the residue field (order l^deg), then Newton lift
  u64 q = pow_u64((u64)l_, (u64)deg_);
  Elem r0(deg_);
  for (int i = 0; i < deg_; ++i) r0[i] = a[i] % (u64)l_;
  // residue inverse: a^(q-2) computed mod l
  CoeffRing Fl(l_, 1, [&] {
    std::vector<u64> f(fpoly_.size());
    for (size_t i = 0; i < f.size(); ++i) f[i] = fpoly_[i] % (u64)l_;
    return f;
  }());
  Elem v = deg_ == 1 ? Elem{powmod(a[0] % (u64)l_, (u64)(l_ - 2), (u64)l_)}
                     : Fl.pow(r0, q - 2);
  v.resize(deg_, 0);
  // Newton: v <- v(2 - a v)
  for (int it = 0; it < 2 * n_ + 2; ++it) {
    Elem av = mul(a, v);
    Elem two = from_int(2);
    Elem corr = sub(two, av);
    v = mul(v, corr);
    if (eq(mul(a, v), one())) break;
  }
  if (!eq(mul(a, v), one())) throw std::logic_error("inverse lift failed");
  return v;
}

void CoeffRing::compute_frobenius() {
  if (deg_ == 1) {
    fr_image_ = {0};
    return;
  }
  // the unique root of f with y = x^l (mod l): Newton on f
  Elem y = zero();
  y = pow(x(), (u64)l_);
  for (int it = 0; it < 2 * n_ + 2; ++it) {
    // y <- y - f(y)/f'(y)
    Elem fy = zero(), fpy = zero(), p = one();
    for (int i = 0; i <= deg_; ++i) {
      fy = add(fy, scale(fpoly_[i], p));
      if (i < deg_) {
        Elem pd = pow(y, (u64)i);
        fpy = add(fpy, scale(mulmod((u64)(i + 1) % mod_, fpoly_[i + 1], mod_),
                             pd));
      }
      if (i < deg_) p = mul(p, y);
    }
    if (is_zero(fy)) break;
    y = sub(y, mul(fy, inv(fpy)));
  }
  fr_image_ = y;
}

CoeffRing::Elem CoeffRing::frobenius(const Elem& a) const {
  if (deg_ == 1) return a;
  Elem r = zero(), p = one();
  for (int i = 0; i < deg_; ++i) {
    r = add(r, scale(a[i], p));
    p = mul(p, fr_image_);
  }
  return r;
}

CoeffRing::Elem CoeffRing::teichmuller(const Elem& a) const {
  u64 q = pow_u64((u64)l_, (u64)deg_);
  Elem c = a;
  for (int it = 0; it < n_ + 2; ++it) {
    Elem c2 = pow(c, q);
    if (eq(c2, c)) return c;
    c = c2;
  }
  if (!eq(pow(c, q), c)) throw std::logic_error("teichmuller not stabilizing");
  return c;
}

void poly_trim(std::vector<u64>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::vector<u64> poly_mul_mod(const std::vector<u64>& a,
                              const std::vector<u64>& b, u64 m) {
  if (a.empty() || b.empty()) return {};
  std::vector<u64> r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + (u128)a[i] * b[j]) % m;
  }
  poly_trim(r);
  return r;
}

std::vector<u64> poly_mod_monic(std::vector<u64> a, const std::vector<u64>& f,
                                u64 m) {
  int d = (int)f.size() - 1;
  while ((int)a.size() > d) {
    u64 c = a.back();
    int sh = (int)a.size() - 1 - d;
    if (c) {
      for (int i = 0; i <= d; ++i) {
        u64 t = mulmod(c, f[i], m);
        a[sh + i] = (a[sh + i] + m - t) % m;
      }
    }
    a.pop_back();
  }
  a.resize(d, 0);
  return a;
}

namespace {

// division with remainder by a monic poly over Z/m
void poly_divmod_monic(const std::vector<u64>& a, const std::vector<u64>& f,
                       u64 m, std::vector<u64>& q, std::vector<u64>& r) {
  r = a;
  int d = (int)f.size() - 1;
  q.assign(r.size() > (size_t)d ? r.size() - d : 0, 0);
  while ((int)r.size() > d) {
    u64 c = r.back();
    int sh = (int)r.size() - 1 - d;
    q[sh] = c;
    if (c)
      for (int i = 0; i <= d; ++i)
        r[sh + i] = (r[sh + i] + m - mulmod(c, f[i], m)) % m;
    r.pop_back();
  }
  poly_trim(q);
  poly_trim(r);
}

// extended gcd over F_l for coprime monic g, h: s g + t h = 1
void poly_ext_gcd_fl(std::vector<u64> g, std::vector<u64> h, int l,
                     std::vector<u64>& s, std::vector<u64>& t) {
  u64 m = (u64)l;
  std::vector<u64> r0 = g, r1 = h;
  std::vector<u64> s0{1}, s1{}, t0{}, t1{1};
  auto scale_poly = [&](std::vector<u64> p, u64 c) {
    for (auto& x : p) x = mulmod(x, c, m);
    poly_trim(p);
    return p;
  };
  auto sub_poly = [&](std::vector<u64> a, const std::vector<u64>& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + m - b[i]) % m;
    poly_trim(a);
    return a;
  };
  while (!r1.empty()) {
    // normalize r1 monic for division
    u64 lc = r1.back();
    u64 lcinv = powmod(lc, m - 2, m);
    std::vector<u64> r1m = scale_poly(r1, lcinv);
    std::vector<u64> q, rem;
    poly_divmod_monic(r0, r1m, m, q, rem);
    q = scale_poly(q, lcinv);
    // r0 - q*r1
    auto qr1 = poly_mul_mod(q, r1, m);
    auto r2 = sub_poly(r0, qr1);
    auto s2 = sub_poly(s0, poly_mul_mod(q, s1, m));
    auto t2 = sub_poly(t0, poly_mul_mod(q, t1, m));
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
    t0 = t1; t1 = t2;
  }
  if (r0.size() != 1) throw std::logic_error("ext_gcd: not coprime");
  u64 c = powmod(r0[0], m - 2, m);
  s = s0;
  t = t0;
  for (auto& x : s) x = mulmod(x, c, m);
  for (auto& x : t) x = mulmod(x, c, m);
}

// all monic irreducible factors of a squarefree monic poly over F_l by trial
// division with monic polys of increasing degree (tiny degrees only).
std::vector<std::vector<u64>> factor_fl(std::vector<u64> f, int l) {
  std::vector<std::vector<u64>> out;
  u64 m = (u64)l;
  int guard = 0;
  while (f.size() > 1 && guard++ < 64) {
    int df = (int)f.size() - 1;
    bool found = false;
    for (int d = 1; d <= df / 2 && !found; ++d) {
      // iterate monic candidates of degree d
      u64 count = pow_u64(m, (u64)d);
      for (u64 c = 0; c < count && !found; ++c) {
        std::vector<u64> cand(d + 1, 0);
        u64 cc = c;
        for (int i = 0; i < d; ++i) {
          cand[i] = cc % m;
          cc /= m;
        }
        cand[d] = 1;
        std::vector<u64> q, r;
        poly_divmod_monic(f, cand, m, q, r);
        if (r.empty()) {
          out.push_back(cand);
          f = q;
          found = true;
        }
      }
    }
    if (!found) {
      out.push_back(f);
      f = {1};
    }
  }
  if (f.size() > 1) out.push_back(f);
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace

std::vector<std::vector<u64>> factor_xw_minus_1(int w, int l, int n) {
  if (std::gcd(w, l) != 1)
    throw std::invalid_argument("factor_xw_minus_1: gcd(w,l) != 1");
  u64 mod = pow_u64((u64)l, (u64)n);
  std::vector<u64> target(w + 1, 0);
  target[0] = mod - 1;
  target[w] = 1;
  if (w == 1) return {{mod - 1, 1}};
  // factor over F_l
  std::vector<u64> fbar(w + 1, 0);
  fbar[0] = (u64)(l - 1);
  fbar[w] = 1;
  auto factors = factor_fl(fbar, l);
  // lift one factor at a time against the product of the rest (linear Hensel)
  std::vector<std::vector<u64>> lifted;
  std::vector<u64> rem = target;
  for (size_t fi = 0; fi + 1 < factors.size(); ++fi) {
    // rem = g*h with g = lift of factors[fi]
    std::vector<u64> g = factors[fi];
    // h bar = rem bar / g bar
    std::vector<u64> rbar(rem.size());
    for (size_t i = 0; i < rem.size(); ++i) rbar[i] = rem[i] % (u64)l;
    poly_trim(rbar);
    std::vector<u64> hbar, rr;
    poly_divmod_monic(rbar, g, (u64)l, hbar, rr);
    if (!rr.empty()) throw std::logic_error("hensel: non-divisible reduction");
    std::vector<u64> h = hbar;
    std::vector<u64> s, t;
    poly_ext_gcd_fl(g, hbar, l, s, t);  // s g + t h = 1 mod l
    // linear lift digit by digit: rem = g h + l^k e
    for (int k = 1; k < n; ++k) {
      u64 lk = pow_u64((u64)l, (u64)k);
      auto gh = poly_mul_mod(g, h, mod);
      std::vector<u64> e(rem.size(), 0);
      bool zero = true;
      size_t len = std::max(rem.size(), gh.size());
      e.assign(len, 0);
      for (size_t i = 0; i < len; ++i) {
        u64 a = i < rem.size() ? rem[i] : 0;
        u64 b = i < gh.size() ? gh[i] : 0;
        u64 d = (a + mod - b) % mod;
        if (d % lk != 0) throw std::logic_error("hensel: bad valuation");
        e[i] = (d / lk) % (u64)l;
        if (e[i]) zero = false;
      }
      if (zero) continue;
      poly_trim(e);
      // dg = (t e mod g), dh = (s e mod h) over F_l
      auto te = poly_mul_mod(t, e, (u64)l);
      auto dg = poly_mod_monic(te, g, (u64)l);
      poly_trim(dg);
      auto se = poly_mul_mod(s, e, (u64)l);
      auto dh = poly_mod_monic(se, hbar, (u64)l);
      poly_trim(dh);
      if (g.size() < dg.size() + 1) throw std::logic_error("hensel: deg dg");
      for (size_t i = 0; i < dg.size(); ++i)
        g[i] = (g[i] + mulmod(lk % mod, dg[i], mod)) % mod;
      if (h.size() < dh.size()) h.resize(dh.size(), 0);
      for (size_t i = 0; i < dh.size(); ++i)
        h[i] = (h[i] + mulmod(lk % mod, dh[i], mod)) % mod;
    }
    lifted.push_back(g);
    // rem <- h (exact quotient)
    {
      std::vector<u64> q, r2;
      poly_divmod_monic(rem, g, mod, q, r2);
      if (!r2.empty()) throw std::logic_error("hensel: lift not dividing");
      rem = q;
    }
  }
  lifted.push_back(rem);
  // canonical order: the trivial factor x - 1 first, then by (degree, lex)
  std::vector<u64> xm1{mod - 1, 1};
  std::sort(lifted.begin(), lifted.end(), [&](auto& a, auto& b) {
    if ((a == xm1) != (b == xm1)) return a == xm1;
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  // verify product
  std::vector<u64> prod{1};
  for (auto& f : lifted) prod = poly_mul_mod(prod, f, mod);
  std::vector<u64> tgt = target;
  poly_trim(tgt);
  if (prod != tgt) throw std::logic_error("hensel: product check failed");
  return lifted;
}

std::vector<std::vector<u64>> crt_idempotents(
    const std::vector<std::vector<u64>>& factors, int w, int l, int n) {
  u64 mod = pow_u64((u64)l, (u64)n);
  std::vector<u64> xw(w + 1, 0);
  xw[0] = mod - 1;
  xw[w] = 1;
  std::vector<std::vector<u64>> out;
  for (const auto& f : factors) {
    // u = (x^w-1)/f ; e = u * (u^{-1} mod f) mod (x^w - 1)
    std::vector<u64> u, r;
    poly_divmod_monic(xw, f, mod, u, r);
    if (!r.empty()) throw std::logic_error("idempotent: factor not dividing");
    // invert u mod f: residue inverse over F_l then Newton in (Z/l^n)[x]/(f)
    CoeffRing K(l, n, f);
    CoeffRing::Elem uim(K.deg(), 0);
    {
      auto um = poly_mod_monic(u, f, mod);
      for (int i = 0; i < K.deg(); ++i) uim[i] = um[i];
    }
    auto vinv = K.inv(uim);
    std::vector<u64> v(vinv.begin(), vinv.end());
    poly_trim(v);
    auto e = poly_mul_mod(u, v, mod);
    // reduce mod x^w - 1: x^w = 1
    std::vector<u64> ered(w, 0);
    for (size_t i = 0; i < e.size(); ++i)
      ered[i % w] = (ered[i % w] + e[i]) % mod;
    out.push_back(ered);
  }
  return out;
}

}  // namespace gring
