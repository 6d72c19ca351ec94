#include "gringcheck/gring.hpp"

#include <algorithm>
#include <numeric>

namespace gring {

GRElt gr_zero(const GRingCtx& X) { return GRElt{std::vector<u64>(X.size(), 0)}; }

GRElt gr_one(const GRingCtx& X) { return gr_basis(X, 0); }

GRElt gr_basis(const GRingCtx& X, int g) {
  GRElt e = gr_zero(X);
  e.c[(size_t)g * X.R->deg()] = 1;
  return e;
}

GRElt gr_scalar(const GRingCtx& X, CoeffRing::Elem s) {
  GRElt e = gr_zero(X);
  for (int i = 0; i < X.R->deg(); ++i) e.c[i] = s[i];
  return e;
}

CoeffRing::Elem gr_coeff(const GRingCtx& X, const GRElt& x, int g) {
  int d = X.R->deg();
  return CoeffRing::Elem(x.c.begin() + (size_t)g * d,
                         x.c.begin() + (size_t)(g + 1) * d);
}

void gr_set_coeff(const GRingCtx& X, GRElt& x, int g, CoeffRing::Elem s) {
  int d = X.R->deg();
  for (int i = 0; i < d; ++i) x.c[(size_t)g * d + i] = s[i];
}

GRElt gr_add(const GRingCtx& X, const GRElt& a, const GRElt& b) {
  GRElt r = a;
  u64 m = X.R->mod();
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = (r.c[i] + b.c[i]) % m;
  return r;
}

GRElt gr_sub(const GRingCtx& X, const GRElt& a, const GRElt& b) {
  GRElt r = a;
  u64 m = X.R->mod();
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = (r.c[i] + m - b.c[i]) % m;
  return r;
}

GRElt gr_neg(const GRingCtx& X, const GRElt& a) {
  GRElt r = a;
  u64 m = X.R->mod();
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.c[i] ? m - a.c[i] : 0;
  return r;
}

GRElt gr_mul(const GRingCtx& X, const GRElt& a, const GRElt& b) {
  const Group& G = *X.G;
  int n = G.order(), d = X.R->deg();
  u64 m = X.R->mod();
  GRElt r = gr_zero(X);
  if (d == 1) {
    for (int i = 0; i < n; ++i) {
      u64 ai = a.c[i];
      if (!ai) continue;
      for (int j = 0; j < n; ++j) {
        u64 bj = b.c[j];
        if (!bj) continue;
        int k = G.mul(i, j);
        r.c[k] = (r.c[k] + (u128)ai * bj) % m;
      }
    }
    return r;
  }
  for (int i = 0; i < n; ++i) {
    CoeffRing::Elem ai = gr_coeff(X, a, i);
    if (X.R->is_zero(ai)) continue;
    for (int j = 0; j < n; ++j) {
      CoeffRing::Elem bj = gr_coeff(X, b, j);
      if (X.R->is_zero(bj)) continue;
      int k = G.mul(i, j);
      CoeffRing::Elem p = X.R->mul(ai, bj);
      for (int t = 0; t < d; ++t) {
        size_t idx = (size_t)k * d + t;
        r.c[idx] = (r.c[idx] + p[t]) % m;
      }
    }
  }
  return r;
}

GRElt gr_scale(const GRingCtx& X, const CoeffRing::Elem& s, const GRElt& a) {
  int n = X.G->order();
  GRElt r = gr_zero(X);
  for (int g = 0; g < n; ++g)
    gr_set_coeff(X, r, g, X.R->mul(s, gr_coeff(X, a, g)));
  return r;
}

GRElt gr_pow(const GRingCtx& X, const GRElt& a, u64 e) {
  GRElt r = gr_one(X), b = a;
  while (e) {
    if (e & 1) r = gr_mul(X, r, b);
    b = gr_mul(X, b, b);
    e >>= 1;
  }
  return r;
}

GRElt gr_conj(const GRingCtx& X, const GRElt& a, int g) {
  int n = X.G->order(), d = X.R->deg();
  GRElt r = gr_zero(X);
  for (int i = 0; i < n; ++i) {
    int k = X.G->conj(i, g);
    for (int t = 0; t < d; ++t) r.c[(size_t)k * d + t] = a.c[(size_t)i * d + t];
  }
  return r;
}

CoeffRing::Elem gr_aug(const GRingCtx& X, const GRElt& a) {
  CoeffRing::Elem s = X.R->zero();
  for (int g = 0; g < X.G->order(); ++g) s = X.R->add(s, gr_coeff(X, a, g));
  return s;
}

bool gr_is_zero(const GRingCtx& X, const GRElt& a) {
  (void)X;
  return std::all_of(a.c.begin(), a.c.end(), [](u64 v) { return v == 0; });
}

bool gr_eq_mod(const GRingCtx& X, const GRElt& a, const GRElt& b, int digits) {
  u64 m = pow_u64((u64)X.R->l(), (u64)digits);
  for (size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i] % m != b.c[i] % m) return false;
  return true;
}

GRElt gr_reduce(const GRingCtx& X, const GRElt& a, int digits) {
  u64 m = pow_u64((u64)X.R->l(), (u64)digits);
  GRElt r = a;
  for (auto& v : r.c) v %= m;
  return r;
}

int gr_val(const GRingCtx& X, const GRElt& a) {
  int v = INT32_MAX;
  for (u64 c : a.c) v = std::min(v, val_l(c, X.R->l()));
  return v;
}

GRElt gr_frobenius_coeffs(const GRingCtx& X, const GRElt& a) {
  GRElt r = gr_zero(X);
  for (int g = 0; g < X.G->order(); ++g)
    gr_set_coeff(X, r, g, X.R->frobenius(gr_coeff(X, a, g)));
  return r;
}

GRElt gr_random(const GRingCtx& X, Rng& rng) {
  GRElt r = gr_zero(X);
  for (auto& v : r.c) v = rng.below(X.R->mod());
  return r;
}

namespace {

// l-cyclotomic augmentation polynomial: for G = <z> x G[l], the image in
// F_l[z] of the sum over the l-part. Unit test per factor of x^w - 1 mod l.
std::vector<std::vector<u64>> beta_residue_augmentations(const GRingCtx& X,
                                                         const GRElt& a);

}  // namespace

bool gr_is_unit(const GRingCtx& X, const GRElt& a) {
  const Group& G = *X.G;
  if (G.z_part().empty())
    return X.R->val(gr_aug(X, a)) == 0;
  // per beta component: augmentation of the component nonzero mod l
  for (auto& p : beta_residue_augmentations(X, a)) {
    bool z = std::all_of(p.begin(), p.end(), [](u64 v) { return v == 0; });
    if (z) return false;
  }
  return true;
}

namespace {

GRElt inverse_mod_l_scalar_trick(const GRingCtx& X, const GRElt& a) {
  // a = s(1 + j) with s a unit scalar of the coefficient ring and j in the
  // radical mod l; works when G is an l-group.
  CoeffRing::Elem s = gr_aug(X, a);
  CoeffRing::Elem sinv = X.R->inv(s);
  GRElt y = gr_scale(X, sinv, a);
  GRElt j = gr_sub(X, y, gr_one(X));
  // (1+j)^{-1} = prod_k (1 + (-j)^{2^k}) once j^{2^K} = 0 mod l
  GRElt inv = gr_sub(X, gr_one(X), j);
  GRElt t = gr_mul(X, j, j);
  int cap = 0;
  while (gr_val(X, t) < 1) {
    inv = gr_mul(X, inv, gr_add(X, gr_one(X), t));
    t = gr_mul(X, t, t);
    if (++cap > 40)
      throw std::invalid_argument("inverse: element not a unit");
  }
  return gr_scale(X, sinv, inv);
}

GRElt inverse_mod_l_linear(const GRingCtx& X, const GRElt& a) {
  // solve v * M = e0 over F_l, M the right-multiplication matrix of a
  int n = X.G->order(), l = X.R->l();
  if (X.R->deg() != 1)
    throw std::invalid_argument("inverse: z-part with extension coefficients");
  std::vector<std::vector<int>> M(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      M[i][X.G->mul(i, j)] = (int)(a.c[j] % (u64)l);
  std::vector<int> b(n, 0);
  b[0] = 1;
  // gaussian elimination
  std::vector<int> piv(n, -1);
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int p = -1;
    for (int i = row; i < n; ++i)
      if (M[i][col] % l != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(M[p], M[row]);
    std::swap(b[p], b[row]);
    int inv = (int)powmod((u64)M[row][col], (u64)(l - 2), (u64)l);
    for (int j = 0; j < n; ++j) M[row][j] = M[row][j] * inv % l;
    b[row] = b[row] * inv % l;
    for (int i = 0; i < n; ++i) {
      if (i == row || M[i][col] == 0) continue;
      int c = M[i][col];
      for (int j = 0; j < n; ++j)
        M[i][j] = ((M[i][j] - c * M[row][j]) % l + l) % l;
      b[i] = ((b[i] - c * b[row]) % l + l) % l;
    }
    piv[row] = col;
    ++row;
  }
  std::vector<int> v(n, 0);
  for (int i = 0; i < row; ++i)
    if (piv[i] >= 0) v[piv[i]] = b[i];
  for (int i = row; i < n; ++i)
    if (b[i] != 0) throw std::invalid_argument("inverse: not a unit mod l");
  GRElt r = gr_zero(X);
  for (int i = 0; i < n; ++i) r.c[i] = (u64)v[i];
  return r;
}

}  // namespace

GRElt gr_inverse(const GRingCtx& X, const GRElt& a) {
  if (!gr_is_unit(X, a))
    throw std::invalid_argument("gr_inverse: not a unit");
  GRElt v = X.G->z_part().empty() ? inverse_mod_l_scalar_trick(X, a)
                                  : inverse_mod_l_linear(X, a);
  // Newton lift: v <- v(2 - a v); terminates in <= a+g doubling steps
  GRElt two = gr_scalar(X, X.R->from_int(2));
  for (int it = 0; it < 2 * X.R->n() + 4; ++it) {
    GRElt av = gr_mul(X, a, v);
    if (av == gr_one(X)) return v;
    v = gr_mul(X, v, gr_sub(X, two, av));
  }
  if (!(gr_mul(X, a, v) == gr_one(X)))
    throw std::logic_error("gr_inverse: Newton lift failed");
  return v;
}

GRElt gr_random_unit(const GRingCtx& X, Rng& rng) {
  for (int tries = 0; tries < 256; ++tries) {
    GRElt x = gr_random(X, rng);
    if (gr_is_unit(X, x)) return x;
  }
  throw std::logic_error("random_unit: rejection failed");
}

GRElt gr_random_one_unit(const GRingCtx& X, Rng& rng) {
  GRElt x = gr_random(X, rng);
  u64 m = X.R->mod();
  for (auto& v : x.c) v = mulmod(v, (u64)X.R->l(), m);
  return gr_add(X, gr_one(X), x);
}

std::vector<u64> gr_serialize(const GRingCtx& X, const GRElt& a) {
  (void)X;
  return a.c;
}

// ---- T ----

TElt t_zero(const GRingCtx& X) {
  return TElt{std::vector<u64>((size_t)X.G->num_classes() * X.R->deg(), 0)};
}

TElt project_T(const GRingCtx& X, const GRElt& a) {
  TElt r = t_zero(X);
  int d = X.R->deg();
  u64 m = X.R->mod();
  for (int g = 0; g < X.G->order(); ++g) {
    int c = X.G->class_of(g);
    for (int t = 0; t < d; ++t) {
      size_t dst = (size_t)c * d + t;
      r.c[dst] = (r.c[dst] + a.c[(size_t)g * d + t]) % m;
    }
  }
  return r;
}

TElt t_add(const GRingCtx& X, const TElt& a, const TElt& b) {
  TElt r = a;
  u64 m = X.R->mod();
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = (r.c[i] + b.c[i]) % m;
  return r;
}
TElt t_sub(const GRingCtx& X, const TElt& a, const TElt& b) {
  TElt r = a;
  u64 m = X.R->mod();
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = (r.c[i] + m - b.c[i]) % m;
  return r;
}
TElt t_scale(const GRingCtx& X, const CoeffRing::Elem& s, const TElt& a) {
  TElt r = t_zero(X);
  int d = X.R->deg();
  for (int c = 0; c < X.G->num_classes(); ++c) {
    CoeffRing::Elem v(a.c.begin() + (size_t)c * d,
                      a.c.begin() + (size_t)(c + 1) * d);
    v = X.R->mul(s, v);
    for (int t = 0; t < d; ++t) r.c[(size_t)c * d + t] = v[t];
  }
  return r;
}
TElt t_basis(const GRingCtx& X, int cls) {
  TElt r = t_zero(X);
  r.c[(size_t)cls * X.R->deg()] = 1;
  return r;
}
bool t_is_zero(const GRingCtx& X, const TElt& a) {
  (void)X;
  return std::all_of(a.c.begin(), a.c.end(), [](u64 v) { return v == 0; });
}
bool t_eq_mod(const GRingCtx& X, const TElt& a, const TElt& b, int digits) {
  u64 m = pow_u64((u64)X.R->l(), (u64)digits);
  for (size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i] % m != b.c[i] % m) return false;
  return true;
}
TElt t_reduce(const GRingCtx& X, const TElt& a, int digits) {
  u64 m = pow_u64((u64)X.R->l(), (u64)digits);
  TElt r = a;
  for (auto& v : r.c) v %= m;
  return r;
}
int t_val(const GRingCtx& X, const TElt& a) {
  int v = INT32_MAX;
  for (u64 c : a.c) v = std::min(v, val_l(c, X.R->l()));
  return v;
}
CoeffRing::Elem t_coeff(const GRingCtx& X, const TElt& a, int cls) {
  int d = X.R->deg();
  return CoeffRing::Elem(a.c.begin() + (size_t)cls * d,
                         a.c.begin() + (size_t)(cls + 1) * d);
}

TElt t_mul_central(const GRingCtx& X, const TElt& a, int gamma) {
  TElt r = t_zero(X);
  int d = X.R->deg();
  u64 m = X.R->mod();
  for (int c = 0; c < X.G->num_classes(); ++c) {
    int g = X.G->class_rep(c);
    int c2 = X.G->class_of(X.G->mul(gamma, g));
    for (int t = 0; t < d; ++t) {
      size_t dst = (size_t)c2 * d + t;
      r.c[dst] = (r.c[dst] + a.c[(size_t)c * d + t]) % m;
    }
  }
  return r;
}

TElt phi_T(const GRingCtx& X, const TElt& a) {
  TElt r = t_zero(X);
  int d = X.R->deg();
  u64 m = X.R->mod();
  int l = X.R->l();
  for (int c = 0; c < X.G->num_classes(); ++c) {
    int g = X.G->class_rep(c);
    int c2 = X.G->class_of(X.G->pow(g, l));
    CoeffRing::Elem v = t_coeff(X, a, c);
    v = X.R->frobenius(v);
    for (int t = 0; t < d; ++t) {
      size_t dst = (size_t)c2 * d + t;
      r.c[dst] = (r.c[dst] + v[t]) % m;
    }
  }
  return r;
}

GRElt defl_ring(const GRingCtx& XG, const GRingCtx& XQ,
                const QuotientGroup& Q, const GRElt& x) {
  GRElt r = gr_zero(XQ);
  int d = XG.R->deg();
  u64 m = XG.R->mod();
  for (int g = 0; g < XG.G->order(); ++g) {
    int q = Q.proj[g];
    for (int t = 0; t < d; ++t) {
      size_t dst = (size_t)q * d + t;
      r.c[dst] = (r.c[dst] + x.c[(size_t)g * d + t]) % m;
    }
  }
  return r;
}

TElt defl_T(const GRingCtx& XG, const GRingCtx& XQ, const QuotientGroup& Q,
            const TElt& x) {
  TElt r = t_zero(XQ);
  int d = XG.R->deg();
  u64 m = XG.R->mod();
  for (int c = 0; c < XG.G->num_classes(); ++c) {
    int g = XG.G->class_rep(c);
    int qc = XQ.G->class_of(Q.proj[g]);
    for (int t = 0; t < d; ++t) {
      size_t dst = (size_t)qc * d + t;
      r.c[dst] = (r.c[dst] + x.c[(size_t)c * d + t]) % m;
    }
  }
  return r;
}

TElt infl_T_classdata(const GRingCtx& XG, const GRingCtx& XQ,
                      const QuotientGroup& Q, const TElt& y) {
  TElt r = t_zero(XG);
  int d = XG.R->deg();
  for (int c = 0; c < XG.G->num_classes(); ++c) {
    int g = XG.G->class_rep(c);
    int qc = XQ.G->class_of(Q.proj[g]);
    for (int t = 0; t < d; ++t)
      r.c[(size_t)c * d + t] = y.c[(size_t)qc * d + t];
  }
  return r;
}

// ---- conjugation action / transfer / trace ----

ConjAction make_conj_action(const Group& G, const Subgroup& A) {
  ConjAction C;
  C.G = &G;
  C.A = A;
  C.Amat = materialize(G, A);
  C.Q = quotient(G, A);
  int q = C.Q.group->order();
  int na = A.order();
  C.act.assign(q, std::vector<int>(na));
  for (int i = 0; i < q; ++i) {
    int r = C.Q.to_rep[i];
    for (int a = 0; a < na; ++a) {
      int img = G.conj(C.Amat.to_parent[a], r);
      C.act[i][a] = C.Amat.from_parent.at(img);
    }
  }
  return C;
}

GRElt transfer_ver(const GRingCtx& XU, const MaterializedGroup& Umat,
                   const GRingCtx& XA, const MaterializedGroup& Amat,
                   const Group& G, const Subgroup& U, const Subgroup& A,
                   const GRElt& x, RepPolicy policy) {
  std::vector<int> ver = transfer_map(G, U, A, policy);
  GRElt r = gr_zero(XA);
  int d = XU.R->deg();
  u64 m = XU.R->mod();
  for (int u = 0; u < Umat.group->order(); ++u) {
    int gu = Umat.to_parent[u];
    int va = Amat.from_parent.at(ver[gu]);
    for (int t = 0; t < d; ++t) {
      size_t dst = (size_t)va * d + t;
      r.c[dst] = (r.c[dst] + x.c[(size_t)u * d + t]) % m;
    }
  }
  return r;
}

GRElt vr_power_endo(const GRingCtx& XA, const ConjAction& act,
                    const std::vector<int>& V_elems, const GRElt& e) {
  const Group& Am = *act.Amat.group;
  GRElt r = gr_zero(XA);
  int d = XA.R->deg();
  u64 m = XA.R->mod();
  for (int a = 0; a < Am.order(); ++a) {
    bool nz = false;
    for (int t = 0; t < d; ++t) nz |= e.c[(size_t)a * d + t] != 0;
    if (!nz) continue;
    int prod = 0;
    for (int v : V_elems) prod = Am.mul(prod, act.act[v][a]);
    for (int t = 0; t < d; ++t) {
      size_t dst = (size_t)prod * d + t;
      r.c[dst] = (r.c[dst] + e.c[(size_t)a * d + t]) % m;
    }
  }
  return r;
}

GRElt conj_by_q(const GRingCtx& XA, const ConjAction& act, int q,
                const GRElt& x) {
  GRElt r = gr_zero(XA);
  int d = XA.R->deg();
  int na = act.Amat.group->order();
  for (int a = 0; a < na; ++a) {
    int k = act.act[q][a];
    for (int t = 0; t < d; ++t)
      r.c[(size_t)k * d + t] = x.c[(size_t)a * d + t];
  }
  return r;
}

GRElt trace_op(const GRingCtx& XA, const ConjAction& act,
               const std::vector<int>& W_elems, const GRElt& x) {
  GRElt r = gr_zero(XA);
  for (int q : W_elems)
    r = gr_add(XA, r, conj_by_q(XA, act, act.Q.group->inv(q), x));
  return r;
}

GRElt trace_rel(const GRingCtx& XA, const ConjAction& act,
                const std::vector<int>& W_elems,
                const std::vector<int>& V_elems, const GRElt& x) {
  for (int v : V_elems)
    if (!(conj_by_q(XA, act, v, x) == x))
      throw std::invalid_argument("trace_rel: element not fixed by V");
  // coset representatives sV of V in W (minimal element per coset)
  std::vector<char> used(act.Q.group->order(), 0);
  GRElt r = gr_zero(XA);
  for (int s : W_elems) {
    if (used[s]) continue;
    for (int v : V_elems) used[act.Q.group->mul(s, v)] = 1;
    r = gr_add(XA, r, conj_by_q(XA, act, act.Q.group->inv(s), x));
  }
  return r;
}

namespace {

std::vector<std::vector<int>> orbits_of(const ConjAction& act,
                                        const std::vector<int>& W_elems) {
  int na = act.Amat.group->order();
  std::vector<int> seen(na, 0);
  std::vector<std::vector<int>> orbs;
  for (int a = 0; a < na; ++a) {
    if (seen[a]) continue;
    std::vector<int> orb;
    for (int q : W_elems) {
      int x = act.act[q][a];
      if (!seen[x]) {
        seen[x] = 1;
        orb.push_back(x);
      }
    }
    std::sort(orb.begin(), orb.end());
    orbs.push_back(std::move(orb));
  }
  return orbs;
}

}  // namespace

bool trace_membership_scaled(const GRingCtx& XA, const ConjAction& act,
                             const std::vector<int>& W_elems, const GRElt& y,
                             int precision, int extra_l) {
  int l = XA.R->l(), d = XA.R->deg();
  u64 pm = pow_u64((u64)l, (u64)precision);
  for (auto& orb : orbits_of(act, W_elems)) {
    int stab = (int)W_elems.size() / (int)orb.size();
    int sv = val_l((u64)stab, l) + extra_l;
    // constant on the orbit mod l^precision
    for (size_t k = 1; k < orb.size(); ++k)
      for (int t = 0; t < d; ++t)
        if (y.c[(size_t)orb[k] * d + t] % pm !=
            y.c[(size_t)orb[0] * d + t] % pm)
          return false;
    int need = std::min(precision, sv);
    for (int t = 0; t < d; ++t) {
      u64 v = y.c[(size_t)orb[0] * d + t] % pm;
      if (val_l(v, l) < need) return false;
    }
  }
  return true;
}

bool trace_membership(const GRingCtx& XA, const ConjAction& act,
                      const std::vector<int>& W_elems, const GRElt& y,
                      int precision) {
  return trace_membership_scaled(XA, act, W_elems, y, precision, 0);
}

// ---- ideals ----

IdealGens ideal_a(const GRingCtx& XG, const Subgroup& C) {
  IdealGens I;
  I.tag = IdealTag::A_frak;
  if (C.order() == 1) return I;
  QuotientGroup Q = quotient(*XG.G, C);
  for (int q = 0; q < Q.group->order(); ++q) {
    int g = Q.to_rep[q];
    for (int c : C.elems) {
      if (c == 0) continue;
      GRElt e = gr_sub(XG, gr_basis(XG, XG.G->mul(g, c)), gr_basis(XG, g));
      I.gens.push_back(std::move(e));
    }
  }
  return I;
}

bool ideal_spans_kernel(const GRingCtx& XG, const QuotientGroup& Q,
                        const IdealGens& I) {
  if (XG.R->deg() != 1)
    throw std::invalid_argument("ideal_spans_kernel: extension coefficients");
  ModCtx R(XG.R->l(), XG.R->n());
  int n = XG.G->order();
  Mat gens(0, n);
  for (const GRElt& g : I.gens) gens.push_row(g.c);
  if (I.gens.empty()) gens = Mat(0, n);
  // kernel of the deflation matrix (element g -> coset column)
  Mat D(n, Q.group->order());
  for (int g = 0; g < n; ++g) D.at(g, Q.proj[g]) = 1;
  Mat K = left_kernel(D, R);
  return spans_equal(gens, K, R);
}

// ---- beta decomposition ----

BetaDecomposition make_beta_decomposition(const GRingCtx& X) {
  const Group& G = *X.G;
  BetaDecomposition B;
  B.X = &X;
  int w = G.z_order();
  B.w = w;
  int l = X.R->l(), n = X.R->n();
  if (w > 1 && X.R->deg() != 1)
    throw std::invalid_argument("beta: base coefficients must be Z/l^n");
  if (std::gcd(w, l) != 1)
    throw std::invalid_argument("beta: gcd(w, l) != 1");
  // l-part subgroup: all elements of l-power order
  std::vector<int> pl;
  for (int g = 0; g < G.order(); ++g) {
    int o = G.elem_order(g);
    while (o % l == 0) o /= l;
    if (o == 1) pl.push_back(g);
  }
  Subgroup P{&G, pl};
  if (!is_subgroup(G, pl))
    throw std::logic_error("beta: l-part is not a subgroup");
  B.Pl = materialize(G, P);
  // z generator: element of the z-part with full order w
  int zgen = 0;
  for (int g : G.z_part())
    if (G.elem_order(g) == w) {
      zgen = g;
      break;
    }
  // decompose g = z^i * p
  int v = P.order();
  long t = 0;
  if (w > 1) {
    while ((t * v) % w != 1 % w) ++t;  // t*v = 1 mod w
  }
  B.zpow_of.assign(G.order(), 0);
  B.lpart_of.assign(G.order(), 0);
  B.zl_to_g.assign((size_t)w * v, -1);
  std::vector<int> zpows(w);
  for (int i = 0, x = 0; i < w; ++i, x = G.mul(x, zgen)) zpows[i] = x;
  for (int g = 0; g < G.order(); ++g) {
    int gz = G.pow(g, t * v);
    int i = 0;
    while (zpows[i] != gz) ++i;
    int p = G.mul(G.inv(gz), g);
    B.zpow_of[g] = i;
    B.lpart_of[g] = B.Pl.from_parent.at(p);
    B.zl_to_g[(size_t)i * v + B.lpart_of[g]] = g;
  }
  auto factors = factor_xw_minus_1(w, l, n);
  auto idems = crt_idempotents(factors, w, l, n);
  for (size_t i = 0; i < factors.size(); ++i) {
    BetaComponent C;
    C.factor = factors[i];
    C.idempotent = idems[i];
    C.ring = factors[i].size() == 2
                 ? CoeffRing(l, n)  // linear factor: plain Z/l^n
                 : CoeffRing(l, n, factors[i]);
    B.comps.push_back(std::move(C));
  }
  return B;
}

std::vector<GRElt> BetaDecomposition::decompose(const GRElt& x) const {
  const Group& G = *X->G;
  u64 mod = X->R->mod();
  std::vector<GRElt> out;
  for (const BetaComponent& C : comps) {
    GRingCtx XC{Pl.group.get(), &C.ring};
    GRElt y = gr_zero(XC);
    int d = C.ring.deg();
    // x^i mod factor (for linear factor x = root)
    std::vector<CoeffRing::Elem> xi(w);
    if (d == 1) {
      // root of the linear factor: factor = (x - r): factor[0] = -r
      u64 r = (mod - C.factor[0] % mod) % mod;
      u64 p = 1;
      for (int i = 0; i < w; ++i) {
        xi[i] = {p};
        p = mulmod(p, r, mod);
      }
    } else {
      CoeffRing::Elem p = C.ring.one();
      for (int i = 0; i < w; ++i) {
        xi[i] = p;
        p = C.ring.mul(p, C.ring.x());
      }
    }
    for (int g = 0; g < G.order(); ++g) {
      u64 c = x.c[g];
      if (!c) continue;
      int i = zpow_of[g], p = lpart_of[g];
      CoeffRing::Elem add = C.ring.scale(c, xi[i]);
      for (int tt = 0; tt < d; ++tt) {
        size_t dst = (size_t)p * d + tt;
        y.c[dst] = (y.c[dst] + add[tt]) % mod;
      }
    }
    out.push_back(std::move(y));
  }
  return out;
}

GRElt BetaDecomposition::reassemble(const std::vector<GRElt>& parts) const {
  u64 mod = X->R->mod();
  int np = Pl.group->order();
  GRElt r = gr_zero(*X);
  for (int p = 0; p < np; ++p) {
    // accumulate the coefficient polynomial in (Z/l^n)[x]/(x^w - 1)
    std::vector<u64> acc(w, 0);
    for (size_t bi = 0; bi < comps.size(); ++bi) {
      const BetaComponent& C = comps[bi];
      int d = C.ring.deg();
      std::vector<u64> yp(parts[bi].c.begin() + (size_t)p * d,
                          parts[bi].c.begin() + (size_t)(p + 1) * d);
      poly_trim(yp);
      if (yp.empty()) continue;
      auto prod = poly_mul_mod(C.idempotent, yp, mod);
      for (size_t i = 0; i < prod.size(); ++i)
        acc[i % w] = (acc[i % w] + prod[i]) % mod;
    }
    for (int i = 0; i < w; ++i) {
      int g = zl_to_g[(size_t)i * np + p];
      r.c[g] = acc[i];
    }
  }
  return r;
}

std::vector<TElt> BetaDecomposition::decompose_T(const TElt& x) const {
  const Group& G = *X->G;
  u64 mod = X->R->mod();
  int ncq = Pl.group->num_classes();
  std::vector<TElt> out;
  for (const BetaComponent& C : comps) {
    GRingCtx XC{Pl.group.get(), &C.ring};
    TElt y = t_zero(XC);
    int d = C.ring.deg();
    std::vector<CoeffRing::Elem> xi(w);
    if (d == 1) {
      u64 rroot = (mod - C.factor[0] % mod) % mod;
      u64 pp = 1;
      for (int i = 0; i < w; ++i) {
        xi[i] = {pp};
        pp = mulmod(pp, rroot, mod);
      }
    } else {
      CoeffRing::Elem pp = C.ring.one();
      for (int i = 0; i < w; ++i) {
        xi[i] = pp;
        pp = C.ring.mul(pp, C.ring.x());
      }
    }
    for (int c = 0; c < G.num_classes(); ++c) {
      u64 v = x.c[c];
      if (!v) continue;
      int g = G.class_rep(c);
      int i = zpow_of[g];
      int pc = Pl.group->class_of(lpart_of[g]);
      CoeffRing::Elem add = C.ring.scale(v, xi[i]);
      for (int tt = 0; tt < d; ++tt) {
        size_t dst = (size_t)pc * d + tt;
        y.c[dst] = (y.c[dst] + add[tt]) % mod;
      }
    }
    (void)ncq;
    out.push_back(std::move(y));
  }
  return out;
}

TElt BetaDecomposition::reassemble_T(const std::vector<TElt>& parts) const {
  const Group& G = *X->G;
  u64 mod = X->R->mod();
  TElt r = t_zero(*X);
  // G-class of z^i * p_rep determines (i, class of p)
  for (int pc = 0; pc < Pl.group->num_classes(); ++pc) {
    std::vector<u64> acc(w, 0);
    for (size_t bi = 0; bi < comps.size(); ++bi) {
      const BetaComponent& C = comps[bi];
      int d = C.ring.deg();
      std::vector<u64> yp(parts[bi].c.begin() + (size_t)pc * d,
                          parts[bi].c.begin() + (size_t)(pc + 1) * d);
      poly_trim(yp);
      if (yp.empty()) continue;
      auto prod = poly_mul_mod(C.idempotent, yp, mod);
      for (size_t i = 0; i < prod.size(); ++i)
        acc[i % w] = (acc[i % w] + prod[i]) % mod;
    }
    int prep = Pl.to_parent[Pl.group->class_rep(pc)];
    for (int i = 0; i < w; ++i) {
      int g = zl_to_g[(size_t)i * Pl.group->order() +
                      Pl.from_parent.at(prep)];
      r.c[G.class_of(g)] = acc[i];
    }
  }
  return r;
}

std::vector<GRElt> beta_idempotents_in_ring(const BetaDecomposition& B) {
  const GRingCtx& X = *B.X;
  const Group& G = *X.G;
  // z generator again
  int w = B.w;
  int zgen = 0;
  for (int g : G.z_part())
    if (G.elem_order(g) == w) {
      zgen = g;
      break;
    }
  std::vector<GRElt> out;
  for (const BetaComponent& C : B.comps) {
    GRElt e = gr_zero(X);
    int x = 0;
    for (int i = 0; i < w; ++i) {
      e.c[x] = (e.c[x] + C.idempotent[i]) % X.R->mod();
      x = G.mul(x, zgen);
    }
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

std::vector<std::vector<u64>> beta_residue_augmentations(const GRingCtx& X,
                                                         const GRElt& a) {
  const Group& G = *X.G;
  int l = X.R->l();
  int w = G.z_order();
  // sum over the l-part per z-power: polynomial in z mod l
  // (reuse the element splitting from the decomposition, computed locally)
  int zgen = 0;
  for (int g : G.z_part())
    if (G.elem_order(g) == w) {
      zgen = g;
      break;
    }
  int vord = 1;
  {
    int o = G.order();
    while (o % l == 0) o /= l;
    vord = G.order() / o;  // order of the l-part
  }
  long t = 0;
  while ((t * vord) % w != 1 % w) ++t;
  std::vector<int> zpows(w);
  for (int i = 0, x = 0; i < w; ++i, x = G.mul(x, zgen)) zpows[i] = x;
  std::vector<u64> P(w, 0);
  for (int g = 0; g < G.order(); ++g) {
    u64 c = a.c[g] % (u64)l;
    if (!c) continue;
    int gz = G.pow(g, t * vord);
    int i = 0;
    while (zpows[i] != gz) ++i;
    P[i] = (P[i] + c) % (u64)l;
  }
  auto factors = factor_xw_minus_1(w, l, 1);
  std::vector<std::vector<u64>> out;
  for (auto& f : factors) {
    auto r = poly_mod_monic(P, f, (u64)l);
    poly_trim(r);
    out.push_back(r);
  }
  return out;
}

}  // namespace

}  // namespace gring
