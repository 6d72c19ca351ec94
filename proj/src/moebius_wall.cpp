#include "gringcheck/moebius_wall.hpp"

#include <algorithm>
#include <numeric>

namespace gring {

MWContext::MWContext(const Group& g, const CoeffRing& r, const Subgroup& a,
                     RepPolicy policy)
    : G(&g), R(&r), A(a), T(make_transversal(g, a, policy)),
      act(make_conj_action(g, a)) {
  XG = GRingCtx{G, R};
  XA = GRingCtx{act.Amat.group.get(), R};
}

CosetSection make_section(const MWContext& C,
                          const std::vector<int>& V_elems) {
  const Group& Q = *C.T.Q.group;
  CosetSection S;
  S.coset_of.assign(Q.order(), -1);
  S.v_part.assign(Q.order(), -1);
  for (int q = 0; q < Q.order(); ++q) {
    if (S.coset_of[q] >= 0) continue;
    int idx = (int)S.kappa.size();
    S.kappa.push_back(q);  // minimal element: loop order is ascending
    for (int v : V_elems) {
      int x = Q.mul(q, v);
      if (S.coset_of[x] < 0) {
        S.coset_of[x] = idx;
        S.v_part[x] = v;
      }
    }
  }
  return S;
}

std::vector<GRElt> r_decompose(const MWContext& C, const GRElt& eps) {
  const Group& G = *C.G;
  int qn = C.q_order();
  std::vector<GRElt> e(qn, gr_zero(C.XA));
  int d = C.R->deg();
  for (int g = 0; g < G.order(); ++g) {
    bool nz = false;
    for (int t = 0; t < d; ++t) nz |= eps.c[(size_t)g * d + t] != 0;
    if (!nz) continue;
    int q = C.T.q_of(g);
    int a = G.mul(G.inv(C.T.rep[q]), g);
    int ai = C.a_index(a);
    for (int t = 0; t < d; ++t)
      e[q].c[(size_t)ai * d + t] = eps.c[(size_t)g * d + t];
  }
  return e;
}

void enumerate_sigma_fixed(
    const MWContext& C, const std::vector<int>& V_elems,
    const std::function<void(const FixedPointPermutation&,
                             const std::vector<int>& sigma,
                             const std::vector<int>& f)>& fn) {
  const Group& Q = *C.T.Q.group;
  CosetSection S = make_section(C, V_elems);
  int m = (int)S.kappa.size();
  int nv = (int)V_elems.size();
  std::vector<int> sigma(m);
  std::iota(sigma.begin(), sigma.end(), 0);
  auto sgn_of = [](const std::vector<int>& p) {
    int s = 1;
    std::vector<char> vis(p.size(), 0);
    for (size_t i = 0; i < p.size(); ++i) {
      if (vis[i]) continue;
      size_t j = i, len = 0;
      while (!vis[j]) {
        vis[j] = 1;
        j = (size_t)p[j];
        ++len;
      }
      if (len % 2 == 0) s = -s;
    }
    return s;
  };
  do {
    int sgn = sgn_of(sigma);
    std::vector<int> f(m, 0);  // indices into V_elems
    for (;;) {
      FixedPointPermutation P;
      P.pi.assign(Q.order(), -1);
      P.sign = sgn;
      for (int q = 0; q < Q.order(); ++q) {
        int s = S.coset_of[q], v = S.v_part[q];
        // pi(kappa(s) v) = kappa(sigma(s)) f(s) v
        P.pi[q] = Q.mul(Q.mul(S.kappa[sigma[s]], V_elems[f[s]]), v);
      }
      std::vector<int> fv(m);
      for (int s = 0; s < m; ++s) fv[s] = V_elems[f[s]];
      fn(P, sigma, fv);
      int pos = m - 1;
      while (pos >= 0 && f[pos] == nv - 1) f[pos--] = 0;
      if (pos < 0) break;
      ++f[pos];
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}

namespace {

std::vector<int> v_elems_of(const MWContext& C, const Subgroup& U) {
  const Group& Q = *C.T.Q.group;
  std::vector<char> in(Q.order(), 0);
  for (int u : U.elems) in[C.T.q_of(u)] = 1;
  std::vector<int> V;
  for (int q = 0; q < Q.order(); ++q)
    if (in[q]) V.push_back(q);
  return V;
}

// left-multiplication by a basis element of A (parent index) on R[A]
GRElt mul_basis_parent(const MWContext& C, int a_parent, const GRElt& x) {
  const Group& Am = *C.act.Amat.group;
  int a = C.a_index(a_parent);
  GRElt r = gr_zero(C.XA);
  int d = C.R->deg();
  for (int i = 0; i < Am.order(); ++i) {
    int k = Am.mul(a, i);
    for (int t = 0; t < d; ++t)
      r.c[(size_t)k * d + t] = x.c[(size_t)i * d + t];
  }
  return r;
}

// e^{r_q}: conjugate an element of R[A] by the representative of q
GRElt conj_by_rep(const MWContext& C, const GRElt& e, int q) {
  const Group& G = *C.G;
  int rq = C.T.rep[q];
  GRElt r = gr_zero(C.XA);
  int d = C.R->deg();
  for (int i = 0; i < C.act.Amat.group->order(); ++i) {
    int pa = C.act.Amat.to_parent[i];
    int k = C.a_index(G.conj(pa, rq));
    for (int t = 0; t < d; ++t)
      r.c[(size_t)k * d + t] = e.c[(size_t)i * d + t];
  }
  return r;
}

}  // namespace

GRElt mw_vr(const MWContext& C, const std::vector<int>& V_elems,
            const GRElt& e) {
  return vr_power_endo(C.XA, C.act, V_elems, e);
}

GRElt mw_trace(const MWContext& C, const std::vector<int>& W_elems,
               const GRElt& x) {
  return trace_op(C.XA, C.act, W_elems, x);
}

GRElt lemmaA_formula(const MWContext& C, const Subgroup& U, const GRElt& eps) {
  const Group& Q = *C.T.Q.group;
  const Group& G = *C.G;
  std::vector<int> V = v_elems_of(C, U);
  CosetSection S = make_section(C, V);
  int m = (int)S.kappa.size();
  std::vector<GRElt> e = r_decompose(C, eps);
  // entry (t, s) = sum_{v0 in V} [prod_{v in V} a_{w, kappa(s) v}] *
  //               vr_V(e_w^{kappa(s)}),  w = kappa(t) v0 kappa(s)^{-1}
  std::vector<std::vector<GRElt>> M(m, std::vector<GRElt>(m, gr_zero(C.XA)));
  for (int s = 0; s < m; ++s) {
    int ks = S.kappa[s];
    // conjugated, vr-transformed e_w per possible w (lazy per needed w)
    for (int t = 0; t < m; ++t) {
      GRElt acc = gr_zero(C.XA);
      for (int v0 : V) {
        int w = Q.mul(Q.mul(S.kappa[t], v0), Q.inv(ks));
        GRElt ew = vr_power_endo(C.XA, C.act, V, conj_by_rep(C, e[w], ks));
        int cpart = 0;  // product over v of cocycle values, in A
        for (int v : V) cpart = G.mul(cpart, C.T.cocyc[w][Q.mul(ks, v)]);
        acc = gr_add(C.XA, acc, mul_basis_parent(C, cpart, ew));
      }
      M[t][s] = std::move(acc);
    }
  }
  return det_bird(C.XA, M);
}

GRElt lemmaA_formula_literal(const MWContext& C, const Subgroup& U,
                             const GRElt& eps, long term_bound) {
  const Group& Q = *C.T.Q.group;
  const Group& G = *C.G;
  std::vector<int> V = v_elems_of(C, U);
  CosetSection S = make_section(C, V);
  int m = (int)S.kappa.size();
  long terms = 1;
  for (int i = 2; i <= m; ++i) terms *= i;
  for (int i = 0; i < m; ++i) {
    terms *= (long)V.size();
    if (terms > term_bound)
      throw SizeBoundError("lemmaA_formula_literal: too many terms");
  }
  std::vector<GRElt> e = r_decompose(C, eps);
  // cache vr_V(e_w^{kappa(s)}) per (w, s-coset)
  std::vector<std::vector<GRElt>> ecache(
      Q.order(), std::vector<GRElt>(m, gr_zero(C.XA)));
  std::vector<std::vector<char>> have(Q.order(), std::vector<char>(m, 0));
  GRElt total = gr_zero(C.XA);
  enumerate_sigma_fixed(
      C, V,
      [&](const FixedPointPermutation& P, const std::vector<int>&,
          const std::vector<int>&) {
        // r~(pi) = sgn(pi) prod_q a_{pi(q) q^{-1}, q}
        int cpart = 0;
        for (int q = 0; q < Q.order(); ++q) {
          int w = Q.mul(P.pi[q], Q.inv(q));
          cpart = G.mul(cpart, C.T.cocyc[w][q]);
        }
        GRElt term = gr_basis(C.XA, C.a_index(cpart));
        for (int s = 0; s < m; ++s) {
          int ks = S.kappa[s];
          int w = Q.mul(P.pi[ks], Q.inv(ks));
          if (!have[w][s]) {
            ecache[w][s] =
                vr_power_endo(C.XA, C.act, V, conj_by_rep(C, e[w], ks));
            have[w][s] = 1;
          }
          term = gr_mul(C.XA, term, ecache[w][s]);
        }
        if (P.sign < 0) term = gr_neg(C.XA, term);
        total = gr_add(C.XA, total, term);
      });
  return total;
}

GRElt lemmaA_direct(const MWContext& C, const Subgroup& U, const GRElt& eps) {
  const Group& G = *C.G;
  std::vector<int> V = v_elems_of(C, U);
  CosetSection S = make_section(C, V);
  int m = (int)S.kappa.size();
  MaterializedGroup Umat = materialize(G, U);
  GRingCtx XU{Umat.group.get(), C.R};
  int d = C.R->deg();
  // action matrix: eps * r_{kappa(s1)} = sum_{s2} r_{kappa(s2)} M[s2][s1]
  std::vector<std::vector<GRElt>> M(m, std::vector<GRElt>(m, gr_zero(XU)));
  for (int s1 = 0; s1 < m; ++s1) {
    GRElt p = gr_mul(C.XG, eps, gr_basis(C.XG, C.T.rep[S.kappa[s1]]));
    for (int g = 0; g < G.order(); ++g) {
      bool nz = false;
      for (int t = 0; t < d; ++t) nz |= p.c[(size_t)g * d + t] != 0;
      if (!nz) continue;
      int s2 = S.coset_of[C.T.q_of(g)];
      int u = G.mul(G.inv(C.T.rep[S.kappa[s2]]), g);
      int ui = Umat.from_parent.at(u);
      for (int t = 0; t < d; ++t)
        M[s2][s1].c[(size_t)ui * d + t] = p.c[(size_t)g * d + t];
    }
  }
  // transfer entrywise into the commutative R[A]
  std::vector<std::vector<GRElt>> MA(m, std::vector<GRElt>(m, gr_zero(C.XA)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      MA[i][j] = transfer_ver(XU, Umat, C.XA, C.act.Amat, G, U, C.A, M[i][j]);
  return det_subset_dp(C.XA, MA);
}

GRElt det_subset_dp(const GRingCtx& X,
                    const std::vector<std::vector<GRElt>>& M) {
  int n = (int)M.size();
  if (n == 0) return gr_one(X);
  std::vector<GRElt> D((size_t)1 << n, gr_zero(X));
  D[0] = gr_one(X);
  for (u64 mask = 1; mask < ((u64)1 << n); ++mask) {
    int k = __builtin_popcountll(mask) - 1;  // row index
    GRElt acc = gr_zero(X);
    int pos = 0;  // index of j within mask (ascending)
    for (int j = 0; j < n; ++j) {
      if (!(mask >> j & 1)) continue;
      GRElt sub = D[mask ^ ((u64)1 << j)];
      GRElt term = gr_mul(X, sub, M[k][j]);
      // sign: (-1)^{(k - pos)}
      if ((k - pos) % 2 != 0) term = gr_neg(X, term);
      acc = gr_add(X, acc, term);
      ++pos;
    }
    D[mask] = std::move(acc);
  }
  return D[((u64)1 << n) - 1];
}

GRElt det_bird(const GRingCtx& X, const std::vector<std::vector<GRElt>>& M) {
  int n = (int)M.size();
  if (n == 0) return gr_one(X);
  if (n == 1) return M[0][0];
  // X_{k+1} = mu(X_k) * M, X_1 = M; det = (-1)^{n-1} (X_n)_{11}
  auto mu = [&](const std::vector<std::vector<GRElt>>& A) {
    std::vector<std::vector<GRElt>> B(n,
                                      std::vector<GRElt>(n, gr_zero(X)));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) B[i][j] = A[i][j];
    GRElt s = gr_zero(X);
    for (int i = n - 1; i >= 0; --i) {
      B[i][i] = gr_neg(X, s);
      s = gr_add(X, s, A[i][i]);
    }
    return B;
  };
  auto matmul = [&](const std::vector<std::vector<GRElt>>& A,
                    const std::vector<std::vector<GRElt>>& B) {
    std::vector<std::vector<GRElt>> Cm(n, std::vector<GRElt>(n, gr_zero(X)));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        if (gr_is_zero(X, A[i][k])) continue;
        for (int j = 0; j < n; ++j) {
          if (gr_is_zero(X, B[k][j])) continue;
          Cm[i][j] = gr_add(X, Cm[i][j], gr_mul(X, A[i][k], B[k][j]));
        }
      }
    return Cm;
  };
  std::vector<std::vector<GRElt>> Xk = M;
  for (int k = 1; k < n; ++k) Xk = matmul(mu(Xk), M);
  GRElt det = Xk[0][0];
  if ((n - 1) % 2 != 0) det = gr_neg(X, det);
  return det;
}

namespace {

// subgroup element-lists of a subgroup Qp of Q, with Moebius values
struct SubLatticeInfo {
  std::vector<std::vector<int>> subs;  // element lists in Q indices
  std::vector<long> mu;
};

SubLatticeInfo sublattice_with_mu(const Group& Q,
                                  const std::vector<int>& Qp_elems) {
  Subgroup Qp{&Q, Qp_elems};
  MaterializedGroup Qm = materialize(Q, Qp);
  Lattice lat = subgroup_lattice(*Qm.group);
  MoebiusTable mt = moebius_table(lat);
  SubLatticeInfo out;
  for (size_t i = 0; i < lat.subs.size(); ++i) {
    std::vector<int> elems;
    for (int e : lat.subs[i].elems) elems.push_back(Qm.to_parent[e]);
    std::sort(elems.begin(), elems.end());
    out.subs.push_back(std::move(elems));
    out.mu.push_back(mt.values[i]);
  }
  return out;
}

}  // namespace

CongruenceReport lemmaB_check(const MWContext& C,
                              const std::vector<int>& Qprime_elems,
                              const GRElt& e, int precision) {
  const Group& Q = *C.T.Q.group;
  SubLatticeInfo L = sublattice_with_mu(Q, Qprime_elems);
  u64 mod = C.R->mod();
  GRElt lhs = gr_zero(C.XA);
  for (size_t vi = 0; vi < L.subs.size(); ++vi) {
    const std::vector<int>& V = L.subs[vi];
    long muv = L.mu[vi];
    if (muv == 0) continue;
    // coset representatives s of V in Q' (minimal elements, Q' = U sV)
    std::vector<char> used(Q.order(), 0);
    GRElt prod = gr_one(C.XA);
    for (int s : Qprime_elems) {
      if (used[s]) continue;
      for (int v : V) used[Q.mul(s, v)] = 1;
      GRElt es = conj_by_q(C.XA, C.act, s, e);
      prod = gr_mul(C.XA, prod, vr_power_endo(C.XA, C.act, V, es));
    }
    u64 cmu = muv >= 0 ? (u64)muv % mod : (mod - (u64)(-muv) % mod) % mod;
    lhs = gr_add(C.XA, lhs, gr_scale(C.XA, C.R->from_int(cmu), prod));
  }
  CongruenceReport rep;
  rep.residue = lhs;
  rep.pass = trace_membership(C.XA, C.act, Qprime_elems, lhs, precision);
  if (!rep.pass) rep.detail = "lemmaB: residue not in the trace image";
  return rep;
}

Prop5Report prop5_check(const MWContext& C, const GRElt& eps, int precision) {
  const Group& Q = *C.T.Q.group;
  std::vector<int> all(Q.order());
  std::iota(all.begin(), all.end(), 0);
  SubLatticeInfo L = sublattice_with_mu(Q, all);
  std::vector<Subgroup> inter = intermediate_subgroups(*C.G, C.A);
  Prop5Report rep;
  rep.sum = gr_zero(C.XA);
  u64 mod = C.R->mod();
  for (const Subgroup& U : inter) {
    // V = U/A inside Q
    std::vector<int> V = v_elems_of(C, U);
    long muv = 0;
    for (size_t i = 0; i < L.subs.size(); ++i)
      if (L.subs[i] == V) muv = L.mu[i];
    GRElt term = lemmaA_direct(C, U, eps);
    rep.terms.emplace_back(
        "U_order_" + std::to_string(U.order()) + "_mu_" + std::to_string(muv),
        term);
    if (muv == 0) continue;
    u64 cmu = muv >= 0 ? (u64)muv % mod : (mod - (u64)(-muv) % mod) % mod;
    rep.sum = gr_add(C.XA, rep.sum,
                     gr_scale(C.XA, C.R->from_int(cmu), term));
  }
  rep.pass = trace_membership(C.XA, C.act, all, rep.sum, precision);
  return rep;
}

UabContext uab_context(const MWContext& C, const Subgroup& U) {
  UabContext J;
  J.Umat = materialize(*C.G, U);
  Subgroup comm = commutator_subgroup(*J.Umat.group, whole_group(*J.Umat.group));
  J.Uab = quotient(*J.Umat.group, comm, "ab");
  J.XUab = GRingCtx{J.Uab.group.get(), C.R};
  return J;
}

GRElt ver_uab_to_A(const MWContext& C, const Subgroup& U, const UabContext& J,
                   const GRElt& lam) {
  const Group& G = *C.G;
  std::vector<int> ver = transfer_map(G, U, C.A);
  GRElt out = gr_zero(C.XA);
  int d = C.R->deg();
  u64 mod = C.R->mod();
  for (int ub = 0; ub < J.Uab.group->order(); ++ub) {
    bool nz = false;
    for (int t = 0; t < d; ++t) nz |= lam.c[(size_t)ub * d + t] != 0;
    if (!nz) continue;
    int upre = J.Umat.to_parent[J.Uab.to_rep[ub]];
    int ai = C.a_index(ver[upre]);
    for (int t = 0; t < d; ++t) {
      size_t dst = (size_t)ai * d + t;
      out.c[dst] = (out.c[dst] + lam.c[(size_t)ub * d + t]) % mod;
    }
  }
  return out;
}

CongruenceReport prop6_check(const MWContext& C,
                             const PseudomeasureTable& table, int precision) {
  const Group& Q = *C.T.Q.group;
  std::vector<int> all(Q.order());
  std::iota(all.begin(), all.end(), 0);
  SubLatticeInfo L = sublattice_with_mu(Q, all);
  std::vector<Subgroup> inter = intermediate_subgroups(*C.G, C.A);
  GRElt sum = gr_zero(C.XA);
  u64 mod = C.R->mod();
  for (size_t k = 0; k < inter.size(); ++k) {
    const Subgroup& U = inter[k];
    auto it = table.by_intermediate_index.find((int)k);
    if (it == table.by_intermediate_index.end())
      throw ConfigError("prop6: missing table entry for U" +
                        std::to_string(k));
    std::vector<int> V = v_elems_of(C, U);
    long muv = 0;
    for (size_t i = 0; i < L.subs.size(); ++i)
      if (L.subs[i] == V) muv = L.mu[i];
    if (muv == 0) continue;
    UabContext J = uab_context(C, U);
    if ((int)it->second.c.size() != J.XUab.size())
      throw ConfigError("prop6: entry U" + std::to_string(k) +
                        " has wrong length");
    GRElt term = ver_uab_to_A(C, U, J, it->second);
    u64 cmu = muv >= 0 ? (u64)muv % mod : (mod - (u64)(-muv) % mod) % mod;
    sum = gr_add(C.XA, sum, gr_scale(C.XA, C.R->from_int(cmu), term));
  }
  CongruenceReport rep;
  rep.residue = sum;
  rep.pass = trace_membership(C.XA, C.act, all, sum, precision);
  if (!rep.pass) rep.detail = "prop6: weighted transfer sum not in tr_Q";
  return rep;
}

}  // namespace gring
