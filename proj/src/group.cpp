#include "gringcheck/group.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <set>

namespace gring {

Group Group::from_table(std::string id, std::vector<int> mul, int order,
                        std::vector<std::string> labels) {
  Group G;
  G.id_ = std::move(id);
  G.n_ = order;
  G.mul_ = std::move(mul);
  if ((int)G.mul_.size() != order * order)
    throw std::invalid_argument("group table size mismatch");
  // identity at index 0
  for (int a = 0; a < order; ++a)
    if (G.mul(0, a) != a || G.mul(a, 0) != a)
      throw std::invalid_argument("index 0 is not an identity");
  // associativity (catalog groups are small; the scan is cheap enough)
  if (order <= 128) {
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b)
        for (int c = 0; c < order; ++c)
          if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)))
            throw std::invalid_argument("non-associative table");
  }
  G.inv_.assign(order, -1);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      if (G.mul(a, b) == 0) G.inv_[a] = b;
  for (int a = 0; a < order; ++a)
    if (G.inv_[a] < 0) throw std::invalid_argument("missing inverse");

  G.order_.assign(order, 0);
  G.exponent_ = 1;
  for (int a = 0; a < order; ++a) {
    int k = 1, x = a;
    while (x != 0) x = G.mul(x, a), ++k;
    G.order_[a] = k;
    G.exponent_ = (int)std::lcm((long)G.exponent_, (long)k);
  }
  G.abelian_ = true;
  for (int a = 0; a < order && G.abelian_; ++a)
    for (int b = a + 1; b < order; ++b)
      if (G.mul(a, b) != G.mul(b, a)) {
        G.abelian_ = false;
        break;
      }

  // conjugacy classes
  G.class_of_.assign(order, -1);
  for (int a = 0; a < order; ++a) {
    if (G.class_of_[a] >= 0) continue;
    int c = (int)G.classes_.size();
    std::vector<int> cls;
    for (int g = 0; g < order; ++g) {
      int x = G.conj(a, g);
      if (G.class_of_[x] < 0) {
        G.class_of_[x] = c;
        cls.push_back(x);
      }
    }
    std::sort(cls.begin(), cls.end());
    G.classes_.push_back(std::move(cls));
  }
  // canonicalize class order by minimal element
  std::vector<int> perm(G.classes_.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int x, int y) {
    return G.classes_[x][0] < G.classes_[y][0];
  });
  std::vector<std::vector<int>> cl2;
  for (int i : perm) cl2.push_back(G.classes_[i]);
  G.classes_ = std::move(cl2);
  for (int c = 0; c < (int)G.classes_.size(); ++c)
    for (int x : G.classes_[c]) G.class_of_[x] = c;

  if (labels.empty()) {
    labels.resize(order);
    for (int i = 0; i < order; ++i) labels[i] = "g" + std::to_string(i);
  }
  G.labels_ = std::move(labels);
  G.gamma_ = {0};
  G.z_ = {};
  G.abelA_ = {};
  return G;
}

int Group::pow(int g, long e) const {
  int o = order_[g];
  long r = e % o;
  if (r < 0) r += o;
  int x = 0;
  for (long i = 0; i < r; ++i) x = mul(x, g);
  return x;
}

std::vector<int> Group::center() const {
  std::vector<int> z;
  for (int a = 0; a < n_; ++a) {
    bool c = true;
    for (int b = 0; b < n_ && c; ++b)
      if (mul(a, b) != mul(b, a)) c = false;
    if (c) z.push_back(a);
  }
  return z;
}

void Group::set_parts(std::vector<int> gamma, std::vector<int> z,
                      std::vector<int> abelA) {
  auto chk = [&](std::vector<int>& v, const char* what) {
    std::sort(v.begin(), v.end());
    if (!v.empty() && !is_subgroup(*this, v))
      throw std::invalid_argument(std::string(what) + ": not a subgroup");
  };
  chk(gamma, "gamma_part");
  chk(z, "z_part");
  chk(abelA, "abelian_normal");
  auto central = [&](const std::vector<int>& v) {
    for (int a : v)
      for (int b = 0; b < n_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  };
  if (!gamma.empty() && !central(gamma))
    throw std::invalid_argument("gamma_part not central");
  if (!z.empty() && !central(z))
    throw std::invalid_argument("z_part not central");
  gamma_ = gamma.empty() ? std::vector<int>{0} : gamma;
  z_ = std::move(z);
  abelA_ = std::move(abelA);
  if (gamma_.size() <= 1) {
    gamma_comp_.resize(n_);
    for (int i = 0; i < n_; ++i) gamma_comp_[i] = i;
  } else {
    gamma_comp_.clear();
  }
}

void Group::set_gamma_complement(std::vector<int> comp) {
  std::sort(comp.begin(), comp.end());
  if (!is_subgroup(*this, comp))
    throw std::invalid_argument("gamma_complement: not a subgroup");
  if ((long)comp.size() * (long)gamma_.size() != (long)n_)
    throw std::invalid_argument("gamma_complement: order mismatch");
  gamma_comp_ = std::move(comp);
}

const std::vector<int>& Group::gamma_complement() const {
  if (gamma_comp_.empty())
    throw std::logic_error("gamma_complement not set for nontrivial gamma");
  return gamma_comp_;
}

bool Subgroup::contains(int g) const {
  return std::binary_search(elems.begin(), elems.end(), g);
}
bool Subgroup::contains_all(const std::vector<int>& gs) const {
  for (int g : gs)
    if (!contains(g)) return false;
  return true;
}

Subgroup closure(const Group& G, std::vector<int> gens) {
  std::vector<char> in(G.order(), 0);
  std::vector<int> stack{0};
  in[0] = 1;
  for (int g : gens)
    if (!in[g]) in[g] = 1, stack.push_back(g);
  std::vector<int> todo = stack;
  while (!todo.empty()) {
    int x = todo.back();
    todo.pop_back();
    for (size_t i = 0; i < stack.size(); ++i) {
      int p = G.mul(x, stack[i]);
      if (!in[p]) {
        in[p] = 1;
        stack.push_back(p);
        todo.push_back(p);
      }
      p = G.mul(stack[i], x);
      if (!in[p]) {
        in[p] = 1;
        stack.push_back(p);
        todo.push_back(p);
      }
    }
  }
  Subgroup U;
  U.parent = &G;
  for (int i = 0; i < G.order(); ++i)
    if (in[i]) U.elems.push_back(i);
  return U;
}

Subgroup whole_group(const Group& G) {
  Subgroup U;
  U.parent = &G;
  U.elems.resize(G.order());
  std::iota(U.elems.begin(), U.elems.end(), 0);
  return U;
}

Subgroup trivial_subgroup(const Group& G) {
  Subgroup U;
  U.parent = &G;
  U.elems = {0};
  return U;
}

bool is_subgroup(const Group& G, const std::vector<int>& elems) {
  if (elems.empty() || elems[0] != 0) return false;
  std::vector<char> in(G.order(), 0);
  for (int e : elems) in[e] = 1;
  for (int a : elems) {
    if (!in[G.inv(a)]) return false;
    for (int b : elems)
      if (!in[G.mul(a, b)]) return false;
  }
  return true;
}

bool is_normal(const Group& G, const Subgroup& U) {
  for (int g = 0; g < G.order(); ++g)
    for (int a : U.elems)
      if (!U.contains(G.conj(a, g))) return false;
  return true;
}

bool is_abelian_sub(const Group& G, const Subgroup& U) {
  for (int a : U.elems)
    for (int b : U.elems)
      if (G.mul(a, b) != G.mul(b, a)) return false;
  return true;
}

Subgroup conjugate_subgroup(const Group& G, const Subgroup& U, int g) {
  Subgroup V;
  V.parent = &G;
  V.elems.reserve(U.elems.size());
  for (int a : U.elems) V.elems.push_back(G.conj(a, g));
  std::sort(V.elems.begin(), V.elems.end());
  return V;
}

Subgroup normalizer(const Group& G, const Subgroup& U) {
  Subgroup N;
  N.parent = &G;
  for (int g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (int a : U.elems)
      if (!U.contains(G.conj(a, g))) {
        ok = false;
        break;
      }
    if (ok) N.elems.push_back(g);
  }
  return N;
}

Subgroup intersect(const Subgroup& U, const Subgroup& V) {
  Subgroup W;
  W.parent = U.parent;
  std::set_intersection(U.elems.begin(), U.elems.end(), V.elems.begin(),
                        V.elems.end(), std::back_inserter(W.elems));
  return W;
}

Subgroup commutator_subgroup(const Group& G, const Subgroup& U) {
  std::vector<int> gens;
  for (int a : U.elems)
    for (int b : U.elems) {
      int c = G.mul(G.mul(G.inv(a), G.inv(b)), G.mul(a, b));
      if (c != 0) gens.push_back(c);
    }
  return closure(G, gens);
}

MaterializedGroup materialize(const Group& G, const Subgroup& U) {
  MaterializedGroup M;
  M.to_parent = U.elems;
  for (int i = 0; i < (int)U.elems.size(); ++i) M.from_parent[U.elems[i]] = i;
  int n = (int)U.elems.size();
  std::vector<int> mul((size_t)n * n);
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) {
    labels[i] = G.label(U.elems[i]);
    for (int j = 0; j < n; ++j)
      mul[(size_t)i * n + j] = M.from_parent.at(G.mul(U.elems[i], U.elems[j]));
  }
  std::string id = G.id() + "|sub" + std::to_string(n);
  M.group = std::make_shared<Group>(
      Group::from_table(id, std::move(mul), n, std::move(labels)));
  std::vector<int> gam, zz;
  for (int g : G.gamma_part())
    if (U.contains(g)) gam.push_back(M.from_parent.at(g));
  // z-part of the subgroup: its prime-to-l part U ∩ <z>
  for (int g : G.z_part())
    if (U.contains(g)) zz.push_back(M.from_parent.at(g));
  if (zz.size() <= 1) zz.clear();
  M.group->set_parts(gam, zz, {});
  return M;
}

QuotientGroup quotient(const Group& G, const Subgroup& N,
                       const std::string& suffix) {
  if (!is_normal(G, N)) throw std::invalid_argument("quotient: N not normal");
  QuotientGroup Q;
  Q.proj.assign(G.order(), -1);
  // cosets gN keyed by minimal element
  std::vector<int> min_of;
  for (int g = 0; g < G.order(); ++g) {
    if (Q.proj[g] >= 0) continue;
    int mn = G.order();
    std::vector<int> coset;
    for (int n : N.elems) {
      int x = G.mul(g, n);
      coset.push_back(x);
      mn = std::min(mn, x);
    }
    int idx = (int)min_of.size();
    min_of.push_back(mn);
    for (int x : coset) Q.proj[x] = idx;
  }
  // reorder cosets by minimal element (identity coset has min 0 -> index 0)
  int q = (int)min_of.size();
  std::vector<int> perm(q);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(),
            [&](int a, int b) { return min_of[a] < min_of[b]; });
  std::vector<int> newidx(q);
  for (int i = 0; i < q; ++i) newidx[perm[i]] = i;
  for (int g = 0; g < G.order(); ++g) Q.proj[g] = newidx[Q.proj[g]];
  Q.to_rep.assign(q, G.order());
  for (int g = 0; g < G.order(); ++g)
    Q.to_rep[Q.proj[g]] = std::min(Q.to_rep[Q.proj[g]], g);
  std::vector<int> mul((size_t)q * q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      mul[(size_t)i * q + j] = Q.proj[G.mul(Q.to_rep[i], Q.to_rep[j])];
  Q.group = std::make_shared<Group>(Group::from_table(
      G.id() + "/N" + std::to_string(N.order()) + suffix, std::move(mul), q));
  std::vector<int> gam;
  for (int g : G.gamma_part()) gam.push_back(Q.proj[g]);
  std::sort(gam.begin(), gam.end());
  gam.erase(std::unique(gam.begin(), gam.end()), gam.end());
  std::vector<int> zz;
  for (int g : G.z_part()) zz.push_back(Q.proj[g]);
  std::sort(zz.begin(), zz.end());
  zz.erase(std::unique(zz.begin(), zz.end()), zz.end());
  if (zz.size() <= 1) zz.clear();
  // gamma image may fail to be a direct factor in odd quotients; keep it only
  // if it is still central (it is, as an image of a central subgroup).
  Q.group->set_parts(gam, zz, {});
  return Q;
}

int lattice_size_bound(const Group& G) { return 243 * std::max(1, G.z_order()); }

Lattice subgroup_lattice(const Group& G) {
  if (G.order() > lattice_size_bound(G))
    throw SizeBoundError("subgroup_lattice: |" + G.id() + "| = " +
                         std::to_string(G.order()) + " exceeds bound " +
                         std::to_string(lattice_size_bound(G)));
  // cyclic extension: nilpotent catalog groups; extend by prime-order
  // elements of the normalizer.
  std::set<std::vector<int>> seen;
  std::vector<Subgroup> subs;
  Subgroup triv = trivial_subgroup(G);
  seen.insert(triv.elems);
  subs.push_back(triv);
  for (size_t head = 0; head < subs.size(); ++head) {
    Subgroup H = subs[head];  // copy: subs grows
    Subgroup N = normalizer(G, H);
    for (int g : N.elems) {
      if (H.contains(g)) continue;
      // g of prime order modulo H
      int p = 2;
      bool primepow = false;
      for (int q : {2, 3, 5, 7}) {
        if (H.contains(G.pow(g, q))) {
          p = q;
          primepow = true;
          break;
        }
      }
      if (!primepow) continue;
      (void)p;
      std::vector<int> gens = H.elems;
      gens.push_back(g);
      Subgroup E = closure(G, gens);
      if (seen.insert(E.elems).second) subs.push_back(E);
    }
  }
  std::sort(subs.begin(), subs.end());
  Lattice L;
  L.G = &G;
  L.subs = std::move(subs);
  int k = (int)L.subs.size();
  L.leq.assign(k, std::vector<char>(k, 0));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      L.leq[i][j] = (char)std::includes(
          L.subs[j].elems.begin(), L.subs[j].elems.end(),
          L.subs[i].elems.begin(), L.subs[i].elems.end());
  L.normalizer_idx.resize(k);
  for (int i = 0; i < k; ++i)
    L.normalizer_idx[i] = L.index_of(normalizer(G, L.subs[i]));
  return L;
}

int Lattice::index_of(const Subgroup& U) const {
  auto it = std::lower_bound(subs.begin(), subs.end(), U);
  if (it == subs.end() || !(*it == U))
    throw std::invalid_argument("lattice: subgroup not found");
  return (int)(it - subs.begin());
}

std::vector<int> Lattice::below(int i) const {
  std::vector<int> r;
  for (int j = 0; j < (int)subs.size(); ++j)
    if (j != i && leq[j][i]) r.push_back(j);
  return r;
}

MoebiusTable moebius_table(const Lattice& lat) {
  MoebiusTable T;
  T.lat = &lat;
  int k = (int)lat.subs.size();
  T.values.assign(k, 0);
  // subs sorted by (order, elems): strictly smaller subgroups come earlier
  for (int i = 0; i < k; ++i) {
    if (lat.subs[i].order() == 1) {
      T.values[i] = 1;
      continue;
    }
    long s = 0;
    for (int j = 0; j < i; ++j)
      if (lat.leq[j][i]) s += T.values[j];
    T.values[i] = -s;
  }
  return T;
}

std::vector<long> moebius_of_group(const Group& Q, Lattice& lat_out) {
  lat_out = subgroup_lattice(Q);
  return moebius_table(lat_out).values;
}

std::vector<Subgroup> intermediate_subgroups(const Group& G,
                                             const Subgroup& A) {
  QuotientGroup Q = quotient(G, A);
  Lattice LQ = subgroup_lattice(*Q.group);
  std::vector<Subgroup> out;
  for (const Subgroup& S : LQ.subs) {
    Subgroup U;
    U.parent = &G;
    for (int g = 0; g < G.order(); ++g)
      if (S.contains(Q.proj[g])) U.elems.push_back(g);
    out.push_back(std::move(U));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subgroup> index_l_over(const Group& G, const Subgroup& W,
                                   const Subgroup& V, int l) {
  // index-l subgroups M with V <= M < W. All contain K = <V, [W,W], W^l,
  // z-part>; enumerate hyperplanes of the elementary abelian W/K.
  std::vector<int> gens = V.elems;
  for (int a : W.elems) {
    gens.push_back(G.pow(a, l));
    for (int b : W.elems)
      gens.push_back(G.mul(G.mul(G.inv(a), G.inv(b)), G.mul(a, b)));
  }
  for (int zg : G.z_part()) gens.push_back(zg);
  // restrict to W (commutators/powers of W-elements stay in W; z-part must)
  Subgroup K = closure(G, gens);
  K = intersect(K, W);  // z-part is inside W for the callers we allow
  if (!std::includes(W.elems.begin(), W.elems.end(), K.elems.begin(),
                     K.elems.end()))
    throw std::invalid_argument("index_l_over: K not inside W");
  MaterializedGroup MW = materialize(G, W);
  Subgroup Kin;
  Kin.parent = MW.group.get();
  for (int e : K.elems) Kin.elems.push_back(MW.from_parent.at(e));
  std::sort(Kin.elems.begin(), Kin.elems.end());
  QuotientGroup E = quotient(*MW.group, Kin);
  int q = E.group->order();
  if (q == 1) return {};
  // E is elementary abelian of rank r; enumerate index-l subgroups as kernels
  // of nonzero functionals. Decompose E into a basis first.
  std::vector<int> basis;
  {
    Subgroup span = trivial_subgroup(*E.group);
    for (int g = 1; g < q; ++g) {
      if (span.contains(g)) continue;
      basis.push_back(g);
      std::vector<int> bg = span.elems;
      bg.push_back(g);
      span = closure(*E.group, bg);
      if (span.order() == q) break;
    }
  }
  int r = (int)basis.size();
  std::vector<int> coord(q);  // E-element -> digits base l over the basis
  {
    // enumerate all l^r combinations
    std::vector<int> digits(r, 0);
    for (long c = 0; c < (long)q; ++c) {
      int x = 0;
      long cc = c;
      for (int i = 0; i < r; ++i) {
        int d = (int)(cc % l);
        cc /= l;
        for (int t = 0; t < d; ++t) x = E.group->mul(x, basis[i]);
      }
      coord[x] = (int)c;
    }
  }
  std::vector<Subgroup> out;
  // functionals up to scalar: first nonzero coefficient = 1
  std::vector<int> f(r, 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == r) {
      bool allz = std::all_of(f.begin(), f.end(), [](int x) { return !x; });
      if (allz) return;
      Subgroup M;
      M.parent = &G;
      for (int g : W.elems) {
        int e = E.proj[MW.from_parent.at(g)];
        long c = coord[e];
        int s = 0;
        for (int i = 0; i < r; ++i) {
          s += f[i] * (int)(c % l);
          c /= l;
        }
        if (s % l == 0) M.elems.push_back(g);
      }
      std::sort(M.elems.begin(), M.elems.end());
      out.push_back(std::move(M));
      return;
    }
    bool leading = std::all_of(f.begin(), f.begin() + pos,
                               [](int x) { return x == 0; });
    for (int v = 0; v < (leading ? 2 : l); ++v) {
      f[pos] = v;
      rec(pos + 1);
    }
    f[pos] = 0;
  };
  rec(0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Subgroup> low_index_subgroups(const Group& G, int l,
                                          int max_power) {
  std::vector<Subgroup> out{whole_group(G)};
  std::set<std::vector<int>> seen{out[0].elems};
  Subgroup z;
  z.parent = &G;
  z.elems = G.z_part().empty() ? std::vector<int>{0} : G.z_part();
  std::vector<Subgroup> frontier = out;
  for (int step = 0; step < max_power; ++step) {
    std::vector<Subgroup> next;
    for (const Subgroup& W : frontier)
      for (Subgroup& M : index_l_over(G, W, z, l))
        if (seen.insert(M.elems).second) {
          next.push_back(M);
          out.push_back(M);
        }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Transversal make_transversal(const Group& G, const Subgroup& A,
                             RepPolicy policy) {
  if (!is_normal(G, A))
    throw std::invalid_argument("transversal: A not normal");
  Transversal T;
  T.G = &G;
  T.A = A;
  T.Q = quotient(G, A);
  int q = T.Q.group->order();
  T.rep.assign(q, policy == RepPolicy::MinRep ? G.order() : -1);
  for (int g = 0; g < G.order(); ++g) {
    int& r = T.rep[T.Q.proj[g]];
    if (policy == RepPolicy::MinRep)
      r = std::min(r, g);
    else
      r = std::max(r, g);
  }
  // identity coset must be represented by the identity
  T.rep[0] = 0;
  T.cocyc.assign(q, std::vector<int>(q));
  for (int q1 = 0; q1 < q; ++q1)
    for (int q2 = 0; q2 < q; ++q2) {
      int lhs = G.mul(T.rep[q1], T.rep[q2]);
      int r12 = T.rep[T.Q.group->mul(q1, q2)];
      int a = G.mul(G.inv(r12), lhs);
      if (!A.contains(a))
        throw std::logic_error("cocycle value escaped A");
      T.cocyc[q1][q2] = a;
    }
  return T;
}

std::vector<int> transfer_map(const Group& G, const Subgroup& U,
                              const Subgroup& A, RepPolicy policy) {
  if (!is_abelian_sub(G, A))
    throw std::invalid_argument("transfer: A not abelian");
  if (!std::includes(U.elems.begin(), U.elems.end(), A.elems.begin(),
                     A.elems.end()))
    throw std::invalid_argument("transfer: A not inside U");
  // left cosets tA of A in U; representative per policy
  std::map<int, int> coset_rep;  // min element of coset -> rep
  std::vector<int> rep_of(G.order(), -1);
  std::vector<int> reps;
  {
    std::vector<char> done(G.order(), 0);
    for (int t : U.elems) {
      if (done[t]) continue;
      int best = policy == RepPolicy::MinRep ? G.order() : -1;
      std::vector<int> coset;
      for (int a : A.elems) {
        int x = G.mul(t, a);
        coset.push_back(x);
        done[x] = 1;
        if (policy == RepPolicy::MinRep)
          best = std::min(best, x);
        else
          best = std::max(best, x);
      }
      for (int x : coset) rep_of[x] = best;
      reps.push_back(best);
    }
  }
  std::vector<int> ver(G.order(), -1);
  for (int u : U.elems) {
    int acc = 0;
    for (int t : reps) {
      int ut = G.mul(u, t);
      int tj = rep_of[ut];
      int a = G.mul(G.inv(tj), ut);
      acc = G.mul(acc, a);
    }
    if (!A.contains(acc)) throw std::logic_error("transfer value escaped A");
    ver[u] = acc;
  }
  return ver;
}

// ---------- catalog ----------

namespace {

Group cyclic_group(const std::string& id, int n) {
  std::vector<int> mul((size_t)n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mul[(size_t)i * n + j] = (i + j) % n;
  return Group::from_table(id, std::move(mul), n);
}

// upper unitriangular 3x3 over F_3: (a,b,c) * (a',b',c') =
// (a+a', b+b', c+c'+a*b'); exponent 3, extraspecial of order 27.
Group heis27() {
  auto idx = [](int a, int b, int c) { return (a * 3 + b) * 3 + c; };
  int n = 27;
  std::vector<int> mul((size_t)n * n);
  std::vector<std::string> lab(n);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        lab[idx(a, b, c)] =
            "x" + std::to_string(a) + "y" + std::to_string(b) + "z" +
            std::to_string(c);
        for (int a2 = 0; a2 < 3; ++a2)
          for (int b2 = 0; b2 < 3; ++b2)
            for (int c2 = 0; c2 < 3; ++c2)
              mul[(size_t)idx(a, b, c) * n + idx(a2, b2, c2)] =
                  idx((a + a2) % 3, (b + b2) % 3, (c + c2 + a * b2) % 3);
      }
  return Group::from_table("Heis_27", std::move(mul), n, std::move(lab));
}

// modular group of order 27: x^9 = y^3 = 1, y^-1 x y = x^4.
Group mod27() {
  auto idx = [](int i, int j) { return i * 3 + j; };  // x^i y^j
  int n = 27;
  std::vector<int> mul((size_t)n * n);
  std::vector<std::string> lab(n);
  int pw[3] = {1, 4, 7};  // 4^j mod 9
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 3; ++j) {
      lab[idx(i, j)] = "x" + std::to_string(i) + "y" + std::to_string(j);
      for (int i2 = 0; i2 < 9; ++i2)
        for (int j2 = 0; j2 < 3; ++j2)
          mul[(size_t)idx(i, j) * n + idx(i2, j2)] =
              idx((i + i2 * pw[j]) % 9, (j + j2) % 3);
    }
  return Group::from_table("Mod_27", std::move(mul), n, std::move(lab));
}

// C3 wr C3 = (Z/3)^3 : C3 (cyclic shift); order 81, abelian normal base of
// index 3, exponent 9.
Group wreath_c3() {
  auto idx = [](int f0, int f1, int f2, int t) {
    return ((f0 * 3 + f1) * 3 + f2) * 3 + t;
  };
  int n = 81;
  std::vector<int> mul((size_t)n * n);
  std::vector<std::string> lab(n);
  for (int f0 = 0; f0 < 3; ++f0)
    for (int f1 = 0; f1 < 3; ++f1)
      for (int f2 = 0; f2 < 3; ++f2)
        for (int t = 0; t < 3; ++t) {
          int f[3] = {f0, f1, f2};
          lab[idx(f0, f1, f2, t)] = "b" + std::to_string(f0) +
                                    std::to_string(f1) + std::to_string(f2) +
                                    "t" + std::to_string(t);
          for (int g0 = 0; g0 < 3; ++g0)
            for (int g1 = 0; g1 < 3; ++g1)
              for (int g2 = 0; g2 < 3; ++g2)
                for (int s = 0; s < 3; ++s) {
                  // (f,t)(g,s) = (f + t.g, t+s), (t.g)(i) = g(i - t)
                  int g[3] = {g0, g1, g2};
                  int h[3];
                  for (int i = 0; i < 3; ++i)
                    h[i] = (f[i] + g[((i - t) % 3 + 3) % 3]) % 3;
                  mul[(size_t)idx(f0, f1, f2, t) * n + idx(g0, g1, g2, s)] =
                      idx(h[0], h[1], h[2], (t + s) % 3);
                }
        }
  return Group::from_table("G_81_idx3ab", std::move(mul), n, std::move(lab));
}

Group direct_product(const std::string& id, const Group& A, const Group& B) {
  int n = A.order() * B.order();
  auto idx = [&](int a, int b) { return a * B.order() + b; };
  std::vector<int> mul((size_t)n * n);
  std::vector<std::string> lab(n);
  for (int a = 0; a < A.order(); ++a)
    for (int b = 0; b < B.order(); ++b) {
      lab[idx(a, b)] = A.label(a) + "." + B.label(b);
      for (int a2 = 0; a2 < A.order(); ++a2)
        for (int b2 = 0; b2 < B.order(); ++b2)
          mul[(size_t)idx(a, b) * n + idx(a2, b2)] =
              idx(A.mul(a, a2), B.mul(b, b2));
    }
  return Group::from_table(id, std::move(mul), n, std::move(lab));
}

std::vector<int> first_factor(const Group& A, const Group& B) {
  std::vector<int> v;
  for (int a = 0; a < A.order(); ++a) v.push_back(a * B.order());
  return v;
}

// designated abelian normal subgroup choices (deterministic)
std::vector<int> heis_maximal_abelian(const Group& H) {
  // smallest order-9 abelian subgroup containing the center
  std::vector<int> best;
  for (int g = 1; g < H.order(); ++g) {
    for (int h = g + 1; h < H.order(); ++h) {
      Subgroup S = closure(H, {g, h});
      if (S.order() == 9 && is_abelian_sub(H, S) && is_normal(H, S)) {
        if (best.empty() || S.elems < best) best = S.elems;
      }
    }
  }
  return best;
}

}  // namespace

std::vector<CatalogEntry> catalog_entries() {
  return {
      {"C_3", 3, 1, 0, "cyclic"},
      {"C_9", 9, 1, 0, "cyclic"},
      {"C_27", 27, 1, 0, "cyclic"},
      {"C3xC3", 9, 1, 0, "elementary abelian rank 2"},
      {"Heis_27", 27, 1, 0, "extraspecial 3^3, exponent 3"},
      {"Mod_27", 27, 1, 0, "modular 3^3, exponent 9"},
      {"G_81_idx3ab", 81, 1, 0, "C3 wr C3, abelian normal base of index 3"},
      {"Gamma3_x_Heis27", 729, 1, 3, "C27 (gamma part) x Heis_27"},
      {"C2_x_Heis27", 54, 2, 0, "z-part C2 times Heis_27"},
      {"C4_x_Heis27", 108, 4, 0, "z-part C4 times Heis_27"},
  };
}

Group build_group(const std::string& id, const LevelParams& params) {
  if (params.l != 3)
    throw ConfigError("catalog groups are built for l = 3");
  if (id == "C_3" || id == "C_9" || id == "C_27") {
    int n = id == "C_3" ? 3 : id == "C_9" ? 9 : 27;
    Group G = cyclic_group(id, n);
    G.set_parts({0}, {}, whole_group(G).elems);
    return G;
  }
  if (id == "C3xC3") {
    Group C3 = cyclic_group("C_3", 3);
    Group G = direct_product(id, C3, C3);
    G.set_parts({0}, {}, whole_group(G).elems);
    return G;
  }
  if (id == "Heis_27") {
    Group G = heis27();
    G.set_parts({0}, {}, heis_maximal_abelian(G));
    return G;
  }
  if (id == "Mod_27") {
    Group G = mod27();
    // A = <x> of order 9: indices x^i y^0 = 3*i
    std::vector<int> A;
    for (int i = 0; i < 9; ++i) A.push_back(i * 3);
    std::sort(A.begin(), A.end());
    G.set_parts({0}, {}, A);
    return G;
  }
  if (id == "G_81_idx3ab") {
    Group G = wreath_c3();
    std::vector<int> A;  // base subgroup: t = 0
    for (int f = 0; f < 27; ++f) A.push_back(f * 3);
    std::sort(A.begin(), A.end());
    G.set_parts({0}, {}, A);
    return G;
  }
  if (id == "Gamma3_x_Heis27") {
    Group C27 = cyclic_group("C_27", 27);
    Group H = heis27();
    Group G = direct_product(id, C27, H);
    std::vector<int> gamma = first_factor(C27, H);
    std::vector<int> M = heis_maximal_abelian(H);
    std::vector<int> A;
    for (int g : gamma)
      for (int h : M) A.push_back(g + h);
    std::sort(A.begin(), A.end());
    G.set_parts(gamma, {}, A);
    std::vector<int> comp(27);
    for (int h = 0; h < 27; ++h) comp[h] = h;  // Heis factor indices
    G.set_gamma_complement(comp);
    return G;
  }
  if (id == "C2_x_Heis27" || id == "C4_x_Heis27") {
    int w = id[1] == '2' ? 2 : 4;
    if (std::gcd(w, params.l) != 1)
      throw ConfigError("z-part order shares a factor with l");
    Group Cw = cyclic_group("C_" + std::to_string(w), w);
    Group H = heis27();
    Group G = direct_product(id, Cw, H);
    std::vector<int> z = first_factor(Cw, H);
    std::vector<int> M = heis_maximal_abelian(H);
    std::vector<int> A;
    for (int zg : z)
      for (int h : M) A.push_back(zg + h);
    std::sort(A.begin(), A.end());
    G.set_parts({0}, z, A);
    return G;
  }
  throw ConfigError("unknown catalog id: " + id);
}

}  // namespace gring
