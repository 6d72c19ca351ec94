#include "gringcheck/characters.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace gring {

std::string character_table_json(const CharacterTable& T) {
  const Group& G = *T.G;
  std::ostringstream os;
  os << "{\n  \"group\": \"" << G.id() << "\",\n  \"conductor\": "
     << T.F->conductor() << ",\n  \"class_reps\": [";
  for (int c = 0; c < G.num_classes(); ++c)
    os << (c ? ", " : "") << G.class_rep(c);
  os << "],\n  \"class_sizes\": [";
  for (int c = 0; c < G.num_classes(); ++c)
    os << (c ? ", " : "") << T.class_size[c];
  os << "],\n  \"irreducibles\": [\n";
  for (size_t i = 0; i < T.irr.size(); ++i) {
    os << "    [";
    for (int c = 0; c < G.num_classes(); ++c) {
      os << (c ? ", " : "") << "[";
      const CycField::Elem& v = T.irr[i].v[c];
      for (int t = 0; t < T.F->degree(); ++t) {
        if (t) os << ", ";
        if (v[t].get_den() == 1)
          os << v[t].get_num().get_str();
        else
          os << '"' << v[t].get_str() << '"';
      }
      os << "]";
    }
    os << "]" << (i + 1 < T.irr.size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

long CharacterTable::degree(int i) const {
  const CycField::Elem& d = irr[i].v[0];  // class 0 = identity
  for (size_t k = 1; k < d.size(); ++k)
    if (d[k] != 0) throw std::logic_error("degree not rational");
  if (d[0].get_den() != 1) throw std::logic_error("degree not integral");
  return d[0].get_num().get_si();
}

// ---- abelian machinery ----

std::vector<std::pair<int, int>> abelian_basis(const Group& G) {
  if (!G.is_abelian())
    throw std::invalid_argument("abelian_basis: group not abelian");
  if (G.order() == 1) return {};
  int g = 1, best = 0;
  for (int x = 0; x < G.order(); ++x)
    if (G.elem_order(x) > best) {
      best = G.elem_order(x);
      g = x;
    }
  if (best == G.order()) return {{g, best}};
  Subgroup Cg = closure(G, {g});
  QuotientGroup Q = quotient(G, Cg, "b");
  std::vector<std::pair<int, int>> rec = abelian_basis(*Q.group);
  std::vector<std::pair<int, int>> out{{g, best}};
  for (auto& [qb, m] : rec) {
    int chosen = -1;
    for (int h = 0; h < G.order(); ++h)
      if (Q.proj[h] == qb && G.elem_order(h) == m) {
        chosen = h;
        break;
      }
    if (chosen < 0)
      throw std::logic_error("abelian_basis: lift of expected order missing");
    out.emplace_back(chosen, m);
  }
  // verify: tuples -> elements bijectively
  long prod = 1;
  for (auto& [gen, m] : out) prod *= m;
  if (prod != G.order())
    throw std::logic_error("abelian_basis: order product mismatch");
  std::vector<char> hit(G.order(), 0);
  std::vector<int> idx(out.size(), 0);
  for (long c = 0;; ++c) {
    int x = 0;
    for (size_t i = 0; i < out.size(); ++i)
      for (int t = 0; t < idx[i]; ++t) x = G.mul(x, out[i].first);
    if (hit[x]) throw std::logic_error("abelian_basis: not independent");
    hit[x] = 1;
    size_t pos = 0;
    while (pos < out.size() && idx[pos] + 1 == out[pos].second)
      idx[pos++] = 0;
    if (pos == out.size()) break;
    ++idx[pos];
  }
  return out;
}

namespace {

// exponent tuple of every element w.r.t. an abelian basis
std::vector<std::vector<int>> abelian_coords(
    const Group& G, const std::vector<std::pair<int, int>>& basis) {
  std::vector<std::vector<int>> coord(G.order());
  std::vector<int> idx(basis.size(), 0);
  for (;;) {
    int x = 0;
    for (size_t i = 0; i < basis.size(); ++i)
      for (int t = 0; t < idx[i]; ++t) x = G.mul(x, basis[i].first);
    coord[x] = idx;
    size_t pos = 0;
    while (pos < basis.size() && idx[pos] + 1 == basis[pos].second)
      idx[pos++] = 0;
    if (pos == basis.size()) break;
    ++idx[pos];
  }
  return coord;
}

CharacterTable abelian_table(const Group& G) {
  CharacterTable T;
  T.G = &G;
  auto basis = abelian_basis(G);
  int N = 1;
  for (auto& [g, m] : basis) N = (int)std::lcm((long)N, (long)m);
  T.F = std::make_shared<CycField>(std::max(1, N));
  auto coord = abelian_coords(G, basis);
  int r = (int)basis.size();
  std::vector<int> k(r, 0);
  for (;;) {
    ClassFunction chi;
    chi.F = T.F;
    chi.v.resize(G.num_classes());
    for (int c = 0; c < G.num_classes(); ++c) {
      int g = G.class_rep(c);
      long e = 0;
      for (int i = 0; i < r; ++i)
        e += (long)k[i] * coord[g][i] * (N / basis[i].second);
      chi.v[c] = T.F->zeta_pow(e);
    }
    T.irr.push_back(std::move(chi));
    int pos = 0;
    while (pos < r && k[pos] + 1 == basis[pos].second) k[pos++] = 0;
    if (pos == r) break;
    ++k[pos];
  }
  if (r == 0) {
    ClassFunction chi;
    chi.F = T.F;
    chi.v = {T.F->one()};
    T.irr = {chi};
  }
  for (int c = 0; c < G.num_classes(); ++c)
    T.class_size.push_back((long)G.class_elems(c).size());
  return T;
}

// ---- Dixon (exact lifting through a split prime) ----

struct Fp {
  u64 p;
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return mulmod(a, b, p); }
  u64 inv(u64 a) const { return powmod(a, p - 2, p); }
};

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 primitive_root(u64 p) {
  std::vector<u64> fac;
  u64 m = p - 1;
  for (u64 d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      fac.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) fac.push_back(m);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (u64 q : fac)
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root");
}

CharacterTable dixon_table(const Group& G) {
  int k = G.num_classes();
  int N = G.exponent();
  u64 p = (u64)std::max(2 * G.order() + 1, 2 * N + 1);
  while (!(is_prime_u64(p) && (p - 1) % (u64)N == 0)) ++p;
  Fp F{p};
  u64 theta = powmod(primitive_root(p), (p - 1) / (u64)N, p);
  // class data
  std::vector<long> csize(k);
  std::vector<int> cinv(k);
  for (int c = 0; c < k; ++c) {
    csize[c] = (long)G.class_elems(c).size();
    cinv[c] = G.class_of(G.inv(G.class_rep(c)));
  }
  // power map classes pm[e][j] = class of rep_j^e
  std::vector<std::vector<int>> pm(N, std::vector<int>(k));
  for (int j = 0; j < k; ++j) {
    int g = G.class_rep(j);
    int x = 0;
    for (int e = 0; e < N; ++e) {
      pm[e][j] = G.class_of(x);
      x = G.mul(x, g);
    }
  }
  // random class-matrix combination(s); split the class algebra into common
  // eigenlines over F_p
  Rng rng(derive_seed(0x5eed, G.id(), "dixon", (u64)G.order()));
  auto combo_matrix = [&](const std::vector<u64>& r) {
    std::vector<std::vector<u64>> M(k, std::vector<u64>(k, 0));
    // M[kk][j] = sum_{y in K_j} r_{cls(g_kk y^{-1})}
    for (int j = 0; j < k; ++j)
      for (int y : G.class_elems(j))
        for (int kk = 0; kk < k; ++kk) {
          int x = G.mul(G.class_rep(kk), G.inv(y));
          M[kk][j] = F.add(M[kk][j], r[G.class_of(x)]);
        }
    // acting on w with (A w)_j = sum_t A[j][t] w_t needs A[j][t] = a_{ijt};
    // combo above fills rows by target class; transpose to act correctly
    std::vector<std::vector<u64>> A(k, std::vector<u64>(k, 0));
    for (int j = 0; j < k; ++j)
      for (int t = 0; t < k; ++t) A[j][t] = M[t][j];
    return A;
  };
  std::vector<std::vector<std::vector<u64>>> spaces;  // basis column lists
  {
    std::vector<std::vector<u64>> full;
    for (int i = 0; i < k; ++i) {
      std::vector<u64> e(k, 0);
      e[i] = 1;
      full.push_back(e);
    }
    spaces.push_back(full);
  }
  auto mat_apply = [&](const std::vector<std::vector<u64>>& A,
                       const std::vector<u64>& v) {
    std::vector<u64> r(k, 0);
    for (int i = 0; i < k; ++i) {
      u64 s = 0;
      for (int j = 0; j < k; ++j) s = F.add(s, F.mul(A[i][j], v[j]));
      r[i] = s;
    }
    return r;
  };
  int rounds = 0;
  while (true) {
    bool all1 = true;
    for (auto& S : spaces) all1 &= S.size() == 1;
    if (all1) break;
    if (++rounds > 60) throw std::logic_error("dixon: splitting stalled");
    std::vector<u64> r(k);
    for (auto& x : r) x = rng.below(p);
    auto A = combo_matrix(r);
    std::vector<std::vector<std::vector<u64>>> next;
    for (auto& S : spaces) {
      int d = (int)S.size();
      if (d == 1) {
        next.push_back(S);
        continue;
      }
      // restriction matrix: A*b_i = sum_j S_{ij} b_j: solve via expressing
      // in the basis (S columns are vectors of length k)
      // set up matrix B (k x d) and solve B s = A b for each basis vector
      std::vector<std::vector<u64>> Smat(d, std::vector<u64>(d, 0));
      // gaussian solve with the fixed basis: bring B to row echelon once
      std::vector<std::vector<u64>> B(k, std::vector<u64>(d, 0));
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < k; ++i) B[i][j] = S[j][i];
      // precompute an elimination of B with pivots
      auto solve_in_basis = [&](const std::vector<u64>& rhs) {
        // solve sum_j s_j S[j] = rhs by gaussian elimination on [B | rhs]
        std::vector<std::vector<u64>> M2(k, std::vector<u64>(d + 1, 0));
        for (int i = 0; i < k; ++i) {
          for (int j = 0; j < d; ++j) M2[i][j] = B[i][j];
          M2[i][d] = rhs[i];
        }
        int row = 0;
        std::vector<int> pivcol;
        for (int col = 0; col < d && row < k; ++col) {
          int pr = -1;
          for (int i = row; i < k; ++i)
            if (M2[i][col]) {
              pr = i;
              break;
            }
          if (pr < 0) continue;
          std::swap(M2[pr], M2[row]);
          u64 iv = F.inv(M2[row][col]);
          for (int j = col; j <= d; ++j) M2[row][j] = F.mul(M2[row][j], iv);
          for (int i = 0; i < k; ++i) {
            if (i == row || !M2[i][col]) continue;
            u64 c = M2[i][col];
            for (int j = col; j <= d; ++j)
              M2[i][j] = F.sub(M2[i][j], F.mul(c, M2[row][j]));
          }
          pivcol.push_back(col);
          ++row;
        }
        std::vector<u64> s(d, 0);
        for (int i = 0; i < (int)pivcol.size(); ++i) s[pivcol[i]] = M2[i][d];
        return s;
      };
      for (int j = 0; j < d; ++j) {
        auto Ab = mat_apply(A, S[j]);
        auto s = solve_in_basis(Ab);
        for (int i = 0; i < d; ++i) Smat[i][j] = s[i];
      }
      // eigenvalues of Smat: charpoly by interpolation, roots by scan
      std::vector<u64> lambdas;
      {
        // charpoly values at d+1 points then interpolate: cheaper to scan
        // all p for det(S - x I) = 0 via evaluating the interpolated poly.
        std::vector<u64> xs, ys;
        for (int t = 0; t <= d; ++t) {
          u64 x = (u64)t;
          std::vector<std::vector<u64>> Mx(d, std::vector<u64>(d));
          for (int i = 0; i < d; ++i)
            for (int j2 = 0; j2 < d; ++j2)
              Mx[i][j2] = i == j2 ? F.sub(Smat[i][j2], x) : Smat[i][j2];
          // determinant mod p
          u64 det = 1;
          for (int col = 0, row = 0; col < d && row < d; ++col) {
            int pr = -1;
            for (int i = row; i < d; ++i)
              if (Mx[i][col]) {
                pr = i;
                break;
              }
            if (pr < 0) {
              det = 0;
              break;
            }
            if (pr != row) {
              std::swap(Mx[pr], Mx[row]);
              det = F.sub(0, det);
            }
            det = F.mul(det, Mx[row][col]);
            u64 iv = F.inv(Mx[row][col]);
            for (int i = row + 1; i < d; ++i) {
              if (!Mx[i][col]) continue;
              u64 c = F.mul(Mx[i][col], iv);
              for (int j2 = col; j2 < d; ++j2)
                Mx[i][j2] = F.sub(Mx[i][j2], F.mul(c, Mx[row][j2]));
            }
            ++row;
          }
          xs.push_back(x);
          ys.push_back(det);
        }
        // Lagrange interpolation to coefficients
        std::vector<u64> poly(d + 1, 0);
        for (int t = 0; t <= d; ++t) {
          std::vector<u64> term{1};
          u64 denom = 1;
          for (int s2 = 0; s2 <= d; ++s2) {
            if (s2 == t) continue;
            std::vector<u64> nt(term.size() + 1, 0);
            for (size_t i = 0; i < term.size(); ++i) {
              nt[i + 1] = F.add(nt[i + 1], term[i]);
              nt[i] = F.sub(nt[i], F.mul(term[i], xs[s2]));
            }
            term = nt;
            denom = F.mul(denom, F.sub(xs[t], xs[s2]));
          }
          u64 c = F.mul(ys[t], F.inv(denom));
          for (size_t i = 0; i < term.size(); ++i)
            poly[i] = F.add(poly[i], F.mul(c, term[i]));
        }
        for (u64 x = 0; x < p; ++x) {
          u64 val = 0;
          for (int i = d; i >= 0; --i) val = F.add(F.mul(val, x), poly[i]);
          if (val == 0) lambdas.push_back(x);
        }
      }
      // kernels per eigenvalue inside the subspace
      for (u64 lam : lambdas) {
        std::vector<std::vector<u64>> Mx(d, std::vector<u64>(d));
        for (int i = 0; i < d; ++i)
          for (int j2 = 0; j2 < d; ++j2)
            Mx[i][j2] = i == j2 ? F.sub(Smat[i][j2], lam) : Smat[i][j2];
        // kernel vectors s with Mx s = 0 (column convention)
        std::vector<int> pivc(d, -1);
        int row = 0;
        for (int col = 0; col < d && row < d; ++col) {
          int pr = -1;
          for (int i = row; i < d; ++i)
            if (Mx[i][col]) {
              pr = i;
              break;
            }
          if (pr < 0) continue;
          std::swap(Mx[pr], Mx[row]);
          u64 iv = F.inv(Mx[row][col]);
          for (int j2 = col; j2 < d; ++j2)
            Mx[row][j2] = F.mul(Mx[row][j2], iv);
          for (int i = 0; i < d; ++i) {
            if (i == row || !Mx[i][col]) continue;
            u64 c = Mx[i][col];
            for (int j2 = col; j2 < d; ++j2)
              Mx[i][j2] = F.sub(Mx[i][j2], F.mul(c, Mx[row][j2]));
          }
          pivc[row] = col;
          ++row;
        }
        std::vector<char> ispiv(d, 0);
        for (int i = 0; i < row; ++i) ispiv[pivc[i]] = 1;
        std::vector<std::vector<u64>> newbasis;
        for (int freec = 0; freec < d; ++freec) {
          if (ispiv[freec]) continue;
          std::vector<u64> s(d, 0);
          s[freec] = 1;
          for (int i = 0; i < row; ++i)
            s[pivc[i]] = F.sub(0, Mx[i][freec]);
          // map back to length-k vector
          std::vector<u64> vec(k, 0);
          for (int j2 = 0; j2 < d; ++j2) {
            if (!s[j2]) continue;
            for (int i = 0; i < k; ++i)
              vec[i] = F.add(vec[i], F.mul(s[j2], S[j2][i]));
          }
          newbasis.push_back(vec);
        }
        if (!newbasis.empty()) next.push_back(newbasis);
      }
    }
    spaces = std::move(next);
  }
  // normalize eigenvectors, recover degrees and values mod p
  int idc = G.class_of(0);
  std::vector<std::vector<u64>> chi_p;
  for (auto& S : spaces) {
    std::vector<u64> w = S[0];
    if (!w[idc]) throw std::logic_error("dixon: eigenvector vanishes at 1");
    u64 iv = F.inv(w[idc]);
    for (auto& x : w) x = F.mul(x, iv);
    u64 s = 0;
    for (int j = 0; j < k; ++j)
      s = F.add(s, F.mul(F.mul(w[j], w[cinv[j]]),
                         F.inv((u64)(csize[j] % (long)p))));
    u64 d2 = F.mul((u64)(G.order() % (long)p), F.inv(s));
    long deg = -1;
    for (long d0 = 1; (long)d0 * d0 <= G.order(); ++d0)
      if (F.mul((u64)d0, (u64)d0) == d2) {
        deg = d0;
        break;
      }
    if (deg < 0) throw std::logic_error("dixon: degree not recovered");
    std::vector<u64> chi(k);
    for (int j = 0; j < k; ++j)
      chi[j] = F.mul(F.mul(w[j], (u64)deg),
                     F.inv((u64)(csize[j] % (long)p)));
    chi_p.push_back(std::move(chi));
  }
  // lift to cyclotomic integers
  CharacterTable T;
  T.G = &G;
  T.F = std::make_shared<CycField>(N);
  for (auto& chi : chi_p) {
    ClassFunction cf;
    cf.F = T.F;
    cf.v.resize(k);
    for (int j = 0; j < k; ++j) {
      CycField::Elem val = T.F->zero();
      for (int t = 0; t < N; ++t) {
        u64 m = 0;
        for (int e = 0; e < N; ++e) {
          u64 th = powmod(theta, (u64)(((long)e * t) % N), p);
          m = F.add(m, F.mul(chi[pm[e][j]], F.inv(th)));
        }
        m = F.mul(m, F.inv((u64)N % p));
        if (m > (u64)G.order())
          throw std::logic_error("dixon: multiplicity out of range");
        if (m)
          val = T.F->add(val, T.F->scale(mpq_class((long)m),
                                         T.F->zeta_pow(t)));
      }
      cf.v[j] = val;
    }
    T.irr.push_back(std::move(cf));
  }
  for (int c = 0; c < k; ++c) T.class_size.push_back(csize[c]);
  // canonical order: by degree, then lexicographic on values
  std::vector<int> perm(T.irr.size());
  std::iota(perm.begin(), perm.end(), 0);
  auto key = [&](int i) {
    std::vector<std::pair<mpz_class, mpz_class>> flat;
    for (auto& v : T.irr[i].v)
      for (auto& q : v) flat.emplace_back(q.get_num(), q.get_den());
    return flat;
  };
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    long da = T.degree(a), db = T.degree(b);
    if (da != db) return da < db;
    return key(a) < key(b);
  });
  std::vector<ClassFunction> sorted;
  for (int i : perm) sorted.push_back(T.irr[i]);
  T.irr = std::move(sorted);
  return T;
}

// tensor table for G = F1 x F2 with F1 central (z-part or gamma-part)
CharacterTable tensor_table(const Group& G, const std::vector<int>& F1,
                            const std::vector<int>& F2) {
  Subgroup S1{&G, F1}, S2{&G, F2};
  MaterializedGroup M1 = materialize(G, S1);
  MaterializedGroup M2 = materialize(G, S2);
  CharacterTable T1 = character_table(*M1.group);
  CharacterTable T2 = character_table(*M2.group);
  CharacterTable T;
  T.G = &G;
  int N = G.exponent();
  T.F = std::make_shared<CycField>(N);
  // element decomposition g = f1 * f2
  std::vector<std::pair<int, int>> split(G.order(), {-1, -1});
  for (int a = 0; a < (int)F1.size(); ++a)
    for (int b = 0; b < (int)F2.size(); ++b) {
      int g = G.mul(F1[a], F2[b]);
      if (split[g].first >= 0)
        throw std::logic_error("tensor_table: not a direct product");
      split[g] = {a, b};
    }
  for (auto& s : split)
    if (s.first < 0) throw std::logic_error("tensor_table: not covering");
  for (size_t i1 = 0; i1 < T1.irr.size(); ++i1)
    for (size_t i2 = 0; i2 < T2.irr.size(); ++i2) {
      ClassFunction cf;
      cf.F = T.F;
      cf.v.resize(G.num_classes());
      for (int c = 0; c < G.num_classes(); ++c) {
        int g = G.class_rep(c);
        auto [a, b] = split[g];
        CycField::Elem v1 =
            T.F->embed_from(*T1.F, T1.irr[i1].v[M1.group->class_of(a)]);
        CycField::Elem v2 =
            T.F->embed_from(*T2.F, T2.irr[i2].v[M2.group->class_of(b)]);
        cf.v[c] = T.F->mul(v1, v2);
      }
      T.irr.push_back(std::move(cf));
    }
  for (int c = 0; c < G.num_classes(); ++c)
    T.class_size.push_back((long)G.class_elems(c).size());
  return T;
}

}  // namespace

CharacterTable character_table(const Group& G) {
  if (G.is_abelian()) return abelian_table(G);
  if (!G.z_part().empty()) {
    std::vector<int> F2;
    int l = 3;
    for (int g = 0; g < G.order(); ++g) {
      int o = G.elem_order(g);
      while (o % l == 0) o /= l;
      if (o == 1) F2.push_back(g);
    }
    return tensor_table(G, G.z_part(), F2);
  }
  if (G.gamma_part().size() > 1)
    return tensor_table(G, G.gamma_part(), G.gamma_complement());
  return dixon_table(G);
}

bool verify_orthogonality(const CharacterTable& T, std::string* why) {
  const Group& G = *T.G;
  int k = (int)T.irr.size();
  if (k != G.num_classes()) {
    if (why) *why = "irreducible count != class count";
    return false;
  }
  long sumsq = 0;
  for (int i = 0; i < k; ++i) sumsq += T.degree(i) * T.degree(i);
  if (sumsq != G.order()) {
    if (why) *why = "sum of squared degrees mismatch";
    return false;
  }
  // integer fast path: values are algebraic integers in Z[zeta_N]
  int deg = T.F->degree();
  std::vector<std::vector<i64>> vals((size_t)k * k),
      conj_vals((size_t)k * k);
  for (int i = 0; i < k; ++i)
    for (int c = 0; c < k; ++c) {
      const CycField::Elem& v = T.irr[i].v[c];
      std::vector<i64> iv(deg), cv(deg);
      CycField::Elem vc = T.F->conj(v);
      for (int t = 0; t < deg; ++t) {
        if (v[t].get_den() != 1 || vc[t].get_den() != 1) {
          if (why) *why = "non-integral character value";
          return false;
        }
        iv[t] = (i64)v[t].get_num().get_si();
        cv[t] = (i64)vc[t].get_num().get_si();
      }
      vals[(size_t)i * k + c] = std::move(iv);
      conj_vals[(size_t)i * k + c] = std::move(cv);
    }
  // reduction rows zeta^m in the power basis as i64 (zeta^N = 1 makes the
  // wrap-around exact)
  int dd = deg;
  std::vector<std::vector<i64>> xpow(2 * dd - 1, std::vector<i64>(dd, 0));
  for (int m = 0; m < 2 * dd - 1; ++m) {
    CycField::Elem e = T.F->zeta_pow(m);
    for (int t = 0; t < dd; ++t) {
      if (e[t].get_den() != 1) {
        if (why) *why = "non-integral reduction";
        return false;
      }
      xpow[m][t] = (i64)e[t].get_num().get_si();
    }
  }
  std::vector<i64> prod(2 * dd - 1);
  std::vector<i64> acc(dd);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      std::fill(acc.begin(), acc.end(), 0);
      for (int c = 0; c < k; ++c) {
        const auto& a = vals[(size_t)i * k + c];
        const auto& b = conj_vals[(size_t)j * k + c];
        std::fill(prod.begin(), prod.end(), 0);
        for (int s = 0; s < dd; ++s) {
          if (!a[s]) continue;
          for (int t = 0; t < dd; ++t)
            if (b[t]) prod[s + t] += a[s] * b[t];
        }
        long w = T.class_size[c];
        for (int m = 0; m < 2 * dd - 1; ++m) {
          if (!prod[m]) continue;
          i64 pw = prod[m] * (i64)w;
          if (m < dd)
            acc[m] += pw;
          else
            for (int t = 0; t < dd; ++t) acc[t] += pw * xpow[m][t];
        }
      }
      i64 expect = i == j ? (i64)G.order() : 0;
      if (acc[0] != expect) {
        if (why)
          *why = "row orthogonality failed at (" + std::to_string(i) + "," +
                 std::to_string(j) + ")";
        return false;
      }
      for (int t = 1; t < dd; ++t)
        if (acc[t] != 0) {
          if (why)
            *why = "row orthogonality failed at (" + std::to_string(i) + "," +
                   std::to_string(j) + ")";
          return false;
        }
    }
  return true;
}

ClassFunction adams(const Group& G, const ClassFunction& chi, int l, int r) {
  long e = 1;
  for (int i = 0; i < r; ++i) e *= l;
  ClassFunction out;
  out.F = chi.F;
  out.v.resize(G.num_classes());
  for (int c = 0; c < G.num_classes(); ++c)
    out.v[c] = chi.v[G.class_of(G.pow(G.class_rep(c), e))];
  return out;
}

ClassFunction restrict_cf(const Group& G, const CharacterTable& TG,
                          const MaterializedGroup& U,
                          const ClassFunction& chi) {
  (void)TG;
  ClassFunction out;
  out.F = chi.F;
  out.v.resize(U.group->num_classes());
  for (int c = 0; c < U.group->num_classes(); ++c)
    out.v[c] = chi.v[G.class_of(U.to_parent[U.group->class_rep(c)])];
  return out;
}

ClassFunction induce_cf(const Group& G, const CharacterTable& TG,
                        const MaterializedGroup& U,
                        const ClassFunction& chi) {
  ClassFunction out;
  out.F = TG.F;
  out.v.assign(G.num_classes(), TG.F->zero());
  // left coset reps (minimal elements)
  std::vector<int> reps;
  {
    std::vector<char> used(G.order(), 0);
    for (int x = 0; x < G.order(); ++x) {
      if (used[x]) continue;
      reps.push_back(x);
      for (int u : U.to_parent) used[G.mul(x, u)] = 1;
    }
  }
  for (int c = 0; c < G.num_classes(); ++c) {
    int g = G.class_rep(c);
    CycField::Elem s = TG.F->zero();
    for (int x : reps) {
      int t = G.mul(G.mul(G.inv(x), g), x);
      auto it = U.from_parent.find(t);
      if (it == U.from_parent.end()) continue;
      CycField::Elem v = chi.v[U.group->class_of(it->second)];
      s = TG.F->add(s, chi.F.get() == TG.F.get()
                           ? v
                           : TG.F->embed_from(*chi.F, v));
    }
    out.v[c] = s;
  }
  return out;
}

ClassFunction inflate_cf(const Group& G, const QuotientGroup& Q,
                         const ClassFunction& chi_q) {
  ClassFunction out;
  out.F = chi_q.F;
  out.v.resize(G.num_classes());
  for (int c = 0; c < G.num_classes(); ++c)
    out.v[c] = chi_q.v[Q.group->class_of(Q.proj[G.class_rep(c)])];
  return out;
}

ClassFunction deflate_cf(const Group& G, const QuotientGroup& Q,
                         const ClassFunction& chi) {
  ClassFunction out;
  out.F = chi.F;
  out.v.assign(Q.group->num_classes(), chi.F->zero());
  // average over fibers of the projection, one representative per Q-class
  long nsz = G.order() / Q.group->order();
  for (int qc = 0; qc < Q.group->num_classes(); ++qc) {
    int qg = Q.group->class_rep(qc);
    CycField::Elem s = chi.F->zero();
    for (int g = 0; g < G.order(); ++g)
      if (Q.proj[g] == qg) s = chi.F->add(s, chi.v[G.class_of(g)]);
    out.v[qc] = chi.F->scale(mpq_class(1, nsz), s);
  }
  return out;
}

mpq_class inner_product(const Group& G, const ClassFunction& a,
                        const ClassFunction& b) {
  if (a.F->conductor() != b.F->conductor())
    throw std::invalid_argument("inner_product: field mismatch");
  CycField::Elem s = a.F->zero();
  for (int c = 0; c < G.num_classes(); ++c) {
    CycField::Elem t = a.F->mul(a.v[c], a.F->conj(b.v[c]));
    s = a.F->add(s, a.F->scale(mpq_class((long)G.class_elems(c).size()), t));
  }
  for (size_t i = 1; i < s.size(); ++i)
    if (s[i] != 0)
      throw std::logic_error("inner_product: non-rational value");
  return s[0] / mpq_class((long)G.order());
}

std::vector<long> decompose_virtual(const Group& G, const CharacterTable& T,
                                    const ClassFunction& chi) {
  std::vector<long> out;
  ClassFunction chi2 = chi;
  if (chi.F->conductor() != T.F->conductor()) {
    chi2.F = T.F;
    chi2.v.clear();
    for (auto& v : chi.v) chi2.v.push_back(T.F->embed_from(*chi.F, v));
  }
  for (size_t i = 0; i < T.irr.size(); ++i) {
    mpq_class n = inner_product(G, chi2, T.irr[i]);
    if (n.get_den() != 1)
      throw std::logic_error("decompose_virtual: non-integral multiplicity");
    out.push_back(n.get_num().get_si());
  }
  return out;
}

std::vector<std::vector<CycField::Elem>> linear_characters(
    const Group& G, std::shared_ptr<const CycField>& field_out) {
  Subgroup full = whole_group(G);
  Subgroup comm = commutator_subgroup(G, full);
  QuotientGroup ab = quotient(G, comm, "lin");
  CharacterTable Tab = character_table(*ab.group);
  field_out = Tab.F;
  std::vector<std::vector<CycField::Elem>> out;
  for (auto& chi : Tab.irr) {
    std::vector<CycField::Elem> v(G.order());
    for (int g = 0; g < G.order(); ++g)
      v[g] = chi.v[ab.group->class_of(ab.proj[g])];
    out.push_back(std::move(v));
  }
  return out;
}

MonomialRealization monomial_realization(const Group& G,
                                         const CharacterTable& T, int chi) {
  MonomialRealization R;
  long d = T.degree(chi);
  R.dim = (int)d;
  if (d == 1) {
    R.H = whole_group(G);
    R.Hmat = materialize(G, R.H);
    R.lambda.resize(G.order());
    for (int g = 0; g < G.order(); ++g)
      R.lambda[g] = T.irr[chi].v[G.class_of(g)];
    R.rho.resize(G.order());
    for (int g = 0; g < G.order(); ++g) R.rho[g] = {{R.lambda[g]}};
    return R;
  }
  // candidates: subgroups of index d (a power of l = 3 in this catalog)
  int l = 3, e = 0;
  long dd = d;
  while (dd > 1 && dd % l == 0) dd /= l, ++e;
  if (dd != 1)
    throw std::logic_error("monomial: degree is not a power of l");
  std::vector<Subgroup> cands = low_index_subgroups(G, l, e);
  for (const Subgroup& H : cands) {
    if ((long)G.order() / H.order() != d) continue;
    MaterializedGroup Hm = materialize(G, H);
    std::shared_ptr<const CycField> FH;
    auto lams = linear_characters(*Hm.group, FH);
    for (auto& lam : lams) {
      // induced character values match?
      std::vector<int> reps;
      {
        std::vector<char> used(G.order(), 0);
        for (int x = 0; x < G.order(); ++x) {
          if (used[x]) continue;
          reps.push_back(x);
          for (int u : H.elems) used[G.mul(x, u)] = 1;
        }
      }
      bool match = true;
      for (int c = 0; c < G.num_classes() && match; ++c) {
        int g = G.class_rep(c);
        CycField::Elem s = T.F->zero();
        for (int x : reps) {
          int t = G.mul(G.mul(G.inv(x), g), x);
          auto it = Hm.from_parent.find(t);
          if (it == Hm.from_parent.end()) continue;
          s = T.F->add(s, T.F->embed_from(*FH, lam[it->second]));
        }
        if (!T.F->eq(s, T.irr[chi].v[c])) match = false;
      }
      if (!match) continue;
      R.H = H;
      R.Hmat = std::move(Hm);
      R.lambda.resize(G.order(), T.F->zero());
      for (int u = 0; u < (int)H.elems.size(); ++u)
        R.lambda[H.elems[u]] = T.F->embed_from(*FH, lam[u]);
      R.rho.assign(G.order(), {});
      int m = (int)reps.size();
      for (int g = 0; g < G.order(); ++g) {
        std::vector<std::vector<CycField::Elem>> M(
            m, std::vector<CycField::Elem>(m, T.F->zero()));
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) {
            int t = G.mul(G.mul(G.inv(reps[i]), g), reps[j]);
            if (R.H.contains(t)) M[i][j] = R.lambda[t];
          }
        R.rho[g] = std::move(M);
      }
      return R;
    }
  }
  throw std::logic_error("monomial realization not found");
}

HomContext make_hom_context(const Group& G) {
  HomContext H;
  H.G = &G;
  H.table = character_table(G);
  H.gord = (int)G.gamma_part().size();
  H.A.F = H.table.F.get();
  H.A.gord = H.gord;
  // gamma generator
  int g0 = 0;
  for (int g : G.gamma_part())
    if (G.elem_order(g) == H.gord) {
      g0 = g;
      break;
    }
  const std::vector<int>& comp = G.gamma_complement();
  std::vector<char> in_comp(G.order(), 0);
  for (int h : comp) in_comp[h] = 1;
  H.gamma_exp_of.assign(G.order(), -1);
  H.hk_part_of.assign(G.order(), -1);
  for (int g = 0; g < G.order(); ++g) {
    int x = g;
    for (int e = 0; e < H.gord; ++e) {
      if (in_comp[x]) {
        H.gamma_exp_of[g] = e;
        H.hk_part_of[g] = x;
        break;
      }
      x = G.mul(G.inv(g0), x);
    }
    if (H.gamma_exp_of[g] < 0)
      throw std::logic_error("hom: gamma decomposition failed");
  }
  for (size_t i = 0; i < H.table.irr.size(); ++i)
    H.real.push_back(monomial_realization(G, H.table, (int)i));
  return H;
}

namespace {

GammaAlg det_gamma(const GammaAlgCtx& A,
                   const std::vector<std::vector<GammaAlg>>& M) {
  int n = (int)M.size();
  if (n == 0) return A.one();
  std::vector<GammaAlg> D((size_t)1 << n, A.zero());
  D[0] = A.one();
  for (u64 mask = 1; mask < ((u64)1 << n); ++mask) {
    int kk = __builtin_popcountll(mask) - 1;
    GammaAlg acc = A.zero();
    int pos = 0;
    for (int j = 0; j < n; ++j) {
      if (!(mask >> j & 1)) continue;
      GammaAlg term = A.mul(D[mask ^ ((u64)1 << j)], M[kk][j]);
      if ((kk - pos) % 2 != 0) term = A.neg(term);
      acc = A.add(acc, term);
      ++pos;
    }
    D[mask] = std::move(acc);
  }
  return D[((u64)1 << n) - 1];
}

}  // namespace

GammaAlg det_eval(const HomContext& H, const GRingCtx& X, const GRElt& u,
                  int chi) {
  if (X.R->deg() != 1)
    throw std::invalid_argument("det_eval: plain coefficients only");
  const Group& G = *H.G;
  int r = H.real[chi].dim;
  std::vector<std::vector<GammaAlg>> M(
      r, std::vector<GammaAlg>(r, H.A.zero()));
  for (int g = 0; g < G.order(); ++g) {
    u64 c = u.c[g];
    if (!c) continue;
    int e = H.gamma_exp_of[g];
    const auto& rh = H.real[chi].rho[g];
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        if (H.table.F->is_zero(rh[i][j])) continue;
        GammaAlg t = H.A.zero();
        t.c[e % H.gord] = H.table.F->scale(mpq_class((long)c), rh[i][j]);
        M[i][j] = H.A.add(M[i][j], t);
      }
  }
  return det_gamma(H.A, M);
}

HomValue det_eval_all(const HomContext& H, const GRingCtx& X,
                      const GRElt& u) {
  HomValue f;
  for (size_t i = 0; i < H.table.irr.size(); ++i)
    f.v.push_back(det_eval(H, X, u, (int)i));
  return f;
}

GammaAlg det_eval_matrix(const HomContext& HU, const GRingCtx& XU,
                         const MaterializedGroup& U,
                         const std::vector<std::vector<GRElt>>& M, int chi) {
  (void)U;
  if (XU.R->deg() != 1)
    throw std::invalid_argument("det_eval_matrix: plain coefficients only");
  const Group& GU = *HU.G;
  int r = HU.real[chi].dim;
  int s = (int)M.size();
  int n = r * s;
  std::vector<std::vector<GammaAlg>> B(
      n, std::vector<GammaAlg>(n, HU.A.zero()));
  for (int bi = 0; bi < s; ++bi)
    for (int bj = 0; bj < s; ++bj) {
      const GRElt& x = M[bi][bj];
      for (int g = 0; g < GU.order(); ++g) {
        u64 c = x.c[g];
        if (!c) continue;
        int e = HU.gamma_exp_of[g];
        const auto& rh = HU.real[chi].rho[g];
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) {
            if (HU.table.F->is_zero(rh[i][j])) continue;
            GammaAlg t = HU.A.zero();
            t.c[e % HU.gord] =
                HU.table.F->scale(mpq_class((long)c), rh[i][j]);
            B[bi * r + i][bj * r + j] =
                HU.A.add(B[bi * r + i][bj * r + j], t);
          }
      }
    }
  return det_gamma(HU.A, B);
}

HomValue tr_eval_all(const HomContext& H, const GRingCtx& X, const TElt& x) {
  HomValue f;
  for (size_t i = 0; i < H.table.irr.size(); ++i)
    f.v.push_back(tr_eval(H, X, x, (int)i));
  return f;
}

GammaAlg tr_eval(const HomContext& H, const GRingCtx& X, const TElt& x,
                 int chi) {
  if (X.R->deg() != 1)
    throw std::invalid_argument("tr_eval: plain coefficients only");
  const Group& G = *H.G;
  GammaAlg out = H.A.zero();
  for (int c = 0; c < G.num_classes(); ++c) {
    u64 v = x.c[c];
    if (!v) continue;
    int g = G.class_rep(c);
    int e = H.gamma_exp_of[g];
    CycField::Elem chival = H.table.irr[chi].v[c];
    GammaAlg t = H.A.zero();
    t.c[e % H.gord] = H.table.F->scale(mpq_class((long)v), chival);
    out = H.A.add(out, t);
  }
  return out;
}

GammaAlg embed_gamma(const GammaAlgCtx& target, const CycField& from,
                     const GammaAlg& x) {
  if ((int)x.c.size() != target.gord)
    throw std::invalid_argument("embed_gamma: gamma order mismatch");
  GammaAlg out = target.zero();
  for (int i = 0; i < target.gord; ++i)
    out.c[i] = target.F->embed_from(from, x.c[i]);
  return out;
}

GammaAlg hom_eval_virtual(const HomContext& H, const HomValue& f,
                          const std::vector<long>& coeffs,
                          const GammaAlgCtx* V) {
  const GammaAlgCtx& A = V ? *V : H.A;
  GammaAlg out = A.one();
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    out = A.mul(out, A.pow(f.v[i], coeffs[i]));
  }
  return out;
}

GammaAlg hom_eval_virtual_additive(const HomContext& H, const HomValue& f,
                                   const std::vector<long>& coeffs,
                                   const GammaAlgCtx* V) {
  const GammaAlgCtx& A = V ? *V : H.A;
  GammaAlg out = A.zero();
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    out = A.add(out, A.scale_q(mpq_class(coeffs[i]), f.v[i]));
  }
  return out;
}

GammaAlg bigL_hom(const HomContext& H, const HomValue& f, int chi, int l,
                  int digits, const GammaAlgCtx* V) {
  const GammaAlgCtx& A = V ? *V : H.A;
  const Group& G = *H.G;
  ClassFunction psi_chi = adams(G, H.table.irr[chi], l, 1);
  std::vector<long> dec = decompose_virtual(G, H.table, psi_chi);
  GammaAlg denom = A.psi(hom_eval_virtual(H, f, dec, &A), l);
  GammaAlg q = A.mul(A.pow(f.v[chi], l), A.inv(denom));
  GammaAlg j = A.sub(q, A.one());
  if (A.val_l(j, l) < 1)
    throw std::invalid_argument("bigL: Wall congruence fails for the input");
  // log series; v(j^k / k) >= k - v_l(k), so the tail beyond k0 has
  // valuation > digits + 1 once k0 - log_l(k0) does
  GammaAlg sum = A.zero();
  GammaAlg p = A.one();
  auto log_l = [l](long k) {
    int e = 0;
    long pw = 1;
    while (pw * l <= k) pw *= l, ++e;
    return e;
  };
  long k0 = 4;
  while (k0 - log_l(k0) <= digits + 2) ++k0;
  for (long k = 1; k <= k0; ++k) {
    p = A.mul(p, j);
    if (A.is_zero(p)) break;
    sum = A.add(sum, A.scale_q(mpq_class(k % 2 ? 1 : -1, k), p));
  }
  return A.scale_q(mpq_class(1, l), sum);
}

HomValue res_hom(const HomContext& HG, const Group& G,
                 const MaterializedGroup& U, const HomContext& HU,
                 const HomValue& f, int l, const GammaAlgCtx* V) {
  if (HG.gord != 1 || HU.gord != 1)
    throw std::invalid_argument("res_hom: gamma part must be trivial");
  const GammaAlgCtx& A = V ? *V : HG.A;
  HomValue out;
  for (size_t ci = 0; ci < HU.table.irr.size(); ++ci) {
    ClassFunction ind = induce_cf(G, HG.table, U, HU.table.irr[ci]);
    std::vector<long> ind_dec = decompose_virtual(G, HG.table, ind);
    GammaAlg val = hom_eval_virtual_additive(HG, f, ind_dec, &A);
    // chi = psi_l(ind chi') - ind(psi_l chi')
    ClassFunction psi_ind = adams(G, ind, l, 1);
    ClassFunction ind_psi =
        induce_cf(G, HG.table, U, adams(*U.group, HU.table.irr[ci], l, 1));
    ClassFunction chi;
    chi.F = HG.table.F;
    chi.v.resize(G.num_classes());
    for (int c = 0; c < G.num_classes(); ++c)
      chi.v[c] = HG.table.F->sub(psi_ind.v[c], ind_psi.v[c]);
    std::vector<long> cur = decompose_virtual(G, HG.table, chi);
    mpq_class scale(1);
    int r = 1;
    for (;; ++r) {
      bool zero = std::all_of(cur.begin(), cur.end(),
                              [](long x) { return x == 0; });
      if (zero) break;
      scale /= l;
      GammaAlg term = hom_eval_virtual_additive(HG, f, cur, &A);
      // Psi^r acts trivially here (gamma trivial, scalars fixed)
      val = A.add(val, A.scale_q(scale, term));
      // advance: psi_l^{r} chi for the next round
      ClassFunction next;
      next.F = HG.table.F;
      next.v.assign(G.num_classes(), HG.table.F->zero());
      for (size_t i = 0; i < cur.size(); ++i) {
        if (!cur[i]) continue;
        ClassFunction a = adams(G, HG.table.irr[i], l, 1);
        for (int c = 0; c < G.num_classes(); ++c)
          next.v[c] = HG.table.F->add(
              next.v[c],
              HG.table.F->scale(mpq_class(cur[i]), a.v[c]));
      }
      cur = decompose_virtual(G, HG.table, next);
      if (r > 16) throw std::logic_error("res_hom: Adams tail not vanishing");
    }
    out.v.push_back(val);
  }
  return out;
}

}  // namespace gring
