#include "gringcheck/linalg.hpp"

#include <algorithm>

namespace gring {

namespace {

u64 unit_inv(u64 u, const ModCtx& R) {
  // u prime to l: Newton lift of the mod-l inverse
  u64 v = powmod(u % R.l, (u64)(R.l - 2), (u64)R.l);
  for (int it = 0; it < 8; ++it) {
    u64 t = mulmod(u, v, R.mod);
    v = mulmod(v, (2 + R.mod - t) % R.mod, R.mod);
    if (mulmod(u, v, R.mod) == 1) break;
  }
  return v;
}

void row_axpy(Mat& M, int dst, int src, u64 c, const ModCtx& R) {
  for (int j = 0; j < M.cols; ++j)
    M.at(dst, j) = (M.at(dst, j) + mulmod(c, M.at(src, j), R.mod)) % R.mod;
}

void row_scale(Mat& M, int i, u64 c, const ModCtx& R) {
  for (int j = 0; j < M.cols; ++j) M.at(i, j) = mulmod(c, M.at(i, j), R.mod);
}

}  // namespace

Mat howell_form(Mat A, const ModCtx& R) {
  // eliminate column by column; keep annihilator shadows of torsion pivots
  std::vector<std::vector<u64>> work;
  for (int i = 0; i < A.rows; ++i) work.push_back(A.row(i));
  std::vector<std::vector<u64>> pivots;  // pivot rows, by pivot column order
  for (int col = 0; col < A.cols; ++col) {
    // pick minimal valuation entry at this column among remaining rows
    int best = -1, bestv = R.n;
    for (int i = 0; i < (int)work.size(); ++i) {
      if (work[i].empty()) continue;
      bool lead = true;
      for (int j = 0; j < col; ++j)
        if (work[i][j] != 0) {
          lead = false;
          break;
        }
      if (!lead || work[i][col] == 0) continue;
      int v = val_l(work[i][col], R.l);
      if (v < bestv) {
        bestv = v;
        best = i;
      }
    }
    if (best < 0) continue;
    std::vector<u64> piv = work[best];
    work[best].clear();
    // normalize pivot to l^v
    u64 lv = pow_u64((u64)R.l, (u64)bestv);
    u64 u = piv[col] / lv;
    u64 uin = unit_inv(u, R);
    for (auto& x : piv) x = mulmod(x, uin, R.mod);
    // eliminate this column from all other rows with leading support here
    for (auto& w : work) {
      if (w.empty() || w[col] == 0) continue;
      bool lead = true;
      for (int j = 0; j < col; ++j)
        if (w[j] != 0) {
          lead = false;
          break;
        }
      if (!lead) continue;
      if (val_l(w[col], R.l) < bestv)
        throw std::logic_error("howell: pivot valuation violated");
      u64 q = (w[col] / lv) % R.mod;
      u64 c = (R.mod - q) % R.mod;
      for (int j = 0; j < (int)w.size(); ++j)
        w[j] = (w[j] + mulmod(c, piv[j], R.mod)) % R.mod;
    }
    // annihilator shadow l^{n-v} * pivot
    if (bestv > 0) {
      u64 ann = pow_u64((u64)R.l, (u64)(R.n - bestv));
      std::vector<u64> sh(piv.size());
      bool nz = false;
      for (size_t j = 0; j < piv.size(); ++j) {
        sh[j] = mulmod(ann, piv[j], R.mod);
        nz |= sh[j] != 0;
      }
      if (nz) work.push_back(sh);
    }
    pivots.push_back(std::move(piv));
  }
  // reduce entries above pivots for canonicity
  // pivots are ordered by pivot column (construction order)
  std::vector<int> pcol(pivots.size());
  for (size_t i = 0; i < pivots.size(); ++i) {
    int c = 0;
    while (pivots[i][c] == 0) ++c;
    pcol[i] = c;
  }
  for (size_t i = 0; i < pivots.size(); ++i)
    for (size_t k = i + 1; k < pivots.size(); ++k) {
      int c = pcol[k];
      u64 lv = pow_u64((u64)R.l, (u64)val_l(pivots[k][c], R.l));
      u64 e = pivots[i][c];
      u64 q = e / lv;  // reduce mod pivot value
      if (q) {
        u64 cc = (R.mod - q) % R.mod;
        for (size_t j = 0; j < pivots[i].size(); ++j)
          pivots[i][j] =
              (pivots[i][j] + mulmod(cc, pivots[k][j], R.mod)) % R.mod;
      }
    }
  Mat H(0, A.cols);
  for (auto& p : pivots) H.push_row(p);
  return H;
}

bool spans_equal(const Mat& A, const Mat& B, const ModCtx& R) {
  Mat HA = howell_form(A, R), HB = howell_form(B, R);
  return HA.rows == HB.rows && HA.a == HB.a;
}

bool in_span_howell(const Mat& H, std::vector<u64> x, const ModCtx& R) {
  for (int i = 0; i < H.rows; ++i) {
    int c = 0;
    while (c < H.cols && H.at(i, c) == 0) ++c;
    if (c == H.cols) continue;
    if (x[c] == 0) continue;
    int pv = val_l(H.at(i, c), R.l);
    if (val_l(x[c], R.l) < pv) return false;
    u64 lv = pow_u64((u64)R.l, (u64)pv);
    u64 q = x[c] / lv;
    u64 cc = (R.mod - q) % R.mod;
    for (int j = 0; j < H.cols; ++j)
      x[j] = (x[j] + mulmod(cc, H.at(i, j), R.mod)) % R.mod;
  }
  return std::all_of(x.begin(), x.end(), [](u64 v) { return v == 0; });
}

long span_size_log(const Mat& H, const ModCtx& R) {
  long s = 0;
  for (int i = 0; i < H.rows; ++i) {
    int c = 0;
    while (c < H.cols && H.at(i, c) == 0) ++c;
    if (c < H.cols) s += R.n - val_l(H.at(i, c), R.l);
  }
  return s;
}

std::vector<int> smith_local(Mat A, const ModCtx& R, Mat* P, Mat* Q) {
  int r = A.rows, c = A.cols;
  Mat Pm(r, r), Qm(c, c);
  for (int i = 0; i < r; ++i) Pm.at(i, i) = 1;
  for (int j = 0; j < c; ++j) Qm.at(j, j) = 1;
  std::vector<int> diag;
  int k = 0;
  while (k < std::min(r, c)) {
    // minimal valuation entry in the submatrix
    int bi = -1, bj = -1, bv = R.n;
    for (int i = k; i < r; ++i)
      for (int j = k; j < c; ++j)
        if (A.at(i, j)) {
          int v = val_l(A.at(i, j), R.l);
          if (v < bv) bv = v, bi = i, bj = j;
        }
    if (bi < 0) break;
    // swap into place
    if (bi != k) {
      for (int j = 0; j < c; ++j) std::swap(A.at(bi, j), A.at(k, j));
      for (int j = 0; j < r; ++j) std::swap(Pm.at(bi, j), Pm.at(k, j));
    }
    if (bj != k) {
      for (int i = 0; i < r; ++i) std::swap(A.at(i, bj), A.at(i, k));
      for (int i = 0; i < c; ++i) std::swap(Qm.at(i, bj), Qm.at(i, k));
    }
    u64 lv = pow_u64((u64)R.l, (u64)bv);
    u64 u = A.at(k, k) / lv;
    u64 uin = unit_inv(u, R);
    row_scale(A, k, uin, R);
    row_scale(Pm, k, uin, R);
    // clear column k below/above
    for (int i = 0; i < r; ++i) {
      if (i == k || A.at(i, k) == 0) continue;
      u64 q = A.at(i, k) / lv;
      u64 cc = (R.mod - q) % R.mod;
      row_axpy(A, i, k, cc, R);
      row_axpy(Pm, i, k, cc, R);
    }
    // clear row k to the right (column ops, mirrored on Qm)
    for (int j = 0; j < c; ++j) {
      if (j == k || A.at(k, j) == 0) continue;
      u64 q = A.at(k, j) / lv;
      u64 cc = (R.mod - q) % R.mod;
      for (int i = 0; i < r; ++i)
        A.at(i, j) = (A.at(i, j) + mulmod(cc, A.at(i, k), R.mod)) % R.mod;
      for (int i = 0; i < c; ++i)
        Qm.at(i, j) = (Qm.at(i, j) + mulmod(cc, Qm.at(i, k), R.mod)) % R.mod;
    }
    diag.push_back(bv);
    ++k;
  }
  if (P) *P = Pm;
  if (Q) *Q = Qm;
  return diag;
}

Mat left_kernel(const Mat& A, const ModCtx& R) {
  Mat P;
  std::vector<int> d = smith_local(A, R, &P, nullptr);
  Mat K(0, A.rows);
  for (int i = 0; i < A.rows; ++i) {
    int dv = i < (int)d.size() ? d[i] : R.n;  // beyond diagonal: zero row
    if (i < (int)d.size() && d[i] == 0) continue;
    u64 ann = pow_u64((u64)R.l, (u64)(R.n - std::min(dv, R.n)));
    std::vector<u64> row(A.rows);
    bool nz = false;
    for (int j = 0; j < A.rows; ++j) {
      row[j] = mulmod(ann % R.mod, P.at(i, j), R.mod);
      nz |= row[j] != 0;
    }
    if (nz) K.push_row(row);
  }
  return howell_form(K, R);
}

Mat intersect_spans(const Mat& A, const Mat& B, const ModCtx& R) {
  Mat S(0, A.cols);
  for (int i = 0; i < A.rows; ++i) S.push_row(A.row(i));
  for (int i = 0; i < B.rows; ++i) S.push_row(B.row(i));
  Mat K = left_kernel(S, R);
  Mat I(0, A.cols);
  for (int i = 0; i < K.rows; ++i) {
    std::vector<u64> v(A.cols, 0);
    bool nz = false;
    for (int j = 0; j < A.rows; ++j) {
      u64 c = K.at(i, j);
      if (!c) continue;
      for (int t = 0; t < A.cols; ++t)
        v[t] = (v[t] + mulmod(c, A.at(j, t), R.mod)) % R.mod;
    }
    for (u64 t : v) nz |= t != 0;
    if (nz) I.push_row(v);
  }
  return howell_form(I, R);
}

bool solve_left(const Mat& A, const std::vector<u64>& b, std::vector<u64>& x,
                const ModCtx& R) {
  Mat P, Q;
  std::vector<int> d = smith_local(A, R, &P, &Q);
  // x*A = b, A = P^{-1} D Q^{-1} (PAQ = D); set t = b*Q, y = x*P^{-1}:
  // y*D = t
  std::vector<u64> t(A.cols, 0);
  for (int j = 0; j < A.cols; ++j) {
    u64 s = 0;
    for (int i = 0; i < A.cols; ++i)
      s = (s + mulmod(b[i], Q.at(i, j), R.mod)) % R.mod;
    t[j] = s;
  }
  std::vector<u64> y(A.rows, 0);
  for (int j = 0; j < A.cols; ++j) {
    if (j < (int)d.size()) {
      u64 lv = pow_u64((u64)R.l, (u64)d[j]);
      if (t[j] % lv != 0) return false;
      if (j < A.rows) y[j] = t[j] / lv;
    } else if (t[j] != 0) {
      return false;
    }
  }
  x.assign(A.rows, 0);
  for (int j = 0; j < A.rows; ++j) {
    u64 s = 0;
    for (int i = 0; i < A.rows; ++i)
      s = (s + mulmod(y[i], P.at(i, j), R.mod)) % R.mod;
    x[j] = s;
  }
  return true;
}

std::vector<int> subquotient_invariants(const Mat& K, const Mat& S,
                                        const ModCtx& R) {
  Mat HK = howell_form(K, R);
  if (HK.rows == 0) return {};
  // relations among the generators HK: left kernel
  Mat Rel = left_kernel(HK, R);
  // S generators in HK coordinates
  Mat pres = Rel;
  for (int i = 0; i < S.rows; ++i) {
    std::vector<u64> coord;
    if (!solve_left(HK, S.row(i), coord, R))
      throw std::logic_error("subquotient: S not inside K");
    pres.push_row(coord);
  }
  std::vector<int> d = smith_local(pres, R, nullptr, nullptr);
  // module = (Z/l^n)^{HK.rows} / rowspan(pres)
  std::vector<int> inv;
  int i = 0;
  for (; i < (int)d.size(); ++i) {
    int e = std::min(d[i], R.n);
    if (e > 0) inv.push_back(e);
  }
  for (int j = (int)d.size(); j < HK.rows; ++j) inv.push_back(R.n);
  std::sort(inv.begin(), inv.end());
  return inv;
}

std::vector<int> h_minus_one(const std::vector<Mat>& rho,
                             const std::vector<std::vector<int>>& mul_table,
                             const ModCtx& R) {
  int q = (int)rho.size();
  int r = rho[0].rows;
  // consistency: rho(a)rho(b) = rho(ab)
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      Mat prod(r, r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
          u64 s = 0;
          for (int k = 0; k < r; ++k)
            s = (s + mulmod(rho[a].at(i, k), rho[b].at(k, j), R.mod)) % R.mod;
          prod.at(i, j) = s;
        }
      if (prod.a != rho[mul_table[a][b]].a)
        throw std::invalid_argument("h_minus_one: action inconsistent");
    }
  Mat N(r, r);
  for (int g = 0; g < q; ++g)
    for (size_t t = 0; t < N.a.size(); ++t)
      N.a[t] = (N.a[t] + rho[g].a[t]) % R.mod;
  Mat K = left_kernel(N, R);
  // augmentation submodule: rows e_i (rho(g) - 1)
  Mat S(0, r);
  for (int g = 1; g < q; ++g)
    for (int i = 0; i < r; ++i) {
      std::vector<u64> row = rho[g].row(i);
      row[i] = (row[i] + R.mod - 1) % R.mod;
      bool nz = false;
      for (u64 v : row) nz |= v != 0;
      if (nz) S.push_row(row);
    }
  return subquotient_invariants(K, S, R);
}

}  // namespace gring
