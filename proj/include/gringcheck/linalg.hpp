#pragma once

#include <vector>

#include "gringcheck/common.hpp"

namespace gring {

// Dense matrices over Z/l^n, row-vector convention (vectors act from the
// left, x -> x*M).
struct Mat {
  int rows = 0, cols = 0;
  std::vector<u64> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a((size_t)r * c, 0) {}
  u64& at(int i, int j) { return a[(size_t)i * cols + j]; }
  u64 at(int i, int j) const { return a[(size_t)i * cols + j]; }
  std::vector<u64> row(int i) const {
    return {a.begin() + (size_t)i * cols, a.begin() + (size_t)(i + 1) * cols};
  }
  void push_row(const std::vector<u64>& r) {
    rows += 1;
    a.insert(a.end(), r.begin(), r.end());
  }
};

struct ModCtx {
  int l, n;
  u64 mod;
  ModCtx(int l_, int n_) : l(l_), n(n_), mod(pow_u64((u64)l_, (u64)n_)) {}
};

// canonical Howell row form of the row span (zero rows removed)
Mat howell_form(Mat A, const ModCtx& R);
bool spans_equal(const Mat& A, const Mat& B, const ModCtx& R);
// membership of x in the row span of a Howell form H
bool in_span_howell(const Mat& H, std::vector<u64> x, const ModCtx& R);
// module-rank style count: log_l |span|
long span_size_log(const Mat& H, const ModCtx& R);

// local Smith form: returns diagonal exponents d_1 <= d_2 <= ... (entries
// l^{d_i}); P receives the row transform (P*A*Q = D) when non-null.
std::vector<int> smith_local(Mat A, const ModCtx& R, Mat* P = nullptr,
                             Mat* Q = nullptr);

// basis rows of {x : x*A = 0}
Mat left_kernel(const Mat& A, const ModCtx& R);

// rows generating span(A) ∩ span(B)
Mat intersect_spans(const Mat& A, const Mat& B, const ModCtx& R);

// solve x*A = b; returns false if unsolvable
bool solve_left(const Mat& A, const std::vector<u64>& b, std::vector<u64>& x,
                const ModCtx& R);

// invariant factors (exponents e with factor l^e, trivial ones dropped,
// ascending) of the subquotient span(K)/span(S), S ⊆ span(K) required.
std::vector<int> subquotient_invariants(const Mat& K, const Mat& S,
                                        const ModCtx& R);

// H^{-1}(Q, M) = ker(N)/I_Q M for a finite module M = (Z/l^n)^r with a right
// action of the group given by matrices rho[i] (consistency checked via mul
// closure table passed as pairs). Returns invariant factor exponents.
std::vector<int> h_minus_one(const std::vector<Mat>& rho,
                             const std::vector<std::vector<int>>& mul_table,
                             const ModCtx& R);

}  // namespace gring
