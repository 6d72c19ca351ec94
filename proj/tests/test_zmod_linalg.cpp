#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "gringcheck/linalg.hpp"
#include "gringcheck/zmod.hpp"

using namespace gring;

TEST_CASE("CoeffRing Z/27 basics") {
  CoeffRing R(3, 3);
  CHECK(R.mod() == 27);
  auto a = R.from_int(5), b = R.from_int(9);
  CHECK(R.mul(a, b)[0] == 45 % 27);
  CHECK(R.is_unit(a));
  CHECK(!R.is_unit(b));
  CHECK(R.mul(a, R.inv(a)) == R.one());
  CHECK(R.val(b) == 2);
  CHECK(R.div_l(b, 2)[0] == 1);
  CHECK_THROWS(R.div_l(a, 1));
  // frobenius is trivial on Z/l^n
  CHECK(R.frobenius(a) == a);
  // teichmuller of 2 is -1
  CHECK(R.teichmuller(R.from_int(2))[0] == 26);
}

TEST_CASE("Galois ring GR(27, 2) via x^2 + 1") {
  CoeffRing R(3, 3, {1, 0, 1});  // x^2 + 1 over Z/27
  CHECK(R.deg() == 2);
  auto x = R.x();
  CHECK(R.mul(x, x) == R.neg(R.one()));  // x^2 = -1
  // frobenius: Fr(x) = x^3 = -x (a root of the same polynomial)
  auto fx = R.frobenius(x);
  CHECK(fx == R.neg(x));
  // Fr^2 = id
  CHECK(R.frobenius(fx) == x);
  // Fr(a) = a^3 mod 3 for random elements
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    CoeffRing::Elem a{rng.below(27), rng.below(27)};
    auto lhs = R.frobenius(a);
    auto rhs = R.pow(a, 3);
    CHECK(R.val(R.sub(lhs, rhs)) >= 1);
  }
  // units and inverses
  for (int t = 0; t < 20; ++t) {
    CoeffRing::Elem a{rng.below(27), rng.below(27)};
    if (!R.is_unit(a)) continue;
    CHECK(R.mul(a, R.inv(a)) == R.one());
  }
  // teichmuller satisfies c^{l^d} = c and c^l = Fr(c)
  CoeffRing::Elem s{2, 1};
  auto c = R.teichmuller(s);
  CHECK(R.pow(c, 9) == c);
  CHECK(R.pow(c, 3) == R.frobenius(c));
}

TEST_CASE("factorization of x^w - 1 with Hensel lifting") {
  // w = 2 over Z/27: (x - 1)(x + 1); the trivial factor comes first
  auto f2 = factor_xw_minus_1(2, 3, 3);
  REQUIRE(f2.size() == 2);
  CHECK(f2[0] == std::vector<u64>{26, 1});  // x - 1
  CHECK(f2[1] == std::vector<u64>{1, 1});   // x + 1
  // w = 4 over Z/27: (x-1)(x+1)(x^2+1); x^2+1 stays irreducible over F_3
  auto f4 = factor_xw_minus_1(4, 3, 3);
  REQUIRE(f4.size() == 3);
  CHECK(f4[0] == std::vector<u64>{26, 1});
  CHECK(f4[1] == std::vector<u64>{1, 1});
  CHECK(f4[2] == std::vector<u64>{1, 0, 1});
  // idempotents: orthogonal, complete
  auto e = crt_idempotents(f4, 4, 3, 3);
  u64 mod = 27;
  // sum = 1
  std::vector<u64> s(4, 0);
  for (auto& ei : e)
    for (int i = 0; i < 4; ++i) s[i] = (s[i] + ei[i]) % mod;
  CHECK(s == std::vector<u64>{1, 0, 0, 0});
  // e_i e_j = delta e_i (mod x^4 - 1)
  for (size_t i = 0; i < e.size(); ++i)
    for (size_t j = 0; j < e.size(); ++j) {
      auto p = poly_mul_mod(e[i], e[j], mod);
      std::vector<u64> red(4, 0);
      for (size_t k = 0; k < p.size(); ++k) red[k % 4] = (red[k % 4] + p[k]) % mod;
      if (i == j) {
        CHECK(red == e[i]);
      } else {
        CHECK(red == std::vector<u64>(4, 0));
      }
    }
  CHECK_THROWS(factor_xw_minus_1(6, 3, 2));  // gcd(w, l) != 1
}

TEST_CASE("howell form vs brute-force span (Z/9, dimension 2)") {
  ModCtx R(3, 2);
  auto span_of = [&](const Mat& M) {
    std::set<std::pair<u64, u64>> s;
    // all coefficient combinations over Z/9
    int rows = M.rows;
    std::vector<u64> c(rows, 0);
    for (;;) {
      u64 x = 0, y = 0;
      for (int i = 0; i < rows; ++i) {
        x = (x + c[i] * M.at(i, 0)) % 9;
        y = (y + c[i] * M.at(i, 1)) % 9;
      }
      s.insert({x, y});
      int p = 0;
      while (p < rows && c[p] == 8) c[p++] = 0;
      if (p == rows) break;
      ++c[p];
    }
    return s;
  };
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    int rows = 1 + (int)rng.below(3);
    Mat M(rows, 2);
    for (auto& v : M.a) v = rng.below(9);
    Mat H = howell_form(M, R);
    // same span
    CHECK(span_of(M) == span_of(H));
    // membership test agrees with brute force
    for (u64 x = 0; x < 9; ++x)
      for (u64 y = 0; y < 9; ++y) {
        bool in = span_of(M).count({x, y}) > 0;
        CHECK(in_span_howell(H, {x, y}, R) == in);
      }
    // canonical: howell of howell is itself
    Mat H2 = howell_form(H, R);
    CHECK(H.a == H2.a);
  }
}

TEST_CASE("smith form, kernel, solve over Z/27") {
  ModCtx R(3, 3);
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    int n = 2 + (int)rng.below(3), m = 2 + (int)rng.below(3);
    Mat A(n, m);
    for (auto& v : A.a) v = rng.below(27);
    Mat P, Q;
    std::vector<int> d = smith_local(A, R, &P, &Q);
    for (size_t i = 1; i < d.size(); ++i) CHECK(d[i - 1] <= d[i]);
    // kernel rows annihilate A
    Mat K = left_kernel(A, R);
    for (int i = 0; i < K.rows; ++i)
      for (int j = 0; j < m; ++j) {
        u64 s = 0;
        for (int k = 0; k < n; ++k)
          s = (s + mulmod(K.at(i, k), A.at(k, j), R.mod)) % R.mod;
        CHECK(s == 0);
      }
    // solve x A = b for b in the row span
    std::vector<u64> coeff(n), b(m, 0);
    for (auto& c : coeff) c = rng.below(27);
    for (int j = 0; j < m; ++j) {
      u64 s = 0;
      for (int k = 0; k < n; ++k)
        s = (s + mulmod(coeff[k], A.at(k, j), R.mod)) % R.mod;
      b[j] = s;
    }
    std::vector<u64> x;
    REQUIRE(solve_left(A, b, x, R));
    for (int j = 0; j < m; ++j) {
      u64 s = 0;
      for (int k = 0; k < n; ++k)
        s = (s + mulmod(x[k], A.at(k, j), R.mod)) % R.mod;
      CHECK(s == b[j]);
    }
  }
}

TEST_CASE("subquotient invariants and H^{-1}") {
  ModCtx R2(3, 2);
  // H^{-1}(C_3, free module R[C_3]) = 0 (induced modules are trivial here)
  {
    std::vector<Mat> rho;
    std::vector<std::vector<int>> mt(3, std::vector<int>(3));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) mt[a][b] = (a + b) % 3;
    for (int g = 0; g < 3; ++g) {
      Mat P(3, 3);
      for (int i = 0; i < 3; ++i) P.at(i, (i + g) % 3) = 1;
      rho.push_back(P);
    }
    CHECK(h_minus_one(rho, mt, R2).empty());
  }
  // H^{-1}(C_3, Z/9 trivial action) = Z/3
  {
    std::vector<Mat> rho;
    std::vector<std::vector<int>> mt(3, std::vector<int>(3));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) mt[a][b] = (a + b) % 3;
    for (int g = 0; g < 3; ++g) {
      Mat P(1, 1);
      P.at(0, 0) = 1;
      rho.push_back(P);
    }
    auto inv = h_minus_one(rho, mt, R2);
    CHECK(inv == std::vector<int>{1});
  }
  // inconsistent action detected
  {
    std::vector<Mat> rho;
    std::vector<std::vector<int>> mt(2, std::vector<int>(2));
    mt[0][0] = 0;
    mt[0][1] = 1;
    mt[1][0] = 1;
    mt[1][1] = 0;
    Mat I(1, 1), Bad(1, 1);
    I.at(0, 0) = 1;
    Bad.at(0, 0) = 2;
    rho = {I, Bad};
    CHECK_THROWS(h_minus_one(rho, mt, R2));
  }
}
