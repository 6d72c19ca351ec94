#include "gringcheck/cyclotomic.hpp"

#include <algorithm>

namespace gring {

namespace {

// exact division of integer polynomials (little-endian), divisor monic
std::vector<mpz_class> zpoly_div(const std::vector<mpz_class>& a,
                                 const std::vector<mpz_class>& f) {
  std::vector<mpz_class> r = a, q;
  int d = (int)f.size() - 1;
  q.assign(r.size() > (size_t)d ? r.size() - d : 0, 0);
  while ((int)r.size() > d) {
    mpz_class c = r.back();
    int sh = (int)r.size() - 1 - d;
    q[sh] = c;
    for (int i = 0; i <= d; ++i) r[sh + i] -= c * f[i];
    while (!r.empty() && r.back() == 0) r.pop_back();
    if ((int)r.size() > d + sh) throw std::logic_error("zpoly_div: not exact");
  }
  for (const auto& c : r)
    if (c != 0) throw std::logic_error("zpoly_div: nonzero remainder");
  return q;
}

}  // namespace

std::vector<mpz_class> cyclotomic_poly(int N) {
  // Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d
  std::vector<mpz_class> num(N + 1, 0);
  num[0] = -1;
  num[N] = 1;
  for (int d = 1; d < N; ++d) {
    if (N % d != 0) continue;
    auto pd = cyclotomic_poly(d);
    num = zpoly_div(num, pd);
  }
  return num;
}

CycField::CycField(int N) : N_(std::max(1, N)) {
  phi_ = cyclotomic_poly(N_);
  deg_ = (int)phi_.size() - 1;
  // x^k mod phi for k < 2*deg (enough for products)
  xpow_.assign(std::max(2 * deg_ - 1, 1), std::vector<mpz_class>(deg_, 0));
  std::vector<mpz_class> cur(deg_, 0);
  cur[0] = 1;
  xpow_[0] = cur;
  for (int k = 1; k < (int)xpow_.size(); ++k) {
    // multiply by x
    std::vector<mpz_class> nx(deg_, 0);
    mpz_class lead = cur[deg_ - 1];
    for (int i = deg_ - 1; i > 0; --i) nx[i] = cur[i - 1];
    nx[0] = 0;
    if (lead != 0)
      for (int i = 0; i < deg_; ++i) nx[i] -= lead * phi_[i];
    cur = nx;
    xpow_[k] = cur;
  }
}

CycField::Elem CycField::zeta_pow(long k) const {
  long r = k % N_;
  if (r < 0) r += N_;
  Elem e(deg_, 0);
  if (r < (long)xpow_.size()) {
    for (int i = 0; i < deg_; ++i) e[i] = xpow_[r][i];
    return e;
  }
  // r < N always; N can exceed 2 deg - 2, reduce by repeated squaring-free
  Elem acc = one();
  Elem x = deg_ > 1 ? [&] {
    Elem t(deg_, 0);
    t[1] = 1;
    return t;
  }()
                    : [&] {
                        // deg 1: x = root of linear phi: x = -phi[0]
                        Elem t(deg_, 0);
                        t[0] = -phi_[0];
                        return t;
                      }();
  for (long i = 0; i < r; ++i) acc = mul(acc, x);
  return acc;
}

CycField::Elem CycField::add(const Elem& a, const Elem& b) const {
  Elem r(deg_);
  for (int i = 0; i < deg_; ++i) r[i] = a[i] + b[i];
  return r;
}
CycField::Elem CycField::sub(const Elem& a, const Elem& b) const {
  Elem r(deg_);
  for (int i = 0; i < deg_; ++i) r[i] = a[i] - b[i];
  return r;
}
CycField::Elem CycField::neg(const Elem& a) const {
  Elem r(deg_);
  for (int i = 0; i < deg_; ++i) r[i] = -a[i];
  return r;
}

CycField::Elem CycField::mul(const Elem& a, const Elem& b) const {
  std::vector<mpq_class> prod(2 * deg_ - 1, 0);
  for (int i = 0; i < deg_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < deg_; ++j) {
      if (b[j] == 0) continue;
      prod[i + j] += a[i] * b[j];
    }
  }
  Elem r(deg_, 0);
  for (int k = 0; k < 2 * deg_ - 1; ++k) {
    if (prod[k] == 0) continue;
    for (int i = 0; i < deg_; ++i)
      r[i] += prod[k] * mpq_class(xpow_[k][i]);
  }
  return r;
}

CycField::Elem CycField::scale(const mpq_class& s, const Elem& a) const {
  Elem r(deg_);
  for (int i = 0; i < deg_; ++i) r[i] = s * a[i];
  return r;
}

bool CycField::is_zero(const Elem& a) const {
  for (const auto& c : a)
    if (c != 0) return false;
  return true;
}
bool CycField::eq(const Elem& a, const Elem& b) const {
  for (int i = 0; i < deg_; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

CycField::Elem CycField::inv(const Elem& a) const {
  if (is_zero(a)) throw std::invalid_argument("CycField::inv(0)");
  // solve x * M(a) = e_0 where M(a) is the multiplication matrix
  int n = deg_;
  std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n));
  for (int i = 0; i < n; ++i) {
    Elem bi(deg_, 0);
    bi[i] = 1;
    Elem row = mul(bi, a);  // basis_i * a
    for (int j = 0; j < n; ++j) M[i][j] = row[j];
  }
  // augmented solve: find x with sum_i x_i row_i = e0 -> transpose system
  std::vector<std::vector<mpq_class>> A(n, std::vector<mpq_class>(n + 1, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A[j][i] = M[i][j];
  A[0][n] = 1;
  for (int col = 0, row = 0; col < n && row < n; ++col) {
    int p = -1;
    for (int i = row; i < n; ++i)
      if (A[i][col] != 0) {
        p = i;
        break;
      }
    if (p < 0) throw std::logic_error("CycField::inv: singular");
    std::swap(A[p], A[row]);
    mpq_class d = A[row][col];
    for (int j = col; j <= n; ++j) A[row][j] /= d;
    for (int i = 0; i < n; ++i) {
      if (i == row || A[i][col] == 0) continue;
      mpq_class f = A[i][col];
      for (int j = col; j <= n; ++j) A[i][j] -= f * A[row][j];
    }
    ++row;
  }
  Elem x(deg_);
  for (int i = 0; i < n; ++i) x[i] = A[i][n];
  // verify
  if (!eq(mul(x, a), one())) throw std::logic_error("CycField::inv failed");
  return x;
}

CycField::Elem CycField::pow(const Elem& a, long e) const {
  if (e < 0) return pow(inv(a), -e);
  Elem r = one(), b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

CycField::Elem CycField::galois(const Elem& a, long k) const {
  if (N_ <= 2) return a;
  Elem r = zero();
  for (int i = 0; i < deg_; ++i) {
    if (a[i] == 0) continue;
    r = add(r, scale(a[i], zeta_pow((long)i * k)));
  }
  return r;
}

int CycField::val_l(const Elem& a, int l) const {
  int v = INT32_MAX;
  for (const auto& c : a) {
    if (c == 0) continue;
    mpz_class num = c.get_num(), den = c.get_den();
    int vn = 0, vd = 0;
    while (num % l == 0) num /= l, ++vn;
    while (den % l == 0) den /= l, ++vd;
    v = std::min(v, vn - vd);
  }
  return v;
}

bool CycField::is_rational_integer(const Elem& a) const {
  for (const auto& c : a)
    if (c.get_den() != 1) return false;
  return true;
}

std::vector<u64> CycField::to_residues(const Elem& a, int l,
                                       int digits) const {
  mpz_class m = 1;
  for (int i = 0; i < digits; ++i) m *= l;
  std::vector<u64> out(deg_);
  for (int i = 0; i < deg_; ++i) {
    if (a[i].get_den() != 1)
      throw std::invalid_argument("to_residues: non-integral");
    mpz_class r = a[i].get_num() % m;
    if (r < 0) r += m;
    out[i] = r.get_ui();
  }
  return out;
}

CycField::Elem CycField::embed_from(const CycField& small,
                                    const Elem& a) const {
  if (N_ % small.N_ != 0)
    throw std::invalid_argument("embed_from: conductor mismatch");
  long step = N_ / small.N_;
  Elem r = zero();
  for (int i = 0; i < small.deg_; ++i) {
    if (a[i] == 0) continue;
    r = add(r, scale(a[i], zeta_pow(step * i)));
  }
  return r;
}

// ---- gamma algebra ----

GammaAlg GammaAlgCtx::zero() const {
  GammaAlg g;
  g.c.assign(gord, F->zero());
  return g;
}
GammaAlg GammaAlgCtx::one() const {
  GammaAlg g = zero();
  g.c[0] = F->one();
  return g;
}
GammaAlg GammaAlgCtx::scalar(const CycField::Elem& s) const {
  GammaAlg g = zero();
  g.c[0] = s;
  return g;
}
GammaAlg GammaAlgCtx::gamma_pow(int j) const {
  GammaAlg g = zero();
  int r = j % gord;
  if (r < 0) r += gord;
  g.c[r] = F->one();
  return g;
}
GammaAlg GammaAlgCtx::add(const GammaAlg& a, const GammaAlg& b) const {
  GammaAlg g;
  g.c.resize(gord);
  for (int i = 0; i < gord; ++i) g.c[i] = F->add(a.c[i], b.c[i]);
  return g;
}
GammaAlg GammaAlgCtx::sub(const GammaAlg& a, const GammaAlg& b) const {
  GammaAlg g;
  g.c.resize(gord);
  for (int i = 0; i < gord; ++i) g.c[i] = F->sub(a.c[i], b.c[i]);
  return g;
}
GammaAlg GammaAlgCtx::neg(const GammaAlg& a) const {
  GammaAlg g;
  g.c.resize(gord);
  for (int i = 0; i < gord; ++i) g.c[i] = F->neg(a.c[i]);
  return g;
}
GammaAlg GammaAlgCtx::mul(const GammaAlg& a, const GammaAlg& b) const {
  GammaAlg g = zero();
  for (int i = 0; i < gord; ++i) {
    if (F->is_zero(a.c[i])) continue;
    for (int j = 0; j < gord; ++j) {
      if (F->is_zero(b.c[j])) continue;
      int k = (i + j) % gord;
      g.c[k] = F->add(g.c[k], F->mul(a.c[i], b.c[j]));
    }
  }
  return g;
}
GammaAlg GammaAlgCtx::scale(const CycField::Elem& s, const GammaAlg& a) const {
  GammaAlg g;
  g.c.resize(gord);
  for (int i = 0; i < gord; ++i) g.c[i] = F->mul(s, a.c[i]);
  return g;
}
GammaAlg GammaAlgCtx::scale_q(const mpq_class& s, const GammaAlg& a) const {
  GammaAlg g;
  g.c.resize(gord);
  for (int i = 0; i < gord; ++i) g.c[i] = F->scale(s, a.c[i]);
  return g;
}
bool GammaAlgCtx::is_zero(const GammaAlg& a) const {
  for (const auto& c : a.c)
    if (!F->is_zero(c)) return false;
  return true;
}
bool GammaAlgCtx::eq(const GammaAlg& a, const GammaAlg& b) const {
  for (int i = 0; i < gord; ++i)
    if (!F->eq(a.c[i], b.c[i])) return false;
  return true;
}
int GammaAlgCtx::val_l(const GammaAlg& a, int l) const {
  int v = INT32_MAX;
  for (const auto& c : a.c) v = std::min(v, F->val_l(c, l));
  return v;
}
GammaAlg GammaAlgCtx::psi(const GammaAlg& a, int l) const {
  GammaAlg g = zero();
  for (int i = 0; i < gord; ++i) {
    int k = (int)(((long)i * l) % gord);
    g.c[k] = F->add(g.c[k], a.c[i]);
  }
  return g;
}
GammaAlg GammaAlgCtx::galois(const GammaAlg& a, long k) const {
  GammaAlg g;
  g.c.resize(gord);
  for (int i = 0; i < gord; ++i) g.c[i] = F->galois(a.c[i], k);
  return g;
}

GammaAlg GammaAlgCtx::inv(const GammaAlg& a) const {
  int n = gord;
  if (n == 1) {
    GammaAlg g;
    g.c = {F->inv(a.c[0])};
    return g;
  }
  // solve x * M = e with M the multiplication matrix over the field
  std::vector<std::vector<CycField::Elem>> A(
      n, std::vector<CycField::Elem>(n + 1, F->zero()));
  // column j of the system: sum_i x_i a_{(j - i) mod n} = delta_{j0}
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) A[j][i] = a.c[((j - i) % n + n) % n];
  A[0][n] = F->one();
  for (int col = 0, row = 0; col < n && row < n; ++col) {
    int p = -1;
    for (int i = row; i < n; ++i)
      if (!F->is_zero(A[i][col])) {
        p = i;
        break;
      }
    if (p < 0) throw std::invalid_argument("GammaAlg::inv: singular");
    std::swap(A[p], A[row]);
    CycField::Elem d = F->inv(A[row][col]);
    for (int j = col; j <= n; ++j) A[row][j] = F->mul(A[row][j], d);
    for (int i = 0; i < n; ++i) {
      if (i == row || F->is_zero(A[i][col])) continue;
      CycField::Elem f = A[i][col];
      for (int j = col; j <= n; ++j)
        A[i][j] = F->sub(A[i][j], F->mul(f, A[row][j]));
    }
    ++row;
  }
  GammaAlg x = zero();
  for (int i = 0; i < n; ++i) x.c[i] = A[i][n];
  if (!eq(mul(x, a), one()))
    throw std::logic_error("GammaAlg::inv verification failed");
  return x;
}

GammaAlg GammaAlgCtx::pow(const GammaAlg& a, long e) const {
  if (e < 0) return pow(inv(a), -e);
  GammaAlg r = one(), b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

}  // namespace gring
