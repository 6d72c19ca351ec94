#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gring {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Level parameters fixing the finite model: odd prime l, reported digits a,
// gamma-truncation exponent m, guard digits g (internal arithmetic runs at
// precision a+g, results are reported mod l^a).
struct LevelParams {
  int l = 3;
  int a = 2;
  int m = 0;
  int guard = 0;  // 0 = default policy: ceil(log_l(a)) + 2

  int effective_guard() const {
    if (guard > 0) return guard;
    int g = 2, p = 1;
    while (p < a) p *= l, ++g;
    return g;
  }
};

struct SizeBoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GuardExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline u64 pow_u64(u64 b, u64 e) {
  u64 r = 1;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

inline u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

inline int val_l(u64 x, int l) {
  if (x == 0) return INT32_MAX;
  int v = 0;
  while (x % (u64)l == 0) x /= (u64)l, ++v;
  return v;
}

// Deterministic seeded RNG (splitmix64); bounded draws use plain reduction so
// reports are byte-stable across platforms.
class Rng {
 public:
  explicit Rng(u64 seed) : s_(seed) {}
  u64 next() {
    u64 z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  u64 below(u64 n) { return n ? next() % n : 0; }

 private:
  u64 s_;
};

// Stable seed derivation for (config seed, check id, group id, trial).
inline u64 derive_seed(u64 base, const std::string& a, const std::string& b,
                       u64 k) {
  u64 h = 1469598103934665603ULL ^ base;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
    h = (h ^ 0xff) * 1099511628211ULL;
  };
  mix(a);
  mix(b);
  h ^= k + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h ? h : 0x6a09e667f3bcc908ULL;
}

}  // namespace gring
