#include "fibgcd/arith.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

namespace fibgcd {

namespace {

u64 add_mod(u64 a, u64 b, u64 m) {
  // a, b < m <= 2^63, so a + b cannot wrap u64.
  u64 s = a + b;
  if (s >= m) s -= m;
  return s;
}

u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

void require_natural(u64 n, const char* what) {
  if (n == 0 || n > kNaturalMax) {
    throw std::domain_error(std::string(what) + " must be in [1, 2^63)");
  }
}

u64 splitmix64(u64& state) {
  u64 z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// One Brent-rho attempt on odd composite n; 0 means the cycle degenerated
// and the caller should retry with fresh parameters.
u64 brent_rho(u64 n, u64 y0, u64 c) {
  u64 y = y0 % n, r = 1, q = 1, g = 1, x = 0, ys = 0;
  const u64 step = 128;
  auto f = [&](u64 v) { return add_mod(mul_mod(v, v, n), c, n); };
  while (g == 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    for (u64 k = 0; k < r && g == 1; k += step) {
      ys = y;
      const u64 lim = std::min(step, r - k);
      for (u64 i = 0; i < lim; ++i) {
        y = f(y);
        q = mul_mod(q, x > y ? x - y : y - x, n);
      }
      g = std::gcd(q, n);
    }
    r <<= 1;
  }
  if (g == n) {
    // backtrack one step at a time
    do {
      ys = f(ys);
      g = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g == n ? 0 : g;
}

void factor_recursive(u64 n, std::vector<u64>& out, u64 rho_state,
                      int& budget) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = 0;
  while (d == 0) {
    if (budget <= 0) {
      throw FactorizationError("factorize: rho budget exhausted at cofactor " +
                               std::to_string(n));
    }
    --budget;
    const u64 y0 = splitmix64(rho_state) % (n - 2) + 1;
    const u64 c = splitmix64(rho_state) % (n - 1) + 1;
    d = brent_rho(n, y0, c);
  }
  factor_recursive(d, out, splitmix64(rho_state), budget);
  factor_recursive(n / d, out, splitmix64(rho_state), budget);
}

}  // namespace

FibPair fib_pair_mod(u64 k, u64 m) {
  require_natural(m, "fib_pair_mod: modulus");
  // Doubling identities: F_{2j} = F_j (2 F_{j+1} - F_j),
  //                      F_{2j+1} = F_j^2 + F_{j+1}^2.
  u64 a = 0;      // F_0
  u64 b = 1 % m;  // F_1
  for (int bit = 63 - std::countl_zero(k | 1); bit >= 0; --bit) {
    const u64 c = mul_mod(a, sub_mod(add_mod(b, b, m), a, m), m);
    const u64 d = add_mod(mul_mod(a, a, m), mul_mod(b, b, m), m);
    if ((k >> bit) & 1) {
      a = d;
      b = add_mod(c, d, m);
    } else {
      a = c;
      b = d;
    }
  }
  return FibPair{k, m, a, b};
}

u64 gcd(u64 a, u64 b) {
  if (a == 0 && b == 0) {
    throw std::domain_error("gcd(0, 0) is undefined");
  }
  return std::gcd(a, b);
}

u64 lcm_checked(u64 a, u64 b) {
  require_natural(a, "lcm_checked: a");
  require_natural(b, "lcm_checked: b");
  const u128 l = u128(a / std::gcd(a, b)) * b;
  if (l > kNaturalMax) {
    throw OverflowError("lcm(" + std::to_string(a) + ", " + std::to_string(b) +
                        ") exceeds 2^63 - 1");
  }
  return static_cast<u64>(l);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  // Deterministic for all n < 3.3 * 10^24 with this witness set.
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r && witness; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) witness = false;
    }
    if (witness) return false;
  }
  return true;
}

SpfTable::SpfTable(u64 limit, u64 limit_cap) : limit_(limit) {
  if (limit < 2) throw std::domain_error("SpfTable: limit must be >= 2");
  if (limit > limit_cap || limit > kNaturalMax) {
    throw std::invalid_argument("SpfTable: limit exceeds the memory cap");
  }
  spf_.assign(limit + 1, 0);
  std::vector<u32> primes;
  // Linear sieve: each composite is crossed off exactly once, by its
  // smallest prime factor.
  for (u64 i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<u32>(i);
      primes.push_back(static_cast<u32>(i));
    }
    for (u32 p : primes) {
      if (p > spf_[i] || u64(p) * i > limit) break;
      spf_[p * i] = p;
    }
  }
}

SpfTable sieve_spf(u64 limit, u64 limit_cap) { return SpfTable(limit, limit_cap); }

Factorization factorize(u64 n, const SpfTable* spf, const FactorConfig& cfg) {
  require_natural(n, "factorize: n");
  Factorization result;
  result.n = n;
  if (n == 1) return result;

  std::vector<u64> primes;
  u64 rest = n;
  if (spf != nullptr && n <= spf->limit()) {
    while (rest > 1) {
      const u64 p = spf->spf(rest);
      primes.push_back(p);
      rest /= p;
    }
  } else {
    while ((rest & 1) == 0) {
      primes.push_back(2);
      rest >>= 1;
    }
    for (u64 d = 3; d <= 9973 && d * d <= rest; d += 2) {
      while (rest % d == 0) {
        primes.push_back(d);
        rest /= d;
      }
    }
    if (rest > 1) {
      int budget = cfg.rho_budget;
      // Derive the rho stream from (seed, n) so a given n always factors
      // the same way no matter who asks first.
      u64 state = cfg.seed ^ (n * 0xff51afd7ed558ccdull);
      factor_recursive(rest, primes, splitmix64(state), budget);
    }
  }

  std::sort(primes.begin(), primes.end());
  for (u64 p : primes) {
    if (!result.factors.empty() && result.factors.back().prime == p) {
      ++result.factors.back().exponent;
    } else {
      result.factors.push_back(PrimePower{p, 1});
    }
  }
  return result;
}

std::vector<u64> primes_up_to(u64 limit, u64 limit_cap) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  if (limit > limit_cap || limit > kNaturalMax) {
    throw std::invalid_argument("primes_up_to: limit exceeds the memory cap");
  }
  primes.push_back(2);
  if (limit < 3) return primes;
  // Odd-only sieve: bit i represents 2i + 3.
  const u64 half = (limit - 1) / 2;  // count of odd numbers in [3, limit]
  std::vector<bool> composite(half, false);
  for (u64 i = 0;; ++i) {
    const u64 p = 2 * i + 3;
    if (p * p > limit) break;
    if (composite[i]) continue;
    for (u64 j = (p * p - 3) / 2; j < half; j += p) composite[j] = true;
  }
  for (u64 i = 0; i < half; ++i) {
    if (!composite[i]) primes.push_back(2 * i + 3);
  }
  return primes;
}

}  // namespace fibgcd
