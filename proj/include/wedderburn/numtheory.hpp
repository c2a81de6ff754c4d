#pragma once

// Elementary number theory shared by every other module: 64-bit primality
// and factorization, totients, multiplicative orders, divisor enumeration,
// and the gcd classification of index tuples into blocks.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wedderburn {

using u64 = std::uint64_t;

/// Index tuple (x_1,...,x_n); in-range means 0 <= x_i < m_i coordinatewise.
using IndexTuple = std::vector<u64>;

namespace detail {

using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(u128(a) * b % m);
}

inline u64 powmod(u64 a, u64 e, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

template <typename T>
std::string join(const std::vector<T>& v, const char* sep = ",") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << sep;
    os << v[i];
  }
  return os.str();
}

}  // namespace detail

/// Deterministic Miller-Rabin, exact for every 64-bit input.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
    if (n % p == 0) return n == p;
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // This witness set decides primality for all n < 2^64.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

// Pollard rho with Floyd cycle detection; n must be odd, composite, > 1.
inline u64 pollard_rho(u64 n) {
  for (u64 c = 1;; ++c) {
    auto step = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    u64 x = 2, y = 2, d = 1;
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

}  // namespace detail

/// Prime factorization with multiplicities, primes ascending.
inline std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: argument must be positive");
  std::vector<u64> primes;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull,
                41ull, 43ull, 47ull, 53ull, 59ull, 61ull, 67ull, 71ull, 73ull, 79ull, 83ull,
                89ull, 97ull}) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  std::vector<u64> pending;
  if (n > 1) pending.push_back(n);
  while (!pending.empty()) {
    u64 v = pending.back();
    pending.pop_back();
    if (is_prime(v)) {
      primes.push_back(v);
      continue;
    }
    u64 d = detail::pollard_rho(v);
    pending.push_back(d);
    pending.push_back(v / d);
  }
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 p : primes) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1u);
  }
  return out;
}

/// Euler totient.
inline u64 totient(u64 m) {
  if (m == 0) throw std::invalid_argument("totient: argument must be positive");
  u64 result = m;
  for (auto [p, e] : factorize(m)) result = result / p * (p - 1);
  return result;
}

/// All divisors of m, ascending, by trial division.
inline std::vector<u64> divisors_of(u64 m) {
  if (m == 0) throw std::invalid_argument("divisors_of: argument must be positive");
  std::vector<u64> small, large;
  for (u64 d = 1; d * d <= m; ++d) {
    if (m % d == 0) {
      small.push_back(d);
      if (d != m / d) large.push_back(m / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Multiplicative order of a modulo m. Requires gcd(a, m) = 1.
inline u64 mult_order(u64 a, u64 m) {
  if (m == 0) throw std::invalid_argument("mult_order: modulus must be positive");
  if (m == 1) return 1;
  a %= m;
  if (std::gcd(a, m) != 1)
    throw std::domain_error("mult_order: " + std::to_string(a) +
                            " is not invertible modulo " + std::to_string(m));
  u64 t = totient(m);
  for (auto [p, e] : factorize(t)) {
    while (t % p == 0 && detail::powmod(a, t / p, m) == 1) t /= p;
  }
  return t;
}

/// Tuple of per-coordinate moduli (m_1,...,m_n); every entry positive.
struct ModulusTuple {
  std::vector<u64> entries;

  ModulusTuple() = default;
  explicit ModulusTuple(std::vector<u64> e) : entries(std::move(e)) {
    if (entries.empty())
      throw std::invalid_argument("ModulusTuple: at least one modulus required");
    for (u64 v : entries)
      if (v == 0) throw std::invalid_argument("ModulusTuple: entries must be positive");
  }
  ModulusTuple(std::initializer_list<u64> e) : ModulusTuple(std::vector<u64>(e)) {}

  std::size_t size() const { return entries.size(); }
  u64 operator[](std::size_t i) const { return entries[i]; }
  friend bool operator==(const ModulusTuple&, const ModulusTuple&) = default;
};

/// Coordinatewise divisor tuple (d_1,...,d_n) of some ModulusTuple.
struct DivisorTuple {
  std::vector<u64> entries;

  DivisorTuple() = default;
  explicit DivisorTuple(std::vector<u64> e) : entries(std::move(e)) {}
  DivisorTuple(std::initializer_list<u64> e) : entries(e) {}

  std::size_t size() const { return entries.size(); }
  u64 operator[](std::size_t i) const { return entries[i]; }
  friend bool operator==(const DivisorTuple&, const DivisorTuple&) = default;
  friend bool operator<(const DivisorTuple& a, const DivisorTuple& b) {
    return a.entries < b.entries;
  }
};

/// Number of index tuples, i.e. the product of the moduli.
inline u64 tuple_count(const ModulusTuple& m) {
  detail::u128 prod = 1;
  for (u64 v : m.entries) {
    prod *= v;
    if (prod > (detail::u128(1) << 62))
      throw std::overflow_error("tuple_count: modulus product exceeds 2^62");
  }
  return static_cast<u64>(prod);
}

inline void check_in_range(const IndexTuple& x, const ModulusTuple& m, const char* who) {
  if (x.size() != m.size())
    throw std::invalid_argument(std::string(who) + ": tuple length " +
                                std::to_string(x.size()) + " does not match modulus length " +
                                std::to_string(m.size()));
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] >= m[i])
      throw std::invalid_argument(std::string(who) + ": coordinate " + std::to_string(i) +
                                  " out of range (" + std::to_string(x[i]) +
                                  " >= " + std::to_string(m[i]) + ")");
}

/// Row-major mixed-radix linearization; the first coordinate varies slowest,
/// so lexicographic tuple order coincides with linear index order.
inline u64 linear_index(const IndexTuple& x, const ModulusTuple& m) {
  check_in_range(x, m, "linear_index");
  u64 lin = 0;
  for (std::size_t i = 0; i < x.size(); ++i) lin = lin * m[i] + x[i];
  return lin;
}

inline IndexTuple index_from_linear(u64 lin, const ModulusTuple& m) {
  IndexTuple x(m.size());
  for (std::size_t i = m.size(); i-- > 0;) {
    x[i] = lin % m[i];
    lin /= m[i];
  }
  if (lin != 0)
    throw std::invalid_argument("index_from_linear: index out of range");
  return x;
}

/// Advance x to the lexicographically next tuple; returns false after the
/// last one. Start from the all-zero tuple.
inline bool next_tuple(IndexTuple& x, const ModulusTuple& m) {
  for (std::size_t i = x.size(); i-- > 0;) {
    if (++x[i] < m[i]) return true;
    x[i] = 0;
  }
  return false;
}

/// Blockwise classification d_i = gcd(x_i, m_i), with gcd(0, m) = m.
inline DivisorTuple classify(const IndexTuple& x, const ModulusTuple& m) {
  check_in_range(x, m, "classify");
  DivisorTuple d;
  d.entries.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d.entries[i] = std::gcd(x[i], m[i]);
  return d;
}

/// All coordinatewise divisor tuples of m, in lexicographic order.
inline std::vector<DivisorTuple> divisor_tuples(const ModulusTuple& m) {
  std::vector<std::vector<u64>> per_coord;
  per_coord.reserve(m.size());
  for (u64 v : m.entries) per_coord.push_back(divisors_of(v));
  std::vector<DivisorTuple> out;
  std::vector<std::size_t> idx(m.size(), 0);
  while (true) {
    DivisorTuple d;
    d.entries.resize(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) d.entries[i] = per_coord[i][idx[i]];
    out.push_back(std::move(d));
    std::size_t i = m.size();
    while (i-- > 0) {
      if (++idx[i] < per_coord[i].size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
  }
}

inline void check_divides(const DivisorTuple& d, const ModulusTuple& m, const char* who) {
  if (d.size() != m.size())
    throw std::invalid_argument(std::string(who) + ": divisor tuple length mismatch");
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] == 0 || m[i] % d[i] != 0)
      throw std::invalid_argument(std::string(who) + ": " + std::to_string(d[i]) +
                                  " does not divide " + std::to_string(m[i]));
}

/// Cardinality of the block with label d: product of totient(m_i / d_i).
inline u64 block_size(const DivisorTuple& d, const ModulusTuple& m) {
  check_divides(d, m, "block_size");
  u64 size = 1;
  for (std::size_t i = 0; i < d.size(); ++i) size *= totient(m[i] / d[i]);
  return size;
}

struct GaussIdentity {
  u64 m = 0;
  u64 sum = 0;  // sum of totient(d) over divisors d of m
  bool holds = false;
};

/// Check that the totients of the divisors of m sum to m.
inline GaussIdentity gauss_identity(u64 m) {
  if (m == 0) throw std::invalid_argument("gauss_identity: argument must be positive");
  GaussIdentity g;
  g.m = m;
  for (u64 d : divisors_of(m)) g.sum += totient(d);
  g.holds = (g.sum == m);
  return g;
}

struct PrimePower {
  u64 p = 0;
  unsigned exponent = 0;
};

/// Decompose q = p^s; rejects anything that is not a prime power >= 2.
inline PrimePower prime_power_of(u64 q) {
  if (q < 2) throw std::domain_error("prime power expected, got " + std::to_string(q));
  auto f = factorize(q);
  if (f.size() != 1)
    throw std::domain_error(std::to_string(q) + " is not a prime power");
  return {f[0].first, f[0].second};
}

}  // namespace wedderburn
