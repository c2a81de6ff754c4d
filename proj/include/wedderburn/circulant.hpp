#pragma once

// The circulant ring F_q[X_1,...,X_n]/(X_1^m_1 - 1, ..., X_n^m_n - 1):
// dense standard representatives (all partial degrees below the moduli),
// cyclic-convolution arithmetic, and the semisimplicity criterion
// gcd(m_i, char F_q) = 1.

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "errors.hpp"
#include "fields.hpp"
#include "numtheory.hpp"

namespace wedderburn {

inline constexpr u64 kDefaultSizeLimit = 1'000'000;

/// Ring parameters: moduli, base field size, and the coefficient-count guard
/// applied whenever a dense representative is materialized.
struct CircParams {
  ModulusTuple m;
  u64 q = 2;
  u64 size_limit = kDefaultSizeLimit;
};

/// Shared immutable context for the base field F_q = F_{p^s}. Memoized per q;
/// circulant coefficients are elements of this context.
inline const FieldCtx& base_field(u64 q) {
  static std::mutex mu;
  static std::map<u64, std::unique_ptr<const FieldCtx>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it == cache.end()) {
    PrimePower pp = prime_power_of(q);
    it = cache.emplace(q, std::make_unique<const FieldCtx>(make_field(pp.p, pp.exponent, 1)))
             .first;
  }
  return *it->second;
}

inline u64 checked_tuple_count(const ModulusTuple& m, u64 size_limit) {
  u64 count;
  try {
    count = tuple_count(m);
  } catch (const std::overflow_error&) {
    throw size_limit_error("modulus product overflows the supported range");
  }
  if (count > size_limit)
    throw size_limit_error("modulus product " + std::to_string(count) +
                           " exceeds the size limit " + std::to_string(size_limit));
  return count;
}

/// Element of the circulant ring in standard form: a dense row-major tensor
/// of base-field coefficients indexed by exponent tuples.
class CircElem {
 public:
  CircElem() = default;

  /// Zero element with the given shape.
  CircElem(ModulusTuple m, u64 q, u64 size_limit = kDefaultSizeLimit)
      : m_(std::move(m)), q_(q) {
    const u64 count = checked_tuple_count(m_, size_limit);
    coeffs_.assign(count, base_field(q_).zero());
  }

  const ModulusTuple& modulus() const { return m_; }
  u64 q() const { return q_; }
  std::size_t size() const { return coeffs_.size(); }

  const FieldElem& operator[](std::size_t lin) const { return coeffs_[lin]; }
  FieldElem& operator[](std::size_t lin) { return coeffs_[lin]; }

  const FieldElem& at(const IndexTuple& g) const { return coeffs_[linear_index(g, m_)]; }

  void set(const IndexTuple& g, FieldElem v) {
    if (v.c.size() != base_field(q_).s())
      throw std::invalid_argument("CircElem::set: coefficient has wrong base-field degree");
    for (u64& d : v.c) d %= base_field(q_).p();
    coeffs_[linear_index(g, m_)] = std::move(v);
  }

  friend bool operator==(const CircElem&, const CircElem&) = default;

 private:
  ModulusTuple m_;
  u64 q_ = 0;
  std::vector<FieldElem> coeffs_;
};

/// One monomial c * X^e with an arbitrary (not necessarily reduced)
/// non-negative exponent tuple.
struct RawTerm {
  std::vector<u64> exponents;
  FieldElem value;
};

/// Base-field scalar from its canonical code (digits base p, low first).
inline FieldElem scalar_from_code(u64 q, u64 code) {
  return base_field(q).element_from_code(code);
}

/// Reduce a sparse list of raw monomials to the standard representative:
/// exponents folded modulo m coordinatewise, coefficients accumulated.
inline CircElem reduce(const std::vector<RawTerm>& terms, const CircParams& params) {
  const FieldCtx& base = base_field(params.q);
  CircElem out(params.m, params.q, params.size_limit);
  const std::size_t n = params.m.size();
  for (const RawTerm& t : terms) {
    if (t.exponents.size() != n)
      throw std::invalid_argument("reduce: exponent tuple length mismatch");
    if (t.value.c.size() != base.s())
      throw std::invalid_argument("reduce: coefficient has wrong base-field degree");
    IndexTuple g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = t.exponents[i] % params.m[i];
    const u64 lin = linear_index(g, params.m);
    FieldElem v = t.value;
    for (u64& d : v.c) d %= base.p();
    out[lin] = base.add(out[lin], v);
  }
  return out;
}

/// Image of the group element g: the monomial X^g.
inline CircElem from_group_element(const IndexTuple& g, const CircParams& params) {
  check_in_range(g, params.m, "from_group_element");
  CircElem out(params.m, params.q, params.size_limit);
  out[linear_index(g, params.m)] = base_field(params.q).one();
  return out;
}

inline CircElem circ_zero(const CircParams& params) {
  return CircElem(params.m, params.q, params.size_limit);
}

inline CircElem circ_one(const CircParams& params) {
  return from_group_element(IndexTuple(params.m.size(), 0), params);
}

/// Maschke criterion: the ring is semisimple iff no modulus shares a factor
/// with the characteristic of F_q.
inline bool is_semisimple(const CircParams& params) {
  const u64 p = prime_power_of(params.q).p;
  for (u64 mi : params.m.entries)
    if (std::gcd(mi, p) != 1) return false;
  return true;
}

/// Throw non_semisimple_error (listing the offending moduli) unless the
/// parameters pass the Maschke criterion.
inline void require_semisimple(const ModulusTuple& m, u64 q) {
  const u64 p = prime_power_of(q).p;
  std::vector<u64> offending;
  for (u64 mi : m.entries)
    if (std::gcd(mi, p) != 1) offending.push_back(mi);
  if (!offending.empty())
    throw non_semisimple_error("circulant ring with moduli (" + detail::join(m.entries) +
                               ") over F_" + std::to_string(q) +
                               " is not semisimple: moduli {" + detail::join(offending) +
                               "} share a factor with the characteristic " + std::to_string(p));
}

namespace detail {

inline void check_same_ring(const CircElem& a, const CircElem& b, const char* who) {
  if (a.modulus() != b.modulus() || a.q() != b.q())
    throw std::invalid_argument(std::string(who) + ": operands live in different rings");
}

}  // namespace detail

inline CircElem add(const CircElem& a, const CircElem& b) {
  detail::check_same_ring(a, b, "add");
  const FieldCtx& base = base_field(a.q());
  CircElem out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = base.add(out[i], b[i]);
  return out;
}

inline CircElem sub(const CircElem& a, const CircElem& b) {
  detail::check_same_ring(a, b, "sub");
  const FieldCtx& base = base_field(a.q());
  CircElem out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = base.sub(out[i], b[i]);
  return out;
}

/// Cyclic convolution: the product of standard representatives, reduced.
inline CircElem mul(const CircElem& a, const CircElem& b) {
  detail::check_same_ring(a, b, "mul");
  const FieldCtx& base = base_field(a.q());
  const ModulusTuple& m = a.modulus();
  const std::size_t n = m.size();
  const std::size_t count = a.size();

  CircElem out(m, a.q(), kDefaultSizeLimit > count ? kDefaultSizeLimit : count);
  IndexTuple xa(n, 0);
  for (std::size_t i = 0; i < count; ++i) {
    if (!is_zero(a[i])) {
      IndexTuple xb(n, 0);
      for (std::size_t j = 0; j < count; ++j) {
        if (!is_zero(b[j])) {
          u64 lin = 0;
          for (std::size_t c = 0; c < n; ++c) {
            u64 sum = xa[c] + xb[c];
            if (sum >= m[c]) sum -= m[c];
            lin = lin * m[c] + sum;
          }
          out[lin] = base.add(out[lin], base.mul(a[i], b[j]));
        }
        next_tuple(xb, m);
      }
    }
    next_tuple(xa, m);
  }
  return out;
}

inline CircElem operator+(const CircElem& a, const CircElem& b) { return add(a, b); }
inline CircElem operator-(const CircElem& a, const CircElem& b) { return sub(a, b); }
inline CircElem operator*(const CircElem& a, const CircElem& b) { return mul(a, b); }

inline bool is_zero(const CircElem& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!is_zero(a[i])) return false;
  return true;
}

}  // namespace wedderburn
