#pragma once

// Exact arithmetic in finite extension fields F_p[t]/(f) with deterministic
// canonical choices: the defining polynomial is the lexicographically
// smallest monic irreducible of its degree, the generator is the first
// element (in code order) of full multiplicative order, and roots of unity
// are fixed powers of that generator. One context serves both the base
// field F_q = F_{p^s} (L = 1) and a splitting field K = F_{q^L}.

#include <algorithm>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "numtheory.hpp"

namespace wedderburn {

/// Field element: coefficients of the representative polynomial modulo the
/// context's defining polynomial, constant term first, each in [0, p).
struct FieldElem {
  std::vector<u64> c;
  friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

inline bool is_zero(const FieldElem& x) {
  return std::all_of(x.c.begin(), x.c.end(), [](u64 v) { return v == 0; });
}

namespace detail {

// Dense polynomials over F_p, constant term first. Used only during context
// construction (irreducibility scans); element arithmetic has its own
// fixed-degree fast path inside FieldCtx.

inline void poly_trim(std::vector<u64>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline u64 inv_mod_prime(u64 a, u64 p) { return powmod(a % p, p - 2, p); }

inline std::vector<u64> poly_mod(std::vector<u64> a, const std::vector<u64>& f, u64 p) {
  const std::size_t df = f.size() - 1;
  poly_trim(a);
  if (df == 0) return {};
  const u64 lc_inv = inv_mod_prime(f.back(), p);
  while (a.size() > df) {
    const u64 c = mulmod(a.back(), lc_inv, p);
    const std::size_t shift = a.size() - 1 - df;
    if (c != 0) {
      for (std::size_t j = 0; j + 1 < f.size(); ++j) {
        u64& t = a[shift + j];
        t = (t + p - mulmod(c, f[j] % p, p)) % p;
      }
    }
    a.pop_back();
    poly_trim(a);
  }
  return a;
}

inline std::vector<u64> poly_mulmod(const std::vector<u64>& a, const std::vector<u64>& b,
                                    const std::vector<u64>& f, u64 p) {
  if (a.empty() || b.empty()) return {};
  std::vector<u64> prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  return poly_mod(std::move(prod), f, p);
}

inline std::vector<u64> poly_powmod(std::vector<u64> base, u64 e, const std::vector<u64>& f,
                                    u64 p) {
  std::vector<u64> r{1};
  base = poly_mod(std::move(base), f, p);
  while (e > 0) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

inline std::vector<u64> poly_gcd(std::vector<u64> a, std::vector<u64> b, u64 p) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

// Rabin test: f of degree D is irreducible iff t^(p^D) = t mod f and for
// every prime r dividing D, gcd(t^(p^(D/r)) - t, f) is constant.
inline bool is_irreducible(const std::vector<u64>& f, u64 p) {
  const std::size_t D = f.size() - 1;
  if (D == 0) return false;
  if (D == 1) return true;
  const std::vector<u64> t{0, 1};
  auto frob_pow = [&](unsigned k) {
    // t^(p^k) mod f by k-fold p-th powering
    std::vector<u64> x = t;
    for (unsigned i = 0; i < k; ++i) x = poly_powmod(std::move(x), p, f, p);
    return x;
  };
  std::vector<u64> top = frob_pow(static_cast<unsigned>(D));
  poly_trim(top);
  if (top != t) return false;
  for (auto [r, e] : factorize(static_cast<u64>(D))) {
    std::vector<u64> x = frob_pow(static_cast<unsigned>(D / r));
    // x - t
    if (x.size() < 2) x.resize(2, 0);
    x[1] = (x[1] + p - 1) % p;
    auto g = poly_gcd(std::move(x), f, p);
    if (g.size() > 1) return false;
  }
  return true;
}

// Smallest monic irreducible of the given degree, ordered by the integer
// code sum(c_i p^i) of the non-leading coefficients.
inline std::vector<u64> smallest_irreducible(u64 p, unsigned degree) {
  std::vector<u64> f(degree + 1, 0);
  f[degree] = 1;
  while (true) {
    if (is_irreducible(f, p)) return f;
    // increment the coefficient vector as a base-p counter
    std::size_t i = 0;
    while (i < degree && ++f[i] == p) f[i++] = 0;
    if (i == degree)
      throw std::logic_error("smallest_irreducible: no irreducible found");
  }
}

}  // namespace detail

/// Context for F_{p^(s*L)} with the canonical defining polynomial, generator,
/// base-subfield embedding, and (after attach_evaluation) one root of unity
/// per modulus coordinate.
class FieldCtx {
 public:
  FieldCtx() = default;

  u64 p() const { return p_; }
  unsigned s() const { return s_; }
  unsigned ext_degree() const { return L_; }
  unsigned degree() const { return s_ * L_; }
  u64 q() const { return q_; }
  /// Order of the multiplicative group, p^(s*L) - 1.
  u64 group_order() const { return order_; }
  const std::vector<u64>& defining_poly() const { return modulus_; }
  const FieldElem& generator() const { return generator_; }
  const std::vector<u64>& base_poly() const { return base_poly_; }

  bool has_eval_data() const { return !zeta_.empty(); }
  const ModulusTuple& modulus_tuple() const { return m_; }
  const std::vector<FieldElem>& roots_of_unity() const { return zeta_; }

  FieldElem zero() const { return FieldElem{std::vector<u64>(degree(), 0)}; }

  FieldElem one() const {
    FieldElem x = zero();
    x.c[0] = 1;
    return x;
  }

  FieldElem from_prime(u64 v) const {
    FieldElem x = zero();
    x.c[0] = v % p_;
    return x;
  }

  /// Element whose coefficient vector is the base-p digits of code.
  FieldElem element_from_code(u64 code) const {
    FieldElem x = zero();
    for (unsigned i = 0; i < degree() && code > 0; ++i) {
      x.c[i] = code % p_;
      code /= p_;
    }
    if (code > 0) throw std::invalid_argument("element_from_code: code out of range");
    return x;
  }

  u64 code_of(const FieldElem& x) const {
    u64 code = 0;
    for (unsigned i = degree(); i-- > 0;) code = code * p_ + x.c[i];
    return code;
  }

  FieldElem add(const FieldElem& a, const FieldElem& b) const {
    check(a);
    check(b);
    FieldElem r = a;
    for (unsigned i = 0; i < degree(); ++i) r.c[i] = (r.c[i] + b.c[i]) % p_;
    return r;
  }

  FieldElem neg(const FieldElem& a) const {
    check(a);
    FieldElem r = a;
    for (unsigned i = 0; i < degree(); ++i) r.c[i] = (p_ - r.c[i]) % p_;
    return r;
  }

  FieldElem sub(const FieldElem& a, const FieldElem& b) const { return add(a, neg(b)); }

  FieldElem scalar_mul(u64 c, const FieldElem& a) const {
    check(a);
    c %= p_;
    FieldElem r = a;
    for (unsigned i = 0; i < degree(); ++i) r.c[i] = detail::mulmod(r.c[i], c, p_);
    return r;
  }

  // Schoolbook convolution with deferred reduction; the p < 2^20 and
  // degree <= 4096 construction guards keep every accumulator below 2^63.
  FieldElem mul(const FieldElem& a, const FieldElem& b) const {
    check(a);
    check(b);
    const unsigned D = degree();
    if (D == 1) return FieldElem{{detail::mulmod(a.c[0], b.c[0], p_)}};
    std::vector<u64> buf(2 * D - 1, 0);
    for (unsigned i = 0; i < D; ++i) {
      const u64 ai = a.c[i];
      if (ai == 0) continue;
      for (unsigned j = 0; j < D; ++j) buf[i + j] += ai * b.c[j];
    }
    for (unsigned k = 2 * D - 2; k >= D; --k) {
      const u64 c = buf[k] % p_;
      if (c != 0) {
        const unsigned base = k - D;
        for (unsigned j = 0; j < D; ++j) buf[base + j] += c * neg_modulus_[j];
      }
    }
    FieldElem r = zero();
    for (unsigned i = 0; i < D; ++i) r.c[i] = buf[i] % p_;
    return r;
  }

  FieldElem pow(FieldElem a, u64 e) const {
    FieldElem r = one();
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  FieldElem inv(const FieldElem& a) const {
    if (is_zero(a)) throw std::domain_error("inv: division by zero");
    return pow(a, order_ - 1);
  }

  /// Frobenius of the base field: x -> x^q.
  FieldElem frobenius(const FieldElem& x) const { return pow(x, q_); }

  /// k-fold Frobenius: x -> x^(q^k).
  FieldElem frobenius_iter(FieldElem x, u64 k) const {
    for (u64 i = 0; i < k % (L_ == 0 ? 1 : L_); ++i) x = frobenius(x);
    return x;
  }

  /// Embed a base-field scalar (length-s coefficient vector over F_p) by
  /// evaluating it at the canonical root of the base polynomial.
  FieldElem embed_base(const FieldElem& scalar) const {
    if (scalar.c.size() != s_)
      throw std::invalid_argument("embed_base: scalar has wrong length");
    FieldElem r = zero();
    for (unsigned j = 0; j < s_; ++j)
      if (scalar.c[j] != 0) r = add(r, scalar_mul(scalar.c[j], base_root_powers_[j]));
    return r;
  }

  /// Express x in the embedded base field, if possible: the unique scalar c
  /// with embed_base(c) = x, or nullopt when x is not F_q-rational.
  std::optional<FieldElem> project_base(const FieldElem& x) const {
    check(x);
    const unsigned D = degree();
    // Gaussian elimination on the D x (s+1) system whose columns are the
    // powers of the canonical base root.
    std::vector<std::vector<u64>> M(D, std::vector<u64>(s_ + 1, 0));
    for (unsigned r = 0; r < D; ++r) {
      for (unsigned cidx = 0; cidx < s_; ++cidx) M[r][cidx] = base_root_powers_[cidx].c[r];
      M[r][s_] = x.c[r];
    }
    std::vector<int> pivot_row(s_, -1);
    unsigned rank = 0;
    for (unsigned col = 0; col < s_ && rank < D; ++col) {
      unsigned sel = rank;
      while (sel < D && M[sel][col] == 0) ++sel;
      if (sel == D) continue;
      std::swap(M[sel], M[rank]);
      const u64 inv_p = detail::inv_mod_prime(M[rank][col], p_);
      for (unsigned c2 = col; c2 <= s_; ++c2) M[rank][c2] = detail::mulmod(M[rank][c2], inv_p, p_);
      for (unsigned r2 = 0; r2 < D; ++r2) {
        if (r2 == rank || M[r2][col] == 0) continue;
        const u64 f = M[r2][col];
        for (unsigned c2 = col; c2 <= s_; ++c2)
          M[r2][c2] = (M[r2][c2] + p_ - detail::mulmod(f, M[rank][c2], p_)) % p_;
      }
      pivot_row[col] = static_cast<int>(rank);
      ++rank;
    }
    for (unsigned r = rank; r < D; ++r)
      if (M[r][s_] != 0) return std::nullopt;
    FieldElem scalar{std::vector<u64>(s_, 0)};
    for (unsigned col = 0; col < s_; ++col)
      if (pivot_row[col] >= 0) scalar.c[col] = M[pivot_row[col]][s_];
    return scalar;
  }

  /// Attach evaluation data for the moduli m: one root of unity of exact
  /// order m_i per coordinate. Requires every m_i to divide the group order.
  void attach_evaluation(const ModulusTuple& m);

 private:
  void check(const FieldElem& x) const {
    if (x.c.size() != degree())
      throw std::invalid_argument("field element has degree " + std::to_string(x.c.size()) +
                                  ", context expects " + std::to_string(degree()));
  }

  u64 p_ = 0;
  unsigned s_ = 0;
  unsigned L_ = 0;
  u64 q_ = 0;
  u64 order_ = 0;
  std::vector<u64> modulus_;       // monic, degree s*L
  std::vector<u64> neg_modulus_;   // (p - c_j) % p for the non-leading coefficients
  FieldElem generator_;
  std::vector<u64> base_poly_;     // canonical degree-s irreducible defining F_q
  std::vector<FieldElem> base_root_powers_;  // rho^0 .. rho^(s-1), rho = canonical root
  ModulusTuple m_;
  std::vector<FieldElem> zeta_;

  friend FieldCtx make_field(u64 p, unsigned s, unsigned L);
};

/// Canonical root of unity of exact order m: generator^(group_order / m).
/// Errors when m does not divide q^L - 1 (wrong splitting degree).
inline FieldElem primitive_root(u64 m, const FieldCtx& ctx) {
  if (m == 0) throw std::invalid_argument("primitive_root: order must be positive");
  if (ctx.group_order() % m != 0)
    throw std::domain_error("primitive_root: " + std::to_string(m) +
                            " does not divide the group order " +
                            std::to_string(ctx.group_order()));
  return ctx.pow(ctx.generator(), ctx.group_order() / m);
}

/// True when x lies in the degree-ell subfield over F_q, i.e. x^(q^ell) = x.
inline bool in_subfield(const FieldElem& x, unsigned ell, const FieldCtx& ctx) {
  if (ell == 0 || ctx.ext_degree() % ell != 0)
    throw std::invalid_argument("in_subfield: ell must divide the extension degree");
  FieldElem y = x;
  for (unsigned i = 0; i < ell; ++i) y = ctx.frobenius(y);
  return y == x;
}

inline FieldElem frobenius_q(const FieldElem& x, const FieldCtx& ctx) {
  return ctx.frobenius(x);
}

/// Build the canonical context for F_{p^(s*L)}. Deterministic: a fixed
/// (p, s, L) always yields the same polynomial, generator, and embedding.
inline FieldCtx make_field(u64 p, unsigned s, unsigned L) {
  if (!is_prime(p)) throw std::domain_error("make_field: " + std::to_string(p) + " is not prime");
  if (s == 0 || L == 0) throw std::invalid_argument("make_field: degrees must be positive");
  if (p >= (1ull << 20))
    throw size_limit_error("make_field: characteristic " + std::to_string(p) +
                           " exceeds the supported bound 2^20");
  const u64 D64 = static_cast<u64>(s) * L;
  if (D64 > 4096)
    throw size_limit_error("make_field: extension degree " + std::to_string(D64) +
                           " exceeds the supported bound 4096");
  const unsigned D = static_cast<unsigned>(D64);

  detail::u128 size = 1;
  for (unsigned i = 0; i < D; ++i) {
    size *= p;
    if (size > (detail::u128(1) << 62))
      throw size_limit_error("make_field: field size p^(s*L) exceeds the supported bound 2^62");
  }

  FieldCtx ctx;
  ctx.p_ = p;
  ctx.s_ = s;
  ctx.L_ = L;
  ctx.order_ = static_cast<u64>(size) - 1;

  detail::u128 qv = 1;
  for (unsigned i = 0; i < s; ++i) qv *= p;
  ctx.q_ = static_cast<u64>(qv);
  if (ctx.q_ > (1ull << 20))
    throw size_limit_error("make_field: base field size " + std::to_string(ctx.q_) +
                           " exceeds the supported bound 2^20");

  ctx.modulus_ = detail::smallest_irreducible(p, D);
  ctx.neg_modulus_.resize(D);
  for (unsigned j = 0; j < D; ++j) ctx.neg_modulus_[j] = (p - ctx.modulus_[j] % p) % p;
  ctx.base_poly_ = (s == D) ? ctx.modulus_ : detail::smallest_irreducible(p, s);

  // Generator: first element in code order with full multiplicative order.
  const auto order_primes = factorize(ctx.order_ == 0 ? 1 : ctx.order_);
  for (u64 code = 1;; ++code) {
    FieldElem cand = ctx.element_from_code(code);
    bool ok = true;
    if (ctx.order_ > 1) {
      for (auto [r, e] : order_primes) {
        if (ctx.pow(cand, ctx.order_ / r) == ctx.one()) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      ctx.generator_ = std::move(cand);
      break;
    }
    if (code > ctx.order_) throw std::logic_error("make_field: no generator found");
  }

  ctx.base_root_powers_.resize(s);
  if (s == D) {
    // L = 1: the base polynomial is the defining polynomial, its canonical
    // (smallest-code) root in K is the class of t itself, and the embedding
    // is the identity on coefficient vectors.
    for (unsigned j = 0; j < s; ++j) {
      FieldElem e = ctx.zero();
      e.c[j] = 1;
      ctx.base_root_powers_[j] = std::move(e);
    }
  } else {
    // Canonical root of the base polynomial inside K. Every root lies in the
    // F_q-subfield: zero plus the powers of generator^((p^D-1)/(q-1)).
    std::vector<FieldElem> roots;
    auto consider = [&](const FieldElem& cand) {
      FieldElem acc = ctx.zero();
      for (std::size_t k = ctx.base_poly_.size(); k-- > 0;) {
        acc = ctx.mul(acc, cand);
        acc = ctx.add(acc, ctx.from_prime(ctx.base_poly_[k]));
      }
      if (is_zero(acc)) roots.push_back(cand);
    };
    consider(ctx.zero());
    const FieldElem w = ctx.pow(ctx.generator_, ctx.order_ / (ctx.q_ - 1));
    FieldElem cur = ctx.one();
    for (u64 i = 0; i + 1 < ctx.q_; ++i) {
      consider(cur);
      cur = ctx.mul(cur, w);
    }
    if (roots.empty())
      throw std::logic_error("make_field: base polynomial has no subfield root");
    const FieldElem rho = *std::min_element(
        roots.begin(), roots.end(),
        [&](const FieldElem& a, const FieldElem& b) { return ctx.code_of(a) < ctx.code_of(b); });
    ctx.base_root_powers_[0] = ctx.one();
    for (unsigned j = 1; j < s; ++j)
      ctx.base_root_powers_[j] = ctx.mul(ctx.base_root_powers_[j - 1], rho);
  }

  return ctx;
}

inline void FieldCtx::attach_evaluation(const ModulusTuple& m) {
  std::vector<FieldElem> zs;
  zs.reserve(m.size());
  for (u64 mi : m.entries) {
    FieldElem z = primitive_root(mi, *this);
    // exact-order check: z^(m_i/r) != 1 for every prime r | m_i
    if (mi > 1) {
      for (auto [r, e] : factorize(mi)) {
        if (pow(z, mi / r) == one())
          throw std::logic_error("attach_evaluation: root of unity has deficient order");
      }
    }
    zs.push_back(std::move(z));
  }
  m_ = m;
  zeta_ = std::move(zs);
}

}  // namespace wedderburn
