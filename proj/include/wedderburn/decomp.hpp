#pragma once

// The Wedderburn decomposition of a semisimple circulant ring: evaluation
// at points of the character group, the forward/inverse isomorphism between
// the ring and its spectrum, primitive orthogonal idempotents, and the
// per-block component plan F_{q^length}^count.

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "circulant.hpp"
#include "errors.hpp"
#include "fields.hpp"
#include "numtheory.hpp"
#include "orbits.hpp"

namespace wedderburn {

/// Degree of the splitting field: lcm of the orders of q modulo each m_i.
inline u64 splitting_degree(const ModulusTuple& m, u64 q) {
  require_semisimple(m, q);
  u64 L = 1;
  for (u64 mi : m.entries) L = std::lcm(L, mult_order(q, mi));
  return L;
}

/// Splitting-field context for the given ring: K = F_{q^L} with roots of
/// unity of exact order m_i attached.
inline FieldCtx make_context(const ModulusTuple& m, u64 q) {
  require_semisimple(m, q);
  const PrimePower pp = prime_power_of(q);
  const u64 L = splitting_degree(m, q);
  if (L > 4096)
    throw size_limit_error("make_context: splitting degree " + std::to_string(L) +
                           " exceeds the supported bound 4096");
  FieldCtx ctx = make_field(pp.p, pp.exponent, static_cast<unsigned>(L));
  ctx.attach_evaluation(m);
  return ctx;
}

namespace detail {

inline void check_eval_ctx(const CircElem& f, const FieldCtx& ctx, const char* who) {
  if (!ctx.has_eval_data())
    throw std::invalid_argument(std::string(who) + ": context carries no evaluation data");
  if (f.modulus() != ctx.modulus_tuple() || f.q() != ctx.q())
    throw std::invalid_argument(std::string(who) + ": element does not match the context ring");
}

// Power tables T[i][j] = base_i^j for j in [0, m_i); base_i given per coordinate.
inline std::vector<std::vector<FieldElem>> power_tables(const std::vector<FieldElem>& bases,
                                                        const ModulusTuple& m,
                                                        const FieldCtx& ctx) {
  std::vector<std::vector<FieldElem>> T(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    T[i].resize(m[i]);
    T[i][0] = ctx.one();
    for (u64 j = 1; j < m[i]; ++j) T[i][j] = ctx.mul(T[i][j - 1], bases[i]);
  }
  return T;
}

// Tables of inverse powers: T[i][j] = zeta_i^(-j).
inline std::vector<std::vector<FieldElem>> inverse_root_tables(const FieldCtx& ctx) {
  const ModulusTuple& m = ctx.modulus_tuple();
  std::vector<FieldElem> inv_roots(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    inv_roots[i] = ctx.pow(ctx.roots_of_unity()[i], m[i] - 1);
  return power_tables(inv_roots, m, ctx);
}

// Scalar (prod m_i)^(-1) of the inverse transform, as a prime-field constant.
inline u64 transform_scale(const ModulusTuple& m, const FieldCtx& ctx) {
  const u64 p = ctx.p();
  u64 c = 1;
  for (u64 mi : m.entries) c = mulmod(c, mi % p, p);
  return powmod(c, p - 2, p);
}

}  // namespace detail

/// Evaluate f at the point (zeta_1^{x_1}, ..., zeta_n^{x_n}) of the
/// character variety. O(prod m_i) field multiplications.
inline FieldElem evaluate(const CircElem& f, const IndexTuple& x, const FieldCtx& ctx) {
  detail::check_eval_ctx(f, ctx, "evaluate");
  const ModulusTuple& m = ctx.modulus_tuple();
  check_in_range(x, m, "evaluate");
  const std::size_t n = m.size();

  // T[i][j] = zeta_i^{x_i * j}
  std::vector<FieldElem> bases(n);
  for (std::size_t i = 0; i < n; ++i) bases[i] = ctx.pow(ctx.roots_of_unity()[i], x[i]);
  const auto T = detail::power_tables(bases, m, ctx);

  FieldElem acc = ctx.zero();
  std::vector<FieldElem> prefix(n + 1);
  prefix[0] = ctx.one();
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i];
  IndexTuple g(n, 0);
  u64 lin = 0;
  while (true) {
    const FieldElem& sc = f[lin];
    if (!is_zero(sc)) acc = ctx.add(acc, ctx.mul(ctx.embed_base(sc), prefix[n]));
    std::size_t changed = n;
    {
      std::size_t i = n;
      while (i-- > 0) {
        if (++g[i] < m[i]) {
          changed = i;
          break;
        }
        g[i] = 0;
      }
    }
    if (changed == n) break;
    for (std::size_t k = changed; k < n; ++k) prefix[k + 1] = ctx.mul(prefix[k], T[k][g[k]]);
    ++lin;
  }
  return acc;
}

/// Spectrum of a ring element: one splitting-field value per orbit
/// representative, aligned with table->representatives.
struct SpectralVector {
  std::shared_ptr<const OrbitTable> table;
  std::vector<FieldElem> values;
};

/// Forward isomorphism: evaluate at every orbit representative.
inline SpectralVector encode(const CircElem& f, std::shared_ptr<const OrbitTable> table,
                             const FieldCtx& ctx) {
  if (!table) throw std::invalid_argument("encode: null orbit table");
  detail::check_eval_ctx(f, ctx, "encode");
  if (table->m != ctx.modulus_tuple() || table->q != ctx.q())
    throw std::invalid_argument("encode: orbit table does not match the context ring");
  SpectralVector v;
  v.values.reserve(table->representatives.size());
  for (const IndexTuple& rep : table->representatives) v.values.push_back(evaluate(f, rep, ctx));
  v.table = std::move(table);
  return v;
}

/// Inverse isomorphism. Validates that each value lies in the subfield
/// F_{q^length} of its component (spectrum_error otherwise), extends the
/// spectrum Frobenius-equivariantly to every point, then applies the inverse
/// transform coeff_g = (prod m_i)^{-1} sum_x V(x) prod_i zeta_i^{-x_i g_i}
/// and projects every coefficient back to F_q.
inline CircElem decode(const SpectralVector& v, const FieldCtx& ctx) {
  if (!v.table) throw std::invalid_argument("decode: null orbit table");
  const OrbitTable& table = *v.table;
  if (!ctx.has_eval_data())
    throw std::invalid_argument("decode: context carries no evaluation data");
  if (table.m != ctx.modulus_tuple() || table.q != ctx.q())
    throw std::invalid_argument("decode: orbit table does not match the context ring");
  if (v.values.size() != table.representatives.size())
    throw std::invalid_argument("decode: expected " +
                                std::to_string(table.representatives.size()) + " values, got " +
                                std::to_string(v.values.size()));
  const ModulusTuple& m = table.m;
  const std::size_t n = m.size();
  const u64 count = tuple_count(m);
  const IndexTuple qv = q_vector(m, table.q);

  // Subfield validation and equivariant extension V(x * q^t) = value^(q^t).
  std::vector<FieldElem> V(count, ctx.zero());
  std::size_t vi = 0;
  for (const BlockOrbits& b : table.blocks) {
    for (const Orbit& o : b.orbits) {
      const FieldElem& val = v.values[vi++];
      if (val.c.size() != ctx.degree())
        throw std::invalid_argument("decode: value has wrong field degree");
      if (ctx.frobenius_iter(val, o.length) != val)
        throw spectrum_error("value at representative (" + detail::join(o.representative) +
                             ") lies outside its component subfield F_" +
                             std::to_string(table.q) + "^" + std::to_string(o.length));
      IndexTuple x = o.representative;
      FieldElem w = val;
      for (u64 t = 0; t < o.length; ++t) {
        V[linear_index(x, m)] = w;
        x = detail::act_once(x, qv, m);
        w = ctx.frobenius(w);
      }
    }
  }

  const auto Tneg = detail::inverse_root_tables(ctx);
  const u64 scale = detail::transform_scale(m, ctx);

  CircElem out(m, table.q, count);
  IndexTuple g(n, 0);
  std::vector<FieldElem> prefix(n + 1);
  for (u64 glin = 0; glin < count; ++glin, next_tuple(g, m)) {
    FieldElem acc = ctx.zero();
    for (std::size_t k = 0; k <= n; ++k) prefix[k] = ctx.one();  // x = 0
    IndexTuple x(n, 0);
    u64 xlin = 0;
    while (true) {
      acc = ctx.add(acc, ctx.mul(V[xlin], prefix[n]));
      std::size_t changed = n;
      {
        std::size_t i = n;
        while (i-- > 0) {
          if (++x[i] < m[i]) {
            changed = i;
            break;
          }
          x[i] = 0;
        }
      }
      if (changed == n) break;
      for (std::size_t k = changed; k < n; ++k)
        prefix[k + 1] = ctx.mul(prefix[k], Tneg[k][detail::mulmod(x[k], g[k], m[k])]);
      ++xlin;
    }
    acc = ctx.scalar_mul(scale, acc);
    auto sc = ctx.project_base(acc);
    if (!sc)
      throw spectrum_error("recovered coefficient at exponent (" + detail::join(g) +
                           ") is not rational over F_" + std::to_string(table.q));
    out[glin] = std::move(*sc);
  }
  return out;
}

/// The primitive orthogonal idempotents, one per orbit, aligned with
/// table->representatives. Each equals decode of the indicator spectrum of
/// its orbit; computed directly as an orbit-restricted inverse transform.
struct IdempotentSystem {
  std::shared_ptr<const OrbitTable> table;
  std::vector<CircElem> idempotents;
};

inline IdempotentSystem idempotent_system(std::shared_ptr<const OrbitTable> table,
                                          const FieldCtx& ctx) {
  if (!table) throw std::invalid_argument("idempotent_system: null orbit table");
  if (!ctx.has_eval_data())
    throw std::invalid_argument("idempotent_system: context carries no evaluation data");
  if (table->m != ctx.modulus_tuple() || table->q != ctx.q())
    throw std::invalid_argument("idempotent_system: orbit table does not match the context ring");
  const ModulusTuple& m = table->m;
  const std::size_t n = m.size();
  const u64 count = tuple_count(m);
  const auto Tneg = detail::inverse_root_tables(ctx);
  const u64 scale = detail::transform_scale(m, ctx);

  IdempotentSystem sys;
  sys.table = table;
  for (const BlockOrbits& b : table->blocks) {
    for (const Orbit& o : b.orbits) {
      CircElem e(m, table->q, count);
      IndexTuple g(n, 0);
      for (u64 glin = 0; glin < count; ++glin, next_tuple(g, m)) {
        FieldElem acc = ctx.zero();
        for (const IndexTuple& x : o.members) {
          FieldElem term = Tneg[0][detail::mulmod(x[0], g[0], m[0])];
          for (std::size_t i = 1; i < n; ++i)
            term = ctx.mul(term, Tneg[i][detail::mulmod(x[i], g[i], m[i])]);
          acc = ctx.add(acc, term);
        }
        acc = ctx.scalar_mul(scale, acc);
        auto sc = ctx.project_base(acc);
        if (!sc)
          throw std::logic_error("idempotent_system: coefficient not rational over F_q");
        e[glin] = std::move(*sc);
      }
      sys.idempotents.push_back(std::move(e));
    }
  }
  return sys;
}

struct IdempotentReport {
  bool idempotent = true;   // e*e = e for each member
  bool orthogonal = true;   // e_i * e_j = 0 for i != j
  bool complete = true;     // sum of all members = 1
  bool passed() const { return idempotent && orthogonal && complete; }
};

/// Verify the defining properties of an idempotent system by direct ring
/// arithmetic. O(R^2) ring multiplications.
inline IdempotentReport check_idempotent_system(const IdempotentSystem& sys,
                                                const CircParams& params) {
  IdempotentReport rep;
  const auto& es = sys.idempotents;
  for (const CircElem& e : es)
    if (mul(e, e) != e) rep.idempotent = false;
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = i + 1; j < es.size(); ++j)
      if (!is_zero(mul(es[i], es[j]))) rep.orthogonal = false;
  const u64 lim = std::max(params.size_limit, tuple_count(params.m));
  const CircParams loose{params.m, params.q, lim};
  CircElem sum = circ_zero(loose);
  for (const CircElem& e : es) sum = add(sum, e);
  if (sum != circ_one(loose)) rep.complete = false;
  return rep;
}

struct PlanBlock {
  DivisorTuple d;
  u64 degree = 0;        // component extension degree = orbit length
  u64 multiplicity = 0;  // number of orbits in the block
};

struct PlanComponent {
  u64 degree = 0;
  u64 multiplicity = 0;
};

/// Name of F_{q^degree}; falls back to exponent notation when the size
/// leaves the 64-bit range.
inline std::string field_name(u64 q, u64 degree) {
  detail::u128 v = 1;
  for (u64 i = 0; i < degree; ++i) {
    v *= q;
    if (v > (detail::u128(1) << 62))
      return "F_(" + std::to_string(q) + "^" + std::to_string(degree) + ")";
  }
  return "F_" + std::to_string(static_cast<u64>(v));
}

/// The decomposition plan: per-block degrees and multiplicities plus the
/// aggregate component list F_{q^d1}^k1 (+) ...
struct DecompPlan {
  ModulusTuple m;
  u64 q = 0;
  u64 L = 0;  // splitting degree
  std::vector<PlanBlock> blocks;            // divisor-tuple order
  std::vector<PlanComponent> components;    // aggregated, degree ascending
  u64 total = 0;                            // number of simple components
  std::string rendering;                    // e.g. "F_2 (+) (F_16)^6"
};

inline DecompPlan wedderburn_plan(const ModulusTuple& m, u64 q) {
  require_semisimple(m, q);
  DecompPlan plan;
  plan.m = m;
  plan.q = q;
  plan.L = splitting_degree(m, q);
  std::map<u64, u64> aggregate;
  for (const DivisorTuple& d : divisor_tuples(m)) {
    const BlockStats st = block_stats(d, m, q);
    plan.blocks.push_back(PlanBlock{d, st.length, st.count});
    aggregate[st.length] += st.count;
    plan.total += st.count;
  }
  for (auto [deg, mult] : aggregate) plan.components.push_back(PlanComponent{deg, mult});
  std::string r;
  for (const PlanComponent& c : plan.components) {
    if (!r.empty()) r += " (+) ";
    const std::string name = field_name(q, c.degree);
    r += (c.multiplicity == 1) ? name : "(" + name + ")^" + std::to_string(c.multiplicity);
  }
  plan.rendering = std::move(r);
  return plan;
}

/// Uniformly random ring element (every coefficient digit uniform in F_p).
inline CircElem random_element(const CircParams& params, std::mt19937_64& rng) {
  const FieldCtx& base = base_field(params.q);
  CircElem f(params.m, params.q, params.size_limit);
  std::uniform_int_distribution<u64> digit(0, base.p() - 1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    FieldElem v = base.zero();
    for (unsigned j = 0; j < base.s(); ++j) v.c[j] = digit(rng);
    f[i] = std::move(v);
  }
  return f;
}

struct VerifyReport {
  u64 trials = 0;
  u64 additive_failures = 0;
  u64 multiplicative_failures = 0;
  u64 roundtrip_failures = 0;
  u64 subfield_failures = 0;
  u64 equivariance_failures = 0;
  bool passed() const {
    return additive_failures == 0 && multiplicative_failures == 0 && roundtrip_failures == 0 &&
           subfield_failures == 0 && equivariance_failures == 0;
  }
};

/// Randomized check that encode is a ring isomorphism: additivity and
/// multiplicativity of the spectrum, decode(encode(f)) = f, component
/// subfield membership, and evaluation equivariance at random points.
inline VerifyReport verify_isomorphism(const ModulusTuple& m, u64 q, u64 trials,
                                       u64 seed = 0x77ed) {
  const FieldCtx ctx = make_context(m, q);
  const auto table = std::make_shared<const OrbitTable>(orbit_table(m, q));
  const u64 count = tuple_count(m);
  const CircParams params{m, q, count};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<u64> pick(0, count - 1);

  VerifyReport rep;
  rep.trials = trials;
  for (u64 t = 0; t < trials; ++t) {
    const CircElem f = random_element(params, rng);
    const CircElem g = random_element(params, rng);
    const SpectralVector vf = encode(f, table, ctx);
    const SpectralVector vg = encode(g, table, ctx);
    const SpectralVector vsum = encode(add(f, g), table, ctx);
    const SpectralVector vprod = encode(mul(f, g), table, ctx);

    bool add_ok = true, mul_ok = true;
    for (std::size_t i = 0; i < vf.values.size(); ++i) {
      if (vsum.values[i] != ctx.add(vf.values[i], vg.values[i])) add_ok = false;
      if (vprod.values[i] != ctx.mul(vf.values[i], vg.values[i])) mul_ok = false;
    }
    if (!add_ok) ++rep.additive_failures;
    if (!mul_ok) ++rep.multiplicative_failures;

    if (decode(vf, ctx) != f) ++rep.roundtrip_failures;

    bool sub_ok = true;
    std::size_t vi = 0;
    for (const BlockOrbits& b : table->blocks) {
      for (const Orbit& o : b.orbits) {
        if (ctx.frobenius_iter(vf.values[vi], o.length) != vf.values[vi]) sub_ok = false;
        ++vi;
      }
    }
    if (!sub_ok) ++rep.subfield_failures;

    const IndexTuple x = index_from_linear(pick(rng), m);
    if (evaluate(f, act(x, 1, m, q), ctx) != ctx.frobenius(evaluate(f, x, ctx)))
      ++rep.equivariance_failures;
  }
  return rep;
}

}  // namespace wedderburn
