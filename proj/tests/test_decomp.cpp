#include <gtest/gtest.h>

#include <memory>
#include <random>

#include <wedderburn/decomp.hpp>

using namespace wedderburn;

namespace {

struct Instance {
  FieldCtx ctx;
  std::shared_ptr<const OrbitTable> table;
  CircParams params;
};

Instance make_instance(const ModulusTuple& m, u64 q) {
  Instance inst{make_context(m, q), std::make_shared<const OrbitTable>(orbit_table(m, q)),
                CircParams{m, q}};
  return inst;
}

// Independent evaluation: sum f_g * prod_i zeta_i^(x_i * g_i) with plain
// pow calls, no shared power tables.
FieldElem evaluate_naive(const CircElem& f, const IndexTuple& x, const FieldCtx& ctx) {
  const ModulusTuple& m = ctx.modulus_tuple();
  FieldElem acc = ctx.zero();
  IndexTuple g(m.size(), 0);
  for (u64 lin = 0; lin < f.size(); ++lin, next_tuple(g, m)) {
    if (is_zero(f[lin])) continue;
    FieldElem term = ctx.embed_base(f[lin]);
    for (std::size_t i = 0; i < m.size(); ++i)
      term = ctx.mul(term, ctx.pow(ctx.roots_of_unity()[i], x[i] * g[i] % m[i]));
    acc = ctx.add(acc, term);
  }
  return acc;
}

// Smallest ell dividing L with y^(q^ell) = y.
u64 min_subfield_degree(const FieldElem& y, const FieldCtx& ctx) {
  for (u64 ell : divisors_of(ctx.ext_degree()))
    if (ctx.frobenius_iter(y, ell) == y) return ell;
  return 0;
}

}  // namespace

TEST(SplittingDegree, KnownValues) {
  EXPECT_EQ(splitting_degree(ModulusTuple{5, 5}, 2), 4u);
  EXPECT_EQ(splitting_degree(ModulusTuple{7}, 2), 3u);
  EXPECT_EQ(splitting_degree(ModulusTuple{7, 9}, 2), 6u);
  EXPECT_EQ(splitting_degree(ModulusTuple{1}, 2), 1u);
  EXPECT_EQ(splitting_degree(ModulusTuple{13}, 5), 4u);
  EXPECT_EQ(splitting_degree(ModulusTuple{13}, 9), 3u);
  EXPECT_THROW(splitting_degree(ModulusTuple{6}, 2), non_semisimple_error);
}

TEST(MakeContext, AttachesExactOrderRoots) {
  const FieldCtx ctx = make_context(ModulusTuple{5, 5}, 2);
  EXPECT_EQ(ctx.q(), 2u);
  EXPECT_EQ(ctx.ext_degree(), 4u);
  ASSERT_TRUE(ctx.has_eval_data());
  ASSERT_EQ(ctx.roots_of_unity().size(), 2u);
  for (const FieldElem& z : ctx.roots_of_unity()) {
    EXPECT_EQ(ctx.pow(z, 5), ctx.one());
    EXPECT_NE(z, ctx.one());
  }
  EXPECT_THROW(make_context(ModulusTuple{4}, 2), non_semisimple_error);
}

TEST(Evaluate, ConstantsAndMonomials) {
  const Instance inst = make_instance(ModulusTuple{5, 3}, 2);
  const FieldCtx& ctx = inst.ctx;

  const CircElem one = circ_one(inst.params);
  const CircElem zero = circ_zero(inst.params);
  IndexTuple x(2, 0);
  do {
    EXPECT_EQ(evaluate(one, x, ctx), ctx.one());
    EXPECT_EQ(evaluate(zero, x, ctx), ctx.zero());
  } while (next_tuple(x, inst.params.m));

  // X^(g) evaluates to zeta_1^(x_1 g_1) * zeta_2^(x_2 g_2)
  const CircElem mono = from_group_element({2, 1}, inst.params);
  const FieldElem expected = ctx.mul(ctx.pow(ctx.roots_of_unity()[0], 2 * 3 % 5),
                                     ctx.pow(ctx.roots_of_unity()[1], 2));
  EXPECT_EQ(evaluate(mono, {3, 2}, ctx), expected);
}

TEST(Evaluate, MatchesNaiveSum) {
  for (const auto& [m, q] : std::vector<std::pair<ModulusTuple, u64>>{
           {ModulusTuple{5, 3}, 2}, {ModulusTuple{8, 9}, 5}, {ModulusTuple{13}, 9}}) {
    const Instance inst = make_instance(m, q);
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 5; ++trial) {
      const CircElem f = random_element(inst.params, rng);
      IndexTuple x(m.size(), 0);
      do {
        EXPECT_EQ(evaluate(f, x, inst.ctx), evaluate_naive(f, x, inst.ctx));
      } while (next_tuple(x, m));
    }
  }
}

TEST(Evaluate, RingHomomorphismAtEveryPoint) {
  const Instance inst = make_instance(ModulusTuple{4, 3}, 5);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const CircElem f = random_element(inst.params, rng);
    const CircElem g = random_element(inst.params, rng);
    const CircElem sum = f + g, prod = f * g;
    IndexTuple x(2, 0);
    do {
      const FieldElem vf = evaluate(f, x, inst.ctx);
      const FieldElem vg = evaluate(g, x, inst.ctx);
      EXPECT_EQ(evaluate(sum, x, inst.ctx), inst.ctx.add(vf, vg));
      EXPECT_EQ(evaluate(prod, x, inst.ctx), inst.ctx.mul(vf, vg));
    } while (next_tuple(x, inst.params.m));
  }
}

TEST(Evaluate, FrobeniusEquivariance) {
  for (const auto& [m, q] : std::vector<std::pair<ModulusTuple, u64>>{
           {ModulusTuple{15}, 2}, {ModulusTuple{5, 5}, 2}, {ModulusTuple{7, 4}, 9}}) {
    const Instance inst = make_instance(m, q);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
      const CircElem f = random_element(inst.params, rng);
      IndexTuple x(m.size(), 0);
      do {
        EXPECT_EQ(evaluate(f, act(x, 1, m, q), inst.ctx),
                  inst.ctx.frobenius(evaluate(f, x, inst.ctx)));
      } while (next_tuple(x, m));
    }
  }
}

TEST(Evaluate, ComponentDegreeFromMonomialValues) {
  // The subfield generated by the coordinate values zeta_i^(x_i) at a point
  // has degree exactly the orbit length of that point.
  for (const auto& [m, q] : std::vector<std::pair<ModulusTuple, u64>>{
           {ModulusTuple{15}, 2}, {ModulusTuple{5, 5}, 2}, {ModulusTuple{13}, 3}}) {
    const Instance inst = make_instance(m, q);
    for (const BlockOrbits& b : inst.table->blocks) {
      for (const Orbit& o : b.orbits) {
        u64 ell = 1;
        for (std::size_t i = 0; i < m.size(); ++i) {
          const FieldElem v = inst.ctx.pow(inst.ctx.roots_of_unity()[i], o.representative[i]);
          ell = std::lcm(ell, min_subfield_degree(v, inst.ctx));
        }
        EXPECT_EQ(ell, o.length) << "rep (" << detail::join(o.representative) << ")";
      }
    }
  }
}

TEST(Encode, KnownSpectrumOverF2) {
  const Instance inst = make_instance(ModulusTuple{3}, 2);
  // representatives in table order: (1) from block 1, then (0) from block 3
  ASSERT_EQ(inst.table->representatives,
            (std::vector<IndexTuple>{{1}, {0}}));

  CircElem f = circ_one(inst.params);
  f.set({1}, scalar_from_code(2, 1));
  f.set({2}, scalar_from_code(2, 1));  // f = 1 + X + X^2
  const SpectralVector v = encode(f, inst.table, inst.ctx);
  ASSERT_EQ(v.values.size(), 2u);
  EXPECT_TRUE(is_zero(v.values[0]));       // 1 + zeta + zeta^2 = 0
  EXPECT_EQ(v.values[1], inst.ctx.one());  // three ones over F_2
}

TEST(Encode, ValuesLieInComponentSubfields) {
  const Instance inst = make_instance(ModulusTuple{5, 5}, 2);
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 5; ++trial) {
    const CircElem f = random_element(inst.params, rng);
    const SpectralVector v = encode(f, inst.table, inst.ctx);
    std::size_t vi = 0;
    for (const BlockOrbits& b : inst.table->blocks) {
      for (const Orbit& o : b.orbits) {
        const FieldElem& val = v.values[vi++];
        EXPECT_EQ(inst.ctx.frobenius_iter(val, o.length), val);
      }
    }
  }
}

TEST(Decode, InvertsEncode) {
  for (const auto& [m, q] : std::vector<std::pair<ModulusTuple, u64>>{
           {ModulusTuple{3}, 2}, {ModulusTuple{4, 3}, 5}, {ModulusTuple{13}, 9},
           {ModulusTuple{5, 5}, 2}, {ModulusTuple{1}, 7}}) {
    const Instance inst = make_instance(m, q);
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 8; ++trial) {
      const CircElem f = random_element(inst.params, rng);
      EXPECT_EQ(decode(encode(f, inst.table, inst.ctx), inst.ctx), f);
    }
  }
}

TEST(Decode, InvertsEncodeExhaustivelyOnTinyRing) {
  const Instance inst = make_instance(ModulusTuple{3}, 2);
  for (u64 bits = 0; bits < 8; ++bits) {
    CircElem f = circ_zero(inst.params);
    for (u64 i = 0; i < 3; ++i)
      if (bits & (1ull << i)) f[i] = scalar_from_code(2, 1);
    EXPECT_EQ(decode(encode(f, inst.table, inst.ctx), inst.ctx), f);
  }
}

TEST(Decode, FrozenIndicatorSpectra) {
  const Instance inst = make_instance(ModulusTuple{3}, 2);
  const FieldCtx& ctx = inst.ctx;

  SpectralVector ind0{inst.table, {ctx.zero(), ctx.one()}};  // 1 on the (0)-orbit
  const CircElem e0 = decode(ind0, ctx);
  CircElem expected0 = circ_one(inst.params);
  expected0.set({1}, scalar_from_code(2, 1));
  expected0.set({2}, scalar_from_code(2, 1));
  EXPECT_EQ(e0, expected0);  // 1 + X + X^2

  SpectralVector ind1{inst.table, {ctx.one(), ctx.zero()}};  // 1 on the (1)-orbit
  const CircElem e1 = decode(ind1, ctx);
  CircElem expected1 = circ_zero(inst.params);
  expected1.set({1}, scalar_from_code(2, 1));
  expected1.set({2}, scalar_from_code(2, 1));
  EXPECT_EQ(e1, expected1);  // X + X^2
}

TEST(Decode, RejectsBadSpectra) {
  const Instance inst = make_instance(ModulusTuple{7}, 2);  // components F_2, (F_8)^2
  const FieldCtx& ctx = inst.ctx;

  SpectralVector short_vec{inst.table, {ctx.one()}};
  EXPECT_THROW(decode(short_vec, ctx), std::invalid_argument);

  SpectralVector bad_degree{inst.table, {ctx.one(), ctx.one(), FieldElem{{1}}}};
  EXPECT_THROW(decode(bad_degree, ctx), std::invalid_argument);

  // the (0)-orbit has length 1, so its value must lie in F_2 itself
  SpectralVector outside{inst.table, {ctx.one(), ctx.one(), ctx.generator()}};
  ASSERT_EQ(inst.table->representatives.back(), (IndexTuple{0}));
  EXPECT_THROW(decode(outside, ctx), spectrum_error);

  SpectralVector null_table{nullptr, {}};
  EXPECT_THROW(decode(null_table, ctx), std::invalid_argument);
}

TEST(Decode, ArbitrarySubfieldValuesRoundTrip) {
  // decode accepts any spectrum with values in the right subfields, and
  // encode recovers it exactly.
  const Instance inst = make_instance(ModulusTuple{7}, 2);
  const FieldCtx& ctx = inst.ctx;
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<u64> pick(0, ctx.group_order());
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<FieldElem> vals;
    std::size_t vi = 0;
    for (const BlockOrbits& b : inst.table->blocks) {
      for (const Orbit& o : b.orbits) {
        // random element of the length-ell subfield: x^((q^L-1)/(q^ell-1)) powers
        FieldElem v = ctx.pow(ctx.generator(), pick(rng));
        while (ctx.frobenius_iter(v, o.length) != v) v = ctx.pow(ctx.generator(), pick(rng));
        vals.push_back(v);
        ++vi;
      }
    }
    const SpectralVector v{inst.table, vals};
    const CircElem f = decode(v, ctx);
    const SpectralVector back = encode(f, inst.table, ctx);
    EXPECT_EQ(back.values, vals);
  }
}

TEST(Idempotents, FrozenSystemForCubeRootsOverF2) {
  const Instance inst = make_instance(ModulusTuple{3}, 2);
  const IdempotentSystem sys = idempotent_system(inst.table, inst.ctx);
  ASSERT_EQ(sys.idempotents.size(), 2u);
  // table order: the (1)-orbit block first, then the (0)-orbit
  CircElem e_bulk = circ_zero(inst.params);
  e_bulk.set({1}, scalar_from_code(2, 1));
  e_bulk.set({2}, scalar_from_code(2, 1));
  CircElem e_triv = circ_one(inst.params);
  e_triv.set({1}, scalar_from_code(2, 1));
  e_triv.set({2}, scalar_from_code(2, 1));
  EXPECT_EQ(sys.idempotents[0], e_bulk);
  EXPECT_EQ(sys.idempotents[1], e_triv);
}

TEST(Idempotents, MatchDecodedIndicatorsAndIndicatorSpectra) {
  for (const auto& [m, q] : std::vector<std::pair<ModulusTuple, u64>>{
           {ModulusTuple{5, 5}, 2}, {ModulusTuple{4, 3}, 5}, {ModulusTuple{13}, 9}}) {
    const Instance inst = make_instance(m, q);
    const IdempotentSystem sys = idempotent_system(inst.table, inst.ctx);
    const std::size_t R = inst.table->representatives.size();
    ASSERT_EQ(sys.idempotents.size(), R);
    for (std::size_t i = 0; i < R; ++i) {
      std::vector<FieldElem> indicator(R, inst.ctx.zero());
      indicator[i] = inst.ctx.one();
      EXPECT_EQ(sys.idempotents[i], decode(SpectralVector{inst.table, indicator}, inst.ctx));
      EXPECT_EQ(encode(sys.idempotents[i], inst.table, inst.ctx).values, indicator);
    }
  }
}

TEST(Idempotents, SystemPropertiesHold) {
  for (const auto& [m, q] : std::vector<std::pair<ModulusTuple, u64>>{
           {ModulusTuple{5, 5}, 2}, {ModulusTuple{12, 7}, 5}, {ModulusTuple{9}, 4}}) {
    const Instance inst = make_instance(m, q);
    const IdempotentSystem sys = idempotent_system(inst.table, inst.ctx);
    const IdempotentReport rep = check_idempotent_system(sys, inst.params);
    EXPECT_TRUE(rep.idempotent);
    EXPECT_TRUE(rep.orthogonal);
    EXPECT_TRUE(rep.complete);
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(sys.idempotents.size(), wedderburn_plan(m, q).total);
  }
}

TEST(Idempotents, CheckDetectsBrokenSystems) {
  const Instance inst = make_instance(ModulusTuple{7}, 2);
  IdempotentSystem sys = idempotent_system(inst.table, inst.ctx);

  IdempotentSystem missing = sys;
  missing.idempotents.pop_back();
  EXPECT_FALSE(check_idempotent_system(missing, inst.params).complete);

  IdempotentSystem corrupted = sys;
  corrupted.idempotents[0].set({3}, scalar_from_code(2, 1));
  const IdempotentReport rep = check_idempotent_system(corrupted, inst.params);
  EXPECT_FALSE(rep.passed());
}

TEST(Plan, KnownDecompositions) {
  const DecompPlan p7 = wedderburn_plan(ModulusTuple{7}, 2);
  EXPECT_EQ(p7.L, 3u);
  EXPECT_EQ(p7.total, 3u);
  EXPECT_EQ(p7.rendering, "F_2 (+) (F_8)^2");
  ASSERT_EQ(p7.blocks.size(), 2u);
  EXPECT_EQ(p7.blocks[0].d, (DivisorTuple{1}));
  EXPECT_EQ(p7.blocks[0].degree, 3u);
  EXPECT_EQ(p7.blocks[0].multiplicity, 2u);

  const DecompPlan p55 = wedderburn_plan(ModulusTuple{5, 5}, 2);
  EXPECT_EQ(p55.total, 7u);
  EXPECT_EQ(p55.rendering, "F_2 (+) (F_16)^6");

  const DecompPlan p43 = wedderburn_plan(ModulusTuple{4, 3}, 5);
  EXPECT_EQ(p43.total, 8u);
  EXPECT_EQ(p43.rendering, "(F_5)^4 (+) (F_25)^4");

  const DecompPlan triv = wedderburn_plan(ModulusTuple{1}, 2);
  EXPECT_EQ(triv.total, 1u);
  EXPECT_EQ(triv.rendering, "F_2");
}

TEST(Plan, DimensionsSumToRingDimension) {
  for (const auto& [m, q] : std::vector<std::pair<ModulusTuple, u64>>{
           {ModulusTuple{45}, 2}, {ModulusTuple{8, 9}, 5}, {ModulusTuple{3, 3, 3}, 2},
           {ModulusTuple{100}, 3}, {ModulusTuple{11, 13}, 2}}) {
    const DecompPlan plan = wedderburn_plan(m, q);
    u64 dim = 0, total = 0;
    for (const PlanBlock& b : plan.blocks) dim += b.degree * b.multiplicity;
    u64 cdim = 0;
    for (const PlanComponent& c : plan.components) {
      cdim += c.degree * c.multiplicity;
      total += c.multiplicity;
    }
    EXPECT_EQ(dim, tuple_count(m));
    EXPECT_EQ(cdim, tuple_count(m));
    EXPECT_EQ(total, plan.total);
  }
}

TEST(Plan, FieldNames) {
  EXPECT_EQ(field_name(2, 4), "F_16");
  EXPECT_EQ(field_name(9, 1), "F_9");
  EXPECT_EQ(field_name(2, 100), "F_(2^100)");
}

TEST(Plan, RejectsNonSemisimpleWithOffendersListed) {
  try {
    wedderburn_plan(ModulusTuple{10, 7}, 4);
    FAIL() << "expected non_semisimple_error";
  } catch (const non_semisimple_error& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("10"), std::string::npos);
    EXPECT_EQ(msg.find("{7}"), std::string::npos);
  }
}

TEST(Verify, PassesOnSemisimpleRings) {
  for (const auto& [m, q] : std::vector<std::pair<ModulusTuple, u64>>{
           {ModulusTuple{5, 5}, 2}, {ModulusTuple{4, 3}, 5}, {ModulusTuple{13}, 9}}) {
    const VerifyReport rep = verify_isomorphism(m, q, 3);
    EXPECT_EQ(rep.trials, 3u);
    EXPECT_TRUE(rep.passed()) << "add=" << rep.additive_failures
                              << " mul=" << rep.multiplicative_failures
                              << " rt=" << rep.roundtrip_failures
                              << " sub=" << rep.subfield_failures
                              << " eq=" << rep.equivariance_failures;
  }
}

TEST(Verify, RejectsNonSemisimpleInput) {
  EXPECT_THROW(verify_isomorphism(ModulusTuple{6}, 2, 1), non_semisimple_error);
}

TEST(RandomElement, DeterministicPerSeed) {
  const CircParams params{ModulusTuple{5, 5}, 9};
  std::mt19937_64 a(123), b(123), c(124);
  EXPECT_EQ(random_element(params, a), random_element(params, b));
  EXPECT_NE(random_element(params, a), random_element(params, c));
}
