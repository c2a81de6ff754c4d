#pragma once

// Canonical JSON forms of the public types. Output is deterministic: object
// keys are emitted sorted, nonzero circulant coefficients are listed in
// lexicographic exponent order, and spectra are keyed by representative
// tuples rendered as comma-joined coordinates.

#include <string>
#include <vector>

#include "json.hpp"

#include "circulant.hpp"
#include "decomp.hpp"
#include "errors.hpp"
#include "fields.hpp"
#include "numtheory.hpp"
#include "orbits.hpp"

namespace wedderburn {

using nlohmann::json;

inline std::string tuple_key(const IndexTuple& x) { return detail::join(x); }

namespace detail {

inline u64 get_u64(const json& j, const char* what) {
  if (!j.is_number_unsigned())
    throw parse_error(std::string(what) + ": expected a non-negative integer");
  return j.get<u64>();
}

inline std::vector<u64> get_u64_array(const json& j, const char* what) {
  if (!j.is_array()) throw parse_error(std::string(what) + ": expected an array");
  std::vector<u64> out;
  out.reserve(j.size());
  for (const json& v : j) out.push_back(get_u64(v, what));
  return out;
}

inline IndexTuple tuple_from_key(const std::string& key) {
  IndexTuple out;
  std::size_t pos = 0;
  while (pos <= key.size()) {
    const std::size_t comma = key.find(',', pos);
    const std::string part = key.substr(pos, comma == std::string::npos ? std::string::npos
                                                                        : comma - pos);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw parse_error("malformed representative key \"" + key + "\"");
    out.push_back(std::stoull(part));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace detail

inline json field_elem_to_json(const FieldElem& x) { return json(x.c); }

inline FieldElem field_elem_from_json(const json& j, std::size_t length, u64 p,
                                      const char* what) {
  const std::vector<u64> c = detail::get_u64_array(j, what);
  if (c.size() != length)
    throw parse_error(std::string(what) + ": expected " + std::to_string(length) +
                      " coefficients, got " + std::to_string(c.size()));
  for (u64 v : c)
    if (v >= p) throw parse_error(std::string(what) + ": coefficient " + std::to_string(v) +
                                  " is not reduced modulo " + std::to_string(p));
  return FieldElem{c};
}

inline json field_ctx_to_json(const FieldCtx& ctx) {
  return json{{"p", ctx.p()},
              {"s", ctx.s()},
              {"L", ctx.ext_degree()},
              {"modulus", ctx.defining_poly()},
              {"generator", ctx.generator().c}};
}

struct RingParams {
  ModulusTuple m;
  u64 q = 0;
};

inline RingParams ring_params_from_json(const json& j) {
  if (!j.is_object()) throw parse_error("expected a JSON object");
  if (!j.contains("m") || !j.contains("q")) throw parse_error("missing \"m\" or \"q\"");
  const std::vector<u64> m = detail::get_u64_array(j.at("m"), "\"m\"");
  RingParams rp;
  try {
    rp.m = ModulusTuple(m);
  } catch (const std::invalid_argument& e) {
    throw parse_error(std::string("\"m\": ") + e.what());
  }
  rp.q = detail::get_u64(j.at("q"), "\"q\"");
  try {
    prime_power_of(rp.q);
  } catch (const std::domain_error& e) {
    throw parse_error(std::string("\"q\": ") + e.what());
  }
  return rp;
}

inline json circ_to_json(const CircElem& f) {
  const FieldCtx& base = base_field(f.q());
  json coeffs = json::array();
  IndexTuple g(f.modulus().size(), 0);
  for (u64 lin = 0; lin < f.size(); ++lin, next_tuple(g, f.modulus())) {
    const FieldElem& v = f[lin];
    if (is_zero(v)) continue;
    json val = (base.s() == 1) ? json(v.c[0]) : json(v.c);
    coeffs.push_back(json{{"exp", g}, {"val", std::move(val)}});
  }
  return json{{"m", f.modulus().entries}, {"q", f.q()}, {"coeffs", std::move(coeffs)}};
}

inline CircElem circ_from_json(const json& j, u64 size_limit = kDefaultSizeLimit) {
  const RingParams rp = ring_params_from_json(j);
  const FieldCtx& base = base_field(rp.q);
  if (!j.contains("coeffs") || !j.at("coeffs").is_array())
    throw parse_error("missing or malformed \"coeffs\" array");
  std::vector<RawTerm> terms;
  for (const json& term : j.at("coeffs")) {
    if (!term.is_object() || !term.contains("exp") || !term.contains("val"))
      throw parse_error("each coefficient needs \"exp\" and \"val\"");
    RawTerm t;
    t.exponents = detail::get_u64_array(term.at("exp"), "\"exp\"");
    if (t.exponents.size() != rp.m.size())
      throw parse_error("\"exp\": expected " + std::to_string(rp.m.size()) + " coordinates");
    const json& val = term.at("val");
    if (val.is_array()) {
      t.value = field_elem_from_json(val, base.s(), base.p(), "\"val\"");
    } else {
      const u64 code = detail::get_u64(val, "\"val\"");
      if (code >= rp.q)
        throw parse_error("\"val\": " + std::to_string(code) + " is not reduced modulo " +
                          std::to_string(rp.q));
      t.value = base.element_from_code(code);
    }
    terms.push_back(std::move(t));
  }
  try {
    return reduce(terms, CircParams{rp.m, rp.q, size_limit});
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what());
  }
}

inline json table_to_json(const OrbitTable& table) {
  json blocks = json::array();
  for (const BlockOrbits& b : table.blocks) {
    json orbits = json::array();
    for (const Orbit& o : b.orbits) {
      json members = json::array();
      for (const IndexTuple& x : o.members) members.push_back(x);
      orbits.push_back(json{{"rep", o.representative}, {"members", std::move(members)}});
    }
    blocks.push_back(json{{"d", b.d.entries},
                          {"length", b.stats.length},
                          {"count", b.stats.count},
                          {"orbits", std::move(orbits)}});
  }
  return json{{"m", table.m.entries}, {"q", table.q}, {"blocks", std::move(blocks)}};
}

inline json plan_to_json(const DecompPlan& plan) {
  json blocks = json::array();
  for (const PlanBlock& b : plan.blocks)
    blocks.push_back(
        json{{"d", b.d.entries}, {"degree", b.degree}, {"multiplicity", b.multiplicity}});
  json components = json::array();
  for (const PlanComponent& c : plan.components)
    components.push_back(json{{"degree", c.degree}, {"multiplicity", c.multiplicity}});
  return json{{"m", plan.m.entries}, {"q", plan.q},           {"L", plan.L},
              {"blocks", blocks},    {"components", components}, {"total", plan.total},
              {"rendering", plan.rendering}};
}

inline json spectrum_to_json(const SpectralVector& v, const FieldCtx& ctx) {
  if (!v.table) throw std::invalid_argument("spectrum_to_json: null orbit table");
  json values = json::object();
  for (std::size_t i = 0; i < v.table->representatives.size(); ++i)
    values[tuple_key(v.table->representatives[i])] = field_elem_to_json(v.values[i]);
  return json{{"m", v.table->m.entries},
              {"q", v.table->q},
              {"field", field_ctx_to_json(ctx)},
              {"values", std::move(values)}};
}

/// Parse a spectrum against an existing context and orbit table (both built
/// from the file's own (m, q)). The embedded field description must agree
/// with the canonical context; every representative must be present exactly
/// once.
inline SpectralVector spectrum_from_json(const json& j, const FieldCtx& ctx,
                                         std::shared_ptr<const OrbitTable> table) {
  if (!table) throw std::invalid_argument("spectrum_from_json: null orbit table");
  const RingParams rp = ring_params_from_json(j);
  if (rp.m != table->m || rp.q != table->q)
    throw parse_error("spectrum parameters do not match the orbit table");
  if (!j.contains("field") || !j.at("field").is_object())
    throw parse_error("missing \"field\" description");
  const json& fd = j.at("field");
  const json expected = field_ctx_to_json(ctx);
  for (const char* key : {"p", "s", "L", "modulus", "generator"}) {
    if (!fd.contains(key)) throw parse_error(std::string("\"field\": missing \"") + key + "\"");
    if (fd.at(key) != expected.at(key))
      throw parse_error(std::string("\"field\": \"") + key +
                        "\" does not match the canonical context for these parameters");
  }
  if (!j.contains("values") || !j.at("values").is_object())
    throw parse_error("missing \"values\" object");
  const json& values = j.at("values");
  if (values.size() != table->representatives.size())
    throw parse_error("expected " + std::to_string(table->representatives.size()) +
                      " spectrum values, got " + std::to_string(values.size()));
  SpectralVector v;
  v.table = table;
  v.values.reserve(table->representatives.size());
  for (const IndexTuple& rep : table->representatives) {
    const std::string key = tuple_key(rep);
    if (!values.contains(key))
      throw parse_error("missing spectrum value for representative (" + key + ")");
    v.values.push_back(
        field_elem_from_json(values.at(key), ctx.degree(), ctx.p(), "spectrum value"));
  }
  return v;
}

/// Canonical serialized form: two-space indentation, sorted keys, newline.
inline std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

}  // namespace wedderburn
