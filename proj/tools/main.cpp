// Command-line front end: decompose semisimple circulant rings over finite
// fields, enumerate orbits, export idempotents, and convert ring elements
// to and from their spectra.
//
// Exit codes:
//   0  success
//   1  a verification run found failures (or a gauss check failed)
//   2  non-semisimple parameters (some modulus shares a factor with q)
//   3  a size guard was exceeded
//   4  input could not be parsed
//   5  a spectrum violates its component subfield constraints
//   64 invalid command-line values
//   CLI11 reserves codes >= 100 for flag syntax errors

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include <wedderburn/wedderburn.hpp>

namespace {

using namespace wedderburn;

struct CommonOpts {
  std::vector<u64> m;
  u64 q = 0;
  std::string format;  // empty = per-command default
  u64 size_limit = kDefaultSizeLimit;
  std::string input;
  std::string output;
  u64 trials = 100;
  u64 seed = 0x77ed;
};

std::string tuple_str(const std::vector<u64>& v) { return "(" + detail::join(v) + ")"; }

void write_out(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw parse_error("cannot open output file " + path);
  os << content;
}

std::string read_in(const std::string& path) {
  std::ostringstream buf;
  if (path.empty()) {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw parse_error("cannot open input file " + path);
    buf << is.rdbuf();
  }
  return buf.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
}

ModulusTuple moduli_of(const CommonOpts& opt) {
  return ModulusTuple(opt.m);  // throws std::invalid_argument on bad entries
}

void validate_q(u64 q) {
  prime_power_of(q);  // throws std::domain_error unless q is a prime power
}

int cmd_decompose(const CommonOpts& opt) {
  validate_q(opt.q);
  const ModulusTuple m = moduli_of(opt);
  const DecompPlan plan = wedderburn_plan(m, opt.q);

  if (opt.format == "json") {
    write_out(opt.output, dump_canonical(plan_to_json(plan)));
    return 0;
  }

  std::ostringstream os;
  os << "circulant ring with moduli " << tuple_str(m.entries) << " over F_" << opt.q << "\n";
  os << "semisimple: yes\n";
  os << "splitting degree L = " << plan.L << "\n";
  os << "splitting field: " << field_name(opt.q, plan.L) << "\n\n";

  std::size_t dwidth = 1;
  for (const PlanBlock& b : plan.blocks)
    dwidth = std::max(dwidth, tuple_str(b.d.entries).size());

  os << "block table (the block of d is {x : gcd(x_i, m_i) = d_i}):\n";
  os << "  " << std::left << std::setw(static_cast<int>(dwidth + 2)) << "d"
     << std::right << std::setw(8) << "size" << std::setw(8) << "degree"
     << std::setw(14) << "multiplicity" << "\n";
  for (const PlanBlock& b : plan.blocks) {
    os << "  " << std::left << std::setw(static_cast<int>(dwidth + 2))
       << tuple_str(b.d.entries) << std::right << std::setw(8) << block_size(b.d, m)
       << std::setw(8) << b.degree << std::setw(14) << b.multiplicity << "\n";
  }

  // The same components, relabeled: the row labelled d restates the block
  // of the complementary divisor m/d.
  std::map<std::vector<u64>, const PlanBlock*> by_label;
  for (const PlanBlock& b : plan.blocks) by_label.emplace(b.d.entries, &b);
  os << "\ndivisor view:\n";
  os << "  " << std::left << std::setw(static_cast<int>(dwidth + 2)) << "d"
     << std::right << std::setw(8) << "phi(d)" << std::setw(8) << "degree"
     << std::setw(14) << "multiplicity" << "\n";
  for (const DivisorTuple& e : divisor_tuples(m)) {
    std::vector<u64> comp(m.size());
    u64 phi = 1;
    for (std::size_t i = 0; i < m.size(); ++i) {
      comp[i] = m[i] / e[i];
      phi *= totient(e[i]);
    }
    const PlanBlock* src = by_label.at(comp);
    os << "  " << std::left << std::setw(static_cast<int>(dwidth + 2)) << tuple_str(e.entries)
       << std::right << std::setw(8) << phi << std::setw(8) << src->degree << std::setw(14)
       << src->multiplicity << "\n";
  }
  os << "note: in the divisor view the row labelled d describes the block of m/d;\n"
     << "both tables list the same simple components under different labelings.\n";

  os << "\ncomponents: " << plan.rendering << "\n";
  os << "simple components: " << plan.total << "\n";
  u64 dim = 0;
  for (const PlanBlock& b : plan.blocks) dim += b.degree * b.multiplicity;
  os << "ring dimension: " << dim << "\n";
  write_out(opt.output, os.str());
  return 0;
}

int cmd_orbits(const CommonOpts& opt) {
  validate_q(opt.q);
  const ModulusTuple m = moduli_of(opt);
  checked_tuple_count(m, opt.size_limit);
  const OrbitTable table = orbit_table(m, opt.q);

  if (opt.format == "json") {
    write_out(opt.output, dump_canonical(table_to_json(table)));
    return 0;
  }

  std::ostringstream os;
  os << "orbit table for moduli " << tuple_str(m.entries) << " under multiplication by "
     << opt.q << "\n";
  os << "points: " << tuple_count(m) << ", orbits: " << table.orbit_count << "\n";
  for (const BlockOrbits& b : table.blocks) {
    os << "\nblock " << tuple_str(b.d.entries) << ": size " << block_size(b.d, m)
       << ", orbit length " << b.stats.length << ", orbits " << b.stats.count << "\n";
    for (const Orbit& o : b.orbits) {
      os << "  " << tuple_str(o.representative) << ":";
      for (const IndexTuple& x : o.members) os << " " << tuple_str(x);
      os << "\n";
    }
  }
  write_out(opt.output, os.str());
  return 0;
}

int cmd_idempotents(const CommonOpts& opt) {
  validate_q(opt.q);
  const ModulusTuple m = moduli_of(opt);
  checked_tuple_count(m, opt.size_limit);
  const FieldCtx ctx = make_context(m, opt.q);
  const auto table = std::make_shared<const OrbitTable>(orbit_table(m, opt.q));
  const IdempotentSystem sys = idempotent_system(table, ctx);

  if (opt.format == "json") {
    json items = json::array();
    for (std::size_t i = 0; i < sys.idempotents.size(); ++i)
      items.push_back(json{{"rep", table->representatives[i]},
                           {"element", circ_to_json(sys.idempotents[i])}});
    write_out(opt.output, dump_canonical(json{{"m", m.entries},
                                              {"q", opt.q},
                                              {"count", sys.idempotents.size()},
                                              {"idempotents", std::move(items)}}));
    return 0;
  }

  std::ostringstream os;
  os << "primitive orthogonal idempotents for moduli " << tuple_str(m.entries) << " over F_"
     << opt.q << "\n";
  os << "count: " << sys.idempotents.size() << "\n";
  for (std::size_t i = 0; i < sys.idempotents.size(); ++i) {
    const CircElem& e = sys.idempotents[i];
    u64 support = 0;
    for (std::size_t k = 0; k < e.size(); ++k)
      if (!is_zero(e[k])) ++support;
    os << "  orbit " << tuple_str(table->representatives[i]) << ": support " << support
       << " of " << e.size() << "\n";
  }
  write_out(opt.output, os.str());
  return 0;
}

int cmd_verify(const CommonOpts& opt) {
  validate_q(opt.q);
  const ModulusTuple m = moduli_of(opt);
  const u64 count = checked_tuple_count(m, opt.size_limit);
  const VerifyReport rep = verify_isomorphism(m, opt.q, opt.trials, opt.seed);

  const FieldCtx ctx = make_context(m, opt.q);
  const auto table = std::make_shared<const OrbitTable>(orbit_table(m, opt.q));
  const IdempotentSystem sys = idempotent_system(table, ctx);
  const IdempotentReport idem = check_idempotent_system(sys, CircParams{m, opt.q, count});

  const bool passed = rep.passed() && idem.passed();

  if (opt.format == "json") {
    json j{{"m", m.entries},
           {"q", opt.q},
           {"trials", rep.trials},
           {"seed", opt.seed},
           {"isomorphism",
            json{{"additive_failures", rep.additive_failures},
                 {"multiplicative_failures", rep.multiplicative_failures},
                 {"roundtrip_failures", rep.roundtrip_failures},
                 {"subfield_failures", rep.subfield_failures},
                 {"equivariance_failures", rep.equivariance_failures}}},
           {"idempotents",
            json{{"count", sys.idempotents.size()},
                 {"idempotent", idem.idempotent},
                 {"orthogonal", idem.orthogonal},
                 {"complete", idem.complete}}},
           {"passed", passed}};
    write_out(opt.output, dump_canonical(j));
    return passed ? 0 : 1;
  }

  std::ostringstream os;
  auto line = [&](const char* name, u64 failures) {
    os << "  " << std::left << std::setw(16) << name;
    if (failures == 0)
      os << "ok\n";
    else
      os << "FAILED (" << failures << " of " << rep.trials << " trials)\n";
  };
  os << "isomorphism check for moduli " << tuple_str(m.entries) << " over F_" << opt.q << ", "
     << rep.trials << " trials, seed " << opt.seed << "\n";
  line("additive:", rep.additive_failures);
  line("multiplicative:", rep.multiplicative_failures);
  line("roundtrip:", rep.roundtrip_failures);
  line("subfield:", rep.subfield_failures);
  line("equivariance:", rep.equivariance_failures);
  os << "idempotent system (" << sys.idempotents.size() << " idempotents)\n";
  auto bline = [&](const char* name, bool ok) {
    os << "  " << std::left << std::setw(16) << name << (ok ? "ok" : "FAILED") << "\n";
  };
  bline("idempotency:", idem.idempotent);
  bline("orthogonality:", idem.orthogonal);
  bline("completeness:", idem.complete);
  os << (passed ? "verification passed\n" : "verification failed\n");
  write_out(opt.output, os.str());
  return passed ? 0 : 1;
}

int cmd_encode(const CommonOpts& opt) {
  const json in = parse_json(read_in(opt.input));
  const CircElem f = circ_from_json(in, opt.size_limit);
  if (!opt.m.empty() && ModulusTuple(opt.m) != f.modulus())
    throw parse_error("file moduli " + tuple_str(f.modulus().entries) +
                      " do not match --m " + tuple_str(opt.m));
  if (opt.q != 0 && opt.q != f.q())
    throw parse_error("file field size " + std::to_string(f.q()) + " does not match --q " +
                      std::to_string(opt.q));
  const FieldCtx ctx = make_context(f.modulus(), f.q());
  const auto table = std::make_shared<const OrbitTable>(orbit_table(f.modulus(), f.q()));
  const SpectralVector v = encode(f, table, ctx);

  if (opt.format == "text") {
    std::ostringstream os;
    os << "spectrum of an element of the ring with moduli " << tuple_str(f.modulus().entries)
       << " over F_" << f.q() << "\n";
    for (std::size_t i = 0; i < table->representatives.size(); ++i)
      os << "  " << tuple_str(table->representatives[i]) << ": ["
         << detail::join(v.values[i].c) << "]\n";
    write_out(opt.output, os.str());
    return 0;
  }
  write_out(opt.output, dump_canonical(spectrum_to_json(v, ctx)));
  return 0;
}

int cmd_decode(const CommonOpts& opt) {
  const json in = parse_json(read_in(opt.input));
  const RingParams rp = ring_params_from_json(in);
  if (!opt.m.empty() && ModulusTuple(opt.m) != rp.m)
    throw parse_error("file moduli " + tuple_str(rp.m.entries) + " do not match --m " +
                      tuple_str(opt.m));
  if (opt.q != 0 && opt.q != rp.q)
    throw parse_error("file field size " + std::to_string(rp.q) + " does not match --q " +
                      std::to_string(opt.q));
  checked_tuple_count(rp.m, opt.size_limit);
  const FieldCtx ctx = make_context(rp.m, rp.q);
  const auto table = std::make_shared<const OrbitTable>(orbit_table(rp.m, rp.q));
  const SpectralVector v = spectrum_from_json(in, ctx, table);
  const CircElem f = decode(v, ctx);

  if (opt.format == "text") {
    std::ostringstream os;
    os << "element of the ring with moduli " << tuple_str(rp.m.entries) << " over F_" << rp.q
       << "\n";
    IndexTuple g(rp.m.size(), 0);
    for (u64 lin = 0; lin < f.size(); ++lin, next_tuple(g, rp.m)) {
      if (is_zero(f[lin])) continue;
      os << "  X^" << tuple_str(g) << " * [" << detail::join(f[lin].c) << "]\n";
    }
    write_out(opt.output, os.str());
    return 0;
  }
  write_out(opt.output, dump_canonical(circ_to_json(f)));
  return 0;
}

int cmd_gauss(const CommonOpts& opt) {
  if (opt.m.empty()) throw std::invalid_argument("gauss: at least one --m value required");
  bool all_hold = true;
  json items = json::array();
  std::ostringstream os;
  for (u64 mi : opt.m) {
    const GaussIdentity g = gauss_identity(mi);
    all_hold = all_hold && g.holds;
    if (opt.format == "json")
      items.push_back(json{{"m", g.m}, {"sum", g.sum}, {"holds", g.holds}});
    else
      os << "m=" << g.m << ": totients of divisors sum to " << g.sum << " ("
         << (g.holds ? "ok" : "MISMATCH") << ")\n";
  }
  if (opt.format == "json")
    write_out(opt.output, dump_canonical(json{{"checks", std::move(items)}}));
  else
    write_out(opt.output, os.str());
  return all_hold ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wedderburn decomposition of semisimple circulant rings over finite fields"};
  app.require_subcommand(1);

  CommonOpts opt;
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
  };
  auto add_ring = [&](CLI::App* sub) {
    sub->add_option("--m", opt.m, "Comma-separated moduli m_1,...,m_n")
        ->required()
        ->delimiter(',');
    sub->add_option("--q", opt.q, "Base field size (a prime power)")->required();
  };
  auto add_limit = [&](CLI::App* sub) {
    sub->add_option("--size-limit", opt.size_limit,
                    "Dense coefficient-count guard (default 1000000)");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", opt.output, "Output path (default stdout)");
  };

  CLI::App* decompose =
      app.add_subcommand("decompose", "Compute the Wedderburn decomposition plan");
  add_ring(decompose);
  add_format(decompose);
  add_output(decompose);

  CLI::App* orbits_cmd = app.add_subcommand("orbits", "Enumerate the orbit table");
  add_ring(orbits_cmd);
  add_format(orbits_cmd);
  add_limit(orbits_cmd);
  add_output(orbits_cmd);

  CLI::App* idem = app.add_subcommand("idempotents", "Construct the primitive idempotents");
  add_ring(idem);
  add_format(idem);
  add_limit(idem);
  add_output(idem);

  CLI::App* verify = app.add_subcommand("verify", "Check the isomorphism and idempotents");
  add_ring(verify);
  add_format(verify);
  add_limit(verify);
  add_output(verify);
  verify->add_option("--trials", opt.trials, "Number of random trials (default 100)");
  verify->add_option("--seed", opt.seed, "Random seed");

  CLI::App* encode_cmd =
      app.add_subcommand("encode", "Map a ring element (JSON) to its spectrum");
  encode_cmd->add_option("--input", opt.input, "Input path (default stdin)");
  encode_cmd->add_option("--m", opt.m, "Expected moduli (cross-check)")->delimiter(',');
  encode_cmd->add_option("--q", opt.q, "Expected field size (cross-check)");
  add_limit(encode_cmd);
  add_output(encode_cmd);
  encode_cmd->add_option("--format", opt.format, "Output format (default json)")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App* decode_cmd =
      app.add_subcommand("decode", "Map a spectrum (JSON) back to its ring element");
  decode_cmd->add_option("--input", opt.input, "Input path (default stdin)");
  decode_cmd->add_option("--m", opt.m, "Expected moduli (cross-check)")->delimiter(',');
  decode_cmd->add_option("--q", opt.q, "Expected field size (cross-check)");
  add_limit(decode_cmd);
  add_output(decode_cmd);
  decode_cmd->add_option("--format", opt.format, "Output format (default json)")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App* gauss = app.add_subcommand("gauss", "Check the divisor-totient identity");
  gauss->add_option("--m", opt.m, "Comma-separated values to check")->required()->delimiter(',');
  add_format(gauss);
  add_output(gauss);

  CLI11_PARSE(app, argc, argv);

  // Data commands default to json (their output feeds the next command);
  // analysis commands default to text.
  if (opt.format.empty())
    opt.format = (encode_cmd->parsed() || decode_cmd->parsed()) ? "json" : "text";

  try {
    if (decompose->parsed()) return cmd_decompose(opt);
    if (orbits_cmd->parsed()) return cmd_orbits(opt);
    if (idem->parsed()) return cmd_idempotents(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (encode_cmd->parsed()) return cmd_encode(opt);
    if (decode_cmd->parsed()) return cmd_decode(opt);
    if (gauss->parsed()) return cmd_gauss(opt);
  } catch (const non_semisimple_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const size_limit_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const spectrum_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  }
  return 0;
}
