#pragma once

// Orbits of the coordinatewise multiplication action x -> x * q^t on
// Z_{m_1} x ... x Z_{m_n}, grouped into gcd blocks. Orbit representatives
// index the simple components of the semisimple circulant ring, and orbit
// lengths are the component extension degrees.

#include <map>
#include <vector>

#include "errors.hpp"
#include "numtheory.hpp"

namespace wedderburn {

/// One orbit of the action: lexicographically minimal representative,
/// sorted member list, containing block, and length.
struct Orbit {
  IndexTuple representative;
  std::vector<IndexTuple> members;
  DivisorTuple block;
  u64 length = 0;
};

struct BlockStats {
  u64 length = 0;  // common orbit length inside the block
  u64 count = 0;   // number of orbits inside the block
  friend bool operator==(const BlockStats&, const BlockStats&) = default;
};

struct BlockOrbits {
  DivisorTuple d;
  BlockStats stats;               // derived from the enumeration
  std::vector<Orbit> orbits;      // ordered by representative
};

/// Complete orbit enumeration: blocks in divisor-tuple order, orbits inside a
/// block ordered by lexicographic representative.
struct OrbitTable {
  ModulusTuple m;
  u64 q = 0;
  std::vector<BlockOrbits> blocks;
  std::vector<IndexTuple> representatives;  // flattened, table order
  u64 orbit_count = 0;
};

/// The acting vector (q mod m_1, ..., q mod m_n). Errors when some m_i
/// shares a factor with q, since the action is invertible only then.
inline IndexTuple q_vector(const ModulusTuple& m, u64 q) {
  if (q < 2) throw std::invalid_argument("q_vector: q must be at least 2");
  std::vector<u64> offending;
  for (u64 mi : m.entries)
    if (std::gcd(mi, q) != 1) offending.push_back(mi);
  if (!offending.empty())
    throw non_semisimple_error("action of q = " + std::to_string(q) +
                               " on moduli (" + detail::join(m.entries) +
                               ") is not invertible: moduli {" + detail::join(offending) +
                               "} share a factor with q");
  IndexTuple v(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) v[i] = q % m[i];
  return v;
}

/// Apply the action t times: x_i -> x_i * q^t mod m_i.
inline IndexTuple act(const IndexTuple& x, u64 t, const ModulusTuple& m, u64 q) {
  check_in_range(x, m, "act");
  IndexTuple y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const u64 qt = detail::powmod(q, t, m[i]);
    y[i] = detail::mulmod(x[i], qt, m[i]);
  }
  return y;
}

namespace detail {

inline IndexTuple act_once(const IndexTuple& x, const IndexTuple& qv, const ModulusTuple& m) {
  IndexTuple y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = mulmod(x[i], qv[i], m[i]);
  return y;
}

}  // namespace detail

/// Orbit of a single point.
inline Orbit orbit_of(const IndexTuple& x, const ModulusTuple& m, u64 q) {
  check_in_range(x, m, "orbit_of");
  const IndexTuple qv = q_vector(m, q);
  Orbit o;
  o.members.push_back(x);
  for (IndexTuple y = detail::act_once(x, qv, m); y != x; y = detail::act_once(y, qv, m))
    o.members.push_back(y);
  o.length = o.members.size();
  std::sort(o.members.begin(), o.members.end());
  o.representative = o.members.front();
  o.block = classify(x, m);
  return o;
}

/// Closed-form block statistics: orbit length lcm_i ord_{m_i/d_i}(q) and
/// orbit count block_size(d, m) / length.
inline BlockStats block_stats(const DivisorTuple& d, const ModulusTuple& m, u64 q) {
  check_divides(d, m, "block_stats");
  q_vector(m, q);  // validates invertibility
  u64 ell = 1;
  for (std::size_t i = 0; i < d.size(); ++i) ell = std::lcm(ell, mult_order(q, m[i] / d[i]));
  const u64 size = block_size(d, m);
  if (size % ell != 0)
    throw std::logic_error("block_stats: orbit length does not divide block size");
  return BlockStats{ell, size / ell};
}

/// Enumerate every orbit by a lexicographic scan. The first unvisited point
/// of an orbit is its lexicographic minimum, so representatives come out
/// canonical and blocks collect their orbits in representative order.
inline OrbitTable orbit_table(const ModulusTuple& m, u64 q) {
  const IndexTuple qv = q_vector(m, q);
  const u64 count = tuple_count(m);

  OrbitTable table;
  table.m = m;
  table.q = q;

  const auto block_labels = divisor_tuples(m);
  std::map<std::vector<u64>, std::size_t> block_pos;
  for (std::size_t i = 0; i < block_labels.size(); ++i)
    block_pos.emplace(block_labels[i].entries, i);
  table.blocks.resize(block_labels.size());
  for (std::size_t i = 0; i < block_labels.size(); ++i) table.blocks[i].d = block_labels[i];

  std::vector<bool> visited(count, false);
  IndexTuple x(m.size(), 0);
  for (u64 lin = 0; lin < count; ++lin, next_tuple(x, m)) {
    if (visited[lin]) continue;
    Orbit o;
    o.representative = x;
    o.block = classify(x, m);
    IndexTuple y = x;
    u64 ylin = lin;
    do {
      visited[ylin] = true;
      o.members.push_back(y);
      y = detail::act_once(y, qv, m);
      ylin = linear_index(y, m);
    } while (ylin != lin);
    o.length = o.members.size();
    std::sort(o.members.begin(), o.members.end());
    table.blocks[block_pos.at(o.block.entries)].orbits.push_back(std::move(o));
  }

  for (BlockOrbits& b : table.blocks) {
    if (b.orbits.empty())
      throw std::logic_error("orbit_table: empty block " + detail::join(b.d.entries));
    b.stats.count = b.orbits.size();
    b.stats.length = b.orbits.front().length;
    for (const Orbit& o : b.orbits) {
      if (o.length != b.stats.length)
        throw std::logic_error("orbit_table: unequal orbit lengths inside a block");
      table.representatives.push_back(o.representative);
    }
    table.orbit_count += b.orbits.size();
  }
  return table;
}

}  // namespace wedderburn
