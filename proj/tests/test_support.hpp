// Random data for property tests.
#ifndef CHOREFAIR_TESTS_TEST_SUPPORT_HPP_
#define CHOREFAIR_TESTS_TEST_SUPPORT_HPP_

#include <chorefair/generators.hpp>
#include <chorefair/instance.hpp>

#include <algorithm>
#include <cstdint>
#include <vector>

namespace support {

using chorefair::Allocation;
using chorefair::DubiousAllocation;
using chorefair::Instance;
using chorefair::SplitMix64;
using chorefair::Value;

inline std::size_t uniform(SplitMix64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
}

// Entries uniform in [-max_cost, 0].
inline Instance random_instance(SplitMix64& rng, std::size_t n, std::size_t m, Value max_cost) {
  std::vector<Value> v(n * m);
  for (auto& x : v) x = -static_cast<Value>(rng.below(static_cast<std::uint64_t>(max_cost) + 1));
  return Instance(n, m, std::move(v));
}

// Entries drawn from the given list.
inline Instance random_instance_from(SplitMix64& rng, std::size_t n, std::size_t m, const std::vector<Value>& pool) {
  std::vector<Value> v(n * m);
  for (auto& x : v) x = pool[rng.below(pool.size())];
  return Instance(n, m, std::move(v));
}

// Bivalued: each entry -x or -y with 0 < y < x.
inline Instance random_bivalued(SplitMix64& rng, std::size_t n, std::size_t m) {
  const Value y = static_cast<Value>(uniform(rng, 1, 3));
  const Value x = y + static_cast<Value>(uniform(rng, 1, 4));
  return random_instance_from(rng, n, m, {-x, -y});
}

// Two types: a random split of the chores, one positive cost per agent and type.
inline Instance random_two_types(SplitMix64& rng, std::size_t n, std::size_t m) {
  std::vector<bool> in_x(m);
  for (std::size_t c = 0; c < m; ++c) in_x[c] = rng.below(2) == 0;
  std::vector<Value> v(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    const Value cx = static_cast<Value>(uniform(rng, 1, 5));
    const Value cy = static_cast<Value>(uniform(rng, 1, 5));
    for (std::size_t c = 0; c < m; ++c) v[i * m + c] = in_x[c] ? -cx : -cy;
  }
  return Instance(n, m, std::move(v));
}

inline Allocation random_allocation(SplitMix64& rng, std::size_t n, std::size_t m) {
  std::vector<std::size_t> owners(m);
  for (auto& o : owners) o = static_cast<std::size_t>(rng.below(n));
  return Allocation(std::move(owners));
}

inline DubiousAllocation random_witness(SplitMix64& rng, std::size_t n, std::size_t m, std::size_t max_copies) {
  DubiousAllocation w;
  if (m == 0) return w;
  const std::size_t k = static_cast<std::size_t>(rng.below(max_copies + 1));
  for (std::size_t t = 0; t < k; ++t) w.add(rng.below(m), rng.below(n));
  return w;
}

inline std::vector<std::size_t> random_permutation(SplitMix64& rng, std::size_t size) {
  std::vector<std::size_t> p(size);
  for (std::size_t i = 0; i < size; ++i) p[i] = i;
  for (std::size_t i = size; i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
  return p;
}

// Every allocation of m chores to n agents, in lexicographic order.
template <typename F>
void for_each_allocation(std::size_t n, std::size_t m, F&& visit) {
  std::vector<std::size_t> owners(m, 0);
  while (true) {
    visit(Allocation(owners));
    std::size_t c = 0;
    while (c < m && ++owners[c] == n) owners[c++] = 0;
    if (c == m) return;
  }
}

// Independent Pareto check: no allocation is weakly better for all and
// strictly better for someone.
inline bool pareto_optimal_by_enumeration(const Instance& inst, const Allocation& alloc) {
  const std::size_t n = inst.agents();
  auto utilities = [&](const Allocation& a) {
    std::vector<Value> u(n, 0);
    for (std::size_t c = 0; c < inst.chores(); ++c) u[a.owner(c)] += inst.value(a.owner(c), c);
    return u;
  };
  const auto base = utilities(alloc);
  bool dominated = false;
  for_each_allocation(n, inst.chores(), [&](const Allocation& other) {
    if (dominated) return;
    const auto u = utilities(other);
    bool weakly = true;
    bool strictly = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (u[i] < base[i]) weakly = false;
      if (u[i] > base[i]) strictly = true;
    }
    dominated = weakly && strictly;
  });
  return !dominated;
}

}  // namespace support

#endif  // CHOREFAIR_TESTS_TEST_SUPPORT_HPP_
