// Worked example instances and their circled allocations.
#ifndef CHOREFAIR_TESTS_FIXTURES_HPP_
#define CHOREFAIR_TESTS_FIXTURES_HPP_

#include <chorefair/instance.hpp>

namespace fixtures {

using chorefair::Allocation;
using chorefair::Instance;
using chorefair::Value;

// Ali, Bo, Chan; laundry, trash, vacuuming.
inline Instance housemates() {
  return Instance(3, 3, {-1, -1, -1, -1, -2, -3, -1, -3, -3}, {"Ali", "Bo", "Chan"},
                  {"laundry", "trash", "vacuuming"});
}
inline Allocation housemates_circled() { return Allocation({0, 1, 2}); }

// n agents, n chores: c_1..c_{n-1} cost 1 to everyone, c_n costs n.
inline Instance last_chore_heavy(std::size_t n) {
  std::vector<Value> v;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < n; ++c) v.push_back(c + 1 == n ? -static_cast<Value>(n) : -1);
  }
  return Instance(n, n, std::move(v));
}

// Agent i dislikes only chore i.
inline Instance private_chores(std::size_t n) {
  std::vector<Value> v(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = -1;
  return Instance(n, n, std::move(v));
}

inline Allocation diagonal(std::size_t n) {
  std::vector<std::size_t> owners(n);
  for (std::size_t c = 0; c < n; ++c) owners[c] = c;
  return Allocation(std::move(owners));
}

// DEF-2 but not EF1.
inline Instance not_ef1() { return Instance(3, 4, {-2, -1, 0, -3, -1, -1, -1, -1, -1, -1, -1, -1}); }
inline Allocation not_ef1_circled() { return Allocation({0, 0, 1, 2}); }

}  // namespace fixtures

#endif  // CHOREFAIR_TESTS_FIXTURES_HPP_
