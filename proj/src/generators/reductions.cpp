#include <algorithm>
#include <numeric>
#include <string>

#include "chorefair/errors.hpp"
#include "chorefair/generators.hpp"

namespace chorefair {

bool partition_oracle(const std::vector<Value>& items) {
  const Value total = std::accumulate(items.begin(), items.end(), Value{0});
  if (total % 2 != 0) return false;
  const auto half = static_cast<std::size_t>(total / 2);
  std::vector<bool> reachable(half + 1, false);
  reachable[0] = true;
  for (auto x : items) {
    for (std::size_t s = half + 1; s-- > static_cast<std::size_t>(x);) {
      if (reachable[s - static_cast<std::size_t>(x)]) reachable[s] = true;
    }
  }
  return reachable[half];
}

ReductionInstance gen_from_partition(const std::vector<Value>& items, std::size_t k) {
  if (items.empty()) throw invalid_input("partition: empty multiset");
  if (k == 0) throw invalid_input("partition: k must be at least 1");
  for (auto x : items) {
    if (x <= 0) throw invalid_input("partition: items must be positive, got " + std::to_string(x));
  }
  const Value total = std::accumulate(items.begin(), items.end(), Value{0});
  const Value scale = total % 2 == 0 ? 1 : 2;
  const Value half = total * scale / 2;

  const std::size_t n = 2 * k + 2;
  std::vector<Value> row;
  std::vector<std::string> chore_labels;
  for (std::size_t j = 0; j < items.size(); ++j) {
    row.push_back(-items[j] * scale);
    chore_labels.push_back("main" + std::to_string(j + 1));
  }
  for (std::size_t j = 0; j < k; ++j) {
    row.push_back(-half);
    chore_labels.push_back("dummy" + std::to_string(j + 1));
  }
  std::vector<Value> values;
  for (std::size_t i = 0; i < n; ++i) values.insert(values.end(), row.begin(), row.end());
  return {Instance(n, row.size(), std::move(values), {}, std::move(chore_labels)), partition_oracle(items), k};
}

bool set_splitting_oracle(const SetSystem& sets) {
  const std::size_t q = sets.universe;
  if (q >= 64) throw invalid_input("set splitting: universe too large to enumerate");
  for (std::uint64_t coloring = 0; coloring < (std::uint64_t{1} << q); ++coloring) {
    const bool split = std::all_of(sets.family.begin(), sets.family.end(), [&](const auto& member) {
      bool one = false;
      bool two = false;
      for (auto v : member) ((coloring >> v) & 1 ? one : two) = true;
      return one && two;
    });
    if (split) return true;
  }
  return false;
}

ReductionInstance gen_from_setsplitting(const SetSystem& sets, std::size_t k) {
  if (sets.family.empty()) throw invalid_input("set splitting: empty family");
  const std::size_t q = sets.universe;
  const std::size_t r = sets.family.size();
  for (const auto& member : sets.family) {
    for (auto v : member) {
      if (v >= q) throw invalid_input("set splitting: vertex " + std::to_string(v) + " outside the universe");
    }
  }
  const std::size_t rp = std::max({q, r, k});
  const std::size_t n = rp + k + 2;
  const std::size_t m = q + rp;

  std::vector<Value> values(n * m, 0);
  std::vector<std::string> agent_labels;
  std::vector<std::string> chore_labels;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = q; c < m; ++c) values[i * m + c] = -1;
  }
  for (std::size_t i = 0; i < rp; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      const bool adjacent =
          i >= r || std::find(sets.family[i].begin(), sets.family[i].end(), j) != sets.family[i].end();
      if (adjacent) values[i * m + j] = -1;
    }
    agent_labels.push_back("edge" + std::to_string(i + 1));
  }
  agent_labels.emplace_back("color1");
  agent_labels.emplace_back("color2");
  for (std::size_t i = 0; i < k; ++i) agent_labels.push_back("dummy" + std::to_string(i + 1));
  for (std::size_t j = 0; j < q; ++j) chore_labels.push_back("vertex" + std::to_string(j + 1));
  for (std::size_t j = 0; j < rp; ++j) chore_labels.push_back("dummy" + std::to_string(j + 1));
  return {Instance(n, m, std::move(values), std::move(agent_labels), std::move(chore_labels)),
          set_splitting_oracle(sets), k};
}

namespace {

void check_rx3c(std::size_t universe, const std::vector<Triple>& subsets) {
  if (universe == 0 || universe % 3 != 0) throw invalid_input("rx3c: universe size must be a positive multiple of 3");
  if (subsets.size() != universe) throw invalid_input("rx3c: need exactly |U| subsets");
  std::vector<std::size_t> occurrences(universe, 0);
  for (const auto& s : subsets) {
    for (auto u : s) {
      if (u >= universe) throw invalid_input("rx3c: element " + std::to_string(u) + " outside the universe");
      ++occurrences[u];
    }
    if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2]) throw invalid_input("rx3c: subsets must have three distinct elements");
  }
  for (std::size_t u = 0; u < universe; ++u) {
    if (occurrences[u] != 3) {
      throw invalid_input("rx3c: element " + std::to_string(u) + " appears in " + std::to_string(occurrences[u]) +
                          " subsets, expected 3");
    }
  }
}

bool cover_from(std::size_t universe, const std::vector<Triple>& subsets, std::size_t start, std::size_t left,
                std::vector<bool>& covered) {
  if (left == 0) return std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
  for (std::size_t s = start; s + left <= subsets.size(); ++s) {
    const auto& t = subsets[s];
    if (covered[t[0]] || covered[t[1]] || covered[t[2]]) continue;
    for (auto u : t) covered[u] = true;
    const bool found = cover_from(universe, subsets, s + 1, left - 1, covered);
    for (auto u : t) covered[u] = false;
    if (found) return true;
  }
  return false;
}

}  // namespace

bool exact_cover_oracle(std::size_t universe, const std::vector<Triple>& subsets) {
  if (universe % 3 != 0) return false;
  std::vector<bool> covered(universe, false);
  return cover_from(universe, subsets, 0, universe / 3, covered);
}

ExactCoverInstance gen_from_rx3c(std::size_t universe, const std::vector<Triple>& subsets) {
  check_rx3c(universe, subsets);
  const std::size_t n = universe;
  const std::size_t agents = n + 1;
  const std::size_t dummies = 4 * n * n;
  const std::size_t m = dummies + subsets.size();
  auto dummy = [n](std::size_t i, std::size_t j, std::size_t r) { return (i * n + j) * 4 + r; };

  std::vector<Value> values(agents * m, 0);
  std::vector<std::size_t> owners(m, 0);
  std::vector<std::string> chore_labels(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t r = 0; r < 4; ++r) {
        const std::size_t c = dummy(i, j, r);
        values[(i + 1) * m + c] = -1;
        owners[c] = j + 1;
        chore_labels[c] = "d" + std::to_string(r + 1) + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
      }
    }
  }
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    const std::size_t c = dummies + s;
    for (auto u : subsets[s]) values[(u + 1) * m + c] = -1;
    chore_labels[c] = "set" + std::to_string(s + 1);
  }
  std::vector<std::string> agent_labels{"chooser"};
  for (std::size_t u = 0; u < n; ++u) agent_labels.push_back("element" + std::to_string(u + 1));
  return {Instance(agents, m, std::move(values), std::move(agent_labels), std::move(chore_labels)),
          Allocation(std::move(owners)), exact_cover_oracle(universe, subsets), n / 3};
}

}  // namespace chorefair
