#include <algorithm>
#include <numeric>
#include <string>

#include "chorefair/algorithms.hpp"
#include "chorefair/errors.hpp"

namespace chorefair {

std::vector<std::size_t> identity_order(std::size_t size) {
  std::vector<std::size_t> order(size);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return order;
}

namespace {

void check_permutation(const std::vector<std::size_t>& order, std::size_t size, const char* what) {
  if (order.size() != size) {
    throw invalid_input(std::string(what) + " must list " + std::to_string(size) + " entries");
  }
  std::vector<bool> seen(size, false);
  for (auto x : order) {
    if (x >= size || seen[x]) throw invalid_input(std::string(what) + " is not a permutation");
    seen[x] = true;
  }
}

// Round-robin restricted to the given chores; owners of other chores are left
// untouched in owners.
RoundRobinTrace deal_round_robin(const Instance& inst, const std::vector<std::size_t>& order,
                                 const std::vector<std::size_t>& pool, std::vector<std::size_t> owners) {
  RoundRobinTrace trace;
  trace.order = order;
  trace.last_pick.assign(inst.agents(), std::nullopt);
  std::vector<bool> taken(inst.chores(), true);
  for (auto c : pool) taken[c] = false;

  for (std::size_t step = 0; step < pool.size(); ++step) {
    const std::size_t agent = order[step % order.size()];
    std::optional<std::size_t> pick;
    for (auto c : pool) {
      if (taken[c]) continue;
      if (!pick || inst.value(agent, c) > inst.value(agent, *pick) ||
          (inst.value(agent, c) == inst.value(agent, *pick) && c < *pick)) {
        pick = c;
      }
    }
    taken[*pick] = true;
    owners[*pick] = agent;
    trace.last_pick[agent] = *pick;
    trace.last_chore = *pick;
    trace.last_agent = agent;
  }
  trace.allocation = Allocation(std::move(owners));
  return trace;
}

}  // namespace

RoundRobinTrace round_robin(const Instance& inst, std::vector<std::size_t> order) {
  if (order.empty()) order = identity_order(inst.agents());
  check_permutation(order, inst.agents(), "agent order");
  return deal_round_robin(inst, order, identity_order(inst.chores()), std::vector<std::size_t>(inst.chores(), 0));
}

DubiousAllocation rr_augmentation(const Instance& inst, const RoundRobinTrace& trace) {
  validate(inst, trace.allocation);
  DubiousAllocation witness;
  if (!trace.last_chore || !trace.last_agent) return witness;
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    if (i != *trace.last_agent) witness.add(*trace.last_chore, i);
  }
  return witness;
}

Allocation envy_graph(const Instance& inst, std::vector<std::size_t> chore_order) {
  const std::size_t n = inst.agents();
  if (chore_order.empty()) chore_order = identity_order(inst.chores());
  check_permutation(chore_order, inst.chores(), "chore order");

  // bundle[h] is the set currently held by agent h; worth[i][h] = v_i(bundle[h]).
  std::vector<std::vector<std::size_t>> bundle(n);
  std::vector<std::vector<Value>> worth(n, std::vector<Value>(n, 0));

  auto envies = [&](std::size_t i) {
    for (std::size_t h = 0; h < n; ++h) {
      if (worth[i][h] > worth[i][i]) return true;
    }
    return false;
  };
  auto first_sink = [&]() -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < n; ++i) {
      if (!envies(i)) return i;
    }
    return std::nullopt;
  };

  for (auto c : chore_order) {
    std::optional<std::size_t> sink = first_sink();
    for (std::size_t rotations = 0; !sink; ++rotations) {
      if (rotations > n) throw algorithm_error("envy_graph: no envy-free agent after cycle elimination");
      // Top-trading edges: i points at the lowest-index bundle it likes best.
      std::vector<std::size_t> target(n);
      for (std::size_t i = 0; i < n; ++i) {
        std::optional<std::size_t> best;
        for (std::size_t h = 0; h < n; ++h) {
          if (h != i && (!best || worth[i][h] > worth[i][*best])) best = h;
        }
        target[i] = *best;
      }
      std::vector<std::size_t> seen_at(n, n);
      std::vector<std::size_t> path;
      std::size_t v = 0;
      while (seen_at[v] == n) {
        seen_at[v] = path.size();
        path.push_back(v);
        v = target[v];
      }
      const std::vector<std::size_t> cycle(path.begin() + static_cast<std::ptrdiff_t>(seen_at[v]), path.end());

      std::vector<std::vector<std::size_t>> moved(cycle.size());
      std::vector<std::vector<Value>> moved_worth(cycle.size(), std::vector<Value>(n));
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        const std::size_t from = target[cycle[k]];
        moved[k] = bundle[from];
        for (std::size_t i = 0; i < n; ++i) moved_worth[k][i] = worth[i][from];
      }
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        bundle[cycle[k]] = std::move(moved[k]);
        for (std::size_t i = 0; i < n; ++i) worth[i][cycle[k]] = moved_worth[k][i];
      }
      sink = first_sink();
    }
    bundle[*sink].push_back(c);
    for (std::size_t i = 0; i < n; ++i) worth[i][*sink] += inst.value(i, c);
  }

  std::vector<std::size_t> owners(inst.chores(), 0);
  for (std::size_t h = 0; h < n; ++h) {
    for (auto c : bundle[h]) owners[c] = h;
  }
  return Allocation(std::move(owners));
}

AugmentedAllocation binary_def_po(const Instance& inst) {
  if (!classify_valuations(inst).binary) throw invalid_input("binary_def_po requires binary valuations");
  const std::size_t n = inst.agents();
  std::vector<std::size_t> owners(inst.chores(), 0);
  std::vector<std::size_t> common;
  for (std::size_t c = 0; c < inst.chores(); ++c) {
    std::optional<std::size_t> zero_valuer;
    for (std::size_t i = 0; i < n && !zero_valuer; ++i) {
      if (inst.value(i, c) == 0) zero_valuer = i;
    }
    if (zero_valuer) {
      owners[c] = *zero_valuer;
    } else {
      common.push_back(c);
    }
  }
  auto trace = deal_round_robin(inst, identity_order(n), common, std::move(owners));

  AugmentedAllocation out{std::move(trace.allocation), {}};
  if (common.empty()) return out;
  std::vector<std::size_t> held(n, 0);
  for (auto c : common) ++held[out.allocation.owner(c)];
  const std::size_t most = *std::max_element(held.begin(), held.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (held[i] < most) out.witness.add(common.front(), i);
  }
  return out;
}

}  // namespace chorefair
