#ifndef CHOREFAIR_ALGORITHMS_HPP_
#define CHOREFAIR_ALGORITHMS_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "chorefair/instance.hpp"

namespace chorefair {

std::vector<std::size_t> identity_order(std::size_t size);

struct RoundRobinTrace {
  Allocation allocation;
  std::vector<std::size_t> order;                       // agent pick order
  std::vector<std::optional<std::size_t>> last_pick;    // per agent, last chore picked
  std::optional<std::size_t> last_chore;                // chore allocated in the final step
  std::optional<std::size_t> last_agent;                // its owner
};

/// Agents pick in turn (cycling through order) the remaining chore they value
/// most, ties to the lowest chore index. An empty order means identity.
RoundRobinTrace round_robin(const Instance& inst, std::vector<std::size_t> order = {});

/// One copy of the globally last-allocated chore for every agent except its
/// owner. Makes any round-robin allocation envy-free with n - 1 copies.
DubiousAllocation rr_augmentation(const Instance& inst, const RoundRobinTrace& trace);

/// Envy-cycle elimination on the top-trading envy graph. Chores are handed out
/// in chore_order (empty = natural order) to the lowest-index agent envying
/// nobody; when every agent envies someone, a top-trading cycle is rotated
/// first.
Allocation envy_graph(const Instance& inst, std::vector<std::size_t> chore_order = {});

struct AugmentedAllocation {
  Allocation allocation;
  DubiousAllocation witness;
};

/// Binary valuations: zero-cost chores go to their lowest-index zero-valuer,
/// chores everybody dislikes are dealt round-robin, and agents left one common
/// chore short get a dubious copy of the first common chore.
AugmentedAllocation binary_def_po(const Instance& inst);

}  // namespace chorefair

#endif  // CHOREFAIR_ALGORITHMS_HPP_
