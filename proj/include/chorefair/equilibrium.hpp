#ifndef CHOREFAIR_EQUILIBRIUM_HPP_
#define CHOREFAIR_EQUILIBRIUM_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>

#include "chorefair/instance.hpp"
#include "chorefair/market.hpp"

namespace chorefair {

/// An allocation with prices, plus the agent earning the most (i_max) and the
/// priciest chore (c_max). Both ties go to the lowest index.
struct EquilibriumResult {
  Allocation allocation;
  PriceVector prices;
  std::size_t richest_agent = 0;
  std::optional<std::size_t> priciest_chore;  // empty iff m = 0
};

EquilibriumResult make_equilibrium_result(const Instance& inst, Allocation alloc, PriceVector prices);

/// copies_per_agent = 1: requires a pEF1 Fisher equilibrium and hands one copy
/// of c_max to every agent but i_max. copies_per_agent = 2: requires a Fisher
/// equilibrium whose bundle prices straddle 1 (see budget_condition_holds)
/// and hands out two copies each. Throws invalid_input naming the violated
/// precondition.
DubiousAllocation augment_from_equilibrium(const Instance& inst, const EquilibriumResult& eq,
                                           std::size_t copies_per_agent);

/// For every agent: p(A_i) <= 1 and p(A_i + c) >= 1 for some chore c, or
/// p(A_i) > 1 and p(A_i - c) < 1 for some c in A_i.
bool budget_condition_holds(const Instance& inst, const Allocation& alloc, const PriceVector& prices);

struct EquilibriumSearchOptions {
  /// Transfer / price-rise steps before giving up on the local search;
  /// 0 means 10 * n * m * m.
  std::uint64_t iteration_budget = 0;
  bool allow_fallback = true;
  /// Allocations x price patterns the exhaustive fallback may inspect.
  std::uint64_t fallback_budget = 50'000'000;
};

struct EquilibriumSearchStats {
  std::uint64_t transfers = 0;
  std::uint64_t price_rises = 0;
  bool used_fallback = false;
};

/// pEF1 Fisher market equilibrium for bivalued valuations. Starts from the
/// welfare-maximizing allocation priced at each chore's lowest cost, then
/// moves chores out of the big earner's MPB component and raises that
/// component's prices when no move helps. Throws budget_exceeded if both the
/// local search and the fallback run out of budget.
EquilibriumResult find_pef1_equilibrium(const Instance& inst, const EquilibriumSearchOptions& options = {},
                                        EquilibriumSearchStats* stats = nullptr);

struct TwoTypesResult {
  Allocation allocation;
  DubiousAllocation witness;
  EquilibriumResult equilibrium;
  std::size_t pivot_agent = 0;  // the only agent allowed to mix types
};

/// DEF(n-1) + PO allocation for instances with two chore types and strictly
/// negative valuations.
TwoTypesResult two_types_def_po(const Instance& inst);

}  // namespace chorefair

#endif  // CHOREFAIR_EQUILIBRIUM_HPP_
