#ifndef CHOREFAIR_SOLVER_HPP_
#define CHOREFAIR_SOLVER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>

#include "chorefair/fairness.hpp"
#include "chorefair/instance.hpp"

namespace chorefair {

struct SolveOptions {
  /// Branch-and-bound nodes per solve before returning an inexact result.
  std::uint64_t node_budget = 10'000'000;
};

/// Outcome of minimizing dubious copies. min_k is empty when no witness of the
/// requested variant exists (sDEF / pDEF only).
struct SolveResult {
  std::optional<std::size_t> min_k;
  DubiousAllocation witness;
  bool exact = true;
  std::uint64_t nodes = 0;
  double runtime_ms = 0.0;

  [[nodiscard]] bool feasible() const { return min_k.has_value(); }
};

/// Fewest copies placed at agent target that remove all envy toward it. For
/// sDEF each chore may be used once (the coupling across targets is handled by
/// min_dubious); for pDEF only chores of the target's own bundle qualify.
SolveResult min_cover_for_target(const Instance& inst, const Allocation& alloc, std::size_t target,
                                 DefVariant variant = DefVariant::def, const SolveOptions& options = {});

/// Smallest k for which alloc is (s/p)DEF-k, with a witness. DEF and pDEF
/// decompose into independent per-target covers; sDEF is searched globally.
SolveResult min_dubious(const Instance& inst, const Allocation& alloc, DefVariant variant = DefVariant::def,
                        const SolveOptions& options = {});

struct BruteForceOptions {
  /// Candidate witnesses checked before giving up (budget_exceeded).
  std::uint64_t budget = 1'000'000;
};

/// Reference oracle: enumerates witnesses by increasing size and returns the
/// first that verifies.
SolveResult min_dubious_bruteforce(const Instance& inst, const Allocation& alloc,
                                   DefVariant variant = DefVariant::def, const BruteForceOptions& options = {});

/// min_dubious(...) <= k. Throws budget_exceeded if the solver could not
/// settle the question within budget.
bool is_def_k(const Instance& inst, const Allocation& alloc, std::size_t k, DefVariant variant = DefVariant::def,
              const SolveOptions& options = {});

struct AllocationSearchOptions {
  bool po_only = false;
  /// Allocation-tree nodes before stopping with the best allocation so far.
  std::uint64_t node_budget = 10'000'000;
  /// Stop as soon as an allocation needing at most this many copies is found;
  /// the result then answers "min <= stop_at" but need not be the minimum.
  std::optional<std::size_t> stop_at;
  SolveOptions inner;
  PoOptions po;
};

struct AllocationSearchResult {
  Allocation allocation;
  SolveResult result;  // DEF minimum for allocation; nodes count both levels
  bool exact = true;
};

/// Allocation (Pareto-optimal if po_only) minimizing the DEF minimum, by
/// branch-and-bound over chore owners.
AllocationSearchResult min_over_allocations(const Instance& inst, const AllocationSearchOptions& options = {});

}  // namespace chorefair

#endif  // CHOREFAIR_SOLVER_HPP_
