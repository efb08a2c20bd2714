#ifndef CHOREFAIR_FAIRNESS_HPP_
#define CHOREFAIR_FAIRNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "chorefair/instance.hpp"

namespace chorefair {

/// Square agents x agents matrix, row-major.
class AgentMatrix {
 public:
  AgentMatrix() = default;
  explicit AgentMatrix(std::size_t agents) : agents_(agents), cells_(agents * agents, 0) {}

  [[nodiscard]] std::size_t agents() const { return agents_; }
  [[nodiscard]] Value& at(std::size_t i, std::size_t h) { return cells_[i * agents_ + h]; }
  [[nodiscard]] Value at(std::size_t i, std::size_t h) const { return cells_[i * agents_ + h]; }

  friend bool operator==(const AgentMatrix&, const AgentMatrix&) = default;

 private:
  std::size_t agents_ = 0;
  std::vector<Value> cells_;
};

/// at(i, h) = v_i(A_h).
AgentMatrix bundle_values(const Instance& inst, const Allocation& alloc);

struct EnvyReport {
  AgentMatrix envy;           // e_i(h) = max(v_i(A_h) - v_i(A_i), 0)
  std::vector<Value> totals;  // E_i

  [[nodiscard]] bool envy_free() const;
};

EnvyReport envy_matrix(const Instance& inst, const Allocation& alloc);

bool is_ef(const Instance& inst, const Allocation& alloc);
bool is_ef1(const Instance& inst, const Allocation& alloc);

/// Values as perceived once dubious copies are added: a copy costs its
/// receiver nothing and every other agent its full value.
class AugmentedView {
 public:
  AugmentedView(const Instance& inst, const Allocation& alloc, const DubiousAllocation& witness);

  /// v_i(A*_h).
  [[nodiscard]] Value perceived(std::size_t i, std::size_t h) const { return perceived_.at(i, h); }
  [[nodiscard]] const AgentMatrix& matrix() const { return perceived_; }
  [[nodiscard]] bool envy_free() const;

 private:
  AgentMatrix perceived_;
};

enum class DefVariant { def, sdef, pdef };

std::string_view to_string(DefVariant variant);
DefVariant parse_def_variant(std::string_view text);

/// True iff the augmented allocation is envy-free and the witness obeys the
/// variant's placement rules (sDEF: each chore copied at most once overall;
/// pDEF: copies only of chores in the receiver's own bundle).
bool check_def_witness(const Instance& inst, const Allocation& alloc, const DubiousAllocation& witness,
                       DefVariant variant = DefVariant::def);

enum class PoMethod { brute, binary_fast, automatic };

struct PoOptions {
  PoMethod method = PoMethod::automatic;
  /// Maximum number of allocations (n^m) the brute-force check may face.
  std::uint64_t budget = 2'000'000;
};

/// Pareto optimality. automatic uses binary_fast on binary instances and
/// brute force otherwise. Throws budget_exceeded when brute force is required
/// and n^m exceeds the budget, invalid_input for binary_fast on a non-binary
/// instance.
bool is_pareto_optimal(const Instance& inst, const Allocation& alloc, const PoOptions& options = {});

}  // namespace chorefair

#endif  // CHOREFAIR_FAIRNESS_HPP_
