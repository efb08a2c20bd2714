#ifndef CHOREFAIR_INSTANCE_HPP_
#define CHOREFAIR_INSTANCE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace chorefair {

using Value = std::int64_t;

/// Agents x chores matrix of nonpositive integer valuations.
///
/// Entry value(i, c) is agent i's (additive) utility for chore c. Labels are
/// optional; when present there is one per agent / chore.
class Instance {
 public:
  Instance() = default;
  Instance(std::size_t agents, std::size_t chores, std::vector<Value> values,
           std::vector<std::string> agent_labels = {},
           std::vector<std::string> chore_labels = {});

  /// Builds from one row per agent. Throws invalid_input on ragged rows or
  /// positive entries.
  static Instance from_rows(const std::vector<std::vector<Value>>& rows);

  [[nodiscard]] std::size_t agents() const { return agents_; }
  [[nodiscard]] std::size_t chores() const { return chores_; }
  [[nodiscard]] Value value(std::size_t agent, std::size_t chore) const {
    return values_[agent * chores_ + chore];
  }
  /// |v_i(c)|, the cost agent i attributes to chore c.
  [[nodiscard]] Value cost(std::size_t agent, std::size_t chore) const { return -value(agent, chore); }
  [[nodiscard]] std::span<const Value> row(std::size_t agent) const {
    return {values_.data() + agent * chores_, chores_};
  }
  [[nodiscard]] const std::vector<Value>& values() const { return values_; }
  [[nodiscard]] std::vector<std::vector<Value>> rows() const;

  [[nodiscard]] const std::vector<std::string>& agent_labels() const { return agent_labels_; }
  [[nodiscard]] const std::vector<std::string>& chore_labels() const { return chore_labels_; }

  /// Copy with one agent's row multiplied by a positive integer.
  [[nodiscard]] Instance scaled_row(std::size_t agent, Value factor) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::size_t agents_ = 0;
  std::size_t chores_ = 0;
  std::vector<Value> values_;
  std::vector<std::string> agent_labels_;
  std::vector<std::string> chore_labels_;
};

/// Total assignment of chores to agents: owner(c) is the agent holding chore c.
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(std::vector<std::size_t> owners) : owners_(std::move(owners)) {}

  [[nodiscard]] std::size_t chores() const { return owners_.size(); }
  [[nodiscard]] std::size_t owner(std::size_t chore) const { return owners_[chore]; }
  [[nodiscard]] const std::vector<std::size_t>& owners() const { return owners_; }

  /// Bundles A_0..A_{n-1}, each listing chore indices in increasing order.
  [[nodiscard]] std::vector<std::vector<std::size_t>> bundles(std::size_t agents) const;

  friend bool operator==(const Allocation&, const Allocation&) = default;

 private:
  std::vector<std::size_t> owners_;
};

/// Throws invalid_input unless alloc assigns each of inst's chores to an agent
/// of inst.
void validate(const Instance& inst, const Allocation& alloc);

struct DubiousCopy {
  std::size_t chore = 0;
  std::size_t agent = 0;
  std::size_t count = 1;

  friend bool operator==(const DubiousCopy&, const DubiousCopy&) = default;
};

/// Multiset of dubious copies, kept merged by (chore, agent) and sorted.
class DubiousAllocation {
 public:
  DubiousAllocation() = default;
  explicit DubiousAllocation(const std::vector<DubiousCopy>& copies);

  void add(std::size_t chore, std::size_t agent, std::size_t count = 1);
  void merge(const DubiousAllocation& other);

  [[nodiscard]] const std::vector<DubiousCopy>& copies() const { return copies_; }
  /// k = total multiplicity.
  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] bool empty() const { return copies_.empty(); }
  /// Multiplicity of copies of chore placed at agent.
  [[nodiscard]] std::size_t count(std::size_t chore, std::size_t agent) const;
  /// True if every copy of this is also present (with at least the same
  /// multiplicity) in other.
  [[nodiscard]] bool is_subset_of(const DubiousAllocation& other) const;

  friend bool operator==(const DubiousAllocation&, const DubiousAllocation&) = default;

 private:
  std::vector<DubiousCopy> copies_;
};

/// Throws invalid_input unless every copy references a chore and agent of inst.
void validate(const Instance& inst, const DubiousAllocation& witness);

struct BivaluedParams {
  Value low = 0;   // x, the more costly value
  Value high = 0;  // y; x < y < 0, or x == y when only one value occurs
};

struct TwoTypesPartition {
  std::vector<std::size_t> x_chores;
  std::vector<std::size_t> y_chores;
};

/// Restricted valuation classes an instance belongs to. Flags overlap.
struct ValuationClass {
  bool identical = false;
  bool binary = false;
  std::optional<BivaluedParams> bivalued;
  std::optional<TwoTypesPartition> two_types;

  [[nodiscard]] bool general() const { return !identical && !binary && !bivalued && !two_types; }
};

ValuationClass classify_valuations(const Instance& inst);

}  // namespace chorefair

#endif  // CHOREFAIR_INSTANCE_HPP_
