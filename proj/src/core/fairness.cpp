#include "chorefair/fairness.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "chorefair/errors.hpp"

namespace chorefair {

AgentMatrix bundle_values(const Instance& inst, const Allocation& alloc) {
  validate(inst, alloc);
  const std::size_t n = inst.agents();
  AgentMatrix out(n);
  for (std::size_t c = 0; c < inst.chores(); ++c) {
    const std::size_t h = alloc.owner(c);
    for (std::size_t i = 0; i < n; ++i) out.at(i, h) += inst.value(i, c);
  }
  return out;
}

bool EnvyReport::envy_free() const {
  return std::all_of(totals.begin(), totals.end(), [](Value e) { return e == 0; });
}

EnvyReport envy_matrix(const Instance& inst, const Allocation& alloc) {
  const auto values = bundle_values(inst, alloc);
  const std::size_t n = inst.agents();
  EnvyReport report{AgentMatrix(n), std::vector<Value>(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t h = 0; h < n; ++h) {
      if (h == i) continue;
      const Value e = std::max<Value>(values.at(i, h) - values.at(i, i), 0);
      report.envy.at(i, h) = e;
      report.totals[i] += e;
    }
  }
  return report;
}

bool is_ef(const Instance& inst, const Allocation& alloc) { return envy_matrix(inst, alloc).envy_free(); }

bool is_ef1(const Instance& inst, const Allocation& alloc) {
  const auto values = bundle_values(inst, alloc);
  const std::size_t n = inst.agents();
  // Removing the worst chore of the envious agent is the best single removal.
  std::vector<Value> worst(n, 0);
  for (std::size_t c = 0; c < inst.chores(); ++c) {
    const std::size_t i = alloc.owner(c);
    worst[i] = std::min(worst[i], inst.value(i, c));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t h = 0; h < n; ++h) {
      if (h == i || values.at(i, h) <= values.at(i, i)) continue;
      if (values.at(i, i) - worst[i] < values.at(i, h)) return false;
    }
  }
  return true;
}

AugmentedView::AugmentedView(const Instance& inst, const Allocation& alloc, const DubiousAllocation& witness)
    : perceived_(bundle_values(inst, alloc)) {
  validate(inst, witness);
  for (const auto& copy : witness.copies()) {
    for (std::size_t i = 0; i < inst.agents(); ++i) {
      if (i == copy.agent) continue;
      perceived_.at(i, copy.agent) += static_cast<Value>(copy.count) * inst.value(i, copy.chore);
    }
  }
}

bool AugmentedView::envy_free() const {
  for (std::size_t i = 0; i < perceived_.agents(); ++i) {
    for (std::size_t h = 0; h < perceived_.agents(); ++h) {
      if (perceived_.at(i, h) > perceived_.at(i, i)) return false;
    }
  }
  return true;
}

std::string_view to_string(DefVariant variant) {
  switch (variant) {
    case DefVariant::def:
      return "def";
    case DefVariant::sdef:
      return "sdef";
    case DefVariant::pdef:
      return "pdef";
  }
  return "def";
}

DefVariant parse_def_variant(std::string_view text) {
  if (text == "def") return DefVariant::def;
  if (text == "sdef") return DefVariant::sdef;
  if (text == "pdef") return DefVariant::pdef;
  throw invalid_input("unknown variant '" + std::string(text) + "' (expected def, sdef or pdef)");
}

bool check_def_witness(const Instance& inst, const Allocation& alloc, const DubiousAllocation& witness,
                       DefVariant variant) {
  validate(inst, alloc);
  validate(inst, witness);
  if (variant == DefVariant::sdef) {
    std::vector<bool> used(inst.chores(), false);
    for (const auto& copy : witness.copies()) {
      if (copy.count != 1 || used[copy.chore]) return false;
      used[copy.chore] = true;
    }
  } else if (variant == DefVariant::pdef) {
    for (const auto& copy : witness.copies()) {
      if (alloc.owner(copy.chore) != copy.agent) return false;
    }
  }
  return AugmentedView(inst, alloc, witness).envy_free();
}

namespace {

bool binary_po(const Instance& inst, const Allocation& alloc) {
  for (std::size_t c = 0; c < inst.chores(); ++c) {
    bool has_zero_valuer = false;
    for (std::size_t i = 0; i < inst.agents(); ++i) has_zero_valuer |= inst.value(i, c) == 0;
    if (has_zero_valuer && inst.value(alloc.owner(c), c) != 0) return false;
  }
  return true;
}

// Depth-first enumeration of all allocations B, pruning a branch as soon as
// some agent's partial value already falls below v_i(A_i) (values only
// decrease as chores are added).
class DominanceSearch {
 public:
  DominanceSearch(const Instance& inst, const Allocation& alloc)
      : inst_(inst), target_(inst.agents(), 0), current_(inst.agents(), 0) {
    for (std::size_t c = 0; c < inst.chores(); ++c) target_[alloc.owner(c)] += inst.value(alloc.owner(c), c);
  }

  bool dominated() { return visit(0); }

 private:
  bool visit(std::size_t c) {
    if (c == inst_.chores()) {
      bool strict = false;
      for (std::size_t i = 0; i < inst_.agents(); ++i) strict |= current_[i] > target_[i];
      return strict;
    }
    for (std::size_t i = 0; i < inst_.agents(); ++i) {
      current_[i] += inst_.value(i, c);
      const bool viable = current_[i] >= target_[i];
      if (viable && visit(c + 1)) return true;
      current_[i] -= inst_.value(i, c);
    }
    return false;
  }

  const Instance& inst_;
  std::vector<Value> target_;
  std::vector<Value> current_;
};

bool allocations_within(std::size_t n, std::size_t m, std::uint64_t budget) {
  if (n <= 1) return true;
  std::uint64_t total = 1;
  for (std::size_t c = 0; c < m; ++c) {
    if (total > budget / n) return false;
    total *= n;
  }
  return total <= budget;
}

}  // namespace

bool is_pareto_optimal(const Instance& inst, const Allocation& alloc, const PoOptions& options) {
  validate(inst, alloc);
  const bool binary = classify_valuations(inst).binary;
  PoMethod method = options.method;
  if (method == PoMethod::automatic) method = binary ? PoMethod::binary_fast : PoMethod::brute;

  if (method == PoMethod::binary_fast) {
    if (!binary) throw invalid_input("binary_fast Pareto check requires binary valuations");
    return binary_po(inst, alloc);
  }
  if (!allocations_within(inst.agents(), inst.chores(), options.budget)) {
    throw budget_exceeded("brute-force Pareto check needs n^m = " + std::to_string(inst.agents()) + "^" +
                          std::to_string(inst.chores()) + " allocations, over budget " +
                          std::to_string(options.budget));
  }
  return !DominanceSearch(inst, alloc).dominated();
}

}  // namespace chorefair
