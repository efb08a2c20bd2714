// Exact minimum dubious-copy covers.
//
// Copies placed at agent h lower every other agent's perceived value of h and
// leave all other perceived values untouched, so removing the envy toward h is
// a self-contained integer multicover: pick copies c (with multiplicity) such
// that for every envious i the copies' costs sum(|v_i(c)|) reach e_i(h).

#include <algorithm>
#include <chrono>
#include <numeric>

#include "chorefair/errors.hpp"
#include "chorefair/solver.hpp"

namespace chorefair {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Value ceil_div(Value a, Value b) { return (a + b - 1) / b; }

// One multicover: rows are envious agents with a positive demand, columns are
// candidate source chores.
struct CoverProblem {
  std::vector<Value> demand;
  std::vector<std::size_t> sources;
  std::vector<std::vector<Value>> weight;  // weight[s][r]
  bool single_use = false;
};

struct CoverSolution {
  std::optional<std::size_t> count;
  std::vector<std::size_t> multiplicity;  // per source
  bool exact = true;
  std::uint64_t nodes = 0;
};

class CoverSearch {
 public:
  CoverSearch(const CoverProblem& problem, std::uint64_t budget) : problem_(problem), budget_(budget) {
    const std::size_t rows = problem_.demand.size();
    // Explore sources by decreasing initial coverage, ties by chore index.
    order_.resize(problem_.sources.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::vector<Value> coverage(order_.size(), 0);
    for (std::size_t s = 0; s < order_.size(); ++s) {
      for (std::size_t r = 0; r < rows; ++r) coverage[s] += std::min(problem_.weight[s][r], problem_.demand[r]);
    }
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      if (coverage[a] != coverage[b]) return coverage[a] > coverage[b];
      return problem_.sources[a] < problem_.sources[b];
    });
    order_.erase(std::remove_if(order_.begin(), order_.end(), [&](std::size_t s) { return coverage[s] == 0; }),
                 order_.end());

    // Per suffix of the order: max weight (multi-use) or sorted prefix sums
    // (single-use) for each row.
    const std::size_t len = order_.size();
    suffix_max_.assign(len + 1, std::vector<Value>(rows, 0));
    suffix_prefix_.assign(len + 1, std::vector<std::vector<Value>>(rows));
    for (std::size_t pos = len; pos-- > 0;) {
      for (std::size_t r = 0; r < rows; ++r) {
        suffix_max_[pos][r] = std::max(suffix_max_[pos + 1][r], problem_.weight[order_[pos]][r]);
      }
    }
    if (problem_.single_use) {
      for (std::size_t pos = 0; pos <= len; ++pos) {
        for (std::size_t r = 0; r < rows; ++r) {
          std::vector<Value> w;
          for (std::size_t q = pos; q < len; ++q) w.push_back(problem_.weight[order_[q]][r]);
          std::sort(w.rbegin(), w.rend());
          std::partial_sum(w.begin(), w.end(), w.begin());
          suffix_prefix_[pos][r] = std::move(w);
        }
      }
    }
    remaining_ = problem_.demand;
    current_.assign(problem_.sources.size(), 0);
  }

  CoverSolution solve() {
    CoverSolution out;
    out.multiplicity.assign(problem_.sources.size(), 0);
    if (!feasible()) return out;
    seed_greedy();
    visit(0, 0);
    out.count = best_;
    out.multiplicity = best_multiplicity_;
    out.exact = !aborted_;
    out.nodes = nodes_;
    return out;
  }

 private:
  bool feasible() const {
    for (std::size_t r = 0; r < remaining_.size(); ++r) {
      if (remaining_[r] <= 0) continue;
      if (problem_.single_use) {
        const auto& sums = suffix_prefix_[0][r];
        if (sums.empty() || sums.back() < remaining_[r]) return false;
      } else if (suffix_max_[0][r] == 0) {
        return false;
      }
    }
    return true;
  }

  void seed_greedy() {
    auto rem = remaining_;
    std::vector<std::size_t> mult(problem_.sources.size(), 0);
    std::size_t count = 0;
    while (std::any_of(rem.begin(), rem.end(), [](Value d) { return d > 0; })) {
      std::optional<std::size_t> pick;
      Value pick_gain = 0;
      for (auto s : order_) {
        if (problem_.single_use && mult[s] > 0) continue;
        Value gain = 0;
        for (std::size_t r = 0; r < rem.size(); ++r) {
          if (rem[r] > 0) gain += std::min(problem_.weight[s][r], rem[r]);
        }
        if (gain > pick_gain || (gain == pick_gain && gain > 0 && problem_.sources[s] < problem_.sources[*pick])) {
          pick = s;
          pick_gain = gain;
        }
      }
      if (!pick) return;
      ++mult[*pick];
      ++count;
      for (std::size_t r = 0; r < rem.size(); ++r) rem[r] -= problem_.weight[*pick][r];
    }
    best_ = count;
    best_multiplicity_ = std::move(mult);
  }

  // Minimum extra copies the suffix starting at pos needs, or nullopt if the
  // suffix cannot cover the remaining demand.
  std::optional<std::size_t> lower_bound(std::size_t pos) const {
    std::size_t bound = 0;
    for (std::size_t r = 0; r < remaining_.size(); ++r) {
      const Value need = remaining_[r];
      if (need <= 0) continue;
      if (problem_.single_use) {
        const auto& sums = suffix_prefix_[pos][r];
        auto it = std::lower_bound(sums.begin(), sums.end(), need);
        if (it == sums.end()) return std::nullopt;
        bound = std::max<std::size_t>(bound, static_cast<std::size_t>(it - sums.begin()) + 1);
      } else {
        const Value top = suffix_max_[pos][r];
        if (top == 0) return std::nullopt;
        bound = std::max<std::size_t>(bound, static_cast<std::size_t>(ceil_div(need, top)));
      }
    }
    return bound;
  }

  void visit(std::size_t pos, std::size_t count) {
    if (aborted_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    if (std::all_of(remaining_.begin(), remaining_.end(), [](Value d) { return d <= 0; })) {
      if (!best_ || count < *best_) {
        best_ = count;
        best_multiplicity_ = current_;
      }
      return;
    }
    if (pos == order_.size()) return;
    const auto bound = lower_bound(pos);
    if (!bound || (best_ && count + *bound >= *best_)) return;

    const std::size_t s = order_[pos];
    const auto& w = problem_.weight[s];
    std::size_t cap = 0;
    for (std::size_t r = 0; r < remaining_.size(); ++r) {
      if (remaining_[r] > 0 && w[r] > 0) cap = std::max<std::size_t>(cap, static_cast<std::size_t>(ceil_div(remaining_[r], w[r])));
    }
    if (problem_.single_use) cap = std::min<std::size_t>(cap, 1);
    for (std::size_t k = cap + 1; k-- > 0;) {
      for (std::size_t r = 0; r < remaining_.size(); ++r) remaining_[r] -= static_cast<Value>(k) * w[r];
      current_[s] = k;
      visit(pos + 1, count + k);
      current_[s] = 0;
      for (std::size_t r = 0; r < remaining_.size(); ++r) remaining_[r] += static_cast<Value>(k) * w[r];
      if (aborted_) return;
    }
  }

  const CoverProblem& problem_;
  std::uint64_t budget_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<Value>> suffix_max_;
  std::vector<std::vector<std::vector<Value>>> suffix_prefix_;
  std::vector<Value> remaining_;
  std::vector<std::size_t> current_;
  std::optional<std::size_t> best_;
  std::vector<std::size_t> best_multiplicity_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

struct TargetDemand {
  std::vector<std::size_t> agents;  // envious agents i
  std::vector<Value> envy;          // e_i(target)
};

TargetDemand demand_toward(const Instance& inst, const AgentMatrix& values, std::size_t target) {
  TargetDemand out;
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    if (i == target) continue;
    const Value e = values.at(i, target) - values.at(i, i);
    if (e > 0) {
      out.agents.push_back(i);
      out.envy.push_back(e);
    }
  }
  return out;
}

CoverProblem build_cover(const Instance& inst, const Allocation& alloc, std::size_t target,
                         const TargetDemand& demand, DefVariant variant) {
  CoverProblem problem;
  problem.demand = demand.envy;
  problem.single_use = variant == DefVariant::sdef;
  for (std::size_t c = 0; c < inst.chores(); ++c) {
    if (variant == DefVariant::pdef && alloc.owner(c) != target) continue;
    problem.sources.push_back(c);
    std::vector<Value> w;
    for (auto i : demand.agents) w.push_back(inst.cost(i, c));
    problem.weight.push_back(std::move(w));
  }
  return problem;
}

SolveResult solve_target(const Instance& inst, const Allocation& alloc, const AgentMatrix& values,
                         std::size_t target, DefVariant variant, std::uint64_t budget) {
  SolveResult out;
  const auto demand = demand_toward(inst, values, target);
  if (demand.agents.empty()) {
    out.min_k = 0;
    return out;
  }
  const auto problem = build_cover(inst, alloc, target, demand, variant);
  auto solution = CoverSearch(problem, budget).solve();
  out.nodes = solution.nodes;
  out.exact = solution.exact;
  out.min_k = solution.count;
  if (solution.count) {
    for (std::size_t s = 0; s < problem.sources.size(); ++s) {
      out.witness.add(problem.sources[s], target, solution.multiplicity[s]);
    }
  }
  return out;
}

// sDEF: every chore is copied at most once overall, so targets compete for
// chores. Branch on each chore: give its single copy to one envied target or
// leave it unused.
class SinglyCopySearch {
 public:
  SinglyCopySearch(const Instance& inst, const AgentMatrix& values, std::uint64_t budget)
      : inst_(inst), budget_(budget) {
    const std::size_t n = inst.agents();
    for (std::size_t h = 0; h < n; ++h) {
      auto d = demand_toward(inst, values, h);
      if (d.agents.empty()) continue;
      targets_.push_back(h);
      demands_.push_back(std::move(d));
    }
    std::vector<Value> coverage(inst.chores(), 0);
    for (std::size_t c = 0; c < inst.chores(); ++c) {
      for (const auto& d : demands_) {
        for (std::size_t r = 0; r < d.agents.size(); ++r) coverage[c] += std::min(inst.cost(d.agents[r], c), d.envy[r]);
      }
    }
    order_.resize(inst.chores());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return coverage[a] > coverage[b]; });

    // prefix[pos][i]: agent i's costs over chores order_[pos..] sorted
    // descending, as prefix sums.
    prefix_.assign(order_.size() + 1, std::vector<std::vector<Value>>(n));
    for (std::size_t pos = 0; pos <= order_.size(); ++pos) {
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<Value> w;
        for (std::size_t q = pos; q < order_.size(); ++q) {
          if (inst.cost(i, order_[q]) > 0) w.push_back(inst.cost(i, order_[q]));
        }
        std::sort(w.rbegin(), w.rend());
        std::partial_sum(w.begin(), w.end(), w.begin());
        prefix_[pos][i] = std::move(w);
      }
    }
    assignment_.assign(inst.chores(), std::nullopt);
  }

  SolveResult solve() {
    SolveResult out;
    visit(0, 0);
    out.nodes = nodes_;
    out.exact = !aborted_;
    out.min_k = best_;
    if (best_) {
      for (std::size_t c = 0; c < best_assignment_.size(); ++c) {
        if (best_assignment_[c]) out.witness.add(c, targets_[*best_assignment_[c]]);
      }
    }
    return out;
  }

 private:
  bool satisfied() const {
    for (const auto& d : demands_) {
      if (std::any_of(d.envy.begin(), d.envy.end(), [](Value e) { return e > 0; })) return false;
    }
    return true;
  }

  std::optional<std::size_t> lower_bound(std::size_t pos) const {
    std::size_t total = 0;
    for (const auto& d : demands_) {
      std::size_t need = 0;
      for (std::size_t r = 0; r < d.agents.size(); ++r) {
        if (d.envy[r] <= 0) continue;
        const auto& sums = prefix_[pos][d.agents[r]];
        auto it = std::lower_bound(sums.begin(), sums.end(), d.envy[r]);
        if (it == sums.end()) return std::nullopt;
        need = std::max<std::size_t>(need, static_cast<std::size_t>(it - sums.begin()) + 1);
      }
      total += need;
    }
    if (total > order_.size() - pos) return std::nullopt;
    return total;
  }

  void visit(std::size_t pos, std::size_t count) {
    if (aborted_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    if (satisfied()) {
      if (!best_ || count < *best_) {
        best_ = count;
        best_assignment_ = assignment_;
      }
      return;
    }
    if (pos == order_.size()) return;
    const auto bound = lower_bound(pos);
    if (!bound || (best_ && count + *bound >= *best_)) return;

    const std::size_t c = order_[pos];
    // Targets this chore helps, most useful first.
    std::vector<std::pair<Value, std::size_t>> useful;
    for (std::size_t t = 0; t < demands_.size(); ++t) {
      Value gain = 0;
      const auto& d = demands_[t];
      for (std::size_t r = 0; r < d.agents.size(); ++r) {
        if (d.envy[r] > 0) gain += std::min(inst_.cost(d.agents[r], c), d.envy[r]);
      }
      if (gain > 0) useful.emplace_back(-gain, t);
    }
    std::sort(useful.begin(), useful.end());
    for (auto [neg_gain, t] : useful) {
      auto& d = demands_[t];
      for (std::size_t r = 0; r < d.agents.size(); ++r) d.envy[r] -= inst_.cost(d.agents[r], c);
      assignment_[c] = t;
      visit(pos + 1, count + 1);
      assignment_[c] = std::nullopt;
      for (std::size_t r = 0; r < d.agents.size(); ++r) d.envy[r] += inst_.cost(d.agents[r], c);
      if (aborted_) return;
    }
    visit(pos + 1, count);
  }

  const Instance& inst_;
  std::uint64_t budget_;
  std::vector<std::size_t> targets_;
  std::vector<TargetDemand> demands_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<std::vector<Value>>> prefix_;
  std::vector<std::optional<std::size_t>> assignment_;
  std::vector<std::optional<std::size_t>> best_assignment_;
  std::optional<std::size_t> best_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

SolveResult min_cover_for_target(const Instance& inst, const Allocation& alloc, std::size_t target,
                                 DefVariant variant, const SolveOptions& options) {
  const auto start = Clock::now();
  const auto values = bundle_values(inst, alloc);
  if (target >= inst.agents()) throw invalid_input("target agent out of range");
  auto out = solve_target(inst, alloc, values, target, variant, options.node_budget);
  out.runtime_ms = elapsed_ms(start);
  return out;
}

SolveResult min_dubious(const Instance& inst, const Allocation& alloc, DefVariant variant,
                        const SolveOptions& options) {
  const auto start = Clock::now();
  const auto values = bundle_values(inst, alloc);
  SolveResult out;
  if (variant == DefVariant::sdef) {
    out = SinglyCopySearch(inst, values, options.node_budget).solve();
    out.runtime_ms = elapsed_ms(start);
    return out;
  }
  out.min_k = 0;
  std::uint64_t budget_left = options.node_budget;
  for (std::size_t h = 0; h < inst.agents(); ++h) {
    auto part = solve_target(inst, alloc, values, h, variant, std::max<std::uint64_t>(budget_left, 1));
    out.nodes += part.nodes;
    budget_left -= std::min(budget_left, part.nodes);
    out.exact = out.exact && part.exact;
    if (!part.min_k) {
      out.min_k.reset();
      out.witness = {};
      // Infeasibility of a single target is a proof; no need to continue.
      break;
    }
    *out.min_k += *part.min_k;
    out.witness.merge(part.witness);
  }
  out.runtime_ms = elapsed_ms(start);
  return out;
}

bool is_def_k(const Instance& inst, const Allocation& alloc, std::size_t k, DefVariant variant,
              const SolveOptions& options) {
  const auto result = min_dubious(inst, alloc, variant, options);
  if (result.min_k && *result.min_k <= k) return true;
  if (!result.exact) throw budget_exceeded("is_def_k: solver budget exhausted before settling k = " + std::to_string(k));
  return false;
}

}  // namespace chorefair
