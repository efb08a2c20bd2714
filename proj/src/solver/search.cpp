#include <algorithm>
#include <chrono>
#include <numeric>
#include <utility>

#include "chorefair/algorithms.hpp"
#include "chorefair/errors.hpp"
#include "chorefair/solver.hpp"

namespace chorefair {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Value ceil_div(Value a, Value b) { return (a + b - 1) / b; }

// Enumerates size-k selections from a pool of (chore, agent) pairs, with or
// without repetition, and stops at the first one check_def_witness accepts.
class WitnessEnumerator {
 public:
  WitnessEnumerator(const Instance& inst, const Allocation& alloc, DefVariant variant,
                    std::vector<std::pair<std::size_t, std::size_t>> pool, bool repeat, std::uint64_t budget)
      : inst_(inst), alloc_(alloc), variant_(variant), pool_(std::move(pool)), repeat_(repeat), budget_(budget) {}

  std::optional<DubiousAllocation> find(std::size_t k) {
    picks_.assign(k, 0);
    return extend(0, 0);
  }

  std::uint64_t checked() const { return checked_; }

 private:
  std::optional<DubiousAllocation> extend(std::size_t depth, std::size_t from) {
    if (depth == picks_.size()) {
      if (++checked_ > budget_) {
        throw budget_exceeded("min_dubious_bruteforce: more than " + std::to_string(budget_) + " candidate witnesses");
      }
      DubiousAllocation witness;
      for (auto p : picks_) witness.add(pool_[p].first, pool_[p].second);
      if (check_def_witness(inst_, alloc_, witness, variant_)) return witness;
      return std::nullopt;
    }
    for (std::size_t p = from; p < pool_.size(); ++p) {
      picks_[depth] = p;
      if (auto hit = extend(depth + 1, repeat_ ? p : p + 1)) return hit;
    }
    return std::nullopt;
  }

  const Instance& inst_;
  const Allocation& alloc_;
  DefVariant variant_;
  std::vector<std::pair<std::size_t, std::size_t>> pool_;
  bool repeat_;
  std::uint64_t budget_;
  std::vector<std::size_t> picks_;
  std::uint64_t checked_ = 0;
};

}  // namespace

SolveResult min_dubious_bruteforce(const Instance& inst, const Allocation& alloc, DefVariant variant,
                                   const BruteForceOptions& options) {
  validate(inst, alloc);
  const auto start = Clock::now();
  const std::size_t n = inst.agents();
  const std::size_t m = inst.chores();

  std::vector<std::pair<std::size_t, std::size_t>> pool;
  std::size_t max_k = 0;
  bool repeat = true;
  switch (variant) {
    case DefVariant::def:
      for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t h = 0; h < n; ++h) pool.emplace_back(c, h);
      }
      // One copy of every chore for every non-owner always suffices.
      max_k = m * (n - 1);
      break;
    case DefVariant::sdef:
      for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t h = 0; h < n; ++h) pool.emplace_back(c, h);
      }
      repeat = false;
      max_k = m;
      break;
    case DefVariant::pdef: {
      for (std::size_t c = 0; c < m; ++c) pool.emplace_back(c, alloc.owner(c));
      // Each copy of the costliest own chore lowers e_i(h) by at least that
      // cost, so this many copies suffice whenever any witness exists.
      const auto report = envy_matrix(inst, alloc);
      const auto bundles = alloc.bundles(n);
      for (std::size_t h = 0; h < n; ++h) {
        for (std::size_t i = 0; i < n; ++i) {
          const Value e = report.envy.at(i, h);
          if (e == 0) continue;
          Value top = 0;
          for (auto c : bundles[h]) top = std::max(top, inst.cost(i, c));
          if (top == 0) {
            SolveResult out;
            out.runtime_ms = elapsed_ms(start);
            return out;
          }
          max_k += static_cast<std::size_t>(ceil_div(e, top));
        }
      }
      break;
    }
  }

  WitnessEnumerator search(inst, alloc, variant, std::move(pool), repeat, options.budget);
  SolveResult out;
  for (std::size_t k = 0; k <= max_k; ++k) {
    if (auto witness = search.find(k)) {
      out.min_k = k;
      out.witness = std::move(*witness);
      break;
    }
  }
  out.nodes = search.checked();
  out.runtime_ms = elapsed_ms(start);
  return out;
}

namespace {

class AllocationSearch {
 public:
  AllocationSearch(const Instance& inst, const AllocationSearchOptions& options)
      : inst_(inst), options_(options), n_(inst.agents()), m_(inst.chores()) {
    const auto cls = classify_valuations(inst);
    binary_po_ = options.po_only && cls.binary;

    candidates_.resize(m_);
    for (std::size_t c = 0; c < m_; ++c) {
      for (std::size_t i = 0; i < n_; ++i) {
        if (binary_po_ && inst.value(i, c) != 0) continue;
        candidates_[c].push_back(i);
      }
      if (candidates_[c].empty()) candidates_[c] = identity_order(n_);
    }

    // Identical chores are assigned with non-decreasing owners; agents with
    // identical rows receive their first chore in index order. Both only
    // discard allocations that are relabelings of a kept one.
    same_column_before_.assign(m_, std::nullopt);
    for (std::size_t c = 0; c < m_; ++c) {
      for (std::size_t d = c; d-- > 0;) {
        if (same_column(c, d)) {
          same_column_before_[c] = d;
          break;
        }
      }
    }
    same_row_before_.assign(n_, std::nullopt);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i; j-- > 0;) {
        if (std::equal(inst.row(i).begin(), inst.row(i).end(), inst.row(j).begin())) {
          same_row_before_[i] = j;
          break;
        }
      }
    }

    max_cost_.assign(n_, 0);
    remaining_.assign(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t c = 0; c < m_; ++c) {
        max_cost_[i] = std::max(max_cost_[i], inst.cost(i, c));
        remaining_[i] += inst.cost(i, c);
      }
    }
    cost_.assign(n_, std::vector<Value>(n_, 0));
    held_.assign(n_, 0);
    owners_.assign(m_, 0);
  }

  AllocationSearchResult run() {
    seed();
    if (!done()) visit(0);
    if (!best_) throw budget_exceeded("min_over_allocations: node budget spent before any allocation qualified");
    AllocationSearchResult out = std::move(*best_);
    out.exact = out.exact && !aborted_;
    out.result.nodes = nodes_ + inner_nodes_;
    return out;
  }

 private:
  bool same_column(std::size_t a, std::size_t b) const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (inst_.value(i, a) != inst_.value(i, b)) return false;
    }
    return true;
  }

  void seed() {
    if (!options_.po_only) {
      consider(round_robin(inst_).allocation, false);
    } else if (binary_po_) {
      consider(binary_def_po(inst_).allocation, false);
    }
  }

  void consider(const Allocation& alloc, bool needs_po_check) {
    auto result = min_dubious(inst_, alloc, DefVariant::def, options_.inner);
    inner_nodes_ += result.nodes;
    if (best_ && *result.min_k >= *best_->result.min_k) {
      best_->exact = best_->exact && result.exact;
      return;
    }
    if (needs_po_check && !is_pareto_optimal(inst_, alloc, options_.po)) return;
    const bool exact = result.exact && (!best_ || best_->exact);
    best_ = AllocationSearchResult{alloc, std::move(result), exact};
  }

  std::size_t lower_bound() const {
    std::size_t total = 0;
    for (std::size_t h = 0; h < n_; ++h) {
      std::size_t need = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (i == h) continue;
        const Value e = cost_[i][i] - cost_[i][h] - remaining_[i];
        if (e > 0) need = std::max<std::size_t>(need, static_cast<std::size_t>(ceil_div(e, max_cost_[i])));
      }
      total += need;
    }
    return total;
  }

  bool done() const {
    if (!best_) return false;
    const std::size_t k = *best_->result.min_k;
    return k == 0 || (options_.stop_at && k <= *options_.stop_at);
  }

  void visit(std::size_t c) {
    if (aborted_ || done()) return;
    if (++nodes_ > options_.node_budget) {
      aborted_ = true;
      return;
    }
    if (best_ && lower_bound() >= *best_->result.min_k) return;
    if (c == m_) {
      consider(Allocation(owners_), options_.po_only && !binary_po_);
      return;
    }
    const std::size_t floor = same_column_before_[c] ? owners_[*same_column_before_[c]] : 0;
    for (auto a : candidates_[c]) {
      if (a < floor) continue;
      if (held_[a] == 0 && same_row_before_[a] && held_[*same_row_before_[a]] == 0) continue;
      assign(c, a, +1);
      visit(c + 1);
      assign(c, a, -1);
      if (aborted_ || done()) return;
    }
  }

  void assign(std::size_t c, std::size_t a, int sign) {
    owners_[c] = a;
    held_[a] = static_cast<std::size_t>(static_cast<long long>(held_[a]) + sign);
    for (std::size_t i = 0; i < n_; ++i) {
      cost_[i][a] += sign * inst_.cost(i, c);
      remaining_[i] -= sign * inst_.cost(i, c);
    }
  }

  const Instance& inst_;
  const AllocationSearchOptions& options_;
  std::size_t n_;
  std::size_t m_;
  bool binary_po_ = false;
  std::vector<std::vector<std::size_t>> candidates_;
  std::vector<std::optional<std::size_t>> same_column_before_;
  std::vector<std::optional<std::size_t>> same_row_before_;
  std::vector<Value> max_cost_;
  std::vector<Value> remaining_;
  std::vector<std::vector<Value>> cost_;  // cost_[i][h] = |v_i(partial A_h)|
  std::vector<std::size_t> held_;
  std::vector<std::size_t> owners_;
  std::optional<AllocationSearchResult> best_;
  std::uint64_t nodes_ = 0;
  std::uint64_t inner_nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

AllocationSearchResult min_over_allocations(const Instance& inst, const AllocationSearchOptions& options) {
  const auto start = Clock::now();
  auto out = AllocationSearch(inst, options).run();
  if (options.po_only && classify_valuations(inst).binary &&
      !is_pareto_optimal(inst, out.allocation, {PoMethod::binary_fast, options.po.budget})) {
    throw algorithm_error("min_over_allocations: winner is not Pareto optimal");
  }
  out.result.runtime_ms = elapsed_ms(start);
  return out;
}

}  // namespace chorefair
