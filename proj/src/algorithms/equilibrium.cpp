#include "chorefair/equilibrium.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "chorefair/algorithms.hpp"
#include "chorefair/errors.hpp"
#include "chorefair/fairness.hpp"

namespace chorefair {

EquilibriumResult make_equilibrium_result(const Instance& inst, Allocation alloc, PriceVector prices) {
  validate(inst, alloc);
  if (prices.size() != inst.chores()) throw invalid_input("price vector length differs from chore count");
  EquilibriumResult out{std::move(alloc), std::move(prices), 0, std::nullopt};
  Price best_bundle = -1;
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    const Price p = out.prices.bundle_price(out.allocation, i);
    if (p > best_bundle) {
      best_bundle = p;
      out.richest_agent = i;
    }
  }
  for (std::size_t c = 0; c < inst.chores(); ++c) {
    if (!out.priciest_chore || out.prices[c] > out.prices[*out.priciest_chore]) out.priciest_chore = c;
  }
  return out;
}

bool budget_condition_holds(const Instance& inst, const Allocation& alloc, const PriceVector& prices) {
  validate(inst, alloc);
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    const Price total = prices.bundle_price(alloc, i);
    bool ok = false;
    if (total <= 1) {
      for (std::size_t c = 0; c < inst.chores() && !ok; ++c) {
        ok = (alloc.owner(c) == i ? total : total + prices[c]) >= 1;
      }
    } else {
      for (std::size_t c = 0; c < inst.chores() && !ok; ++c) {
        ok = alloc.owner(c) == i && total - prices[c] < 1;
      }
    }
    if (!ok) return false;
  }
  return true;
}

DubiousAllocation augment_from_equilibrium(const Instance& inst, const EquilibriumResult& eq,
                                           std::size_t copies_per_agent) {
  if (copies_per_agent != 1 && copies_per_agent != 2) {
    throw invalid_input("copies_per_agent must be 1 or 2");
  }
  const auto& [alloc, prices, richest, priciest] = eq;
  if (!is_fisher_equilibrium(inst, alloc, prices)) {
    throw invalid_input("precondition violated: allocation is not a Fisher market equilibrium at these prices");
  }
  if (copies_per_agent == 1 && !is_pef1(inst, alloc, prices)) {
    throw invalid_input("precondition violated: equilibrium is not price-EF1");
  }
  if (copies_per_agent == 2 && !budget_condition_holds(inst, alloc, prices)) {
    throw invalid_input("precondition violated: some bundle price does not straddle 1");
  }
  const auto recomputed = make_equilibrium_result(inst, alloc, prices);
  if (recomputed.richest_agent != richest || recomputed.priciest_chore != priciest) {
    throw invalid_input("precondition violated: i_max / c_max disagree with the allocation and prices");
  }

  DubiousAllocation witness;
  if (!priciest) return witness;
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    if (i != richest) witness.add(*priciest, i, copies_per_agent);
  }
  return witness;
}

namespace {

// Allocation + prices kept in Fisher equilibrium; MPB membership is tested
// against each agent's current minimum pain-per-buck ratio.
class Market {
 public:
  Market(const Instance& inst, std::vector<std::size_t> owners, std::vector<Price> prices)
      : inst_(inst), owners_(std::move(owners)), prices_(std::move(prices)) {
    refresh();
  }

  void refresh() {
    const std::size_t n = inst_.agents();
    earning_.assign(n, Price(0));
    for (std::size_t c = 0; c < owners_.size(); ++c) earning_[owners_[c]] += prices_[c];
    ratio_.assign(n, Price(0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < owners_.size(); ++c) {
        const Price r = pain_per_buck(i, c);
        if (c == 0 || r < ratio_[i]) ratio_[i] = r;
      }
    }
  }

  [[nodiscard]] Price pain_per_buck(std::size_t i, std::size_t c) const { return Price(inst_.cost(i, c)) / prices_[c]; }
  [[nodiscard]] bool in_mpb(std::size_t i, std::size_t c) const { return pain_per_buck(i, c) == ratio_[i]; }

  // Agent whose earning minus its priciest chore is largest, if that exceeds
  // the lowest earning (a pEF1 violation).
  [[nodiscard]] std::optional<std::size_t> violator() const {
    const std::size_t n = inst_.agents();
    std::vector<std::optional<Price>> priciest(n);
    for (std::size_t c = 0; c < owners_.size(); ++c) {
      auto& top = priciest[owners_[c]];
      if (!top || prices_[c] > *top) top = prices_[c];
    }
    const Price lowest = *std::min_element(earning_.begin(), earning_.end());
    std::optional<std::size_t> best;
    Price best_reduced = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!priciest[i]) continue;
      const Price reduced = earning_[i] - *priciest[i];
      if (reduced > lowest && (!best || reduced > best_reduced)) {
        best = i;
        best_reduced = reduced;
      }
    }
    return best;
  }

  void transfer(std::size_t chore, std::size_t to) {
    earning_[owners_[chore]] -= prices_[chore];
    earning_[to] += prices_[chore];
    owners_[chore] = to;
  }

  void raise(const std::vector<std::size_t>& chores, const Price& factor) {
    for (auto c : chores) prices_[c] *= factor;
    refresh();
  }

  [[nodiscard]] const std::vector<std::size_t>& owners() const { return owners_; }
  [[nodiscard]] const std::vector<Price>& prices() const { return prices_; }
  [[nodiscard]] const Price& earning(std::size_t i) const { return earning_[i]; }
  [[nodiscard]] const Price& price(std::size_t c) const { return prices_[c]; }
  [[nodiscard]] const Price& ratio(std::size_t i) const { return ratio_[i]; }

 private:
  const Instance& inst_;
  std::vector<std::size_t> owners_;
  std::vector<Price> prices_;
  std::vector<Price> earning_;
  std::vector<Price> ratio_;
};

enum class StepOutcome { done, progressed, stuck };

// One round: breadth-first search over the component of the big earner b,
// following g -> chore c owned by g -> agent h with c in its MPB set. The
// first agent h reached whose earning is below b's earning without its
// priciest chore receives c from g. If no such agent is reachable, the
// component's chores get repriced until some outside agent acquires an MPB
// edge into it.
StepOutcome market_step(const Instance& inst, Market& market, EquilibriumSearchStats& stats) {
  const auto big = market.violator();
  if (!big) return StepOutcome::done;
  const std::size_t n = inst.agents();
  Price top = 0;
  for (std::size_t c = 0; c < inst.chores(); ++c) {
    if (market.owners()[c] == *big && market.price(c) > top) top = market.price(c);
  }
  const Price threshold = market.earning(*big) - top;
  std::vector<bool> reached(n, false);
  std::deque<std::size_t> queue{*big};
  reached[*big] = true;
  while (!queue.empty()) {
    const std::size_t g = queue.front();
    queue.pop_front();
    for (std::size_t c = 0; c < inst.chores(); ++c) {
      if (market.owners()[c] != g) continue;
      for (std::size_t h = 0; h < n; ++h) {
        if (reached[h] || !market.in_mpb(h, c)) continue;
        if (market.earning(h) < threshold) {
          market.transfer(c, h);
          ++stats.transfers;
          return StepOutcome::progressed;
        }
        reached[h] = true;
        queue.push_back(h);
      }
    }
  }
  if (std::all_of(reached.begin(), reached.end(), [](bool r) { return r; })) return StepOutcome::stuck;

  std::vector<std::size_t> component_chores;
  for (std::size_t c = 0; c < inst.chores(); ++c) {
    if (reached[market.owners()[c]]) component_chores.push_back(c);
  }
  std::optional<Price> factor;
  for (std::size_t h = 0; h < n; ++h) {
    if (reached[h]) continue;
    for (auto c : component_chores) {
      const Price f = market.pain_per_buck(h, c) / market.ratio(h);
      if (!factor || f < *factor) factor = f;
    }
  }
  if (!factor || *factor <= 1) return StepOutcome::stuck;
  market.raise(component_chores, *factor);
  ++stats.price_rises;
  return StepOutcome::progressed;
}

// Exhaustive search over allocations and per-agent MPB ratios r^k, |k| <= n,
// where r = x / y; prices follow as p(c) = |v_owner(c)| / ratio_owner.
std::optional<EquilibriumResult> exhaustive_pef1(const Instance& inst, const BivaluedParams& params,
                                                 std::uint64_t budget) {
  const std::size_t n = inst.agents();
  const std::size_t m = inst.chores();
  const Price step = Price(params.low) / Price(params.high);
  const int span = static_cast<int>(n);
  std::uint64_t inspected = 0;

  std::vector<std::size_t> owners(m, 0);
  while (true) {
    std::vector<int> exponent(n, -span);
    exponent[0] = 0;
    while (true) {
      if (++inspected > budget) throw budget_exceeded("exhaustive pEF1 equilibrium search exceeded its budget");
      std::vector<Price> prices(m);
      for (std::size_t c = 0; c < m; ++c) {
        Price scale = 1;
        const int e = exponent[owners[c]];
        for (int k = 0; k < std::abs(e); ++k) scale *= step;
        prices[c] = e >= 0 ? Price(inst.cost(owners[c], c)) / scale : Price(inst.cost(owners[c], c)) * scale;
      }
      PriceVector pv(std::move(prices));
      Allocation alloc(owners);
      if (is_fisher_equilibrium(inst, alloc, pv) && is_pef1(inst, alloc, pv)) {
        return make_equilibrium_result(inst, std::move(alloc), std::move(pv));
      }
      std::size_t i = 1;
      while (i < n && exponent[i] == span) exponent[i++] = -span;
      if (i >= n) break;
      ++exponent[i];
    }
    std::size_t c = 0;
    while (c < m && owners[c] == n - 1) owners[c++] = 0;
    if (c >= m) break;
    ++owners[c];
  }
  return std::nullopt;
}

}  // namespace

EquilibriumResult find_pef1_equilibrium(const Instance& inst, const EquilibriumSearchOptions& options,
                                        EquilibriumSearchStats* stats_out) {
  EquilibriumSearchStats local;
  EquilibriumSearchStats& stats = stats_out ? *stats_out : local;
  stats = {};
  const std::size_t n = inst.agents();
  const std::size_t m = inst.chores();
  if (m == 0) return make_equilibrium_result(inst, Allocation{}, PriceVector{});
  const auto cls = classify_valuations(inst);
  if (!cls.bivalued) throw invalid_input("find_pef1_equilibrium requires bivalued valuations (x <= y < 0)");

  std::vector<std::size_t> owners(m);
  std::vector<Price> prices(m);
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (inst.cost(i, c) < inst.cost(best, c)) best = i;
    }
    owners[c] = best;
    prices[c] = Price(inst.cost(best, c));
  }
  Market market(inst, std::move(owners), std::move(prices));

  const std::uint64_t budget = options.iteration_budget ? options.iteration_budget : 10 * n * m * m;
  for (std::uint64_t iter = 0; iter <= budget; ++iter) {
    const auto outcome = market_step(inst, market, stats);
    if (outcome == StepOutcome::done) {
      return make_equilibrium_result(inst, Allocation(market.owners()), PriceVector(market.prices()));
    }
    if (outcome == StepOutcome::stuck) break;
  }

  if (!options.allow_fallback) throw budget_exceeded("pEF1 equilibrium local search did not converge");
  stats.used_fallback = true;
  if (auto found = exhaustive_pef1(inst, *cls.bivalued, options.fallback_budget)) return *found;
  throw budget_exceeded("no pEF1 equilibrium found by local search or exhaustive fallback");
}

TwoTypesResult two_types_def_po(const Instance& inst) {
  const auto cls = classify_valuations(inst);
  if (!cls.two_types) throw invalid_input("two_types_def_po requires at most two distinct chore columns");
  for (auto v : inst.values()) {
    if (v == 0) throw invalid_input("two_types_def_po requires strictly negative valuations");
  }
  const auto& xs = cls.two_types->x_chores;
  const auto& ys = cls.two_types->y_chores;
  const std::size_t n = inst.agents();
  auto x_cost = [&](std::size_t i) { return xs.empty() ? Value{0} : inst.cost(i, xs.front()); };
  auto y_cost = [&](std::size_t i) { return ys.empty() ? Value{0} : inst.cost(i, ys.front()); };

  // Deals `count` chores from `pool` (starting at `first`) evenly over group,
  // lower indices receiving the extra ones.
  auto deal = [](std::vector<std::size_t>& owners, const std::vector<std::size_t>& pool, std::size_t first,
                 const std::vector<std::size_t>& group) {
    const std::size_t count = pool.size() - first;
    std::size_t next = first;
    for (std::size_t g = 0; g < group.size(); ++g) {
      const std::size_t share = count / group.size() + (g < count % group.size() ? 1 : 0);
      for (std::size_t k = 0; k < share; ++k) owners[pool[next++]] = group[g];
    }
  };

  for (std::size_t pivot = 0; pivot < n; ++pivot) {
    std::vector<std::size_t> x_only, y_only, tied;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == pivot) continue;
      if (xs.empty() || ys.empty()) {
        tied.push_back(i);
        continue;
      }
      const Value lhs = x_cost(i) * y_cost(pivot);
      const Value rhs = y_cost(i) * x_cost(pivot);
      (lhs < rhs ? x_only : lhs > rhs ? y_only : tied).push_back(i);
    }
    const auto pivot_row = inst.row(pivot);
    std::vector<Value> cloned;
    for (std::size_t i = 0; i < n; ++i) cloned.insert(cloned.end(), pivot_row.begin(), pivot_row.end());
    const Instance uniform(n, inst.chores(), std::move(cloned));

    for (std::size_t a = 0; a <= xs.size(); ++a) {
      for (std::size_t b = 0; b <= ys.size(); ++b) {
        for (std::size_t t = 0; t <= tied.size(); ++t) {
          std::vector<std::size_t> x_group = x_only, y_group = y_only;
          x_group.insert(x_group.end(), tied.begin(), tied.begin() + static_cast<std::ptrdiff_t>(t));
          y_group.insert(y_group.end(), tied.begin() + static_cast<std::ptrdiff_t>(t), tied.end());
          std::sort(x_group.begin(), x_group.end());
          std::sort(y_group.begin(), y_group.end());
          if (x_group.empty() && a < xs.size()) continue;
          if (y_group.empty() && b < ys.size()) continue;

          std::vector<std::size_t> owners(inst.chores(), pivot);
          if (!x_group.empty()) deal(owners, xs, a, x_group);
          if (!y_group.empty()) deal(owners, ys, b, y_group);
          Allocation alloc(std::move(owners));
          if (!is_ef1(uniform, alloc)) continue;

          std::vector<Price> prices(inst.chores());
          for (auto c : xs) prices[c] = Price(x_cost(pivot));
          for (auto c : ys) prices[c] = Price(y_cost(pivot));
          auto eq = make_equilibrium_result(inst, std::move(alloc), PriceVector(std::move(prices)));
          if (!is_fisher_equilibrium(inst, eq.allocation, eq.prices) || !is_pef1(inst, eq.allocation, eq.prices)) {
            throw algorithm_error("two_types_def_po: conditions hold but prices are not a pEF1 equilibrium");
          }
          auto witness = augment_from_equilibrium(inst, eq, 1);
          return TwoTypesResult{eq.allocation, std::move(witness), std::move(eq), pivot};
        }
      }
    }
  }
  throw algorithm_error("two_types_def_po: no pivot agent and allocation satisfy the two-types conditions");
}

}  // namespace chorefair
