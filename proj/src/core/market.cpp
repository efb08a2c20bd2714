#include "chorefair/market.hpp"

#include <algorithm>

#include "chorefair/errors.hpp"

namespace chorefair {

PriceVector::PriceVector(std::vector<Price> prices) : prices_(std::move(prices)) {
  for (std::size_t c = 0; c < prices_.size(); ++c) {
    if (prices_[c] <= 0) {
      throw invalid_input("price of chore " + std::to_string(c) + " must be positive, got " +
                          format_price(prices_[c]));
    }
  }
}

Price PriceVector::bundle_price(const Allocation& alloc, std::size_t agent) const {
  Price total = 0;
  for (std::size_t c = 0; c < alloc.chores(); ++c) {
    if (alloc.owner(c) == agent) total += prices_[c];
  }
  return total;
}

void PriceVector::scale(const std::vector<std::size_t>& chores, const Price& factor) {
  if (factor <= 0) throw invalid_input("price scale factor must be positive");
  for (auto c : chores) prices_[c] *= factor;
}

void PriceVector::set(std::size_t chore, Price price) {
  if (price <= 0) throw invalid_input("price must be positive");
  prices_[chore] = std::move(price);
}

Price parse_price(const std::string& text) {
  Price p;
  try {
    p = Price(text);
  } catch (const std::exception&) {
    throw invalid_input("malformed price '" + text + "' (expected an integer or num/den)");
  }
  if (p <= 0) throw invalid_input("price '" + text + "' must be positive");
  return p;
}

std::string format_price(const Price& price) {
  const auto num = boost::multiprecision::numerator(price);
  const auto den = boost::multiprecision::denominator(price);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

void check_dimensions(const Instance& inst, const PriceVector& prices) {
  if (prices.size() != inst.chores()) {
    throw invalid_input("price vector has " + std::to_string(prices.size()) + " entries, instance has " +
                        std::to_string(inst.chores()) + " chores");
  }
}

}  // namespace

std::vector<std::size_t> mpb_set(const Instance& inst, const PriceVector& prices, std::size_t agent) {
  check_dimensions(inst, prices);
  if (agent >= inst.agents()) throw invalid_input("agent index out of range");
  std::vector<std::size_t> best;
  for (std::size_t c = 0; c < inst.chores(); ++c) {
    if (best.empty()) {
      best.push_back(c);
      continue;
    }
    const std::size_t b = best.front();
    // |v(c)| / p(c) vs |v(b)| / p(b) by cross-multiplication.
    const Price lhs = Price(inst.cost(agent, c)) * prices[b];
    const Price rhs = Price(inst.cost(agent, b)) * prices[c];
    if (lhs < rhs) {
      best.assign(1, c);
    } else if (lhs == rhs) {
      best.push_back(c);
    }
  }
  return best;
}

bool is_fisher_equilibrium(const Instance& inst, const Allocation& alloc, const PriceVector& prices) {
  validate(inst, alloc);
  check_dimensions(inst, prices);
  std::vector<std::vector<bool>> in_mpb(inst.agents());
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    in_mpb[i].assign(inst.chores(), false);
    for (auto c : mpb_set(inst, prices, i)) in_mpb[i][c] = true;
  }
  for (std::size_t c = 0; c < inst.chores(); ++c) {
    if (!in_mpb[alloc.owner(c)][c]) return false;
  }
  return true;
}

bool is_pef1(const Instance& inst, const Allocation& alloc, const PriceVector& prices) {
  validate(inst, alloc);
  check_dimensions(inst, prices);
  const std::size_t n = inst.agents();
  std::vector<Price> earning(n, Price(0));
  std::vector<Price> priciest(n, Price(0));
  std::vector<bool> nonempty(n, false);
  for (std::size_t c = 0; c < inst.chores(); ++c) {
    const std::size_t i = alloc.owner(c);
    earning[i] += prices[c];
    if (!nonempty[i] || prices[c] > priciest[i]) priciest[i] = prices[c];
    nonempty[i] = true;
  }
  const Price lowest = *std::min_element(earning.begin(), earning.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (nonempty[i] && earning[i] - priciest[i] > lowest) return false;
  }
  return true;
}

}  // namespace chorefair
