#ifndef CHOREFAIR_MARKET_HPP_
#define CHOREFAIR_MARKET_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <vector>

#include "chorefair/instance.hpp"

namespace chorefair {

/// Exact, arbitrary-precision rational price.
using Price = boost::multiprecision::cpp_rational;

/// Strictly positive price per chore.
class PriceVector {
 public:
  PriceVector() = default;
  explicit PriceVector(std::vector<Price> prices);

  [[nodiscard]] std::size_t size() const { return prices_.size(); }
  [[nodiscard]] const Price& operator[](std::size_t chore) const { return prices_[chore]; }
  [[nodiscard]] const std::vector<Price>& prices() const { return prices_; }

  /// p(S) for the bundle of agent in alloc.
  [[nodiscard]] Price bundle_price(const Allocation& alloc, std::size_t agent) const;
  /// Multiplies the price of each listed chore by factor (> 0).
  void scale(const std::vector<std::size_t>& chores, const Price& factor);
  void set(std::size_t chore, Price price);

  friend bool operator==(const PriceVector&, const PriceVector&) = default;

 private:
  std::vector<Price> prices_;
};

/// Parses "7", "3/2" (positive).
Price parse_price(const std::string& text);
std::string format_price(const Price& price);

/// Chores minimizing |v_i(c)| / p(c), compared exactly.
std::vector<std::size_t> mpb_set(const Instance& inst, const PriceVector& prices, std::size_t agent);

/// Every bundle lies inside its owner's minimum-pain-per-buck set.
bool is_fisher_equilibrium(const Instance& inst, const Allocation& alloc, const PriceVector& prices);

/// For all i, j: A_i is empty or p(A_i minus its priciest chore) <= p(A_j).
bool is_pef1(const Instance& inst, const Allocation& alloc, const PriceVector& prices);

}  // namespace chorefair

#endif  // CHOREFAIR_MARKET_HPP_
