#include <doctest.h>

#include <chorefair/errors.hpp>
#include <chorefair/fairness.hpp>
#include <chorefair/market.hpp>

#include "fixtures.hpp"
#include "test_support.hpp"

using namespace chorefair;

namespace {

// Perceived value recomputed from scratch, without AugmentedView.
Value perceived(const Instance& inst, const Allocation& alloc, const DubiousAllocation& w, std::size_t i,
                std::size_t h) {
  Value total = 0;
  for (std::size_t c = 0; c < inst.chores(); ++c) {
    if (alloc.owner(c) == h) total += inst.value(i, c);
  }
  if (i != h) {
    for (const auto& copy : w.copies()) {
      if (copy.agent == h) total += static_cast<Value>(copy.count) * inst.value(i, copy.chore);
    }
  }
  return total;
}

bool envy_free_after(const Instance& inst, const Allocation& alloc, const DubiousAllocation& w) {
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    for (std::size_t h = 0; h < inst.agents(); ++h) {
      if (perceived(inst, alloc, w, i, h) > perceived(inst, alloc, w, i, i)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(Instance(0, 0, {}), invalid_input);
  CHECK_THROWS_AS(Instance(2, 2, {0, 0, 0}), invalid_input);
  CHECK_THROWS_WITH_AS(Instance(1, 2, {0, 1}), doctest::Contains("nonpositive valuations required"), invalid_input);
  CHECK_THROWS_AS(Instance::from_rows({{-1, 0}, {0}}), invalid_input);
  const Instance empty(2, 0, {});
  CHECK(empty.chores() == 0);
  CHECK_THROWS_AS(validate(fixtures::housemates(), Allocation({0, 1, 3})), invalid_input);
  CHECK_THROWS_AS(validate(fixtures::housemates(), Allocation({0, 1})), invalid_input);
}

TEST_CASE("dubious allocation merges copies") {
  DubiousAllocation w;
  w.add(2, 0);
  w.add(1, 1);
  w.add(2, 0, 2);
  REQUIRE(w.copies().size() == 2);
  CHECK(w.copies()[0] == DubiousCopy{1, 1, 1});
  CHECK(w.copies()[1] == DubiousCopy{2, 0, 3});
  CHECK(w.size() == 4);
  CHECK(w.count(2, 0) == 3);
  DubiousAllocation smaller;
  smaller.add(2, 0, 2);
  CHECK(smaller.is_subset_of(w));
  CHECK_FALSE(w.is_subset_of(smaller));
  CHECK_THROWS_AS(validate(fixtures::housemates(), DubiousAllocation({{3, 0, 1}})), invalid_input);
}

TEST_CASE("envy matrix on the housemates allocation") {
  const auto inst = fixtures::housemates();
  const auto rep = envy_matrix(inst, fixtures::housemates_circled());
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t h = 0; h < 3; ++h) {
      const Value expected = (i == 1 && h == 0) ? 1 : (i == 2 && h == 0) ? 2 : 0;
      CHECK(rep.envy.at(i, h) == expected);
    }
  }
  CHECK(rep.totals == std::vector<Value>{0, 1, 2});
  CHECK_FALSE(rep.envy_free());
}

TEST_CASE("envy matrix trivial cases") {
  const Instance single(1, 3, {-1, -2, 0});
  CHECK(envy_matrix(single, Allocation({0, 0, 0})).envy.at(0, 0) == 0);
  const Instance zeros(3, 2, {0, 0, 0, 0, 0, 0});
  CHECK(envy_matrix(zeros, Allocation({2, 1})).envy_free());
  CHECK_THROWS_AS(envy_matrix(zeros, Allocation({2})), invalid_input);
}

TEST_CASE("EF and EF1") {
  CHECK(is_ef1(fixtures::housemates(), fixtures::housemates_circled()));
  CHECK_FALSE(is_ef(fixtures::housemates(), fixtures::housemates_circled()));
  CHECK_FALSE(is_ef1(fixtures::not_ef1(), fixtures::not_ef1_circled()));
  const Instance none(2, 0, {});
  CHECK(is_ef(none, Allocation(std::vector<std::size_t>{})));
  CHECK(is_ef1(none, Allocation(std::vector<std::size_t>{})));
}

TEST_CASE("EF1 agrees with removing each chore in turn") {
  SplitMix64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const auto n = support::uniform(rng, 1, 4);
    const auto m = support::uniform(rng, 0, 6);
    const auto inst = support::random_instance(rng, n, m, 5);
    const auto alloc = support::random_allocation(rng, n, m);
    const auto bundles = alloc.bundles(n);
    bool expected = true;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t h = 0; h < n; ++h) {
        Value own = 0;
        Value other = 0;
        for (auto c : bundles[i]) own += inst.value(i, c);
        for (auto c : bundles[h]) other += inst.value(i, c);
        if (own >= other || bundles[i].empty()) continue;
        bool fixable = false;
        for (auto c : bundles[i]) fixable = fixable || own - inst.value(i, c) >= other;
        expected = expected && fixable;
      }
    }
    CHECK(is_ef1(inst, alloc) == expected);
  }
}

TEST_CASE("DEF witnesses on the worked examples") {
  DubiousAllocation vacuum;
  vacuum.add(2, 0);
  CHECK(check_def_witness(fixtures::housemates(), fixtures::housemates_circled(), vacuum));
  CHECK(AugmentedView(fixtures::housemates(), fixtures::housemates_circled(), vacuum).perceived(1, 0) == -4);

  DubiousAllocation two;
  two.add(0, 1);
  two.add(1, 1);
  CHECK(check_def_witness(fixtures::not_ef1(), fixtures::not_ef1_circled(), two));
  CHECK_FALSE(check_def_witness(fixtures::not_ef1(), fixtures::not_ef1_circled(), {}));
}

TEST_CASE("DEF variants constrain witnesses") {
  const auto inst = fixtures::housemates();
  const auto alloc = fixtures::housemates_circled();
  DubiousAllocation vacuum;
  vacuum.add(2, 0);
  CHECK(check_def_witness(inst, alloc, vacuum, DefVariant::sdef));
  // Vacuuming belongs to Chan, not Ali.
  CHECK_FALSE(check_def_witness(inst, alloc, vacuum, DefVariant::pdef));

  DubiousAllocation twice;
  twice.add(2, 0, 2);
  CHECK(check_def_witness(inst, alloc, twice, DefVariant::def));
  CHECK_FALSE(check_def_witness(inst, alloc, twice, DefVariant::sdef));

  DubiousAllocation spread;
  spread.add(2, 0);
  spread.add(2, 1);
  CHECK(check_def_witness(inst, alloc, spread, DefVariant::def));
  CHECK_FALSE(check_def_witness(inst, alloc, spread, DefVariant::sdef));

  // Copies targeted at the owner are allowed in plain DEF.
  DubiousAllocation self;
  self.add(0, 0);
  self.add(2, 0);
  CHECK(check_def_witness(inst, alloc, self, DefVariant::def));
  CHECK(check_def_witness(inst, alloc, self, DefVariant::pdef) == false);

  CHECK(parse_def_variant("sdef") == DefVariant::sdef);
  CHECK(to_string(DefVariant::pdef) == "pdef");
  CHECK_THROWS_AS(parse_def_variant("xdef"), invalid_input);
}

TEST_CASE("check_def_witness matches a direct recomputation") {
  SplitMix64 rng(12);
  for (int t = 0; t < 500; ++t) {
    const auto n = support::uniform(rng, 1, 4);
    const auto m = support::uniform(rng, 1, 5);
    const auto inst = support::random_instance(rng, n, m, 4);
    const auto alloc = support::random_allocation(rng, n, m);
    const auto w = support::random_witness(rng, n, m, 5);
    CHECK(check_def_witness(inst, alloc, w) == envy_free_after(inst, alloc, w));
    CHECK(check_def_witness(inst, alloc, {}) == is_ef(inst, alloc));
    CHECK(is_ef(inst, alloc) == envy_matrix(inst, alloc).envy_free());
  }
}

TEST_CASE("adding copies never breaks a DEF witness") {
  SplitMix64 rng(13);
  int verified = 0;
  for (int t = 0; t < 500; ++t) {
    const auto n = support::uniform(rng, 2, 4);
    const auto m = support::uniform(rng, 1, 5);
    const auto inst = support::random_instance(rng, n, m, 4);
    const auto alloc = support::random_allocation(rng, n, m);
    // Always-valid witness: every chore once to every agent.
    DubiousAllocation w;
    for (std::size_t c = 0; c < m; ++c) {
      for (std::size_t h = 0; h < n; ++h) {
        if (h != alloc.owner(c)) w.add(c, h);
      }
    }
    REQUIRE(check_def_witness(inst, alloc, w));
    auto bigger = w;
    bigger.merge(support::random_witness(rng, n, m, 4));
    CHECK(w.is_subset_of(bigger));
    CHECK(check_def_witness(inst, alloc, bigger));
    const auto partial = support::random_witness(rng, n, m, 3);
    if (check_def_witness(inst, alloc, partial)) {
      auto more = partial;
      more.merge(support::random_witness(rng, n, m, 3));
      CHECK(check_def_witness(inst, alloc, more));
      ++verified;
    }
  }
  CHECK(verified > 0);
}

TEST_CASE("scaling one agent's row changes no predicate") {
  SplitMix64 rng(14);
  for (int t = 0; t < 300; ++t) {
    const auto n = support::uniform(rng, 1, 4);
    const auto m = support::uniform(rng, 0, 6);
    const auto inst = support::random_instance(rng, n, m, 4);
    const auto alloc = support::random_allocation(rng, n, m);
    const auto w = support::random_witness(rng, n, m, 4);
    const auto scaled = inst.scaled_row(rng.below(n), static_cast<Value>(support::uniform(rng, 2, 5)));
    CHECK(is_ef(inst, alloc) == is_ef(scaled, alloc));
    CHECK(is_ef1(inst, alloc) == is_ef1(scaled, alloc));
    CHECK(check_def_witness(inst, alloc, w) == check_def_witness(scaled, alloc, w));
  }
}

TEST_CASE("relabeling agents and chores permutes envy") {
  SplitMix64 rng(15);
  for (int t = 0; t < 200; ++t) {
    const auto n = support::uniform(rng, 1, 4);
    const auto m = support::uniform(rng, 0, 6);
    const auto inst = support::random_instance(rng, n, m, 4);
    const auto alloc = support::random_allocation(rng, n, m);
    const auto pa = support::random_permutation(rng, n);  // old agent -> new agent
    const auto pc = support::random_permutation(rng, m);  // old chore -> new chore
    std::vector<Value> v(n * m);
    std::vector<std::size_t> owners(m);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < m; ++c) v[pa[i] * m + pc[c]] = inst.value(i, c);
    }
    for (std::size_t c = 0; c < m; ++c) owners[pc[c]] = pa[alloc.owner(c)];
    const Instance moved(n, m, std::move(v));
    const Allocation moved_alloc(std::move(owners));
    const auto before = envy_matrix(inst, alloc);
    const auto after = envy_matrix(moved, moved_alloc);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t h = 0; h < n; ++h) CHECK(before.envy.at(i, h) == after.envy.at(pa[i], pa[h]));
    }
    CHECK(is_ef1(inst, alloc) == is_ef1(moved, moved_alloc));
  }
}

TEST_CASE("Pareto optimality examples") {
  CHECK_FALSE(is_pareto_optimal(fixtures::private_chores(3), fixtures::diagonal(3)));
  CHECK_FALSE(is_pareto_optimal(fixtures::private_chores(3), fixtures::diagonal(3), {PoMethod::brute}));
  const Instance identical(3, 4, {-1, -2, -3, 0, -1, -2, -3, 0, -1, -2, -3, 0});
  support::for_each_allocation(3, 4, [&](const Allocation& a) { CHECK(is_pareto_optimal(identical, a)); });
  const Instance binary(2, 2, {0, -1, -1, -1});
  CHECK_FALSE(is_pareto_optimal(binary, Allocation({1, 0})));
  CHECK(is_pareto_optimal(binary, Allocation({0, 0})));
  CHECK_THROWS_AS(is_pareto_optimal(fixtures::housemates(), fixtures::housemates_circled(), {PoMethod::binary_fast}),
                  invalid_input);
  SplitMix64 rng(1);
  const auto wide = support::random_instance(rng, 5, 12, 3);
  CHECK_THROWS_AS(is_pareto_optimal(wide, Allocation(std::vector<std::size_t>(12, 0)), {PoMethod::brute, 1000}),
                  budget_exceeded);
}

TEST_CASE("binary PO characterization agrees with brute force") {
  SplitMix64 rng(16);
  for (int t = 0; t < 300; ++t) {
    const auto n = support::uniform(rng, 1, 4);
    const auto m = support::uniform(rng, 0, 6);
    const auto inst = support::random_instance_from(rng, n, m, {0, -1});
    const auto alloc = support::random_allocation(rng, n, m);
    const bool fast = is_pareto_optimal(inst, alloc, {PoMethod::binary_fast});
    CHECK(fast == is_pareto_optimal(inst, alloc, {PoMethod::brute}));
    CHECK(fast == support::pareto_optimal_by_enumeration(inst, alloc));
  }
}

TEST_CASE("brute PO agrees with enumeration on general instances") {
  SplitMix64 rng(17);
  for (int t = 0; t < 200; ++t) {
    const auto n = support::uniform(rng, 1, 3);
    const auto m = support::uniform(rng, 0, 5);
    const auto inst = support::random_instance(rng, n, m, 3);
    const auto alloc = support::random_allocation(rng, n, m);
    CHECK(is_pareto_optimal(inst, alloc) == support::pareto_optimal_by_enumeration(inst, alloc));
  }
}

TEST_CASE("prices") {
  CHECK(parse_price("3/2") == Price(3) / 2);
  CHECK(format_price(parse_price("6/4")) == "3/2");
  CHECK(format_price(parse_price("7")) == "7");
  CHECK_THROWS_AS(parse_price("0"), invalid_input);
  CHECK_THROWS_AS(parse_price("-1/2"), invalid_input);
  CHECK_THROWS_AS(parse_price("abc"), invalid_input);
  CHECK_THROWS_AS(PriceVector({Price(1), Price(0)}), invalid_input);
}

TEST_CASE("MPB, equilibrium and pEF1") {
  const Instance inst(2, 2, {-1, -2, -2, -1});
  const PriceVector ones({Price(1), Price(1)});
  CHECK(mpb_set(inst, ones, 0) == std::vector<std::size_t>{0});
  CHECK(is_fisher_equilibrium(inst, Allocation({0, 1}), ones));
  CHECK(is_pef1(inst, Allocation({0, 1}), ones));
  CHECK_FALSE(is_fisher_equilibrium(inst, Allocation({1, 0}), ones));

  const Instance lazy(2, 3, {0, 0, 0, -1, -2, -3});
  const PriceVector any({Price(1), Price(5), Price(1) / 3});
  CHECK(mpb_set(lazy, any, 0) == std::vector<std::size_t>{0, 1, 2});

  // Ratios 2/3 and 3/4 differ by less than typical float noise would hide.
  const Instance close(1, 2, {-2, -3});
  const PriceVector p({Price(3), Price(4)});
  CHECK(mpb_set(close, p, 0) == std::vector<std::size_t>{0});

  const Instance three(2, 3, {-1, -1, -1, -1, -1, -1});
  const PriceVector unit({Price(1), Price(1), Price(1)});
  CHECK(is_pef1(three, Allocation({0, 0, 1}), unit));
  CHECK_FALSE(is_pef1(three, Allocation({0, 0, 0}), unit));
  CHECK_THROWS_AS(is_pef1(three, Allocation({0, 0}), unit), invalid_input);
}

TEST_CASE("pEF1 equilibria are EF1") {
  SplitMix64 rng(18);
  int seen = 0;
  for (int t = 0; t < 400; ++t) {
    const auto n = support::uniform(rng, 1, 3);
    const auto m = support::uniform(rng, 1, 4);
    const auto inst = support::random_instance_from(rng, n, m, {-1, -2, -4});
    std::vector<Price> raw(m);
    for (auto& p : raw) p = Price(static_cast<long>(support::uniform(rng, 1, 4)));
    const PriceVector prices(raw);
    const auto alloc = support::random_allocation(rng, n, m);
    if (is_fisher_equilibrium(inst, alloc, prices) && is_pef1(inst, alloc, prices)) {
      CHECK(is_ef1(inst, alloc));
      ++seen;
    }
  }
  CHECK(seen > 0);
}

TEST_CASE("valuation classes") {
  const Instance ones(2, 2, {-1, -1, -1, -1});
  const auto a = classify_valuations(ones);
  CHECK(a.identical);
  CHECK(a.binary);
  CHECK(a.two_types.has_value());
  CHECK_FALSE(a.general());

  const auto b = classify_valuations(fixtures::housemates());
  CHECK_FALSE(b.identical);
  CHECK_FALSE(b.binary);
  CHECK_FALSE(b.bivalued.has_value());
  CHECK_FALSE(b.two_types.has_value());
  CHECK(b.general());

  const Instance bi(2, 3, {-2, -5, -2, -5, -5, -2});
  const auto c = classify_valuations(bi);
  REQUIRE(c.bivalued.has_value());
  CHECK(c.bivalued->low == -5);
  CHECK(c.bivalued->high == -2);
  CHECK_FALSE(c.binary);

  const Instance types(2, 4, {-1, -3, -1, -3, -2, -1, -2, -1});
  const auto d = classify_valuations(types);
  REQUIRE(d.two_types.has_value());
  CHECK(d.two_types->x_chores == std::vector<std::size_t>{0, 2});
  CHECK(d.two_types->y_chores == std::vector<std::size_t>{1, 3});
  CHECK_FALSE(d.bivalued.has_value());
}
