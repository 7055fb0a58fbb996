#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dpsubmod/fixture.hpp"
#include "dpsubmod/rng.hpp"
#include "dpsubmod/set_function.hpp"

using namespace dpsubmod;

namespace {

// Unit-weight cut on K_2: the canonical two-element fixture.
SetFunction cut2() { return make_cut_function(2, {{1, 2, 1.0}}); }

SetFunction random_cut(Rng& rng, int n) {
    std::vector<WeightedEdge> edges;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            if (rng.uniform01() < 0.6) edges.push_back({i, j, rng.uniform(0.0, 2.0)});
        }
    }
    if (edges.empty()) edges.push_back({1, 2, 1.0});
    return make_cut_function(n, edges);
}

}  // namespace

TEST_CASE("cut2 evaluates the three spec points") {
    const auto f = cut2();
    CHECK(f(0b00) == 0.0);
    CHECK(f(0b01) == 1.0);  // {1} cuts the single edge
    CHECK(f(0b11) == 0.0);
    CHECK(f(0b10) == 1.0);
}

TEST_CASE("evaluate rejects masks outside the ground set") {
    const auto f = cut2();
    CHECK_THROWS_AS(f(0b100), std::invalid_argument);
    CHECK_THROWS_AS(f(0xffff), std::invalid_argument);
}

TEST_CASE("evaluate is pure") {
    Rng rng(3);
    const auto f = random_cut(rng, 6);
    for (Subset s = 0; s <= full_set(6); ++s) {
        const double first = f(s);
        CHECK(f(s) == first);
        CHECK(f(s) == first);
    }
}

TEST_CASE("cut functions are submodular") {
    CHECK(check_submodular(cut2()).submodular);
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(2, 8));
        CHECK(check_submodular(random_cut(rng, n)).submodular);
    }
}

TEST_CASE("squared cardinality is caught with a witness") {
    const SetFunction f(3, 9.0, [](Subset s) {
        const double k = set_size(s);
        return k * k;
    });
    const auto check = check_submodular(f);
    REQUIRE_FALSE(check.submodular);
    REQUIRE(check.witness.has_value());
    // f({1}) + f({2}) = 2 < f({1,2}) + f({}) = 4: the witness shows the gap
    const auto& w = *check.witness;
    const Subset si = with_element(w.base, w.element_i);
    const Subset sj = with_element(w.base, w.element_j);
    const Subset sij = with_element(si, w.element_j);
    CHECK(f(si) + f(sj) < f(sij) + f(w.base));
    CHECK(w.violation == doctest::Approx(f(sij) + f(w.base) - f(si) - f(sj)));
}

TEST_CASE("modular functions are submodular with equality") {
    const auto f = make_modular_function({1.0, -2.0, 0.5});
    CHECK(check_submodular(f).submodular);
    CHECK(f(0b111) == doctest::Approx(-0.5));
    CHECK(f.range_bound() == doctest::Approx(2.0));  // max(sum of + weights, -sum of - weights)
}

TEST_CASE("check_submodular refuses oversized oracles") {
    const SetFunction f(17, 1.0, [](Subset) { return 0.0; });
    CHECK_THROWS_WITH_AS(check_submodular(f),
                         "check_submodular: oracle too large for exhaustive verification (n > 16)",
                         std::invalid_argument);
}

TEST_CASE("make_cut_function spec points") {
    const auto f2 = make_cut_function(2, {{1, 2, 1.0}});
    CHECK(f2(0b10) == 1.0);  // S={2}, one crossing edge
    const auto path3 = make_cut_function(3, {{1, 2, 1.0}, {2, 3, 1.0}});
    CHECK(path3(0b010) == 2.0);  // S={2} cuts both edges
    CHECK(path3(0) == 0.0);
    CHECK(path3.range_bound() == 2.0);
}

TEST_CASE("make_cut_function rejects bad edges") {
    CHECK_THROWS_AS(make_cut_function(2, {{1, 2, -0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(make_cut_function(2, {{2, 1, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_cut_function(2, {{1, 3, 1.0}}), std::invalid_argument);
}

TEST_CASE("coverage spec points") {
    const auto same = make_coverage_function(2, {0b1, 0b1}, +1);
    CHECK(same(0b11) == 1.0);
    const auto disjoint = make_coverage_function(2, {0b01, 0b10}, +1);
    CHECK(disjoint(0b11) == 2.0);
    CHECK(disjoint(0) == 0.0);
    CHECK(check_submodular(same).submodular);
    CHECK(check_submodular(disjoint).submodular);
}

TEST_CASE("negated coverage is submodular exactly when element sets are disjoint") {
    const auto disjoint = make_coverage_function(3, {0b001, 0b010, 0b100}, -1);
    CHECK(check_submodular(disjoint).submodular);
    const auto overlapping = make_coverage_function(2, {0b1, 0b1}, -1);
    CHECK_FALSE(check_submodular(overlapping).submodular);
}

TEST_CASE("generator outputs stay within their declared range bound") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(2, 8));
        CHECK_FALSE(check_range_bound(random_cut(rng, n)).has_value());
        std::vector<double> w(static_cast<std::size_t>(n));
        for (auto& x : w) x = rng.uniform(-1.0, 1.0);
        CHECK_FALSE(check_range_bound(make_modular_function(w)).has_value());
    }
}

TEST_CASE("exhaustive tooling covers the upper desk-scale sizes") {
    Rng rng(19);
    CHECK(check_submodular(random_cut(rng, 12)).submodular);
    CHECK_FALSE(check_range_bound(random_cut(rng, 16)).has_value());
}

TEST_CASE("table function validates shape and bound") {
    const auto f = make_table_function(2, {0.0, 1.0, 1.0, 0.0});
    CHECK(f(0b01) == 1.0);
    CHECK(f.range_bound() == 1.0);
    CHECK_THROWS_AS(make_table_function(2, {0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_table_function(2, {0.0, 1.0, 5.0, 0.0}, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(make_table_function(13, std::vector<double>(1 << 13, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("fixture records parse into working oracles") {
    const auto cut = parse_function_record("kind cut\nn 3\nedge 1 2 1.0\nedge 2 3 1.0\n");
    CHECK(cut(0b010) == 2.0);

    const auto cov = parse_function_record(
        "kind coverage\nn 2\nsign +1\nset 1 a\nset 2 a b\n");
    CHECK(cov(0b01) == 1.0);
    CHECK(cov(0b11) == 2.0);

    const auto mod = parse_function_record("kind modular\nn 3\nweights 1 -2 0.5\n");
    CHECK(mod(0b111) == doctest::Approx(-0.5));

    const auto table = parse_function_record(
        "kind explicit-table\nn 2\nm 1.5\nvalues 0 1 1 0\n");
    CHECK(table(0b10) == 1.0);
    CHECK(table.range_bound() == 1.5);
}

TEST_CASE("fixture sequences split on kind lines") {
    const auto seq = parse_function_sequence(
        "# two records\nkind modular\nn 2\nweights 1 1\nkind cut\nn 2\nedge 1 2 2.0\n");
    REQUIRE(seq.size() == 2);
    CHECK(seq[0](0b11) == 2.0);
    CHECK(seq[1](0b01) == 2.0);
}

TEST_CASE("fixture parser rejects malformed records") {
    CHECK_THROWS_AS(parse_function_record("kind frobnicate\nn 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_function_record("kind cut\nedge 1 2 1.0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_function_record("n 2\nkind cut\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_function_record("kind modular\nn 2\nweights 1\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_function_record("kind cut\nn 2\nedge 1 2 oops\n"),
                    std::invalid_argument);
}

TEST_CASE("subset_to_string renders 1-based elements") {
    CHECK(subset_to_string(0, 4) == "{}");
    CHECK(subset_to_string(0b1011, 4) == "{1,2,4}");
}
