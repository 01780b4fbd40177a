#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hellylab/compression.hpp"
#include "hellylab/rng.hpp"
#include "hellylab/svm.hpp"

using namespace hellylab;

namespace {

using FiniteEntry = LabeledPoint<int>;

std::vector<FiniteEntry> finite_sample(
    std::initializer_list<std::pair<int, int>> entries) {
    std::vector<FiniteEntry> s;
    for (auto [p, y] : entries) s.push_back({p, Label(y)});
    return s;
}

// realizable sample over the singleton host, points drawn from [0, limit)
std::vector<FiniteEntry> random_singleton_sample(const ConceptClass& host,
                                                 int limit, Rng& rng) {
    int target = int(rng.next_below(std::uint64_t(host.size())));
    int size = 1 + int(rng.next_below(16));
    std::vector<FiniteEntry> s;
    for (int i = 0; i < size; ++i) {
        int x = int(rng.next_below(std::uint64_t(limit)));
        s.push_back({x, host.predict(target, x)});
    }
    return s;
}

}  // namespace

TEST_CASE("generalization bound values and preconditions") {
    CHECK(generalization_bound(1, 100, 0.05) == doctest::Approx(0.089429).epsilon(1e-5));
    CHECK(generalization_bound(3, 300, 0.05) == doctest::Approx(0.048671).epsilon(1e-5));
    // direct formula evaluation as the independent route
    auto formula = [](int l, int m, double d) {
        return 2.0 / (m - 2 * l) * (l * std::log(4.0) + std::log(1.0 / d));
    };
    CHECK(generalization_bound(1, 100, 0.05) == doctest::Approx(formula(1, 100, 0.05)));
    CHECK(generalization_bound(3, 300, 0.05) == doctest::Approx(formula(3, 300, 0.05)));
    CHECK_THROWS_AS(generalization_bound(1, 2, 0.5), Error);
    CHECK_THROWS_AS(generalization_bound(2, 4, 0.5), Error);
}

TEST_CASE("generalization bound monotonicity") {
    Rng rng(11);
    for (int round = 0; round < 50; ++round) {
        int l = 1 + int(rng.next_below(4));
        int m = 2 * (l + 1) + 1 + int(rng.next_below(200));
        double delta = 0.01 + 0.5 * rng.next_unit();
        double base = generalization_bound(l, m, delta);
        CHECK(generalization_bound(l, m + 1, delta) < base);
        CHECK(generalization_bound(l + 1, m, delta) > base);
        CHECK(generalization_bound(l, m, delta * 0.5) > base);
    }
}

TEST_CASE("block family shapes") {
    BlockFamily f12 = block_family(12, 2);
    CHECK(f12.blocks.size() == 4);
    for (const auto& b : f12.blocks) CHECK(b.size() == 3);
    CHECK(f12.family.size() == 6);
    CHECK(f12.t_m == 6);

    BlockFamily f10 = block_family(10, 2);
    std::vector<std::size_t> sizes;
    for (const auto& b : f10.blocks) sizes.push_back(b.size());
    CHECK(sizes == std::vector<std::size_t>{3, 3, 2, 2});
    CHECK(f10.t_m == 4);

    CHECK_THROWS_AS(block_family(3, 2), Error);
}

TEST_CASE("block family covers every l-subset of indices") {
    BlockFamily f = block_family(12, 2);
    for (int i = 0; i < 12; ++i) {
        for (int j = i + 1; j < 12; ++j) {
            bool covered = false;
            for (const auto& member : f.family) {
                if (std::binary_search(member.begin(), member.end(), i) &&
                    std::binary_search(member.begin(), member.end(), j)) {
                    covered = true;
                    break;
                }
            }
            CHECK(covered);
        }
    }
}

TEST_CASE("singleton scheme on the worked examples") {
    ConceptClass host = make_singletons(8, false);
    FiniteScheme scheme = singleton_scheme(host);

    // a positive example wins: S = {(2,-1),(4,+1)} in 1-based naming
    auto s1 = finite_sample({{1, -1}, {3, 1}});
    auto k1 = scheme.kappa(s1);
    REQUIRE(k1.size() == 1);
    CHECK(k1[0] == FiniteEntry{3, 1});
    CHECK(scheme.rho_index(k1) == 3);

    // all negative: compress to the largest point, reconstruct to its successor
    auto s2 = finite_sample({{1, -1}, {4, -1}, {2, -1}});
    auto k2 = scheme.kappa(s2);
    REQUIRE(k2.size() == 1);
    CHECK(k2[0] == FiniteEntry{4, -1});
    CHECK(scheme.rho_index(k2) == 5);

    // single-entry sample is its own compression set
    auto s3 = finite_sample({{6, -1}});
    CHECK(scheme.kappa(s3) == s3);

    CHECK(check_validity(scheme, s1));
    CHECK(check_validity(scheme, s2));
    CHECK(check_stability(scheme, s1));
    CHECK(check_stability(scheme, s2));
}

TEST_CASE("singleton scheme: reconstruction past the domain end") {
    ConceptClass host = make_singletons(4, false);
    FiniteScheme scheme = singleton_scheme(host);
    auto bad = finite_sample({{3, -1}});
    CHECK_THROWS_AS(scheme.rho(scheme.kappa(bad)), Error);
    try {
        scheme.rho(scheme.kappa(bad));
    } catch (const Error& e) {
        CHECK(e.code() == errc::unrepresentable);
    }
}

TEST_CASE("singleton scheme passes validity and stability on random samples") {
    ConceptClass host = make_singletons(12, false);
    FiniteScheme scheme = singleton_scheme(host);
    Rng rng(450);
    for (int round = 0; round < 300; ++round) {
        // keep the last domain point out so reconstruction stays in range
        auto s = random_singleton_sample(host, 11, rng);
        CHECK(check_validity(scheme, s));
        CHECK(check_stability(scheme, s));
        CHECK(int(scheme.kappa(s).size()) <= 1);
    }
}

TEST_CASE("closure scheme on intervals") {
    ConceptClass host = make_intervals({1, 2, 3, 4, 5, 6, 7, 8}, true);
    FiniteScheme scheme = closure_scheme(host);
    CHECK(scheme.size == 2);

    // positives at values {2,5,3} (0-based points 1,4,2): kappa keeps 2 and 5
    auto s = finite_sample({{1, 1}, {4, 1}, {2, 1}, {6, -1}});
    auto k = scheme.kappa(s);
    REQUIRE(k.size() == 2);
    CHECK(k[0] == FiniteEntry{1, 1});
    CHECK(k[1] == FiniteEntry{4, 1});
    // rho is the interval [2,5]
    int h = scheme.rho_index(k);
    for (int x = 0; x < host.domain_size(); ++x)
        CHECK(host.predict(h, x) == (x >= 1 && x <= 4 ? 1 : -1));

    // removing the redundant positive leaves kappa unchanged
    auto sub = finite_sample({{1, 1}, {4, 1}, {6, -1}});
    CHECK(scheme.kappa(sub) == k);

    // all-negative sample compresses to nothing and rebuilds the empty interval
    auto neg = finite_sample({{0, -1}, {5, -1}});
    CHECK(scheme.kappa(neg).empty());
    int empty_h = scheme.rho_index(scheme.kappa(neg));
    for (int x = 0; x < host.domain_size(); ++x)
        CHECK(host.predict(empty_h, x) == -1);
}

TEST_CASE("closure scheme validity and stability on random interval samples") {
    ConceptClass host = make_intervals({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, true);
    FiniteScheme scheme = closure_scheme(host);
    Rng rng(888);
    for (int round = 0; round < 300; ++round) {
        int target = int(rng.next_below(std::uint64_t(host.size())));
        int size = 1 + int(rng.next_below(16));
        std::vector<FiniteEntry> s;
        for (int i = 0; i < size; ++i) {
            int x = int(rng.next_below(std::uint64_t(host.domain_size())));
            s.push_back({x, host.predict(target, x)});
        }
        CHECK(check_validity(scheme, s));
        CHECK(check_stability(scheme, s));
        CHECK(int(scheme.kappa(s).size()) <= scheme.size);
    }
}

TEST_CASE("closure scheme works past the 64-hypothesis parameter cap") {
    // intervals on 12 grid points: 79 hypotheses
    std::vector<double> grid;
    for (int i = 1; i <= 12; ++i) grid.push_back(double(i));
    ConceptClass host = make_intervals(grid, true);
    REQUIRE(host.size() == 79);
    FiniteScheme scheme = closure_scheme(host);
    CHECK(scheme.size == 2);
    auto s = finite_sample({{2, 1}, {9, 1}, {0, -1}});
    CHECK(check_validity(scheme, s));
    CHECK(check_stability(scheme, s));
}

TEST_CASE("closure scheme rejects unsuitable hosts") {
    CHECK_THROWS_AS(closure_scheme(make_singletons(5, false)), Error);
    CHECK_THROWS_AS(closure_scheme(make_thresholds({1, 2, 3}, false)), Error);
    CHECK_NOTHROW(closure_scheme(make_thresholds({1, 2, 3}, true)));
}

TEST_CASE("negative controls: broken schemes fail the checkers") {
    ConceptClass host = make_singletons(6, false);
    FiniteScheme broken = singleton_scheme(host);
    broken.rho = [](const std::vector<FiniteEntry>&) {
        return [](const int&) { return Label(1); };
    };
    auto s = finite_sample({{0, -1}, {2, 1}});
    CHECK_FALSE(check_validity(broken, s));

    // a position-dependent kappa (middle entry) shifts when non-compressed
    // entries are removed
    FiniteScheme positional = singleton_scheme(host);
    positional.kappa = [](const std::vector<FiniteEntry>& sample) {
        return std::vector<FiniteEntry>{sample[sample.size() / 2]};
    };
    auto shuffled = finite_sample({{1, -1}, {3, -1}, {0, -1}});
    CHECK_FALSE(check_stability(positional, shuffled));
}

TEST_CASE("stability iterates: removing pairs of non-compressed entries") {
    ConceptClass single_host = make_singletons(10, false);
    FiniteScheme singleton = singleton_scheme(single_host);
    ConceptClass interval_host = make_intervals({1, 2, 3, 4, 5, 6, 7, 8}, true);
    FiniteScheme closure = closure_scheme(interval_host);

    Rng rng(6120);
    auto pair_removal_stable = [](const FiniteScheme& scheme,
                                  const std::vector<FiniteEntry>& s) {
        auto compressed = scheme.kappa(s);
        auto positions = subsequence_positions(compressed, s);
        REQUIRE(positions.has_value());
        std::vector<bool> used(s.size(), false);
        for (int p : *positions) used[std::size_t(p)] = true;
        for (std::size_t a = 0; a < s.size(); ++a) {
            if (used[a]) continue;
            for (std::size_t b = a + 1; b < s.size(); ++b) {
                if (used[b]) continue;
                std::vector<FiniteEntry> sub;
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (i != a && i != b) sub.push_back(s[i]);
                if (!(scheme.kappa(sub) == compressed)) return false;
            }
        }
        return true;
    };

    for (int round = 0; round < 40; ++round) {
        auto s1 = random_singleton_sample(single_host, 9, rng);
        CHECK(pair_removal_stable(singleton, s1));

        int target = int(rng.next_below(std::uint64_t(interval_host.size())));
        std::vector<FiniteEntry> s2;
        int size = 3 + int(rng.next_below(8));
        for (int i = 0; i < size; ++i) {
            int x = int(rng.next_below(std::uint64_t(interval_host.domain_size())));
            s2.push_back({x, interval_host.predict(target, x)});
        }
        CHECK(pair_removal_stable(closure, s2));
    }
}

TEST_CASE("validity enforces the declared size") {
    ConceptClass host = make_singletons(6, false);
    FiniteScheme scheme = singleton_scheme(host);
    scheme.size = 0;
    CHECK_FALSE(check_validity(scheme, finite_sample({{2, 1}})));
}

TEST_CASE("svm scheme on geometric samples") {
    Scheme<std::vector<double>> scheme = svm_scheme(2);
    CHECK(scheme.size == 3);
    using Entry = LabeledPoint<std::vector<double>>;

    std::vector<Entry> mixed{{{0.0, 0.0}, -1}, {{2.0, 0.0}, 1}, {{0.0, 2.0}, 1},
                             {{5.0, 5.0}, 1}};
    CHECK(check_validity(scheme, mixed));
    CHECK(check_stability(scheme, mixed));
    CHECK(int(scheme.kappa(mixed).size()) <= 3);

    std::vector<Entry> all_pos{{{0.1, 0.4}, 1}, {{0.8, 0.2}, 1}};
    CHECK(scheme.kappa(all_pos).empty());
    CHECK(check_validity(scheme, all_pos));
    CHECK(check_stability(scheme, all_pos));

    std::vector<Entry> all_neg{{{0.1, 0.4}, -1}, {{0.8, 0.2}, -1}};
    auto kn = scheme.kappa(all_neg);
    REQUIRE(kn.size() == 1);
    CHECK(kn[0].point == std::vector<double>{0.8, 0.2});
    CHECK(check_validity(scheme, all_neg));
    CHECK(check_stability(scheme, all_neg));
}
