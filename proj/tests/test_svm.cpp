#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hellylab/rng.hpp"
#include "hellylab/svm.hpp"
#include "oracles.hpp"

using namespace hellylab;

namespace {

// random strictly separable instance with <= max_points points in R^dim
struct Instance {
    Points points;
    std::vector<Label> labels;
};

Instance random_separable(Rng& rng, int dim, int max_points) {
    while (true) {
        Instance inst;
        int m = 2 + int(rng.next_below(std::uint64_t(max_points - 1)));
        std::vector<double> w(std::size_t(dim), 0.0);
        double wn = 0;
        for (auto& c : w) {
            c = rng.next_unit() - 0.5;
            wn += c * c;
        }
        if (wn < 1e-6) continue;
        wn = std::sqrt(wn);
        for (auto& c : w) c /= wn;
        double v = rng.next_unit() - 0.5;
        bool has_pos = false, has_neg = false;
        double min_margin = 1e300;
        for (int i = 0; i < m; ++i) {
            std::vector<double> p(std::size_t(dim), 0.0);
            double s = -v;
            for (int c = 0; c < dim; ++c) {
                p[std::size_t(c)] = 2.0 * rng.next_unit() - 1.0;
                s += w[std::size_t(c)] * p[std::size_t(c)];
            }
            Label y = Label(s >= 0 ? 1 : -1);
            (y == 1 ? has_pos : has_neg) = true;
            min_margin = std::min(min_margin, std::fabs(s));
            inst.points.push_back(std::move(p));
            inst.labels.push_back(y);
        }
        if (has_pos && has_neg && min_margin > 1e-3) return inst;
    }
}

}  // namespace

TEST_CASE("separable basics") {
    CHECK(separable({{-1, 0}, {1, 0}}, {-1, 1}));
    // planar XOR is not separable
    CHECK_FALSE(separable({{0, 0}, {1, 1}, {0, 1}, {1, 0}}, {1, 1, -1, -1}));
    // same point with both labels
    CHECK_FALSE(separable({{0.5, 0.5}, {0.5, 0.5}}, {1, -1}));
    // single-label inputs are trivially separable
    CHECK(separable({{0, 0}, {1, 1}}, {1, 1}));
}

TEST_CASE("two symmetric points") {
    SvmSolution sol = hard_margin_svm({{-1, 0}, {1, 0}}, {-1, 1});
    CHECK(sol.margin == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sol.hypothesis.weights[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sol.hypothesis.weights[1] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(sol.hypothesis.threshold == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(sol.support_indices == std::vector<int>{0, 1});
}

TEST_CASE("three-point planar example: hyperplane x+y=1") {
    SvmSolution sol = hard_margin_svm({{0, 0}, {2, 0}, {0, 2}}, {-1, 1, 1});
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(sol.margin == doctest::Approx(r).epsilon(1e-7));
    CHECK(sol.hypothesis.weights[0] == doctest::Approx(r).epsilon(1e-7));
    CHECK(sol.hypothesis.weights[1] == doctest::Approx(r).epsilon(1e-7));
    CHECK(sol.hypothesis.threshold == doctest::Approx(r).epsilon(1e-7));
    CHECK(sol.support_indices == std::vector<int>{0, 1, 2});
}

TEST_CASE("one-dimensional pair") {
    SvmSolution sol = hard_margin_svm({{0.0}, {2.0}}, {-1, 1});
    CHECK(sol.margin == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sol.hypothesis.threshold == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sign(0) = +1: boundary points are classified positive") {
    HalfspaceHypothesis h{{1.0, 0.0}, 0.5};
    CHECK(h.predict({0.5, 3.0}) == 1);
    CHECK(h.predict({0.4999, 3.0}) == -1);
}

TEST_CASE("solver margin matches the primal active-set oracle") {
    Rng rng(7001);
    for (int round = 0; round < 60; ++round) {
        int dim = round % 2 == 0 ? 2 : 3;
        Instance inst = random_separable(rng, dim, 8);
        SvmSolution sol = hard_margin_svm(inst.points, inst.labels);
        auto brute = oracle::brute_force_margin(inst.points, inst.labels);
        REQUIRE(brute.has_value());
        CHECK(std::fabs(sol.margin - *brute) <= 1e-6 * std::max(1.0, *brute));
    }
}

TEST_CASE("removing a non-support point leaves the solution unchanged") {
    Rng rng(7002);
    for (int round = 0; round < 30; ++round) {
        Instance inst = random_separable(rng, 2, 8);
        SvmSolution sol = hard_margin_svm(inst.points, inst.labels);
        std::vector<bool> support(inst.points.size(), false);
        for (int i : sol.support_indices) support[std::size_t(i)] = true;
        for (std::size_t skip = 0; skip < inst.points.size(); ++skip) {
            if (support[skip]) continue;
            Points pts;
            std::vector<Label> labels;
            for (std::size_t i = 0; i < inst.points.size(); ++i) {
                if (i == skip) continue;
                pts.push_back(inst.points[i]);
                labels.push_back(inst.labels[i]);
            }
            SvmSolution sub = hard_margin_svm(pts, labels);
            CHECK(sub.margin == doctest::Approx(sol.margin).epsilon(1e-7));
            for (std::size_t c = 0; c < 2; ++c)
                CHECK(sub.hypothesis.weights[c] ==
                      doctest::Approx(sol.hypothesis.weights[c]).epsilon(1e-6));
            CHECK(sub.hypothesis.threshold ==
                  doctest::Approx(sol.hypothesis.threshold).epsilon(1e-6));
        }
    }
}

TEST_CASE("solution is invariant under permutation and translation") {
    Rng rng(7003);
    Instance inst = random_separable(rng, 2, 8);
    SvmSolution sol = hard_margin_svm(inst.points, inst.labels);

    // reverse the point order
    Points rev_pts(inst.points.rbegin(), inst.points.rend());
    std::vector<Label> rev_labels(inst.labels.rbegin(), inst.labels.rend());
    SvmSolution rev = hard_margin_svm(rev_pts, rev_labels);
    CHECK(rev.margin == doctest::Approx(sol.margin).epsilon(1e-8));
    CHECK(rev.hypothesis.weights[0] ==
          doctest::Approx(sol.hypothesis.weights[0]).epsilon(1e-6));

    // translate all points; the threshold shifts by <w, t>
    std::vector<double> shift{3.25, -1.5};
    Points moved = inst.points;
    for (auto& p : moved)
        for (std::size_t c = 0; c < 2; ++c) p[c] += shift[c];
    SvmSolution m = hard_margin_svm(moved, inst.labels);
    CHECK(m.margin == doctest::Approx(sol.margin).epsilon(1e-7));
    double expected_shift = sol.hypothesis.weights[0] * shift[0] +
                            sol.hypothesis.weights[1] * shift[1];
    CHECK(m.hypothesis.threshold ==
          doctest::Approx(sol.hypothesis.threshold + expected_shift).epsilon(1e-6));
}

TEST_CASE("errors: not separable and single-label") {
    CHECK_THROWS_AS(hard_margin_svm({{0, 0}, {1, 1}, {0, 1}, {1, 0}},
                                    {1, 1, -1, -1}),
                    Error);
    CHECK_THROWS_AS(hard_margin_svm({{0, 0}, {1, 1}}, {1, 1}), Error);
    CHECK_THROWS_AS(hard_margin_svm({{0, 0}, {1, 0}}, {1, 0}), Error);
}

TEST_CASE("compression set of the three-point example needs all n+1 points") {
    std::vector<int> set = svm_compression_set({{0, 0}, {2, 0}, {0, 2}}, {-1, 1, 1});
    CHECK(set == std::vector<int>{0, 1, 2});
}

TEST_CASE("compression set ignores a distant extra point") {
    std::vector<int> base = svm_compression_set({{0, 0}, {2, 0}, {0, 2}}, {-1, 1, 1});
    std::vector<int> with_far =
        svm_compression_set({{0, 0}, {2, 0}, {0, 2}, {5, 5}}, {-1, 1, 1, 1});
    CHECK(base == with_far);
}

TEST_CASE("compression set size is at most n+1 on random instances") {
    Rng rng(7004);
    for (int round = 0; round < 40; ++round) {
        int dim = round % 2 == 0 ? 2 : 3;
        Instance inst = random_separable(rng, dim, 10);
        std::vector<int> set = svm_compression_set(inst.points, inst.labels);
        CHECK(int(set.size()) <= dim + 1);
        // determining property: the subset reproduces the full hyperplane
        Points pts;
        std::vector<Label> labels;
        for (int i : set) {
            pts.push_back(inst.points[std::size_t(i)]);
            labels.push_back(inst.labels[std::size_t(i)]);
        }
        SvmSolution full = hard_margin_svm(inst.points, inst.labels);
        SvmSolution sub = hard_margin_svm(pts, labels);
        CHECK(sub.margin == doctest::Approx(full.margin).epsilon(1e-5));
    }
}
