#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "hellylab/concept_class.hpp"

namespace hellylab {

template <class Point>
struct LabeledPoint {
    Point point;
    Label label = 0;
    bool operator==(const LabeledPoint&) const = default;
};

// A sample compression scheme: kappa maps a sample to a subsequence of
// length <= size, rho rebuilds a predictor from the compressed entries.
template <class Point>
struct Scheme {
    int size = 0;
    std::function<std::vector<LabeledPoint<Point>>(
        const std::vector<LabeledPoint<Point>>&)>
        kappa;
    std::function<std::function<Label(const Point&)>(
        const std::vector<LabeledPoint<Point>>&)>
        rho;
    // For proper schemes over a concept class: the hypothesis index rho
    // reconstructs to.
    std::function<int(const std::vector<LabeledPoint<Point>>&)> rho_index;
};

using FiniteScheme = Scheme<int>;

// Leftmost positions matching kappa's output as a subsequence of the sample,
// or nullopt when it is not one.
template <class Point>
std::optional<std::vector<int>> subsequence_positions(
    const std::vector<LabeledPoint<Point>>& needle,
    const std::vector<LabeledPoint<Point>>& haystack) {
    std::vector<int> pos;
    std::size_t i = 0;
    for (const auto& e : needle) {
        while (i < haystack.size() && !(haystack[i] == e)) ++i;
        if (i == haystack.size()) return std::nullopt;
        pos.push_back(int(i++));
    }
    return pos;
}

// rho(kappa(S)) recovers every training label and |kappa(S)| <= size.
template <class Point>
bool check_validity(const Scheme<Point>& scheme,
                    const std::vector<LabeledPoint<Point>>& sample) {
    auto compressed = scheme.kappa(sample);
    if (int(compressed.size()) > scheme.size) return false;
    if (!subsequence_positions(compressed, sample)) return false;
    auto predictor = scheme.rho(compressed);
    for (const auto& e : sample)
        if (predictor(e.point) != e.label) return false;
    return true;
}

// Removing any entry occurrence outside the compression set leaves kappa's
// output unchanged (sequence equality of the compressed entries).
template <class Point>
bool check_stability(const Scheme<Point>& scheme,
                     const std::vector<LabeledPoint<Point>>& sample) {
    auto compressed = scheme.kappa(sample);
    auto positions = subsequence_positions(compressed, sample);
    if (!positions) return false;
    std::vector<bool> used(sample.size(), false);
    for (int p : *positions) used[std::size_t(p)] = true;
    for (std::size_t j = 0; j < sample.size(); ++j) {
        if (used[j]) continue;
        std::vector<LabeledPoint<Point>> sub;
        sub.reserve(sample.size() - 1);
        for (std::size_t i = 0; i < sample.size(); ++i)
            if (i != j) sub.push_back(sample[i]);
        if (!(scheme.kappa(sub) == compressed)) return false;
    }
    return true;
}

// Theorem-style bound for stable schemes: 2/(m-2l) * (l ln4 + ln(1/delta)).
double generalization_bound(int l, int m, double delta);

// The index set-system used by the stable-compression argument: a contiguous
// partition of {0..m-1} into 2l blocks and all unions of l of them.
struct BlockFamily {
    int m = 0;
    int l = 0;
    int t_m = 0;
    std::vector<std::vector<int>> blocks;
    std::vector<std::vector<int>> family;  // sorted index sets
};

BlockFamily block_family(int m, int l);

// Size-1 stable scheme for singletons over an index-ordered domain.
// Reconstruction of an all-negative sample whose largest point is the last
// domain point raises errc::unrepresentable.
FiniteScheme singleton_scheme(const ConceptClass& host);

// Closure-algorithm scheme for an intersection-closed host that contains the
// empty-positive-set hypothesis. Declared size is the host's VC dimension.
FiniteScheme closure_scheme(const ConceptClass& host);

// Convenience: view a LabeledSample as the generic sample type.
std::vector<LabeledPoint<int>> as_points(const LabeledSample& sample);

}  // namespace hellylab
