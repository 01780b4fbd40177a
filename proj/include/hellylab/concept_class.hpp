#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hellylab/error.hpp"

namespace hellylab {

// Labels are exactly -1 and +1 everywhere; abstention is a separate type on
// the learner side.
using Label = signed char;

struct DomainPoint {
    std::string id;
    std::vector<double> coords;  // empty unless the class is geometric
};

struct LabeledEntry {
    int point = 0;
    Label label = 0;
    bool operator==(const LabeledEntry&) const = default;
};

// A sample is an ordered sequence; duplicates are allowed.
struct LabeledSample {
    std::vector<LabeledEntry> entries;

    LabeledSample() = default;
    explicit LabeledSample(std::vector<LabeledEntry> e) : entries(std::move(e)) {}

    int size() const { return int(entries.size()); }
    bool empty() const { return entries.empty(); }
    const LabeledEntry& operator[](int i) const { return entries[std::size_t(i)]; }
    LabeledEntry& operator[](int i) { return entries[std::size_t(i)]; }
    void push_back(LabeledEntry e) { entries.push_back(e); }
    auto begin() const { return entries.begin(); }
    auto end() const { return entries.end(); }
    bool operator==(const LabeledSample&) const = default;
};

LabeledSample concat(const LabeledSample& a, const LabeledSample& b);

// Finite concept class over a finite domain, stored densely as a
// |H| x |X| prediction matrix. Immutable after construction.
class ConceptClass {
public:
    ConceptClass(std::vector<DomainPoint> domain,
                 std::vector<std::vector<Label>> rows);

    int domain_size() const { return int(domain_.size()); }
    int size() const { return int(rows_.size()); }

    Label predict(int hypothesis, int point) const {
        return rows_[std::size_t(hypothesis)][std::size_t(point)];
    }
    const std::vector<Label>& row(int hypothesis) const {
        return rows_[std::size_t(hypothesis)];
    }
    const DomainPoint& point(int i) const { return domain_[std::size_t(i)]; }
    const std::vector<DomainPoint>& domain() const { return domain_; }
    const std::vector<std::vector<Label>>& rows() const { return rows_; }

    bool consistent(int hypothesis, const LabeledSample& sample) const;

    // Throws errc::validation on an out-of-range index or a label outside
    // {-1,+1}.
    void check_sample(const LabeledSample& sample) const;

private:
    std::vector<DomainPoint> domain_;
    std::vector<std::vector<Label>> rows_;
};

// H[S]: indices of hypotheses agreeing with every entry of the sample.
std::vector<int> consistent_subclass(const ConceptClass& cls,
                                     const LabeledSample& sample);

bool is_realizable(const ConceptClass& cls, const LabeledSample& sample);

// The |S| one-flip neighbors of a non-empty sample, in entry order.
std::vector<LabeledSample> neighbors(const LabeledSample& sample);

// ---- generators ------------------------------------------------------

ConceptClass make_singletons(int n, bool augment_all_negative);

// Thresholds h_t(x) = +1 iff x >= t, one per grid value. Grid must be
// strictly increasing.
ConceptClass make_thresholds(const std::vector<double>& grid,
                             bool augment_all_negative);

ConceptClass make_intervals(const std::vector<double>& grid, bool include_empty);

// The lower-bound class: domain {(i,j) : i in [d-1, kw+d-2], j in [1,i]},
// hypotheses h_{i,J} negative exactly on group i outside J, |J| = d-1.
// For d = 1 this degenerates to singletons over kw points.
ConceptClass make_hard_class(int d, int kw);

using SeparabilityOracle = std::function<bool(
    const std::vector<std::vector<double>>&, const std::vector<Label>&)>;

// All labelings of the given points realizable by a halfspace with closed
// positive side. The oracle decides strict separability; the default is
// svm::separable.
ConceptClass make_halfspace_dichotomies(
    const std::vector<std::vector<double>>& points,
    const SeparabilityOracle& oracle);

ConceptClass make_random_class(int n_points, int n_hypotheses,
                               std::uint64_t seed);

// Smallest superclass whose positive sets are closed under intersections.
// Idempotent.
ConceptClass intersection_closure(const ConceptClass& cls);

}  // namespace hellylab
