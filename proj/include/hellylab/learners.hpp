#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hellylab/concept_class.hpp"

namespace hellylab {

enum class MajorityLabel : signed char {
    negative = -1,
    abstain = 0,  // exact ties only
    positive = 1,
};

// Multiset of hypothesis indices; repeats carry multiplicity.
struct HypothesisMultiset {
    std::vector<int> entries;

    int size() const { return int(entries.size()); }
    bool empty() const { return entries.empty(); }
};

// Lowest-index hypothesis consistent with every entry.
// Throws errc::unrealizable when none exists.
int erm(const ConceptClass& cls, const LabeledSample& sample);

MajorityLabel majority_label(const ConceptClass& cls,
                             const HypothesisMultiset& multiset, int point);

// X_{H',l}: points where fewer than |H'|/l of the multiset disagree with the
// majority. Abstain points are excluded (their disagreement is >= |H'|/2).
std::vector<int> agreement_region(const ConceptClass& cls,
                                  const HypothesisMultiset& multiset, int l);

// Proj_H: lowest-index hypothesis agreeing with the majority on the whole
// agreement region at level k, or nullopt.
std::optional<int> try_project(const ConceptClass& cls,
                               const HypothesisMultiset& multiset, int k);

// Throwing variant: errc::no_projection when the candidate set is empty.
int project(const ConceptClass& cls, const HypothesisMultiset& multiset, int k);

// The recursive proper learner A(S;T). Reproducible for a fixed seed; the
// k_p+1 subsamples use path-derived child seeds.
int algorithm_a(const ConceptClass& cls, const LabeledSample& s,
                const LabeledSample& t, int k_p, std::uint64_t seed);

// The sample-consistent variant A_ERM(S); fully deterministic.
int algorithm_a_erm(const ConceptClass& cls, const LabeledSample& s, int k_p);

}  // namespace hellylab
