#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hellylab/concept_class.hpp"

namespace hellylab {

// Exhaustive-search scope. Exceeding a cap is a clean validation error,
// never silent truncation.
struct SearchCaps {
    int max_points = 20;
    int max_hypotheses = 64;
};

struct StarResult {
    int value = 0;
    bool cap_exceeded = false;
    int cap = 0;
};

// A hollow star set together with one realizer per one-flip neighbor
// (realizers[i] is wrong on the center exactly at entry i).
struct HollowStarWitness {
    LabeledSample center;
    std::vector<int> realizers;
};

struct HollowStarResult {
    int value = 0;
    // Set when every labeling of the domain is realizable; the paper's
    // definitions presuppose unrealizable sets, so we report 0 with this flag.
    bool realizes_all_labelings = false;
    std::optional<HollowStarWitness> witness;
};

struct DualHellyResult {
    int value = 0;
    bool realizes_all_labelings = false;
    std::optional<LabeledSample> witness;  // a maximal minimal unrealizable set
};

struct ProjectionVerdict {
    bool refuted = false;
    std::vector<int> witness_multiset;  // hypothesis indices when refuted
    int multisets_tested = 0;
    bool deterministic_witness = false;  // refutation came from the hollow star
};

struct ProjectionStatus {
    int certified_k = 0;  // k at which certification-up-to-budget succeeded
    int budget = 0;
    std::optional<int> refuted_k;  // k_o - 1 when a refutation was exhibited
    std::vector<int> refuted_witness;
};

struct ParameterReport {
    int vc = 0;
    StarResult star;
    int hollow_star = 0;
    int dual_helly = 0;
    bool realizes_all_labelings = false;
    ProjectionStatus projection;
};

// Exact VC dimension by ascending-size subset search.
int vc_dimension(const ConceptClass& cls, const SearchCaps& caps = {});

// Exact star number if <= cap, otherwise a cap-exceeded marker.
StarResult star_number(const ConceptClass& cls, int cap = 12,
                       const SearchCaps& caps = {});

HollowStarResult hollow_star_number(const ConceptClass& cls,
                                    const SearchCaps& caps = {});

DualHellyResult dual_helly_number(const ConceptClass& cls,
                                  const SearchCaps& caps = {});

// Refute-or-certify Definition-2.6 style: the deterministic hollow-star
// witness first (it must refute every k < k_o when k_o >= 3), then
// `multiset_budget` seeded random multisets of sizes up to 3|H|.
ProjectionVerdict projection_check(const ConceptClass& cls, int k,
                                   int multiset_budget, std::uint64_t seed,
                                   const SearchCaps& caps = {});

ParameterReport compute_parameter_report(const ConceptClass& cls,
                                         const SearchCaps& caps = {},
                                         int star_cap = 12,
                                         int multiset_budget = 200,
                                         std::uint64_t seed = 0);

// All inclusion-minimal unrealizable labeled sets, up to `limit` of them.
// Test support for the Lemma-2.5 cross-checks; exhaustive when the returned
// count is below the limit.
std::vector<LabeledSample> enumerate_minimal_unrealizable(
    const ConceptClass& cls, const SearchCaps& caps = {}, int limit = 100000);

}  // namespace hellylab
