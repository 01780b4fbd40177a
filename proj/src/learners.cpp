#include "hellylab/learners.hpp"

#include <algorithm>

#include "hellylab/rng.hpp"

namespace hellylab {

int erm(const ConceptClass& cls, const LabeledSample& sample) {
    cls.check_sample(sample);
    for (int h = 0; h < cls.size(); ++h)
        if (cls.consistent(h, sample)) return h;
    fail(errc::unrealizable, "no hypothesis is consistent with the sample");
}

MajorityLabel majority_label(const ConceptClass& cls,
                             const HypothesisMultiset& multiset, int point) {
    require(!multiset.empty(), errc::validation, "majority of an empty multiset");
    require(point >= 0 && point < cls.domain_size(), errc::validation,
            "point index out of range");
    int positives = 0;
    for (int h : multiset.entries) {
        require(h >= 0 && h < cls.size(), errc::validation,
                "hypothesis index out of range");
        if (cls.predict(h, point) == 1) ++positives;
    }
    const int total = multiset.size();
    if (2 * positives > total) return MajorityLabel::positive;
    if (2 * (total - positives) > total) return MajorityLabel::negative;
    return MajorityLabel::abstain;
}

std::vector<int> agreement_region(const ConceptClass& cls,
                                  const HypothesisMultiset& multiset, int l) {
    require(l >= 2, errc::validation, "agreement region requires l >= 2");
    require(!multiset.empty(), errc::validation, "empty multiset");
    std::vector<int> region;
    const int total = multiset.size();
    for (int x = 0; x < cls.domain_size(); ++x) {
        MajorityLabel maj = majority_label(cls, multiset, x);
        if (maj == MajorityLabel::abstain) continue;
        int disagree = 0;
        for (int h : multiset.entries)
            if (cls.predict(h, x) != Label(maj)) ++disagree;
        // strict threshold: disagree < |H'| / l
        if (disagree * l < total) region.push_back(x);
    }
    return region;
}

std::optional<int> try_project(const ConceptClass& cls,
                               const HypothesisMultiset& multiset, int k) {
    std::vector<int> region = agreement_region(cls, multiset, k);
    std::vector<Label> want(std::size_t(region.size()));
    for (std::size_t i = 0; i < region.size(); ++i)
        want[i] = Label(majority_label(cls, multiset, region[i]));
    for (int h = 0; h < cls.size(); ++h) {
        bool ok = true;
        for (std::size_t i = 0; i < region.size(); ++i) {
            if (cls.predict(h, region[i]) != want[i]) {
                ok = false;
                break;
            }
        }
        if (ok) return h;
    }
    return std::nullopt;
}

int project(const ConceptClass& cls, const HypothesisMultiset& multiset, int k) {
    auto h = try_project(cls, multiset, k);
    if (!h)
        fail(errc::no_projection,
             "no hypothesis realizes the majority on the agreement region; "
             "k is below the class's projection number");
    return *h;
}

namespace {

LabeledSample take_prefix(const LabeledSample& s, int count) {
    return LabeledSample(std::vector<LabeledEntry>(
        s.entries.begin(), s.entries.begin() + count));
}

LabeledSample drop_prefix(const LabeledSample& s, int count) {
    return LabeledSample(std::vector<LabeledEntry>(
        s.entries.begin() + count, s.entries.end()));
}

}  // namespace

int algorithm_a(const ConceptClass& cls, const LabeledSample& s,
                const LabeledSample& t, int k_p, std::uint64_t seed) {
    require(k_p >= 2, errc::validation, "algorithm A requires k_p >= 2");
    if (s.size() < 4) return erm(cls, concat(s, t));

    const int half = (s.size() + 1) / 2;  // ceil(|S|/2)
    const int quarter = s.size() / 4;     // floor(|S|/4)
    LabeledSample s0 = take_prefix(s, half);
    LabeledSample rest = drop_prefix(s, half);

    HypothesisMultiset votes;
    votes.entries.reserve(std::size_t(k_p + 1));
    for (int i = 1; i <= k_p + 1; ++i) {
        // Uniform subsample of S \ S0 without replacement.
        Rng rng(derive_seed(seed, std::uint64_t(2 * i)));
        std::vector<LabeledEntry> pool = rest.entries;
        rng.partial_shuffle(pool, std::size_t(quarter));
        pool.resize(std::size_t(quarter));
        LabeledSample si(std::move(pool));

        int h = algorithm_a(cls, s0, concat(t, si), k_p,
                            derive_seed(seed, std::uint64_t(2 * i + 1)));
        votes.entries.push_back(h);
    }
    return project(cls, votes, k_p);
}

int algorithm_a_erm(const ConceptClass& cls, const LabeledSample& s, int k_p) {
    require(k_p >= 2, errc::validation, "algorithm A_ERM requires k_p >= 2");
    if (s.size() < k_p + 1) return erm(cls, s);

    // Contiguous split: k_p blocks of size floor(|S|/(k_p+1)), the last block
    // takes the remainder.
    const int block = s.size() / (k_p + 1);
    std::vector<std::pair<int, int>> ranges;  // [begin, end)
    for (int i = 0; i < k_p; ++i) ranges.emplace_back(i * block, (i + 1) * block);
    ranges.emplace_back(k_p * block, s.size());

    HypothesisMultiset votes;
    votes.entries.reserve(std::size_t(k_p + 1));
    for (int i = 0; i <= k_p; ++i) {
        LabeledSample rest;
        for (int j = 0; j <= k_p; ++j) {
            if (j == i) continue;
            rest.entries.insert(rest.entries.end(),
                                s.entries.begin() + ranges[std::size_t(j)].first,
                                s.entries.begin() + ranges[std::size_t(j)].second);
        }
        votes.entries.push_back(algorithm_a_erm(cls, rest, k_p));
    }
    return project(cls, votes, k_p);
}

}  // namespace hellylab
