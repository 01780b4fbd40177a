#include "hellylab/parameters.hpp"

#include <algorithm>
#include <bit>

#include "hellylab/learners.hpp"
#include "hellylab/rng.hpp"

namespace hellylab {

namespace {

// Per-point hypothesis bitmasks; the whole exhaustive layer runs on these.
struct Masks {
    int n = 0;
    int h = 0;
    std::uint64_t all = 0;
    std::vector<std::uint64_t> pos, neg;

    std::uint64_t col(int x, Label y) const {
        return y == 1 ? pos[std::size_t(x)] : neg[std::size_t(x)];
    }
};

Masks build_masks(const ConceptClass& cls, const SearchCaps& caps) {
    require(caps.max_hypotheses >= 1 && caps.max_hypotheses <= 64,
            errc::validation, "hypothesis cap must lie in [1, 64]");
    require(cls.domain_size() <= caps.max_points, errc::validation,
            "domain size exceeds the search cap (" +
                std::to_string(caps.max_points) + ")");
    require(cls.size() <= caps.max_hypotheses, errc::validation,
            "class size exceeds the hypothesis cap (" +
                std::to_string(caps.max_hypotheses) + ")");

    Masks m;
    m.n = cls.domain_size();
    m.h = cls.size();
    m.all = m.h == 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << m.h) - 1);
    m.pos.assign(std::size_t(m.n), 0);
    m.neg.assign(std::size_t(m.n), 0);
    for (int hyp = 0; hyp < m.h; ++hyp) {
        for (int x = 0; x < m.n; ++x) {
            if (cls.predict(hyp, x) == 1)
                m.pos[std::size_t(x)] |= std::uint64_t(1) << hyp;
            else
                m.neg[std::size_t(x)] |= std::uint64_t(1) << hyp;
        }
    }
    return m;
}

// Rows are distinct, so the class realizes every labeling iff |H| = 2^|X|.
bool is_full_class(const ConceptClass& cls) {
    if (cls.domain_size() > 30) return false;
    return std::int64_t(cls.size()) ==
           (std::int64_t(1) << cls.domain_size());
}

bool shattered(const Masks& m, const std::vector<int>& pts, std::size_t idx,
               std::uint64_t alive) {
    if (alive == 0) return false;
    if (idx == pts.size()) return true;
    const int x = pts[idx];
    return shattered(m, pts, idx + 1, alive & m.pos[std::size_t(x)]) &&
           shattered(m, pts, idx + 1, alive & m.neg[std::size_t(x)]);
}

bool any_subset_shattered(const Masks& m, int k) {
    std::vector<int> pts(std::size_t(k), 0);
    // combinations of {0..n-1} of size k, lexicographic
    for (int i = 0; i < k; ++i) pts[std::size_t(i)] = i;
    while (true) {
        if (shattered(m, pts, 0, m.all)) return true;
        int t = k - 1;
        while (t >= 0 && pts[std::size_t(t)] == m.n - k + t) --t;
        if (t < 0) return false;
        ++pts[std::size_t(t)];
        for (int u = t + 1; u < k; ++u)
            pts[std::size_t(u)] = pts[std::size_t(u - 1)] + 1;
    }
}

// Shared DFS skeleton over distinct-point labeled sets in ascending point
// order. Every visited node is realizable and has every one-flip neighbor
// realizable; hollow stars appear exactly when the version space dies while
// all flip witnesses stay alive.
struct HollowSearch {
    const Masks* m = nullptr;
    int best = 0;
    std::vector<LabeledEntry> entries;
    std::vector<LabeledEntry> best_center;
    std::vector<int> best_realizers;
    std::vector<std::vector<std::uint64_t>> scratch;

    void run() {
        scratch.assign(std::size_t(m->n) + 1, {});
        for (auto& s : scratch) s.resize(std::size_t(m->n) + 1);
        entries.clear();
        dfs(-1, m->all, 0);
    }

    void record(int size, const std::vector<std::uint64_t>& witnesses) {
        if (size <= best) return;
        best = size;
        best_center = entries;  // includes the just-pushed entry
        best_realizers.clear();
        for (int i = 0; i < size; ++i)
            best_realizers.push_back(std::countr_zero(witnesses[std::size_t(i)]));
    }

    void dfs(int last, std::uint64_t v, int depth) {
        auto& w = scratch[std::size_t(depth)];
        for (int x = last + 1; x < m->n; ++x) {
            for (Label y : {Label(1), Label(-1)}) {
                const std::uint64_t keep = m->col(x, y);
                const std::uint64_t wnew = v & m->col(x, Label(-y));
                if (!wnew) continue;  // the new entry's flip must stay realizable
                auto& w2 = scratch[std::size_t(depth) + 1];
                bool alive = true;
                for (int i = 0; i < depth; ++i) {
                    w2[std::size_t(i)] = w[std::size_t(i)] & keep;
                    if (!w2[std::size_t(i)]) {
                        alive = false;
                        break;
                    }
                }
                if (!alive) continue;
                w2[std::size_t(depth)] = wnew;

                const std::uint64_t v2 = v & keep;
                entries.push_back({x, y});
                if (v2 == 0) {
                    record(depth + 1, w2);
                } else {
                    dfs(x, v2, depth + 1);
                }
                entries.pop_back();
            }
        }
    }
};

// Star variant of the same skeleton: only realizable nodes count, with an
// early exit once the cap is passed.
struct StarSearch {
    const Masks* m = nullptr;
    int cap = 0;
    int best = 0;
    bool exceeded = false;
    std::vector<std::vector<std::uint64_t>> scratch;

    void run() {
        scratch.assign(std::size_t(m->n) + 1, {});
        for (auto& s : scratch) s.resize(std::size_t(m->n) + 1);
        dfs(-1, m->all, 0);
    }

    void dfs(int last, std::uint64_t v, int depth) {
        if (depth > best) best = depth;
        if (best > cap) {
            exceeded = true;
            return;
        }
        auto& w = scratch[std::size_t(depth)];
        for (int x = last + 1; x < m->n && !exceeded; ++x) {
            for (Label y : {Label(1), Label(-1)}) {
                const std::uint64_t keep = m->col(x, y);
                const std::uint64_t v2 = v & keep;
                if (!v2) continue;  // stars are realizable throughout
                const std::uint64_t wnew = v & m->col(x, Label(-y));
                if (!wnew) continue;
                auto& w2 = scratch[std::size_t(depth) + 1];
                bool alive = true;
                for (int i = 0; i < depth; ++i) {
                    w2[std::size_t(i)] = w[std::size_t(i)] & keep;
                    if (!w2[std::size_t(i)]) {
                        alive = false;
                        break;
                    }
                }
                if (!alive) continue;
                w2[std::size_t(depth)] = wnew;
                dfs(x, v2, depth + 1);
                if (exceeded) return;
            }
        }
    }
};

// Minimal-unrealizable search, framed over removal spaces: r[i] is the
// version space of the set with entry i removed. A branch can only lead to
// an inclusion-minimal unrealizable superset while each r[i] still contains
// a hypothesis wrong at entry i. Leaves are re-verified from scratch.
struct MinimalUnrealizableSearch {
    const Masks* m = nullptr;
    std::vector<LabeledEntry> entries;
    std::vector<std::uint64_t> cols;
    std::vector<std::vector<std::uint64_t>> scratch;
    // visitor: called with each verified minimal unrealizable set; returns
    // false to stop the search.
    std::function<bool(const std::vector<LabeledEntry>&)> visit;

    void run() {
        scratch.assign(std::size_t(m->n) + 1, {});
        for (auto& s : scratch) s.resize(std::size_t(m->n) + 1);
        entries.clear();
        cols.clear();
        dfs(-1, m->all, 0);
    }

    bool verify_minimal() const {
        // every one-removal must be realizable, recomputed directly
        const std::size_t k = cols.size();
        for (std::size_t i = 0; i < k; ++i) {
            std::uint64_t v = m->all;
            for (std::size_t j = 0; j < k; ++j)
                if (j != i) v &= cols[j];
            if (v == 0) return false;
        }
        return true;
    }

    // returns false when the visitor asked to stop
    bool dfs(int last, std::uint64_t v, int depth) {
        auto& r = scratch[std::size_t(depth)];
        for (int x = last + 1; x < m->n; ++x) {
            for (Label y : {Label(1), Label(-1)}) {
                const std::uint64_t keep = m->col(x, y);
                // removal space of the new entry is the current version
                // space; it must hold a hypothesis wrong at (x,y)
                if ((v & ~keep) == 0) continue;
                auto& r2 = scratch[std::size_t(depth) + 1];
                bool alive = true;
                for (int i = 0; i < depth; ++i) {
                    r2[std::size_t(i)] = r[std::size_t(i)] & keep;
                    if ((r2[std::size_t(i)] & ~cols[std::size_t(i)]) == 0) {
                        alive = false;
                        break;
                    }
                }
                if (!alive) continue;
                r2[std::size_t(depth)] = v;

                const std::uint64_t v2 = v & keep;
                entries.push_back({x, y});
                cols.push_back(keep);
                bool keep_going = true;
                if (v2 == 0) {
                    if (verify_minimal()) keep_going = visit(entries);
                } else {
                    keep_going = dfs(x, v2, depth + 1);
                }
                entries.pop_back();
                cols.pop_back();
                if (!keep_going) return false;
            }
        }
        return true;
    }
};

void require_standing_assumption(const ConceptClass& cls) {
    require(cls.size() >= 3, errc::validation,
            "parameter operations assume at least 3 hypotheses");
}

// First point whose column is non-constant, if any: the contradictory pair
// {(x,+1),(x,-1)} there is a hollow star / minimal unrealizable set of size 2.
std::optional<int> contradictory_pair_point(const Masks& m) {
    for (int x = 0; x < m.n; ++x)
        if (m.pos[std::size_t(x)] && m.neg[std::size_t(x)]) return x;
    return std::nullopt;
}

}  // namespace

int vc_dimension(const ConceptClass& cls, const SearchCaps& caps) {
    Masks m = build_masks(cls, caps);
    int best = 0;
    for (int k = 1; k <= m.n; ++k) {
        if (k < 63 && (std::int64_t(1) << k) > std::int64_t(m.h)) break;
        if (!any_subset_shattered(m, k)) break;
        best = k;
    }
    return best;
}

StarResult star_number(const ConceptClass& cls, int cap, const SearchCaps& caps) {
    require(cap >= 0, errc::validation, "star cap must be non-negative");
    Masks m = build_masks(cls, caps);
    StarSearch search;
    search.m = &m;
    search.cap = cap;
    search.run();
    StarResult res;
    res.cap = cap;
    res.cap_exceeded = search.exceeded;
    res.value = search.exceeded ? cap : search.best;
    return res;
}

HollowStarResult hollow_star_number(const ConceptClass& cls,
                                    const SearchCaps& caps) {
    require_standing_assumption(cls);
    Masks m = build_masks(cls, caps);

    HollowStarResult res;
    if (is_full_class(cls)) {
        res.realizes_all_labelings = true;
        return res;
    }

    if (auto x = contradictory_pair_point(m)) {
        res.value = 2;
        HollowStarWitness wit;
        wit.center.push_back({*x, Label(1)});
        wit.center.push_back({*x, Label(-1)});
        wit.realizers = {std::countr_zero(m.neg[std::size_t(*x)]),
                         std::countr_zero(m.pos[std::size_t(*x)])};
        res.witness = std::move(wit);
    }

    HollowSearch search;
    search.m = &m;
    search.best = res.value;
    search.run();
    if (search.best > res.value) {
        res.value = search.best;
        HollowStarWitness wit;
        wit.center = LabeledSample(search.best_center);
        wit.realizers = search.best_realizers;
        res.witness = std::move(wit);
    }
    return res;
}

DualHellyResult dual_helly_number(const ConceptClass& cls,
                                  const SearchCaps& caps) {
    require_standing_assumption(cls);
    Masks m = build_masks(cls, caps);

    DualHellyResult res;
    if (is_full_class(cls)) {
        res.realizes_all_labelings = true;
        return res;
    }

    // size-1 minimal unrealizable sets: constant columns
    for (int x = 0; x < m.n && res.value == 0; ++x) {
        for (Label y : {Label(1), Label(-1)}) {
            if (m.col(x, y) == 0) {
                res.value = 1;
                res.witness = LabeledSample({{x, y}});
                break;
            }
        }
    }
    if (auto x = contradictory_pair_point(m); x && res.value < 2) {
        res.value = 2;
        res.witness = LabeledSample({{*x, Label(1)}, {*x, Label(-1)}});
    }

    MinimalUnrealizableSearch search;
    search.m = &m;
    int best = res.value;
    LabeledSample best_witness;
    search.visit = [&](const std::vector<LabeledEntry>& found) {
        if (int(found.size()) > best) {
            best = int(found.size());
            best_witness = LabeledSample(found);
        }
        return true;
    };
    search.run();
    if (best > res.value) {
        res.value = best;
        res.witness = best_witness;
    }
    return res;
}

std::vector<LabeledSample> enumerate_minimal_unrealizable(
    const ConceptClass& cls, const SearchCaps& caps, int limit) {
    require_standing_assumption(cls);
    Masks m = build_masks(cls, caps);
    std::vector<LabeledSample> out;
    if (is_full_class(cls)) return out;

    for (int x = 0; x < m.n; ++x)
        for (Label y : {Label(1), Label(-1)})
            if (m.col(x, y) == 0) out.push_back(LabeledSample({{x, y}}));
    for (int x = 0; x < m.n; ++x)
        if (m.pos[std::size_t(x)] && m.neg[std::size_t(x)])
            out.push_back(LabeledSample({{x, Label(1)}, {x, Label(-1)}}));

    MinimalUnrealizableSearch search;
    search.m = &m;
    search.visit = [&](const std::vector<LabeledEntry>& found) {
        out.push_back(LabeledSample(found));
        return int(out.size()) < limit;
    };
    search.run();
    return out;
}

namespace {

ProjectionVerdict projection_check_impl(const ConceptClass& cls, int k,
                                        int multiset_budget, std::uint64_t seed,
                                        const HollowStarResult& hollow) {
    require(k >= 2, errc::validation, "projection check requires k >= 2");
    require(multiset_budget >= 0, errc::validation, "budget must be >= 0");
    require_standing_assumption(cls);

    ProjectionVerdict verdict;

    // Deterministic witness: the realizers of a maximal hollow star refute
    // every k < k_o (the agreement region contains the hollow star and the
    // majority restricted to it is its unrealizable center).
    if (hollow.witness && hollow.value >= 3 && k < hollow.value) {
        HypothesisMultiset multiset{hollow.witness->realizers};
        ++verdict.multisets_tested;
        if (!try_project(cls, multiset, k)) {
            verdict.refuted = true;
            verdict.deterministic_witness = true;
            verdict.witness_multiset = multiset.entries;
            return verdict;
        }
    }

    Rng rng(seed);
    const std::uint64_t max_size = std::uint64_t(3) * std::uint64_t(cls.size());
    for (int t = 0; t < multiset_budget; ++t) {
        HypothesisMultiset multiset;
        const int size = int(1 + rng.next_below(max_size));
        multiset.entries.reserve(std::size_t(size));
        for (int i = 0; i < size; ++i)
            multiset.entries.push_back(int(rng.next_below(std::uint64_t(cls.size()))));
        ++verdict.multisets_tested;
        if (!try_project(cls, multiset, k)) {
            verdict.refuted = true;
            verdict.witness_multiset = multiset.entries;
            return verdict;
        }
    }
    return verdict;
}

}  // namespace

ProjectionVerdict projection_check(const ConceptClass& cls, int k,
                                   int multiset_budget, std::uint64_t seed,
                                   const SearchCaps& caps) {
    return projection_check_impl(cls, k, multiset_budget, seed,
                                 hollow_star_number(cls, caps));
}

ParameterReport compute_parameter_report(const ConceptClass& cls,
                                         const SearchCaps& caps, int star_cap,
                                         int multiset_budget,
                                         std::uint64_t seed) {
    ParameterReport report;
    report.vc = vc_dimension(cls, caps);
    report.star = star_number(cls, star_cap, caps);

    HollowStarResult hollow = hollow_star_number(cls, caps);
    DualHellyResult dual = dual_helly_number(cls, caps);
    report.hollow_star = hollow.value;
    report.dual_helly = dual.value;
    report.realizes_all_labelings = hollow.realizes_all_labelings;

    if (!report.realizes_all_labelings && dual.value >= 2) {
        report.projection.certified_k = dual.value;
        report.projection.budget = multiset_budget;
        ProjectionVerdict at_kw = projection_check_impl(
            cls, dual.value, multiset_budget, seed, hollow);
        if (at_kw.refuted) {
            // should be impossible on finite classes (Lemma 2.5); surface it
            report.projection.refuted_k = dual.value;
            report.projection.refuted_witness = at_kw.witness_multiset;
        } else if (hollow.value >= 3) {
            ProjectionVerdict below = projection_check_impl(
                cls, hollow.value - 1, multiset_budget, seed, hollow);
            if (below.refuted) {
                report.projection.refuted_k = hollow.value - 1;
                report.projection.refuted_witness = below.witness_multiset;
            }
        }
    }
    return report;
}

}  // namespace hellylab
