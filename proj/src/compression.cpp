#include "hellylab/compression.hpp"

#include <algorithm>
#include <bit>

namespace hellylab {

namespace {

// VC dimension by plain row-scan subset search. The compression hosts may
// exceed the 64-hypothesis bitmask width of the parameters module, so the
// declared scheme size cannot reuse that path.
int host_vc_dimension(const ConceptClass& cls) {
    const int n = cls.domain_size();
    require(n <= 24, errc::validation, "closure scheme: domain too large");
    auto realizable = [&](const std::vector<int>& pts, std::uint32_t labels) {
        for (int h = 0; h < cls.size(); ++h) {
            bool ok = true;
            for (std::size_t i = 0; i < pts.size() && ok; ++i) {
                Label want = Label((labels >> i) & 1 ? 1 : -1);
                if (cls.predict(h, pts[i]) != want) ok = false;
            }
            if (ok) return true;
        }
        return false;
    };
    int best = 0;
    for (int k = 1; k <= n; ++k) {
        std::vector<int> pts(std::size_t(k), 0);
        for (int i = 0; i < k; ++i) pts[std::size_t(i)] = i;
        bool found = false;
        while (!found) {
            bool shattered = true;
            for (std::uint32_t labels = 0;
                 labels < (std::uint32_t(1) << k) && shattered; ++labels)
                shattered = realizable(pts, labels);
            if (shattered) {
                found = true;
                break;
            }
            int t = k - 1;
            while (t >= 0 && pts[std::size_t(t)] == n - k + t) --t;
            if (t < 0) break;
            ++pts[std::size_t(t)];
            for (int u = t + 1; u < k; ++u)
                pts[std::size_t(u)] = pts[std::size_t(u - 1)] + 1;
        }
        if (!found) break;
        best = k;
    }
    return best;
}

}  // namespace

double generalization_bound(int l, int m, double delta) {
    require(l >= 0, errc::validation, "bound: size must be >= 0");
    require(delta > 0 && delta < 1, errc::validation, "bound: delta must be in (0,1)");
    require(m > 2 * l, errc::validation, "bound: requires m > 2l");
    return 2.0 / double(m - 2 * l) * (double(l) * std::log(4.0) + std::log(1.0 / delta));
}

BlockFamily block_family(int m, int l) {
    require(l >= 1, errc::validation, "block family: l must be >= 1");
    require(m >= 2 * l, errc::validation, "block family: requires m >= 2l");

    BlockFamily out;
    out.m = m;
    out.l = l;
    out.t_m = l * (m / (2 * l));

    // contiguous partition: the first (m mod 2l) blocks get the ceil size
    const int blocks = 2 * l;
    const int small = m / blocks;
    const int tall = m % blocks;
    int next = 0;
    for (int b = 0; b < blocks; ++b) {
        int len = small + (b < tall ? 1 : 0);
        std::vector<int> blk;
        for (int i = 0; i < len; ++i) blk.push_back(next++);
        out.blocks.push_back(std::move(blk));
    }

    // all unions of l blocks
    std::vector<int> idx(std::size_t(l), 0);
    for (int i = 0; i < l; ++i) idx[std::size_t(i)] = i;
    while (true) {
        std::vector<int> member;
        for (int b : idx)
            member.insert(member.end(), out.blocks[std::size_t(b)].begin(),
                          out.blocks[std::size_t(b)].end());
        std::sort(member.begin(), member.end());
        out.family.push_back(std::move(member));
        int t = l - 1;
        while (t >= 0 && idx[std::size_t(t)] == blocks - l + t) --t;
        if (t < 0) break;
        ++idx[std::size_t(t)];
        for (int u = t + 1; u < l; ++u) idx[std::size_t(u)] = idx[std::size_t(u - 1)] + 1;
    }
    return out;
}

std::vector<LabeledPoint<int>> as_points(const LabeledSample& sample) {
    std::vector<LabeledPoint<int>> out;
    out.reserve(std::size_t(sample.size()));
    for (const auto& e : sample) out.push_back({e.point, e.label});
    return out;
}

FiniteScheme singleton_scheme(const ConceptClass& host) {
    const int n = host.domain_size();
    // the host must provide the singleton at every domain point
    std::vector<int> singleton_at(std::size_t(n), -1);
    for (int h = 0; h < host.size(); ++h) {
        int positives = 0, where = -1;
        for (int x = 0; x < n; ++x) {
            if (host.predict(h, x) == 1) {
                ++positives;
                where = x;
            }
        }
        require(positives <= 1, errc::validation,
                "singleton scheme: host is not a singleton class");
        if (positives == 1 && singleton_at[std::size_t(where)] < 0)
            singleton_at[std::size_t(where)] = h;
    }
    for (int x = 0; x < n; ++x)
        require(singleton_at[std::size_t(x)] >= 0, errc::validation,
                "singleton scheme: missing singleton hypothesis");

    using Entry = LabeledPoint<int>;
    FiniteScheme scheme;
    scheme.size = 1;
    scheme.kappa = [](const std::vector<Entry>& sample) {
        std::vector<Entry> out;
        if (sample.empty()) return out;
        for (const auto& e : sample) {
            if (e.label == 1) {
                out.push_back(e);
                return out;
            }
        }
        const Entry* best = &sample[0];
        for (const auto& e : sample)
            if (e.point > best->point) best = &e;
        out.push_back(*best);
        return out;
    };
    auto reconstruct = [singleton_at, n](const std::vector<Entry>& compressed) -> int {
        require(!compressed.empty(), errc::validation,
                "singleton scheme: cannot reconstruct from an empty set");
        const Entry& e = compressed.front();
        if (e.label == 1) return singleton_at[std::size_t(e.point)];
        require(e.point + 1 < n, errc::unrepresentable,
                "singleton scheme: all-negative sample reaching the last "
                "domain point has no in-domain reconstruction");
        return singleton_at[std::size_t(e.point + 1)];
    };
    scheme.rho_index = reconstruct;
    scheme.rho = [rows = host.rows(), reconstruct](const std::vector<Entry>& compressed)
        -> std::function<Label(const int&)> {
        if (compressed.empty())
            return [](const int&) { return Label(-1); };
        std::vector<Label> row = rows[std::size_t(reconstruct(compressed))];
        return [row](const int& x) { return row[std::size_t(x)]; };
    };
    return scheme;
}

namespace {

std::uint64_t positive_mask(const ConceptClass& cls, int h) {
    std::uint64_t m = 0;
    for (int x = 0; x < cls.domain_size(); ++x)
        if (cls.predict(h, x) == 1) m |= std::uint64_t(1) << x;
    return m;
}

}  // namespace

FiniteScheme closure_scheme(const ConceptClass& host) {
    const int n = host.domain_size();
    require(n <= 62, errc::validation, "closure scheme: domain too large");

    std::vector<std::uint64_t> sets;
    bool has_empty = false;
    for (int h = 0; h < host.size(); ++h) {
        sets.push_back(positive_mask(host, h));
        if (sets.back() == 0) has_empty = true;
    }
    for (std::size_t a = 0; a < sets.size(); ++a)
        for (std::size_t b = a + 1; b < sets.size(); ++b)
            require(std::find(sets.begin(), sets.end(), sets[a] & sets[b]) != sets.end(),
                    errc::validation, "closure scheme: host is not intersection-closed");
    require(has_empty, errc::validation,
            "closure scheme: host lacks an all-negative hypothesis");

    // smallest positive-set superset; unique minimum by closedness
    auto closure_index = [sets](std::uint64_t points) -> int {
        int best = -1;
        for (std::size_t h = 0; h < sets.size(); ++h) {
            if ((points & ~sets[h]) != 0) continue;
            if (best < 0 || std::popcount(sets[h]) < std::popcount(sets[std::size_t(best)]))
                best = int(h);
        }
        require(best >= 0, errc::validation,
                "closure scheme: positives are not covered by any hypothesis");
        return best;
    };

    using Entry = LabeledPoint<int>;
    FiniteScheme scheme;
    scheme.size = host_vc_dimension(host);
    scheme.kappa = [sets, closure_index](const std::vector<Entry>& sample) {
        // first occurrence per positive point, in sample order; together with
        // the greedy pass below this selects the lexicographically-first
        // minimal generating subset, which is what keeps the scheme stable
        // when positives repeat
        std::vector<Entry> positives;
        std::uint64_t seen = 0;
        for (const auto& e : sample) {
            if (e.label != 1) continue;
            if ((seen >> e.point) & 1) continue;
            seen |= std::uint64_t(1) << e.point;
            positives.push_back(e);
        }
        auto closure_of = [&](const std::vector<Entry>& kept,
                              const std::vector<bool>& removed, int skip) {
            std::uint64_t pts = 0;
            for (std::size_t i = 0; i < kept.size(); ++i)
                if (!removed[i] && int(i) != skip)
                    pts |= std::uint64_t(1) << kept[i].point;
            return pts == 0 ? std::uint64_t(0) : sets[std::size_t(closure_index(pts))];
        };
        std::vector<bool> removed(positives.size(), false);
        const std::uint64_t full = closure_of(positives, removed, -1);
        // greedy removal in ascending occurrence order
        for (std::size_t i = 0; i < positives.size(); ++i)
            if (closure_of(positives, removed, int(i)) == full) removed[i] = true;
        std::vector<Entry> out;
        for (std::size_t i = 0; i < positives.size(); ++i)
            if (!removed[i]) out.push_back(positives[i]);
        return out;
    };
    auto reconstruct = [closure_index](const std::vector<Entry>& compressed) -> int {
        std::uint64_t pts = 0;
        for (const auto& e : compressed)
            if (e.label == 1) pts |= std::uint64_t(1) << e.point;
        return closure_index(pts);
    };
    scheme.rho_index = reconstruct;
    scheme.rho = [rows = host.rows(), reconstruct](const std::vector<Entry>& compressed)
        -> std::function<Label(const int&)> {
        std::vector<Label> row = rows[std::size_t(reconstruct(compressed))];
        return [row](const int& x) { return row[std::size_t(x)]; };
    };
    return scheme;
}

}  // namespace hellylab
