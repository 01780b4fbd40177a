#include "hellylab/concept_class.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hellylab/rng.hpp"

namespace hellylab {

LabeledSample concat(const LabeledSample& a, const LabeledSample& b) {
    LabeledSample out = a;
    out.entries.insert(out.entries.end(), b.entries.begin(), b.entries.end());
    return out;
}

ConceptClass::ConceptClass(std::vector<DomainPoint> domain,
                           std::vector<std::vector<Label>> rows)
    : domain_(std::move(domain)), rows_(std::move(rows)) {
    require(!domain_.empty(), errc::validation, "domain must be non-empty");
    require(!rows_.empty(), errc::validation, "class must contain a hypothesis");

    std::set<std::string> ids;
    std::size_t arity = domain_[0].coords.size();
    bool has_coords = arity > 0;
    for (const auto& p : domain_) {
        require(ids.insert(p.id).second, errc::validation,
                "duplicate domain point id: " + p.id);
        require((p.coords.size() > 0) == has_coords && p.coords.size() == (has_coords ? arity : 0),
                errc::validation, "inconsistent coordinate arity across domain points");
    }

    std::set<std::vector<Label>> seen;
    for (const auto& r : rows_) {
        require(r.size() == domain_.size(), errc::validation,
                "hypothesis row length must equal domain size");
        for (Label y : r)
            require(y == 1 || y == -1, errc::validation,
                    "labels must be -1 or +1");
        require(seen.insert(r).second, errc::validation,
                "duplicate hypothesis rows are not allowed");
    }
}

bool ConceptClass::consistent(int hypothesis, const LabeledSample& sample) const {
    for (const auto& e : sample)
        if (predict(hypothesis, e.point) != e.label) return false;
    return true;
}

void ConceptClass::check_sample(const LabeledSample& sample) const {
    for (const auto& e : sample) {
        require(e.point >= 0 && e.point < domain_size(), errc::validation,
                "sample point index out of range");
        require(e.label == 1 || e.label == -1, errc::validation,
                "sample labels must be -1 or +1");
    }
}

std::vector<int> consistent_subclass(const ConceptClass& cls,
                                     const LabeledSample& sample) {
    cls.check_sample(sample);
    std::vector<int> out;
    for (int h = 0; h < cls.size(); ++h)
        if (cls.consistent(h, sample)) out.push_back(h);
    return out;
}

bool is_realizable(const ConceptClass& cls, const LabeledSample& sample) {
    cls.check_sample(sample);
    for (int h = 0; h < cls.size(); ++h)
        if (cls.consistent(h, sample)) return true;
    return false;
}

std::vector<LabeledSample> neighbors(const LabeledSample& sample) {
    require(!sample.empty(), errc::validation,
            "neighbors of an empty sample are undefined");
    std::vector<LabeledSample> out;
    out.reserve(std::size_t(sample.size()));
    for (int i = 0; i < sample.size(); ++i) {
        LabeledSample flipped = sample;
        flipped[i].label = Label(-flipped[i].label);
        out.push_back(std::move(flipped));
    }
    return out;
}

// ---- generators ------------------------------------------------------

namespace {

std::vector<DomainPoint> indexed_points(int n, const std::string& prefix) {
    std::vector<DomainPoint> pts;
    pts.reserve(std::size_t(n));
    for (int i = 1; i <= n; ++i) pts.push_back({prefix + std::to_string(i), {}});
    return pts;
}

void check_grid(const std::vector<double>& grid) {
    require(!grid.empty(), errc::validation, "grid must be non-empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        require(grid[i] > grid[i - 1], errc::validation,
                "grid values must be strictly increasing");
}

}  // namespace

ConceptClass make_singletons(int n, bool augment_all_negative) {
    require(n >= 1, errc::validation, "singletons: n must be >= 1");
    std::vector<std::vector<Label>> rows;
    for (int i = 0; i < n; ++i) {
        std::vector<Label> row(std::size_t(n), Label(-1));
        row[std::size_t(i)] = 1;
        rows.push_back(std::move(row));
    }
    if (augment_all_negative)
        rows.emplace_back(std::size_t(n), Label(-1));
    return ConceptClass(indexed_points(n, "x"), std::move(rows));
}

ConceptClass make_thresholds(const std::vector<double>& grid,
                             bool augment_all_negative) {
    check_grid(grid);
    const int n = int(grid.size());
    std::vector<DomainPoint> pts;
    for (int i = 0; i < n; ++i)
        pts.push_back({"x" + std::to_string(i + 1), {grid[std::size_t(i)]}});
    std::vector<std::vector<Label>> rows;
    for (int t = 0; t < n; ++t) {
        std::vector<Label> row(std::size_t(n), Label(0));
        for (int x = 0; x < n; ++x) row[std::size_t(x)] = Label(x >= t ? 1 : -1);
        rows.push_back(std::move(row));
    }
    if (augment_all_negative)
        rows.emplace_back(std::size_t(n), Label(-1));
    return ConceptClass(std::move(pts), std::move(rows));
}

ConceptClass make_intervals(const std::vector<double>& grid, bool include_empty) {
    check_grid(grid);
    const int n = int(grid.size());
    std::vector<DomainPoint> pts;
    for (int i = 0; i < n; ++i)
        pts.push_back({"x" + std::to_string(i + 1), {grid[std::size_t(i)]}});
    std::vector<std::vector<Label>> rows;
    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
            std::vector<Label> row(std::size_t(n), Label(0));
            for (int x = 0; x < n; ++x)
                row[std::size_t(x)] = Label(x >= a && x <= b ? 1 : -1);
            rows.push_back(std::move(row));
        }
    }
    if (include_empty)
        rows.emplace_back(std::size_t(n), Label(-1));
    return ConceptClass(std::move(pts), std::move(rows));
}

ConceptClass make_hard_class(int d, int kw) {
    require(d >= 1, errc::validation, "hard class: d must be >= 1");
    require(kw >= 2, errc::validation, "hard class: kw must be >= 2");
    if (d == 1) return make_singletons(kw, false);

    // Points (i,j), grouped by first coordinate, in (i,j) order.
    struct GroupPoint {
        int i, j;
    };
    std::vector<GroupPoint> coords;
    std::vector<DomainPoint> pts;
    for (int i = d - 1; i <= kw + d - 2; ++i) {
        for (int j = 1; j <= i; ++j) {
            coords.push_back({i, j});
            pts.push_back({"p" + std::to_string(i) + "_" + std::to_string(j), {}});
        }
    }

    std::vector<std::vector<Label>> rows;
    std::vector<int> combo(std::size_t(d - 1), 0);
    for (int i = d - 1; i <= kw + d - 2; ++i) {
        // J ranges over (d-1)-subsets of {1..i} in lexicographic order.
        for (int t = 0; t < d - 1; ++t) combo[std::size_t(t)] = t + 1;
        while (true) {
            std::vector<Label> row(pts.size(), Label(1));
            for (std::size_t x = 0; x < coords.size(); ++x) {
                if (coords[x].i != i) continue;
                bool in_j = std::find(combo.begin(), combo.end(), coords[x].j) != combo.end();
                if (!in_j) row[x] = -1;
            }
            rows.push_back(std::move(row));
            // next combination
            int t = d - 2;
            while (t >= 0 && combo[std::size_t(t)] == i - (d - 2 - t)) --t;
            if (t < 0) break;
            ++combo[std::size_t(t)];
            for (int u = t + 1; u < d - 1; ++u)
                combo[std::size_t(u)] = combo[std::size_t(u - 1)] + 1;
        }
    }
    return ConceptClass(std::move(pts), std::move(rows));
}

ConceptClass make_halfspace_dichotomies(
    const std::vector<std::vector<double>>& points,
    const SeparabilityOracle& oracle) {
    require(!points.empty(), errc::validation, "dichotomies: no points given");
    const std::size_t arity = points[0].size();
    require(arity >= 1, errc::validation, "dichotomies: points need coordinates");
    std::set<std::vector<double>> distinct;
    for (const auto& p : points) {
        require(p.size() == arity, errc::validation,
                "dichotomies: inconsistent point arity");
        require(distinct.insert(p).second, errc::validation,
                "dichotomies: duplicate coordinate points");
    }
    const int n = int(points.size());
    require(n <= 24, errc::validation, "dichotomies: too many points to enumerate");

    std::vector<DomainPoint> pts;
    for (int i = 0; i < n; ++i)
        pts.push_back({"p" + std::to_string(i + 1), points[std::size_t(i)]});

    std::vector<std::vector<Label>> rows;
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << n); ++mask) {
        std::vector<Label> labels(std::size_t(n), Label(0));
        for (int i = 0; i < n; ++i)
            labels[std::size_t(i)] = Label((mask >> i) & 1 ? 1 : -1);
        if (oracle(points, labels)) rows.push_back(labels);
    }
    return ConceptClass(std::move(pts), std::move(rows));
}

ConceptClass make_random_class(int n_points, int n_hypotheses, std::uint64_t seed) {
    require(n_points >= 1 && n_points <= 62, errc::validation,
            "random class: point count out of range");
    require(n_hypotheses >= 1, errc::validation, "random class: need hypotheses");
    double capacity = std::pow(2.0, n_points);
    require(double(n_hypotheses) <= capacity, errc::validation,
            "random class: more hypotheses than distinct labelings");

    Rng rng(seed);
    std::set<std::vector<Label>> seen;
    std::vector<std::vector<Label>> rows;
    while (int(rows.size()) < n_hypotheses) {
        std::vector<Label> row(std::size_t(n_points), Label(0));
        for (auto& y : row) y = Label(rng.next_u64() & 1 ? 1 : -1);
        if (seen.insert(row).second) rows.push_back(std::move(row));
    }
    return ConceptClass(indexed_points(n_points, "x"), std::move(rows));
}

ConceptClass intersection_closure(const ConceptClass& cls) {
    const int n = cls.domain_size();
    require(n <= 62, errc::validation, "intersection closure: domain too large");

    auto to_mask = [n](const std::vector<Label>& row) {
        std::uint64_t m = 0;
        for (int x = 0; x < n; ++x)
            if (row[std::size_t(x)] == 1) m |= std::uint64_t(1) << x;
        return m;
    };
    std::set<std::uint64_t> sets;
    for (int h = 0; h < cls.size(); ++h) sets.insert(to_mask(cls.row(h)));

    // Saturate under pairwise intersection; finite, so this terminates.
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::uint64_t> current(sets.begin(), sets.end());
        for (std::size_t a = 0; a < current.size(); ++a)
            for (std::size_t b = a + 1; b < current.size(); ++b)
                if (sets.insert(current[a] & current[b]).second) grew = true;
    }

    std::vector<std::vector<Label>> rows;
    for (std::uint64_t m : sets) {
        std::vector<Label> row(std::size_t(n), Label(0));
        for (int x = 0; x < n; ++x)
            row[std::size_t(x)] = Label((m >> x) & 1 ? 1 : -1);
        rows.push_back(std::move(row));
    }
    return ConceptClass(cls.domain(), std::move(rows));
}

}  // namespace hellylab
