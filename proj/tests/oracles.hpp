#pragma once

// Independent brute-force oracles used only by tests. These deliberately
// avoid the pruned bitmask searches and the production SVM path: parameters
// are recomputed by plain enumeration over subsets and labelings, and the
// max-margin oracle enumerates primal active sets.

#include <cmath>
#include <optional>
#include <vector>

#include "hellylab/concept_class.hpp"
#include "hellylab/svm.hpp"

namespace oracle {

using hellylab::ConceptClass;
using hellylab::Label;
using hellylab::LabeledEntry;
using hellylab::LabeledSample;

inline bool realizable(const ConceptClass& cls, const LabeledSample& s) {
    for (int h = 0; h < cls.size(); ++h) {
        bool ok = true;
        for (const auto& e : s) {
            if (cls.predict(h, e.point) != e.label) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

// every labeling of every subset realizable
inline bool full_class(const ConceptClass& cls) {
    const int n = cls.domain_size();
    for (std::uint32_t labels = 0; labels < (std::uint32_t(1) << n); ++labels) {
        LabeledSample s;
        for (int x = 0; x < n; ++x)
            s.push_back({x, Label((labels >> x) & 1 ? 1 : -1)});
        if (!realizable(cls, s)) return false;
    }
    return true;
}

template <class Fn>
void for_each_labeled_subset(int n, Fn&& fn) {
    for (std::uint32_t subset = 1; subset < (std::uint32_t(1) << n); ++subset) {
        std::vector<int> pts;
        for (int x = 0; x < n; ++x)
            if ((subset >> x) & 1) pts.push_back(x);
        const int k = int(pts.size());
        for (std::uint32_t labels = 0; labels < (std::uint32_t(1) << k); ++labels) {
            LabeledSample s;
            for (int i = 0; i < k; ++i)
                s.push_back({pts[std::size_t(i)],
                             Label((labels >> i) & 1 ? 1 : -1)});
            fn(s);
        }
    }
}

inline int naive_vc(const ConceptClass& cls) {
    int best = 0;
    for (std::uint32_t subset = 1;
         subset < (std::uint32_t(1) << cls.domain_size()); ++subset) {
        std::vector<int> pts;
        for (int x = 0; x < cls.domain_size(); ++x)
            if ((subset >> x) & 1) pts.push_back(x);
        const int k = int(pts.size());
        if (k <= best) continue;
        bool shattered = true;
        for (std::uint32_t labels = 0;
             labels < (std::uint32_t(1) << k) && shattered; ++labels) {
            LabeledSample s;
            for (int i = 0; i < k; ++i)
                s.push_back({pts[std::size_t(i)],
                             Label((labels >> i) & 1 ? 1 : -1)});
            shattered = realizable(cls, s);
        }
        if (shattered) best = k;
    }
    return best;
}

inline bool all_flips_realizable(const ConceptClass& cls, const LabeledSample& s) {
    for (int i = 0; i < s.size(); ++i) {
        LabeledSample flip = s;
        flip[i].label = Label(-flip[i].label);
        if (!realizable(cls, flip)) return false;
    }
    return true;
}

inline int naive_star(const ConceptClass& cls) {
    int best = 0;
    for_each_labeled_subset(cls.domain_size(), [&](const LabeledSample& s) {
        if (s.size() <= best) return;
        if (realizable(cls, s) && all_flips_realizable(cls, s)) best = s.size();
    });
    return best;
}

inline int naive_hollow_star(const ConceptClass& cls) {
    if (full_class(cls)) return 0;
    int best = 0;
    // contradictory pair at any point taking both labels
    for (int x = 0; x < cls.domain_size(); ++x) {
        bool pos = realizable(cls, LabeledSample({{x, Label(1)}}));
        bool neg = realizable(cls, LabeledSample({{x, Label(-1)}}));
        if (pos && neg) {
            best = 2;
            break;
        }
    }
    for_each_labeled_subset(cls.domain_size(), [&](const LabeledSample& s) {
        if (s.size() <= best) return;
        if (!realizable(cls, s) && all_flips_realizable(cls, s)) best = s.size();
    });
    return best;
}

inline int naive_dual_helly(const ConceptClass& cls) {
    if (full_class(cls)) return 0;
    int best = 0;
    for (int x = 0; x < cls.domain_size(); ++x) {
        for (Label y : {Label(1), Label(-1)}) {
            bool this_one = realizable(cls, LabeledSample({{x, y}}));
            bool other = realizable(cls, LabeledSample({{x, Label(-y)}}));
            if (!this_one && best < 1) best = 1;  // minimal of size 1
            if (this_one && other && best < 2) best = 2;  // contradictory pair
        }
    }
    for_each_labeled_subset(cls.domain_size(), [&](const LabeledSample& s) {
        if (s.size() <= best) return;
        if (realizable(cls, s)) return;
        // inclusion-minimal: every one-removal realizable
        for (int i = 0; i < s.size(); ++i) {
            LabeledSample sub;
            for (int j = 0; j < s.size(); ++j)
                if (j != i) sub.push_back(s[j]);
            if (!realizable(cls, sub)) return;
        }
        best = s.size();
    });
    return best;
}

// ---- max-margin oracle: primal active-set enumeration -----------------

// Solves a dense linear system in-place; returns false when singular.
inline bool solve_linear(std::vector<std::vector<double>>& a,
                         std::vector<double>& b) {
    const int n = int(a.size());
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs(a[std::size_t(r)][std::size_t(c)]) >
                std::fabs(a[std::size_t(piv)][std::size_t(c)]))
                piv = r;
        if (std::fabs(a[std::size_t(piv)][std::size_t(c)]) < 1e-11) return false;
        std::swap(a[std::size_t(c)], a[std::size_t(piv)]);
        std::swap(b[std::size_t(c)], b[std::size_t(piv)]);
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            double f = a[std::size_t(r)][std::size_t(c)] / a[std::size_t(c)][std::size_t(c)];
            if (f == 0) continue;
            for (int c2 = c; c2 < n; ++c2)
                a[std::size_t(r)][std::size_t(c2)] -= f * a[std::size_t(c)][std::size_t(c2)];
            b[std::size_t(r)] -= f * b[std::size_t(c)];
        }
    }
    for (int c = 0; c < n; ++c) b[std::size_t(c)] /= a[std::size_t(c)][std::size_t(c)];
    return true;
}

// Maximum geometric margin by enumerating KKT active sets of the primal QP
// min ||w||^2 s.t. y_i (<w,x_i> - b) >= 1. Any primal+dual feasible KKT
// point of this convex program is globally optimal.
inline std::optional<double> brute_force_margin(
    const hellylab::Points& points, const std::vector<Label>& labels) {
    const int m = int(points.size());
    const int n = int(points[0].size());
    std::optional<double> best;

    for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << m); ++mask) {
        std::vector<int> active;
        for (int i = 0; i < m; ++i)
            if ((mask >> i) & 1) active.push_back(i);
        if (int(active.size()) > n + 2) continue;
        bool has_pos = false, has_neg = false;
        for (int i : active) (labels[std::size_t(i)] == 1 ? has_pos : has_neg) = true;
        if (!has_pos || !has_neg) continue;

        // unknowns: w (n), b (1), lambda (k)
        const int k = int(active.size());
        const int dim = n + 1 + k;
        std::vector<std::vector<double>> a(
            std::size_t(dim), std::vector<double>(std::size_t(dim), 0.0));
        std::vector<double> rhs(std::size_t(dim), 0.0);
        // stationarity: 2w - sum lambda_i y_i x_i = 0
        for (int c = 0; c < n; ++c) {
            a[std::size_t(c)][std::size_t(c)] = 2.0;
            for (int t = 0; t < k; ++t)
                a[std::size_t(c)][std::size_t(n + 1 + t)] =
                    -labels[std::size_t(active[std::size_t(t)])] *
                    points[std::size_t(active[std::size_t(t)])][std::size_t(c)];
        }
        // d/db: sum lambda_i y_i = 0
        for (int t = 0; t < k; ++t)
            a[std::size_t(n)][std::size_t(n + 1 + t)] =
                double(labels[std::size_t(active[std::size_t(t)])]);
        // active constraints: y_i (<w,x_i> - b) = 1
        for (int t = 0; t < k; ++t) {
            const int i = active[std::size_t(t)];
            for (int c = 0; c < n; ++c)
                a[std::size_t(n + 1 + t)][std::size_t(c)] =
                    labels[std::size_t(i)] * points[std::size_t(i)][std::size_t(c)];
            a[std::size_t(n + 1 + t)][std::size_t(n)] = -double(labels[std::size_t(i)]);
            rhs[std::size_t(n + 1 + t)] = 1.0;
        }
        if (!solve_linear(a, rhs)) continue;

        bool feasible = true;
        for (int t = 0; t < k && feasible; ++t)
            if (rhs[std::size_t(n + 1 + t)] < -1e-9) feasible = false;
        if (!feasible) continue;
        std::vector<double> w(rhs.begin(), rhs.begin() + n);
        const double b = rhs[std::size_t(n)];
        for (int i = 0; i < m && feasible; ++i) {
            double s = -b;
            for (int c = 0; c < n; ++c)
                s += w[std::size_t(c)] * points[std::size_t(i)][std::size_t(c)];
            if (labels[std::size_t(i)] * s < 1.0 - 1e-9) feasible = false;
        }
        if (!feasible) continue;
        double wn = 0;
        for (double c : w) wn += c * c;
        if (wn <= 0) continue;
        double margin = 1.0 / std::sqrt(wn);
        if (!best || margin > *best) best = margin;
    }
    return best;
}

}  // namespace oracle
