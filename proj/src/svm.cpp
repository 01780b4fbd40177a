#include "hellylab/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace hellylab {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void check_input(const Points& points, const std::vector<Label>& labels) {
    require(!points.empty(), errc::validation, "svm: no points given");
    require(points.size() == labels.size(), errc::validation,
            "svm: points/labels length mismatch");
    const std::size_t arity = points[0].size();
    require(arity >= 1, errc::validation, "svm: points need coordinates");
    for (const auto& p : points)
        require(p.size() == arity, errc::validation, "svm: arity mismatch");
    for (Label y : labels)
        require(y == 1 || y == -1, errc::validation, "svm: labels must be +-1");
}

struct Dedup {
    Points pos, neg;
    bool conflict = false;  // identical point with both labels
};

Dedup dedup_points(const Points& points, const std::vector<Label>& labels) {
    Dedup d;
    std::map<std::vector<double>, Label> seen;
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto [it, inserted] = seen.emplace(points[i], labels[i]);
        if (!inserted) {
            if (it->second != labels[i]) d.conflict = true;
            continue;
        }
        (labels[i] == 1 ? d.pos : d.neg).push_back(points[i]);
    }
    return d;
}

// Closest pair between conv(pos) and conv(neg). `lower` is the certified
// separation along the current direction, a lower bound on the optimum.
struct PairState {
    std::vector<double> u, z;
    double dist = 0;
    double lower = 0;
    bool certified = false;
};

// Solve the equality-KKT system for the closest pair restricted to the given
// support subsets; returns the pair and convex coefficients, or nullopt when
// the system is singular or infeasible.
struct SubsetPair {
    std::vector<double> alpha, beta;
    std::vector<double> u, z;
    double dist = 0;
};

std::optional<SubsetPair> solve_subset(const Points& pos, const Points& neg,
                                       const std::vector<int>& a,
                                       const std::vector<int>& b) {
    const int k1 = int(a.size());
    const int k2 = int(b.size());
    const int dim = k1 + k2 + 2;
    std::vector<std::vector<double>> mat(std::size_t(dim),
                                         std::vector<double>(std::size_t(dim) + 1, 0.0));
    auto P = [&](int i) -> const std::vector<double>& { return pos[std::size_t(a[std::size_t(i)])]; };
    auto Q = [&](int j) -> const std::vector<double>& { return neg[std::size_t(b[std::size_t(j)])]; };

    for (int i = 0; i < k1; ++i) {
        for (int i2 = 0; i2 < k1; ++i2) mat[std::size_t(i)][std::size_t(i2)] = dot(P(i), P(i2));
        for (int j = 0; j < k2; ++j) mat[std::size_t(i)][std::size_t(k1 + j)] = -dot(P(i), Q(j));
        mat[std::size_t(i)][std::size_t(k1 + k2)] = 1.0;  // multiplier for sum(alpha)=1
    }
    for (int j = 0; j < k2; ++j) {
        for (int i = 0; i < k1; ++i) mat[std::size_t(k1 + j)][std::size_t(i)] = -dot(Q(j), P(i));
        for (int j2 = 0; j2 < k2; ++j2)
            mat[std::size_t(k1 + j)][std::size_t(k1 + j2)] = dot(Q(j), Q(j2));
        mat[std::size_t(k1 + j)][std::size_t(k1 + k2 + 1)] = 1.0;
    }
    for (int i = 0; i < k1; ++i) mat[std::size_t(k1 + k2)][std::size_t(i)] = 1.0;
    for (int j = 0; j < k2; ++j) mat[std::size_t(k1 + k2 + 1)][std::size_t(k1 + j)] = 1.0;
    mat[std::size_t(k1 + k2)][std::size_t(dim)] = 1.0;
    mat[std::size_t(k1 + k2 + 1)][std::size_t(dim)] = 1.0;

    // Gaussian elimination with partial pivoting.
    for (int c = 0; c < dim; ++c) {
        int piv = c;
        for (int r = c + 1; r < dim; ++r)
            if (std::fabs(mat[std::size_t(r)][std::size_t(c)]) >
                std::fabs(mat[std::size_t(piv)][std::size_t(c)]))
                piv = r;
        if (std::fabs(mat[std::size_t(piv)][std::size_t(c)]) < 1e-13) return std::nullopt;
        std::swap(mat[std::size_t(c)], mat[std::size_t(piv)]);
        for (int r = 0; r < dim; ++r) {
            if (r == c) continue;
            double f = mat[std::size_t(r)][std::size_t(c)] / mat[std::size_t(c)][std::size_t(c)];
            if (f == 0) continue;
            for (int c2 = c; c2 <= dim; ++c2)
                mat[std::size_t(r)][std::size_t(c2)] -= f * mat[std::size_t(c)][std::size_t(c2)];
        }
    }

    SubsetPair out;
    out.alpha.resize(std::size_t(k1));
    out.beta.resize(std::size_t(k2));
    for (int i = 0; i < k1; ++i) {
        out.alpha[std::size_t(i)] =
            mat[std::size_t(i)][std::size_t(dim)] / mat[std::size_t(i)][std::size_t(i)];
        if (out.alpha[std::size_t(i)] < -1e-9) return std::nullopt;
    }
    for (int j = 0; j < k2; ++j) {
        out.beta[std::size_t(j)] =
            mat[std::size_t(k1 + j)][std::size_t(dim)] / mat[std::size_t(k1 + j)][std::size_t(k1 + j)];
        if (out.beta[std::size_t(j)] < -1e-9) return std::nullopt;
    }

    const std::size_t n = pos[0].size();
    out.u.assign(n, 0.0);
    out.z.assign(n, 0.0);
    for (int i = 0; i < k1; ++i)
        for (std::size_t c = 0; c < n; ++c) out.u[c] += out.alpha[std::size_t(i)] * P(i)[c];
    for (int j = 0; j < k2; ++j)
        for (std::size_t c = 0; c < n; ++c) out.z[c] += out.beta[std::size_t(j)] * Q(j)[c];
    std::vector<double> w(n);
    for (std::size_t c = 0; c < n; ++c) w[c] = out.u[c] - out.z[c];
    out.dist = norm(w);
    return out;
}

void combinations(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    if (k > n) return;
    std::vector<int> idx(std::size_t(k), 0);
    for (int i = 0; i < k; ++i) idx[std::size_t(i)] = i;
    while (true) {
        fn(idx);
        int t = k - 1;
        while (t >= 0 && idx[std::size_t(t)] == n - k + t) --t;
        if (t < 0) return;
        ++idx[std::size_t(t)];
        for (int u = t + 1; u < k; ++u) idx[std::size_t(u)] = idx[std::size_t(u - 1)] + 1;
    }
}

// MDM-style coordinate ascent with a periodic exact polish on the points
// currently near the extremes. Termination is always by the global duality
// gap, so the polish cannot produce an uncertified answer.
PairState closest_pair(const Points& pos, const Points& neg,
                       const SvmConfig& cfg) {
    const std::size_t n = pos[0].size();
    const int np = int(pos.size());
    const int nn = int(neg.size());

    std::vector<double> alpha(std::size_t(np), 1.0 / np);
    std::vector<double> beta(std::size_t(nn), 1.0 / nn);
    std::vector<double> u(n, 0.0), z(n, 0.0);
    for (int i = 0; i < np; ++i)
        for (std::size_t c = 0; c < n; ++c) u[c] += alpha[std::size_t(i)] * pos[std::size_t(i)][c];
    for (int j = 0; j < nn; ++j)
        for (std::size_t c = 0; c < n; ++c) z[c] += beta[std::size_t(j)] * neg[std::size_t(j)][c];

    std::vector<double> w(n), sp(std::size_t(np), 0.0), sn(std::size_t(nn), 0.0);
    PairState state;

    double scale = 1.0;
    for (const auto& p : pos)
        for (double c : p) scale = std::max(scale, std::fabs(c));
    for (const auto& q : neg)
        for (double c : q) scale = std::max(scale, std::fabs(c));

    const int max_subset = int(n) + 1;
    bool stuck = false;

    for (long iter = 0; iter < cfg.max_iterations && !stuck; ++iter) {
        for (std::size_t c = 0; c < n; ++c) w[c] = u[c] - z[c];
        const double dist = norm(w);
        if (dist <= cfg.separability_tol) {
            state.u = u;
            state.z = z;
            state.dist = dist;
            state.lower = 0;
            state.certified = true;  // hulls (numerically) intersect
            return state;
        }
        for (int i = 0; i < np; ++i) sp[std::size_t(i)] = dot(w, pos[std::size_t(i)]);
        for (int j = 0; j < nn; ++j) sn[std::size_t(j)] = dot(w, neg[std::size_t(j)]);
        const double min_sp = *std::min_element(sp.begin(), sp.end());
        const double max_sn = *std::max_element(sn.begin(), sn.end());
        const double lower = (min_sp - max_sn) / dist;
        if (dist - lower <= cfg.gap_rel_tol * std::max(1.0, dist)) {
            state.u = u;
            state.z = z;
            state.dist = dist;
            state.lower = std::max(lower, 0.0);
            state.certified = true;
            return state;
        }

        // Exact polish once the ascent has localized the extremes: enumerate
        // support subsets among near-extreme points and adopt a feasible pair
        // if it improves the distance.
        const bool localized = dist - lower <= 1e-3 * std::max(1.0, dist);
        if (localized && iter % 64 == 0) {
            const double slack = (dist - std::max(lower, 0.0)) + 1e-12 * scale;
            std::vector<int> cand_p, cand_n;
            for (int i = 0; i < np; ++i)
                if (sp[std::size_t(i)] <= min_sp + slack) cand_p.push_back(i);
            for (int j = 0; j < nn; ++j)
                if (sn[std::size_t(j)] >= max_sn - slack) cand_n.push_back(j);
            if (int(cand_p.size()) <= 8 && int(cand_n.size()) <= 8) {
                std::optional<SubsetPair> best;
                std::vector<int> best_a, best_b;
                for (int k1 = 1; k1 <= std::min<int>(max_subset, int(cand_p.size())); ++k1) {
                    combinations(int(cand_p.size()), k1, [&](const std::vector<int>& ia) {
                        std::vector<int> a;
                        for (int t : ia) a.push_back(cand_p[std::size_t(t)]);
                        for (int k2 = 1; k2 <= std::min<int>(max_subset, int(cand_n.size())); ++k2) {
                            combinations(int(cand_n.size()), k2, [&](const std::vector<int>& ib) {
                                std::vector<int> b;
                                for (int t : ib) b.push_back(cand_n[std::size_t(t)]);
                                auto sol = solve_subset(pos, neg, a, b);
                                if (sol && (!best || sol->dist < best->dist - 1e-15)) {
                                    best = sol;
                                    best_a = a;
                                    best_b = b;
                                }
                            });
                        }
                    });
                }
                if (best && best->dist < dist - 1e-15) {
                    std::fill(alpha.begin(), alpha.end(), 0.0);
                    std::fill(beta.begin(), beta.end(), 0.0);
                    for (std::size_t t = 0; t < best_a.size(); ++t)
                        alpha[std::size_t(best_a[t])] = std::max(0.0, best->alpha[t]);
                    for (std::size_t t = 0; t < best_b.size(); ++t)
                        beta[std::size_t(best_b[t])] = std::max(0.0, best->beta[t]);
                    u = best->u;
                    z = best->z;
                    continue;
                }
            }
        }

        // One coordinate-ascent step on the side with the larger violation.
        int i_to = 0, i_from = -1;
        for (int i = 1; i < np; ++i)
            if (sp[std::size_t(i)] < sp[std::size_t(i_to)]) i_to = i;
        for (int i = 0; i < np; ++i)
            if (alpha[std::size_t(i)] > 0 &&
                (i_from < 0 || sp[std::size_t(i)] > sp[std::size_t(i_from)]))
                i_from = i;
        double delta_p = i_from < 0 ? 0 : sp[std::size_t(i_from)] - sp[std::size_t(i_to)];

        int j_to = 0, j_from = -1;
        for (int j = 1; j < nn; ++j)
            if (sn[std::size_t(j)] > sn[std::size_t(j_to)]) j_to = j;
        for (int j = 0; j < nn; ++j)
            if (beta[std::size_t(j)] > 0 &&
                (j_from < 0 || sn[std::size_t(j)] < sn[std::size_t(j_from)]))
                j_from = j;
        double delta_n = j_from < 0 ? 0 : sn[std::size_t(j_to)] - sn[std::size_t(j_from)];

        if (delta_p <= 0 && delta_n <= 0) {
            stuck = true;  // stationary up to rounding
        } else if (delta_p >= delta_n) {
            std::vector<double> d(n);
            for (std::size_t c = 0; c < n; ++c)
                d[c] = pos[std::size_t(i_to)][c] - pos[std::size_t(i_from)][c];
            const double dd = dot(d, d);
            if (dd <= 0) {
                stuck = true;
            } else {
                double lambda = std::min(-dot(w, d) / dd, alpha[std::size_t(i_from)]);
                lambda = std::max(lambda, 0.0);
                if (lambda <= 0) stuck = true;
                alpha[std::size_t(i_from)] -= lambda;
                alpha[std::size_t(i_to)] += lambda;
                for (std::size_t c = 0; c < n; ++c) u[c] += lambda * d[c];
            }
        } else {
            std::vector<double> d(n);
            for (std::size_t c = 0; c < n; ++c)
                d[c] = neg[std::size_t(j_to)][c] - neg[std::size_t(j_from)][c];
            const double dd = dot(d, d);
            if (dd <= 0) {
                stuck = true;
            } else {
                double lambda = std::min(dot(w, d) / dd, beta[std::size_t(j_from)]);
                lambda = std::max(lambda, 0.0);
                if (lambda <= 0) stuck = true;
                beta[std::size_t(j_from)] -= lambda;
                beta[std::size_t(j_to)] += lambda;
                for (std::size_t c = 0; c < n; ++c) z[c] += lambda * d[c];
            }
        }
    }

    // Iterations exhausted or stationary to rounding: accept only if the gap
    // still certifies optimality at a looser-but-tight 1e-6 tolerance.
    for (std::size_t c = 0; c < n; ++c) w[c] = u[c] - z[c];
    const double dist = norm(w);
    if (dist > cfg.separability_tol) {
        for (int i = 0; i < np; ++i) sp[std::size_t(i)] = dot(w, pos[std::size_t(i)]);
        for (int j = 0; j < nn; ++j) sn[std::size_t(j)] = dot(w, neg[std::size_t(j)]);
        const double lower = (*std::min_element(sp.begin(), sp.end()) -
                              *std::max_element(sn.begin(), sn.end())) /
                             dist;
        if (dist - lower <= 1e-6 * std::max(1.0, dist)) {
            state.u = u;
            state.z = z;
            state.dist = dist;
            state.lower = std::max(lower, 0.0);
            state.certified = true;
            return state;
        }
    } else {
        state.u = u;
        state.z = z;
        state.dist = dist;
        state.lower = 0;
        state.certified = true;
        return state;
    }

    fail(errc::validation, "svm: solver failed to certify optimality");
}

}  // namespace

Label HalfspaceHypothesis::predict(const std::vector<double>& x) const {
    double s = dot(weights, x) - threshold;
    return Label(s >= 0 ? 1 : -1);
}

bool separable(const Points& points, const std::vector<Label>& labels,
               const SvmConfig& config) {
    check_input(points, labels);
    Dedup d = dedup_points(points, labels);
    if (d.conflict) return false;
    if (d.pos.empty() || d.neg.empty()) return true;
    PairState pair = closest_pair(d.pos, d.neg, config);
    return pair.lower / 2.0 >= config.separability_tol;
}

SvmSolution hard_margin_svm(const Points& points,
                            const std::vector<Label>& labels,
                            const SvmConfig& config) {
    check_input(points, labels);
    Dedup d = dedup_points(points, labels);
    require(!d.conflict, errc::not_separable,
            "svm: identical point with conflicting labels");
    require(!d.pos.empty() && !d.neg.empty(), errc::validation,
            "svm: hard margin undefined for a single-label sample");
    PairState pair = closest_pair(d.pos, d.neg, config);
    require(pair.lower / 2.0 >= config.separability_tol, errc::not_separable,
            "svm: sample is not strictly separable");

    const std::size_t n = points[0].size();
    std::vector<double> w(n);
    for (std::size_t c = 0; c < n; ++c) w[c] = pair.u[c] - pair.z[c];
    const double wn = norm(w);
    for (std::size_t c = 0; c < n; ++c) w[c] /= wn;

    double min_pos = std::numeric_limits<double>::infinity();
    double max_neg = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        double s = dot(w, points[i]);
        if (labels[i] == 1)
            min_pos = std::min(min_pos, s);
        else
            max_neg = std::max(max_neg, s);
    }

    SvmSolution sol;
    sol.hypothesis.weights = w;
    sol.hypothesis.threshold = (min_pos + max_neg) / 2.0;
    sol.margin = (min_pos - max_neg) / 2.0;
    const double tol = config.margin_rel_tol * std::max(1.0, sol.margin) + 1e-12;
    for (std::size_t i = 0; i < points.size(); ++i) {
        double fm = labels[i] * (dot(w, points[i]) - sol.hypothesis.threshold);
        if (fm <= sol.margin + tol) sol.support_indices.push_back(int(i));
    }
    return sol;
}

namespace {

bool same_hyperplane(const SvmSolution& a, const SvmSolution& b) {
    double dw = 0;
    for (std::size_t c = 0; c < a.hypothesis.weights.size(); ++c) {
        double d = a.hypothesis.weights[c] - b.hypothesis.weights[c];
        dw += d * d;
    }
    const double tol = 1e-6;
    return std::sqrt(dw) <= tol &&
           std::fabs(a.hypothesis.threshold - b.hypothesis.threshold) <=
               tol * std::max(1.0, std::fabs(a.hypothesis.threshold)) &&
           std::fabs(a.margin - b.margin) <= tol * std::max(1.0, a.margin);
}

}  // namespace

std::vector<int> svm_compression_set(const Points& points,
                                     const std::vector<Label>& labels,
                                     const SvmConfig& config) {
    SvmSolution full = hard_margin_svm(points, labels, config);

    // Canonical order over support entries by (coords, label) value, so the
    // selection is unaffected by removing other sample points.
    std::vector<int> support = full.support_indices;
    std::sort(support.begin(), support.end(), [&](int a, int b) {
        if (points[std::size_t(a)] != points[std::size_t(b)])
            return points[std::size_t(a)] < points[std::size_t(b)];
        return labels[std::size_t(a)] < labels[std::size_t(b)];
    });
    // Drop value-duplicates (dedup keeps solutions identical).
    support.erase(std::unique(support.begin(), support.end(),
                              [&](int a, int b) {
                                  return points[std::size_t(a)] == points[std::size_t(b)] &&
                                         labels[std::size_t(a)] == labels[std::size_t(b)];
                              }),
                  support.end());

    const int s = int(support.size());
    for (int k = 2; k <= s; ++k) {
        std::optional<std::vector<int>> found;
        combinations(s, k, [&](const std::vector<int>& idx) {
            if (found) return;
            Points sub_points;
            std::vector<Label> sub_labels;
            std::vector<int> orig;
            bool has_pos = false, has_neg = false;
            for (int t : idx) {
                int i = support[std::size_t(t)];
                sub_points.push_back(points[std::size_t(i)]);
                sub_labels.push_back(labels[std::size_t(i)]);
                orig.push_back(i);
                (labels[std::size_t(i)] == 1 ? has_pos : has_neg) = true;
            }
            if (!has_pos || !has_neg) return;
            SvmSolution sub = hard_margin_svm(sub_points, sub_labels, config);
            if (same_hyperplane(sub, full)) found = orig;
        });
        if (found) {
            std::sort(found->begin(), found->end());
            return *found;
        }
    }
    std::sort(support.begin(), support.end());
    return support;
}

Scheme<std::vector<double>> svm_scheme(int dimension, const SvmConfig& config) {
    require(dimension >= 1, errc::validation, "svm scheme: dimension must be >= 1");
    using Entry = LabeledPoint<std::vector<double>>;

    Scheme<std::vector<double>> scheme;
    scheme.size = dimension + 1;
    scheme.kappa = [config](const std::vector<Entry>& sample) {
        std::vector<Entry> out;
        if (sample.empty()) return out;
        bool has_pos = false, has_neg = false;
        for (const auto& e : sample) (e.label == 1 ? has_pos : has_neg) = true;
        if (!has_neg) return out;  // all positive: empty compression set
        if (!has_pos) {
            // all negative: keep the largest point by value order
            const Entry* best = &sample[0];
            for (const auto& e : sample)
                if (e.point > best->point) best = &e;
            out.push_back(*best);
            return out;
        }
        Points pts;
        std::vector<Label> labels;
        for (const auto& e : sample) {
            pts.push_back(e.point);
            labels.push_back(e.label);
        }
        for (int i : svm_compression_set(pts, labels, config))
            out.push_back(sample[std::size_t(i)]);
        return out;
    };
    scheme.rho = [config](const std::vector<Entry>& compressed)
        -> std::function<Label(const std::vector<double>&)> {
        bool has_pos = false, has_neg = false;
        for (const auto& e : compressed) (e.label == 1 ? has_pos : has_neg) = true;
        if (compressed.empty() || !has_neg)
            return [](const std::vector<double>&) { return Label(1); };
        if (!has_pos)
            return [](const std::vector<double>&) { return Label(-1); };
        Points pts;
        std::vector<Label> labels;
        for (const auto& e : compressed) {
            pts.push_back(e.point);
            labels.push_back(e.label);
        }
        SvmSolution sol = hard_margin_svm(pts, labels, config);
        return [h = sol.hypothesis](const std::vector<double>& x) {
            return h.predict(x);
        };
    };
    return scheme;
}

}  // namespace hellylab
