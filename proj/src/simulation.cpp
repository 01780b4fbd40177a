#include "hellylab/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "hellylab/learners.hpp"
#include "hellylab/rng.hpp"

namespace hellylab {

namespace {

// Run fn(trial) for every trial index. Results must be written to
// preallocated slots so the aggregate is independent of scheduling.
void parallel_trials(int trials, int threads,
                     const std::function<void(int)>& fn) {
    if (threads <= 0) threads = int(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, trials));
    if (threads <= 1) {
        for (int t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            int t;
            while ((t = next.fetch_add(1)) < trials) {
                try {
                    fn(t);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::vector<double> cumulative(const DiscreteDistribution& dist) {
    std::vector<double> cum(dist.probabilities.size());
    double total = 0;
    for (std::size_t i = 0; i < cum.size(); ++i) {
        total += dist.probabilities[i];
        cum[i] = total;
    }
    cum.back() = 1.0;  // guard against rounding at the top
    return cum;
}

int draw_index(const std::vector<double>& cum, Rng& rng) {
    double r = rng.next_unit();
    auto it = std::upper_bound(cum.begin(), cum.end(), r);
    if (it == cum.end()) --it;
    return int(it - cum.begin());
}

ExperimentResult summarize(const std::vector<double>& errors, double epsilon) {
    ExperimentResult res;
    res.trials = int(errors.size());
    int failures = 0;
    for (double e : errors)
        if (e > epsilon) ++failures;
    res.failure_rate = double(failures) / double(res.trials);
    res.wilson = wilson_interval(failures, res.trials);
    std::vector<double> sorted = errors;
    std::sort(sorted.begin(), sorted.end());
    for (double q : {0.0, 0.25, 0.5, 0.75, 0.9, 1.0}) {
        std::size_t idx = std::size_t(std::llround(q * double(sorted.size() - 1)));
        res.error_quantiles[q] = sorted[idx];
    }
    return res;
}

}  // namespace

void DiscreteDistribution::validate() const {
    require(!probabilities.empty(), errc::validation,
            "distribution: empty support");
    double total = 0;
    for (double p : probabilities) {
        require(p >= 0, errc::validation, "distribution: negative mass");
        total += p;
    }
    require(std::fabs(total - 1.0) <= 1e-12, errc::validation,
            "distribution: probabilities must sum to 1");
}

void PacInstance::validate() const {
    distribution.validate();
    require(int(distribution.probabilities.size()) == cls.domain_size(),
            errc::validation, "instance: distribution size != domain size");
    require(target >= 0 && target < cls.size(), errc::validation,
            "instance: target index out of range");
}

WilsonInterval wilson_interval(int successes, int trials) {
    require(trials >= 1 && successes >= 0 && successes <= trials,
            errc::validation, "wilson: bad counts");
    const double z = 1.959963984540054;  // 95%
    const double n = double(trials);
    const double p = double(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2 * n)) / denom;
    const double half =
        z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    WilsonInterval w{std::max(0.0, center - half), std::min(1.0, center + half)};
    if (successes == 0) w.lo = 0.0;
    if (successes == trials) w.hi = 1.0;
    return w;
}

double true_error(const ConceptClass& cls, int hypothesis, int target,
                  const DiscreteDistribution& dist) {
    require(hypothesis >= 0 && hypothesis < cls.size(), errc::validation,
            "true_error: hypothesis out of range");
    require(target >= 0 && target < cls.size(), errc::validation,
            "true_error: target out of range");
    require(int(dist.probabilities.size()) == cls.domain_size(),
            errc::validation, "true_error: distribution size != domain size");
    double err = 0;
    for (int x = 0; x < cls.domain_size(); ++x)
        if (cls.predict(hypothesis, x) != cls.predict(target, x))
            err += dist.probabilities[std::size_t(x)];
    return err;
}

ExperimentResult run_pac(const Learner& learner, const PacInstance& instance,
                         const ExperimentConfig& config) {
    instance.validate();
    require(config.trials >= 1, errc::validation, "run_pac: trials must be >= 1");
    require(config.n >= 0, errc::validation, "run_pac: n must be >= 0");
    require(config.epsilon > 0 && config.epsilon < 1, errc::validation,
            "run_pac: epsilon must be in (0,1)");

    const std::vector<double> cum = cumulative(instance.distribution);
    std::vector<double> errors(std::size_t(config.trials));
    parallel_trials(config.trials, config.threads, [&](int trial) {
        Rng rng(derive_seed(config.seed, std::uint64_t(trial)));
        LabeledSample sample;
        sample.entries.reserve(std::size_t(config.n));
        for (int i = 0; i < config.n; ++i) {
            int x = draw_index(cum, rng);
            sample.push_back({x, instance.cls.predict(instance.target, x)});
        }
        int h;
        try {
            h = learner(instance.cls, sample, rng.next_u64());
        } catch (const Error& e) {
            fail(e.code(), "trial " + std::to_string(trial) + ": " + e.what());
        }
        errors[std::size_t(trial)] =
            true_error(instance.cls, h, instance.target, instance.distribution);
    });
    return summarize(errors, config.epsilon);
}

SampleComplexityEstimate estimate_sample_complexity(
    const Learner& learner, const PacInstance& instance, double epsilon,
    double delta, int trials, std::uint64_t seed, int n_cap, int threads) {
    require(delta > 0 && delta < 1, errc::validation,
            "estimate: delta must be in (0,1)");
    SampleComplexityEstimate est;

    auto probe = [&](int n) {
        ExperimentConfig cfg;
        cfg.epsilon = epsilon;
        cfg.delta = delta;
        cfg.n = n;
        cfg.trials = trials;
        cfg.seed = derive_seed(seed, std::uint64_t(n));
        cfg.threads = threads;
        ExperimentResult r = run_pac(learner, instance, cfg);
        est.trace.emplace_back(n, r.failure_rate, r.wilson.hi);
        return r.wilson.hi <= delta;
    };

    int lo = 0;  // largest n known to fail (or 0)
    int hi = -1;
    for (int n = 1; n <= n_cap; n *= 2) {
        if (probe(n)) {
            hi = n;
            break;
        }
        lo = n;
    }
    if (hi < 0) {
        est.n = n_cap;
        est.capped = true;
        return est;
    }
    while (hi - lo > 1) {
        int mid = lo + (hi - lo) / 2;
        if (probe(mid))
            hi = mid;
        else
            lo = mid;
    }
    est.n = hi;
    return est;
}

ExperimentResult hollow_star_experiment(int k, double epsilon, int n,
                                        int trials, std::uint64_t seed,
                                        const Learner& learner, int threads) {
    require(k >= 3, errc::validation, "hollow-star experiment: k must be >= 3");
    require(epsilon > 0 && epsilon <= 1.0 / double(k), errc::validation,
            "hollow-star experiment: requires epsilon <= 1/k");
    require(n >= 0 && trials >= 1, errc::validation,
            "hollow-star experiment: bad n/trials");

    const ConceptClass cls = make_singletons(k, false);
    const double mass = epsilon / (1.0 - epsilon);

    std::vector<double> errors(std::size_t(trials), 0.0);
    parallel_trials(trials, threads, [&](int trial) {
        Rng rng(derive_seed(seed, std::uint64_t(trial)));
        // i* uniform over {2..k} in the paper's 1-based indexing
        const int istar = 1 + int(rng.next_below(std::uint64_t(k - 1)));
        DiscreteDistribution dist;
        dist.probabilities.assign(std::size_t(k), mass);
        dist.probabilities[std::size_t(istar)] = 0.0;
        dist.probabilities[0] = 1.0 - double(k - 2) * mass;

        const std::vector<double> cum = cumulative(dist);
        LabeledSample sample;
        sample.entries.reserve(std::size_t(n));
        for (int i = 0; i < n; ++i) {
            int x = draw_index(cum, rng);
            sample.push_back({x, cls.predict(istar, x)});
        }
        int h = learner(cls, sample, rng.next_u64());
        errors[std::size_t(trial)] = true_error(cls, h, istar, dist);
    });
    return summarize(errors, epsilon);
}

namespace {

// hypothesis index of h_{i,J} in make_hard_class ordering: groups ascending,
// J in lexicographic order within each group
int hard_class_hypothesis_index(int d, int i, const std::vector<int>& j_sorted) {
    auto comb = [](int n, int r) -> long long {
        if (r < 0 || r > n) return 0;
        long long c = 1;
        for (int t = 0; t < r; ++t) c = c * (n - t) / (t + 1);
        return c;
    };
    long long idx = 0;
    for (int g = d - 1; g < i; ++g) idx += comb(g, d - 1);
    // rank of the (d-1)-combination j_sorted within {1..i}
    int prev = 0;
    int remaining = d - 1;
    for (int t = 0; t < d - 1; ++t) {
        for (int v = prev + 1; v < j_sorted[std::size_t(t)]; ++v)
            idx += comb(i - v, remaining - 1);
        prev = j_sorted[std::size_t(t)];
        --remaining;
    }
    return int(idx);
}

int hard_class_point_index(int d, int i, int j) {
    int offset = 0;
    for (int g = d - 1; g < i; ++g) offset += g;
    return offset + (j - 1);
}

}  // namespace

ExperimentResult hard_class_experiment(int d, int kw, double epsilon, int n,
                                       int trials, std::uint64_t seed,
                                       const Learner& learner, int threads) {
    require(d >= 2, errc::validation, "hard-class experiment: d must be >= 2");
    require(kw >= 2, errc::validation, "hard-class experiment: kw must be >= 2");
    require(epsilon > 0 && epsilon <= double(d - 1) / 4.0, errc::validation,
            "hard-class experiment: requires 0 < epsilon <= (d-1)/4");
    require(n >= 0 && trials >= 1, errc::validation,
            "hard-class experiment: bad n/trials");

    const ConceptClass cls = make_hard_class(d, kw);
    const int i_eps = std::min(int(std::floor(double(d - 1) / (4.0 * epsilon))) + d - 1,
                               kw + d - 2);
    const double mass = 4.0 * epsilon / double(d - 1);
    const int base_point = hard_class_point_index(d, d - 1, 1);
    const double remainder = 1.0 - double(i_eps - (d - 1)) * mass;
    require(remainder >= -1e-9, errc::validation,
            "hard-class experiment: masses exceed 1");

    std::vector<double> errors(std::size_t(trials), 0.0);
    parallel_trials(trials, threads, [&](int trial) {
        Rng rng(derive_seed(seed, std::uint64_t(trial)));
        // J* uniform (d-1)-subset of {1..i_eps}
        std::vector<int> pool(std::size_t(i_eps), 0);
        for (int j = 0; j < i_eps; ++j) pool[std::size_t(j)] = j + 1;
        rng.partial_shuffle(pool, std::size_t(d - 1));
        std::vector<int> jstar(pool.begin(), pool.begin() + (d - 1));
        std::sort(jstar.begin(), jstar.end());

        const int target = hard_class_hypothesis_index(d, i_eps, jstar);
        DiscreteDistribution dist;
        dist.probabilities.assign(std::size_t(cls.domain_size()), 0.0);
        for (int j = 1; j <= i_eps; ++j) {
            if (std::find(jstar.begin(), jstar.end(), j) != jstar.end()) continue;
            dist.probabilities[std::size_t(hard_class_point_index(d, i_eps, j))] = mass;
        }
        dist.probabilities[std::size_t(base_point)] += std::max(remainder, 0.0);

        const std::vector<double> cum = cumulative(dist);
        LabeledSample sample;
        sample.entries.reserve(std::size_t(n));
        for (int i = 0; i < n; ++i) {
            int x = draw_index(cum, rng);
            sample.push_back({x, cls.predict(target, x)});
        }
        int h = learner(cls, sample, rng.next_u64());
        errors[std::size_t(trial)] = true_error(cls, h, target, dist);
    });
    return summarize(errors, epsilon);
}

CouponResult coupon_collector(int k, int m, int trials, std::uint64_t seed,
                              int threads) {
    require(k >= 1, errc::validation, "coupon: k must be >= 1");
    require(m >= 1 && m <= k, errc::validation, "coupon: requires 1 <= m <= k");
    require(trials >= 1, errc::validation, "coupon: trials must be >= 1");

    CouponResult res;
    res.trials = trials;
    res.lemma_bound =
        double(k) * (std::log(double(k) / double(m)) - 1.0 -
                     std::sqrt(2.0 / double(m)));

    std::vector<double> zs(std::size_t(trials), 0.0);
    parallel_trials(trials, threads, [&](int trial) {
        Rng rng(derive_seed(seed, std::uint64_t(trial)));
        const int need = k - m;
        std::vector<bool> seen(std::size_t(k), false);
        int distinct = 0;
        long draws = 0;
        while (distinct < need) {
            int x = int(rng.next_below(std::uint64_t(k)));
            ++draws;
            if (!seen[std::size_t(x)]) {
                seen[std::size_t(x)] = true;
                ++distinct;
            }
        }
        zs[std::size_t(trial)] = double(draws);
    });

    std::vector<double> sorted = zs;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t c = sorted.size();
    res.empirical_median = c % 2 == 1
                               ? sorted[c / 2]
                               : (sorted[c / 2 - 1] + sorted[c / 2]) / 2.0;
    double sum = 0;
    for (double v : sorted) sum += v;
    res.empirical_mean = sum / double(c);
    return res;
}

SvmBenchResult svm_bench(int dimension, int support_size, int m, double delta,
                         int trials, std::uint64_t seed,
                         const SvmConfig& svm_config, int threads) {
    require(dimension >= 1, errc::validation, "svm bench: dimension must be >= 1");
    require(support_size >= 2, errc::validation,
            "svm bench: support size must be >= 2");
    require(trials >= 1, errc::validation, "svm bench: trials must be >= 1");
    const int l = dimension + 1;
    SvmBenchResult res;
    res.trials = trials;
    res.bound = generalization_bound(l, m, delta);  // validates m > 2l

    // Desk-scale hygiene: redraw instances whose support margin is tiny.
    const double margin_floor = 0.01;

    std::vector<char> exceeded(std::size_t(trials), 0);
    std::vector<int> redraws(std::size_t(trials), 0);
    parallel_trials(trials, threads, [&](int trial) {
        Rng rng(derive_seed(seed, std::uint64_t(trial)));
        Points support(std::size_t(support_size),
                       std::vector<double>(std::size_t(dimension), 0.0));
        std::vector<Label> truth(std::size_t(support_size), Label(0));
        while (true) {
            for (auto& p : support)
                for (auto& c : p) c = rng.next_unit();
            // random unit normal via Box-Muller
            std::vector<double> w(std::size_t(dimension), 0.0);
            double wn = 0;
            for (auto& c : w) {
                double u1 = 1.0 - rng.next_unit();
                double u2 = rng.next_unit();
                c = std::sqrt(-2.0 * std::log(u1)) *
                    std::cos(2.0 * 3.141592653589793 * u2);
                wn += c * c;
            }
            wn = std::sqrt(wn);
            if (wn < 1e-12) {
                ++redraws[std::size_t(trial)];
                continue;
            }
            for (auto& c : w) c /= wn;
            std::vector<double> anchor(std::size_t(dimension), 0.0);
            for (auto& c : anchor) c = rng.next_unit();
            double v = 0;
            for (int c = 0; c < dimension; ++c)
                v += w[std::size_t(c)] * anchor[std::size_t(c)];

            double min_margin = 1e300;
            for (int i = 0; i < support_size; ++i) {
                double s = -v;
                for (int c = 0; c < dimension; ++c)
                    s += w[std::size_t(c)] * support[std::size_t(i)][std::size_t(c)];
                truth[std::size_t(i)] = Label(s >= 0 ? 1 : -1);
                min_margin = std::min(min_margin, std::fabs(s));
            }
            if (min_margin >= margin_floor) break;
            ++redraws[std::size_t(trial)];
        }

        // m i.i.d. draws with uniform masses over the support
        Points sample_points;
        std::vector<Label> sample_labels;
        sample_points.reserve(std::size_t(m));
        bool has_pos = false, has_neg = false;
        for (int i = 0; i < m; ++i) {
            int idx = int(rng.next_below(std::uint64_t(support_size)));
            sample_points.push_back(support[std::size_t(idx)]);
            sample_labels.push_back(truth[std::size_t(idx)]);
            (truth[std::size_t(idx)] == 1 ? has_pos : has_neg) = true;
        }

        std::function<Label(const std::vector<double>&)> predict;
        if (!has_neg) {
            predict = [](const std::vector<double>&) { return Label(1); };
        } else if (!has_pos) {
            predict = [](const std::vector<double>&) { return Label(-1); };
        } else {
            SvmSolution sol = hard_margin_svm(sample_points, sample_labels, svm_config);
            predict = [h = sol.hypothesis](const std::vector<double>& x) {
                return h.predict(x);
            };
        }

        double err = 0;
        for (int i = 0; i < support_size; ++i)
            if (predict(support[std::size_t(i)]) != truth[std::size_t(i)])
                err += 1.0 / double(support_size);
        exceeded[std::size_t(trial)] = err >= res.bound ? 1 : 0;
    });

    int count = 0;
    for (char e : exceeded) count += e;
    res.exceed_fraction = double(count) / double(trials);
    res.wilson = wilson_interval(count, trials);
    for (int r : redraws) res.redraws += r;
    return res;
}

Learner erm_lowest_index_learner() {
    return [](const ConceptClass& cls, const LabeledSample& s, std::uint64_t) {
        return erm(cls, s);
    };
}

Learner algorithm_a_learner(int k_p) {
    return [k_p](const ConceptClass& cls, const LabeledSample& s,
                 std::uint64_t seed) {
        return algorithm_a(cls, s, LabeledSample{}, k_p, seed);
    };
}

Learner algorithm_a_erm_learner(int k_p) {
    return [k_p](const ConceptClass& cls, const LabeledSample& s, std::uint64_t) {
        return algorithm_a_erm(cls, s, k_p);
    };
}

Learner oracle_learner(int target) {
    return [target](const ConceptClass&, const LabeledSample&, std::uint64_t) {
        return target;
    };
}

}  // namespace hellylab
