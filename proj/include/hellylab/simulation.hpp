#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include "hellylab/concept_class.hpp"
#include "hellylab/svm.hpp"

namespace hellylab {

// Finite-support distribution over domain point indices; zero-mass support
// points are allowed.
struct DiscreteDistribution {
    std::vector<double> probabilities;

    void validate() const;
};

struct PacInstance {
    ConceptClass cls;
    DiscreteDistribution distribution;
    int target = 0;

    void validate() const;
};

struct ExperimentConfig {
    double epsilon = 0.1;
    double delta = 0.05;
    int n = 0;  // sample size per trial
    int trials = 1;
    std::uint64_t seed = 0;
    int threads = 0;  // 0 = hardware concurrency
};

struct WilsonInterval {
    double lo = 0;
    double hi = 1;
};

// 95% Wilson score interval.
WilsonInterval wilson_interval(int successes, int trials);

struct ExperimentResult {
    double failure_rate = 0;
    WilsonInterval wilson;
    std::map<double, double> error_quantiles;
    int trials = 0;
};

// A learner maps (class, sample, seed) to a hypothesis index.
using Learner =
    std::function<int(const ConceptClass&, const LabeledSample&, std::uint64_t)>;

// P(x : h(x) != target(x)), an exact sum over the support.
double true_error(const ConceptClass& cls, int hypothesis, int target,
                  const DiscreteDistribution& dist);

// `trials` independent n-sample draws; failure means true error > epsilon.
// Bit-reproducible for a fixed seed regardless of thread count.
ExperimentResult run_pac(const Learner& learner, const PacInstance& instance,
                         const ExperimentConfig& config);

struct SampleComplexityEstimate {
    int n = 0;
    bool capped = false;
    // one row per probed n: (n, failure_rate, wilson_hi)
    std::vector<std::tuple<int, double, double>> trace;
};

// Doubling then bisection for the smallest n whose empirical failure rate
// has Wilson upper bound <= delta.
SampleComplexityEstimate estimate_sample_complexity(
    const Learner& learner, const PacInstance& instance, double epsilon,
    double delta, int trials, std::uint64_t seed, int n_cap = 1 << 16,
    int threads = 0);

// The hollow-star lower-bound instance specialized to singletons over k
// points: i* uniform in {2..k}, P(x_1) = 1 - (k-2)eps/(1-eps),
// P(x_i) = eps/(1-eps) elsewhere, P(x_{i*}) = 0, target = h_{i*}.
ExperimentResult hollow_star_experiment(int k, double epsilon, int n,
                                        int trials, std::uint64_t seed,
                                        const Learner& learner,
                                        int threads = 0);

// The hard-class lower-bound instance: i_eps = min(floor((d-1)/(4 eps))+d-1,
// kw+d-2), J* a uniform (d-1)-subset of {1..i_eps}, mass 4 eps/(d-1) on the
// negative points of group i_eps, remainder on (d-1,1).
ExperimentResult hard_class_experiment(int d, int kw, double epsilon, int n,
                                       int trials, std::uint64_t seed,
                                       const Learner& learner,
                                       int threads = 0);

struct CouponResult {
    double empirical_median = 0;
    double empirical_mean = 0;
    double lemma_bound = 0;
    int trials = 0;
};

// Draws uniform from k coupons until k-m distinct are seen;
// lemma_bound = k (ln(k/m) - 1 - sqrt(2/m)).
CouponResult coupon_collector(int k, int m, int trials, std::uint64_t seed,
                              int threads = 0);

struct SvmBenchResult {
    double bound = 0;
    double exceed_fraction = 0;
    WilsonInterval wilson;
    int redraws = 0;
    int trials = 0;
};

// Random finite-support separable instances in the unit cube; trains the
// hard-margin solver on m draws and compares exact error against the stable
// compression bound with l = dimension + 1.
SvmBenchResult svm_bench(int dimension, int support_size, int m, double delta,
                         int trials, std::uint64_t seed,
                         const SvmConfig& svm_config = {}, int threads = 0);

// Named learners for the CLI and experiments.
Learner erm_lowest_index_learner();
Learner algorithm_a_learner(int k_p);
Learner algorithm_a_erm_learner(int k_p);
Learner oracle_learner(int target);

}  // namespace hellylab
