#pragma once

#include <vector>

#include "hellylab/compression.hpp"
#include "hellylab/concept_class.hpp"

namespace hellylab {

struct SvmConfig {
    double separability_tol = 1e-9;  // minimal certified margin to call separable
    double margin_rel_tol = 1e-7;    // support-vector membership, relative
    double gap_rel_tol = 1e-10;      // duality-gap stopping criterion, relative
    long max_iterations = 2000000;
};

// sign(<w,x> - v) with sign(0) = +1: the positive side is closed.
struct HalfspaceHypothesis {
    std::vector<double> weights;
    double threshold = 0.0;

    Label predict(const std::vector<double>& x) const;
};

struct SvmSolution {
    HalfspaceHypothesis hypothesis;  // unit-norm weights
    double margin = 0.0;             // geometric margin, certified lower bound
    std::vector<int> support_indices;
};

using Points = std::vector<std::vector<double>>;

// Strict separability with a closed positive side. Over a finite point set
// this coincides with realizability by sign(<w,x> - v), sign(0) = +1.
bool separable(const Points& points, const std::vector<Label>& labels,
               const SvmConfig& config = {});

// Maximum-margin separator via coordinate-wise dual ascent on the
// closest-pair-of-hulls problem, with an exact active-subset polish; the
// result is accepted only once the duality gap certifies optimality.
// Requires both labels present. Deterministic for a fixed input order.
SvmSolution hard_margin_svm(const Points& points,
                            const std::vector<Label>& labels,
                            const SvmConfig& config = {});

// Compression set of the SVM stable compression scheme: the smallest subset
// of support points whose own solution reproduces the full hyperplane,
// canonical under point-value order. Returns indices into the input, sorted.
std::vector<int> svm_compression_set(const Points& points,
                                     const std::vector<Label>& labels,
                                     const SvmConfig& config = {});

// The size-(n+1) stable compression scheme backed by the solver. kappa of a
// single-label sample degenerates to {} (all positive) or the largest
// negative point; rho maps those to the matching constant predictor.
Scheme<std::vector<double>> svm_scheme(int dimension,
                                       const SvmConfig& config = {});

}  // namespace hellylab
