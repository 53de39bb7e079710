#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swm/assignment.hpp"
#include "swm/embedding.hpp"
#include "swm/fsw.hpp"

namespace swm {

/// Relative importance of the four symbol attributes. Must be non-negative
/// and sum to 1.
struct AttributeWeights {
    double shape = 0.5;
    double fill = 0.15;
    double rotation = 0.15;
    double position = 0.2;
};

/// Tunables of the symbol distance metric. The defaults below are the
/// library defaults, not calibrated constants; every experiment surface
/// accepts an override.
struct MetricParams {
    double alpha = 0.5;           // exponent of the distance normalization curve
    double beta = 2.0;            // length penalty severity
    double gamma = 1.0;           // exponent applied to the final score
    AttributeWeights weights;
    double position_scale = 250.0; // sign-space units mapped to distance 1

    /// Throws std::invalid_argument when any invariant is violated
    /// (non-positive exponents, weights not summing to 1, ...).
    void validate() const;
};

/// Reads a flat key=value parameter file (keys: alpha, beta, gamma,
/// position_scale, weights.shape, weights.fill, weights.rotation,
/// weights.position). Unknown keys are an error. Blank lines and lines
/// starting with '#' are ignored. The result is validated.
MetricParams load_params_file(const std::string& path);

struct ScoreReport {
    std::string metric;
    double score = 0.0;
    std::string hypothesis_id;
    std::string reference_id;
};

/// Sentence-level BLEU over tokenize_for_bleu token lists: clipped n-gram
/// precisions for n = 1..4 (orders with no possible n-grams are skipped),
/// an additive floor of 0.1 on zero match counts, geometric mean, brevity
/// penalty exp(min(0, 1 - r/c)).
double bleu_score(const Sign& hypothesis, const Sign& reference);

/// chrF on raw FSW strings: character n-grams n = 1..6, precision and recall
/// arithmetically averaged over the orders where both strings have n-grams,
/// F-score with beta = 2. Reported on [0,1].
double chrf_score(std::string_view hypothesis, std::string_view reference);

/// (1 + cos(a, b)) / 2. Throws DimensionMismatch or ZeroVector.
double cosine_score(const Embedding& a, const Embedding& b);

/// Weighted sum of the four attribute distances, each normalized to [0,1]:
///   shape:    0 same base, 0.5 same category, 1 otherwise
///   fill:     |fill_a - fill_b| / 5
///   rotation: circular 8-step distance / 4, +0.5 across mirror planes,
///             saturated at 1
///   position: min(euclidean / position_scale, 1)
double symbol_distance(const Symbol& a, const Symbol& b, const MetricParams& params);

/// The normalization curve d^alpha; fixes 0 and 1, monotone in d.
double normalize_distance(double distance, double alpha);

/// Length adjustment factor (|n_hyp - n_ref| / (max(n_hyp, n_ref) + 1))^beta.
double length_penalty(std::size_t n_hyp, std::size_t n_ref, double beta);

/// The symbol distance metric: optimal assignment over normalized symbol
/// distances, mean matched distance D, length penalty L, final score
/// ((1 - D)(1 - L))^gamma. Two empty signs score 1; when exactly one side
/// is empty D is taken as 0 and only the length penalty applies.
double symbol_distance_score(const Sign& hypothesis, const Sign& reference,
                             const MetricParams& params);

enum class MetricKind { Bleu, Chrf, Cosine, SymbolDistance };

std::string_view to_string(MetricKind kind);
std::optional<MetricKind> metric_from_string(std::string_view name);

using SignMetric = std::function<double(const Sign&, const Sign&)>;

/// Pairwise sign scorer for one of the sign-based metrics. Cosine operates
/// on embeddings, not signs, and is rejected here.
SignMetric make_sign_metric(MetricKind kind, const MetricParams& params);

/// Set-based score for multi-sign sequences: optimal matching over the
/// pairwise base-metric similarities, mean matched similarity scaled by
/// (1 - length_penalty(|hyp|, |ref|, beta)).
double sequence_score(const std::vector<Sign>& hypothesis, const std::vector<Sign>& reference,
                      const SignMetric& base_metric, const MetricParams& params);

/// All-pairs score matrix M[i][j] = metric(signs[i], signs[j]).
std::vector<std::vector<double>> score_matrix(const std::vector<Sign>& signs,
                                              const SignMetric& metric);

} // namespace swm
