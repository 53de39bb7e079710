// BLEU and chrF adapted to FSW input (token-level and character-level
// n-gram scoring).

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "swm/metrics.hpp"

namespace swm {

namespace {

constexpr int kBleuMaxOrder = 4;
constexpr double kBleuFloor = 0.1; // replaces a zero clipped match count
constexpr int kChrfMaxOrder = 6;
constexpr double kChrfBetaSquared = 4.0;

// Clipped matches of order-n token n-grams: sum over hypothesis n-gram
// types of min(count_hyp, count_ref).
std::size_t clipped_token_matches(const std::vector<std::string>& hyp,
                                  const std::vector<std::string>& ref, std::size_t n) {
    auto join = [](const std::vector<std::string>& tokens, std::size_t start, std::size_t n) {
        std::string key;
        for (std::size_t i = 0; i < n; ++i) {
            if (i != 0) key.push_back('\x1f');
            key += tokens[start + i];
        }
        return key;
    };

    std::unordered_map<std::string, std::size_t> ref_counts;
    if (ref.size() >= n)
        for (std::size_t i = 0; i + n <= ref.size(); ++i) ++ref_counts[join(ref, i, n)];

    std::unordered_map<std::string, std::size_t> hyp_counts;
    for (std::size_t i = 0; i + n <= hyp.size(); ++i) ++hyp_counts[join(hyp, i, n)];

    std::size_t matches = 0;
    for (const auto& [gram, count] : hyp_counts) {
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) matches += std::min(count, it->second);
    }
    return matches;
}

std::size_t clipped_char_matches(std::string_view hyp, std::string_view ref, std::size_t n) {
    std::unordered_map<std::string_view, std::size_t> ref_counts;
    for (std::size_t i = 0; i + n <= ref.size(); ++i) ++ref_counts[ref.substr(i, n)];

    std::unordered_map<std::string_view, std::size_t> hyp_counts;
    for (std::size_t i = 0; i + n <= hyp.size(); ++i) ++hyp_counts[hyp.substr(i, n)];

    std::size_t matches = 0;
    for (const auto& [gram, count] : hyp_counts) {
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) matches += std::min(count, it->second);
    }
    return matches;
}

} // namespace

double bleu_score(const Sign& hypothesis, const Sign& reference) {
    const std::vector<std::string> hyp = tokenize_for_bleu(hypothesis);
    const std::vector<std::string> ref = tokenize_for_bleu(reference);

    double log_sum = 0.0;
    int orders = 0;
    for (int n = 1; n <= kBleuMaxOrder; ++n) {
        if (hyp.size() < static_cast<std::size_t>(n)) continue; // no n-grams possible
        const std::size_t total = hyp.size() - n + 1;
        const std::size_t matches = clipped_token_matches(hyp, ref, n);
        const double correct = matches > 0 ? static_cast<double>(matches) : kBleuFloor;
        log_sum += std::log(correct / static_cast<double>(total));
        ++orders;
    }
    const double geometric_mean = std::exp(log_sum / orders);

    double brevity = 1.0;
    if (hyp.size() < ref.size())
        brevity = std::exp(1.0 - static_cast<double>(ref.size()) / static_cast<double>(hyp.size()));
    return brevity * geometric_mean;
}

double chrf_score(std::string_view hypothesis, std::string_view reference) {
    double precision_sum = 0.0;
    double recall_sum = 0.0;
    int orders = 0;
    for (std::size_t n = 1; n <= kChrfMaxOrder; ++n) {
        if (hypothesis.size() < n || reference.size() < n) continue;
        const std::size_t matches = clipped_char_matches(hypothesis, reference, n);
        precision_sum += static_cast<double>(matches) / static_cast<double>(hypothesis.size() - n + 1);
        recall_sum += static_cast<double>(matches) / static_cast<double>(reference.size() - n + 1);
        ++orders;
    }
    if (orders == 0) return 0.0;

    const double precision = precision_sum / orders;
    const double recall = recall_sum / orders;
    if (precision + recall == 0.0) return 0.0;
    return (1.0 + kChrfBetaSquared) * precision * recall /
           (kChrfBetaSquared * precision + recall);
}

} // namespace swm
