#include "swm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace swm {

namespace {

double parse_number(const std::string& text, const std::string& key) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double value = std::strtod(begin, &end);
    if (end == begin || end != begin + text.size())
        throw std::invalid_argument("parameter '" + key + "' is not a number: '" + text + "'");
    return value;
}

std::string trim(const std::string& s) {
    std::size_t first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    std::size_t last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double shape_distance(const SymbolKey& a, const SymbolKey& b) {
    if (a.base == b.base) return 0.0;
    return category_of(a) == category_of(b) ? 0.5 : 1.0;
}

double fill_distance(const SymbolKey& a, const SymbolKey& b) {
    return std::abs(a.fill - b.fill) / 5.0;
}

double rotation_distance(const SymbolKey& a, const SymbolKey& b) {
    int delta = std::abs(a.rotation - b.rotation) % 8;
    double circular = std::min(delta, 8 - delta) / 4.0;
    bool mirrored = (a.rotation >= 8) != (b.rotation >= 8);
    return std::min(1.0, circular + (mirrored ? 0.5 : 0.0));
}

double position_distance(const Symbol& a, const Symbol& b, double scale) {
    double dx = a.x - b.x;
    double dy = a.y - b.y;
    return std::min(std::sqrt(dx * dx + dy * dy) / scale, 1.0);
}

// Signs are multisets; sorting the symbols first makes the score a function
// of the multiset alone, bit for bit.
std::vector<Symbol> sorted_symbols(const Sign& sign) {
    std::vector<Symbol> symbols = sign.symbols;
    std::sort(symbols.begin(), symbols.end(), [](const Symbol& a, const Symbol& b) {
        return std::tie(a.key.base, a.key.fill, a.key.rotation, a.x, a.y) <
               std::tie(b.key.base, b.key.fill, b.key.rotation, b.x, b.y);
    });
    return symbols;
}

} // namespace

void MetricParams::validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (!(position_scale > 0.0)) throw std::invalid_argument("position_scale must be positive");
    const double w[] = {weights.shape, weights.fill, weights.rotation, weights.position};
    double sum = 0.0;
    for (double x : w) {
        if (!(x >= 0.0)) throw std::invalid_argument("attribute weights must be non-negative");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("attribute weights must sum to 1");
}

MetricParams load_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open parameter file: " + path);

    MetricParams params;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("parameter file line " + std::to_string(line_no) +
                                        ": expected key=value");
        std::string key = trim(stripped.substr(0, eq));
        double value = parse_number(trim(stripped.substr(eq + 1)), key);

        if (key == "alpha") params.alpha = value;
        else if (key == "beta") params.beta = value;
        else if (key == "gamma") params.gamma = value;
        else if (key == "position_scale") params.position_scale = value;
        else if (key == "weights.shape") params.weights.shape = value;
        else if (key == "weights.fill") params.weights.fill = value;
        else if (key == "weights.rotation") params.weights.rotation = value;
        else if (key == "weights.position") params.weights.position = value;
        else
            throw std::invalid_argument("parameter file line " + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
    }
    params.validate();
    return params;
}

double cosine_score(const Embedding& a, const Embedding& b) {
    if (a.values.size() != b.values.size())
        throw DimensionMismatch("embedding dimensions differ: " + std::to_string(a.values.size()) +
                                " vs " + std::to_string(b.values.size()));
    if (a.values.empty()) throw DimensionMismatch("empty embeddings");

    double dot = 0.0, norm_a = 0.0, norm_b = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        dot += a.values[i] * b.values[i];
        norm_a += a.values[i] * a.values[i];
        norm_b += b.values[i] * b.values[i];
    }
    if (norm_a == 0.0 || norm_b == 0.0) throw ZeroVector("cosine of a zero vector");

    // sqrt(norm_a * norm_b) rather than sqrt(norm_a) * sqrt(norm_b): the
    // single rounding keeps cos(x, x) == 1 exactly.
    double cosine = dot / std::sqrt(norm_a * norm_b);
    cosine = std::clamp(cosine, -1.0, 1.0);
    return (1.0 + cosine) / 2.0;
}

double symbol_distance(const Symbol& a, const Symbol& b, const MetricParams& params) {
    const AttributeWeights& w = params.weights;
    return w.shape * shape_distance(a.key, b.key) +
           w.fill * fill_distance(a.key, b.key) +
           w.rotation * rotation_distance(a.key, b.key) +
           w.position * position_distance(a, b, params.position_scale);
}

double normalize_distance(double distance, double alpha) {
    return std::pow(distance, alpha);
}

double length_penalty(std::size_t n_hyp, std::size_t n_ref, double beta) {
    const double larger = static_cast<double>(std::max(n_hyp, n_ref));
    const double diff = n_hyp > n_ref ? static_cast<double>(n_hyp - n_ref)
                                      : static_cast<double>(n_ref - n_hyp);
    return std::pow(diff / (larger + 1.0), beta);
}

double symbol_distance_score(const Sign& hypothesis, const Sign& reference,
                             const MetricParams& params) {
    const std::vector<Symbol> hyp = sorted_symbols(hypothesis);
    const std::vector<Symbol> ref = sorted_symbols(reference);

    if (hyp.empty() && ref.empty()) return 1.0;

    double mean_distance = 0.0;
    if (!hyp.empty() && !ref.empty()) {
        CostMatrix cost(hyp.size(), ref.size());
        for (std::size_t i = 0; i < hyp.size(); ++i)
            for (std::size_t j = 0; j < ref.size(); ++j)
                cost.at(i, j) = normalize_distance(symbol_distance(hyp[i], ref[j], params),
                                                   params.alpha);
        AssignmentResult matching = solve_assignment(cost);
        mean_distance = matching.total_cost / static_cast<double>(matching.pairs.size());
    }

    double penalty = length_penalty(hyp.size(), ref.size(), params.beta);
    return std::pow((1.0 - mean_distance) * (1.0 - penalty), params.gamma);
}

std::string_view to_string(MetricKind kind) {
    switch (kind) {
        case MetricKind::Bleu: return "bleu";
        case MetricKind::Chrf: return "chrf";
        case MetricKind::Cosine: return "cosine";
        case MetricKind::SymbolDistance: return "symbol_distance";
    }
    return "?";
}

std::optional<MetricKind> metric_from_string(std::string_view name) {
    if (name == "bleu") return MetricKind::Bleu;
    if (name == "chrf") return MetricKind::Chrf;
    if (name == "cosine") return MetricKind::Cosine;
    if (name == "symbol_distance") return MetricKind::SymbolDistance;
    return std::nullopt;
}

SignMetric make_sign_metric(MetricKind kind, const MetricParams& params) {
    switch (kind) {
        case MetricKind::Bleu:
            return [](const Sign& h, const Sign& r) { return bleu_score(h, r); };
        case MetricKind::Chrf:
            return [](const Sign& h, const Sign& r) {
                return chrf_score(serialize_sign(h), serialize_sign(r));
            };
        case MetricKind::SymbolDistance:
            return [params](const Sign& h, const Sign& r) {
                return symbol_distance_score(h, r, params);
            };
        case MetricKind::Cosine:
            break;
    }
    throw std::invalid_argument("cosine scores embeddings, not signs");
}

double sequence_score(const std::vector<Sign>& hypothesis, const std::vector<Sign>& reference,
                      const SignMetric& base_metric, const MetricParams& params) {
    if (hypothesis.empty() || reference.empty())
        throw std::invalid_argument("sequence_score needs at least one sign per side");

    CostMatrix cost(hypothesis.size(), reference.size());
    std::vector<std::vector<double>> similarity(hypothesis.size(),
                                                std::vector<double>(reference.size()));
    for (std::size_t i = 0; i < hypothesis.size(); ++i) {
        for (std::size_t j = 0; j < reference.size(); ++j) {
            double s = base_metric(hypothesis[i], reference[j]);
            similarity[i][j] = s;
            cost.at(i, j) = 1.0 - s;
        }
    }

    AssignmentResult matching = solve_assignment(cost);
    double mean_similarity = 0.0;
    for (const auto& [i, j] : matching.pairs) mean_similarity += similarity[i][j];
    mean_similarity /= static_cast<double>(matching.pairs.size());

    return mean_similarity *
           (1.0 - length_penalty(hypothesis.size(), reference.size(), params.beta));
}

std::vector<std::vector<double>> score_matrix(const std::vector<Sign>& signs,
                                              const SignMetric& metric) {
    const std::size_t n = signs.size();
    std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) matrix[i][j] = metric(signs[i], signs[j]);
    return matrix;
}

} // namespace swm
