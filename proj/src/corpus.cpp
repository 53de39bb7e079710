#include "swm/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <thread>
#include <unordered_set>

#include <json.hpp>

namespace swm {

namespace {

std::string format_fixed(double value, int decimals) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
    return buffer;
}

// Runs fn(i) for i in [0, n) across `threads` workers on contiguous chunks.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (n == 0) return;
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        workers.emplace_back([begin, end, &fn] {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        });
    }
    for (std::thread& worker : workers) worker.join();
}

} // namespace

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    if (const char* env = std::getenv("SWM_THREADS")) {
        long value = std::strtol(env, nullptr, 10);
        if (value > 0) return static_cast<unsigned>(value);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

std::vector<CorpusEntry> load_corpus(const std::string& path, CorpusFormat format, LoadMode mode,
                                     std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw CorpusError(CorpusErrorKind::Io, 0, "cannot open corpus file: " + path);

    std::vector<CorpusEntry> entries;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;

        std::string id;
        std::string fsw;
        if (format == CorpusFormat::Lines) {
            id = "L" + std::to_string(line_no);
            fsw = line;
        } else {
            std::size_t tab = line.find('\t');
            if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
                std::string message = "line " + std::to_string(line_no) + ": expected id<TAB>fsw";
                if (mode == LoadMode::Strict)
                    throw CorpusError(CorpusErrorKind::Malformed, line_no, message);
                if (warnings) warnings->push_back(message);
                continue;
            }
            id = line.substr(0, tab);
            fsw = line.substr(tab + 1);
        }

        CorpusEntry entry;
        entry.id = std::move(id);
        try {
            entry.sign = parse_sign(fsw);
        } catch (const ParseError& e) {
            std::string message = "line " + std::to_string(line_no) + ": " + e.what();
            if (mode == LoadMode::Strict)
                throw CorpusError(CorpusErrorKind::Malformed, line_no, message);
            if (warnings) warnings->push_back(message);
            continue;
        }
        entry.raw = serialize_sign(entry.sign);

        if (!seen_ids.insert(entry.id).second)
            throw CorpusError(CorpusErrorKind::DuplicateId, line_no,
                              "line " + std::to_string(line_no) + ": duplicate id '" + entry.id +
                                  "'");
        entries.push_back(std::move(entry));
    }
    return entries;
}

SampleRng::SampleRng(std::uint64_t seed) {
    // One splitmix64 step spreads small seeds over the whole state space.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    state_ = z ^ (z >> 31);
    if (state_ == 0) state_ = 0x9e3779b97f4a7c15ull; // xorshift state must be non-zero
}

std::uint64_t SampleRng::next() {
    std::uint64_t s = state_;
    s ^= s >> 12;
    s ^= s << 25;
    s ^= s >> 27;
    state_ = s;
    return s * 0x2545f4914f6cdd1dull;
}

std::uint64_t SampleRng::below(std::uint64_t bound) {
    return next() % bound;
}

std::vector<CorpusEntry> sample_signs(const std::vector<CorpusEntry>& corpus, std::size_t n,
                                      std::uint64_t seed) {
    if (n > corpus.size())
        throw SampleTooLarge("sample size " + std::to_string(n) + " exceeds corpus size " +
                             std::to_string(corpus.size()));

    SampleRng rng(seed);
    std::vector<std::size_t> indices(corpus.size());
    for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.below(indices.size() - i));
        std::swap(indices[i], indices[j]);
    }

    std::vector<CorpusEntry> sample;
    sample.reserve(n);
    for (std::size_t i = 0; i < n; ++i) sample.push_back(corpus[indices[i]]);
    return sample;
}

Histogram score_distribution(const std::vector<CorpusEntry>& sample, const EntryMetric& metric,
                             std::size_t bins, unsigned threads) {
    if (sample.size() < 2) throw std::invalid_argument("score_distribution needs >= 2 entries");
    if (bins < 2) throw std::invalid_argument("score_distribution needs >= 2 bins");

    const std::size_t n = sample.size();
    std::vector<double> scores(n * (n - 1));
    parallel_for(n, resolve_threads(threads), [&](std::size_t i) {
        std::size_t out = i * (n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            scores[out++] = metric(sample[i], sample[j]);
        }
    });

    Histogram histogram;
    histogram.bin_edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b)
        histogram.bin_edges[b] = static_cast<double>(b) / static_cast<double>(bins);
    histogram.counts.assign(bins, 0);
    for (double score : scores) {
        auto bin = static_cast<std::size_t>(score * static_cast<double>(bins));
        if (bin >= bins) bin = bins - 1; // the last bin is closed on the right
        ++histogram.counts[bin];
    }
    histogram.total = scores.size();
    return histogram;
}

NeighborList nearest_neighbors(const CorpusEntry& query, const std::vector<CorpusEntry>& corpus,
                               const EntryMetric& metric, std::size_t k, unsigned threads) {
    if (k == 0) throw std::invalid_argument("nearest_neighbors needs k >= 1");

    const std::size_t n = corpus.size();
    std::vector<char> excluded(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const CorpusEntry& entry = corpus[i];
        if (!query.raw.empty() && entry.raw == query.raw) excluded[i] = 1;
        if (!query.id.empty() && entry.id == query.id) excluded[i] = 1;
    }

    std::vector<double> scores(n, 0.0);
    parallel_for(n, resolve_threads(threads), [&](std::size_t i) {
        if (!excluded[i]) scores[i] = metric(query, corpus[i]);
    });

    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        if (!excluded[i]) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return corpus[a].id < corpus[b].id;
    });
    if (order.size() > k) order.resize(k);

    NeighborList result;
    result.query_id = query.id;
    result.k = k;
    result.entries.reserve(order.size());
    for (std::size_t i : order) result.entries.push_back({corpus[i].id, scores[i]});
    return result;
}

std::string histogram_to_csv(const Histogram& histogram) {
    std::string out = "bin_start,bin_end,count\n";
    for (std::size_t b = 0; b < histogram.counts.size(); ++b) {
        out += format_fixed(histogram.bin_edges[b], 6);
        out.push_back(',');
        out += format_fixed(histogram.bin_edges[b + 1], 6);
        out.push_back(',');
        out += std::to_string(histogram.counts[b]);
        out.push_back('\n');
    }
    return out;
}

std::string neighbors_to_json(const NeighborList& neighbors) {
    if (neighbors.entries.empty()) return "[]\n";
    std::string out = "[\n";
    for (std::size_t i = 0; i < neighbors.entries.size(); ++i) {
        const Neighbor& neighbor = neighbors.entries[i];
        out += "  {\"id\": ";
        out += nlohmann::json(neighbor.id).dump(); // quoting and escaping
        out += ", \"score\": ";
        out += format_fixed(neighbor.score, 6);
        out += i + 1 < neighbors.entries.size() ? "},\n" : "}\n";
    }
    out += "]\n";
    return out;
}

} // namespace swm
