#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "swm/fsw.hpp"

namespace swm {

struct CorpusEntry {
    std::string id;
    Sign sign;
    std::string raw; // canonical serialization of `sign`
};

enum class CorpusErrorKind { Io, Malformed, DuplicateId };

class CorpusError : public std::runtime_error {
public:
    CorpusError(CorpusErrorKind kind, std::size_t line, const std::string& message)
        : std::runtime_error(message), kind_(kind), line_(line) {}

    CorpusErrorKind kind() const { return kind_; }
    /// 1-based line number; 0 when the whole file is the problem.
    std::size_t line() const { return line_; }

private:
    CorpusErrorKind kind_;
    std::size_t line_;
};

class SampleTooLarge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class CorpusFormat {
    Lines, // one FSW string per line, ids L1, L2, ...
    Tsv,   // id<TAB>fsw
};

enum class LoadMode {
    Strict,  // malformed lines abort the load
    Lenient, // malformed lines are skipped and reported
};

/// Loads a corpus file. Blank lines are ignored (they still count for line
/// numbering). In lenient mode each skipped line is described in *warnings
/// (when given); duplicate ids are an error in both modes.
std::vector<CorpusEntry> load_corpus(const std::string& path, CorpusFormat format,
                                     LoadMode mode = LoadMode::Strict,
                                     std::vector<std::string>* warnings = nullptr);

/// xorshift64* seeded through one splitmix64 step. The constants are part of
/// the file-format-level contract so ports reproduce the same samples:
///   splitmix64:  increment 0x9e3779b97f4a7c15,
///                mixers 0xbf58476d1ce4e5b9 and 0x94d049bb133111eb
///   xorshift64*: shifts 12, 25, 27, multiplier 0x2545f4914f6cdd1d
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed);

    std::uint64_t next();
    /// next() % bound; the modulo bias is negligible at corpus scale.
    std::uint64_t below(std::uint64_t bound);

private:
    std::uint64_t state_;
};

/// Uniform sample of n entries without replacement (partial Fisher-Yates in
/// index space; the sample order is the shuffled order). Deterministic for a
/// given seed. Throws SampleTooLarge when n exceeds the corpus size.
std::vector<CorpusEntry> sample_signs(const std::vector<CorpusEntry>& corpus, std::size_t n,
                                      std::uint64_t seed);

struct Histogram {
    std::vector<double> bin_edges;       // bins + 1 ascending edges over [0, 1]
    std::vector<std::uint64_t> counts;   // one per bin; last bin closed on the right
    std::uint64_t total = 0;
};

using EntryMetric = std::function<double(const CorpusEntry&, const CorpusEntry&)>;

/// Histogram of metric scores over all ordered pairs (i, j), i != j, of the
/// sample. Cells may be scored in parallel; the result does not depend on
/// the thread count.
Histogram score_distribution(const std::vector<CorpusEntry>& sample, const EntryMetric& metric,
                             std::size_t bins, unsigned threads = 0);

struct Neighbor {
    std::string id;
    double score = 0.0;
};

struct NeighborList {
    std::string query_id;
    std::vector<Neighbor> entries; // descending score, then ascending id
    std::size_t k = 0;
};

/// Exhaustive top-k scan of the corpus. Entries serializing identically to
/// the query (query.raw, when non-empty) and entries sharing the query's id
/// are excluded.
NeighborList nearest_neighbors(const CorpusEntry& query, const std::vector<CorpusEntry>& corpus,
                               const EntryMetric& metric, std::size_t k, unsigned threads = 0);

/// CSV with header `bin_start,bin_end,count`.
std::string histogram_to_csv(const Histogram& histogram);

/// JSON array of {id, score} objects, scores fixed at 6 decimals.
std::string neighbors_to_json(const NeighborList& neighbors);

/// Worker count for parallel scans: `requested` if non-zero, else the
/// SWM_THREADS environment variable, else the hardware concurrency.
unsigned resolve_threads(unsigned requested);

} // namespace swm
