// swm: scoring, score-distribution, and nearest-neighbor retrieval for
// Formal SignWriting corpora.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swm/corpus.hpp"
#include "swm/embedding.hpp"
#include "swm/metrics.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;  // unparseable FSW, corpus, or embedding data
constexpr int kExitConfig = 3; // bad flags, parameter files, metric selection

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string metric = "symbol_distance";
    std::string params_path;
    std::string embeddings_path;
    std::string output_path;
    std::string corpus_format = "lines";
    bool strict = true;
    std::uint64_t seed = 42;
    std::size_t sample = 0; // 0 = whole corpus
    std::size_t bins = 50;
    std::size_t k = 10;
    std::string arg1; // hypothesis / query / corpus, per subcommand
    std::string arg2; // reference / corpus
};

swm::MetricKind metric_kind(const Options& options) {
    auto kind = swm::metric_from_string(options.metric);
    if (!kind) throw ConfigError("unknown metric '" + options.metric + "'");
    return *kind;
}

swm::MetricParams load_params(const Options& options) {
    if (options.params_path.empty()) return swm::MetricParams{};
    try {
        return swm::load_params_file(options.params_path);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

swm::EmbeddingStore load_embeddings(const Options& options) {
    if (options.embeddings_path.empty())
        throw ConfigError("--metric cosine requires --embeddings FILE");
    try {
        return swm::EmbeddingStore::load(options.embeddings_path);
    } catch (const swm::EmbeddingError& e) {
        throw InputError(e.what());
    }
}

swm::Sign parse_arg(const std::string& text, const char* which) {
    try {
        return swm::parse_sign(text);
    } catch (const swm::ParseError& e) {
        throw InputError(std::string(which) + " '" + text + "': " + e.what());
    }
}

std::vector<swm::Sign> parse_sequence_arg(const std::string& text, const char* which) {
    std::vector<swm::Sign> signs;
    std::istringstream stream(text);
    std::string piece;
    while (stream >> piece) signs.push_back(parse_arg(piece, which));
    if (signs.empty()) throw InputError(std::string(which) + ": no signs given");
    return signs;
}

swm::CorpusFormat corpus_format(const Options& options) {
    if (options.corpus_format == "lines") return swm::CorpusFormat::Lines;
    if (options.corpus_format == "tsv") return swm::CorpusFormat::Tsv;
    throw ConfigError("unknown corpus format '" + options.corpus_format + "'");
}

std::vector<swm::CorpusEntry> load_corpus_arg(const Options& options, const std::string& path) {
    std::vector<std::string> warnings;
    try {
        auto entries = swm::load_corpus(path, corpus_format(options),
                                        options.strict ? swm::LoadMode::Strict
                                                       : swm::LoadMode::Lenient,
                                        &warnings);
        for (const std::string& warning : warnings)
            std::cerr << "warning: " << path << ": " << warning << " (skipped)\n";
        return entries;
    } catch (const swm::CorpusError& e) {
        throw InputError(path + ": " + std::string(e.what()));
    }
}

// Pairwise scorer over corpus entries for any of the four metrics. Cosine
// resolves entry ids against the embedding file.
swm::EntryMetric make_entry_metric(const Options& options, const swm::MetricParams& params,
                                   std::optional<swm::EmbeddingStore>& store) {
    swm::MetricKind kind = metric_kind(options);
    if (kind == swm::MetricKind::Cosine) {
        store = load_embeddings(options);
        const swm::EmbeddingStore* embeddings = &*store;
        return [embeddings](const swm::CorpusEntry& a, const swm::CorpusEntry& b) {
            return swm::cosine_score(embeddings->at(a.id), embeddings->at(b.id));
        };
    }
    swm::SignMetric sign_metric = swm::make_sign_metric(kind, params);
    return [sign_metric](const swm::CorpusEntry& a, const swm::CorpusEntry& b) {
        return sign_metric(a.sign, b.sign);
    };
}

void write_output(const Options& options, const std::string& content) {
    if (options.output_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(options.output_path, std::ios::binary);
    if (!out) throw InputError("cannot open output file: " + options.output_path);
    out << content;
}

std::string format_score_line(const swm::ScoreReport& report) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6f", report.score);
    return report.metric + "\t" + buffer + "\n";
}

void run_score(const Options& options) {
    const swm::MetricParams params = load_params(options);
    const swm::MetricKind kind = metric_kind(options);
    const std::string& hyp = options.arg1;
    const std::string& ref = options.arg2;

    swm::ScoreReport report{options.metric, 0.0, hyp, ref};
    if (kind == swm::MetricKind::Cosine) {
        swm::EmbeddingStore store = load_embeddings(options);
        try {
            report.score = swm::cosine_score(store.at(hyp), store.at(ref));
        } catch (const std::runtime_error& e) {
            throw InputError(e.what());
        }
    } else {
        swm::SignMetric metric = swm::make_sign_metric(kind, params);
        report.score = metric(parse_arg(hyp, "hypothesis"), parse_arg(ref, "reference"));
    }
    write_output(options, format_score_line(report));
}

void run_sequence_score(const Options& options) {
    const swm::MetricParams params = load_params(options);
    const swm::MetricKind kind = metric_kind(options);
    if (kind == swm::MetricKind::Cosine)
        throw ConfigError("sequence-score supports the sign metrics (bleu, chrf, symbol_distance)");

    const std::vector<swm::Sign> hyp = parse_sequence_arg(options.arg1, "hypothesis");
    const std::vector<swm::Sign> ref = parse_sequence_arg(options.arg2, "reference");
    swm::ScoreReport report{options.metric, 0.0, options.arg1, options.arg2};
    report.score = swm::sequence_score(hyp, ref, swm::make_sign_metric(kind, params), params);
    write_output(options, format_score_line(report));
}

void run_distribution(const Options& options) {
    const swm::MetricParams params = load_params(options);
    std::vector<swm::CorpusEntry> corpus = load_corpus_arg(options, options.arg1);

    std::vector<swm::CorpusEntry> sample;
    if (options.sample == 0) {
        sample = std::move(corpus);
    } else {
        try {
            sample = swm::sample_signs(corpus, options.sample, options.seed);
        } catch (const swm::SampleTooLarge& e) {
            throw InputError(e.what());
        }
    }

    std::optional<swm::EmbeddingStore> store;
    swm::EntryMetric metric = make_entry_metric(options, params, store);
    try {
        swm::Histogram histogram = swm::score_distribution(sample, metric, options.bins);
        write_output(options, swm::histogram_to_csv(histogram));
    } catch (const swm::EmbeddingError& e) {
        throw InputError(e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

void run_nearest(const Options& options) {
    const swm::MetricParams params = load_params(options);
    const swm::MetricKind kind = metric_kind(options);
    std::vector<swm::CorpusEntry> corpus = load_corpus_arg(options, options.arg2);

    swm::CorpusEntry query;
    if (kind == swm::MetricKind::Cosine) {
        // No renderer here, so a cosine query is an embedding id; matching
        // corpus ids are excluded instead of matching serializations.
        query.id = options.arg1;
    } else {
        query.sign = parse_arg(options.arg1, "query");
        query.raw = swm::serialize_sign(query.sign);
    }

    std::optional<swm::EmbeddingStore> store;
    swm::EntryMetric metric = make_entry_metric(options, params, store);
    try {
        swm::NeighborList neighbors = swm::nearest_neighbors(query, corpus, metric, options.k);
        write_output(options, swm::neighbors_to_json(neighbors));
    } catch (const swm::EmbeddingError& e) {
        throw InputError(e.what());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Similarity scoring for Formal SignWriting (FSW) signs"};
    app.require_subcommand(1);

    Options options;
    auto add_common = [&options](CLI::App* cmd, bool with_params = true) {
        cmd->add_option("--metric", options.metric,
                        "Metric: bleu, chrf, cosine, symbol_distance")
            ->required();
        if (with_params)
            cmd->add_option("--params", options.params_path, "Metric parameter file (key=value)");
        cmd->add_option("--embeddings", options.embeddings_path,
                        "Embedding file (id<TAB>v1,v2,...) for the cosine metric");
        cmd->add_option("--output", options.output_path, "Write output here instead of stdout");
    };
    auto add_corpus_flags = [&options](CLI::App* cmd) {
        cmd->add_option("--format", options.corpus_format, "Corpus file format: lines or tsv");
        cmd->add_flag("--strict,!--lenient", options.strict,
                      "Abort on malformed corpus lines (default) / skip and report them");
    };

    CLI::App* score = app.add_subcommand("score", "Score a hypothesis sign against a reference");
    score->add_option("hypothesis", options.arg1, "FSW string (or embedding id for cosine)")
        ->required();
    score->add_option("reference", options.arg2, "FSW string (or embedding id for cosine)")
        ->required();
    add_common(score);

    CLI::App* sequence =
        app.add_subcommand("sequence-score", "Score multi-sign sequences as sets");
    sequence->add_option("hypothesis", options.arg1, "Whitespace-separated FSW signs")->required();
    sequence->add_option("reference", options.arg2, "Whitespace-separated FSW signs")->required();
    add_common(sequence);

    CLI::App* distribution =
        app.add_subcommand("distribution", "Histogram of any-to-any scores over a corpus sample");
    distribution->add_option("corpus", options.arg1, "Corpus file")->required();
    add_common(distribution);
    add_corpus_flags(distribution);
    distribution->add_option("--sample", options.sample, "Sample size (0 = whole corpus)");
    distribution->add_option("--seed", options.seed, "Sampling seed");
    distribution->add_option("--bins", options.bins, "Histogram bin count");

    CLI::App* nearest = app.add_subcommand("nearest", "Top-k most similar corpus entries");
    nearest->add_option("query", options.arg1, "FSW string (or embedding id for cosine)")
        ->required();
    nearest->add_option("corpus", options.arg2, "Corpus file")->required();
    add_common(nearest);
    add_corpus_flags(nearest);
    nearest->add_option("--k", options.k, "Number of neighbors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    CLI::App* command = app.get_subcommands().front();
    try {
        if (command == score) run_score(options);
        else if (command == sequence) run_sequence_score(options);
        else if (command == distribution) run_distribution(options);
        else run_nearest(options);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
