// Acceptance suite: prints one pass/fail line per criterion and exits with
// the number of failed criteria.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/brute_force.hpp"
#include "support/corpus_gen.hpp"
#include "support/fsw_gen.hpp"
#include "support/reference_metrics.hpp"
#include "support/stats.hpp"
#include "swm/corpus.hpp"
#include "swm/metrics.hpp"

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool condition, const std::string& message) {
        if (!condition) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += message;
        }
    }
    void note(const std::string& message) {
        if (!detail.empty()) detail += "; ";
        detail += message;
    }
};

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("swm_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path write_lines(const std::string& name, const std::vector<std::string>& lines) {
    fs::path path = scratch_dir() / name;
    std::ofstream out(path, std::ios::binary);
    for (const std::string& line : lines) out << line << '\n';
    return path;
}

std::string run_cli_capture(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    fs::path out_path = scratch_dir() / ("cli_out" + std::to_string(counter++));
    std::string command = env.empty() ? "" : env + " ";
    command += std::string("'") + SWM_CLI_PATH + "' " + args + " > '" + out_path.string() +
               "' 2> /dev/null";
    int status = std::system(command.c_str());
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return "<cli failed>";
    std::ifstream in(out_path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// ---- criterion 1: parser round-trip ---------------------------------------

Check criterion_round_trip() {
    Check check;
    std::mt19937_64 rng(0xfad5);
    auto start = Clock::now();
    int failures = 0;
    for (int i = 0; i < 10000; ++i) {
        swm::Sign sign = swm::testing::random_sign(rng);
        std::string canonical = swm::serialize_sign(sign);
        std::string input = (i % 2 == 0) ? canonical
                                         : swm::testing::mangle_hex_case(canonical, rng);
        if (swm::serialize_sign(swm::parse_sign(input)) != canonical) ++failures;
    }
    double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    check.expect(failures == 0, std::to_string(failures) + " round-trip failures");
    check.expect(seconds < 5.0, "took " + std::to_string(seconds) + "s (budget 5s)");
    check.note("10000 strings, " + std::to_string(seconds).substr(0, 5) + "s");
    return check;
}

// ---- criterion 2: assignment vs. brute force -------------------------------

Check criterion_assignment_oracle() {
    Check check;
    std::mt19937_64 rng(0xa551);
    std::uniform_real_distribution<double> cost(0.0, 1.0);
    auto start = Clock::now();
    int mismatches = 0;
    for (int round = 0; round < 1000; ++round) {
        std::size_t m = 1 + rng() % 6;
        std::size_t n = 1 + rng() % 6;
        swm::CostMatrix matrix(m, n);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < n; ++c) matrix.at(r, c) = cost(rng);
        swm::AssignmentResult got = swm::solve_assignment(matrix);
        auto expected = swm::testing::brute_force_assignment(matrix);
        if (got.total_cost != expected.total_cost) ++mismatches;
    }
    double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    check.expect(mismatches == 0, std::to_string(mismatches) + " cost mismatches");
    check.expect(seconds < 10.0, "took " + std::to_string(seconds) + "s (budget 10s)");
    check.note("1000 matrices, " + std::to_string(seconds).substr(0, 5) + "s");
    return check;
}

// ---- criterion 3: metric reference equivalence -----------------------------

Check criterion_reference_equivalence() {
    Check check;
    std::mt19937_64 rng(0xb1e0);
    double worst_bleu = 0.0, worst_chrf = 0.0;
    for (int i = 0; i < 200; ++i) {
        swm::Sign hyp = (i % 2 == 0) ? swm::testing::realistic_sign(rng)
                                     : swm::testing::random_sign(rng);
        swm::Sign ref;
        switch (i % 4) {
            case 0: ref = hyp; break;
            case 1: ref = swm::testing::perturbed_variant(hyp, rng); break;
            default: ref = swm::testing::realistic_sign(rng); break;
        }
        double bleu_delta = std::abs(
            swm::bleu_score(hyp, ref) -
            swm::testing::reference_bleu(swm::tokenize_for_bleu(hyp), swm::tokenize_for_bleu(ref)));
        double chrf_delta = std::abs(
            swm::chrf_score(swm::serialize_sign(hyp), swm::serialize_sign(ref)) -
            swm::testing::reference_chrf(swm::serialize_sign(hyp), swm::serialize_sign(ref)));
        worst_bleu = std::max(worst_bleu, bleu_delta);
        worst_chrf = std::max(worst_chrf, chrf_delta);
    }
    check.expect(worst_bleu <= 1e-4, "bleu deviates by " + std::to_string(worst_bleu));
    check.expect(worst_chrf <= 1e-4, "chrf deviates by " + std::to_string(worst_chrf));
    check.note("200 pairs, max |dBLEU|=" + std::to_string(worst_bleu) +
               ", max |dchrF|=" + std::to_string(worst_chrf));
    return check;
}

// ---- criterion 4: invariant suite ------------------------------------------

Check criterion_invariants() {
    Check check;
    std::mt19937_64 rng(0x1457);
    swm::MetricParams params;
    swm::MetricParams gamma2;
    gamma2.gamma = 2.0;
    std::normal_distribution<double> normal;

    int range_violations = 0, identity_violations = 0, symmetry_violations = 0;
    int permutation_violations = 0, penalty_violations = 0, gamma_violations = 0;

    for (int i = 0; i < 1000; ++i) {
        swm::Sign a = swm::testing::random_sign(rng);
        swm::Sign b = (i % 5 == 0) ? a : swm::testing::random_sign(rng);

        // Range over all four metrics.
        double scores[4];
        scores[0] = swm::bleu_score(a, b);
        scores[1] = swm::chrf_score(swm::serialize_sign(a), swm::serialize_sign(b));
        scores[2] = swm::symbol_distance_score(a, b, params);
        swm::Embedding ea{"a", {}}, eb{"b", {}};
        for (int d = 0; d < 6; ++d) {
            ea.values.push_back(normal(rng));
            eb.values.push_back(normal(rng));
        }
        scores[3] = swm::cosine_score(ea, eb);
        for (double s : scores)
            if (!(s >= 0.0 && s <= 1.0)) ++range_violations;

        // Identity.
        if (swm::bleu_score(a, a) != 1.0) ++identity_violations;
        if (swm::chrf_score(swm::serialize_sign(a), swm::serialize_sign(a)) != 1.0)
            ++identity_violations;
        if (swm::symbol_distance_score(a, a, params) != 1.0) ++identity_violations;
        if (swm::cosine_score(ea, ea) != 1.0) ++identity_violations;

        // Symbol-distance symmetry within 1e-12.
        double ab = scores[2];
        double ba = swm::symbol_distance_score(b, a, params);
        if (std::abs(ab - ba) > 1e-12) ++symmetry_violations;

        // Permutation invariance, bit-exact.
        swm::Sign shuffled = a;
        std::shuffle(shuffled.symbols.begin(), shuffled.symbols.end(), rng);
        if (swm::symbol_distance_score(shuffled, b, params) != ab) ++permutation_violations;

        // Length penalty bounds.
        std::size_t nh = rng() % 30, nr = rng() % 30;
        if (nh + nr > 0) {
            double beta = 0.25 + static_cast<double>(rng() % 16) / 4.0;
            double penalty = swm::length_penalty(nh, nr, beta);
            if (!(penalty >= 0.0 && penalty < 1.0)) ++penalty_violations;
            if ((penalty == 0.0) != (nh == nr)) ++penalty_violations;
        }

        // Gamma never reorders pairs.
        swm::Sign c = swm::testing::random_sign(rng);
        double s1b = ab, s1c = swm::symbol_distance_score(a, c, params);
        double s2b = swm::symbol_distance_score(a, b, gamma2);
        double s2c = swm::symbol_distance_score(a, c, gamma2);
        int order1 = s1b < s1c ? -1 : (s1b > s1c ? 1 : 0);
        int order2 = s2b < s2c ? -1 : (s2b > s2c ? 1 : 0);
        if (order1 != order2) ++gamma_violations;
    }

    check.expect(range_violations == 0, std::to_string(range_violations) + " range violations");
    check.expect(identity_violations == 0,
                 std::to_string(identity_violations) + " identity violations");
    check.expect(symmetry_violations == 0,
                 std::to_string(symmetry_violations) + " symmetry violations");
    check.expect(permutation_violations == 0,
                 std::to_string(permutation_violations) + " permutation violations");
    check.expect(penalty_violations == 0,
                 std::to_string(penalty_violations) + " length-penalty violations");
    check.expect(gamma_violations == 0, std::to_string(gamma_violations) + " gamma reorderings");
    check.note("1000 cases per invariant");
    return check;
}

// ---- criterion 5: distribution shapes --------------------------------------

Check criterion_distribution_shapes() {
    Check check;
    std::mt19937_64 rng(0xd15c);
    auto corpus_path = write_lines("distribution_corpus.txt",
                                   swm::testing::signbank_like_corpus(rng, 400, 0.35));
    auto corpus = swm::load_corpus(corpus_path.string(), swm::CorpusFormat::Lines);
    auto sample = swm::sample_signs(corpus, 200, 42);

    // Deterministic synthetic embeddings so the cosine pass runs at the same
    // scale as the other metrics.
    swm::EmbeddingStore embeddings;
    {
        std::mt19937_64 embed_rng(7);
        std::normal_distribution<double> normal;
        for (const auto& entry : sample) {
            swm::Embedding e{entry.id, {}};
            for (int d = 0; d < 16; ++d) e.values.push_back(normal(embed_rng));
            embeddings.add(std::move(e));
        }
    }

    swm::MetricParams params;
    auto start = Clock::now();
    std::vector<double> bleu, chrf, distance, cosine;
    const std::size_t n = sample.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            bleu.push_back(swm::bleu_score(sample[i].sign, sample[j].sign));
            chrf.push_back(swm::chrf_score(sample[i].raw, sample[j].raw));
            distance.push_back(swm::symbol_distance_score(sample[i].sign, sample[j].sign, params));
            cosine.push_back(
                swm::cosine_score(embeddings.at(sample[i].id), embeddings.at(sample[j].id)));
        }
    }
    double seconds = std::chrono::duration<double>(Clock::now() - start).count();

    using swm::testing::interquartile_range;
    using swm::testing::median;
    double bleu_median = median(bleu);
    double chrf_iqr = interquartile_range(chrf);
    double bleu_iqr = interquartile_range(bleu);
    double distance_median = median(distance);
    auto tail = static_cast<std::size_t>(
        std::count_if(distance.begin(), distance.end(), [](double s) { return s > 0.8; }));

    check.expect(bleu.size() == 200 * 199, "expected 39800 ordered pairs");
    check.expect(bleu_median < 0.05, "bleu median " + std::to_string(bleu_median));
    check.expect(chrf_iqr > bleu_iqr, "chrf IQR " + std::to_string(chrf_iqr) +
                                          " not above bleu IQR " + std::to_string(bleu_iqr));
    check.expect(distance_median < 0.5,
                 "symbol-distance median " + std::to_string(distance_median));
    check.expect(tail > 0, "no symbol-distance scores above 0.8");
    check.expect(seconds < 300.0, "took " + std::to_string(seconds) + "s (budget 300s)");

    // The histogram surface sees the same pairs.
    swm::Histogram histogram = swm::score_distribution(
        sample,
        [&params](const swm::CorpusEntry& a, const swm::CorpusEntry& b) {
            return swm::symbol_distance_score(a.sign, b.sign, params);
        },
        50, 1);
    check.expect(histogram.total == 200 * 199, "histogram total mismatch");

    // Random pairs share few tokens, so the lowest BLEU bin holds the
    // plurality of the mass.
    swm::Histogram bleu_histogram = swm::score_distribution(
        sample,
        [](const swm::CorpusEntry& a, const swm::CorpusEntry& b) {
            return swm::bleu_score(a.sign, b.sign);
        },
        50, 1);
    check.expect(bleu_histogram.counts.front() ==
                     *std::max_element(bleu_histogram.counts.begin(), bleu_histogram.counts.end()),
                 "lowest bleu bin is not the plurality");

    std::ostringstream note;
    note << "bleu median " << bleu_median << ", chrf/bleu IQR " << chrf_iqr << "/" << bleu_iqr
         << ", sd median " << distance_median << ", sd tail>0.8 " << tail << ", "
         << static_cast<int>(seconds) << "s";
    check.note(note.str());
    return check;
}

// ---- criterion 6: retrieval sanity -----------------------------------------

Check criterion_retrieval() {
    Check check;
    std::mt19937_64 rng(0x6e57);
    swm::testing::RetrievalFixture fixture = swm::testing::make_retrieval_fixture(rng, 20, 1000);
    auto corpus_path = write_lines("retrieval_corpus.txt", fixture.corpus_lines);
    auto corpus = swm::load_corpus(corpus_path.string(), swm::CorpusFormat::Lines);

    swm::MetricParams params;
    int distance_hits = 0;
    int bleu_misses = 0;
    for (std::size_t q = 0; q < fixture.queries.size(); ++q) {
        swm::CorpusEntry query{"", fixture.queries[q],
                               swm::serialize_sign(fixture.queries[q])};

        auto top_id = [&](swm::MetricKind kind) {
            swm::EntryMetric metric;
            if (kind == swm::MetricKind::SymbolDistance) {
                metric = [&params](const swm::CorpusEntry& a, const swm::CorpusEntry& b) {
                    return swm::symbol_distance_score(a.sign, b.sign, params);
                };
            } else {
                metric = [](const swm::CorpusEntry& a, const swm::CorpusEntry& b) {
                    return swm::bleu_score(a.sign, b.sign);
                };
            }
            return swm::nearest_neighbors(query, corpus, metric, 1).entries.at(0).id;
        };

        if (top_id(swm::MetricKind::SymbolDistance) == fixture.copy_ids[q]) ++distance_hits;
        if (top_id(swm::MetricKind::Bleu) != fixture.copy_ids[q]) ++bleu_misses;
    }

    check.expect(distance_hits >= 19, "symbol-distance found the copy in only " +
                                          std::to_string(distance_hits) + "/20");
    check.expect(bleu_misses >= 10,
                 "bleu missed the reordered copy in only " + std::to_string(bleu_misses) + "/20");
    check.note("symbol-distance rank-1 " + std::to_string(distance_hits) +
               "/20, bleu misses " + std::to_string(bleu_misses) + "/20");
    return check;
}

// ---- criterion 7: CLI determinism ------------------------------------------

Check criterion_cli_determinism() {
    Check check;
    std::mt19937_64 rng(0xdead);
    auto corpus_path =
        write_lines("determinism_corpus.txt", swm::testing::signbank_like_corpus(rng, 80, 0.3));
    std::string query = swm::serialize_sign(swm::testing::realistic_sign(rng));

    std::string distribution_args = "distribution '" + corpus_path.string() +
                                    "' --metric symbol_distance --sample 40 --seed 42 --bins 20";
    std::string first = run_cli_capture(distribution_args, "SWM_THREADS=1");
    std::string second = run_cli_capture(distribution_args, "SWM_THREADS=4");
    std::string third = run_cli_capture(distribution_args);
    check.expect(first != "<cli failed>", "distribution run failed");
    check.expect(first == second && second == third,
                 "distribution output differs across runs/threads");

    std::string nearest_args =
        "nearest '" + query + "' '" + corpus_path.string() + "' --metric symbol_distance --k 10";
    std::string n1 = run_cli_capture(nearest_args, "SWM_THREADS=1");
    std::string n2 = run_cli_capture(nearest_args, "SWM_THREADS=8");
    std::string n3 = run_cli_capture(nearest_args);
    check.expect(n1 != "<cli failed>", "nearest run failed");
    check.expect(n1 == n2 && n2 == n3, "nearest output differs across runs/threads");
    check.note("distribution and nearest byte-identical across reruns and thread counts");
    return check;
}

// ---- criterion 8: cosine scorer --------------------------------------------

Check criterion_cosine() {
    Check check;
    swm::Embedding a{"a", {0.25, -1.5, 3.0, 0.125}};
    swm::Embedding minus_a{"b", {-0.25, 1.5, -3.0, -0.125}};
    swm::Embedding e1{"e1", {1.0, 0.0}};
    swm::Embedding e2{"e2", {0.0, 1.0}};

    check.expect(std::abs(swm::cosine_score(a, a) - 1.0) <= 1e-12, "identity not 1");
    check.expect(std::abs(swm::cosine_score(a, minus_a) - 0.0) <= 1e-12, "antipodal not 0");
    check.expect(std::abs(swm::cosine_score(e1, e2) - 0.5) <= 1e-12, "orthogonal not 0.5");

    bool dimension_raised = false;
    try {
        swm::cosine_score(e1, a);
    } catch (const swm::DimensionMismatch&) {
        dimension_raised = true;
    }
    bool zero_raised = false;
    try {
        swm::Embedding zero{"z", {0.0, 0.0}};
        swm::cosine_score(e1, zero);
    } catch (const swm::ZeroVector&) {
        zero_raised = true;
    }
    check.expect(dimension_raised, "DimensionMismatch not raised");
    check.expect(zero_raised, "ZeroVector not raised");
    check.note("fixed points exact, both error paths raised");
    return check;
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria = {
        {"parser round-trip over 10000 generated strings", criterion_round_trip},
        {"assignment equals brute force on 1000 matrices", criterion_assignment_oracle},
        {"bleu/chrf match the reference implementation (1e-4)", criterion_reference_equivalence},
        {"metric invariant suite (1000 cases each)", criterion_invariants},
        {"score distribution shapes at desk scale", criterion_distribution_shapes},
        {"retrieval sanity: perturbed copies", criterion_retrieval},
        {"cli determinism for distribution and nearest", criterion_cli_determinism},
        {"cosine scorer fixed points and errors", criterion_cosine},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check result = criteria[i].run();
        std::cout << (result.ok ? "[PASS] " : "[FAIL] ") << (i + 1) << ". " << criteria[i].name;
        if (!result.detail.empty()) std::cout << " | " << result.detail;
        std::cout << "\n" << std::flush;
        if (!result.ok) ++failures;
    }
    std::filesystem::remove_all(scratch_dir());
    return failures;
}
