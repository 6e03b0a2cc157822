#include "lexigraph/graph_build.hpp"
#include "lexigraph/projection.hpp"
#include "lexigraph/propagation.hpp"
#include "lexigraph/text.hpp"

#include "synthetic.hpp"

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace lexigraph;
using lexitest::SyntheticData;
using lexitest::make_synthetic;

double best_of(int repeats, const std::function<void()>& body) {
    double best = 0.0;
    for (int r = 0; r < repeats; ++r) {
        auto start = std::chrono::steady_clock::now();
        body();
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (r == 0 || seconds < best) best = seconds;
    }
    return best;
}

void print_row(const std::string& kernel, double serial, double parallel) {
    std::cout << kernel << '\t' << format_fixed(serial, 4) << '\t' << format_fixed(parallel, 4)
              << '\t' << format_fixed(parallel > 0.0 ? serial / parallel : 0.0, 2) << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lexigraph benchmarks: parallel kernels against their serial references"};
    std::size_t lemmas = 500;
    int sweeps = 10;
    int repeats = 3;
    std::uint64_t seed = 1;
    app.add_option("--lemmas", lemmas, "synthetic language size, four words per lemma")
        ->capture_default_str();
    app.add_option("--sweeps", sweeps, "propagation sweeps per timed run")->capture_default_str();
    app.add_option("--repeats", repeats, "timed runs per kernel, best one counts")
        ->capture_default_str();
    app.add_option("--seed", seed, "synthetic data seed")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    SyntheticData data = make_synthetic(lemmas, lemmas / 4, seed);
    Vocabulary vocab(data.seed, data.unlabeled);
    BuildReport report;
    std::vector<CandidateGroup> groups;
    {
        std::istringstream in(data.clustersText);
        auto g = cluster_features(in, "clusters", vocab, report);
        groups.insert(groups.end(), g.begin(), g.end());
    }
    {
        auto g = affix_features(vocab, data.seed, true, false, report);
        groups.insert(groups.end(), g.begin(), g.end());
    }
    {
        std::istringstream in(data.rulesText);
        auto g = morphtrans_features(in, "rules", vocab, report);
        groups.insert(groups.end(), g.begin(), g.end());
    }
    FeatureGraph graph = build_graph(vocab, groups, 100, 1, &report);
    WeightMatrix model = train(graph, data.seed, TrainConfig{});

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::cout << "threads\t" << threads << '\n'
              << "words\t" << graph.node_count() << '\n'
              << "edges\t" << graph.edge_count() << '\n'
              << "features\t" << graph.features().size() << '\n'
              << "sweeps\t" << sweeps << '\n';

    PropagationConfig config;
    config.stopDistance = 0.0;
    config.maxSweeps = sweeps;

    PropagationResult parallel;
    PropagationResult serial;
    double propagateParallel =
        best_of(repeats, [&] { parallel = propagate(graph, model, data.seed, config); });
    double propagateSerial =
        best_of(repeats, [&] { serial = propagate_reference(graph, model, data.seed, config); });
    if (parallel.values != serial.values) {
        std::cerr << "propagate and propagate_reference disagree\n";
        return 1;
    }

    auto values = unlabeled_values(graph, parallel.values);
    ParadigmSet paradigms(data.seed, "seed");
    Lexicon projectedParallel;
    Lexicon projectedSerial;
    double projectParallel =
        best_of(repeats, [&] { projectedParallel = project_lexicon(values, paradigms); });
    double projectSerial = best_of(
        repeats, [&] { projectedSerial = project_lexicon_reference(values, paradigms); });
    if (projectedParallel != projectedSerial) {
        std::cerr << "project_lexicon and project_lexicon_reference disagree\n";
        return 1;
    }

    std::cout << "kernel\tserial_s\tparallel_s\tspeedup\n";
    print_row("propagate", propagateSerial, propagateParallel);
    print_row("project", projectSerial, projectParallel);
    return 0;
}
