#pragma once

#include "lexigraph/evaluation.hpp"
#include "lexigraph/graph_build.hpp"
#include "lexigraph/projection.hpp"
#include "lexigraph/propagation.hpp"

#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace lexigraph {

// Effective settings of one pipeline invocation, read from a JSON config
// file. Relative paths in the file resolve against the file's directory.
struct PipelineConfig {
    std::filesystem::path seedLexicon;
    std::filesystem::path unlabeledVocab;
    std::filesystem::path clusters;
    std::filesystem::path rules;
    std::filesystem::path devLexicon;
    std::filesystem::path testLexicon;
    std::filesystem::path corpus;
    std::filesystem::path outputDir;
    std::set<FeatureKind> features = {FeatureKind::Cluster, FeatureKind::Suffix,
                                      FeatureKind::Prefix, FeatureKind::MorphTrans};
    std::uint32_t neighborCap = 100;
    std::uint64_t graphSeed = 1;
    bool projection = true;
    bool skipUnreached = true;
    int threads = 0;
    TrainConfig train;
    PropagationConfig propagation;
    BaselineConfig baseline;
    std::vector<std::set<FeatureKind>> tuneFeatureSubsets;
    std::vector<bool> tuneProjectionChoices = {true, false};
    std::vector<std::size_t> curveSizes;
    std::uint64_t curveSeed = 1;

    bool operator==(const PipelineConfig& other) const = default;
};

PipelineConfig read_config(std::istream& in, const std::string& name,
                           const std::filesystem::path& baseDir);
PipelineConfig load_config(const std::filesystem::path& path);
void write_config(const PipelineConfig& config, std::ostream& out);
void save_config(const PipelineConfig& config, const std::filesystem::path& path);

// Fixed artifact names under the configured output directory.
std::filesystem::path graph_path(const PipelineConfig& config);
std::filesystem::path model_path(const PipelineConfig& config);
std::filesystem::path propagated_path(const PipelineConfig& config);
std::filesystem::path projected_path(const PipelineConfig& config);
std::filesystem::path predicted_path(const PipelineConfig& config);
std::filesystem::path report_path(const PipelineConfig& config);
std::filesystem::path baseline_path(const PipelineConfig& config);
std::filesystem::path chosen_config_path(const PipelineConfig& config);
std::filesystem::path seed_curve_path(const PipelineConfig& config);

struct GraphSummary {
    std::size_t words = 0;
    std::size_t labeled = 0;
    std::size_t unlabeled = 0;
    std::size_t edges = 0;
    std::size_t features = 0;
    std::size_t attributes = 0;
    std::size_t paradigms = 0;
    BuildReport build;
};

// Graph assembly for one feature subset; shared by every command that builds
// a graph rather than loading one.
FeatureGraph build_feature_graph(const PipelineConfig& config, const Lexicon& seed,
                                 const std::vector<std::string>& unlabeled,
                                 const std::set<FeatureKind>& features, BuildReport& report);

struct PropagateSummary {
    int sweeps = 0;
    bool converged = false;
    double lastDistance = 0.0;
    std::size_t words = 0;
};

struct RunSummary {
    GraphSummary graph;
    TrainReport train;
    PropagateSummary propagation;
    std::size_t predictedWords = 0;
    bool evaluated = false;
    std::size_t droppedSeedWords = 0;
    EvalReport eval;
    std::vector<std::filesystem::path> written;
};

struct EvaluateSummary {
    EvalReport eval;
    std::size_t droppedSeedWords = 0;
};

// Subcommand entry points. Progress, timing, and warnings go to log when it
// is set; results come back as data for the caller to print.
GraphSummary cmd_build_graph(const PipelineConfig& config, std::ostream* log);
TrainReport cmd_train(const PipelineConfig& config, const std::filesystem::path& graphFile,
                      std::ostream* log);
PropagateSummary cmd_propagate(const PipelineConfig& config, const std::filesystem::path& graphFile,
                               const std::filesystem::path& modelFile, std::ostream* log);
struct ProjectSummary {
    std::size_t projectedWords = 0;
    std::size_t skippedWords = 0;
};
ProjectSummary cmd_project(const PipelineConfig& config, const std::filesystem::path& propagatedFile,
                           std::ostream* log);
EvaluateSummary cmd_evaluate(const std::filesystem::path& predictedFile,
                             const std::filesystem::path& goldFile,
                             const std::filesystem::path& dropSeedFile,
                             const std::filesystem::path& reportFile, std::ostream* log);
struct BaselineSummary {
    std::size_t words = 0;
    std::size_t attributes = 0;
};
BaselineSummary cmd_baseline(const std::filesystem::path& corpusFile, int k,
                             const std::filesystem::path& outFile, std::ostream* log);
RunSummary cmd_run(const PipelineConfig& config, std::ostream* log);
TuneResult cmd_tune(const PipelineConfig& config, std::ostream* log);
std::vector<SeedCurvePoint> cmd_seed_curve(const PipelineConfig& config, std::ostream* log);
TopWeights cmd_inspect_weights(const std::filesystem::path& modelFile, const std::string& attribute,
                               std::size_t n, std::ostream* log);

// "cluster+suffix" style rendering of a feature subset, in kind order.
std::string feature_set_name(const std::set<FeatureKind>& features);

} // namespace lexigraph
