#include "lexigraph/pipeline.hpp"

#include "lexigraph/errors.hpp"
#include "lexigraph/text.hpp"

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <ostream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lexigraph {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

class StageClock {
public:
    StageClock() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void log_stage(std::ostream* log, const std::string& stage, double seconds) {
    if (log) *log << "[" << stage << "] " << format_fixed(seconds, 3) << "s\n";
}

void log_warnings(std::ostream* log, const std::vector<std::string>& warnings) {
    if (!log) return;
    for (const auto& w : warnings) *log << "[warn] " << w << "\n";
}

void log_line(std::ostream* log, const std::string& line) {
    if (log) *log << line << "\n";
}

std::string want_string(const json& v, const std::string& key) {
    if (!v.is_string()) throw ConfigError("config key '" + key + "' must be a string");
    return v.get<std::string>();
}

bool want_bool(const json& v, const std::string& key) {
    if (!v.is_boolean()) throw ConfigError("config key '" + key + "' must be a boolean");
    return v.get<bool>();
}

double want_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
    return v.get<double>();
}

std::uint64_t want_uint(const json& v, const std::string& key) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
    throw ConfigError("config key '" + key + "' must be a nonnegative integer");
}

int want_int(const json& v, const std::string& key) {
    if (!v.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
    return v.get<int>();
}

std::set<FeatureKind> want_kinds(const json& v, const std::string& key) {
    if (!v.is_array()) throw ConfigError("config key '" + key + "' must be an array of feature kinds");
    std::set<FeatureKind> kinds;
    for (const auto& el : v) {
        auto name = want_string(el, key);
        auto kind = feature_kind_from(name);
        if (!kind) throw ConfigError("config key '" + key + "' names unknown feature kind '" + name + "'");
        kinds.insert(*kind);
    }
    return kinds;
}

fs::path resolve_path(const std::string& value, const fs::path& baseDir) {
    fs::path p(value);
    return p.is_absolute() ? p : baseDir / p;
}

void read_train_section(const json& section, TrainConfig& train) {
    for (const auto& [key, value] : section.items()) {
        if (key == "learning_rate") {
            train.learningRate = want_number(value, "train.learning_rate");
        } else if (key == "l2") {
            train.l2 = want_number(value, "train.l2");
        } else if (key == "max_epochs") {
            train.maxEpochs = want_int(value, "train.max_epochs");
        } else if (key == "loss_tolerance") {
            train.lossTolerance = want_number(value, "train.loss_tolerance");
        } else if (key == "shuffle_seed") {
            train.shuffleSeed = want_uint(value, "train.shuffle_seed");
        } else {
            throw ConfigError("unknown config key 'train." + key + "'");
        }
    }
}

void read_propagation_section(const json& section, PropagationConfig& propagation) {
    for (const auto& [key, value] : section.items()) {
        if (key == "stop_distance") {
            propagation.stopDistance = want_number(value, "propagation.stop_distance");
        } else if (key == "max_sweeps") {
            propagation.maxSweeps = want_int(value, "propagation.max_sweeps");
        } else {
            throw ConfigError("unknown config key 'propagation." + key + "'");
        }
    }
}

void read_tune_section(const json& section, PipelineConfig& config) {
    for (const auto& [key, value] : section.items()) {
        if (key == "feature_subsets") {
            if (!value.is_array()) {
                throw ConfigError("config key 'tune.feature_subsets' must be an array of arrays");
            }
            config.tuneFeatureSubsets.clear();
            for (const auto& el : value) {
                config.tuneFeatureSubsets.push_back(want_kinds(el, "tune.feature_subsets"));
            }
        } else if (key == "projection_choices") {
            if (!value.is_array()) {
                throw ConfigError("config key 'tune.projection_choices' must be an array of booleans");
            }
            config.tuneProjectionChoices.clear();
            for (const auto& el : value) {
                config.tuneProjectionChoices.push_back(want_bool(el, "tune.projection_choices"));
            }
        } else {
            throw ConfigError("unknown config key 'tune." + key + "'");
        }
    }
}

void read_seed_curve_section(const json& section, PipelineConfig& config) {
    for (const auto& [key, value] : section.items()) {
        if (key == "sizes") {
            if (!value.is_array()) {
                throw ConfigError("config key 'seed_curve.sizes' must be an array of integers");
            }
            config.curveSizes.clear();
            for (const auto& el : value) {
                config.curveSizes.push_back(
                    static_cast<std::size_t>(want_uint(el, "seed_curve.sizes")));
            }
        } else if (key == "seed") {
            config.curveSeed = want_uint(value, "seed_curve.seed");
        } else {
            throw ConfigError("unknown config key 'seed_curve." + key + "'");
        }
    }
}

} // namespace

PipelineConfig read_config(std::istream& in, const std::string& name, const fs::path& baseDir) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(name + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError(name + ": config must be a JSON object");

    PipelineConfig config;
    for (const auto& [key, value] : j.items()) {
        if (key == "seed_lexicon") {
            config.seedLexicon = resolve_path(want_string(value, key), baseDir);
        } else if (key == "unlabeled_vocab") {
            config.unlabeledVocab = resolve_path(want_string(value, key), baseDir);
        } else if (key == "clusters") {
            config.clusters = resolve_path(want_string(value, key), baseDir);
        } else if (key == "rules") {
            config.rules = resolve_path(want_string(value, key), baseDir);
        } else if (key == "dev_lexicon") {
            config.devLexicon = resolve_path(want_string(value, key), baseDir);
        } else if (key == "test_lexicon") {
            config.testLexicon = resolve_path(want_string(value, key), baseDir);
        } else if (key == "corpus") {
            config.corpus = resolve_path(want_string(value, key), baseDir);
        } else if (key == "output_dir") {
            config.outputDir = resolve_path(want_string(value, key), baseDir);
        } else if (key == "features") {
            config.features = want_kinds(value, key);
        } else if (key == "neighbor_cap") {
            auto cap = want_uint(value, key);
            if (cap == 0) throw ConfigError("config key 'neighbor_cap' must be positive");
            config.neighborCap = static_cast<std::uint32_t>(cap);
        } else if (key == "graph_seed") {
            config.graphSeed = want_uint(value, key);
        } else if (key == "projection") {
            config.projection = want_bool(value, key);
        } else if (key == "skip_unreached") {
            config.skipUnreached = want_bool(value, key);
        } else if (key == "threads") {
            config.threads = want_int(value, key);
            if (config.threads < 0) throw ConfigError("config key 'threads' must be nonnegative");
        } else if (key == "train") {
            if (!value.is_object()) throw ConfigError("config key 'train' must be an object");
            read_train_section(value, config.train);
        } else if (key == "propagation") {
            if (!value.is_object()) throw ConfigError("config key 'propagation' must be an object");
            read_propagation_section(value, config.propagation);
        } else if (key == "baseline") {
            if (!value.is_object()) throw ConfigError("config key 'baseline' must be an object");
            for (const auto& [bkey, bvalue] : value.items()) {
                if (bkey == "k") {
                    config.baseline.k = want_int(bvalue, "baseline.k");
                } else {
                    throw ConfigError("unknown config key 'baseline." + bkey + "'");
                }
            }
        } else if (key == "tune") {
            if (!value.is_object()) throw ConfigError("config key 'tune' must be an object");
            read_tune_section(value, config);
        } else if (key == "seed_curve") {
            if (!value.is_object()) throw ConfigError("config key 'seed_curve' must be an object");
            read_seed_curve_section(value, config);
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    return config;
}

PipelineConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    return read_config(in, path.string(), path.parent_path());
}

void write_config(const PipelineConfig& config, std::ostream& out) {
    json j;
    auto put_path = [&](const char* key, const fs::path& p) {
        if (!p.empty()) j[key] = p.string();
    };
    put_path("seed_lexicon", config.seedLexicon);
    put_path("unlabeled_vocab", config.unlabeledVocab);
    put_path("clusters", config.clusters);
    put_path("rules", config.rules);
    put_path("dev_lexicon", config.devLexicon);
    put_path("test_lexicon", config.testLexicon);
    put_path("corpus", config.corpus);
    put_path("output_dir", config.outputDir);

    json kinds = json::array();
    for (auto kind : config.features) kinds.push_back(std::string(feature_kind_name(kind)));
    j["features"] = kinds;
    j["neighbor_cap"] = config.neighborCap;
    j["graph_seed"] = config.graphSeed;
    j["projection"] = config.projection;
    j["skip_unreached"] = config.skipUnreached;
    j["threads"] = config.threads;
    j["train"] = {{"learning_rate", config.train.learningRate},
                  {"l2", config.train.l2},
                  {"max_epochs", config.train.maxEpochs},
                  {"loss_tolerance", config.train.lossTolerance},
                  {"shuffle_seed", config.train.shuffleSeed}};
    j["propagation"] = {{"stop_distance", config.propagation.stopDistance},
                        {"max_sweeps", config.propagation.maxSweeps}};
    j["baseline"] = {{"k", config.baseline.k}};
    if (!config.tuneFeatureSubsets.empty()) {
        json subsets = json::array();
        for (const auto& subset : config.tuneFeatureSubsets) {
            json one = json::array();
            for (auto kind : subset) one.push_back(std::string(feature_kind_name(kind)));
            subsets.push_back(one);
        }
        j["tune"] = {{"feature_subsets", subsets}, {"projection_choices", config.tuneProjectionChoices}};
    }
    if (!config.curveSizes.empty()) {
        j["seed_curve"] = {{"sizes", config.curveSizes}, {"seed", config.curveSeed}};
    }
    out << j.dump(2) << '\n';
}

void save_config(const PipelineConfig& config, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write config file " + path.string());
    write_config(config, out);
    if (!out.good()) throw IoError("failed writing config file " + path.string());
}

fs::path graph_path(const PipelineConfig& config) { return config.outputDir / "graph.txt"; }
fs::path model_path(const PipelineConfig& config) { return config.outputDir / "model.txt"; }
fs::path propagated_path(const PipelineConfig& config) { return config.outputDir / "propagated.txt"; }
fs::path projected_path(const PipelineConfig& config) { return config.outputDir / "projected.txt"; }
fs::path predicted_path(const PipelineConfig& config) { return config.outputDir / "predicted.txt"; }
fs::path report_path(const PipelineConfig& config) { return config.outputDir / "report.txt"; }
fs::path baseline_path(const PipelineConfig& config) { return config.outputDir / "baseline.txt"; }
fs::path chosen_config_path(const PipelineConfig& config) {
    return config.outputDir / "chosen_config.json";
}
fs::path seed_curve_path(const PipelineConfig& config) { return config.outputDir / "seed_curve.txt"; }

namespace {

void apply_threads(const PipelineConfig& config) {
#ifdef _OPENMP
    if (config.threads > 0) omp_set_num_threads(config.threads);
#else
    (void)config;
#endif
}

void require_path(const fs::path& p, const char* what) {
    if (p.empty()) throw ConfigError(std::string("config does not set ") + what);
}

void validate_graph_inputs(const PipelineConfig& config, const std::set<FeatureKind>& features) {
    require_path(config.seedLexicon, "seed_lexicon");
    if (features.empty()) throw ConfigError("no feature providers enabled");
    if (features.count(FeatureKind::Cluster) && config.clusters.empty()) {
        throw ConfigError("cluster features need a clusters file");
    }
    if (features.count(FeatureKind::MorphTrans) && config.rules.empty()) {
        throw ConfigError("morphtrans features need a rules file");
    }
}

void require_output_dir(const PipelineConfig& config) {
    require_path(config.outputDir, "output_dir");
    std::error_code ec;
    fs::create_directories(config.outputDir, ec);
    if (ec) throw IoError("cannot create output directory " + config.outputDir.string());
}

Lexicon load_seed(const PipelineConfig& config) {
    require_path(config.seedLexicon, "seed_lexicon");
    Lexicon seed = load_lexicon(config.seedLexicon);
    if (seed.empty()) {
        throw ConfigError("seed lexicon " + config.seedLexicon.string() + " has no entries");
    }
    return seed;
}

std::vector<std::string> load_unlabeled(const PipelineConfig& config) {
    if (config.unlabeledVocab.empty()) return {};
    return load_word_list(config.unlabeledVocab);
}

GraphSummary summarize_graph(const FeatureGraph& graph, const Lexicon& seed,
                             const BuildReport& report) {
    GraphSummary s;
    s.words = graph.node_count();
    s.labeled = graph.labeled_nodes().size();
    s.unlabeled = graph.unlabeled_nodes().size();
    s.edges = graph.edge_count();
    s.features = graph.features().size();
    s.attributes = seed.inventory().size();
    s.paradigms = ParadigmSet(seed, "seed").size();
    s.build = report;
    return s;
}

// Train, propagate, and read off the predicted lexicon over the seed
// inventory, with or without paradigm projection.
Lexicon model_and_predict(const PipelineConfig& config, const FeatureGraph& graph,
                          const Lexicon& seed, bool projection, WeightMatrix* modelOut,
                          TrainReport* trainReport, PropagationResult* propagationOut) {
    WeightMatrix model = train(graph, seed, config.train, trainReport);
    PropagationResult prop = propagate(graph, model, seed, config.propagation);
    auto values = unlabeled_values(graph, prop.values);
    Lexicon predicted = projection
                            ? project_lexicon(values, ParadigmSet(seed, "seed"), config.skipUnreached)
                            : threshold_lexicon(values, seed.inventory());
    if (modelOut) *modelOut = std::move(model);
    if (propagationOut) *propagationOut = std::move(prop);
    return predicted;
}

AttributeInventory union_inventory(const AttributeInventory& a, const AttributeInventory& b) {
    std::set<std::string> names(a.names().begin(), a.names().end());
    names.insert(b.names().begin(), b.names().end());
    return AttributeInventory::from_names(names);
}

struct AlignedEval {
    EvalReport report;
    std::size_t dropped = 0;
};

AlignedEval evaluate_predicted(const Lexicon& predicted, const Lexicon& gold, const Lexicon& seed) {
    auto inventory = union_inventory(predicted.inventory(), gold.inventory());
    Lexicon predAligned = align_lexicon(predicted, inventory);
    Lexicon goldAligned = align_lexicon(gold, inventory);
    AlignedEval out;
    out.dropped = drop_seed_words(goldAligned, seed);
    out.report = micro_f1(predAligned, goldAligned);
    return out;
}

} // namespace

FeatureGraph build_feature_graph(const PipelineConfig& config, const Lexicon& seed,
                                 const std::vector<std::string>& unlabeled,
                                 const std::set<FeatureKind>& features, BuildReport& report) {
    validate_graph_inputs(config, features);
    Vocabulary vocab(seed, unlabeled);
    std::vector<CandidateGroup> groups;
    auto append = [&](std::vector<CandidateGroup> more) {
        for (auto& g : more) groups.push_back(std::move(g));
    };
    if (features.count(FeatureKind::Cluster)) {
        append(load_cluster_features(config.clusters, vocab, report));
    }
    bool wantSuffix = features.count(FeatureKind::Suffix) != 0;
    bool wantPrefix = features.count(FeatureKind::Prefix) != 0;
    if (wantSuffix || wantPrefix) {
        append(affix_features(vocab, seed, wantSuffix, wantPrefix, report));
    }
    if (features.count(FeatureKind::MorphTrans)) {
        append(load_morphtrans_features(config.rules, vocab, report));
    }
    return build_graph(vocab, groups, config.neighborCap, config.graphSeed, &report);
}

GraphSummary cmd_build_graph(const PipelineConfig& config, std::ostream* log) {
    apply_threads(config);
    validate_graph_inputs(config, config.features);
    require_output_dir(config);
    StageClock clock;
    Lexicon seed = load_seed(config);
    auto unlabeled = load_unlabeled(config);
    BuildReport report;
    FeatureGraph graph = build_feature_graph(config, seed, unlabeled, config.features, report);
    save_graph(graph, graph_path(config));
    log_warnings(log, report.warnings);
    log_stage(log, "build-graph", clock.seconds());
    return summarize_graph(graph, seed, report);
}

TrainReport cmd_train(const PipelineConfig& config, const fs::path& graphFile, std::ostream* log) {
    apply_threads(config);
    require_output_dir(config);
    Lexicon seed = load_seed(config);
    FeatureGraph graph = load_graph(graphFile.empty() ? graph_path(config) : graphFile);
    StageClock clock;
    TrainReport report;
    WeightMatrix model = train(graph, seed, config.train, &report);
    save_model(model, model_path(config));
    log_warnings(log, report.warnings);
    log_stage(log, "train", clock.seconds());
    return report;
}

PropagateSummary cmd_propagate(const PipelineConfig& config, const fs::path& graphFile,
                               const fs::path& modelFile, std::ostream* log) {
    apply_threads(config);
    require_output_dir(config);
    Lexicon seed = load_seed(config);
    FeatureGraph graph = load_graph(graphFile.empty() ? graph_path(config) : graphFile);
    WeightMatrix model = load_model(modelFile.empty() ? model_path(config) : modelFile);
    StageClock clock;
    PropagationResult prop = propagate(graph, model, seed, config.propagation);
    auto values = unlabeled_values(graph, prop.values);
    Lexicon scored(seed.inventory());
    for (const auto& [word, v] : values) scored.insert(word, v);
    save_lexicon(scored, propagated_path(config), true);
    log_stage(log, "propagate", clock.seconds());
    PropagateSummary summary;
    summary.sweeps = prop.sweeps;
    summary.converged = prop.converged;
    summary.lastDistance = prop.lastDistance;
    summary.words = values.size();
    return summary;
}

ProjectSummary cmd_project(const PipelineConfig& config, const fs::path& propagatedFile,
                           std::ostream* log) {
    apply_threads(config);
    require_output_dir(config);
    Lexicon seed = load_seed(config);
    Lexicon scored =
        load_lexicon(propagatedFile.empty() ? propagated_path(config) : propagatedFile,
                     &seed.inventory());
    StageClock clock;
    ParadigmSet paradigms(seed, config.seedLexicon.string());
    Lexicon projected = project_lexicon(scored.entries(), paradigms, config.skipUnreached);
    save_lexicon(projected, projected_path(config));
    log_stage(log, "project", clock.seconds());
    return {projected.size(), scored.size() - projected.size()};
}

EvaluateSummary cmd_evaluate(const fs::path& predictedFile, const fs::path& goldFile,
                             const fs::path& dropSeedFile, const fs::path& reportFile,
                             std::ostream* log) {
    Lexicon predicted = load_lexicon(predictedFile);
    Lexicon gold = load_lexicon(goldFile);
    auto inventory = union_inventory(predicted.inventory(), gold.inventory());
    Lexicon predAligned = align_lexicon(predicted, inventory);
    Lexicon goldAligned = align_lexicon(gold, inventory);
    EvaluateSummary summary;
    if (!dropSeedFile.empty()) {
        Lexicon seed = load_lexicon(dropSeedFile);
        summary.droppedSeedWords = drop_seed_words(goldAligned, seed);
        if (summary.droppedSeedWords > 0) {
            log_line(log, "[warn] dropped " + std::to_string(summary.droppedSeedWords) +
                              " gold words that appear in the seed");
        }
    }
    summary.eval = micro_f1(predAligned, goldAligned);
    if (!reportFile.empty()) save_report(summary.eval, reportFile);
    return summary;
}

BaselineSummary cmd_baseline(const fs::path& corpusFile, int k, const fs::path& outFile,
                             std::ostream* log) {
    if (k < 2 || k > 20) {
        throw ConfigError("baseline k must lie in [2, 20], got " + std::to_string(k));
    }
    StageClock clock;
    Lexicon baseline = load_corpus_baseline(corpusFile, BaselineConfig{k});
    if (!outFile.empty()) save_lexicon(baseline, outFile);
    log_stage(log, "baseline", clock.seconds());
    return {baseline.size(), baseline.inventory().size()};
}

RunSummary cmd_run(const PipelineConfig& config, std::ostream* log) {
    apply_threads(config);
    validate_graph_inputs(config, config.features);
    require_output_dir(config);
    RunSummary summary;

    StageClock buildClock;
    Lexicon seed = load_seed(config);
    auto unlabeled = load_unlabeled(config);
    BuildReport buildReport;
    FeatureGraph graph = build_feature_graph(config, seed, unlabeled, config.features, buildReport);
    save_graph(graph, graph_path(config));
    summary.written.push_back(graph_path(config));
    summary.graph = summarize_graph(graph, seed, buildReport);
    log_warnings(log, buildReport.warnings);
    log_stage(log, "build-graph", buildClock.seconds());

    StageClock trainClock;
    WeightMatrix model = train(graph, seed, config.train, &summary.train);
    save_model(model, model_path(config));
    summary.written.push_back(model_path(config));
    log_warnings(log, summary.train.warnings);
    log_stage(log, "train", trainClock.seconds());

    StageClock propClock;
    PropagationResult prop = propagate(graph, model, seed, config.propagation);
    auto values = unlabeled_values(graph, prop.values);
    summary.propagation.sweeps = prop.sweeps;
    summary.propagation.converged = prop.converged;
    summary.propagation.lastDistance = prop.lastDistance;
    summary.propagation.words = values.size();
    Lexicon scored(seed.inventory());
    for (const auto& [word, v] : values) scored.insert(word, v);
    save_lexicon(scored, propagated_path(config), true);
    summary.written.push_back(propagated_path(config));
    log_stage(log, "propagate", propClock.seconds());

    StageClock projectClock;
    Lexicon predicted;
    if (config.projection) {
        ParadigmSet paradigms(seed, config.seedLexicon.string());
        predicted = project_lexicon(values, paradigms, config.skipUnreached);
        save_lexicon(predicted, projected_path(config));
        summary.written.push_back(projected_path(config));
        log_stage(log, "project", projectClock.seconds());
    } else {
        predicted = threshold_lexicon(values, seed.inventory());
    }
    save_lexicon(predicted, predicted_path(config));
    summary.written.push_back(predicted_path(config));
    summary.predictedWords = predicted.size();

    if (!config.testLexicon.empty()) {
        StageClock evalClock;
        Lexicon gold = load_lexicon(config.testLexicon);
        AlignedEval aligned = evaluate_predicted(predicted, gold, seed);
        summary.evaluated = true;
        summary.eval = aligned.report;
        summary.droppedSeedWords = aligned.dropped;
        if (aligned.dropped > 0) {
            log_line(log, "[warn] dropped " + std::to_string(aligned.dropped) +
                              " test words that appear in the seed");
        }
        save_report(summary.eval, report_path(config));
        summary.written.push_back(report_path(config));
        log_stage(log, "evaluate", evalClock.seconds());
    }
    return summary;
}

TuneResult cmd_tune(const PipelineConfig& config, std::ostream* log) {
    apply_threads(config);
    require_path(config.devLexicon, "dev_lexicon");
    if (config.tuneFeatureSubsets.empty()) {
        throw ConfigError("tune needs config key 'tune.feature_subsets'");
    }
    if (config.tuneProjectionChoices.empty()) {
        throw ConfigError("tune needs at least one entry in 'tune.projection_choices'");
    }
    for (const auto& subset : config.tuneFeatureSubsets) {
        validate_graph_inputs(config, subset);
    }
    require_output_dir(config);

    Lexicon seed = load_seed(config);
    auto unlabeled = load_unlabeled(config);
    Lexicon dev = load_lexicon(config.devLexicon);
    auto inventory = union_inventory(seed.inventory(), dev.inventory());
    Lexicon devAligned = align_lexicon(dev, inventory);
    auto dropped = drop_seed_words(devAligned, seed);
    if (dropped > 0) {
        log_line(log, "[warn] dropped " + std::to_string(dropped) +
                          " dev words that appear in the seed");
    }
    if (devAligned.empty()) {
        throw ConfigError("dev lexicon " + config.devLexicon.string() +
                          " has no evaluable entries outside the seed");
    }

    PipelineHandle handle = [&](const std::set<FeatureKind>& features, bool projection) {
        StageClock clock;
        BuildReport report;
        FeatureGraph graph = build_feature_graph(config, seed, unlabeled, features, report);
        Lexicon predicted =
            model_and_predict(config, graph, seed, projection, nullptr, nullptr, nullptr);
        log_line(log, "[tune] " + feature_set_name(features) +
                          (projection ? " projection=on " : " projection=off ") +
                          format_fixed(clock.seconds(), 3) + "s");
        return align_lexicon(predicted, inventory);
    };
    TuneResult result =
        tune(config.tuneFeatureSubsets, config.tuneProjectionChoices, devAligned, handle);

    PipelineConfig chosen = config;
    chosen.features = result.best.features;
    chosen.projection = result.best.projection;
    save_config(chosen, chosen_config_path(config));
    return result;
}

std::vector<SeedCurvePoint> cmd_seed_curve(const PipelineConfig& config, std::ostream* log) {
    apply_threads(config);
    require_path(config.testLexicon, "test_lexicon");
    if (config.curveSizes.empty()) {
        throw ConfigError("seed-curve needs config key 'seed_curve.sizes'");
    }
    validate_graph_inputs(config, config.features);
    require_output_dir(config);

    Lexicon seed = load_seed(config);
    auto unlabeled = load_unlabeled(config);
    Lexicon gold = load_lexicon(config.testLexicon);
    auto inventory = union_inventory(seed.inventory(), gold.inventory());
    Lexicon goldAligned = align_lexicon(gold, inventory);
    auto dropped = drop_seed_words(goldAligned, seed);
    if (dropped > 0) {
        log_line(log, "[warn] dropped " + std::to_string(dropped) +
                          " test words that appear in the full seed");
    }

    auto evaluate = [&](const Lexicon& subSeed) {
        StageClock clock;
        BuildReport report;
        FeatureGraph graph = build_feature_graph(config, subSeed, unlabeled, config.features, report);
        Lexicon predicted =
            model_and_predict(config, graph, subSeed, config.projection, nullptr, nullptr, nullptr);
        double f1 = micro_f1(align_lexicon(predicted, inventory), goldAligned).microF1;
        log_line(log, "[seed-curve] size " + std::to_string(subSeed.size()) + " " +
                          format_fixed(clock.seconds(), 3) + "s");
        return f1;
    };
    auto curve = seed_curve(seed, config.curveSizes, config.curveSeed, evaluate);

    std::ofstream out(seed_curve_path(config));
    if (!out) throw IoError("cannot write seed curve file " + seed_curve_path(config).string());
    write_seed_curve(curve, out);
    if (!out.good()) throw IoError("failed writing seed curve file " + seed_curve_path(config).string());
    return curve;
}

TopWeights cmd_inspect_weights(const fs::path& modelFile, const std::string& attribute,
                               std::size_t n, std::ostream* log) {
    (void)log;
    WeightMatrix model = load_model(modelFile);
    if (!model.inventory().index_of(attribute)) {
        throw ConfigError("model has no attribute '" + attribute + "'");
    }
    return top_weights(model, attribute, n);
}

std::string feature_set_name(const std::set<FeatureKind>& features) {
    if (features.empty()) return "(none)";
    std::string out;
    for (auto kind : features) {
        if (!out.empty()) out += '+';
        out += feature_kind_name(kind);
    }
    return out;
}

} // namespace lexigraph
