#include "lexigraph/errors.hpp"
#include "lexigraph/pipeline.hpp"
#include "lexigraph/text.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace lexigraph;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

const char* onoff(bool value) { return value ? "true" : "false"; }

void print_graph_summary(const GraphSummary& s) {
    std::cout << "words\t" << s.words << '\n'
              << "labeled\t" << s.labeled << '\n'
              << "unlabeled\t" << s.unlabeled << '\n'
              << "edges\t" << s.edges << '\n'
              << "features\t" << s.features << '\n'
              << "attributes\t" << s.attributes << '\n'
              << "paradigms\t" << s.paradigms << '\n'
              << "candidate_pairs\t" << s.build.candidatePairs << '\n'
              << "kept_pairs\t" << s.build.keptPairs << '\n';
}

void print_train_report(const TrainReport& r) {
    std::cout << "epochs\t" << r.epochs << '\n'
              << "train_converged\t" << onoff(r.converged) << '\n'
              << "final_loss\t" << (r.epochLoss.empty() ? "0" : format_double(r.epochLoss.back()))
              << '\n';
    for (const auto& attr : r.skippedAttributes) {
        std::cout << "skipped_attribute\t" << attr << '\n';
    }
}

void print_propagate_summary(const PropagateSummary& s) {
    std::cout << "sweeps\t" << s.sweeps << '\n'
              << "propagation_converged\t" << onoff(s.converged) << '\n'
              << "mean_squared_change\t" << format_double(s.lastDistance) << '\n'
              << "propagated_words\t" << s.words << '\n';
}

void print_eval(const EvalReport& e) {
    std::cout << "micro_f1\t" << format_fixed(e.microF1, 4) << '\n'
              << "precision\t" << format_fixed(e.precision, 4) << '\n'
              << "recall\t" << format_fixed(e.recall, 4) << '\n'
              << "tp\t" << e.tp << '\n'
              << "fp\t" << e.fp << '\n'
              << "fn\t" << e.fn << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lexigraph: grow a morpho-syntactic lexicon from a seed by "
                 "label propagation over a featurized word graph"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "lexigraph 1.0.0");

    std::string configPath;
    std::string graphFile;
    std::string modelFile;
    std::string propagatedFile;
    std::string predictedFile;
    std::string goldFile;
    std::string dropSeedFile;
    std::string reportFile;
    std::string corpusFile;
    std::string outFile;
    std::string attribute;
    int baselineK = 2;
    std::size_t topN = 10;

    auto* buildCmd = app.add_subcommand("build-graph", "Assemble the word graph and write graph.txt");
    buildCmd->add_option("--config", configPath, "JSON config file")->required();

    auto* trainCmd = app.add_subcommand("train", "Fit edge feature weights and write model.txt");
    trainCmd->add_option("--config", configPath, "JSON config file")->required();
    trainCmd->add_option("--graph", graphFile, "graph file (default: <output_dir>/graph.txt)");

    auto* propagateCmd =
        app.add_subcommand("propagate", "Spread labels over the graph and write propagated.txt");
    propagateCmd->add_option("--config", configPath, "JSON config file")->required();
    propagateCmd->add_option("--graph", graphFile, "graph file (default: <output_dir>/graph.txt)");
    propagateCmd->add_option("--model", modelFile, "model file (default: <output_dir>/model.txt)");

    auto* projectCmd =
        app.add_subcommand("project", "Snap propagated vectors to seed paradigms, write projected.txt");
    projectCmd->add_option("--config", configPath, "JSON config file")->required();
    projectCmd->add_option("--propagated", propagatedFile,
                           "scored lexicon (default: <output_dir>/propagated.txt)");

    auto* evaluateCmd = app.add_subcommand("evaluate", "Micro-F1 of a predicted lexicon against gold");
    evaluateCmd->add_option("--predicted", predictedFile, "predicted lexicon")->required();
    evaluateCmd->add_option("--gold", goldFile, "gold lexicon")->required();
    evaluateCmd->add_option("--drop-seed", dropSeedFile, "drop gold words found in this lexicon");
    evaluateCmd->add_option("--report", reportFile, "also write a report file");

    auto* baselineCmd = app.add_subcommand("baseline", "Corpus-count baseline lexicon");
    baselineCmd->add_option("--corpus", corpusFile, "tagged corpus, word<TAB>ATTR... per token")
        ->required();
    baselineCmd->add_option("--k", baselineK, "count threshold in [2, 20]")->capture_default_str();
    baselineCmd->add_option("--out", outFile, "write the baseline lexicon here");

    auto* runCmd = app.add_subcommand("run", "Full pipeline: build, train, propagate, project, evaluate");
    runCmd->add_option("--config", configPath, "JSON config file")->required();

    auto* tuneCmd = app.add_subcommand("tune", "Pick feature subset and projection on dev micro-F1");
    tuneCmd->add_option("--config", configPath, "JSON config file")->required();

    auto* curveCmd = app.add_subcommand("seed-curve", "Test micro-F1 at growing seed sizes");
    curveCmd->add_option("--config", configPath, "JSON config file")->required();

    auto* weightsCmd = app.add_subcommand("inspect-weights", "Strongest features of one attribute");
    weightsCmd->add_option("--model", modelFile, "model file")->required();
    weightsCmd->add_option("--attribute", attribute, "attribute name, Category:Value")->required();
    weightsCmd->add_option("--top", topN, "list length")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (app.got_subcommand(buildCmd)) {
            print_graph_summary(cmd_build_graph(load_config(configPath), &std::cerr));
        } else if (app.got_subcommand(trainCmd)) {
            print_train_report(cmd_train(load_config(configPath), graphFile, &std::cerr));
        } else if (app.got_subcommand(propagateCmd)) {
            print_propagate_summary(
                cmd_propagate(load_config(configPath), graphFile, modelFile, &std::cerr));
        } else if (app.got_subcommand(projectCmd)) {
            auto s = cmd_project(load_config(configPath), propagatedFile, &std::cerr);
            std::cout << "projected_words\t" << s.projectedWords << '\n'
                      << "skipped_words\t" << s.skippedWords << '\n';
        } else if (app.got_subcommand(evaluateCmd)) {
            auto s = cmd_evaluate(predictedFile, goldFile, dropSeedFile, reportFile, &std::cerr);
            print_eval(s.eval);
            if (!dropSeedFile.empty()) {
                std::cout << "dropped_seed_words\t" << s.droppedSeedWords << '\n';
            }
        } else if (app.got_subcommand(baselineCmd)) {
            auto s = cmd_baseline(corpusFile, baselineK, outFile, &std::cerr);
            std::cout << "baseline_words\t" << s.words << '\n'
                      << "baseline_attributes\t" << s.attributes << '\n';
        } else if (app.got_subcommand(runCmd)) {
            auto config = load_config(configPath);
            auto s = cmd_run(config, &std::cerr);
            print_graph_summary(s.graph);
            print_train_report(s.train);
            print_propagate_summary(s.propagation);
            std::cout << "predicted_words\t" << s.predictedWords << '\n';
            if (s.evaluated) {
                print_eval(s.eval);
                if (s.droppedSeedWords > 0) {
                    std::cout << "dropped_seed_words\t" << s.droppedSeedWords << '\n';
                }
            }
            for (const auto& path : s.written) std::cout << "wrote\t" << path.string() << '\n';
        } else if (app.got_subcommand(tuneCmd)) {
            auto config = load_config(configPath);
            auto r = cmd_tune(config, &std::cerr);
            for (const auto& score : r.all) {
                std::cout << "candidate\t" << feature_set_name(score.candidate.features) << '\t'
                          << "projection=" << (score.candidate.projection ? "on" : "off") << '\t'
                          << format_fixed(score.devF1, 4) << '\n';
            }
            std::cout << "best\t" << feature_set_name(r.best.features) << '\t'
                      << "projection=" << (r.best.projection ? "on" : "off") << '\t'
                      << format_fixed(r.devF1, 4) << '\n';
            std::cout << "wrote\t" << chosen_config_path(config).string() << '\n';
        } else if (app.got_subcommand(curveCmd)) {
            auto config = load_config(configPath);
            auto curve = cmd_seed_curve(config, &std::cerr);
            for (const auto& point : curve) {
                std::cout << "size\t" << point.seedSize << '\t' << format_fixed(point.f1, 4) << '\n';
            }
            std::cout << "wrote\t" << seed_curve_path(config).string() << '\n';
        } else if (app.got_subcommand(weightsCmd)) {
            auto t = cmd_inspect_weights(modelFile, attribute, topN, &std::cerr);
            for (const auto& e : t.highest) {
                std::cout << "high\t" << e.feature << '\t' << format_double(e.weight) << '\n';
            }
            for (const auto& e : t.lowest) {
                std::cout << "low\t" << e.feature << '\t' << format_double(e.weight) << '\n';
            }
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kOk;
}
