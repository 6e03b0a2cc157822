#pragma once

#include "lexigraph/graph.hpp"
#include "lexigraph/lexicon.hpp"
#include "lexigraph/model.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace lexigraph {

struct AttributeCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
};

struct EvalReport {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double microF1 = 0.0;
    std::size_t goldWords = 0;
    std::size_t predictedWords = 0;
    std::map<std::string, AttributeCounts> perAttribute;
};

// Micro-averaged F1 of predicted attribute sets against gold, over the gold
// words. A gold word without a predicted entry counts all its attributes as
// misses. Both lexicons must share one inventory. Empty counts give 0, not
// a division error.
EvalReport micro_f1(const Lexicon& predicted, const Lexicon& gold);

void write_report(const EvalReport& report, std::ostream& out);
void save_report(const EvalReport& report, const std::filesystem::path& path);

// Removes gold entries whose words appear in the seed, returning how many
// were dropped; evaluation never judges words the system was given.
std::size_t drop_seed_words(Lexicon& gold, const Lexicon& seed);

struct BaselineConfig {
    int k = 2;

    bool operator==(const BaselineConfig& other) const = default;
};

// Corpus-count baseline: a word gets every attribute observed with it at
// least k times in a tagged corpus (word<TAB>ATTR ATTR... per token). Words
// with no attribute reaching k are left out. k must lie in [2, 20].
Lexicon corpus_baseline(std::istream& in, const std::string& name, const BaselineConfig& config);
Lexicon load_corpus_baseline(const std::filesystem::path& path, const BaselineConfig& config);

struct TuneCandidate {
    std::set<FeatureKind> features;
    bool projection = true;
};

struct TuneScore {
    TuneCandidate candidate;
    double devF1 = 0.0;
};

struct TuneResult {
    TuneCandidate best;
    double devF1 = 0.0;
    std::vector<TuneScore> all;
};

// Runs the supplied pipeline handle for every feature subset and projection
// choice and picks the best dev micro-F1. Ties prefer fewer enabled feature
// kinds, then projection off, then the smaller kind set; the outcome does
// not depend on candidate list order.
using PipelineHandle = std::function<Lexicon(const std::set<FeatureKind>&, bool projection)>;
TuneResult tune(const std::vector<std::set<FeatureKind>>& featureSubsets,
                const std::vector<bool>& projectionChoices, const Lexicon& devGold,
                const PipelineHandle& pipeline);

struct WeightEntry {
    std::string feature;
    double weight = 0.0;
};

struct TopWeights {
    std::vector<WeightEntry> highest;
    std::vector<WeightEntry> lowest;
};

// The n highest- and lowest-weighted features of one attribute row, each
// list sorted by weight with name as the tie-break.
TopWeights top_weights(const WeightMatrix& model, const std::string& attribute, std::size_t n);

struct SeedCurvePoint {
    std::size_t seedSize = 0;
    double f1 = 0.0;
};

// Evaluates the pipeline at growing seed sizes, subsampling the full seed
// uniformly at the given sizes. Sampling is reproducible from the seed value.
std::vector<SeedCurvePoint> seed_curve(const Lexicon& fullSeed, const std::vector<std::size_t>& sizes,
                                       std::uint64_t seed,
                                       const std::function<double(const Lexicon&)>& evaluate);

void write_seed_curve(const std::vector<SeedCurvePoint>& curve, std::ostream& out);

} // namespace lexigraph
