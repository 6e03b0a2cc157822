#include "lexigraph/evaluation.hpp"

#include "lexigraph/errors.hpp"
#include "lexigraph/rng.hpp"
#include "lexigraph/text.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

namespace lexigraph {

EvalReport micro_f1(const Lexicon& predicted, const Lexicon& gold) {
    if (predicted.inventory() != gold.inventory()) {
        throw InventoryError("predicted and gold lexicons use different attribute inventories");
    }
    EvalReport report;
    report.goldWords = gold.size();
    for (const auto& [word, goldVector] : gold.entries()) {
        auto goldSet = to_attribute_set(gold.inventory(), goldVector);
        const AttributeVector* predVector = predicted.find(word);
        std::set<std::string> predSet;
        if (predVector) {
            ++report.predictedWords;
            predSet = to_attribute_set(predicted.inventory(), *predVector);
        }
        for (const auto& attr : predSet) {
            if (goldSet.count(attr)) {
                ++report.tp;
                ++report.perAttribute[attr].tp;
            } else {
                ++report.fp;
                ++report.perAttribute[attr].fp;
            }
        }
        for (const auto& attr : goldSet) {
            if (!predSet.count(attr)) {
                ++report.fn;
                ++report.perAttribute[attr].fn;
            }
        }
    }
    auto ratio = [](std::uint64_t num, std::uint64_t den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    };
    report.precision = ratio(report.tp, report.tp + report.fp);
    report.recall = ratio(report.tp, report.tp + report.fn);
    report.microF1 = ratio(2 * report.tp, 2 * report.tp + report.fp + report.fn);
    return report;
}

void write_report(const EvalReport& report, std::ostream& out) {
    out << "#lexigraph-report v1" << '\n';
    out << "gold_words\t" << report.goldWords << '\n';
    out << "predicted_words\t" << report.predictedWords << '\n';
    out << "tp\t" << report.tp << '\n';
    out << "fp\t" << report.fp << '\n';
    out << "fn\t" << report.fn << '\n';
    out << "precision\t" << format_fixed(report.precision, 4) << '\n';
    out << "recall\t" << format_fixed(report.recall, 4) << '\n';
    out << "micro_f1\t" << format_fixed(report.microF1, 4) << '\n';
    out << "#per-attribute\ttp\tfp\tfn" << '\n';
    for (const auto& [attr, counts] : report.perAttribute) {
        out << attr << '\t' << counts.tp << '\t' << counts.fp << '\t' << counts.fn << '\n';
    }
}

void save_report(const EvalReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write report file " + path.string());
    write_report(report, out);
    if (!out.good()) throw IoError("failed writing report file " + path.string());
}

std::size_t drop_seed_words(Lexicon& gold, const Lexicon& seed) {
    std::vector<std::string> shared;
    for (const auto& [word, v] : gold.entries()) {
        if (seed.contains(word)) shared.push_back(word);
    }
    for (const auto& word : shared) gold.erase(word);
    return shared.size();
}

Lexicon corpus_baseline(std::istream& in, const std::string& name, const BaselineConfig& config) {
    if (config.k < 2 || config.k > 20) {
        throw std::invalid_argument("baseline k must lie in [2, 20], got " + std::to_string(config.k));
    }
    std::map<std::string, std::map<std::string, std::size_t>> counts;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw ParseError(name, lineno, "expected word<TAB>attributes");
        }
        std::string word = line.substr(0, tab);
        if (word.empty() || word.find(' ') != std::string::npos) {
            throw ParseError(name, lineno, "bad word field '" + word + "'");
        }
        auto tokens = split_ws(std::string_view(line).substr(tab + 1));
        if (tokens.empty()) {
            throw ParseError(name, lineno, "token '" + word + "' lists no attributes");
        }
        std::set<std::string> lineAttrs;
        for (auto token : tokens) {
            std::string attr(token);
            if (attr.find('=') != std::string::npos || !valid_attribute_name(attr)) {
                throw ParseError(name, lineno, "bad corpus attribute '" + attr + "'");
            }
            lineAttrs.insert(std::move(attr));
        }
        for (const auto& attr : lineAttrs) ++counts[word][attr];
    }

    auto threshold = static_cast<std::size_t>(config.k);
    std::set<std::string> keptAttrs;
    std::map<std::string, std::set<std::string>> keptWords;
    for (const auto& [word, attrCounts] : counts) {
        for (const auto& [attr, count] : attrCounts) {
            if (count >= threshold) {
                keptWords[word].insert(attr);
                keptAttrs.insert(attr);
            }
        }
    }
    Lexicon out(AttributeInventory::from_names(keptAttrs));
    for (const auto& [word, attrs] : keptWords) {
        out.insert_gold(word, attrs);
    }
    return out;
}

Lexicon load_corpus_baseline(const std::filesystem::path& path, const BaselineConfig& config) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus file " + path.string());
    return corpus_baseline(in, path.string(), config);
}

namespace {

// Bitmask over FeatureKind in enum order, for the deterministic tie-break.
unsigned kind_mask(const std::set<FeatureKind>& kinds) {
    unsigned mask = 0;
    for (auto kind : kinds) mask |= 1u << static_cast<unsigned>(kind);
    return mask;
}

bool better_candidate(const TuneScore& a, const TuneScore& b) {
    if (a.devF1 != b.devF1) return a.devF1 > b.devF1;
    if (a.candidate.features.size() != b.candidate.features.size()) {
        return a.candidate.features.size() < b.candidate.features.size();
    }
    if (a.candidate.projection != b.candidate.projection) return !a.candidate.projection;
    return kind_mask(a.candidate.features) < kind_mask(b.candidate.features);
}

} // namespace

TuneResult tune(const std::vector<std::set<FeatureKind>>& featureSubsets,
                const std::vector<bool>& projectionChoices, const Lexicon& devGold,
                const PipelineHandle& pipeline) {
    if (featureSubsets.empty()) throw std::invalid_argument("tune needs at least one feature subset");
    if (projectionChoices.empty()) throw std::invalid_argument("tune needs at least one projection choice");
    if (devGold.empty()) throw std::invalid_argument("tune needs a nonempty dev lexicon");
    for (const auto& subset : featureSubsets) {
        if (subset.empty()) throw std::invalid_argument("tune feature subsets must be nonempty");
    }

    TuneResult result;
    for (const auto& subset : featureSubsets) {
        for (bool projection : projectionChoices) {
            TuneScore score;
            score.candidate.features = subset;
            score.candidate.projection = projection;
            Lexicon predicted = pipeline(subset, projection);
            score.devF1 = micro_f1(predicted, devGold).microF1;
            result.all.push_back(score);
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < result.all.size(); ++i) {
        if (better_candidate(result.all[i], result.all[best])) best = i;
    }
    result.best = result.all[best].candidate;
    result.devF1 = result.all[best].devF1;
    return result;
}

TopWeights top_weights(const WeightMatrix& model, const std::string& attribute, std::size_t n) {
    auto attr = model.inventory().index_of(attribute);
    if (!attr) throw std::invalid_argument("unknown attribute '" + attribute + "'");

    std::vector<WeightEntry> entries;
    entries.reserve(model.feature_count());
    for (std::size_t f = 0; f < model.feature_count(); ++f) {
        entries.push_back({model.features().name(f), model.at(*attr, f)});
    }
    auto take = std::min(n, entries.size());

    TopWeights out;
    std::sort(entries.begin(), entries.end(), [](const WeightEntry& a, const WeightEntry& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return a.feature < b.feature;
    });
    out.highest.assign(entries.begin(), entries.begin() + take);
    std::sort(entries.begin(), entries.end(), [](const WeightEntry& a, const WeightEntry& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        return a.feature < b.feature;
    });
    out.lowest.assign(entries.begin(), entries.begin() + take);
    return out;
}

std::vector<SeedCurvePoint> seed_curve(const Lexicon& fullSeed, const std::vector<std::size_t>& sizes,
                                       std::uint64_t seed,
                                       const std::function<double(const Lexicon&)>& evaluate) {
    if (fullSeed.empty()) throw std::invalid_argument("seed curve needs a nonempty seed lexicon");
    for (auto size : sizes) {
        if (size == 0 || size > fullSeed.size()) {
            throw std::invalid_argument("seed curve size " + std::to_string(size) +
                                        " outside [1, " + std::to_string(fullSeed.size()) + "]");
        }
    }
    std::vector<const std::string*> words;
    words.reserve(fullSeed.size());
    for (const auto& [word, v] : fullSeed.entries()) words.push_back(&word);

    Rng rng(seed);
    std::vector<SeedCurvePoint> curve;
    curve.reserve(sizes.size());
    for (auto size : sizes) {
        auto picks = rng.sample(static_cast<std::uint32_t>(words.size()), static_cast<std::uint32_t>(size));
        Lexicon sub(fullSeed.inventory());
        for (auto p : picks) {
            const std::string& word = *words[p];
            sub.insert(word, *fullSeed.find(word));
        }
        curve.push_back({size, evaluate(sub)});
    }
    return curve;
}

void write_seed_curve(const std::vector<SeedCurvePoint>& curve, std::ostream& out) {
    out << "#lexigraph-seed-curve v1" << '\n';
    out << "#seed_size\tmicro_f1" << '\n';
    for (const auto& point : curve) {
        out << point.seedSize << '\t' << format_fixed(point.f1, 4) << '\n';
    }
}

} // namespace lexigraph
