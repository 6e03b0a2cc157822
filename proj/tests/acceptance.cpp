#include "lexigraph/evaluation.hpp"
#include "lexigraph/graph_build.hpp"
#include "lexigraph/projection.hpp"
#include "lexigraph/propagation.hpp"
#include "lexigraph/rng.hpp"
#include "lexigraph/text.hpp"

#include "synthetic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace lexigraph;
using lexitest::SyntheticData;
using lexitest::make_synthetic;

double uniform_pm1(Rng& rng) { return static_cast<double>(rng.below(2001)) / 1000.0 - 1.0; }

double sign_pm1(Rng& rng) { return rng.below(2) == 0 ? -1.0 : 1.0; }

const std::vector<std::string> kAttributePool = {"M:a", "M:b", "M:c", "M:d", "M:e"};

AttributeInventory small_inventory(std::size_t attrs) {
    std::set<std::string> names(kAttributePool.begin(), kAttributePool.begin() + attrs);
    return AttributeInventory::from_names(names);
}

// Analytic gradient of the training loss against central finite differences
// on randomized small graphs.
std::string check_gradient() {
    Rng rng(101);
    const double h = 1e-5;
    for (int round = 0; round < 100; ++round) {
        std::size_t nodes = 2 + rng.below(7);
        std::size_t attrs = 1 + rng.below(4);
        std::size_t feats = 1 + rng.below(6);

        std::vector<std::string> words;
        std::vector<char> labeled;
        for (std::size_t i = 0; i < nodes; ++i) {
            words.push_back("w" + std::to_string(i));
            labeled.push_back(rng.below(2) == 0 ? 0 : 1);
        }
        labeled[rng.below(nodes)] = 1;

        std::vector<std::string> featureNames;
        std::vector<FeatureKind> featureKinds;
        for (std::size_t f = 0; f < feats; ++f) {
            featureNames.push_back("cluster:f" + std::to_string(f));
            featureKinds.push_back(FeatureKind::Cluster);
        }

        std::vector<GraphEdgeSpec> edges;
        for (std::uint32_t i = 0; i < nodes; ++i) {
            for (std::uint32_t j = 0; j < nodes; ++j) {
                if (i == j || rng.below(3) != 0) continue;
                GraphEdgeSpec spec;
                spec.source = i;
                spec.target = j;
                for (std::uint32_t f = 0; f < feats; ++f) {
                    if (rng.below(2) == 0) spec.features.push_back(f);
                }
                if (spec.features.empty()) {
                    spec.features.push_back(static_cast<std::uint32_t>(rng.below(feats)));
                }
                edges.push_back(std::move(spec));
            }
        }
        if (edges.empty()) continue;

        FeatureGraph graph(words, labeled, FeatureCatalog(featureNames, featureKinds), edges);
        WeightMatrix model(small_inventory(attrs), graph.features());
        for (std::size_t a = 0; a < attrs; ++a) {
            for (std::size_t f = 0; f < feats; ++f) model.at(a, f) = uniform_pm1(rng);
        }

        NodeValues gold(nodes);
        for (std::size_t i = 0; i < nodes; ++i) {
            gold[i].assign(attrs, 0.0);
            if (graph.is_labeled(static_cast<std::uint32_t>(i))) {
                for (std::size_t a = 0; a < attrs; ++a) gold[i][a] = sign_pm1(rng);
            }
        }

        WeightMatrix analytic = loss_gradient(graph, gold, model);
        for (std::size_t a = 0; a < attrs; ++a) {
            for (std::size_t f = 0; f < feats; ++f) {
                double saved = model.at(a, f);
                model.at(a, f) = saved + h;
                double up = training_loss(graph, gold, model);
                model.at(a, f) = saved - h;
                double down = training_loss(graph, gold, model);
                model.at(a, f) = saved;
                double fd = (up - down) / (2.0 * h);
                double got = analytic.at(a, f);
                double rel = std::abs(got - fd) / std::max({1.0, std::abs(got), std::abs(fd)});
                if (rel > 1e-5) {
                    return "round " + std::to_string(round) + " cell (" + std::to_string(a) + "," +
                           std::to_string(f) + "): analytic " + format_double(got) +
                           " vs finite difference " + format_double(fd) + ", relative error " +
                           format_double(rel);
                }
            }
        }
    }
    return "";
}

// A rewrite-rule feature linking words of opposite tense must train to a
// negative weight and flip the propagated sign across the rule edge.
std::string check_sign_flip() {
    auto inventory = AttributeInventory::from_names({"Tense:Past", "Tense:Pres"});
    Lexicon seed(inventory);
    seed.insert_gold("played", {"Tense:Past"});
    seed.insert_gold("playing", {"Tense:Pres"});
    seed.insert_gold("walked", {"Tense:Past"});

    std::vector<std::string> words = {"played", "playing", "studied", "studying", "walked"};
    std::vector<char> labeled = {1, 1, 0, 0, 1};
    FeatureCatalog catalog({"cluster:c9", "suffix:ed:ing", "suffix:ing:ed"},
                           {FeatureKind::Cluster, FeatureKind::MorphTrans, FeatureKind::MorphTrans});

    std::vector<GraphEdgeSpec> edges;
    auto both = [&](std::uint32_t a, std::uint32_t b, std::uint32_t fab, std::uint32_t fba) {
        edges.push_back({a, b, {fab}});
        edges.push_back({b, a, {fba}});
    };
    both(0, 2, 0, 0);
    both(0, 4, 0, 0);
    both(2, 4, 0, 0);
    both(0, 1, 1, 2);
    both(2, 3, 1, 2);
    FeatureGraph graph(words, labeled, catalog, edges);

    WeightMatrix model = train(graph, seed, TrainConfig{});
    auto past = *model.inventory().index_of("Tense:Past");
    auto edIng = *graph.features().index_of("suffix:ed:ing");
    if (model.at(past, edIng) >= 0.0) {
        return "weight of suffix:ed:ing for Tense:Past is " + format_double(model.at(past, edIng)) +
               ", expected negative";
    }

    PropagationResult prop = propagate(graph, model, seed, PropagationConfig{});
    double studied = prop.values[*graph.node_of("studied")][past];
    double studying = prop.values[*graph.node_of("studying")][past];
    if (!(studied > 0.0 && studying < 0.0)) {
        return "Tense:Past of studied is " + format_double(studied) + " and of studying is " +
               format_double(studying) + ", expected opposite signs (positive, negative)";
    }
    return "";
}

// Full pipeline on a 2000-word synthetic language with a 200-word seed,
// scored with and without paradigm projection.
std::string check_synthetic_f1() {
    SyntheticData data = make_synthetic(500, 50, 7);
    if (data.full.size() != 2000 || data.seed.size() != 200 || data.test.size() != 1800) {
        return "synthetic language has " + std::to_string(data.full.size()) + " words and " +
               std::to_string(data.seed.size()) + " seed entries, expected 2000 and 200";
    }

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
    PropagationResult prop = propagate(graph, model, data.seed, PropagationConfig{});
    auto values = unlabeled_values(graph, prop.values);

    Lexicon thresholded = threshold_lexicon(values, data.seed.inventory());
    ParadigmSet paradigms(data.seed, "seed");
    Lexicon projected = project_lexicon(values, paradigms, true);

    double without = micro_f1(thresholded, data.test).microF1;
    double with = micro_f1(projected, data.test).microF1;
    if (without < 0.95) {
        return "micro-F1 without projection is " + format_fixed(without, 4) + ", expected >= 0.95";
    }
    if (with < 0.95) {
        return "micro-F1 with projection is " + format_fixed(with, 4) + ", expected >= 0.95";
    }
    return "";
}

// Projection always lands on a paradigm, is idempotent, and matches a brute
// force nearest-vector scan.
std::string check_projection() {
    Rng rng(202);
    int checked = 0;
    while (checked < 10000) {
        std::size_t attrs = 1 + rng.below(5);
        Lexicon members(small_inventory(attrs));
        std::size_t count = 1 + rng.below(8);
        for (std::size_t i = 0; i < count; ++i) {
            AttributeVector v(attrs);
            for (auto& c : v) c = sign_pm1(rng);
            members.insert("p" + std::to_string(i), v);
        }
        ParadigmSet paradigms(members, "random");

        for (int k = 0; k < 50; ++k, ++checked) {
            AttributeVector v(attrs);
            for (auto& c : v) c = uniform_pm1(rng);
            const AttributeVector& projected = project(v, paradigms);

            bool member = false;
            for (const auto& p : paradigms.paradigms()) {
                if (p == projected) {
                    member = true;
                    break;
                }
            }
            if (!member) return "projected vector is not a member of the paradigm set";
            if (project(projected, paradigms) != projected) return "projection is not idempotent";

            const AttributeVector* best = &paradigms.paradigms().front();
            double bestDistance = squared_distance(v, *best);
            for (const auto& p : paradigms.paradigms()) {
                double d = squared_distance(v, p);
                if (d < bestDistance) {
                    bestDistance = d;
                    best = &p;
                }
            }
            if (projected != *best) return "projection disagrees with the brute force scan";
        }
    }
    return "";
}

// micro_f1 against independent set arithmetic over attribute sets.
std::string check_micro_f1_oracle() {
    Rng rng(303);
    for (int round = 0; round < 1000; ++round) {
        std::size_t attrs = 1 + rng.below(5);
        auto inventory = small_inventory(attrs);
        Lexicon gold(inventory);
        Lexicon predicted(inventory);

        std::size_t goldWords = 1 + rng.below(20);
        for (std::size_t i = 0; i < goldWords; ++i) {
            std::string word = "g" + std::to_string(i);
            AttributeVector v(attrs);
            for (auto& c : v) c = sign_pm1(rng);
            gold.insert(word, v);
            if (rng.below(4) != 0) {
                AttributeVector p(attrs);
                for (auto& c : p) c = sign_pm1(rng);
                predicted.insert(word, p);
            }
        }
        std::size_t extras = rng.below(5);
        for (std::size_t i = 0; i < extras; ++i) {
            AttributeVector p(attrs);
            for (auto& c : p) c = sign_pm1(rng);
            predicted.insert("x" + std::to_string(i), p);
        }

        std::uint64_t tp = 0;
        std::uint64_t fp = 0;
        std::uint64_t fn = 0;
        for (const auto& [word, v] : gold.entries()) {
            auto goldSet = gold.attribute_set(word);
            std::set<std::string> predSet;
            if (predicted.contains(word)) predSet = predicted.attribute_set(word);
            for (const auto& attr : predSet) {
                if (goldSet.count(attr)) {
                    ++tp;
                } else {
                    ++fp;
                }
            }
            for (const auto& attr : goldSet) {
                if (!predSet.count(attr)) ++fn;
            }
        }
        std::uint64_t denominator = 2 * tp + fp + fn;
        double f1 = denominator == 0
                        ? 0.0
                        : static_cast<double>(2 * tp) / static_cast<double>(denominator);

        EvalReport report = micro_f1(predicted, gold);
        if (report.tp != tp || report.fp != fp || report.fn != fn || report.microF1 != f1) {
            return "round " + std::to_string(round) + ": got tp=" + std::to_string(report.tp) +
                   " fp=" + std::to_string(report.fp) + " fn=" + std::to_string(report.fn) +
                   " f1=" + format_double(report.microF1) + ", oracle says tp=" + std::to_string(tp) +
                   " fp=" + std::to_string(fp) + " fn=" + std::to_string(fn) +
                   " f1=" + format_double(f1);
        }
    }
    return "";
}

// Degree caps, pair symmetry with mirrored rule features, rule inversion
// involution, and byte-identical rebuilds from the same seed.
std::string check_graph_invariants() {
    Rng rng(404);

    for (int i = 0; i < 50; ++i) {
        MorphRule rule;
        rule.isSuffix = rng.below(2) == 0;
        rule.from = i % 5 == 0 ? "" : "f" + std::to_string(rng.below(30));
        rule.to = "t" + std::to_string(rng.below(30));
        if (invert_rule(invert_rule(rule)) != rule) return "rule inversion is not an involution";
        if (parse_rule(format_rule(rule)) != rule) return "rule does not round-trip through text";
    }

    for (int round = 0; round < 30; ++round) {
        std::size_t n = 5 + rng.below(36);
        auto inventory = AttributeInventory::from_names({"POS:Noun"});
        Lexicon seed(inventory);
        std::vector<std::string> unlabeled;
        std::vector<std::string> words;
        for (std::size_t i = 0; i < n; ++i) {
            std::string word = "w" + std::string(i < 10 ? "0" : "") + std::to_string(i);
            words.push_back(word);
            if (rng.below(2) == 0) {
                seed.insert_gold(word, {"POS:Noun"});
            } else {
                unlabeled.push_back(word);
            }
        }
        if (seed.empty()) seed.insert_gold(words[0], {"POS:Noun"});
        Vocabulary vocab(seed, unlabeled);

        std::uint32_t cap = 1 + static_cast<std::uint32_t>(rng.below(5));
        std::vector<CandidateGroup> groups;
        std::size_t symmetric = 1 + rng.below(4);
        for (std::size_t gi = 0; gi < symmetric; ++gi) {
            CandidateGroup g;
            g.feature = (gi % 2 == 0 ? "cluster:g" : "suffix:g") + std::to_string(gi);
            g.kind = gi % 2 == 0 ? FeatureKind::Cluster : FeatureKind::Suffix;
            std::size_t size = 2 + rng.below(std::min<std::size_t>(n, 12) - 1);
            for (auto id : Rng(rng.next()).sample(static_cast<std::uint32_t>(n),
                                                  static_cast<std::uint32_t>(size))) {
                g.members.push_back(id);
            }
            groups.push_back(std::move(g));
        }
        std::size_t rules = 1 + rng.below(3);
        for (std::size_t gi = 0; gi < rules; ++gi) {
            MorphRule rule{true, "a" + std::to_string(gi), "b" + std::to_string(gi)};
            CandidateGroup g;
            g.feature = format_rule(rule);
            g.kind = FeatureKind::MorphTrans;
            g.inverse = format_rule(invert_rule(rule));
            std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
            std::size_t wanted = 1 + rng.below(12);
            for (std::size_t p = 0; p < wanted; ++p) {
                auto a = static_cast<std::uint32_t>(rng.below(n));
                auto b = static_cast<std::uint32_t>(rng.below(n));
                if (a == b) continue;
                pairs.insert(std::minmax(a, b));
            }
            if (pairs.empty()) pairs.insert({0, 1});
            g.pairs.assign(pairs.begin(), pairs.end());
            groups.push_back(std::move(g));
        }

        std::uint64_t buildSeed = rng.next();
        FeatureGraph graph = build_graph(vocab, groups, cap, buildSeed);

        const auto& catalog = graph.features();
        auto inverse_name = [&](const std::string& name, FeatureKind kind) {
            if (kind != FeatureKind::MorphTrans) return name;
            return format_rule(invert_rule(parse_rule(name)));
        };

        std::map<std::pair<std::uint32_t, std::uint32_t>, std::set<std::string>> edgeNames;
        for (std::uint32_t u = 0; u < graph.node_count(); ++u) {
            std::map<std::uint32_t, std::size_t> degree;
            for (const auto& edge : graph.neighbors(u)) {
                for (auto f : graph.edge_features(edge)) {
                    ++degree[f];
                    edgeNames[{u, edge.target}].insert(catalog.name(f));
                }
            }
            for (const auto& [f, d] : degree) {
                if (d > cap) {
                    return "node " + graph.word(u) + " has " + std::to_string(d) +
                           " neighbors for feature " + catalog.name(f) + ", cap is " +
                           std::to_string(cap);
                }
            }
        }
        for (const auto& [pair, names] : edgeNames) {
            std::set<std::string> mirrored;
            for (const auto& name : names) {
                mirrored.insert(inverse_name(name, catalog.kind(*catalog.index_of(name))));
            }
            auto it = edgeNames.find({pair.second, pair.first});
            if (it == edgeNames.end() || it->second != mirrored) {
                return "edge " + graph.word(pair.first) + " -> " + graph.word(pair.second) +
                       " has no mirror with inverted features";
            }
        }

        FeatureGraph again = build_graph(vocab, groups, cap, buildSeed);
        std::ostringstream first;
        std::ostringstream second;
        write_graph(graph, first);
        write_graph(again, second);
        if (first.str() != second.str()) {
            return "two builds from seed " + std::to_string(buildSeed) + " serialize differently";
        }
    }
    return "";
}

// Propagation terminates well before the sweep limit, and a zero model stops
// after two sweeps with every unlabeled vector still at zero.
std::string check_convergence() {
    SyntheticData data = make_synthetic(60, 20, 3);
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

    PropagationConfig config;
    PropagationResult prop = propagate(graph, model, data.seed, config);
    if (!prop.converged || prop.sweeps >= config.maxSweeps) {
        return "propagation ran " + std::to_string(prop.sweeps) + " sweeps with maxSweeps " +
               std::to_string(config.maxSweeps) + ", converged=" + (prop.converged ? "true" : "false");
    }

    WeightMatrix zero(data.seed.inventory(), graph.features());
    PropagationResult still = propagate(graph, zero, data.seed, config);
    if (!still.converged || still.sweeps != 2) {
        return "zero model ran " + std::to_string(still.sweeps) + " sweeps, expected exactly 2";
    }
    for (auto node : graph.unlabeled_nodes()) {
        for (double c : still.values[node]) {
            if (c != 0.0) return "zero model left a nonzero value on " + graph.word(node);
        }
    }
    return "";
}

// Raising the baseline count threshold only ever shrinks the kept
// (word, attribute) set, and the boundary is exact.
std::string check_baseline() {
    SyntheticData data = make_synthetic(40, 12, 5);
    std::set<std::pair<std::string, std::string>> previous;
    for (int k = 2; k <= 20; ++k) {
        std::istringstream in(data.corpusText);
        Lexicon base = corpus_baseline(in, "corpus", BaselineConfig{k});
        std::set<std::pair<std::string, std::string>> kept;
        for (const auto& [word, v] : base.entries()) {
            for (const auto& attr : base.attribute_set(word)) kept.insert({word, attr});
        }
        if (k > 2) {
            for (const auto& pair : kept) {
                if (!previous.count(pair)) {
                    return "k=" + std::to_string(k) + " kept " + pair.first + "/" + pair.second +
                           " which k=" + std::to_string(k - 1) + " did not";
                }
            }
        }
        previous = std::move(kept);
    }

    for (int k = 2; k <= 20; ++k) {
        std::string corpus;
        for (int i = 0; i < k; ++i) corpus += "yes\tPOS:Noun\n";
        for (int i = 0; i < k - 1; ++i) corpus += "no\tPOS:Noun\n";
        std::istringstream in(corpus);
        Lexicon base = corpus_baseline(in, "corpus", BaselineConfig{k});
        if (!base.contains("yes") || base.attribute_set("yes") != std::set<std::string>{"POS:Noun"}) {
            return "a word seen exactly " + std::to_string(k) + " times is missing at k=" +
                   std::to_string(k);
        }
        if (base.contains("no")) {
            return "a word seen " + std::to_string(k - 1) + " times survived k=" + std::to_string(k);
        }
    }
    return "";
}

struct Criterion {
    const char* name;
    double budgetSeconds;
    std::function<std::string()> run;
};

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"gradient-matches-finite-differences", 10.0, check_gradient},
        {"rule-feature-sign-flip", 1.0, check_sign_flip},
        {"synthetic-language-micro-f1", 30.0, check_synthetic_f1},
        {"projection-validity", 5.0, check_projection},
        {"micro-f1-oracle", 5.0, check_micro_f1_oracle},
        {"graph-invariants", 10.0, check_graph_invariants},
        {"propagation-convergence", 5.0, check_convergence},
        {"baseline-threshold", 2.0, check_baseline},
    };

    bool allPassed = true;
    for (const auto& criterion : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        try {
            detail = criterion.run();
        } catch (const std::exception& e) {
            detail = std::string("unexpected exception: ") + e.what();
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (detail.empty() && seconds > criterion.budgetSeconds) {
            detail = "took " + format_fixed(seconds, 2) + "s, budget is " +
                     format_fixed(criterion.budgetSeconds, 2) + "s";
        }
        if (detail.empty()) {
            std::cout << "PASS " << criterion.name << " (" << format_fixed(seconds, 2) << "s)\n";
        } else {
            std::cout << "FAIL " << criterion.name << ": " << detail << '\n';
            allPassed = false;
        }
    }
    return allPassed ? 0 : 1;
}
