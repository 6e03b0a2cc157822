#include "lexigraph/errors.hpp"
#include "lexigraph/graph.hpp"
#include "lexigraph/graph_build.hpp"

#include <doctest.h>

#include <map>
#include <set>
#include <sstream>
#include <utility>

using namespace lexigraph;

namespace {

std::string dump(const FeatureGraph& graph) {
    std::ostringstream out;
    write_graph(graph, out);
    return out.str();
}

FeatureGraph tiny_graph() {
    FeatureCatalog catalog({"cluster:1", "suffix:ts"},
                           {FeatureKind::Cluster, FeatureKind::Suffix});
    std::vector<GraphEdgeSpec> edges;
    edges.push_back({0, 1, {0}});
    edges.push_back({1, 0, {0}});
    edges.push_back({0, 1, {1}});
    edges.push_back({2, 0, {0}});
    edges.push_back({0, 2, {0}});
    return FeatureGraph({"cat", "cats", "dog"}, {1, 0, 1}, catalog, std::move(edges));
}

} // namespace

TEST_CASE("feature kinds render and parse") {
    CHECK(feature_kind_name(FeatureKind::MorphTrans) == "morphtrans");
    CHECK(*feature_kind_from("prefix") == FeatureKind::Prefix);
    CHECK_FALSE(feature_kind_from("affix"));
}

TEST_CASE("graph construction merges parallel edges and sorts adjacency") {
    FeatureGraph g = tiny_graph();
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 4);
    CHECK(g.labeled_nodes() == std::vector<FeatureGraph::NodeId>{0, 2});
    CHECK(g.unlabeled_nodes() == std::vector<FeatureGraph::NodeId>{1});
    CHECK(*g.node_of("cats") == 1);
    CHECK_FALSE(g.node_of("bird"));

    auto out = g.neighbors(0);
    REQUIRE(out.size() == 2);
    CHECK(out[0].target == 1);
    CHECK(out[1].target == 2);
    auto merged = g.edge_features(out[0]);
    REQUIRE(merged.size() == 2);
    CHECK(merged[0] == 0);
    CHECK(merged[1] == 1);
    CHECK(g.edge_features(out[1]).size() == 1);
}

TEST_CASE("graph construction rejects malformed input") {
    FeatureCatalog catalog({"cluster:1"}, {FeatureKind::Cluster});
    std::vector<GraphEdgeSpec> ok;
    ok.push_back({0, 1, {0}});

    CHECK_THROWS_AS(FeatureGraph({"b", "a"}, {0, 0}, catalog, {}), FormatError);
    CHECK_THROWS_AS(FeatureGraph({"a", "a"}, {0, 0}, catalog, {}), FormatError);
    CHECK_THROWS_AS(FeatureGraph({"a", "b"}, {0}, catalog, {}), FormatError);

    std::vector<GraphEdgeSpec> self;
    self.push_back({1, 1, {0}});
    CHECK_THROWS_AS(FeatureGraph({"a", "b"}, {0, 0}, catalog, std::move(self)), FormatError);

    std::vector<GraphEdgeSpec> empty;
    empty.push_back({0, 1, {}});
    CHECK_THROWS_AS(FeatureGraph({"a", "b"}, {0, 0}, catalog, std::move(empty)), FormatError);

    std::vector<GraphEdgeSpec> range;
    range.push_back({0, 2, {0}});
    CHECK_THROWS_AS(FeatureGraph({"a", "b"}, {0, 0}, catalog, std::move(range)), FormatError);

    std::vector<GraphEdgeSpec> feat;
    feat.push_back({0, 1, {7}});
    CHECK_THROWS_AS(FeatureGraph({"a", "b"}, {0, 0}, catalog, std::move(feat)), FormatError);

    CHECK_THROWS_AS(FeatureCatalog({"f:1", "f:1"}, {FeatureKind::Cluster, FeatureKind::Cluster}),
                    FormatError);
}

TEST_CASE("graph dump is byte-stable and round-trips") {
    FeatureGraph g = tiny_graph();
    std::string text = dump(g);
    CHECK(text ==
          "#lexigraph-graph v1\n"
          "#nodes 3\n"
          "0\tcat\tL\n"
          "1\tcats\tU\n"
          "2\tdog\tL\n"
          "#features 2\n"
          "0\tcluster:1\tcluster\n"
          "1\tsuffix:ts\tsuffix\n"
          "#edges 4\n"
          "0\t1\t0,1\n"
          "0\t2\t0\n"
          "1\t0\t0\n"
          "2\t0\t0\n");

    std::istringstream in(text);
    FeatureGraph back = read_graph(in, "test");
    CHECK(dump(back) == text);
    CHECK(back.features() == g.features());
    CHECK(back.words() == g.words());
}

TEST_CASE("graph reading rejects corrupt files") {
    auto fails = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(read_graph(in, "test"), std::runtime_error);
    };
    fails("");
    fails("#other-format v1\n");
    fails("#lexigraph-graph v1\n#nodes 1\n");
    fails("#lexigraph-graph v1\n#nodes 1\n5\tcat\tL\n#features 0\n#edges 0\n");
    fails("#lexigraph-graph v1\n#nodes 1\n0\tcat\tX\n#features 0\n#edges 0\n");
    fails("#lexigraph-graph v1\n#nodes 1\n0\tcat\tL\n#features 0\n#edges 1\n0\t0\t\n");
    fails("#lexigraph-graph v1\n#nodes 1\n0\tcat\tL\n#features 0\n#edges 0\ntrailing\n");
    fails("#lexigraph-graph v1\n#nodes 2\n0\tcat\tL\n1\tdog\tU\n#features 1\n"
          "0\tcluster:1\tmystery\n#edges 0\n");
}

TEST_CASE("rules parse, invert, and format") {
    MorphRule rule = parse_rule("suffix:a:as");
    CHECK(rule.isSuffix);
    CHECK(rule.from == "a");
    CHECK(rule.to == "as");
    CHECK(format_rule(rule) == "suffix:a:as");

    MorphRule back = invert_rule(rule);
    CHECK(back.from == "as");
    CHECK(back.to == "a");
    CHECK(invert_rule(back) == rule);

    MorphRule null = parse_rule("prefix:un:{null}");
    CHECK_FALSE(null.isSuffix);
    CHECK(null.from == "un");
    CHECK(null.to == "");
    CHECK(format_rule(null) == "prefix:un:{null}");
    CHECK(format_rule(invert_rule(null)) == "prefix:{null}:un");

    CHECK_THROWS_AS(parse_rule("suffix:a"), ParseError);
    CHECK_THROWS_AS(parse_rule("suffix:a:b:c"), ParseError);
    CHECK_THROWS_AS(parse_rule("stem:a:b"), ParseError);
    CHECK_THROWS_AS(parse_rule("suffix::b"), ParseError);
}

TEST_CASE("vocabulary is the sorted union with seed-driven labels") {
    Lexicon seed(AttributeInventory::from_names({"POS:Noun"}));
    seed.insert_gold("cat", {"POS:Noun"});
    seed.insert_gold("dog", {"POS:Noun"});
    Vocabulary vocab(seed, {"zebra", "cat", "ant"});
    CHECK(vocab.words() == std::vector<std::string>{"ant", "cat", "dog", "zebra"});
    CHECK(vocab.labeled() == std::vector<char>{0, 1, 1, 0});
    CHECK(*vocab.id_of("dog") == 2);
    CHECK_FALSE(vocab.id_of("bird"));
}

namespace {

Vocabulary small_vocab(Lexicon& seedOut) {
    auto inv = AttributeInventory::from_names({"POS:Noun", "POS:Verb"});
    Lexicon seed(inv);
    seed.insert_gold("talked", {"POS:Verb"});
    seed.insert_gold("walked", {"POS:Verb"});
    seed.insert_gold("tamed", {"POS:Verb"});
    seed.insert_gold("cat", {"POS:Noun"});
    seedOut = seed;
    return Vocabulary(seed, {"talking", "walking", "jumped"});
}

} // namespace

TEST_CASE("cluster provider groups in-vocabulary words") {
    Lexicon seed;
    Vocabulary vocab = small_vocab(seed);
    BuildReport report;
    std::istringstream in(
        "talked\tc7\n"
        "talking\tc7\n"
        "ghost\tc7\n"
        "cat\tc9\n");
    auto groups = cluster_features(in, "clusters", vocab, report);
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].feature == "cluster:c7");
    CHECK(groups[0].kind == FeatureKind::Cluster);
    CHECK(groups[0].members.size() == 2);
    CHECK(report.clusterWordsSkipped == 1);
    REQUIRE(report.warnings.size() == 1);

    std::istringstream bad("word only\n");
    CHECK_THROWS_AS(cluster_features(bad, "clusters", vocab, report), ParseError);
}

TEST_CASE("affix provider admits affixes seen at least twice in the seed") {
    Lexicon seed;
    Vocabulary vocab = small_vocab(seed);
    BuildReport report;
    auto groups = affix_features(vocab, seed, true, false, report);

    std::map<std::string, std::size_t> sizes;
    for (const auto& g : groups) {
        CHECK(g.kind == FeatureKind::Suffix);
        sizes[g.feature] = g.members.size();
    }
    REQUIRE(sizes.count("suffix:ed"));
    CHECK(sizes["suffix:ed"] == 4);
    REQUIRE(sizes.count("suffix:ked"));
    CHECK(sizes["suffix:ked"] == 2);
    CHECK_FALSE(sizes.count("suffix:ing"));
    CHECK_FALSE(sizes.count("suffix:at"));

    auto prefixGroups = affix_features(vocab, seed, false, true, report);
    std::map<std::string, std::size_t> prefixSizes;
    for (const auto& g : prefixGroups) {
        CHECK(g.kind == FeatureKind::Prefix);
        prefixSizes[g.feature] = g.members.size();
    }
    REQUIRE(prefixSizes.size() == 1);
    REQUIRE(prefixSizes.count("prefix:ta"));
    CHECK(prefixSizes["prefix:ta"] == 3);
}

TEST_CASE("morphtrans provider normalizes pair direction and deduplicates") {
    Lexicon seed;
    Vocabulary vocab = small_vocab(seed);
    BuildReport report;
    std::istringstream in(
        "talking\ttalked\tsuffix:ing:ed\n"
        "talked\ttalking\tsuffix:ed:ing\n"
        "walked\twalking\tsuffix:ed:ing\n"
        "ghost\ttalking\tsuffix:x:y\n"
        "talked\ttalked\tsuffix:ed:ed\n");
    auto groups = morphtrans_features(in, "rules", vocab, report);
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].feature == "suffix:ed:ing");
    CHECK(groups[0].inverse == "suffix:ing:ed");
    CHECK(groups[0].pairs.size() == 2);
    for (auto [a, b] : groups[0].pairs) CHECK(a < b);
    CHECK(report.ruleTriplesSkipped == 1);
    CHECK(report.selfPairsSkipped == 1);

    std::istringstream bad("a\tb\n");
    CHECK_THROWS_AS(morphtrans_features(bad, "rules", vocab, report), ParseError);
}

TEST_CASE("build_graph validates arguments") {
    Lexicon seed;
    Vocabulary vocab = small_vocab(seed);
    Lexicon emptySeed(seed.inventory());
    Vocabulary empty(emptySeed, {});
    CHECK_THROWS_AS(build_graph(empty, {}, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_graph(vocab, {}, 0, 1), std::invalid_argument);

    CandidateGroup g;
    g.feature = "cluster:c1";
    g.members = {0, 1};
    std::vector<CandidateGroup> dup = {g, g};
    CHECK_THROWS_AS(build_graph(vocab, dup, 10, 1), FormatError);
}

TEST_CASE("groups within budget keep every pair without sampling") {
    Lexicon seed;
    Vocabulary vocab = small_vocab(seed);
    CandidateGroup g;
    g.feature = "cluster:c1";
    g.kind = FeatureKind::Cluster;
    g.members = {0, 2, 4};

    BuildReport report;
    FeatureGraph a = build_graph(vocab, {g}, 2, 1, &report);
    CHECK(report.candidatePairs == 3);
    CHECK(report.keptPairs == 3);
    CHECK(a.edge_count() == 6);

    FeatureGraph b = build_graph(vocab, {g}, 2, 999);
    CHECK(dump(a) == dump(b));
}

TEST_CASE("a three-member group with cap one keeps exactly one pair") {
    Lexicon seed;
    Vocabulary vocab = small_vocab(seed);
    CandidateGroup g;
    g.feature = "cluster:c1";
    g.kind = FeatureKind::Cluster;
    g.members = {0, 2, 4};

    BuildReport report;
    FeatureGraph graph = build_graph(vocab, {g}, 1, 7, &report);
    CHECK(report.candidatePairs == 3);
    CHECK(report.keptPairs == 1);
    CHECK(graph.edge_count() == 2);
    for (std::uint32_t v = 0; v < graph.node_count(); ++v) {
        CHECK(graph.neighbors(v).size() <= 1);
    }
}

TEST_CASE("morphtrans pairs add mirrored edges under shared degree budgets") {
    Lexicon seed;
    Vocabulary vocab = small_vocab(seed);
    CandidateGroup g;
    g.feature = "suffix:ed:ing";
    g.kind = FeatureKind::MorphTrans;
    g.inverse = "suffix:ing:ed";
    g.pairs = {{*vocab.id_of("talked"), *vocab.id_of("talking")},
               {*vocab.id_of("walked"), *vocab.id_of("walking")}};

    BuildReport report;
    FeatureGraph graph = build_graph(vocab, {g}, 100, 1, &report);
    CHECK(report.keptPairs == 2);
    CHECK(graph.edge_count() == 4);
    REQUIRE(graph.features().size() == 2);
    CHECK(graph.features().name(0) == "suffix:ed:ing");
    CHECK(graph.features().name(1) == "suffix:ing:ed");

    auto talked = *graph.node_of("talked");
    auto talking = *graph.node_of("talking");
    auto out = graph.neighbors(talked);
    REQUIRE(out.size() == 1);
    CHECK(out[0].target == talking);
    CHECK(graph.features().name(graph.edge_features(out[0])[0]) == "suffix:ed:ing");
    auto back = graph.neighbors(talking);
    REQUIRE(back.size() == 1);
    CHECK(back[0].target == talked);
    CHECK(graph.features().name(graph.edge_features(back[0])[0]) == "suffix:ing:ed");
}

TEST_CASE("build output does not depend on provider call order") {
    Lexicon seed;
    Vocabulary vocab = small_vocab(seed);
    CandidateGroup a;
    a.feature = "cluster:c1";
    a.kind = FeatureKind::Cluster;
    a.members = {0, 1, 2, 3, 4, 5};
    CandidateGroup b;
    b.feature = "suffix:ed";
    b.kind = FeatureKind::Suffix;
    b.members = {1, 2, 5};

    FeatureGraph first = build_graph(vocab, {a, b}, 2, 42);
    FeatureGraph second = build_graph(vocab, {b, a}, 2, 42);
    CHECK(dump(first) == dump(second));
}

TEST_CASE("sampled graphs respect the cap and stay symmetric") {
    Lexicon seed(AttributeInventory::from_names({"POS:Noun"}));
    std::vector<std::string> unlabeled;
    for (int i = 0; i < 40; ++i) {
        std::string word = "w" + std::to_string(100 + i);
        if (i < 10) {
            seed.insert_gold(word, {"POS:Noun"});
        } else {
            unlabeled.push_back(word);
        }
    }
    Vocabulary vocab(seed, unlabeled);

    CandidateGroup g;
    g.feature = "cluster:c1";
    g.kind = FeatureKind::Cluster;
    for (std::uint32_t i = 0; i < 40; ++i) g.members.push_back(i);

    BuildReport report;
    FeatureGraph graph = build_graph(vocab, {g}, 3, 11, &report);
    CHECK(report.candidatePairs == 40u * 39 / 2);
    CHECK(report.keptPairs * 2 == graph.edge_count());
    CHECK(report.keptPairs <= 40u * 3 / 2);

    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (std::uint32_t v = 0; v < graph.node_count(); ++v) {
        CHECK(graph.neighbors(v).size() <= 3);
        for (const auto& e : graph.neighbors(v)) seen.insert({v, e.target});
    }
    for (auto [s, t] : seen) CHECK(seen.count({t, s}));

    CHECK(dump(build_graph(vocab, {g}, 3, 11)) == dump(graph));
    CHECK(dump(build_graph(vocab, {g}, 3, 12)) != dump(graph));
}
