#include "lexigraph/graph.hpp"

#include "lexigraph/errors.hpp"
#include "lexigraph/text.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

namespace lexigraph {

std::string_view feature_kind_name(FeatureKind kind) {
    switch (kind) {
        case FeatureKind::Cluster: return "cluster";
        case FeatureKind::Suffix: return "suffix";
        case FeatureKind::Prefix: return "prefix";
        case FeatureKind::MorphTrans: return "morphtrans";
    }
    return "unknown";
}

std::optional<FeatureKind> feature_kind_from(std::string_view name) {
    if (name == "cluster") return FeatureKind::Cluster;
    if (name == "suffix") return FeatureKind::Suffix;
    if (name == "prefix") return FeatureKind::Prefix;
    if (name == "morphtrans") return FeatureKind::MorphTrans;
    return std::nullopt;
}

FeatureCatalog::FeatureCatalog(std::vector<std::string> names, std::vector<FeatureKind> kinds)
    : names_(std::move(names)), kinds_(std::move(kinds)) {
    if (names_.size() != kinds_.size()) {
        throw FormatError("feature catalog with mismatched name and kind tables");
    }
    index_.reserve(names_.size());
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (!index_.emplace(names_[i], i).second) {
            throw FormatError("duplicate feature name '" + names_[i] + "'");
        }
    }
}

std::optional<std::size_t> FeatureCatalog::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

FeatureGraph::FeatureGraph(std::vector<std::string> words, std::vector<char> labeled,
                           FeatureCatalog features, std::vector<GraphEdgeSpec> edges)
    : words_(std::move(words)), labeled_(std::move(labeled)), features_(std::move(features)) {
    if (labeled_.size() != words_.size()) {
        throw FormatError("graph with mismatched word and label tables");
    }
    for (std::size_t i = 1; i < words_.size(); ++i) {
        if (words_[i - 1] >= words_[i]) {
            throw FormatError("graph nodes must be sorted unique words, got '" + words_[i - 1] +
                              "' before '" + words_[i] + "'");
        }
    }
    auto n = static_cast<std::uint32_t>(words_.size());
    for (auto& e : edges) {
        if (e.source >= n || e.target >= n) {
            throw FormatError("edge endpoint out of range");
        }
        if (e.source == e.target) {
            throw FormatError("self loop on node '" + words_[e.source] + "'");
        }
        if (e.features.empty()) {
            throw FormatError("edge with empty feature set");
        }
        for (auto f : e.features) {
            if (f >= features_.size()) throw FormatError("edge feature index out of range");
        }
    }

    std::sort(edges.begin(), edges.end(), [](const GraphEdgeSpec& a, const GraphEdgeSpec& b) {
        return a.source != b.source ? a.source < b.source : a.target < b.target;
    });
    // Merge parallel edges, unioning their feature sets.
    std::vector<GraphEdgeSpec> merged;
    merged.reserve(edges.size());
    for (auto& e : edges) {
        if (!merged.empty() && merged.back().source == e.source && merged.back().target == e.target) {
            auto& acc = merged.back().features;
            acc.insert(acc.end(), e.features.begin(), e.features.end());
        } else {
            merged.push_back(std::move(e));
        }
    }
    for (auto& e : merged) {
        std::sort(e.features.begin(), e.features.end());
        e.features.erase(std::unique(e.features.begin(), e.features.end()), e.features.end());
    }

    offsets_.assign(words_.size() + 1, 0);
    edges_.reserve(merged.size());
    for (const auto& e : merged) {
        Edge edge;
        edge.target = e.target;
        edge.featuresBegin = static_cast<std::uint32_t>(featurePool_.size());
        featurePool_.insert(featurePool_.end(), e.features.begin(), e.features.end());
        edge.featuresEnd = static_cast<std::uint32_t>(featurePool_.size());
        edges_.push_back(edge);
        ++offsets_[e.source + 1];
    }
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];

    for (std::uint32_t v = 0; v < n; ++v) {
        (labeled_[v] ? labeledNodes_ : unlabeledNodes_).push_back(v);
    }
}

std::optional<FeatureGraph::NodeId> FeatureGraph::node_of(const std::string& word) const {
    auto it = std::lower_bound(words_.begin(), words_.end(), word);
    if (it == words_.end() || *it != word) return std::nullopt;
    return static_cast<NodeId>(it - words_.begin());
}

namespace {

constexpr std::string_view kGraphStamp = "#lexigraph-graph v1";

std::uint64_t section_count(const std::string& line, std::string_view tag,
                            const std::string& name, std::size_t lineno) {
    auto head = split_ws(line);
    if (head.size() != 2 || head[0] != tag) {
        throw ParseError(name, lineno, "expected '" + std::string(tag) + " <count>'");
    }
    auto count = parse_uint(head[1]);
    if (!count) throw ParseError(name, lineno, "bad count in '" + line + "'");
    return *count;
}

std::string next_line(std::istream& in, const std::string& name, std::size_t& lineno) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(name, lineno, "unexpected end of file");
    }
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

} // namespace

void write_graph(const FeatureGraph& graph, std::ostream& out) {
    out << kGraphStamp << '\n';
    out << "#nodes " << graph.node_count() << '\n';
    for (std::uint32_t v = 0; v < graph.node_count(); ++v) {
        out << v << '\t' << graph.word(v) << '\t' << (graph.is_labeled(v) ? 'L' : 'U') << '\n';
    }
    const auto& catalog = graph.features();
    out << "#features " << catalog.size() << '\n';
    for (std::size_t f = 0; f < catalog.size(); ++f) {
        out << f << '\t' << catalog.name(f) << '\t' << feature_kind_name(catalog.kind(f)) << '\n';
    }
    out << "#edges " << graph.edge_count() << '\n';
    for (std::uint32_t v = 0; v < graph.node_count(); ++v) {
        for (const auto& edge : graph.neighbors(v)) {
            out << v << '\t' << edge.target << '\t';
            auto feats = graph.edge_features(edge);
            for (std::size_t i = 0; i < feats.size(); ++i) {
                if (i) out << ',';
                out << feats[i];
            }
            out << '\n';
        }
    }
}

void save_graph(const FeatureGraph& graph, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write graph file " + path.string());
    write_graph(graph, out);
    if (!out.good()) throw IoError("failed writing graph file " + path.string());
}

FeatureGraph read_graph(std::istream& in, const std::string& name) {
    std::size_t lineno = 0;
    if (next_line(in, name, lineno) != kGraphStamp) {
        throw FormatError(name + ": unsupported graph format, expected '" + std::string(kGraphStamp) + "'");
    }

    std::uint64_t nodeCount = section_count(next_line(in, name, lineno), "#nodes", name, lineno);
    std::vector<std::string> words;
    std::vector<char> labeled;
    words.reserve(nodeCount);
    labeled.reserve(nodeCount);
    for (std::uint64_t i = 0; i < nodeCount; ++i) {
        auto line = next_line(in, name, lineno);
        auto fields = split(line, '\t');
        if (fields.size() != 3) throw ParseError(name, lineno, "expected id<TAB>word<TAB>L|U");
        auto id = parse_uint(fields[0]);
        if (!id || *id != i) throw ParseError(name, lineno, "node ids must be sequential");
        if (fields[1].empty()) throw ParseError(name, lineno, "empty word");
        if (fields[2] != "L" && fields[2] != "U") {
            throw ParseError(name, lineno, "bad label flag '" + std::string(fields[2]) + "'");
        }
        words.emplace_back(fields[1]);
        labeled.push_back(fields[2] == "L" ? 1 : 0);
    }

    std::uint64_t featureCount = section_count(next_line(in, name, lineno), "#features", name, lineno);
    std::vector<std::string> featureNames;
    std::vector<FeatureKind> featureKinds;
    featureNames.reserve(featureCount);
    featureKinds.reserve(featureCount);
    for (std::uint64_t i = 0; i < featureCount; ++i) {
        auto line = next_line(in, name, lineno);
        auto fields = split(line, '\t');
        if (fields.size() != 3) throw ParseError(name, lineno, "expected id<TAB>feature<TAB>kind");
        auto id = parse_uint(fields[0]);
        if (!id || *id != i) throw ParseError(name, lineno, "feature ids must be sequential");
        auto kind = feature_kind_from(fields[2]);
        if (!kind) throw ParseError(name, lineno, "unknown feature kind '" + std::string(fields[2]) + "'");
        featureNames.emplace_back(fields[1]);
        featureKinds.push_back(*kind);
    }

    std::uint64_t edgeCount = section_count(next_line(in, name, lineno), "#edges", name, lineno);
    std::vector<GraphEdgeSpec> edges;
    edges.reserve(edgeCount);
    for (std::uint64_t i = 0; i < edgeCount; ++i) {
        auto line = next_line(in, name, lineno);
        auto fields = split(line, '\t');
        if (fields.size() != 3) throw ParseError(name, lineno, "expected source<TAB>target<TAB>features");
        auto src = parse_uint(fields[0]);
        auto dst = parse_uint(fields[1]);
        if (!src || !dst) throw ParseError(name, lineno, "bad edge endpoints in '" + line + "'");
        GraphEdgeSpec spec;
        spec.source = static_cast<std::uint32_t>(*src);
        spec.target = static_cast<std::uint32_t>(*dst);
        for (auto tok : split(fields[2], ',')) {
            auto f = parse_uint(tok);
            if (!f) throw ParseError(name, lineno, "bad feature index in '" + line + "'");
            spec.features.push_back(static_cast<std::uint32_t>(*f));
        }
        edges.push_back(std::move(spec));
    }

    std::string rest;
    while (std::getline(in, rest)) {
        ++lineno;
        if (!trim(rest).empty()) throw ParseError(name, lineno, "trailing content after edge table");
    }

    try {
        return FeatureGraph(std::move(words), std::move(labeled),
                            FeatureCatalog(std::move(featureNames), std::move(featureKinds)),
                            std::move(edges));
    } catch (const FormatError& e) {
        throw FormatError(name + ": " + e.what());
    }
}

FeatureGraph load_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open graph file " + path.string());
    return read_graph(in, path.string());
}

} // namespace lexigraph
