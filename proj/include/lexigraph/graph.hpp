#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lexigraph {

enum class FeatureKind { Cluster, Suffix, Prefix, MorphTrans };

std::string_view feature_kind_name(FeatureKind kind);
std::optional<FeatureKind> feature_kind_from(std::string_view name);

// Ordered table of edge feature names with their originating provider kind.
// Feature indices into this table are what edges and weight matrices use.
class FeatureCatalog {
public:
    FeatureCatalog() = default;
    FeatureCatalog(std::vector<std::string> names, std::vector<FeatureKind> kinds);

    std::size_t size() const { return names_.size(); }
    bool empty() const { return names_.empty(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    FeatureKind kind(std::size_t i) const { return kinds_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<std::size_t> index_of(const std::string& name) const;

    bool operator==(const FeatureCatalog& other) const {
        return names_ == other.names_ && kinds_ == other.kinds_;
    }
    bool operator!=(const FeatureCatalog& other) const { return !(*this == other); }

private:
    std::vector<std::string> names_;
    std::vector<FeatureKind> kinds_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Edge list used to assemble a graph; features are catalog indices.
struct GraphEdgeSpec {
    std::uint32_t source = 0;
    std::uint32_t target = 0;
    std::vector<std::uint32_t> features;
};

// Directed word graph with sparse binary feature sets on the edges. Nodes are
// sorted word types, each flagged as labeled (in the seed lexicon) or not.
// Adjacency lists hold outgoing edges sorted by target; parallel edges between
// the same pair are merged, their feature sets unioned.
class FeatureGraph {
public:
    using NodeId = std::uint32_t;

    struct Edge {
        NodeId target = 0;
        std::uint32_t featuresBegin = 0;
        std::uint32_t featuresEnd = 0;
    };

    FeatureGraph() = default;
    FeatureGraph(std::vector<std::string> words, std::vector<char> labeled,
                 FeatureCatalog features, std::vector<GraphEdgeSpec> edges);

    std::size_t node_count() const { return words_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::string& word(NodeId node) const { return words_[node]; }
    const std::vector<std::string>& words() const { return words_; }
    std::optional<NodeId> node_of(const std::string& word) const;
    bool is_labeled(NodeId node) const { return labeled_[node] != 0; }
    const std::vector<NodeId>& labeled_nodes() const { return labeledNodes_; }
    const std::vector<NodeId>& unlabeled_nodes() const { return unlabeledNodes_; }

    std::span<const Edge> neighbors(NodeId node) const {
        return {edges_.data() + offsets_[node], edges_.data() + offsets_[node + 1]};
    }
    std::span<const std::uint32_t> edge_features(const Edge& edge) const {
        return {featurePool_.data() + edge.featuresBegin, featurePool_.data() + edge.featuresEnd};
    }

    const FeatureCatalog& features() const { return features_; }

private:
    std::vector<std::string> words_;
    std::vector<char> labeled_;
    std::vector<NodeId> labeledNodes_;
    std::vector<NodeId> unlabeledNodes_;
    FeatureCatalog features_;
    std::vector<std::size_t> offsets_;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> featurePool_;
};

// Text dump with node, feature, and edge tables; identical graphs serialize
// byte-identically.
void write_graph(const FeatureGraph& graph, std::ostream& out);
void save_graph(const FeatureGraph& graph, const std::filesystem::path& path);
FeatureGraph read_graph(std::istream& in, const std::string& name);
FeatureGraph load_graph(const std::filesystem::path& path);

} // namespace lexigraph
