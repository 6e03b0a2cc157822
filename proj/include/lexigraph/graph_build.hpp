#pragma once

#include "lexigraph/graph.hpp"
#include "lexigraph/lexicon.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace lexigraph {

// Node universe for one graph build: the sorted union of seed words and the
// unlabeled vocabulary, seed membership deciding the labeled flag.
class Vocabulary {
public:
    Vocabulary(const Lexicon& seed, const std::vector<std::string>& unlabeledWords);

    std::size_t size() const { return words_.size(); }
    const std::vector<std::string>& words() const { return words_; }
    const std::vector<char>& labeled() const { return labeled_; }
    std::optional<std::uint32_t> id_of(const std::string& word) const;

private:
    std::vector<std::string> words_;
    std::vector<char> labeled_;
};

// Affix rewrite rule, "suffix:FROM:TO" or "prefix:FROM:TO"; the affix string
// "{null}" stands for the empty affix.
struct MorphRule {
    bool isSuffix = true;
    std::string from;
    std::string to;

    bool operator==(const MorphRule& other) const {
        return isSuffix == other.isSuffix && from == other.from && to == other.to;
    }
};

MorphRule parse_rule(std::string_view text);
MorphRule invert_rule(const MorphRule& rule);
std::string format_rule(const MorphRule& rule);

// One feature's worth of candidate edges. Symmetric kinds list the member
// nodes and every unordered member pair is a candidate; morph-transformation
// groups list oriented pairs and name the inverse rule carried by the
// reverse edge.
struct CandidateGroup {
    std::string feature;
    FeatureKind kind = FeatureKind::Cluster;
    std::vector<std::uint32_t> members;
    std::string inverse;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
};

struct BuildReport {
    std::size_t clusterWordsSkipped = 0;
    std::size_t ruleTriplesSkipped = 0;
    std::size_t selfPairsSkipped = 0;
    std::size_t candidatePairs = 0;
    std::size_t keptPairs = 0;
    std::vector<std::string> warnings;
};

// Reads word<TAB>clusterId lines and yields one group per cluster with at
// least two in-vocabulary members. Out-of-vocabulary words are counted and
// skipped.
std::vector<CandidateGroup> cluster_features(std::istream& in, const std::string& name,
                                             const Vocabulary& vocab, BuildReport& report);
std::vector<CandidateGroup> load_cluster_features(const std::filesystem::path& path,
                                                  const Vocabulary& vocab, BuildReport& report);

// Character n-gram suffix and prefix groups over the whole vocabulary, for
// n in [minN, maxN]. An affix is admitted only when it occurs in at least
// minSeedCount seed words; words shorter than the affix contribute nothing.
std::vector<CandidateGroup> affix_features(const Vocabulary& vocab, const Lexicon& seed,
                                           bool suffixes, bool prefixes, BuildReport& report,
                                           std::size_t minN = 2, std::size_t maxN = 3,
                                           std::size_t minSeedCount = 2);

// Reads source<TAB>target<TAB>rule triples. Pairs are normalized so the
// lexicographically smaller word is the source, inverting the rule when the
// file listed the pair the other way; duplicates collapse. Triples with
// out-of-vocabulary words are counted and skipped.
std::vector<CandidateGroup> morphtrans_features(std::istream& in, const std::string& name,
                                                const Vocabulary& vocab, BuildReport& report);
std::vector<CandidateGroup> load_morphtrans_features(const std::filesystem::path& path,
                                                     const Vocabulary& vocab, BuildReport& report);

// Assembles the graph from candidate groups, keeping at most neighborCap
// neighbors per node and feature. Within budget a group keeps all its pairs;
// over budget each member proposes neighborCap random partners and the pooled
// proposals are kept greedily in shuffled order while both endpoints have
// budget left. Every kept pair adds both edge directions, so the graph stays
// symmetric as a pair set. Feature indices are assigned after sampling, over
// the features that survived on some edge, in name order.
FeatureGraph build_graph(const Vocabulary& vocab, const std::vector<CandidateGroup>& groups,
                         std::uint32_t neighborCap, std::uint64_t seed,
                         BuildReport* report = nullptr);

} // namespace lexigraph
