#include "lexigraph/graph_build.hpp"

#include "lexigraph/errors.hpp"
#include "lexigraph/rng.hpp"
#include "lexigraph/text.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace lexigraph {

Vocabulary::Vocabulary(const Lexicon& seed, const std::vector<std::string>& unlabeledWords) {
    std::set<std::string> all;
    for (const auto& [word, v] : seed.entries()) all.insert(word);
    all.insert(unlabeledWords.begin(), unlabeledWords.end());
    words_.assign(all.begin(), all.end());
    labeled_.resize(words_.size(), 0);
    for (std::size_t i = 0; i < words_.size(); ++i) {
        labeled_[i] = seed.contains(words_[i]) ? 1 : 0;
    }
}

std::optional<std::uint32_t> Vocabulary::id_of(const std::string& word) const {
    auto it = std::lower_bound(words_.begin(), words_.end(), word);
    if (it == words_.end() || *it != word) return std::nullopt;
    return static_cast<std::uint32_t>(it - words_.begin());
}

namespace {

constexpr std::string_view kNullAffix = "{null}";

std::string decode_affix(std::string_view field) {
    return field == kNullAffix ? std::string() : std::string(field);
}

std::string encode_affix(const std::string& affix) {
    return affix.empty() ? std::string(kNullAffix) : affix;
}

} // namespace

MorphRule parse_rule(std::string_view text) {
    auto fields = split(text, ':');
    if (fields.size() != 3) {
        throw ParseError("bad rule '" + std::string(text) + "', expected kind:from:to");
    }
    MorphRule rule;
    if (fields[0] == "suffix") {
        rule.isSuffix = true;
    } else if (fields[0] == "prefix") {
        rule.isSuffix = false;
    } else {
        throw ParseError("bad rule kind '" + std::string(fields[0]) + "', expected suffix or prefix");
    }
    if (fields[1].empty() || fields[2].empty()) {
        throw ParseError("bad rule '" + std::string(text) + "', empty affix field, use " +
                         std::string(kNullAffix));
    }
    rule.from = decode_affix(fields[1]);
    rule.to = decode_affix(fields[2]);
    return rule;
}

MorphRule invert_rule(const MorphRule& rule) {
    return MorphRule{rule.isSuffix, rule.to, rule.from};
}

std::string format_rule(const MorphRule& rule) {
    return std::string(rule.isSuffix ? "suffix" : "prefix") + ":" + encode_affix(rule.from) + ":" +
           encode_affix(rule.to);
}

namespace {

bool plain_field(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') return false;
    }
    return true;
}

bool skip_line(const std::string& line) {
    auto stripped = trim(line);
    return stripped.empty() || stripped.front() == '#';
}

} // namespace

std::vector<CandidateGroup> cluster_features(std::istream& in, const std::string& name,
                                             const Vocabulary& vocab, BuildReport& report) {
    std::map<std::string, std::set<std::uint32_t>> clusters;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (skip_line(line)) continue;
        auto fields = split(line, '\t');
        if (fields.size() != 2 || !plain_field(fields[0]) || !plain_field(fields[1])) {
            throw ParseError(name, lineno, "expected word<TAB>clusterId");
        }
        auto node = vocab.id_of(std::string(fields[0]));
        if (!node) {
            ++report.clusterWordsSkipped;
            continue;
        }
        clusters[std::string(fields[1])].insert(*node);
    }
    if (report.clusterWordsSkipped > 0) {
        report.warnings.push_back(name + ": skipped " + std::to_string(report.clusterWordsSkipped) +
                                  " cluster words outside the vocabulary");
    }

    std::vector<CandidateGroup> groups;
    for (const auto& [id, members] : clusters) {
        if (members.size() < 2) continue;
        CandidateGroup g;
        g.feature = "cluster:" + id;
        g.kind = FeatureKind::Cluster;
        g.members.assign(members.begin(), members.end());
        groups.push_back(std::move(g));
    }
    return groups;
}

std::vector<CandidateGroup> load_cluster_features(const std::filesystem::path& path,
                                                  const Vocabulary& vocab, BuildReport& report) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open cluster file " + path.string());
    return cluster_features(in, path.string(), vocab, report);
}

std::vector<CandidateGroup> affix_features(const Vocabulary& vocab, const Lexicon& seed,
                                           bool suffixes, bool prefixes, BuildReport& report,
                                           std::size_t minN, std::size_t maxN,
                                           std::size_t minSeedCount) {
    (void)report;
    std::vector<CandidateGroup> groups;
    auto collect = [&](bool suffix) {
        for (std::size_t n = minN; n <= maxN; ++n) {
            auto affix_of = [&](const std::string& word) {
                return suffix ? utf8_suffix(word, n) : utf8_prefix(word, n);
            };
            std::map<std::string, std::size_t> seedCounts;
            for (const auto& [word, v] : seed.entries()) {
                if (auto a = affix_of(word)) ++seedCounts[*a];
            }
            std::map<std::string, std::vector<std::uint32_t>> members;
            for (std::uint32_t id = 0; id < vocab.size(); ++id) {
                auto a = affix_of(vocab.words()[id]);
                if (!a) continue;
                auto it = seedCounts.find(*a);
                if (it == seedCounts.end() || it->second < minSeedCount) continue;
                members[*a].push_back(id);
            }
            for (auto& [affix, ids] : members) {
                if (ids.size() < 2) continue;
                CandidateGroup g;
                g.feature = std::string(suffix ? "suffix:" : "prefix:") + affix;
                g.kind = suffix ? FeatureKind::Suffix : FeatureKind::Prefix;
                g.members = std::move(ids);
                groups.push_back(std::move(g));
            }
        }
    };
    if (suffixes) collect(true);
    if (prefixes) collect(false);
    return groups;
}

std::vector<CandidateGroup> morphtrans_features(std::istream& in, const std::string& name,
                                                const Vocabulary& vocab, BuildReport& report) {
    std::map<std::string, std::set<std::pair<std::uint32_t, std::uint32_t>>> byRule;
    std::map<std::string, std::string> inverseOf;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (skip_line(line)) continue;
        auto fields = split(line, '\t');
        if (fields.size() != 3 || !plain_field(fields[0]) || !plain_field(fields[1])) {
            throw ParseError(name, lineno, "expected source<TAB>target<TAB>rule");
        }
        MorphRule rule;
        try {
            rule = parse_rule(fields[2]);
        } catch (const ParseError& e) {
            throw ParseError(name, lineno, e.what());
        }
        auto src = vocab.id_of(std::string(fields[0]));
        auto dst = vocab.id_of(std::string(fields[1]));
        if (!src || !dst) {
            ++report.ruleTriplesSkipped;
            continue;
        }
        if (*src == *dst) {
            ++report.selfPairsSkipped;
            continue;
        }
        if (*src > *dst) {
            std::swap(*src, *dst);
            rule = invert_rule(rule);
        }
        auto ruleName = format_rule(rule);
        byRule[ruleName].insert({*src, *dst});
        inverseOf.emplace(ruleName, format_rule(invert_rule(rule)));
    }
    if (report.ruleTriplesSkipped > 0) {
        report.warnings.push_back(name + ": skipped " + std::to_string(report.ruleTriplesSkipped) +
                                  " rule triples with out-of-vocabulary words");
    }

    std::vector<CandidateGroup> groups;
    for (auto& [ruleName, pairs] : byRule) {
        CandidateGroup g;
        g.feature = ruleName;
        g.kind = FeatureKind::MorphTrans;
        g.inverse = inverseOf.at(ruleName);
        g.pairs.assign(pairs.begin(), pairs.end());
        groups.push_back(std::move(g));
    }
    return groups;
}

std::vector<CandidateGroup> load_morphtrans_features(const std::filesystem::path& path,
                                                     const Vocabulary& vocab, BuildReport& report) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open rules file " + path.string());
    return morphtrans_features(in, path.string(), vocab, report);
}

namespace {

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

} // namespace

FeatureGraph build_graph(const Vocabulary& vocab, const std::vector<CandidateGroup>& groups,
                         std::uint32_t neighborCap, std::uint64_t seed, BuildReport* report) {
    if (vocab.size() == 0) {
        throw std::invalid_argument("cannot build a graph over an empty vocabulary");
    }
    if (neighborCap == 0) {
        throw std::invalid_argument("neighbor cap must be positive");
    }

    std::vector<std::string> featureNames;
    std::vector<FeatureKind> featureKinds;
    std::unordered_map<std::string, std::uint32_t> featureIds;
    auto intern = [&](const std::string& name, FeatureKind kind) {
        auto it = featureIds.find(name);
        if (it != featureIds.end()) return it->second;
        auto id = static_cast<std::uint32_t>(featureNames.size());
        featureIds.emplace(name, id);
        featureNames.push_back(name);
        featureKinds.push_back(kind);
        return id;
    };

    // Groups are processed in feature-name order, which makes the random
    // stream independent of provider call order.
    std::vector<std::size_t> order(groups.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return groups[a].feature < groups[b].feature; });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (groups[order[i - 1]].feature == groups[order[i]].feature) {
            throw FormatError("duplicate candidate group for feature '" + groups[order[i]].feature + "'");
        }
    }

    BuildReport localReport;
    BuildReport& rep = report ? *report : localReport;

    Rng rng(seed);
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> edgeFeatures;
    std::unordered_map<std::uint64_t, std::uint32_t> morphDegree;
    auto add_edge = [&](std::uint32_t a, std::uint32_t b, std::uint32_t feature) {
        edgeFeatures[pair_key(a, b)].push_back(feature);
    };

    for (std::size_t gi : order) {
        const auto& g = groups[gi];
        if (g.kind == FeatureKind::MorphTrans) {
            auto forward = intern(g.feature, g.kind);
            auto backward = intern(g.inverse, g.kind);
            auto pairs = g.pairs;
            rep.candidatePairs += pairs.size();
            rng.shuffle(pairs);
            for (auto [u, v] : pairs) {
                if (u == v || u >= vocab.size() || v >= vocab.size()) {
                    throw FormatError("bad node pair in group '" + g.feature + "'");
                }
                auto& du = morphDegree[pair_key(u, forward)];
                auto& dv = morphDegree[pair_key(v, backward)];
                if (du >= neighborCap || dv >= neighborCap) continue;
                ++du;
                ++dv;
                add_edge(u, v, forward);
                add_edge(v, u, backward);
                ++rep.keptPairs;
            }
        } else {
            auto feature = intern(g.feature, g.kind);
            auto k = static_cast<std::uint32_t>(g.members.size());
            if (k < 2) continue;
            for (auto m : g.members) {
                if (m >= vocab.size()) throw FormatError("bad member in group '" + g.feature + "'");
            }
            std::uint64_t allPairs = static_cast<std::uint64_t>(k) * (k - 1) / 2;
            rep.candidatePairs += allPairs;
            if (k - 1 <= neighborCap) {
                for (std::uint32_t i = 0; i < k; ++i) {
                    for (std::uint32_t j = i + 1; j < k; ++j) {
                        add_edge(g.members[i], g.members[j], feature);
                        add_edge(g.members[j], g.members[i], feature);
                    }
                }
                rep.keptPairs += allPairs;
            } else {
                std::set<std::pair<std::uint32_t, std::uint32_t>> proposals;
                for (std::uint32_t pos = 0; pos < k; ++pos) {
                    for (auto draw : rng.sample(k - 1, neighborCap)) {
                        std::uint32_t other = draw >= pos ? draw + 1 : draw;
                        proposals.insert(std::minmax(pos, other));
                    }
                }
                std::vector<std::pair<std::uint32_t, std::uint32_t>> pooled(proposals.begin(),
                                                                            proposals.end());
                rng.shuffle(pooled);
                std::vector<std::uint32_t> degree(k, 0);
                for (auto [i, j] : pooled) {
                    if (degree[i] >= neighborCap || degree[j] >= neighborCap) continue;
                    ++degree[i];
                    ++degree[j];
                    add_edge(g.members[i], g.members[j], feature);
                    add_edge(g.members[j], g.members[i], feature);
                    ++rep.keptPairs;
                }
            }
        }
    }

    // The catalog covers only features that survived on some edge, in name
    // order; edges are rewritten to the new indices.
    std::set<std::uint32_t> usedSet;
    for (const auto& [key, feats] : edgeFeatures) {
        usedSet.insert(feats.begin(), feats.end());
    }
    std::vector<std::uint32_t> used(usedSet.begin(), usedSet.end());
    std::sort(used.begin(), used.end(), [&](std::uint32_t a, std::uint32_t b) {
        return featureNames[a] < featureNames[b];
    });
    std::vector<std::uint32_t> remap(featureNames.size(), 0);
    std::vector<std::string> keptNames;
    std::vector<FeatureKind> keptKinds;
    keptNames.reserve(used.size());
    keptKinds.reserve(used.size());
    for (std::uint32_t newId = 0; newId < used.size(); ++newId) {
        remap[used[newId]] = newId;
        keptNames.push_back(featureNames[used[newId]]);
        keptKinds.push_back(featureKinds[used[newId]]);
    }

    std::vector<std::uint64_t> keys;
    keys.reserve(edgeFeatures.size());
    for (const auto& [key, feats] : edgeFeatures) keys.push_back(key);
    std::sort(keys.begin(), keys.end());

    std::vector<GraphEdgeSpec> specs;
    specs.reserve(keys.size());
    for (auto key : keys) {
        GraphEdgeSpec spec;
        spec.source = static_cast<std::uint32_t>(key >> 32);
        spec.target = static_cast<std::uint32_t>(key & 0xFFFFFFFFu);
        for (auto f : edgeFeatures.at(key)) spec.features.push_back(remap[f]);
        specs.push_back(std::move(spec));
    }

    return FeatureGraph(vocab.words(), vocab.labeled(),
                        FeatureCatalog(std::move(keptNames), std::move(keptKinds)), std::move(specs));
}

} // namespace lexigraph
