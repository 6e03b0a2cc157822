#include "lexigraph/propagation.hpp"

#include "lexigraph/errors.hpp"
#include "lexigraph/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lexigraph {

namespace {

constexpr double kAdagradEpsilon = 1e-8;

// Upper bound on the per-edge dot table, in doubles (128 MiB).
constexpr std::size_t kMaxDotTable = 16u * 1024u * 1024u;

void check_train_config(const TrainConfig& config) {
    if (config.learningRate <= 0.0) throw std::invalid_argument("learning rate must be positive");
    if (config.l2 < 0.0) throw std::invalid_argument("l2 strength must be nonnegative");
    if (config.maxEpochs < 1) throw std::invalid_argument("maxEpochs must be at least 1");
    if (config.lossTolerance < 0.0) throw std::invalid_argument("lossTolerance must be nonnegative");
}

void check_propagation_config(const PropagationConfig& config) {
    if (config.maxSweeps < 1) throw std::invalid_argument("maxSweeps must be at least 1");
    if (config.stopDistance < 0.0) throw std::invalid_argument("stopDistance must be nonnegative");
}

void check_model_compatibility(const FeatureGraph& graph, const WeightMatrix& model,
                               const Lexicon& seed) {
    if (model.features() != graph.features()) {
        throw InventoryError("model feature table does not match the graph feature table");
    }
    if (model.inventory() != seed.inventory()) {
        throw InventoryError("model attribute inventory does not match the seed lexicon");
    }
}

} // namespace

double adagrad_step(double weight, double grad, double& accum, double learningRate, double l2) {
    accum += grad * grad;
    return weight - learningRate * grad / (std::sqrt(accum) + kAdagradEpsilon) -
           learningRate * l2 * weight;
}

NodeValues initial_values(const FeatureGraph& graph, const Lexicon& seed) {
    NodeValues values(graph.node_count());
    const std::size_t attrs = seed.inventory().size();
    for (std::uint32_t v = 0; v < graph.node_count(); ++v) {
        if (graph.is_labeled(v)) {
            const AttributeVector* gold = seed.find(graph.word(v));
            if (!gold) {
                throw InventoryError("labeled node '" + graph.word(v) +
                                     "' is missing from the seed lexicon");
            }
            values[v] = *gold;
        } else {
            values[v].assign(attrs, 0.0);
        }
    }
    return values;
}

double estimate_attribute(const FeatureGraph& graph, FeatureGraph::NodeId node,
                          std::size_t attribute, std::span<const double> weights,
                          const NodeValues& values, bool labeledOnly) {
    double sum = 0.0;
    for (const auto& edge : graph.neighbors(node)) {
        if (labeledOnly && !graph.is_labeled(edge.target)) continue;
        double dot = 0.0;
        for (auto k : graph.edge_features(edge)) dot += weights[k];
        sum += dot * values[edge.target][attribute];
    }
    return std::tanh(sum);
}

double training_loss(const FeatureGraph& graph, const NodeValues& gold, const WeightMatrix& model) {
    const auto& labeled = graph.labeled_nodes();
    const std::size_t attrs = model.attribute_count();
    std::vector<double> partial(labeled.size(), 0.0);
#pragma omp parallel for schedule(static)
    for (std::size_t idx = 0; idx < labeled.size(); ++idx) {
        auto w = labeled[idx];
        double nodeLoss = 0.0;
        for (std::size_t i = 0; i < attrs; ++i) {
            double est = estimate_attribute(graph, w, i, model.row(i), gold, true);
            double r = gold[w][i] - est;
            nodeLoss += r * r;
        }
        partial[idx] = nodeLoss;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

WeightMatrix loss_gradient(const FeatureGraph& graph, const NodeValues& gold,
                           const WeightMatrix& model) {
    WeightMatrix grad(model.inventory(), model.features());
    const std::size_t attrs = model.attribute_count();
    std::vector<double> featSum(model.feature_count(), 0.0);
    std::vector<char> touchedFlag(model.feature_count(), 0);
    std::vector<std::uint32_t> touched;
    for (auto w : graph.labeled_nodes()) {
        for (std::size_t i = 0; i < attrs; ++i) {
            double sum = 0.0;
            touched.clear();
            for (const auto& edge : graph.neighbors(w)) {
                if (!graph.is_labeled(edge.target)) continue;
                double dot = 0.0;
                double av = gold[edge.target][i];
                for (auto k : graph.edge_features(edge)) {
                    dot += model.at(i, k);
                    if (!touchedFlag[k]) {
                        touchedFlag[k] = 1;
                        touched.push_back(k);
                        featSum[k] = 0.0;
                    }
                    featSum[k] += av;
                }
                sum += dot * av;
            }
            double est = std::tanh(sum);
            double coef = -2.0 * (gold[w][i] - est) * (1.0 - est * est);
            for (auto k : touched) {
                grad.at(i, k) += coef * featSum[k];
                touchedFlag[k] = 0;
            }
        }
    }
    return grad;
}

WeightMatrix train(const FeatureGraph& graph, const Lexicon& seed, const TrainConfig& config,
                   TrainReport* report) {
    check_train_config(config);
    WeightMatrix model(seed.inventory(), graph.features());
    const std::size_t attrs = model.attribute_count();
    NodeValues gold = initial_values(graph, seed);

    TrainReport localReport;
    TrainReport& rep = report ? *report : localReport;

    std::vector<char> trainable(attrs, 0);
    for (auto w : graph.labeled_nodes()) {
        for (std::size_t i = 0; i < attrs; ++i) {
            if (gold[w][i] > 0.0) trainable[i] = 1;
        }
    }
    for (std::size_t i = 0; i < attrs; ++i) {
        if (trainable[i]) continue;
        rep.skippedAttributes.push_back(seed.inventory().name(i));
        rep.warnings.push_back("attribute '" + seed.inventory().name(i) +
                               "' never occurs positively in the seed; its row stays at zero");
    }

    AdaGradState state(attrs, model.feature_count());
    Rng rng(config.shuffleSeed);
    std::vector<FeatureGraph::NodeId> order(graph.labeled_nodes());
    std::vector<double> featSum(model.feature_count(), 0.0);
    std::vector<char> touchedFlag(model.feature_count(), 0);
    std::vector<std::uint32_t> touched;

    double prevLoss = std::numeric_limits<double>::infinity();
    for (int epoch = 1; epoch <= config.maxEpochs; ++epoch) {
        rng.shuffle(order);
        for (auto w : order) {
            for (std::size_t i = 0; i < attrs; ++i) {
                if (!trainable[i]) continue;
                double sum = 0.0;
                touched.clear();
                for (const auto& edge : graph.neighbors(w)) {
                    if (!graph.is_labeled(edge.target)) continue;
                    double dot = 0.0;
                    double av = gold[edge.target][i];
                    for (auto k : graph.edge_features(edge)) {
                        dot += model.at(i, k);
                        if (!touchedFlag[k]) {
                            touchedFlag[k] = 1;
                            touched.push_back(k);
                            featSum[k] = 0.0;
                        }
                        featSum[k] += av;
                    }
                    sum += dot * av;
                }
                if (touched.empty()) continue;
                double est = std::tanh(sum);
                double coef = -2.0 * (gold[w][i] - est) * (1.0 - est * est);
                for (auto k : touched) {
                    double g = coef * featSum[k];
                    model.at(i, k) =
                        adagrad_step(model.at(i, k), g, state.accum(i, k), config.learningRate, config.l2);
                    touchedFlag[k] = 0;
                }
            }
        }
        double loss = training_loss(graph, gold, model);
        rep.epochLoss.push_back(loss);
        rep.epochs = epoch;
        if (epoch >= 2) {
            double rel = std::abs(prevLoss - loss) / std::max(prevLoss, 1e-12);
            if (rel < config.lossTolerance) {
                rep.converged = true;
                break;
            }
        }
        prevLoss = loss;
    }
    return model;
}

namespace {

PropagationResult run_sweeps(const FeatureGraph& graph, const WeightMatrix& model,
                             const Lexicon& seed, const PropagationConfig& config, bool parallel) {
    check_propagation_config(config);
    check_model_compatibility(graph, model, seed);

    PropagationResult result;
    result.values = initial_values(graph, seed);
    const auto& unlabeled = graph.unlabeled_nodes();
    if (unlabeled.empty()) {
        result.converged = true;
        return result;
    }
    const std::size_t attrs = model.attribute_count();

    // In the parallel path the per-edge feature dots are constant across
    // sweeps, so they are computed once up front when the table fits.
    std::vector<std::size_t> offsets;
    std::vector<std::uint32_t> targets;
    std::vector<double> dots;
    bool precomputed = false;
    if (parallel) {
        std::size_t edgeTotal = 0;
        for (auto w : unlabeled) edgeTotal += graph.neighbors(w).size();
        if (attrs > 0 && edgeTotal * attrs <= kMaxDotTable) {
            precomputed = true;
            offsets.assign(unlabeled.size() + 1, 0);
            for (std::size_t idx = 0; idx < unlabeled.size(); ++idx) {
                offsets[idx + 1] = offsets[idx] + graph.neighbors(unlabeled[idx]).size();
            }
            targets.resize(edgeTotal);
            dots.resize(edgeTotal * attrs);
#pragma omp parallel for schedule(static)
            for (std::size_t idx = 0; idx < unlabeled.size(); ++idx) {
                std::size_t at = offsets[idx];
                for (const auto& edge : graph.neighbors(unlabeled[idx])) {
                    targets[at] = edge.target;
                    for (std::size_t i = 0; i < attrs; ++i) {
                        double dot = 0.0;
                        for (auto k : graph.edge_features(edge)) dot += model.at(i, k);
                        dots[at * attrs + i] = dot;
                    }
                    ++at;
                }
            }
        }
    }

    NodeValues next = result.values;
    NodeValues& values = result.values;
    for (int sweep = 1; sweep <= config.maxSweeps; ++sweep) {
        if (precomputed) {
#pragma omp parallel for schedule(static)
            for (std::size_t idx = 0; idx < unlabeled.size(); ++idx) {
                auto w = unlabeled[idx];
                AttributeVector& out = next[w];
                for (std::size_t i = 0; i < attrs; ++i) {
                    double sum = 0.0;
                    for (std::size_t e = offsets[idx]; e < offsets[idx + 1]; ++e) {
                        sum += dots[e * attrs + i] * values[targets[e]][i];
                    }
                    out[i] = std::tanh(sum);
                }
            }
        } else if (parallel) {
#pragma omp parallel for schedule(static)
            for (std::size_t idx = 0; idx < unlabeled.size(); ++idx) {
                auto w = unlabeled[idx];
                for (std::size_t i = 0; i < attrs; ++i) {
                    next[w][i] = estimate_attribute(graph, w, i, model.row(i), values, false);
                }
            }
        } else {
            for (auto w : unlabeled) {
                for (std::size_t i = 0; i < attrs; ++i) {
                    next[w][i] = estimate_attribute(graph, w, i, model.row(i), values, false);
                }
            }
        }

        double total = 0.0;
        for (auto w : unlabeled) total += squared_distance(next[w], values[w]);
        std::swap(values, next);
        result.sweeps = sweep;
        result.lastDistance = total / static_cast<double>(unlabeled.size());
        if (sweep >= 2 && result.lastDistance < config.stopDistance) {
            result.converged = true;
            break;
        }
    }
    return result;
}

} // namespace

PropagationResult propagate(const FeatureGraph& graph, const WeightMatrix& model,
                            const Lexicon& seed, const PropagationConfig& config) {
    return run_sweeps(graph, model, seed, config, true);
}

PropagationResult propagate_reference(const FeatureGraph& graph, const WeightMatrix& model,
                                      const Lexicon& seed, const PropagationConfig& config) {
    return run_sweeps(graph, model, seed, config, false);
}

std::map<std::string, AttributeVector> unlabeled_values(const FeatureGraph& graph,
                                                        const NodeValues& values) {
    std::map<std::string, AttributeVector> out;
    for (auto w : graph.unlabeled_nodes()) {
        out.emplace(graph.word(w), values[w]);
    }
    return out;
}

Lexicon threshold_lexicon(const std::map<std::string, AttributeVector>& propagated,
                          const AttributeInventory& inventory) {
    Lexicon out(inventory);
    for (const auto& [word, v] : propagated) {
        AttributeVector gold(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) gold[i] = v[i] > 0.0 ? 1.0 : -1.0;
        out.insert(word, gold);
    }
    return out;
}

} // namespace lexigraph
