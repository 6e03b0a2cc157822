#pragma once

#include "lexigraph/graph.hpp"
#include "lexigraph/lexicon.hpp"
#include "lexigraph/model.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace lexigraph {

struct TrainConfig {
    double learningRate = 0.1;
    double l2 = 1e-4;
    int maxEpochs = 50;
    double lossTolerance = 1e-4;
    std::uint64_t shuffleSeed = 1;

    bool operator==(const TrainConfig& other) const = default;
};

struct PropagationConfig {
    double stopDistance = 0.1;
    int maxSweeps = 100;

    bool operator==(const PropagationConfig& other) const = default;
};

// Running per-cell sum of squared gradients for the adaptive step size.
class AdaGradState {
public:
    AdaGradState() = default;
    AdaGradState(std::size_t attributes, std::size_t features)
        : features_(features), accum_(attributes * features, 0.0) {}

    double& accum(std::size_t attribute, std::size_t feature) {
        return accum_[attribute * features_ + feature];
    }
    double accum(std::size_t attribute, std::size_t feature) const {
        return accum_[attribute * features_ + feature];
    }

private:
    std::size_t features_ = 0;
    std::vector<double> accum_;
};

// One adaptive update: adds grad^2 to the accumulator, steps against the
// gradient scaled by 1/(sqrt(accum)+eps), and applies decoupled l2 shrinkage
// on the incoming weight. Returns the new weight.
double adagrad_step(double weight, double grad, double& accum, double learningRate, double l2);

// Node states in graph node order. Labeled nodes hold their gold vectors and
// never change; unlabeled nodes start at all zeros.
using NodeValues = std::vector<AttributeVector>;

NodeValues initial_values(const FeatureGraph& graph, const Lexicon& seed);

// tanh of the feature-weighted sum of neighbor values for one attribute,
// taken over the node's outgoing edges: each edge contributes the dot of its
// feature set with the attribute's weight row, times the target's current
// value. labeledOnly restricts the sum to labeled targets, the form used by
// the training objective.
double estimate_attribute(const FeatureGraph& graph, FeatureGraph::NodeId node,
                          std::size_t attribute, std::span<const double> weights,
                          const NodeValues& values, bool labeledOnly);

// Summed squared error of re-estimating every labeled node from its labeled
// neighbors. The l2 shrinkage is not part of this objective.
double training_loss(const FeatureGraph& graph, const NodeValues& gold, const WeightMatrix& model);

// Analytic d(training_loss)/d(theta), same shape as the model.
WeightMatrix loss_gradient(const FeatureGraph& graph, const NodeValues& gold,
                           const WeightMatrix& model);

struct TrainReport {
    int epochs = 0;
    bool converged = false;
    std::vector<double> epochLoss;
    std::vector<std::string> skippedAttributes;
    std::vector<std::string> warnings;
};

// Online AdaGrad over labeled nodes, visiting them in a fresh shuffled order
// each epoch and updating only weights on features of the visited node's
// labeled edges. Attributes with no positive occurrence among the seed
// labels are skipped and reported; their rows stay at zero. Stops early when
// the relative change of the epoch loss falls below lossTolerance.
WeightMatrix train(const FeatureGraph& graph, const Lexicon& seed, const TrainConfig& config,
                   TrainReport* report = nullptr);

struct PropagationResult {
    NodeValues values;
    int sweeps = 0;
    double lastDistance = 0.0;
    bool converged = false;
};

// Synchronous sweeps: every unlabeled node is re-estimated from the previous
// sweep's values. Converges when the mean squared change across unlabeled
// nodes drops below stopDistance, checked from the second sweep on.
PropagationResult propagate(const FeatureGraph& graph, const WeightMatrix& model,
                            const Lexicon& seed, const PropagationConfig& config);

// Serial implementation kept as the reference for the parallel kernel; both
// produce bitwise-identical results.
PropagationResult propagate_reference(const FeatureGraph& graph, const WeightMatrix& model,
                                      const Lexicon& seed, const PropagationConfig& config);

// Final vectors of the unlabeled words, keyed by word.
std::map<std::string, AttributeVector> unlabeled_values(const FeatureGraph& graph,
                                                        const NodeValues& values);

// +1/-1 lexicon read off propagated vectors: an attribute is present exactly
// when its component is strictly positive.
Lexicon threshold_lexicon(const std::map<std::string, AttributeVector>& propagated,
                          const AttributeInventory& inventory);

} // namespace lexigraph
