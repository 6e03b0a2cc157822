#pragma once

#include "lexigraph/attributes.hpp"
#include "lexigraph/graph.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace lexigraph {

// Dense weight matrix: one row per attribute, one column per edge feature.
// Rows are independent; each attribute is predicted on its own.
class WeightMatrix {
public:
    WeightMatrix() = default;
    WeightMatrix(AttributeInventory inventory, FeatureCatalog features)
        : inventory_(std::move(inventory)),
          features_(std::move(features)),
          weights_(inventory_.size() * features_.size(), 0.0) {}

    std::size_t attribute_count() const { return inventory_.size(); }
    std::size_t feature_count() const { return features_.size(); }

    double at(std::size_t attribute, std::size_t feature) const {
        return weights_[attribute * features_.size() + feature];
    }
    double& at(std::size_t attribute, std::size_t feature) {
        return weights_[attribute * features_.size() + feature];
    }
    std::span<const double> row(std::size_t attribute) const {
        return {weights_.data() + attribute * features_.size(), features_.size()};
    }
    std::span<double> row(std::size_t attribute) {
        return {weights_.data() + attribute * features_.size(), features_.size()};
    }

    const AttributeInventory& inventory() const { return inventory_; }
    const FeatureCatalog& features() const { return features_; }

    bool operator==(const WeightMatrix& other) const {
        return inventory_ == other.inventory_ && features_ == other.features_ &&
               weights_ == other.weights_;
    }

private:
    AttributeInventory inventory_;
    FeatureCatalog features_;
    std::vector<double> weights_;
};

// Versioned text dump with attribute and feature tables followed by one
// weight triple per cell; decimals are shortest round-trip forms, so
// save-then-load reproduces the matrix exactly.
void write_model(const WeightMatrix& model, std::ostream& out);
void save_model(const WeightMatrix& model, const std::filesystem::path& path);
WeightMatrix read_model(std::istream& in, const std::string& name);
WeightMatrix load_model(const std::filesystem::path& path);

} // namespace lexigraph
