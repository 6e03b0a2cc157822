#include "lexigraph/attributes.hpp"

#include "lexigraph/errors.hpp"

#include <stdexcept>

namespace lexigraph {

AttributeInventory::AttributeInventory(std::vector<std::string> names) : names_(std::move(names)) {
    index_.reserve(names_.size());
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (!valid_attribute_name(names_[i])) {
            throw InventoryError("invalid attribute name '" + names_[i] + "'");
        }
        if (!index_.emplace(names_[i], i).second) {
            throw InventoryError("duplicate attribute name '" + names_[i] + "'");
        }
    }
}

AttributeInventory AttributeInventory::from_names(const std::set<std::string>& names) {
    return AttributeInventory(std::vector<std::string>(names.begin(), names.end()));
}

std::optional<std::size_t> AttributeInventory::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool valid_attribute_name(const std::string& name) {
    auto colon = name.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == name.size()) return false;
    for (char c : name) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') return false;
    }
    return true;
}

std::set<std::string> to_attribute_set(const AttributeInventory& inventory, const AttributeVector& v) {
    if (v.size() != inventory.size()) {
        throw InventoryError("vector has " + std::to_string(v.size()) + " components, inventory has " +
                             std::to_string(inventory.size()));
    }
    std::set<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] > 0.0) out.insert(inventory.name(i));
    }
    return out;
}

bool is_gold_vector(const AttributeVector& v) {
    for (double x : v) {
        if (x != 1.0 && x != -1.0) return false;
    }
    return true;
}

double squared_distance(const AttributeVector& a, const AttributeVector& b) {
    if (a.size() != b.size()) {
        throw InventoryError("vectors of different length: " + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()));
    }
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        total += d * d;
    }
    return total;
}

} // namespace lexigraph
