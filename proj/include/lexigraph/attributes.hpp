#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace lexigraph {

// One component per attribute, in inventory order. Values live in [-1, 1];
// +1 means the attribute holds, -1 that it does not, and intermediate values
// carry propagated confidence.
using AttributeVector = std::vector<double>;

// Fixed, ordered list of "Category:Value" attribute names. The order defines
// vector component positions and stays stable through save and load.
class AttributeInventory {
public:
    AttributeInventory() = default;
    explicit AttributeInventory(std::vector<std::string> names);

    // Sorted inventory over a name set, the canonical order for new inventories.
    static AttributeInventory from_names(const std::set<std::string>& names);

    std::size_t size() const { return names_.size(); }
    bool empty() const { return names_.empty(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_[i]; }
    std::optional<std::size_t> index_of(const std::string& name) const;

    bool operator==(const AttributeInventory& other) const { return names_ == other.names_; }
    bool operator!=(const AttributeInventory& other) const { return !(*this == other); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

// True for a well-formed "Category:Value" name: nonempty on both sides of the
// first colon and free of whitespace.
bool valid_attribute_name(const std::string& name);

// Names whose components are strictly positive.
std::set<std::string> to_attribute_set(const AttributeInventory& inventory, const AttributeVector& v);

// True when every component is exactly +1 or -1.
bool is_gold_vector(const AttributeVector& v);

double squared_distance(const AttributeVector& a, const AttributeVector& b);

} // namespace lexigraph
