#pragma once

#include "lexigraph/attributes.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

namespace lexigraph {

// Word types mapped to attribute vectors over one shared inventory.
// Entries iterate in sorted word order.
class Lexicon {
public:
    Lexicon() = default;
    explicit Lexicon(AttributeInventory inventory) : inventory_(std::move(inventory)) {}

    const AttributeInventory& inventory() const { return inventory_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    bool contains(const std::string& word) const { return entries_.count(word) != 0; }

    // Null when the word is absent.
    const AttributeVector* find(const std::string& word) const;

    // Stores the vector; a repeated word merges componentwise by maximum, so
    // duplicate gold entries union their attribute sets.
    void insert(const std::string& word, const AttributeVector& v);

    // Builds the +1/-1 vector for the named attributes and inserts it.
    void insert_gold(const std::string& word, const std::set<std::string>& attributes);

    void erase(const std::string& word) { entries_.erase(word); }

    std::set<std::string> attribute_set(const std::string& word) const;

    const std::map<std::string, AttributeVector>& entries() const { return entries_; }

    bool operator==(const Lexicon& other) const {
        return inventory_ == other.inventory_ && entries_ == other.entries_;
    }

private:
    AttributeInventory inventory_;
    std::map<std::string, AttributeVector> entries_;
};

// Distinct gold attribute vectors observed in a seed lexicon, sorted
// lexicographically by components. The order makes nearest-paradigm ties
// resolve to the lexicographically smallest vector.
class ParadigmSet {
public:
    ParadigmSet(const Lexicon& seed, std::string provenance);

    std::size_t size() const { return paradigms_.size(); }
    const std::vector<AttributeVector>& paradigms() const { return paradigms_; }
    const AttributeInventory& inventory() const { return inventory_; }
    const std::string& provenance() const { return provenance_; }

private:
    AttributeInventory inventory_;
    std::vector<AttributeVector> paradigms_;
    std::string provenance_;
};

// Text format, one entry per line:
//   word<TAB>ATTR ATTR ...          gold entries, listed attributes are +1
//   word<TAB>ATTR=0.83 ATTR=-0.2    scored entries
// Lines starting with '#' and blank lines are skipped. Without a supplied
// inventory the loader collects every mentioned attribute and sorts the
// names; unlisted attributes default to -1.
Lexicon read_lexicon(std::istream& in, const std::string& name,
                     const AttributeInventory* inventory = nullptr);
Lexicon load_lexicon(const std::filesystem::path& path,
                     const AttributeInventory* inventory = nullptr);

// withScores writes every component as ATTR=value; otherwise only the
// positive attribute names are written and entries without any positive
// component are dropped.
void write_lexicon(const Lexicon& lexicon, std::ostream& out, bool withScores = false);
void save_lexicon(const Lexicon& lexicon, const std::filesystem::path& path, bool withScores = false);

// Re-embeds entries into a wider inventory; components for attributes the
// source inventory lacks become -1. Every source attribute must exist in the
// target inventory.
Lexicon align_lexicon(const Lexicon& source, const AttributeInventory& target);

// One word per line, '#' comments and blanks skipped; sorted and deduplicated.
std::vector<std::string> read_word_list(std::istream& in, const std::string& name);
std::vector<std::string> load_word_list(const std::filesystem::path& path);

} // namespace lexigraph
