#include "lexigraph/lexicon.hpp"

#include "lexigraph/errors.hpp"
#include "lexigraph/text.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace lexigraph {

const AttributeVector* Lexicon::find(const std::string& word) const {
    auto it = entries_.find(word);
    if (it == entries_.end()) return nullptr;
    return &it->second;
}

void Lexicon::insert(const std::string& word, const AttributeVector& v) {
    if (v.size() != inventory_.size()) {
        throw InventoryError("entry '" + word + "' has " + std::to_string(v.size()) +
                             " components, inventory has " + std::to_string(inventory_.size()));
    }
    auto [it, inserted] = entries_.emplace(word, v);
    if (!inserted) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            it->second[i] = std::max(it->second[i], v[i]);
        }
    }
}

void Lexicon::insert_gold(const std::string& word, const std::set<std::string>& attributes) {
    AttributeVector v(inventory_.size(), -1.0);
    for (const auto& name : attributes) {
        auto idx = inventory_.index_of(name);
        if (!idx) throw InventoryError("unknown attribute '" + name + "'");
        v[*idx] = 1.0;
    }
    insert(word, v);
}

std::set<std::string> Lexicon::attribute_set(const std::string& word) const {
    const AttributeVector* v = find(word);
    if (!v) throw InventoryError("no entry for word '" + word + "'");
    return to_attribute_set(inventory_, *v);
}

ParadigmSet::ParadigmSet(const Lexicon& seed, std::string provenance)
    : inventory_(seed.inventory()), provenance_(std::move(provenance)) {
    if (seed.empty()) {
        throw std::invalid_argument("paradigm set needs a nonempty seed lexicon");
    }
    std::set<AttributeVector> distinct;
    for (const auto& [word, v] : seed.entries()) {
        if (!is_gold_vector(v)) {
            throw std::invalid_argument("seed entry '" + word + "' is not a +1/-1 vector");
        }
        distinct.insert(v);
    }
    paradigms_.assign(distinct.begin(), distinct.end());
}

namespace {

struct RawAttribute {
    std::string name;
    double value;
};

struct RawEntry {
    std::string word;
    std::vector<RawAttribute> attributes;
    std::size_t line;
};

bool plain_token(std::string_view word) {
    if (word.empty()) return false;
    for (char c : word) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') return false;
    }
    return true;
}

RawAttribute parse_attribute_token(std::string_view token, const std::string& name, std::size_t lineno) {
    RawAttribute out;
    auto eq = token.find('=');
    if (eq == std::string_view::npos) {
        out.name = std::string(token);
        out.value = 1.0;
    } else {
        out.name = std::string(token.substr(0, eq));
        auto value = parse_double(token.substr(eq + 1));
        if (!value) {
            throw ParseError(name, lineno, "bad attribute score in '" + std::string(token) + "'");
        }
        if (!(*value >= -1.0 && *value <= 1.0)) {
            throw ParseError(name, lineno, "attribute score outside [-1, 1] in '" + std::string(token) + "'");
        }
        out.value = *value;
    }
    if (!valid_attribute_name(out.name)) {
        throw ParseError(name, lineno, "invalid attribute name '" + out.name + "'");
    }
    return out;
}

} // namespace

Lexicon read_lexicon(std::istream& in, const std::string& name, const AttributeInventory* inventory) {
    std::vector<RawEntry> raw;
    std::set<std::string> mentioned;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;

        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw ParseError(name, lineno, "expected word<TAB>attributes");
        }
        RawEntry entry;
        entry.word = line.substr(0, tab);
        entry.line = lineno;
        if (!plain_token(entry.word)) {
            throw ParseError(name, lineno, "bad word field '" + entry.word + "'");
        }
        auto tokens = split_ws(std::string_view(line).substr(tab + 1));
        if (tokens.empty()) {
            throw ParseError(name, lineno, "entry '" + entry.word + "' lists no attributes");
        }
        for (auto token : tokens) {
            entry.attributes.push_back(parse_attribute_token(token, name, lineno));
            mentioned.insert(entry.attributes.back().name);
        }
        raw.push_back(std::move(entry));
    }

    AttributeInventory local;
    if (!inventory) {
        local = AttributeInventory::from_names(mentioned);
        inventory = &local;
    }
    Lexicon lexicon(*inventory);
    for (const auto& entry : raw) {
        AttributeVector v(inventory->size(), -1.0);
        for (const auto& attr : entry.attributes) {
            auto idx = inventory->index_of(attr.name);
            if (!idx) {
                throw InventoryError(name + ":" + std::to_string(entry.line) + ": attribute '" +
                                     attr.name + "' is not in the supplied inventory");
            }
            v[*idx] = std::max(v[*idx], attr.value);
        }
        lexicon.insert(entry.word, v);
    }
    return lexicon;
}

Lexicon load_lexicon(const std::filesystem::path& path, const AttributeInventory* inventory) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open lexicon file " + path.string());
    return read_lexicon(in, path.string(), inventory);
}

void write_lexicon(const Lexicon& lexicon, std::ostream& out, bool withScores) {
    const auto& inventory = lexicon.inventory();
    for (const auto& [word, v] : lexicon.entries()) {
        if (withScores) {
            if (v.empty()) continue;
            out << word;
            for (std::size_t i = 0; i < v.size(); ++i) {
                out << (i == 0 ? '\t' : ' ') << inventory.name(i) << '=' << format_double(v[i]);
            }
            out << '\n';
        } else {
            auto attrs = to_attribute_set(inventory, v);
            if (attrs.empty()) continue;
            out << word;
            char sep = '\t';
            for (const auto& attr : attrs) {
                out << sep << attr;
                sep = ' ';
            }
            out << '\n';
        }
    }
}

void save_lexicon(const Lexicon& lexicon, const std::filesystem::path& path, bool withScores) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write lexicon file " + path.string());
    write_lexicon(lexicon, out, withScores);
    if (!out.good()) throw IoError("failed writing lexicon file " + path.string());
}

Lexicon align_lexicon(const Lexicon& source, const AttributeInventory& target) {
    std::vector<std::size_t> where(source.inventory().size());
    for (std::size_t i = 0; i < source.inventory().size(); ++i) {
        auto idx = target.index_of(source.inventory().name(i));
        if (!idx) {
            throw InventoryError("target inventory lacks attribute '" + source.inventory().name(i) + "'");
        }
        where[i] = *idx;
    }
    Lexicon out(target);
    for (const auto& [word, v] : source.entries()) {
        AttributeVector aligned(target.size(), -1.0);
        for (std::size_t i = 0; i < v.size(); ++i) aligned[where[i]] = v[i];
        out.insert(word, aligned);
    }
    return out;
}

std::vector<std::string> read_word_list(std::istream& in, const std::string& name) {
    std::set<std::string> words;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        std::string word(stripped);
        if (!plain_token(word)) {
            throw ParseError(name, lineno, "bad word '" + word + "'");
        }
        words.insert(std::move(word));
    }
    return std::vector<std::string>(words.begin(), words.end());
}

std::vector<std::string> load_word_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open word list " + path.string());
    return read_word_list(in, path.string());
}

} // namespace lexigraph
