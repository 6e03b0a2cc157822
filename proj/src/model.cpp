#include "lexigraph/model.hpp"

#include "lexigraph/errors.hpp"
#include "lexigraph/text.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace lexigraph {

namespace {

constexpr std::string_view kModelStamp = "#lexigraph-model v1";

std::string next_line(std::istream& in, const std::string& name, std::size_t& lineno) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(name, lineno, "unexpected end of file");
    }
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::uint64_t section_count(const std::string& line, std::string_view tag,
                            const std::string& name, std::size_t lineno) {
    auto head = split_ws(line);
    if (head.size() != 2 || head[0] != tag) {
        throw ParseError(name, lineno, "expected '" + std::string(tag) + " <count>'");
    }
    auto count = parse_uint(head[1]);
    if (!count) throw ParseError(name, lineno, "bad count in '" + line + "'");
    return *count;
}

} // namespace

void write_model(const WeightMatrix& model, std::ostream& out) {
    out << kModelStamp << '\n';
    out << "#attributes " << model.attribute_count() << '\n';
    for (std::size_t i = 0; i < model.attribute_count(); ++i) {
        out << model.inventory().name(i) << '\n';
    }
    const auto& catalog = model.features();
    out << "#features " << catalog.size() << '\n';
    for (std::size_t f = 0; f < catalog.size(); ++f) {
        out << catalog.name(f) << '\t' << feature_kind_name(catalog.kind(f)) << '\n';
    }
    out << "#weights" << '\n';
    for (std::size_t i = 0; i < model.attribute_count(); ++i) {
        for (std::size_t f = 0; f < catalog.size(); ++f) {
            out << model.inventory().name(i) << '\t' << catalog.name(f) << '\t'
                << format_double(model.at(i, f)) << '\n';
        }
    }
}

void save_model(const WeightMatrix& model, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write model file " + path.string());
    write_model(model, out);
    if (!out.good()) throw IoError("failed writing model file " + path.string());
}

WeightMatrix read_model(std::istream& in, const std::string& name) {
    std::size_t lineno = 0;
    if (next_line(in, name, lineno) != kModelStamp) {
        throw FormatError(name + ": unsupported model format, expected '" + std::string(kModelStamp) + "'");
    }

    std::uint64_t attrCount = section_count(next_line(in, name, lineno), "#attributes", name, lineno);
    std::vector<std::string> attrNames;
    attrNames.reserve(attrCount);
    for (std::uint64_t i = 0; i < attrCount; ++i) {
        auto line = next_line(in, name, lineno);
        if (!valid_attribute_name(line)) {
            throw ParseError(name, lineno, "invalid attribute name '" + line + "'");
        }
        attrNames.push_back(line);
    }

    std::uint64_t featCount = section_count(next_line(in, name, lineno), "#features", name, lineno);
    std::vector<std::string> featNames;
    std::vector<FeatureKind> featKinds;
    featNames.reserve(featCount);
    featKinds.reserve(featCount);
    for (std::uint64_t i = 0; i < featCount; ++i) {
        auto line = next_line(in, name, lineno);
        auto fields = split(line, '\t');
        if (fields.size() != 2) throw ParseError(name, lineno, "expected feature<TAB>kind");
        auto kind = feature_kind_from(fields[1]);
        if (!kind) throw ParseError(name, lineno, "unknown feature kind '" + std::string(fields[1]) + "'");
        featNames.emplace_back(fields[0]);
        featKinds.push_back(*kind);
    }

    if (split_ws(next_line(in, name, lineno)) != std::vector<std::string_view>{"#weights"}) {
        throw ParseError(name, lineno, "expected '#weights'");
    }

    WeightMatrix model;
    try {
        model = WeightMatrix(AttributeInventory(std::move(attrNames)),
                             FeatureCatalog(std::move(featNames), std::move(featKinds)));
    } catch (const std::exception& e) {
        throw FormatError(name + ": " + e.what());
    }

    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto fields = split(line, '\t');
        if (fields.size() != 3) throw ParseError(name, lineno, "expected attribute<TAB>feature<TAB>weight");
        auto attr = model.inventory().index_of(std::string(fields[0]));
        if (!attr) throw ParseError(name, lineno, "unknown attribute '" + std::string(fields[0]) + "'");
        auto feat = model.features().index_of(std::string(fields[1]));
        if (!feat) throw ParseError(name, lineno, "unknown feature '" + std::string(fields[1]) + "'");
        auto weight = parse_double(fields[2]);
        if (!weight || !std::isfinite(*weight)) {
            throw ParseError(name, lineno, "bad weight '" + std::string(fields[2]) + "'");
        }
        model.at(*attr, *feat) = *weight;
    }
    return model;
}

WeightMatrix load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model file " + path.string());
    return read_model(in, path.string());
}

} // namespace lexigraph
