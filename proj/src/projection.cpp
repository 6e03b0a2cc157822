#include "lexigraph/projection.hpp"

#include "lexigraph/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace lexigraph {

namespace {

bool all_zero(const AttributeVector& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

Lexicon project_impl(const std::map<std::string, AttributeVector>& propagated,
                     const ParadigmSet& paradigms, bool skipUnlabeled, bool parallel) {
    std::vector<const std::string*> words;
    std::vector<const AttributeVector*> vectors;
    words.reserve(propagated.size());
    vectors.reserve(propagated.size());
    for (const auto& [word, v] : propagated) {
        if (v.size() != paradigms.inventory().size()) {
            throw InventoryError("vector for '" + word + "' does not match the paradigm inventory");
        }
        words.push_back(&word);
        vectors.push_back(&v);
    }

    std::vector<const AttributeVector*> chosen(words.size(), nullptr);
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::size_t idx = 0; idx < words.size(); ++idx) {
            if (skipUnlabeled && all_zero(*vectors[idx])) continue;
            chosen[idx] = &project(*vectors[idx], paradigms);
        }
    } else {
        for (std::size_t idx = 0; idx < words.size(); ++idx) {
            if (skipUnlabeled && all_zero(*vectors[idx])) continue;
            chosen[idx] = &project(*vectors[idx], paradigms);
        }
    }

    Lexicon out(paradigms.inventory());
    for (std::size_t idx = 0; idx < words.size(); ++idx) {
        if (chosen[idx]) out.insert(*words[idx], *chosen[idx]);
    }
    return out;
}

} // namespace

const AttributeVector& project(const AttributeVector& v, const ParadigmSet& paradigms) {
    if (paradigms.size() == 0) {
        throw std::invalid_argument("cannot project onto an empty paradigm set");
    }
    const auto& candidates = paradigms.paradigms();
    std::size_t best = 0;
    double bestDistance = squared_distance(v, candidates[0]);
    for (std::size_t p = 1; p < candidates.size(); ++p) {
        double d = squared_distance(v, candidates[p]);
        if (d < bestDistance) {
            bestDistance = d;
            best = p;
        }
    }
    return candidates[best];
}

Lexicon project_lexicon(const std::map<std::string, AttributeVector>& propagated,
                        const ParadigmSet& paradigms, bool skipUnlabeled) {
    return project_impl(propagated, paradigms, skipUnlabeled, true);
}

Lexicon project_lexicon_reference(const std::map<std::string, AttributeVector>& propagated,
                                  const ParadigmSet& paradigms, bool skipUnlabeled) {
    return project_impl(propagated, paradigms, skipUnlabeled, false);
}

} // namespace lexigraph
