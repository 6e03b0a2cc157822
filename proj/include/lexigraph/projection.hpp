#pragma once

#include "lexigraph/lexicon.hpp"

#include <map>
#include <string>

namespace lexigraph {

// Nearest paradigm by squared Euclidean distance. Ties resolve to the
// lexicographically smallest paradigm vector.
const AttributeVector& project(const AttributeVector& v, const ParadigmSet& paradigms);

// Projects every propagated vector onto the paradigm set. With skipUnlabeled
// set, words whose vectors are all zeros (never reached by propagation) are
// left out instead of being forced onto a paradigm.
Lexicon project_lexicon(const std::map<std::string, AttributeVector>& propagated,
                        const ParadigmSet& paradigms, bool skipUnlabeled = true);

// Serial implementation kept as the reference for the parallel kernel; both
// produce identical lexicons.
Lexicon project_lexicon_reference(const std::map<std::string, AttributeVector>& propagated,
                                  const ParadigmSet& paradigms, bool skipUnlabeled = true);

} // namespace lexigraph
