#include "lexigraph/rng.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace lexigraph {

std::uint64_t Rng::below(std::uint64_t bound) {
    // Rejection sampling over the largest multiple of bound.
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t draw;
    do {
        draw = engine_();
    } while (draw >= limit);
    return draw % bound;
}

std::vector<std::uint32_t> Rng::sample(std::uint32_t n, std::uint32_t k) {
    std::vector<std::uint32_t> out;
    if (n == 0) return out;
    if (k >= n || k > n / 2) {
        std::vector<std::uint32_t> all(n);
        std::iota(all.begin(), all.end(), 0u);
        shuffle(all);
        all.resize(std::min(n, k));
        return all;
    }
    out.reserve(k);
    std::unordered_set<std::uint32_t> seen;
    while (out.size() < k) {
        auto v = static_cast<std::uint32_t>(below(n));
        if (seen.insert(v).second) out.push_back(v);
    }
    return out;
}

} // namespace lexigraph
