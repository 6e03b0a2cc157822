#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace lexigraph {

// Seeded random source. Every sampling decision in the project goes through
// this class so a fixed seed reproduces identical output across runs and
// platforms; nothing here depends on std::uniform_int_distribution, whose
// output is not pinned down by the standard.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform draw in [0, bound) without modulo bias. bound must be nonzero.
    std::uint64_t below(std::uint64_t bound);

    // In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    // k distinct indices from [0, n), in draw order. Returns all of [0, n)
    // shuffled when k >= n.
    std::vector<std::uint32_t> sample(std::uint32_t n, std::uint32_t k);

private:
    std::mt19937_64 engine_;
};

} // namespace lexigraph
