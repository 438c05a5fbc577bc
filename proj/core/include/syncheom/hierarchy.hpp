#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace syncheom {

// Thrown when the requested hierarchy has more ADOs than the memory budget allows.
class BudgetExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

// binomial(depth + modes, modes): number of multi-indices of `modes` entries with sum <= depth.
std::size_t hierarchy_size(int modes, int depth);

// All multi-indices n = (n_0, ..., n_{modes-1}) with |n| <= depth, in graded
// lexicographic order (by |n|, then lexicographically), with O(1) neighbour
// tables n ± e_k. Position 0 is the zero index (the physical density matrix).
class Hierarchy {
public:
    static constexpr std::uint32_t kNone = 0xffffffffu;
    static constexpr std::size_t kDefaultBudget = 4'000'000;

    Hierarchy(int modes, int depth, std::size_t max_ados = kDefaultBudget);

    std::size_t size() const { return levels_.size(); }
    int modes() const { return modes_; }
    int depth() const { return depth_; }

    std::span<const std::uint8_t> index(std::size_t i) const {
        return {indices_.data() + i * static_cast<std::size_t>(modes_), static_cast<std::size_t>(modes_)};
    }
    int level(std::size_t i) const { return levels_[i]; }

    // Position of n + e_k (or n - e_k), kNone when out of range.
    std::uint32_t up(std::size_t i, int k) const { return up_[i * static_cast<std::size_t>(modes_) + k]; }
    std::uint32_t down(std::size_t i, int k) const { return down_[i * static_cast<std::size_t>(modes_) + k]; }

    // Position of an arbitrary multi-index, kNone when absent.
    std::uint32_t find(std::span<const std::uint8_t> n) const;

private:
    int modes_;
    int depth_;
    std::vector<std::uint8_t> indices_;
    std::vector<int> levels_;
    std::vector<std::uint32_t> up_;
    std::vector<std::uint32_t> down_;
};

// Hierarchy for a Drude term plus K Matsubara terms truncated at depth L.
inline Hierarchy build_hierarchy(int K, int L, std::size_t max_ados = Hierarchy::kDefaultBudget) {
    if (K < 0) throw std::invalid_argument("build_hierarchy: K must be non-negative");
    return Hierarchy(K + 1, L, max_ados);
}

}  // namespace syncheom
