#include "syncheom/hierarchy.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace syncheom {

std::size_t hierarchy_size(int modes, int depth) {
    // binomial(depth + modes, modes), saturating on overflow.
    std::size_t result = 1;
    for (int i = 1; i <= modes; ++i) {
        const std::size_t num = static_cast<std::size_t>(depth + i);
        if (result > std::numeric_limits<std::size_t>::max() / num) return std::numeric_limits<std::size_t>::max();
        result = result * num / static_cast<std::size_t>(i);
    }
    return result;
}

namespace {

// Append all vectors of `modes` entries summing to `level`, lexicographically ascending.
void enumerate_level(int modes, int level, std::vector<std::uint8_t>& cur, int pos, int remaining,
                     std::vector<std::uint8_t>& out) {
    if (pos == modes - 1) {
        cur[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(remaining);
        out.insert(out.end(), cur.begin(), cur.end());
        return;
    }
    for (int v = 0; v <= remaining; ++v) {
        cur[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(v);
        enumerate_level(modes, level, cur, pos + 1, remaining - v, out);
    }
}

}  // namespace

Hierarchy::Hierarchy(int modes, int depth, std::size_t max_ados) : modes_(modes), depth_(depth) {
    if (modes < 1) throw std::invalid_argument("Hierarchy: need at least one mode");
    if (depth < 1 || depth > 255) throw std::invalid_argument("Hierarchy: depth must be in [1, 255]");
    const std::size_t count = hierarchy_size(modes, depth);
    if (count > max_ados || count >= kNone) {
        throw BudgetExceeded("Hierarchy: " + std::to_string(count) + " ADOs exceed the budget of " +
                             std::to_string(max_ados));
    }

    const auto m = static_cast<std::size_t>(modes);
    indices_.reserve(count * m);
    levels_.reserve(count);
    std::vector<std::uint8_t> cur(m, 0);
    for (int level = 0; level <= depth; ++level) {
        enumerate_level(modes, level, cur, 0, level, indices_);
        levels_.resize(indices_.size() / m, level);
    }

    up_.assign(count * m, kNone);
    down_.assign(count * m, kNone);
    std::vector<std::uint8_t> probe(m);
    for (std::size_t i = 0; i < count; ++i) {
        const auto n = index(i);
        for (int k = 0; k < modes; ++k) {
            std::copy(n.begin(), n.end(), probe.begin());
            if (levels_[i] < depth) {
                ++probe[static_cast<std::size_t>(k)];
                up_[i * m + static_cast<std::size_t>(k)] = find(probe);
                --probe[static_cast<std::size_t>(k)];
            }
            if (probe[static_cast<std::size_t>(k)] > 0) {
                --probe[static_cast<std::size_t>(k)];
                down_[i * m + static_cast<std::size_t>(k)] = find(probe);
            }
        }
    }
}

std::uint32_t Hierarchy::find(std::span<const std::uint8_t> n) const {
    if (static_cast<int>(n.size()) != modes_) return kNone;
    int level = 0;
    for (auto v : n) level += v;
    if (level > depth_) return kNone;
    // Levels are contiguous and lexicographically sorted within each level.
    const auto lo_it = std::lower_bound(levels_.begin(), levels_.end(), level);
    const auto hi_it = std::upper_bound(lo_it, levels_.end(), level);
    std::size_t lo = static_cast<std::size_t>(lo_it - levels_.begin());
    std::size_t hi = static_cast<std::size_t>(hi_it - levels_.begin());
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const auto cand = index(mid);
        if (std::lexicographical_compare(cand.begin(), cand.end(), n.begin(), n.end())) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    if (lo < size()) {
        const auto cand = index(lo);
        if (std::equal(cand.begin(), cand.end(), n.begin(), n.end())) return static_cast<std::uint32_t>(lo);
    }
    return kNone;
}

}  // namespace syncheom
