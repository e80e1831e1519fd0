#ifndef DIRINF_INDEX_SET_HPP
#define DIRINF_INDEX_SET_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dirinf {

/// Sorted, duplicate-free list of 0-based indices.
using IndexSet = std::vector<std::size_t>;

/// Sort and deduplicate; throws std::out_of_range if any index >= n.
IndexSet normalize_index_set(IndexSet s, std::size_t n);

/// {0, ..., n-1}
IndexSet full_index_set(std::size_t n);

/// {0..n-1} \ s, for a normalized s.
IndexSet complement(const IndexSet& s, std::size_t n);

IndexSet intersect(const IndexSet& a, const IndexSet& b);

bool is_subset(const IndexSet& a, const IndexSet& b);

bool contains(const IndexSet& s, std::size_t i);

/// Bit i set for each member. Requires all indices < 64.
std::uint64_t to_mask(const IndexSet& s);

IndexSet from_mask(std::uint64_t mask);

}  // namespace dirinf

#endif  // DIRINF_INDEX_SET_HPP
