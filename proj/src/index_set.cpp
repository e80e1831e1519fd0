#include "dirinf/index_set.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace dirinf {

IndexSet normalize_index_set(IndexSet s, std::size_t n) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (!s.empty() && s.back() >= n) {
    throw std::out_of_range("index " + std::to_string(s.back()) + " out of range for n = " +
                            std::to_string(n));
  }
  return s;
}

IndexSet full_index_set(std::size_t n) {
  IndexSet s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = i;
  return s;
}

IndexSet complement(const IndexSet& s, std::size_t n) {
  IndexSet out;
  out.reserve(n - std::min(n, s.size()));
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (j < s.size() && s[j] == i) {
      ++j;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

IndexSet intersect(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool contains(const IndexSet& s, std::size_t i) {
  return std::binary_search(s.begin(), s.end(), i);
}

std::uint64_t to_mask(const IndexSet& s) {
  std::uint64_t m = 0;
  for (auto i : s) {
    if (i >= 64) throw std::out_of_range("to_mask: index >= 64");
    m |= std::uint64_t{1} << i;
  }
  return m;
}

IndexSet from_mask(std::uint64_t mask) {
  IndexSet s;
  while (mask != 0) {
    s.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return s;
}

}  // namespace dirinf
