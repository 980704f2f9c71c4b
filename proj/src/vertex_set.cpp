#include "tightham/vertex_set.hpp"

#include <algorithm>

namespace tightham {

std::size_t row_count(BitRow row) {
  std::size_t c = 0;
  for (std::uint64_t w : row) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

VertexSet VertexSet::full(int n) {
  VertexSet s(n);
  for (Vertex v = 1; v <= n; ++v) s.insert(v);
  return s;
}

void VertexSet::clear() { std::fill(words_.begin(), words_.end(), 0); }

bool VertexSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

VertexSet& VertexSet::intersect(BitRow other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other[i];
  return *this;
}

VertexSet& VertexSet::unite(BitRow other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other[i];
  return *this;
}

VertexSet& VertexSet::subtract(BitRow other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other[i];
  return *this;
}

bool VertexSet::intersects(BitRow other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & other[i]) return true;
  }
  return false;
}

std::size_t VertexSet::count_common(BitRow other) const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    c += static_cast<std::size_t>(std::popcount(words_[i] & other[i]));
  }
  return c;
}

Vertex VertexSet::first() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w]) return static_cast<Vertex>(w * 64 + std::countr_zero(words_[w]));
  }
  return 0;
}

Vertex VertexSet::nth(std::size_t k) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::size_t c = static_cast<std::size_t>(std::popcount(words_[w]));
    if (k < c) {
      std::uint64_t bits = words_[w];
      for (std::size_t i = 0; i < k; ++i) bits &= bits - 1;
      return static_cast<Vertex>(w * 64 + std::countr_zero(bits));
    }
    k -= c;
  }
  return 0;
}

std::vector<Vertex> VertexSet::to_vector() const {
  std::vector<Vertex> out;
  out.reserve(size());
  for_each([&](Vertex v) { out.push_back(v); });
  return out;
}

}  // namespace tightham
