#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace tightham {

using Vertex = int;
using BitRow = std::span<const std::uint64_t>;

inline bool row_contains(BitRow row, Vertex v) {
  return (row[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1u;
}

std::size_t row_count(BitRow row);

// Bitset over vertex labels 0..n; label 0 is never used.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int n) : n_(n), words_(words_for(n), 0) {}

  static std::size_t words_for(int n) { return (static_cast<std::size_t>(n) + 64) / 64; }
  static VertexSet full(int n);
  template <class Range>
  static VertexSet of(int n, const Range& vertices) {
    VertexSet s(n);
    for (Vertex v : vertices) s.insert(v);
    return s;
  }

  int universe() const { return n_; }
  bool contains(Vertex v) const { return row_contains(words_, v); }
  void insert(Vertex v) { words_[static_cast<std::size_t>(v) >> 6] |= bit(v); }
  void erase(Vertex v) { words_[static_cast<std::size_t>(v) >> 6] &= ~bit(v); }
  void clear();

  std::size_t size() const { return row_count(words_); }
  bool empty() const;
  BitRow words() const { return words_; }

  VertexSet& intersect(BitRow other);
  VertexSet& unite(BitRow other);
  VertexSet& subtract(BitRow other);
  bool intersects(BitRow other) const;
  std::size_t count_common(BitRow other) const;

  // Smallest member, or 0 when empty.
  Vertex first() const;
  // k-th smallest member (0-based); k < size().
  Vertex nth(std::size_t k) const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        int b = std::countr_zero(bits);
        f(static_cast<Vertex>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

  std::vector<Vertex> to_vector() const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  static std::uint64_t bit(Vertex v) { return std::uint64_t{1} << (v & 63); }

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace tightham
