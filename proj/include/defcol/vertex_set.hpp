#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace defcol {

inline constexpr int kMaxVertices = 64;

/// Subset of {0, ..., 63} stored as a bitmask (bit v set iff v is a member).
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr VertexSet full(int n) {
    return VertexSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr VertexSet single(int v) { return VertexSet(std::uint64_t{1} << v); }
  static VertexSet from_vertices(const std::vector<int>& vs) {
    VertexSet s;
    for (int v : vs) {
      if (v < 0 || v >= kMaxVertices) throw std::out_of_range("vertex id out of range");
      s.insert(v);
    }
    return s;
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(int v) const { return (bits_ >> v) & 1U; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr void insert(int v) { bits_ |= std::uint64_t{1} << v; }
  constexpr void erase(int v) { bits_ &= ~(std::uint64_t{1} << v); }
  constexpr bool subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr VertexSet complement(int n) const { return VertexSet(~bits_ & full(n).bits_); }
  /// Lowest member; undefined on the empty set.
  constexpr int front() const { return std::countr_zero(bits_); }

  std::vector<int> vertices() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  friend constexpr VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits_ | b.bits_); }
  friend constexpr VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & b.bits_); }
  friend constexpr VertexSet operator-(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(VertexSet a, VertexSet b) = default;

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace defcol
