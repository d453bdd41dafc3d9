#pragma once

#include <bit>
#include <cstdint>
#include <functional>

#include "reflectionlab/scalar.hpp"

namespace reflectionlab {

/// Fixed 128-bit member set over positive-root indices (N <= 120 everywhere).
struct Bitset128 {
  std::uint64_t w0 = 0;
  std::uint64_t w1 = 0;

  void set(int i) {
    if (i < 64)
      w0 |= std::uint64_t(1) << i;
    else
      w1 |= std::uint64_t(1) << (i - 64);
  }
  void reset(int i) {
    if (i < 64)
      w0 &= ~(std::uint64_t(1) << i);
    else
      w1 &= ~(std::uint64_t(1) << (i - 64));
  }
  bool test(int i) const {
    return i < 64 ? (w0 >> i) & 1 : (w1 >> (i - 64)) & 1;
  }
  int count() const { return std::popcount(w0) + std::popcount(w1); }
  bool empty() const { return w0 == 0 && w1 == 0; }

  friend Bitset128 operator&(Bitset128 a, Bitset128 b) {
    return {a.w0 & b.w0, a.w1 & b.w1};
  }
  friend Bitset128 operator|(Bitset128 a, Bitset128 b) {
    return {a.w0 | b.w0, a.w1 | b.w1};
  }
  friend bool operator==(Bitset128 a, Bitset128 b) = default;

  bool is_subset_of(Bitset128 o) const {
    return (w0 & ~o.w0) == 0 && (w1 & ~o.w1) == 0;
  }

  /// Lexicographic order on the bit string b0 b1 ... (first differing index,
  /// absent bit sorts first).
  friend bool lex_less(Bitset128 a, Bitset128 b) {
    if (a.w0 != b.w0) {
      std::uint64_t d = a.w0 ^ b.w0;
      std::uint64_t low = d & (~d + 1);
      return (a.w0 & low) == 0;
    }
    if (a.w1 != b.w1) {
      std::uint64_t d = a.w1 ^ b.w1;
      std::uint64_t low = d & (~d + 1);
      return (a.w1 & low) == 0;
    }
    return false;
  }

  template <class F>
  void for_each(F&& f) const {
    std::uint64_t w = w0;
    while (w) {
      f(std::countr_zero(w));
      w &= w - 1;
    }
    w = w1;
    while (w) {
      f(64 + std::countr_zero(w));
      w &= w - 1;
    }
  }

  std::uint64_t hash() const {
    return detail::mix64(w0 * 0x9e3779b97f4a7c15ULL ^ detail::mix64(w1));
  }
};

struct Bitset128Hash {
  std::size_t operator()(const Bitset128& b) const { return b.hash(); }
};

/// Total order used wherever a deterministic sort of member sets is needed.
inline bool bits_less(const Bitset128& a, const Bitset128& b) {
  if (a.w0 != b.w0 || a.w1 != b.w1) return lex_less(a, b);
  return false;
}

}  // namespace reflectionlab
