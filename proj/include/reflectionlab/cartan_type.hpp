#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "reflectionlab/errors.hpp"

namespace reflectionlab {

enum class Family : std::uint8_t { A, B, C, D, E, F, G, H, I2 };

enum class Decoration : std::uint8_t {
  None,
  Tilde,  // short-root variant in an ambient with two root lengths
};

std::string family_name(Family f);

/// One irreducible factor of a type, e.g. A3, ~A1, I2(5).
struct TypeComponent {
  Family family{Family::A};
  int rank{0};
  int m{0};  // bond order, I2 only
  Decoration dec{Decoration::None};

  friend auto operator<=>(const TypeComponent&, const TypeComponent&) = default;

  std::string label() const;
  std::int64_t group_order() const;
  int coxeter_number() const;
};

/// Multiset of irreducible factors; empty means the trivial group.
struct CartanType {
  std::vector<TypeComponent> components;  // kept sorted

  void normalize();
  std::string label() const;
  std::int64_t group_order() const;
  /// Order of a Coxeter element: lcm of the factors' Coxeter numbers.
  std::int64_t coxeter_order() const;
  int rank() const;

  friend bool operator==(const CartanType&, const CartanType&) = default;
  friend auto operator<=>(const CartanType&, const CartanType&) = default;
};

CartanType parse_type_label(const std::string& label);

}  // namespace reflectionlab
