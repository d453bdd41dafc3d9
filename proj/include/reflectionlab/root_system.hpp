#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reflectionlab/bitset128.hpp"
#include "reflectionlab/cartan_type.hpp"
#include "reflectionlab/linalg.hpp"

namespace reflectionlab {

enum class LengthClass : std::uint8_t { Single, Long, Short };

struct Root {
  Vec coords;         // ambient coordinates, fixed invariant form = dot product
  Vec simple_coords;  // expansion over the simple roots (length = rank)
  Scalar norm;        // squared length
  LengthClass length_class{LengthClass::Single};
};

class RootSystem;
using RootSystemPtr = std::shared_ptr<const RootSystem>;

/// Subset of positive roots closed under mutual reflection.
struct Subsystem {
  const RootSystem* ambient = nullptr;
  Bitset128 members;

  int size() const { return members.count(); }
};

/// A finite root system with exact coordinates. Immutable after construction;
/// index layout: positive roots 0..N-1, negatives at i+N.
class RootSystem {
public:
  const CartanType& type() const { return type_; }
  int rank() const { return rank_; }
  int dim() const { return dim_; }
  int n_positive() const { return n_pos_; }
  int n_roots() const { return 2 * n_pos_; }

  const Root& root(int i) const { return roots_[std::size_t(i)]; }
  const std::vector<int>& simple_indices() const { return simple_idx_; }
  const Mat& bilinear_form() const { return gram_; }

  int negate(int i) const { return (i + n_pos_) % (2 * n_pos_); }
  int positive_of(int i) const { return i < n_pos_ ? i : i - n_pos_; }

  /// Index of s_{root a}(root b); a may be any root index, table is stored
  /// for positive a.
  int reflect_index(int a, int b) const {
    return refl_[std::size_t(positive_of(a)) * std::size_t(2 * n_pos_) +
                 std::size_t(b)];
  }
  const std::uint8_t* reflection_row(int a) const {
    return refl_.data() + std::size_t(positive_of(a)) * std::size_t(2 * n_pos_);
  }

  int index_of(const Vec& coords) const;  // -1 when absent

  Scalar inner(int i, int j) const {
    return inner_[std::size_t(i < n_pos_ ? i : i - n_pos_) * n_pos_ +
                  std::size_t(j < n_pos_ ? j : j - n_pos_)] *
           Scalar((i < n_pos_) == (j < n_pos_) ? 1 : -1);
  }

  bool crystallographic() const { return type_.components[0].family != Family::H; }

  Vec coroot_coords(int i) const;

  Subsystem full_subsystem() const;
  Subsystem empty_subsystem() const;
  Subsystem make_subsystem(const std::vector<int>& positive_indices) const;

  friend RootSystemPtr build_root_system(Family family, int rank,
                                         std::optional<int> m);
  friend RootSystemPtr dual(const RootSystem& rs);

private:
  RootSystem() = default;
  void finish_construction();  // derives indices, tables, invariants

  CartanType type_;
  int rank_ = 0;
  int dim_ = 0;
  int n_pos_ = 0;
  std::vector<Root> roots_;
  std::vector<int> simple_idx_;
  Mat gram_;                        // Gram matrix of the simple roots
  std::vector<std::uint8_t> refl_;  // N x 2N reflection table
  std::vector<Scalar> inner_;       // N x N inner products of positive roots
  std::vector<Vec> raw_roots_;      // construction input before sorting
};

RootSystemPtr build_root_system(Family family, int rank,
                                std::optional<int> m = std::nullopt);
RootSystemPtr dual(const RootSystem& rs);

/// s_alpha(beta) in ambient coordinates.
Vec reflect(const Vec& alpha, const Vec& beta);

/// Smallest member set containing seed and stable under mutual reflection;
/// equals T intersect <seed> (the reflections of the generated subgroup).
Subsystem reflection_closure(const RootSystem& ambient, Bitset128 seed);
Subsystem reflection_closure(const RootSystem& ambient,
                             const std::vector<int>& seed);

/// All positive roots in the linear span of sub: the reflection set of the
/// parabolic closure of <sub>.
Subsystem span_closure(const Subsystem& sub);

bool is_reflection_closed(const Subsystem& sub);

int subsystem_rank(const Subsystem& sub);

/// Indecomposable positive roots of a reflection-closed sub, ascending index.
std::vector<int> simple_system(const Subsystem& sub);

/// Connected components of a reflection-closed sub, each given by its
/// simple roots (the full member sets can be recovered via span).
std::vector<std::vector<int>> simple_components(const Subsystem& sub);

CartanType cartan_type_of(const Subsystem& sub);

/// One Borel-De Siebenthal step: extended-diagram node deletions applied to
/// every component on both the primal and the dual side. Includes sub itself.
std::vector<Subsystem> bds_children(const Subsystem& sub);

}  // namespace reflectionlab
