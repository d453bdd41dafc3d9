#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reflectionlab/cartan_type.hpp"
#include "reflectionlab/engine.hpp"

namespace reflectionlab {

/// Weakly decreasing list of positive parts; empty allowed.
struct Partition {
  std::vector<int> parts;

  int sum() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
  }
  int length() const { return int(parts.size()); }
  bool empty() const { return parts.empty(); }
  bool all_even() const {
    for (int p : parts)
      if (p % 2) return false;
    return !parts.empty();
  }
  bool all_greater_than(int m) const {
    for (int p : parts)
      if (p <= m) return false;
    return true;
  }
  void normalize() { std::sort(parts.rbegin(), parts.rend()); }

  /// Rendered with exponents for repeats: (2,1,1,1) -> "21^3".
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;
};

std::vector<Partition> partitions(int n);
Partition join(const Partition& a, const Partition& b);
/// Adds m to every part; InvalidShift when a part would drop to <= 0.
Partition shift(const Partition& lambda, int m);

enum class SplitTag { None, Plus, Minus };

/// (lambda^1, lambda^2), optionally sign-tagged; tags are only allowed when
/// lambda^2 is empty and lambda^1 is even.
struct DoublePartition {
  Partition pos;
  Partition neg;
  SplitTag tag = SplitTag::None;

  std::string to_string() const;  // "pos.neg" or "pos.+" / "pos.-"
  friend bool operator==(const DoublePartition&,
                         const DoublePartition&) = default;
  friend auto operator<=>(const DoublePartition&,
                          const DoublePartition&) = default;
};

struct TriplePartition {
  Partition a, b, c;

  std::string to_string() const;  // "a.b.c"
  friend bool operator==(const TriplePartition&,
                         const TriplePartition&) = default;
  friend auto operator<=>(const TriplePartition&,
                          const TriplePartition&) = default;
};

std::vector<DoublePartition> double_partitions(int n);
std::vector<TriplePartition> triple_partitions(int n);

/// One predicted conjugacy class of reflection subgroups in a classical group.
struct ClassicalRecord {
  CartanType type;
  std::int64_t subgroup_order = 1;
  CartanType closure_type;
  // identification label and predicted Coxeter cycle type
  std::string lambda_label;
  std::string coxeter_class;
  // underlying data
  TriplePartition lambda_b;   // type B
  DoublePartition lambda_d;   // type D
  Partition lambda_a;         // type A
};

/// Type B_n: one class per triple partition of n whose third component has
/// all parts > 1.
std::vector<ClassicalRecord> classify_b(int n);

/// Type D_n per the odd/even case split, including the sign-tagged classes.
std::vector<ClassicalRecord> classify_d(int n);

/// Type A_n: one class per partition of n+1 (the parabolic classes of the
/// symmetric group on n+1 points).
std::vector<ClassicalRecord> classify_a(int n);

struct I2Record {
  std::string type_label;   // "∅", "A1", "~A1", "I2(d)", "~I2(d)"
  int d = 0;                // order parameter, 0 for the rank <= 1 records
  bool tilde = false;
  std::int64_t subgroup_order = 1;
  std::int64_t class_size = 1;
  std::string closure_label;
  std::string coxeter_class;  // "1", "s", "s~", "r^k"
};

struct I2Classification {
  int m = 0;
  std::vector<I2Record> records;
  bool gamma_injective = false;
  bool gamma_surjective = false;
  bool outside_theorem_range = false;  // m in {3,4,6}
};

/// Dihedral groups I2(m) handled purely arithmetically on divisors.
I2Classification classify_i2(int m);

/// Signed cycle type of an element of a B/C/D ambient, read off the action on
/// the coordinate lines. For split D-classes the +/- tag is decided by
/// conjugacy against the fixed reference element of the tagged class.
DoublePartition signed_cycle_type(const GroupElement& a);

/// Cycle type of an element of an A_n ambient on the n+1 permuted points.
Partition coordinate_cycle_type(const GroupElement& a);

/// Reference subsystem of the (lambda, +) or (lambda, -) class of D_n:
/// type A products on consecutive blocks; the minus variant flips the last
/// generator's sign. lambda must be an even partition of n.
Subsystem split_reference_subsystem(const RootSystem& rs,
                                    const Partition& lambda, SplitTag tag);

}  // namespace reflectionlab
