#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "reflectionlab/root_system.hpp"

namespace reflectionlab {

/// Element of W as a permutation of the root index set (length 2N).
/// The permutation commutes with negation; the matrix on E is derived from
/// the images of the simple roots when needed.
struct GroupElement {
  const RootSystem* rs = nullptr;
  std::vector<std::uint8_t> img;

  bool is_identity() const {
    for (std::size_t i = 0; i < img.size(); ++i)
      if (img[i] != i) return false;
    return true;
  }
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

GroupElement identity_element(const RootSystem& rs);
GroupElement reflection_element(const RootSystem& rs, int positive_index);
GroupElement compose(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);
/// w^-1 a w
GroupElement conjugate(const GroupElement& a, const GroupElement& w);
std::int64_t order(const GroupElement& a);

/// Matrix of the element on E, in the simple-root basis (rank x rank).
Mat matrix_on_span(const GroupElement& a);

/// Product of the reflections in the given positive roots, left to right.
GroupElement product_of_reflections(const RootSystem& rs,
                                    const std::vector<int>& roots);

/// Conjugation-invariant class data: cycle types of all powers on the 2N
/// roots plus the characteristic polynomial on E.
struct ClassFingerprint {
  std::int64_t element_order = 1;
  std::vector<std::pair<int, std::vector<int>>> power_cycles;
  std::vector<Scalar> char_poly;

  friend bool operator==(const ClassFingerprint&,
                         const ClassFingerprint&) = default;
  std::string serialize() const;
  std::uint64_t digest() const;
};

ClassFingerprint fingerprint(const GroupElement& a);

/// Canonical form of a subsystem under the group generated by the given
/// reflections: lexicographically smallest member set in the orbit.
struct CanonicalSubsystem {
  Bitset128 canonical;
  std::int64_t orbit_size = 0;
};

inline constexpr std::int64_t kDefaultOrbitBudget = 1'000'000;

Bitset128 conjugate_members(const RootSystem& rs, Bitset128 members,
                            const std::uint8_t* row);

CanonicalSubsystem subsystem_orbit(const Subsystem& sub,
                                   const std::vector<int>& generator_roots,
                                   std::int64_t budget = kDefaultOrbitBudget);

/// Same, also returning every member set in the orbit (sorted).
CanonicalSubsystem subsystem_orbit_members(
    const Subsystem& sub, const std::vector<int>& generator_roots,
    std::vector<Bitset128>& members_out,
    std::int64_t budget = kDefaultOrbitBudget);

inline constexpr std::int64_t kDefaultSearchBudget = 5'000'000;

struct ConjugacyResult {
  bool conjugate = false;
  std::optional<GroupElement> witness;   // a^w == b, verified
  std::vector<int> witness_word;         // as positive-root reflection indices
};

/// Bidirectional search over conjugates under the simple reflections.
/// Definitive false when one class is exhausted within budget.
ConjugacyResult are_conjugate(const GroupElement& a, const GroupElement& b,
                              std::int64_t budget = kDefaultSearchBudget);

inline constexpr std::int64_t kDefaultGroupCap = 1'000'000;

/// Fully enumerated group with its conjugacy class partition.
struct GroupEnumeration {
  const RootSystem* rs = nullptr;
  int degree = 0;  // 2N
  std::vector<std::uint8_t> elements;  // |W| x degree, flat
  std::vector<std::uint32_t> class_of;
  std::vector<std::uint32_t> class_reps;
  std::vector<std::int64_t> class_sizes;

  std::int64_t size() const { return std::int64_t(class_of.size()); }
  const std::uint8_t* element(std::uint32_t i) const {
    return elements.data() + std::size_t(i) * std::size_t(degree);
  }
  GroupElement element_at(std::uint32_t i) const;
  /// Index of an element, or -1 when absent.
  std::int64_t find(const GroupElement& g) const;

  std::unordered_map<std::uint64_t, std::uint32_t> index;  // hash -> id
};

GroupEnumeration enumerate_group(const RootSystem& rs,
                                 std::int64_t cap = kDefaultGroupCap);

struct ClassSummary {
  ClassFingerprint fingerprint;
  std::int64_t size = 0;
};

std::vector<ClassSummary> enumerate_classes(const RootSystem& rs,
                                            std::int64_t cap = kDefaultGroupCap);

/// Number of W-orbits on the reflections (positive roots).
int reflection_class_count(const RootSystem& rs);

struct AdequacyReport {
  bool adequate = true;
  std::int64_t n_classes = 0;
  std::int64_t n_buckets = 0;
  // pairs of class representatives sharing a fingerprint bucket
  std::vector<std::pair<std::uint32_t, std::uint32_t>> merged;
};

/// Checks whether fingerprint buckets coincide with the true conjugacy
/// classes of the fully enumerated group.
AdequacyReport fingerprint_adequacy_audit(const RootSystem& rs,
                                          std::int64_t cap = kDefaultGroupCap);

}  // namespace reflectionlab
