#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sunflower {

enum class ErrorKind {
  DuplicateMember,
  EmptySet,
  OutOfRange,
  ArityMismatch,
  BadArity,
  DomainError,
  NotPrimePower,
  InapplicableFactor,
  NotPartite,
  InputHasSunflower,
  TooLarge,
  UsageError,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

using ElementId = std::uint32_t;
/// Sorted, duplicate-free list of element ids.
using ElementSet = std::vector<ElementId>;
using Vector = std::vector<std::uint32_t>;

ElementSet intersect(const ElementSet& a, const ElementSet& b);
ElementSet unite(const ElementSet& a, const ElementSet& b);

/// A finite family of pairwise distinct sets. Member order is the input order.
///
/// Element ids are arbitrary unsigned integers; `normalized()` relabels them
/// densely onto [0, M). `labels()[id]` is the external token for `id` when a
/// label table is attached (parsers always attach one).
class SetFamily {
 public:
  SetFamily() = default;
  explicit SetFamily(std::vector<ElementSet> members,
                     std::vector<std::string> labels = {});

  const std::vector<ElementSet>& members() const noexcept { return members_; }
  const ElementSet& operator[](std::size_t i) const { return members_[i]; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

  /// Common member size, unset if sizes differ or the family is empty.
  std::optional<std::size_t> uniformity() const noexcept { return uniformity_; }
  /// The union of all members, ascending.
  const ElementSet& ground() const noexcept { return ground_; }
  /// M = |union of members|.
  std::size_t ground_size() const noexcept { return ground_.size(); }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::string label(ElementId id) const;

  bool is_dense() const noexcept;
  SetFamily normalized() const;
  SetFamily subfamily(std::span<const std::size_t> indices) const;

  friend bool operator==(const SetFamily& a, const SetFamily& b) {
    return a.members_ == b.members_;
  }

 private:
  std::vector<ElementSet> members_;
  std::vector<std::string> labels_;
  ElementSet ground_;
  std::optional<std::size_t> uniformity_;
};

/// Per-coordinate moduli (D_1, ..., D_n), every D_i >= 2.
class ModulusVector {
 public:
  ModulusVector() = default;
  explicit ModulusVector(std::vector<std::uint32_t> moduli);

  const std::vector<std::uint32_t>& values() const noexcept { return moduli_; }
  std::uint32_t operator[](std::size_t i) const { return moduli_[i]; }
  std::size_t size() const noexcept { return moduli_.size(); }

  /// Product of the moduli, saturating at UINT64_MAX.
  std::uint64_t point_count() const noexcept;
  bool all_at_least(std::uint32_t bound) const noexcept;
  bool uniform() const noexcept;
  bool contains(const Vector& v) const noexcept;

  /// Lexicographic rank of `v` (last coordinate fastest).
  std::uint64_t rank(const Vector& v) const;
  Vector unrank(std::uint64_t index) const;

  friend bool operator==(const ModulusVector&, const ModulusVector&) = default;

 private:
  std::vector<std::uint32_t> moduli_;
};

/// Distinct vectors of Z_{D_1} x ... x Z_{D_n}, in input order.
class VectorFamily {
 public:
  VectorFamily() = default;
  VectorFamily(ModulusVector moduli, std::vector<Vector> members);

  const ModulusVector& moduli() const noexcept { return moduli_; }
  const std::vector<Vector>& members() const noexcept { return members_; }
  const Vector& operator[](std::size_t i) const { return members_[i]; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

  VectorFamily subfamily(std::span<const std::size_t> indices) const;

  friend bool operator==(const VectorFamily&, const VectorFamily&) = default;

 private:
  ModulusVector moduli_;
  std::vector<Vector> members_;
};

/// Ordered partition C_1 + ... + C_k of a ground set into disjoint classes.
class PartiteStructure {
 public:
  PartiteStructure() = default;
  explicit PartiteStructure(std::vector<ElementSet> classes);

  const std::vector<ElementSet>& classes() const noexcept { return classes_; }
  const ElementSet& operator[](std::size_t i) const { return classes_[i]; }
  std::size_t size() const noexcept { return classes_.size(); }
  const ElementSet& ground() const noexcept { return ground_; }

  /// Index of the class holding `e`, unset if `e` is outside the ground set.
  std::optional<std::size_t> class_of(ElementId e) const;
  /// True iff `s` meets every class exactly once.
  bool is_transversal(const ElementSet& s) const;
  std::vector<std::size_t> class_sizes() const;

 private:
  std::vector<ElementSet> classes_;
  ElementSet ground_;
  std::vector<std::pair<ElementId, std::size_t>> owner_;  // sorted by element
};

enum class CoordinateClass { AllEqual, AllDistinct };

struct SunflowerWitness {
  std::vector<std::size_t> indices;
  /// Set case only.
  std::optional<ElementSet> kernel;
  /// Vector case only.
  std::vector<CoordinateClass> coordinate_classes;
};

/// Raised when an operation requiring a sunflower-free input finds a sunflower.
class SunflowerFound : public Error {
 public:
  SunflowerFound(SunflowerWitness witness, const std::string& message)
      : Error(ErrorKind::InputHasSunflower, message), witness_(std::move(witness)) {}

  const SunflowerWitness& witness() const noexcept { return witness_; }

 private:
  SunflowerWitness witness_;
};

struct ParseOptions {
  bool allow_empty_members = false;
};

SetFamily parse_set_family(std::string_view text, const ParseOptions& options = {});
VectorFamily parse_vector_family(std::string_view text, const ModulusVector& moduli);
ModulusVector parse_moduli(std::string_view text);

std::string serialize_set_family(const SetFamily& f);
std::string serialize_vector_family(const VectorFamily& f);

std::size_t union_size(const SetFamily& f) noexcept;

}  // namespace sunflower
