#pragma once

#include <array>
#include <optional>
#include <span>

#include "sunflower/core.hpp"

namespace sunflower {

/// True iff every pairwise intersection equals the common intersection.
/// Throws BadArity for fewer than two sets or repeated sets.
bool is_sunflower_sets(std::span<const ElementSet> sets);

/// Naive scan over all `petals`-subsets of members in lexicographic index
/// order. Returns the first sunflower found, with its kernel.
/// For petals >= 4 the family is capped at 64 members (TooLarge beyond).
std::optional<SunflowerWitness> find_sunflower_sets(const SetFamily& f, std::size_t petals);

/// 3-petal detector driven by per-element incidence bitsets. Always returns
/// the same lexicographically smallest witness as the naive scan.
std::optional<SunflowerWitness> find_sunflower_sets_fast(const SetFamily& f);

/// ASU 3-sunflower: each coordinate is all-equal or all-distinct.
bool is_sunflower_vectors(const Vector& x, const Vector& y, const Vector& z, const ModulusVector& moduli);

/// Same test without validation; callers guarantee in-range, equal-length inputs.
inline bool vectors_form_sunflower(const Vector& x, const Vector& y, const Vector& z) noexcept {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int equal = (x[i] == y[i]) + (y[i] == z[i]) + (x[i] == z[i]);
    if (equal == 1) return false;
  }
  return true;
}

std::vector<CoordinateClass> classify_coordinates(const Vector& x, const Vector& y, const Vector& z);

std::optional<SunflowerWitness> find_sunflower_vectors(const VectorFamily& f);

/// Smallest ordered index triple (a, b, c) of distinct members with
/// x_a + x_c == 2 x_b coordinatewise modulo D_i.
std::optional<std::array<std::size_t, 3>> find_ap_triple(const VectorFamily& f);

/// Re-checks a witness against its family.
bool witness_holds(const SetFamily& f, const SunflowerWitness& w);
bool witness_holds(const VectorFamily& f, const SunflowerWitness& w);

}  // namespace sunflower
