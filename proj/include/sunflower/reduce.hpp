#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sunflower/core.hpp"

namespace sunflower {

/// M(v) = {(v_1+1, 1), ..., (v_n+1, n)} over the universe of (value, coordinate)
/// pairs. Pair (a, i) gets id offset_i + a - 1 with offset_i = D_1 + ... + D_{i-1};
/// labels read "(a,i)".
SetFamily embed_vectors_as_sets(const VectorFamily& f);

/// Coordinatewise CRT split. Coordinate i with modulus D_i = prod p^a expands
/// into one coordinate per prime-power factor, ascending primes, coordinates
/// kept in order.
VectorFamily crt_map(const VectorFamily& f);

enum class EkMode { Derandomized, Seeded };

struct EkResult {
  /// Classes restricted to the union of G.
  PartiteStructure partition;
  SetFamily rainbow;
  std::vector<std::size_t> kept_indices;
  /// class of each element of f.ground(), in ground order.
  std::vector<std::size_t> coloring;
};

/// Erdos-Kleitman k-partite subfamily. Derandomized mode fixes each element's
/// class by conditional expectation (elements ascending, ties to the lowest
/// class), so |G| >= k!/k^k |f| always holds.
EkResult ek_partition(const SetFamily& f, EkMode mode = EkMode::Derandomized, std::uint64_t seed = 0);

struct StripResult {
  SetFamily family;
  PartiteStructure partition;
  ElementSet removed;
};

/// Deletes singleton classes (their element lies in every member).
StripResult strip_common_elements(const SetFamily& f, const PartiteStructure& p);

struct TraceGroup {
  ElementSet trace;  // chosen element of each size-2 class, class order
  std::size_t count = 0;
};

struct GlResult {
  ElementSet chosen_trace;  // L
  SetFamily reduced;        // H
  PartiteStructure partition;  // surviving classes restricted to the union of H
  std::size_t two_classes = 0;  // t
  std::size_t group_size = 0;   // |G(L)|
  std::vector<TraceGroup> groups;  // ascending by trace
};

/// Groups members by their trace on the size-2 classes and keeps the largest
/// group (lexicographically smallest trace on ties), with the trace removed.
GlResult extract_gl(const SetFamily& g, const PartiteStructure& p);

/// Class sizes used as moduli by psi: max(3, |C_i|).
ModulusVector psi_moduli(const PartiteStructure& p);
/// Coordinate i is the rank of the member's element in C_i.
VectorFamily psi_map(const SetFamily& h, const PartiteStructure& p);
SetFamily psi_inverse(const VectorFamily& v, const PartiteStructure& p);

struct Certificate {
  std::string name;
  bool holds = false;
  /// False for informational checks that the construction does not guarantee.
  bool asserted = true;
  std::string detail;
};

struct PipelineTrace {
  EkMode mode = EkMode::Derandomized;
  std::uint64_t seed = 0;
  std::size_t input_size = 0;  // |F|
  std::size_t k = 0;
  std::size_t M = 0;
  std::size_t rainbow_size = 0;  // |G|
  std::vector<std::size_t> partition_sizes;
  ElementSet stripped;
  std::size_t stripped_uniformity = 0;
  std::size_t two_classes = 0;  // t
  ElementSet chosen_trace;      // L
  std::size_t group_size = 0;   // |G(L)|
  std::vector<TraceGroup> groups;
  std::vector<std::uint32_t> final_moduli;  // D_i
  std::size_t reduced_size = 0;  // |H| = |T|
  std::size_t reduced_union = 0;     // |union of H|
  std::size_t reduced_universe = 0;  // sum of D_i
  std::string generalized_ns;
  std::string balanced_reduced;   // 3 * balanced(n, sum D_i)
  double main_bound = 0.0;
  bool main_bound_degenerate = false;
  std::vector<Certificate> certificates;
  std::vector<std::string> notes;
  VectorFamily final_vectors;  // T

  bool all_certified() const;
};

/// ek_partition -> strip_common_elements -> extract_gl -> psi_map with every
/// inequality of the chain checked. Throws InputHasSunflower if f is not
/// sunflower-free, DomainError if f is not uniform.
PipelineTrace pipeline(const SetFamily& f, EkMode mode = EkMode::Derandomized, std::uint64_t seed = 0);

}  // namespace sunflower
