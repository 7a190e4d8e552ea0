#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sunflower/core.hpp"

namespace sunflower {

/// k-subsets of [m] = {0, ..., m-1}.
struct UniformInstance {
  unsigned k = 0;
  unsigned m = 0;
};

using Instance = std::variant<ModulusVector, UniformInstance>;

struct SearchBudget {
  std::uint64_t max_nodes = 1'000'000'000;
  std::optional<std::chrono::milliseconds> time_limit;
  unsigned threads = 1;
  std::uint64_t max_points = std::uint64_t{1} << 20;
  /// Fix the first chosen candidate to candidate 0 (all-zero vector, or
  /// {0, ..., k-1}). Sound because translations and ground relabelings map
  /// sunflower triples to sunflower triples.
  bool anchor = true;
};

struct PruneStats {
  std::uint64_t bound_prunes = 0;
  std::uint64_t conflict_removals = 0;
};

struct SearchResult {
  std::size_t maximum = 0;
  /// Candidate indices of the witness, ascending.
  std::vector<std::size_t> witness;
  std::uint64_t nodes_explored = 0;
  bool optimal = false;
  double elapsed_ms = 0.0;
  PruneStats stats;
  std::size_t greedy_size = 0;
};

/// Number of candidates (points or k-subsets); TooLarge past the ceiling.
std::uint64_t candidate_count(const Instance& instance, std::uint64_t ceiling = std::uint64_t{1} << 20);

/// Candidate `index` as a vector (moduli) or as a sorted k-subset (uniform).
Vector candidate_vector(const ModulusVector& moduli, std::size_t index);
ElementSet candidate_set(const UniformInstance& u, std::size_t index);

/// The witness as a family over the instance.
VectorFamily witness_vectors(const ModulusVector& moduli, const std::vector<std::size_t>& witness);
SetFamily witness_sets(const UniformInstance& u, const std::vector<std::size_t>& witness);

/// Branch-and-bound maximum of a sunflower-free family. Top-level branches
/// run independently across threads, so maximum, witness and node count do
/// not depend on the thread count for runs that finish within budget.
/// The witness is the lexicographically smallest maximum family among
/// those the anchor admits.
SearchResult max_sunflower_free(const Instance& instance, const SearchBudget& budget = {});
SearchResult max_sunflower_free_vectors(const ModulusVector& moduli, const SearchBudget& budget = {});
SearchResult max_sunflower_free_uniform(unsigned k, unsigned m, const SearchBudget& budget = {});

/// Lexicographic greedy maximal sunflower-free family (candidate indices).
std::vector<std::size_t> greedy_lower_bound(const Instance& instance);

/// Smallest witness if `family` (candidate indices of `instance`) has a sunflower.
std::optional<SunflowerWitness> verify_family(const Instance& instance, const std::vector<std::size_t>& family);

struct CnfInstance {
  std::size_t primary_variables = 0;
  std::size_t variables = 0;
  std::vector<std::vector<int>> clauses;
  std::vector<std::string> comments;
  std::size_t target = 0;
  std::size_t sunflower_clauses = 0;
};

/// One variable per candidate, (-a | -b | -c) per sunflower triple, and a
/// sequential counter asserting at least `target` true candidates.
CnfInstance export_cnf(const Instance& instance, std::size_t target);

/// DIMACS text: comment header, "p cnf V C", LF line endings.
std::string to_dimacs(const CnfInstance& cnf);
CnfInstance parse_dimacs(std::string_view text);

/// Enumerates every assignment of the primary variables (at most 20) and
/// decides the remaining auxiliary variables by unit propagation plus DPLL.
/// Returns a satisfying primary assignment if one exists.
std::optional<std::vector<bool>> solve_cnf_by_enumeration(const CnfInstance& cnf);

}  // namespace sunflower
