#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sunflower/core.hpp"
#include "sunflower/search.hpp"

namespace sunflower {

struct CoverResult {
  std::size_t count = 0;
  std::vector<std::size_t> members;  // ascending member indices
};

/// Exact minimum number of members whose union is the union of f.
/// TooLarge when |f| exceeds `ceiling`.
CoverResult cover_count(const SetFamily& f, std::size_t ceiling = 30);

struct ConjectureReport {
  unsigned k = 0;
  unsigned m = 0;
  std::size_t max_union = 0;
  /// Smallest D with max_union <= D k^2.
  double implied_constant = 0.0;
  SetFamily witness;
  std::size_t cover = 0;
  std::vector<std::size_t> cover_members;
  std::size_t two_k = 0;
  bool cover_pass = false;
  bool optimal = false;
  std::uint64_t nodes_explored = 0;
};

/// Branch-and-bound maximum of |union F| over sunflower-free k-uniform
/// families on [m]. Only candidates adding a new element are branched on:
/// an inclusion-minimal subfamily with the same union always exists and
/// each of its members owns a private element.
ConjectureReport max_union(unsigned k, unsigned m, const SearchBudget& budget = {});

struct ScanRange {
  unsigned lo = 0;
  unsigned hi = 0;
};

/// One report per (k, m) with m >= k, ordered by (k, m).
std::vector<ConjectureReport> conjecture_scan(ScanRange k, ScanRange m, const SearchBudget& budget = {});

/// k,m,max_union,implied_D,family_size,cover_count,two_k,cover_pass,optimal,nodes
std::string scan_to_csv(const std::vector<ConjectureReport>& rows);

}  // namespace sunflower
