#include "sunflower/search.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <boost/dynamic_bitset.hpp>

#include "sunflower/detect.hpp"

namespace sunflower {

namespace {

using Bits = boost::dynamic_bitset<std::uint64_t>;
using Clock = std::chrono::steady_clock;

std::uint64_t binomial_saturating(unsigned n, unsigned r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t c = 1;
  for (unsigned i = 1; i <= r; ++i) {
    const std::uint64_t num = n - r + i;
    if (c > std::numeric_limits<std::uint64_t>::max() / num) return std::numeric_limits<std::uint64_t>::max();
    c = c * num / i;
  }
  return c;
}

// Sunflower-triple oracle over candidate indices.
class TripleOracle {
 public:
  TripleOracle(const Instance& instance, std::uint64_t ceiling) {
    const auto count = static_cast<std::size_t>(candidate_count(instance, ceiling));
    size_ = count;
    if (const auto* moduli = std::get_if<ModulusVector>(&instance)) {
      dims_ = moduli->size();
      coords_.reserve(count * dims_);
      for (std::size_t i = 0; i < count; ++i) {
        const auto v = moduli->unrank(i);
        coords_.insert(coords_.end(), v.begin(), v.end());
      }
    } else {
      const auto& u = std::get<UniformInstance>(instance);
      masks_.reserve(count);
      for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t mask = 0;
        for (auto e : candidate_set(u, i)) mask |= std::uint64_t{1} << e;
        masks_.push_back(mask);
      }
    }
  }

  std::size_t size() const noexcept { return size_; }

  bool sunflower(std::size_t a, std::size_t b, std::size_t c) const noexcept {
    if (!masks_.empty()) {
      const auto ab = masks_[a] & masks_[b];
      return ab == (masks_[a] & masks_[c]) && ab == (masks_[b] & masks_[c]);
    }
    const auto* x = &coords_[a * dims_];
    const auto* y = &coords_[b * dims_];
    const auto* z = &coords_[c * dims_];
    for (std::size_t i = 0; i < dims_; ++i) {
      const int equal = (x[i] == y[i]) + (y[i] == z[i]) + (x[i] == z[i]);
      if (equal == 1) return false;
    }
    return true;
  }

 private:
  std::size_t size_ = 0;
  std::size_t dims_ = 0;
  std::vector<std::uint32_t> coords_;
  std::vector<std::uint64_t> masks_;
};

struct SharedLimits {
  std::uint64_t max_nodes;
  std::optional<Clock::time_point> deadline;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
};

class Branch {
 public:
  Branch(const TripleOracle& oracle, SharedLimits& limits, std::size_t incumbent)
      : oracle_(oracle), limits_(limits), best_(incumbent) {}

  void run(std::vector<std::size_t> chosen, Bits candidates) { expand(chosen, std::move(candidates)); }

  std::size_t best() const noexcept { return best_; }
  const std::vector<std::size_t>& best_family() const noexcept { return family_; }
  bool improved() const noexcept { return !family_.empty(); }
  std::uint64_t nodes() const noexcept { return nodes_; }
  const PruneStats& stats() const noexcept { return stats_; }

 private:
  bool out_of_budget() {
    if (limits_.stop.load(std::memory_order_relaxed)) return true;
    const auto total = limits_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    bool exhausted = total > limits_.max_nodes;
    if (!exhausted && limits_.deadline && (total & 0xFFF) == 0) exhausted = Clock::now() > *limits_.deadline;
    if (exhausted) limits_.stop.store(true, std::memory_order_relaxed);
    return exhausted;
  }

  void expand(std::vector<std::size_t>& chosen, Bits candidates) {
    ++nodes_;
    if (out_of_budget()) return;
    if (chosen.size() > best_) {
      best_ = chosen.size();
      family_ = chosen;
    }
    for (auto p = candidates.find_first(); p != Bits::npos; p = candidates.find_first()) {
      if (chosen.size() + candidates.count() <= best_) {
        ++stats_.bound_prunes;
        return;
      }
      candidates.reset(p);
      Bits next = candidates;
      for (auto r = next.find_first(); r != Bits::npos; r = next.find_next(r)) {
        for (auto q : chosen) {
          if (oracle_.sunflower(q, p, r)) {
            next.reset(r);
            ++stats_.conflict_removals;
            break;
          }
        }
      }
      chosen.push_back(p);
      expand(chosen, std::move(next));
      chosen.pop_back();
      if (limits_.stop.load(std::memory_order_relaxed)) return;
    }
  }

  const TripleOracle& oracle_;
  SharedLimits& limits_;
  std::size_t best_;
  std::vector<std::size_t> family_;
  std::uint64_t nodes_ = 0;
  PruneStats stats_;
};

std::vector<std::size_t> greedy(const TripleOracle& oracle) {
  std::vector<std::size_t> chosen;
  for (std::size_t r = 0; r < oracle.size(); ++r) {
    bool ok = true;
    for (std::size_t i = 0; ok && i < chosen.size(); ++i) {
      for (std::size_t j = i + 1; ok && j < chosen.size(); ++j) ok = !oracle.sunflower(chosen[i], chosen[j], r);
    }
    if (ok) chosen.push_back(r);
  }
  return chosen;
}

}  // namespace

std::uint64_t candidate_count(const Instance& instance, std::uint64_t ceiling) {
  std::uint64_t count = 0;
  if (const auto* moduli = std::get_if<ModulusVector>(&instance)) {
    count = moduli->point_count();
  } else {
    const auto& u = std::get<UniformInstance>(instance);
    if (u.m > 64) throw Error(ErrorKind::TooLarge, "uniform instances are limited to m <= 64");
    if (u.k > u.m) throw Error(ErrorKind::DomainError, "uniform instance needs k <= m");
    count = binomial_saturating(u.m, u.k);
  }
  if (count > ceiling) {
    throw Error(ErrorKind::TooLarge, std::to_string(count) + " candidates exceed the ceiling of " +
                                         std::to_string(ceiling));
  }
  return count;
}

Vector candidate_vector(const ModulusVector& moduli, std::size_t index) { return moduli.unrank(index); }

ElementSet candidate_set(const UniformInstance& u, std::size_t index) {
  // Unrank the index-th k-subset of [m] in lexicographic order.
  ElementSet s;
  unsigned next = 0;
  for (unsigned slot = 0; slot < u.k; ++slot) {
    for (unsigned e = next;; ++e) {
      const auto block = binomial_saturating(u.m - e - 1, u.k - slot - 1);
      if (index < block) {
        s.push_back(e);
        next = e + 1;
        break;
      }
      index -= block;
    }
  }
  return s;
}

VectorFamily witness_vectors(const ModulusVector& moduli, const std::vector<std::size_t>& witness) {
  std::vector<Vector> members;
  for (auto i : witness) members.push_back(moduli.unrank(i));
  return VectorFamily(moduli, std::move(members));
}

SetFamily witness_sets(const UniformInstance& u, const std::vector<std::size_t>& witness) {
  std::vector<ElementSet> members;
  for (auto i : witness) members.push_back(candidate_set(u, i));
  return SetFamily(std::move(members));
}

std::vector<std::size_t> greedy_lower_bound(const Instance& instance) {
  return greedy(TripleOracle(instance, std::uint64_t{1} << 20));
}

SearchResult max_sunflower_free(const Instance& instance, const SearchBudget& budget) {
  const auto start = Clock::now();
  const TripleOracle oracle(instance, budget.max_points);
  const std::size_t count = oracle.size();

  SearchResult result;
  result.witness = greedy(oracle);
  result.greedy_size = result.witness.size();
  result.maximum = result.witness.size();

  SharedLimits limits;
  limits.max_nodes = budget.max_nodes;
  if (budget.time_limit) limits.deadline = start + *budget.time_limit;

  // Roots: (anchor, p) for every p > 0, or (p) for every p without the anchor.
  std::vector<std::size_t> firsts;
  if (budget.anchor) {
    for (std::size_t p = 1; p < count; ++p) firsts.push_back(p);
  } else {
    for (std::size_t p = 0; p < count; ++p) firsts.push_back(p);
  }

  auto make_root = [&](std::size_t p, std::vector<std::size_t>& chosen, Bits& candidates) {
    chosen.clear();
    if (budget.anchor) chosen.push_back(0);
    chosen.push_back(p);
    candidates.resize(count);
    candidates.reset();
    for (std::size_t r = p + 1; r < count; ++r) {
      bool ok = true;
      if (budget.anchor) ok = !oracle.sunflower(0, p, r);
      if (ok) candidates.set(r);
    }
  };

  struct Outcome {
    bool improved = false;
    std::size_t best = 0;
    std::vector<std::size_t> family;
    std::uint64_t nodes = 0;
    PruneStats stats;
  };
  std::vector<Outcome> outcomes(firsts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    std::vector<std::size_t> chosen;
    Bits candidates;
    for (std::size_t b = next.fetch_add(1); b < firsts.size(); b = next.fetch_add(1)) {
      if (limits.stop.load()) break;
      make_root(firsts[b], chosen, candidates);
      Branch branch(oracle, limits, result.greedy_size);
      if (chosen.size() + candidates.count() > result.greedy_size) {
        branch.run(chosen, candidates);
      } else {
        outcomes[b].stats.bound_prunes = 1;
      }
      outcomes[b].improved = branch.improved();
      outcomes[b].best = branch.best();
      outcomes[b].family = branch.best_family();
      outcomes[b].nodes = branch.nodes();
      outcomes[b].stats.bound_prunes += branch.stats().bound_prunes;
      outcomes[b].stats.conflict_removals = branch.stats().conflict_removals;
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(budget.threads, static_cast<unsigned>(firsts.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (const auto& o : outcomes) {
    result.nodes_explored += o.nodes;
    result.stats.bound_prunes += o.stats.bound_prunes;
    result.stats.conflict_removals += o.stats.conflict_removals;
    if (o.improved && o.best > result.maximum) {
      result.maximum = o.best;
      result.witness = o.family;
    }
  }
  result.optimal = !limits.stop.load();
  result.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return result;
}

SearchResult max_sunflower_free_vectors(const ModulusVector& moduli, const SearchBudget& budget) {
  return max_sunflower_free(Instance{moduli}, budget);
}

SearchResult max_sunflower_free_uniform(unsigned k, unsigned m, const SearchBudget& budget) {
  return max_sunflower_free(Instance{UniformInstance{k, m}}, budget);
}

std::optional<SunflowerWitness> verify_family(const Instance& instance, const std::vector<std::size_t>& family) {
  if (const auto* moduli = std::get_if<ModulusVector>(&instance)) {
    return find_sunflower_vectors(witness_vectors(*moduli, family));
  }
  return find_sunflower_sets_fast(witness_sets(std::get<UniformInstance>(instance), family));
}

// ---------------------------------------------------------------------------
// CNF export

CnfInstance export_cnf(const Instance& instance, std::size_t target) {
  const TripleOracle oracle(instance, 1024);
  const std::size_t n = oracle.size();
  CnfInstance cnf;
  cnf.primary_variables = n;
  cnf.target = target;

  std::ostringstream head;
  if (const auto* moduli = std::get_if<ModulusVector>(&instance)) {
    head << "instance moduli ";
    for (std::size_t i = 0; i < moduli->size(); ++i) head << (i ? "," : "") << (*moduli)[i];
  } else {
    const auto& u = std::get<UniformInstance>(instance);
    head << "instance uniform k=" << u.k << " m=" << u.m;
  }
  cnf.comments.push_back("sunflower-free family of size >= " + std::to_string(target));
  cnf.comments.push_back(head.str());
  cnf.comments.push_back("primary " + std::to_string(n));
  cnf.comments.push_back("target " + std::to_string(target));
  for (std::size_t i = 0; i < n; ++i) {
    std::ostringstream line;
    line << "var " << i + 1 << " = ";
    if (const auto* moduli = std::get_if<ModulusVector>(&instance)) {
      const auto v = moduli->unrank(i);
      line << "(";
      for (std::size_t c = 0; c < v.size(); ++c) line << (c ? "," : "") << v[c];
      line << ")";
    } else {
      const auto s = candidate_set(std::get<UniformInstance>(instance), i);
      line << "{";
      for (std::size_t c = 0; c < s.size(); ++c) line << (c ? "," : "") << s[c];
      line << "}";
    }
    cnf.comments.push_back(line.str());
  }

  auto lit = [](std::size_t candidate) { return static_cast<int>(candidate + 1); };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        if (oracle.sunflower(a, b, c)) cnf.clauses.push_back({-lit(a), -lit(b), -lit(c)});
      }
    }
  }
  cnf.sunflower_clauses = cnf.clauses.size();

  // Sequential counter: R(i, j) => at least j of x_1..x_i are true.
  const std::size_t s = target;
  cnf.variables = n + n * s;
  if (s > 0) {
    cnf.comments.push_back("counter R(i,j) = var " + std::to_string(n) + " + (i-1)*" + std::to_string(s) +
                           " + j, meaning at least j of the first i candidates");
    auto R = [&](std::size_t i, std::size_t j) { return static_cast<int>(n + (i - 1) * s + j); };
    cnf.clauses.push_back({-R(1, 1), lit(0)});
    for (std::size_t j = 2; j <= s; ++j) cnf.clauses.push_back({-R(1, j)});
    for (std::size_t i = 2; i <= n; ++i) {
      for (std::size_t j = 1; j <= s; ++j) {
        cnf.clauses.push_back({-R(i, j), R(i - 1, j), lit(i - 1)});
        if (j >= 2) cnf.clauses.push_back({-R(i, j), R(i - 1, j), R(i - 1, j - 1)});
      }
    }
    cnf.clauses.push_back({R(n, s)});
  }
  return cnf;
}

std::string to_dimacs(const CnfInstance& cnf) {
  std::ostringstream out;
  for (const auto& c : cnf.comments) out << "c " << c << '\n';
  out << "p cnf " << cnf.variables << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    for (auto l : clause) out << l << ' ';
    out << "0\n";
  }
  return out.str();
}

CnfInstance parse_dimacs(std::string_view text) {
  CnfInstance cnf;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  std::size_t expected_clauses = 0;
  std::vector<int> current;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == 'c') {
      auto body = line.size() > 2 ? line.substr(2) : std::string();
      cnf.comments.push_back(body);
      std::istringstream words(body);
      std::string key;
      std::size_t value = 0;
      if (words >> key >> value) {
        if (key == "primary") cnf.primary_variables = value;
        if (key == "target") cnf.target = value;
      }
      continue;
    }
    std::istringstream words(line);
    if (line[0] == 'p') {
      std::string p, kind;
      if (!(words >> p >> kind >> cnf.variables >> expected_clauses) || kind != "cnf") {
        throw Error(ErrorKind::ParseError, "bad DIMACS header '" + line + "'");
      }
      header = true;
      continue;
    }
    if (!header) throw Error(ErrorKind::ParseError, "clause before 'p cnf' header");
    int l = 0;
    while (words >> l) {
      if (l == 0) {
        cnf.clauses.push_back(std::move(current));
        current.clear();
      } else {
        if (static_cast<std::size_t>(std::abs(l)) > cnf.variables) {
          throw Error(ErrorKind::ParseError, "literal " + std::to_string(l) + " exceeds variable count");
        }
        current.push_back(l);
      }
    }
  }
  if (!header) throw Error(ErrorKind::ParseError, "missing 'p cnf' header");
  if (!current.empty()) cnf.clauses.push_back(std::move(current));
  if (cnf.clauses.size() != expected_clauses) {
    throw Error(ErrorKind::ParseError, "header announces " + std::to_string(expected_clauses) + " clauses, found " +
                                           std::to_string(cnf.clauses.size()));
  }
  if (cnf.primary_variables == 0) cnf.primary_variables = cnf.variables;
  return cnf;
}

namespace {

// Assignment values: 0 unassigned, 1 true, -1 false.
int value_of(const std::vector<signed char>& assign, int lit) {
  const int v = assign[static_cast<std::size_t>(std::abs(lit))];
  return lit > 0 ? v : -v;
}

bool propagate(const std::vector<std::vector<int>>& clauses, std::vector<signed char>& assign) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& clause : clauses) {
      int unassigned = 0;
      int last = 0;
      bool satisfied = false;
      for (auto l : clause) {
        const int v = value_of(assign, l);
        if (v > 0) {
          satisfied = true;
          break;
        }
        if (v == 0) {
          ++unassigned;
          last = l;
        }
      }
      if (satisfied) continue;
      if (unassigned == 0) return false;
      if (unassigned == 1) {
        assign[static_cast<std::size_t>(std::abs(last))] = last > 0 ? 1 : -1;
        changed = true;
      }
    }
  }
  return true;
}

bool dpll(const std::vector<std::vector<int>>& clauses, std::vector<signed char>& assign) {
  if (!propagate(clauses, assign)) return false;
  for (const auto& clause : clauses) {
    bool satisfied = false;
    int free_lit = 0;
    for (auto l : clause) {
      const int v = value_of(assign, l);
      if (v > 0) {
        satisfied = true;
        break;
      }
      if (v == 0 && free_lit == 0) free_lit = l;
    }
    if (satisfied) continue;
    for (signed char choice : {static_cast<signed char>(1), static_cast<signed char>(-1)}) {
      auto trial = assign;
      trial[static_cast<std::size_t>(std::abs(free_lit))] = free_lit > 0 ? choice : static_cast<signed char>(-choice);
      if (dpll(clauses, trial)) {
        assign = std::move(trial);
        return true;
      }
    }
    return false;
  }
  return true;
}

}  // namespace

std::optional<std::vector<bool>> solve_cnf_by_enumeration(const CnfInstance& cnf) {
  const std::size_t p = cnf.primary_variables;
  if (p > 20) throw Error(ErrorKind::TooLarge, "enumeration checker handles at most 20 primary variables");
  std::vector<std::vector<int>> primary_only;
  std::vector<std::vector<int>> rest;
  for (const auto& c : cnf.clauses) {
    const bool only = std::all_of(c.begin(), c.end(), [p](int l) { return static_cast<std::size_t>(std::abs(l)) <= p; });
    (only ? primary_only : rest).push_back(c);
  }
  std::vector<signed char> assign(cnf.variables + 1, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p); ++mask) {
    std::fill(assign.begin(), assign.end(), 0);
    for (std::size_t v = 1; v <= p; ++v) assign[v] = (mask >> (v - 1)) & 1 ? 1 : -1;
    const bool primary_ok = std::all_of(primary_only.begin(), primary_only.end(), [&](const std::vector<int>& c) {
      return std::any_of(c.begin(), c.end(), [&](int l) { return value_of(assign, l) > 0; });
    });
    if (!primary_ok) continue;
    if (dpll(rest, assign)) {
      std::vector<bool> out(p);
      for (std::size_t v = 1; v <= p; ++v) out[v - 1] = assign[v] > 0;
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace sunflower
