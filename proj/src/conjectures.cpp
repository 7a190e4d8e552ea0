#include "sunflower/conjectures.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include <boost/dynamic_bitset.hpp>

#include "sunflower/parallel.hpp"

namespace sunflower {

namespace {

using Bits = boost::dynamic_bitset<std::uint64_t>;

class CoverSearch {
 public:
  explicit CoverSearch(const SetFamily& f) {
    const auto& ground = f.ground();
    universe_ = ground.size();
    for (const auto& m : f.members()) {
      Bits b(universe_);
      for (auto e : m) b.set(std::lower_bound(ground.begin(), ground.end(), e) - ground.begin());
      sets_.push_back(std::move(b));
      largest_ = std::max(largest_, m.size());
    }
    best_.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) best_[i] = i;
  }

  std::vector<std::size_t> solve() {
    if (universe_ == 0) return {};
    std::vector<std::size_t> chosen;
    Bits uncovered(universe_);
    uncovered.set();
    expand(chosen, uncovered);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  void expand(std::vector<std::size_t>& chosen, const Bits& uncovered) {
    if (uncovered.none()) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    const auto need = (uncovered.count() + largest_ - 1) / largest_;
    if (chosen.size() + need >= best_.size()) return;
    // Branch on the uncovered element with the fewest covering sets.
    std::size_t pivot = Bits::npos;
    std::size_t fewest = sets_.size() + 1;
    for (auto e = uncovered.find_first(); e != Bits::npos; e = uncovered.find_next(e)) {
      std::size_t holders = 0;
      for (const auto& s : sets_) holders += s.test(e);
      if (holders < fewest) {
        fewest = holders;
        pivot = e;
      }
    }
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      if (!sets_[i].test(pivot)) continue;
      chosen.push_back(i);
      expand(chosen, uncovered - sets_[i]);
      chosen.pop_back();
    }
  }

  std::size_t universe_ = 0;
  std::size_t largest_ = 1;
  std::vector<Bits> sets_;
  std::vector<std::size_t> best_;
};

class UnionSearch {
 public:
  UnionSearch(const UniformInstance& u, const SearchBudget& budget) : budget_(budget) {
    const auto count = candidate_count(u, budget.max_points);
    for (std::size_t i = 0; i < count; ++i) {
      std::uint64_t mask = 0;
      for (auto e : candidate_set(u, i)) mask |= std::uint64_t{1} << e;
      masks_.push_back(mask);
    }
    m_ = u.m;
  }

  void run() {
    const std::size_t n = masks_.size();
    if (n == 0) return;
    std::vector<std::size_t> chosen;
    Bits candidates(n);
    if (budget_.anchor) {
      chosen.push_back(0);
      for (std::size_t r = 1; r < n; ++r) {
        if (masks_[r] & ~masks_[0]) candidates.set(r);
      }
      expand(chosen, masks_[0], candidates);
    } else {
      candidates.set();
      expand(chosen, 0, candidates);
    }
  }

  std::size_t best() const noexcept { return best_union_; }
  const std::vector<std::size_t>& family() const noexcept { return best_family_; }
  std::uint64_t nodes() const noexcept { return nodes_; }
  bool exhausted() const noexcept { return !stopped_; }

 private:
  bool sunflower(std::size_t a, std::size_t b, std::size_t c) const noexcept {
    const auto ab = masks_[a] & masks_[b];
    return ab == (masks_[a] & masks_[c]) && ab == (masks_[b] & masks_[c]);
  }

  void expand(std::vector<std::size_t>& chosen, std::uint64_t covered, Bits candidates) {
    if (++nodes_ > budget_.max_nodes) {
      stopped_ = true;
      return;
    }
    const auto size = static_cast<std::size_t>(std::popcount(covered));
    if (size > best_union_ || best_family_.empty()) {
      best_union_ = size;
      best_family_ = chosen;
    }
    if (best_union_ == m_) return;
    for (auto p = candidates.find_first(); p != Bits::npos; p = candidates.find_first()) {
      std::uint64_t reach = covered;
      for (auto r = p; r != Bits::npos; r = candidates.find_next(r)) reach |= masks_[r];
      if (static_cast<std::size_t>(std::popcount(reach)) <= best_union_) return;
      candidates.reset(p);
      const auto grown = covered | masks_[p];
      Bits next = candidates;
      for (auto r = next.find_first(); r != Bits::npos; r = next.find_next(r)) {
        if ((masks_[r] & ~grown) == 0) {
          next.reset(r);
          continue;
        }
        for (auto q : chosen) {
          if (sunflower(q, p, r)) {
            next.reset(r);
            break;
          }
        }
      }
      chosen.push_back(p);
      expand(chosen, grown, std::move(next));
      chosen.pop_back();
      if (stopped_ || best_union_ == m_) return;
    }
  }

  SearchBudget budget_;
  std::vector<std::uint64_t> masks_;
  std::size_t m_ = 0;
  std::size_t best_union_ = 0;
  std::vector<std::size_t> best_family_;
  std::uint64_t nodes_ = 0;
  bool stopped_ = false;
};

// Drops members whose removal keeps the union, last member first.
SetFamily minimal_cover_subfamily(const SetFamily& f) {
  std::vector<std::size_t> keep(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) keep[i] = i;
  for (std::size_t i = f.size(); i-- > 0;) {
    std::vector<std::size_t> trial;
    for (auto j : keep) {
      if (j != i) trial.push_back(j);
    }
    if (f.subfamily(trial).ground_size() == f.ground_size()) keep = std::move(trial);
  }
  return f.subfamily(keep);
}

}  // namespace

CoverResult cover_count(const SetFamily& f, std::size_t ceiling) {
  if (f.size() > ceiling) {
    throw Error(ErrorKind::TooLarge, "exact set cover is capped at " + std::to_string(ceiling) + " members");
  }
  CoverResult out;
  out.members = CoverSearch(f).solve();
  out.count = out.members.size();
  return out;
}

ConjectureReport max_union(unsigned k, unsigned m, const SearchBudget& budget) {
  const UniformInstance u{k, m};
  UnionSearch search(u, budget);
  search.run();

  ConjectureReport r;
  r.k = k;
  r.m = m;
  r.max_union = search.best();
  r.implied_constant = k == 0 ? 0.0 : static_cast<double>(r.max_union) / (static_cast<double>(k) * k);
  r.witness = witness_sets(u, search.family());
  r.optimal = search.exhausted();
  r.nodes_explored = search.nodes();
  r.two_k = 2 * static_cast<std::size_t>(k);

  const SetFamily probe = r.witness.size() > 30 ? minimal_cover_subfamily(r.witness) : r.witness;
  const auto cover = cover_count(probe);
  r.cover = cover.count;
  r.cover_members = cover.members;
  r.cover_pass = r.cover <= r.two_k;
  return r;
}

std::vector<ConjectureReport> conjecture_scan(ScanRange k, ScanRange m, const SearchBudget& budget) {
  if (k.lo > k.hi || m.lo > m.hi) throw Error(ErrorKind::UsageError, "empty scan range");
  std::vector<std::pair<unsigned, unsigned>> cells;
  for (unsigned kk = k.lo; kk <= k.hi; ++kk) {
    for (unsigned mm = std::max(m.lo, kk); mm <= m.hi; ++mm) cells.emplace_back(kk, mm);
  }
  std::vector<ConjectureReport> rows(cells.size());
  SearchBudget inner = budget;
  inner.threads = 1;
  parallel_for(cells.size(), budget.threads,
               [&](std::size_t i) { rows[i] = max_union(cells[i].first, cells[i].second, inner); });
  return rows;
}

std::string scan_to_csv(const std::vector<ConjectureReport>& rows) {
  std::ostringstream out;
  out.precision(6);
  out << "k,m,max_union,implied_D,family_size,cover_count,two_k,cover_pass,optimal,nodes\n";
  for (const auto& r : rows) {
    out << r.k << ',' << r.m << ',' << r.max_union << ',' << r.implied_constant << ',' << r.witness.size() << ','
        << r.cover << ',' << r.two_k << ',' << (r.cover_pass ? "true" : "false") << ','
        << (r.optimal ? "true" : "false") << ',' << r.nodes_explored << '\n';
  }
  return out.str();
}

}  // namespace sunflower
