#include <doctest.h>

#include "oracles.hpp"
#include "sunflower/conjectures.hpp"
#include "sunflower/detect.hpp"

using namespace sunflower;

TEST_SUITE("conjectures") {
  TEST_CASE("cover count") {
    CHECK(cover_count(parse_set_family("1 2\n2 3\n1 3")).count == 2);
    CHECK(cover_count(parse_set_family("1 2\n3 4")).count == 2);
    const auto triangles = parse_set_family("1 2\n2 3\n1 3\n4 5\n5 6\n4 6");
    const auto c = cover_count(triangles);
    CHECK(c.count == oracle::min_cover(oracle::as_sets(triangles.members())));
    // Each triangle needs two of its edges.
    CHECK(c.count == 4);
    CHECK(triangles.subfamily(c.members).ground_size() == 6);
  }

  TEST_CASE("cover count against subset enumeration") {
    SplitMix64 rng(3);
    for (int run = 0; run < 150; ++run) {
      const SetFamily f(oracle::random_family(rng, 9, 12));
      const auto c = cover_count(f);
      CHECK(c.count == oracle::min_cover(oracle::as_sets(f.members())));
      CHECK(f.subfamily(c.members).ground_size() == f.ground_size());
    }
    CHECK_THROWS_AS(cover_count(SetFamily(oracle::random_family(rng, 9, 12)), 0), Error);
  }

  TEST_CASE("maximum union") {
    for (unsigned m = 3; m <= 7; ++m) CHECK(max_union(1, m).max_union == 2);
    const auto r = max_union(2, 6);
    CHECK(r.max_union == 6);
    CHECK(r.optimal);
    CHECK(r.cover_pass);
    CHECK_FALSE(find_sunflower_sets_fast(r.witness));
    CHECK(max_union(2, 8).max_union == oracle::max_union_exhaustive(2, 8));
    CHECK(max_union(3, 6).max_union == oracle::max_union_exhaustive(3, 6));
  }

  TEST_CASE("scan rows") {
    const auto rows = conjecture_scan({1, 2}, {2, 8});
    std::size_t previous = 0;
    for (const auto& r : rows) {
      CHECK(r.m >= r.k);
      CHECK_FALSE(find_sunflower_sets_fast(r.witness));
      if (r.k == 1) {
        CHECK(r.max_union <= 2);
        CHECK(r.cover_pass);
      } else if (r.m >= 4) {
        CHECK(r.max_union >= previous);
        previous = r.max_union;
      }
    }
    const auto csv = scan_to_csv(rows);
    CHECK(csv.rfind("k,m,max_union,implied_D,family_size,cover_count,two_k,cover_pass,optimal,nodes\n", 0) == 0);
    SearchBudget many;
    many.threads = 4;
    CHECK(scan_to_csv(conjecture_scan({1, 2}, {2, 8}, many)) == csv);
  }
}
