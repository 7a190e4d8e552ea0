#include <doctest.h>

#include "oracles.hpp"
#include "sunflower/detect.hpp"
#include "sunflower/reduce.hpp"

using namespace sunflower;

namespace {

SetFamily family(const std::vector<std::vector<std::uint32_t>>& members) { return SetFamily(members); }

bool free_sets(const SetFamily& f) { return !oracle::family_has_sunflower(oracle::as_sets(f.members())); }

bool free_vectors(const VectorFamily& f) {
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t b = a + 1; b < f.size(); ++b) {
      for (std::size_t c = b + 1; c < f.size(); ++c) {
        if (oracle::vectors_sunflower(f[a], f[b], f[c])) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("reduce") {
  TEST_CASE("vector to set embedding") {
    const auto f = parse_vector_family("0,2", ModulusVector({3, 3}));
    const auto s = embed_vectors_as_sets(f);
    REQUIRE(s.size() == 1);
    CHECK(s.label(s[0][0]) == "(1,1)");
    CHECK(s.label(s[0][1]) == "(3,2)");
    const auto three = embed_vectors_as_sets(parse_vector_family("0,0\n1,2\n2,1", ModulusVector({3, 3})));
    CHECK(three.size() == 3);
    CHECK(three.uniformity() == 2);
  }

  TEST_CASE("embedding preserves sunflowers on Z_3^2 and Z_4^2") {
    for (std::uint32_t d : {3u, 4u}) {
      const ModulusVector m({d, d});
      const auto pts = oracle::all_points({d, d});
      const auto sets = embed_vectors_as_sets(VectorFamily(m, pts));
      const auto as = oracle::as_sets(sets.members());
      for (std::size_t a = 0; a < pts.size(); ++a) {
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
          for (std::size_t c = b + 1; c < pts.size(); ++c) {
            CHECK(oracle::vectors_sunflower(pts[a], pts[b], pts[c]) == oracle::sets_sunflower(as[a], as[b], as[c]));
          }
        }
      }
    }
  }

  TEST_CASE("CRT coordinate split") {
    const auto one = crt_map(parse_vector_family("7", ModulusVector({15})));
    CHECK(one.moduli().values() == std::vector<std::uint32_t>{3, 5});
    CHECK(one[0] == Vector{1, 2});
    const auto two = crt_map(parse_vector_family("7,11", ModulusVector({15, 15})));
    CHECK(two.moduli().values() == std::vector<std::uint32_t>{3, 5, 3, 5});
    CHECK(two[0] == Vector{1, 2, 2, 1});
    CHECK(crt_map(parse_vector_family("5", ModulusVector({12})))[0] == Vector{1, 2});
  }

  TEST_CASE("a sunflower after the CRT split was one before it") {
    const ModulusVector m({15});
    for (std::uint32_t a = 0; a < 15; ++a) {
      for (std::uint32_t b = a + 1; b < 15; ++b) {
        for (std::uint32_t c = b + 1; c < 15; ++c) {
          const auto split = crt_map(VectorFamily(m, {{a}, {b}, {c}}));
          if (oracle::vectors_sunflower(split[0], split[1], split[2])) CHECK(oracle::vectors_sunflower({a}, {b}, {c}));
        }
      }
    }
  }

  TEST_CASE("Erdos-Kleitman partition") {
    const auto f = family({{1, 2}, {3, 4}});
    const auto r = ek_partition(f);
    CHECK(r.rainbow.size() == 2);
    for (const auto& m : r.rainbow.members()) CHECK(r.partition.is_transversal(m));

    const auto singles = family({{1}, {2}, {5}});
    const auto s = ek_partition(singles);
    CHECK(s.rainbow == singles);
    CHECK(s.partition.size() == 1);

    const auto k4 = family({{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    CHECK(ek_partition(k4).rainbow.size() >= 3);
  }

  TEST_CASE("derandomized guarantee on random uniform families") {
    SplitMix64 rng(5);
    for (int run = 0; run < 100; ++run) {
      const unsigned k = 1 + static_cast<unsigned>(rng.below(4));
      const unsigned universe = k + 1 + static_cast<unsigned>(rng.below(8));
      const auto cands = oracle::all_subsets(k, universe);
      std::vector<std::vector<std::uint32_t>> members;
      for (const auto& c : cands) {
        if (rng.below(2)) members.emplace_back(c.begin(), c.end());
      }
      if (members.empty()) continue;
      const SetFamily f(members);
      const auto r = ek_partition(f);
      double kk = 1;
      double kf = 1;
      for (unsigned i = 1; i <= k; ++i) {
        kk *= k;
        kf *= i;
      }
      CHECK(static_cast<double>(r.rainbow.size()) * kk >= kf * static_cast<double>(f.size()));
    }
  }

  TEST_CASE("seeded partition is reproducible") {
    const auto f = family({{1, 2, 3}, {4, 5, 6}, {1, 4, 7}, {2, 5, 8}});
    const auto a = ek_partition(f, EkMode::Seeded, 42);
    const auto b = ek_partition(f, EkMode::Seeded, 42);
    CHECK(a.coloring == b.coloring);
    CHECK(a.kept_indices == b.kept_indices);
  }

  TEST_CASE("stripping singleton classes") {
    const auto f = family({{1, 2}, {1, 3}});
    const auto r = strip_common_elements(f, PartiteStructure({{1}, {2, 3}}));
    CHECK(r.family == family({{2}, {3}}));
    CHECK(r.removed == ElementSet{1});
    const auto same = strip_common_elements(family({{1, 3}, {2, 4}}), PartiteStructure({{1, 2}, {3, 4}}));
    CHECK(same.family == family({{1, 3}, {2, 4}}));
    CHECK(same.removed.empty());
  }

  TEST_CASE("stripping preserves sunflower-freeness both ways") {
    SplitMix64 rng(8);
    for (int run = 0; run < 100; ++run) {
      // Common element 0 in class {0}, transversals over {1..3} x {4..6}.
      std::vector<std::vector<std::uint32_t>> members;
      for (std::uint32_t a = 1; a <= 3; ++a) {
        for (std::uint32_t b = 4; b <= 6; ++b) {
          if (rng.below(2)) members.push_back({0, a, b});
        }
      }
      if (members.empty()) continue;
      const SetFamily f(members);
      const auto r = strip_common_elements(f, PartiteStructure({{0}, {1, 2, 3}, {4, 5, 6}}));
      CHECK(free_sets(f) == free_sets(r.family));
    }
  }

  TEST_CASE("trace extraction") {
    const auto g = family({{1, 2}, {3, 4}});
    const auto t0 = extract_gl(g, PartiteStructure({{1, 3, 5}, {2, 4, 6}}));
    CHECK(t0.two_classes == 0);
    CHECK(t0.chosen_trace.empty());
    CHECK(t0.reduced == g);

    // x1 = 1, y1 = 2; a, b, c = 10, 11, 12.
    const auto h = extract_gl(family({{1, 10}, {1, 11}, {2, 12}}), PartiteStructure({{1, 2}, {10, 11, 12}}));
    CHECK(h.two_classes == 1);
    CHECK(h.chosen_trace == ElementSet{1});
    CHECK(h.reduced == family({{10}, {11}}));
    CHECK(h.group_size * 2 >= 3);

    const auto tie = extract_gl(family({{2, 10}, {1, 11}}), PartiteStructure({{1, 2}, {10, 11, 12}}));
    CHECK(tie.chosen_trace == ElementSet{1});
    CHECK(tie.reduced == family({{11}}));
  }

  TEST_CASE("psi bijection") {
    // a..f = 0..5
    const PartiteStructure p({{0, 1, 2}, {3, 4, 5}});
    const auto v = psi_map(family({{0, 4}}), p);
    CHECK(v[0] == Vector{0, 1});

    const auto pts = oracle::all_points({3, 3});
    const auto all = psi_inverse(VectorFamily(ModulusVector({3, 3}), pts), p);
    const auto as = oracle::as_sets(all.members());
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        for (std::size_t c = b + 1; c < pts.size(); ++c) {
          CHECK(oracle::sets_sunflower(as[a], as[b], as[c]) == oracle::vectors_sunflower(pts[a], pts[b], pts[c]));
        }
      }
    }
    CHECK_THROWS_AS(psi_map(family({{0, 1}}), p), Error);
    CHECK_THROWS_AS(psi_inverse(VectorFamily(ModulusVector({3}), {{0}}), p), Error);
  }

  TEST_CASE("psi pads small classes and rejects padded values") {
    const PartiteStructure p({{0, 1}, {5, 6, 7, 8}});
    CHECK(psi_moduli(p).values() == std::vector<std::uint32_t>{3, 4});
    try {
      psi_inverse(VectorFamily(ModulusVector({3, 4}), {{2, 0}}), p);
      FAIL("expected OutOfRange");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::OutOfRange);
    }
  }

  TEST_CASE("pipeline on small instances") {
    const auto t = pipeline(family({{1, 2}, {3, 4}}));
    CHECK(t.rainbow_size == 2);
    CHECK(t.all_certified());
    CHECK(free_vectors(t.final_vectors));

    try {
      pipeline(family({{1, 2}, {3, 4}, {5, 6}}));
      FAIL("expected a sunflower");
    } catch (const SunflowerFound& e) {
      CHECK(e.witness().indices == std::vector<std::size_t>{0, 1, 2});
    }

    const auto single = pipeline(family({{1, 2, 3}}));
    CHECK(single.all_certified());
    CHECK(single.main_bound_degenerate);

    CHECK_THROWS_AS(pipeline(family({{1, 2}, {3}})), Error);
  }

  TEST_CASE("pipeline certificates on random sunflower-free families") {
    SplitMix64 rng(21);
    for (int run = 0; run < 60; ++run) {
      const unsigned k = 1 + static_cast<unsigned>(rng.below(4));
      const unsigned universe = k + static_cast<unsigned>(rng.below(14 - k + 1));
      const auto members = oracle::random_free_uniform(rng, k, universe, 40);
      const SetFamily f(members);
      for (auto mode : {EkMode::Derandomized, EkMode::Seeded}) {
        const auto t = pipeline(f, mode, static_cast<std::uint64_t>(run));
        CHECK(t.all_certified());
        CHECK(free_vectors(t.final_vectors));
      }
    }
  }
}
