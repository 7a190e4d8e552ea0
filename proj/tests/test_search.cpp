#include <doctest.h>

#include "oracles.hpp"
#include "sunflower/detect.hpp"
#include "sunflower/search.hpp"
#include "sunflower/serialize.hpp"

using namespace sunflower;

TEST_SUITE("search") {
  TEST_CASE("small vector instances") {
    for (auto [moduli, expected] : std::vector<std::pair<std::vector<std::uint32_t>, std::size_t>>{
             {{3}, 2}, {{4}, 2}, {{5}, 2}, {{3, 3}, 4}, {{2, 3}, 4}, {{3, 4}, 4}, {{2, 2, 2}, 8}}) {
      CAPTURE(moduli.size());
      const auto r = max_sunflower_free_vectors(ModulusVector(moduli));
      CHECK(r.optimal);
      CHECK(r.maximum == expected);
      CHECK(r.maximum == oracle::max_free_vectors(moduli));
      CHECK(r.witness.size() == r.maximum);
      CHECK_FALSE(verify_family(ModulusVector(moduli), r.witness));
    }
  }

  TEST_CASE("cap-set sizes") {
    CHECK(max_sunflower_free_vectors(ModulusVector({3, 3, 3})).maximum == 9);
  }

  TEST_CASE("uniform instances") {
    CHECK(max_sunflower_free_uniform(1, 5).maximum == 2);
    const auto six = max_sunflower_free_uniform(2, 6);
    CHECK(six.optimal);
    CHECK(six.maximum == 6);
    CHECK(six.maximum == oracle::max_free_uniform(2, 6));
    const auto w = witness_sets(UniformInstance{2, 6}, six.witness);
    CHECK_FALSE(find_sunflower_sets_fast(w));
    CHECK(max_sunflower_free_uniform(2, 4).maximum == 4);
    CHECK(max_sunflower_free_uniform(3, 6).maximum == oracle::max_free_uniform(3, 6));
    CHECK_THROWS_AS(max_sunflower_free_uniform(3, 2), Error);
  }

  TEST_CASE("anchor does not change the maximum") {
    for (const auto& moduli : std::vector<std::vector<std::uint32_t>>{{3, 3}, {3, 4}, {5, 2}, {2, 2, 3}}) {
      SearchBudget plain;
      plain.anchor = false;
      CHECK(max_sunflower_free_vectors(ModulusVector(moduli)).maximum ==
            max_sunflower_free_vectors(ModulusVector(moduli), plain).maximum);
    }
    SearchBudget plain;
    plain.anchor = false;
    CHECK(max_sunflower_free_uniform(2, 5).maximum == max_sunflower_free_uniform(2, 5, plain).maximum);
  }

  TEST_CASE("thread count does not change the report") {
    SearchBudget one;
    SearchBudget many;
    many.threads = 8;
    for (const Instance& inst : std::vector<Instance>{ModulusVector({3, 3, 3}), UniformInstance{2, 6}}) {
      CHECK(to_json(max_sunflower_free(inst, one), inst).dump() == to_json(max_sunflower_free(inst, many), inst).dump());
    }
  }

  TEST_CASE("budgets") {
    SearchBudget tiny;
    tiny.max_nodes = 5;
    const auto r = max_sunflower_free_vectors(ModulusVector({3, 3, 3}), tiny);
    CHECK_FALSE(r.optimal);
    CHECK(r.maximum >= r.greedy_size);
    CHECK_FALSE(verify_family(ModulusVector({3, 3, 3}), r.witness));
    SearchBudget small;
    small.max_points = 8;
    CHECK_THROWS_AS(max_sunflower_free_vectors(ModulusVector({3, 3}), small), Error);
  }

  TEST_CASE("greedy lower bound") {
    const auto g = greedy_lower_bound(ModulusVector({3}));
    CHECK(g == std::vector<std::size_t>{0, 1});
    for (const Instance& inst : std::vector<Instance>{ModulusVector({3, 3}), ModulusVector({4, 3}), UniformInstance{2, 6},
                                                      UniformInstance{3, 6}}) {
      const auto greedy = greedy_lower_bound(inst);
      CHECK_FALSE(verify_family(inst, greedy));
      CHECK(greedy.size() <= max_sunflower_free(inst).maximum);
    }
  }

  TEST_CASE("family verification") {
    const ModulusVector z33({3, 3});
    const std::vector<std::size_t> square{z33.rank({0, 0}), z33.rank({0, 1}), z33.rank({1, 0}), z33.rank({1, 1})};
    CHECK_FALSE(verify_family(z33, square));
    const auto w = verify_family(ModulusVector({3}), {0, 1, 2});
    REQUIRE(w);
    CHECK(w->indices == std::vector<std::size_t>{0, 1, 2});
    // Edges 01 02 12 34 35 45 of K6 in lexicographic candidate order.
    CHECK_FALSE(verify_family(UniformInstance{2, 6}, {0, 1, 5, 12, 13, 14}));
  }

  TEST_CASE("candidate unranking") {
    const UniformInstance u{2, 4};
    CHECK(candidate_set(u, 0) == ElementSet{0, 1});
    CHECK(candidate_set(u, 2) == ElementSet{0, 3});
    CHECK(candidate_set(u, 5) == ElementSet{2, 3});
    CHECK(candidate_count(UniformInstance{3, 10}) == 120);
  }

  TEST_CASE("CNF export") {
    const auto z3 = export_cnf(ModulusVector({3}), 3);
    CHECK(z3.primary_variables == 3);
    CHECK(z3.sunflower_clauses == 1);
    CHECK_FALSE(solve_cnf_by_enumeration(z3));
    CHECK(solve_cnf_by_enumeration(export_cnf(ModulusVector({3}), 2)));
    CHECK_FALSE(solve_cnf_by_enumeration(export_cnf(UniformInstance{2, 6}, 7)));
    const auto model = solve_cnf_by_enumeration(export_cnf(UniformInstance{2, 6}, 6));
    REQUIRE(model);
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < model->size(); ++i) {
      if ((*model)[i]) chosen.push_back(i);
    }
    CHECK(chosen.size() >= 6);
    CHECK_FALSE(verify_family(UniformInstance{2, 6}, chosen));
  }

  TEST_CASE("DIMACS round trip") {
    const auto cnf = export_cnf(ModulusVector({3, 3}), 4);
    const auto text = to_dimacs(cnf);
    const auto back = parse_dimacs(text);
    CHECK(back.clauses == cnf.clauses);
    CHECK(back.variables == cnf.variables);
    CHECK(back.primary_variables == 9);
    CHECK(back.target == 4);
    CHECK(to_dimacs(back) == text);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 2 0\n"), Error);
    CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), Error);
  }
}
