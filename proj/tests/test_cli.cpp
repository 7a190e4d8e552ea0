#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sunflower/cli.hpp"
#include "sunflower/serialize.hpp"

using namespace sunflower;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("sunflower_cli_" + name)).string();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("detect") {
    const auto v = run({"detect", "vectors", "--moduli", "3", "--inline", "0;1;2"});
    CHECK(v.code == 0);
    CHECK(Json::parse(v.out).at("found") == true);

    const auto s = run({"detect", "sets", "--inline", "a b;a c;a d"});
    CHECK(s.code == 0);
    const auto j = Json::parse(s.out);
    CHECK(j.at("found") == true);
    CHECK(j.at("kernel") == Json::array({"a"}));

    const auto none = run({"detect", "sets", "--t", "3", "--naive", "--inline", "1 2;2 3;1 3"});
    CHECK(Json::parse(none.out).at("found") == false);

    const auto ap = run({"detect", "ap", "--moduli", "4,4", "--inline", "0,0;1,2;2,0"});
    CHECK(Json::parse(ap.out).at("is_sunflower") == false);
  }

  TEST_CASE("bounds") {
    const auto j = run({"bounds", "j", "--q", "3"});
    CHECK(j.code == 0);
    CHECK(std::abs(Json::parse(j.out).at("j").get<double>() - 0.9184) <= 5e-5);

    const auto table = run({"bounds", "--k", "3", "--M", "9", "--format", "table"});
    CHECK(table.code == 0);
    CHECK(table.out.find("erdos_rado") != std::string::npos);

    const auto list = Json::parse(run({"bounds", "--moduli", "3,3"}).out);
    CHECK(list.size() >= 2);

    const auto crt = Json::parse(run({"bounds", "crt", "--m", "15", "--mode", "recursive"}).out);
    CHECK(crt.at(0).at("value") == "4");
  }

  TEST_CASE("search") {
    const auto r = run({"search", "vectors", "--moduli", "3,3"});
    CHECK(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j.at("maximum") == 4);
    CHECK(j.at("optimal") == true);
    CHECK_FALSE(j.contains("elapsed_ms"));
    CHECK(run({"search", "vectors", "--moduli", "3,3", "--threads", "3"}).out == r.out);
    CHECK(Json::parse(run({"search", "vectors", "--moduli", "3,3", "--timing"}).out).contains("elapsed_ms"));
    CHECK(Json::parse(run({"search", "uniform", "--k", "2", "--m", "6"}).out).at("maximum") == 6);
  }

  TEST_CASE("cnf export and check") {
    const auto path = temp_path("z3.cnf");
    CHECK(run({"search", "cnf", "--moduli", "3", "--size", "3", "--out", path}).code == 0);
    const auto check = Json::parse(run({"cnf", "check", "--in", path}).out);
    CHECK(check.at("satisfiable") == false);
    std::remove(path.c_str());
  }

  TEST_CASE("pipeline writes its trace") {
    const auto path = temp_path("trace.json");
    const auto r = run({"reduce", "pipeline", "--inline", "1 2;3 4", "--json", path});
    CHECK(r.code == 0);
    std::ifstream in(path);
    const auto j = Json::parse(in);
    CHECK(j.at("all_certified") == true);
    CHECK(j.dump(2) + "\n" == r.out);
    std::remove(path.c_str());
    CHECK(run({"reduce", "pipeline", "--inline", "1 2;3 4;5 6"}).code == 1);
    CHECK(run({"reduce", "pipeline", "--inline", "1 2;3 4", "--seed", "4", "--derandomize"}).code == 2);
  }

  TEST_CASE("conjecture scan csv") {
    const auto path = temp_path("scan.csv");
    const auto r = run({"conjecture", "scan", "--k", "1..2", "--m", "3..6", "--csv", path, "--format", "csv"});
    CHECK(r.code == 0);
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == r.out);
    std::remove(path.c_str());
  }

  TEST_CASE("exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"search", "vectors"}).code == 2);
    CHECK(run({"search", "vectors", "--moduli", "3", "--threads", "0"}).code == 2);
    CHECK(run({"detect", "sets"}).code == 2);
    CHECK(run({"bounds", "kostochka", "--k", "3"}).code == 1);
    CHECK(run({"bounds", "crt", "--m", "6", "--n", "2"}).code == 1);
    CHECK(run({"detect", "vectors", "--moduli", "3", "--inline", "0;5"}).code == 1);
    CHECK(run({"--help"}).code == 0);
  }

  TEST_CASE("help lists every flag") {
    const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> cases{
        {{"detect", "sets"}, {"--in", "--inline", "--t", "--canonical", "--naive", "--allow-empty"}},
        {{"detect", "vectors"}, {"--moduli"}},
        {{"bounds"}, {"--k", "--M", "--moduli", "--format"}},
        {{"bounds", "j"}, {"--q", "--tol"}},
        {{"reduce", "pipeline"}, {"--seed", "--derandomize", "--json"}},
        {{"search", "vectors"}, {"--moduli", "--budget-nodes", "--budget-ms", "--threads", "--no-anchor", "--timing"}},
        {{"search", "cnf"}, {"--size", "--out"}},
        {{"conjecture", "scan"}, {"--k", "--m", "--csv"}},
        {{"cnf", "check"}, {"--in"}},
    };
    for (const auto& [path, flags] : cases) {
      auto args = path;
      args.push_back("--help");
      const auto r = run(args);
      CHECK(r.code == 0);
      for (const auto& flag : flags) {
        CAPTURE(flag);
        CHECK(r.out.find(flag) != std::string::npos);
      }
    }
  }
}
