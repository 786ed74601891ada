#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "multicomm/corpus.hpp"
#include "multicomm/io.hpp"

using namespace multicomm;

namespace {

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path(std::filesystem::temp_directory_path() / name) {
    std::ofstream(path) << content;
  }
  ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
};

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("inequality JSON round trip") {
    auto e = find_inequality("I6");
    REQUIRE(e.has_value());
    std::ostringstream os;
    write_inequality_json(os, e->functional);
    TempFile tmp("io_roundtrip.json", os.str());
    auto f = read_inequality_json(tmp.path.string());
    CHECK(f.scenario.nx == e->functional.scenario.nx);
    CHECK(f.scenario.ny == e->functional.scenario.ny);
    CHECK(f.scenario.nz == e->functional.scenario.nz);
    CHECK(f.scenario.constraint == e->functional.scenario.constraint);
    CHECK(f.scenario.D1 == e->functional.scenario.D1);
    CHECK(f.coeffs == e->functional.coeffs);
    CHECK(f.rhs.constant == e->functional.rhs.constant);
    CHECK(f.rhs.coefD1 == e->functional.rhs.coefD1);
  }

  TEST_CASE("rational fields accept numbers and fraction strings") {
    TempFile tmp("io_rat.json", R"({
      "scenario": {"nx": 2, "ny": 2, "nz": 2},
      "constraint": {"type": "distinguishability", "D1": "2/3", "D2": 0.5},
      "terms": [{"x": 1, "y": 1, "z": 1, "c": "1/3"},
                {"x": 2, "y": 2, "z": 2, "c": -1}],
      "rhs": {"const": 2, "d1": "1/2", "d2": 0}
    })");
    auto f = read_inequality_json(tmp.path.string());
    CHECK(f.scenario.D1 == Rat(2, 3));
    CHECK(f.scenario.D2 == Rat(1, 2));
    CHECK(f.coeff(1, 1, 1) == Rat(1, 3));
    CHECK(f.coeff(2, 2, 2) == Rat(-1));
    CHECK(f.coeff(1, 2, 1) == Rat(0));
    CHECK(f.rhs.coefD1 == Rat(1, 2));
  }

  TEST_CASE("strategy JSON accepts vectors, matrices, and [re, im] pairs") {
    TempFile tmp("io_strategy.json", R"({
      "alice_states": [[1, 0], [[0.5, [0, 0.5]], [[0, -0.5], 0.5]]],
      "bob_states": [[0, 1]],
      "povm": [[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]],
               [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]]]
    })");
    auto s = read_strategy_json(tmp.path.string());
    REQUIRE(s.alice_states.size() == 2);
    REQUIRE(s.bob_states.size() == 1);
    REQUIRE(s.povm.size() == 2);
    CHECK(s.dim_a() == 2);
    CHECK(s.dim_b() == 2);
    // Vector state |0> became the projector |0><0|.
    CHECK(s.alice_states[0](0, 0) == cplx(1, 0));
    CHECK(s.alice_states[0](1, 1) == cplx(0, 0));
    // The density matrix with complex off-diagonals parsed entrywise.
    CHECK(s.alice_states[1](0, 1) == cplx(0, 0.5));
    CHECK(s.alice_states[1](1, 0) == cplx(0, -0.5));
    CHECK(s.validation_issues().empty());
  }

  TEST_CASE("malformed files raise IoError") {
    TempFile bad("io_bad.json", "{ not json");
    CHECK_THROWS_AS(read_inequality_json(bad.path.string()), IoError);
    CHECK_THROWS_AS(read_strategy_json(bad.path.string()), IoError);
    CHECK_THROWS_AS(read_inequality_json("/nonexistent/nope.json"), IoError);
  }

  TEST_CASE("CSV schema is stable") {
    std::ostringstream os;
    write_csv_header(os);
    ResultRecord r;
    r.ineq = "I1";
    r.d = "2";
    r.method = "seesaw";
    r.value = "2.414213562";
    r.classical = "2";
    r.paper_value = "2.4142";
    r.seed = "1";
    r.wall_ms = "12";
    write_csv_row(os, r);
    std::istringstream is(os.str());
    std::string header, row;
    std::getline(is, header);
    std::getline(is, row);
    CHECK(header == "ineq,d,D1,D2,method,value,classical,paper_value,seed,wall_ms");
    CHECK(row == "I1,2,,,seesaw,2.414213562,2,2.4142,1,12");
  }

  TEST_CASE("JSON records output is valid JSON") {
    ResultRecord r;
    r.ineq = "I6";
    r.D1 = "2/3";
    r.D2 = "2/3";
    r.method = "hierarchy";
    r.value = "7.136";
    r.classical = "5";
    std::ostringstream os;
    write_json_records(os, {r});
    auto j = nlohmann::json::parse(os.str());
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 1);
    CHECK(j[0]["ineq"] == "I6");
    CHECK(j[0]["method"] == "hierarchy");
    CHECK(j[0]["D1"] == "2/3");
  }
}
