// Copyright 2026 The FOLP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include <doctest.h>
#include <json.hpp>

#include "folp/bench.hpp"
#include "folp/instance_gen.hpp"
#include "folp/mps.hpp"
#include "folp/result_io.hpp"
#include "folp/solver.hpp"

using namespace folp;

namespace {

constexpr const char* kTinyMps = R"(NAME tiny
ROWS
 N obj
 G c1
COLUMNS
    x obj 1
    x c1 1
RHS
    rhs c1 1
ENDATA
)";

}  // namespace

TEST_CASE("parse_mps: minimal instance") {
  const MpsInstance parsed = parse_mps(kTinyMps);
  CHECK(parsed.name == "tiny");
  CHECK(!parsed.was_maximization);
  const LinearProgram& lp = parsed.lp;
  CHECK(lp.num_variables() == 1);
  CHECK(lp.num_rows() == 1);
  CHECK(lp.num_inequality_rows == 1);
  CHECK(lp.objective == std::vector<double>{1.0});
  CHECK(lp.right_hand_side == std::vector<double>{1.0});
  CHECK(lp.variable_lower == std::vector<double>{0.0});
  CHECK(lp.variable_upper == std::vector<double>{kInf});
}

TEST_CASE("parse_mps: FR bound frees the variable") {
  const std::string text = std::string(kTinyMps).replace(
      std::string(kTinyMps).find("ENDATA"), 6,
      "BOUNDS\n FR BND x\nENDATA");
  const MpsInstance parsed = parse_mps(text);
  CHECK(parsed.lp.variable_lower == std::vector<double>{-kInf});
  CHECK(parsed.lp.variable_upper == std::vector<double>{kInf});
}

TEST_CASE("parse_mps: L row is negated into >= form") {
  const char* text = R"(NAME lrow
ROWS
 N obj
 L c1
COLUMNS
    x obj 1
    x c1 1
RHS
    rhs c1 2
ENDATA
)";
  const LinearProgram lp = parse_mps(text).lp;
  CHECK(lp.num_inequality_rows == 1);
  CHECK(lp.right_hand_side == std::vector<double>{-2.0});
  CHECK(lp.constraint_matrix.row_values()[0] == -1.0);
}

TEST_CASE("parse_mps: ranges split into two inequality rows") {
  // G row with rhs 1 and range 2 means 1 <= x <= 3.
  const char* text = R"(NAME ranged
ROWS
 N obj
 G c1
COLUMNS
    x obj 1
    x c1 1
RHS
    rhs c1 1
RANGES
    rng c1 2
ENDATA
)";
  const LinearProgram lp = parse_mps(text).lp;
  CHECK(lp.num_rows() == 2);
  CHECK(lp.num_inequality_rows == 2);
  CHECK(lp.right_hand_side == std::vector<double>{1.0, -3.0});
  CHECK(lp.constraint_matrix.row_values()[0] == 1.0);
  CHECK(lp.constraint_matrix.row_values()[1] == -1.0);
}

TEST_CASE("parse_mps: maximization is negated with the flag recorded") {
  const char* text = R"(NAME maxi
OBJSENSE
    MAX
ROWS
 N obj
 G c1
COLUMNS
    x obj 2
    x c1 1
RHS
    rhs c1 1
ENDATA
)";
  const MpsInstance parsed = parse_mps(text);
  CHECK(parsed.was_maximization);
  CHECK(parsed.lp.objective == std::vector<double>{-2.0});
}

TEST_CASE("parse_mps: integrality markers are dropped") {
  const char* text = R"(NAME marked
ROWS
 N obj
 G c1
COLUMNS
    MARKER1 'MARKER' 'INTORG'
    x obj 1
    x c1 1
    MARKER2 'MARKER' 'INTEND'
RHS
    rhs c1 1
ENDATA
)";
  const LinearProgram lp = parse_mps(text).lp;
  CHECK(lp.num_variables() == 1);
  CHECK(lp.constraint_matrix.nnz() == 1);
}

TEST_CASE("parse_mps: duplicate column entries sum") {
  const char* text = R"(NAME dup
ROWS
 N obj
 G c1
COLUMNS
    x obj 1
    x c1 1
    x c1 2
RHS
    rhs c1 1
ENDATA
)";
  const LinearProgram lp = parse_mps(text).lp;
  CHECK(lp.constraint_matrix.nnz() == 1);
  CHECK(lp.constraint_matrix.row_values()[0] == 3.0);
}

TEST_CASE("parse_mps: objective-row RHS is the negated constant") {
  const char* text = R"(NAME constant
ROWS
 N obj
 G c1
COLUMNS
    x obj 1
    x c1 1
RHS
    rhs c1 1 obj 5
ENDATA
)";
  const LinearProgram lp = parse_mps(text).lp;
  CHECK(lp.objective_constant == -5.0);
}

TEST_CASE("parse_mps error reporting") {
  SUBCASE("unknown section") {
    CHECK_THROWS_AS(parse_mps("NAME x\nGARBAGE\n"), MpsParseError);
  }
  SUBCASE("dangling row reference") {
    const char* text = R"(NAME bad
ROWS
 N obj
COLUMNS
    x nosuchrow 1
ENDATA
)";
    CHECK_THROWS_AS(parse_mps(text), MpsParseError);
  }
  SUBCASE("bad number carries the line") {
    const char* text = "NAME bad\nROWS\n N obj\n G c1\nCOLUMNS\n x c1 zzz\n";
    try {
      parse_mps(text);
      FAIL("expected a parse error");
    } catch (const MpsParseError& e) {
      CHECK(e.line() == 6);
    }
  }
}

TEST_CASE("write/parse round trip is bitwise exact") {
  const std::vector<NamedInstance> suite = handcrafted_suite();
  for (const NamedInstance& instance : suite) {
    CAPTURE(instance.name);
    const std::string text = write_mps(instance.lp, instance.name);
    const MpsInstance parsed = parse_mps(text);
    CHECK(parsed.lp == instance.lp);
  }
  const Graph g = barabasi_albert(50, 3, 11);
  const LinearProgram lp = pagerank_lp(g, 0.85);
  CHECK(parse_mps(write_mps(lp, "pagerank")).lp == lp);
}

TEST_CASE("result JSON round trip preserves every number") {
  SolverParams params;
  const std::vector<NamedInstance> suite = handcrafted_suite();
  const SolveResult result = solve(suite[1].lp, params);
  const std::string text = result_to_json(result);
  const nlohmann::json parsed = nlohmann::json::parse(text);
  CHECK(parsed.at("termination_reason").get<std::string>() == "Optimal");
  CHECK(parsed.at("kkt_passes").get<double>() == result.kkt_passes);
  CHECK(parsed.at("iterations").get<Index>() == result.iterations);
  CHECK(parsed.at("primal_objective").get<double>() ==
        result.final_info.primal_objective);
  REQUIRE(parsed.at("trace").size() == result.trace.size());
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    const auto& entry = parsed.at("trace").at(i);
    CHECK(entry.at("kkt_passes").get<double>() ==
          result.trace[i].kkt_passes);
    CHECK(entry.at("current").at("primal_objective").get<double>() ==
          result.trace[i].current.primal_objective);
    CHECK(entry.at("average").at("dual_objective").get<double>() ==
          result.trace[i].average.dual_objective);
  }
}

TEST_CASE("write_result emits byte-stable files") {
  SolverParams params;
  SolveResult result = solve(handcrafted_suite()[0].lp, params);
  result.wall_seconds = 0.0;  // timing is the one nondeterministic field
  const std::string a = result_to_json(result);
  const std::string b = result_to_json(result);
  CHECK(a == b);
}

TEST_CASE("bench runner aggregates and formats") {
  std::vector<NamedInstance> instances = handcrafted_suite();
  instances.resize(4);
  SolverParams params;
  params.kkt_pass_limit = 50000;
  const BenchReport report = run_bench(instances, params, 2);
  CHECK(report.entries.size() == 4);
  CHECK(report.solved_count == 4);
  const std::string csv = bench_csv(report);
  CHECK(csv.find("instance,termination_reason") == 0);
  CHECK(csv.find("SGM10") != std::string::npos);
  CHECK(csv.find("one_sided_min,Optimal") != std::string::npos);
  // Worker count does not change the numbers.
  const BenchReport serial = run_bench(instances, params, 1);
  CHECK(serial.sgm10_kkt_passes == report.sgm10_kkt_passes);
}
