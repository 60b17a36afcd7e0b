#include <doctest.h>

#include <cmath>
#include <fstream>

#include "pbn/bench.hpp"
#include "pbn/oracle.hpp"

using namespace pbn;

TEST_CASE("scenarios gate the grandparent links") {
  CHECK(Scenario::unrelated().links == std::array<bool, 4>{false, false, false, false});
  CHECK(Scenario::first_cousins().links == std::array<bool, 4>{true, true, false, false});
  CHECK(Scenario::double_cousins().links == std::array<bool, 4>{true, true, true, true});

  Scenario bad = Scenario::unrelated();
  bad.epsilon_two_parent = 0.7;
  CHECK_THROWS_AS(bad.validate(), Error);

  CHECK(scenario_from_name("double-cousins").value() == ScenarioKind::DoubleCousins);
  CHECK_FALSE(scenario_from_name("nephews").has_value());
}

TEST_CASE("build_family_tree emits the 14-node structure") {
  const BayesNet bn = build_family_tree(Scenario::first_cousins());
  REQUIRE(bn.size() == 14);

  // roots
  for (const char* name : {"FF1", "MF1", "FM1", "MM1"}) {
    const CptNode& node = bn.node(bn.index_of(name));
    CHECK(node.parents.empty());
    CHECK(node.table == std::vector<double>{0.5});
  }
  // linked vs unlinked second-set grandparents
  const CptNode& ff2 = bn.node(bn.index_of("FF2"));
  REQUIRE(ff2.parents == std::vector<std::string>{"FF1"});
  CHECK(ff2.table[1] == doctest::Approx(0.9901).epsilon(1e-12));
  CHECK(ff2.table[0] == doctest::Approx(0.0099).epsilon(1e-12));
  const CptNode& fm2 = bn.node(bn.index_of("FM2"));
  CHECK(fm2.table == std::vector<double>{0.5, 0.5});
  // children carry the blend CPT over the right parents
  const CptNode& c1 = bn.node(bn.index_of("C1"));
  CHECK(c1.parents == std::vector<std::string>{"F1", "M1"});
  CHECK(c1.table[3] == doctest::Approx(0.9999).epsilon(1e-12));
  CHECK(c1.table[2] == 0.5);
  CHECK(c1.table[1] == 0.5);
  CHECK(c1.table[0] == doctest::Approx(1e-4).epsilon(1e-12));

  // deterministic output
  const BayesNet again = build_family_tree(Scenario::first_cousins());
  for (std::size_t i = 0; i < bn.size(); ++i) {
    CHECK(bn.node(i).name == again.node(i).name);
    CHECK(bn.node(i).table == again.node(i).table);
  }
}

TEST_CASE("relatedness_table runs the requested methods") {
  const BayesNet bn = build_family_tree(Scenario::double_cousins());

  SUBCASE("exact only") {
    const RunReport report = relatedness_table(bn, {Method::Exact}, 1000, 5);
    REQUIRE(report.pairs.size() == 4);
    for (const PairCorrelation& pc : report.pairs) {
      CHECK(pc.exact.has_value());
      CHECK_FALSE(pc.psl.has_value());
      CHECK_FALSE(pc.circuit.has_value());
    }
    const PairCorrelation& c1c2 = report.pairs.front();
    CHECK(c1c2.a == "C1");
    CHECK(*c1c2.exact == doctest::Approx(0.25).epsilon(0.03));
  }
  SUBCASE("sampled methods are reproducible") {
    const RunReport a = relatedness_table(bn, {Method::Psl, Method::Circuit}, 20000, 9);
    const RunReport b = relatedness_table(bn, {Method::Psl, Method::Circuit}, 20000, 9);
    for (std::size_t k = 0; k < a.pairs.size(); ++k) {
      CHECK(*a.pairs[k].psl == *b.pairs[k].psl);
      CHECK(*a.pairs[k].circuit == *b.pairs[k].circuit);
    }
  }
  SUBCASE("unknown pair rejected") {
    RelatednessOptions opts;
    opts.pairs = {{"C1", "nobody"}};
    CHECK_THROWS_AS(relatedness_table(bn, {Method::Exact}, 10, 1, opts), Error);
  }
  SUBCASE("zero samples rejected") {
    CHECK_THROWS_AS(relatedness_table(bn, {Method::Exact}, 0, 1), Error);
  }
}

TEST_CASE("three-method table agreement at the benchmark sample count") {
  const std::size_t n = 1000000;
  std::uint64_t seed = 31;
  for (ScenarioKind kind :
       {ScenarioKind::Unrelated, ScenarioKind::FirstCousins, ScenarioKind::DoubleCousins}) {
    const BayesNet bn = build_family_tree(make_scenario(kind));
    const RunReport report = relatedness_table(
        bn, {Method::Exact, Method::Psl, Method::Circuit}, n, seed++);
    for (const PairCorrelation& pc : report.pairs) {
      CHECK(std::fabs(*pc.psl - *pc.exact) <= 0.02);
      CHECK(std::fabs(*pc.circuit - *pc.exact) <= 0.03);
    }
  }
}

TEST_CASE("report formatting") {
  RunReport report;
  report.n_samples = 100;
  report.seed = 7;
  report.pairs.push_back({"C1", "C2", 0.25, 0.251234567, {}});

  const std::string csv = format_report_csv(report);
  CHECK(csv == "pair,exact,psl,circuit,n,seed\nC1-C2,0.250000,0.251235,,100,7\n");

  const std::string json = format_report_json(report);
  CHECK(json.find("\"pair\": \"C1-C2\"") != std::string::npos);
  CHECK(json.find("\"psl\": 0.251235") != std::string::npos);
  CHECK(json.find("circuit") == std::string::npos);
}

TEST_CASE("BN file parsing") {
  SUBCASE("minimal document") {
    const BayesNet bn = parse_bn_string("NODE A\nP - 0.7\n");
    REQUIRE(bn.size() == 1);
    CHECK(bn.node(0).table == std::vector<double>{0.7});
  }
  SUBCASE("comments and blank lines are ignored") {
    const BayesNet bn = parse_bn_string("# header\n\nNODE A  # trailing\nP - 0.5\n");
    CHECK(bn.size() == 1);
  }
  SUBCASE("fixture equals the generated family tree") {
    std::ifstream in(std::string(PBN_TEST_DATA_DIR) + "/family_tree_double_cousins.bn");
    REQUIRE(bool(in));
    const BayesNet parsed = parse_bn_file(in, "family_tree_double_cousins.bn");
    const BayesNet built = build_family_tree(Scenario::double_cousins());
    REQUIRE(parsed.size() == built.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
      CHECK(parsed.node(i).name == built.node(i).name);
      CHECK(parsed.node(i).parents == built.node(i).parents);
      REQUIRE(parsed.node(i).table.size() == built.node(i).table.size());
      for (std::size_t k = 0; k < parsed.node(i).table.size(); ++k)
        CHECK(parsed.node(i).table[k] ==
              doctest::Approx(built.node(i).table[k]).epsilon(1e-12));
    }
    // and the joints agree
    CHECK(total_variation(exact_joint(parsed), exact_joint(built)) < 1e-12);
  }
  SUBCASE("diagnostics carry codes, lines, and names") {
    const auto code_of = [](const char* text) {
      try {
        parse_bn_string(text);
      } catch (const Error& e) {
        return e.code();
      }
      return errc::invalid_input;
    };
    CHECK(code_of("NODE A\nP - 1.3\n") == errc::bad_probability);
    CHECK(code_of("NODE A\nP - 0.5\nNODE A\nP - 0.5\n") == errc::duplicate_node);
    CHECK(code_of("NODE A\nPARENTS ghost\nP + 0.5\nP - 0.5\n") == errc::unknown_parent);
    CHECK(code_of("NODE A\nP - 0.5\nNODE B\nPARENTS A A2 A3\n") == errc::arity);
    CHECK(code_of("NODE A\nP - 0.5\nP - 0.5\n") == errc::parse);       // repeated combo
    CHECK(code_of("NODE A\nPARENTS A\nP + 0.5\nP - 0.5\n") == errc::validation);  // cycle
    CHECK(code_of("NODE A\nP -\n") == errc::parse);
    CHECK(code_of("") == errc::parse);

    try {
      parse_bn_string("NODE A\nP - 1.3\n", "doc.bn");
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("doc.bn:2") != std::string::npos);
      CHECK(std::string(e.what()).find("'A'") != std::string::npos);
    }
  }
  SUBCASE("incomplete table names the missing combination") {
    try {
      parse_bn_string("NODE A\nP - 0.5\nNODE B\nPARENTS A\nP + 0.9\n");
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == errc::parse);
      CHECK(std::string(e.what()).find("'-'") != std::string::npos);
    }
  }
}
