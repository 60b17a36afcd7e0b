#include <doctest.h>

#include <cmath>

#include "pbn/bench.hpp"
#include "pbn/oracle.hpp"

using namespace pbn;

namespace {

BayesNet three_chain(double eps) {
  BayesNet bn;
  bn.add_node({"A", {}, {0.5}});
  bn.add_node({"B", {"A"}, {eps, 1 - eps}});
  bn.add_node({"C", {"B"}, {eps, 1 - eps}});
  bn.validate();
  return bn;
}

}  // namespace

TEST_CASE("exact_joint enumerates CPT products") {
  SUBCASE("one node") {
    BayesNet bn;
    bn.add_node({"A", {}, {0.7}});
    bn.validate();
    const JointDistribution d = exact_joint(bn);
    d.check_normalized();
    CHECK(d.probability(1) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(d.probability(0) == doctest::Approx(0.3).epsilon(1e-15));
  }
  SUBCASE("two independent unbiased nodes are uniform") {
    BayesNet bn;
    bn.add_node({"A", {}, {0.5}});
    bn.add_node({"B", {}, {0.5}});
    bn.validate();
    const JointDistribution d = exact_joint(bn);
    d.check_normalized();
    for (std::size_t s = 0; s < 4; ++s)
      CHECK(d.probability(s) == doctest::Approx(0.25).epsilon(1e-15));
  }
  SUBCASE("normalization holds on the family tree") {
    const JointDistribution d = exact_joint(build_family_tree(Scenario::double_cousins()));
    d.check_normalized();
  }
  SUBCASE("enumeration bound") { CHECK_THROWS_AS(JointDistribution(21), Error); }
}

TEST_CASE("exact_correlation reproduces kinship algebra") {
  const double e1 = 0.0099, e2 = 1e-4;
  const double link = 1 - 2 * e1, blend = 1 - 2 * e2;
  const double siblings = blend * blend * 2 * link / 4.0;

  SUBCASE("double cousins") {
    const BayesNet bn = build_family_tree(Scenario::double_cousins());
    const JointDistribution d = exact_joint(bn);
    const double c1c2 = exact_correlation(d, bn.index_of("C1"), bn.index_of("C2"));
    CHECK(c1c2 == doctest::Approx(blend * blend * 2 * siblings / 4.0).epsilon(1e-9));
    CHECK(c1c2 == doctest::Approx(0.25).epsilon(0.03));
    CHECK(exact_correlation(d, bn.index_of("F1"), bn.index_of("F2")) ==
          doctest::Approx(siblings).epsilon(1e-9));
  }
  SUBCASE("first cousins") {
    const BayesNet bn = build_family_tree(Scenario::first_cousins());
    const JointDistribution d = exact_joint(bn);
    CHECK(exact_correlation(d, bn.index_of("C1"), bn.index_of("C2")) ==
          doctest::Approx(blend * blend * siblings / 4.0).epsilon(1e-9));
    CHECK(exact_correlation(d, bn.index_of("C1"), bn.index_of("C2")) ==
          doctest::Approx(0.125).epsilon(0.03));
  }
  SUBCASE("unrelated grandchildren decorrelate completely") {
    const BayesNet bn = build_family_tree(Scenario::unrelated());
    const JointDistribution d = exact_joint(bn);
    CHECK(std::fabs(exact_correlation(d, bn.index_of("C1"), bn.index_of("C2"))) < 1e-9);
  }
  SUBCASE("self-correlation is exactly one") {
    BayesNet bn;
    bn.add_node({"A", {}, {0.37}});
    bn.validate();
    CHECK(exact_correlation(exact_joint(bn), 0, 0) == 1.0);
  }
  SUBCASE("disjoint components are uncorrelated") {
    BayesNet bn;
    bn.add_node({"A", {}, {0.8}});
    bn.add_node({"B", {}, {0.3}});
    bn.validate();
    const JointDistribution d = exact_joint(bn);
    // <AB> factorizes: (2*0.8-1)(2*0.3-1)
    CHECK(exact_correlation(d, 0, 1) == doctest::Approx(0.6 * -0.4).epsilon(1e-12));
  }
}

TEST_CASE("total_variation") {
  JointDistribution p(2), q(2);
  p[0] = 1.0;
  q[0] = 1.0;
  CHECK(total_variation(p, q) == 0.0);
  q[0] = 0.0;
  q[3] = 1.0;
  CHECK(total_variation(p, q) == 1.0);
  CHECK_THROWS_AS(total_variation(p, JointDistribution(3)), Error);
}

TEST_CASE("sweep sampling matches the exact joint in total variation") {
  const BayesNet bn = three_chain(0.0099);
  const CompileResult compiled = compile_network(bn);
  const JointDistribution exact = exact_joint(bn);
  const SampleTrace trace =
      run(compiled.network, Schedule::TopologicalSweep, 200000, 0, 401);
  const JointDistribution empirical = empirical_joint(trace, bn.size());
  CHECK(total_variation(empirical, exact) < 0.01);
}

TEST_CASE("aux nodes marginalize away") {
  SUBCASE("AND CPT: BN factors equal reconstructed factors") {
    BayesNet bn;
    const double eps = 1e-4;
    bn.add_node({"A", {}, {0.5}});
    bn.add_node({"B", {}, {0.5}});
    bn.add_node({"C", {"A", "B"}, {eps, eps, eps, 1 - eps}});
    bn.validate();
    const CompileResult compiled = compile_network(bn);
    REQUIRE(compiled.aux_map.size() == 1);
    CHECK(total_variation(exact_joint(bn), exact_joint(compiled)) < 1e-9);
  }
  SUBCASE("forcing an aux onto a consistent CPT changes nothing") {
    BayesNet bn;
    const double eps = 1e-4;
    bn.add_node({"A", {}, {0.5}});
    bn.add_node({"B", {}, {0.5}});
    bn.add_node({"C", {"A", "B"}, {eps, 0.5, 0.5, 1 - eps}});
    bn.validate();
    const CompileResult plain = compile_network(bn);
    CompileOptions force;
    force.consistency_tol = -1.0;  // residual always exceeds it
    const CompileResult with_aux = compile_network(bn, force);
    CHECK(plain.aux_map.empty());
    REQUIRE(with_aux.aux_map.size() == 1);
    const JointDistribution a = exact_joint(plain);
    const JointDistribution b = exact_joint(with_aux);
    CHECK(total_variation(a, b) < 1e-9);
    for (std::size_t i = 0; i < bn.size(); ++i)
      for (std::size_t j = 0; j < bn.size(); ++j)
        CHECK(std::fabs(exact_correlation(a, i, j) - exact_correlation(b, i, j)) < 1e-9);
  }
}
