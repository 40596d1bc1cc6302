#include <doctest.h>

#include "smi/bench.hpp"
#include "smi/errors.hpp"
#include "smi/oracle.hpp"
#include "smi/parser.hpp"
#include "support/instances.hpp"

using namespace smi;

TEST_CASE("mc_wmi degenerate cases") {
  Estimate full = mc_wmi(parse_problem("(declare-real x 0 2)"), 1000, 1);
  CHECK(full.mean == 2.0);
  CHECK(full.std_error == 0.0);
  CHECK(full.samples == 1000);
  Estimate none = mc_wmi(parse_problem("(declare-real x 0 1)(assert (<= x 0))(assert (<= 1 x))"), 1000, 1);
  CHECK(none.mean == 0.0);
  CHECK(none.std_error == 0.0);
  CHECK_THROWS_AS(mc_wmi(parse_problem("(declare-real x 0 2)"), 0, 1), std::invalid_argument);
}

TEST_CASE("mc_wmi is reproducible and thread independent") {
  Problem p = parse_problem(generate({Family::house, 2, 10}));
  Estimate a = mc_wmi(p, 200000, 42);
  Estimate b = mc_wmi(p, 200000, 42, 4);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(a.seed == 42);
  CHECK(mc_wmi(p, 200000, 43).mean != a.mean);
}

TEST_CASE("mc_wmi agrees with known volumes") {
  Estimate house = mc_wmi(parse_problem(testing::house_text), 400000, 5);
  CHECK(std::abs(house.mean - 430250.0) <= 3 * house.std_error);
  Estimate sep = mc_wmi(parse_problem(testing::separated_star_text(2)), 400000, 6);
  CHECK(std::abs(sep.mean - 1.0 / 12.0) <= 3 * sep.std_error);
  Estimate weighted = mc_wmi(parse_problem(generate({Family::house, 1, 10})), 400000, 7);
  CHECK(std::abs(weighted.mean - to_double(testing::weighted_house_value())) <= 3 * weighted.std_error);
}

TEST_CASE("enumerate_booleans_wmi") {
  Problem p = parse_problem("(declare-bool b)(assert (or b (not b)))(weight b 2)(weight (not b) 3)");
  CHECK(std::get<Rational>(enumerate_booleans_wmi(p, Inner::exact)) == 5);
  Estimate e = std::get<Estimate>(enumerate_booleans_wmi(p, Inner::mc, 1000, 1));
  CHECK(e.mean == 5.0);

  Rational factor;
  Problem fixed = condition_booleans(p, 1, factor);
  CHECK(factor == 2);
  CHECK(fixed.weights.empty());
  condition_booleans(p, 0, factor);
  CHECK(factor == 3);

  Problem house = parse_problem(generate({Family::house, 1, 10}));
  CHECK(std::get<Rational>(enumerate_booleans_wmi(house, Inner::exact)) == testing::weighted_house_value());

  std::string many;
  for (int i = 0; i < 21; ++i) many += "(declare-bool b" + std::to_string(i) + ")";
  CHECK_THROWS_AS(enumerate_booleans_wmi(parse_problem(many), Inner::exact), InputError);
}
