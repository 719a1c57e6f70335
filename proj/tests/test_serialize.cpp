#include <doctest.h>

#include <string>

#include "nlact/random.hpp"
#include "nlact/serialize.hpp"
#include "nlact/states.hpp"

using namespace nlact;

TEST_SUITE("serialize") {

TEST_CASE("round trip is bit exact") {
  auto rng = make_rng(71);
  for (const PartyLayout& layout :
       {PartyLayout{{2}, {2}}, PartyLayout{{2, 3}, {2}}, PartyLayout{{2, 2}, {2, 2}}}) {
    auto op = random_state(layout, rng);
    auto back = operator_from_json(to_json(op));
    CHECK(back.layout == op.layout);
    CHECK((back.mat - op.mat).norm() == 0.0);
  }
  auto anc = ancilla_rho();
  CHECK((operator_from_json(to_json(anc, 2)).mat - anc.mat).norm() == 0.0);
}

TEST_CASE("layout field leads and indentation is honored") {
  auto op = werner2(0.5);
  const std::string flat = to_json(op);
  CHECK(flat.rfind("{\"layout\":[[2],[2]]", 0) == 0);
  CHECK(flat.find('\n') == std::string::npos);
  const std::string pretty = to_json(op, 2);
  CHECK(pretty.find('\n') != std::string::npos);
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(operator_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(operator_from_json("[1,2,3]"), std::invalid_argument);
  CHECK_THROWS_AS(operator_from_json(R"({"layout":[[2]],"re":[1,0,0,1]})"),
                  std::invalid_argument); // missing im
  CHECK_THROWS_AS(operator_from_json(R"({"layout":[[2]],"re":[1,0,0],"im":[0,0,0,0]})"),
                  std::invalid_argument); // wrong length
  CHECK_THROWS_AS(operator_from_json(R"({"layout":[[0]],"re":[],"im":[]})"),
                  std::invalid_argument); // bad leg dimension
  CHECK_THROWS_AS(
      operator_from_json(R"({"layout":[[2]],"re":[1,0,0,"x"],"im":[0,0,0,0]})"),
      std::invalid_argument); // non-numeric entry
}

} // TEST_SUITE
