#include "doctest.h"

#include <sstream>

#include "heiscc/errors.hpp"
#include "heiscc/io.hpp"

using namespace heiscc;

TEST_SUITE("io") {

TEST_CASE("generator files") {
  const GenSet g = gens_from_json(Json::parse(R"({"generators": [[1, 0, 0], [0, 1, 0]], "symmetrize": true})"));
  CHECK(g.elements.size() == 4);
  CHECK(g.L == GenSet::standard().L);
  CHECK_THROWS(gens_from_json(Json::parse(R"({"generators": [[1, 0]]})")));
  CHECK_THROWS(gens_from_json(Json::parse(R"({"generators": [[1, 0, 1]], "symmetrize": true})")));
}

TEST_CASE("volume reports use rational strings") {
  const Json j = to_json(ball_volumes(PanelAtlas::build(GenSet::standard().L)));
  CHECK(j["V"] == "31/72");
  CHECK(j["unique_geodesic_probability"] == "19/31");
}

TEST_CASE("census csv") {
  CensusTable t;
  t.rows.push_back({4, 98, Rational(992, 9), 0.9, -12.2});
  std::ostringstream os;
  write_census_csv(os, t, {{"seed", "7"}});
  const std::string s = os.str();
  CHECK(s.rfind("# seed: 7\n", 0) == 0);
  CHECK(s.find("\nn,count,prediction,ratio,residual\n") != std::string::npos);
}

TEST_CASE("obj export") {
  std::ostringstream os;
  write_obj(os, sphere_mesh(PanelAtlas::build(GenSet::standard().L), 1), {{"seed", "1"}});
  const std::string s = os.str();
  CHECK(s.find("# seed: 1") != std::string::npos);
  CHECK(s.find("\ng side_1") != std::string::npos);
  CHECK(s.find("\nf 1 ") != std::string::npos);
}

}
