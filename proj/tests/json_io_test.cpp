#include <gtest/gtest.h>

#include <random>

#include "gka/gka.hpp"
#include "gka/json_io.hpp"

using namespace gka;
using namespace gka::json_io;
using PF = PrimeField;

namespace {

const PF kF(101);

template <typename Fn>
std::string schema_message(Fn&& fn) {
  try {
    fn();
  } catch (const SchemaError& e) {
    return e.what();
  }
  return "";
}

TEST(JsonIo, DegreeSetRoundTrip) {
  for (const auto& s : {DegreeSet::full(), DegreeSet::periodic(7, {0, 3, 5}), DegreeSet::windowed({-2, 0, 4}, -3, 6),
                        DegreeSet::periodic(5, {0, 1}, GradedGroup::cyclic(5))}) {
    const auto back = degree_set_from_json(Json::parse(to_json(s).dump()));
    EXPECT_TRUE(same_set(back, s)) << s.to_string();
    EXPECT_EQ(to_json(back), to_json(s));
  }
  const auto j = to_json(DegreeSet::periodic(4, {0, 1}));
  EXPECT_EQ(j["form"], "periodic");
  EXPECT_EQ(j["n"], 4);
  EXPECT_EQ(j["residues"], Json::array({0, 1}));
}

TEST(JsonIo, DegreeSetSchemaErrors) {
  EXPECT_NE(schema_message([] { degree_set_from_json(Json::parse(R"({"form":"blob"})")); }).find("$.form"),
            std::string::npos);
  EXPECT_NE(schema_message([] { degree_set_from_json(Json::parse(R"({"form":"periodic","n":3})")); }).find("$.residues"),
            std::string::npos);
  EXPECT_NE(schema_message([] { degree_set_from_json(Json::parse(R"({"form":"periodic","n":"3","residues":[0]})")); })
                .find("wrong type"),
            std::string::npos);
  EXPECT_THROW(degree_set_from_json(Json::parse(R"({"group":{"kind":"Zn","n":4},"form":"windowed","elements":[0],"window":[0,2]})")),
               SchemaError);
  EXPECT_THROW(degree_set_from_json(Json::parse(R"({"group":{"kind":"Q"},"form":"full"})")), SchemaError);
}

TEST(JsonIo, WindowedMapRoundTripAndErrors) {
  const WindowedMap phi(-2, {-5, -3, 0, 2, 5});
  const auto back = windowed_map_from_json(Json::parse(to_json(phi).dump()));
  EXPECT_EQ(back.lo(), -2);
  EXPECT_EQ(back.values(), phi.values());
  EXPECT_THROW(windowed_map_from_json(Json::parse(R"({"window":[0,1],"values":[[0,0]]})")), SchemaError);
  EXPECT_THROW(windowed_map_from_json(Json::parse(R"({"window":[0,1],"values":[[0,0],[5,1]]})")), WindowViolation);
  EXPECT_NE(schema_message([] { windowed_map_from_json(Json::parse(R"({"window":[0,1],"values":[[0,0],[1]]})")); })
                .find("$.values[1]"),
            std::string::npos);
}

TEST(JsonIo, MatrixEntriesAcceptFractions) {
  const Rationals q;
  const auto m = matrix_from_json(q, Json::parse(R"({"rows":2,"cols":2,"entries":[[1,"1/2"],["-3/4",0]]})"));
  EXPECT_EQ(m(0, 1), q.parse("1/2"));
  EXPECT_EQ(m(1, 0), q.parse("-3/4"));
  const auto back = matrix_from_json(q, Json::parse(to_json(m).dump()));
  EXPECT_EQ(back, m);
  EXPECT_NE(schema_message([&] { matrix_from_json(q, Json::parse(R"({"rows":1,"cols":2,"entries":[[1]]})")); })
                .find("$.entries[0]"),
            std::string::npos);
  EXPECT_THROW(matrix_from_json(q, Json::parse(R"({"rows":1,"cols":1,"entries":[[true]]})")), SchemaError);
}

TEST(JsonIo, AlgebraRoundTrip) {
  const Rationals q;
  const std::vector<GradedAlgebra<Rationals>> algebras = {
      group_algebra<Rationals>(4, q), truncated_poly<Rationals>(4, 1, DegreeWindow::integers(-1, 4), q),
      quiver_algebra<Rationals>(2, {{"a", 0, 1}, {"b", 0, 1}, {"c", 1, 0}}, std::vector<std::string>{"b*c", "c*b"}, 3, q),
      free_algebra_quotient<Rationals>(2, {"x*y - 3*y*x"}, 3, q)};
  for (const auto& a : algebras) {
    const auto text = to_json(a).dump();
    const auto back = algebra_from_json(q, Json::parse(text));
    EXPECT_TRUE(back == a);
    EXPECT_EQ(to_json(back).dump(), text);
  }
}

TEST(JsonIo, ModuleRoundTrip) {
  const auto a = share(free_algebra_quotient<PF>(2, {"y*x"}, 4, kF));
  std::mt19937_64 rng(41);
  for (int i = 0; i < 5; ++i) {
    const auto m = random_presented_module(a, a->window(), {0, 1}, PresentationShape{}, rng);
    const auto back = module_from_json(kF, Json::parse(to_json(m).dump()));
    EXPECT_TRUE(back == m);
  }
}

TEST(JsonIo, AlgebraSchemaErrorsCarryPaths) {
  auto j = to_json(truncated_poly<PF>(3, 1, DegreeWindow::integers(0, 2), kF));
  auto broken = j;
  broken["mult"][0].erase("matrix");
  EXPECT_NE(schema_message([&] { algebra_from_json(kF, broken); }).find("$.mult[0].matrix"), std::string::npos);
  broken = j;
  broken["components"][1]["right_tags"] = Json::array({0, 0});
  EXPECT_NE(schema_message([&] { algebra_from_json(kF, broken); }).find("$.components[1]"), std::string::npos);
  broken = j;
  broken["mult"][0]["g"] = 9;
  EXPECT_THROW(algebra_from_json(kF, broken), WindowViolation);
  broken = j;
  broken.erase("mult");
  EXPECT_NE(schema_message([&] { algebra_from_json(kF, broken); }).find("$.mult: missing"), std::string::npos);
}

TEST(JsonIo, VerdictShape) {
  const auto v = is_pseudomorphism(WindowedMap(0, {0, 1, 2, 4, 5}));
  const auto j = to_json(v);
  EXPECT_EQ(j["holds"], false);
  EXPECT_EQ(j["window_certified"], true);
  EXPECT_TRUE(j["witness"].is_array());
  EXPECT_TRUE(to_json(is_pseudomorphism(WindowedMap::identity(0, 2)))["witness"].is_null());
}

}  // namespace
