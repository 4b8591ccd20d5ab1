#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "latticecalc/descriptors.hpp"
#include "latticecalc/error.hpp"
#include "latticecalc/orlicz.hpp"

using namespace latcalc;

TEST(Expression, Grammar) {
  EXPECT_DOUBLE_EQ(parse_expression("u^2")(3.0), 9.0);
  EXPECT_DOUBLE_EQ(parse_expression("2*u^3 + u")(2.0), 18.0);
  EXPECT_DOUBLE_EQ(parse_expression("2^3^2")(0.0), 512.0);
  EXPECT_DOUBLE_EQ(parse_expression("-(u - 1) / 2")(5.0), -2.0);
  EXPECT_NEAR(parse_expression("exp(u) - 1 - u")(1.0), std::exp(1.0) - 2.0, 1e-15);
  EXPECT_NEAR(parse_expression("u^2.5")(2.0), std::pow(2.0, 2.5), 1e-15);
}

TEST(Expression, Diagnostics) {
  EXPECT_THROW(parse_expression("u +"), InputError);
  EXPECT_THROW(parse_expression("(u"), InputError);
  EXPECT_THROW(parse_expression("log(u)"), InputError);
  EXPECT_THROW(parse_expression("u u"), InputError);
  try {
    parse_expression("u * $");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("position"), std::string::npos);
  }
}

TEST(Orlicz, ValidationAndUnitLevel) {
  const auto phi = OrliczFunction::from_expression("u^2");
  EXPECT_EQ(phi(0.0), 0.0);
  EXPECT_NEAR(phi.unit_level(), 1.0, 1e-15);
  EXPECT_NEAR(OrliczFunction::from_expression("4*u^2").unit_level(), 0.5, 1e-15);
  EXPECT_THROW(OrliczFunction::from_expression("u^2 + 1"), InputError);
  EXPECT_THROW(OrliczFunction::from_expression("0*u"), InputError);
}

TEST(Family, JsonRoundTrip) {
  const Json descriptors[] = {
      Json::parse(R"({"kind":"lp","p":2})"),
      Json::parse(R"({"kind":"lp","p":"inf"})"),
      Json::parse(R"({"kind":"weighted_lp","p":1,"weights":[2,1]})"),
      Json::parse(R"({"kind":"orlicz","phi":"u^2"})"),
  };
  const std::vector<double> t{3, 4};
  for (const auto& d : descriptors) {
    const auto f = family_from_json(d);
    const auto g = family_from_json(to_json(f));
    EXPECT_EQ(f.label(), g.label());
    EXPECT_EQ(f.norm(t), g.norm(t));
  }
  EXPECT_DOUBLE_EQ(family_from_json(descriptors[2]).norm(std::vector<double>{1, 1}), 3.0);
}

TEST(Family, JsonErrors) {
  EXPECT_THROW(family_from_json(Json::parse(R"({"kind":"lq"})")), InputError);
  EXPECT_THROW(family_from_json(Json::parse(R"({"kind":"lp"})")), InputError);
  EXPECT_THROW(family_from_json(Json::parse(R"({"kind":"lp","p":0.5})")), InputError);
  EXPECT_THROW(family_from_json(Json::parse(R"({"kind":"weighted_lp","p":1,"weights":[1,-1]})")),
               InputError);
  EXPECT_THROW(family_from_json(Json::parse(R"([1,2])")), InputError);
}

TEST(Csv, ParsesRowMajor) {
  const auto rows = parse_csv("1,2,3\n4, 5 ,6\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1], (std::vector<double>{4, 5, 6}));
  EXPECT_THROW(parse_csv("1,x\n"), InputError);
}

TEST(Operator, FromJsonAndFile) {
  const auto dir = std::filesystem::temp_directory_path() / "latticecalc_descriptor_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "T.csv") << "1,2\n3,4\n5,6\n";
  const Json desc = Json::parse(R"({"matrix_file":"T.csv",
      "domain":{"dim":2,"norm":{"kind":"lp","p":2}},
      "codomain":{"dim":3,"norm":{"kind":"lp","p":1}}})");
  const auto t = operator_from_json(desc, dir);
  EXPECT_EQ(t.matrix.rows(), 3u);
  EXPECT_EQ(t.matrix(2, 1), 6.0);
  const auto back = operator_from_json(to_json(t));
  EXPECT_EQ(back.matrix, t.matrix);
  Json bad = desc;
  bad["codomain"]["dim"] = 2;
  EXPECT_THROW(operator_from_json(bad, dir), InputError);
  std::filesystem::remove_all(dir);
}

TEST(Digest, StableAndSensitive) {
  const Json a = Json::parse(R"({"x":[1,2],"y":"l2"})");
  const Json b = Json::parse(R"({"y":"l2","x":[1,2]})");
  EXPECT_EQ(inputs_digest(a), inputs_digest(b));
  EXPECT_EQ(inputs_digest(a).size(), 16u);
  EXPECT_NE(inputs_digest(a), inputs_digest(Json::parse(R"({"x":[1,3],"y":"l2"})")));
}

TEST(Numbers, Infinity) {
  EXPECT_TRUE(std::isinf(json_number(Json("inf"), "p")));
  EXPECT_EQ(number_to_json(INFINITY), Json("inf"));
  EXPECT_EQ(number_to_json(2.5), Json(2.5));
}
