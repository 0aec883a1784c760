#include <gtest/gtest.h>

#include <cmath>
#include <json.hpp>
#include <limits>

#include "symgf/errors.hpp"
#include "symgf/io.hpp"

using namespace symgf;

TEST(Io, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 1e-17}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "null");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "null");
}

TEST(Io, WriterProducesValidJson) {
  JsonWriter w;
  const Vec v{1.0, 0.5};
  w.begin_object();
  w.key("a").value(1);
  w.key("b").value(std::span<const double>(v));
  w.key("c").begin_array().value("x\"y").value(true).null().end_array();
  w.key("d").begin_object().end_object();
  w.end_object();
  const auto j = nlohmann::json::parse(w.str());
  EXPECT_EQ(j["a"], 1);
  EXPECT_EQ(j["b"][1], 0.5);
  EXPECT_EQ(j["c"][0], "x\"y");
  EXPECT_TRUE(j["c"][2].is_null());
  EXPECT_TRUE(j["d"].empty());
}

TEST(Io, WriterRejectsMisuse) {
  JsonWriter w;
  w.begin_object();
  EXPECT_THROW(w.value(1), ArgumentError);
  EXPECT_THROW(w.end_array(), ArgumentError);
}

TEST(Io, ReportSchema) {
  VerificationReport r;
  r.axiom = "unit";
  r.max = 0.25;
  r.mean = 0.125;
  r.n = 2;
  r.tol = 1e-12;
  r.failure_count = 1;
  r.failures.push_back({{0.1, 0.2}, 0.25, ""});
  r.bracket_sign = 1;
  r.info.emplace_back("k", 3.0);
  const auto j = nlohmann::json::parse(to_json(r));
  EXPECT_EQ(j["axiom"], "unit");
  EXPECT_EQ(j["max"], 0.25);
  EXPECT_EQ(j["mean"], 0.125);
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(j["failures"][0]["point"][1], 0.2);
  EXPECT_EQ(j["failures"][0]["residual"], 0.25);
  EXPECT_EQ(j["bracket_sign"], 1);
  EXPECT_EQ(j["passed"], false);
  EXPECT_EQ(j["info"]["k"], 3.0);
}

TEST(Io, ParseMonoidGenfun) {
  const auto g = parse_genfun(R"({"d": 1, "terms": [
      {"coeff": 1, "p1": [1], "p2": [0], "x": [1]},
      {"coeff": 1, "p1": [0], "p2": [1], "x": [1]}]})");
  EXPECT_TRUE(g.monoid);
  EXPECT_EQ(g.d, 1);
  const MonoidGenFun s = g.as_monoid();
  EXPECT_DOUBLE_EQ(s.value(Vec{2.0}, Vec{3.0}, Vec{0.5}), 2.5);
}

TEST(Io, ParseGeneralGenfun) {
  const auto g = parse_genfun(R"({"m": 1, "n": 2, "terms": [
      {"coeff": 2, "p": [1], "x": [2, 0]}]})");
  EXPECT_FALSE(g.monoid);
  EXPECT_DOUBLE_EQ(g.genfun.value(Vec{1.0}, Vec{3.0, 5.0}), 18.0);
  EXPECT_THROW(g.as_monoid(), InputError);
}

TEST(Io, ParseErrors) {
  EXPECT_THROW(parse_genfun("{"), InputError);
  EXPECT_THROW(parse_genfun(R"({"d": 1})"), InputError);
  EXPECT_THROW(parse_genfun(R"({"d": 0, "terms": []})"), InputError);
  EXPECT_THROW(parse_genfun(R"({"d": 1, "terms": [{"coeff": 1, "p1": [1], "x": [1]}]})"),
               InputError);
  EXPECT_THROW(parse_genfun(R"({"d": 1, "terms": [{"coeff": "a", "p1": [1], "p2": [0], "x": [1]}]})"),
               InputError);
  EXPECT_THROW(parse_genfun(R"({"d": 1, "terms": [{"coeff": 1, "p1": [0], "p2": [0], "x": [2]}]})"),
               InvalidGenFunError);
  EXPECT_THROW(load_genfun("/nonexistent/file.json"), InputError);
}

TEST(Io, ParsePoisson) {
  const PolyPoisson a = parse_poisson(R"({"d": 3, "terms": [
      {"coeff": 1, "p1": [1,0,0], "p2": [0,1,0], "x": [0,0,1]}]})");
  EXPECT_DOUBLE_EQ(a(Vec{0.0, 0.0, 2.0})(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(a(Vec{0.0, 0.0, 2.0})(1, 0), -2.0);
  EXPECT_THROW(parse_poisson(R"({"d": 2, "terms": [
      {"coeff": 1, "p1": [1,1], "p2": [0,1], "x": [0,0]}]})"),
               InputError);
}

TEST(Io, ParseLie) {
  const LieStructure so3 = parse_lie(R"({"d": 3, "c": [[0,1,2,1],[1,2,0,1],[2,0,1,1]]})");
  EXPECT_DOUBLE_EQ(so3.c(1, 0, 2), -1.0);
  EXPECT_THROW(parse_lie(R"({"d": 3, "c": [[0,1,2,1],[1,0,2,1]]})"), InputError);
  EXPECT_THROW(parse_lie(R"({"d": 3, "c": [[0,1,0,1],[0,2,1,1],[1,2,0,1]]})"), InputError);
  EXPECT_THROW(parse_lie(R"({"d": 3, "c": [[0,3,1,1]]})"), InputError);
}

TEST(Io, ParseMatrix) {
  const Matrix m = parse_matrix(R"({"matrix": [[1, 2], [3, 4]]})");
  EXPECT_DOUBLE_EQ(m(1, 0), 3.0);
  EXPECT_THROW(parse_matrix(R"({"matrix": [[1, 2], [3]]})"), InputError);
  EXPECT_THROW(parse_matrix(R"({"rows": []})"), InputError);
}
