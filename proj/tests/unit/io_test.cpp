#include <gtest/gtest.h>

#include "quadrm/error.hpp"
#include "quadrm/io.hpp"

namespace quadrm {
namespace {

TEST(Json, CensusTableSchema) {
  const auto j = to_json(census_formula(2, 2));
  EXPECT_EQ(j.at("q"), 2);
  EXPECT_EQ(j.at("m"), 2);
  ASSERT_EQ(j.at("entries").size(), 4u);
  const auto& first = j.at("entries")[0];
  EXPECT_EQ(first.at("rank"), 0);
  EXPECT_EQ(first.at("type"), "plus");
  EXPECT_EQ(first.at("count"), "1");
  EXPECT_EQ(to_json(census_formula(3, 3)).at("entries")[1].at("type"), "odd_total");
}

TEST(Json, SpectrumSchema) {
  const CosetQuery query{3, 2, {1, FormType::Plus}, CosetClass::Square};
  const auto j = to_json(query, spectrum_for(query));
  EXPECT_EQ(j.at("rank"), 1);
  EXPECT_EQ(j.at("type"), "plus");
  EXPECT_EQ(j.at("c_class"), "square");
  EXPECT_EQ(j.at("population"), "9");
  EXPECT_EQ(j.at("entries")[0].at("value"), "0");
  EXPECT_EQ(j.at("entries")[0].at("multiplicity"), "1");
}

TEST(Json, DistributionSchemaAndRoundTrip) {
  const WeightDistribution wd = prm2_distribution(3, 4);
  const auto j = to_json(wd);
  EXPECT_EQ(j.at("family"), "prm2");
  EXPECT_EQ(j.at("n"), 121);
  EXPECT_EQ(j.at("k"), 15);
  EXPECT_EQ(j.at("d"), 54);
  bool found = false;
  for (const auto& row : j.at("distribution")) {
    if (row.at("weight") == 81) {
      EXPECT_EQ(row.at("frequency"), "9740258");
      found = true;
    }
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(distribution_from_json(nlohmann::json::parse(j.dump())), wd);
  // Big frequencies survive as strings.
  const WeightDistribution big = rm2_distribution(9, 6);
  EXPECT_EQ(distribution_from_json(nlohmann::json::parse(to_json(big).dump())), big);
}

TEST(Json, MalformedDistribution) {
  EXPECT_THROW(distribution_from_json(nlohmann::json::parse(R"({"family":"rm2"})")), Error);
  EXPECT_THROW(distribution_from_json(nlohmann::json::parse(
                   R"({"family":"rm2","q":2,"m":2,"n":4,"k":4,"d":1,"distribution":[{"weight":0,"frequency":"x"}]})")),
               Error);
}

TEST(Csv, AscendingRows) {
  EXPECT_EQ(to_csv(hrm2_distribution(3, 2)), "weight,frequency\n0,1\n4,12\n6,8\n8,6\n");
}

}  // namespace
}  // namespace quadrm
