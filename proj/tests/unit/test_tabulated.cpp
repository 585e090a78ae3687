#include <probo/error.hpp>
#include <probo/tabulated.hpp>

#include <gtest/gtest.h>

#include <sstream>

namespace probo {
namespace {

TabulatedTarget parse(const std::string& text) {
  std::istringstream in(text);
  return parse_tabulated(in);
}

TEST(Tabulated, LinearMidpoint) {
  const TabulatedTarget t({0.0, 1.0}, {0.0, 2.0});
  EXPECT_EQ(t.evaluate(0.5), 1.0);
  EXPECT_EQ(t.evaluate(0.25), 0.5);
}

TEST(Tabulated, ExactAtKnotsAndSortsInput) {
  const TabulatedTarget t({3.0, 1.0, 2.0, 0.5}, {9.0, -1.0, 4.0, 0.1});
  EXPECT_EQ(t.x(), (std::vector<double>{0.5, 1.0, 2.0, 3.0}));
  EXPECT_EQ(t.evaluate(0.5), 0.1);
  EXPECT_EQ(t.evaluate(1.0), -1.0);
  EXPECT_EQ(t.evaluate(2.0), 4.0);
  EXPECT_EQ(t.evaluate(3.0), 9.0);
  EXPECT_EQ(t.y_min(), -1.0);
  EXPECT_EQ(t.y_max(), 9.0);
}

TEST(Tabulated, OutsideTheDataIsAnError) {
  const TabulatedTarget t({0.0, 1.0}, {0.0, 2.0});
  EXPECT_THROW(t.evaluate(-1e-9), InvalidArgument);
  EXPECT_THROW(t.evaluate(1.0 + 1e-9), InvalidArgument);
}

TEST(Tabulated, RejectsBadData) {
  EXPECT_THROW(TabulatedTarget({0.0}, {1.0}), InvalidArgument);
  EXPECT_THROW(TabulatedTarget({0.0, 0.0}, {1.0, 2.0}), InvalidArgument);
  EXPECT_THROW(TabulatedTarget({0.0, 1.0}, {1.0}), InvalidArgument);
}

TEST(Tabulated, TargetNegatesForMaximization) {
  const TabulatedTarget t({0.0, 1.0, 2.0}, {0.1, 5.5, 2.0});
  const auto min_t = t.as_target("g");
  const auto max_t = t.as_target("g", true);
  const Point mid = Point::Constant(1, 1.0);
  EXPECT_EQ(min_t.evaluate(view(mid)), 5.5);
  EXPECT_EQ(max_t.evaluate(view(mid)), -5.5);
  EXPECT_EQ(*max_t.known_optimum, -5.5);
  EXPECT_EQ((*max_t.known_minimizer)(0), 1.0);
  EXPECT_EQ(*min_t.known_optimum, 0.1);
  EXPECT_EQ(max_t.bounds.lower()(0), 0.0);
  EXPECT_EQ(max_t.bounds.upper()(0), 2.0);
}

TEST(TabulatedCsv, HeaderSelectsColumnsByName) {
  const auto t = parse("id,y,x\n1,10,0\n2,20,1\n3,15,2\n");
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(t.evaluate(1.0), 20.0);
}

TEST(TabulatedCsv, HeaderlessUsesFirstTwoColumns) {
  const auto t = parse("0, 1\n\n2, 3\n");
  EXPECT_EQ(t.evaluate(1.0), 2.0);
}

TEST(TabulatedCsv, RejectsMalformedInput) {
  for (const char* text : {"", "x,y\n", "x,y\n1,2\n", "x,y\n1,2\n3,abc\n", "x,y\n1,2\n3\n", "a,b\n1,2\n3,4\n",
                           "1\n2\n", "x,y\n1,2\n1,3\n"}) {
    EXPECT_THROW(parse(text), InvalidArgument) << '"' << text << '"';
  }
}

TEST(TabulatedCsv, MissingFile) {
  EXPECT_THROW(load_tabulated_target("/nonexistent/probo.csv"), InvalidArgument);
}

}  // namespace
}  // namespace probo
