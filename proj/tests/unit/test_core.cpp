#include <gtest/gtest.h>

#include "ppm/core.hpp"
#include "support.hpp"

using namespace ppm;
using namespace ppm::testing;

TEST(Rational, ParsesDecimalsExactly) {
  EXPECT_EQ(parse_rational("0.1"), make_rational(1, 10));
  EXPECT_EQ(parse_rational("1e-3"), make_rational(1, 1000));
  EXPECT_EQ(parse_rational("-2.50"), make_rational(-5, 2));
  EXPECT_EQ(parse_rational("0.0033448"), make_rational(33448, 10000000));
  EXPECT_EQ(parse_rational("1/3"), make_rational(1, 3));
  EXPECT_EQ(error_kind([] { parse_rational("1/0"); }), ErrorKind::Parse);
  EXPECT_EQ(error_kind([] { parse_rational("abc"); }), ErrorKind::Parse);
  EXPECT_EQ(error_kind([] { parse_rational("1.2.3"); }), ErrorKind::Parse);
}

TEST(Rational, TextRoundTrip) {
  for (const char* s : {"0", "1", "0.25", "-3.125", "1/3", "22/7", "123456789.000001"}) {
    const Rational v = parse_rational(s);
    EXPECT_EQ(parse_rational(to_text(v)), v) << s;
  }
  EXPECT_EQ(to_text(make_rational(1, 4)), "0.25");
  EXPECT_EQ(to_text(make_rational(1, 3)), "1/3");
  EXPECT_TRUE(is_short_decimal(make_rational(1, 8)));
  EXPECT_FALSE(is_short_decimal(make_rational(1, 3)));
  EXPECT_EQ(from_double(0.5), make_rational(1, 2));
  EXPECT_EQ(ceil_to_decimal(make_rational(1, 3), 2), make_rational(34, 100));
  EXPECT_EQ(floor_to_decimal(make_rational(1, 3), 2), make_rational(33, 100));
}

TEST(ValidateTensor, Examples) {
  EXPECT_NO_THROW(validate_tensor(tensor({{{"0.6", "0.4"}}})));
  EXPECT_EQ(error_kind([] { validate_tensor(tensor({{{"0.6", "0.5"}}})); }),
            ErrorKind::RowSumMismatch);
  EXPECT_EQ(error_kind([] { validate_tensor(tensor({{{"1.2", "-0.2"}}})); }),
            ErrorKind::NegativeEntry);
}

TEST(ValidateTensor, ShapeErrors) {
  EXPECT_EQ(error_kind([] {
              StateTable({2, 2}, {{{Rational(1), Rational(0)}}});
            }),
            ErrorKind::ShapeMismatch);
}

TEST(StateTree, RejectsBadParents) {
  EXPECT_EQ(error_kind([] { StateTree({0, 0}); }), ErrorKind::InvalidStateTree);
  EXPECT_EQ(error_kind([] { StateTree({-1, 2, 1}); }), ErrorKind::InvalidStateTree);
  EXPECT_EQ(error_kind([] { StateTree({-1, 5}); }), ErrorKind::InvalidStateTree);
  EXPECT_EQ(error_kind([] { StateTree(std::vector<int>{}); }), ErrorKind::InvalidStateTree);
}

TEST(DescendantSet, Examples) {
  EXPECT_EQ(descendant_set(chain(3), 1).states, (std::vector<int>{1, 2}));
  EXPECT_EQ(descendant_set(chain(3), 0).states, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(descendant_set(star(3), 1).states, (std::vector<int>{1}));
  EXPECT_EQ(error_kind([] { descendant_set(star(3), 3); }), ErrorKind::UnknownState);
}

TEST(CumulativeFrequency, Examples) {
  const auto f = tensor({{{"0.5", "0.3", "0.2"}}});
  EXPECT_EQ(cumulative_frequency(f, 0, descendant_set(chain(3), 1)), q("0.5"));
  EXPECT_EQ(cumulative_frequency(f, 0, descendant_set(chain(3), 0)), q("1"));
  const auto g = tensor({{{"1", "0", "0"}}});
  EXPECT_EQ(cumulative_frequency(g, 0, descendant_set(star(3), 2)), q("0"));
}

TEST(CloneTree, NormalizesAndValidates) {
  const CloneTree t({{CharStatePair::of(0, 0), CharStatePair::of(0, 1)}});
  EXPECT_TRUE(t.contains(CharStatePair::of(0, 1)));
  EXPECT_EQ(t.parent(CharStatePair::of(0, 1)), CharStatePair::root());
  EXPECT_EQ(error_kind([] { tree({{"root", "0:1"}, {"1:1", "0:1"}, {"root", "1:1"}}); }),
            ErrorKind::InvalidTree);
  EXPECT_EQ(error_kind([] { tree({{"0:1", "1:1"}}); }), ErrorKind::InvalidTree);
  EXPECT_EQ(error_kind([] { tree({{"root", "0:1"}, {"1:1", "2:1"}, {"2:1", "1:1"}}); }),
            ErrorKind::InvalidTree);
}

TEST(CloneTree, Consistency) {
  const StateTreeSet s{chain(3)};
  EXPECT_TRUE(is_consistent(tree({{"root", "0:1"}, {"0:1", "0:2"}}), s));
  EXPECT_FALSE(is_consistent(tree({{"root", "0:2"}, {"0:2", "0:1"}}), s));
  EXPECT_FALSE(is_consistent(tree({{"root", "0:1"}, {"root", "0:2"}}), s));
  // A chain through another character still finds the nearest c-labelled ancestor.
  const StateTreeSet s2{chain(3), chain(2)};
  EXPECT_TRUE(is_consistent(tree({{"root", "0:1"}, {"0:1", "1:1"}, {"1:1", "0:2"}}), s2));
  EXPECT_EQ(error_kind([&] { require_consistent(tree({{"root", "0:2"}}), s); }),
            ErrorKind::InconsistentTree);
}

TEST(CloneTree, Completeness) {
  const std::vector<int> counts{3, 2};
  EXPECT_TRUE(is_complete(tree({{"root", "0:1"}, {"0:1", "0:2"}, {"root", "1:1"}}), counts));
  EXPECT_FALSE(is_complete(tree({{"root", "0:1"}, {"root", "1:1"}}), counts));
}

TEST(TreeToMatrix, Examples) {
  const std::vector<int> one{2};
  EXPECT_EQ(tree_to_matrix(tree({{"root", "0:1"}}), one),
            (std::vector<std::vector<int>>{{0}, {1}}));
  const std::vector<int> two{2, 2};
  EXPECT_EQ(tree_to_matrix(tree({{"root", "0:1"}, {"root", "1:1"}}), two),
            (std::vector<std::vector<int>>{{0, 0}, {1, 0}, {0, 1}}));
}

TEST(TreeToMatrix, TwoCharactersThreeStates) {
  // Chain 0->1->2 for the first character, star for the second.
  const auto t = tree({{"root", "0:1"}, {"0:1", "1:1"}, {"1:1", "0:2"}, {"root", "1:2"}});
  const std::vector<int> counts{3, 3};
  EXPECT_EQ(tree_to_matrix(t, counts),
            (std::vector<std::vector<int>>{{0, 0}, {1, 0}, {2, 1}, {1, 1}, {0, 2}}));
  EXPECT_EQ(error_kind([&] { tree_to_matrix(tree({{"root", "0:1"}}), counts); }),
            ErrorKind::IncompleteTree);
}

TEST(Intervals, Validation) {
  auto f = tensor({{{"0.6", "0.4"}}});
  auto iv = point_intervals(f);
  EXPECT_EQ(iv.upper(0, 0, 0), 1);
  EXPECT_NO_THROW(validate_intervals(iv));
  iv.lower(0, 0, 1) = q("0.5");
  EXPECT_EQ(error_kind([&] { validate_intervals(iv); }), ErrorKind::InvalidInterval);
}
