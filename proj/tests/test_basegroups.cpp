#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"

using namespace gpw;

TEST(BaseGroups, IntegerArithmetic) {
  const BaseGroup z = BaseGroup::integer();
  EXPECT_EQ(z.multiply(BaseElement{3}, BaseElement{-3}), std::nullopt);
  EXPECT_EQ(z.multiply(BaseElement{3}, BaseElement{4})->code, 7);
  EXPECT_EQ(z.invert(BaseElement{5}).code, -5);
  EXPECT_EQ(z.power(BaseElement{2}, BigInt(-7))->code, -14);
  EXPECT_EQ(z.power(BaseElement{2}, 0), std::nullopt);
  EXPECT_FALSE(z.has_involution());
  EXPECT_FALSE(z.contains(BaseElement{0}));
}

TEST(BaseGroups, IntegerOrder) {
  const BaseGroup z = BaseGroup::integer();
  EXPECT_TRUE(z.less(BaseElement{1}, BaseElement{-1}));
  EXPECT_TRUE(z.less(BaseElement{-1}, BaseElement{2}));
  EXPECT_FALSE(z.less(BaseElement{2}, BaseElement{-1}));
}

TEST(BaseGroups, CyclicOdd) {
  const BaseGroup g = BaseGroup::cyclic_odd(3);
  EXPECT_EQ(g.multiply(BaseElement{1}, BaseElement{2}), std::nullopt);
  EXPECT_EQ(g.invert(BaseElement{1}).code, 2);
  // 10^18 = 1 mod 3
  const BigInt big = BigInt(1000000000000000000LL);
  EXPECT_EQ(g.power(BaseElement{1}, big), BaseElement{1});
  EXPECT_EQ(g.power(BaseElement{1}, big - 1), std::nullopt);
  EXPECT_EQ(g.multiply(g.power(BaseElement{1}, big), g.power(BaseElement{1}, BigInt(-1))), std::nullopt);
  EXPECT_FALSE(g.has_involution());
  EXPECT_THROW(BaseGroup::cyclic_odd(4), MalformedDescriptor);
  EXPECT_THROW(BaseGroup::cyclic_odd(1), MalformedDescriptor);
}

TEST(BaseGroups, CyclicPowerMatchesRepeatedProduct) {
  for (int q : {3, 5, 7, 9}) {
    const BaseGroup g = BaseGroup::cyclic_odd(q);
    for (int a = 1; a < q; ++a) {
      MaybeElement acc;
      for (int x = 0; x < 3 * q; ++x) {
        EXPECT_EQ(g.power(BaseElement{a}, x), acc) << q << " " << a << " " << x;
        acc = g.multiply(acc, BaseElement{a});
      }
    }
  }
}

TEST(BaseGroups, TableParsing) {
  std::istringstream in("# Z/2\ne s\ne s\ns e\n");
  const BaseGroup g = BaseGroup::parse_table(in);
  EXPECT_EQ(g.order(), 2u);
  EXPECT_TRUE(g.has_involution());
  EXPECT_EQ(g.element_text(BaseElement{1}), "s");
  std::istringstream bad("e s\ne s\ns s\n");
  EXPECT_THROW(BaseGroup::parse_table(bad), ParseError);
  std::istringstream missing("e s\ne s\n");
  try {
    BaseGroup::parse_table(missing);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(BaseGroups, TableValidationRejectsNonAssociative) {
  // A Latin square with identity that is not associative (order 5 loop).
  std::vector<std::vector<std::size_t>> t = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  EXPECT_THROW(BaseGroup::finite_table({"e", "a", "b", "c", "d"}, t), MalformedDescriptor);
}

TEST(BaseGroups, TablePowerMatchesRepeatedProduct) {
  const BaseGroup g = BaseGroup::load_table(std::string(GPW_DATA_DIR) + "/z5.table");
  EXPECT_FALSE(g.has_involution());
  for (int a = 1; a < 5; ++a) {
    MaybeElement acc;
    for (int x = 0; x < 12; ++x) {
      EXPECT_EQ(g.power(BaseElement{a}, x), acc);
      EXPECT_EQ(g.power(BaseElement{a}, -x), acc ? MaybeElement(g.invert(*acc)) : std::nullopt);
      acc = g.multiply(acc, BaseElement{a});
    }
  }
}
