#include <gtest/gtest.h>

#include "stallings/word.hpp"
#include "support/random.hpp"

using namespace stallings;

TEST(Word, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_word("aBc")), "aBc");
  EXPECT_EQ(to_string(parse_word(" a b ")), "ab");
  EXPECT_TRUE(parse_word("1").empty());
  EXPECT_TRUE(parse_word("").empty());
  EXPECT_EQ(to_string(Word{}), "1");
  Word w = parse_word("aB");
  EXPECT_EQ(w[0], Letter(0, false));
  EXPECT_EQ(w[1], Letter(1, true));
}

TEST(Word, ParseErrorsNameTheCharacter) {
  try {
    parse_word("ab^-1");
    FAIL();
  } catch (ParseError const& e) {
    EXPECT_NE(std::string(e.what()).find("'^'"), std::string::npos);
  }
  EXPECT_THROW(parse_word("a1"), ParseError);
  EXPECT_THROW(parse_word("11"), ParseError);
}

TEST(Word, Reduction) {
  EXPECT_EQ(to_string(reduce(parse_word("abBA"))), "1");
  EXPECT_EQ(to_string(reduce(parse_word("aabBc"))), "aac");
  EXPECT_TRUE(is_reduced(parse_word("abAB")));
  EXPECT_FALSE(is_reduced(parse_word("aA")));
  EXPECT_EQ(to_string(parse_word("ab") * parse_word("Bc")), "ac");
}

TEST(Word, GroupLaws) {
  stallings::testing::Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    Word x = stallings::testing::random_word(rng, 3, stallings::testing::uniform(rng, 0, 8));
    Word y = stallings::testing::random_word(rng, 3, stallings::testing::uniform(rng, 0, 8));
    Word z = stallings::testing::random_word(rng, 3, stallings::testing::uniform(rng, 0, 8));
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_TRUE((x * inverse(x)).empty());
    EXPECT_EQ(reduce(reduce(x)), reduce(x));
    EXPECT_EQ(inverse(inverse(x)), x);
  }
}

TEST(Word, Alphabet) {
  EXPECT_NO_THROW(check_alphabet(parse_word("abAB"), 2));
  EXPECT_THROW(check_alphabet(parse_word("c"), 2), DomainError);
}
