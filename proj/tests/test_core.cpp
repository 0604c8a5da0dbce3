#include <gtest/gtest.h>

#include <sstream>

#include "stallings/core.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace stallings;
using stallings::testing::Rng;
using stallings::testing::uniform;

namespace {
  std::vector<Word> words(std::initializer_list<char const*> ws) {
    std::vector<Word> out;
    for (auto w : ws) {
      out.push_back(parse_word(w));
    }
    return out;
  }

  LabeledCore core(std::initializer_list<char const*> ws, std::size_t r = 2) {
    return LabeledCore::from_words(r, words(ws));
  }
}  // namespace

TEST(Construction, Examples) {
  auto t = core({});
  EXPECT_EQ(t.number_of_vertices(), 1u);
  EXPECT_EQ(t.number_of_arcs(), 0u);
  EXPECT_EQ(t.rank(), 0u);
  EXPECT_TRUE(t.is_trivial());

  auto xy = core({"ab"});
  EXPECT_EQ(xy.number_of_vertices(), 2u);
  EXPECT_EQ(xy.target(0, Letter(0, false)), 1u);
  EXPECT_EQ(xy.target(1, Letter(1, false)), 0u);

  auto a = core({"a", "bAB", "bb"});
  EXPECT_EQ(a.number_of_vertices(), 2u);
  EXPECT_TRUE(a.is_complete());
  EXPECT_EQ(a.target(0, Letter(0, false)), 0u);
  EXPECT_EQ(a.target(1, Letter(0, false)), 1u);
  EXPECT_EQ(a.target(0, Letter(1, false)), 1u);
  EXPECT_EQ(a.target(1, Letter(1, false)), 0u);
}

TEST(Construction, FoldingIsOrderIndependent) {
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    auto gens = stallings::testing::random_generators(rng, 2, uniform(rng, 1, 4), 7);
    auto c    = LabeledCore::from_words(2, gens);
    std::shuffle(gens.begin(), gens.end(), rng);
    for (auto& g : gens) {
      if (rng() % 2) {
        g = inverse(g);
      }
    }
    EXPECT_EQ(LabeledCore::from_words(2, gens), c);
  }
}

TEST(Construction, TableValidation) {
  EXPECT_THROW(LabeledCore::from_table(2, 1, 0, {0, no_vertex, no_vertex, no_vertex}),
               DomainError);
  EXPECT_THROW(LabeledCore::from_table(2, 1, 0, {}), DomainError);
  EXPECT_THROW(LabeledCore(0), DomainError);
}

TEST(Contains, Examples) {
  auto a = core({"a"});
  EXPECT_TRUE(contains(a, {}));
  EXPECT_TRUE(contains(a, parse_word("aaaaa")));
  EXPECT_FALSE(contains(a, parse_word("b")));
  auto h = core({"a", "bAB", "bb"});
  EXPECT_TRUE(contains(h, parse_word("bab")));
  EXPECT_THROW(contains(h, parse_word("c")), DomainError);
}

TEST(Contains, ProductsAreAccepted) {
  Rng        rng(3);
  for (int i = 0; i < 15; ++i) {
    auto gens = stallings::testing::random_generators(rng, 2, 3, 4);
    auto c    = LabeledCore::from_words(2, gens);
    for (Word const& w : stallings::testing::products_up_to(gens, 6)) {
      EXPECT_TRUE(contains(c, w)) << to_string(w);
    }
  }
}

TEST(Contains, ExactOnShortWordsForMiddleLetterSets) {
  Rng        rng(31);
  auto const ws      = stallings::testing::all_reduced_words(2, 6);
  int        checked = 0;
  while (checked < 20) {
    auto gens = stallings::testing::nielsen_shorten(
        stallings::testing::random_generators(rng, 2, 2, 5));
    if (gens.size() != 2 || !stallings::testing::keeps_middle_letters(gens)) {
      continue;
    }
    ++checked;
    auto c    = LabeledCore::from_words(2, gens);
    auto prod = stallings::testing::products_up_to(gens, 6);
    for (Word const& w : ws) {
      EXPECT_EQ(contains(c, w), prod.count(w) > 0) << to_string(w);
    }
  }
}

TEST(Index, Examples) {
  EXPECT_EQ(index(core({"a", "b"})), Degree(1));
  EXPECT_EQ(index(core({"a", "bAB", "bb"})), Degree(2));
  EXPECT_FALSE(index(core({"a"})).is_finite());
  EXPECT_EQ(index(core({"a"})).to_string(), "infinite");
  // rank 1 ambient group
  EXPECT_EQ(index(core({"aaa"}, 1)), Degree(3));
  EXPECT_FALSE(index(core({}, 1)).is_finite());
}

TEST(Index, AgreesWithPermutationOrbits) {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    std::size_t r     = uniform(rng, 1, 3);
    auto        perms = stallings::testing::random_action(rng, r, uniform(rng, 1, 9));
    auto        c     = stallings::testing::action_core(perms);
    EXPECT_EQ(index(c), Degree(stallings::testing::orbit_size(perms)));
    // rebuild from its Schreier basis by folding
    auto again = LabeledCore::from_words(r, schreier_basis(c));
    EXPECT_EQ(again, c);
    for (int k = 0; k < 20; ++k) {
      Word w = stallings::testing::random_word(rng, r, uniform(rng, 0, 10));
      EXPECT_EQ(contains(c, w), stallings::testing::fixes_zero(perms, w));
    }
  }
}

TEST(SchreierBasis, Examples) {
  EXPECT_EQ(schreier_basis(core({"a"})), words({"a"}));
  EXPECT_TRUE(schreier_basis(core({})).empty());
  auto h     = core({"a", "bAB", "bb"});
  auto basis = schreier_basis(h);
  EXPECT_EQ(basis.size(), 3u);
  for (auto const& b : basis) {
    EXPECT_TRUE(contains(h, b));
  }
}

TEST(SchreierBasis, RankAndNielsenSchreier) {
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    auto c     = stallings::testing::random_core(rng, uniform(rng, 1, 3));
    auto basis = schreier_basis(c);
    EXPECT_EQ(basis.size(), c.rank());
    EXPECT_EQ(2 * (c.rank() - 1) + 2 * c.number_of_vertices(),
              2 * c.number_of_arcs());
    for (auto const& b : basis) {
      EXPECT_TRUE(contains(c, b));
    }
    EXPECT_EQ(LabeledCore::from_words(c.ambient_rank(), basis), c);
  }
  for (int i = 0; i < 200; ++i) {
    std::size_t r = uniform(rng, 1, 3);
    auto        c = stallings::testing::action_core(
        stallings::testing::random_action(rng, r, uniform(rng, 1, 8)));
    EXPECT_EQ(c.rank() - 1, c.number_of_vertices() * (r - 1));
  }
}

TEST(Rebase, ConjugationMovesTheBasepoint) {
  Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    auto c = stallings::testing::random_core(rng);
    Word g = stallings::testing::random_reduced_word(rng, 2, uniform(rng, 0, 4));
    auto m = rebase(c, g);
    for (int k = 0; k < 20; ++k) {
      Word w = stallings::testing::random_reduced_word(rng, 2, uniform(rng, 0, 8));
      EXPECT_EQ(contains(m, w), contains(c, g * w * inverse(g)));
    }
  }
}

TEST(CoreText, RoundTrip) {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    auto        c = stallings::testing::random_core(rng, uniform(rng, 1, 3));
    std::string s = to_string(c);
    EXPECT_EQ(core_from_string(s), c);
  }
  EXPECT_EQ(to_string(core({"ab"})),
            "core r=2 n=2 base=0\nedge 0 a+ 1\nedge 1 b+ 0\n");
  EXPECT_THROW(core_from_string("core r=2 n=1 base=0\nedge 0 q+ 0\n"), ParseError);
  EXPECT_THROW(core_from_string("cor r=2\n"), ParseError);
}

TEST(CoreGraph, ImmersionShape) {
  auto cg = to_graph(core({"a", "bAB", "bb"}));
  EXPECT_EQ(cg.graph.number_of_vertices(), 2u);
  EXPECT_EQ(cg.graph.number_of_arcs(), 4u);
  EXPECT_EQ(rank(cg.graph), 3u);
}
