#include <gtest/gtest.h>

#include <sstream>

#include "stallings/lattice_ops.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace stallings;
using stallings::testing::Rng;
using stallings::testing::uniform;

namespace {
  LabeledCore core(std::initializer_list<char const*> ws) {
    std::vector<Word> gens;
    for (auto w : ws) {
      gens.push_back(parse_word(w));
    }
    return LabeledCore::from_words(2, gens);
  }

  // Both projections commute with every labelled edge of the product.
  bool projections_are_label_preserving(PullbackResult const& res,
                                        LabeledCore const&    c1,
                                        LabeledCore const&    c2) {
    auto p1 = pullback_projection(res, 1);
    auto p2 = pullback_projection(res, 2);
    for (std::size_t p = 0; p < res.number_of_vertices(); ++p) {
      for (std::size_t l = 0; l < 2 * res.r; ++l) {
        std::size_t q = res.target(p, l);
        if (q == no_vertex) {
          continue;
        }
        if (c1.target(p1[p], l) != p1[q] || c2.target(p2[p], l) != p2[q]) {
          return false;
        }
      }
    }
    return true;
  }
}  // namespace

TEST(Pullback, Examples) {
  auto a   = core({"a"});
  auto aa  = pullback(a, a);
  EXPECT_EQ(aa.pointed().rank, 1u);
  EXPECT_EQ(component_core(aa, 0), a);

  auto ab = pullback(a, core({"b"}));
  EXPECT_EQ(ab.pointed().rank, 0u);
  EXPECT_TRUE(ab.pointed().is_tree);

  auto c  = core({"aa", "b"});
  auto pa = pullback(c, a);
  EXPECT_EQ(component_core(pa, 0), core({"aa"}));
  auto i = intersect(c, a);
  EXPECT_TRUE(contains(i, parse_word("aa")));
  EXPECT_FALSE(contains(i, parse_word("a")));

  EXPECT_THROW(pullback(a, LabeledCore::from_words(3, {parse_word("a")})), DomainError);
}

TEST(Pullback, Structure) {
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    auto c1  = stallings::testing::random_core(rng);
    auto c2  = stallings::testing::random_core(rng);
    auto res = pullback(c1, c2);
    EXPECT_LE(res.number_of_vertices(),
              c1.number_of_vertices() * c2.number_of_vertices());
    EXPECT_TRUE(res.pointed().is_pointed);
    EXPECT_EQ(res.component_of[res.vertex(0, 0)], 0u);
    EXPECT_TRUE(projections_are_label_preserving(res, c1, c2));
    std::size_t total = 0;
    for (auto const& pc : res.components) {
      total += pc.vertices.size();
      EXPECT_EQ(pc.is_tree, pc.rank == 0);
      if (!pc.is_tree) {
        // the component's core keeps the rank
        EXPECT_EQ(component_core(res, pc.id).rank(), pc.rank);
      }
    }
    EXPECT_EQ(total, res.number_of_vertices());
  }
}

TEST(Intersect, Examples) {
  auto full = core({"a", "b"});
  Rng  rng(2);
  for (int i = 0; i < 20; ++i) {
    auto x = stallings::testing::random_core(rng);
    EXPECT_EQ(intersect(x, full), x);
    EXPECT_EQ(intersect(full, x), x);
  }
  EXPECT_TRUE(intersect(core({"a"}), core({"b"})).is_trivial());
  auto p = core({"a", "bAB", "bb"});
  auto q = core({"b", "aBA", "aa"});
  auto m = intersect(p, q);
  // both have index 2 and differ, so the intersection has index 4
  EXPECT_EQ(index(m), Degree(4));
  EXPECT_EQ(m.rank(), 5u);
}

TEST(Intersect, LanguageLaw) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    auto c1 = stallings::testing::random_core(rng);
    auto c2 = stallings::testing::random_core(rng);
    auto m  = intersect(c1, c2);
    for (int k = 0; k < 50; ++k) {
      Word w = stallings::testing::random_reduced_word(rng, 2, uniform(rng, 0, 8));
      EXPECT_EQ(contains(m, w), contains(c1, w) && contains(c2, w));
    }
    for (Word const& b : schreier_basis(m)) {
      EXPECT_TRUE(contains(c1, b));
      EXPECT_TRUE(contains(c2, b));
    }
  }
}

TEST(Join, Examples) {
  EXPECT_EQ(join(core({"a"}), core({"b"})), core({"a", "b"}));
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    auto x = stallings::testing::random_core(rng);
    EXPECT_EQ(join(x, core({})), x);
  }
  auto j = join(core({"aa"}), core({"baaB"}));
  EXPECT_EQ(j.rank(), 2u);
  EXPECT_FALSE(contains(j, parse_word("a")));
  EXPECT_TRUE(contains(j, parse_word("aa")));
  EXPECT_FALSE(contains(j, parse_word("baB")));
}

TEST(Join, GeneratedSubgroup) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    auto g1 = stallings::testing::random_generators(rng, 2, uniform(rng, 1, 3), 6);
    auto g2 = stallings::testing::random_generators(rng, 2, uniform(rng, 1, 3), 6);
    auto all = g1;
    all.insert(all.end(), g2.begin(), g2.end());
    auto c1 = LabeledCore::from_words(2, g1);
    auto c2 = LabeledCore::from_words(2, g2);
    auto j  = join(c1, c2);
    EXPECT_EQ(j, LabeledCore::from_words(2, all));
    // absorption
    EXPECT_EQ(intersect(c1, j), c1);
    EXPECT_EQ(join(c1, intersect(c1, c2)), c1);
  }
}

TEST(DoubleCosets, Examples) {
  auto a   = core({"a", "bAB", "bb"});
  auto res = pullback(a, a);
  auto tags = double_coset_tags(res, a, a);
  ASSERT_EQ(tags.size(), 2u);
  EXPECT_TRUE(tags[0].g.empty());
  EXPECT_EQ(to_string(tags[1].g), "b");
  for (auto const& t : tags) {
    EXPECT_EQ(res.components[t.component].rank, 3u);
  }
  // A ∩ A^b has rank 3: A is normal of index 2
  EXPECT_EQ(intersect(a, rebase(a, parse_word("B"))).rank(), 3u);

  auto x  = core({"a"});
  auto y  = core({"bAB"});
  auto xy = pullback(x, y);
  EXPECT_TRUE(xy.pointed().is_tree);
  auto t = double_coset_tags(xy, x, y);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(to_string(t[0].g), "b");
  EXPECT_EQ(xy.components[t[0].component].rank, 1u);
  EXPECT_THROW(double_coset_tag(xy, x, y, 0), DomainError);
}

TEST(DoubleCosets, TagsConjugateTheComponent) {
  // the component tagged g has fundamental group conjugate to A2 ∩ g A1 g^-1,
  // so its rank equals that of the intersection computed independently
  Rng rng(6);
  for (int i = 0; i < 150; ++i) {
    auto c1   = stallings::testing::random_core(rng, 2, 8);
    auto c2   = stallings::testing::random_core(rng, 2, 8);
    auto res  = pullback(c1, c2);
    auto tags = double_coset_tags(res, c1, c2);
    for (auto const& t : tags) {
      auto conj = rebase(c1, inverse(t.g));  // g A1 g^-1
      EXPECT_EQ(intersect(c2, conj).rank(), res.components[t.component].rank);
      EXPECT_TRUE(same_double_coset(c1, c2, t.g, t.g));
    }
    // moving g within the double coset keeps it
    auto const b1 = schreier_basis(c1);
    auto const b2 = schreier_basis(c2);
    for (auto const& t : tags) {
      Word h = t.g;
      if (!b2.empty()) {
        h = b2[uniform(rng, 0, b2.size() - 1)] * h;
      }
      if (!b1.empty()) {
        h = h * b1[uniform(rng, 0, b1.size() - 1)];
      }
      EXPECT_TRUE(same_double_coset(c1, c2, t.g, h));
    }
  }
}

TEST(Report, Format) {
  auto               x = core({"a"});
  auto               y = core({"bAB"});
  std::ostringstream os;
  write_pullback_report(os, pullback(x, y), x, y);
  EXPECT_EQ(os.str(),
            "component 0 rank=0 tree=true g=-\n"
            "component 1 rank=1 tree=false g=b\n");
}
