// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "stallings/stallings.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace stallings;
using stallings::testing::Rng;
using stallings::testing::uniform;

namespace {

  struct Outcome {
    bool        ok = true;
    std::string detail;

    void require(bool cond, std::string const& what) {
      if (!cond && ok) {
        ok     = false;
        detail = what;
      }
    }
  };

  LabeledCore core(std::initializer_list<char const*> ws) {
    std::vector<Word> gens;
    for (auto w : ws) {
      gens.push_back(parse_word(w));
    }
    return LabeledCore::from_words(2, gens);
  }

  Outcome profile_examples() {
    Outcome o;
    auto    p1 = hn_profile(core({"ab"}));
    auto    p2 = hn_profile(core({"b"}));
    o.require(p1.H == 2 && p1.n[0] == 1 && p1.n[1] == 1, "profile of <ab>");
    o.require(p2.H == 1 && p2.n[0] == 1 && p2.n[1] == 0, "profile of <b>");
    o.detail = o.ok ? "H=2 n=(1,1); H=1 n=(1,0)" : o.detail;
    return o;
  }

  Outcome checker_lemma() {
    Outcome     o;
    Rng         rng(101);
    std::size_t n = 0;
    for (; n < 1000 && o.ok; ++n) {
      auto c = stallings::testing::random_core(rng, 2, 20);
      auto p = hn_profile(c);
      o.require(p.checker_count() + 1 == c.rank(),
                "checkers != rank-1 for " + to_string(c));
      o.require(p.interior.size() >= p.n[0] + p.n[1], "interior < n1+n2");
      o.require(p.fallback_removals == 0, "checker removed off its run");
    }
    if (o.ok) {
      o.detail = std::to_string(n) + " cores";
    }
    return o;
  }

  Outcome rank_estimate() {
    Outcome     o;
    Rng         rng(102);
    std::size_t tight = 0;
    for (int i = 0; i < 200 && o.ok; ++i) {
      auto c1 = stallings::testing::random_core(rng, 2, 20);
      auto c2 = stallings::testing::random_core(rng, 2, 20);
      try {
        auto rep = shn_report(c1, c2);
        o.require(rep.lhs <= rep.rhs1 && rep.lhs <= rep.rhs2, "lhs > rhs");
        tight += rep.lhs == rep.rhs();
      } catch (std::logic_error const& e) {
        o.require(false, e.what());
      }
    }
    auto a   = core({"a", "bAB", "bb"});
    auto rep = shn_report(a, a);
    o.require(rep.lhs == 4 && rep.rhs1 == 4 && rep.rhs2 == 4,
              "self-intersection of <a,bAB,bb> not lhs=rhs=4");
    if (o.ok) {
      o.detail = "200 pairs, " + std::to_string(tight)
                 + " tight; <a,bAB,bb> lhs=rhs=4";
    }
    return o;
  }

  Outcome k_loop_table() {
    Outcome                   o;
    std::size_t const         K = 6;
    std::vector<HNBoundReport> reps;
    for (std::size_t k = 1; k <= K; ++k) {
      auto c = k_loop_family(k);
      reps.push_back(shn_report(c, c));
    }
    auto column = [&](auto f) {
      std::vector<std::int64_t> v;
      for (auto const& r : reps) {
        v.push_back(f(r));
      }
      return v;
    };
    auto P = column([](HNBoundReport const& r) {
      return (static_cast<std::int64_t>(r.p1.rank) - 1)
             * (static_cast<std::int64_t>(r.p2.rank) - 1);
    });
    std::vector<std::pair<char const*, std::vector<std::int64_t>>> cols = {
        {"theorem", column([](auto const& r) { return r.rhs(); })},
        {"rhs1", column([](auto const& r) { return r.rhs1; })},
        {"neumann", column([](auto const& r) { return r.classical.neumann; })},
        {"burns", column([](auto const& r) { return r.classical.burns; })},
        {"tardos", column([](auto const& r) { return r.classical.tardos; })},
        {"dicks_formanek", column([](auto const& r) { return r.classical.dicks_formanek; })},
    };
    for (auto const& [name, v] : cols) {
      for (std::size_t i = 0; i + 1 < K; ++i) {
        o.require(v[i] <= v[i + 1], std::string(name) + " not monotone");
      }
    }
    auto const& theorem = cols[0].second;
    auto const& neumann = cols[2].second;
    auto const& burns   = cols[3].second;
    for (std::size_t i = 0; i < K; ++i) {
      o.require(reps[i].lhs <= theorem[i], "lhs above theorem bound");
      o.require(theorem[i] <= neumann[i], "theorem above H. Neumann");
    }
    // second differences of epsilon: 2 for the table bounds (quadratic),
    // 0 for the theorem (at most linear); k = 2..6 avoids the clamp in Tardos
    for (auto const& [name, v] : cols) {
      bool const table = std::string(name) != "theorem" && std::string(name) != "rhs1";
      for (std::size_t i = 1; i + 2 < K; ++i) {
        std::int64_t d2 = (v[i + 2] - P[i + 2]) - 2 * (v[i + 1] - P[i + 1]) + (v[i] - P[i]);
        o.require(table ? d2 == 2 : d2 == 0,
                  std::string(name) + " epsilon second difference "
                      + std::to_string(d2));
      }
    }
    std::size_t crossover = 0;
    for (std::size_t i = 0; i < K && crossover == 0; ++i) {
      if (theorem[i] < burns[i]) {
        crossover = i + 1;
      }
    }
    o.require(crossover != 0, "theorem never below Burns");
    if (o.ok) {
      std::ostringstream os;
      os << "theorem < burns from k=" << crossover << "; theorem/burns:";
      for (std::size_t i = 0; i < K; ++i) {
        os << ' ' << theorem[i] << '/' << burns[i];
      }
      o.detail = os.str();
    }
    return o;
  }

  Outcome dictionary_laws() {
    Outcome o;
    Rng     rng(105);
    for (int i = 0; i < 100 && o.ok; ++i) {
      std::size_t r     = uniform(rng, 2, 3);
      auto        perms = stallings::testing::random_action(rng, r, uniform(rng, 1, 8));
      auto        c     = stallings::testing::action_core(perms);
      std::size_t n     = stallings::testing::orbit_size(perms);
      o.require(c.is_complete() && index(c) == Degree(n), "index != orbit size");
      o.require(schreier_basis(c).size() - 1 == n * (r - 1), "Nielsen-Schreier");
    }
    std::size_t words = 0;
    for (int i = 0; i < 200 && o.ok; ++i) {
      auto g1 = stallings::testing::random_generators(rng, 2, uniform(rng, 1, 3), 6);
      auto g2 = stallings::testing::random_generators(rng, 2, uniform(rng, 1, 3), 6);
      auto c1 = LabeledCore::from_words(2, g1);
      auto c2 = LabeledCore::from_words(2, g2);
      auto res = pullback(c1, c2);
      o.require(res.number_of_vertices()
                    <= c1.number_of_vertices() * c2.number_of_vertices(),
                "Howson bound");
      auto m   = intersect(c1, c2);
      auto j   = join(c1, c2);
      auto all = g1;
      all.insert(all.end(), g2.begin(), g2.end());
      for (int k = 0; k < 50; ++k, ++words) {
        Word w = k % 2 == 0
                   ? stallings::testing::random_reduced_word(rng, 2, uniform(rng, 0, 10))
                   : reduce(all[uniform(rng, 0, all.size() - 1)]
                            * inverse(all[uniform(rng, 0, all.size() - 1)])
                            * all[uniform(rng, 0, all.size() - 1)]);
        bool const in1 = contains(c1, w);
        bool const in2 = contains(c2, w);
        o.require(contains(m, w) == (in1 && in2), "intersection membership");
        o.require(!(in1 || in2) || contains(j, w), "join misses a factor word");
      }
      for (Word const& g : all) {
        o.require(contains(j, g), "join misses a generator");
      }
    }
    if (o.ok) {
      o.detail = "100 complete cores, 200 pairs, " + std::to_string(words) + " words";
    }
    return o;
  }

  Outcome galois_lattice() {
    Outcome o;
    auto    k4 = core({"aa", "bb", "baBA", "abbA", "abaB"});
    o.require(index(k4) == Degree(4) && is_galois(k4), "Klein-four core");
    auto lat = intermediate_lattice(k4);
    o.require(lat.classes.size() == 5, "lattice size "
                                           + std::to_string(lat.classes.size()));
    for (std::size_t i = 0; i < lat.classes.size(); ++i) {
      auto const& ci = lat.classes[i];
      auto const  h  = static_cast<std::size_t>(std::popcount(ci.subgroup));
      o.require(ci.degree == Degree(4 / h) && 4 % h == 0, "deg != [G:H]");
      o.require(index(ci.core) == ci.degree, "index of class core");
      for (std::size_t j = 0; j < lat.classes.size(); ++j) {
        bool const sub = (lat.classes[j].subgroup & ~ci.subgroup) == 0;
        o.require(lat.leq[i][j] == sub, "order reversal");
      }
    }
    o.require(check_correspondence(lat).ok(), "correspondence check");
    auto s = core({"bA", "aa", "abaBA", "abb"});
    o.require(index(s) == Degree(3), "index-3 core");
    o.require(!is_galois(s), "index-3 core reported Galois");
    o.require(deck_group(s).order() == 1, "index-3 deck order");
    if (o.ok) {
      o.detail = "V4: 5 classes; index-3: not Galois, |deck|=1";
    }
    return o;
  }

  Outcome hall_completion() {
    Outcome     o;
    Rng         rng(107);
    std::size_t n = 0;
    while (n < 150 && o.ok) {
      auto gens = stallings::testing::random_generators(rng, 2, uniform(rng, 1, 3), 6);
      auto c    = LabeledCore::from_words(2, gens);
      std::vector<Word> avoid;
      for (std::size_t k = uniform(rng, 1, 4); k > 0; --k) {
        Word w = stallings::testing::random_reduced_word(rng, 2, uniform(rng, 1, 6));
        if (!contains(c, w)) {
          avoid.push_back(w);
        }
      }
      if (avoid.empty()) {
        continue;
      }
      ++n;
      auto h = hall_complete(c, avoid);
      o.require(h.is_complete() && index(h).is_finite(), "not finite index");
      for (Word const& g : gens) {
        o.require(contains(h, g), "lost a generator");
      }
      for (Word const& w : avoid) {
        o.require(!contains(h, w), "contains avoid word " + to_string(w));
      }
    }
    if (o.ok) {
      o.detail = std::to_string(n) + " instances";
    }
    return o;
  }

  Outcome oracle_equivalence() {
    Outcome     o;
    Rng         rng(108);
    auto const  words = stallings::testing::all_reduced_words(2, 6);
    std::size_t drawn = 0;
    std::size_t accepted = 0;
    while (accepted < 50 && o.ok) {
      ++drawn;
      auto gens = stallings::testing::nielsen_shorten(
          stallings::testing::random_generators(rng, 2, 2, 5));
      if (gens.size() != 2 || !stallings::testing::keeps_middle_letters(gens)) {
        continue;
      }
      ++accepted;
      auto c      = LabeledCore::from_words(2, gens);
      auto oracle = stallings::testing::products_up_to(gens, 6);
      for (Word const& w : words) {
        o.require(contains(c, w) == (oracle.count(w) > 0),
                  "disagreement on " + to_string(w) + " for <" + to_string(gens[0])
                      + "," + to_string(gens[1]) + ">");
      }
    }
    if (o.ok) {
      o.detail = std::to_string(accepted) + " subgroups (" + std::to_string(drawn)
                 + " drawn), " + std::to_string(words.size()) + " words each";
    }
    return o;
  }

  struct Criterion {
    int                      id;
    char const*              name;
    double                   limit_ms;
    std::function<Outcome()> run;
  };

}  // namespace

int main() {
  std::vector<Criterion> const criteria = {
      {1, "profile examples", 1.0, profile_examples},
      {2, "checker lemma", 5000.0, checker_lemma},
      {3, "rank estimate", 10000.0, rank_estimate},
      {4, "k-loop comparison table", 1000.0, k_loop_table},
      {5, "dictionary laws", 10000.0, dictionary_laws},
      {6, "Galois correspondence", 1000.0, galois_lattice},
      {7, "Hall completion", 5000.0, hall_completion},
      {8, "membership oracle", 30000.0, oracle_equivalence},
  };
  int failures = 0;
  for (auto const& c : criteria) {
    Outcome o;
    auto    t0 = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (std::exception const& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    if (o.ok && ms > c.limit_ms) {
      o.ok     = false;
      o.detail = "time limit exceeded";
    }
    failures += !o.ok;
    std::printf("%s %d %s (%.3f ms, limit %.0f ms): %s\n", o.ok ? "PASS" : "FAIL",
                c.id, c.name, ms, c.limit_ms, o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
