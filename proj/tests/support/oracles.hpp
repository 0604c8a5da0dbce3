#ifndef STALLINGS_TESTS_ORACLES_HPP_
#define STALLINGS_TESTS_ORACLES_HPP_

// Reference computations that do not go through the library's graph
// algorithms: brute-force products, permutation orbits, non-backtracking
// walks, conjugation by generators.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <set>
#include <vector>

#include "stallings/core.hpp"
#include "stallings/graph.hpp"
#include "stallings/word.hpp"

namespace stallings::testing {

  //! All words of the form s1 s2 ... sk with k <= max_factors and each s_i a
  //! generator or inverse, freely reduced.
  inline std::set<Word> products_up_to(std::vector<Word> const& gens,
                                       std::size_t              max_factors) {
    std::vector<Word> symbols;
    for (Word const& g : gens) {
      symbols.push_back(reduce(g));
      symbols.push_back(inverse(reduce(g)));
    }
    std::set<Word> all{Word{}};
    std::set<Word> level{Word{}};
    for (std::size_t k = 0; k < max_factors; ++k) {
      std::set<Word> next;
      for (Word const& w : level) {
        for (Word const& s : symbols) {
          next.insert(w * s);
        }
      }
      all.insert(next.begin(), next.end());
      level = std::move(next);
    }
    return all;
  }

  //! Every word of length at most len over r generators, reduced.
  inline std::vector<Word> all_reduced_words(std::size_t r, std::size_t len) {
    std::vector<Word> out{Word{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].size() == len) {
        continue;
      }
      for (std::size_t l = 0; l < 2 * r; ++l) {
        Letter x = Letter::from_label(l);
        if (out[i].empty() || out[i].back() != x.inverse()) {
          Word w = out[i];
          w.push_back(x);
          out.push_back(std::move(w));
        }
      }
    }
    return out;
  }

  //! Length of cancellation in the product x y.
  inline std::size_t cancellation(Word const& x, Word const& y) {
    std::size_t c = 0;
    while (c < x.size() && c < y.size()
           && x[x.size() - 1 - c] == y[c].inverse()) {
      ++c;
    }
    return c;
  }

  //! Replaces u by a shorter u v^{+-1} or v^{+-1} u while possible and drops
  //! trivial words.
  inline std::vector<Word> nielsen_shorten(std::vector<Word> gens) {
    for (auto& g : gens) {
      g = reduce(g);
    }
    bool changed = true;
    while (changed) {
      changed = false;
      gens.erase(std::remove_if(gens.begin(), gens.end(),
                                [](Word const& w) { return w.empty(); }),
                 gens.end());
      for (std::size_t i = 0; i < gens.size() && !changed; ++i) {
        for (std::size_t j = 0; j < gens.size() && !changed; ++j) {
          if (i == j) {
            continue;
          }
          Word const  v  = gens[j];
          Word const  vi = inverse(v);
          Word const* cand[] = {&v, &vi};
          for (Word const* c : cand) {
            for (bool left : {false, true}) {
              Word t = left ? *c * gens[i] : gens[i] * *c;
              if (t.size() < gens[i].size()) {
                gens[i] = std::move(t);
                changed = true;
                break;
              }
            }
            if (changed) {
              break;
            }
          }
        }
      }
    }
    return gens;
  }

  //! For a set U with c(x,y) + c(y,z) < |y| whenever xy != 1 and yz != 1
  //! (x, y, z in U and their inverses), a middle letter of every factor
  //! survives in a non-backtracking product, so a product of k factors has
  //! length at least k.
  inline bool keeps_middle_letters(std::vector<Word> const& gens) {
    std::vector<Word> sym;
    for (Word const& g : gens) {
      sym.push_back(g);
      sym.push_back(inverse(g));
    }
    for (std::size_t y = 0; y < sym.size(); ++y) {
      for (std::size_t x = 0; x < sym.size(); ++x) {
        if (x == (y ^ 1)) {
          continue;
        }
        for (std::size_t z = 0; z < sym.size(); ++z) {
          if (z == (y ^ 1)) {
            continue;
          }
          if (cancellation(sym[x], sym[y]) + cancellation(sym[y], sym[z])
              >= sym[y].size()) {
            return false;
          }
        }
      }
    }
    return true;
  }

  //! Orbit size of 0 under a permutation action: the index of the
  //! stabiliser.
  inline std::size_t orbit_size(std::vector<std::vector<std::size_t>> const& perms) {
    std::size_t const       n = perms.front().size();
    std::vector<bool>       seen(n, false);
    std::deque<std::size_t> q{0};
    seen[0]         = true;
    std::size_t cnt = 1;
    while (!q.empty()) {
      std::size_t x = q.front();
      q.pop_front();
      for (auto const& p : perms) {
        for (std::size_t y : {p[x], static_cast<std::size_t>(
                                        std::find(p.begin(), p.end(), x)
                                        - p.begin())}) {
          if (!seen[y]) {
            seen[y] = true;
            ++cnt;
            q.push_back(y);
          }
        }
      }
    }
    return cnt;
  }

  //! Whether the word acts trivially on point 0 (is in its stabiliser).
  inline bool fixes_zero(std::vector<std::vector<std::size_t>> const& perms,
                         Word const&                                  w) {
    std::size_t x = 0;
    for (Letter l : w) {
      auto const& p = perms[l.generator()];
      x = l.is_inverse() ? static_cast<std::size_t>(
                               std::find(p.begin(), p.end(), x) - p.begin())
                         : p[x];
    }
    return x == 0;
  }

  //! Cells lying on some closed reduced path at v, found by a search over
  //! non-backtracking states (vertex, last edge).
  inline Subgraph closed_reduced_support(Graph const& g, vertex_type v) {
    std::size_t const E = g.number_of_edges();
    // forward: edges e such that a reduced path from v ends with e
    std::vector<bool>     fwd(E, false);
    std::deque<edge_type> q;
    for (edge_type e : g.out_edges(v)) {
      fwd[e] = true;
      q.push_back(e);
    }
    while (!q.empty()) {
      edge_type e = q.front();
      q.pop_front();
      for (edge_type f : g.out_edges(g.terminus(e))) {
        if (f != Graph::inverse(e) && !fwd[f]) {
          fwd[f] = true;
          q.push_back(f);
        }
      }
    }
    // backward: edges e such that a reduced path starting with e ends at v
    std::vector<bool> bwd(E, false);
    for (edge_type e = 0; e < E; ++e) {
      if (g.terminus(e) == v) {
        bwd[e] = true;
        q.push_back(e);
      }
    }
    while (!q.empty()) {
      edge_type f = q.front();
      q.pop_front();
      for (edge_type e = 0; e < E; ++e) {
        if (!bwd[e] && g.terminus(e) == g.origin(f) && f != Graph::inverse(e)) {
          bwd[e] = true;
          q.push_back(e);
        }
      }
    }
    Subgraph s(g);
    s.add_vertex(v);
    for (edge_type e = 0; e < E; ++e) {
      if (fwd[e] && bwd[e]) {
        s.add_arc(g, Graph::arc_of(e));
      }
    }
    return s;
  }

  //! Normality by conjugating a basis by every generator.
  inline bool normal_by_conjugation(LabeledCore const&       core,
                                    std::vector<Word> const& basis) {
    for (std::size_t g = 0; g < core.ambient_rank(); ++g) {
      for (bool inv : {false, true}) {
        Word x{Letter(g, inv)};
        for (Word const& h : basis) {
          if (!contains(core, x * h * inverse(x))) {
            return false;
          }
        }
      }
    }
    return true;
  }

}  // namespace stallings::testing

#endif  // STALLINGS_TESTS_ORACLES_HPP_
