#ifndef STALLINGS_HN_HPP_
#define STALLINGS_HN_HPP_

// Rank estimates for intersections of subgroups of the free group of rank 2.
//
// For a non-trivial core over the rose with petals x1 = a, x2 = b:
//   H    number of spine vertices (the core without the basepoint whisker),
//   n_i  number of maximal x_i-runs that are not closed x_i-cycles (a vertex
//        missing both x_i directions is a run of length zero).
// Each such run leaves two missing x_i directions, one at each end.  Placing
// a checker on every vertex and removing one per x1-run and one per x2-run
// leaves rank - 1 checkers.  For two cores the sum of rank - 1 over the
// non-tree components of the pullback is at most
//   (rk1 - 1)(rk2 - 1) + H1 H2 - (H1 - n1i)(H2 - n2i)   for i = 1, 2.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "covering.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "lattice_ops.hpp"

namespace stallings {

  //! A maximal run of x_i edges: start -x_i-> ... -x_i-> end.
  struct XRun {
    std::size_t              generator = 0;  // 0 for x1, 1 for x2
    std::vector<std::size_t> vertices;       // in run order
    bool                     cyclic = false;
  };

  struct HNProfile {
    std::size_t                                   H = 0;
    std::array<std::size_t, 2>                    n{0, 0};
    std::size_t                                   rank = 0;
    std::vector<std::size_t>                      interior;
    std::vector<std::pair<std::size_t, std::size_t>> stubs;  // (vertex, label)
    std::vector<XRun>                             runs;      // non-cyclic only
    std::vector<std::size_t>                      checkers;  // surviving
    std::size_t                                   fallback_removals = 0;

    std::size_t checker_count() const noexcept {
      return checkers.size();
    }
    std::size_t missing_stubs(std::size_t generator) const {
      return static_cast<std::size_t>(
          std::count_if(stubs.begin(), stubs.end(), [generator](auto const& s) {
            return s.second / 2 == generator;
          }));
    }
  };

  namespace detail {
    inline std::vector<XRun> x_runs(LabeledCore const& core, std::size_t g) {
      std::size_t const n = core.number_of_vertices();
      std::vector<bool> seen(n, false);
      std::vector<XRun> runs;
      for (std::size_t v = 0; v < n; ++v) {
        if (core.target(v, 2 * g + 1) != no_vertex) {
          continue;  // not a run start
        }
        XRun run{g, {}, false};
        for (std::size_t w = v; w != no_vertex; w = core.target(w, 2 * g)) {
          run.vertices.push_back(w);
          seen[w] = true;
        }
        runs.push_back(std::move(run));
      }
      for (std::size_t v = 0; v < n; ++v) {
        if (seen[v]) {
          continue;
        }
        XRun run{g, {}, true};
        std::size_t w = v;
        do {
          run.vertices.push_back(w);
          seen[w] = true;
          w       = core.target(w, 2 * g);
        } while (w != v);
        runs.push_back(std::move(run));
      }
      return runs;
    }
  }  // namespace detail

  //! The core rebased to the smallest vertex of its spine, dropping the
  //! whisker that joins the basepoint to the spine.  Same subgroup up to
  //! conjugacy.
  inline LabeledCore spine_core(LabeledCore const& core) {
    if (core.is_trivial()) {
      return core;
    }
    auto const alive = detail::cyclic_part(
        core.ambient_rank(), core.number_of_vertices(), core.table());
    if (alive[LabeledCore::base()]) {
      return core;
    }
    auto const w = static_cast<std::size_t>(
        std::find(alive.begin(), alive.end(), true) - alive.begin());
    return rebase(core, spanning_tree(core).path_to[w]);
  }

  //! Profile of the spine of the core.  Vertex ids refer to spine_core(core).
  inline HNProfile hn_profile(LabeledCore const& based) {
    if (based.ambient_rank() != 2) {
      throw DomainError("profile needs ambient rank 2, got "
                        + std::to_string(based.ambient_rank()));
    }
    if (based.is_trivial()) {
      throw DomainError("profile of the trivial subgroup");
    }
    LabeledCore const core = spine_core(based);
    std::size_t const n = core.number_of_vertices();
    HNProfile         p;
    p.H    = n;
    p.rank = core.rank();
    for (std::size_t v = 0; v < n; ++v) {
      p.interior.push_back(v);
      for (std::size_t l = 0; l < 4; ++l) {
        if (core.target(v, l) == no_vertex) {
          p.stubs.emplace_back(v, l);
        }
      }
    }
    std::array<std::vector<XRun>, 2> open;
    for (std::size_t g = 0; g < 2; ++g) {
      for (auto& run : detail::x_runs(core, g)) {
        if (!run.cyclic) {
          open[g].push_back(std::move(run));
        }
      }
      p.n[g] = open[g].size();
    }

    std::vector<bool> checker(n, true);
    auto by_smallest_end = [](XRun const& x, XRun const& y) {
      auto ex = std::min(x.vertices.front(), x.vertices.back());
      auto ey = std::min(y.vertices.front(), y.vertices.back());
      return ex < ey;
    };
    std::stable_sort(open[1].begin(), open[1].end(), by_smallest_end);

    // One removal per run, at distinct vertices on the runs: a bipartite
    // matching found by augmenting paths.  x1-runs try their vertices from
    // the start of the run, x2-runs from the lowest id.
    std::vector<std::vector<std::size_t>> choices;
    for (auto const& run : open[0]) {
      choices.push_back(run.vertices);
    }
    for (auto const& run : open[1]) {
      choices.push_back(run.vertices);
      std::sort(choices.back().begin(), choices.back().end());
    }
    std::vector<std::size_t> owner(n, no_vertex);
    std::vector<std::size_t> visited(n, no_vertex);
    auto augment = [&](auto&& self, std::size_t run, std::size_t round) -> bool {
      for (std::size_t w : choices[run]) {
        if (visited[w] == round) {
          continue;
        }
        visited[w] = round;
        if (owner[w] == no_vertex || self(self, owner[w], round)) {
          owner[w] = run;
          return true;
        }
      }
      return false;
    };
    std::size_t unmatched = 0;
    for (std::size_t i = 0; i < choices.size(); ++i) {
      unmatched += !augment(augment, i, i);
    }
    for (std::size_t w = 0; w < n; ++w) {
      if (owner[w] != no_vertex) {
        checker[w] = false;
      }
    }
    for (; unmatched > 0; --unmatched) {
      ++p.fallback_removals;
      auto it = std::find(checker.begin(), checker.end(), true);
      if (it == checker.end()) {
        throw std::logic_error("no checker left to remove");
      }
      *it = false;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (checker[v]) {
        p.checkers.push_back(v);
      }
    }
    for (auto& rs : open) {
      for (auto& run : rs) {
        p.runs.push_back(std::move(run));
      }
    }
    if (p.checker_count() + 1 != p.rank) {
      throw std::logic_error("checker count differs from rank - 1");
    }
    return p;
  }

  //! Rank recovered from the profile: H - (n1 + n2) + 1.
  inline std::int64_t profile_rank(HNProfile const& p) {
    return static_cast<std::int64_t>(p.H)
           - static_cast<std::int64_t>(p.n[0] + p.n[1]) + 1;
  }

  //! The right-hand side for generator i (1 or 2).
  inline std::int64_t hn_bound_rhs(HNProfile const& p1,
                                   HNProfile const& p2,
                                   int              i) {
    if (i != 1 && i != 2) {
      throw DomainError("generator index must be 1 or 2");
    }
    auto const         H1 = static_cast<std::int64_t>(p1.H);
    auto const         H2 = static_cast<std::int64_t>(p2.H);
    auto const         a  = static_cast<std::int64_t>(p1.n[i - 1]);
    auto const         b  = static_cast<std::int64_t>(p2.n[i - 1]);
    std::int64_t const P  = (profile_rank(p1) - 1) * (profile_rank(p2) - 1);
    return P + H1 * H2 - (H1 - a) * (H2 - b);
  }

  //! (rk1 - 1)(rk2 - 1) + epsilon for the classical error terms.
  struct ClassicalBounds {
    std::int64_t neumann        = 0;
    std::int64_t burns          = 0;
    std::int64_t tardos         = 0;
    std::int64_t dicks_formanek = 0;
  };

  inline ClassicalBounds classical_bounds(std::int64_t rk1, std::int64_t rk2) {
    std::int64_t const P = (rk1 - 1) * (rk2 - 1);
    ClassicalBounds    b;
    b.neumann        = P + P;
    b.burns          = P + std::max((rk1 - 2) * (rk2 - 1), (rk1 - 1) * (rk2 - 2));
    b.tardos         = P + std::max<std::int64_t>((rk1 - 2) * (rk2 - 2) - 1, 0);
    b.dicks_formanek = P + (rk1 - 3) * (rk2 - 3);
    return b;
  }

  struct HNBoundReport {
    HNProfile                   p1;
    HNProfile                   p2;
    std::int64_t                lhs  = 0;
    std::int64_t                rhs1 = 0;
    std::int64_t                rhs2 = 0;
    ClassicalBounds             classical;
    std::vector<DoubleCosetTag> tags;
    std::string                 tightest;  // smallest bound that holds

    std::int64_t rhs() const noexcept {
      return std::min(rhs1, rhs2);
    }
  };

  //! Profiles, pullback and bounds for a pair of non-trivial rank-2 cores.
  //! Throws std::logic_error if the estimate fails.
  inline HNBoundReport shn_report(LabeledCore const& c1, LabeledCore const& c2) {
    HNBoundReport rep;
    rep.p1 = hn_profile(c1);
    rep.p2 = hn_profile(c2);
    auto const res = pullback(c1, c2);
    for (auto const& pc : res.components) {
      if (!pc.is_tree) {
        rep.lhs += static_cast<std::int64_t>(pc.rank) - 1;
      }
    }
    rep.tags      = double_coset_tags(res, c1, c2);
    rep.rhs1      = hn_bound_rhs(rep.p1, rep.p2, 1);
    rep.rhs2      = hn_bound_rhs(rep.p1, rep.p2, 2);
    rep.classical = classical_bounds(static_cast<std::int64_t>(rep.p1.rank),
                                     static_cast<std::int64_t>(rep.p2.rank));
    if (rep.lhs > rep.rhs()) {
      throw std::logic_error("rank estimate violated: lhs="
                             + std::to_string(rep.lhs)
                             + " rhs=" + std::to_string(rep.rhs()));
    }
    std::pair<std::string, std::int64_t> const candidates[] = {
        {"theorem", rep.rhs()},
        {"neumann", rep.classical.neumann},
        {"burns", rep.classical.burns},
        {"tardos", rep.classical.tardos},
        {"dicks_formanek", rep.classical.dicks_formanek},
    };
    std::optional<std::int64_t> best;
    for (auto const& [name, value] : candidates) {
      if (value >= rep.lhs && (!best || value < *best)) {
        best         = value;
        rep.tightest = name;
      }
    }
    return rep;
  }

  inline void write_report(std::ostream& os, HNBoundReport const& rep) {
    os << "lhs=" << rep.lhs << " rhs1=" << rep.rhs1 << " rhs2=" << rep.rhs2
       << '\n'
       << "neumann=" << rep.classical.neumann
       << " burns=" << rep.classical.burns
       << " tardos=" << rep.classical.tardos
       << " dicks_formanek=" << rep.classical.dicks_formanek << '\n'
       << "tightest=" << rep.tightest << '\n';
    for (auto const& t : rep.tags) {
      os << "tag component=" << t.component << " g=" << to_string(t.g) << '\n';
    }
  }

  inline void write_profile(std::ostream& os, HNProfile const& p) {
    os << "H=" << p.H << " n1=" << p.n[0] << " n2=" << p.n[1]
       << " rank=" << p.rank << " checkers=" << p.checker_count() << '\n';
  }

  inline constexpr char const* csv_header =
      "rk1,rk2,H1,H2,n11,n12,n21,n22,lhs,rhs1,rhs2,neumann,burns,tardos,"
      "dicks_formanek";

  inline void write_csv_row(std::ostream& os, HNBoundReport const& r) {
    os << r.p1.rank << ',' << r.p2.rank << ',' << r.p1.H << ',' << r.p2.H
       << ',' << r.p1.n[0] << ',' << r.p1.n[1] << ',' << r.p2.n[0] << ','
       << r.p2.n[1] << ',' << r.lhs << ',' << r.rhs1 << ',' << r.rhs2 << ','
       << r.classical.neumann << ',' << r.classical.burns << ','
       << r.classical.tardos << ',' << r.classical.dicks_formanek << '\n';
  }

  ////////////////////////////////////////////////////////////////////////
  // Profiles of coverings of rank-2 graphs
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    // Kruskal over the arcs in decreasing order.
    inline Subgraph reverse_spanning_tree(Graph const& g) {
      Subgraph  t(g);
      UnionFind uf(g.number_of_vertices());
      t.add_vertex(0);
      for (arc_type a = g.number_of_arcs(); a-- > 0;) {
        auto [s, e] = g.arc(a);
        if (uf.unite(s, e)) {
          t.add_arc(g, a);
        }
      }
      for (vertex_type v = 0; v < g.number_of_vertices(); ++v) {
        t.add_vertex(v);
      }
      return t;
    }

    inline HNProfile excised_profile(Covering const& c, Subgraph const& t) {
      auto ex = excise_trees(c, t);
      return hn_profile(core_of_immersion(ex.covering.morphism(),
                                          ex.covering.source_base()));
    }
  }  // namespace detail

  //! Collapses a spanning tree of the target and the lifts of it, then
  //! profiles the core of the resulting covering of the rose.  Two spanning
  //! trees are used (Kruskal in increasing and in decreasing arc order) and
  //! their profiles are checked to agree.
  inline HNProfile excise_and_profile(Covering const& c) {
    Graph const& tgt = c.target();
    if (!is_connected(tgt) || rank(tgt) != 2) {
      throw DomainError("excision profile needs a connected target of rank 2");
    }
    auto const t1 = spanning_forest(tgt).forest;
    auto const t2 = detail::reverse_spanning_tree(tgt);
    auto       p  = detail::excised_profile(c, t1);
    auto       q  = detail::excised_profile(c, t2);
    if (p.H != q.H || p.n != q.n) {
      throw std::logic_error("profile depends on the spanning tree");
    }
    return p;
  }

  //! The core over the rose with vertices 0..k, a-edges i -> i+1 and a b-loop
  //! at every vertex.
  inline LabeledCore k_loop_family(std::size_t k) {
    std::size_t const        n = k + 1;
    std::vector<std::size_t> t(n * 4, no_vertex);
    for (std::size_t i = 0; i < n; ++i) {
      t[i * 4 + 2] = i;
      t[i * 4 + 3] = i;
      if (i + 1 < n) {
        t[i * 4 + 0]       = i + 1;
        t[(i + 1) * 4 + 1] = i;
      }
    }
    return LabeledCore::from_table(2, n, 0, std::move(t));
  }

}  // namespace stallings

#endif  // STALLINGS_HN_HPP_
