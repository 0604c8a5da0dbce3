#ifndef STALLINGS_LATTICE_OPS_HPP_
#define STALLINGS_LATTICE_OPS_HPP_

// Intersections (pullbacks over the rose) and joins (wedge and fold) of
// subgroups given by their cores, with the components of the pullback tagged
// by double coset representatives.

#include <cstddef>
#include <deque>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"
#include "error.hpp"
#include "word.hpp"

namespace stallings {

  struct PullbackComponent {
    std::size_t              id = 0;
    bool                     is_pointed = false;
    bool                     is_tree    = true;
    std::size_t              rank       = 0;
    std::size_t              witness    = 0;  // product vertex
    std::vector<std::size_t> vertices;        // product vertices, increasing
  };

  //! The label-matched product of two cores.  Product vertex (w1, w2) has id
  //! w1 * n2 + w2; components are numbered by their smallest vertex, so the
  //! pointed component (containing (0, 0)) is component 0.  The witness of a
  //! non-tree component other than the pointed one lies on its spine.
  struct PullbackResult {
    std::size_t                    r  = 0;
    std::size_t                    n1 = 0;
    std::size_t                    n2 = 0;
    std::vector<std::size_t>       table;         // (n1 * n2) x 2r
    std::vector<std::size_t>       component_of;  // per product vertex
    std::vector<PullbackComponent> components;

    std::size_t number_of_vertices() const noexcept {
      return n1 * n2;
    }
    std::size_t vertex(std::size_t w1, std::size_t w2) const noexcept {
      return w1 * n2 + w2;
    }
    std::size_t first(std::size_t p) const noexcept {
      return p / n2;
    }
    std::size_t second(std::size_t p) const noexcept {
      return p % n2;
    }
    std::size_t target(std::size_t p, std::size_t l) const {
      return table[p * 2 * r + l];
    }
    PullbackComponent const& pointed() const {
      return components.front();
    }
  };

  namespace detail {
    inline void check_same_rank(std::size_t r1, std::size_t r2) {
      if (r1 != r2) {
        throw DomainError("rank mismatch: " + std::to_string(r1) + " vs "
                          + std::to_string(r2));
      }
    }

    inline std::vector<std::size_t> product_table(std::size_t r,
                                                  RawTable const& a,
                                                  RawTable const& b) {
      std::size_t const        L = 2 * r;
      std::vector<std::size_t> t(a.n * b.n * L, no_vertex);
      for (std::size_t x = 0; x < a.n; ++x) {
        for (std::size_t y = 0; y < b.n; ++y) {
          for (std::size_t l = 0; l < L; ++l) {
            std::size_t tx = a.target(x, l);
            std::size_t ty = b.target(y, l);
            if (tx != no_vertex && ty != no_vertex) {
              t[(x * b.n + y) * L + l] = tx * b.n + ty;
            }
          }
        }
      }
      return t;
    }

    // Component labels of a transition table, numbered by smallest vertex.
    inline std::vector<std::size_t>
    table_components(std::size_t r, std::size_t n,
                     std::vector<std::size_t> const& t) {
      std::vector<std::size_t> comp(n, no_vertex);
      std::size_t              next = 0;
      for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] != no_vertex) {
          continue;
        }
        comp[s] = next;
        std::deque<std::size_t> q{s};
        while (!q.empty()) {
          std::size_t v = q.front();
          q.pop_front();
          for (std::size_t l = 0; l < 2 * r; ++l) {
            std::size_t w = t[v * 2 * r + l];
            if (w != no_vertex && comp[w] == no_vertex) {
              comp[w] = next;
              q.push_back(w);
            }
          }
        }
        ++next;
      }
      return comp;
    }

    // Vertices surviving repeated removal of valency <= 1 vertices.
    inline std::vector<bool> cyclic_part(std::size_t r, std::size_t n,
                                         std::vector<std::size_t> const& t) {
      std::vector<std::size_t> deg(n, 0);
      for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t l = 0; l < 2 * r; ++l) {
          deg[v] += t[v * 2 * r + l] != no_vertex;
        }
      }
      std::vector<bool>       alive(n, true);
      std::deque<std::size_t> q;
      for (std::size_t v = 0; v < n; ++v) {
        if (deg[v] <= 1) {
          q.push_back(v);
        }
      }
      while (!q.empty()) {
        std::size_t v = q.front();
        q.pop_front();
        if (!alive[v]) {
          continue;
        }
        alive[v] = false;
        for (std::size_t l = 0; l < 2 * r; ++l) {
          std::size_t w = t[v * 2 * r + l];
          if (w != no_vertex && alive[w] && w != v && --deg[w] == 1) {
            q.push_back(w);
          }
        }
      }
      return alive;
    }
  }  // namespace detail

  inline PullbackResult pullback(LabeledCore const& c1, LabeledCore const& c2) {
    detail::check_same_rank(c1.ambient_rank(), c2.ambient_rank());
    PullbackResult res;
    res.r     = c1.ambient_rank();
    res.n1    = c1.number_of_vertices();
    res.n2    = c2.number_of_vertices();
    res.table = detail::product_table(res.r, detail::RawTable::of(c1),
                                      detail::RawTable::of(c2));
    std::size_t const n = res.number_of_vertices();
    res.component_of    = detail::table_components(res.r, n, res.table);
    auto const alive    = detail::cyclic_part(res.r, n, res.table);

    std::vector<std::size_t> arcs;
    for (std::size_t p = 0; p < n; ++p) {
      std::size_t c = res.component_of[p];
      if (c == res.components.size()) {
        PullbackComponent pc;
        pc.id         = c;
        pc.is_pointed = c == 0;
        pc.witness    = p;
        res.components.push_back(pc);
        arcs.push_back(0);
      }
      auto& pc = res.components[c];
      pc.vertices.push_back(p);
      for (std::size_t g = 0; g < res.r; ++g) {
        arcs[c] += res.target(p, 2 * g) != no_vertex;
      }
      if (!pc.is_pointed && alive[p] && !alive[pc.witness]) {
        pc.witness = p;
      }
    }
    for (auto& pc : res.components) {
      pc.rank    = 1 + arcs[pc.id] - pc.vertices.size();
      pc.is_tree = pc.rank == 0;
    }
    return res;
  }

  //! Core of a pullback component at its witness: the intersection core for
  //! the pointed component, a conjugate intersection otherwise.
  inline LabeledCore component_core(PullbackResult const& res,
                                    std::size_t           component) {
    return LabeledCore::from_table(res.r, res.number_of_vertices(),
                                   res.components.at(component).witness,
                                   res.table);
  }

  //! Vertex map of the projection of the pullback to factor 1 or 2.
  inline std::vector<std::size_t> pullback_projection(PullbackResult const& res,
                                                      int                   side) {
    std::vector<std::size_t> out(res.number_of_vertices());
    for (std::size_t p = 0; p < out.size(); ++p) {
      out[p] = side == 1 ? res.first(p) : res.second(p);
    }
    return out;
  }

  inline LabeledCore intersect(LabeledCore const& c1, LabeledCore const& c2) {
    detail::check_same_rank(c1.ambient_rank(), c2.ambient_rank());
    auto const        a = detail::RawTable::of(c1);
    auto const        b = detail::RawTable::of(c2);
    std::size_t const r = c1.ambient_rank();
    return LabeledCore::from_table(r, a.n * b.n, 0,
                                   detail::product_table(r, a, b));
  }

  //! Core of the subgroup generated by both: the wedge at the basepoints,
  //! folded.
  inline LabeledCore join(LabeledCore const& c1, LabeledCore const& c2) {
    detail::check_same_rank(c1.ambient_rank(), c2.ambient_rank());
    detail::FoldingBuilder b(c1.ambient_rank());
    std::size_t const      n1 = c1.number_of_vertices();
    for (std::size_t v = 0; v < n1 + c2.number_of_vertices(); ++v) {
      b.add_vertex();
    }
    for (std::size_t pass = 0; pass < 2; ++pass) {
      auto const&       c   = pass == 0 ? c1 : c2;
      std::size_t const off = pass == 0 ? 0 : n1;
      for (std::size_t v = 0; v < c.number_of_vertices(); ++v) {
        for (std::size_t l = 0; l < c.number_of_labels(); l += 2) {
          std::size_t w = c.target(v, l);
          if (w != no_vertex) {
            b.add_edge(off + v, l, off + w);
          }
        }
      }
    }
    b.identify(0, n1);
    return b.finish(0);
  }

  ////////////////////////////////////////////////////////////////////////
  // Double cosets
  ////////////////////////////////////////////////////////////////////////

  //! A component of the pullback of A1 and A2 together with g such that the
  //! component's fundamental group is conjugate to A2 ∩ g A1 g^-1.
  struct DoubleCosetTag {
    std::size_t component = 0;
    Word        g;
  };

  //! Whether A2 g A1 = A2 h A1.  The core of A2 is whiskered by the paths
  //! spelling g and h; the double cosets agree iff (u1, end of g) and
  //! (u1, end of h) lie in one component of the pullback with the core of A1.
  inline bool same_double_coset(LabeledCore const& c1,
                                LabeledCore const& c2,
                                Word const&        g,
                                Word const&        h) {
    detail::check_same_rank(c1.ambient_rank(), c2.ambient_rank());
    check_alphabet(g, c2.ambient_rank());
    check_alphabet(h, c2.ambient_rank());
    auto              b  = detail::RawTable::of(c2);
    std::size_t const eg = b.extend(LabeledCore::base(), reduce(g));
    std::size_t const eh = b.extend(LabeledCore::base(), reduce(h));
    auto const        a  = detail::RawTable::of(c1);
    std::size_t const r  = c1.ambient_rank();
    auto const        t  = detail::product_table(r, a, b);
    auto const        comp = detail::table_components(r, a.n * b.n, t);
    return comp[eg] == comp[eh];  // u1 = 0, so (0, e) has id e
  }

  namespace detail {
    inline Word tag_word(PullbackResult const& res,
                         CoreTree const&       t1,
                         CoreTree const&       t2,
                         std::size_t           p) {
      return t2.path_to[res.second(p)] * inverse(t1.path_to[res.first(p)]);
    }
  }  // namespace detail

  //! Tag of one non-tree component, read at its witness along the
  //! breadth-first trees of the factors.
  inline DoubleCosetTag double_coset_tag(PullbackResult const& res,
                                         LabeledCore const&    c1,
                                         LabeledCore const&    c2,
                                         std::size_t           component) {
    auto const& pc = res.components.at(component);
    if (pc.is_tree) {
      throw DomainError("component " + std::to_string(component)
                        + " is a tree and carries no tag");
    }
    return {component, detail::tag_word(res, spanning_tree(c1),
                                        spanning_tree(c2), pc.witness)};
  }

  //! Tags of all non-tree components, checked to lie in distinct double
  //! cosets.
  inline std::vector<DoubleCosetTag> double_coset_tags(PullbackResult const& res,
                                                       LabeledCore const&    c1,
                                                       LabeledCore const&    c2) {
    auto const                  t1 = spanning_tree(c1);
    auto const                  t2 = spanning_tree(c2);
    std::vector<DoubleCosetTag> tags;
    for (auto const& pc : res.components) {
      if (!pc.is_tree) {
        tags.push_back({pc.id, detail::tag_word(res, t1, t2, pc.witness)});
      }
    }
    for (std::size_t i = 0; i < tags.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (same_double_coset(c1, c2, tags[i].g, tags[j].g)) {
          throw std::logic_error("components " + std::to_string(tags[j].component)
                                 + " and " + std::to_string(tags[i].component)
                                 + " share a double coset");
        }
      }
    }
    return tags;
  }

  //! One line per component: `component <id> rank=<k> tree=<bool> g=<word>`,
  //! with g=- for tree components.
  inline void write_pullback_report(std::ostream&         os,
                                    PullbackResult const& res,
                                    LabeledCore const&    c1,
                                    LabeledCore const&    c2) {
    auto const t1 = spanning_tree(c1);
    auto const t2 = spanning_tree(c2);
    for (auto const& pc : res.components) {
      os << "component " << pc.id << " rank=" << pc.rank
         << " tree=" << (pc.is_tree ? "true" : "false") << " g="
         << (pc.is_tree ? std::string("-")
                        : to_string(detail::tag_word(res, t1, t2, pc.witness)))
         << '\n';
    }
  }

}  // namespace stallings

#endif  // STALLINGS_LATTICE_OPS_HPP_
