#ifndef STALLINGS_GALOIS_HPP_
#define STALLINGS_GALOIS_HPP_

// Deck transformations of finite-index cores, regularity (normality), deck
// quotients and the lattice of intermediate coverings of a finite Galois
// covering of the rose.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "core.hpp"
#include "covering.hpp"
#include "error.hpp"

namespace stallings {

  //! A bijection of core vertices, as the list of images.
  using Permutation = std::vector<std::size_t>;

  //! (f ∘ g)(x) = f(g(x)).
  inline Permutation compose(Permutation const& f, Permutation const& g) {
    Permutation out(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) {
      out[x] = f[g[x]];
    }
    return out;
  }

  inline Permutation inverse(Permutation const& f) {
    Permutation out(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) {
      out[f[x]] = x;
    }
    return out;
  }

  inline Permutation identity_permutation(std::size_t n) {
    Permutation out(n);
    for (std::size_t x = 0; x < n; ++x) {
      out[x] = x;
    }
    return out;
  }

  //! The label-preserving automorphism of \p core sending the basepoint to
  //! \p w, if there is one.  It is unique when it exists: the image of every
  //! vertex is forced by following transitions from the basepoint.
  inline std::optional<Permutation> automorphism_to(LabeledCore const& core,
                                                    std::size_t        w) {
    std::size_t const n = core.number_of_vertices();
    Permutation       phi(n, no_vertex);
    std::vector<bool> used(n, false);
    phi[LabeledCore::base()] = w;
    used[w]                  = true;
    std::deque<std::size_t> q{LabeledCore::base()};
    while (!q.empty()) {
      std::size_t v = q.front();
      q.pop_front();
      for (std::size_t l = 0; l < core.number_of_labels(); ++l) {
        std::size_t x = core.target(v, l);
        std::size_t y = core.target(phi[v], l);
        if ((x == no_vertex) != (y == no_vertex)) {
          return std::nullopt;
        }
        if (x == no_vertex) {
          continue;
        }
        if (phi[x] == no_vertex) {
          if (used[y]) {
            return std::nullopt;
          }
          phi[x]  = y;
          used[y] = true;
          q.push_back(x);
        } else if (phi[x] != y) {
          return std::nullopt;
        }
      }
    }
    return phi;
  }

  //! Whether \p f is a label-preserving bijection of the vertices of \p core.
  inline bool is_deck_transformation(LabeledCore const& core,
                                     Permutation const& f) {
    std::size_t const n = core.number_of_vertices();
    if (f.size() != n) {
      return false;
    }
    std::vector<bool> hit(n, false);
    for (std::size_t x : f) {
      if (x >= n || hit[x]) {
        return false;
      }
      hit[x] = true;
    }
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t l = 0; l < core.number_of_labels(); ++l) {
        std::size_t x = core.target(v, l);
        std::size_t y = core.target(f[v], l);
        if (x == no_vertex ? y != no_vertex : y != f[x]) {
          return false;
        }
      }
    }
    return true;
  }

  //! Regularity of the covering, i.e. normality of the subgroup.  For a
  //! finite-index core: an automorphism takes the basepoint to every vertex.
  //! A core of infinite index is normal only when it is trivial if r >= 2
  //! (a non-trivial normal subgroup of a non-abelian free group has finite
  //! index); this case is answered from that fact rather than decided.
  inline bool is_galois(LabeledCore const& core) {
    if (!core.is_complete()) {
      if (core.is_trivial()) {
        return true;
      }
      if (core.ambient_rank() >= 2) {
        return false;
      }
      throw DomainError("regularity is undecided for incomplete cores");
    }
    for (std::size_t w = 0; w < core.number_of_vertices(); ++w) {
      if (!automorphism_to(core, w)) {
        return false;
      }
    }
    return true;
  }

  //! The deck group of a finite-index core, one element per vertex reachable
  //! from the basepoint by an automorphism.  Element 0 is the identity and
  //! elements are ordered by the image of the basepoint.
  class DeckGroup {
   public:
    explicit DeckGroup(LabeledCore const& core) : _n(core.number_of_vertices()) {
      if (!core.is_complete()) {
        throw DomainError("deck group of an incomplete core");
      }
      for (std::size_t w = 0; w < _n; ++w) {
        if (auto phi = automorphism_to(core, w)) {
          _elements.push_back(std::move(*phi));
        }
      }
    }

    std::size_t order() const noexcept {
      return _elements.size();
    }
    std::vector<Permutation> const& elements() const noexcept {
      return _elements;
    }
    Permutation const& operator[](std::size_t i) const {
      return _elements[i];
    }

    //! Position of \p f in elements(), or no_vertex.
    std::size_t position(Permutation const& f) const {
      for (std::size_t i = 0; i < _elements.size(); ++i) {
        if (_elements[i] == f) {
          return i;
        }
      }
      return no_vertex;
    }

   private:
    std::size_t              _n;
    std::vector<Permutation> _elements;
  };

  inline DeckGroup deck_group(LabeledCore const& core) {
    return DeckGroup(core);
  }

  //! A quotient of a core by a group of deck transformations.
  struct DeckQuotient {
    LabeledCore              core;
    std::vector<std::size_t> projection;  // upper vertex -> quotient vertex
    Covering                 down;        // upper core graph -> quotient graph
    Covering                 to_rose;     // quotient graph -> rose
  };

  namespace detail {
    // The graph map between core graphs induced by a label-preserving vertex
    // map that sends the basepoint to the basepoint.
    inline GraphMorphism core_map(LabeledCore const&              upper,
                                  LabeledCore const&              lower,
                                  std::vector<std::size_t> const& vmap) {
      auto up = to_graph(upper);
      auto lo = to_graph(lower);
      // arc index of (v, g) in the lower graph
      std::map<std::pair<std::size_t, std::size_t>, arc_type> lower_arc;
      for (arc_type a = 0; a < lo.graph.number_of_arcs(); ++a) {
        lower_arc[{lo.graph.arc(a).first, lo.arc_label[a]}] = a;
      }
      std::vector<edge_type> amap;
      for (arc_type a = 0; a < up.graph.number_of_arcs(); ++a) {
        auto it = lower_arc.find({vmap[up.graph.arc(a).first], up.arc_label[a]});
        if (it == lower_arc.end()) {
          throw DomainError("vertex map does not preserve transitions");
        }
        amap.push_back(Graph::edge_of(it->second));
      }
      return GraphMorphism::from_maps(up.graph, lo.graph, vmap, amap);
    }
  }  // namespace detail

  //! Quotient of a finite-index core by a subgroup \p h of its deck group.
  //! The vertices of the result are the orbits; both the quotient map and
  //! the induced map to the rose are checked to be coverings.
  inline DeckQuotient quotient_by_deck(LabeledCore const&              core,
                                       std::vector<Permutation> const& h) {
    if (!core.is_complete()) {
      throw DomainError("deck quotient of an incomplete core");
    }
    std::size_t const n = core.number_of_vertices();
    if (h.empty()) {
      throw DomainError("empty set of deck transformations");
    }
    for (auto const& f : h) {
      if (!is_deck_transformation(core, f)) {
        throw DomainError("element is not a deck transformation");
      }
    }
    auto member = [&h](Permutation const& f) {
      return std::find(h.begin(), h.end(), f) != h.end();
    };
    if (!member(identity_permutation(n))) {
      throw DomainError("not a subgroup: identity missing");
    }
    for (auto const& f : h) {
      if (!member(inverse(f))) {
        throw DomainError("not a subgroup: not closed under inverses");
      }
      for (auto const& g : h) {
        if (!member(compose(f, g))) {
          throw DomainError("not a subgroup: not closed under composition");
        }
      }
      if (f != identity_permutation(n)) {
        for (std::size_t x = 0; x < n; ++x) {
          if (f[x] == x) {
            throw std::logic_error("deck transformation with a fixed point");
          }
        }
      }
    }
    std::vector<std::size_t> orbit(n, no_vertex);
    std::size_t              m = 0;
    std::vector<std::size_t> orbit_id(n, no_vertex);
    for (std::size_t x = 0; x < n; ++x) {
      if (orbit[x] != no_vertex) {
        continue;
      }
      for (auto const& f : h) {
        orbit[f[x]] = m;
      }
      ++m;
    }
    std::size_t const        L = core.number_of_labels();
    std::vector<std::size_t> table(m * L, no_vertex);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t l = 0; l < L; ++l) {
        table[orbit[x] * L + l] = orbit[core.target(x, l)];
      }
    }
    auto q = LabeledCore::from_table(core.ambient_rank(), m,
                                     orbit[LabeledCore::base()],
                                     std::move(table));
    // projection in the canonical numbering of q
    auto const               tree = spanning_tree(core);
    std::vector<std::size_t> proj(n);
    for (std::size_t x = 0; x < n; ++x) {
      proj[x] = q.walk(LabeledCore::base(), tree.path_to[x]);
    }
    auto down = make_covering(detail::core_map(core, q, proj), 0, 0);
    auto rose_cover = make_covering(immersion(q), 0, 0);
    return DeckQuotient{std::move(q), std::move(proj), std::move(down),
                        std::move(rose_cover)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Lattice of intermediate coverings
  ////////////////////////////////////////////////////////////////////////

  //! Subsets of the deck group as bitmasks over DeckGroup::elements().
  using ElementSet = std::uint32_t;

  inline constexpr std::size_t max_lattice_group_order = 24;

  struct LatticeClass {
    ElementSet               subgroup;  // H
    LabeledCore              core;      // Λ / H
    std::vector<std::size_t> projection;
    Degree                   degree;    // over the rose
  };

  //! Intermediate coverings Λ -> Λ/H -> rose, one per subgroup H of the deck
  //! group of a finite Galois core Λ.  leq[i][j] holds when class j covers
  //! class i compatibly with the maps from Λ, i.e. classes[i] <= classes[j].
  struct IntermediateLattice {
    LabeledCore                    top;
    DeckGroup                      group;
    std::vector<LatticeClass>      classes;
    std::vector<std::vector<bool>> leq;
  };

  namespace detail {
    inline std::vector<std::vector<std::size_t>>
    multiplication_table(DeckGroup const& g) {
      std::size_t const                     n = g.order();
      std::vector<std::vector<std::size_t>> mult(n, std::vector<std::size_t>(n));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          mult[i][j] = g.position(compose(g[i], g[j]));
        }
      }
      return mult;
    }

    inline ElementSet
    closure(ElementSet s, std::vector<std::vector<std::size_t>> const& mult) {
      s |= 1u;  // identity
      bool grown = true;
      while (grown) {
        grown = false;
        for (std::size_t i = 0; i < mult.size(); ++i) {
          if (!(s >> i & 1u)) {
            continue;
          }
          for (std::size_t j = 0; j < mult.size(); ++j) {
            if ((s >> j & 1u) && !(s >> mult[i][j] & 1u)) {
              s |= ElementSet(1) << mult[i][j];
              grown = true;
            }
          }
        }
      }
      return s;
    }
  }  // namespace detail

  //! All subgroups of a deck group, ordered by size then bitmask.
  inline std::vector<ElementSet> subgroups(DeckGroup const& g) {
    if (g.order() > max_lattice_group_order) {
      throw DomainError("deck group of order " + std::to_string(g.order())
                        + " exceeds the enumeration limit of "
                        + std::to_string(max_lattice_group_order));
    }
    auto const              mult = detail::multiplication_table(g);
    std::vector<ElementSet> found{detail::closure(1u, mult)};
    for (std::size_t k = 0; k < found.size(); ++k) {
      for (std::size_t x = 0; x < g.order(); ++x) {
        ElementSet s = detail::closure(found[k] | (ElementSet(1) << x), mult);
        if (std::find(found.begin(), found.end(), s) == found.end()) {
          found.push_back(s);
        }
      }
    }
    std::sort(found.begin(), found.end(), [](ElementSet a, ElementSet b) {
      auto pa = std::popcount(a), pb = std::popcount(b);
      return pa != pb ? pa < pb : a < b;
    });
    return found;
  }

  inline std::vector<Permutation> elements_of(DeckGroup const& g,
                                              ElementSet       s) {
    std::vector<Permutation> out;
    for (std::size_t i = 0; i < g.order(); ++i) {
      if (s >> i & 1u) {
        out.push_back(g[i]);
      }
    }
    return out;
  }

  //! Outcome of checking the Galois correspondence on a lattice.
  struct CorrespondenceCheck {
    bool bijective         = true;  // distinct subgroups, distinct classes
    bool order_reversing   = true;  // H_i ⊆ H_j  <=>  class j <= class i
    bool meets_to_joins    = true;  // class(H ∩ K) = class(H) ∨ class(K)
    bool joins_to_meets    = true;  // class(<H, K>) = class(H) ∧ class(K)
    bool degree_formula    = true;  // deg(Λ/H -> rose) = [G : H]
    bool galois_inverse    = true;  // Gal(Λ -> Λ/H) = H

    bool ok() const {
      return bijective && order_reversing && meets_to_joins && joins_to_meets
             && degree_formula && galois_inverse;
    }
  };

  namespace detail {
    // Least upper bound (join) or greatest lower bound of classes i, j in the
    // poset given by leq, or no_vertex if it does not exist.
    inline std::size_t bound(std::vector<std::vector<bool>> const& leq,
                             std::size_t                           i,
                             std::size_t                           j,
                             bool                                  upper) {
      std::size_t const n = leq.size();
      auto le = [&](std::size_t a, std::size_t b) {
        return upper ? leq[a][b] : leq[b][a];
      };
      for (std::size_t k = 0; k < n; ++k) {
        if (!le(i, k) || !le(j, k)) {
          continue;
        }
        bool least = true;
        for (std::size_t m = 0; m < n && least; ++m) {
          if (le(i, m) && le(j, m) && !le(k, m)) {
            least = false;
          }
        }
        if (least) {
          return k;
        }
      }
      return no_vertex;
    }
  }  // namespace detail

  inline CorrespondenceCheck
  check_correspondence(IntermediateLattice const& lat) {
    CorrespondenceCheck out;
    auto const&         cls  = lat.classes;
    auto const          mult = detail::multiplication_table(lat.group);
    std::size_t const   n    = cls.size();
    std::size_t const   G    = lat.group.order();
    std::map<ElementSet, std::size_t> class_of;
    for (std::size_t i = 0; i < n; ++i) {
      class_of[cls[i].subgroup] = i;
      for (std::size_t j = 0; j < i; ++j) {
        if (cls[i].core == cls[j].core || cls[i].subgroup == cls[j].subgroup) {
          out.bijective = false;
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        bool sub = (cls[i].subgroup & cls[j].subgroup) == cls[i].subgroup;
        if (sub != lat.leq[j][i]) {
          out.order_reversing = false;
        }
        auto meet_h = class_of.find(cls[i].subgroup & cls[j].subgroup);
        auto join_h = class_of.find(
            detail::closure(cls[i].subgroup | cls[j].subgroup, mult));
        if (meet_h == class_of.end()
            || detail::bound(lat.leq, i, j, true) != meet_h->second) {
          out.meets_to_joins = false;
        }
        if (join_h == class_of.end()
            || detail::bound(lat.leq, i, j, false) != join_h->second) {
          out.joins_to_meets = false;
        }
      }
      std::size_t h = std::popcount(cls[i].subgroup);
      if (!cls[i].degree.is_finite() || cls[i].degree.value() * h != G) {
        out.degree_formula = false;
      }
      // deck transformations of Λ over Λ/H
      ElementSet gal = 0;
      for (std::size_t g = 0; g < G; ++g) {
        bool fixes = true;
        for (std::size_t x = 0; x < lat.top.number_of_vertices() && fixes; ++x) {
          fixes = cls[i].projection[lat.group[g][x]] == cls[i].projection[x];
        }
        if (fixes) {
          gal |= ElementSet(1) << g;
        }
      }
      if (gal != cls[i].subgroup) {
        out.galois_inverse = false;
      }
    }
    return out;
  }

  //! The lattice of intermediate coverings of a finite Galois core, built by
  //! quotienting by every subgroup of the deck group (order at most 24).
  //! Classes are ordered by factoring of the coverings of the rose; the Galois
  //! correspondence is checked before returning.  Quotients are computed on
  //! up to \p jobs threads.
  inline IntermediateLattice intermediate_lattice(LabeledCore const& core,
                                                  unsigned jobs = 1) {
    if (!core.is_complete()) {
      throw DomainError("intermediate lattice of an incomplete core");
    }
    if (!is_galois(core)) {
      throw DomainError("intermediate lattice of a non-Galois core");
    }
    DeckGroup  group(core);
    auto const subs = subgroups(group);

    std::vector<std::optional<LatticeClass>> slots(subs.size());
    auto work = [&](std::size_t first, std::size_t step) {
      for (std::size_t k = first; k < subs.size(); k += step) {
        auto q   = quotient_by_deck(core, elements_of(group, subs[k]));
        slots[k] = LatticeClass{subs[k], q.core, q.projection, index(q.core)};
      }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, subs.size()));
    if (jobs == 1) {
      work(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < jobs; ++t) {
        pool.emplace_back(work, t, jobs);
      }
      for (auto& t : pool) {
        t.join();
      }
    }
    IntermediateLattice lat{core, group, {}, {}};
    for (auto& s : slots) {
      lat.classes.push_back(std::move(*s));
    }
    std::vector<Covering> covers;
    for (auto const& c : lat.classes) {
      covers.push_back(make_covering(immersion(c.core), 0, 0));
    }
    std::size_t const n = covers.size();
    lat.leq.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        lat.leq[i][j] = factor_through(covers[j], covers[i]).has_value();
      }
    }
    auto check = check_correspondence(lat);
    if (!check.ok()) {
      throw std::logic_error("Galois correspondence check failed");
    }
    return lat;
  }

}  // namespace stallings

#endif  // STALLINGS_GALOIS_HPP_
