#ifndef STALLINGS_COVERING_HPP_
#define STALLINGS_COVERING_HPP_

// Graph maps and coverings.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "core.hpp"
#include "error.hpp"
#include "graph.hpp"

namespace stallings {

  //! Returns a description of the first failure of \p cell_map to be a map of
  //! graphs (commuting with start and inverse), or std::nullopt.
  inline std::optional<std::string>
  validate_morphism(Graph const&                  source,
                    Graph const&                  target,
                    std::vector<cell_type> const& cell_map) {
    if (cell_map.size() != source.number_of_cells()) {
      return "cell map has " + std::to_string(cell_map.size())
             + " entries, source has " + std::to_string(source.number_of_cells())
             + " cells";
    }
    for (cell_type x = 0; x < cell_map.size(); ++x) {
      if (cell_map[x] >= target.number_of_cells()) {
        return "cell " + std::to_string(x) + " maps outside the target";
      }
    }
    for (cell_type x = 0; x < cell_map.size(); ++x) {
      cell_type y = cell_map[x];
      if (source.is_vertex_cell(x) && !target.is_vertex_cell(y)) {
        return "vertex cell " + std::to_string(x) + " maps to an edge";
      }
      if (cell_map[source.cell_start(x)] != target.cell_start(y)) {
        return "map does not commute with start at cell " + std::to_string(x);
      }
      if (cell_map[source.cell_inverse(x)] != target.cell_inverse(y)) {
        return "map does not commute with inverse at cell "
               + std::to_string(x);
      }
    }
    return std::nullopt;
  }

  //! A map of graphs: a cell map commuting with start and inverse.
  class GraphMorphism {
   public:
    GraphMorphism(Graph source, Graph target, std::vector<cell_type> cell_map)
        : _source(std::move(source)),
          _target(std::move(target)),
          _map(std::move(cell_map)) {
      if (auto bad = validate_morphism(_source, _target, _map)) {
        throw DomainError("not a graph map: " + *bad);
      }
    }

    //! Dimension-preserving map given by vertex images and the image of each
    //! canonical edge 2a.
    static GraphMorphism from_maps(Graph                           source,
                                   Graph                           target,
                                   std::vector<vertex_type> const& vertex_map,
                                   std::vector<edge_type> const&   arc_map) {
      if (vertex_map.size() != source.number_of_vertices()
          || arc_map.size() != source.number_of_arcs()) {
        throw DomainError("vertex or arc map has the wrong size");
      }
      std::vector<cell_type> m(source.number_of_cells());
      for (vertex_type v = 0; v < source.number_of_vertices(); ++v) {
        m[source.vertex_cell(v)] = target.vertex_cell(vertex_map[v]);
      }
      for (arc_type a = 0; a < source.number_of_arcs(); ++a) {
        if (arc_map[a] >= target.number_of_edges()) {
          throw DomainError("arc image out of range");
        }
        m[source.edge_cell(Graph::edge_of(a))] = target.edge_cell(arc_map[a]);
        m[source.edge_cell(Graph::inverse(Graph::edge_of(a)))]
            = target.edge_cell(Graph::inverse(arc_map[a]));
      }
      return GraphMorphism(std::move(source), std::move(target), std::move(m));
    }

    static GraphMorphism identity(Graph const& g) {
      std::vector<cell_type> m(g.number_of_cells());
      for (cell_type c = 0; c < m.size(); ++c) {
        m[c] = c;
      }
      return GraphMorphism(g, g, std::move(m));
    }

    Graph const& source() const noexcept {
      return _source;
    }
    Graph const& target() const noexcept {
      return _target;
    }
    std::vector<cell_type> const& cell_map() const noexcept {
      return _map;
    }

    vertex_type map_vertex(vertex_type v) const {
      return _map[_source.vertex_cell(v)];
    }
    //! Image of an edge, or std::nullopt if it collapses to a vertex.
    std::optional<edge_type> map_edge(edge_type e) const {
      cell_type y = _map[_source.edge_cell(e)];
      if (_target.is_vertex_cell(y)) {
        return std::nullopt;
      }
      return _target.cell_edge(y);
    }

    bool is_dimension_preserving() const {
      for (edge_type e = 0; e < _source.number_of_edges(); ++e) {
        if (!map_edge(e)) {
          return false;
        }
      }
      return true;
    }

    //! Dimension preserving and injective on the edges leaving each vertex.
    bool is_immersion() const {
      if (!is_dimension_preserving()) {
        return false;
      }
      for (vertex_type w = 0; w < _source.number_of_vertices(); ++w) {
        std::vector<edge_type> img;
        for (edge_type e : _source.out_edges(w)) {
          img.push_back(*map_edge(e));
        }
        std::sort(img.begin(), img.end());
        if (std::adjacent_find(img.begin(), img.end()) != img.end()) {
          return false;
        }
      }
      return true;
    }

    //! this followed by \p next.
    GraphMorphism then(GraphMorphism const& next) const {
      if (!(next._source == _target)) {
        throw DomainError("cannot compose: target and source differ");
      }
      std::vector<cell_type> m(_map.size());
      for (cell_type c = 0; c < m.size(); ++c) {
        m[c] = next._map[_map[c]];
      }
      return GraphMorphism(_source, next._target, std::move(m));
    }

    friend bool operator==(GraphMorphism const&, GraphMorphism const&)
        = default;

   private:
    Graph                  _source;
    Graph                  _target;
    std::vector<cell_type> _map;
  };

  //! Why a morphism is not a covering.
  struct CoveringViolation {
    enum class Kind {
      not_dimension_preserving,
      source_disconnected,
      target_disconnected,
      basepoint_mismatch,
      not_injective,
      not_surjective
    };
    Kind        kind;
    std::size_t where;  // offending cell or vertex
    std::string message;
  };

  class Covering;
  using CoveringCheck = std::variant<Covering, CoveringViolation>;
  inline CoveringCheck check_covering(GraphMorphism const&, vertex_type, vertex_type);

  //! A pointed covering u -> v of connected graphs.  Only obtainable through
  //! check_covering().
  class Covering {
   public:
    GraphMorphism const& morphism() const noexcept {
      return _m;
    }
    Graph const& source() const noexcept {
      return _m.source();
    }
    Graph const& target() const noexcept {
      return _m.target();
    }
    vertex_type source_base() const noexcept {
      return _u;
    }
    vertex_type target_base() const noexcept {
      return _v;
    }

    friend bool operator==(Covering const&, Covering const&) = default;

   private:
    friend CoveringCheck check_covering(GraphMorphism const&,
                                        vertex_type,
                                        vertex_type);
    Covering(GraphMorphism m, vertex_type u, vertex_type v)
        : _m(std::move(m)), _u(u), _v(v) {}

    GraphMorphism _m;
    vertex_type   _u;
    vertex_type   _v;
  };

  //! Checks the covering axioms: dimension preserving, both sides connected,
  //! u over v, and at every source vertex w a bijection from the edges
  //! starting at w onto the edges starting at the image of w.
  inline CoveringCheck
  check_covering(GraphMorphism const& m, vertex_type u, vertex_type v) {
    using K          = CoveringViolation::Kind;
    Graph const& src = m.source();
    Graph const& tgt = m.target();
    for (edge_type e = 0; e < src.number_of_edges(); ++e) {
      if (!m.map_edge(e)) {
        return CoveringViolation{K::not_dimension_preserving,
                                 src.edge_cell(e),
                                 "not dimension preserving: edge cell "
                                     + std::to_string(src.edge_cell(e))
                                     + " maps to a vertex"};
      }
    }
    if (!is_connected(src)) {
      return CoveringViolation{K::source_disconnected, 0,
                               "source is not connected"};
    }
    if (!is_connected(tgt)) {
      return CoveringViolation{K::target_disconnected, 0,
                               "target is not connected"};
    }
    if (u >= src.number_of_vertices() || v >= tgt.number_of_vertices()
        || m.map_vertex(u) != v) {
      return CoveringViolation{K::basepoint_mismatch, u,
                               "source basepoint does not map to target "
                               "basepoint"};
    }
    for (vertex_type w = 0; w < src.number_of_vertices(); ++w) {
      std::vector<edge_type> img;
      for (edge_type e : src.out_edges(w)) {
        img.push_back(*m.map_edge(e));
      }
      std::sort(img.begin(), img.end());
      if (std::adjacent_find(img.begin(), img.end()) != img.end()) {
        return CoveringViolation{
            K::not_injective, w,
            "not injective on the star of vertex " + std::to_string(w)};
      }
      auto const star = tgt.out_edges(m.map_vertex(w));
      if (img.size() != star.size()) {
        return CoveringViolation{
            K::not_surjective, w,
            "not surjective on the star of vertex " + std::to_string(w)};
      }
    }
    return Covering(m, u, v);
  }

  //! check_covering() that throws on failure.
  inline Covering make_covering(GraphMorphism const& m,
                                vertex_type          u,
                                vertex_type          v) {
    auto r = check_covering(m, u, v);
    if (auto* bad = std::get_if<CoveringViolation>(&r)) {
      throw DomainError("not a covering: " + bad->message);
    }
    return std::get<Covering>(std::move(r));
  }

  //! Result of lifting: the lifted prefix and, if the lift stopped early,
  //! the index of the first edge that could not be lifted.
  struct Lift {
    Path                       path;
    std::optional<std::size_t> failed_at;

    bool complete() const noexcept {
      return !failed_at.has_value();
    }
  };

  //! Lifts \p gamma (a path in the target) to a path starting at \p w.
  //! \p m must be an immersion; for a covering the lift always completes and
  //! is unique.  For an immersion that is only part of a covering (a core) the
  //! longest liftable prefix is returned.
  inline Lift lift_path(GraphMorphism const& m, Path const& gamma, vertex_type w) {
    if (!is_well_formed(m.target(), gamma)) {
      throw DomainError("path to lift is not well formed");
    }
    if (w >= m.source().number_of_vertices() || m.map_vertex(w) != gamma.base) {
      throw DomainError("lift start vertex does not lie over the path base");
    }
    Lift out{Path{w, {}}, std::nullopt};
    vertex_type at = w;
    for (std::size_t i = 0; i < gamma.edges.size(); ++i) {
      std::optional<edge_type> found;
      for (edge_type e : m.source().out_edges(at)) {
        if (m.map_edge(e) == gamma.edges[i]) {
          if (found) {
            throw DomainError("lifting through a map that is not an immersion");
          }
          found = e;
        }
      }
      if (!found) {
        out.failed_at = i;
        return out;
      }
      out.path.edges.push_back(*found);
      at = m.source().terminus(*found);
    }
    return out;
  }

  inline Lift lift_path(Covering const& c, Path const& gamma, vertex_type w) {
    return lift_path(c.morphism(), gamma, w);
  }

  //! Cells of the source over \p y.
  inline std::vector<cell_type> fiber(GraphMorphism const& m, cell_type y) {
    std::vector<cell_type> out;
    for (cell_type x = 0; x < m.cell_map().size(); ++x) {
      if (m.cell_map()[x] == y) {
        out.push_back(x);
      }
    }
    return out;
  }

  //! Degree of a finite covering: the common cardinality of every fiber.
  inline Degree degree(Covering const& c) {
    std::vector<std::size_t> count(c.target().number_of_cells(), 0);
    for (cell_type y : c.morphism().cell_map()) {
      ++count[y];
    }
    for (std::size_t k : count) {
      if (k != count.front()) {
        throw DomainError("fibers of a covering differ in size");
      }
    }
    return Degree(count.front());
  }

  //! A core seen as a partial covering of the rose: its index.
  inline Degree degree(LabeledCore const& core) {
    return index(core);
  }

  //! The immersion of a core into the rose with r petals.  Edge 2a of the core
  //! graph (arc a, reading generator g positively) maps to edge 2g of the
  //! rose.
  inline GraphMorphism immersion(LabeledCore const& core) {
    auto cg = to_graph(core);
    std::vector<vertex_type> vmap(cg.graph.number_of_vertices(), 0);
    std::vector<edge_type>   amap;
    for (std::size_t g : cg.arc_label) {
      amap.push_back(Graph::edge_of(g));
    }
    return GraphMorphism::from_maps(
        std::move(cg.graph), rose(core.ambient_rank()), vmap, amap);
  }

  //! Reads the core at \p u of an immersion into a rose: arc a of the rose is
  //! generator a.  The source is pruned to its spine at u.
  inline LabeledCore core_of_immersion(GraphMorphism const& m, vertex_type u) {
    Graph const& tgt = m.target();
    if (tgt.number_of_vertices() != 1 || tgt.number_of_arcs() == 0) {
      throw DomainError("target of the immersion is not a rose");
    }
    if (!m.is_immersion()) {
      throw DomainError("map is not an immersion");
    }
    std::size_t const        r = tgt.number_of_arcs();
    std::size_t const        n = m.source().number_of_vertices();
    std::vector<std::size_t> table(n * 2 * r, no_vertex);
    for (edge_type e = 0; e < m.source().number_of_edges(); ++e) {
      edge_type img = *m.map_edge(e);
      // rose edge 2g reads g, edge 2g+1 reads g^-1: identical to labels.
      table[m.source().origin(e) * 2 * r + img] = m.source().terminus(e);
    }
    return LabeledCore::from_table(r, n, u, std::move(table));
  }

  ////////////////////////////////////////////////////////////////////////
  // Excision of trees
  ////////////////////////////////////////////////////////////////////////

  //! An immersion (or covering) after collapsing a spanning tree T of the
  //! target and the components of its preimage.
  struct Excision {
    GraphMorphism morphism;
    vertex_type   source_base;
    vertex_type   target_base;
    Quotient      source_quotient;
    Quotient      target_quotient;
  };

  namespace detail {
    inline bool is_spanning_tree(Graph const& g, Subgraph const& t) {
      return is_tree(g, t) && t.number_of_vertices() == g.number_of_vertices();
    }

    // Components of the preimage of the spanning tree t, each checked to map
    // bijectively onto t.
    inline std::vector<Subgraph> tree_preimage(GraphMorphism const& m,
                                               Subgraph const&      t) {
      Graph const& src = m.source();
      UnionFind    uf(src.number_of_vertices());
      for (arc_type a = 0; a < src.number_of_arcs(); ++a) {
        auto img = m.map_edge(Graph::edge_of(a));
        if (img && t.contains_edge(*img)) {
          uf.unite(src.arc(a).first, src.arc(a).second);
        }
      }
      std::vector<std::size_t> comp_of(src.number_of_vertices(), no_vertex);
      std::vector<Subgraph>    comps;
      for (vertex_type w = 0; w < src.number_of_vertices(); ++w) {
        std::size_t root = uf.find(w);
        if (comp_of[root] == no_vertex) {
          comp_of[root] = comps.size();
          comps.emplace_back(src);
        }
        comps[comp_of[root]].add_vertex(w);
      }
      for (arc_type a = 0; a < src.number_of_arcs(); ++a) {
        auto img = m.map_edge(Graph::edge_of(a));
        if (img && t.contains_edge(*img)) {
          comps[comp_of[uf.find(src.arc(a).first)]].add_arc(src, a);
        }
      }
      std::size_t const tv = t.number_of_vertices();
      std::size_t const ta = t.number_of_arcs();
      for (std::size_t i = 0; i < comps.size(); ++i) {
        auto vs = comps[i].vertices();
        std::vector<vertex_type> img;
        for (vertex_type w : vs) {
          img.push_back(m.map_vertex(w));
        }
        std::sort(img.begin(), img.end());
        if (vs.size() != tv || comps[i].number_of_arcs() != ta
            || std::adjacent_find(img.begin(), img.end()) != img.end()) {
          throw DomainError("preimage component " + std::to_string(i)
                            + " of the tree does not map bijectively onto it");
        }
      }
      return comps;
    }
  }  // namespace detail

  //! Extends an immersion so that every component of the preimage of the
  //! spanning tree \p t maps bijectively onto t, by attaching the missing
  //! lifts of tree edges.  For an immersion whose source is a connected
  //! subgraph of a covering that contains the spine, the result is again such
  //! a subgraph.  Coverings are returned unchanged.
  inline GraphMorphism saturate_tree(GraphMorphism const& m, Subgraph const& t) {
    Graph const& tgt = m.target();
    if (!detail::is_spanning_tree(tgt, t)) {
      throw DomainError("subgraph is not a spanning tree of the target");
    }
    if (!m.is_immersion()) {
      throw DomainError("tree saturation needs an immersion");
    }
    Graph const&                                     src = m.source();
    std::vector<vertex_type>                         over;
    std::vector<std::pair<vertex_type, vertex_type>> arcs = src.arcs();
    std::vector<edge_type>                           arc_img;
    for (vertex_type w = 0; w < src.number_of_vertices(); ++w) {
      over.push_back(m.map_vertex(w));
    }
    for (arc_type a = 0; a < src.number_of_arcs(); ++a) {
      arc_img.push_back(*m.map_edge(Graph::edge_of(a)));
    }
    // star[w] = target edges already lifted at w
    std::vector<std::vector<edge_type>> star(over.size());
    for (arc_type a = 0; a < arcs.size(); ++a) {
      star[arcs[a].first].push_back(arc_img[a]);
      star[arcs[a].second].push_back(Graph::inverse(arc_img[a]));
    }
    std::deque<vertex_type> todo;
    for (vertex_type w = 0; w < over.size(); ++w) {
      todo.push_back(w);
    }
    while (!todo.empty()) {
      vertex_type w = todo.front();
      todo.pop_front();
      for (edge_type e : tgt.out_edges(over[w])) {
        if (!t.contains_edge(e)
            || std::find(star[w].begin(), star[w].end(), e) != star[w].end()) {
          continue;
        }
        vertex_type x = over.size();
        over.push_back(tgt.terminus(e));
        star.emplace_back();
        arcs.emplace_back(w, x);
        arc_img.push_back(e);
        star[w].push_back(e);
        star[x].push_back(Graph::inverse(e));
        todo.push_back(x);
      }
    }
    Graph grown(over.size(), std::move(arcs));
    return GraphMorphism::from_maps(std::move(grown), tgt, over, arc_img);
  }

  //! Collapses a spanning tree \p t of the target of an immersion and the
  //! components of its preimage (which must map bijectively onto t), giving
  //! an immersion into a single-vertex graph.
  inline Excision excise_trees(GraphMorphism const& m,
                               vertex_type          u,
                               vertex_type          v,
                               Subgraph const&      t) {
    Graph const& tgt = m.target();
    if (!detail::is_spanning_tree(tgt, t)) {
      throw DomainError("subgraph is not a spanning tree of the target");
    }
    auto comps = detail::tree_preimage(m, t);
    auto sq    = quotient(m.source(), comps);
    auto tq    = quotient(tgt, std::span<Subgraph const>(&t, 1));
    std::vector<cell_type> induced(sq.graph.number_of_cells(), no_vertex);
    for (cell_type x = 0; x < m.cell_map().size(); ++x) {
      cell_type y = tq.cell_map[m.cell_map()[x]];
      cell_type& slot = induced[sq.cell_map[x]];
      if (slot != no_vertex && slot != y) {
        throw DomainError("excision does not induce a map of quotients");
      }
      slot = y;
    }
    GraphMorphism im(sq.graph, tq.graph, std::move(induced));
    return Excision{std::move(im),
                    sq.cell_map[m.source().vertex_cell(u)],
                    tq.cell_map[tgt.vertex_cell(v)],
                    std::move(sq),
                    std::move(tq)};
  }

  //! Tree excision of a covering; the result is a covering of a
  //! single-vertex graph with the same degree and the same source rank.
  struct CoveringExcision {
    Covering covering;
    Quotient source_quotient;
    Quotient target_quotient;
  };

  inline CoveringExcision excise_trees(Covering const& c, Subgraph const& t) {
    auto ex  = excise_trees(c.morphism(), c.source_base(), c.target_base(), t);
    auto cov = make_covering(ex.morphism, ex.source_base, ex.target_base);
    return {std::move(cov),
            std::move(ex.source_quotient),
            std::move(ex.target_quotient)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Balls in the universal cover
  ////////////////////////////////////////////////////////////////////////

  //! The ball of radius R about the trivial path in the universal cover of
  //! a connected graph.  Vertex i is the endpoint class of the reduced path
  //! paths[i] from the base; vertex 0 is the centre.  Boundary vertices are
  //! those at distance R whose star is incomplete in the ball; away from them
  //! the projection is locally bijective.
  struct UniversalBall {
    Graph                    tree;
    vertex_type              center = 0;
    std::vector<vertex_type> boundary;
    std::vector<Path>        paths;
    GraphMorphism            projection;
  };

  inline UniversalBall universal_ball(Graph const& g,
                                      vertex_type  v,
                                      std::size_t  radius) {
    if (v >= g.number_of_vertices()) {
      throw DomainError("ball centre out of range");
    }
    if (!is_connected(g)) {
      throw DomainError("universal cover of a disconnected graph");
    }
    std::vector<Path>                                paths{Path{v, {}}};
    std::vector<vertex_type>                         over{v};
    std::vector<std::pair<vertex_type, vertex_type>> arcs;
    std::vector<edge_type>                           arc_img;
    std::vector<vertex_type>                         boundary;
    std::size_t                                      level_begin = 0;
    for (std::size_t depth = 0; depth <= radius; ++depth) {
      std::size_t const level_end = paths.size();
      for (std::size_t i = level_begin; i < level_end; ++i) {
        Path const  p   = paths[i];  // copied: paths grows below
        vertex_type end = path_end(g, p);
        for (edge_type e : g.out_edges(end)) {
          if (!p.edges.empty() && e == Graph::inverse(p.edges.back())) {
            continue;
          }
          if (depth == radius) {
            boundary.push_back(i);
            break;
          }
          Path child = p;
          child.edges.push_back(e);
          arcs.emplace_back(i, paths.size());
          arc_img.push_back(e);
          over.push_back(g.terminus(e));
          paths.push_back(std::move(child));
        }
      }
      level_begin = level_end;
    }
    Graph tree(paths.size(), std::move(arcs));
    auto  proj = GraphMorphism::from_maps(tree, g, over, arc_img);
    return UniversalBall{std::move(tree), 0, std::move(boundary),
                         std::move(paths), std::move(proj)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Factoring coverings
  ////////////////////////////////////////////////////////////////////////

  //! Given coverings c: Λ_u -> Δ_v and r: Γ_w -> Δ_v, returns the unique
  //! pointed map q: Λ_u -> Γ_w with c = r∘q, when it exists.  q is built by
  //! lifting along a spanning tree of Λ and exists iff every omitted arc
  //! (one per Schreier generator) closes up consistently.
  inline std::optional<Covering> factor_through(Covering const& c,
                                                Covering const& r) {
    if (!(c.target() == r.target()) || c.target_base() != r.target_base()) {
      throw DomainError("coverings to factor must share target and basepoint");
    }
    Graph const&             lam = c.source();
    Graph const&             gam = r.source();
    std::vector<vertex_type> vq(lam.number_of_vertices(), no_vertex);
    std::vector<edge_type>   aq(lam.number_of_arcs(), no_vertex);
    std::deque<vertex_type>  todo{c.source_base()};
    vq[c.source_base()] = r.source_base();
    // Lift each edge of Λ at the image of its origin; the first lift of each
    // vertex is along the BFS tree, later ones must agree.
    while (!todo.empty()) {
      vertex_type x = todo.front();
      todo.pop_front();
      for (edge_type e : lam.out_edges(x)) {
        edge_type   down = *c.morphism().map_edge(e);
        auto        lift = lift_path(
            r.morphism(), Path{c.morphism().map_vertex(x), {down}}, vq[x]);
        edge_type   up   = lift.path.edges.front();
        vertex_type y    = lam.terminus(e);
        if (vq[y] == no_vertex) {
          vq[y] = gam.terminus(up);
          todo.push_back(y);
        } else if (vq[y] != gam.terminus(up)) {
          return std::nullopt;
        }
        edge_type canon = Graph::is_canonical(e) ? up : Graph::inverse(up);
        aq[Graph::arc_of(e)] = canon;
      }
    }
    auto q = GraphMorphism::from_maps(lam, gam, vq, aq);
    return make_covering(q, c.source_base(), r.source_base());
  }

  ////////////////////////////////////////////////////////////////////////
  // Morphism text format
  ////////////////////////////////////////////////////////////////////////

  struct MorphismFile {
    GraphMorphism                                     morphism;
    std::optional<std::pair<vertex_type, vertex_type>> base;
  };

  //! `morphism`, a source graph block, a target graph block, one
  //! `map <src_cell> <tgt_cell>` line per source cell and an optional
  //! `base <u> <v>` line.  Cells use the unified numbering of Graph.
  inline void write_morphism(std::ostream&                                    os,
                             GraphMorphism const&                             m,
                             std::optional<std::pair<vertex_type, vertex_type>> base
                             = std::nullopt) {
    os << "morphism\n";
    write_graph(os, m.source());
    write_graph(os, m.target());
    for (cell_type x = 0; x < m.cell_map().size(); ++x) {
      os << "map " << x << ' ' << m.cell_map()[x] << '\n';
    }
    if (base) {
      os << "base " << base->first << ' ' << base->second << '\n';
    }
  }

  inline MorphismFile read_morphism(std::istream& is) {
    std::string line;
    if (!detail::next_line(is, line) || detail::tokens(line)
                                            != std::vector<std::string>{"morphism"}) {
      throw ParseError("expected 'morphism' header");
    }
    Graph                  src = read_graph(is);
    Graph                  tgt = read_graph(is);
    std::vector<cell_type> m(src.number_of_cells(), no_vertex);
    std::optional<std::pair<vertex_type, vertex_type>> base;
    while (detail::next_line(is, line)) {
      auto tok = detail::tokens(line);
      if (tok.size() == 3 && tok[0] == "map") {
        std::size_t x = detail::parse_index(tok[1], "source cell");
        if (x >= m.size() || m[x] != no_vertex) {
          throw ParseError("bad or repeated source cell '" + tok[1] + "'");
        }
        m[x] = detail::parse_index(tok[2], "target cell");
      } else if (tok.size() == 3 && tok[0] == "base") {
        base = std::make_pair(detail::parse_index(tok[1], "vertex"),
                              detail::parse_index(tok[2], "vertex"));
      } else {
        throw ParseError("unexpected line '" + line + "' in morphism");
      }
    }
    for (cell_type x = 0; x < m.size(); ++x) {
      if (m[x] == no_vertex) {
        throw ParseError("no image given for source cell " + std::to_string(x));
      }
    }
    return MorphismFile{GraphMorphism(std::move(src), std::move(tgt), std::move(m)),
                        base};
  }

  inline MorphismFile morphism_from_string(std::string const& text) {
    std::istringstream is(text);
    return read_morphism(is);
  }

}  // namespace stallings

#endif  // STALLINGS_COVERING_HPP_
