#ifndef STALLINGS_GRAPH_HPP_
#define STALLINGS_GRAPH_HPP_

// Finite combinatorial 1-complexes.
//
// A graph is a finite set of cells with an involution (edge reversal) and an
// idempotent start map whose image is the set of fixed points of the
// involution (the vertices).  The Graph class stores this concretely:
// vertices are 0..n-1 and the edges are half-edges 0..2m-1 where edges 2a and
// 2a+1 are mutually inverse and form arc a.  The even member of each pair is
// the canonical orientation representative.
//
// Cells are numbered in a single index space when a cell-level view is
// needed (graph maps, the raw CellComplex): vertex v is cell v, edge e is
// cell n + e.

#include <algorithm>
#include <cstddef>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace stallings {

  using vertex_type = std::size_t;
  using edge_type   = std::size_t;
  using arc_type    = std::size_t;
  using cell_type   = std::size_t;

  //! A raw cell complex: arbitrary inverse and start maps on 0..N-1.  This is
  //! the unchecked form of a graph; validate_graph() decides whether it
  //! satisfies the graph axioms.
  struct CellComplex {
    std::vector<cell_type> inverse;
    std::vector<cell_type> start;
  };

  //! First failing graph axiom, and the cell at which it fails.
  struct GraphViolation {
    std::string axiom;
    cell_type   cell;
  };

  //! Returns std::nullopt when \p cx is a valid graph.
  inline std::optional<GraphViolation> validate_graph(CellComplex const& cx) {
    std::size_t const n = cx.inverse.size();
    if (n == 0) {
      return GraphViolation{"empty graph", 0};
    }
    if (cx.start.size() != n) {
      return GraphViolation{"start map and inverse map differ in size", 0};
    }
    for (cell_type x = 0; x < n; ++x) {
      if (cx.inverse[x] >= n || cx.start[x] >= n) {
        return GraphViolation{"map leaves the cell set", x};
      }
    }
    for (cell_type x = 0; x < n; ++x) {
      if (cx.inverse[cx.inverse[x]] != x) {
        return GraphViolation{"inverse is not an involution", x};
      }
    }
    for (cell_type x = 0; x < n; ++x) {
      if (cx.start[cx.start[x]] != cx.start[x]) {
        return GraphViolation{"start map is not idempotent", x};
      }
    }
    for (cell_type x = 0; x < n; ++x) {
      bool const fixed    = cx.inverse[x] == x;
      bool const is_start = cx.start[x] == x;
      if (is_start && !fixed) {
        return GraphViolation{"involution moves a vertex", x};
      }
      if (fixed && !is_start) {
        return GraphViolation{"involution fixes an edge", x};
      }
    }
    for (cell_type x = 0; x < n; ++x) {
      // start(x) is a vertex by idempotence, and fixed points of inverse are
      // exactly the image of start by the previous loop.
      if (cx.inverse[x] != x && cx.inverse[cx.start[x]] != cx.start[x]) {
        return GraphViolation{"edge starts at a non-vertex", x};
      }
    }
    return std::nullopt;
  }

  class Graph {
   public:
    //! The trivial graph: one vertex, no edges.
    Graph() : Graph(1, {}) {}

    Graph(std::size_t                                      number_of_vertices,
          std::vector<std::pair<vertex_type, vertex_type>> arcs)
        : _nr_vertices(number_of_vertices), _arcs(std::move(arcs)) {
      if (_nr_vertices == 0) {
        throw DomainError("a graph needs at least one vertex");
      }
      for (auto const& [s, t] : _arcs) {
        if (s >= _nr_vertices || t >= _nr_vertices) {
          throw DomainError("arc endpoint " + std::to_string(std::max(s, t))
                            + " out of range");
        }
      }
      init_adjacency();
    }

    //! Builds a graph from a raw complex.  Arcs are numbered in increasing
    //! order of their lower-indexed edge cell, which becomes the canonical
    //! representative; vertices keep the relative order of their cells.
    static Graph from_complex(CellComplex const& cx) {
      if (auto bad = validate_graph(cx)) {
        throw DomainError("not a graph: " + bad->axiom + " at cell "
                          + std::to_string(bad->cell));
      }
      std::size_t const      n = cx.inverse.size();
      std::vector<size_t>    vertex_id(n, 0);
      std::size_t            nv = 0;
      for (cell_type x = 0; x < n; ++x) {
        if (cx.inverse[x] == x) {
          vertex_id[x] = nv++;
        }
      }
      std::vector<std::pair<vertex_type, vertex_type>> arcs;
      for (cell_type x = 0; x < n; ++x) {
        if (cx.inverse[x] != x && x < cx.inverse[x]) {
          arcs.emplace_back(vertex_id[cx.start[x]],
                            vertex_id[cx.start[cx.inverse[x]]]);
        }
      }
      return Graph(nv, std::move(arcs));
    }

    CellComplex to_complex() const {
      CellComplex cx;
      std::size_t N = number_of_cells();
      cx.inverse.resize(N);
      cx.start.resize(N);
      for (cell_type c = 0; c < N; ++c) {
        cx.inverse[c] = cell_inverse(c);
        cx.start[c]   = cell_start(c);
      }
      return cx;
    }

    std::size_t number_of_vertices() const noexcept {
      return _nr_vertices;
    }
    std::size_t number_of_arcs() const noexcept {
      return _arcs.size();
    }
    std::size_t number_of_edges() const noexcept {
      return 2 * _arcs.size();
    }
    std::size_t number_of_cells() const noexcept {
      return _nr_vertices + number_of_edges();
    }

    static constexpr edge_type inverse(edge_type e) noexcept {
      return e ^ 1;
    }
    static constexpr arc_type arc_of(edge_type e) noexcept {
      return e >> 1;
    }
    static constexpr edge_type edge_of(arc_type a) noexcept {
      return 2 * a;
    }
    static constexpr bool is_canonical(edge_type e) noexcept {
      return (e & 1) == 0;
    }

    vertex_type origin(edge_type e) const {
      auto const& [s, t] = _arcs[arc_of(e)];
      return is_canonical(e) ? s : t;
    }
    vertex_type terminus(edge_type e) const {
      return origin(inverse(e));
    }
    std::pair<vertex_type, vertex_type> const& arc(arc_type a) const {
      return _arcs[a];
    }
    std::vector<std::pair<vertex_type, vertex_type>> const& arcs() const {
      return _arcs;
    }

    //! Edges starting at \p v, in increasing edge order.  A loop contributes
    //! both of its edges.
    std::span<edge_type const> out_edges(vertex_type v) const {
      return {_out.data() + _out_offset[v],
              _out.data() + _out_offset[v + 1]};
    }
    std::size_t valency(vertex_type v) const {
      return _out_offset[v + 1] - _out_offset[v];
    }

    // Unified cell view.
    cell_type vertex_cell(vertex_type v) const noexcept {
      return v;
    }
    cell_type edge_cell(edge_type e) const noexcept {
      return _nr_vertices + e;
    }
    bool is_vertex_cell(cell_type c) const noexcept {
      return c < _nr_vertices;
    }
    edge_type cell_edge(cell_type c) const noexcept {
      return c - _nr_vertices;
    }
    cell_type cell_inverse(cell_type c) const {
      return is_vertex_cell(c) ? c : edge_cell(inverse(cell_edge(c)));
    }
    cell_type cell_start(cell_type c) const {
      return is_vertex_cell(c) ? c : origin(cell_edge(c));
    }

    friend bool operator==(Graph const& x, Graph const& y) {
      return x._nr_vertices == y._nr_vertices && x._arcs == y._arcs;
    }

   private:
    void init_adjacency() {
      _out_offset.assign(_nr_vertices + 1, 0);
      for (edge_type e = 0; e < number_of_edges(); ++e) {
        ++_out_offset[origin(e) + 1];
      }
      std::partial_sum(
          _out_offset.begin(), _out_offset.end(), _out_offset.begin());
      _out.resize(number_of_edges());
      std::vector<std::size_t> fill(_out_offset.begin(), _out_offset.end() - 1);
      for (edge_type e = 0; e < number_of_edges(); ++e) {
        _out[fill[origin(e)]++] = e;
      }
    }

    std::size_t                                      _nr_vertices;
    std::vector<std::pair<vertex_type, vertex_type>> _arcs;
    std::vector<std::size_t>                         _out_offset;
    std::vector<edge_type>                           _out;
  };

  //! A set of vertices and arcs of a fixed graph.  It is a subgraph when it
  //! contains the endpoints of each of its arcs; add_arc() maintains this.
  class Subgraph {
   public:
    Subgraph() = default;
    explicit Subgraph(Graph const& g)
        : _vertices(g.number_of_vertices(), false),
          _arcs(g.number_of_arcs(), false) {}

    static Subgraph whole(Graph const& g) {
      Subgraph s(g);
      s._vertices.assign(g.number_of_vertices(), true);
      s._arcs.assign(g.number_of_arcs(), true);
      return s;
    }

    void add_vertex(vertex_type v) {
      _vertices.at(v) = true;
    }
    void add_arc(Graph const& g, arc_type a) {
      _arcs.at(a)                 = true;
      _vertices[g.arc(a).first]  = true;
      _vertices[g.arc(a).second] = true;
    }
    // Raw arc insertion; the caller restores closure under start.
    void set_arc(arc_type a, bool value) {
      _arcs.at(a) = value;
    }
    void set_vertex(vertex_type v, bool value) {
      _vertices.at(v) = value;
    }

    bool contains_vertex(vertex_type v) const {
      return _vertices[v];
    }
    bool contains_arc(arc_type a) const {
      return _arcs[a];
    }
    bool contains_edge(edge_type e) const {
      return _arcs[Graph::arc_of(e)];
    }

    std::size_t number_of_vertices() const {
      return std::count(_vertices.begin(), _vertices.end(), true);
    }
    std::size_t number_of_arcs() const {
      return std::count(_arcs.begin(), _arcs.end(), true);
    }
    std::vector<vertex_type> vertices() const {
      std::vector<vertex_type> out;
      for (vertex_type v = 0; v < _vertices.size(); ++v) {
        if (_vertices[v]) {
          out.push_back(v);
        }
      }
      return out;
    }
    std::vector<arc_type> arcs() const {
      std::vector<arc_type> out;
      for (arc_type a = 0; a < _arcs.size(); ++a) {
        if (_arcs[a]) {
          out.push_back(a);
        }
      }
      return out;
    }

    //! Whether the sets are sized for \p g and closed under start.
    bool is_subgraph_of(Graph const& g) const {
      if (_vertices.size() != g.number_of_vertices()
          || _arcs.size() != g.number_of_arcs()) {
        return false;
      }
      for (arc_type a = 0; a < _arcs.size(); ++a) {
        if (_arcs[a]
            && (!_vertices[g.arc(a).first] || !_vertices[g.arc(a).second])) {
          return false;
        }
      }
      return true;
    }

    bool intersects(Subgraph const& other) const {
      for (std::size_t v = 0; v < _vertices.size(); ++v) {
        if (_vertices[v] && other._vertices[v]) {
          return true;
        }
      }
      return false;
    }

    friend bool operator==(Subgraph const&, Subgraph const&) = default;

   private:
    std::vector<bool> _vertices;
    std::vector<bool> _arcs;
  };

  //! An edge path: a base vertex and a sequence of edges with
  //! terminus(e_i) == origin(e_{i+1}).  The empty sequence is the trivial path
  //! at base.
  struct Path {
    vertex_type            base = 0;
    std::vector<edge_type> edges;

    friend bool operator==(Path const&, Path const&) = default;
  };

  inline bool is_well_formed(Graph const& g, Path const& p) {
    if (p.base >= g.number_of_vertices()) {
      return false;
    }
    vertex_type at = p.base;
    for (edge_type e : p.edges) {
      if (e >= g.number_of_edges() || g.origin(e) != at) {
        return false;
      }
      at = g.terminus(e);
    }
    return true;
  }

  inline vertex_type path_end(Graph const& g, Path const& p) {
    return p.edges.empty() ? p.base : g.terminus(p.edges.back());
  }

  inline bool is_closed(Graph const& g, Path const& p) {
    return path_end(g, p) == p.base;
  }

  //! No spur e, inverse(e) anywhere in the path.
  inline bool is_reduced(Path const& p) {
    for (std::size_t i = 0; i + 1 < p.edges.size(); ++i) {
      if (p.edges[i + 1] == Graph::inverse(p.edges[i])) {
        return false;
      }
    }
    return true;
  }

  //! Free reduction: deletes spurs until none remain.  The result is the
  //! unique reduced path homotopic to \p p rel endpoints.
  inline Path reduce_path(Path const& p) {
    Path out{p.base, {}};
    for (edge_type e : p.edges) {
      if (!out.edges.empty() && out.edges.back() == Graph::inverse(e)) {
        out.edges.pop_back();
      } else {
        out.edges.push_back(e);
      }
    }
    return out;
  }

  //! Component index of every vertex; components are numbered in order of
  //! their smallest vertex.
  inline std::vector<std::size_t> component_labels(Graph const& g) {
    constexpr std::size_t    unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> label(g.number_of_vertices(), unset);
    std::vector<vertex_type> stack;
    std::size_t              next = 0;
    for (vertex_type root = 0; root < g.number_of_vertices(); ++root) {
      if (label[root] != unset) {
        continue;
      }
      label[root] = next;
      stack.push_back(root);
      while (!stack.empty()) {
        vertex_type v = stack.back();
        stack.pop_back();
        for (edge_type e : g.out_edges(v)) {
          vertex_type w = g.terminus(e);
          if (label[w] == unset) {
            label[w] = next;
            stack.push_back(w);
          }
        }
      }
      ++next;
    }
    return label;
  }

  //! Partition of the graph into its connected components.
  inline std::vector<Subgraph> components(Graph const& g) {
    auto const  label = component_labels(g);
    std::size_t count
        = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
    std::vector<Subgraph> out(count, Subgraph(g));
    for (vertex_type v = 0; v < g.number_of_vertices(); ++v) {
      out[label[v]].add_vertex(v);
    }
    for (arc_type a = 0; a < g.number_of_arcs(); ++a) {
      out[label[g.arc(a).first]].add_arc(g, a);
    }
    return out;
  }

  inline bool is_connected(Graph const& g) {
    auto const label = component_labels(g);
    return std::all_of(
        label.begin(), label.end(), [](std::size_t c) { return c == 0; });
  }

  namespace detail {
    class UnionFind {
     public:
      explicit UnionFind(std::size_t n) : _parent(n) {
        std::iota(_parent.begin(), _parent.end(), 0);
      }
      std::size_t find(std::size_t x) {
        while (_parent[x] != x) {
          _parent[x] = _parent[_parent[x]];
          x          = _parent[x];
        }
        return x;
      }
      // Smallest root wins.  Returns false if already joined.
      bool unite(std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x == y) {
          return false;
        }
        if (y < x) {
          std::swap(x, y);
        }
        _parent[y] = x;
        return true;
      }
      std::size_t size() const {
        return _parent.size();
      }

     private:
      std::vector<std::size_t> _parent;
    };
  }  // namespace detail

  //! A connected subgraph with no closed reduced path of positive length.
  inline bool is_tree(Graph const& g, Subgraph const& s) {
    if (!s.is_subgraph_of(g) || s.number_of_vertices() == 0) {
      return false;
    }
    detail::UnionFind uf(g.number_of_vertices());
    for (arc_type a : s.arcs()) {
      if (!uf.unite(g.arc(a).first, g.arc(a).second)) {
        return false;
      }
    }
    auto        vs   = s.vertices();
    std::size_t root = uf.find(vs.front());
    return std::all_of(vs.begin(), vs.end(), [&](vertex_type v) {
      return uf.find(v) == root;
    });
  }

  struct SpanningForest {
    Subgraph              forest;
    std::vector<arc_type> omitted;  // increasing arc order
  };

  //! A spanning forest (one tree per component, every vertex included) that
  //! contains each of the given mutually disjoint trees.
  inline SpanningForest spanning_forest(Graph const&              g,
                                        std::span<Subgraph const> trees = {}) {
    for (std::size_t i = 0; i < trees.size(); ++i) {
      if (!is_tree(g, trees[i])) {
        throw DomainError("given subgraph " + std::to_string(i)
                          + " is not a tree");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (trees[i].intersects(trees[j])) {
          throw DomainError("given trees " + std::to_string(j) + " and "
                            + std::to_string(i) + " are not disjoint");
        }
      }
    }
    SpanningForest    out{Subgraph::whole(g), {}};
    detail::UnionFind uf(g.number_of_vertices());
    for (arc_type a = 0; a < g.number_of_arcs(); ++a) {
      out.forest.set_arc(a, false);
    }
    for (auto const& t : trees) {
      for (arc_type a : t.arcs()) {
        uf.unite(g.arc(a).first, g.arc(a).second);
        out.forest.set_arc(a, true);
      }
    }
    for (arc_type a = 0; a < g.number_of_arcs(); ++a) {
      if (out.forest.contains_arc(a)) {
        continue;
      }
      if (uf.unite(g.arc(a).first, g.arc(a).second)) {
        out.forest.set_arc(a, true);
      } else {
        out.omitted.push_back(a);
      }
    }
    return out;
  }

  struct Homology {
    std::vector<std::size_t> component_ranks;  // in component order
    std::size_t              h0 = 0;
    std::size_t              h1 = 0;
  };

  //! Ranks of H0 and H1, and the rank of each component, computed as the
  //! number of arcs omitted by a spanning forest.
  inline Homology rank_and_homology(Graph const& g) {
    auto const sf    = spanning_forest(g);
    auto const label = component_labels(g);
    Homology   out;
    out.h0 = label.empty()
                 ? 0
                 : *std::max_element(label.begin(), label.end()) + 1;
    out.component_ranks.assign(out.h0, 0);
    for (arc_type a : sf.omitted) {
      ++out.component_ranks[label[g.arc(a).first]];
    }
    out.h1 = sf.omitted.size();
    return out;
  }

  //! Rank of a connected graph.
  inline std::size_t rank(Graph const& g) {
    auto h = rank_and_homology(g);
    if (h.h0 != 1) {
      throw DomainError("rank of a disconnected graph");
    }
    return h.h1;
  }

  //! Result of a quotient: the new graph and the cell map onto it.
  struct Quotient {
    Graph                  graph;
    std::vector<cell_type> cell_map;  // source cell -> quotient cell
  };

  //! Collapses each subgraph of a family of mutually disjoint subgraphs to a
  //! vertex of its own.  Arcs of a collapsed subgraph map to that vertex;
  //! every other arc survives, possibly as a loop.
  inline Quotient quotient(Graph const& g, std::span<Subgraph const> family) {
    constexpr std::size_t    none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> owner(g.number_of_vertices(), none);
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (!family[i].is_subgraph_of(g)) {
        throw DomainError("member " + std::to_string(i)
                          + " of the quotient family is not a subgraph");
      }
      for (vertex_type v : family[i].vertices()) {
        if (owner[v] != none) {
          throw DomainError("subgraphs " + std::to_string(owner[v]) + " and "
                            + std::to_string(i) + " overlap at vertex "
                            + std::to_string(v));
        }
        owner[v] = i;
      }
    }
    std::vector<vertex_type> class_vertex(family.size(), none);
    std::vector<vertex_type> vmap(g.number_of_vertices());
    std::size_t              nv = 0;
    for (vertex_type v = 0; v < g.number_of_vertices(); ++v) {
      if (owner[v] == none) {
        vmap[v] = nv++;
      } else {
        if (class_vertex[owner[v]] == none) {
          class_vertex[owner[v]] = nv++;
        }
        vmap[v] = class_vertex[owner[v]];
      }
    }
    std::vector<std::pair<vertex_type, vertex_type>> arcs;
    std::vector<std::size_t>                         amap(g.number_of_arcs(), none);
    for (arc_type a = 0; a < g.number_of_arcs(); ++a) {
      auto [s, t]       = g.arc(a);
      bool const inside = owner[s] != none && family[owner[s]].contains_arc(a);
      if (!inside) {
        amap[a] = arcs.size();
        arcs.emplace_back(vmap[s], vmap[t]);
      }
    }
    Quotient out{Graph(nv, std::move(arcs)), {}};
    out.cell_map.resize(g.number_of_cells());
    for (vertex_type v = 0; v < g.number_of_vertices(); ++v) {
      out.cell_map[g.vertex_cell(v)] = out.graph.vertex_cell(vmap[v]);
    }
    for (edge_type e = 0; e < g.number_of_edges(); ++e) {
      arc_type a = Graph::arc_of(e);
      out.cell_map[g.edge_cell(e)]
          = amap[a] == none
                ? out.graph.vertex_cell(vmap[g.origin(e)])
                : out.graph.edge_cell(Graph::edge_of(amap[a]) | (e & 1));
    }
    return out;
  }

  //! The union of all closed reduced paths at \p v.
  //!
  //! Computed by repeatedly deleting valency-one vertices other than v (with
  //! their arc).  In a finite connected graph what remains is exactly the
  //! union of the closed reduced paths at v: every surviving vertex other
  //! than v has valency at least two, so each surviving arc extends to a
  //! reduced cycle reachable from v without backtracking.  When v hangs off
  //! the rest by a segment, that segment is kept.
  inline Subgraph spine(Graph const& g, vertex_type v) {
    if (v >= g.number_of_vertices()) {
      throw DomainError("spine basepoint out of range");
    }
    if (!is_connected(g)) {
      throw DomainError("spine of a disconnected graph");
    }
    Subgraph                 s = Subgraph::whole(g);
    std::vector<std::size_t> val(g.number_of_vertices());
    for (vertex_type w = 0; w < g.number_of_vertices(); ++w) {
      val[w] = g.valency(w);
    }
    std::vector<vertex_type> leaves;
    for (vertex_type w = 0; w < g.number_of_vertices(); ++w) {
      if (w != v && val[w] <= 1) {
        leaves.push_back(w);
      }
    }
    while (!leaves.empty()) {
      vertex_type w = leaves.back();
      leaves.pop_back();
      if (!s.contains_vertex(w)) {
        continue;
      }
      s.set_vertex(w, false);
      for (edge_type e : g.out_edges(w)) {
        if (!s.contains_edge(e)) {
          continue;
        }
        s.set_arc(Graph::arc_of(e), false);
        vertex_type x = g.terminus(e);
        if (--val[x] == 1 && x != v) {
          leaves.push_back(x);
        }
      }
    }
    // A tree shrinks to {v}; anything pruned down to valency 0 other than v
    // was already removed.
    return s;
  }

  //! A subgraph realised as a graph in its own right, with the inclusion.
  struct InducedGraph {
    Graph                    graph;
    std::vector<vertex_type> vertex_to_parent;
    std::vector<arc_type>    arc_to_parent;
    std::vector<std::size_t> parent_to_vertex;  // npos if absent
  };

  inline InducedGraph induced_graph(Graph const& g, Subgraph const& s) {
    if (!s.is_subgraph_of(g) || s.number_of_vertices() == 0) {
      throw DomainError("cannot realise an empty or ill-formed subgraph");
    }
    InducedGraph out;
    out.parent_to_vertex.assign(g.number_of_vertices(),
                                static_cast<std::size_t>(-1));
    out.vertex_to_parent = s.vertices();
    for (std::size_t i = 0; i < out.vertex_to_parent.size(); ++i) {
      out.parent_to_vertex[out.vertex_to_parent[i]] = i;
    }
    std::vector<std::pair<vertex_type, vertex_type>> arcs;
    out.arc_to_parent = s.arcs();
    for (arc_type a : out.arc_to_parent) {
      arcs.emplace_back(out.parent_to_vertex[g.arc(a).first],
                        out.parent_to_vertex[g.arc(a).second]);
    }
    out.graph = Graph(out.vertex_to_parent.size(), std::move(arcs));
    return out;
  }

  //! Disjoint union of two graphs; the second graph's vertices and arcs are
  //! shifted past those of the first.
  inline Graph disjoint_union(Graph const& g1, Graph const& g2) {
    auto       arcs = g1.arcs();
    auto const off  = g1.number_of_vertices();
    for (auto [s, t] : g2.arcs()) {
      arcs.emplace_back(s + off, t + off);
    }
    return Graph(g1.number_of_vertices() + g2.number_of_vertices(),
                 std::move(arcs));
  }

  struct WedgeSum {
    Graph                    graph;
    std::vector<vertex_type> left;   // vertex map from the first summand
    std::vector<vertex_type> right;  // vertex map from the second summand
  };

  //! Wedge sum of g1 and g2 along a discrete graph Θ: the k-th vertex of Θ is
  //! sent to theta[k].first in g1 and to theta[k].second in g2.  Both
  //! inclusions of Θ must be injective.
  inline WedgeSum
  wedge(Graph const&                                         g1,
        Graph const&                                         g2,
        std::span<std::pair<vertex_type, vertex_type> const> theta) {
    if (theta.empty()) {
      throw DomainError("wedge along an empty graph is a disjoint union");
    }
    std::vector<bool> hit1(g1.number_of_vertices()),
        hit2(g2.number_of_vertices());
    for (auto [x, y] : theta) {
      if (x >= hit1.size() || y >= hit2.size() || hit1[x] || hit2[y]) {
        throw DomainError("wedge identification is not an embedding");
      }
      hit1[x] = hit2[y] = true;
    }
    constexpr std::size_t    none = static_cast<std::size_t>(-1);
    std::vector<vertex_type> glue(g2.number_of_vertices(), none);
    for (auto [x, y] : theta) {
      glue[y] = x;
    }
    WedgeSum out;
    out.left.resize(g1.number_of_vertices());
    std::iota(out.left.begin(), out.left.end(), 0);
    std::size_t nv = g1.number_of_vertices();
    out.right.resize(g2.number_of_vertices());
    for (vertex_type y = 0; y < g2.number_of_vertices(); ++y) {
      out.right[y] = glue[y] == none ? nv++ : glue[y];
    }
    auto arcs = g1.arcs();
    for (auto [s, t] : g2.arcs()) {
      arcs.emplace_back(out.right[s], out.right[t]);
    }
    out.graph = Graph(nv, std::move(arcs));
    return out;
  }

  //! The single-vertex graph with \p r loops.
  inline Graph rose(std::size_t r) {
    return Graph(1, std::vector<std::pair<vertex_type, vertex_type>>(r, {0, 0}));
  }

  ////////////////////////////////////////////////////////////////////////
  // Text and DOT formats
  ////////////////////////////////////////////////////////////////////////

  //! `graph <n_vertices> <n_arcs>` followed by `arc <id> <s> <t>` lines.
  inline void write_graph(std::ostream& os, Graph const& g) {
    os << "graph " << g.number_of_vertices() << ' ' << g.number_of_arcs()
       << '\n';
    for (arc_type a = 0; a < g.number_of_arcs(); ++a) {
      os << "arc " << a << ' ' << g.arc(a).first << ' ' << g.arc(a).second
         << '\n';
    }
  }

  inline std::string to_string(Graph const& g) {
    std::ostringstream os;
    write_graph(os, g);
    return os.str();
  }

  namespace detail {
    // Next non-blank line, or false at end of input.
    inline bool next_line(std::istream& is, std::string& line) {
      while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) {
          return true;
        }
      }
      return false;
    }

    inline std::size_t parse_index(std::string const& tok,
                                   std::string const& what) {
      if (tok.empty()
          || tok.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError("expected " + what + ", got '" + tok + "'");
      }
      return std::stoull(tok);
    }

    inline std::vector<std::string> tokens(std::string const& line) {
      std::istringstream       ss(line);
      std::vector<std::string> out;
      std::string              tok;
      while (ss >> tok) {
        out.push_back(tok);
      }
      return out;
    }
  }  // namespace detail

  //! Reads one graph block from \p is.
  inline Graph read_graph(std::istream& is) {
    std::string line;
    if (!detail::next_line(is, line)) {
      throw ParseError("expected 'graph <n_vertices> <n_arcs>', got end of input");
    }
    auto head = detail::tokens(line);
    if (head.size() != 3 || head[0] != "graph") {
      throw ParseError("expected 'graph <n_vertices> <n_arcs>', got '" + line
                       + "'");
    }
    std::size_t const nv = detail::parse_index(head[1], "vertex count");
    std::size_t const na = detail::parse_index(head[2], "arc count");
    std::vector<std::pair<vertex_type, vertex_type>> arcs(na);
    std::vector<bool>                                seen(na, false);
    for (std::size_t i = 0; i < na; ++i) {
      if (!detail::next_line(is, line)) {
        throw ParseError("expected " + std::to_string(na) + " arc lines, got "
                         + std::to_string(i));
      }
      auto tok = detail::tokens(line);
      if (tok.size() != 4 || tok[0] != "arc") {
        throw ParseError("expected 'arc <id> <s> <t>', got '" + line + "'");
      }
      std::size_t id = detail::parse_index(tok[1], "arc id");
      if (id >= na || seen[id]) {
        throw ParseError("bad or repeated arc id '" + tok[1] + "'");
      }
      seen[id] = true;
      arcs[id] = {detail::parse_index(tok[2], "vertex"),
                  detail::parse_index(tok[3], "vertex")};
      if (arcs[id].first >= nv || arcs[id].second >= nv) {
        throw ParseError("arc " + tok[1] + " has an endpoint out of range");
      }
    }
    if (nv == 0) {
      throw ParseError("a graph needs at least one vertex");
    }
    return Graph(nv, std::move(arcs));
  }

  inline Graph graph_from_string(std::string const& text) {
    std::istringstream is(text);
    return read_graph(is);
  }

  inline void write_dot(std::ostream& os, Graph const& g) {
    os << "digraph G {\n";
    for (vertex_type v = 0; v < g.number_of_vertices(); ++v) {
      os << "  " << v << ";\n";
    }
    for (arc_type a = 0; a < g.number_of_arcs(); ++a) {
      os << "  " << g.arc(a).first << " -> " << g.arc(a).second
         << " [label=\"" << a << "\"];\n";
    }
    os << "}\n";
  }

}  // namespace stallings

#endif  // STALLINGS_GRAPH_HPP_
