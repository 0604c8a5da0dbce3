#ifndef STALLINGS_CORE_HPP_
#define STALLINGS_CORE_HPP_

// Pointed labeled cores (Stallings graphs) of finitely generated subgroups of
// the free group F_r.
//
// A core is a finite connected graph immersed in the rose with r petals,
// recorded as a partial transition table: delta(v, l) for a label l in
// 0..2r-1 (see Letter).  delta(v, l) == w iff delta(w, l^1) == v.  Every
// vertex other than the basepoint has valency at least two, so the graph is
// the spine at the basepoint of the covering of the rose that corresponds to
// the subgroup.  Cores are always kept in canonical form: vertices numbered
// by breadth-first search from the basepoint (which is 0), exploring labels
// in increasing order.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "word.hpp"

namespace stallings {

  //! Degree of a covering or index of a subgroup; empty means infinite.
  class Degree {
   public:
    Degree() = default;  // infinite
    explicit Degree(std::size_t n) : _n(n) {}

    static Degree infinite() {
      return Degree();
    }

    bool is_finite() const noexcept {
      return _n.has_value();
    }
    std::size_t value() const {
      if (!_n) {
        throw DomainError("degree is infinite");
      }
      return *_n;
    }
    std::string to_string() const {
      return _n ? std::to_string(*_n) : std::string("infinite");
    }

    friend bool operator==(Degree const&, Degree const&) = default;

   private:
    std::optional<std::size_t> _n;
  };

  inline constexpr std::size_t no_vertex = static_cast<std::size_t>(-1);

  class LabeledCore;

  namespace detail {
    // Deterministic partial labeled graph with union-find folding.  Vertices
    // are never deleted while folding; merged vertices are forwarded to their
    // root.  Labels 0..2r-1.
    class FoldingBuilder {
     public:
      explicit FoldingBuilder(std::size_t r) : _r(r) {}

      std::size_t add_vertex() {
        _table.resize(_table.size() + 2 * _r, no_vertex);
        _parent.push_back(_parent.size());
        return _parent.size() - 1;
      }

      std::size_t find(std::size_t v) {
        while (_parent[v] != v) {
          _parent[v] = _parent[_parent[v]];
          v          = _parent[v];
        }
        return v;
      }

      // Adds v -l-> w (and w -l^1-> v), then folds to determinism.
      void add_edge(std::size_t v, std::size_t l, std::size_t w) {
        std::deque<std::pair<std::size_t, std::size_t>> pending;
        set_transition(v, l, w, pending);
        set_transition(w, l ^ 1, v, pending);
        fold(pending);
      }

      void identify(std::size_t v, std::size_t w) {
        std::deque<std::pair<std::size_t, std::size_t>> pending;
        pending.emplace_back(v, w);
        fold(pending);
      }

      // Follows w from v, creating a fresh chain of vertices for the part
      // that is not already present; returns the endpoint.
      std::size_t trace_or_extend(std::size_t v, Word const& w) {
        v = find(v);
        for (Letter x : w) {
          std::size_t next = target(v, x.label());
          if (next == no_vertex) {
            next = add_vertex();
            add_edge(v, x.label(), next);
            next = find(next);
          }
          v = next;
        }
        return v;
      }

      // Adds a closed loop at v spelling w (w reduced, possibly empty).
      void add_loop(std::size_t v, Word const& w) {
        if (w.empty()) {
          return;
        }
        std::size_t at = v;
        for (std::size_t i = 0; i < w.size(); ++i) {
          std::size_t next = (i + 1 == w.size()) ? v : add_vertex();
          add_edge(at, w[i].label(), next);
          at = next;
        }
      }

      std::size_t target(std::size_t v, std::size_t l) {
        std::size_t t = _table[find(v) * 2 * _r + l];
        return t == no_vertex ? no_vertex : find(t);
      }

      std::size_t rank() const {
        return _r;
      }
      std::size_t size() const {
        return _parent.size();
      }

      LabeledCore finish(std::size_t base);

     private:
      void set_transition(std::size_t                                      v,
                          std::size_t                                      l,
                          std::size_t                                      w,
                          std::deque<std::pair<std::size_t, std::size_t>>& q) {
        v              = find(v);
        std::size_t& t = _table[v * 2 * _r + l];
        if (t == no_vertex) {
          t = w;
        } else if (find(t) != find(w)) {
          q.emplace_back(t, w);
        }
      }

      // Process identifications first-in first-out; the smaller root wins.
      void fold(std::deque<std::pair<std::size_t, std::size_t>>& q) {
        while (!q.empty()) {
          auto [x, y] = q.front();
          q.pop_front();
          x = find(x);
          y = find(y);
          if (x == y) {
            continue;
          }
          if (y < x) {
            std::swap(x, y);
          }
          _parent[y] = x;
          for (std::size_t l = 0; l < 2 * _r; ++l) {
            std::size_t t = _table[y * 2 * _r + l];
            if (t != no_vertex) {
              set_transition(x, l, t, q);
            }
          }
        }
      }

      std::size_t              _r;
      std::vector<std::size_t> _table;
      std::vector<std::size_t> _parent;
    };
  }  // namespace detail

  class LabeledCore {
   public:
    //! The core of the trivial subgroup of F_r.
    explicit LabeledCore(std::size_t r = 2)
        : _r(r), _n(1), _table(2 * r, no_vertex) {
      if (r == 0) {
        throw DomainError("ambient rank must be at least 1");
      }
    }

    //! Builds a core from an arbitrary deterministic transition table with
    //! basepoint \p base: the table is restricted to the component of base,
    //! pruned to its spine at base, and put in canonical form.  Throws if the
    //! table is not a consistent partial involutive labeling.
    static LabeledCore from_table(std::size_t              r,
                                  std::size_t              n,
                                  std::size_t              base,
                                  std::vector<std::size_t> table) {
      if (r == 0) {
        throw DomainError("ambient rank must be at least 1");
      }
      if (table.size() != n * 2 * r || base >= n) {
        throw DomainError("transition table has the wrong shape");
      }
      for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t l = 0; l < 2 * r; ++l) {
          std::size_t w = table[v * 2 * r + l];
          if (w == no_vertex) {
            continue;
          }
          if (w >= n || table[w * 2 * r + (l ^ 1)] != v) {
            throw DomainError("transition table is not involutive at vertex "
                              + std::to_string(v));
          }
        }
      }
      prune(r, n, base, table);
      return canonicalize(r, n, base, table);
    }

    //! Subgroup generated by \p gens: a wedge of loops spelling the reduced
    //! generators, folded and pruned.
    static LabeledCore from_words(std::size_t r, std::span<Word const> gens) {
      if (r == 0) {
        throw DomainError("ambient rank must be at least 1");
      }
      detail::FoldingBuilder b(r);
      std::size_t            base = b.add_vertex();
      for (Word const& g : gens) {
        check_alphabet(g, r);
        b.add_loop(base, reduce(g));
      }
      return b.finish(base);
    }

    static LabeledCore from_words(std::size_t r, std::vector<Word> const& gens) {
      return from_words(r, std::span<Word const>(gens));
    }

    std::size_t ambient_rank() const noexcept {
      return _r;
    }
    std::size_t number_of_labels() const noexcept {
      return 2 * _r;
    }
    std::size_t number_of_vertices() const noexcept {
      return _n;
    }
    static constexpr std::size_t base() noexcept {
      return 0;
    }

    //! delta(v, l), or no_vertex.
    std::size_t target(std::size_t v, std::size_t l) const {
      return _table[v * 2 * _r + l];
    }
    std::size_t target(std::size_t v, Letter l) const {
      return target(v, l.label());
    }
    std::vector<std::size_t> const& table() const noexcept {
      return _table;
    }

    std::size_t valency(std::size_t v) const {
      std::size_t d = 0;
      for (std::size_t l = 0; l < 2 * _r; ++l) {
        d += target(v, l) != no_vertex;
      }
      return d;
    }

    //! Number of arcs (positive-label transitions).
    std::size_t number_of_arcs() const {
      std::size_t m = 0;
      for (std::size_t v = 0; v < _n; ++v) {
        for (std::size_t g = 0; g < _r; ++g) {
          m += target(v, 2 * g) != no_vertex;
        }
      }
      return m;
    }

    //! Rank of the subgroup: 1 + |arcs| - |vertices|.
    std::size_t rank() const {
      return 1 + number_of_arcs() - _n;
    }

    bool is_trivial() const {
      return _n == 1 && number_of_arcs() == 0;
    }

    //! Every vertex has all 2r transitions.
    bool is_complete() const {
      return std::find(_table.begin(), _table.end(), no_vertex) == _table.end();
    }

    //! End of the path spelling \p w from \p v, or no_vertex where the path
    //! leaves the core.
    std::size_t walk(std::size_t v, Word const& w) const {
      for (Letter l : w) {
        if (l.generator() >= _r) {
          throw DomainError("generator '" + std::string(1, l.to_char())
                            + "' out of range for rank "
                            + std::to_string(_r));
        }
        v = target(v, l);
        if (v == no_vertex) {
          return no_vertex;
        }
      }
      return v;
    }

    friend bool operator==(LabeledCore const&, LabeledCore const&) = default;

   private:
    friend class detail::FoldingBuilder;

    LabeledCore(std::size_t r, std::size_t n, std::vector<std::size_t> table)
        : _r(r), _n(n), _table(std::move(table)) {}

    // Deletes valency <= 1 vertices other than base, in place.  Deleted rows
    // are left without transitions; they, and anything outside the component
    // of base, are dropped by canonicalize().
    static void prune(std::size_t               r,
                      std::size_t               n,
                      std::size_t               base,
                      std::vector<std::size_t>& table) {
      std::size_t const L = 2 * r;
      std::vector<std::size_t> deg(n, 0);
      for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t l = 0; l < L; ++l) {
          deg[v] += table[v * L + l] != no_vertex;
        }
      }
      std::vector<std::size_t> stack;
      for (std::size_t v = 0; v < n; ++v) {
        if (v != base && deg[v] <= 1) {
          stack.push_back(v);
        }
      }
      while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t l = 0; l < L; ++l) {
          std::size_t w = table[v * L + l];
          if (w == no_vertex) {
            continue;
          }
          table[v * L + l]       = no_vertex;
          table[w * L + (l ^ 1)] = no_vertex;
          --deg[v];
          if (w != v && --deg[w] == 1 && w != base) {
            stack.push_back(w);
          }
        }
      }
    }

    static LabeledCore canonicalize(std::size_t                     r,
                                    std::size_t                     n,
                                    std::size_t                     base,
                                    std::vector<std::size_t> const& table) {
      std::size_t const        L = 2 * r;
      std::vector<std::size_t> order;
      std::vector<std::size_t> id(n, no_vertex);
      id[base] = 0;
      order.push_back(base);
      for (std::size_t i = 0; i < order.size(); ++i) {
        std::size_t v = order[i];
        for (std::size_t l = 0; l < L; ++l) {
          std::size_t w = table[v * L + l];
          if (w != no_vertex && id[w] == no_vertex) {
            id[w] = order.size();
            order.push_back(w);
          }
        }
      }
      std::vector<std::size_t> out(order.size() * L, no_vertex);
      for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t l = 0; l < L; ++l) {
          std::size_t w = table[order[i] * L + l];
          if (w != no_vertex) {
            out[i * L + l] = id[w];
          }
        }
      }
      return LabeledCore(r, order.size(), std::move(out));
    }

    std::size_t              _r;
    std::size_t              _n;
    std::vector<std::size_t> _table;
  };

  inline LabeledCore detail::FoldingBuilder::finish(std::size_t base) {
    std::size_t const L = 2 * _r;
    std::size_t const n = size();
    // Compact the roots.
    std::vector<std::size_t> id(n, no_vertex);
    std::size_t              m = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (find(v) == v) {
        id[v] = m++;
      }
    }
    std::vector<std::size_t> table(m * L, no_vertex);
    for (std::size_t v = 0; v < n; ++v) {
      if (find(v) != v) {
        continue;
      }
      for (std::size_t l = 0; l < L; ++l) {
        std::size_t t = _table[v * L + l];
        if (t != no_vertex) {
          table[id[v] * L + l] = id[find(t)];
        }
      }
    }
    return LabeledCore::from_table(_r, m, id[find(base)], std::move(table));
  }

  ////////////////////////////////////////////////////////////////////////
  // Subgroup queries
  ////////////////////////////////////////////////////////////////////////

  //! Membership: the reduced word lifts to a closed path at the basepoint.
  inline bool contains(LabeledCore const& core, Word const& w) {
    check_alphabet(w, core.ambient_rank());
    return core.walk(LabeledCore::base(), reduce(w)) == LabeledCore::base();
  }

  //! Index of the subgroup in F_r, which is the degree of the corresponding
  //! covering of the rose: the vertex count if the core is complete,
  //! otherwise infinite (a missing direction leads into an infinite hanging
  //! tree).  For r = 1 the same test applies: a complete core is a cycle
  //! through the basepoint.
  inline Degree index(LabeledCore const& core) {
    return core.is_complete() ? Degree(core.number_of_vertices())
                              : Degree::infinite();
  }

  //! Words along a breadth-first spanning tree from the basepoint
  //! (label-ordered), together with the tree-edge flag of each positive
  //! transition.
  struct CoreTree {
    std::vector<Word>        path_to;   // word from base to each vertex
    std::vector<std::size_t> parent;    // no_vertex at the base
    std::vector<std::size_t> parent_label;
  };

  inline CoreTree spanning_tree(LabeledCore const& core) {
    std::size_t const n = core.number_of_vertices();
    CoreTree          t{std::vector<Word>(n),
               std::vector<std::size_t>(n, no_vertex),
               std::vector<std::size_t>(n, no_vertex)};
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> q{LabeledCore::base()};
    seen[LabeledCore::base()] = true;
    while (!q.empty()) {
      std::size_t v = q.front();
      q.pop_front();
      for (std::size_t l = 0; l < core.number_of_labels(); ++l) {
        std::size_t w = core.target(v, l);
        if (w != no_vertex && !seen[w]) {
          seen[w]          = true;
          t.parent[w]      = v;
          t.parent_label[w] = l;
          t.path_to[w]     = t.path_to[v];
          t.path_to[w].push_back(Letter::from_label(l));
          q.push_back(w);
        }
      }
    }
    return t;
  }

  //! Free basis of the subgroup: one Schreier generator per arc omitted by
  //! the breadth-first spanning tree, in (vertex, label) order.
  inline std::vector<Word> schreier_basis(LabeledCore const& core) {
    auto const        tree = spanning_tree(core);
    std::vector<Word> basis;
    for (std::size_t v = 0; v < core.number_of_vertices(); ++v) {
      for (std::size_t g = 0; g < core.ambient_rank(); ++g) {
        std::size_t const l = 2 * g;
        std::size_t const w = core.target(v, l);
        if (w == no_vertex) {
          continue;
        }
        bool const in_tree = (tree.parent[w] == v && tree.parent_label[w] == l)
                             || (tree.parent[v] == w
                                 && tree.parent_label[v] == (l ^ 1));
        if (in_tree) {
          continue;
        }
        Word word = tree.path_to[v];
        word.push_back(Letter::from_label(l));
        basis.push_back(word * inverse(tree.path_to[w]));
      }
    }
    return basis;
  }

  //! The core of g^{-1} A g, obtained by moving the basepoint along the path
  //! spelling g (growing the core where the path leaves it).  A word w lies
  //! in the result iff g w g^{-1} lies in A.
  inline LabeledCore rebase(LabeledCore const& core, Word const& g) {
    check_alphabet(g, core.ambient_rank());
    detail::FoldingBuilder b(core.ambient_rank());
    for (std::size_t v = 0; v < core.number_of_vertices(); ++v) {
      b.add_vertex();
    }
    for (std::size_t v = 0; v < core.number_of_vertices(); ++v) {
      for (std::size_t l = 0; l < core.number_of_labels(); l += 2) {
        std::size_t w = core.target(v, l);
        if (w != no_vertex) {
          b.add_edge(v, l, w);
        }
      }
    }
    std::size_t end = b.trace_or_extend(LabeledCore::base(), reduce(g));
    return b.finish(end);
  }

  namespace detail {
    // A growable deterministic partial transition table; no folding, no
    // pruning.  Used where an immersion is extended by paths that are known
    // not to create collisions.
    struct RawTable {
      std::size_t              r = 0;
      std::size_t              n = 0;
      std::vector<std::size_t> t;

      static RawTable of(LabeledCore const& core) {
        return {core.ambient_rank(), core.number_of_vertices(), core.table()};
      }
      std::size_t target(std::size_t v, std::size_t l) const {
        return t[v * 2 * r + l];
      }
      std::size_t add_vertex() {
        t.resize(t.size() + 2 * r, no_vertex);
        return n++;
      }
      void set(std::size_t v, std::size_t l, std::size_t w) {
        t[v * 2 * r + l]       = w;
        t[w * 2 * r + (l ^ 1)] = v;
      }
      // Follows w from v, adding a fresh chain where the path leaves the
      // table; returns the endpoint.
      std::size_t extend(std::size_t v, Word const& w) {
        for (Letter x : w) {
          std::size_t next = target(v, x.label());
          if (next == no_vertex) {
            next = add_vertex();
            set(v, x.label(), next);
          }
          v = next;
        }
        return v;
      }
    };
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Graph views
  ////////////////////////////////////////////////////////////////////////

  //! The underlying graph: vertex ids are core vertex ids, arcs are the
  //! positive transitions in (vertex, label) order; arc_label[a] is the
  //! generator index the arc reads.
  struct CoreGraph {
    Graph                    graph;
    std::vector<std::size_t> arc_label;
  };

  inline CoreGraph to_graph(LabeledCore const& core) {
    std::vector<std::pair<vertex_type, vertex_type>> arcs;
    std::vector<std::size_t>                         labels;
    for (std::size_t v = 0; v < core.number_of_vertices(); ++v) {
      for (std::size_t g = 0; g < core.ambient_rank(); ++g) {
        std::size_t w = core.target(v, 2 * g);
        if (w != no_vertex) {
          arcs.emplace_back(v, w);
          labels.push_back(g);
        }
      }
    }
    return {Graph(core.number_of_vertices(), std::move(arcs)),
            std::move(labels)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Text and DOT formats
  ////////////////////////////////////////////////////////////////////////

  //! `core r=<r> n=<vertices> base=<u>` then one `edge <v> <label><sign> <w>`
  //! line per positive transition, in (v, label) order.
  inline void write_core(std::ostream& os, LabeledCore const& core) {
    os << "core r=" << core.ambient_rank()
       << " n=" << core.number_of_vertices()
       << " base=" << LabeledCore::base() << '\n';
    for (std::size_t v = 0; v < core.number_of_vertices(); ++v) {
      for (std::size_t g = 0; g < core.ambient_rank(); ++g) {
        std::size_t w = core.target(v, 2 * g);
        if (w != no_vertex) {
          os << "edge " << v << ' ' << static_cast<char>('a' + g) << "+ " << w
             << '\n';
        }
      }
    }
  }

  inline std::string to_string(LabeledCore const& core) {
    std::ostringstream os;
    write_core(os, core);
    return os.str();
  }

  namespace detail {
    inline std::size_t parse_field(std::string const& tok,
                                   std::string const& key) {
      if (tok.rfind(key + "=", 0) != 0) {
        throw ParseError("expected '" + key + "=<number>', got '" + tok + "'");
      }
      return parse_index(tok.substr(key.size() + 1), key);
    }
  }  // namespace detail

  //! Reads a core block.  Edge lines run to the end of input or to the first
  //! line that does not start with "edge".  Edges with sign '-' are read as
  //! the reverse of the corresponding positive edge.  The result is pruned
  //! and canonicalised.
  inline LabeledCore read_core(std::istream& is) {
    std::string line;
    if (!detail::next_line(is, line)) {
      throw ParseError("expected 'core r=<r> n=<n> base=<u>', got end of input");
    }
    auto head = detail::tokens(line);
    if (head.size() != 4 || head[0] != "core") {
      throw ParseError("expected 'core r=<r> n=<n> base=<u>', got '" + line
                       + "'");
    }
    std::size_t r    = detail::parse_field(head[1], "r");
    std::size_t n    = detail::parse_field(head[2], "n");
    std::size_t base = detail::parse_field(head[3], "base");
    if (r == 0 || r > 26 || n == 0 || base >= n) {
      throw ParseError("core header out of range: '" + line + "'");
    }
    std::vector<std::size_t> table(n * 2 * r, no_vertex);
    while (true) {
      auto pos = is.tellg();
      if (!detail::next_line(is, line)) {
        break;
      }
      auto tok = detail::tokens(line);
      if (tok.empty() || tok[0] != "edge") {
        is.clear();
        is.seekg(pos);
        break;
      }
      if (tok.size() != 4 || tok[2].size() != 2
          || (tok[2][1] != '+' && tok[2][1] != '-')) {
        throw ParseError("expected 'edge <v> <label><sign> <w>', got '" + line
                         + "'");
      }
      std::size_t v = detail::parse_index(tok[1], "vertex");
      std::size_t w = detail::parse_index(tok[3], "vertex");
      char        c = tok[2][0];
      if (c < 'a' || c > 'z' || static_cast<std::size_t>(c - 'a') >= r) {
        throw ParseError("bad edge label '" + tok[2] + "'");
      }
      if (v >= n || w >= n) {
        throw ParseError("edge endpoint out of range in '" + line + "'");
      }
      std::size_t l = 2 * static_cast<std::size_t>(c - 'a');
      if (tok[2][1] == '-') {
        std::swap(v, w);
      }
      std::size_t& fwd = table[v * 2 * r + l];
      std::size_t& bwd = table[w * 2 * r + (l ^ 1)];
      if ((fwd != no_vertex && fwd != w) || (bwd != no_vertex && bwd != v)) {
        throw ParseError("edge line '" + line + "' makes the core non-deterministic");
      }
      fwd = w;
      bwd = v;
    }
    return LabeledCore::from_table(r, n, base, std::move(table));
  }

  inline LabeledCore core_from_string(std::string const& text) {
    std::istringstream is(text);
    return read_core(is);
  }

  inline void write_dot(std::ostream& os, LabeledCore const& core) {
    os << "digraph core {\n";
    for (std::size_t v = 0; v < core.number_of_vertices(); ++v) {
      os << "  " << v
         << (v == LabeledCore::base() ? " [shape=doublecircle];\n" : ";\n");
    }
    for (std::size_t v = 0; v < core.number_of_vertices(); ++v) {
      for (std::size_t g = 0; g < core.ambient_rank(); ++g) {
        std::size_t w = core.target(v, 2 * g);
        if (w != no_vertex) {
          os << "  " << v << " -> " << w << " [label=\""
             << static_cast<char>('a' + g) << "\"];\n";
        }
      }
    }
    os << "}\n";
  }

}  // namespace stallings

#endif  // STALLINGS_CORE_HPP_
