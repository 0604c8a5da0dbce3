// Command-line front end for the stallings library.
//
// Exit status: 0 on success, 1 when the operation is undefined on the given
// input, 2 on malformed input or command line.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stallings/stallings.hpp"

using namespace stallings;
using json = nlohmann::json;

namespace {

  struct SubgroupInput {
    std::size_t              r = 2;
    std::vector<std::string> gens;
    std::string              list;  // comma separated, for --A / --B
    std::string              file;
  };

  struct Options {
    SubgroupInput            one;
    SubgroupInput            a;
    SubgroupInput            b;
    std::vector<std::string> words;
    std::string              avoid;
    std::string              graph_file;
    std::string              morphism_file;
    std::size_t              vertex = 0;
    std::size_t              radius = 1;
    std::string              format = "text";
    std::string              output;
    unsigned                 jobs   = 1;
    bool                     dot    = false;
    bool                     report = false;
    bool                     csv    = false;
  };

  //! Collects output; text lines or one JSON record per line.
  class Sink {
   public:
    explicit Sink(bool json_lines) : _json(json_lines) {}

    bool json_lines() const noexcept {
      return _json;
    }
    std::ostream& text() {
      return _os;
    }
    void record(json const& j) {
      _os << j.dump() << '\n';
    }
    std::string str() const {
      return _os.str();
    }

   private:
    bool               _json;
    std::ostringstream _os;
  };

  std::vector<std::string> split(std::string const& list) {
    std::vector<std::string> out;
    if (list.empty()) {
      return out;
    }
    std::stringstream ss(list);
    std::string       item;
    while (std::getline(ss, item, ',')) {
      out.push_back(item);
    }
    if (list.back() == ',') {
      out.emplace_back();
    }
    return out;
  }

  Word word_in_rank(std::string const& text, std::size_t r) {
    Word w = parse_word(text);
    check_alphabet(w, r);
    return w;
  }

  std::ifstream open_input(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw ParseError("cannot read '" + path + "'");
    }
    return in;
  }

  LabeledCore load(SubgroupInput const& in) {
    if (!in.file.empty()) {
      auto is = open_input(in.file);
      return read_core(is);
    }
    std::vector<Word> gens;
    for (auto const& g : in.gens) {
      gens.push_back(word_in_rank(g, in.r));
    }
    for (auto const& g : split(in.list)) {
      gens.push_back(word_in_rank(g, in.r));
    }
    return LabeledCore::from_words(in.r, gens);
  }

  Graph load_graph(std::string const& path) {
    auto is = open_input(path);
    return read_graph(is);
  }

  json degree_json(Degree const& d) {
    return d.is_finite() ? json(d.value()) : json("infinite");
  }

  json core_json(LabeledCore const& c) {
    json edges = json::array();
    for (std::size_t v = 0; v < c.number_of_vertices(); ++v) {
      for (std::size_t l = 0; l < c.number_of_labels(); l += 2) {
        std::size_t w = c.target(v, l);
        if (w != no_vertex) {
          edges.push_back(
              {v, std::string(1, Letter::from_label(l).to_char()), w});
        }
      }
    }
    return {{"r", c.ambient_rank()},
            {"n", c.number_of_vertices()},
            {"base", LabeledCore::base()},
            {"edges", edges}};
  }

  void emit_core(Sink& out, LabeledCore const& c) {
    if (out.json_lines()) {
      out.record(core_json(c));
    } else {
      write_core(out.text(), c);
    }
  }

  json profile_json(HNProfile const& p) {
    return {{"H", p.H},
            {"n1", p.n[0]},
            {"n2", p.n[1]},
            {"rank", p.rank},
            {"checkers", p.checker_count()}};
  }

  void emit_profile(Sink& out, HNProfile const& p) {
    if (out.json_lines()) {
      out.record(profile_json(p));
    } else {
      write_profile(out.text(), p);
    }
  }

  json graph_json(Graph const& g) {
    json arcs = json::array();
    for (arc_type a = 0; a < g.number_of_arcs(); ++a) {
      auto [s, t] = g.arc(a);
      arcs.push_back({s, t});
    }
    return {{"vertices", g.number_of_vertices()}, {"arcs", arcs}};
  }

  ////////////////////////////////////////////////////////////////////////
  // Subcommands
  ////////////////////////////////////////////////////////////////////////

  void cmd_core(Options const& o, Sink& out) {
    emit_core(out, load(o.one));
  }

  void cmd_rank(Options const& o, Sink& out) {
    auto k = load(o.one).rank();
    if (out.json_lines()) {
      out.record({{"rank", k}});
    } else {
      out.text() << k << '\n';
    }
  }

  void cmd_index(Options const& o, Sink& out) {
    auto d = index(load(o.one));
    if (out.json_lines()) {
      out.record({{"index", degree_json(d)}});
    } else {
      out.text() << d.to_string() << '\n';
    }
  }

  void cmd_member(Options const& o, Sink& out) {
    auto c = load(o.one);
    for (auto const& text : o.words) {
      bool in = contains(c, word_in_rank(text, c.ambient_rank()));
      if (out.json_lines()) {
        out.record({{"word", text}, {"member", in}});
      } else {
        out.text() << (in ? "true" : "false") << '\n';
      }
    }
  }

  void cmd_basis(Options const& o, Sink& out) {
    auto basis = schreier_basis(load(o.one));
    if (out.json_lines()) {
      json ws = json::array();
      for (auto const& w : basis) {
        ws.push_back(to_string(w));
      }
      out.record({{"basis", ws}});
    } else {
      for (auto const& w : basis) {
        out.text() << to_string(w) << '\n';
      }
    }
  }

  void cmd_intersect(Options const& o, Sink& out) {
    auto c1 = load(o.a);
    auto c2 = load(o.b);
    if (!o.report) {
      emit_core(out, intersect(c1, c2));
      return;
    }
    auto res = pullback(c1, c2);
    if (!out.json_lines()) {
      write_pullback_report(out.text(), res, c1, c2);
      return;
    }
    for (auto const& pc : res.components) {
      json rec = {{"component", pc.id},
                  {"rank", pc.rank},
                  {"tree", pc.is_tree},
                  {"g", nullptr}};
      if (!pc.is_tree) {
        rec["g"] = to_string(double_coset_tag(res, c1, c2, pc.id).g);
      }
      out.record(rec);
    }
  }

  void cmd_join(Options const& o, Sink& out) {
    emit_core(out, join(load(o.a), load(o.b)));
  }

  void cmd_cosets(Options const& o, Sink& out) {
    auto c    = load(o.one);
    auto tree = spanning_tree(c);
    auto d    = index(c);
    if (out.json_lines()) {
      out.record({{"index", degree_json(d)}});
    } else {
      out.text() << "index=" << d.to_string() << '\n';
    }
    for (std::size_t v = 0; v < c.number_of_vertices(); ++v) {
      if (out.json_lines()) {
        out.record({{"vertex", v}, {"representative", to_string(tree.path_to[v])}});
      } else {
        out.text() << v << ' ' << to_string(tree.path_to[v]) << '\n';
      }
    }
  }

  void cmd_complete(Options const& o, Sink& out) {
    auto              c = load(o.one);
    std::vector<Word> avoid;
    for (auto const& w : split(o.avoid)) {
      avoid.push_back(word_in_rank(w, c.ambient_rank()));
    }
    emit_core(out, hall_complete(c, avoid));
  }

  void cmd_galois(Options const& o, Sink& out) {
    bool g = is_galois(load(o.one));
    if (out.json_lines()) {
      out.record({{"galois", g}});
    } else {
      out.text() << (g ? "true" : "false") << '\n';
    }
  }

  void cmd_deck(Options const& o, Sink& out) {
    auto deck = deck_group(load(o.one));
    if (out.json_lines()) {
      out.record({{"order", deck.order()}, {"elements", deck.elements()}});
      return;
    }
    out.text() << "order=" << deck.order() << '\n';
    for (auto const& f : deck.elements()) {
      for (std::size_t i = 0; i < f.size(); ++i) {
        out.text() << (i ? " " : "") << f[i];
      }
      out.text() << '\n';
    }
  }

  void cmd_lattice(Options const& o, Sink& out) {
    auto lat = intermediate_lattice(load(o.one), o.jobs);
    for (std::size_t i = 0; i < lat.classes.size(); ++i) {
      auto const&              cls = lat.classes[i];
      std::vector<std::size_t> below;
      for (std::size_t j = 0; j < lat.classes.size(); ++j) {
        if (j != i && lat.leq[j][i]) {
          below.push_back(j);
        }
      }
      std::vector<std::size_t> elems;
      for (std::size_t k = 0; k < lat.group.order(); ++k) {
        if (cls.subgroup >> k & 1U) {
          elems.push_back(k);
        }
      }
      if (out.json_lines()) {
        out.record({{"class", i},
                    {"order", elems.size()},
                    {"degree", degree_json(cls.degree)},
                    {"subgroup", elems},
                    {"below", below}});
        continue;
      }
      out.text() << "class " << i << " order=" << elems.size()
                 << " degree=" << cls.degree.to_string() << " below=";
      for (std::size_t k = 0; k < below.size(); ++k) {
        out.text() << (k ? "," : "") << below[k];
      }
      out.text() << (below.empty() ? "-" : "") << '\n';
    }
  }

  void cmd_hn_profile(Options const& o, Sink& out) {
    emit_profile(out, hn_profile(load(o.one)));
  }

  void cmd_hn_bound(Options const& o, Sink& out) {
    auto rep = shn_report(load(o.a), load(o.b));
    if (o.csv) {
      out.text() << csv_header << '\n';
      write_csv_row(out.text(), rep);
      return;
    }
    if (!out.json_lines()) {
      write_report(out.text(), rep);
      return;
    }
    json tags = json::array();
    for (auto const& t : rep.tags) {
      tags.push_back({{"component", t.component}, {"g", to_string(t.g)}});
    }
    out.record({{"lhs", rep.lhs},
                {"rhs1", rep.rhs1},
                {"rhs2", rep.rhs2},
                {"neumann", rep.classical.neumann},
                {"burns", rep.classical.burns},
                {"tardos", rep.classical.tardos},
                {"dicks_formanek", rep.classical.dicks_formanek},
                {"tightest", rep.tightest},
                {"tags", tags}});
  }

  void cmd_excise(Options const& o, Sink& out) {
    auto is   = open_input(o.morphism_file);
    auto file = read_morphism(is);
    auto base = file.base.value_or(std::make_pair(vertex_type{0}, vertex_type{0}));
    auto cov  = make_covering(file.morphism, base.first, base.second);
    if (!is_connected(cov.target())) {
      throw DomainError("excision needs a connected target");
    }
    auto ex = excise_trees(cov, spanning_forest(cov.target()).forest);
    emit_core(out, core_of_immersion(ex.covering.morphism(), ex.covering.source_base()));
    if (rank(cov.target()) == 2) {
      emit_profile(out, excise_and_profile(cov));
    }
  }

  void cmd_ball(Options const& o, Sink& out) {
    auto ball = universal_ball(load_graph(o.graph_file), o.vertex, o.radius);
    if (out.json_lines()) {
      json rec        = graph_json(ball.tree);
      rec["center"]   = ball.center;
      rec["boundary"] = ball.boundary;
      out.record(rec);
      return;
    }
    write_graph(out.text(), ball.tree);
    out.text() << "center " << ball.center << '\n' << "boundary";
    for (auto v : ball.boundary) {
      out.text() << ' ' << v;
    }
    out.text() << '\n';
  }

  void cmd_export(Options const& o, Sink& out) {
    std::ostringstream dot;
    if (!o.graph_file.empty()) {
      write_dot(dot, load_graph(o.graph_file));
    } else {
      write_dot(dot, load(o.one));
    }
    if (out.json_lines()) {
      out.record({{"dot", dot.str()}});
    } else {
      out.text() << dot.str();
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Command line
  ////////////////////////////////////////////////////////////////////////

  void add_subgroup(CLI::App* cmd, SubgroupInput& in) {
    cmd->add_option("-r,--rank", in.r, "rank of the free group")
        ->check(CLI::PositiveNumber);
    cmd->add_option("-g,--generator", in.gens, "generator word (repeatable)");
    cmd->add_option("--core", in.file, "core file instead of generators")
        ->excludes("-g");
  }

  void add_pair(CLI::App* cmd, Options& o) {
    cmd->add_option("-r,--rank", o.a.r, "rank of the free group")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--A", o.a.list, "generators of the first subgroup, comma separated");
    cmd->add_option("--B", o.b.list, "generators of the second subgroup, comma separated");
    cmd->add_option("--core-a", o.a.file, "core file of the first subgroup")->excludes("--A");
    cmd->add_option("--core-b", o.b.file, "core file of the second subgroup")->excludes("--B");
  }

  //! The first bare token before any subcommand, if it names none.
  std::optional<std::string> unknown_subcommand(CLI::App& app, int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
      std::string const tok = argv[i];
      if (tok == "--format" || tok == "-o" || tok == "--output" || tok == "--jobs") {
        ++i;
      } else if (!tok.empty() && tok[0] != '-') {
        if (app.get_subcommand_no_throw(tok) != nullptr) {
          return std::nullopt;
        }
        return tok;
      }
    }
    return std::nullopt;
  }

  struct Command {
    char const* name;
    char const* help;
    void (*run)(Options const&, Sink&);
  };

}  // namespace

int main(int argc, char** argv) {
  Options  o;
  CLI::App app{"Subgroups of free groups via core graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"text", "json-lines"}));
  app.add_option("-o,--output", o.output, "write output to a file");
  app.add_option("--jobs", o.jobs, "worker threads for lattice")
      ->check(CLI::PositiveNumber);

  Command const commands[] = {
      {"core", "print the canonical core", cmd_core},
      {"rank", "rank of the subgroup", cmd_rank},
      {"index", "index of the subgroup", cmd_index},
      {"member", "membership of words", cmd_member},
      {"basis", "Schreier basis", cmd_basis},
      {"intersect", "core of the intersection", cmd_intersect},
      {"join", "core of the subgroup generated by both", cmd_join},
      {"cosets", "coset representatives of the core vertices", cmd_cosets},
      {"complete", "finite-index completion avoiding words", cmd_complete},
      {"galois", "whether the subgroup is normal", cmd_galois},
      {"deck", "deck transformation group", cmd_deck},
      {"lattice", "lattice of intermediate coverings", cmd_lattice},
      {"hn-profile", "spine invariants H, n1, n2 and checkers", cmd_hn_profile},
      {"hn-bound", "rank estimate for the pullback", cmd_hn_bound},
      {"excise", "tree excision of a covering", cmd_excise},
      {"ball", "ball in the universal cover", cmd_ball},
      {"export", "DOT export", cmd_export},
  };
  std::vector<std::pair<CLI::App*, Command const*>> subs;
  for (auto const& c : commands) {
    CLI::App*         sub  = app.add_subcommand(c.name, c.help);
    std::string const name = c.name;
    if (name == "intersect" || name == "join" || name == "hn-bound") {
      add_pair(sub, o);
    } else if (name != "excise" && name != "ball") {
      add_subgroup(sub, o.one);
    }
    if (name == "member") {
      sub->add_option("-w,--word", o.words, "word to test (repeatable)")->required();
    } else if (name == "intersect") {
      sub->add_flag("--report", o.report, "per-component report with double-coset tags");
    } else if (name == "complete") {
      sub->add_option("--avoid", o.avoid, "words to avoid, comma separated");
    } else if (name == "hn-bound") {
      sub->add_flag("--csv", o.csv, "CSV header and row");
    } else if (name == "excise") {
      sub->add_option("--morphism", o.morphism_file, "covering in morphism format")
          ->required();
    } else if (name == "ball") {
      sub->add_option("--graph", o.graph_file, "graph file")->required();
      sub->add_option("-v,--vertex", o.vertex, "centre vertex");
      sub->add_option("-R,--radius", o.radius, "radius");
    } else if (name == "export") {
      sub->add_flag("--dot", o.dot, "DOT output")->required();
      sub->add_option("--graph", o.graph_file, "graph file instead of a core");
    }
    subs.emplace_back(sub, &c);
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    if (auto bad = unknown_subcommand(app, argc, argv)) {
      std::cerr << "error: unknown subcommand '" << *bad << "'\n";
    } else {
      std::cerr << "error: " << e.what() << '\n';
    }
    return 2;
  }

  o.b.r = o.a.r;
  Sink out(o.format == "json-lines");
  try {
    for (auto const& [sub, cmd] : subs) {
      if (sub->parsed()) {
        cmd->run(o, out);
      }
    }
  } catch (ParseError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (DomainError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  if (o.output.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(o.output);
    if (!f || !(f << out.str())) {
      std::cerr << "error: cannot write '" << o.output << "'\n";
      return 1;
    }
  }
  return 0;
}
