#pragma once

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hyc/builders.hpp"
#include "hyc/classical.hpp"
#include "hyc/colimit.hpp"
#include "hyc/error.hpp"
#include "hyc/games.hpp"
#include "hyc/hg_io.hpp"
#include "hyc/hypergraph.hpp"
#include "hyc/reps.hpp"
#include "hyc/representation.hpp"
#include "hyc/sdp.hpp"
#include "hyc/transforms.hpp"

namespace hyc {

inline constexpr const char* kToolVersion = "0.1.0";

inline std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

namespace cli {

inline std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

struct Report {
  Report(std::string c, std::string m) : command(std::move(c)), module(std::move(m)) {}

  std::string command;
  std::string module;
  std::vector<std::pair<std::string, std::string>> instances;  // label, digest
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> verdicts;
  std::vector<std::pair<std::string, std::string>> facts;
  std::vector<std::string> notes;
  std::vector<std::pair<std::string, double>> timings;

  void instance(const std::string& label, std::string_view canonical) {
    instances.emplace_back(label, sha256_hex(canonical));
  }
  void param(const std::string& k, const std::string& v) { params.emplace_back(k, v); }
  void fact(const std::string& k, const std::string& v) { facts.emplace_back(k, v); }

  // Every line of the text form; `comment` prefixes each with "# " so the
  // report can sit in front of file content on stdout.
  std::string text(bool comment, bool with_timings) const {
    std::vector<std::string> lines;
    lines.push_back(std::string("hyc ") + kToolVersion);
    lines.push_back("command: " + command);
    lines.push_back("module: " + module);
    for (const auto& [l, d] : instances) lines.push_back("instance: sha256:" + d + " " + l);
    std::string p;
    for (const auto& [k, v] : params) p += (p.empty() ? "" : " ") + k + "=" + v;
    lines.push_back("parameters:" + (p.empty() ? std::string() : " " + p));
    for (const auto& v : verdicts) lines.push_back(v);
    for (const auto& [k, v] : facts) lines.push_back(k + ": " + v);
    for (const auto& n : notes) lines.push_back("note: " + n);
    if (with_timings)
      for (const auto& [k, t] : timings) lines.push_back("time " + k + ": " + fmt(t) + "s");
    std::string out;
    for (const auto& l : lines) out += (comment ? "# " : "") + l + "\n";
    return out;
  }

  nlohmann::json json(bool with_timings) const {
    nlohmann::json j;
    j["tool"] = "hyc";
    j["version"] = kToolVersion;
    j["command"] = command;
    j["module"] = module;
    j["instances"] = nlohmann::json::array();
    for (const auto& [l, d] : instances) j["instances"].push_back({{"label", l}, {"sha256", d}});
    j["parameters"] = nlohmann::json::object();
    for (const auto& [k, v] : params) j["parameters"][k] = v;
    j["verdicts"] = verdicts;
    j["facts"] = nlohmann::json::object();
    for (const auto& [k, v] : facts) j["facts"][k] = v;
    j["notes"] = notes;
    if (with_timings) {
      j["timings"] = nlohmann::json::object();
      for (const auto& [k, t] : timings) j["timings"][k] = t;
    }
    return j;
  }
};

class Stopwatch {
 public:
  double lap() {
    auto now = std::chrono::steady_clock::now();
    double s = std::chrono::duration<double>(now - t_).count();
    t_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point t_ = std::chrono::steady_clock::now();
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << content;
  if (!out) throw InvalidArgument("error writing '" + path + "'");
}

// Prefixes parse errors with the file name.
template <class F>
auto parse_file(const std::string& path, F&& parse) {
  std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

inline Hypergraph load_hypergraph(const std::string& path) {
  return parse_file(path, [](const std::string& t) { return parse_hypergraph(t, ParseOptions{true}); });
}

inline SimpleGraph load_graph(const std::string& spec) {
  if (auto g = named_graph(spec)) return *g;
  if (!std::filesystem::exists(spec))
    throw InvalidArgument("'" + spec + "' is neither a graph name (K3, C5, P4, E2) nor a file");
  return parse_file(spec, [](const std::string& t) { return parse_graph(t); });
}

struct Options {
  std::string output;
  std::string report;
  std::uint64_t seed = 0;
  double tol = -1;
  std::size_t level = 1;
  std::size_t dim = 1;
  std::size_t jobs = 1;
  std::size_t starts = 8;
  std::size_t max_iters = 0;
  bool count = false;
  bool project = false;
  bool tracial = false;
  bool timings = false;
  bool auto_sync = false;
  bool normalize = false;
  bool no_propagate = false;
  std::string cert;
  std::vector<std::string> args;
  std::vector<std::size_t> sizes;
  std::vector<std::string> commute;
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  // Writes `content` to -o, or to stdout after the report as comments.
  void emit(Report& r, const std::string& content) {
    if (o.output.empty()) {
      out_ << r.text(true, o.timings) << content;
    } else {
      write_file(o.output, content);
      r.fact("written", o.output);
      out_ << r.text(false, o.timings);
    }
    finish(r);
  }

  void print(Report& r) {
    out_ << r.text(false, o.timings);
    finish(r);
  }

  void describe_hypergraph(Report& r, const Hypergraph& h, const std::string& label) {
    r.instance(label, serialize_hypergraph(h));
    r.fact("vertices", std::to_string(h.num_vertices()));
    r.fact("edges", std::to_string(h.num_edges()));
    for (const auto& w : validation_warnings(h)) err_ << "warning: " << w << "\n";
  }

  void build_output(Report& r, const Hypergraph& h) {
    describe_hypergraph(r, h, "output");
    r.timings.emplace_back("build", clock.lap());
    emit(r, serialize_hypergraph(h));
  }

  Options o;
  Stopwatch clock;

 private:
  void finish(const Report& r) {
    if (!o.report.empty()) write_file(o.report, r.json(o.timings).dump(2) + "\n");
  }

  std::ostream& out_;
  std::ostream& err_;
};

inline std::string default_npa_path(const std::string& input, std::size_t level, bool tracial) {
  std::filesystem::path p(input);
  p.replace_extension();
  return p.string() + ".npa" + std::to_string(level) + (tracial ? "t" : "") + ".json";
}

inline std::size_t parse_factor_index(const std::string& s, std::size_t n) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || v == 0 || v > n)
    throw InvalidArgument("factor index '" + s + "' is not in 1.." + std::to_string(n));
  return v - 1;
}

}  // namespace cli

// Runs one command line (without the program name). Exit status: 0 on a
// completed run whatever the verdict, 2 on input errors.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace cli;
  Runner run(out, err);
  Options& o = run.o;

  CLI::App app{"hyc: free hypergraph C*-algebras, their gadget rewrites, encodings and analyzers", "hyc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::vector<std::pair<CLI::App*, std::function<void()>>> actions;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& about, std::function<void()> f) {
    CLI::App* s = parent->add_subcommand(name, about);
    actions.emplace_back(s, std::move(f));
    s->add_option("--report", o.report, "also write the report as JSON to this file");
    s->add_flag("--timings", o.timings, "include wall-clock timings in the report");
    return s;
  };
  auto out_opt = [&](CLI::App* s) { s->add_option("-o,--output", o.output, "output file (default: stdout)"); };
  auto input = [&](CLI::App* s, const std::string& what, std::size_t n = 1) {
    s->add_option("inputs", o.args, what)->required()->expected(static_cast<int>(n));
  };

  // build
  CLI::App* build = app.add_subcommand("build", "named hypergraph families");
  build->require_subcommand(1);
  {
    auto* s = leaf(build, "qperm",
                   "quantum permutation hypergraph: the n x n magic square of projections, one edge per row and per column",
                   [&] {
                     std::size_t n = o.sizes.at(0);
                     Report r{"build qperm", "builders"};
                     r.param("n", std::to_string(n));
                     run.build_output(r, build_qperm(n));
                   });
    s->add_option("n", o.sizes, "matrix size")->required()->expected(1);
    out_opt(s);

    s = leaf(build, "freeprod",
             "free product of cyclic groups Z_n1 * Z_n2 * ...: one edge of spectral projections per factor", [&] {
               Report r{"build freeprod", "builders"};
               std::string z;
               for (auto k : o.sizes) z += (z.empty() ? "" : ",") + std::to_string(k);
               r.param("sizes", z);
               run.build_output(r, build_free_product(o.sizes));
             });
    s->add_option("sizes", o.sizes, "cyclic group orders")->required();
    out_opt(s);

    s = leaf(build, "gprod",
             "graph product of cyclic groups: a free product whose listed factor pairs commute", [&] {
               std::vector<std::pair<std::size_t, std::size_t>> pairs;
               for (const auto& c : o.commute) {
                 auto colon = c.find(':');
                 if (colon == std::string::npos) throw InvalidArgument("--commute expects I:J, got '" + c + "'");
                 pairs.emplace_back(parse_factor_index(c.substr(0, colon), o.sizes.size()),
                                    parse_factor_index(c.substr(colon + 1), o.sizes.size()));
               }
               Report r{"build gprod", "builders"};
               std::string z;
               for (auto k : o.sizes) z += (z.empty() ? "" : ",") + std::to_string(k);
               r.param("sizes", z);
               std::string cs;
               for (const auto& c : o.commute) cs += (cs.empty() ? "" : ",") + c;
               r.param("commute", cs.empty() ? "none" : cs);
               run.build_output(r, build_graph_product_cyclic(o.sizes, pairs));
             });
    s->add_option("sizes", o.sizes, "cyclic group orders")->required();
    s->add_option("--commute", o.commute, "1-based factor pair I:J that commutes (repeatable)");
    out_opt(s);

    s = leaf(build, "cep",
             "Connes embedding preset: the graph product (Z2*Z3) x (Z2*Z3) as a hypergraph", [&] {
               Report r{"build cep", "builders"};
               r.notes.push_back(
                   "no feasibility claim is made: whether this algebra is residually finite-dimensional is "
                   "equivalent to the Connes embedding problem and is out of scope for every analyzer here");
               run.build_output(r, build_cep());
             });
    out_opt(s);

    s = leaf(build, "hom",
             "graph homomorphism game G -> H as a hypergraph (graph names K3, C5, P4, E2 or .gr files)", [&] {
               Report r{"build hom", "builders"};
               r.param("G", o.args.at(0));
               r.param("H", o.args.at(1));
               run.build_output(r, build_hom_game(load_graph(o.args[0]), load_graph(o.args[1])));
             });
    input(s, "two graphs", 2);
    out_opt(s);

    s = leaf(build, "iso",
             "graph isomorphism game G ~ H as a hypergraph (graph names K3, C5, P4, E2 or .gr files)", [&] {
               Report r{"build iso", "builders"};
               r.param("G", o.args.at(0));
               r.param("H", o.args.at(1));
               run.build_output(r, build_iso_game(load_graph(o.args[0]), load_graph(o.args[1])));
             });
    input(s, "two graphs", 2);
    out_opt(s);

    s = leaf(build, "zero-gadget", "zero gadget: a hypergraph whose distinguished projection is forced to 0", [&] {
      Report r{"build zero-gadget", "transforms"};
      run.build_output(r, build_zero_gadget());
    });
    out_opt(s);
  }

  // transform
  CLI::App* transform = app.add_subcommand("transform", "relation-imposing rewrites");
  transform->require_subcommand(1);
  {
    auto* s = leaf(transform, "impose",
                   "impose a relation (zero, equal, orthogonal, leq, commute, sum-leq-one) by gadget rewriting; "
                   "usage: impose FILE KIND V [W]",
                   [&] {
                     if (o.args.size() < 3) throw InvalidArgument("impose needs FILE KIND V [W]");
                     auto kind = parse_relation_kind(o.args[1]);
                     const bool unary = kind == Relation::Kind::zero;
                     if (o.args.size() != (unary ? 3u : 4u))
                       throw InvalidArgument("relation '" + o.args[1] + "' takes " + (unary ? "one vertex" : "two vertices"));
                     Hypergraph h = load_hypergraph(o.args[0]);
                     Report r{"transform impose", "transforms"};
                     r.instance(o.args[0], serialize_hypergraph(h));
                     r.param("relation", o.args[1]);
                     r.param("v", o.args[2]);
                     if (!unary) r.param("w", o.args[3]);
                     Relation rel{kind, o.args[2], unary ? std::string() : o.args[3]};
                     run.build_output(r, impose_relation(h, rel));
                   });
    s->add_option("inputs", o.args, "FILE KIND V [W]")->required()->expected(3, 4);
    out_opt(s);

    s = leaf(transform, "three-uniform",
             "3-uniform normal form: an equivalent hypergraph whose edges all have 3 vertices and meet pairwise in "
             "at most one vertex",
             [&] {
               Hypergraph h = load_hypergraph(o.args.at(0));
               Report r{"transform three-uniform", "transforms"};
               r.instance(o.args[0], serialize_hypergraph(h));
               Hypergraph t = three_uniform(h);
               r.fact("three_uniform_linear", is_three_uniform_linear(t) ? "yes" : "no");
               run.build_output(r, t);
             });
    input(s, "hypergraph file");
    out_opt(s);
  }

  // translate
  CLI::App* translate = app.add_subcommand("translate", "encodings between games, diagrams and hypergraphs");
  translate->require_subcommand(1);
  {
    auto* s = leaf(translate, "game2hg",
                   "synchronous game to hypergraph: perfect quantum strategies are representations of its algebra",
                   [&] {
                     auto g = parse_file(o.args.at(0), [&](const std::string& t) {
                       return parse_game(t, GameParseOptions{o.auto_sync});
                     });
                     Report r{"translate game2hg", "games"};
                     r.instance(o.args[0], serialize_game(g));
                     r.param("auto_sync", o.auto_sync ? "true" : "false");
                     run.build_output(r, game_to_hypergraph(g));
                   });
    input(s, "game file");
    s->add_flag("--auto-sync", o.auto_sync, "add the synchronicity quadruples (x, x, a, b), a != b");
    out_opt(s);

    s = leaf(translate, "hg2game",
             "hypergraph to synchronous game with 3 outputs whose perfect strategies are the algebra's representations",
             [&] {
               Hypergraph h = load_hypergraph(o.args.at(0));
               Report r{"translate hg2game", "games"};
               r.instance(o.args[0], serialize_hypergraph(h));
               auto hg = hypergraph_to_game(h);
               std::string text = serialize_game(hg.game);
               r.instance("output", text);
               r.fact("inputs", std::to_string(hg.game.inputs().size()));
               r.fact("forbidden", std::to_string(hg.game.forbidden().size()));
               r.timings.emplace_back("translate", run.clock.lap());
               run.emit(r, text);
             });
    input(s, "hypergraph file");
    out_opt(s);

    s = leaf(translate, "colim2hg",
             "colimit of a diagram of finite-dimensional commutative C*-algebras as a free hypergraph C*-algebra", [&] {
               std::string text = read_file(o.args.at(0));
               Diagram d;
               try {
                 d = parse_diagram(text);
               } catch (const ParseError& e) {
                 throw InvalidArgument(o.args[0] + ": " + e.what());
               }
               Report r{"translate colim2hg", "colimit"};
               r.instance(o.args[0], text);
               r.param("normalize", o.normalize ? "true" : "false");
               run.build_output(r, encode_colimit(d, o.normalize));
             });
    input(s, "diagram file");
    s->add_flag("--normalize", o.normalize, "drop duplicate edges");
    out_opt(s);
  }

  // analyze
  CLI::App* analyze = app.add_subcommand("analyze", "semi-decision analyzers");
  analyze->require_subcommand(1);
  {
    auto* s = leaf(analyze, "classical",
                   "classical satisfiability: exact-one assignments, i.e. one-dimensional representations", [&] {
                     Hypergraph h = load_hypergraph(o.args.at(0));
                     Report r{"analyze classical", "classical"};
                     r.instance(o.args[0], serialize_hypergraph(h));
                     r.param("count", o.count ? "true" : "false");
                     r.param("project", o.project ? "true" : "false");
                     if (o.count) {
                       const std::size_t cap = 1'000'000;
                       auto e = enumerate_solutions(h, cap);
                       r.verdicts.push_back(e.cap_exceeded ? "COUNT >" + std::to_string(cap)
                                                           : "COUNT " + std::to_string(e.solutions.size()));
                     } else if (auto a = solve_exact_one(h)) {
                       r.verdicts.push_back("SAT " + format_assignment(h, *a, o.project));
                     } else {
                       r.verdicts.push_back("UNSAT");
                     }
                     r.timings.emplace_back("solve", run.clock.lap());
                     run.print(r);
                   });
    input(s, "hypergraph file");
    s->add_flag("--count", o.count, "count all solutions");
    s->add_flag("--project", o.project, "leave gadget vertices out of the printed assignment");

    s = leaf(analyze, "npa",
             "moment-matrix (NPA) feasibility: does the algebra admit a state (or trace) at the given level", [&] {
               Hypergraph h = load_hypergraph(o.args.at(0));
               Tolerances tol;
               if (o.tol > 0) tol.feas = o.tol;
               if (o.max_iters) tol.max_iters = o.max_iters;
               Report r{"analyze npa", "sdp"};
               r.instance(o.args[0], serialize_hypergraph(h));
               r.param("level", std::to_string(o.level));
               r.param("tracial", o.tracial ? "true" : "false");
               r.param("tol.eig", fmt(tol.eig));
               r.param("tol.feas", fmt(tol.feas));
               r.param("max_iters", std::to_string(tol.max_iters));
               MomentProblem m = build_moment_problem(h, o.level, o.tracial);
               r.fact("moment_matrix", std::to_string(m.size()) + "x" + std::to_string(m.size()));
               r.fact("moments", std::to_string(m.variables.size()));
               r.fact("constraints", std::to_string(m.constraints.size()));
               FeasibilityResult res = solve_feasibility(m, tol);
               r.timings.emplace_back("solve", run.clock.lap());
               r.verdicts.push_back(to_string(res.verdict));
               if (res.forced_min_eigenvalue) r.fact("forced_min_eigenvalue", fmt(*res.forced_min_eigenvalue));
               if (res.verdict == Verdict::certified_infeasible) r.fact("stage", std::to_string(res.stage));
               else {
                 r.fact("residual", fmt(res.residual));
                 r.fact("iterations", std::to_string(res.iterations));
               }
               if (!res.detail.empty()) r.fact("detail", res.detail);
               if (res.verdict == Verdict::likely_infeasible || res.verdict == Verdict::inconclusive)
                 r.notes.push_back("numerical evidence only: no exact certificate, this is not a proof");
               if (res.verdict == Verdict::feasible_approx)
                 r.notes.push_back("approximate moment matrix: feasibility at this level does not prove a representation exists");
               nlohmann::json j;
               if (res.certificate) {
                 j = certificate_to_json(m, *res.certificate);
               } else {
                 j["format"] = "hyc-npa-residual-1";
                 j["verdict"] = to_string(res.verdict);
                 j["level"] = o.level;
                 j["tracial"] = o.tracial;
                 j["residual"] = res.residual;
                 j["iterations"] = res.iterations;
                 j["residual_trace"] = res.residual_trace;
                 j["detail"] = res.detail;
               }
               std::string path = !o.cert.empty() ? o.cert : default_npa_path(o.args[0], o.level, o.tracial);
               write_file(path, j.dump(2) + "\n");
               r.fact(res.certificate ? "certificate" : "residual_file", path);
               run.print(r);
             });
    input(s, "hypergraph file");
    s->add_option("--level", o.level, "hierarchy level k (words of length <= k)")->check(CLI::PositiveNumber);
    s->add_flag("--tracial", o.tracial, "require a tracial state");
    s->add_option("--tol", o.tol, "feasibility residual tolerance (default 1e-8)")->check(CLI::PositiveNumber);
    s->add_option("--max-iters", o.max_iters, "iteration budget for the numerical phase");
    s->add_option("--cert,-o", o.cert, "certificate or residual JSON file (default: INPUT.npaK.json)");

    s = leaf(analyze, "strategies",
             "perfect deterministic strategies of a synchronous game (its classical solutions)", [&] {
               auto g = parse_file(o.args.at(0), [&](const std::string& t) {
                 return parse_game(t, GameParseOptions{o.auto_sync});
               });
               Report r{"analyze strategies", "games"};
               r.instance(o.args[0], serialize_game(g));
               r.param("auto_sync", o.auto_sync ? "true" : "false");
               r.param("propagate", o.no_propagate ? "false" : "true");
               for (const auto& v : validate_game(g)) err << "warning: not synchronous: " << v << "\n";
               StrategyOptions so;
               so.propagate = !o.no_propagate;
               auto e = perfect_deterministic_strategies(g, so);
               r.timings.emplace_back("enumerate", run.clock.lap());
               r.verdicts.push_back(e.cap_exceeded ? "COUNT >" + std::to_string(so.cap)
                                                   : "COUNT " + std::to_string(e.strategies.size()));
               run.print(r);
             });
    input(s, "game file");
    s->add_flag("--auto-sync", o.auto_sync, "add the synchronicity quadruples (x, x, a, b), a != b");
    s->add_flag("--no-propagate", o.no_propagate, "plain enumeration instead of forward checking");

    s = leaf(analyze, "repsearch",
             "numerical search for a d-dimensional representation (projections summing to I on every edge)", [&] {
               Hypergraph h = load_hypergraph(o.args.at(0));
               SearchOptions so;
               so.seed = o.seed;
               so.starts = o.starts;
               so.jobs = o.jobs;
               if (o.tol > 0) so.tol = o.tol;
               if (o.max_iters) so.max_iters = o.max_iters;
               Report r{"analyze repsearch", "reps"};
               r.instance(o.args[0], serialize_hypergraph(h));
               r.param("dim", std::to_string(o.dim));
               r.param("seed", std::to_string(so.seed));
               r.param("starts", std::to_string(so.starts));
               r.param("max_iters", std::to_string(so.max_iters));
               r.param("tol", fmt(so.tol));
               r.param("target", fmt(so.target));
               auto res = search_representation(h, o.dim, so);
               r.timings.emplace_back("search", run.clock.lap());
               r.verdicts.push_back(res.found ? "FOUND" : "NOT_FOUND");
               r.fact("objective", fmt(res.objective));
               r.fact("best_start", std::to_string(res.start));
               if (!res.found) r.notes.push_back("NOT_FOUND says nothing about whether a representation exists");
               if (res.found && !o.output.empty()) {
                 write_file(o.output, serialize_representation(res.rep));
                 r.fact("written", o.output);
               }
               run.print(r);
             });
    input(s, "hypergraph file");
    s->add_option("--dim", o.dim, "matrix dimension d")->check(CLI::PositiveNumber);
    s->add_option("--seed", o.seed, "master seed");
    s->add_option("--count", o.starts, "number of random starts (default 8)");
    s->add_option("--jobs", o.jobs, "worker threads over starts")->check(CLI::PositiveNumber);
    s->add_option("--tol", o.tol, "verification tolerance (default 1e-9)")->check(CLI::PositiveNumber);
    s->add_option("--max-iters", o.max_iters, "iterations per start");
    out_opt(s);

    s = leaf(analyze, "redundant",
             "redundant edges: partition-of-unity relations implied linearly by earlier edges", [&] {
               Hypergraph h = load_hypergraph(o.args.at(0));
               Report r{"analyze redundant", "core"};
               r.instance(o.args[0], serialize_hypergraph(h));
               auto red = redundant_edges(h);
               r.verdicts.push_back("REDUNDANT " + std::to_string(red.size()));
               std::string list;
               for (auto e : red) list += (list.empty() ? "" : " ") + std::to_string(e + 1);
               if (!red.empty()) r.fact("edges", list);
               if (!o.output.empty()) {
                 write_file(o.output, serialize_hypergraph(remove_edges(h, red)));
                 r.fact("written", o.output);
               }
               run.print(r);
             });
    input(s, "hypergraph file");
    s->add_option("-o,--output", o.output, "write the hypergraph without its redundant edges");
  }

  // verify
  CLI::App* verify = app.add_subcommand("verify", "independent checkers");
  verify->require_subcommand(1);
  {
    auto* s = leaf(verify, "rep",
                   "check that matrices form a representation: symmetric idempotents summing to I on every edge", [&] {
                     Hypergraph h = load_hypergraph(o.args.at(0));
                     auto rep = parse_file(o.args.at(1), [](const std::string& t) { return parse_representation(t); });
                     Report r{"verify rep", "reps"};
                     r.instance(o.args[0], serialize_hypergraph(h));
                     r.instance(o.args[1], serialize_representation(rep));
                     r.param("dim", std::to_string(rep.dim));
                     RepCheck check;
                     if (o.tol > 0) {
                       r.param("arithmetic", "double");
                       r.param("tol", fmt(o.tol));
                       check = verify_representation(h, to_double(rep), o.tol);
                     } else {
                       r.param("arithmetic", "exact");
                       check = verify_representation(h, rep);
                     }
                     r.verdicts.push_back(check.ok ? "VALID" : "INVALID");
                     for (const auto& v : check.violations) r.fact("violation", v);
                     run.print(r);
                   });
    input(s, "HYPERGRAPH REP", 2);
    s->add_option("--tol", o.tol, "check numerically to this operator-norm tolerance instead of exactly")
        ->check(CLI::PositiveNumber);

    s = leaf(verify, "certificate", "exact check of a Farkas certificate of moment-problem infeasibility", [&] {
      Hypergraph h = load_hypergraph(o.args.at(0));
      std::string text = read_file(o.args.at(1));
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(text);
      } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(o.args[1] + ": " + e.what());
      }
      FarkasCertificate c = certificate_from_json(j);
      Report r{"verify certificate", "sdp"};
      r.instance(o.args[0], serialize_hypergraph(h));
      r.instance(o.args[1], j.dump());
      r.param("level", std::to_string(c.level));
      r.param("tracial", c.tracial ? "true" : "false");
      r.param("arithmetic", "exact");
      MomentProblem m = build_moment_problem(h, c.level, c.tracial);
      auto check = verify_certificate(m, c);
      r.verdicts.push_back(check.accepted ? "ACCEPTED" : "REJECTED");
      if (!check.accepted) r.fact("reason", check.reason);
      run.print(r);
    });
    input(s, "HYPERGRAPH CERTIFICATE", 2);
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run 'hyc --help' for usage\n";
    return 2;
  }

  try {
    for (auto& [sub, f] : actions)
      if (sub->parsed()) {
        f();
        return 0;
      }
    err << "error: no command given\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: missing argument\n";
    return 2;
  }
}

}  // namespace hyc
