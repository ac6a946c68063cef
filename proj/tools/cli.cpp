#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "treeauto/activity.hpp"
#include "treeauto/ball.hpp"
#include "treeauto/catalog.hpp"
#include "treeauto/error.hpp"
#include "treeauto/freeness.hpp"
#include "treeauto/machine_format.hpp"
#include "treeauto/nucleus.hpp"

namespace treeauto::cli {

namespace {

using Json = nlohmann::ordered_json;

/// Bad flags or a missing argument; exit status 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Options {
  std::string command;
  std::vector<std::string> args;
  std::string catalog;
  std::string file;
  std::optional<std::string> word;
  std::optional<std::string> vertex;
  std::vector<std::string> points;
  std::optional<std::size_t> level;
  std::optional<std::size_t> max_len;
  std::optional<std::size_t> budget;
  std::optional<std::size_t> max_size;
  std::optional<std::size_t> max_depth;
  std::size_t time_limit_ms = 0;
  std::string dot;
  bool json = false;
};

struct Outcome {
  Json payload;
  /// Printed verbatim instead of the payload when not in --json mode.
  std::optional<std::string> text;
  bool exhausted = false;
  std::string digest_source;
};

std::string digest(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) h = (h ^ c) * 0x100000001b3ULL;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

Json big(const BigInt& n) {
  if (n <= BigInt(INT64_MAX) && n >= BigInt(INT64_MIN)) return static_cast<std::int64_t>(n);
  return n.str();
}

Json rational(const Rational& r) { return r.str(); }

template <class T>
Json map_array(const std::vector<T>& xs, auto&& f) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(f(x));
  return out;
}

GeneratorSet load_generators(const Options& opt) {
  if (opt.catalog.empty() == opt.file.empty())
    throw UsageError("give exactly one of --catalog NAME or --file PATH");
  if (!opt.catalog.empty()) return builtin(opt.catalog).generators;
  return load_machine_file(opt.file);
}

BoundaryPoint point_at(const Options& opt, const GeneratorSet& gens, std::size_t i = 0) {
  if (opt.points.size() <= i) throw UsageError("this command needs --point PRE:PER");
  return BoundaryPoint::parse(opt.points[i], gens.alphabet());
}

SearchBudget search_budget(const Options& opt) {
  SearchBudget b;
  if (opt.budget) b.max_words = *opt.budget;
  b.time_limit = std::chrono::milliseconds(opt.time_limit_ms);
  return b;
}

std::size_t vertex_budget(const Options& opt) { return opt.budget.value_or(kDefaultVertexBudget); }

/// The generators, or the single element named by --word.
std::vector<std::pair<std::string, Automorphism>> subjects(const Options& opt, const GeneratorSet& gens) {
  std::vector<std::pair<std::string, Automorphism>> out;
  if (opt.word) {
    const GroupWord w = GroupWord::parse(*opt.word);
    out.emplace_back(w.to_string(), evaluate_word(gens, w));
  } else {
    for (std::size_t i = 0; i < gens.size(); ++i) out.emplace_back(gens.name(i), gens.element(i));
  }
  return out;
}

std::vector<std::string> vertex_strings(const std::vector<Vertex>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(v.to_string());
  return out;
}

Outcome cmd_eval(const Options& opt, const GeneratorSet& gens) {
  if (!opt.word) throw UsageError("eval needs --word");
  const Automorphism g = evaluate_word(gens, GroupWord::parse(*opt.word));
  Outcome o;
  if (opt.vertex)
    o.payload = apply(g, Vertex::parse(*opt.vertex, gens.alphabet())).to_string();
  else if (!opt.points.empty())
    o.payload = apply_boundary(g, point_at(opt, gens)).to_string();
  else
    throw UsageError("eval needs --vertex or --point");
  return o;
}

Outcome cmd_classify(const Options& opt, const GeneratorSet& gens) {
  Outcome o;
  o.payload = Json::object();
  for (const auto& [name, g] : subjects(opt, gens)) {
    const ActivityClass c = classify_activity(g);
    Json entry{{"class", kind_name(c.kind)}};
    if (c.kind == ActivityKind::polynomial) entry["degree"] = c.degree;
    if (c.kind == ActivityKind::finitary) entry["depth"] = c.depth;
    o.payload[name] = std::move(entry);
  }
  return o;
}

Outcome cmd_theta(const Options& opt, const GeneratorSet& gens) {
  const std::size_t n = opt.level.value_or(10);
  Outcome o;
  o.payload = Json::object();
  for (const auto& [name, g] : subjects(opt, gens)) {
    Json entry{{"theta", map_array(theta_sequence(g, n), big)}};
    if (!opt.points.empty()) {
      const BoundaryPoint w = point_at(opt, gens);
      Json rel = Json::array();
      for (std::size_t i = 0; i <= n; ++i) rel.push_back(big(theta_relative(gens, g, w, i, vertex_budget(opt))));
      entry["relative"] = std::move(rel);
    }
    o.payload[name] = std::move(entry);
  }
  return o;
}

Outcome cmd_measure(const Options& opt, const GeneratorSet& gens) {
  const std::size_t n = opt.level.value_or(14);
  Outcome o;
  o.payload = Json::object();
  for (const auto& [name, g] : subjects(opt, gens))
    o.payload[name] = Json{{"singular", rational(singular_measure(g))},
                           {"empirical", map_array(empirical_measure_sequence(g, n), rational)}};
  return o;
}

NucleusResult run_nucleus(const Options& opt, const GeneratorSet& gens) {
  return nucleus(gens, opt.max_size.value_or(1000), opt.max_depth.value_or(20));
}

Outcome cmd_nucleus(const Options& opt, const GeneratorSet& gens) {
  const NucleusResult nu = run_nucleus(opt, gens);
  const WordBall ball = word_ball(gens, 6, 20'000);
  std::unordered_map<Automorphism, const GroupWord*> words;
  for (const auto& e : ball.elements) words.emplace(e.element, &e.word);

  GeneratorSet named(gens.alphabet());
  Json elements = Json::array();
  std::size_t counter = 0;
  for (const auto& g : nu.elements) {
    std::string name;
    if (g.is_identity()) name = "id";
    for (std::size_t i = 0; i < gens.size() && name.empty(); ++i)
      if (gens.element(i) == g) name = gens.name(i);
    if (!name.empty() && named.find(name)) name.clear();
    while (name.empty()) {
      std::string candidate = "n" + std::to_string(++counter);
      if (!named.find(candidate) && !gens.find(candidate)) name = std::move(candidate);
    }
    named.add(name, g);
    Json entry{{"name", name}};
    if (auto it = words.find(g); it != words.end())
      entry["word"] = it->second->to_string();
    else
      entry["word"] = nullptr;
    elements.push_back(std::move(entry));
  }
  Outcome o;
  o.payload = Json{{"status", status_name(nu.status)},
                   {"size", nu.elements.size()},
                   {"generations", nu.generations},
                   {"elements", std::move(elements)},
                   {"machine", format_machine(named)}};
  o.exhausted = nu.status != NucleusStatus::found;
  return o;
}

Outcome cmd_germs(const Options& opt, const GeneratorSet& gens) {
  const BoundaryPoint w = point_at(opt, gens);
  const NucleusResult nu = run_nucleus(opt, gens);
  Outcome o;
  if (nu.status != NucleusStatus::found) {
    o.payload = Json{{"point", w.to_string()}, {"nucleus", status_name(nu.status)}};
    o.exhausted = true;
    return o;
  }
  const GermClassTable t =
      germ_group(gens, nu, w, opt.max_len.value_or(12), opt.budget.value_or(kDefaultElementBudget));
  o.payload = Json{{"point", t.point.to_string()},
                   {"nucleus_size", nu.elements.size()},
                   {"order", t.classes.size()},
                   {"classes", map_array(t.words, [](const GroupWord& x) { return x.to_string(); })},
                   {"multiplication", t.multiplication},
                   {"identity", t.class_of_identity},
                   {"searched_length", t.searched_length},
                   {"complete", t.complete}};
  o.exhausted = t.truncated;
  return o;
}

void write_dot(const Options& opt, const SchreierLevelGraph& graph) {
  if (opt.dot.empty()) return;
  std::ofstream out(opt.dot);
  if (!out) throw Error("cannot write " + opt.dot);
  out << export_dot(graph);
}

Outcome cmd_schreier(const Options& opt, const GeneratorSet& gens) {
  const Vertex seed = opt.vertex ? Vertex::parse(*opt.vertex, gens.alphabet())
                                 : Vertex(std::vector<Letter>(opt.level.value_or(3), 0));
  const SchreierLevelGraph graph = schreier_level_graph(gens, seed, vertex_budget(opt));
  write_dot(opt, graph);
  Json edges = Json::array();
  for (const auto& e : graph.edges)
    edges.push_back(Json{{"generator", graph.generators[e.generator]},
                         {"source", graph.vertices[e.source].to_string()},
                         {"target", graph.vertices[e.target].to_string()},
                         {"trivial_section", e.trivial_section}});
  Outcome o;
  o.payload = Json{{"level", graph.level},
                   {"generators", graph.generators},
                   {"vertices", vertex_strings(graph.vertices)},
                   {"edges", std::move(edges)}};
  return o;
}

Outcome cmd_folner(const Options& opt, const GeneratorSet& gens) {
  const BoundaryPoint w = opt.points.empty() ? BoundaryPoint() : point_at(opt, gens);
  const std::size_t n = opt.level.value_or(4);
  const FolnerReport r = folner_candidate(gens, w, n, vertex_budget(opt));
  if (!opt.dot.empty()) write_dot(opt, schreier_level_graph(gens, w.prefix(n), vertex_budget(opt)));
  Json comps = Json::array();
  for (const auto& c : r.components)
    comps.push_back(Json{{"size", c.vertices.size()}, {"boundary", c.boundary}, {"ratio", rational(c.ratio)}});
  Outcome o;
  o.payload = Json{{"level", r.level},
                   {"orbit_size", r.orbit_size},
                   {"components", std::move(comps)},
                   {"best", r.best},
                   {"best_component", vertex_strings(r.best_component)},
                   {"boundary", r.boundary_size},
                   {"ratio", rational(r.ratio)},
                   {"bound", rational(r.bound)},
                   {"anchor", r.anchor.to_string()},
                   {"tail", r.tail.to_string()}};
  return o;
}

Json words_json(const std::vector<GroupWord>& ws) {
  return map_array(ws, [](const GroupWord& w) { return w.to_string(); });
}

Outcome cmd_relations(const Options& opt, const GeneratorSet& gens) {
  const RelationReport r = find_relations(gens, opt.max_len.value_or(10), search_budget(opt));
  Outcome o;
  o.payload = Json{{"relators", words_json(r.relators)},
                   {"complete", r.complete},
                   {"searched_length", r.searched_length}};
  o.exhausted = !r.complete;
  return o;
}

Outcome cmd_stabilizer(const Options& opt, const GeneratorSet& gens) {
  const BoundaryPoint w = point_at(opt, gens);
  const StabilizerReport r = stabilizer_search(gens, w, opt.max_len.value_or(8), search_budget(opt));
  Outcome o;
  o.payload = Json{{"point", w.to_string()},
                   {"words", words_json(r.words)},
                   {"complete", r.complete},
                   {"searched_length", r.searched_length}};
  o.exhausted = !r.complete;
  return o;
}

Outcome cmd_trichotomy(const Options& opt, const GeneratorSet& gens) {
  std::vector<BoundaryPoint> points;
  for (std::size_t i = 0; i < opt.points.size(); ++i) points.push_back(point_at(opt, gens, i));
  if (points.empty())
    for (Letter x = 0; x < gens.alphabet().size() && x < 2; ++x) points.emplace_back(Vertex{}, Vertex{x});
  TrichotomyOptions options;
  options.relation_length = opt.max_len.value_or(10);
  options.folner_levels = opt.level.value_or(8);
  options.budget = search_budget(opt);
  if (opt.budget) options.vertex_budget = *opt.budget;
  const TrichotomyEvidence ev = free_subgroup_certificate(gens, points, options);

  Outcome o;
  Json pts = Json::array();
  bool exhausted = !ev.relations.complete;
  for (const auto& p : ev.points) {
    Json probe{{"germ_trivial", words_json(p.germs.germ_trivial)},
               {"germ_nontrivial", words_json(p.germs.germ_nontrivial)},
               {"depth", p.germs.depth},
               {"pairs_tested", p.germs.pairs_tested},
               {"surviving_pair", nullptr},
               {"complete", p.germs.complete}};
    if (p.germs.surviving_pair)
      probe["surviving_pair"] = {p.germs.surviving_pair->first.to_string(),
                                 p.germs.surviving_pair->second.to_string()};
    pts.push_back(Json{{"point", p.point.to_string()},
                       {"stabilizer_words", words_json(p.stabilizer.words)},
                       {"stabilizer_complete", p.stabilizer.complete},
                       {"stabilizer_searched_length", p.stabilizer.searched_length},
                       {"stabilizer_abelian", p.stabilizer_abelian},
                       {"germ_probe", std::move(probe)},
                       {"folner_tail", map_array(p.folner_tail, rational)},
                       {"folner_complete", p.folner_complete}});
    exhausted = exhausted || !p.stabilizer.complete;
  }
  o.payload = Json{{"bound", ev.bound},
                   {"relators", words_json(ev.relations.relators)},
                   {"relations_complete", ev.relations.complete},
                   {"generators_commute", ev.generators_commute},
                   {"points", std::move(pts)},
                   {"branches", Json{{"no_free_subgroup", ev.no_free_subgroup},
                                     {"free_at_point", ev.free_at_point},
                                     {"free_germs", ev.free_germs}}},
                   {"summary", ev.summary}};
  o.exhausted = exhausted;
  return o;
}

Outcome cmd_catalog(const Options& opt) {
  const std::string sub = opt.args.empty() ? "list" : opt.args[0];
  Outcome o;
  if (sub == "list") {
    if (opt.args.size() > 1) throw UsageError("catalog list takes no arguments");
    o.payload = builtin_names();
    return o;
  }
  if (sub == "dump") {
    std::string name = opt.args.size() > 1 ? opt.args[1] : opt.catalog;
    if (name.empty() || opt.args.size() > 2) throw UsageError("usage: catalog dump NAME");
    const CatalogEntry entry = builtin(name);
    const std::string text = format_machine(entry.generators);
    o.payload = Json{{"name", entry.name}, {"provenance", entry.provenance}, {"machine", text}};
    o.text = text;
    o.digest_source = text;
    return o;
  }
  throw UsageError("unknown catalog subcommand '" + sub + "' (expected list or dump)");
}

using Handler = std::function<Outcome(const Options&, const GeneratorSet&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"eval", cmd_eval},         {"classify", cmd_classify},     {"theta", cmd_theta},
      {"measure", cmd_measure},   {"nucleus", cmd_nucleus},       {"germs", cmd_germs},
      {"schreier", cmd_schreier}, {"folner", cmd_folner},         {"relations", cmd_relations},
      {"stabilizer", cmd_stabilizer}, {"trichotomy", cmd_trichotomy},
  };
  return table;
}

std::string command_list() {
  std::string out;
  for (const auto& [name, h] : handlers()) out += name + "|";
  return "{" + out + "catalog}";
}

void setup(CLI::App& app, Options& opt) {
  app.add_option("command", opt.command, "One of " + command_list())->required();
  app.add_option("args", opt.args, "Arguments of `catalog` (list | dump NAME)");
  app.add_option("--catalog", opt.catalog, "Built-in generating set");
  app.add_option("--file", opt.file, "Machine file");
  app.add_option("--word", opt.word, "Group word such as \"a b^-1\"");
  app.add_option("--vertex", opt.vertex, "Tree vertex such as 011");
  app.add_option("--point", opt.points, "Boundary point PRE:PER (repeatable for trichotomy)")
      ->allow_extra_args(false);
  app.add_option("--level", opt.level, "Tree level");
  app.add_option("--max-len", opt.max_len, "Word length bound");
  app.add_option("--budget", opt.budget, "Vertex, element or word budget of the command");
  app.add_option("--max-size", opt.max_size, "Nucleus size bound (default 1000)");
  app.add_option("--max-depth", opt.max_depth, "Nucleus iteration bound (default 20)");
  app.add_option("--time-limit", opt.time_limit_ms, "Wall-clock cap for word searches, in ms (0: none)");
  app.add_option("--dot", opt.dot, "Write the Schreier graph as DOT to this path");
  app.add_flag("--json", opt.json, "Wrap the result in a versioned report");
}

}  // namespace

std::string export_dot(const SchreierLevelGraph& graph) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream out;
  out << "digraph schreier {\n";
  for (std::size_t i = 0; i < graph.vertices.size(); ++i)
    out << "  v" << i << " [label=" << quote(graph.vertices[i].to_string()) << "];\n";
  for (const auto& e : graph.edges) {
    out << "  v" << e.source << " -> v" << e.target << " [label=" << quote(graph.generators[e.generator]);
    if (!e.trivial_section) out << ", style=bold";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

RunResult run(const std::vector<std::string>& args) {
  CLI::App app{"Finite-state tree automorphisms: actions, activity, nucleus, Schreier graphs and word searches",
               "treeauto"};
  Options opt;
  setup(app, opt);
  RunResult result;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.out = app.help();
    return result;
  } catch (const CLI::ParseError& e) {
    result.exit_code = 1;
    result.err = std::string("treeauto: ") + e.what() + "\n" + "Run with --help for usage.\n";
    return result;
  }

  Outcome outcome;
  try {
    if (opt.command == "catalog") {
      outcome = cmd_catalog(opt);
    } else {
      const auto it = handlers().find(opt.command);
      if (it == handlers().end()) throw UsageError("unknown command '" + opt.command + "', expected " + command_list());
      if (!opt.args.empty()) throw UsageError("unexpected argument '" + opt.args.front() + "'");
      const GeneratorSet gens = load_generators(opt);
      outcome = it->second(opt, gens);
      outcome.digest_source = format_machine(gens);
    }
  } catch (const BudgetExceeded& e) {
    outcome = Outcome{};
    outcome.payload = Json{{"error", e.what()}};
    outcome.exhausted = true;
    result.err = std::string("treeauto: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    result.exit_code = 1;
    result.err = std::string("treeauto: error: ") + e.what() + "\n";
    return result;
  }

  if (opt.json) {
    Json envelope{{"version", kVersion},
                  {"command", opt.command},
                  {"input_digest", digest(outcome.digest_source)},
                  {"result", outcome.payload},
                  {"budget", Json{{"exhausted", outcome.exhausted},
                                  {"budget", opt.budget ? Json(*opt.budget) : Json(nullptr)},
                                  {"max_len", opt.max_len ? Json(*opt.max_len) : Json(nullptr)},
                                  {"time_limit_ms", opt.time_limit_ms}}}};
    result.out = envelope.dump(2) + "\n";
  } else if (outcome.text) {
    result.out = *outcome.text;
  } else {
    result.out = outcome.payload.dump() + "\n";
  }
  if (outcome.exhausted) result.exit_code = 2;
  return result;
}

}  // namespace treeauto::cli
