#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "oddcolor/io.hpp"

using namespace oddcolor;

namespace {

enum Exit { ok = 0, invalid = 1, critical = 2 };

struct Outcome {
  int code = ok;
  std::string out;
  std::string err;
};

struct Options {
  std::string format = "text";
  std::string theorem = "odd10";
  std::string mode = "odd";
  std::string coloring;
  int max_k = 8;
  int guard = 40;
  bool csv = false;
  bool no_fallback = false;
};

auto read_file(const std::string& path) -> std::string {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

auto theorem_of(const std::string& s) -> Theorem { return s == "pcf11" ? Theorem::pcf11 : Theorem::odd10; }
auto mode_of(const std::string& s) -> Mode { return s == "pcf" ? Mode::pcf : Mode::odd; }

auto dump(const Json& j) -> std::string { return j.dump(2) + "\n"; }

auto faces_text(const PlaneGraph& g) -> std::string {
  std::ostringstream os;
  for (const Face& f : g.faces()) {
    auto reps = parse_arrays(f.degree_walk);
    os << "f" << f.id << " len=" << f.length() << " degrees=";
    for (std::size_t i = 0; i < f.degree_walk.size(); ++i) os << (i ? "-" : "") << f.degree_walk[i];
    if (reps.empty()) {
      os << " unrepresentable\n";
      continue;
    }
    os << ' ' << reps.front().render() << ' '
       << (classify_walk(f.degree_walk) == FaceClass::poor ? "poor" : "rich") << '\n';
  }
  return os.str();
}

auto walk_command(const std::string& walk, const Options& o) -> Outcome {
  std::vector<int> d;
  std::string s = walk;
  for (char& c : s)
    if (c == '-' || c == ',') c = ' ';
  std::istringstream in(s);
  for (std::string tok; in >> tok;) {
    if (!tok.empty() && tok.back() == '+') tok.pop_back();
    d.push_back(std::stoi(tok));
  }
  auto reps = parse_arrays(d);
  Outcome r;
  if (o.format == "json") {
    Json a = Json::array();
    for (const auto& x : reps) a.push_back(to_json(x));
    Json j{{"schema", kSchema}, {"degrees", d}, {"representations", a}};
    j["class"] = reps.empty() ? "unrepresentable" : classify_walk(d) == FaceClass::poor ? "poor" : "rich";
    r.out = dump(j);
    return r;
  }
  if (reps.empty()) {
    r.out = "unrepresentable\n";
    return r;
  }
  std::vector<std::string> seen;
  for (const auto& x : reps) {
    auto t = x.render();
    if (std::find(seen.begin(), seen.end(), t) == seen.end()) seen.push_back(t);
  }
  for (const auto& t : seen) r.out += t + "\n";
  return r;
}

auto run_one(const std::string& cmd, const std::string& path, const Options& o) -> Outcome {
  Outcome r;
  const bool json = o.format == "json";
  const PlaneGraph g = load_graph(read_file(path));

  if (cmd == "faces") {
    r.out = json ? dump(faces_json(g)) : faces_text(g);
  } else if (cmd == "analyze") {
    std::optional<PartialColoring> phi;
    if (!o.coloring.empty()) phi = parse_coloring(read_file(o.coloring), g.vertex_count());
    Json arr = Json::array();
    std::ostringstream os;
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
      if (g.degree(u) < 3) continue;
      try {
        auto rep = flex_report(g, u, phi ? &*phi : nullptr);
        arr.push_back(to_json(rep));
        os << "v" << u << " deg=" << g.degree(u) << " forb=" << rep.forb << " flex=" << rep.flex;
        for (auto [x, t] : rep.types) os << ' ' << x << ':' << to_string(t);
        if (rep.forb_colors) os << " |Forb|=" << rep.forb_colors->size();
        if (rep.flex_colors) os << " |Flex|=" << rep.flex_colors->size();
        os << '\n';
      } catch (const Error& e) {
        arr.push_back({{"vertex", u}, {"error", e.what()}});
        os << "v" << u << " untypeable: " << e.what() << '\n';
      }
    }
    r.out = json ? dump(Json{{"schema", kSchema}, {"vertices", arr}}) : os.str();
  } else if (cmd == "detect") {
    const Theorem th = theorem_of(o.theorem);
    auto hits = detect_all(g, th);
    if (json) {
      r.out = dump(hits_json(hits, th));
    } else {
      std::ostringstream os;
      for (const auto& h : hits) {
        os << h.kind << " [";
        for (std::size_t i = 0; i < h.witness.size(); ++i) os << (i ? " " : "") << h.witness[i];
        os << "]";
        if (!h.detail.empty()) os << " " << h.detail;
        os << '\n';
      }
      os << hits.size() << " hit(s)\n";
      r.out = os.str();
    }
  } else if (cmd == "discharge") {
    const Theorem th = theorem_of(o.theorem);
    auto rep = audit(g, th);
    if (o.csv) {
      r.out = ledger_csv(rep.final_state);
    } else if (json) {
      r.out = dump(to_json(rep));
    } else {
      std::ostringstream os;
      os << "theorem " << to_string(th) << (rep.applicable ? "" : " (not applicable)") << '\n';
      if (!rep.note.empty()) os << rep.note << '\n';
      for (const auto& [st, t] : rep.totals) os << to_string(st) << " total " << to_string(t) << '\n';
      os << "hits " << rep.hits.size() << ", negative elements " << rep.negatives.size() << '\n';
      for (const auto& n : rep.negatives) os << "  " << n.element.name() << " = " << to_string(n.value) << '\n';
      if (rep.critical) os << "CRITICAL: negative charge with no reducible configuration\n";
      r.out = os.str();
    }
    if (rep.critical) r.code = critical;
  } else if (cmd == "solve") {
    const Mode m = mode_of(o.mode);
    SolveOptions so;
    so.guard = o.guard;
    auto res = chromatic(g, m, o.max_k, so);
    if (json) {
      r.out = dump(to_json(res, m));
    } else {
      r.out = "chi_" + to_string(m) + " = " + std::to_string(res.value) + "\n" + render_coloring(res.witness);
    }
  } else if (cmd == "color") {
    const Theorem th = theorem_of(o.theorem);
    PeelOptions po;
    po.allow_fallback = !o.no_fallback;
    auto res = peel_color(g, th, po);
    r.out = json ? dump(to_json(res, th)) : render_coloring(res.coloring);
  } else {
    throw Error(Errc::invalid_spec, "unknown command " + cmd);
  }
  return r;
}

auto guarded(const std::string& cmd, const std::string& path, const Options& o) -> Outcome {
  try {
    return run_one(cmd, path, o);
  } catch (const std::exception& e) {
    Outcome r;
    r.code = invalid;
    r.err = path + ": " + e.what() + "\n";
    return r;
  }
}

// Runs `cmd` over every file with up to `jobs` workers; output keeps input order.
auto batch(const std::string& cmd, const std::vector<std::string>& files, const Options& o, int jobs) -> int {
  std::vector<Outcome> res(files.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < files.size();) res[i] = guarded(cmd, files[i], o);
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(files.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  int code = ok;
  for (const auto& r : res) {
    std::cout << r.out;
    std::cerr << r.err;
    code = std::max(code, r.code);
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"odd and proper conflict-free coloring of sparse plane graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  int jobs = 1;
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", jobs, "parallel workers over input files")->check(CLI::PositiveNumber);

  std::vector<std::string> files;
  std::string walk;

  auto* faces = app.add_subcommand("faces", "array representations and poor/rich class per face");
  faces->add_option("files", files, "rotation or graph6 files");
  faces->add_option("--walk", walk, "classify a raw degree walk instead, e.g. \"4 2 2 2 4\"");

  auto* analyze = app.add_subcommand("analyze", "forb/flex report per 3+-vertex");
  analyze->add_option("files", files)->required();
  analyze->add_option("--coloring", o.coloring, "partial coloring file (v=c per line)");

  auto* detect = app.add_subcommand("detect", "reducible configurations");
  detect->add_option("files", files)->required();
  detect->add_option("--theorem", o.theorem)->check(CLI::IsMember({"odd10", "pcf11"}));

  auto* discharge = app.add_subcommand("discharge", "run the discharging audit");
  discharge->add_option("files", files)->required();
  discharge->add_option("--theorem", o.theorem)->check(CLI::IsMember({"odd10", "pcf11"}));
  discharge->add_flag("--csv", o.csv, "print the transfer ledger as CSV");

  auto* solve = app.add_subcommand("solve", "exact chromatic number");
  solve->add_option("files", files)->required();
  solve->add_option("--mode", o.mode)->check(CLI::IsMember({"odd", "pcf"}));
  solve->add_option("--max-k", o.max_k);
  solve->add_option("--guard", o.guard, "vertex limit for exhaustive search");

  auto* color = app.add_subcommand("color", "constructive 4-coloring by peeling");
  color->add_option("files", files)->required();
  color->add_option("--theorem", o.theorem)->check(CLI::IsMember({"odd10", "pcf11"}));
  color->add_flag("--no-fallback", o.no_fallback, "fail instead of falling back to exact search");

  GeneratorSpec spec;
  bool graph6 = false;
  auto* gen = app.add_subcommand("gen", "random plane graph with a girth bound");
  gen->add_option("--skeleton", spec.skeleton);
  gen->add_option("--girth", spec.girth);
  gen->add_option("--seed", spec.seed);
  gen->add_option("--density", spec.density);
  gen->add_option("--max-subdivision", spec.max_subdivision);
  gen->add_flag("--inject-long-threads", spec.inject_long_threads);
  gen->add_flag("--graph6", graph6, "emit graph6 instead of rotation text");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      auto out = generate(spec);
      if (o.format == "json") {
        Json j{{"schema", kSchema}, {"rotation", out.graph.rotation()}, {"subdivisions", out.subdivisions}};
        j["girth"] = out.girth ? Json(*out.girth) : Json(nullptr);
        std::cout << dump(j);
      } else {
        std::cout << (graph6 ? render_graph6(out.graph) + "\n" : render_rotation(out.graph));
      }
      return ok;
    }
    if (*faces && !walk.empty()) {
      auto r = walk_command(walk, o);
      std::cout << r.out;
      return r.code;
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return invalid;
  }
  if (files.empty()) {
    std::cerr << "no input files\n";
    return invalid;
  }
  return batch(app.get_subcommands().front()->get_name(), files, o, jobs);
}
