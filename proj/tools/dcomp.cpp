#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcomp/category.hpp"
#include "dcomp/coarsest.hpp"
#include "dcomp/dot.hpp"
#include "dcomp/json_io.hpp"
#include "dcomp/paths.hpp"
#include "dcomp/pv.hpp"

using nlohmann::json;
using namespace dcomp;

namespace {

// Input problems map to exit code 2, like usage errors.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned default_threads() {
  if (const char* env = std::getenv("DCOMP_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

PrecubicalSet load_complex(const std::string& path) {
  try {
    return complex_from_json(read_json_file(path));
  } catch (const FormatError& e) {
    throw InputError(e.what());
  } catch (const PrecubicalError& e) {
    throw InputError(path + ": " + e.what());
  }
}

ComponentSystem load_system(const std::string& path, const PrecubicalSet& k) {
  try {
    return system_from_json(read_json_file(path), k);
  } catch (const std::exception& e) {
    throw InputError(std::string(e.what()));
  }
}

Flavor parse_flavor(const std::string& s) {
  try {
    return flavor_from_string(s);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

// A cell is given by its label or as "[dim, idx]".
CellId parse_cell(const PrecubicalSet& k, const std::string& s) {
  if (!s.empty() && s.front() == '[') {
    try {
      return cell_from_json(json::parse(s), k);
    } catch (const std::exception& e) {
      throw InputError("bad cell reference " + s + ": " + e.what());
    }
  }
  if (auto c = k.find_label(s)) return *c;
  throw InputError("no cell labelled " + s);
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty())
    std::cout << text;
  else
    write_text_file(out, text);
}

void emit(const json& j, const std::string& out) { emit(j.dump(2) + "\n", out); }

json violations_json(const std::vector<Violation>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(v.describe());
  return out;
}

ComponentSystem system_or_coarsest(const Analyzer& an, const std::string& system_file, Flavor f) {
  if (!system_file.empty()) {
    auto s = load_system(system_file, an.complex());
    if (s.flavor != f) s.flavor = f;
    s.normalize();
    return s;
  }
  return coarsest(an, f).system;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable component systems and component categories of pre-cubical sets"};
  app.require_subcommand(1);
  unsigned threads = default_threads();
  std::string out;
  app.add_option("--threads", threads, "Worker threads (default: $DCOMP_THREADS or all cores)")->check(CLI::PositiveNumber);

  std::string input, flavor_s = "total", system_file, from_s, to_s, style_s = "auto";
  bool matrix = false, exhaustive = false, deep = false, as_category = false;
  std::size_t max_candidates = SearchBudget{}.max_candidates;
  std::optional<std::uint64_t> seed;

  auto add_input = [&](CLI::App* c, const char* what = "Complex JSON file") {
    c->add_option("input", input, what)->required();
    c->add_option("-o,--output", out, "Write to this file instead of stdout");
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check the pre-cubical relations and the loop condition");
  add_input(validate_cmd);

  auto* homset_cmd = app.add_subcommand("homset", "Dihomotopy classes of directed paths between two cells");
  add_input(homset_cmd);
  homset_cmd->add_option("--from", from_s, "Source cell (label or [dim,idx])");
  homset_cmd->add_option("--to", to_s, "Target cell (label or [dim,idx])");
  homset_cmd->add_flag("--matrix", matrix, "Class counts between all pairs of vertices");

  auto* systems_cmd = app.add_subcommand("systems", "Canonical component systems and their verdicts");
  add_input(systems_cmd);
  std::string systems_flavor;
  systems_cmd->add_option("--flavor", systems_flavor, "future, past or total (default: all three)");

  auto* check_cmd = app.add_subcommand("check", "Validate a component system");
  add_input(check_cmd);
  check_cmd->add_option("--system", system_file, "System JSON file")->required();
  check_cmd->add_flag("--deep", deep, "Re-check on the subdivided complex");

  auto* coarsest_cmd = app.add_subcommand("coarsest", "Coarsest stable component system");
  add_input(coarsest_cmd);
  coarsest_cmd->add_option("--flavor", flavor_s, "future, past or total")->required();
  coarsest_cmd->add_flag("--exhaustive", exhaustive, "Run the exhaustive oracle and certify the result");
  coarsest_cmd->add_option("--max-candidates", max_candidates, "Candidate budget of the heuristic");

  auto* category_cmd = app.add_subcommand("category", "Component category of a system");
  add_input(category_cmd);
  category_cmd->add_option("--flavor", flavor_s, "future, past or total")->required();
  category_cmd->add_option("--system", system_file, "System JSON file (default: coarsest)");
  category_cmd->add_option("--style", style_s, "Representative choice for total systems: auto, future or past");
  category_cmd->add_option("--seed", seed, "Pick representatives at random with this seed");

  auto* pv_cmd = app.add_subcommand("pv-compile", "Compile a PV program into a complex");
  add_input(pv_cmd, "PV program");

  auto* render_cmd = app.add_subcommand("render", "Graphviz DOT for a complex, a system or a category");
  add_input(render_cmd);
  render_cmd->add_option("--system", system_file, "Colour cells by this system");
  render_cmd->add_flag("--category", as_category, "Render the component category instead");
  render_cmd->add_option("--flavor", flavor_s, "Flavor for --category without --system");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    AnalyzerOptions aopts{threads, false};

    if (*validate_cmd) {
      auto k = load_complex(input);
      auto vs = validate(k);
      bool loops = vs.empty() && has_loops(k);
      json j{{"valid", vs.empty() && !loops}, {"cells", k.counts()}, {"violations", violations_json(vs)},
             {"loops", loops}};
      emit(j, out);
      return vs.empty() && !loops ? 0 : 1;
    }

    if (*pv_cmd) {
      std::ifstream f(input);
      if (!f) throw InputError("cannot open " + input);
      std::stringstream ss;
      ss << f.rdbuf();
      PvProgram prog;
      try {
        prog = parse_pv(ss.str());
      } catch (const PvError& e) {
        throw InputError(input + ": " + e.what());
      }
      emit(complex_to_json(compile_pv(prog)), out);
      return 0;
    }

    auto k = load_complex(input);
    if (auto vs = validate(k); !vs.empty()) throw InputError("invalid complex: " + vs.front().describe());
    if (has_loops(k)) throw InputError("complex has directed loops");

    if (*homset_cmd) {
      if (matrix) {
        PathIndex pi(k, threads);
        json rows = json::array();
        for (std::uint32_t u = 0; u < pi.num_vertices(); ++u) {
          json row = json::array();
          for (std::uint32_t v = 0; v < pi.num_vertices(); ++v) row.push_back(pi.count(u, v));
          rows.push_back(std::move(row));
        }
        json labels = json::array();
        if (k.has_labels())
          for (std::uint32_t u = 0; u < k.count(0); ++u) labels.push_back(k.label({0, u}));
        emit(json{{"vertices", labels}, {"counts", rows}}, out);
        return 0;
      }
      if (from_s.empty() || to_s.empty()) throw CLI::ValidationError("homset needs --from and --to, or --matrix");
      CellId a = parse_cell(k, from_s), b = parse_cell(k, to_s);
      json j{{"from", cell_to_json(a)}, {"to", cell_to_json(b)}};
      if (a.dim == 0 && b.dim == 0) {
        auto h = hom_set(k, a.index, b.index);
        json classes = json::array();
        for (const auto& c : h.classes) classes.push_back(c.rep);
        j["subdivided"] = false;
        j["size"] = h.size();
        j["classes"] = std::move(classes);
      } else {
        // Cells of positive dimension are represented by their centers.
        Analyzer an(k, aopts);
        auto h = an.paths().hom(an.center(k.flat(a)), an.center(k.flat(b)));
        json classes = json::array();
        for (const auto& c : h.classes) classes.push_back(c.rep);
        j["subdivided"] = true;
        j["size"] = h.size();
        j["classes"] = std::move(classes);
      }
      emit(j, out);
      return 0;
    }

    Analyzer an(k, aopts);

    if (*systems_cmd) {
      std::vector<Flavor> fs{Flavor::Future, Flavor::Past, Flavor::Total};
      if (!systems_flavor.empty()) fs = {parse_flavor(systems_flavor)};
      json arr = json::array();
      for (auto f : fs) {
        auto s = canonical(k, f);
        json j = system_to_json(s);
        j["valid"] = an.check_system(s).valid;
        arr.push_back(std::move(j));
      }
      emit(json{{"systems", std::move(arr)}}, out);
      return 0;
    }

    if (*check_cmd) {
      Analyzer deep_an(k, AnalyzerOptions{threads, deep});
      auto s = load_system(system_file, k);
      auto r = deep_an.check_system(s);
      emit(report_to_json(deep_an, r), out);
      bool ok = r.valid && (!r.deep_valid || *r.deep_valid);
      return ok ? 0 : 1;
    }

    if (*coarsest_cmd) {
      SearchBudget budget;
      budget.max_candidates = max_candidates;
      budget.exhaustive = exhaustive;
      auto r = coarsest(an, parse_flavor(flavor_s), budget);
      json j = system_to_json(r.system);
      json cert{{"requested", exhaustive},
                {"certified", r.certified},
                {"fixpoint", r.fixpoint},
                {"rounds", r.rounds},
                {"candidates", r.candidates}};
      if (r.oracle) {
        cert["oracle_start"] = r.oracle_full ? "canonical" : "heuristic";
        cert["oracle_complete"] = r.oracle->complete;
        cert["oracle_nodes"] = r.oracle->nodes;
        cert["oracle_valid_partitions"] = r.oracle->valid_count;
        cert["heuristic_matches_oracle"] = r.heuristic_matches_oracle;
      }
      j["certification"] = std::move(cert);
      emit(j, out);
      return exhaustive && !r.certified ? 1 : 0;
    }

    if (*category_cmd || (*render_cmd && as_category)) {
      Flavor f = parse_flavor(flavor_s);
      auto s = system_or_coarsest(an, system_file, f);
      auto report = an.check_system(s);
      if (!report.valid) {
        emit(report_to_json(an, report), out);
        return 1;
      }
      RepStyle style = RepStyle::Auto;
      if (style_s == "future")
        style = RepStyle::Future;
      else if (style_s == "past")
        style = RepStyle::Past;
      else if (style_s != "auto")
        throw InputError("unknown style " + style_s);
      std::optional<std::mt19937_64> rng;
      if (seed) rng.emplace(*seed);
      Representatives reps;
      try {
        reps = choose_representatives(an, s, style, rng ? &*rng : nullptr);
      } catch (const CategoryError& e) {
        throw InputError(e.what());
      }
      auto cat = build_category(an, reps);
      if (*render_cmd) {
        emit(category_to_dot(s, cat), out);
      } else {
        json j = category_to_json(an, s, reps, cat);
        j["laws_hold"] = verify_category_laws(cat, threads);
        emit(j, out);
      }
      return 0;
    }

    if (*render_cmd) {
      if (system_file.empty())
        emit(complex_to_dot(k), out);
      else
        emit(system_to_dot(k, load_system(system_file, k)), out);
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "dcomp: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "dcomp: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "dcomp: internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
