#include "dcomp/pv.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <sstream>

namespace dcomp {

PvProgram parse_pv(const std::string& text) {
  static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
  static const std::regex token("([PV])(?:\\(([A-Za-z_][A-Za-z0-9_]*)\\)|([A-Za-z_][A-Za-z0-9_]*))");
  PvProgram prog;
  std::map<std::string, std::size_t> index;
  std::vector<std::pair<std::size_t, std::string>> proc_lines;
  std::istringstream in(text);
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> words;
    for (std::string w; ls >> w;) words.push_back(w);
    if (words.empty()) continue;
    if (words[0] == "sem") {
      if (words.size() != 3 || !std::regex_match(words[1], ident)) throw PvError(no, "expected `sem <id> <capacity>`");
      unsigned cap = 0;
      try {
        std::size_t used = 0;
        long v = std::stol(words[2], &used);
        if (used != words[2].size() || v < 1) throw std::invalid_argument("");
        cap = static_cast<unsigned>(v);
      } catch (const std::exception&) {
        throw PvError(no, "capacity must be a positive integer");
      }
      if (!index.emplace(words[1], prog.resources.size()).second) throw PvError(no, "resource declared twice: " + words[1]);
      prog.resources.emplace_back(words[1], cap);
      continue;
    }
    proc_lines.emplace_back(no, line);
  }
  // Resources may be declared after the processes that use them.
  for (const auto& [no, text_line] : proc_lines) {
    std::istringstream ls(text_line);
    std::vector<PvInstruction> proc;
    std::vector<unsigned> held(prog.resources.size(), 0);
    for (std::string w; ls >> w;) {
      std::smatch m;
      if (!std::regex_match(w, m, token)) throw PvError(no, "syntax error at `" + w + "`");
      std::string name = m[2].matched ? m[2].str() : m[3].str();
      auto it = index.find(name);
      if (it == index.end()) throw PvError(no, "unknown resource: " + name);
      bool acquire = m[1] == "P";
      if (!acquire) {
        if (held[it->second] == 0) throw PvError(no, "V(" + name + ") without a matching P");
        --held[it->second];
      } else {
        ++held[it->second];
      }
      proc.push_back({acquire, it->second});
    }
    prog.processes.push_back(std::move(proc));
  }
  return prog;
}

namespace {

// Per-axis carrier: even 2v is the vertex v, odd 2v+1 the open interval (v, v+1).
struct Interval {
  std::size_t resource;
  unsigned lo, hi;  // held on (lo, hi); hi = axis end + 1 when never released
};

bool held_on(const Interval& iv, unsigned carrier) {
  if (carrier % 2 == 0) {
    unsigned v = carrier / 2;
    return iv.lo < v && v < iv.hi;
  }
  unsigned v = carrier / 2;
  return iv.lo <= v && v + 1 <= iv.hi;
}

}  // namespace

PrecubicalSet compile_pv(const PvProgram& p) {
  const std::size_t n = p.processes.size();
  if (n > kMaxCubeDim) throw PrecubicalError("too many processes (at most " + std::to_string(kMaxCubeDim) + ")");
  std::vector<unsigned> len(n);  // edges per axis
  std::vector<std::vector<Interval>> holds(n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto& proc = p.processes[a];
    len[a] = static_cast<unsigned>(proc.size()) + 1;
    std::vector<std::vector<unsigned>> open(p.resources.size());
    for (std::size_t t = 0; t < proc.size(); ++t) {
      unsigned pos = static_cast<unsigned>(t) + 1;
      auto r = proc[t].resource;
      if (proc[t].acquire) {
        open[r].push_back(pos);
      } else {
        holds[a].push_back({r, open[r].back(), pos});
        open[r].pop_back();
      }
    }
    for (std::size_t r = 0; r < open.size(); ++r)
      for (auto s : open[r]) holds[a].push_back({r, s, len[a] + 1});
  }

  // Enumerate carriers (2*len+1 per axis) in lexicographic order.
  std::vector<std::vector<unsigned>> kept;
  std::vector<unsigned> cur(n, 0);
  while (true) {
    std::vector<unsigned> load(p.resources.size(), 0);
    for (std::size_t a = 0; a < n; ++a)
      for (const auto& iv : holds[a])
        if (held_on(iv, cur[a])) ++load[iv.resource];
    bool ok = true;
    for (std::size_t r = 0; r < load.size(); ++r)
      if (load[r] > p.resources[r].second) ok = false;
    if (ok) kept.push_back(cur);
    std::size_t a = n;
    for (; a > 0 && cur[a - 1] == 2 * len[a - 1]; --a) cur[a - 1] = 0;
    if (a == 0) break;
    ++cur[a - 1];
  }
  auto dim_of = [](const std::vector<unsigned>& c) {
    return static_cast<unsigned>(std::count_if(c.begin(), c.end(), [](unsigned x) { return x % 2 == 1; }));
  };
  std::stable_sort(kept.begin(), kept.end(), [&](const auto& x, const auto& y) { return dim_of(x) < dim_of(y); });
  std::map<std::vector<unsigned>, CellId> id;
  std::vector<std::uint32_t> counts;
  for (const auto& c : kept) {
    unsigned d = dim_of(c);
    if (counts.size() <= d) counts.resize(d + 1, 0);
    id[c] = CellId{d, counts[d]++};
  }
  PrecubicalSet k(counts);
  for (const auto& c : kept) {
    CellId cell = id.at(c);
    std::string label = "(";
    for (std::size_t a = 0; a < n; ++a) {
      if (a) label += ",";
      label += c[a] % 2 ? std::to_string(c[a] / 2) + ".5" : std::to_string(c[a] / 2);
    }
    k.set_label(cell, label + ")");
    unsigned i = 0;
    for (std::size_t a = 0; a < n; ++a) {
      if (c[a] % 2 == 0) continue;
      ++i;
      for (int e = 0; e < 2; ++e) {
        auto f = c;
        f[a] = c[a] - 1 + 2 * e;
        auto it = id.find(f);
        if (it == id.end()) throw std::logic_error("pv: face of a kept cell was dropped");
        k.set_face(cell, i, e, it->second.index);
      }
    }
  }
  return k;
}

}  // namespace dcomp
