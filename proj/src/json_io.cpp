#include "dcomp/json_io.hpp"

#include <fstream>
#include <sstream>

namespace dcomp {

using nlohmann::json;

json complex_to_json(const PrecubicalSet& k) {
  json j;
  j["cells"] = k.counts();
  json faces = json::array();
  for (std::uint32_t d = 1; d < k.num_dims(); ++d)
    for (std::uint32_t x = 0; x < k.count(d); ++x)
      for (unsigned i = 1; i <= d; ++i)
        for (int e = 0; e < 2; ++e) faces.push_back({d, x, i, e, k.raw_face({d, x}, i, e)});
  j["faces"] = std::move(faces);
  if (k.has_labels()) {
    json labels = json::array();
    for (std::uint32_t d = 0; d < k.num_dims(); ++d) {
      json row = json::array();
      for (std::uint32_t x = 0; x < k.count(d); ++x) row.push_back(k.label({d, x}));
      labels.push_back(std::move(row));
    }
    j["labels"] = std::move(labels);
  }
  return j;
}

namespace {

std::uint32_t as_index(const json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > UINT32_MAX - 1)
    throw FormatError(std::string("expected non-negative integer for ") + what);
  return static_cast<std::uint32_t>(v.get<long long>());
}

}  // namespace

PrecubicalSet complex_from_json(const json& j) {
  if (!j.is_object() || !j.contains("cells") || !j["cells"].is_array())
    throw FormatError("complex: missing \"cells\" array");
  std::vector<std::uint32_t> counts;
  for (const auto& c : j["cells"]) counts.push_back(as_index(c, "cell count"));
  PrecubicalSet k;
  try {
    k = PrecubicalSet(counts);
  } catch (const PrecubicalError& e) {
    throw FormatError(e.what());
  }
  const json faces = j.value("faces", json::array());
  if (!faces.is_array()) throw FormatError("complex: \"faces\" must be an array");
  for (const auto& f : faces) {
    if (!f.is_array() || f.size() != 5) throw FormatError("face entry must be [dim, idx, i, eps, target]");
    std::uint32_t d = as_index(f[0], "dim"), x = as_index(f[1], "idx"), i = as_index(f[2], "i"),
                  e = as_index(f[3], "eps"), t = as_index(f[4], "target");
    if (d == 0 || d >= counts.size() || x >= counts[d] || i < 1 || i > d || e > 1)
      throw FormatError("face entry out of range: " + f.dump());
    if (t >= counts[d - 1]) throw FormatError("face target out of range: " + f.dump());
    if (k.raw_face({d, x}, i, static_cast<int>(e)) != kNoFace) throw FormatError("duplicate face: " + f.dump());
    k.set_face({d, x}, i, static_cast<int>(e), t);
  }
  for (std::uint32_t d = 1; d < k.num_dims(); ++d)
    for (std::uint32_t x = 0; x < k.count(d); ++x)
      for (unsigned i = 1; i <= d; ++i)
        for (int e = 0; e < 2; ++e)
          if (k.raw_face({d, x}, i, e) == kNoFace)
            throw FormatError("missing face (" + std::to_string(i) + "," + std::to_string(e) + ") of " +
                              to_string(CellId{d, x}));
  if (j.contains("labels")) {
    const auto& labels = j["labels"];
    if (!labels.is_array() || labels.size() != counts.size()) throw FormatError("labels: one array per dimension");
    for (std::uint32_t d = 0; d < counts.size(); ++d) {
      if (!labels[d].is_array() || labels[d].size() != counts[d])
        throw FormatError("labels: wrong length in dimension " + std::to_string(d));
      for (std::uint32_t x = 0; x < counts[d]; ++x) {
        if (!labels[d][x].is_string()) throw FormatError("labels must be strings");
        k.set_label({d, x}, labels[d][x].get<std::string>());
      }
    }
  }
  return k;
}

CellId cell_from_json(const json& j, const PrecubicalSet& k) {
  if (!j.is_array() || j.size() != 2) throw FormatError("cell reference must be [dim, idx]");
  CellId c{as_index(j[0], "dim"), as_index(j[1], "idx")};
  if (!k.contains(c)) throw FormatError("cell reference out of range: " + j.dump());
  return c;
}

json cell_to_json(CellId c) { return json::array({c.dim, c.index}); }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

}  // namespace dcomp
