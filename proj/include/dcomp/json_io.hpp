#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dcomp/precubical.hpp"

namespace dcomp {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"cells": [n0, n1, ...], "faces": [[dim, idx, i, eps, target], ...],
///  "labels": [[...dim 0...], [...dim 1...], ...]}  (labels optional)
nlohmann::json complex_to_json(const PrecubicalSet& k);
PrecubicalSet complex_from_json(const nlohmann::json& j);

CellId cell_from_json(const nlohmann::json& j, const PrecubicalSet& k);
nlohmann::json cell_to_json(CellId c);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace dcomp
