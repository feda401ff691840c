#pragma once

#include <string>

#include "dcomp/components.hpp"

namespace dcomp {

/// Cells as nodes, one arrow per face map (cell -> face, labelled "i,eps").
std::string complex_to_dot(const PrecubicalSet& k);
/// Same graph with cells filled by component.
std::string system_to_dot(const PrecubicalSet& k, const ComponentSystem& s);

}  // namespace dcomp
