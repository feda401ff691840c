#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dcomp/precubical.hpp"

namespace dcomp {

class PvError : public std::runtime_error {
 public:
  PvError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct PvInstruction {
  bool acquire = true;    // P when true, V otherwise
  std::size_t resource = 0;
};

struct PvProgram {
  std::vector<std::pair<std::string, unsigned>> resources;  // name, capacity
  std::vector<std::vector<PvInstruction>> processes;
};

/// One declaration `sem <id> <capacity>` or one process per line. Process
/// tokens are `Pa`, `P(a)`, `Va` or `V(a)`; `#` starts a comment.
PvProgram parse_pv(const std::string& text);

/// Grid complex with one axis per process; instruction t of a process sits
/// at coordinate t+1 of an axis of length (instructions + 1). A unit taken
/// by P at s and released by V at s' is held on the open interval (s, s'),
/// or on (s, end] when never released. Cells where some resource is held
/// beyond its capacity are dropped.
PrecubicalSet compile_pv(const PvProgram& p);

}  // namespace dcomp
