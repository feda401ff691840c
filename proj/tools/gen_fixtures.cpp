// Writes the named example complexes and their expected coarsest systems.
#include <iostream>
#include <string>

#include "dcomp/fixtures.hpp"
#include "dcomp/json_io.hpp"

using namespace dcomp;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_fixtures <output-dir>\n";
    return 2;
  }
  const std::string dir = argv[1];
  for (const auto& fx : {ex_x1(), ex_x2(), ex_x3()}) {
    write_text_file(dir + "/" + fx.name + ".json", complex_to_json(fx.complex).dump(2) + "\n");
    nlohmann::json expected{{"future", system_to_json(fx.system(Flavor::Future, {"A", "BCD"}))},
                            {"past", system_to_json(fx.system(Flavor::Past, {"ABC", "D"}))},
                            {"total", system_to_json(fx.system(Flavor::Total, {"A", "B", "C", "D"}))}};
    write_text_file(dir + "/" + fx.name + ".coarsest.json", expected.dump(2) + "\n");
  }
  write_text_file(dir + "/boundary_cube3.json", complex_to_json(boundary_cube(3)).dump(2) + "\n");
  return 0;
}
