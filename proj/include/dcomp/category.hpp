#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "dcomp/components.hpp"

namespace dcomp {

class CategoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Which side drives the inductive choice. Future flavor always uses
/// Future, past flavor Past; total systems accept either.
enum class RepStyle { Auto, Future, Past };

struct StabilizingPairRecord {
  std::size_t i = 0, j = 0;
  std::size_t first = 0, second = 0;  // flat cells of A_i and A_j
};

struct Representatives {
  Flavor flavor = Flavor::Future;
  RepStyle style = RepStyle::Future;
  std::vector<std::size_t> cells;      // flat cell per component
  std::vector<std::uint32_t> points;   // center of that cell in the subdivision
  std::vector<StabilizingPairRecord> pairs;  // total flavor only
};

/// Inductive choice along the component order. Without `rng` the least
/// admissible cell is taken; with it a uniformly random admissible one.
Representatives choose_representatives(const Analyzer& an, const ComponentSystem& s, RepStyle style = RepStyle::Auto,
                                       std::mt19937_64* rng = nullptr);

/// Category enriched in finite sets: homs are path classes between
/// representative points of the subdivision.
struct ComponentCategory {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> hom_size;        // [i][j]
  std::vector<std::vector<std::vector<EdgePath>>> reps;  // [i][j][x]
  std::vector<std::uint32_t> identity;                   // class index in hom(i,i)
  // comp[(i*n + j)*n + k][x * |hom(j,k)| + y] = class of x;y in hom(i,k).
  std::vector<std::vector<std::uint32_t>> comp;

  std::size_t size(std::size_t i, std::size_t j) const { return hom_size[i][j]; }
  std::uint32_t compose(std::size_t i, std::size_t j, std::size_t k, std::uint32_t x, std::uint32_t y) const {
    return comp[(i * n + j) * n + k][x * hom_size[j][k] + y];
  }
};

ComponentCategory build_category(const Analyzer& an, const Representatives& reps);

/// Exhaustive unit and associativity check, plus range checks on every table.
bool verify_category_laws(const ComponentCategory& c, unsigned threads = 1);

/// The same category with object i renamed to perm[i].
ComponentCategory permute_objects(const ComponentCategory& c, const std::vector<std::size_t>& perm);

/// Isomorphism fixing objects: bijections on every hom-set respecting
/// identities and composition.
bool isomorphic(const ComponentCategory& a, const ComponentCategory& b);

nlohmann::json category_to_json(const Analyzer& an, const ComponentSystem& s, const Representatives& reps,
                                const ComponentCategory& c);
std::string category_to_dot(const ComponentSystem& s, const ComponentCategory& c);

}  // namespace dcomp
