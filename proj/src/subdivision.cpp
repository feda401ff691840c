#include "dcomp/subdivision.hpp"

namespace dcomp {

std::string to_string(const std::vector<Sub>& word) {
  static const char* letters = "hlu01";
  std::string out;
  for (auto x : word) out += letters[static_cast<int>(x)];
  return out;
}

namespace {

std::size_t code_of(const std::vector<Sub>& s) {
  std::size_t c = 0;
  for (auto x : s) c = c * 3 + static_cast<std::size_t>(x);
  return c;
}

std::vector<Sub> word_of(std::size_t code, unsigned n) {
  std::vector<Sub> s(n);
  for (unsigned p = n; p-- > 0;) {
    s[p] = static_cast<Sub>(code % 3);
    code /= 3;
  }
  return s;
}

std::size_t pow3(unsigned n) {
  std::size_t r = 1;
  while (n--) r *= 3;
  return r;
}

}  // namespace

CellId Subdivision::subcell(std::size_t parent_flat, const std::vector<Sub>& s) const {
  return cells[table_at[parent_flat] + code_of(s)];
}

CellId Subdivision::lift(const PrecubicalSet& k, CellId c, std::vector<Sub> word) const {
  for (unsigned p = static_cast<unsigned>(word.size()); p >= 1; --p) {
    Sub x = word[p - 1];
    if (x == Sub::Zero || x == Sub::One) {
      c = k.face(c, p, x == Sub::One ? 1 : 0);
      word.erase(word.begin() + (p - 1));
    }
  }
  return subcell(k.flat(c), word);
}

Subdivision subdivide(const PrecubicalSet& k) {
  Subdivision out;
  const std::size_t n = k.num_cells();
  std::vector<std::uint32_t> counts(k.num_dims(), 0);
  out.table_at.resize(n);
  std::size_t total = 0;
  for (std::size_t f = 0; f < n; ++f) {
    out.table_at[f] = total;
    total += pow3(k.cell(f).dim);
  }
  out.cells.resize(total);
  for (std::size_t f = 0; f < n; ++f) {
    unsigned d = k.cell(f).dim;
    for (std::size_t code = 0; code < pow3(d); ++code) {
      auto s = word_of(code, d);
      std::uint32_t sd = 0;
      for (auto x : s) sd += (x != Sub::H);
      out.cells[out.table_at[f] + code] = {sd, counts[sd]++};
    }
  }
  out.complex = PrecubicalSet(counts);
  out.parent.resize(out.complex.num_cells());
  out.center.resize(n);
  for (std::size_t f = 0; f < n; ++f) {
    CellId c = k.cell(f);
    std::string base = k.has_labels() ? k.label(c) : to_string(c);
    for (std::size_t code = 0; code < pow3(c.dim); ++code) {
      auto s = word_of(code, c.dim);
      CellId sc = out.cells[out.table_at[f] + code];
      out.parent[out.complex.flat(sc)] = f;
      if (sc.dim == 0) out.center[f] = sc;
      out.complex.set_label(sc, c.dim == 0 ? base : base + "/" + to_string(s));
      unsigned i = 0;
      for (unsigned j = 1; j <= c.dim; ++j) {
        Sub x = s[j - 1];
        if (x == Sub::H) continue;
        ++i;
        for (int e = 0; e < 2; ++e) {
          CellId target;
          bool outer = (x == Sub::L && e == 0) || (x == Sub::U && e == 1);
          if (outer) {
            auto rest = s;
            rest.erase(rest.begin() + (j - 1));
            target = out.subcell(k.flat(k.face(c, j, e)), rest);
          } else {
            auto mid = s;
            mid[j - 1] = Sub::H;
            target = out.cells[out.table_at[f] + code_of(mid)];
          }
          out.complex.set_face(sc, i, e, target.index);
        }
      }
    }
  }
  return out;
}

}  // namespace dcomp
