#include "dcomp/precubical.hpp"

#include <algorithm>
#include <sstream>

namespace dcomp {

std::string to_string(CellId c) {
  return "[" + std::to_string(c.dim) + "," + std::to_string(c.index) + "]";
}

PrecubicalSet::PrecubicalSet(std::vector<std::uint32_t> counts) : counts_(std::move(counts)) {
  if (counts_.size() > kMaxCubeDim + 1)
    throw PrecubicalError("dimension " + std::to_string(counts_.size() - 1) + " exceeds cap " +
                          std::to_string(kMaxCubeDim));
  offsets_.assign(counts_.size() + 1, 0);
  faces_.resize(counts_.size());
  for (std::size_t d = 0; d < counts_.size(); ++d) {
    offsets_[d + 1] = offsets_[d] + counts_[d];
    faces_[d].assign(static_cast<std::size_t>(counts_[d]) * d * 2, kNoFace);
  }
}

CellId PrecubicalSet::cell(std::size_t flat) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), flat);
  auto d = static_cast<std::uint32_t>(it - offsets_.begin() - 1);
  return {d, static_cast<std::uint32_t>(flat - offsets_[d])};
}

CellId PrecubicalSet::face(CellId c, unsigned i, int eps) const {
  if (!contains(c) || i < 1 || i > c.dim)
    throw PrecubicalError("no face " + std::to_string(i) + " of cell " + to_string(c));
  std::uint32_t t = raw_face(c, i, eps);
  if (t == kNoFace || t >= count(c.dim - 1))
    throw PrecubicalError("face (" + std::to_string(i) + "," + std::to_string(eps) + ") of " + to_string(c) +
                          " is unset or out of range");
  return {c.dim - 1, t};
}

void PrecubicalSet::set_face(CellId c, unsigned i, int eps, std::uint32_t target) {
  if (!contains(c) || i < 1 || i > c.dim || (eps != 0 && eps != 1))
    throw PrecubicalError("bad face slot on " + to_string(c));
  faces_[c.dim][(static_cast<std::size_t>(c.index) * c.dim + (i - 1)) * 2 + eps] = target;
}

CellId PrecubicalSet::face_multi(CellId c, std::uint32_t mask, int eps) const {
  for (unsigned j = c.dim; j >= 1; --j)
    if (mask & (1U << (j - 1))) c = face(c, j, eps);
  return c;
}

const std::string& PrecubicalSet::label(CellId c) const {
  static const std::string empty;
  if (labels_.empty()) return empty;
  return labels_[c.dim][c.index];
}

void PrecubicalSet::set_label(CellId c, std::string text) {
  if (labels_.empty()) {
    labels_.resize(counts_.size());
    for (std::size_t d = 0; d < counts_.size(); ++d) labels_[d].resize(counts_[d]);
  }
  labels_[c.dim][c.index] = std::move(text);
}

std::optional<CellId> PrecubicalSet::find_label(const std::string& text) const {
  for (std::uint32_t d = 0; d < labels_.size(); ++d)
    for (std::uint32_t i = 0; i < labels_[d].size(); ++i)
      if (labels_[d][i] == text) return CellId{d, i};
  return std::nullopt;
}

std::string Violation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::MissingFace:
      os << "missing face (" << i << "," << eps << ") of " << to_string(cell);
      break;
    case Kind::OutOfRange:
      os << "face (" << i << "," << eps << ") of " << to_string(cell) << " out of range";
      break;
    case Kind::Relation:
      os << "relation fails at " << to_string(cell) << " i=" << i << " j=" << j << " eps=" << eps
         << " eta=" << eta;
      break;
  }
  return os.str();
}

std::vector<Violation> validate(const PrecubicalSet& k) {
  std::vector<Violation> out;
  for (std::uint32_t d = 1; d < k.num_dims(); ++d) {
    for (std::uint32_t x = 0; x < k.count(d); ++x) {
      CellId c{d, x};
      bool faces_ok = true;
      for (unsigned i = 1; i <= d; ++i)
        for (int e = 0; e < 2; ++e) {
          std::uint32_t t = k.raw_face(c, i, e);
          if (t == kNoFace) {
            out.push_back({Violation::Kind::MissingFace, c, i, 0, e, 0});
            faces_ok = false;
          } else if (t >= k.count(d - 1)) {
            out.push_back({Violation::Kind::OutOfRange, c, i, 0, e, 0});
            faces_ok = false;
          }
        }
      if (!faces_ok || d < 2) continue;
      for (unsigned i = 1; i <= d; ++i)
        for (unsigned j = i + 1; j <= d; ++j)
          for (int e = 0; e < 2; ++e)
            for (int h = 0; h < 2; ++h) {
              CellId fj{d - 1, k.raw_face(c, j, h)};
              CellId fi{d - 1, k.raw_face(c, i, e)};
              std::uint32_t lhs = k.raw_face(fj, i, e);
              std::uint32_t rhs = k.raw_face(fi, j - 1, h);
              // Broken lower-dimensional faces are reported on their own cells.
              if (lhs == kNoFace || rhs == kNoFace) continue;
              if (lhs != rhs) out.push_back({Violation::Kind::Relation, c, i, j, e, h});
            }
    }
  }
  return out;
}

bool has_loops(const PrecubicalSet& k) {
  std::uint32_t nv = k.count(0);
  std::vector<std::vector<std::uint32_t>> succ(nv);
  std::vector<std::uint32_t> indeg(nv, 0);
  for (std::uint32_t e = 0; e < k.count(1); ++e) {
    auto s = k.face({1, e}, 1, 0).index, t = k.face({1, e}, 1, 1).index;
    succ[s].push_back(t);
    ++indeg[t];
  }
  std::vector<std::uint32_t> stack;
  for (std::uint32_t v = 0; v < nv; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  std::uint32_t seen = 0;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    ++seen;
    for (auto t : succ[v])
      if (--indeg[t] == 0) stack.push_back(t);
  }
  return seen != nv;
}

namespace {

// Words over {0,1,2} with 2 standing for *, read as base-3 numbers.
std::vector<std::vector<std::uint8_t>> cube_words(unsigned n) {
  std::vector<std::vector<std::uint8_t>> words;
  std::vector<std::uint8_t> w(n, 0);
  while (true) {
    words.push_back(w);
    unsigned p = n;
    while (p > 0) {
      if (w[p - 1] < 2) {
        ++w[p - 1];
        break;
      }
      w[p - 1] = 0;
      --p;
    }
    if (p == 0) break;
  }
  return words;
}

}  // namespace

PrecubicalSet standard_cube(unsigned n) {
  if (n > kMaxCubeDim) throw PrecubicalError("standard_cube: n exceeds cap " + std::to_string(kMaxCubeDim));
  auto words = cube_words(n);
  auto dim_of = [](const std::vector<std::uint8_t>& w) {
    return static_cast<std::uint32_t>(std::count(w.begin(), w.end(), std::uint8_t{2}));
  };
  std::vector<std::uint32_t> counts(n + 1, 0);
  std::vector<std::uint32_t> index(words.size());
  for (std::size_t w = 0; w < words.size(); ++w) index[w] = counts[dim_of(words[w])]++;
  PrecubicalSet k(counts);
  auto code = [](const std::vector<std::uint8_t>& w) {
    std::size_t c = 0;
    for (auto x : w) c = c * 3 + x;
    return c;
  };
  for (std::size_t w = 0; w < words.size(); ++w) {
    const auto& word = words[w];
    std::uint32_t d = dim_of(word);
    std::string text;
    for (auto x : word) text += (x == 2 ? '*' : static_cast<char>('0' + x));
    k.set_label({d, index[w]}, text);
    unsigned i = 0;
    for (unsigned p = 0; p < n; ++p) {
      if (word[p] != 2) continue;
      ++i;
      for (int e = 0; e < 2; ++e) {
        auto f = word;
        f[p] = static_cast<std::uint8_t>(e);
        k.set_face({d, index[w]}, i, e, index[code(f)]);
      }
    }
  }
  return k;
}

PrecubicalSet boundary_cube(unsigned n) {
  if (n == 0) throw PrecubicalError("boundary_cube: n must be >= 1");
  PrecubicalSet full = standard_cube(n);
  std::vector<std::uint32_t> counts(full.counts().begin(), full.counts().end() - 1);
  PrecubicalSet k(counts);
  for (std::uint32_t d = 0; d < counts.size(); ++d)
    for (std::uint32_t x = 0; x < counts[d]; ++x) {
      k.set_label({d, x}, full.label({d, x}));
      for (unsigned i = 1; i <= d; ++i)
        for (int e = 0; e < 2; ++e) k.set_face({d, x}, i, e, full.raw_face({d, x}, i, e));
    }
  return k;
}

CellId initial_vertex(const PrecubicalSet& k, CellId c) {
  while (c.dim > 0) c = k.face(c, 1, 0);
  return c;
}

CellId final_vertex(const PrecubicalSet& k, CellId c) {
  while (c.dim > 0) c = k.face(c, 1, 1);
  return c;
}

namespace {

std::vector<CellId> same_sign_faces(const PrecubicalSet& k, CellId c, int eps) {
  std::vector<CellId> out;
  for (std::uint32_t mask = 0; mask < (1U << c.dim); ++mask) out.push_back(k.face_multi(c, mask, eps));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<CellId> lower_faces(const PrecubicalSet& k, CellId c) { return same_sign_faces(k, c, 0); }
std::vector<CellId> upper_faces(const PrecubicalSet& k, CellId c) { return same_sign_faces(k, c, 1); }

PrecubicalSet opposite(const PrecubicalSet& k) {
  PrecubicalSet op(k.counts());
  for (std::uint32_t d = 0; d < k.num_dims(); ++d)
    for (std::uint32_t x = 0; x < k.count(d); ++x) {
      if (k.has_labels()) op.set_label({d, x}, k.label({d, x}));
      for (unsigned i = 1; i <= d; ++i)
        for (int e = 0; e < 2; ++e) op.set_face({d, x}, i, 1 - e, k.raw_face({d, x}, i, e));
    }
  return op;
}

}  // namespace dcomp
