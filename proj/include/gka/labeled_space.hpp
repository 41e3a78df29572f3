#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gka/errors.hpp"

namespace gka {

/// A finite-dimensional space whose basis vectors are tagged by orthogonal
/// idempotents e_0..e_{k-1} of a split A_0 = K^k: basis vector b satisfies
/// b = e_left b e_right. Module components only carry right tags.
struct LabeledSpace {
  int idempotents = 1;
  std::vector<int> left_tags;
  std::vector<int> right_tags;

  std::size_t dim() const { return right_tags.size(); }
  bool has_left_tags() const { return !left_tags.empty(); }

  static LabeledSpace uniform(std::size_t dim, int idempotents = 1, bool with_left = true) {
    LabeledSpace s;
    s.idempotents = idempotents;
    s.right_tags.assign(dim, 0);
    if (with_left) s.left_tags.assign(dim, 0);
    return s;
  }

  /// Basis indices carrying right tag t.
  std::vector<std::size_t> right_block(int t) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < right_tags.size(); ++i)
      if (right_tags[i] == t) out.push_back(i);
    return out;
  }

  friend bool operator==(const LabeledSpace&, const LabeledSpace&) = default;
};

/// Basis of the matched tensor X ⊗_{A_0} Y: pairs (i, j) with
/// right_tag(x_i) == left_tag(y_j), ordered lexicographically.
class TensorBasis {
 public:
  TensorBasis() = default;
  TensorBasis(const LabeledSpace& x, const LabeledSpace& y) : nx_(x.dim()), ny_(y.dim()) {
    if (x.idempotents != y.idempotents)
      throw LabelError("matched tensor over different idempotent sets (" + std::to_string(x.idempotents) +
                       " vs " + std::to_string(y.idempotents) + ")");
    if (!y.has_left_tags() && y.dim() > 0) throw LabelError("right factor of a matched tensor needs left tags");
    index_.assign(nx_ * ny_, npos);
    for (std::size_t i = 0; i < nx_; ++i)
      for (std::size_t j = 0; j < ny_; ++j)
        if (x.right_tags[i] == y.left_tags[j]) {
          index_[i * ny_ + j] = pairs_.size();
          pairs_.emplace_back(i, j);
        }
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t size() const { return pairs_.size(); }
  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }
  /// Column of pair (i, j), or npos when the tags do not match.
  std::size_t index(std::size_t i, std::size_t j) const { return index_[i * ny_ + j]; }

 private:
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  std::vector<std::size_t> index_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

/// The labeled space X ⊗_{A_0} Y; left tags come from X (when present),
/// right tags from Y.
inline LabeledSpace matched_tensor(const LabeledSpace& x, const LabeledSpace& y) {
  const TensorBasis tb(x, y);
  LabeledSpace out;
  out.idempotents = x.idempotents;
  for (const auto& [i, j] : tb.pairs()) {
    if (x.has_left_tags()) out.left_tags.push_back(x.left_tags[i]);
    out.right_tags.push_back(y.right_tags[j]);
  }
  return out;
}

}  // namespace gka
