// Precomputed membership of tuples in set-sequence products, for evaluating
// many rankings against the same shape.

#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "prefhist/ranked_operator.h"

namespace prefhist::detail {

class ProductIndex {
 public:
  explicit ProductIndex(const OperatorShape& shape) : shape_(shape) {
    const int n = shape.dimension();
    const int m = shape.universe().size();
    row_begin_.reserve(shape.sequence_count() + 1);
    for (std::size_t s = 0; s < shape.sequence_count(); ++s) {
      row_begin_.push_back(static_cast<std::uint32_t>(tuples_.size()));
      const auto seq = shape.sequence_at(s);
      std::vector<int> t(n, 0);
      while (true) {
        bool inside = true;
        for (int i = 0; i < n && inside; ++i) inside = seq[i].contains(t[i]);
        if (inside) {
          tuples_.push_back(static_cast<std::uint32_t>(shape.tuple_index(t)));
          last_.push_back(ModelSet::singleton(n > 0 ? t[n - 1] : 0));
        }
        int i = n - 1;
        while (i >= 0 && t[i] == m - 1) t[i--] = 0;
        if (i < 0) break;
        ++t[i];
      }
    }
    row_begin_.push_back(static_cast<std::uint32_t>(tuples_.size()));
  }

  const OperatorShape& shape() const { return shape_; }

  // Writes the induced entry of every row into out.
  template <typename RankT>
  void induced(std::span<const RankT> ranks, std::span<ModelSet> out) const {
    for (std::size_t s = 0; s + 1 < row_begin_.size(); ++s) out[s] = induced_row(ranks, s);
  }

  template <typename RankT>
  ModelSet induced_row(std::span<const RankT> ranks, std::size_t s) const {
    RankT best = std::numeric_limits<RankT>::max();
    ModelSet sel;
    for (std::uint32_t k = row_begin_[s]; k < row_begin_[s + 1]; ++k) {
      const RankT r = ranks[tuples_[k]];
      if (r < best) {
        best = r;
        sel = last_[k];
      } else if (r == best) {
        sel |= last_[k];
      }
    }
    return sel;
  }

 private:
  OperatorShape shape_;
  std::vector<std::uint32_t> row_begin_;
  std::vector<std::uint32_t> tuples_;
  std::vector<ModelSet> last_;
};

}  // namespace prefhist::detail
