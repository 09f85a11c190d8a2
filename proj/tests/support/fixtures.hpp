#pragma once

#include <vector>

#include "reclab/rating_matrix.hpp"

namespace fixtures {

/// The 5 x 10 example matrix with 19 ratings (users u1..u5, items i1..i10).
inline reclab::RatingMatrix example_matrix() {
  const std::vector<reclab::RatingTuple> t{
      {"u1", "i2", 2}, {"u1", "i3", 3}, {"u1", "i4", 5}, {"u1", "i6", 5}, {"u1", "i8", 4},
      {"u2", "i1", 2}, {"u2", "i9", 2}, {"u2", "i10", 3},
      {"u3", "i1", 2}, {"u3", "i6", 1},
      {"u4", "i1", 2}, {"u4", "i2", 2}, {"u4", "i3", 1}, {"u4", "i6", 5}, {"u4", "i8", 0}, {"u4", "i9", 2},
      {"u5", "i1", 5}, {"u5", "i8", 5}, {"u5", "i10", 4},
  };
  return reclab::RatingMatrix::from_tuples(t, reclab::LabelSet::numbered("u", 5),
                                           reclab::LabelSet::numbered("i", 10));
}

}  // namespace fixtures
