#pragma once

#include "wls/matrix_spectrum.hpp"

#include <string>
#include <vector>

namespace wls {

enum class ResponseKind { Continuous, Discrete };

/// Response y. Discrete responses keep their sorted distinct labels in
/// `levels`; `values` then holds each sample's level index.
struct ResponseVector {
  ResponseKind kind = ResponseKind::Continuous;
  std::vector<double> values;
  std::vector<std::string> levels;

  Index n() const noexcept { return static_cast<Index>(values.size()); }

  static ResponseVector continuous(std::vector<double> y);
  static ResponseVector discrete(const std::vector<std::string>& labels);
};

/// Partition of the samples into slices. Slice ids are 0-based.
struct SlicingScheme {
  Index h = 0;
  std::vector<Index> assignment;
  std::vector<Index> counts;
  // Continuous responses: the largest response value of every slice but the
  // last. Empty for label slicing.
  std::vector<double> boundaries;
  std::vector<std::string> warnings;
};

/// 10 slices once n >= 100, otherwise floor(n / 10) with a floor of 2.
Index default_slice_count(Index n);

/// Equal-count slicing on the ranks of a continuous response, or one slice
/// per label for a discrete one.
///
/// Tied responses always share a slice (the lower one). A continuous response
/// with fewer than h distinct values is sliced by value instead. Fewer than
/// 10 samples per slice only produces a warning.
SlicingScheme make_slices(const ResponseVector& y, Index h);

}  // namespace wls
