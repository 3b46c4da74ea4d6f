#include "wls/slicing.hpp"

#include "wls/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wls {

ResponseVector ResponseVector::continuous(std::vector<double> y) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!std::isfinite(y[i])) {
      throw Error(ErrorKind::InvalidInput,
                  "response entry " + std::to_string(i) + " is not finite");
    }
  }
  ResponseVector r;
  r.kind = ResponseKind::Continuous;
  r.values = std::move(y);
  return r;
}

ResponseVector ResponseVector::discrete(const std::vector<std::string>& labels) {
  ResponseVector r;
  r.kind = ResponseKind::Discrete;
  r.levels = labels;
  std::sort(r.levels.begin(), r.levels.end());
  r.levels.erase(std::unique(r.levels.begin(), r.levels.end()), r.levels.end());
  if (r.levels.size() < 2) {
    throw Error(ErrorKind::DegenerateResponse,
                "discrete response needs at least 2 distinct labels");
  }
  r.values.reserve(labels.size());
  for (const auto& label : labels) {
    const auto it = std::lower_bound(r.levels.begin(), r.levels.end(), label);
    r.values.push_back(static_cast<double>(it - r.levels.begin()));
  }
  return r;
}

Index default_slice_count(Index n) {
  if (n >= 100) return 10;
  return std::max<Index>(2, n / 10);
}

namespace {

SlicingScheme slice_by_value(const std::vector<double>& y) {
  std::vector<double> distinct = y;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  SlicingScheme s;
  s.h = static_cast<Index>(distinct.size());
  s.counts.assign(distinct.size(), 0);
  s.assignment.reserve(y.size());
  for (double v : y) {
    const auto slot = static_cast<Index>(
        std::lower_bound(distinct.begin(), distinct.end(), v) - distinct.begin());
    s.assignment.push_back(slot);
    ++s.counts[static_cast<std::size_t>(slot)];
  }
  return s;
}

}  // namespace

SlicingScheme make_slices(const ResponseVector& y, Index h) {
  const auto n = static_cast<Index>(y.values.size());
  if (n < 2) {
    throw Error(ErrorKind::TooFewSamples, "response needs at least 2 samples");
  }

  if (y.kind == ResponseKind::Discrete) {
    SlicingScheme s = slice_by_value(y.values);
    if (s.h < 2) {
      throw Error(ErrorKind::DegenerateResponse,
                  "discrete response has a single label");
    }
    return s;
  }

  if (h < 2) {
    throw Error(ErrorKind::InvalidSliceCount,
                "slice count must be at least 2, got " + std::to_string(h));
  }
  for (double v : y.values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::InvalidInput, "response contains non-finite values");
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return y.values[static_cast<std::size_t>(a)] <
           y.values[static_cast<std::size_t>(b)];
  });

  Index distinct = 1;
  for (Index i = 1; i < n; ++i) {
    if (y.values[static_cast<std::size_t>(order[i])] !=
        y.values[static_cast<std::size_t>(order[i - 1])]) {
      ++distinct;
    }
  }
  if (distinct < 2) {
    throw Error(ErrorKind::DegenerateResponse, "response is constant");
  }

  SlicingScheme s;
  if (distinct < h) {
    s = slice_by_value(y.values);
  } else {
    // Position i of the sorted order goes to slice floor(i * h / n); a tie
    // with the previous sample keeps the previous sample's slice.
    std::vector<Index> raw(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
      Index slot = (i * h) / n;
      if (i > 0 && y.values[static_cast<std::size_t>(order[i])] ==
                       y.values[static_cast<std::size_t>(order[i - 1])]) {
        slot = raw[static_cast<std::size_t>(i - 1)];
      }
      raw[static_cast<std::size_t>(i)] = slot;
    }

    // Ties can empty a slice; renumber the survivors consecutively.
    std::vector<Index> remap(static_cast<std::size_t>(h), -1);
    Index next = 0;
    for (Index slot : raw) {
      auto& target = remap[static_cast<std::size_t>(slot)];
      if (target < 0) target = next++;
    }
    s.h = next;
    s.counts.assign(static_cast<std::size_t>(next), 0);
    s.assignment.assign(static_cast<std::size_t>(n), 0);
    s.boundaries.assign(static_cast<std::size_t>(next - 1), 0.0);
    for (Index i = 0; i < n; ++i) {
      const Index slot = remap[static_cast<std::size_t>(raw[static_cast<std::size_t>(i)])];
      const auto sample = static_cast<std::size_t>(order[i]);
      s.assignment[sample] = slot;
      ++s.counts[static_cast<std::size_t>(slot)];
      if (slot < next - 1) s.boundaries[static_cast<std::size_t>(slot)] = y.values[sample];
    }
  }

  if (n < 10 * s.h) {
    s.warnings.push_back("only " + std::to_string(n) + " samples for " +
                         std::to_string(s.h) +
                         " slices; at least 10 per slice is recommended");
  }
  return s;
}

}  // namespace wls
