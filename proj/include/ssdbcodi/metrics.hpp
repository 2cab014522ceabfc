#ifndef SSDBCODI_METRICS_HPP
#define SSDBCODI_METRICS_HPP

#include <span>
#include <vector>

#include "ssdbcodi/types.hpp"

namespace ssdbcodi {

/// Probability that a random positive outscores a random negative; ties
/// count one half. Throws unless both classes are present.
double auc(std::span<const double> scores, const std::vector<bool>& positive);

/// Fraction of point pairs on which the two partitions agree. Sentinel ids
/// (kOutlier, kNoise) are treated as ordinary cluster ids.
double rand_index(std::span<const ClassId> predicted, std::span<const ClassId> truth);

/// 2 I(Y;C) / (H(Y) + H(C)) with natural logs; 1 when both partitions are constant.
double nmi(std::span<const ClassId> predicted, std::span<const ClassId> truth);

}  // namespace ssdbcodi

#endif  // SSDBCODI_METRICS_HPP
