// Diarization error rate and clustering accuracy.
//
// DER = (false alarm + missed + confusion time) / total reference time,
// with reference and hypothesis speakers paired by the one-to-one mapping
// that maximises jointly attributed time. No collar is applied.

#ifndef TIC_SCORING_HPP_
#define TIC_SCORING_HPP_

#include <map>
#include <string>
#include <vector>

#include "tic/core.hpp"

namespace tic {

struct DerBreakdown {
  double alpha_total = 0.0;
  double alpha_fa = 0.0;
  double alpha_miss = 0.0;
  double alpha_err = 0.0;
  double der = 0.0;
  /// Reference label -> hypothesis label under the optimal mapping.
  std::map<std::string, std::string> mapping;
};

DerBreakdown score_der(const Timeline& reference, const Timeline& hypothesis);

/// Frame labels for a windowed path: row t labels frame t and the last w-1
/// frames take the final row's label. Result length is path.size() + w - 1.
std::vector<int> expand_window_labels(const AssignmentPath& path, int w);

/// Merge time-contiguous rows that share a label into segments.
Timeline labels_to_timeline(const std::vector<std::string>& labels,
                            const std::vector<TimeSpan>& times,
                            const std::string& file_id = "session");

/// Cluster indices are rendered as decimal labels ("0", "1", ...). With
/// w > 1, `times` holds the per-frame extents (path.size() + w - 1 rows).
Timeline labels_to_timeline(const AssignmentPath& path, const std::vector<TimeSpan>& times,
                            int w = 1, const std::string& file_id = "session");

/// Label of the segment covering each row's midpoint; empty if none.
std::vector<std::string> timeline_to_labels(const Timeline& timeline,
                                            const std::vector<TimeSpan>& times);

/// Fraction of positions that agree under the best one-to-one relabelling.
double clustering_accuracy(const std::vector<int>& truth, const std::vector<int>& predicted);

}  // namespace tic

#endif  // TIC_SCORING_HPP_
