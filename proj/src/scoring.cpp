#include "tic/scoring.hpp"

#include <algorithm>
#include <string>

#include "tic/assignment.hpp"

namespace tic {
namespace {

std::vector<std::string> label_set(const Timeline& tl) {
  std::vector<std::string> out;
  for (const auto& s : tl.segments()) out.push_back(s.label);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int index_of(const std::vector<std::string>& sorted, const std::string& s) {
  return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), s) - sorted.begin());
}

// Which labels are active in [a, b), as a membership mask.
std::vector<bool> active(const Timeline& tl, const std::vector<std::string>& labels, double a,
                         double b) {
  std::vector<bool> on(labels.size(), false);
  for (const auto& s : tl.segments()) {
    if (s.start >= b) break;
    if (s.start <= a && s.end >= b) on[static_cast<std::size_t>(index_of(labels, s.label))] = true;
  }
  return on;
}

}  // namespace

DerBreakdown score_der(const Timeline& reference, const Timeline& hypothesis) {
  if (reference.empty()) throw DataError("reference timeline is empty");
  if (!hypothesis.empty() && reference.file_id() != hypothesis.file_id()) {
    throw DataError("file id mismatch: reference '" + reference.file_id() + "', hypothesis '" +
                    hypothesis.file_id() + "'");
  }
  const auto ref_labels = label_set(reference);
  const auto hyp_labels = label_set(hypothesis);

  std::vector<double> bounds;
  for (const auto* tl : {&reference, &hypothesis}) {
    for (const auto& s : tl->segments()) {
      bounds.push_back(s.start);
      bounds.push_back(s.end);
    }
  }
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

  struct Piece {
    double dur;
    std::vector<bool> ref, hyp;
  };
  std::vector<Piece> pieces;
  Matrix overlap = Matrix::Zero(static_cast<Eigen::Index>(ref_labels.size()),
                                static_cast<Eigen::Index>(hyp_labels.size()));
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    const double a = bounds[i], b = bounds[i + 1];
    Piece p{b - a, active(reference, ref_labels, a, b), active(hypothesis, hyp_labels, a, b)};
    for (std::size_t r = 0; r < ref_labels.size(); ++r) {
      if (!p.ref[r]) continue;
      for (std::size_t h = 0; h < hyp_labels.size(); ++h) {
        if (p.hyp[h]) overlap(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(h)) += p.dur;
      }
    }
    pieces.push_back(std::move(p));
  }

  const auto match = max_weight_matching(overlap);
  DerBreakdown out;
  for (std::size_t r = 0; r < match.size(); ++r) {
    if (match[r] >= 0) out.mapping[ref_labels[r]] = hyp_labels[static_cast<std::size_t>(match[r])];
  }
  for (const auto& p : pieces) {
    const auto n_ref = static_cast<double>(std::count(p.ref.begin(), p.ref.end(), true));
    const auto n_hyp = static_cast<double>(std::count(p.hyp.begin(), p.hyp.end(), true));
    double n_correct = 0.0;
    for (std::size_t r = 0; r < match.size(); ++r) {
      if (p.ref[r] && match[r] >= 0 && p.hyp[static_cast<std::size_t>(match[r])]) n_correct += 1.0;
    }
    out.alpha_total += n_ref * p.dur;
    out.alpha_miss += std::max(0.0, n_ref - n_hyp) * p.dur;
    out.alpha_fa += std::max(0.0, n_hyp - n_ref) * p.dur;
    out.alpha_err += (std::min(n_ref, n_hyp) - n_correct) * p.dur;
  }
  if (!(out.alpha_total > 0.0)) throw DataError("reference has no scored time");
  out.der = (out.alpha_fa + out.alpha_miss + out.alpha_err) / out.alpha_total;
  return out;
}

std::vector<int> expand_window_labels(const AssignmentPath& path, int w) {
  if (w < 1) throw std::invalid_argument("window must be >= 1");
  std::vector<int> out = path.labels();
  if (!out.empty()) out.insert(out.end(), static_cast<std::size_t>(w - 1), out.back());
  return out;
}

Timeline labels_to_timeline(const std::vector<std::string>& labels,
                            const std::vector<TimeSpan>& times, const std::string& file_id) {
  if (labels.size() != times.size()) {
    throw std::invalid_argument("labels_to_timeline: " + std::to_string(labels.size()) +
                                " labels for " + std::to_string(times.size()) + " time rows");
  }
  std::vector<Segment> segs;
  for (std::size_t t = 0; t < labels.size(); ++t) {
    if (labels[t].empty()) continue;
    if (!segs.empty() && segs.back().label == labels[t] && segs.back().end == times[t].start) {
      segs.back().end = times[t].end;
    } else {
      segs.push_back({times[t].start, times[t].end, labels[t]});
    }
  }
  return Timeline(std::move(segs), file_id);
}

Timeline labels_to_timeline(const AssignmentPath& path, const std::vector<TimeSpan>& times, int w,
                            const std::string& file_id) {
  const auto frames = expand_window_labels(path, w);
  if (frames.size() != times.size()) {
    throw std::invalid_argument("labels_to_timeline: path of " + std::to_string(path.size()) +
                                " rows with window " + std::to_string(w) + " covers " +
                                std::to_string(frames.size()) + " frames, times has " +
                                std::to_string(times.size()));
  }
  std::vector<std::string> labels(frames.size());
  std::transform(frames.begin(), frames.end(), labels.begin(),
                 [](int l) { return std::to_string(l); });
  return labels_to_timeline(labels, times, file_id);
}

std::vector<std::string> timeline_to_labels(const Timeline& timeline,
                                            const std::vector<TimeSpan>& times) {
  std::vector<std::string> out(times.size());
  for (std::size_t t = 0; t < times.size(); ++t) {
    const double mid = 0.5 * (times[t].start + times[t].end);
    for (const auto& s : timeline.segments()) {
      if (s.start > mid) break;
      if (mid < s.end) {
        out[t] = s.label;
        break;
      }
    }
  }
  return out;
}

double clustering_accuracy(const std::vector<int>& truth, const std::vector<int>& predicted) {
  if (truth.size() != predicted.size()) {
    throw std::invalid_argument("clustering_accuracy: lengths " + std::to_string(truth.size()) +
                                " and " + std::to_string(predicted.size()) + " differ");
  }
  if (truth.empty()) throw std::invalid_argument("clustering_accuracy: empty labels");
  auto dense = [](const std::vector<int>& v) {
    std::vector<int> keys = v;
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<int> idx(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      idx[i] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), v[i]) - keys.begin());
    }
    return std::pair{idx, static_cast<int>(keys.size())};
  };
  const auto [ti, tn] = dense(truth);
  const auto [pi, pn] = dense(predicted);
  Matrix confusion = Matrix::Zero(tn, pn);
  for (std::size_t i = 0; i < ti.size(); ++i) confusion(ti[i], pi[i]) += 1.0;
  const auto match = max_weight_matching(confusion);
  double hits = 0.0;
  for (std::size_t r = 0; r < match.size(); ++r) {
    if (match[r] >= 0) hits += confusion(static_cast<Eigen::Index>(r), match[r]);
  }
  return hits / static_cast<double>(truth.size());
}

}  // namespace tic
