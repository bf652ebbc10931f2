#include "tic/assign.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace tic {

NllMatrix::NllMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) throw std::invalid_argument("empty NLL matrix");
  if (!values_.allFinite()) throw std::invalid_argument("NLL matrix has non-finite entries");
}

namespace {

void check_beta(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be finite and >= 0");
}

// True if `a` precedes `b` among equal-cost paths.
bool preferred(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t t_len = a.size();
  if (a[t_len - 1] != b[t_len - 1]) return a[t_len - 1] < b[t_len - 1];
  for (std::size_t t = t_len - 1; t-- > 0;) {
    if (a[t] == b[t]) continue;
    const int next = a[t + 1];
    const bool a_stays = a[t] == next, b_stays = b[t] == next;
    if (a_stays != b_stays) return a_stays;
    return a[t] < b[t];
  }
  return false;
}

}  // namespace

AssignmentPath assign_clusters(const NllMatrix& nll, double beta) {
  check_beta(beta);
  const std::size_t t_len = nll.rows();
  const int k = nll.clusters();

  std::vector<double> prev(static_cast<std::size_t>(k)), cur(static_cast<std::size_t>(k));
  std::vector<int> back(t_len * static_cast<std::size_t>(k), 0);
  for (int j = 0; j < k; ++j) prev[j] = nll(0, j);

  for (std::size_t t = 1; t < t_len; ++t) {
    // Lowest and second-lowest previous costs give the best switch source
    // for every target in O(K).
    int best = 0, second = -1;
    for (int i = 1; i < k; ++i) {
      if (prev[i] < prev[best]) {
        second = best;
        best = i;
      } else if (second < 0 || prev[i] < prev[second]) {
        second = i;
      }
    }
    for (int j = 0; j < k; ++j) {
      int from = j;
      double base = prev[j];
      const int src = (j == best) ? second : best;
      if (src >= 0) {
        const double switched = prev[src] + beta;
        if (switched < base) {
          base = switched;
          from = src;
        }
      }
      cur[j] = nll(t, j) + base;
      back[t * k + j] = from;
    }
    prev.swap(cur);
  }

  int last = 0;
  for (int j = 1; j < k; ++j) {
    if (prev[j] < prev[last]) last = j;
  }
  std::vector<int> labels(t_len);
  labels[t_len - 1] = last;
  for (std::size_t t = t_len - 1; t > 0; --t) labels[t - 1] = back[t * k + labels[t]];
  return AssignmentPath(std::move(labels), k);
}

AssignmentPath brute_force_assign(const NllMatrix& nll, double beta) {
  check_beta(beta);
  const std::size_t t_len = nll.rows();
  const int k = nll.clusters();
  double space = 1.0;
  for (std::size_t t = 0; t < t_len; ++t) space *= k;
  if (space > 1e6) {
    throw std::invalid_argument("exhaustive search over " + std::to_string(k) + "^" +
                                std::to_string(t_len) + " paths exceeds the 1e6 guard");
  }

  std::vector<int> cur(t_len, 0), best;
  double best_cost = 0.0;
  while (true) {
    const double c = path_cost(nll, beta, AssignmentPath(cur, k));
    if (best.empty() || c < best_cost || (c == best_cost && preferred(cur, best))) {
      best = cur;
      best_cost = c;
    }
    std::size_t pos = 0;
    while (pos < t_len && ++cur[pos] == k) cur[pos++] = 0;
    if (pos == t_len) break;
  }
  return AssignmentPath(std::move(best), k);
}

double path_cost(const NllMatrix& nll, double beta, const AssignmentPath& path) {
  if (path.size() != nll.rows()) {
    throw std::invalid_argument("path length " + std::to_string(path.size()) +
                                " does not match " + std::to_string(nll.rows()) + " NLL rows");
  }
  if (path.num_clusters() > nll.clusters())
    throw std::invalid_argument("path uses more clusters than the NLL matrix has");
  double acc = nll(0, path[0]);
  for (std::size_t t = 1; t < path.size(); ++t) {
    double base = acc;
    if (path[t] != path[t - 1]) base = acc + beta;
    acc = nll(t, path[t]) + base;
  }
  return acc;
}

}  // namespace tic
