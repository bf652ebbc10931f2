#ifndef TIC_ASSIGNMENT_HPP_
#define TIC_ASSIGNMENT_HPP_

#include <vector>

#include "tic/core.hpp"

namespace tic {

/// Maximum-weight one-to-one matching of rows to columns (Hungarian method,
/// O(n^3) on the square-padded matrix). Entry r of the result is the column
/// matched to row r, or -1 if the row is left unmatched.
std::vector<int> max_weight_matching(const Matrix& weights);

}  // namespace tic

#endif  // TIC_ASSIGNMENT_HPP_
