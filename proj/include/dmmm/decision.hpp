#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dmmm/model.hpp"

namespace dmmm {

// Weighted decision matrices. All arithmetic is exact 64-bit integer; an
// intermediate that would overflow raises ValidationError(Overflow).
//
//   cell(c, u)      = weight(c) * rating(u)
//   column_total(u) = sum_c cell(c, u)
//   score           = max_u column_total(u)

/// Throws ValidationError on empty criteria/columns or a weight/rating < 1.
DecisionMatrix build_matrix(std::vector<Criterion> criteria, std::vector<Column> columns);

/// One column per distinct user type, rated with that type's priority, in
/// descending priority order (first occurrence wins on equal priority). This
/// is the construction where every rating is the user's priority.
DecisionMatrix matrix_from_priorities(std::vector<Criterion> criteria,
                                      std::span<const UserProfile> users);

/// Throws ValidationError(UnknownUserType) if the label is not a column.
std::int64_t column_total(const DecisionMatrix& matrix, std::string_view user_type);

std::int64_t matrix_score(const DecisionMatrix& matrix);

/// Label of the column reaching the score. Ties: higher rating, then earlier
/// declaration.
const std::string& best_user_type(const DecisionMatrix& matrix);

/// Resource ids by descending score, ties by ascending id.
std::vector<std::string> rank_resources(std::span<const Resource> resources);

}  // namespace dmmm
