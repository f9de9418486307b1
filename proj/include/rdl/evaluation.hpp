#pragma once

#include <cstdint>
#include <span>

namespace rdl {

/// Area under the ROC curve as the Mann-Whitney statistic
/// P(score_pos > score_neg) + 0.5 * P(tie), computed exactly via sorting
/// with midranks over tie groups. Requires at least one positive and one
/// negative label.
double auroc(std::span<const double> scores, std::span<const std::uint8_t> labels);

/// Number of true outliers among the m largest scores. Ties at the boundary
/// are broken by lower index first.
std::size_t top_m_detection(std::span<const double> scores,
                            std::span<const std::uint8_t> labels, std::size_t m);

}  // namespace rdl
