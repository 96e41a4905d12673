#pragma once

#include <cstdint>
#include <string>

#include "minebench/core.hpp"
#include "minebench/decision.hpp"
#include "minebench/fraction.hpp"

namespace minebench {

struct ConfusionCounts {
    std::int64_t tp = 0;
    std::int64_t tn = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;

    std::int64_t total() const { return tp + tn + fp + fn; }

    bool operator==(const ConfusionCounts& o) const = default;
};

// Exact grading report. All four metrics are kept as exact rationals;
// doubles are derived for display only.
struct MetricsReport {
    ConfusionCounts counts;
    Fraction accuracy;
    Fraction precision;
    Fraction recall;
    Fraction f1;
    Fraction size_ratio;
    std::int64_t mined_size = 0;
    std::int64_t ground_truth_size = 0;

    // One-decimal form used in summary tables ("0.2", "1.3").
    std::string size_ratio_rounded() const;

    std::string to_json() const;
};

// Element-by-element comparison of the reconstructed matrix against the
// original: tp = 1->1, tn = 0->0, fp = 0->1, fn = 1->0.
ConfusionCounts confusion(const AccessMatrix& original, const AccessMatrix& reconstructed);

// Applies the metric formulas with the degenerate-denominator conventions:
// precision is 1 when there are no positives anywhere (tp+fp = 0 and
// tp+fn = 0) and 0 when only tp+fp = 0; recall is 1 when tp+fn = 0; f1 is 0
// when precision+recall = 0 and the harmonic mean otherwise.
MetricsReport score(const ConfusionCounts& counts, std::int64_t mined_size,
                    std::int64_t ground_truth_size);

// Convenience: reconstruct-and-grade in one step.
MetricsReport grade(const Scenario& scenario, const PolicySet& mined, Semantics sem);

} // namespace minebench
