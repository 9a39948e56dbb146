#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace arena {

struct ScoredInstance {
    std::string instance_id;
    double score = 0.5;  // any monotone transform of the ranking signal
    int gold = 0;        // 1 = positive class
};

struct ThresholdMetrics {
    double threshold = 0.0;
    double f1 = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double accuracy = 0.0;
};

struct ClassificationReport {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double accuracy = 0.0;
    bool precision_defined = true;  // false when no positive predictions
    bool recall_defined = true;     // false when no positive golds
    int extraction_failures = 0;    // null predictions counted as negative
};

struct CurveReport {
    std::vector<std::pair<double, double>> roc_points;  // (fpr, tpr)
    std::vector<std::pair<double, double>> pr_points;   // (recall, precision)
    double auroc = 0.0;
    double auprc = 0.0;
    ThresholdMetrics best;
};

// ROC points from (0,0) to (1,1), one step per distinct score; tied scores
// move together. Throws std::invalid_argument when only one class present.
std::vector<std::pair<double, double>> roc_curve(
    const std::vector<ScoredInstance>& scored);

// Trapezoidal area under roc_curve; equals the Mann-Whitney statistic with
// half credit for ties.
double auroc(const std::vector<ScoredInstance>& scored);

// Precision/recall at each distinct threshold plus stepwise-rectangular
// AUPRC over recall. Throws when there are no positives.
std::pair<std::vector<std::pair<double, double>>, double> pr_curve_and_auprc(
    const std::vector<ScoredInstance>& scored);

// Sweeps candidate thresholds (midpoints between distinct sorted scores
// plus below-min / above-max sentinels) for maximum positive-class F1;
// ties break toward higher recall. Prediction rule: score > threshold.
ThresholdMetrics best_f1_threshold(const std::vector<ScoredInstance>& scored);

// Positive-class confusion-matrix metrics. Null predictions count as
// negative and are tallied as extraction failures.
ClassificationReport classification_report(
    const std::vector<std::optional<int>>& predictions,
    const std::vector<int>& gold);

// Full curve report for a scored dataset (both classes required).
CurveReport curve_report(const std::vector<ScoredInstance>& scored);

}  // namespace arena
