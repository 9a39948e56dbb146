#include "arena/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arena {

namespace {

struct Counts {
    int pos = 0;
    int neg = 0;
};

Counts count_classes(const std::vector<ScoredInstance>& scored) {
    Counts c;
    for (const auto& s : scored) {
        if (!std::isfinite(s.score)) {
            throw std::invalid_argument("non-finite score for instance " +
                                        s.instance_id);
        }
        (s.gold == 1 ? c.pos : c.neg) += 1;
    }
    return c;
}

// Sorted descending by score; ties stay grouped.
std::vector<const ScoredInstance*> by_score_desc(
    const std::vector<ScoredInstance>& scored) {
    std::vector<const ScoredInstance*> v;
    v.reserve(scored.size());
    for (const auto& s : scored) v.push_back(&s);
    std::stable_sort(v.begin(), v.end(),
                     [](const ScoredInstance* a, const ScoredInstance* b) {
                         return a->score > b->score;
                     });
    return v;
}

double safe_div(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

ThresholdMetrics metrics_at(const std::vector<ScoredInstance>& scored,
                            double threshold) {
    int tp = 0, fp = 0, fn = 0, tn = 0;
    for (const auto& s : scored) {
        bool pred = s.score > threshold;
        if (pred) {
            (s.gold == 1 ? tp : fp) += 1;
        } else {
            (s.gold == 1 ? fn : tn) += 1;
        }
    }
    ThresholdMetrics m;
    m.threshold = threshold;
    m.precision = safe_div(tp, tp + fp);
    m.recall = safe_div(tp, tp + fn);
    m.f1 = safe_div(2.0 * m.precision * m.recall, m.precision + m.recall);
    m.accuracy = safe_div(tp + tn, tp + fp + fn + tn);
    return m;
}

}  // namespace

std::vector<std::pair<double, double>> roc_curve(
    const std::vector<ScoredInstance>& scored) {
    Counts c = count_classes(scored);
    if (c.pos == 0 || c.neg == 0) {
        throw std::invalid_argument(
            "ROC undefined: both classes must be present");
    }
    auto sorted = by_score_desc(scored);

    std::vector<std::pair<double, double>> points{{0.0, 0.0}};
    int tp = 0, fp = 0;
    size_t i = 0;
    while (i < sorted.size()) {
        // Everything tied at this score crosses the threshold together.
        double s = sorted[i]->score;
        while (i < sorted.size() && sorted[i]->score == s) {
            (sorted[i]->gold == 1 ? tp : fp) += 1;
            ++i;
        }
        points.emplace_back(static_cast<double>(fp) / c.neg,
                            static_cast<double>(tp) / c.pos);
    }
    return points;
}

double auroc(const std::vector<ScoredInstance>& scored) {
    auto points = roc_curve(scored);
    double area = 0.0;
    for (size_t i = 1; i < points.size(); ++i) {
        area += (points[i].first - points[i - 1].first) *
                (points[i].second + points[i - 1].second) / 2.0;
    }
    return area;
}

std::pair<std::vector<std::pair<double, double>>, double> pr_curve_and_auprc(
    const std::vector<ScoredInstance>& scored) {
    Counts c = count_classes(scored);
    if (c.pos == 0) {
        throw std::invalid_argument("PR curve undefined: no positive labels");
    }
    auto sorted = by_score_desc(scored);

    std::vector<std::pair<double, double>> points;
    double area = 0.0;
    double prev_recall = 0.0;
    int tp = 0, fp = 0;
    size_t i = 0;
    while (i < sorted.size()) {
        double s = sorted[i]->score;
        while (i < sorted.size() && sorted[i]->score == s) {
            (sorted[i]->gold == 1 ? tp : fp) += 1;
            ++i;
        }
        double recall = static_cast<double>(tp) / c.pos;
        double precision = static_cast<double>(tp) / (tp + fp);
        points.emplace_back(recall, precision);
        area += (recall - prev_recall) * precision;
        prev_recall = recall;
    }
    return {points, area};
}

ThresholdMetrics best_f1_threshold(const std::vector<ScoredInstance>& scored) {
    Counts c = count_classes(scored);
    if (c.pos == 0 || c.neg == 0) {
        throw std::invalid_argument(
            "threshold sweep undefined: both classes must be present");
    }

    std::vector<double> distinct;
    distinct.reserve(scored.size());
    for (const auto& s : scored) distinct.push_back(s.score);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());

    std::vector<double> candidates;
    candidates.push_back(distinct.front() - 1.0);  // everything positive
    for (size_t i = 1; i < distinct.size(); ++i) {
        candidates.push_back((distinct[i - 1] + distinct[i]) / 2.0);
    }
    candidates.push_back(distinct.back() + 1.0);  // everything negative

    // Ascending sweep: a lower threshold predicts more positives, so on F1
    // ties the first maximum is the higher-recall one.
    ThresholdMetrics best = metrics_at(scored, candidates.front());
    for (size_t i = 1; i < candidates.size(); ++i) {
        ThresholdMetrics m = metrics_at(scored, candidates[i]);
        if (m.f1 > best.f1) best = m;
    }
    return best;
}

ClassificationReport classification_report(
    const std::vector<std::optional<int>>& predictions,
    const std::vector<int>& gold) {
    if (predictions.size() != gold.size() || gold.empty()) {
        throw std::invalid_argument(
            "predictions and gold must be nonempty and equal length");
    }
    int tp = 0, fp = 0, fn = 0, tn = 0, failures = 0;
    for (size_t i = 0; i < gold.size(); ++i) {
        int pred;
        if (predictions[i]) {
            pred = *predictions[i];
        } else {
            pred = 0;
            ++failures;
        }
        if (pred == 1) {
            (gold[i] == 1 ? tp : fp) += 1;
        } else {
            (gold[i] == 1 ? fn : tn) += 1;
        }
    }
    ClassificationReport r;
    r.precision_defined = (tp + fp) > 0;
    r.recall_defined = (tp + fn) > 0;
    r.precision = safe_div(tp, tp + fp);
    r.recall = safe_div(tp, tp + fn);
    r.f1 = safe_div(2.0 * r.precision * r.recall, r.precision + r.recall);
    r.accuracy = static_cast<double>(tp + tn) / static_cast<double>(gold.size());
    r.extraction_failures = failures;
    return r;
}

CurveReport curve_report(const std::vector<ScoredInstance>& scored) {
    CurveReport rep;
    rep.roc_points = roc_curve(scored);
    rep.auroc = auroc(scored);
    auto [pr_points, auprc] = pr_curve_and_auprc(scored);
    rep.pr_points = std::move(pr_points);
    rep.auprc = auprc;
    rep.best = best_f1_threshold(scored);
    return rep;
}

}  // namespace arena
