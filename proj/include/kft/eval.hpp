#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "kft/geometry.hpp"
#include "kft/tracker.hpp"

namespace kft::eval {

struct Curve {
    std::vector<double> thresholds;
    std::vector<double> values;  // fraction of frames in [0, 1]
};

// Euclidean distance between box centers, pixels.
double cle(const BoundingBox& pred, const BoundingBox& gt);

// Intersection over union; disjoint boxes give 0.
double iou(const BoundingBox& pred, const BoundingBox& gt);

// Precision: fraction of frames with cle <= t, thresholds 0..50 px step 1.
Curve precision_curve(const std::vector<BoundingBox>& pred,
                      const std::vector<BoundingBox>& gt);

// Success: fraction of frames with iou >= t, thresholds 0..1 step 0.02.
Curve success_curve(const std::vector<BoundingBox>& pred,
                    const std::vector<BoundingBox>& gt);

// Mean of the success curve values.
double auc(const Curve& success);

// Curve value at exactly t (threshold grid point).
double value_at(const Curve& curve, double t);

struct Summary {
    std::string name;
    double precision20 = 0.0;
    double success_auc = 0.0;
    double mean_cle = 0.0;
    double fps = 0.0;
};

Summary summarize(const TrackResult& result, const std::vector<BoundingBox>& gt);

// Writes per-sequence result files (same corner-form text as ground truth),
// curves.csv (sequence, metric, threshold, value), and summary.csv. Errors on
// an empty result set rather than producing empty files.
void export_results(const std::filesystem::path& out_dir,
                    const std::vector<TrackResult>& results,
                    const std::vector<std::vector<BoundingBox>>& gts);

}  // namespace kft::eval
