#include "kft/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "kft/dataio.hpp"
#include "kft/errors.hpp"

namespace kft::eval {

namespace fs = std::filesystem;

double cle(const BoundingBox& pred, const BoundingBox& gt) {
    return center_distance(pred, gt);
}

double iou(const BoundingBox& pred, const BoundingBox& gt) {
    const double x1 = std::max(pred.x(), gt.x());
    const double y1 = std::max(pred.y(), gt.y());
    const double x2 = std::min(pred.x() + pred.w, gt.x() + gt.w);
    const double y2 = std::min(pred.y() + pred.h, gt.y() + gt.h);
    if (x2 <= x1 || y2 <= y1) return 0.0;
    const double inter = (x2 - x1) * (y2 - y1);
    const double uni = pred.w * pred.h + gt.w * gt.h - inter;
    return inter / uni;
}

namespace {

void require_matched(size_t a, size_t b) {
    if (a != b || a == 0)
        throw DataError(ErrorCode::CountMismatch,
                        "evaluation: prediction/ground-truth length mismatch (" +
                            std::to_string(a) + " vs " + std::to_string(b) + ")");
}

}  // namespace

Curve precision_curve(const std::vector<BoundingBox>& pred,
                      const std::vector<BoundingBox>& gt) {
    require_matched(pred.size(), gt.size());
    std::vector<double> errors(pred.size());
    for (size_t i = 0; i < pred.size(); ++i) errors[i] = cle(pred[i], gt[i]);
    Curve curve;
    for (int t = 0; t <= 50; ++t) {
        size_t hits = 0;
        for (double e : errors)
            if (e <= t) ++hits;
        curve.thresholds.push_back(t);
        curve.values.push_back(static_cast<double>(hits) / pred.size());
    }
    return curve;
}

Curve success_curve(const std::vector<BoundingBox>& pred,
                    const std::vector<BoundingBox>& gt) {
    require_matched(pred.size(), gt.size());
    std::vector<double> overlaps(pred.size());
    for (size_t i = 0; i < pred.size(); ++i) overlaps[i] = iou(pred[i], gt[i]);
    Curve curve;
    for (int k = 0; k <= 50; ++k) {
        const double t = 0.02 * k;
        size_t hits = 0;
        for (double o : overlaps)
            if (o >= t) ++hits;
        curve.thresholds.push_back(t);
        curve.values.push_back(static_cast<double>(hits) / pred.size());
    }
    return curve;
}

double auc(const Curve& success) {
    double sum = 0.0;
    for (double v : success.values) sum += v;
    return success.values.empty() ? 0.0 : sum / success.values.size();
}

double value_at(const Curve& curve, double t) {
    for (size_t i = 0; i < curve.thresholds.size(); ++i)
        if (curve.thresholds[i] == t) return curve.values[i];
    throw NumericError(ErrorCode::InvalidParameter, "value_at: threshold not on curve grid");
}

Summary summarize(const TrackResult& result, const std::vector<BoundingBox>& gt) {
    Summary s;
    s.name = result.name;
    s.precision20 = value_at(precision_curve(result.boxes, gt), 20.0);
    s.success_auc = auc(success_curve(result.boxes, gt));
    double total = 0.0;
    for (size_t i = 0; i < result.boxes.size(); ++i) total += cle(result.boxes[i], gt[i]);
    s.mean_cle = total / result.boxes.size();
    s.fps = result.fps();
    return s;
}

void export_results(const fs::path& out_dir, const std::vector<TrackResult>& results,
                    const std::vector<std::vector<BoundingBox>>& gts) {
    if (results.empty())
        throw DataError(ErrorCode::EmptyInput, "export_results: no results to export");
    if (results.size() != gts.size())
        throw DataError(ErrorCode::CountMismatch,
                        "export_results: results/ground-truth sequence counts differ");
    fs::create_directories(out_dir);

    std::ofstream curves(out_dir / "curves.csv");
    std::ofstream summary(out_dir / "summary.csv");
    if (!curves || !summary)
        throw DataError(ErrorCode::WriteFailure, "cannot write into " + out_dir.string());
    curves << "sequence,metric,threshold,value\n";
    summary << "sequence,precision_20px,success_auc,mean_cle,fps\n";

    for (size_t i = 0; i < results.size(); ++i) {
        const TrackResult& res = results[i];
        write_boxes(out_dir / (res.name + ".txt"), res.boxes);

        const Curve prec = precision_curve(res.boxes, gts[i]);
        const Curve succ = success_curve(res.boxes, gts[i]);
        for (size_t k = 0; k < prec.thresholds.size(); ++k)
            curves << res.name << ",precision," << prec.thresholds[k] << "," << prec.values[k]
                   << "\n";
        for (size_t k = 0; k < succ.thresholds.size(); ++k)
            curves << res.name << ",success," << succ.thresholds[k] << "," << succ.values[k]
                   << "\n";

        const Summary s = summarize(res, gts[i]);
        summary << s.name << "," << s.precision20 << "," << s.success_auc << "," << s.mean_cle
                << "," << s.fps << "\n";
    }
}

}  // namespace kft::eval
