#pragma once

#include <vector>

#include "kft/config.hpp"
#include "kft/context.hpp"
#include "kft/dataio.hpp"
#include "kft/dsp.hpp"
#include "kft/features.hpp"
#include "kft/geometry.hpp"
#include "kft/scheduler.hpp"
#include "kft/solver.hpp"

namespace kft {

struct ResponseMap {
    std::vector<GridR> maps;  // one grid per scale
    int peak_scale = 0;       // index into maps
    int peak_row = 0;
    int peak_col = 0;
    double peak_value = 0.0;
    double refined_drow = 0.0;  // signed sub-cell displacement from bin (0,0)
    double refined_dcol = 0.0;
};

struct Detection {
    BoundingBox box;
    ResponseMap response;
};

// model' = (1 - eta) * model + eta * fresh, elementwise.
features::FeatureMap update_model(const features::FeatureMap& model,
                                  const features::FeatureMap& fresh, double eta);

// Online loop: detect with the previous frame's filter over a scale pyramid,
// update the appearance average, then retrain as the scheduler directs.
class Tracker {
public:
    Tracker(const Frame& frame1, const BoundingBox& box1, const TrackerConfig& config);

    // Frames must arrive in order, starting at index 2.
    BoundingBox step(const Frame& frame);

    // Detection against the current filter without mutating state.
    Detection detect(const Image& image) const;

    const BoundingBox& box() const { return box_; }
    int frame_index() const { return frame_; }
    const solver::FilterState& filter() const { return filter_; }
    const scheduler::KeyfilterState& keyfilter() const { return keyfilter_; }
    const features::FeatureMap& model() const { return model_; }
    const std::vector<double>& last_scores() const { return last_scores_; }
    const solver::CropOperator& crop() const { return crop_; }
    const dsp::Label& label() const { return label_; }
    const TrackerConfig& config() const { return config_; }

    // Windowed model-size features of the region around (cx, cy); exposed for
    // diagnostics and tests.
    features::FeatureMap sample_features(const Image& image, double cx, double cy,
                                         double region_scale = 1.0) const;

private:
    void train(const Image& image, bool learn_context, bool use_keyfilter);

    TrackerConfig config_;
    int frame_w_ = 0, frame_h_ = 0;
    double base_w_ = 0.0, base_h_ = 0.0;  // initial target extent, pixels
    double region_w_ = 0.0, region_h_ = 0.0;  // search region at scale 1
    int model_w_px_ = 0, model_h_px_ = 0;     // resized search region
    double scale_ = 1.0;                       // cumulative scale factor
    BoundingBox box_;
    int frame_ = 0;

    solver::CropOperator crop_;
    GridR window_;
    dsp::Label label_;
    solver::FilterState filter_;
    scheduler::KeyfilterState keyfilter_;
    features::FeatureMap model_;
    std::vector<double> last_scores_;
};

struct TrackResult {
    std::string name;
    std::vector<BoundingBox> boxes;
    std::vector<double> frame_seconds;  // tracking loop only, no disk I/O

    double fps() const;
};

TrackResult track_sequence(const Sequence& seq, const TrackerConfig& config);

}  // namespace kft
