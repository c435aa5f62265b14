#include "kft/tracker.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "kft/errors.hpp"

namespace kft {

namespace {

double clampd(double v, double lo, double hi) { return std::max(lo, std::min(hi, v)); }

// Signed circular displacement of index p on an axis of length n, in
// [-n/2, n/2).
int signed_shift(int p, int n) { return p >= (n + 1) / 2 ? p - n : p; }

// 1-D parabolic peak refinement over circular neighbors.
double parabolic_offset(double prev, double peak, double next) {
    const double denom = prev - 2.0 * peak + next;
    if (std::abs(denom) < 1e-12) return 0.0;
    return clampd(0.5 * (prev - next) / denom, -0.5, 0.5);
}

}  // namespace

features::FeatureMap update_model(const features::FeatureMap& model,
                                  const features::FeatureMap& fresh, double eta) {
    if (model.depth() != fresh.depth() || model.height() != fresh.height() ||
        model.width() != fresh.width())
        throw NumericError(ErrorCode::ShapeMismatch, "update_model: feature shapes differ");
    features::FeatureMap out = model;
    for (int d = 0; d < model.depth(); ++d)
        for (size_t i = 0; i < model.channels[d].size(); ++i)
            out.channels[d][i] = (1.0 - eta) * model.channels[d][i] + eta * fresh.channels[d][i];
    return out;
}

Tracker::Tracker(const Frame& frame1, const BoundingBox& box1, const TrackerConfig& config)
    : config_(config) {
    const Image& image = frame1.pixels;
    frame_w_ = image.width();
    frame_h_ = image.height();

    box_ = box1;
    box_.cx = clampd(box_.cx, 0.0, frame_w_ - 1.0);
    box_.cy = clampd(box_.cy, 0.0, frame_h_ - 1.0);
    if (box_.w < 2.0 * config_.cell_size || box_.h < 2.0 * config_.cell_size)
        throw NumericError(ErrorCode::DegenerateBox,
                           "init box smaller than two cells per side");

    base_w_ = box_.w;
    base_h_ = box_.h;
    region_w_ = base_w_ * config_.padding;
    region_h_ = base_h_ * config_.padding;

    // Freeze the model resolution: cap the cell grid at max_cells per side,
    // never upsample. All later crops resize to this fixed size.
    const int cell = config_.cell_size;
    const double cap = static_cast<double>(config_.max_cells) * cell;
    const double rho = std::min(1.0, cap / std::max(region_w_, region_h_));
    model_w_px_ = std::max(cell, static_cast<int>(std::lround(region_w_ * rho / cell)) * cell);
    model_h_px_ = std::max(cell, static_cast<int>(std::lround(region_h_ * rho / cell)) * cell);

    const int grid_w = model_w_px_ / cell;
    const int grid_h = model_h_px_ / cell;
    const int target_cells_w = std::clamp(
        static_cast<int>(std::floor(base_w_ * (model_w_px_ / region_w_) / cell)), 1, grid_w);
    const int target_cells_h = std::clamp(
        static_cast<int>(std::floor(base_h_ * (model_h_px_ / region_h_) / cell)), 1, grid_h);
    crop_ = solver::CropOperator::centered(grid_h, grid_w, target_cells_h, target_cells_w);

    window_ = dsp::hann_window(grid_h, grid_w);
    const double sigma =
        config_.output_sigma_factor * std::sqrt(static_cast<double>(target_cells_w) *
                                                static_cast<double>(target_cells_h));
    label_ = dsp::gaussian_label(grid_h, grid_w, sigma);

    model_ = sample_features(image, box_.cx, box_.cy);
    frame_ = 1;

    // First frame bootstraps with context but without a keyfilter, and its
    // filter seeds generation 0.
    train(image, /*learn_context=*/true, /*use_keyfilter=*/false);
    keyfilter_ = scheduler::KeyfilterState{filter_.w, 1, 0};
}

features::FeatureMap Tracker::sample_features(const Image& image, double cx, double cy,
                                              double region_scale) const {
    features::PatchSpec spec;
    spec.cx = cx;
    spec.cy = cy;
    spec.width = region_w_ * scale_ * region_scale;
    spec.height = region_h_ * scale_ * region_scale;
    spec.out_width = model_w_px_;
    spec.out_height = model_h_px_;
    const Image patch = features::crop_patch(image, spec);
    features::FeatureMap map = features::extract_features(patch, config_.cell_size,
                                                          config_.channels);
    if (config_.window) features::apply_window(map, window_);
    return map;
}

Detection Tracker::detect(const Image& image) const {
    const int grid_h = crop_.full_h, grid_w = crop_.full_w;
    const int ns = std::max(1, config_.num_scales);
    const int mid = ns / 2;

    Detection det;
    det.response.maps.reserve(ns);
    double best = -1e300;
    int best_scale = mid;

    for (int i = 0; i < ns; ++i) {
        const double factor = std::pow(config_.scale_step, i - mid);
        const features::FeatureMap feats = sample_features(image, box_.cx, box_.cy, factor);
        GridC acc(grid_h, grid_w, cplx(0.0, 0.0));
        for (int d = 0; d < feats.depth(); ++d) {
            const GridC zh = dsp::fft2(feats.channels[d]);
            const GridC& gh = filter_.g_hat[d];
            for (size_t b = 0; b < acc.size(); ++b) acc[b] += std::conj(gh[b]) * zh[b];
        }
        GridR resp = dsp::ifft2_real(acc);
        double peak = -1e300;
        int pr = 0, pc = 0;
        for (int r = 0; r < grid_h; ++r)
            for (int c = 0; c < grid_w; ++c)
                if (resp.at(r, c) > peak) {
                    peak = resp.at(r, c);
                    pr = r;
                    pc = c;
                }
        const double scored = peak * std::pow(config_.scale_penalty, std::abs(i - mid));
        if (scored > best) {
            best = scored;
            best_scale = i;
            det.response.peak_row = pr;
            det.response.peak_col = pc;
            det.response.peak_value = peak;
        }
        det.response.maps.push_back(std::move(resp));
    }
    det.response.peak_scale = best_scale;

    const GridR& map = det.response.maps[best_scale];
    const int pr = det.response.peak_row, pc = det.response.peak_col;
    const double off_r = parabolic_offset(map.at((pr + grid_h - 1) % grid_h, pc),
                                          map.at(pr, pc),
                                          map.at((pr + 1) % grid_h, pc));
    const double off_c = parabolic_offset(map.at(pr, (pc + grid_w - 1) % grid_w),
                                          map.at(pr, pc),
                                          map.at(pr, (pc + 1) % grid_w));
    det.response.refined_drow = signed_shift(pr, grid_h) + off_r;
    det.response.refined_dcol = signed_shift(pc, grid_w) + off_c;

    const double chosen_factor = std::pow(config_.scale_step, best_scale - mid);
    const double px_per_cell_x =
        config_.cell_size * (region_w_ * scale_ * chosen_factor) / model_w_px_;
    const double px_per_cell_y =
        config_.cell_size * (region_h_ * scale_ * chosen_factor) / model_h_px_;

    const double new_scale = scale_ * chosen_factor;
    det.box.cx = clampd(box_.cx + det.response.refined_dcol * px_per_cell_x, 0.0,
                        frame_w_ - 1.0);
    det.box.cy = clampd(box_.cy + det.response.refined_drow * px_per_cell_y, 0.0,
                        frame_h_ - 1.0);
    det.box.w = base_w_ * new_scale;
    det.box.h = base_h_ * new_scale;
    return det;
}

void Tracker::train(const Image& image, bool learn_context, bool use_keyfilter) {
    context::ContextPatchSet patches;
    last_scores_.assign(config_.context_patches, 0.0);
    if (learn_context) {
        const auto centers = context::place_patches(box_, config_.context_patches);
        for (size_t p = 0; p < centers.size(); ++p) {
            context::ContextPatch patch;
            patch.cx = centers[p].first;
            patch.cy = centers[p].second;
            patch.score = context::score_patch(box_, patch.cx, patch.cy, config_.base_score);
            patch.features = sample_features(image, patch.cx, patch.cy);
            last_scores_[p] = patch.score;
            patches.patches.push_back(std::move(patch));
        }
    }

    solver::TrainingInput input;
    input.target = model_.channels;
    input.label = label_.y;
    for (auto& patch : patches.patches) {
        if (patch.score == 0.0) continue;
        input.context.push_back(std::move(patch.features.channels));
        input.scores.push_back(patch.score);
    }

    solver::SolverParams params;
    params.lambda = config_.lambda;
    params.gamma = config_.gamma;
    params.mu0 = config_.mu0;
    params.beta = config_.beta;
    params.mu_max = config_.mu_max;
    params.admm_iters = config_.admm_iters;

    const std::vector<GridR>* keyfilter =
        use_keyfilter && config_.gamma > 0.0 && !keyfilter_.w_tilde.empty()
            ? &keyfilter_.w_tilde
            : nullptr;
    filter_ = solver::train_filter(input, keyfilter, params, crop_);
}

BoundingBox Tracker::step(const Frame& frame) {
    if (frame.index != frame_ + 1)
        throw NumericError(ErrorCode::InvalidParameter,
                           "step: frames must arrive in order (expected " +
                               std::to_string(frame_ + 1) + ", got " +
                               std::to_string(frame.index) + ")");
    frame_ = frame.index;
    const Image& image = frame.pixels;

    const Detection det = detect(image);
    box_ = det.box;
    scale_ = box_.w / base_w_;

    const features::FeatureMap fresh = sample_features(image, box_.cx, box_.cy);
    model_ = update_model(model_, fresh, config_.learning_rate);

    const scheduler::FrameDirective directive =
        scheduler::directive_for(frame_, config_.stepsize);
    const bool context_on = directive.learn_context && config_.base_score > 0.0;
    train(image, context_on, /*use_keyfilter=*/true);
    keyfilter_ = scheduler::commit(filter_, directive, keyfilter_, frame_);
    return box_;
}

double TrackResult::fps() const {
    double total = 0.0;
    for (double s : frame_seconds) total += s;
    return total > 0.0 ? static_cast<double>(frame_seconds.size()) / total : 0.0;
}

TrackResult track_sequence(const Sequence& seq, const TrackerConfig& config) {
    if (seq.frames.size() < 2 || seq.frames.size() != seq.groundtruth.size())
        throw DataError(ErrorCode::CountMismatch, "track_sequence: malformed sequence");
    TrackResult result;
    result.name = seq.name;
    result.boxes.reserve(seq.frames.size());
    result.frame_seconds.reserve(seq.frames.size());

    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    Tracker tracker(seq.frames[0], seq.groundtruth[0], config);
    auto t1 = clock::now();
    result.boxes.push_back(seq.groundtruth[0]);  // OPE: frame 1 is the init box
    result.frame_seconds.push_back(std::chrono::duration<double>(t1 - t0).count());

    for (size_t i = 1; i < seq.frames.size(); ++i) {
        t0 = clock::now();
        const BoundingBox box = tracker.step(seq.frames[i]);
        t1 = clock::now();
        result.boxes.push_back(box);
        result.frame_seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    return result;
}

}  // namespace kft
