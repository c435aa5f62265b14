#pragma once

#include <optional>
#include <vector>

#include "kft/grid.hpp"

namespace kft::solver {

// Windowed selection of the centered crop_h x crop_w cells from a
// full_h x full_w grid. Realizes the cropping matrix as index arithmetic;
// crop(pad(v)) == v and pad zero-fills the complement.
struct CropOperator {
    int full_h = 0, full_w = 0;
    int crop_h = 0, crop_w = 0;
    int row0 = 0, col0 = 0;

    static CropOperator centered(int full_h, int full_w, int crop_h, int crop_w);

    size_t full_size() const { return static_cast<size_t>(full_h) * full_w; }
    size_t crop_size() const { return static_cast<size_t>(crop_h) * crop_w; }
    bool is_identity() const { return full_h == crop_h && full_w == crop_w; }

    GridR crop(const GridR& full) const;
    GridR pad(const GridR& cropped) const;
};

// One ADMM instance: spatial filter w (crop size, D channels), frequency
// auxiliary g_hat and multiplier zeta_hat (full size, D channels).
struct FilterState {
    std::vector<GridR> w;
    std::vector<GridC> g_hat;
    std::vector<GridC> zeta_hat;
    double mu = 0.0;
};

struct SolverParams {
    double lambda = 1e-3;
    double gamma = 10.0;
    double mu0 = 1.0;
    double beta = 10.0;
    double mu_max = 1e3;
    int admm_iters = 2;
    // Diagnostics: route every per-bin system through the dense Hermitian
    // solver instead of the iterated rank-1 updates.
    bool dense_bin_solver = false;
};

// Everything the training objective needs besides the filter itself. All
// grids share the full model size; channel counts must agree.
struct TrainingInput {
    std::vector<GridR> target;                 // D channels
    std::vector<std::vector<GridR>> context;   // P patches x D channels
    std::vector<double> scores;                // P entries, S_p
    GridR label;                               // desired response, peak at (0,0)
};

// Spectrum of the zero-padded spatial filter under the shared constraint
// scaling: sqrt(N) * fft2(pad(w_d)).
std::vector<GridC> filter_spectrum(const std::vector<GridR>& w, const CropOperator& crop);

// Spatial subproblem, elementwise closed form
//   w = (mu + (lambda+gamma)/N)^-1 (mu g + zeta + gamma/N w_tilde)
// where g and zeta are the crop-projected spatial counterparts of g_hat and
// zeta_hat (inverse transform, 1/sqrt(N) scale, then crop).
std::vector<GridR> solve_w(const std::vector<GridC>& g_hat,
                           const std::vector<GridC>& zeta_hat,
                           const std::vector<GridR>* keyfilter, double lambda, double gamma,
                           double mu, const CropOperator& crop);

// One frequency bin: solves (sum_p S_p^2 x_p x_p^H + mu I_D) g = b with
// b = y x_0 - zeta + mu w_hat, via iterated rank-1 (Sherman-Morrison)
// updates. xs[0] is the target vector (S_0 = 1), xs[p>0] the context vectors.
std::vector<cplx> solve_g_bin(const std::vector<std::vector<cplx>>& xs,
                              const std::vector<double>& scores, cplx y,
                              const std::vector<cplx>& zeta, const std::vector<cplx>& w_hat,
                              double mu);

// Dense Hermitian solve of the same system; the oracle the iterated path is
// held against.
std::vector<cplx> solve_g_bin_dense(const std::vector<std::vector<cplx>>& xs,
                                    const std::vector<double>& scores, cplx y,
                                    const std::vector<cplx>& zeta,
                                    const std::vector<cplx>& w_hat, double mu);

// zeta' = zeta + mu (g_hat - w_hat), elementwise per channel.
std::vector<GridC> update_multiplier(const std::vector<GridC>& zeta_hat,
                                     const std::vector<GridC>& g_hat,
                                     const std::vector<GridC>& w_hat, double mu);

// Full ADMM loop: admm_iters rounds of {per-bin g solve, w solve, multiplier
// update, mu <- min(beta mu, mu_max)}. keyfilter == nullptr turns the gamma
// term off (first-frame bootstrap).
FilterState train_filter(const TrainingInput& input, const std::vector<GridR>* keyfilter,
                         const SolverParams& params, const CropOperator& crop);

// Exact training energy at w: data term + lambda ridge + score-weighted
// context repression + gamma keyfilter gap. Diagnostics and tests only.
double evaluate_objective(const std::vector<GridR>& w, const TrainingInput& input,
                          double lambda, double gamma, const std::vector<GridR>* keyfilter,
                          const CropOperator& crop);

// ||g_hat - sqrt(N) fft2(pad(w))|| over all channels; the ADMM constraint
// residual.
double constraint_residual(const FilterState& state, const CropOperator& crop);

}  // namespace kft::solver
