#include "kft/solver.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "kft/dsp.hpp"
#include "kft/errors.hpp"

namespace kft::solver {

namespace {

void require_positive_mu(double mu) {
    if (!(mu > 0.0))
        throw NumericError(ErrorCode::InvalidParameter, "per-bin solve requires mu > 0");
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v))
        throw NumericError(ErrorCode::InvalidParameter,
                           std::string(what) + ": non-finite value");
}

// Progressive Sherman-Morrison: transforms the columns of k so that after
// processing vector j, every remaining column i holds M_j^{-1} * orig_i with
// M_j = mu I + sum_{l<j} v_l v_l^H. The final column is the solution.
void progressive_rank1_solve(const std::vector<const cplx*>& vs,
                             const std::vector<double>& s, std::vector<cplx>& k, int d,
                             double mu) {
    const int rank = static_cast<int>(vs.size());
    const int cols = rank + 1;
    const double inv_mu = 1.0 / mu;
    for (cplx& v : k) v *= inv_mu;
    for (int j = 0; j < rank; ++j) {
        cplx* kj = k.data() + static_cast<size_t>(j) * d;
        // v_j = s_j * x_j; v_j^H kj
        cplx vhk = 0.0;
        for (int e = 0; e < d; ++e) vhk += std::conj(s[j] * vs[j][e]) * kj[e];
        const double denom = 1.0 + vhk.real();
        for (int i = j + 1; i < cols; ++i) {
            cplx* ki = k.data() + static_cast<size_t>(i) * d;
            cplx vhi = 0.0;
            for (int e = 0; e < d; ++e) vhi += std::conj(s[j] * vs[j][e]) * ki[e];
            const cplx alpha = vhi / denom;
            for (int e = 0; e < d; ++e) ki[e] -= alpha * kj[e];
        }
    }
}

}  // namespace

CropOperator CropOperator::centered(int full_h, int full_w, int crop_h, int crop_w) {
    if (crop_h < 1 || crop_w < 1 || crop_h > full_h || crop_w > full_w)
        throw NumericError(ErrorCode::InvalidParameter, "CropOperator: invalid window");
    CropOperator op;
    op.full_h = full_h;
    op.full_w = full_w;
    op.crop_h = crop_h;
    op.crop_w = crop_w;
    op.row0 = full_h / 2 - crop_h / 2;
    op.col0 = full_w / 2 - crop_w / 2;
    return op;
}

GridR CropOperator::crop(const GridR& full) const {
    GridR out(crop_h, crop_w);
    for (int r = 0; r < crop_h; ++r)
        for (int c = 0; c < crop_w; ++c) out.at(r, c) = full.at(row0 + r, col0 + c);
    return out;
}

GridR CropOperator::pad(const GridR& cropped) const {
    GridR out(full_h, full_w, 0.0);
    for (int r = 0; r < crop_h; ++r)
        for (int c = 0; c < crop_w; ++c) out.at(row0 + r, col0 + c) = cropped.at(r, c);
    return out;
}

std::vector<GridC> filter_spectrum(const std::vector<GridR>& w, const CropOperator& crop) {
    std::vector<GridC> out;
    out.reserve(w.size());
    const double root_n = std::sqrt(static_cast<double>(crop.full_size()));
    for (const auto& wd : w) {
        GridC spec = dsp::fft2(crop.pad(wd));
        for (size_t i = 0; i < spec.size(); ++i) spec[i] *= root_n;
        out.push_back(std::move(spec));
    }
    return out;
}

std::vector<GridR> solve_w(const std::vector<GridC>& g_hat,
                           const std::vector<GridC>& zeta_hat,
                           const std::vector<GridR>* keyfilter, double lambda, double gamma,
                           double mu, const CropOperator& crop) {
    const double n = static_cast<double>(crop.full_size());
    const double inv_root_n = 1.0 / std::sqrt(n);
    const double denom = mu + (lambda + gamma) / n;
    std::vector<GridR> w;
    w.reserve(g_hat.size());
    for (size_t d = 0; d < g_hat.size(); ++d) {
        require_same_shape(g_hat[d], zeta_hat[d], "solve_w");
        GridC mix(g_hat[d].height(), g_hat[d].width());
        for (size_t i = 0; i < mix.size(); ++i)
            mix[i] = mu * g_hat[d][i] + zeta_hat[d][i];
        GridR spatial = crop.crop(dsp::ifft2_real(mix));
        for (size_t i = 0; i < spatial.size(); ++i) {
            double v = spatial[i] * inv_root_n;
            if (keyfilter) v += gamma / n * (*keyfilter)[d][i];
            require_finite(v, "solve_w");
            spatial[i] = v / denom;
        }
        w.push_back(std::move(spatial));
    }
    return w;
}

std::vector<cplx> solve_g_bin(const std::vector<std::vector<cplx>>& xs,
                              const std::vector<double>& scores, cplx y,
                              const std::vector<cplx>& zeta, const std::vector<cplx>& w_hat,
                              double mu) {
    require_positive_mu(mu);
    const int d = static_cast<int>(xs.at(0).size());
    std::vector<const cplx*> vs;
    std::vector<double> s;
    for (size_t p = 0; p < xs.size(); ++p) {
        if (scores.at(p) == 0.0) continue;
        vs.push_back(xs[p].data());
        s.push_back(scores[p]);
    }
    std::vector<cplx> k(static_cast<size_t>(vs.size() + 1) * d);
    for (size_t j = 0; j < vs.size(); ++j)
        for (int e = 0; e < d; ++e) k[j * d + e] = s[j] * vs[j][e];
    cplx* b = k.data() + vs.size() * static_cast<size_t>(d);
    for (int e = 0; e < d; ++e) b[e] = y * xs[0][e] - zeta[e] + mu * w_hat[e];
    progressive_rank1_solve(vs, s, k, d, mu);
    return std::vector<cplx>(b, b + d);
}

std::vector<cplx> solve_g_bin_dense(const std::vector<std::vector<cplx>>& xs,
                                    const std::vector<double>& scores, cplx y,
                                    const std::vector<cplx>& zeta,
                                    const std::vector<cplx>& w_hat, double mu) {
    require_positive_mu(mu);
    const int d = static_cast<int>(xs.at(0).size());
    Eigen::MatrixXcd a = mu * Eigen::MatrixXcd::Identity(d, d);
    for (size_t p = 0; p < xs.size(); ++p) {
        Eigen::VectorXcd v(d);
        for (int e = 0; e < d; ++e) v(e) = xs[p][e];
        a += scores.at(p) * scores[p] * v * v.adjoint();
    }
    Eigen::VectorXcd b(d);
    for (int e = 0; e < d; ++e) b(e) = y * xs[0][e] - zeta[e] + mu * w_hat[e];
    Eigen::VectorXcd g = a.llt().solve(b);
    return std::vector<cplx>(g.data(), g.data() + d);
}

std::vector<GridC> update_multiplier(const std::vector<GridC>& zeta_hat,
                                     const std::vector<GridC>& g_hat,
                                     const std::vector<GridC>& w_hat, double mu) {
    if (zeta_hat.size() != g_hat.size() || g_hat.size() != w_hat.size())
        throw NumericError(ErrorCode::ShapeMismatch, "update_multiplier: channel counts differ");
    std::vector<GridC> out;
    out.reserve(zeta_hat.size());
    for (size_t dd = 0; dd < zeta_hat.size(); ++dd) {
        require_same_shape(g_hat[dd], w_hat[dd], "update_multiplier");
        require_same_shape(zeta_hat[dd], g_hat[dd], "update_multiplier");
        GridC z = zeta_hat[dd];
        for (size_t i = 0; i < z.size(); ++i) z[i] += mu * (g_hat[dd][i] - w_hat[dd][i]);
        out.push_back(std::move(z));
    }
    return out;
}

FilterState train_filter(const TrainingInput& input, const std::vector<GridR>* keyfilter,
                         const SolverParams& params, const CropOperator& crop) {
    const int depth = static_cast<int>(input.target.size());
    if (depth == 0)
        throw NumericError(ErrorCode::EmptyInput, "train_filter: no feature channels");
    if (input.context.size() != input.scores.size())
        throw NumericError(ErrorCode::ShapeMismatch,
                           "train_filter: context patch count != score count");
    if (params.admm_iters < 1)
        throw NumericError(ErrorCode::InvalidParameter, "train_filter: admm_iters must be >= 1");

    const int fh = crop.full_h, fw = crop.full_w;
    const size_t n = crop.full_size();
    const double gamma = keyfilter ? params.gamma : 0.0;

    // Active patches: target first (score 1), then context patches with
    // nonzero score.
    std::vector<const std::vector<GridR>*> patches{&input.target};
    std::vector<double> scores{1.0};
    for (size_t p = 0; p < input.context.size(); ++p) {
        if (input.scores[p] == 0.0) continue;
        patches.push_back(&input.context[p]);
        scores.push_back(input.scores[p]);
    }
    const int np = static_cast<int>(patches.size());

    std::vector<std::vector<GridC>> x_hat(np);
    for (int p = 0; p < np; ++p) {
        if (static_cast<int>(patches[p]->size()) != depth)
            throw NumericError(ErrorCode::ShapeMismatch,
                               "train_filter: context channel count differs from target");
        x_hat[p].reserve(depth);
        for (const auto& chan : *patches[p]) {
            require_same_shape(chan, input.label, "train_filter");
            x_hat[p].push_back(dsp::fft2(chan));
        }
    }
    const GridC y_hat = dsp::fft2(input.label);

    FilterState state;
    state.g_hat.assign(depth, GridC(fh, fw, cplx(0.0, 0.0)));
    state.zeta_hat.assign(depth, GridC(fh, fw, cplx(0.0, 0.0)));
    std::vector<GridC> w_hat(depth, GridC(fh, fw, cplx(0.0, 0.0)));
    double mu = params.mu0;

    // Per-bin workspace reused across bins.
    std::vector<const cplx*> vs(np);
    std::vector<cplx> k(static_cast<size_t>(np + 1) * depth);
    std::vector<std::vector<cplx>> xs_bin(np, std::vector<cplx>(depth));
    std::vector<cplx> zeta_bin(depth), w_bin(depth);

    for (int iter = 0; iter < params.admm_iters; ++iter) {
        for (size_t bin = 0; bin < n; ++bin) {
            for (int p = 0; p < np; ++p) {
                for (int dd = 0; dd < depth; ++dd) xs_bin[p][dd] = x_hat[p][dd][bin];
                vs[p] = xs_bin[p].data();
            }
            if (params.dense_bin_solver) {
                for (int dd = 0; dd < depth; ++dd) {
                    zeta_bin[dd] = state.zeta_hat[dd][bin];
                    w_bin[dd] = w_hat[dd][bin];
                }
                const std::vector<cplx> g = solve_g_bin_dense(xs_bin, scores, y_hat[bin],
                                                              zeta_bin, w_bin, mu);
                for (int dd = 0; dd < depth; ++dd) state.g_hat[dd][bin] = g[dd];
                continue;
            }
            for (int p = 0; p < np; ++p)
                for (int dd = 0; dd < depth; ++dd)
                    k[static_cast<size_t>(p) * depth + dd] = scores[p] * xs_bin[p][dd];
            cplx* b = k.data() + static_cast<size_t>(np) * depth;
            const cplx y = y_hat[bin];
            for (int dd = 0; dd < depth; ++dd)
                b[dd] = y * x_hat[0][dd][bin] - state.zeta_hat[dd][bin] + mu * w_hat[dd][bin];
            progressive_rank1_solve(vs, scores, k, depth, mu);
            for (int dd = 0; dd < depth; ++dd) state.g_hat[dd][bin] = b[dd];
        }

        state.w = solve_w(state.g_hat, state.zeta_hat, keyfilter, params.lambda, gamma, mu,
                          crop);
        w_hat = filter_spectrum(state.w, crop);
        state.zeta_hat = update_multiplier(state.zeta_hat, state.g_hat, w_hat, mu);
        mu = std::min(params.beta * mu, params.mu_max);
    }
    state.mu = mu;
    return state;
}

double evaluate_objective(const std::vector<GridR>& w, const TrainingInput& input,
                          double lambda, double gamma, const std::vector<GridR>* keyfilter,
                          const CropOperator& crop) {
    const int depth = static_cast<int>(w.size());
    const std::vector<GridC> g_w = filter_spectrum(w, crop);

    auto response = [&](const std::vector<GridR>& patch) {
        GridC acc(crop.full_h, crop.full_w, cplx(0.0, 0.0));
        for (int dd = 0; dd < depth; ++dd) {
            const GridC xh = dsp::fft2(patch[dd]);
            for (size_t i = 0; i < acc.size(); ++i) acc[i] += std::conj(xh[i]) * g_w[dd][i];
        }
        return dsp::ifft2_real(acc);
    };

    double energy = 0.0;
    const GridR r0 = response(input.target);
    for (size_t i = 0; i < r0.size(); ++i) {
        const double e = input.label[i] - r0[i];
        energy += 0.5 * e * e;
    }
    for (size_t p = 0; p < input.context.size(); ++p) {
        if (input.scores[p] == 0.0) continue;
        const GridR rp = response(input.context[p]);
        const double s2 = input.scores[p] * input.scores[p];
        for (size_t i = 0; i < rp.size(); ++i) energy += 0.5 * s2 * rp[i] * rp[i];
    }
    for (int dd = 0; dd < depth; ++dd) {
        for (size_t i = 0; i < w[dd].size(); ++i) {
            energy += 0.5 * lambda * w[dd][i] * w[dd][i];
            if (keyfilter) {
                const double gap = w[dd][i] - (*keyfilter)[dd][i];
                energy += 0.5 * gamma * gap * gap;
            }
        }
    }
    return energy;
}

double constraint_residual(const FilterState& state, const CropOperator& crop) {
    const std::vector<GridC> w_hat = filter_spectrum(state.w, crop);
    double acc = 0.0;
    for (size_t dd = 0; dd < state.g_hat.size(); ++dd)
        for (size_t i = 0; i < w_hat[dd].size(); ++i)
            acc += std::norm(state.g_hat[dd][i] - w_hat[dd][i]);
    return std::sqrt(acc);
}

}  // namespace kft::solver
