#include "kft/scheduler.hpp"

#include "kft/errors.hpp"

namespace kft::scheduler {

FrameDirective directive_for(int frame, int stepsize) {
    if (frame < 1 || stepsize < 1)
        throw NumericError(ErrorCode::InvalidParameter,
                           "directive_for: frame and stepsize must be >= 1");
    FrameDirective d;
    d.stepsize = stepsize;
    d.learn_context = frame % (2 * stepsize) == 0;
    d.refresh_keyfilter = frame % stepsize == 0 || frame == 1;
    return d;
}

KeyfilterState commit(const solver::FilterState& filter, const FrameDirective& directive,
                      const KeyfilterState& state, int frame) {
    if (!directive.refresh_keyfilter) return state;
    if (!state.w_tilde.empty()) {
        if (state.w_tilde.size() != filter.w.size() ||
            !state.w_tilde.front().same_shape(filter.w.front()))
            throw NumericError(ErrorCode::ShapeMismatch,
                               "commit: filter shape differs from keyfilter");
    }
    return KeyfilterState{filter.w, frame, state.generation + 1};
}

}  // namespace kft::scheduler
