#pragma once

#include <vector>

#include "kft/grid.hpp"
#include "kft/solver.hpp"

namespace kft::scheduler {

// Latest keyfilter snapshot plus provenance.
struct KeyfilterState {
    std::vector<GridR> w_tilde;
    int source_frame = 1;
    int generation = 0;
};

struct FrameDirective {
    bool learn_context = false;
    bool refresh_keyfilter = false;
    int stepsize = 8;
};

// Keyframe cadence: context is learned every 2T frames, the keyfilter
// refreshes every T frames. Frame 1 always refreshes (it seeds generation 0);
// its context bootstrap is handled by the tracker's init, not here.
FrameDirective directive_for(int frame, int stepsize);

// Returns the refreshed keyfilter when the directive asks for it, otherwise
// the state unchanged.
KeyfilterState commit(const solver::FilterState& filter, const FrameDirective& directive,
                      const KeyfilterState& state, int frame);

}  // namespace kft::scheduler
