#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "symtrack/track_model.hpp"

namespace fixtures {

using namespace symtrack;

/// Axis-aligned w x h rectangle with top-left corner (x, y), clipped to the grid.
inline Mask rect(int grid_w, int grid_h, int x, int y, int w, int h) {
  std::vector<Run> runs;
  for (int row = std::max(y, 0); row < std::min(y + h, grid_h); ++row) {
    const int x0 = std::max(x, 0);
    const int x1 = std::min(x + w, grid_w);
    if (x1 > x0) runs.push_back({row, x0, x1 - x0});
  }
  return Mask::from_runs(grid_w, grid_h, std::move(runs));
}

/// Gap-free track built from one mask per frame starting at `first`.
inline GlobalTrack track_from(TrackId id, int first, const std::vector<Mask>& masks,
                              DetectionId first_detection = 0) {
  GlobalTrack t{id, {}};
  for (std::size_t i = 0; i < masks.size(); ++i)
    t.entries.emplace(first + static_cast<int>(i),
                      TrackEntry{masks[i], Provenance::detected,
                                 first_detection + static_cast<DetectionId>(i)});
  return t;
}

/// Perfect local track: every window entry is the same object's mask at the
/// clamped frame.
inline LocalTrack ideal_local_track(const GlobalTrack& gt, int frame, int tr, int length) {
  std::vector<Mask> window;
  for (const WindowSlot& s : window_frames(frame, tr, length)) {
    auto it = gt.entries.find(s.frame);
    window.push_back(it == gt.entries.end() ? Mask(gt.entries.begin()->second.mask.width(),
                                                    gt.entries.begin()->second.mask.height())
                                            : it->second.mask);
  }
  const TrackEntry& e = gt.entries.at(frame);
  return LocalTrack(Detection{frame, e.mask, e.detection.value_or(0)}, tr, std::move(window));
}

}  // namespace fixtures
