#pragma once

#include "symtrack/track_model.hpp"

namespace symtrack {

/// Endpoints of a gap inside one identity track.
struct GapSpec {
  int t_last = 0;
  int t_next = 0;
  Mask s_last;
  Centroid c_last;
  Centroid c_next;
};

/// Linearly interpolated centroid at frame t, weighted by temporal distance
/// to the two endpoints.
Centroid interpolated_centroid(const GapSpec& gap, int t);

/// s_last translated so its centroid lands on the interpolated position,
/// using a per-axis shift rounded half away from zero. Throws Error unless
/// t_last < t < t_next.
Mask interpolate_frame(const GapSpec& gap, int t);

/// Fills every missing frame between the first and last entry. Filled entries
/// are marked interpolated; existing entries are untouched. Idempotent.
GlobalTrack fill_all_gaps(const GlobalTrack& track);

}  // namespace symtrack
