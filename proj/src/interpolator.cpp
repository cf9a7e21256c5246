#include "symtrack/interpolator.hpp"

#include <cmath>
#include <iterator>

namespace symtrack {

Centroid interpolated_centroid(const GapSpec& gap, int t) {
  const double span = gap.t_next - gap.t_last;
  const double w_next = t - gap.t_last;
  const double w_last = gap.t_next - t;
  return {(w_next * gap.c_next.x + w_last * gap.c_last.x) / span,
          (w_next * gap.c_next.y + w_last * gap.c_last.y) / span};
}

Mask interpolate_frame(const GapSpec& gap, int t) {
  if (gap.t_next - gap.t_last < 2) throw Error("gap must span at least one missing frame");
  if (!(gap.t_last < t && t < gap.t_next)) throw Error("interpolation frame outside the gap");
  if (gap.s_last.empty()) throw Error("cannot interpolate from an empty mask");
  const Centroid c = interpolated_centroid(gap, t);
  const int dx = static_cast<int>(std::round(c.x - gap.c_last.x));
  const int dy = static_cast<int>(std::round(c.y - gap.c_last.y));
  return shift(gap.s_last, dx, dy);
}

GlobalTrack fill_all_gaps(const GlobalTrack& track) {
  GlobalTrack out = track;
  if (track.entries.size() < 2) return out;
  for (auto it = track.entries.begin(), nx = std::next(it); nx != track.entries.end(); ++it, ++nx) {
    if (nx->first - it->first < 2) continue;
    GapSpec gap{it->first, nx->first, it->second.mask, centroid(it->second.mask),
                centroid(nx->second.mask)};
    for (int t = gap.t_last + 1; t < gap.t_next; ++t)
      out.entries.emplace(t, TrackEntry{interpolate_frame(gap, t), Provenance::interpolated, {}});
  }
  return out;
}

}  // namespace symtrack
