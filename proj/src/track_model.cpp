#include "symtrack/track_model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace symtrack {

std::vector<WindowSlot> window_frames(int anchor_frame, int tr, int recording_length) {
  if (tr < 1) throw Error("tracking range must be >= 1");
  if (recording_length < 1) throw Error("recording length must be >= 1");
  std::vector<WindowSlot> slots;
  slots.reserve(static_cast<std::size_t>(2 * tr + 1));
  for (int offset = -tr; offset <= tr; ++offset) {
    const int raw = anchor_frame + offset;
    const int clamped = std::clamp(raw, 0, recording_length - 1);
    slots.push_back({offset, clamped, clamped != raw});
  }
  return slots;
}

LocalTrack::LocalTrack(Detection anchor, int tr, std::vector<Mask> window)
    : anchor_(std::move(anchor)), tr_(tr), window_(std::move(window)) {
  if (tr_ < 1) throw Error("tracking range must be >= 1");
  if (window_.size() != static_cast<std::size_t>(2 * tr_ + 1)) {
    std::ostringstream os;
    os << "local track window has " << window_.size() << " entries, expected " << 2 * tr_ + 1;
    throw Error(os.str());
  }
  if (anchor_.mask.empty()) throw Error("anchor mask is empty");
  for (const Mask& m : window_)
    if (m.width() != anchor_.mask.width() || m.height() != anchor_.mask.height())
      throw Error("local track window entry on a different grid than its anchor");
  if (!(window_[static_cast<std::size_t>(tr_)] == anchor_.mask))
    throw Error("local track centre entry differs from the anchor mask");
}

const Mask& LocalTrack::at_offset(int offset) const {
  if (offset < -tr_ || offset > tr_) throw Error("window offset out of range");
  return window_[static_cast<std::size_t>(offset + tr_)];
}

std::vector<std::pair<const Mask*, const Mask*>> overlap(const LocalTrack& earlier,
                                                         const LocalTrack& later, int delta_t) {
  if (earlier.tr() != later.tr()) throw Error("local tracks have different tracking ranges");
  const int tr = earlier.tr();
  if (delta_t < 1 || delta_t > 2 * tr) {
    std::ostringstream os;
    os << "temporal distance " << delta_t << " outside [1, " << 2 * tr << "]";
    throw Error(os.str());
  }
  std::vector<std::pair<const Mask*, const Mask*>> pairs;
  pairs.reserve(static_cast<std::size_t>(2 * tr + 1 - delta_t));
  for (int k = delta_t - tr; k <= tr; ++k)
    pairs.emplace_back(&earlier.at_offset(k), &later.at_offset(k - delta_t));
  return pairs;
}

bool GlobalTrack::contiguous() const {
  if (entries.empty()) return true;
  return last_frame() - first_frame() + 1 == static_cast<int>(entries.size());
}

void check_tracks_disjoint(std::span<const GlobalTrack> tracks) {
  std::set<DetectionId> seen;
  std::set<TrackId> ids;
  for (const GlobalTrack& t : tracks) {
    if (!ids.insert(t.id).second) {
      std::ostringstream os;
      os << "duplicate track id " << t.id;
      throw Error(os.str());
    }
    for (const auto& [frame, e] : t.entries) {
      if (e.detection && !seen.insert(*e.detection).second) {
        std::ostringstream os;
        os << "detection " << *e.detection << " appears in more than one track entry";
        throw Error(os.str());
      }
    }
  }
}

}  // namespace symtrack
