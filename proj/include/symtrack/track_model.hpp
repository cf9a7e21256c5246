#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "symtrack/geometry.hpp"

namespace symtrack {

using DetectionId = std::int64_t;
using TrackId = std::int64_t;

/// One instance segmentation on one frame.
struct Detection {
  int frame = 0;
  Mask mask;
  DetectionId id = 0;

  friend bool operator==(const Detection&, const Detection&) = default;
};

struct WindowSlot {
  int offset = 0;
  int frame = 0;
  bool padding = false;

  friend bool operator==(const WindowSlot&, const WindowSlot&) = default;
};

/// Maps offsets -tr..+tr around `anchor_frame` to frames clamped into
/// [0, recording_length). Clamped slots are flagged as padding.
std::vector<WindowSlot> window_frames(int anchor_frame, int tr, int recording_length);

/// Time-symmetric local prediction around one anchor detection: 2*tr+1 masks
/// for offsets -tr..+tr. An empty mask means "cell predicted absent". The
/// offset-0 entry is the anchor's own segmentation.
class LocalTrack {
 public:
  LocalTrack() = default;
  /// Throws Error unless window has 2*tr+1 entries on the anchor's grid and the
  /// centre entry equals the anchor mask.
  LocalTrack(Detection anchor, int tr, std::vector<Mask> window);

  const Detection& anchor() const { return anchor_; }
  int tr() const { return tr_; }
  int frame() const { return anchor_.frame; }
  std::span<const Mask> window() const { return window_; }

  /// Prediction at a signed offset in [-tr, tr].
  const Mask& at_offset(int offset) const;

  friend bool operator==(const LocalTrack&, const LocalTrack&) = default;

 private:
  Detection anchor_;
  int tr_ = 0;
  std::vector<Mask> window_;
};

/// Pairs of predictions covering the shared frames of `earlier` (anchored at t)
/// and `later` (anchored at t + delta_t): entry k of the result compares
/// earlier offset (delta_t - tr + k) with later offset (-tr + k). Padding
/// entries participate as stored. Yields exactly 2*tr+1-delta_t pairs.
/// Throws Error when delta_t is outside [1, 2*tr] or the tracks' tr differ.
std::vector<std::pair<const Mask*, const Mask*>> overlap(const LocalTrack& earlier,
                                                         const LocalTrack& later, int delta_t);

enum class Provenance { detected, interpolated };

struct TrackEntry {
  Mask mask;
  Provenance provenance = Provenance::detected;
  /// Source detection; empty for interpolated entries.
  std::optional<DetectionId> detection;

  friend bool operator==(const TrackEntry&, const TrackEntry&) = default;
};

/// A linked identity: ordered frame -> entry map.
struct GlobalTrack {
  TrackId id = 0;
  std::map<int, TrackEntry> entries;

  int first_frame() const { return entries.begin()->first; }
  int last_frame() const { return entries.rbegin()->first; }
  bool contiguous() const;

  friend bool operator==(const GlobalTrack&, const GlobalTrack&) = default;
};

/// Geometry and (optionally) pixel data of one recording.
struct Recording {
  int width = 0;
  int height = 0;
  int length = 0;
  std::vector<Image> frames;
};

/// Throws Error on duplicate track ids or a detection used by two entries.
void check_tracks_disjoint(std::span<const GlobalTrack> tracks);

}  // namespace symtrack
