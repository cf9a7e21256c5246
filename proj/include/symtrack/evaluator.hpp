#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "symtrack/track_model.hpp"

namespace symtrack {

struct Tally {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;

  double precision() const;
  double recall() const;
  /// Harmonic mean of precision and recall; 0 when both are 0.
  double f() const;

  Tally& operator+=(const Tally& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const Tally&, const Tally&) = default;
};

struct EvalReport {
  Tally segmentation;
  Tally tracking;
};

struct FrameMatch {
  /// (pred index, gt index) pairs.
  std::vector<std::pair<int, int>> pairs;
  Tally tally;
};

/// Optimal one-to-one matching of one frame's predictions to ground truth,
/// restricted to pairs with IOU >= iou_min.
FrameMatch match_frame(std::span<const Mask* const> pred, std::span<const Mask* const> gt,
                       double iou_min = 0.5);

Tally segmentation_f(std::span<const GlobalTrack> pred, std::span<const GlobalTrack> gt,
                     double iou_min = 0.5);

/// Consecutive occurrences (frame_a, frame_b) of one track id.
struct Link {
  TrackId track = 0;
  int frame_a = 0;
  int frame_b = 0;

  friend auto operator<=>(const Link&, const Link&) = default;
};

/// One link per adjacent pair of occurrences; gaps are spanned.
std::vector<Link> extract_links(std::span<const GlobalTrack> tracks);

/// Link matching: a predicted link is a true positive when both endpoint
/// masks are frame-matched to the two endpoints of one ground-truth link.
Tally tracking_f(std::span<const GlobalTrack> pred, std::span<const GlobalTrack> gt,
                 double iou_min = 0.5);

EvalReport evaluate(std::span<const GlobalTrack> pred, std::span<const GlobalTrack> gt,
                    double iou_min = 0.5);

/// True if the box lies within `margin` pixels of any image edge.
bool touches_border(const BoundingBox& box, int width, int height, int margin);

/// Drops tracks that leave the field of view: the final mask touches the
/// border band and the track ends before the last frame of the recording.
std::vector<GlobalTrack> filter_border_tracks(std::span<const GlobalTrack> tracks, int width,
                                              int height, int recording_length, int margin = 2);

}  // namespace symtrack
