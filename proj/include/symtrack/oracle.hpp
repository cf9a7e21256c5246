#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symtrack/track_model.hpp"

namespace symtrack {

enum class DropoutKind { none, uniform, box };

struct DropoutSpec {
  DropoutKind kind = DropoutKind::none;
  double rate = 0.0;
  int block_len = 7;

  /// Parses "none", "uniform:R" or "box:R[:L]"; R may be a fraction ("1/5").
  static DropoutSpec parse(const std::string& text);
  std::string to_string() const;
  void validate() const;
};

/// Imperfections applied to ground-truth windows to emulate a local tracker.
struct PerturbConfig {
  /// Probability that a non-anchor window entry is emitted empty.
  double window_miss_p = 0.0;
  /// Maximum |dx|, |dy| of a uniform integer shift; 0 disables.
  int jitter_px = 0;
  /// Maximum radius of a uniform dilation/erosion; 0 disables.
  int boundary_erode_dilate = 0;
  /// If set, only entries with |offset| in this list may be emitted empty.
  std::vector<int> miss_offsets;

  void validate() const;
};

/// Surviving detections after instance dropout, in (frame, track) order.
/// Uniform: every instance removed independently with probability rate.
/// Box: per track, non-overlapping removal blocks of block_len frames; the
/// draw is repeated until the overall removed fraction is within 10% of rate.
std::vector<Detection> detections_from_gt(std::span<const GlobalTrack> gt, const DropoutSpec& dropout,
                                          std::uint64_t seed);

/// One local track per detection, built from the detection's ground-truth
/// track at the clamped window frames and then perturbed. Padding entries
/// mirror the entry of the frame they repeat. The anchor entry is exact.
/// Throws Error when a detection is not on any ground-truth track.
std::vector<LocalTrack> local_tracks_from_gt(std::span<const Detection> detections,
                                             std::span<const GlobalTrack> gt, int tr,
                                             int recording_length, const PerturbConfig& perturb,
                                             std::uint64_t seed);

/// Ground truth with only the surviving detections kept, ids unchanged.
std::vector<GlobalTrack> disrupted_tracks(std::span<const GlobalTrack> gt,
                                          std::span<const Detection> detections);

}  // namespace symtrack
