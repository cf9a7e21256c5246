#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symtrack/evaluator.hpp"
#include "symtrack/linker.hpp"
#include "symtrack/oracle.hpp"
#include "symtrack/simulator.hpp"

namespace symtrack {

/// Post-processing applied after linking.
struct TrackingOptions {
  LinkerConfig linker;
  bool interpolate = true;
  bool drop_border_tracks = false;
  int border_margin = 2;
};

/// link_recording, then optional gap filling and border filtering.
std::vector<GlobalTrack> track(std::span<const LocalTrack> local_tracks, int width, int height,
                               int recording_length, const TrackingOptions& options);

struct AblationConfig {
  /// Scene template; seed, render and kind are overridden per recording.
  SimConfig sim;
  int recordings = 5;
  std::uint64_t seed = 0;
  std::vector<int> trs{1, 4, 7};
  std::vector<DropoutSpec> dropouts;
  /// 0 links up to TR frames apart; otherwise a fixed maximum distance.
  int max_skip = 0;
  double threshold = 0.05;
  Metric metric = Metric::mean_iou;
  PerturbConfig perturb;
  double iou_min = 0.5;
};

struct AblationRow {
  int recording = 0;
  std::string dropout;
  int tr = 0;
  int max_skip = 0;
  EvalReport disrupted;
  EvalReport retracked;
};

struct AblationSummary {
  std::string dropout;
  int tr = 0;
  int max_skip = 0;
  double disrupted_seg_f = 0.0;
  double disrupted_trk_f = 0.0;
  double retracked_seg_f = 0.0;
  double retracked_trk_f = 0.0;
};

struct AblationResult {
  std::vector<AblationRow> rows;
  /// Means over recordings, one entry per (dropout, tr) in sweep order.
  std::vector<AblationSummary> summary;
};

/// For every recording: simulate ground truth, apply each dropout, score the
/// disrupted ground truth, then rebuild local tracks for each TR, link and
/// score again. The dropout draw is shared by all TR values.
AblationResult run_ablation(const AblationConfig& config);

std::string ablation_to_json(const AblationConfig& config, const AblationResult& result);

}  // namespace symtrack
