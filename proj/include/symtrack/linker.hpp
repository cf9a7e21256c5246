#pragma once

#include <span>
#include <vector>

#include "symtrack/assignment.hpp"
#include "symtrack/track_model.hpp"

namespace symtrack {

enum class Metric { mean_iou, euclidean };

struct LinkerConfig {
  int tr = 4;
  /// Largest temporal distance tried; 0 means "use tr".
  int max_skip = 0;
  double threshold = 0.05;
  Metric metric = Metric::mean_iou;
  double d_max = 50.0;

  int effective_max_skip() const { return max_skip > 0 ? max_skip : tr; }
  /// Throws Error when a field is out of range.
  void validate() const;
};

/// Mean per-frame similarity over the 2*tr+1-delta_t shared frames.
double overlap_similarity(const LocalTrack& earlier, const LocalTrack& later, int delta_t,
                          Metric metric, double d_max = 50.0);

SimilarityMatrix build_matrix(std::span<const LocalTrack* const> earlier,
                              std::span<const LocalTrack* const> later, int delta_t,
                              const LinkerConfig& config);

/// A realised link between two local tracks (indices into the linker input).
struct Match {
  std::size_t from = 0;
  std::size_t to = 0;
  int delta_t = 0;
  double similarity = 0.0;
};

/// Chaining state over a fixed set of local tracks: which tracks already have
/// a successor or a predecessor.
class LinkState {
 public:
  explicit LinkState(std::span<const LocalTrack> tracks);

  std::span<const LocalTrack> tracks() const { return tracks_; }
  /// Indices of local tracks anchored at `frame`, in input order.
  std::span<const std::size_t> at_frame(int frame) const;
  int first_frame() const { return first_frame_; }
  int last_frame() const { return last_frame_; }

  bool has_successor(std::size_t i) const { return successor_[i] >= 0; }
  bool has_predecessor(std::size_t i) const { return predecessor_[i] >= 0; }
  std::ptrdiff_t successor(std::size_t i) const { return successor_[i]; }

  /// Records a match; throws Error if either end is already linked.
  void link(const Match& match);
  const std::vector<Match>& matches() const { return matches_; }

 private:
  std::span<const LocalTrack> tracks_;
  std::vector<std::vector<std::size_t>> by_frame_;
  int first_frame_ = 0;
  int last_frame_ = -1;
  std::vector<std::ptrdiff_t> successor_;
  std::vector<std::ptrdiff_t> predecessor_;
  std::vector<Match> matches_;
};

/// One assignment between open track ends at frame t and open track starts
/// at t + delta_t. Matched candidates leave the pool.
std::vector<Match> link_pass(LinkState& state, int frame, int delta_t, const LinkerConfig& config);

/// Full hierarchical schedule: every (t, t+1) pair in increasing t, then
/// delta_t = 2..max_skip over what remains. Chains become GlobalTracks, with
/// ids in order of their first detection. Throws Error on mixed tr values or
/// when the tracks' tr differs from config.tr.
std::vector<GlobalTrack> link_recording(std::span<const LocalTrack> local_tracks,
                                        const LinkerConfig& config);

}  // namespace symtrack
