#include "symtrack/linker.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace symtrack {

void LinkerConfig::validate() const {
  if (tr < 1) throw Error("tracking range must be >= 1");
  const int skip = effective_max_skip();
  if (skip < 1 || skip > 2 * tr) {
    std::ostringstream os;
    os << "max_skip " << skip << " outside [1, " << 2 * tr << "]";
    throw Error(os.str());
  }
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw Error("threshold outside [0, 1]");
  if (metric == Metric::euclidean && !(d_max > 0.0)) throw Error("d_max must be positive");
}

double overlap_similarity(const LocalTrack& earlier, const LocalTrack& later, int delta_t,
                          Metric metric, double d_max) {
  const auto pairs = overlap(earlier, later, delta_t);
  double sum = 0.0;
  for (const auto& [a, b] : pairs)
    sum += metric == Metric::mean_iou ? iou(*a, *b) : euclidean_similarity(*a, *b, d_max);
  return std::clamp(sum / static_cast<double>(pairs.size()), 0.0, 1.0);
}

SimilarityMatrix build_matrix(std::span<const LocalTrack* const> earlier,
                              std::span<const LocalTrack* const> later, int delta_t,
                              const LinkerConfig& config) {
  SimilarityMatrix mat(static_cast<int>(earlier.size()), static_cast<int>(later.size()), delta_t);
  for (std::size_t r = 0; r < earlier.size(); ++r)
    for (std::size_t c = 0; c < later.size(); ++c)
      mat.set(static_cast<int>(r), static_cast<int>(c),
              overlap_similarity(*earlier[r], *later[c], delta_t, config.metric, config.d_max));
  mat.gate(config.threshold);
  // A zero similarity is never evidence of identity, even at threshold 0.
  for (int r = 0; r < mat.rows(); ++r)
    for (int c = 0; c < mat.cols(); ++c)
      if (mat.value(r, c) <= 0.0) mat.set_feasible(r, c, false);
  return mat;
}

LinkState::LinkState(std::span<const LocalTrack> tracks)
    : tracks_(tracks),
      successor_(tracks.size(), -1),
      predecessor_(tracks.size(), -1) {
  if (tracks.empty()) return;
  first_frame_ = tracks.front().frame();
  last_frame_ = tracks.front().frame();
  for (const LocalTrack& lt : tracks) {
    if (lt.frame() < 0) throw Error("local track anchored at a negative frame");
    first_frame_ = std::min(first_frame_, lt.frame());
    last_frame_ = std::max(last_frame_, lt.frame());
  }
  by_frame_.resize(static_cast<std::size_t>(last_frame_) + 1);
  for (std::size_t i = 0; i < tracks.size(); ++i)
    by_frame_[static_cast<std::size_t>(tracks[i].frame())].push_back(i);
}

std::span<const std::size_t> LinkState::at_frame(int frame) const {
  if (frame < 0 || frame >= static_cast<int>(by_frame_.size())) return {};
  return by_frame_[static_cast<std::size_t>(frame)];
}

void LinkState::link(const Match& match) {
  if (successor_[match.from] >= 0 || predecessor_[match.to] >= 0)
    throw Error("candidate already linked");
  if (tracks_[match.to].frame() <= tracks_[match.from].frame())
    throw Error("link must go forward in time");
  successor_[match.from] = static_cast<std::ptrdiff_t>(match.to);
  predecessor_[match.to] = static_cast<std::ptrdiff_t>(match.from);
  matches_.push_back(match);
}

std::vector<Match> link_pass(LinkState& state, int frame, int delta_t, const LinkerConfig& config) {
  std::vector<std::size_t> row_idx;
  std::vector<std::size_t> col_idx;
  for (std::size_t i : state.at_frame(frame))
    if (!state.has_successor(i)) row_idx.push_back(i);
  for (std::size_t i : state.at_frame(frame + delta_t))
    if (!state.has_predecessor(i)) col_idx.push_back(i);
  if (row_idx.empty() || col_idx.empty()) return {};

  std::vector<const LocalTrack*> rows;
  std::vector<const LocalTrack*> cols;
  for (std::size_t i : row_idx) rows.push_back(&state.tracks()[i]);
  for (std::size_t i : col_idx) cols.push_back(&state.tracks()[i]);

  const SimilarityMatrix mat = build_matrix(rows, cols, delta_t, config);
  const Assignment assignment = hungarian(mat);
  std::vector<Match> out;
  for (const auto& [r, c] : assignment.pairs) {
    const std::size_t from = row_idx[static_cast<std::size_t>(r)];
    const std::size_t to = col_idx[static_cast<std::size_t>(c)];
    const Match m{from, to, delta_t, mat.value(r, c)};
    state.link(m);
    out.push_back(m);
  }
  return out;
}

std::vector<GlobalTrack> link_recording(std::span<const LocalTrack> local_tracks,
                                        const LinkerConfig& config) {
  config.validate();
  for (std::size_t i = 0; i < local_tracks.size(); ++i) {
    if (local_tracks[i].tr() != config.tr) {
      std::ostringstream os;
      os << "local track " << i << " has tracking range " << local_tracks[i].tr()
         << ", expected " << config.tr;
      throw Error(os.str());
    }
  }
  std::vector<GlobalTrack> out;
  if (local_tracks.empty()) return out;

  LinkState state(local_tracks);
  const int max_skip = config.effective_max_skip();
  for (int dt = 1; dt <= max_skip; ++dt)
    for (int t = state.first_frame(); t + dt <= state.last_frame(); ++t)
      link_pass(state, t, dt, config);

  // Chain heads in (frame, input order) receive consecutive ids.
  TrackId next_id = 0;
  for (int t = state.first_frame(); t <= state.last_frame(); ++t) {
    for (std::size_t head : state.at_frame(t)) {
      if (state.has_predecessor(head)) continue;
      GlobalTrack track;
      track.id = next_id++;
      for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(head); i >= 0;
           i = state.successor(static_cast<std::size_t>(i))) {
        const Detection& d = local_tracks[static_cast<std::size_t>(i)].anchor();
        track.entries.emplace(d.frame, TrackEntry{d.mask, Provenance::detected, d.id});
      }
      out.push_back(std::move(track));
    }
  }
  return out;
}

}  // namespace symtrack
