#include "symtrack/evaluator.hpp"

#include <map>
#include <set>
#include <tuple>

#include "symtrack/assignment.hpp"

namespace symtrack {

double Tally::precision() const {
  return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double Tally::recall() const {
  return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double Tally::f() const {
  // 2PR/(P+R) written over the integer tallies so exact ratios stay exact.
  const std::int64_t denom = 2 * tp + fp + fn;
  return tp == 0 ? 0.0 : static_cast<double>(2 * tp) / static_cast<double>(denom);
}

FrameMatch match_frame(std::span<const Mask* const> pred, std::span<const Mask* const> gt,
                       double iou_min) {
  FrameMatch out;
  SimilarityMatrix mat(static_cast<int>(pred.size()), static_cast<int>(gt.size()));
  for (std::size_t p = 0; p < pred.size(); ++p) {
    for (std::size_t g = 0; g < gt.size(); ++g) {
      const double v = iou(*pred[p], *gt[g]);
      mat.set(static_cast<int>(p), static_cast<int>(g), v, v > 0.0 && v >= iou_min);
    }
  }
  out.pairs = hungarian(mat).pairs;
  out.tally.tp = static_cast<std::int64_t>(out.pairs.size());
  out.tally.fp = static_cast<std::int64_t>(pred.size()) - out.tally.tp;
  out.tally.fn = static_cast<std::int64_t>(gt.size()) - out.tally.tp;
  return out;
}

namespace {

struct Occurrence {
  std::size_t track;  // index into the track span
  const Mask* mask;
};

std::map<int, std::vector<Occurrence>> by_frame(std::span<const GlobalTrack> tracks) {
  std::map<int, std::vector<Occurrence>> frames;
  for (std::size_t i = 0; i < tracks.size(); ++i)
    for (const auto& [frame, entry] : tracks[i].entries)
      frames[frame].push_back({i, &entry.mask});
  return frames;
}

// For every frame, maps (pred track index) -> matched gt track index.
std::map<int, std::map<std::size_t, std::size_t>> frame_matches(
    std::span<const GlobalTrack> pred, std::span<const GlobalTrack> gt, double iou_min,
    Tally* seg) {
  auto pf = by_frame(pred);
  auto gf = by_frame(gt);
  std::set<int> frames;
  for (const auto& [f, v] : pf) frames.insert(f);
  for (const auto& [f, v] : gf) frames.insert(f);

  std::map<int, std::map<std::size_t, std::size_t>> out;
  for (int f : frames) {
    const auto& po = pf[f];
    const auto& go = gf[f];
    std::vector<const Mask*> pm;
    std::vector<const Mask*> gm;
    for (const auto& o : po) pm.push_back(o.mask);
    for (const auto& o : go) gm.push_back(o.mask);
    const FrameMatch fm = match_frame(pm, gm, iou_min);
    if (seg) *seg += fm.tally;
    auto& dst = out[f];
    for (const auto& [p, g] : fm.pairs)
      dst.emplace(po[static_cast<std::size_t>(p)].track, go[static_cast<std::size_t>(g)].track);
  }
  return out;
}

}  // namespace

Tally segmentation_f(std::span<const GlobalTrack> pred, std::span<const GlobalTrack> gt,
                     double iou_min) {
  Tally t;
  frame_matches(pred, gt, iou_min, &t);
  return t;
}

std::vector<Link> extract_links(std::span<const GlobalTrack> tracks) {
  std::vector<Link> links;
  for (const GlobalTrack& t : tracks) {
    const int* prev = nullptr;
    for (const auto& [frame, entry] : t.entries) {
      if (prev) links.push_back({t.id, *prev, frame});
      prev = &frame;
    }
  }
  return links;
}

namespace {

Tally link_tally(std::span<const GlobalTrack> pred, std::span<const GlobalTrack> gt,
                 const std::map<int, std::map<std::size_t, std::size_t>>& matches) {
  // Ground-truth links keyed by (gt track index, frame_a, frame_b).
  std::set<std::tuple<std::size_t, int, int>> gt_links;
  std::int64_t n_gt = 0;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    const int* prev = nullptr;
    for (const auto& [frame, entry] : gt[i].entries) {
      if (prev) {
        gt_links.emplace(i, *prev, frame);
        ++n_gt;
      }
      prev = &frame;
    }
  }
  auto matched_gt = [&](int frame, std::size_t p) -> std::ptrdiff_t {
    auto f = matches.find(frame);
    if (f == matches.end()) return -1;
    auto m = f->second.find(p);
    return m == f->second.end() ? -1 : static_cast<std::ptrdiff_t>(m->second);
  };

  Tally t;
  std::int64_t n_pred = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const int* prev = nullptr;
    for (const auto& [frame, entry] : pred[i].entries) {
      if (prev) {
        ++n_pred;
        const std::ptrdiff_t ga = matched_gt(*prev, i);
        const std::ptrdiff_t gb = matched_gt(frame, i);
        if (ga >= 0 && ga == gb && gt_links.count({static_cast<std::size_t>(ga), *prev, frame}))
          ++t.tp;
      }
      prev = &frame;
    }
  }
  t.fp = n_pred - t.tp;
  t.fn = n_gt - t.tp;
  return t;
}

}  // namespace

Tally tracking_f(std::span<const GlobalTrack> pred, std::span<const GlobalTrack> gt,
                 double iou_min) {
  return link_tally(pred, gt, frame_matches(pred, gt, iou_min, nullptr));
}

EvalReport evaluate(std::span<const GlobalTrack> pred, std::span<const GlobalTrack> gt,
                    double iou_min) {
  EvalReport r;
  const auto matches = frame_matches(pred, gt, iou_min, &r.segmentation);
  r.tracking = link_tally(pred, gt, matches);
  return r;
}

bool touches_border(const BoundingBox& box, int width, int height, int margin) {
  if (box.empty()) return false;
  return box.x0 <= margin || box.y0 <= margin || box.x1 >= width - 1 - margin ||
         box.y1 >= height - 1 - margin;
}

std::vector<GlobalTrack> filter_border_tracks(std::span<const GlobalTrack> tracks, int width,
                                              int height, int recording_length, int margin) {
  if (margin < 0) throw Error("border margin must be >= 0");
  std::vector<GlobalTrack> kept;
  for (const GlobalTrack& t : tracks) {
    if (t.entries.empty()) continue;
    const bool exits =
        t.last_frame() < recording_length - 1 &&
        touches_border(bounding_box(t.entries.rbegin()->second.mask), width, height, margin);
    if (!exits) kept.push_back(t);
  }
  return kept;
}

}  // namespace symtrack
