#include "symtrack/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "symtrack/random.hpp"
#include "symtrack/raster.hpp"

namespace symtrack {

namespace {

double parse_rate(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  const auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      const double num = std::stod(s.substr(0, slash), &used);
      if (used != slash) throw Error("");
      const std::string den_s = s.substr(slash + 1);
      const double den = std::stod(den_s, &used);
      if (used != den_s.size() || den == 0.0) throw Error("");
      v = num / den;
    } else {
      v = std::stod(s, &used);
      if (used != s.size()) throw Error("");
    }
  } catch (const std::exception&) {
    throw Error("invalid dropout rate '" + s + "'");
  }
  return v;
}

}  // namespace

DropoutSpec DropoutSpec::parse(const std::string& text) {
  DropoutSpec spec;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.empty()) throw Error("empty dropout spec");
  if (parts[0] == "none" && parts.size() == 1) return spec;
  if (parts[0] == "uniform" && parts.size() == 2) {
    spec.kind = DropoutKind::uniform;
    spec.rate = parse_rate(parts[1]);
  } else if (parts[0] == "box" && (parts.size() == 2 || parts.size() == 3)) {
    spec.kind = DropoutKind::box;
    spec.rate = parse_rate(parts[1]);
    if (parts.size() == 3) {
      try {
        std::size_t used = 0;
        spec.block_len = std::stoi(parts[2], &used);
        if (used != parts[2].size()) throw Error("");
      } catch (const std::exception&) {
        throw Error("invalid box block length '" + parts[2] + "'");
      }
    }
  } else {
    throw Error("invalid dropout spec '" + text + "' (expected none | uniform:R | box:R:L)");
  }
  spec.validate();
  return spec;
}

std::string DropoutSpec::to_string() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case DropoutKind::none: return "none";
    case DropoutKind::uniform: os << "uniform:" << rate; break;
    case DropoutKind::box: os << "box:" << rate << ":" << block_len; break;
  }
  return os.str();
}

void DropoutSpec::validate() const {
  if (!(rate >= 0.0 && rate <= 1.0)) throw Error("dropout rate outside [0, 1]");
  if (block_len < 1) throw Error("box block length must be >= 1");
  if (kind == DropoutKind::box && rate >= 1.0) throw Error("box dropout rate must be < 1");
}

void PerturbConfig::validate() const {
  if (!(window_miss_p >= 0.0 && window_miss_p <= 1.0)) throw Error("miss probability outside [0, 1]");
  if (jitter_px < 0) throw Error("jitter must be >= 0");
  if (boundary_erode_dilate < 0) throw Error("erode/dilate radius must be >= 0");
}

namespace {

// Per-track removal flags for box dropout. Blocks never touch, so every
// removed run is at most block_len long.
std::vector<std::vector<bool>> draw_boxes(std::span<const GlobalTrack> gt, const DropoutSpec& d,
                                          Rng& rng) {
  // Renewal process: wait W ~ Geometric(q) kept frames, remove a block, keep
  // one separator frame. Long-run removed fraction = L / ((1-q)/q + L + 1).
  const double L = d.block_len;
  const double wait = L / d.rate - L - 1.0;
  const double q = d.rate <= 0.0 ? 0.0 : (wait <= 0.0 ? 1.0 : 1.0 / (wait + 1.0));
  std::vector<std::vector<bool>> removed;
  for (const GlobalTrack& t : gt) {
    std::vector<bool> flags(t.entries.size(), false);
    std::size_t i = 0;
    while (i < flags.size()) {
      if (q > 0.0 && rng.bernoulli(q)) {
        const std::size_t end = std::min(flags.size(), i + static_cast<std::size_t>(d.block_len));
        for (std::size_t k = i; k < end; ++k) flags[k] = true;
        i = end + 1;
      } else {
        ++i;
      }
    }
    removed.push_back(std::move(flags));
  }
  return removed;
}

}  // namespace

std::vector<Detection> detections_from_gt(std::span<const GlobalTrack> gt, const DropoutSpec& dropout,
                                          std::uint64_t seed) {
  dropout.validate();
  Rng rng(derive_seed(seed, 0xd509));
  std::vector<std::vector<bool>> removed;
  std::size_t total = 0;
  for (const GlobalTrack& t : gt) total += t.entries.size();

  if (dropout.kind == DropoutKind::uniform) {
    for (const GlobalTrack& t : gt) {
      std::vector<bool> flags(t.entries.size());
      for (std::size_t k = 0; k < flags.size(); ++k) flags[k] = rng.bernoulli(dropout.rate);
      removed.push_back(std::move(flags));
    }
  } else if (dropout.kind == DropoutKind::box) {
    constexpr int kMaxDraws = 1000;
    double best_err = 2.0;
    for (int draw = 0; draw < kMaxDraws; ++draw) {
      auto flags = draw_boxes(gt, dropout, rng);
      std::size_t n = 0;
      for (const auto& f : flags) n += static_cast<std::size_t>(std::count(f.begin(), f.end(), true));
      const double frac = total ? static_cast<double>(n) / static_cast<double>(total) : 0.0;
      const double err = std::abs(frac - dropout.rate);
      if (err < best_err) {
        best_err = err;
        removed = std::move(flags);
      }
      if (err <= 0.1 * dropout.rate) break;
    }
  } else {
    for (const GlobalTrack& t : gt) removed.emplace_back(t.entries.size(), false);
  }

  std::vector<std::pair<std::pair<int, std::size_t>, Detection>> keyed;
  for (std::size_t ti = 0; ti < gt.size(); ++ti) {
    std::size_t k = 0;
    for (const auto& [frame, entry] : gt[ti].entries) {
      if (!removed[ti][k++]) {
        if (!entry.detection) throw Error("ground-truth entry without a detection id");
        keyed.push_back({{frame, ti}, Detection{frame, entry.mask, *entry.detection}});
      }
    }
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Detection> out;
  out.reserve(keyed.size());
  for (auto& [key, det] : keyed) out.push_back(std::move(det));
  return out;
}

std::vector<LocalTrack> local_tracks_from_gt(std::span<const Detection> detections,
                                             std::span<const GlobalTrack> gt, int tr,
                                             int recording_length, const PerturbConfig& perturb,
                                             std::uint64_t seed) {
  perturb.validate();
  std::unordered_map<DetectionId, std::size_t> owner;
  for (std::size_t ti = 0; ti < gt.size(); ++ti)
    for (const auto& [frame, entry] : gt[ti].entries)
      if (entry.detection) owner.emplace(*entry.detection, ti);

  std::vector<LocalTrack> out;
  out.reserve(detections.size());
  for (const Detection& det : detections) {
    auto it = owner.find(det.id);
    if (it == owner.end()) {
      std::ostringstream os;
      os << "detection " << det.id << " on frame " << det.frame << " is not on any ground-truth track";
      throw Error(os.str());
    }
    const GlobalTrack& track = gt[it->second];
    const auto slots = window_frames(det.frame, tr, recording_length);
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(det.id)));

    // Perturbed prediction per distinct (unpadded) frame.
    std::map<int, Mask> by_frame;
    for (const WindowSlot& s : slots) {
      if (s.padding) continue;
      if (s.offset == 0) {
        by_frame.emplace(s.frame, det.mask);
        continue;
      }
      auto e = track.entries.find(s.frame);
      Mask m = e == track.entries.end() ? Mask(det.mask.width(), det.mask.height()) : e->second.mask;
      // Draw every random number regardless of branch to keep streams aligned.
      const bool may_miss =
          perturb.miss_offsets.empty() ||
          std::find(perturb.miss_offsets.begin(), perturb.miss_offsets.end(), std::abs(s.offset)) !=
              perturb.miss_offsets.end();
      const bool miss = rng.bernoulli(perturb.window_miss_p) && may_miss;
      int dx = 0;
      int dy = 0;
      if (perturb.jitter_px > 0) {
        do {
          dx = static_cast<int>(rng.uniform_int(-perturb.jitter_px, perturb.jitter_px));
          dy = static_cast<int>(rng.uniform_int(-perturb.jitter_px, perturb.jitter_px));
        } while (dx == 0 && dy == 0);
      }
      const int morph_r = perturb.boundary_erode_dilate > 0
                              ? static_cast<int>(rng.uniform_int(-perturb.boundary_erode_dilate,
                                                                 perturb.boundary_erode_dilate))
                              : 0;
      if (miss) {
        m = Mask(det.mask.width(), det.mask.height());
      } else {
        if (morph_r != 0) m = morph(m, morph_r);
        if (dx != 0 || dy != 0) m = shift(m, dx, dy);
      }
      by_frame.emplace(s.frame, std::move(m));
    }
    std::vector<Mask> window;
    window.reserve(slots.size());
    for (const WindowSlot& s : slots) window.push_back(by_frame.at(s.frame));
    out.emplace_back(det, tr, std::move(window));
  }
  return out;
}

std::vector<GlobalTrack> disrupted_tracks(std::span<const GlobalTrack> gt,
                                          std::span<const Detection> detections) {
  std::set<DetectionId> alive;
  for (const Detection& d : detections) alive.insert(d.id);
  std::vector<GlobalTrack> out;
  for (const GlobalTrack& t : gt) {
    GlobalTrack kept{t.id, {}};
    for (const auto& [frame, entry] : t.entries)
      if (entry.detection && alive.count(*entry.detection)) kept.entries.emplace(frame, entry);
    if (!kept.entries.empty()) out.push_back(std::move(kept));
  }
  return out;
}

}  // namespace symtrack
