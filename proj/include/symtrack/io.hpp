#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "symtrack/evaluator.hpp"
#include "symtrack/simulator.hpp"
#include "symtrack/track_model.hpp"

// File formats
// ------------
// Coordinates: x = column, y = row, origin at the top-left pixel.
// Masks: JSON array of [row, start_col, length] triples in canonical order.
//
// Recording directory:
//   manifest.json  {"format":"symtrack.recording","version":1,"name":..,
//                   "width":..,"height":..,"frame_count":..,
//                   "frame_pattern":"frame_%05d.pgm"}
//   frame_00000.pgm ...  binary 8-bit PGM (P5, maxval 255), one per frame.
//
// Record files are newline-delimited JSON. Line 1 is a header
//   {"format":"symtrack.<kind>","version":1,"width":W,"height":H,"frames":L}
// followed by one record per line. An empty file is an empty set.
//   detections:    {"id":..,"frame":..,"mask":[...]}
//   local_tracks:  {"anchor_id":..,"anchor_frame":..,"tr":..,
//                   "window":[mask|null, ... 2*tr+1 entries]}   (null = empty)
//   global_tracks: {"id":..,"entries":[{"frame":..,"provenance":
//                   "detected"|"interpolated","detection_id":..?,"mask":[...]}]}
//                  header also carries "gap_free": bool; when true every
//                  track must cover a contiguous frame range.

namespace symtrack {

inline constexpr int kFormatVersion = 1;

struct GridInfo {
  int width = 0;
  int height = 0;
  int frames = 0;

  friend bool operator==(const GridInfo&, const GridInfo&) = default;
};

struct DetectionSet {
  GridInfo grid;
  std::vector<Detection> detections;
};

struct LocalTrackSet {
  GridInfo grid;
  std::vector<LocalTrack> tracks;
};

struct GlobalTrackSet {
  GridInfo grid;
  std::vector<GlobalTrack> tracks;
  bool gap_free = false;
};

/// Writes `content` to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

std::string encode_pgm(const Image& img);
/// Throws Error naming `source` on malformed data.
Image decode_pgm(const std::string& bytes, const std::string& source = "<memory>");

/// Writes manifest.json and the frame files into `dir` (created if needed).
void write_recording(const std::filesystem::path& dir, const Recording& rec,
                     const std::string& name = "recording");
Recording read_recording(const std::filesystem::path& dir);

std::string serialize_detections(const DetectionSet& set);
DetectionSet parse_detections(std::istream& in, const std::string& source = "<stream>");

std::string serialize_local_tracks(const LocalTrackSet& set);
LocalTrackSet parse_local_tracks(std::istream& in, const std::string& source = "<stream>");

/// Throws Error if gap_free is set and a track has holes.
std::string serialize_global_tracks(const GlobalTrackSet& set);
GlobalTrackSet parse_global_tracks(std::istream& in, const std::string& source = "<stream>");

DetectionSet read_detections(const std::filesystem::path& path);
LocalTrackSet read_local_tracks(const std::filesystem::path& path);
GlobalTrackSet read_global_tracks(const std::filesystem::path& path);

std::string report_to_json(const EvalReport& report);

/// Overrides defaults of `base` from a JSON object; unknown keys are errors.
SimConfig sim_config_from_json(const std::string& text, SimConfig base = {});
std::string sim_config_to_json(const SimConfig& config);

}  // namespace symtrack
