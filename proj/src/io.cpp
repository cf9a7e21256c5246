#include "symtrack/io.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"

namespace symtrack {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

void write_file_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot move '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// PGM

std::string encode_pgm(const Image& img) {
  std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
  return out;
}

Image decode_pgm(const std::string& bytes, const std::string& source) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> Image { throw Error(source + ": " + why); };
  auto skip_space = [&] {
    for (;;) {
      while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
      if (pos < bytes.size() && bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        continue;
      }
      break;
    }
  };
  auto read_int = [&]() -> long {
    skip_space();
    const std::size_t start = pos;
    while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) ++pos;
    if (pos == start) fail("malformed PGM header");
    return std::stol(bytes.substr(start, pos - start));
  };
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') return fail("not a binary PGM (P5)");
  pos = 2;
  const long w = read_int();
  const long h = read_int();
  const long maxval = read_int();
  if (w <= 0 || h <= 0) return fail("non-positive PGM dimensions");
  if (maxval != 255) return fail("only 8-bit PGM (maxval 255) is supported");
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
    return fail("malformed PGM header");
  ++pos;
  const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (bytes.size() - pos != n) return fail("PGM pixel payload has the wrong size");
  Image img(static_cast<int>(w), static_cast<int>(h));
  std::copy(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end(), img.pixels.begin());
  return img;
}

// ---------------------------------------------------------------------------
// Recording

namespace {

const std::regex kPatternRe(R"(^([A-Za-z0-9_.\-]*)%0([1-9])d([A-Za-z0-9_.\-]*)$)");

std::string frame_name(const std::string& pattern, int index) {
  std::smatch m;
  if (!std::regex_match(pattern, m, kPatternRe))
    throw Error("unsupported frame pattern '" + pattern + "'");
  std::string num = std::to_string(index);
  const std::size_t width = static_cast<std::size_t>(std::stoi(m[2].str()));
  if (num.size() < width) num.insert(0, width - num.size(), '0');
  return m[1].str() + num + m[3].str();
}

}  // namespace

void write_recording(const fs::path& dir, const Recording& rec, const std::string& name) {
  if (static_cast<int>(rec.frames.size()) != rec.length)
    throw Error("recording has " + std::to_string(rec.frames.size()) + " frames, length says " +
                std::to_string(rec.length));
  fs::create_directories(dir);
  const std::string pattern = "frame_%05d.pgm";
  for (int i = 0; i < rec.length; ++i) {
    const Image& f = rec.frames[static_cast<std::size_t>(i)];
    if (f.width != rec.width || f.height != rec.height)
      throw Error("frame " + std::to_string(i) + " has the wrong dimensions");
    write_file_atomic(dir / frame_name(pattern, i), encode_pgm(f));
  }
  ojson manifest;
  manifest["format"] = "symtrack.recording";
  manifest["version"] = kFormatVersion;
  manifest["name"] = name;
  manifest["width"] = rec.width;
  manifest["height"] = rec.height;
  manifest["frame_count"] = rec.length;
  manifest["frame_pattern"] = pattern;
  write_file_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
}

Recording read_recording(const fs::path& dir) {
  const fs::path mpath = dir / "manifest.json";
  json m;
  try {
    m = json::parse(read_file(mpath));
  } catch (const json::exception& e) {
    throw Error(mpath.string() + ": " + e.what());
  }
  auto field = [&](const char* key) -> const json& {
    if (!m.contains(key)) throw Error(mpath.string() + ": missing field '" + key + "'");
    return m.at(key);
  };
  if (field("format") != "symtrack.recording") throw Error(mpath.string() + ": wrong format tag");
  if (!field("version").is_number_integer() || field("version").get<int>() != kFormatVersion)
    throw Error(mpath.string() + ": unsupported version " + field("version").dump());
  Recording rec;
  try {
    rec.width = field("width").get<int>();
    rec.height = field("height").get<int>();
    rec.length = field("frame_count").get<int>();
  } catch (const json::exception& e) {
    throw Error(mpath.string() + ": " + e.what());
  }
  if (rec.width <= 0 || rec.height <= 0 || rec.length < 1)
    throw Error(mpath.string() + ": invalid geometry");
  const std::string pattern = field("frame_pattern").get<std::string>();

  std::set<std::string> expected;
  for (int i = 0; i < rec.length; ++i) {
    const std::string name = frame_name(pattern, i);
    expected.insert(name);
    const fs::path p = dir / name;
    if (!fs::exists(p)) throw Error("missing frame file '" + p.string() + "'");
    Image img = decode_pgm(read_file(p), p.string());
    if (img.width != rec.width || img.height != rec.height)
      throw Error("'" + p.string() + "' is " + std::to_string(img.width) + "x" +
                  std::to_string(img.height) + ", manifest says " + std::to_string(rec.width) +
                  "x" + std::to_string(rec.height));
    rec.frames.push_back(std::move(img));
  }
  // Frame files beyond frame_count mean the manifest is stale.
  std::smatch sm;
  std::regex_match(pattern, sm, kPatternRe);
  const std::regex file_re("^" + std::regex_replace(sm[1].str(), std::regex(R"([.\-])"), R"(\$&)") +
                           "[0-9]+" +
                           std::regex_replace(sm[3].str(), std::regex(R"([.\-])"), R"(\$&)") + "$");
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string fname = entry.path().filename().string();
    if (std::regex_match(fname, file_re) && !expected.count(fname))
      throw Error("frame file '" + entry.path().string() + "' not covered by frame_count " +
                  std::to_string(rec.length));
  }
  return rec;
}

// ---------------------------------------------------------------------------
// NDJSON records

namespace {

ojson mask_to_json(const Mask& m) {
  ojson runs = ojson::array();
  for (const Run& r : m.runs()) runs.push_back(ojson::array({r.row, r.start, r.length}));
  return runs;
}

ojson header_json(const char* kind, const GridInfo& g) {
  ojson h;
  h["format"] = std::string("symtrack.") + kind;
  h["version"] = kFormatVersion;
  h["width"] = g.width;
  h["height"] = g.height;
  h["frames"] = g.frames;
  return h;
}

// Parsing context that produces "source:line: field 'path': message" errors.
struct Ctx {
  const std::string& source;
  std::size_t line;
  std::size_t record;

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    std::ostringstream os;
    os << source << ":" << line << ": record " << record;
    if (!path.empty()) os << ", field '" << path << "'";
    os << ": " << msg;
    throw Error(os.str());
  }

  const json& get(const json& obj, const std::string& key, const std::string& path) const {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
    return *it;
  }

  std::int64_t integer(const json& v, const std::string& path) const {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<std::int64_t>();
  }

  int int32(const json& v, const std::string& path) const {
    const std::int64_t x = integer(v, path);
    if (x < INT32_MIN || x > INT32_MAX) fail(path, "integer out of range");
    return static_cast<int>(x);
  }

  Mask mask(const json& v, const GridInfo& g, const std::string& path) const {
    if (!v.is_array()) fail(path, "expected an array of [row, start, length] runs");
    std::vector<Run> runs;
    runs.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string p = path + "[" + std::to_string(i) + "]";
      const json& r = v[i];
      if (!r.is_array() || r.size() != 3) fail(p, "expected [row, start, length]");
      runs.push_back({int32(r[0], p + "[0]"), int32(r[1], p + "[1]"), int32(r[2], p + "[2]")});
    }
    try {
      return Mask::from_canonical_runs(g.width, g.height, std::move(runs));
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& path) const {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || it.key() == a;
      if (!ok) fail(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
    }
  }
};

struct Lines {
  GridInfo grid;
  bool empty = true;
  json header;
  std::vector<std::pair<std::size_t, json>> records;  // (line number, record)
};

Lines read_lines(std::istream& in, const std::string& source, const char* kind) {
  Lines out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json v;
    try {
      v = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(source + ":" + std::to_string(lineno) + ": invalid JSON: " + e.what());
    }
    if (out.empty) {
      out.empty = false;
      const Ctx c{source, lineno, 0};
      const std::string tag = std::string("symtrack.") + kind;
      const json& fmt = c.get(v, "format", "");
      if (!fmt.is_string() || fmt.get<std::string>() != tag)
        c.fail("format", "expected \"" + tag + "\"");
      const std::int64_t ver = c.integer(c.get(v, "version", ""), "version");
      if (ver != kFormatVersion) c.fail("version", "unsupported version " + std::to_string(ver));
      out.grid.width = c.int32(c.get(v, "width", ""), "width");
      out.grid.height = c.int32(c.get(v, "height", ""), "height");
      out.grid.frames = c.int32(c.get(v, "frames", ""), "frames");
      if (out.grid.width <= 0 || out.grid.height <= 0 || out.grid.frames < 1)
        c.fail("", "header geometry must be positive");
      out.header = std::move(v);
      continue;
    }
    out.records.emplace_back(lineno, std::move(v));
  }
  return out;
}

void check_frame(const Ctx& c, int frame, const GridInfo& g, const std::string& path) {
  if (frame < 0 || frame >= g.frames)
    c.fail(path, "frame " + std::to_string(frame) + " outside [0, " + std::to_string(g.frames) + ")");
}

}  // namespace

std::string serialize_detections(const DetectionSet& set) {
  std::string out = header_json("detections", set.grid).dump() + "\n";
  for (const Detection& d : set.detections) {
    ojson r;
    r["id"] = d.id;
    r["frame"] = d.frame;
    r["mask"] = mask_to_json(d.mask);
    out += r.dump();
    out += '\n';
  }
  return out;
}

DetectionSet parse_detections(std::istream& in, const std::string& source) {
  Lines lines = read_lines(in, source, "detections");
  DetectionSet set;
  set.grid = lines.grid;
  std::set<DetectionId> ids;
  for (std::size_t k = 0; k < lines.records.size(); ++k) {
    const auto& [lineno, v] = lines.records[k];
    const Ctx c{source, lineno, k};
    c.check_keys(v, {"id", "frame", "mask"}, "");
    Detection d;
    d.id = c.integer(c.get(v, "id", ""), "id");
    d.frame = c.int32(c.get(v, "frame", ""), "frame");
    check_frame(c, d.frame, set.grid, "frame");
    d.mask = c.mask(c.get(v, "mask", ""), set.grid, "mask");
    if (d.mask.empty()) c.fail("mask", "detection mask is empty");
    if (!ids.insert(d.id).second) c.fail("id", "duplicate detection id");
    set.detections.push_back(std::move(d));
  }
  return set;
}

std::string serialize_local_tracks(const LocalTrackSet& set) {
  std::string out = header_json("local_tracks", set.grid).dump() + "\n";
  for (const LocalTrack& lt : set.tracks) {
    ojson r;
    r["anchor_id"] = lt.anchor().id;
    r["anchor_frame"] = lt.frame();
    r["tr"] = lt.tr();
    ojson window = ojson::array();
    for (const Mask& m : lt.window()) window.push_back(m.empty() ? ojson(nullptr) : mask_to_json(m));
    r["window"] = std::move(window);
    out += r.dump();
    out += '\n';
  }
  return out;
}

LocalTrackSet parse_local_tracks(std::istream& in, const std::string& source) {
  Lines lines = read_lines(in, source, "local_tracks");
  LocalTrackSet set;
  set.grid = lines.grid;
  int tr_seen = 0;
  for (std::size_t k = 0; k < lines.records.size(); ++k) {
    const auto& [lineno, v] = lines.records[k];
    const Ctx c{source, lineno, k};
    c.check_keys(v, {"anchor_id", "anchor_frame", "tr", "window"}, "");
    const DetectionId id = c.integer(c.get(v, "anchor_id", ""), "anchor_id");
    const int frame = c.int32(c.get(v, "anchor_frame", ""), "anchor_frame");
    check_frame(c, frame, set.grid, "anchor_frame");
    const int tr = c.int32(c.get(v, "tr", ""), "tr");
    if (tr < 1) c.fail("tr", "tracking range must be >= 1");
    if (tr_seen == 0) tr_seen = tr;
    if (tr != tr_seen)
      c.fail("tr", "inconsistent tracking range " + std::to_string(tr) + " (file uses " +
                       std::to_string(tr_seen) + ")");
    const json& w = c.get(v, "window", "");
    if (!w.is_array() || w.size() != static_cast<std::size_t>(2 * tr + 1))
      c.fail("window", "expected an array of " + std::to_string(2 * tr + 1) + " entries");
    std::vector<Mask> window;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const std::string p = "window[" + std::to_string(i) + "]";
      window.push_back(w[i].is_null() ? Mask(set.grid.width, set.grid.height)
                                      : c.mask(w[i], set.grid, p));
    }
    Mask anchor_mask = window[static_cast<std::size_t>(tr)];
    if (anchor_mask.empty()) c.fail("window[" + std::to_string(tr) + "]", "anchor entry is empty");
    try {
      set.tracks.emplace_back(Detection{frame, std::move(anchor_mask), id}, tr, std::move(window));
    } catch (const Error& e) {
      c.fail("window", e.what());
    }
  }
  return set;
}

std::string serialize_global_tracks(const GlobalTrackSet& set) {
  ojson header = header_json("global_tracks", set.grid);
  header["gap_free"] = set.gap_free;
  std::string out = header.dump() + "\n";
  for (const GlobalTrack& t : set.tracks) {
    if (set.gap_free && !t.contiguous())
      throw Error("track " + std::to_string(t.id) + " has gaps but the set is marked gap_free");
    ojson r;
    r["id"] = t.id;
    ojson entries = ojson::array();
    for (const auto& [frame, e] : t.entries) {
      ojson je;
      je["frame"] = frame;
      je["provenance"] = e.provenance == Provenance::detected ? "detected" : "interpolated";
      if (e.detection) je["detection_id"] = *e.detection;
      je["mask"] = mask_to_json(e.mask);
      entries.push_back(std::move(je));
    }
    r["entries"] = std::move(entries);
    out += r.dump();
    out += '\n';
  }
  return out;
}

GlobalTrackSet parse_global_tracks(std::istream& in, const std::string& source) {
  Lines lines = read_lines(in, source, "global_tracks");
  GlobalTrackSet set;
  set.grid = lines.grid;
  if (!lines.empty) {
    const Ctx c{source, 1, 0};
    const json& gf = c.get(lines.header, "gap_free", "");
    if (!gf.is_boolean()) c.fail("gap_free", "expected a boolean");
    set.gap_free = gf.get<bool>();
  }
  std::set<TrackId> ids;
  std::set<DetectionId> dets;
  for (std::size_t k = 0; k < lines.records.size(); ++k) {
    const auto& [lineno, v] = lines.records[k];
    const Ctx c{source, lineno, k};
    c.check_keys(v, {"id", "entries"}, "");
    GlobalTrack t;
    t.id = c.integer(c.get(v, "id", ""), "id");
    if (!ids.insert(t.id).second) c.fail("id", "duplicate track id");
    const json& es = c.get(v, "entries", "");
    if (!es.is_array() || es.empty()) c.fail("entries", "expected a non-empty array");
    int prev = -1;
    for (std::size_t i = 0; i < es.size(); ++i) {
      const std::string p = "entries[" + std::to_string(i) + "]";
      const json& e = es[i];
      c.check_keys(e, {"frame", "provenance", "detection_id", "mask"}, p);
      const int frame = c.int32(c.get(e, "frame", p), p + ".frame");
      check_frame(c, frame, set.grid, p + ".frame");
      if (frame <= prev) c.fail(p + ".frame", "frames must be strictly increasing");
      prev = frame;
      const json& pv = c.get(e, "provenance", p);
      TrackEntry entry;
      if (pv == "detected") {
        entry.provenance = Provenance::detected;
        const std::int64_t did = c.integer(c.get(e, "detection_id", p), p + ".detection_id");
        if (!dets.insert(did).second) c.fail(p + ".detection_id", "detection used twice");
        entry.detection = did;
      } else if (pv == "interpolated") {
        entry.provenance = Provenance::interpolated;
        if (e.contains("detection_id")) c.fail(p + ".detection_id", "interpolated entries have no detection");
      } else {
        c.fail(p + ".provenance", "expected \"detected\" or \"interpolated\"");
      }
      entry.mask = c.mask(c.get(e, "mask", p), set.grid, p + ".mask");
      t.entries.emplace(frame, std::move(entry));
    }
    if (set.gap_free && !t.contiguous()) c.fail("entries", "track has gaps in a gap_free set");
    set.tracks.push_back(std::move(t));
  }
  return set;
}

namespace {

template <typename Parse>
auto read_with(const fs::path& path, Parse parse) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  return parse(in, path.string());
}

}  // namespace

DetectionSet read_detections(const fs::path& path) {
  return read_with(path, [](std::istream& in, const std::string& s) { return parse_detections(in, s); });
}

LocalTrackSet read_local_tracks(const fs::path& path) {
  return read_with(path, [](std::istream& in, const std::string& s) { return parse_local_tracks(in, s); });
}

GlobalTrackSet read_global_tracks(const fs::path& path) {
  return read_with(path, [](std::istream& in, const std::string& s) { return parse_global_tracks(in, s); });
}

std::string report_to_json(const EvalReport& report) {
  auto tally = [](const Tally& t) {
    ojson j;
    j["tp"] = t.tp;
    j["fp"] = t.fp;
    j["fn"] = t.fn;
    j["precision"] = t.precision();
    j["recall"] = t.recall();
    j["f"] = t.f();
    return j;
  };
  ojson j;
  j["segmentation"] = tally(report.segmentation);
  j["tracking"] = tally(report.tracking);
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Simulator config

namespace {

template <typename F>
void for_each_sim_field(F&& f) {
  f("width", &SimConfig::width);
  f("height", &SimConfig::height);
  f("frames", &SimConfig::frames);
  f("n_objects", &SimConfig::n_objects);
  f("seed", &SimConfig::seed);
  f("render", &SimConfig::render);
  f("background_bumps", &SimConfig::background_bumps);
  f("background_peak", &SimConfig::background_peak);
  f("noise_peak", &SimConfig::noise_peak);
  f("min_object_brightness", &SimConfig::min_object_brightness);
  f("speed_to_size", &SimConfig::speed_to_size);
  f("arrow_min_diameter", &SimConfig::arrow_min_diameter);
  f("arrow_max_diameter", &SimConfig::arrow_max_diameter);
  f("max_size_ratio", &SimConfig::max_size_ratio);
  f("arrow_max_rotation_deg", &SimConfig::arrow_max_rotation_deg);
  f("expand_probability", &SimConfig::expand_probability);
  f("expand_min", &SimConfig::expand_min);
  f("expand_max", &SimConfig::expand_max);
  f("amoeboid_min_radius", &SimConfig::amoeboid_min_radius);
  f("amoeboid_max_radius", &SimConfig::amoeboid_max_radius);
  f("initial_noise", &SimConfig::initial_noise);
  f("shape_step", &SimConfig::shape_step);
  f("shape_sigma", &SimConfig::shape_sigma);
  f("min_radius_factor", &SimConfig::min_radius_factor);
  f("max_radius_factor", &SimConfig::max_radius_factor);
  f("damping", &SimConfig::damping);
  f("center_acceleration", &SimConfig::center_acceleration);
  f("blur_kernel", &SimConfig::blur_kernel);
  f("canny_low", &SimConfig::canny_low);
  f("canny_high", &SimConfig::canny_high);
  f("artifact_lines", &SimConfig::artifact_lines);
  f("max_spawn_attempts", &SimConfig::max_spawn_attempts);
}

template <typename F>
void for_each_perlin_field(F&& f) {
  f("n_points", &PerlinParams::n_points);
  f("octaves", &PerlinParams::octaves);
  f("persistence", &PerlinParams::persistence);
  f("lacunarity", &PerlinParams::lacunarity);
  f("base_cells", &PerlinParams::base_cells);
}

}  // namespace

SimConfig sim_config_from_json(const std::string& text, SimConfig base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("simulator config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error("simulator config must be a JSON object");
  std::set<std::string> known{"kind", "perlin"};
  for_each_sim_field([&](const char* key, auto) { known.insert(key); });
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw Error("simulator config: unknown key '" + it.key() + "'");
  try {
    if (j.contains("kind")) base.kind = parse_sim_kind(j.at("kind").get<std::string>());
    for_each_sim_field([&](const char* key, auto member) {
      if (j.contains(key)) j.at(key).get_to(base.*member);
    });
    if (j.contains("perlin")) {
      const json& p = j.at("perlin");
      if (!p.is_object()) throw Error("simulator config: 'perlin' must be an object");
      for (auto it = p.begin(); it != p.end(); ++it) {
        bool ok = false;
        for_each_perlin_field([&](const char* key, auto) { ok = ok || it.key() == key; });
        if (!ok) throw Error("simulator config: unknown key 'perlin." + it.key() + "'");
      }
      for_each_perlin_field([&](const char* key, auto member) {
        if (p.contains(key)) p.at(key).get_to(base.perlin.*member);
      });
    }
  } catch (const json::exception& e) {
    throw Error(std::string("simulator config: ") + e.what());
  }
  base.validate();
  return base;
}

std::string sim_config_to_json(const SimConfig& config) {
  ojson j;
  j["kind"] = to_string(config.kind);
  for_each_sim_field([&](const char* key, auto member) { j[key] = config.*member; });
  ojson p;
  for_each_perlin_field([&](const char* key, auto member) { p[key] = config.perlin.*member; });
  j["perlin"] = std::move(p);
  return j.dump(2) + "\n";
}

}  // namespace symtrack
