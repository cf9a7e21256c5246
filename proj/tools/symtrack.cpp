// symtrack command-line tool.
//
//   symtrack simulate --kind amoeboids --frames 100 --objects 10 --seed 1 --out rec/
//   symtrack oracle   --gt rec/ground_truth.ndjson --tr 4 --dropout uniform:1/5 --out lt.ndjson
//   symtrack link     --in lt.ndjson --tr 4 --out tracks.ndjson
//   symtrack evaluate --pred tracks.ndjson --gt rec/ground_truth.ndjson
//   symtrack ablate   --tr 1,4,7 --dropout box:1/5:7 --out table.json

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "symtrack/io.hpp"
#include "symtrack/oracle.hpp"
#include "symtrack/pipeline.hpp"

namespace fs = std::filesystem;
using namespace symtrack;

namespace {

void write_or_print(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-")
    std::cout << content;
  else
    write_file_atomic(out, content);
}

struct SimulateArgs {
  std::string kind = "amoeboids";
  int frames = 100;
  int objects = 10;
  int width = 512;
  int height = 512;
  std::uint64_t seed = 0;
  std::string config;
  std::string out;
  bool no_frames = false;
};

int run_simulate(const SimulateArgs& a, const CLI::App& cmd) {
  SimConfig config;
  if (!a.config.empty()) config = sim_config_from_json(read_file(a.config));
  // Flags given on the command line win over the config file.
  const bool from_file = !a.config.empty();
  if (!from_file || cmd.count("--kind")) config.kind = parse_sim_kind(a.kind);
  if (!from_file || cmd.count("--frames")) config.frames = a.frames;
  if (!from_file || cmd.count("--objects")) config.n_objects = a.objects;
  if (!from_file || cmd.count("--width")) config.width = a.width;
  if (!from_file || cmd.count("--height")) config.height = a.height;
  if (!from_file || cmd.count("--seed")) config.seed = a.seed;
  config.render = !a.no_frames;
  config.validate();

  const SimResult result = simulate(config);
  const fs::path dir(a.out);
  if (config.render) write_recording(dir, result.recording, dir.filename().string());
  GlobalTrackSet gt{{config.width, config.height, config.frames}, result.ground_truth, true};
  write_file_atomic(dir / "ground_truth.ndjson", serialize_global_tracks(gt));
  write_file_atomic(dir / "sim_config.json", sim_config_to_json(config));
  return 0;
}

struct OracleArgs {
  std::string gt;
  int tr = 4;
  std::string dropout = "none";
  double miss_p = 0.0;
  int jitter = 0;
  int erode_dilate = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string detections_out;
};

int run_oracle(const OracleArgs& a) {
  const DropoutSpec dropout = DropoutSpec::parse(a.dropout);
  PerturbConfig perturb;
  perturb.window_miss_p = a.miss_p;
  perturb.jitter_px = a.jitter;
  perturb.boundary_erode_dilate = a.erode_dilate;
  perturb.validate();
  if (a.tr < 1) throw Error("--tr must be >= 1");

  const GlobalTrackSet gt = read_global_tracks(a.gt);
  const std::vector<Detection> dets = detections_from_gt(gt.tracks, dropout, derive_seed(a.seed, 0));
  std::vector<LocalTrack> local =
      local_tracks_from_gt(dets, gt.tracks, a.tr, gt.grid.frames, perturb, derive_seed(a.seed, 1));
  if (!a.detections_out.empty())
    write_file_atomic(a.detections_out, serialize_detections({gt.grid, dets}));
  write_or_print(a.out, serialize_local_tracks({gt.grid, std::move(local)}));
  return 0;
}

struct LinkArgs {
  std::string in;
  int tr = 4;
  double threshold = 0.05;
  std::string metric = "iou";
  double d_max = 50.0;
  int max_skip = 0;
  std::string interpolate = "on";
  std::string border_filter = "keep";
  int margin = 2;
  std::string out;
};

int run_link(const LinkArgs& a) {
  TrackingOptions opts;
  opts.linker.tr = a.tr;
  opts.linker.threshold = a.threshold;
  opts.linker.metric = a.metric == "iou" ? Metric::mean_iou : Metric::euclidean;
  opts.linker.d_max = a.d_max;
  opts.linker.max_skip = a.max_skip;
  opts.linker.validate();
  opts.interpolate = a.interpolate == "on";
  opts.drop_border_tracks = a.border_filter == "drop";
  opts.border_margin = a.margin;
  if (a.margin < 0) throw Error("--margin must be >= 0");

  const LocalTrackSet in = read_local_tracks(a.in);
  GlobalTrackSet out;
  out.grid = in.grid;
  out.gap_free = opts.interpolate;
  out.tracks = track(in.tracks, in.grid.width, in.grid.height, in.grid.frames, opts);
  write_or_print(a.out, serialize_global_tracks(out));
  return 0;
}

struct EvaluateArgs {
  std::string pred;
  std::string gt;
  double iou_min = 0.5;
  std::string out;
};

int run_evaluate(const EvaluateArgs& a) {
  if (!(a.iou_min > 0.0 && a.iou_min <= 1.0)) throw Error("--iou-min must be in (0, 1]");
  const GlobalTrackSet pred = read_global_tracks(a.pred);
  const GlobalTrackSet gt = read_global_tracks(a.gt);
  if (pred.grid.width != gt.grid.width || pred.grid.height != gt.grid.height)
    throw Error("prediction and ground truth have different image sizes");
  write_or_print(a.out, report_to_json(evaluate(pred.tracks, gt.tracks, a.iou_min)));
  return 0;
}

struct AblateArgs {
  std::string kind = "amoeboids";
  int recordings = 5;
  int frames = 100;
  int objects = 10;
  int width = 512;
  int height = 512;
  std::uint64_t seed = 0;
  std::vector<int> trs{1, 4, 7};
  std::vector<std::string> dropouts{"uniform:1/15", "uniform:1/5"};
  int max_skip = 0;
  double threshold = 0.05;
  std::string metric = "iou";
  double miss_p = 0.0;
  int jitter = 0;
  std::string out;
};

int run_ablate(const AblateArgs& a) {
  AblationConfig config;
  config.sim.kind = parse_sim_kind(a.kind);
  config.sim.frames = a.frames;
  config.sim.n_objects = a.objects;
  config.sim.width = a.width;
  config.sim.height = a.height;
  config.sim.validate();
  config.recordings = a.recordings;
  config.seed = a.seed;
  config.trs = a.trs;
  for (const std::string& d : a.dropouts) config.dropouts.push_back(DropoutSpec::parse(d));
  config.max_skip = a.max_skip;
  config.threshold = a.threshold;
  config.metric = a.metric == "iou" ? Metric::mean_iou : Metric::euclidean;
  config.perturb.window_miss_p = a.miss_p;
  config.perturb.jitter_px = a.jitter;
  write_or_print(a.out, ablation_to_json(config, run_ablation(config)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-symmetric local-track linking, evaluation and synthetic data"};
  app.require_subcommand(1);
  const std::vector<std::string> kinds{"arrows", "amoeboids", "amoeboids_pc", "amoeboids_pcc",
                                       "amoeboids_pcca"};
  const std::vector<std::string> metrics{"iou", "euclidean"};

  SimulateArgs sa;
  auto* sim = app.add_subcommand("simulate", "Generate a synthetic recording with ground truth");
  sim->add_option("--kind", sa.kind, "Dataset kind")->check(CLI::IsMember(kinds))->capture_default_str();
  sim->add_option("--frames", sa.frames, "Number of frames")->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("--objects", sa.objects, "Number of objects")->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("--width", sa.width, "Image width")->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("--height", sa.height, "Image height")->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("--seed", sa.seed, "Random seed")->capture_default_str();
  sim->add_option("--config", sa.config, "JSON file overriding generator parameters")->check(CLI::ExistingFile);
  sim->add_flag("--no-frames", sa.no_frames, "Write ground truth only");
  sim->add_option("--out", sa.out, "Output directory")->required();

  OracleArgs oa;
  auto* ora = app.add_subcommand("oracle", "Derive detections and local tracks from ground truth");
  ora->add_option("--gt", oa.gt, "Ground-truth global tracks (NDJSON)")->required()->check(CLI::ExistingFile);
  ora->add_option("--tr", oa.tr, "Tracking range")->check(CLI::PositiveNumber)->capture_default_str();
  ora->add_option("--dropout", oa.dropout, "none | uniform:R | box:R:L")->capture_default_str();
  ora->add_option("--miss-p", oa.miss_p, "Probability a non-anchor window entry is empty")
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  ora->add_option("--jitter", oa.jitter, "Maximum window shift in pixels")->check(CLI::NonNegativeNumber)->capture_default_str();
  ora->add_option("--erode-dilate", oa.erode_dilate, "Maximum morphological radius")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  ora->add_option("--seed", oa.seed, "Random seed")->capture_default_str();
  ora->add_option("--out", oa.out, "Local tracks output (NDJSON, '-' for stdout)")->required();
  ora->add_option("--detections-out", oa.detections_out, "Also write surviving detections");

  LinkArgs la;
  auto* lnk = app.add_subcommand("link", "Link local tracks into global tracks");
  lnk->add_option("--in", la.in, "Local tracks (NDJSON)")->required()->check(CLI::ExistingFile);
  lnk->add_option("--tr", la.tr, "Tracking range of the input")->check(CLI::PositiveNumber)->capture_default_str();
  lnk->add_option("--threshold", la.threshold, "Minimum similarity for a link")
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  lnk->add_option("--metric", la.metric, "Consensus metric")->check(CLI::IsMember(metrics))->capture_default_str();
  lnk->add_option("--d-max", la.d_max, "Distance scale of the euclidean metric")
      ->check(CLI::PositiveNumber)->capture_default_str();
  lnk->add_option("--max-skip", la.max_skip, "Largest frame distance to link (0 = TR)")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  lnk->add_option("--interpolate", la.interpolate, "Fill skipped frames")
      ->check(CLI::IsMember({"on", "off"}))->capture_default_str();
  lnk->add_option("--border-filter", la.border_filter, "Drop tracks leaving the field of view")
      ->check(CLI::IsMember({"keep", "drop"}))->capture_default_str();
  lnk->add_option("--margin", la.margin, "Border band width in pixels")->check(CLI::NonNegativeNumber)->capture_default_str();
  lnk->add_option("--out", la.out, "Global tracks output (NDJSON, '-' for stdout)")->required();

  EvaluateArgs ea;
  auto* ev = app.add_subcommand("evaluate", "Score predicted tracks against ground truth");
  ev->add_option("--pred", ea.pred, "Predicted global tracks")->required()->check(CLI::ExistingFile);
  ev->add_option("--gt", ea.gt, "Ground-truth global tracks")->required()->check(CLI::ExistingFile);
  ev->add_option("--iou-min", ea.iou_min, "IOU needed for a match")->capture_default_str();
  ev->add_option("--out", ea.out, "Report output (JSON, stdout if omitted)");

  AblateArgs ab;
  auto* abl = app.add_subcommand("ablate", "Dropout, link and evaluate sweep over TR values");
  abl->add_option("--kind", ab.kind, "Dataset kind")->check(CLI::IsMember(kinds))->capture_default_str();
  abl->add_option("--recordings", ab.recordings, "Recordings per setting")->check(CLI::PositiveNumber)->capture_default_str();
  abl->add_option("--frames", ab.frames, "Frames per recording")->check(CLI::PositiveNumber)->capture_default_str();
  abl->add_option("--objects", ab.objects, "Objects per recording")->check(CLI::PositiveNumber)->capture_default_str();
  abl->add_option("--width", ab.width, "Image width")->check(CLI::PositiveNumber)->capture_default_str();
  abl->add_option("--height", ab.height, "Image height")->check(CLI::PositiveNumber)->capture_default_str();
  abl->add_option("--seed", ab.seed, "Random seed")->capture_default_str();
  abl->add_option("--tr", ab.trs, "Comma-separated tracking ranges")->delimiter(',')->check(CLI::PositiveNumber)->capture_default_str();
  abl->add_option("--dropout", ab.dropouts, "Comma-separated dropout specs")->delimiter(',')->capture_default_str();
  abl->add_option("--max-skip", ab.max_skip, "Largest frame distance to link (0 = TR)")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  abl->add_option("--threshold", ab.threshold, "Minimum similarity for a link")
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  abl->add_option("--metric", ab.metric, "Consensus metric")->check(CLI::IsMember(metrics))->capture_default_str();
  abl->add_option("--miss-p", ab.miss_p, "Window miss probability")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  abl->add_option("--jitter", ab.jitter, "Window jitter in pixels")->check(CLI::NonNegativeNumber)->capture_default_str();
  abl->add_option("--out", ab.out, "Results table (JSON, stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*sim) return run_simulate(sa, *sim);
    if (*ora) return run_oracle(oa);
    if (*lnk) return run_link(la);
    if (*ev) return run_evaluate(ea);
    if (*abl) return run_ablate(ab);
  } catch (const std::exception& e) {
    std::cerr << "symtrack: error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
