#include "symtrack/pipeline.hpp"

#include "json.hpp"
#include "symtrack/interpolator.hpp"

namespace symtrack {

std::vector<GlobalTrack> track(std::span<const LocalTrack> local_tracks, int width, int height,
                               int recording_length, const TrackingOptions& options) {
  std::vector<GlobalTrack> tracks = link_recording(local_tracks, options.linker);
  if (options.interpolate)
    for (GlobalTrack& t : tracks) t = fill_all_gaps(t);
  if (options.drop_border_tracks)
    tracks = filter_border_tracks(tracks, width, height, recording_length, options.border_margin);
  return tracks;
}

AblationResult run_ablation(const AblationConfig& config) {
  if (config.recordings < 1) throw Error("ablation needs at least one recording");
  if (config.trs.empty()) throw Error("ablation needs at least one TR value");
  if (config.dropouts.empty()) throw Error("ablation needs at least one dropout setting");
  for (const DropoutSpec& d : config.dropouts) d.validate();
  config.perturb.validate();

  AblationResult result;
  for (int r = 0; r < config.recordings; ++r) {
    const std::uint64_t rec_seed = derive_seed(config.seed, static_cast<std::uint64_t>(r));
    SimConfig sim = config.sim;
    sim.seed = derive_seed(rec_seed, 0);
    sim.render = false;
    const SimResult scene = simulate(sim);
    const std::vector<GlobalTrack>& gt = scene.ground_truth;

    for (std::size_t di = 0; di < config.dropouts.size(); ++di) {
      const DropoutSpec& dropout = config.dropouts[di];
      const std::vector<Detection> dets =
          detections_from_gt(gt, dropout, derive_seed(rec_seed, 100 + di));
      const EvalReport disrupted = evaluate(disrupted_tracks(gt, dets), gt, config.iou_min);

      for (int tr : config.trs) {
        TrackingOptions opts;
        opts.linker.tr = tr;
        opts.linker.max_skip = config.max_skip;
        opts.linker.threshold = config.threshold;
        opts.linker.metric = config.metric;
        opts.linker.validate();
        const std::vector<LocalTrack> local = local_tracks_from_gt(
            dets, gt, tr, sim.frames, config.perturb,
            derive_seed(rec_seed, 1000 + 100 * di + static_cast<std::uint64_t>(tr)));
        const std::vector<GlobalTrack> pred = track(local, sim.width, sim.height, sim.frames, opts);

        AblationRow row;
        row.recording = r;
        row.dropout = dropout.to_string();
        row.tr = tr;
        row.max_skip = opts.linker.effective_max_skip();
        row.disrupted = disrupted;
        row.retracked = evaluate(pred, gt, config.iou_min);
        result.rows.push_back(std::move(row));
      }
    }
  }

  for (const DropoutSpec& dropout : config.dropouts) {
    const std::string name = dropout.to_string();
    for (int tr : config.trs) {
      AblationSummary s;
      s.dropout = name;
      s.tr = tr;
      int n = 0;
      for (const AblationRow& row : result.rows) {
        if (row.dropout != name || row.tr != tr) continue;
        s.max_skip = row.max_skip;
        s.disrupted_seg_f += row.disrupted.segmentation.f();
        s.disrupted_trk_f += row.disrupted.tracking.f();
        s.retracked_seg_f += row.retracked.segmentation.f();
        s.retracked_trk_f += row.retracked.tracking.f();
        ++n;
      }
      s.disrupted_seg_f /= n;
      s.disrupted_trk_f /= n;
      s.retracked_seg_f /= n;
      s.retracked_trk_f /= n;
      result.summary.push_back(s);
    }
  }
  return result;
}

namespace {

nlohmann::ordered_json tally_json(const Tally& t) {
  nlohmann::ordered_json j;
  j["tp"] = t.tp;
  j["fp"] = t.fp;
  j["fn"] = t.fn;
  j["f"] = t.f();
  return j;
}

nlohmann::ordered_json report_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["segmentation"] = tally_json(r.segmentation);
  j["tracking"] = tally_json(r.tracking);
  return j;
}

}  // namespace

std::string ablation_to_json(const AblationConfig& config, const AblationResult& result) {
  using ojson = nlohmann::ordered_json;
  ojson j;
  ojson setup;
  setup["kind"] = to_string(config.sim.kind);
  setup["recordings"] = config.recordings;
  setup["frames"] = config.sim.frames;
  setup["objects"] = config.sim.n_objects;
  setup["seed"] = config.seed;
  setup["threshold"] = config.threshold;
  setup["metric"] = config.metric == Metric::mean_iou ? "iou" : "euclidean";
  setup["iou_min"] = config.iou_min;
  j["setup"] = std::move(setup);

  ojson rows = ojson::array();
  for (const AblationRow& row : result.rows) {
    ojson jr;
    jr["recording"] = row.recording;
    jr["dropout"] = row.dropout;
    jr["tr"] = row.tr;
    jr["max_skip"] = row.max_skip;
    jr["disrupted"] = report_json(row.disrupted);
    jr["retracked"] = report_json(row.retracked);
    rows.push_back(std::move(jr));
  }
  j["rows"] = std::move(rows);

  ojson summary = ojson::array();
  for (const AblationSummary& s : result.summary) {
    ojson js;
    js["dropout"] = s.dropout;
    js["tr"] = s.tr;
    js["max_skip"] = s.max_skip;
    js["disrupted_segmentation_f"] = s.disrupted_seg_f;
    js["disrupted_tracking_f"] = s.disrupted_trk_f;
    js["retracked_segmentation_f"] = s.retracked_seg_f;
    js["retracked_tracking_f"] = s.retracked_trk_f;
    summary.push_back(std::move(js));
  }
  j["summary"] = std::move(summary);
  return j.dump(2) + "\n";
}

}  // namespace symtrack
