#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "symtrack/interpolator.hpp"
#include "symtrack/io.hpp"
#include "symtrack/oracle.hpp"
#include "symtrack/pipeline.hpp"

namespace py = pybind11;
using namespace symtrack;

namespace {

using BoolArray = py::array_t<bool, py::array::c_style | py::array::forcecast>;

Mask mask_from_array(const BoolArray& arr) {
  if (arr.ndim() != 2) throw Error("mask array must be 2-D");
  const int h = static_cast<int>(arr.shape(0));
  const int w = static_cast<int>(arr.shape(1));
  Image img(w, h);
  auto v = arr.unchecked<2>();
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) img.at(x, y) = v(y, x) ? 1 : 0;
  return rle_encode(img);
}

BoolArray mask_to_array(const Mask& m) {
  BoolArray out({m.height(), m.width()});
  auto v = out.mutable_unchecked<2>();
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) v(y, x) = false;
  for (const Run& r : m.runs())
    for (int x = r.start; x < r.start + r.length; ++x) v(r.row, x) = true;
  return out;
}

py::array_t<std::uint8_t> image_to_array(const Image& img) {
  py::array_t<std::uint8_t> out({img.height, img.width});
  std::copy(img.pixels.begin(), img.pixels.end(), out.mutable_data());
  return out;
}

py::dict tally_dict(const Tally& t) {
  py::dict d;
  d["tp"] = t.tp;
  d["fp"] = t.fp;
  d["fn"] = t.fn;
  d["precision"] = t.precision();
  d["recall"] = t.recall();
  d["f"] = t.f();
  return d;
}

}  // namespace

PYBIND11_MODULE(_symtrack, m) {
  m.doc() = "Local-track linking, evaluation and synthetic recordings";
  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<Mask>(m, "Mask")
      .def(py::init<int, int>(), py::arg("width"), py::arg("height"))
      .def_static("from_array", &mask_from_array, py::arg("array"),
                  "Build a mask from a 2-D boolean array indexed [row, column].")
      .def_static(
          "from_runs",
          [](int w, int h, const std::vector<std::tuple<int, int, int>>& runs) {
            std::vector<Run> rs;
            for (const auto& [row, start, length] : runs) rs.push_back({row, start, length});
            return Mask::from_runs(w, h, std::move(rs));
          },
          py::arg("width"), py::arg("height"), py::arg("runs"))
      .def("to_array", &mask_to_array)
      .def_property_readonly("width", &Mask::width)
      .def_property_readonly("height", &Mask::height)
      .def_property_readonly("runs",
                             [](const Mask& mk) {
                               std::vector<std::tuple<int, int, int>> out;
                               for (const Run& r : mk.runs()) out.emplace_back(r.row, r.start, r.length);
                               return out;
                             })
      .def_property_readonly("area", [](const Mask& mk) { return area(mk); })
      .def("empty", &Mask::empty)
      .def(py::self == py::self)
      .def("__repr__", [](const Mask& mk) {
        std::ostringstream os;
        os << "<Mask " << mk.width() << "x" << mk.height() << " area=" << area(mk) << ">";
        return os.str();
      });

  m.def("iou", &iou, py::arg("a"), py::arg("b"));
  m.def(
      "centroid", [](const Mask& mk) { const Centroid c = centroid(mk); return py::make_tuple(c.x, c.y); },
      py::arg("mask"), "Centroid as (x, y) = (column, row).");
  m.def("shift", &shift, py::arg("mask"), py::arg("dx"), py::arg("dy"));
  m.def("euclidean_similarity", &euclidean_similarity, py::arg("a"), py::arg("b"),
        py::arg("d_max") = 50.0);

  m.def(
      "hungarian",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> sim,
         std::optional<py::array_t<bool, py::array::c_style | py::array::forcecast>> feasible) {
        if (sim.ndim() != 2) throw Error("similarity matrix must be 2-D");
        const int n = static_cast<int>(sim.shape(0));
        const int k = static_cast<int>(sim.shape(1));
        SimilarityMatrix mat(n, k);
        auto v = sim.unchecked<2>();
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < k; ++c) {
            bool ok = v(r, c) > 0.0;
            if (feasible) {
              if (feasible->ndim() != 2 || feasible->shape(0) != n || feasible->shape(1) != k)
                throw Error("feasibility mask must match the similarity matrix");
              ok = ok && feasible->at(r, c);
            }
            mat.set(r, c, v(r, c), ok);
          }
        const Assignment a = hungarian(mat);
        return py::make_tuple(a.pairs, a.total);
      },
      py::arg("similarity"), py::arg("feasible") = py::none(),
      "Maximum-similarity assignment. Returns ([(row, col), ...], total).");

  py::class_<Detection>(m, "Detection")
      .def(py::init([](int frame, Mask mask, DetectionId id) { return Detection{frame, std::move(mask), id}; }),
           py::arg("frame"), py::arg("mask"), py::arg("id"))
      .def_readonly("frame", &Detection::frame)
      .def_readonly("mask", &Detection::mask)
      .def_readonly("id", &Detection::id);

  py::class_<LocalTrack>(m, "LocalTrack")
      .def(py::init([](const Detection& anchor, int tr, std::vector<Mask> window) {
             return LocalTrack(anchor, tr, std::move(window));
           }),
           py::arg("anchor"), py::arg("tr"), py::arg("window"))
      .def_property_readonly("anchor", &LocalTrack::anchor)
      .def_property_readonly("tr", &LocalTrack::tr)
      .def_property_readonly("frame", &LocalTrack::frame)
      .def_property_readonly("window",
                             [](const LocalTrack& lt) {
                               return std::vector<Mask>(lt.window().begin(), lt.window().end());
                             })
      .def("at_offset", &LocalTrack::at_offset, py::arg("offset"));

  py::class_<GlobalTrack>(m, "GlobalTrack")
      .def(py::init<>())
      .def_readwrite("id", &GlobalTrack::id)
      .def_property_readonly("frames",
                             [](const GlobalTrack& t) {
                               std::vector<int> out;
                               for (const auto& kv : t.entries) out.push_back(kv.first);
                               return out;
                             })
      .def("mask", [](const GlobalTrack& t, int frame) { return t.entries.at(frame).mask; }, py::arg("frame"))
      .def(
          "provenance",
          [](const GlobalTrack& t, int frame) {
            return t.entries.at(frame).provenance == Provenance::detected ? "detected" : "interpolated";
          },
          py::arg("frame"))
      .def(
          "add",
          [](GlobalTrack& t, int frame, Mask mask, std::optional<DetectionId> detection) {
            TrackEntry e{std::move(mask), detection ? Provenance::detected : Provenance::interpolated, detection};
            t.entries[frame] = std::move(e);
          },
          py::arg("frame"), py::arg("mask"), py::arg("detection") = py::none())
      .def("contiguous", &GlobalTrack::contiguous)
      .def("__len__", [](const GlobalTrack& t) { return t.entries.size(); });

  m.def(
      "simulate",
      [](const std::string& kind, int frames, int objects, std::uint64_t seed, int width, int height,
         bool render) {
        SimConfig config;
        config.kind = parse_sim_kind(kind);
        config.frames = frames;
        config.n_objects = objects;
        config.seed = seed;
        config.width = width;
        config.height = height;
        config.render = render;
        config.validate();
        SimResult r = simulate(config);
        std::vector<py::array_t<std::uint8_t>> images;
        for (const Image& img : r.recording.frames) images.push_back(image_to_array(img));
        return py::make_tuple(images, r.ground_truth);
      },
      py::arg("kind") = "amoeboids", py::arg("frames") = 100, py::arg("objects") = 10,
      py::arg("seed") = 0, py::arg("width") = 512, py::arg("height") = 512, py::arg("render") = true,
      "Returns (frames, ground_truth_tracks).");

  m.def(
      "detections_from_gt",
      [](const std::vector<GlobalTrack>& gt, const std::string& dropout, std::uint64_t seed) {
        return detections_from_gt(gt, DropoutSpec::parse(dropout), seed);
      },
      py::arg("gt"), py::arg("dropout") = "none", py::arg("seed") = 0);

  m.def(
      "local_tracks_from_gt",
      [](const std::vector<Detection>& dets, const std::vector<GlobalTrack>& gt, int tr, int length,
         double miss_p, int jitter, int erode_dilate, std::uint64_t seed) {
        PerturbConfig p;
        p.window_miss_p = miss_p;
        p.jitter_px = jitter;
        p.boundary_erode_dilate = erode_dilate;
        return local_tracks_from_gt(dets, gt, tr, length, p, seed);
      },
      py::arg("detections"), py::arg("gt"), py::arg("tr"), py::arg("length"), py::arg("miss_p") = 0.0,
      py::arg("jitter") = 0, py::arg("erode_dilate") = 0, py::arg("seed") = 0);

  m.def(
      "disrupted_tracks",
      [](const std::vector<GlobalTrack>& gt, const std::vector<Detection>& detections) {
        return disrupted_tracks(gt, detections);
      },
      py::arg("gt"), py::arg("detections"));

  m.def(
      "link",
      [](const std::vector<LocalTrack>& local, int tr, double threshold, const std::string& metric,
         double d_max, int max_skip, bool interpolate) {
        LinkerConfig cfg;
        cfg.tr = tr;
        cfg.threshold = threshold;
        if (metric == "iou")
          cfg.metric = Metric::mean_iou;
        else if (metric == "euclidean")
          cfg.metric = Metric::euclidean;
        else
          throw Error("metric must be 'iou' or 'euclidean'");
        cfg.d_max = d_max;
        cfg.max_skip = max_skip;
        cfg.validate();
        std::vector<GlobalTrack> tracks = link_recording(local, cfg);
        if (interpolate)
          for (GlobalTrack& t : tracks) t = fill_all_gaps(t);
        return tracks;
      },
      py::arg("local_tracks"), py::arg("tr") = 4, py::arg("threshold") = 0.05, py::arg("metric") = "iou",
      py::arg("d_max") = 50.0, py::arg("max_skip") = 0, py::arg("interpolate") = true);

  m.def("fill_all_gaps", &fill_all_gaps, py::arg("track"));

  m.def(
      "evaluate",
      [](const std::vector<GlobalTrack>& pred, const std::vector<GlobalTrack>& gt, double iou_min) {
        const EvalReport r = evaluate(pred, gt, iou_min);
        py::dict d;
        d["segmentation"] = tally_dict(r.segmentation);
        d["tracking"] = tally_dict(r.tracking);
        return d;
      },
      py::arg("pred"), py::arg("gt"), py::arg("iou_min") = 0.5);

  m.def(
      "serialize_global_tracks",
      [](const std::vector<GlobalTrack>& tracks, int width, int height, int frames, bool gap_free) {
        return serialize_global_tracks({{width, height, frames}, tracks, gap_free});
      },
      py::arg("tracks"), py::arg("width"), py::arg("height"), py::arg("frames"), py::arg("gap_free") = false);

  m.def(
      "parse_global_tracks",
      [](const std::string& text) {
        std::istringstream in(text);
        GlobalTrackSet s = parse_global_tracks(in, "<string>");
        return py::make_tuple(s.tracks, py::make_tuple(s.grid.width, s.grid.height, s.grid.frames), s.gap_free);
      },
      py::arg("text"), "Returns (tracks, (width, height, frames), gap_free).");
}
