import numpy as np
import pytest

import symtrack


def test_mask_roundtrip_and_geometry():
    arr = np.zeros((20, 30), dtype=bool)
    arr[5:9, 10:16] = True
    m = symtrack.Mask.from_array(arr)
    assert (m.width, m.height, m.area) == (30, 20, 24)
    assert np.array_equal(m.to_array(), arr)
    assert m.runs[0] == (5, 10, 6)
    assert symtrack.centroid(m) == (12.5, 6.5)
    assert symtrack.iou(m, m) == 1.0
    moved = symtrack.shift(m, 3, 0)
    assert symtrack.iou(m, moved) == pytest.approx(12 / 36)
    assert symtrack.euclidean_similarity(m, moved, 50.0) == pytest.approx(0.94)


def test_hungarian():
    pairs, total = symtrack.hungarian(np.array([[0.9, 0.8], [0.7, 0.1]]))
    assert pairs == [(0, 1), (1, 0)]
    assert total == pytest.approx(1.5)
    pairs, _ = symtrack.hungarian([[0.9, 0.8]], feasible=[[False, True]])
    assert pairs == [(0, 1)]


def test_pipeline_end_to_end():
    frames, gt = symtrack.simulate("amoeboids", frames=15, objects=4, seed=1, width=160, height=160)
    assert len(frames) == 15 and frames[0].shape == (160, 160) and frames[0].dtype == np.uint8
    assert len(gt) == 4 and all(t.contiguous() for t in gt)

    dets = symtrack.detections_from_gt(gt, "none", 0)
    local = symtrack.local_tracks_from_gt(dets, gt, tr=3, length=15)
    pred = symtrack.link(local, tr=3)
    report = symtrack.evaluate(pred, gt)
    assert report["tracking"]["f"] == 1.0
    assert report["segmentation"]["f"] == 1.0


def test_dropout_and_interpolation():
    _, gt = symtrack.simulate("arrows", frames=20, objects=3, seed=4, render=False)
    dets = symtrack.detections_from_gt(gt, "uniform:1/5", 2)
    local = symtrack.local_tracks_from_gt(dets, gt, tr=4, length=20)
    pred = symtrack.link(local, tr=4)
    disrupted = symtrack.disrupted_tracks(gt, dets)
    assert symtrack.evaluate(pred, gt)["tracking"]["f"] > symtrack.evaluate(disrupted, gt)["tracking"]["f"]
    assert any(p.provenance(f) == "interpolated" for p in pred for f in p.frames)


def test_serialization_and_errors():
    _, gt = symtrack.simulate("amoeboids", frames=5, objects=2, seed=2, width=96, height=96, render=False)
    text = symtrack.serialize_global_tracks(gt, 96, 96, 5, gap_free=True)
    tracks, grid, gap_free = symtrack.parse_global_tracks(text)
    assert grid == (96, 96, 5) and gap_free
    assert symtrack.serialize_global_tracks(tracks, 96, 96, 5, gap_free=True) == text

    with pytest.raises(symtrack.Error):
        symtrack.parse_global_tracks('{"format":"symtrack.global_tracks","version":9}')
    with pytest.raises(ValueError):
        symtrack.detections_from_gt(gt, "uniform:2", 0)
    with pytest.raises(symtrack.Error):
        symtrack.link([], tr=2, metric="cosine")


def test_manual_tracks_fill_gaps():
    a = symtrack.Mask.from_runs(40, 40, [(r, 2, 4) for r in range(2, 6)])
    t = symtrack.GlobalTrack()
    t.id = 7
    t.add(0, a, 0)
    t.add(4, symtrack.shift(a, 8, 4), 1)
    filled = symtrack.fill_all_gaps(t)
    assert filled.frames == [0, 1, 2, 3, 4]
    assert filled.provenance(2) == "interpolated"
    assert symtrack.centroid(filled.mask(2)) == (7.5, 5.5)
