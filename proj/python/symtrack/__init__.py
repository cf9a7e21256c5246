"""Local-track linking, evaluation and synthetic recordings."""

from ._symtrack import (
    Error,
    GlobalTrack,
    LocalTrack,
    Detection,
    Mask,
    centroid,
    detections_from_gt,
    disrupted_tracks,
    euclidean_similarity,
    evaluate,
    fill_all_gaps,
    hungarian,
    iou,
    link,
    local_tracks_from_gt,
    parse_global_tracks,
    serialize_global_tracks,
    shift,
    simulate,
)

__all__ = [
    "Error",
    "GlobalTrack",
    "LocalTrack",
    "Detection",
    "Mask",
    "centroid",
    "detections_from_gt",
    "disrupted_tracks",
    "euclidean_similarity",
    "evaluate",
    "fill_all_gaps",
    "hungarian",
    "iou",
    "link",
    "local_tracks_from_gt",
    "parse_global_tracks",
    "serialize_global_tracks",
    "shift",
    "simulate",
]
