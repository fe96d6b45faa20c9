"""Mode geometry packaged for network and dense-field visualization.

``export_network`` turns one mode over a labelled skeleton into a node/edge
record: nodes carry a canonical pose position, raw and rank-normalized
phases, and amplitudes; bone edges carry the wrapped absolute phase
difference and a leader-to-lagger direction; the top-K non-bone pairs by a
composite coupling score are included as extra edges, explicitly flagged as
an exploratory visualization heuristic rather than a tested indicator.

``export_phase_field`` is the dense-mesh analogue: one record per vertex.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .chpca import ComplexMode
from .errors import DataError
from .io_model import MotionSequence, Skeleton
from .segmentation import SegmentationResult
from .stats import wrap_angle

EXTRA_EDGE_CAVEAT = (
    "exploratory visualization heuristic; not a significance-tested indicator"
)


def rank_normalize(values) -> np.ndarray:
    """Map values to [-1, 1] by rank: smallest -> -1, largest -> +1.

    Ties get average ranks; an all-equal input maps to all zeros.  For phase
    vectors this sends the most lagging point to -1 and the most leading to
    +1 regardless of the absolute phase scale.
    """
    v = np.asarray(values, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise DataError("rank_normalize needs a non-empty 1-D array")
    if v.size == 1:
        return np.zeros(1)
    ranks = rankdata(v, method="average")
    return (2.0 * ranks - (v.size + 1)) / (v.size - 1)


def composite_scores(
    mode: ComplexMode,
    labels,
    exclude_pairs=(),
    top_k: int | None = None,
) -> tuple[list[dict], bool]:
    """Strongest non-excluded pairs by ``sqrt(Ai*Aj) * |sin(dphi/2)|``.

    The score rewards pairs where both points carry amplitude and their
    phases genuinely differ; it is gauge-invariant.  Returns the records
    sorted by descending score (ties broken by label-order pair index) and a
    flag telling whether ``top_k`` exceeded the available pair count.
    Directions point from the phase leader to the lagger.
    """
    labels = tuple(labels)
    n = len(labels)
    if len(mode.vector) != n:
        raise DataError("mode vector length does not match labels")
    excluded = {frozenset(p) for p in exclude_pairs}
    hodge, amp = mode.hodge, mode.amplitude
    records = []
    for i in range(n):
        for j in range(i + 1, n):
            if frozenset((labels[i], labels[j])) in excluded:
                continue
            dphi = wrap_angle(hodge[i] - hodge[j])
            score = float(np.sqrt(amp[i] * amp[j]) * abs(np.sin(dphi / 2.0)))
            lead, lag = (i, j) if dphi >= 0 else (j, i)
            records.append(
                {
                    "pair": [labels[i], labels[j]],
                    "score": score,
                    "direction": [labels[lead], labels[lag]],
                    "_order": (i, j),
                }
            )
    records.sort(key=lambda r: (-r["score"], r["_order"]))
    truncated_short = False
    if top_k is not None:
        if top_k > len(records):
            truncated_short = True
        records = records[:top_k]
    for r in records:
        del r["_order"]
    return records, truncated_short


def mean_phase_start_pose(
    seq: MotionSequence, seg: SegmentationResult, phase: str
) -> dict[str, list[float]]:
    """Across-trial mean of the positions at each trial's phase start."""
    if phase == "backswing":
        starts = [t.start for t in seg.trials]
    elif phase == "downswing":
        starts = [t.top for t in seg.trials]
    else:
        raise DataError(f"phase must be 'backswing' or 'downswing', got {phase!r}")
    if not starts:
        raise DataError("segmentation contains no trials")
    bad = [s for s in starts if not 0 <= s < seq.n_frames]
    if bad:
        raise DataError(f"phase-start frames {bad} outside the sequence")
    pose = seq.positions[starts].mean(axis=0)
    return {lab: [float(c) for c in xyz] for lab, xyz in zip(seq.labels, pose)}


def export_network(
    mode: ComplexMode,
    labels,
    skeleton: Skeleton,
    pose: dict[str, list[float]],
    phase: str,
    top_k: int = 5,
) -> dict:
    """Node/edge record of one mode over a skeleton, JSON-ready."""
    labels = tuple(labels)
    if len(mode.vector) != len(labels):
        raise DataError("mode vector length does not match labels")
    missing = [lab for lab in labels if lab not in pose]
    if missing:
        raise DataError(f"pose is missing joints: {missing}")
    hodge, amp = mode.hodge, mode.amplitude
    rank_phase = rank_normalize(hodge)
    index = {lab: k for k, lab in enumerate(labels)}

    nodes = [
        {
            "label": lab,
            "position": [float(c) for c in pose[lab]],
            "hodge": float(hodge[k]),
            "amplitude": float(amp[k]),
            "rank_phase": float(rank_phase[k]),
        }
        for k, lab in enumerate(labels)
    ]

    bone_edges = []
    for a, b in skeleton.bones:
        if a not in index or b not in index:
            raise DataError(f"skeleton bone ({a!r}, {b!r}) not covered by mode labels")
        i, j = index[a], index[b]
        dphi = wrap_angle(hodge[i] - hodge[j])
        lead, lag = (a, b) if dphi >= 0 else (b, a)
        bone_edges.append(
            {
                "pair": [a, b],
                "abs_dphi": float(abs(dphi)),
                "direction": [lead, lag],
            }
        )

    extra, short = composite_scores(
        mode, labels, exclude_pairs=skeleton.bone_set(), top_k=top_k
    )
    return {
        "phase": phase,
        "nodes": nodes,
        "bone_edges": bone_edges,
        "extra_edges": extra,
        "extra_edges_caveat": EXTRA_EDGE_CAVEAT,
        "extra_edges_truncated": short,
    }


def export_phase_field(
    mode: ComplexMode,
    positions: np.ndarray,
    phase: str,
) -> dict:
    """Per-vertex record of one mode over a dense point set, JSON-ready."""
    positions = np.asarray(positions, dtype=float)
    n = len(mode.vector)
    if positions.shape != (n, 3):
        raise DataError(
            f"positions shape {positions.shape} does not match {n} mode entries"
        )
    hodge, amp = mode.hodge, mode.amplitude
    rank_phase = rank_normalize(hodge)
    vertices = [
        {
            "index": k,
            "position": [float(c) for c in positions[k]],
            "hodge": float(hodge[k]),
            "amplitude": float(amp[k]),
            "rank_phase": float(rank_phase[k]),
        }
        for k in range(n)
    ]
    return {"phase": phase, "vertices": vertices}
