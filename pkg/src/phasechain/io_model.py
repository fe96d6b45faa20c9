"""Motion-capture containers and file I/O.

Data model
----------
``MotionSequence`` holds T frames of N labelled 3-D points as a read-only
``(T, N, 3)`` float array plus a frame rate in Hz.  ``Skeleton`` names the
joint set, the bone pairs used for rendering/exports, and the two special
joints every analysis needs: the striking-side wrist (segmentation signal)
and the reference joint (phase anchor).

File formats
------------
JSON: ``{"frame_rate": float, "labels": [...], "frames": [[[x,y,z]*N]*T]}``.
CSV: wide form with one column triple per label (``label_x,label_y,label_z``)
and an optional leading ``# frame_rate: <hz>`` comment line.  Coordinates are
meters, frame rate is Hz; no unit inference is performed.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DataError,
    ParseError,
    ShapeError,
    UnknownLabelError,
)

_AXES = ("x", "y", "z")


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class MotionSequence:
    """T frames of N labelled 3-D points sampled at a fixed frame rate."""

    positions: np.ndarray  # (T, N, 3) float64, meters
    labels: tuple[str, ...]
    frame_rate: float

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float)
        if pos.ndim != 3 or pos.shape[2] != 3:
            raise ShapeError(f"positions must be (T, N, 3), got {pos.shape}")
        if pos.shape[0] < 2:
            raise DataError(f"need at least 2 frames, got {pos.shape[0]}")
        if pos.shape[1] != len(self.labels):
            raise ShapeError(
                f"{len(self.labels)} labels but {pos.shape[1]} point columns"
            )
        if len(set(self.labels)) != len(self.labels):
            raise DataError("point labels must be unique")
        if not np.isfinite(pos).all():
            t, n, _ = np.argwhere(~np.isfinite(pos))[0]
            raise DataError(
                f"non-finite coordinate at frame {t}, point {self.labels[n]!r}"
            )
        if not self.frame_rate > 0:
            raise DataError(f"frame_rate must be positive, got {self.frame_rate}")
        object.__setattr__(self, "positions", _freeze(pos))
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n_frames(self) -> int:
        return self.positions.shape[0]

    @property
    def n_points(self) -> int:
        return self.positions.shape[1]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabelError(f"unknown point label {label!r}") from None

    def coordinate(self, label: str, axis: str) -> np.ndarray:
        """One coordinate track, shape (T,)."""
        if axis not in _AXES:
            raise DataError(f"axis must be one of {_AXES}, got {axis!r}")
        return self.positions[:, self.index_of(label), _AXES.index(axis)]


def select_points(seq: MotionSequence, names: list[str]) -> MotionSequence:
    """Sub-sequence restricted to ``names``, in the order given."""
    if len(set(names)) != len(names):
        raise DataError("requested point names contain duplicates")
    idx = [seq.index_of(n) for n in names]
    return MotionSequence(seq.positions[:, idx, :], tuple(names), seq.frame_rate)


@dataclass(frozen=True)
class Skeleton:
    """Joint set with bone pairs and the two analysis anchor joints."""

    joints: tuple[str, ...]
    bones: tuple[tuple[str, str], ...]
    striking_wrist: str
    reference_joint: str

    def __post_init__(self):
        object.__setattr__(self, "joints", tuple(self.joints))
        object.__setattr__(
            self, "bones", tuple((a, b) for a, b in self.bones)
        )
        if len(set(self.joints)) != len(self.joints):
            raise DataError("skeleton joints must be unique")
        jset = set(self.joints)
        for a, b in self.bones:
            if a not in jset or b not in jset:
                raise DataError(f"bone ({a!r}, {b!r}) references unknown joint")
            if a == b:
                raise DataError(f"bone ({a!r}, {b!r}) is a self-pair")
        for name, joint in (
            ("striking_wrist", self.striking_wrist),
            ("reference_joint", self.reference_joint),
        ):
            if joint not in jset:
                raise DataError(f"{name} {joint!r} not in skeleton joints")

    def bone_set(self) -> set[frozenset[str]]:
        return {frozenset(b) for b in self.bones}


# Canonical 20-joint body model: pelvis-to-head chain with three spine
# segments plus left/right limb chains, 19 bones forming a tree.
_BUILTIN_JOINTS = (
    "pelvis",
    "spine1",
    "spine2",
    "spine3",
    "neck",
    "head",
    "left_shoulder",
    "left_elbow",
    "left_wrist",
    "right_shoulder",
    "right_elbow",
    "right_wrist",
    "left_hip",
    "left_knee",
    "left_ankle",
    "left_foot",
    "right_hip",
    "right_knee",
    "right_ankle",
    "right_foot",
)

_BUILTIN_BONES = (
    ("pelvis", "spine1"),
    ("spine1", "spine2"),
    ("spine2", "spine3"),
    ("spine3", "neck"),
    ("neck", "head"),
    ("spine3", "left_shoulder"),
    ("left_shoulder", "left_elbow"),
    ("left_elbow", "left_wrist"),
    ("spine3", "right_shoulder"),
    ("right_shoulder", "right_elbow"),
    ("right_elbow", "right_wrist"),
    ("pelvis", "left_hip"),
    ("left_hip", "left_knee"),
    ("left_knee", "left_ankle"),
    ("left_ankle", "left_foot"),
    ("pelvis", "right_hip"),
    ("right_hip", "right_knee"),
    ("right_knee", "right_ankle"),
    ("right_ankle", "right_foot"),
)


def builtin_skeleton() -> Skeleton:
    """Default 20-joint skeleton (right-handed striker, pelvis reference)."""
    return Skeleton(
        joints=_BUILTIN_JOINTS,
        bones=_BUILTIN_BONES,
        striking_wrist="right_wrist",
        reference_joint="pelvis",
    )


def load_skeleton(path) -> Skeleton:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read skeleton file {path}: {exc}") from exc
    try:
        return Skeleton(
            joints=tuple(doc["joints"]),
            bones=tuple((a, b) for a, b in doc["bones"]),
            striking_wrist=doc["striking_wrist"],
            reference_joint=doc["reference_joint"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed skeleton file {path}: {exc}") from exc


def save_skeleton(skel: Skeleton, path) -> None:
    doc = {
        "joints": list(skel.joints),
        "bones": [list(b) for b in skel.bones],
        "striking_wrist": skel.striking_wrist,
        "reference_joint": skel.reference_joint,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _infer_format(path, fmt: str | None) -> str:
    if fmt not in (None, "auto", "json", "csv"):
        raise DataError(f"unknown motion format {fmt!r}")
    if fmt in (None, "auto"):
        suffix = str(path).rsplit(".", 1)[-1].lower()
        if suffix in ("json", "csv"):
            return suffix
        raise DataError(f"cannot infer format of {path}; pass format explicitly")
    return fmt


def load_motion(path, format: str | None = "auto", frame_rate: float | None = None) -> MotionSequence:
    """Load a motion file (JSON or wide CSV) into a MotionSequence.

    ``frame_rate`` overrides any rate found in the file and is required for
    CSV files that carry no ``# frame_rate`` header line.
    """
    fmt = _infer_format(path, format)
    if fmt == "json":
        return _load_json(path, frame_rate)
    return _load_csv(path, frame_rate)


def _load_json(path, frame_rate) -> MotionSequence:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read motion file {path}: {exc}") from exc
    for key in ("labels", "frames"):
        if key not in doc:
            raise ParseError(f"motion file {path} missing {key!r}")
    labels = tuple(str(s) for s in doc["labels"])
    frames = doc["frames"]
    n = len(labels)
    for t, frame in enumerate(frames):
        if len(frame) != n:
            raise ShapeError(
                f"frame {t} has {len(frame)} points, expected {n} ({path})"
            )
    try:
        pos = np.asarray(frames, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"non-numeric coordinate in {path}: {exc}") from exc
    if pos.ndim != 3 or pos.shape[2] != 3:
        raise ShapeError(f"frames in {path} are not N x 3 rows")
    rate = frame_rate if frame_rate is not None else doc.get("frame_rate")
    if rate is None:
        raise ParseError(f"motion file {path} has no frame_rate; pass one")
    return MotionSequence(pos, labels, float(rate))


def _parse_csv_header(header: list[str]) -> tuple[str, ...]:
    labels: list[str] = []
    if len(header) % 3 != 0 or not header:
        raise ParseError(f"CSV header has {len(header)} columns, expected 3*N")
    for i in range(0, len(header), 3):
        trip = header[i : i + 3]
        bases = []
        for col, axis in zip(trip, _AXES):
            if not col.endswith("_" + axis):
                raise ParseError(f"CSV column {col!r} should end with _{axis}")
            bases.append(col[: -len(axis) - 1])
        if len(set(bases)) != 1:
            raise ParseError(f"CSV columns {trip} do not share one label")
        labels.append(bases[0])
    return tuple(labels)


def _load_csv(path, frame_rate) -> MotionSequence:
    try:
        with open(path, newline="") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read motion file {path}: {exc}") from exc
    lines = text.splitlines()
    rate = frame_rate
    start = 0
    if lines and lines[0].startswith("#"):
        start = 1
        head = lines[0].lstrip("#").strip()
        if head.startswith("frame_rate:") and rate is None:
            try:
                rate = float(head.split(":", 1)[1])
            except ValueError as exc:
                raise ParseError(f"bad frame_rate header in {path}: {exc}") from exc
    if rate is None:
        raise ParseError(f"CSV motion file {path} has no frame rate; pass one")
    reader = csv.reader(io.StringIO("\n".join(lines[start:])))
    rows = [row for row in reader if row]
    if not rows:
        raise ParseError(f"motion file {path} is empty")
    labels = _parse_csv_header(rows[0])
    n = len(labels)
    frames = np.empty((len(rows) - 1, n, 3), dtype=float)
    for t, row in enumerate(rows[1:]):
        if len(row) != 3 * n:
            raise ShapeError(
                f"CSV row {t + start + 1} has {len(row)} fields, expected {3 * n}"
            )
        try:
            frames[t] = np.asarray(row, dtype=float).reshape(n, 3)
        except ValueError as exc:
            raise ParseError(f"non-numeric field in CSV row {t + start + 1}: {exc}") from exc
    return MotionSequence(frames, labels, float(rate))


def save_motion(seq: MotionSequence, path, format: str | None = "auto") -> None:
    """Write a MotionSequence back to disk; inverse of ``load_motion``."""
    fmt = _infer_format(path, format)
    if fmt == "json":
        doc = {
            "frame_rate": seq.frame_rate,
            "labels": list(seq.labels),
            "frames": seq.positions.tolist(),
        }
        with open(path, "w") as fh:
            json.dump(doc, fh)
            fh.write("\n")
        return
    with open(path, "w", newline="") as fh:
        fh.write(f"# frame_rate: {seq.frame_rate!r}\n")
        writer = csv.writer(fh)
        writer.writerow(
            [f"{lab}_{ax}" for lab in seq.labels for ax in _AXES]
        )
        flat = seq.positions.reshape(seq.n_frames, -1)
        for row in flat:
            writer.writerow([repr(float(v)) for v in row])
