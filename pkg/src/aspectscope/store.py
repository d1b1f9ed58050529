"""Versioned on-disk container for corpus snapshots, models and gazetteers.

Layout (documented field-by-field in docs/artifact-format.md):

    bytes 0..7    magic "ASPSCOPE"
    byte  8       format version (currently 1)
    byte  9       kind tag (corpus=1, aspect_model=2, lda_bundle=3, gazetteer=4)
    bytes 10..41  SHA-256 of the payload
    bytes 42..    payload

The payload is canonical JSON (UTF-8, compact separators, field order as
emitted) in which numpy arrays appear as ``{"__nd__": [dtype, shape,
base64-of-little-endian-bytes]}``. Scalar floats rely on repr round-trip,
so serialization preserves every value bit-exactly and saving the same
artifact twice yields the same content hash. Writes go through a temp
file and an atomic rename.
"""

from __future__ import annotations

import base64
import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any

import numpy as np

from .errors import (
    ArtifactError,
    CorruptArtifactError,
    KindMismatchError,
    NotAnArtifactError,
    UnsupportedVersionError,
)

MAGIC = b"ASPSCOPE"
FORMAT_VERSION = 1

KIND_TAGS = {"corpus": 1, "aspect_model": 2, "lda_bundle": 3, "gazetteer": 4}
_TAG_KINDS = {v: k for k, v in KIND_TAGS.items()}

_HEADER_LEN = len(MAGIC) + 1 + 1 + 32


def _encode(obj: Any) -> Any:
    if isinstance(obj, np.ndarray):
        arr = np.ascontiguousarray(obj)
        if arr.dtype.byteorder == ">":
            arr = arr.astype(arr.dtype.newbyteorder("<"))
        return {
            "__nd__": [
                arr.dtype.str.lstrip("<=|"),
                list(arr.shape),
                base64.b64encode(arr.tobytes()).decode("ascii"),
            ]
        }
    if isinstance(obj, dict):
        return {str(k): _encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_encode(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__} into an artifact payload")


def _decode(obj: Any) -> Any:
    if isinstance(obj, dict):
        if set(obj.keys()) == {"__nd__"}:
            dtype, shape, data = obj["__nd__"]
            raw = base64.b64decode(data.encode("ascii"))
            return np.frombuffer(raw, dtype=np.dtype("<" + dtype)).reshape(shape).copy()
        return {k: _decode(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_decode(v) for v in obj]
    return obj


def encode_payload(payload: dict[str, Any]) -> bytes:
    return json.dumps(
        _encode(payload), ensure_ascii=False, separators=(",", ":"), allow_nan=False
    ).encode("utf-8")


def decode_payload(raw: bytes) -> dict[str, Any]:
    return _decode(json.loads(raw.decode("utf-8")))


def save(kind: str, payload: dict[str, Any], path: str | Path) -> str:
    """Write an artifact atomically; returns the payload's hex content hash."""
    if kind not in KIND_TAGS:
        raise ArtifactError(f"unknown artifact kind {kind!r}")
    path = Path(path)
    raw = encode_payload(payload)
    digest = hashlib.sha256(raw).digest()
    blob = MAGIC + bytes([FORMAT_VERSION, KIND_TAGS[kind]]) + digest + raw
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(blob)
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp_name, path)
        except BaseException:
            try:
                os.unlink(tmp_name)
            except OSError:
                pass
            raise
    except OSError as exc:
        raise ArtifactError(f"cannot write artifact to {path}: {exc}") from exc
    return digest.hex()


def load(path: str | Path, expected_kind: str | None = None) -> tuple[str, dict[str, Any]]:
    """Read and verify an artifact; returns ``(kind, payload)``."""
    path = Path(path)
    try:
        blob = path.read_bytes()
    except OSError as exc:
        raise ArtifactError(f"cannot read artifact from {path}: {exc}") from exc
    if len(blob) < _HEADER_LEN or not blob.startswith(MAGIC):
        raise NotAnArtifactError(f"{path} is not an artifact file")
    version = blob[len(MAGIC)]
    if version > FORMAT_VERSION:
        raise UnsupportedVersionError(
            f"{path} uses unsupported artifact format version {version}"
        )
    tag = blob[len(MAGIC) + 1]
    kind = _TAG_KINDS.get(tag)
    if kind is None:
        raise NotAnArtifactError(f"{path} carries unknown kind tag {tag}")
    stored = blob[len(MAGIC) + 2 : _HEADER_LEN]
    raw = blob[_HEADER_LEN:]
    if hashlib.sha256(raw).digest() != stored:
        raise CorruptArtifactError(f"{path} is a corrupt artifact (hash mismatch)")
    if expected_kind is not None and kind != expected_kind:
        raise KindMismatchError(
            f"{path} holds a {kind!r} artifact, expected {expected_kind!r}"
        )
    try:
        payload = decode_payload(raw)
    except (ValueError, KeyError, TypeError) as exc:
        raise CorruptArtifactError(f"{path} payload cannot be decoded: {exc}") from exc
    return kind, payload


def content_hash(kind: str, payload: dict[str, Any]) -> str:
    """Hash an artifact's payload without writing it."""
    if kind not in KIND_TAGS:
        raise ArtifactError(f"unknown artifact kind {kind!r}")
    return hashlib.sha256(encode_payload(payload)).hexdigest()
