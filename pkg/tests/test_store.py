"""Artifact container: canonical encoding, hashing, corruption detection."""

from __future__ import annotations

import os

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aspectscope import store
from aspectscope.errors import (
    ArtifactError,
    CorruptArtifactError,
    KindMismatchError,
    NotAnArtifactError,
    UnsupportedVersionError,
)


def sample_payload():
    return {
        "name": "fixture",
        "values": np.array([[1.5, -2.25], [0.0, 3.125]]),
        "ids": ["a", "b"],
        "nested": {"flag": True, "count": 7, "ratio": 0.1},
        "maybe": None,
    }


def test_round_trip_preserves_arrays_bit_exactly(tmp_path):
    path = tmp_path / "x.artifact"
    payload = sample_payload()
    payload["floats"] = np.array([0.1, 1e-300, 7e300, np.pi])
    store.save("corpus", payload, path)
    kind, loaded = store.load(path)
    assert kind == "corpus"
    assert loaded["name"] == "fixture"
    assert loaded["maybe"] is None
    np.testing.assert_array_equal(loaded["values"], payload["values"])
    assert loaded["floats"].tobytes() == payload["floats"].tobytes()


def test_save_twice_identical_bytes_and_hash(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    h1 = store.save("corpus", sample_payload(), a)
    h2 = store.save("corpus", sample_payload(), b)
    assert h1 == h2
    assert a.read_bytes() == b.read_bytes()
    assert h1 == store.content_hash("corpus", sample_payload())


def test_load_verifies_kind(tmp_path):
    path = tmp_path / "x.artifact"
    store.save("corpus", {"a": 1}, path)
    with pytest.raises(KindMismatchError):
        store.load(path, expected_kind="gazetteer")


def test_bad_magic_rejected(tmp_path):
    path = tmp_path / "junk"
    path.write_bytes(b"definitely not an artifact file, just bytes")
    with pytest.raises(NotAnArtifactError, match="not an artifact"):
        store.load(path)


def test_truncated_file_is_corrupt(tmp_path):
    path = tmp_path / "x.artifact"
    store.save("corpus", sample_payload(), path)
    blob = path.read_bytes()
    path.write_bytes(blob[: len(blob) - 5])
    with pytest.raises(CorruptArtifactError, match="corrupt"):
        store.load(path)


def test_flipped_payload_byte_is_corrupt(tmp_path):
    path = tmp_path / "x.artifact"
    store.save("corpus", sample_payload(), path)
    blob = bytearray(path.read_bytes())
    blob[-1] ^= 0xFF
    path.write_bytes(bytes(blob))
    with pytest.raises(CorruptArtifactError):
        store.load(path)


def test_newer_version_rejected(tmp_path):
    path = tmp_path / "x.artifact"
    store.save("corpus", {"a": 1}, path)
    blob = bytearray(path.read_bytes())
    blob[len(store.MAGIC)] = store.FORMAT_VERSION + 1
    path.write_bytes(bytes(blob))
    with pytest.raises(UnsupportedVersionError):
        store.load(path)


def test_unknown_kind_tag_rejected(tmp_path):
    path = tmp_path / "x.artifact"
    store.save("corpus", {"a": 1}, path)
    blob = bytearray(path.read_bytes())
    blob[len(store.MAGIC) + 1] = 200
    path.write_bytes(bytes(blob))
    with pytest.raises(NotAnArtifactError):
        store.load(path)


def test_unknown_kind_on_save():
    with pytest.raises(ArtifactError):
        store.save("mystery", {}, "/tmp/never-written")
    with pytest.raises(ArtifactError):
        store.content_hash("mystery", {})


def test_unwritable_path_raises(tmp_path):
    target = tmp_path / "dir"
    target.mkdir()
    # Saving over an existing directory cannot succeed.
    with pytest.raises(ArtifactError):
        store.save("corpus", {"a": 1}, target)


def test_interrupted_write_leaves_original_intact(tmp_path, monkeypatch):
    path = tmp_path / "x.artifact"
    store.save("corpus", {"version": 1}, path)
    before = path.read_bytes()

    real_replace = os.replace

    def exploding_replace(src, dst):
        raise OSError("simulated crash before rename")

    monkeypatch.setattr(os, "replace", exploding_replace)
    with pytest.raises(ArtifactError):
        store.save("corpus", {"version": 2}, path)
    monkeypatch.setattr(os, "replace", real_replace)

    assert path.read_bytes() == before
    _, payload = store.load(path)
    assert payload == {"version": 1}
    leftovers = [p for p in tmp_path.iterdir() if p.suffix == ".tmp"]
    assert leftovers == []


def test_non_serializable_payload_rejected(tmp_path):
    with pytest.raises(TypeError):
        store.save("corpus", {"bad": object()}, tmp_path / "x")


json_scalars = st.one_of(
    st.none(),
    st.booleans(),
    st.integers(min_value=-(2**53), max_value=2**53),
    st.floats(allow_nan=False, allow_infinity=False),
    st.text(max_size=20),
)


@st.composite
def payloads(draw):
    arr = draw(
        st.one_of(
            st.just(None),
            st.lists(
                st.floats(allow_nan=False, allow_infinity=False, width=64), max_size=8
            ).map(lambda xs: np.asarray(xs, dtype=np.float64)),
            st.lists(st.integers(-1000, 1000), max_size=8).map(
                lambda xs: np.asarray(xs, dtype=np.int64)
            ),
        )
    )
    body = draw(
        st.dictionaries(
            st.text(min_size=1, max_size=8),
            st.one_of(json_scalars, st.lists(json_scalars, max_size=4)),
            max_size=5,
        )
    )
    out = {"body": body}
    if arr is not None:
        out["arr"] = arr
    return out


@settings(max_examples=50, deadline=None)
@given(payload=payloads())
def test_round_trip_property(tmp_path_factory, payload):
    path = tmp_path_factory.mktemp("prop") / "x.artifact"
    store.save("lda_bundle", payload, path)
    kind, loaded = store.load(path, expected_kind="lda_bundle")
    assert kind == "lda_bundle"
    assert loaded["body"] == payload["body"]
    if "arr" in payload:
        assert loaded["arr"].dtype == payload["arr"].dtype
        assert loaded["arr"].tobytes() == payload["arr"].tobytes()
