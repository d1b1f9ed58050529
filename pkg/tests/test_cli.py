"""Command-line interface tests: exit codes, reports, API byte-identity."""

from __future__ import annotations

import json

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from aspectscope.cli import main
from aspectscope.corpus import CorpusSnapshot
from aspectscope.linker import Gazetteer
from aspectscope.service import create_app

from conftest import FIXTURE_CONCEPTS, labeled_sentences_jsonl


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(main, [str(a) for a in args])


class TestIngest:
    def test_report_and_artifact(self, runner, trained_env, tmp_path):
        metadata = tmp_path / "metadata.csv"
        metadata.write_text(trained_env["csv_text"], encoding="utf-8")
        out = tmp_path / "corpus.snapshot"
        result = invoke(runner, "ingest", "--metadata", metadata, "--out", out)
        assert result.exit_code == 0, result.output
        report = json.loads(result.stdout)
        assert report["documents"] == 60
        assert report["covid"] == 30
        assert report["kept"] == 60
        assert report["duplicates_dropped"] == 0
        assert len(report["hash"]) == 64
        snapshot = CorpusSnapshot.load(out)
        assert snapshot.corpus_id == report["corpus_id"]
        # Same input, same bytes as the session environment's snapshot.
        assert out.read_bytes() == (trained_env["root"] / "corpus.snapshot").read_bytes()

    def test_import_labels_are_carried(self, runner, trained_env, tmp_path):
        metadata = tmp_path / "metadata.csv"
        metadata.write_text(trained_env["csv_text"], encoding="utf-8")
        labels = tmp_path / "labels.jsonl"
        labels.write_text(labeled_sentences_jsonl(trained_env["info"]), encoding="utf-8")
        out = tmp_path / "corpus.snapshot"
        result = invoke(
            runner, "ingest", "--metadata", metadata, "--out", out, "--import-labels", labels
        )
        assert result.exit_code == 0, result.output
        snapshot = CorpusSnapshot.load(out)
        assert len(snapshot.imported_labels) > 0
        assert snapshot.imported_labels[0][0] == "p0000"

    def test_missing_metadata_exits_2(self, runner, tmp_path):
        result = invoke(
            runner, "ingest", "--metadata", tmp_path / "absent.csv", "--out", tmp_path / "x"
        )
        assert result.exit_code == 2

    def test_bad_header_exits_2(self, runner, tmp_path):
        metadata = tmp_path / "metadata.csv"
        metadata.write_text("id,text\n1,abc\n", encoding="utf-8")
        result = invoke(
            runner, "ingest", "--metadata", metadata, "--out", tmp_path / "x"
        )
        assert result.exit_code == 2


class TestTrain:
    def test_reproduces_session_manifest(self, runner, trained_env, tmp_path):
        out_dir = tmp_path / "models"
        result = invoke(
            runner,
            "train",
            "--snapshot", trained_env["root"] / "corpus.snapshot",
            "--out-dir", out_dir,
            "--aspect-labels", trained_env["labels_path"],
            "--iterations", 15,
            "--seed", 3,
        )
        assert result.exit_code == 0, result.output
        manifest = json.loads(result.stdout)
        assert manifest == trained_env["manifest"]
        assert (out_dir / "aspect.model").is_file()
        for name, entry in manifest["slots"].items():
            ours = (out_dir / entry["file"]).read_bytes()
            theirs = (trained_env["root"] / "models" / entry["file"]).read_bytes()
            assert ours == theirs, name

    def test_without_labels_trains_whole_slots(self, runner, trained_env, tmp_path):
        out_dir = tmp_path / "models"
        result = invoke(
            runner,
            "train",
            "--snapshot", trained_env["root"] / "corpus.snapshot",
            "--out-dir", out_dir,
            "--iterations", 5,
        )
        assert result.exit_code == 0, result.output
        manifest = json.loads(result.stdout)
        assert set(manifest["slots"]) == {"whole-all", "whole-covid"}
        assert not (out_dir / "aspect.model").exists()

    def test_missing_snapshot_exits_2(self, runner, tmp_path):
        result = invoke(
            runner, "train", "--snapshot", tmp_path / "absent", "--out-dir", tmp_path / "m"
        )
        assert result.exit_code == 2
        assert not (tmp_path / "m" / "manifest.json").exists()


class TestGazetteer:
    def test_jsonl_build(self, runner, trained_env, tmp_path):
        dictionary = tmp_path / "concepts.jsonl"
        dictionary.write_text(
            "\n".join(
                json.dumps(
                    {
                        "cui": c.cui,
                        "name": c.canonical_name,
                        "synonyms": list(c.synonyms),
                        "semantic_type": c.semantic_type,
                        "definition": c.definition,
                    }
                )
                for c in FIXTURE_CONCEPTS
            )
            + "\n",
            encoding="utf-8",
        )
        out = tmp_path / "concepts.gaz"
        result = invoke(runner, "gazetteer", "--dictionary", dictionary, "--out", out)
        assert result.exit_code == 0, result.output
        report = json.loads(result.stdout)
        assert report["concepts"] == 4
        assert report["forms"] == 7
        assert out.read_bytes() == (trained_env["root"] / "concepts.gaz").read_bytes()

    def test_tsv_build_matches_jsonl(self, runner, trained_env, tmp_path):
        dictionary = tmp_path / "concepts.tsv"
        dictionary.write_text(
            "# cui\tname\tsynonyms\ttype\tdefinition\n"
            + "\n".join(
                "\t".join(
                    [c.cui, c.canonical_name, "|".join(c.synonyms), c.semantic_type, c.definition]
                )
                for c in FIXTURE_CONCEPTS
            )
            + "\n",
            encoding="utf-8",
        )
        out = tmp_path / "concepts.gaz"
        result = invoke(runner, "gazetteer", "--dictionary", dictionary, "--out", out)
        assert result.exit_code == 0, result.output
        assert out.read_bytes() == (trained_env["root"] / "concepts.gaz").read_bytes()
        assert len(Gazetteer.load(out)) == 4

    def test_bad_dictionary_exits_2(self, runner, tmp_path):
        dictionary = tmp_path / "concepts.tsv"
        dictionary.write_text("C01\n", encoding="utf-8")
        result = invoke(
            runner, "gazetteer", "--dictionary", dictionary, "--out", tmp_path / "x"
        )
        assert result.exit_code == 2


@pytest.fixture(scope="module")
def api(trained_env, service_state):
    return TestClient(create_app(config=trained_env["config"], state=service_state))


class TestQuery:
    """Query output must be byte-identical to the API response body."""

    def test_topics_matches_api(self, runner, trained_env, api):
        result = invoke(
            runner, "query", "topics", "--config", trained_env["config_path"]
        )
        assert result.exit_code == 0, result.output
        assert result.stdout.encode("utf-8") == api.get("/topics").content

    def test_topics_scope_and_filter_match_api(self, runner, trained_env, api):
        result = invoke(
            runner,
            "query", "topics",
            "--config", trained_env["config_path"],
            "--scope", "finding",
            "--covid",
            "--limit", 3,
        )
        assert result.exit_code == 0, result.output
        expected = api.get(
            "/topics", params={"scope": "finding", "covid": True, "limit": 3}
        ).content
        assert result.stdout.encode("utf-8") == expected

    def test_papers_matches_api(self, runner, trained_env, api):
        result = invoke(
            runner,
            "query", "papers",
            "--config", trained_env["config_path"],
            "--topic", 0,
            "--order", "date",
        )
        assert result.exit_code == 0, result.output
        expected = api.get("/topics/0/papers", params={"order": "date"}).content
        assert result.stdout.encode("utf-8") == expected

    def test_recommend_matches_api(self, runner, trained_env, api):
        result = invoke(
            runner,
            "query", "recommend",
            "--config", trained_env["config_path"],
            "--text", "vaccine immunization antibody trial",
            "--k", 5,
        )
        assert result.exit_code == 0, result.output
        expected = api.post(
            "/recommend", json={"text": "vaccine immunization antibody trial", "k": 5}
        ).content
        assert result.stdout.encode("utf-8") == expected

    def test_search_matches_api(self, runner, trained_env, api):
        result = invoke(
            runner,
            "query", "search",
            "--config", trained_env["config_path"],
            "--q", "vaccine transmission",
            "--match", "any",
        )
        assert result.exit_code == 0, result.output
        expected = api.get(
            "/search", params={"q": "vaccine transmission", "match": "any"}
        ).content
        assert result.stdout.encode("utf-8") == expected

    def test_no_trailing_newline(self, runner, trained_env):
        result = invoke(
            runner, "query", "topics", "--config", trained_env["config_path"]
        )
        assert not result.stdout.endswith("\n")

    def test_fail_empty_exits_1_with_valid_body(self, runner, trained_env):
        args = [
            "query", "search",
            "--config", trained_env["config_path"],
            "--q", "zzqqxunmatched",
        ]
        ok = invoke(runner, *args)
        assert ok.exit_code == 0
        empty = invoke(runner, *args, "--fail-empty")
        assert empty.exit_code == 1
        body = json.loads(empty.stdout)
        assert body["total"] == 0 and body["papers"] == []

    def test_fail_empty_passes_on_hits(self, runner, trained_env):
        result = invoke(
            runner,
            "query", "search",
            "--config", trained_env["config_path"],
            "--q", "vaccine",
            "--fail-empty",
        )
        assert result.exit_code == 0

    def test_unknown_topic_exits_2(self, runner, trained_env):
        result = invoke(
            runner,
            "query", "papers",
            "--config", trained_env["config_path"],
            "--topic", 9999,
        )
        assert result.exit_code == 2

    def test_bad_config_path_exits_2(self, runner, tmp_path):
        result = invoke(
            runner, "query", "topics", "--config", tmp_path / "absent.conf"
        )
        assert result.exit_code == 2

    def test_bad_scope_is_a_usage_error(self, runner, trained_env):
        result = invoke(
            runner,
            "query", "topics",
            "--config", trained_env["config_path"],
            "--scope", "banana",
        )
        assert result.exit_code == 2

    def test_environment_config(self, runner, trained_env, monkeypatch):
        config = trained_env["config"]
        monkeypatch.setenv("ASPECTSCOPE_SNAPSHOT", config.snapshot)
        monkeypatch.setenv("ASPECTSCOPE_MODELS_DIR", config.models_dir)
        result = invoke(runner, "query", "topics")
        assert result.exit_code == 0, result.output
        assert json.loads(result.stdout)["total"] >= 1
