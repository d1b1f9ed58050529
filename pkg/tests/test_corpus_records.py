"""Metadata CSV parsing, covid flagging, and date handling."""

from __future__ import annotations

import io
from datetime import date

import pytest

from aspectscope.corpus.records import (
    ParseCounters,
    PaperRecord,
    mark_covid,
    parse_metadata,
    parse_metadata_text,
    parse_publish_time,
)
from aspectscope.errors import IngestionError

HEADER = "cord_uid,title,abstract,publish_time\n"


def parse(text: str, **kwargs):
    counters = ParseCounters()
    records = parse_metadata(io.StringIO(text), counters=counters, **kwargs)
    return records, counters


class TestParsePublishTime:
    def test_full_iso_date(self):
        assert parse_publish_time("2020-03-15") == date(2020, 3, 15)

    def test_year_month(self):
        assert parse_publish_time("2020-03") == date(2020, 3, 1)

    def test_year_only(self):
        assert parse_publish_time("2020") == date(2020, 1, 1)

    def test_garbage_and_empty_are_none(self):
        assert parse_publish_time("") is None
        assert parse_publish_time("   ") is None
        assert parse_publish_time("not-a-date") is None
        assert parse_publish_time("2020-13-40") is None
        assert parse_publish_time("20") is None

    def test_whitespace_tolerated(self):
        assert parse_publish_time(" 2021-06-01 ") == date(2021, 6, 1)


class TestParseMetadata:
    def test_basic_rows_kept_in_order(self):
        text = HEADER + "a,Title A,Abstract A,2020-01-01\nb,Title B,Abstract B,2020-01-02\n"
        records, counters = parse(text)
        assert [r.paper_id for r in records] == ["a", "b"]
        assert records[0] == PaperRecord(
            paper_id="a",
            title="Title A",
            abstract="Abstract A",
            publish_time=date(2020, 1, 1),
        )
        assert counters.kept == 2

    def test_missing_required_column_raises(self):
        with pytest.raises(IngestionError, match="abstract"):
            parse_metadata_text("cord_uid,title,publish_time\na,T,2020\n")
        with pytest.raises(IngestionError, match="cord_uid"):
            parse_metadata_text("id,title,abstract,publish_time\na,T,A,2020\n")

    def test_alternate_id_column(self):
        text = "doi,title,abstract,publish_time\n10.1/x,T,A,2020\n"
        records = parse_metadata(io.StringIO(text), id_column="doi")
        assert records[0].paper_id == "10.1/x"

    def test_empty_file_raises(self):
        with pytest.raises(IngestionError, match="empty"):
            parse_metadata_text("")

    def test_duplicates_keep_first(self):
        text = HEADER + "a,First,Abs1,2020\na,Second,Abs2,2021\n"
        records, counters = parse(text)
        assert len(records) == 1
        assert records[0].title == "First"
        assert counters.duplicates_dropped == 1
        assert counters.kept == 1

    def test_empty_abstract_falls_back_to_title(self):
        text = HEADER + "a,Only A Title,,2020\n"
        records, counters = parse(text)
        assert records[0].abstract == "Only A Title"
        assert counters.title_fallbacks == 1

    def test_row_with_no_id_and_no_title_dropped(self):
        text = HEADER + ",,Some abstract,2020\n"
        records, counters = parse(text)
        assert records == []
        assert counters.empty_dropped == 1

    def test_row_with_no_abstract_and_no_title_dropped(self):
        text = HEADER + "a,,,2020\n"
        records, counters = parse(text)
        assert records == []
        assert counters.empty_dropped == 1

    def test_missing_id_synthesized_deterministically(self):
        text = HEADER + ",Same Title,Abstract,2020\n"
        first, _ = parse(text)
        second, _ = parse(text)
        assert first[0].paper_id == second[0].paper_id
        assert first[0].paper_id.startswith("t-")
        assert len(first[0].paper_id) == 2 + 16

    def test_synthesized_ids_dedup_identical_titles(self):
        text = HEADER + ",Same Title,Abstract one,2020\n,Same Title,Abstract two,2021\n"
        records, counters = parse(text)
        assert len(records) == 1
        assert counters.duplicates_dropped == 1

    def test_quoted_fields_with_commas_and_newlines(self):
        text = HEADER + 'a,"Title, with comma","Line one.\nLine two.",2020-05-05\n'
        records, _ = parse(text)
        assert records[0].title == "Title, with comma"
        assert records[0].abstract == "Line one.\nLine two."

    def test_unknown_columns_ignored(self):
        text = "cord_uid,title,abstract,publish_time,journal\na,T,A,2020,Nature\n"
        records, _ = parse(text)
        assert records[0].title == "T"

    def test_language_column_captured_lowercased(self):
        text = "cord_uid,title,abstract,publish_time,language\na,T,A,2020,EN\nb,T2,A2,2020,\n"
        records, _ = parse(text)
        assert records[0].language == "en"
        assert records[1].language is None

    def test_missing_file_raises(self, tmp_path):
        with pytest.raises(IngestionError, match="cannot read"):
            parse_metadata(tmp_path / "nope.csv")

    def test_counters_account_for_every_row(self):
        text = (
            HEADER
            + "a,T,A,2020\n"  # kept
            + "a,T,A,2020\n"  # duplicate
            + ",,X,2020\n"  # no id, no title
            + "b,T2,,2020\n"  # title fallback, kept
        )
        records, counters = parse(text)
        assert len(records) == 2
        assert counters.kept == 2
        assert counters.duplicates_dropped == 1
        assert counters.empty_dropped == 1
        assert counters.title_fallbacks == 1
        total_rows = 4
        assert counters.kept + counters.duplicates_dropped + counters.empty_dropped == total_rows

    def test_as_dict_lists_every_counter(self):
        d = ParseCounters().as_dict()
        assert set(d) == {
            "kept",
            "title_fallbacks",
            "duplicates_dropped",
            "empty_dropped",
            "unreadable_skipped",
            "non_english_dropped",
        }


class TestMarkCovid:
    def rec(self, abstract):
        return PaperRecord(paper_id="x", title="t", abstract=abstract)

    def test_uppercase_sequence_matches(self):
        (out,) = mark_covid([self.rec("A study of COVID-19 spread.")])
        assert out.is_covid

    def test_plain_covid_without_suffix_matches(self):
        (out,) = mark_covid([self.rec("During the COVID pandemic.")])
        assert out.is_covid

    def test_lowercase_does_not_match_by_default(self):
        (out,) = mark_covid([self.rec("During the covid pandemic.")])
        assert not out.is_covid

    def test_case_insensitive_flag(self):
        (out,) = mark_covid([self.rec("During the Covid-19 pandemic.")], case_insensitive=True)
        assert out.is_covid

    def test_unrelated_text_not_flagged(self):
        (out,) = mark_covid([self.rec("Influenza surveillance in 2019.")])
        assert not out.is_covid

    def test_embedded_sequence_matches(self):
        # Substring semantics: any contiguous COVID counts.
        (out,) = mark_covid([self.rec("pre-COVID era data")])
        assert out.is_covid
