import logging
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biblioforge.corpus import Affiliation, Corpus, Document
from biblioforge.metrics import (
    GerdFormatError,
    GerdSeries,
    collaboration_shares,
    entity_documents,
    entity_stats,
    g_index,
    h_index,
    m_index,
    missing_reprint_count,
    read_gerd_csv,
)
from oracles import g_index_scan, h_index_scan
from synth import random_corpus

citations = st.lists(st.integers(min_value=0, max_value=60), max_size=50)


@pytest.mark.parametrize("cites, h", [([], 0), ([10, 8, 5, 4, 3], 4), ([1, 1, 1], 1), ([0, 0], 0), ([100], 1)])
def test_h_index_examples(cites, h):
    assert h_index(cites) == h == h_index_scan(cites)


@pytest.mark.parametrize("cites, g", [([0, 0], 0), ([10, 5, 4, 1], 4), ([3, 2, 1], 2), ([100], 1), ([], 0)])
def test_g_index_examples(cites, g):
    assert g_index(cites) == g == g_index_scan(cites)


def test_negative_citations_rejected():
    with pytest.raises(ValueError):
        h_index([3, -1])
    with pytest.raises(ValueError):
        g_index([-2])


def test_m_index_examples():
    assert round(m_index(104, 1990, 2019), 2) == 3.47
    assert round(m_index(62, 1992, 2019), 2) == 2.21
    assert m_index(0, 2000, 2019) == 0
    assert m_index(5, 2019, 2019) == 5
    with pytest.raises(ValueError):
        m_index(1, 2020, 2019)


@settings(max_examples=300, deadline=None)
@given(citations)
def test_index_properties(cites):
    h, g = h_index(cites), g_index(cites)
    assert h == h_index_scan(cites)
    assert g == g_index_scan(cites)
    assert h <= g <= len(cites)
    # adding a paper or a citation never lowers either index
    assert h_index(cites + [0]) >= h and g_index(cites + [0]) >= g
    if cites:
        bumped = [cites[0] + 1] + cites[1:]
        assert h_index(bumped) >= h and g_index(bumped) >= g


def _aff(org, country):
    return Affiliation(raw=f"{org}, {country}", organization=org, country=country)


def _doc(uid, year, tc, *affs, rp=None, authors=()):
    from biblioforge.corpus import AuthorRef
    return Document(uid=uid, title=uid, pub_year=year, times_cited=tc, affiliations=tuple(affs),
                    reprint=rp, authors=tuple(AuthorRef(a) for a in authors), source_title="J")


@pytest.fixture
def small_corpus():
    usa, chn, fra = _aff("MIT", "USA"), _aff("CAS", "China"), _aff("CNRS", "France")
    return Corpus((
        _doc("d1", 2015, 10, usa, chn, rp=usa, authors=("Doe, J", "Li, X")),
        _doc("d2", 2016, 4, usa, rp=usa, authors=("Doe, J",)),
        _doc("d3", 2017, 0, chn, fra, rp=chn, authors=("Li, X",)),
        _doc("d4", 2019, 7, fra, authors=("Roe, K",)),
    ))


def test_entity_documents_full_counting(small_corpus):
    docs = entity_documents(small_corpus, "country")
    assert docs == {"USA": {"d1", "d2"}, "China": {"d1", "d3"}, "France": {"d3", "d4"}}
    assert sum(len(v) for v in docs.values()) > len(small_corpus)
    assert entity_documents(small_corpus, "author")["doe, j"] == {"d1", "d2"}
    assert entity_documents(small_corpus, "source") == {"J": {"d1", "d2", "d3", "d4"}}
    with pytest.raises(ValueError):
        entity_documents(small_corpus, "planet")


def test_entity_stats_country(small_corpus):
    stats = {s.id: s for s in entity_stats(small_corpus, "country")}
    usa = stats["USA"]
    assert (usa.total_pubs, usa.citations_total, usa.h, usa.g, usa.first_pub_year) == (2, 14, 2, 2, 2015)
    assert usa.pct_of_corpus == 50.0
    assert usa.m == pytest.approx(2 / 5)
    assert (usa.corresponding_pubs, usa.single_country_pubs, usa.collaborative_pubs) == (2, 1, 1)
    assert (stats["France"].corresponding_pubs, stats["France"].single_country_pubs) == (0, 0)
    assert sum(s.pct_of_corpus for s in stats.values()) > 100
    for s in stats.values():
        assert s.avg_citations * s.total_pubs == pytest.approx(s.citations_total)


def test_entity_stats_ordering(small_corpus):
    ids = [s.id for s in entity_stats(small_corpus, "country")]
    assert ids == ["China", "France", "USA"]  # all tied on 2 publications


def test_single_document_entity():
    corpus = Corpus((_doc("d1", 2015, 3, _aff("MIT", "USA")),))
    (s,) = entity_stats(corpus, "organization", analysis_year=2019)
    assert (s.h, s.g) == (1, 1)
    assert s.m == pytest.approx(0.2)


def test_empty_corpus():
    assert entity_stats(Corpus(), "country") == []


def test_collaboration_shares(small_corpus):
    assert collaboration_shares(small_corpus, "USA") == (2, 1, 1)
    assert collaboration_shares(small_corpus, "China") == (1, 0, 1)
    assert collaboration_shares(small_corpus, "France") == (0, 0, 0)
    assert missing_reprint_count(small_corpus) == 1


def test_tpgd():
    docs = tuple(_doc(f"d{i}", 2015, 0, _aff("MIT", "USA")) for i in range(100))
    gerd = {"USA": GerdSeries("USA", {2015: 1.0, 2016: 3.0})}
    (s,) = entity_stats(Corpus(docs), "country", gerd=gerd)
    assert s.tpgd == pytest.approx(50.0)


def test_tpgd_unmatched_country_warns(small_corpus, caplog):
    gerd = {"Atlantis": GerdSeries("Atlantis", {2015: 1.0})}
    with caplog.at_level(logging.WARNING):
        stats = entity_stats(small_corpus, "country", gerd=gerd)
    assert all(s.tpgd is None for s in stats)
    assert "Atlantis" in caplog.text


def test_read_gerd_csv():
    table = read_gerd_csv("country,year,gerd_ppp_billion\nUSA,2015,500\nUSA,2016,520\nPeoples R China,2015,400\n")
    assert table["USA"].mean == 510
    assert table["China"].yearly == {2015: 400.0}


@pytest.mark.parametrize("text, line", [
    ("country,year,gerd\nUSA,2015\n", 2),
    ("USA,2015,10\nUSA,abc,10\n", 2),
    ("USA,2015,10\nChina,2015,10\nFrance,2015,-1\n", 3),
])
def test_gerd_errors_name_line(text, line):
    with pytest.raises(GerdFormatError) as info:
        read_gerd_csv(text)
    assert info.value.lineno == line
    assert f"line {line}" in str(info.value)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_stats_on_random_corpora(seed):
    corpus = random_corpus(random.Random(seed))
    for kind in ("author", "country", "organization", "source"):
        docsets = entity_documents(corpus, kind)
        stats = entity_stats(corpus, kind)
        assert {s.id for s in stats} == set(docsets)
        for s in stats:
            cites = [corpus.by_uid[u].times_cited for u in docsets[s.id]]
            assert s.total_pubs == len(docsets[s.id])
            assert s.citations_total == sum(cites)
            assert s.h == h_index_scan(cites) and s.g == g_index_scan(cites)
            assert s.avg_citations * s.total_pubs == pytest.approx(s.citations_total)
            if kind == "country":
                assert s.single_country_pubs + s.collaborative_pubs == s.corresponding_pubs
