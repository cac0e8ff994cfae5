import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biblioforge.corpus import Corpus, Document
from biblioforge.trends import GLYPHS, UNDEFINED_GLYPH, annual_counts, avg_growth, bucket_for, classify

WINDOW = (2015, 2019)


def test_annual_counts_zero_filled():
    corpus = Corpus(tuple(Document(uid=u, title=u, pub_year=y) for u, y in
                          [("a", 2015), ("b", 2015), ("c", 2017), ("d", 2012)]))
    assert annual_counts({"a", "b", "c", "d"}, corpus, (2015, 2017)) == {2015: 2, 2016: 0, 2017: 1}


def test_worked_growth_sequence():
    counts = dict(zip(range(2015, 2020), [10, 12, 9, 9, 18]))
    assert abs(avg_growth(counts, WINDOW) - 23.75) <= 1e-9


def test_growth_edge_cases():
    assert avg_growth(dict.fromkeys(range(2015, 2020), 4), WINDOW) == 0
    assert avg_growth(dict.fromkeys(range(2015, 2020), 0), WINDOW) is None
    # zero-base years are skipped, not treated as infinite growth
    assert avg_growth({2015: 0, 2016: 5, 2017: 10, 2018: 10, 2019: 5}, WINDOW) == pytest.approx((100 + 0 - 50) / 3)
    with pytest.raises(ValueError):
        avg_growth({2015: 1}, (2015, 2015))


@pytest.mark.parametrize("avg, glyph", [
    (0, "→"), (20, "→"), (20.01, "↗"), (40, "↗"), (50, "↑"), (60, "↑"),
    (80, "↑↑"), (80.5, "↑↑↑"), (100, "↑↑↑"), (-30, "→"),
])
def test_bucket_boundaries(avg, glyph):
    assert GLYPHS[bucket_for(avg, 100)] == glyph


def test_classify():
    result = classify({"A": 100.0, "B": 50.0, "C": None, "D": -10.0})
    assert [result[k].glyph for k in "ABCD"] == ["↑↑↑", "↑", UNDEFINED_GLYPH, "→"]
    assert result["C"].bucket is None


def test_classify_all_non_positive():
    result = classify({"A": -5.0, "B": 0.0})
    assert {r.bucket for r in result.values()} == {0}


averages = st.dictionaries(st.text(min_size=1, max_size=3),
                           st.one_of(st.none(), st.floats(-100, 1000, allow_nan=False)), min_size=1)


@settings(max_examples=200, deadline=None)
@given(averages)
def test_classification_properties(avgs):
    result = classify(avgs)
    defined = {k: v for k, v in avgs.items() if v is not None}
    for k, v in avgs.items():
        assert (result[k].bucket is None) == (v is None)
    # monotone in the average
    ordered = sorted(defined, key=defined.get)
    buckets = [result[k].bucket for k in ordered]
    assert buckets == sorted(buckets)
    if defined and max(defined.values()) > 0:
        top = max(defined, key=defined.get)
        assert result[top].bucket == 4
