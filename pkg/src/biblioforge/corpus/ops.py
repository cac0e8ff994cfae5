"""Corpus-level transforms: duplicate removal and record filtering."""
from __future__ import annotations

from typing import Callable, Hashable, Iterable, Optional

from .model import Corpus, Document, normalize_title


def _keep_best(docs: Iterable[Document], key: Callable[[Document], Optional[Hashable]]) -> list[Document]:
    """One survivor per key: most cited, earliest on ties, placed at the key's first position."""
    slots: dict[Hashable, int] = {}
    out: list[Document] = []
    for doc in docs:
        k = key(doc)
        if k is None:
            out.append(doc)
            continue
        pos = slots.get(k)
        if pos is None:
            slots[k] = len(out)
            out.append(doc)
        elif doc.times_cited > out[pos].times_cited:
            out[pos] = doc
    return out


def _title_key(doc: Document):
    title = normalize_title(doc.title)
    # untitled records are never merged on title
    return (title, doc.pub_year) if title else None


def dedupe(corpus: Corpus) -> Corpus:
    """Drop repeated uids, then repeated (normalized title, year) pairs."""
    docs = _keep_best(corpus.documents, lambda d: d.uid)
    docs = _keep_best(docs, _title_key)
    return Corpus(tuple(docs), corpus.source_files, corpus.warnings)


def _doc_types(doc: Document) -> set[str]:
    return {t.strip().casefold() for t in doc.doc_type.split(";") if t.strip()}


def filter_corpus(
    corpus: Corpus,
    years: Optional[tuple[int, int]] = None,
    doc_types: Optional[Iterable[str]] = None,
    languages: Optional[Iterable[str]] = None,
) -> Corpus:
    """Keep documents matching every given predicate; ``None`` means unrestricted.

    ``years`` is inclusive. A compound document type such as
    ``"Article; Proceedings Paper"`` matches if any of its parts is wanted.
    Type and language comparisons ignore case.
    """
    if years is not None and years[0] > years[1]:
        raise ValueError(f"year range {years} is not ordered")
    wanted_types = None if doc_types is None else {t.strip().casefold() for t in doc_types}
    wanted_langs = None if languages is None else {l.strip().casefold() for l in languages}

    def keep(doc: Document) -> bool:
        if years is not None and not years[0] <= doc.pub_year <= years[1]:
            return False
        if wanted_types is not None and not (_doc_types(doc) & wanted_types):
            return False
        if wanted_langs is not None and doc.language.strip().casefold() not in wanted_langs:
            return False
        return True

    return Corpus(tuple(d for d in corpus.documents if keep(d)), corpus.source_files, corpus.warnings)
