"""Record model shared by every parser and analysis step."""
from __future__ import annotations

import hashlib
import re
import string
import unicodedata
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

UNKNOWN_COUNTRY = "UNKNOWN"
MIN_YEAR, MAX_YEAR = 1900, 2100

_WS = re.compile(r"\s+")


def collapse_ws(text: str) -> str:
    return _WS.sub(" ", text).strip()


def author_key(short_name: str) -> str:
    return collapse_ws(short_name).lower()


def normalize_title(title: str) -> str:
    """Lowercase, drop punctuation, collapse whitespace."""
    chars = []
    for ch in title.lower():
        if ch in string.punctuation or unicodedata.category(ch).startswith("P"):
            chars.append(" ")
        else:
            chars.append(ch)
    return collapse_ws("".join(chars))


def fallback_uid(title: str, year: int) -> str:
    digest = hashlib.sha1(f"{normalize_title(title)}|{year}".encode("utf-8")).hexdigest()
    return f"HASH:{digest[:16]}"


@dataclass(frozen=True)
class AuthorRef:
    short_name: str
    full_name: Optional[str] = None
    key: str = ""

    def __post_init__(self) -> None:
        expected = author_key(self.short_name)
        if self.key != expected:
            object.__setattr__(self, "key", expected)


@dataclass(frozen=True)
class Affiliation:
    raw: str
    organization: str
    country: str
    # Bracketed author list of a C1 line, or the reprint author for RP.
    authors: tuple[str, ...] = ()


@dataclass(frozen=True)
class Document:
    uid: str
    title: str
    pub_year: int
    abstract: Optional[str] = None
    doc_type: str = ""
    language: str = ""
    source_title: str = ""
    authors: tuple[AuthorRef, ...] = ()
    author_keywords: tuple[str, ...] = ()
    keywords_plus: tuple[str, ...] = ()
    affiliations: tuple[Affiliation, ...] = ()
    reprint: Optional[Affiliation] = None
    times_cited: int = 0

    def __post_init__(self) -> None:
        if not self.uid:
            raise ValueError("document uid must be non-empty")
        if not MIN_YEAR <= self.pub_year <= MAX_YEAR:
            raise ValueError(f"{self.uid}: pub_year {self.pub_year} outside [{MIN_YEAR}, {MAX_YEAR}]")
        if self.times_cited < 0:
            raise ValueError(f"{self.uid}: negative times_cited")
        for name in ("author_keywords", "keywords_plus"):
            values = getattr(self, name)
            if any(not v.strip() for v in values):
                raise ValueError(f"{self.uid}: empty entry in {name}")

    @property
    def countries(self) -> frozenset[str]:
        """Distinct known countries over the affiliation list."""
        return frozenset(a.country for a in self.affiliations if a.country != UNKNOWN_COUNTRY)

    @property
    def organizations(self) -> frozenset[str]:
        return frozenset(a.organization for a in self.affiliations if a.organization)


@dataclass(frozen=True)
class Corpus:
    """An ordered collection of documents.

    Parsers keep every record they read, so raw corpora may repeat a uid;
    :func:`biblioforge.corpus.dedupe` yields a corpus with distinct uids.
    Equality compares the documents only; provenance and parse warnings are
    carried along for reporting.
    """

    documents: tuple[Document, ...] = ()
    source_files: tuple[str, ...] = field(default=(), compare=False)
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    @cached_property
    def by_uid(self) -> dict[str, Document]:
        return {doc.uid: doc for doc in self.documents}

    def year_range(self) -> Optional[tuple[int, int]]:
        if not self.documents:
            return None
        years = [d.pub_year for d in self.documents]
        return min(years), max(years)

    def uids_distinct(self) -> bool:
        return len({d.uid for d in self.documents}) == len(self.documents)

    @classmethod
    def concat(cls, corpora: Iterable["Corpus"]) -> "Corpus":
        docs: list[Document] = []
        sources: list[str] = []
        warnings: list[str] = []
        for c in corpora:
            docs.extend(c.documents)
            sources.extend(c.source_files)
            warnings.extend(c.warnings)
        return cls(tuple(docs), tuple(sources), tuple(warnings))
