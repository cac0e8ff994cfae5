"""Canonical JSON-lines corpus format: one document object per line."""
from __future__ import annotations

import json
from dataclasses import asdict, fields
from typing import BinaryIO, Union

from .model import Affiliation, AuthorRef, Corpus, Document

_DOC_FIELDS = tuple(f.name for f in fields(Document))
_AFF_FIELDS = tuple(f.name for f in fields(Affiliation))
_AUTHOR_FIELDS = tuple(f.name for f in fields(AuthorRef))


class CanonicalFormatError(ValueError):
    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def document_to_dict(doc: Document) -> dict:
    return asdict(doc)


def _affiliation(obj) -> Affiliation:
    if not isinstance(obj, dict) or set(obj) != set(_AFF_FIELDS):
        raise ValueError(f"affiliation must have fields {_AFF_FIELDS}")
    return Affiliation(obj["raw"], obj["organization"], obj["country"], tuple(obj["authors"]))


def document_from_dict(obj) -> Document:
    if not isinstance(obj, dict):
        raise ValueError("expected a JSON object")
    if set(obj) != set(_DOC_FIELDS):
        missing = sorted(set(_DOC_FIELDS) - set(obj))
        extra = sorted(set(obj) - set(_DOC_FIELDS))
        raise ValueError(f"field mismatch (missing {missing}, unexpected {extra})")
    authors = []
    for a in obj["authors"]:
        if not isinstance(a, dict) or set(a) != set(_AUTHOR_FIELDS):
            raise ValueError(f"author must have fields {_AUTHOR_FIELDS}")
        authors.append(AuthorRef(a["short_name"], a["full_name"]))
    for name in ("pub_year", "times_cited"):
        if not isinstance(obj[name], int) or isinstance(obj[name], bool):
            raise ValueError(f"{name} must be an integer")
    return Document(
        uid=obj["uid"],
        title=obj["title"],
        pub_year=obj["pub_year"],
        abstract=obj["abstract"],
        doc_type=obj["doc_type"],
        language=obj["language"],
        source_title=obj["source_title"],
        authors=tuple(authors),
        author_keywords=tuple(obj["author_keywords"]),
        keywords_plus=tuple(obj["keywords_plus"]),
        affiliations=tuple(_affiliation(a) for a in obj["affiliations"]),
        reprint=None if obj["reprint"] is None else _affiliation(obj["reprint"]),
        times_cited=obj["times_cited"],
    )


def write_canonical(corpus: Corpus) -> bytes:
    lines = [json.dumps(document_to_dict(d), ensure_ascii=False) for d in corpus.documents]
    return "".join(line + "\n" for line in lines).encode("utf-8")


def read_canonical(stream: Union[bytes, bytearray, BinaryIO], source: str = "<stream>") -> Corpus:
    data = stream if isinstance(stream, (bytes, bytearray)) else stream.read()
    docs = []
    for lineno, line in enumerate(bytes(data).decode("utf-8-sig").splitlines(), 1):
        if not line.strip():
            continue
        try:
            docs.append(document_from_dict(json.loads(line)))
        except (ValueError, TypeError, KeyError) as exc:
            raise CanonicalFormatError(str(exc), lineno) from exc
    return Corpus(tuple(docs), (source,))
