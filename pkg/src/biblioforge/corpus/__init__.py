"""Bibliographic records: parsing, canonical storage, deduplication and filtering."""
from .bibtex import BibtexParseError, parse_bibtex
from .canonical import CanonicalFormatError, read_canonical, write_canonical
from .countries import load_aliases, normalize_country
from .model import (
    UNKNOWN_COUNTRY,
    Affiliation,
    AuthorRef,
    Corpus,
    Document,
    normalize_title,
)
from .ops import dedupe, filter_corpus
from .wos import WosParseError, parse_address, parse_reprint, parse_wos

__all__ = [
    "UNKNOWN_COUNTRY",
    "Affiliation",
    "AuthorRef",
    "BibtexParseError",
    "CanonicalFormatError",
    "Corpus",
    "Document",
    "WosParseError",
    "dedupe",
    "filter_corpus",
    "load_aliases",
    "normalize_country",
    "normalize_title",
    "parse_address",
    "parse_bibtex",
    "parse_reprint",
    "parse_wos",
    "read_canonical",
    "write_canonical",
]
