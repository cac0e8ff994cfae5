"""Reader for Web of Science tagged plain-text exports.

Layout of an export::

    FN Clarivate Analytics Web of Science
    VR 1.0
    PT J
    AU Doe, J
       Roe, K
    TI A Study
    ...
    ER

    EF

Each field line is a two-character tag, a space and the value. Lines starting
with three spaces continue the previous tag. For list-valued tags (authors,
addresses) every continuation line is a new item; for text tags it is joined
to the previous text with a space.
"""
from __future__ import annotations

import logging
import re
from typing import BinaryIO, Mapping, Optional, Union

from .countries import normalize_country
from .model import (
    MAX_YEAR,
    MIN_YEAR,
    Affiliation,
    AuthorRef,
    Corpus,
    Document,
    collapse_ws,
    fallback_uid,
)

log = logging.getLogger(__name__)

LIST_TAGS = frozenset({"AU", "AF", "BA", "BF", "CA", "GP", "C1", "C3", "CR", "EM"})
HEADER_TAGS = frozenset({"FN", "VR"})

_BRACKETED = re.compile(r"^\s*\[([^\]]*)\]\s*(.*)$", re.S)
_REPRINT_MARK = re.compile(r"\((?:reprint|corresponding) author\)", re.I)
_RP_SPLIT = re.compile(r"\.\s*;\s*")


class WosParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _as_bytes(stream: Union[bytes, bytearray, BinaryIO]) -> bytes:
    if isinstance(stream, (bytes, bytearray)):
        return bytes(stream)
    return stream.read()


def normalize_organization(raw: str) -> str:
    return collapse_ws(raw).rstrip(".").strip()


def parse_address(raw: str, aliases: Optional[Mapping[str, str]] = None) -> Affiliation:
    """Split one C1 address into organization (first segment) and country (last)."""
    text = collapse_ws(raw)
    authors: tuple[str, ...] = ()
    m = _BRACKETED.match(text)
    if m:
        authors = tuple(a.strip() for a in m.group(1).split(";") if a.strip())
        text = m.group(2)
    segments = [s.strip() for s in text.split(",")]
    organization = normalize_organization(segments[0]) if segments else ""
    country = normalize_country(segments[-1] if len(segments) > 1 else "", aliases)
    return Affiliation(raw=collapse_ws(raw), organization=organization, country=country, authors=authors)


def parse_reprint(raw: str, aliases: Optional[Mapping[str, str]] = None) -> Optional[Affiliation]:
    """Parse an RP field; with several corresponding authors only the first is used."""
    text = collapse_ws(raw)
    if not text:
        return None
    first = _RP_SPLIT.split(text, maxsplit=1)[0]
    m = _REPRINT_MARK.search(first)
    if not m:
        return parse_address(first, aliases)
    author = first[: m.start()].strip().rstrip(",").strip()
    address = first[m.end():].strip().lstrip(",").strip()
    aff = parse_address(address, aliases)
    return Affiliation(raw=text, organization=aff.organization, country=aff.country,
                       authors=(author,) if author else ())


def split_keywords(value: str) -> tuple[str, ...]:
    out = []
    for part in value.split(";"):
        part = collapse_ws(part)
        if part.rstrip(".,").strip():
            out.append(part)
    return tuple(out)


class _Record:
    __slots__ = ("offset", "fields", "last_tag")

    def __init__(self, offset: int):
        self.offset = offset
        self.fields: dict[str, list[str]] = {}
        self.last_tag: Optional[str] = None

    def add(self, tag: str, value: str) -> None:
        self.fields.setdefault(tag, []).append(value)
        self.last_tag = tag

    def extend(self, value: str) -> None:
        tag = self.last_tag
        if tag is None:
            return
        if tag in LIST_TAGS:
            self.fields[tag].append(value)
        else:
            self.fields[tag][-1] = f"{self.fields[tag][-1]} {value}"

    def text(self, tag: str) -> str:
        return collapse_ws(" ".join(self.fields.get(tag, ())))

    def items(self, tag: str) -> list[str]:
        return [collapse_ws(v) for v in self.fields.get(tag, ()) if v.strip()]


def _build_document(rec: _Record, aliases) -> tuple[Optional[Document], Optional[str]]:
    where = f"record at byte {rec.offset}"
    py = rec.text("PY")
    if not py:
        return None, f"{where}: missing PY"
    try:
        year = int(py)
    except ValueError:
        return None, f"{where}: non-integer PY {py!r}"
    if not MIN_YEAR <= year <= MAX_YEAR:
        return None, f"{where}: PY {year} out of range"

    tc = rec.text("TC")
    try:
        times_cited = int(tc) if tc else 0
    except ValueError:
        return None, f"{where}: non-integer TC {tc!r}"
    if times_cited < 0:
        return None, f"{where}: negative TC"

    title = rec.text("TI")
    uid = rec.text("UT")
    if not uid:
        doi = rec.text("DI")
        if doi:
            uid = f"DOI:{doi}"
        elif title:
            uid = fallback_uid(title, year)
        else:
            return None, f"{where}: no UT, DI or TI to derive an identifier"

    short = rec.items("AU")
    full = rec.items("AF")
    if len(full) != len(short):
        full = [None] * len(short)
    authors = tuple(AuthorRef(s, f) for s, f in zip(short, full))

    rp = rec.text("RP")
    doc = Document(
        uid=uid,
        title=title,
        pub_year=year,
        abstract=rec.text("AB") or None,
        doc_type=rec.text("DT"),
        language=rec.text("LA"),
        source_title=rec.text("SO"),
        authors=authors,
        author_keywords=split_keywords(rec.text("DE")),
        keywords_plus=split_keywords(rec.text("ID")),
        affiliations=tuple(parse_address(a, aliases) for a in rec.items("C1")),
        reprint=parse_reprint(rp, aliases) if rp else None,
        times_cited=times_cited,
    )
    return doc, None


def parse_wos(
    stream: Union[bytes, bytearray, BinaryIO],
    source: str = "<stream>",
    aliases: Optional[Mapping[str, str]] = None,
) -> Corpus:
    """Parse a tagged export into a :class:`Corpus`.

    Records without a usable year or identifier are skipped and reported in
    ``Corpus.warnings``. A record still open at end of input raises
    :class:`WosParseError` with the byte offset of its ``PT`` line.
    """
    data = _as_bytes(stream)
    docs: list[Document] = []
    warnings: list[str] = []
    rec: Optional[_Record] = None
    offset = 0
    if data.startswith(b"\xef\xbb\xbf"):
        offset = 3

    while offset < len(data):
        nl = data.find(b"\n", offset)
        end = len(data) if nl < 0 else nl + 1
        line_start = offset
        line = data[offset:end].decode("utf-8", errors="replace").rstrip("\r\n")
        offset = end
        if not line.strip():
            continue

        if rec is None:
            tag = line[:2]
            if tag == "PT":
                rec = _Record(line_start)
                rec.add("PT", line[3:])
            elif tag == "EF":
                break
            # header lines and stray text outside records carry nothing we use
            continue

        if line.startswith("   "):
            rec.extend(line[3:].strip())
            continue
        tag = line[:2]
        if tag == "ER":
            doc, problem = _build_document(rec, aliases)
            if doc is not None:
                docs.append(doc)
            else:
                log.warning("%s: %s", source, problem)
                warnings.append(problem)
            rec = None
        elif tag == "PT":
            raise WosParseError(f"{source}: record not terminated by ER before next PT", rec.offset)
        else:
            rec.add(tag, line[3:].strip())

    if rec is not None:
        raise WosParseError(f"{source}: truncated record, end of input before ER", rec.offset)
    return Corpus(tuple(docs), (source,), tuple(warnings))
