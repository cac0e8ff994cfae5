"""Minimal BibTeX reader for ``@article`` entries."""
from __future__ import annotations

import logging
import re
from typing import BinaryIO, Optional, Union

from .model import MAX_YEAR, MIN_YEAR, AuthorRef, Corpus, Document, collapse_ws

log = logging.getLogger(__name__)

_SILENT_TYPES = frozenset({"comment", "preamble", "string"})
_NAME = re.compile(r"[A-Za-z0-9_\-:.+]+")


class BibtexParseError(ValueError):
    def __init__(self, message: str, key: str):
        super().__init__(f"entry {key!r}: {message}")
        self.key = key


def _skip_ws(text: str, i: int) -> int:
    while i < len(text) and text[i].isspace():
        i += 1
    return i


def _braced(text: str, i: int, key: str) -> tuple[str, int]:
    """Return the content of the brace group opening at ``text[i]``."""
    depth = 0
    start = i + 1
    while i < len(text):
        ch = text[i]
        if ch == "\\":
            i += 2
            continue
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth == 0:
                return text[start:i], i + 1
        i += 1
    raise BibtexParseError("unbalanced braces", key)


def _quoted(text: str, i: int, key: str) -> tuple[str, int]:
    depth = 0
    j = i + 1
    while j < len(text):
        ch = text[j]
        if ch == "\\":
            j += 2
            continue
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth < 0:
                raise BibtexParseError("unbalanced braces", key)
        elif ch == '"' and depth == 0:
            return text[i + 1:j], j + 1
        j += 1
    raise BibtexParseError("unterminated quoted value", key)


def _value(text: str, i: int, key: str) -> tuple[str, int]:
    parts = []
    while True:
        i = _skip_ws(text, i)
        if i >= len(text):
            raise BibtexParseError("unexpected end of input", key)
        ch = text[i]
        if ch == "{":
            part, i = _braced(text, i, key)
        elif ch == '"':
            part, i = _quoted(text, i, key)
        else:
            m = _NAME.match(text, i)
            if not m:
                raise BibtexParseError(f"unexpected character {ch!r}", key)
            part, i = m.group(0), m.end()
        parts.append(part)
        i = _skip_ws(text, i)
        if i < len(text) and text[i] == "#":
            i += 1
            continue
        return "".join(parts), i


def _clean(value: str) -> str:
    return collapse_ws(value.replace("{", "").replace("}", ""))


def _parse_entry(text: str, i: int) -> tuple[str, str, dict[str, str], int]:
    """Parse the entry whose ``@`` is at ``text[i]``; return (type, key, fields, next index)."""
    m = _NAME.match(text, i + 1)
    if not m:
        raise BibtexParseError("missing entry type", "?")
    etype = m.group(0).lower()
    i = _skip_ws(text, m.end())
    if i >= len(text) or text[i] not in "{(":
        raise BibtexParseError("expected '{' after entry type", "?")
    closer = "}" if text[i] == "{" else ")"

    if etype in _SILENT_TYPES:
        if closer == "}":
            _, j = _braced(text, i, etype)
        else:
            j = text.find(")", i)
            j = len(text) if j < 0 else j + 1
        return etype, "", {}, j

    i = _skip_ws(text, i + 1)
    comma = text.find(",", i)
    brace = text.find(closer, i)
    if comma < 0 or (0 <= brace < comma):
        key = text[i:brace if brace >= 0 else len(text)].strip()
        return etype, key, {}, (brace + 1 if brace >= 0 else len(text))
    key = text[i:comma].strip()
    i = comma + 1
    fields: dict[str, str] = {}
    while True:
        i = _skip_ws(text, i)
        if i >= len(text):
            raise BibtexParseError("unbalanced braces", key)
        if text[i] == closer:
            return etype, key, fields, i + 1
        if text[i] == ",":
            i += 1
            continue
        m = _NAME.match(text, i)
        if not m:
            raise BibtexParseError(f"unexpected character {text[i]!r}", key)
        name = m.group(0).lower()
        i = _skip_ws(text, m.end())
        if i >= len(text) or text[i] != "=":
            raise BibtexParseError(f"expected '=' after field {name!r}", key)
        value, i = _value(text, i + 1, key)
        fields[name] = value


def split_authors(value: str) -> tuple[AuthorRef, ...]:
    names = [collapse_ws(n) for n in re.split(r"\s+and\s+", _clean(value)) if n.strip()]
    return tuple(AuthorRef(n, n) for n in names)


def _split_list(value: str) -> tuple[str, ...]:
    return tuple(p for p in (collapse_ws(x) for x in re.split(r"[;,]", _clean(value)))
                 if p.rstrip(".,").strip())


def parse_bibtex(stream: Union[bytes, bytearray, BinaryIO, str], source: str = "<stream>") -> Corpus:
    """Parse ``@article`` entries; every other entry type is skipped with a warning."""
    if isinstance(stream, str):
        text = stream
    else:
        raw = bytes(stream) if isinstance(stream, (bytes, bytearray)) else stream.read()
        text = raw.decode("utf-8-sig", errors="replace")

    docs: list[Document] = []
    warnings: list[str] = []

    def warn(msg: str) -> None:
        log.warning("%s: %s", source, msg)
        warnings.append(msg)

    i = text.find("@")
    while i >= 0:
        etype, key, fields, i = _parse_entry(text, i)
        if etype in _SILENT_TYPES:
            pass
        elif etype != "article":
            warn(f"entry {key!r}: skipped @{etype}")
        else:
            doc = _to_document(key, fields, warn)
            if doc is not None:
                docs.append(doc)
        i = text.find("@", i)
    return Corpus(tuple(docs), (source,), tuple(warnings))


def _to_document(key: str, fields: dict[str, str], warn) -> Optional[Document]:
    missing = [f for f in ("author", "title", "year") if not _clean(fields.get(f, ""))]
    if not key:
        warn("entry without a citation key skipped")
        return None
    if missing:
        warn(f"entry {key!r}: missing {', '.join(missing)}")
        return None
    year_text = _clean(fields["year"])
    if not year_text.isdigit() or not MIN_YEAR <= int(year_text) <= MAX_YEAR:
        warn(f"entry {key!r}: unusable year {year_text!r}")
        return None
    cited_text = _clean(fields.get("times-cited", ""))
    if cited_text and not cited_text.isdigit():
        warn(f"entry {key!r}: non-integer times-cited {cited_text!r}")
        return None
    return Document(
        uid=key,
        title=_clean(fields["title"]),
        pub_year=int(year_text),
        abstract=_clean(fields["abstract"]) if "abstract" in fields else None,
        doc_type=_clean(fields.get("type", "")) or "Article",
        language=_clean(fields.get("language", "")),
        source_title=_clean(fields.get("journal", "")),
        authors=split_authors(fields["author"]),
        author_keywords=_split_list(fields.get("keywords", "")),
        keywords_plus=_split_list(fields.get("keywords-plus", "")),
        times_cited=int(cited_text) if cited_text else 0,
    )
