"""Command-line entry point: ``biblioforge {ingest,keywords,metrics,trends,network}``.

Defaults may come from a JSON config file given with ``--config`` or the
``BIBLIOFORGE_CONFIG`` environment variable. Top-level keys apply to every
subcommand, a nested object under a subcommand name applies to that command
only, and command-line flags always win.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .corpus import (
    Corpus,
    dedupe,
    filter_corpus,
    load_aliases,
    parse_bibtex,
    parse_wos,
    read_canonical,
    write_canonical,
)
from .keywords import (
    GroupingPolicy,
    extract_keywords,
    group_keywords,
    load_stopwords,
    split_words,
    words_as_groups,
)
from .metrics import ENTITY_KINDS, entity_documents, entity_stats, load_gerd
from .networks import (
    collaboration_edges,
    cooccurrence,
    export_graph,
    filter_network,
)
from .reports import GROUP_HEADER, entity_table, fmt, group_rows, render
from .trends import DEFAULT_WINDOW, annual_counts, avg_growth, classify

log = logging.getLogger("biblioforge")

CONFIG_ENV = "BIBLIOFORGE_CONFIG"
COMMANDS = ("ingest", "keywords", "metrics", "trends", "network")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Resolved settings for one command invocation."""

    inputs: list[str] = field(default_factory=list)
    input_format: Optional[str] = None
    years: Optional[tuple[int, int]] = None
    doc_types: Optional[list[str]] = None
    languages: Optional[list[str]] = None
    include_keywords_plus: bool = False
    policy: GroupingPolicy = field(default_factory=GroupingPolicy)
    window: tuple[int, int] = DEFAULT_WINDOW
    analysis_year: Optional[int] = None
    gerd_path: Optional[str] = None
    alias_path: Optional[str] = None
    stopword_path: Optional[str] = None
    output: Optional[str] = None

    def check_paths(self) -> None:
        for p in [*self.inputs, self.gerd_path, self.alias_path, self.stopword_path]:
            if p is not None and p != "-" and not Path(p).is_file():
                raise UsageError(f"cannot read {p}: no such file")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        inputs = getattr(args, "inputs", None) or ([args.corpus] if getattr(args, "corpus", None) else [])
        policy = GroupingPolicy(
            tier1_min_len=getattr(args, "tier1_min_len", 5),
            tier1_max_dist=getattr(args, "tier1_max_dist", 1),
            tier2_min_len=getattr(args, "tier2_min_len", 9),
            tier2_max_dist=getattr(args, "tier2_max_dist", 2),
        )
        return cls(
            inputs=list(inputs),
            input_format=getattr(args, "format", None) if args.command == "ingest" else None,
            years=getattr(args, "years", None),
            doc_types=getattr(args, "doc_type", None),
            languages=getattr(args, "language", None),
            include_keywords_plus=getattr(args, "include_keywords_plus", False),
            policy=policy,
            window=getattr(args, "window", DEFAULT_WINDOW),
            analysis_year=getattr(args, "analysis_year", None),
            gerd_path=getattr(args, "gerd", None),
            alias_path=getattr(args, "aliases", None),
            stopword_path=getattr(args, "stopwords", None),
            output=getattr(args, "output", None),
        )


def year_span(text: str) -> tuple[int, int]:
    try:
        if ":" in str(text):
            a, b = str(text).split(":", 1)
            span = (int(a), int(b))
        else:
            span = (int(text), int(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected YEAR or START:END, got {text!r}") from None
    if span[0] > span[1]:
        raise argparse.ArgumentTypeError(f"year range {text!r} is not ordered")
    return span


def _add_policy_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--include-keywords-plus", action="store_true",
                   help="also analyse KeywordsPlus (ID) terms")
    p.add_argument("--tier1-min-len", type=int, default=5)
    p.add_argument("--tier1-max-dist", type=int, default=1)
    p.add_argument("--tier2-min-len", type=int, default=9)
    p.add_argument("--tier2-max-dist", type=int, default=2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biblioforge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help=f"JSON config file (default: ${CONFIG_ENV})")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse, filter and deduplicate exports into a canonical corpus")
    p.add_argument("inputs", nargs="+", help="export files")
    p.add_argument("--format", choices=("wos", "bibtex", "canonical"),
                   help="input format (default: guessed from the file extension)")
    p.add_argument("--years", type=year_span, help="inclusive range START:END")
    p.add_argument("--doc-type", action="append", help="keep only this document type (repeatable)")
    p.add_argument("--language", action="append", help="keep only this language (repeatable)")
    p.add_argument("--aliases", help="extra country alias CSV (raw,canonical)")
    p.add_argument("-o", "--output", default="-", help="canonical JSONL output (default: stdout)")

    p = sub.add_parser("keywords", help="group keyword spelling variants and emit the group table")
    p.add_argument("corpus")
    _add_policy_flags(p)
    p.add_argument("--words", action="store_true", help="also write the single-word table")
    p.add_argument("--stopwords", help="file with one stopword per line")
    p.add_argument("--min-count", type=int, default=1, help="omit rows with fewer occurrences")
    p.add_argument("-o", "--output", default="keyword_groups.csv")
    p.add_argument("--words-output", default="keyword_words.csv")

    p = sub.add_parser("metrics", help="per-entity indices report")
    p.add_argument("corpus")
    p.add_argument("--entity", choices=ENTITY_KINDS, default="country")
    p.add_argument("--analysis-year", type=int)
    p.add_argument("--gerd", help="CSV country,year,gerd_ppp_billion")
    p.add_argument("--aliases", help="extra country alias CSV for the GERD file")
    p.add_argument("--window", type=year_span, default=DEFAULT_WINDOW, help="trend window START:END")
    p.add_argument("--top", type=int, help="report only the N most productive entities")
    p.add_argument("--format", choices=("csv", "markdown"), default="csv")
    p.add_argument("-o", "--output", default="-")

    p = sub.add_parser("trends", help="annual counts and growth arrows per entity")
    p.add_argument("corpus")
    p.add_argument("--entity", choices=ENTITY_KINDS + ("keyword",), default="country")
    _add_policy_flags(p)
    p.add_argument("--window", type=year_span, default=DEFAULT_WINDOW)
    p.add_argument("--top", type=int)
    p.add_argument("--format", choices=("csv", "markdown"), default="csv")
    p.add_argument("-o", "--output", default="-")

    p = sub.add_parser("network", help="co-occurrence matrix or collaboration graph")
    p.add_argument("corpus")
    p.add_argument("--kind", choices=("cooccurrence", "country", "org", "organization", "author"),
                   default="cooccurrence")
    _add_policy_flags(p)
    p.add_argument("--top", type=int, help="keywords in the matrix, or most productive entities kept")
    p.add_argument("--top-edges", type=int, help="heaviest collaborations kept per entity")
    p.add_argument("--min-weight", type=int, default=1)
    p.add_argument("--format", choices=("graphml", "dot", "csv"), default="graphml")
    p.add_argument("-o", "--output", default="-")
    return parser


def _config_defaults(path: Optional[str], command: str) -> dict:
    if not path:
        return {}
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot load config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must hold a JSON object")
    merged = {k.replace("-", "_"): v for k, v in data.items() if k not in COMMANDS}
    section = data.get(command) or {}
    merged.update({k.replace("-", "_"): v for k, v in section.items()})
    for key in ("years", "window"):
        value = merged.get(key)
        if isinstance(value, list):
            value = ":".join(map(str, value))
        if isinstance(value, (str, int)):
            try:
                merged[key] = year_span(str(value))
            except argparse.ArgumentTypeError as exc:
                raise UsageError(f"config {path}: {key}: {exc}") from None
    return merged


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    config_path = args.config or os.environ.get(CONFIG_ENV)
    defaults = _config_defaults(config_path, args.command)
    if defaults:
        subparser = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest for a in subparser._actions}
        subparser.set_defaults(**{k: v for k, v in defaults.items() if k in known})
        args = parser.parse_args(argv)
    return args


def _write(path: Optional[str], data: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(path).write_bytes(data)


def _guess_format(path: str) -> str:
    suffix = Path(path).suffix.lower()
    if suffix == ".bib":
        return "bibtex"
    if suffix in (".jsonl", ".ndjson"):
        return "canonical"
    return "wos"


def load_corpus(path: str) -> Corpus:
    if path == "-":
        return read_canonical(sys.stdin.buffer.read(), "<stdin>")
    return read_canonical(Path(path).read_bytes(), path)


def cmd_ingest(args, cfg: RunConfig) -> int:
    aliases = load_aliases(cfg.alias_path) if cfg.alias_path else None
    parts = []
    for path in cfg.inputs:
        data = Path(path).read_bytes()
        kind = cfg.input_format or _guess_format(path)
        if kind == "wos":
            parts.append(parse_wos(data, path, aliases))
        elif kind == "bibtex":
            parts.append(parse_bibtex(data, path))
        else:
            parts.append(read_canonical(data, path))
    corpus = Corpus.concat(parts)
    corpus = filter_corpus(corpus, cfg.years, cfg.doc_types, cfg.languages)
    corpus = dedupe(corpus)
    _write(cfg.output, write_canonical(corpus))

    span = corpus.year_range()
    years = f"{span[0]}-{span[1]}" if span else "n/a"
    summary = f"{len(corpus)} documents, years {years}, {len(corpus.warnings)} warnings"
    print(summary, file=sys.stderr if cfg.output in (None, "-") else sys.stdout)
    return 0


def _groups(corpus: Corpus, cfg: RunConfig):
    docsets = extract_keywords(corpus, cfg.include_keywords_plus)
    return docsets, group_keywords(docsets, cfg.policy, corpus=corpus)


def cmd_keywords(args, cfg: RunConfig) -> int:
    corpus = load_corpus(cfg.inputs[0])
    docsets, groups = _groups(corpus, cfg)
    shown = [g for g in groups if g.occurrences >= args.min_count]
    _write(cfg.output, render(GROUP_HEADER, group_rows(shown), "csv").encode("utf-8"))
    if args.words:
        stop = load_stopwords(cfg.stopword_path) if cfg.stopword_path else ()
        words = words_as_groups(split_words(docsets, stop), corpus)
        shown = [w for w in words if w.occurrences >= args.min_count]
        _write(args.words_output, render(GROUP_HEADER, group_rows(shown), "csv").encode("utf-8"))
    return 0


def _window_has_data(corpus: Corpus, window: tuple[int, int]) -> bool:
    years = {d.pub_year for d in corpus.documents if window[0] <= d.pub_year <= window[1]}
    return len(years) >= 2


def _trend_classes(corpus: Corpus, docsets: dict, ids, window):
    avgs = {e: avg_growth(annual_counts(docsets[e], corpus, window), window) for e in ids}
    return classify(avgs)


def cmd_metrics(args, cfg: RunConfig) -> int:
    corpus = load_corpus(cfg.inputs[0])
    gerd = None
    if cfg.gerd_path:
        aliases = load_aliases(cfg.alias_path) if cfg.alias_path else None
        gerd = load_gerd(cfg.gerd_path, aliases)
    stats = entity_stats(corpus, args.entity, cfg.analysis_year, gerd if args.entity == "country" else None)
    if args.top is not None:
        stats = stats[: args.top]
    trends = None
    if _window_has_data(corpus, cfg.window):
        docsets = entity_documents(corpus, args.entity)
        trends = _trend_classes(corpus, docsets, [s.id for s in stats], cfg.window)
    header, rows = entity_table(stats, len(corpus), trends,
                                include_tpgd=gerd is not None and args.entity == "country")
    _write(cfg.output, render(header, rows, args.format).encode("utf-8"))
    return 0


def cmd_trends(args, cfg: RunConfig) -> int:
    corpus = load_corpus(cfg.inputs[0])
    if args.entity == "keyword":
        groups = _groups(corpus, cfg)[1]
        docsets = {g.canonical_label: g.doc_ids for g in groups}
        ids = [g.canonical_label for g in groups]
    else:
        docsets = entity_documents(corpus, args.entity)
        ids = sorted(docsets, key=lambda e: (-len(docsets[e]), e))
    if args.top is not None:
        ids = ids[: args.top]
    start, end = cfg.window
    if end <= start:
        raise UsageError("trend window must span at least two years")
    classes = _trend_classes(corpus, docsets, ids, cfg.window)
    header = ["entity"] + [str(y) for y in range(start, end + 1)] + ["avg_growth_pct", "trend"]
    rows = []
    for e in ids:
        counts = annual_counts(docsets[e], corpus, cfg.window)
        rows.append([e] + [str(counts[y]) for y in range(start, end + 1)]
                    + [fmt(classes[e].avg_growth_pct, 1), classes[e].glyph])
    _write(cfg.output, render(header, rows, args.format).encode("utf-8"))
    return 0


def cmd_network(args, cfg: RunConfig) -> int:
    corpus = load_corpus(cfg.inputs[0])
    if args.kind == "cooccurrence":
        graph = cooccurrence(_groups(corpus, cfg)[1], args.top)
    else:
        kind = "organization" if args.kind == "org" else args.kind
        graph = filter_network(collaboration_edges(corpus, kind), args.top, args.top_edges, args.min_weight)
    _write(cfg.output, export_graph(graph, args.format))
    return 0


HANDLERS = {
    "ingest": cmd_ingest,
    "keywords": cmd_keywords,
    "metrics": cmd_metrics,
    "trends": cmd_trends,
    "network": cmd_network,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = parse_args(argv)
    except UsageError as exc:
        print(f"biblioforge: error: {exc}", file=sys.stderr)
        return 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = RunConfig.from_args(args)
        cfg.check_paths()
        return HANDLERS[args.command](args, cfg)
    except UsageError as exc:
        print(f"biblioforge: error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"biblioforge: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
