"""Naive recomputation of the golden end-to-end outputs straight from the raw export.

Shares no code with the package: the export is scanned line by line, every
statistic is computed by brute force, and the outputs are formatted by hand.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from itertools import combinations

from oracles import closure_partition, g_index_scan, h_index_scan

COUNTRY_NAMES = {"Peoples R China": "China"}
CRLF = "\r\n"


def read_records(text: str) -> list[dict[str, list[str]]]:
    records, current, tag = [], None, None
    for line in text.splitlines():
        if line.startswith("PT "):
            current, tag = defaultdict(list), None
        if current is None:
            continue
        if line == "ER":
            records.append(dict(current))
            current = None
            continue
        if line.startswith("   "):
            current[tag].append(line.strip())
        else:
            tag = line[:2]
            current[tag].append(line[3:])
    return records


def _country(address: str) -> str:
    last = address.rstrip(".").split(", ")[-1]
    if last.endswith("USA"):
        return "USA"
    return COUNTRY_NAMES.get(last, last)


def _org(address: str) -> str:
    return address.split("] ", 1)[-1].split(", ")[0]


def documents(text: str) -> list[dict]:
    docs = []
    for rec in read_records(text):
        c1 = rec.get("C1", [])
        rp = rec.get("RP", [])
        docs.append({
            "year": int(rec["PY"][0]),
            "tc": int(rec["TC"][0]),
            "countries": {_country(a) for a in c1},
            "orgs": {_org(a) for a in c1},
            "rp_country": _country(rp[0].split("(corresponding author), ", 1)[1]) if rp else None,
            "keywords": [k.strip() for k in " ".join(rec.get("DE", [])).split(";") if k.strip()],
        })
    return docs


def _f(x, digits):
    return f"{float(x):.{digits}f}"


def country_report(docs: list[dict], window=(2015, 2019)) -> str:
    n = len(docs)
    analysis_year = max(d["year"] for d in docs)
    per_country = defaultdict(list)
    for d in docs:
        for c in d["countries"]:
            per_country[c].append(d)

    growth = {}
    for c, ds in per_country.items():
        counts = [sum(1 for d in ds if d["year"] == y) for y in range(window[0], window[1] + 1)]
        changes = [Fraction(100 * (b - a), a) for a, b in zip(counts, counts[1:]) if a]
        growth[c] = sum(changes) / len(changes) if changes else None
    top = max(v for v in growth.values() if v is not None)
    glyphs = ["→", "↗", "↑", "↑↑", "↑↑↑"]

    def arrow(v):
        if v is None:
            return "—"
        for k in range(5):
            if v <= top * (k + 1) / 5:
                return glyphs[k]
        return glyphs[4]

    header = ["entity", "total_pubs", "pct_of_corpus", "trend", "avg_growth_pct", "h_index", "g_index",
              "m_index", "avg_citations", "citations_total", "first_pub_year", "corresponding_pubs",
              "corresponding_pct", "single_country_pubs", "single_country_pct", "collaborative_pubs",
              "collaborative_pct"]
    lines = [",".join(header)]
    for c in sorted(per_country, key=lambda c: (-len(per_country[c]), c)):
        ds = per_country[c]
        cites = [d["tc"] for d in ds]
        first = min(d["year"] for d in ds)
        h = h_index_scan(cites)
        corr = [d for d in docs if d["rp_country"] == c]
        single = [d for d in corr if len(d["countries"] | {d["rp_country"]}) == 1]
        collab = len(corr) - len(single)
        row = [c, str(len(ds)), _f(Fraction(100 * len(ds), n), 1), arrow(growth[c]),
               "" if growth[c] is None else _f(growth[c], 1),
               str(h), str(g_index_scan(cites)), _f(Fraction(h, analysis_year - first + 1), 2),
               _f(Fraction(sum(cites), len(ds)), 1), str(sum(cites)), str(first),
               str(len(corr)), _f(Fraction(100 * len(corr), n), 1),
               str(len(single)), _f(Fraction(100 * len(single), len(corr)), 1) if corr else "",
               str(collab), _f(Fraction(100 * collab, len(corr)), 1) if corr else ""]
        lines.append(",".join(row))
    return CRLF.join(lines) + CRLF


def _normalize(label: str) -> str:
    label = " ".join(label.lower().split())
    return label.rstrip(".,")


def keyword_table(docs: list[dict]) -> str:
    docsets = defaultdict(set)
    for i, d in enumerate(docs):
        for k in d["keywords"]:
            docsets[_normalize(k)].add(i)
    rows = []
    for part in closure_partition(sorted(docsets)):
        counts = {v: len(docsets[v]) for v in part}
        ordered = sorted(counts, key=lambda v: (-counts[v], v))
        members = set().union(*(docsets[v] for v in part))
        year = Fraction(sum(docs[i]["year"] for i in members), len(members))
        cites = Fraction(sum(docs[i]["tc"] for i in members), len(members))
        rows.append((-len(members), ordered[0], [
            ordered[0], str(len(members)), _f(year, 1), _f(cites, 1),
            "|".join(f"{v}:{counts[v]}" for v in ordered)]))
    rows.sort(key=lambda r: (r[0], r[1]))
    lines = ["canonical_label,occurrences,mean_pub_year,mean_citations,variants"]
    lines += [",".join(r[2]) for r in rows]
    return CRLF.join(lines) + CRLF


def org_network_dot(docs: list[dict], top=20, top_edges=3, min_weight=5) -> str:
    pubs = defaultdict(int)
    weight = defaultdict(int)
    for d in docs:
        for o in d["orgs"]:
            pubs[o] += 1
        for a, b in combinations(sorted(d["orgs"]), 2):
            weight[(a, b)] += 1
    kept = set(sorted(pubs, key=lambda o: (-pubs[o], o))[:top])
    edges = {e: w for e, w in weight.items() if e[0] in kept and e[1] in kept and w >= min_weight}
    survivors = set()
    for node in kept:
        mine = [(-w, b if a == node else a, (a, b)) for (a, b), w in edges.items() if node in (a, b)]
        survivors |= {e for _, _, e in sorted(mine)[:top_edges]}
    lines = ["graph G {"]
    lines += [f'  "{o}" [publications={pubs[o]}];' for o in sorted(kept)]
    lines += [f'  "{a}" -- "{b}" [weight={edges[(a, b)]}, label="{edges[(a, b)]}"];' for a, b in sorted(survivors)]
    lines.append("}")
    return "\n".join(lines) + "\n"
