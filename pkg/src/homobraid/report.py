"""
Report documents and their renderings.

Every command builds one nested document (dicts, lists, scalars).  The
structured format flattens it to ``key: value`` lines with dotted paths; the
text format and JSON are rendered from the same document, so the three never
disagree on data.
"""

from __future__ import annotations

import json
from typing import Any

from .braids import (
    BraidWord,
    Occurrence,
    closure_stats,
    destabilize_fully,
    homogeneity_profile,
    is_split,
    render_word,
    seesaw_profile,
    split_components,
)
from .primeness import Status, decomposition_strands, prime_factorization, primeness_verdict
from .surfaces import SurfaceInvariants

SCHEMA = "homobraid.report/1"

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_COMPOSITE = 10
EXIT_NOT_HOMOGENEOUS = 11
EXIT_PRECONDITION = 12

_SIGN_CHAR = {
    Occurrence.ONLY_POSITIVE: "+",
    Occurrence.ONLY_NEGATIVE: "-",
    Occurrence.ABSENT: "0",
    Occurrence.MIXED: "*",
}

_EXIT_FOR = {Status.PRIME: EXIT_OK, Status.COMPOSITE: EXIT_COMPOSITE, Status.INCONCLUSIVE: EXIT_NOT_HOMOGENEOUS}


def document(command: str, **body: Any) -> dict:
    return {"schema": SCHEMA, "command": command, **body}


def _closure(word: BraidWord) -> dict:
    s = closure_stats(word)
    return {
        "components": s.components,
        "eulerChar": s.euler_char,
        "firstBetti": s.first_betti,
        "genus": s.genus,
        "genusMinimal": s.genus_minimal,
        "splitSum": s.split_sum,
    }


def _destabilization(component: BraidWord) -> dict:
    d = destabilize_fully(component)
    return {
        "component": render_word(component),
        "reduced": render_word(d.reduced),
        "strands": d.reduced.strands,
        "mMinus": d.m_minus,
        "mPlus": d.m_plus,
    }


def analyze_document(text: str, word: BraidWord) -> tuple[dict, int]:
    """Run the full word pipeline and return the report and its exit code."""
    profile = homogeneity_profile(word)
    verdict = primeness_verdict(word)
    doc = document(
        "analyze",
        input={"text": text, "strands": word.strands, "word": render_word(word), "letters": len(word)},
        homogeneity={
            "homogeneous": profile.is_homogeneous,
            "signs": "".join(_SIGN_CHAR[c] for c in profile.classes),
        },
        split={"split": is_split(word), "components": [render_word(c) for c in split_components(word)]},
        destabilization=[_destabilization(c) for c in split_components(word)],
        seesaw={f"g{i}": g for i, g in sorted(seesaw_profile(word).values.items())},
        decompositionStrands=sorted(decomposition_strands(word).strands),
        verdict={"status": verdict.status.value, "witness": verdict.witness},
    )
    if profile.is_homogeneous:
        f = prime_factorization(word)
        doc["factorization"] = {
            "summands": list(f.canonical()),
            "unknotComponents": f.unknot_components,
            "steps": [{"strand": s.strand, "lower": s.lower, "upper": s.upper} for s in f.provenance],
        }
    doc["closure"] = _closure(word)
    code = _EXIT_FOR[verdict.status]
    doc["exit"] = code
    return doc, code


def invariants_dict(inv: SurfaceInvariants) -> dict:
    return {
        "eulerChar": inv.euler_char,
        "boundaryComponents": inv.boundary_components,
        "genus": inv.genus,
        "connected": inv.connected,
    }


def error_document(command: str, kind: str, message: str, code: int, **extra: Any) -> dict:
    return document(command, error={"kind": kind, "message": message, **extra}, exit=code)


# -- renderings -------------------------------------------------------------


def _scalar(value: Any) -> str:
    if value is None:
        return "none"
    if value is True:
        return "yes"
    if value is False:
        return "no"
    return str(value)


def flatten(doc: Any, prefix: str = "") -> list[tuple[str, str]]:
    """Dotted-path ``(key, value)`` pairs; lists use their indices and record a ``count``."""
    out: list[tuple[str, str]] = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            out += flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(doc, list):
        out.append((f"{prefix}.count", str(len(doc))))
        for i, v in enumerate(doc):
            out += flatten(v, f"{prefix}.{i}")
    else:
        out.append((prefix, _scalar(doc)))
    return out


def render_structured(doc: dict) -> str:
    return "".join(f"{k}: {v}\n" for k, v in flatten(doc))


def parse_structured(text: str) -> list[tuple[str, str]]:
    pairs = []
    for line in text.splitlines():
        key, sep, value = line.partition(": ")
        if not sep:
            raise ValueError(f"not a structured report line: {line!r}")
        pairs.append((key, value))
    return pairs


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _text_lines(value: Any, indent: int, color: bool) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(value, dict):
        for k, v in value.items():
            label = f"\033[1m{k}\033[0m" if color and indent == 0 else k
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{label}:")
                lines += _text_lines(v, indent + 1, color)
            else:
                shown = "(empty)" if isinstance(v, (dict, list)) else _scalar(v)
                lines.append(f"{pad}{label}: {shown}")
    else:
        for v in value:
            if isinstance(v, (dict, list)):
                sub = _text_lines(v, indent + 1, color)
                lines.append(f"{pad}- {sub[0].lstrip()}" if sub else f"{pad}-")
                lines += sub[1:]
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    return lines


def render_text(doc: dict, color: bool = False) -> str:
    body = {k: v for k, v in doc.items() if k != "schema"}
    return "\n".join(_text_lines(body, 0, color)) + "\n"


def render(doc: dict, fmt: str, color: bool = False) -> str:
    if fmt == "structured":
        return render_structured(doc)
    if fmt == "json":
        return render_json(doc)
    return render_text(doc, color)
