"""Command-line front end: ``homobraid analyze|tree|chords|surface|sample``."""

from __future__ import annotations

import argparse
import os
import random
import sys
from typing import Sequence

from . import report
from .braids import (
    BraidWord,
    NotHomogeneousError,
    ParseError,
    SplitWordError,
    closure_stats,
    destabilize_fully,
    homogeneity_profile,
    parse_word,
    render_word,
)
from .chords import EQUAL, ChordConfigError, WitnessPair, find_witnesses, parse_chord_config
from .openbook import (
    CertificateError,
    NonEssentialEdgeError,
    TreeError,
    UnknownVeeringError,
    arborescent_tree,
    braid_tree,
    certificate_to_dict,
    dump_tree,
    growings,
    monodromy_factorization,
    page_of_tree,
    parse_plane_tree,
    primeness_certificate,
    tree_to_dict,
)
from .primeness import primeness_verdict
from .surfaces import dump_surface, seifert_surface_of_word, surface_invariants


class _Failure(Exception):
    def __init__(self, doc: dict, code: int):
        self.doc = doc
        self.code = code


def _fail(command: str, kind: str, message: str, code: int, **extra) -> _Failure:
    return _Failure(report.error_document(command, kind, message, code, **extra), code)


def _word(command: str, tokens: Sequence[str], strands: int | None) -> tuple[str, BraidWord]:
    text = " ".join(t.strip() for t in tokens)
    try:
        return text, parse_word(text, strands)
    except ParseError as e:
        raise _fail(command, "parse", str(e), report.EXIT_PARSE, position=e.position, token=e.token) from None


def _read(command: str, path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise _fail(command, "input", f"cannot read {path}: {e.strerror}", report.EXIT_PRECONDITION) from None


def cmd_analyze(args: argparse.Namespace) -> tuple[dict, int]:
    text, word = _word("analyze", args.word, args.strands)
    return report.analyze_document(text, word)


def _certify(tree, doc: dict) -> int:
    try:
        cert = primeness_certificate(tree)
    except NonEssentialEdgeError as e:
        doc["certificate"] = None
        doc["refused"] = {
            "kind": "nonEssentialEdge",
            "edge": f"{e.edge.a}-{e.edge.b}",
            "strand": e.strand,
            "sides": e.edge.region.sides,
            "message": str(e),
        }
        return report.EXIT_COMPOSITE
    except (UnknownVeeringError, CertificateError) as e:
        doc["certificate"] = None
        doc["refused"] = {"kind": type(e).__name__, "message": str(e)}
        return report.EXIT_COMPOSITE
    doc["certificate"] = certificate_to_dict(cert)
    return report.EXIT_OK


def _tree_body(tree, doc: dict) -> None:
    doc["tree"] = tree_to_dict(tree)
    page = page_of_tree(tree)
    doc["page"] = report.invariants_dict(surface_invariants(page))
    doc["monodromyLength"] = len(monodromy_factorization(tree, next(growings(tree))))


def cmd_tree(args: argparse.Namespace) -> tuple[dict, int] | str:
    if args.arborescent is not None:
        source = _read("tree", args.arborescent)
        try:
            plane = parse_plane_tree(source)
        except TreeError as e:
            raise _fail("tree", "planeTree", str(e), report.EXIT_PARSE) from None
        tree = arborescent_tree(plane)
        doc = report.document("tree", input={"planeTree": str(plane), "vertices": plane.size()})
    else:
        if not args.word:
            raise _fail("tree", "usage", "give a braid word or --arborescent FILE", report.EXIT_PRECONDITION)
        text, word = _word("tree", args.word, args.strands)
        if not homogeneity_profile(word).is_homogeneous:
            raise _fail("tree", "notHomogeneous", f"{render_word(word)!r} is not homogeneous", report.EXIT_NOT_HOMOGENEOUS)
        d = destabilize_fully(word)
        try:
            tree = braid_tree(d.reduced)
        except SplitWordError as e:
            raise _fail("tree", "split", f"hypothesis 'non-split' fails: {e}", report.EXIT_PRECONDITION) from None
        except (TreeError, NotHomogeneousError) as e:
            raise _fail("tree", "precondition", str(e), report.EXIT_PRECONDITION) from None
        doc = report.document(
            "tree",
            input={"text": text, "word": render_word(word), "strands": word.strands},
            destabilization={"reduced": render_word(d.reduced), "mMinus": d.m_minus, "mPlus": d.m_plus},
        )
    if args.serialize:
        return dump_tree(tree)
    _tree_body(tree, doc)
    code = _certify(tree, doc) if args.certify else report.EXIT_OK
    doc["exit"] = code
    return doc, code


def _witness(w) -> dict:
    return {"a": "-".join(sorted(map(str, w.a))), "b": "-".join(sorted(map(str, w.b))), "p": str(w.p)}


def cmd_chords(args: argparse.Namespace) -> tuple[dict, int]:
    source = _read("chords", args.file)
    try:
        cfg = parse_chord_config(source)
    except ChordConfigError as e:
        code = report.EXIT_PARSE if e.clause == "syntax" else report.EXIT_PRECONDITION
        raise _fail("chords", e.clause, str(e), code) from None
    result = find_witnesses(cfg)
    doc = report.document(
        "chords",
        input={"points": len(cfg.points), "polygon": cfg.polygon, "chordsA": len(cfg.chords_a)},
    )
    if result == EQUAL:
        doc["result"] = "Equal"
    else:
        assert isinstance(result, WitnessPair)
        doc["result"] = "Witnesses"
        doc["right"] = _witness(result.right)
        doc["left"] = _witness(result.left)
        doc["differentSides"] = result.different_sides
    doc["exit"] = report.EXIT_OK
    return doc, report.EXIT_OK


def cmd_surface(args: argparse.Namespace) -> tuple[dict, int] | str:
    text, word = _word("surface", args.word, args.strands)
    surface = seifert_surface_of_word(word)
    if args.serialize:
        return dump_surface(surface)
    inv = surface_invariants(surface)
    stats = closure_stats(word)
    doc = report.document(
        "surface",
        input={"text": text, "word": render_word(word), "strands": word.strands},
        polygons=len(surface.polygons),
        invariants=report.invariants_dict(inv),
        agreesWithClosure=(inv.euler_char == stats.euler_char and inv.boundary_components == stats.components),
        exit=report.EXIT_OK,
    )
    return doc, report.EXIT_OK


def random_homogeneous_word(rng: random.Random, max_strands: int, max_letters: int) -> BraidWord:
    n = rng.randint(2, max_strands)
    signs = [rng.choice((1, -1)) for _ in range(n - 1)]
    c = rng.randint(0, max_letters)
    return BraidWord.from_ints([g * signs[g - 1] for g in (rng.randint(1, n - 1) for _ in range(c))], n)


def cmd_sample(args: argparse.Namespace) -> tuple[dict, int]:
    rng = random.Random(args.seed)
    words = []
    for _ in range(args.count):
        w = random_homogeneous_word(rng, args.max_strands, args.max_letters)
        words.append({"word": render_word(w), "strands": w.strands, "verdict": primeness_verdict(w).status.value})
    doc = report.document("sample", seed=args.seed, words=words, exit=report.EXIT_OK)
    return doc, report.EXIT_OK


def _color_enabled() -> bool:
    return os.environ.get("HOMOBRAID_COLOR", "").lower() in ("1", "yes", "true", "always")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strands", type=int, default=None, help="number of strands (default: highest generator + 1)")
    common.add_argument("--format", choices=("text", "structured", "json"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized commands")

    parser = argparse.ArgumentParser(
        prog="homobraid",
        description="Primeness of homogeneous braid closures, trees of open books and chord witnesses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="verdict, factorization and invariants of a word")
    p.add_argument("word", nargs="+", help="braid word, e.g. '1^-2 2 1^-1 2^2'")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("tree", parents=[common], help="tree of open books for a word or a plane tree")
    p.add_argument("word", nargs="*")
    p.add_argument("--arborescent", metavar="FILE", help="plane ±-tree file, e.g. '(+(+))'")
    p.add_argument("--certify", action="store_true", help="emit a primeness certificate or the refusing edge")
    p.add_argument("--serialize", action="store_true", help="print the tree serialization only")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("chords", parents=[common], help="right/left witnesses for two chord sets")
    p.add_argument("file")
    p.set_defaults(func=cmd_chords)

    p = sub.add_parser("surface", parents=[common], help="Seifert surface of a word")
    p.add_argument("word", nargs="+")
    p.add_argument("--serialize", action="store_true", help="print the surface serialization only")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("sample", parents=[common], help="random homogeneous words with their verdicts")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--max-strands", type=int, default=6)
    p.add_argument("--max-letters", type=int, default=12)
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # a leading space keeps argparse from reading letters such as "-1^2" as options
    args = parser.parse_args([f" {t}" if _looks_like_letter(t) else t for t in argv])
    try:
        result = args.func(args)
    except _Failure as f:
        result = (f.doc, f.code)
    if isinstance(result, str):
        sys.stdout.write(result)
        sys.stdout.flush()
        return report.EXIT_OK
    doc, code = result
    sys.stdout.write(report.render(doc, args.format, color=_color_enabled() and args.format == "text"))
    sys.stdout.flush()
    return code


def _looks_like_letter(token: str) -> bool:
    return bool(token) and token[0] == "-" and token[1:2].isdigit()


if __name__ == "__main__":
    sys.exit(main())
