"""Command line front end: bracket values, theorem checks, censuses.

Exit codes are a contract: 0 for success or an inapplicable check, 1
for a genuine counterexample (hypotheses hold, conclusion fails), 2
for unusable input, 3 for a resource cap.  Structured output is line
delimited JSON with sorted keys, so identical inputs give identical
bytes; parallelism changes wall time only.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

from .bracket import bracket_report
from .diagram import (
    DiagramError,
    PuncturedDiagram,
    adequacy,
    diagram_genus,
    is_alternating,
    is_connected,
    parse_diagram,
    simplicity_report,
    z2_class,
)
from .gen import (
    ENUM_CAP,
    CapExceededError,
    GenSpec,
    canonical_key,
    enumerate_diagrams,
)
from .tait import (
    FAIL,
    check_jones_tait,
    check_lemma_bounds,
    non_alternating_certificate,
)

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_INPUT = 2
EXIT_CAP = 3

# state sums walk 2^n resolutions; past this point a single diagram is
# no longer an interactive computation
BRACKET_CAP = 16

_PREDICATE_FIELDS = {
    "connected": "connected",
    "alternating": "alternating",
    "z2trivial": "z2_trivial",
    "fillsgenus": "fills_genus",
    "fills": "fills_genus",
    "simple": "simple",
}


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    input: Optional[str] = None
    fmt: str = "human"
    jobs: int = 1
    max_crossings: int = BRACKET_CAP
    seed: int = 0
    genus: int = 0
    max_loops: int = 2
    predicates: tuple[str, ...] = ()


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_INPUT


def _load(path: str) -> PuncturedDiagram:
    with open(path, encoding="utf-8") as fh:
        return parse_diagram(fh.read())


def _emit_json(record: dict, out: TextIO) -> None:
    out.write(json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n")


def _order_field(order: object) -> Optional[int]:
    return order if isinstance(order, int) else None


def _z2_string(bits: tuple[int, ...]) -> str:
    return "".join(str(b) for b in bits)


def _diagram_record(d: PuncturedDiagram, path: Optional[str], jobs: int) -> dict:
    rep = bracket_report(d, jobs=jobs)
    bits = z2_class(d)
    rec = {
        "record": "bracket",
        "n": rep.n,
        "genus": d.genus,
        "diagram_genus": diagram_genus(d),
        "z2": _z2_string(bits),
        "z2_trivial": not any(bits),
        "value": str(rep.value),
        "breadth": rep.breadth,
        "ord_inf": _order_field(rep.ord_inf),
        "ord_zero": _order_field(rep.ord_zero),
    }
    if path is not None:
        rec["input"] = path
    return rec


def cmd_bracket(cfg: RunConfig) -> int:
    try:
        d = _load(cfg.input)
    except (OSError, DiagramError) as exc:
        return _fail(str(exc))
    if d.n_crossings > cfg.max_crossings:
        print(
            f"error: {d.n_crossings} crossings exceeds cap {cfg.max_crossings}",
            file=sys.stderr,
        )
        return EXIT_CAP
    rec = _diagram_record(d, cfg.input, cfg.jobs)
    if cfg.fmt == "json-lines":
        _emit_json(rec, sys.stdout)
        return EXIT_OK
    print(f"bracket: {rec['value']}")
    print(f"breadth: {rec['breadth']}")
    print(f"ord_inf: {rec['ord_inf'] if rec['ord_inf'] is not None else 'none'}")
    print(f"ord_zero: {rec['ord_zero'] if rec['ord_zero'] is not None else 'none'}")
    print(f"crossings: {rec['n']}")
    print(f"genus: {rec['genus']}")
    print(f"diagram genus: {rec['diagram_genus']}")
    if rec["z2_trivial"]:
        print("z2 class: trivial")
    else:
        print(f"z2 class: nontrivial ({rec['z2']})")
        print("note: the bracket of a mod-2 nontrivial link is zero")
    return EXIT_OK


def _bool_field(value: Optional[bool]) -> Optional[bool]:
    return value


def _check_record(d: PuncturedDiagram, path: Optional[str], jobs: int) -> dict:
    rep = bracket_report(d, jobs=jobs)
    theorem = check_jones_tait(d, jobs=jobs)
    lemmas = check_lemma_bounds(d, jobs=jobs)
    simp = simplicity_report(d)
    plus_ok, minus_ok = adequacy(d)
    bits = z2_class(d)
    cert = None
    if not any(bits):
        cert = non_alternating_certificate(
            rep.value, non_h_split=True, z2_trivial=True
        )
    rec = {
        "record": "check",
        "n": rep.n,
        "genus": d.genus,
        "diagram_genus": diagram_genus(d),
        "connected": is_connected(d),
        "alternating": is_alternating(d),
        "z2_trivial": not any(bits),
        "simple": simp.simple,
        "nugatory": simp.nugatory,
        "two_external": len(simp.two_external),
        "adequate_plus": plus_ok,
        "adequate_minus": minus_ok,
        "value": str(rep.value),
        "breadth": rep.breadth,
        "theorem": theorem.verdict,
        "theorem_expected": theorem.expected,
        "theorem_actual": theorem.actual,
        "span_bound_holds": _bool_field(lemmas.span_bound_holds),
        "span_equality_holds": _bool_field(lemmas.span_equality_holds),
        "trivial_sum_holds": _bool_field(lemmas.trivial_sum_holds),
        "alternating_span_holds": _bool_field(lemmas.alternating_span_holds),
        "certificate": None if cert is None else {
            "kind": cert.kind,
            "conclusion": cert.conclusion,
            "assumes_non_split": True,
        },
    }
    if path is not None:
        rec["input"] = path
    return rec


def _check_failed(rec: dict) -> bool:
    if rec["theorem"] == FAIL:
        return True
    return any(
        rec[field] is False
        for field in (
            "span_bound_holds",
            "span_equality_holds",
            "trivial_sum_holds",
            "alternating_span_holds",
        )
    )


def cmd_check(cfg: RunConfig) -> int:
    try:
        d = _load(cfg.input)
    except (OSError, DiagramError) as exc:
        return _fail(str(exc))
    if d.n_crossings > cfg.max_crossings:
        print(
            f"error: {d.n_crossings} crossings exceeds cap {cfg.max_crossings}",
            file=sys.stderr,
        )
        return EXIT_CAP
    rec = _check_record(d, cfg.input, cfg.jobs)
    failed = _check_failed(rec)
    if cfg.fmt == "json-lines":
        _emit_json(rec, sys.stdout)
        return EXIT_COUNTEREXAMPLE if failed else EXIT_OK

    def yn(v: object) -> str:
        if v is None:
            return "n/a"
        return "yes" if v else "no"

    print(f"crossings: {rec['n']}  genus: {rec['genus']}  "
          f"diagram genus: {rec['diagram_genus']}")
    print(f"connected: {yn(rec['connected'])}  "
          f"alternating: {yn(rec['alternating'])}  "
          f"z2 trivial: {yn(rec['z2_trivial'])}")
    print(f"simple: {yn(rec['simple'])}  nugatory: {yn(rec['nugatory'])}  "
          f"two-external crossings: {rec['two_external']}")
    print(f"adequate: plus {yn(rec['adequate_plus'])}, "
          f"minus {yn(rec['adequate_minus'])}")
    print(f"bracket: {rec['value']}  breadth: {rec['breadth']}")
    print(f"breadth identity: {rec['theorem']} "
          f"(expected {rec['theorem_expected']}, actual {rec['theorem_actual']})")
    print(f"span bound: {yn(rec['span_bound_holds'])}  "
          f"span equality: {yn(rec['span_equality_holds'])}")
    print(f"trivial-circle sum bound: {yn(rec['trivial_sum_holds'])}")
    print(f"alternating span identity: {yn(rec['alternating_span_holds'])}")
    if rec["certificate"] is None:
        print("certificate: none")
    else:
        print(f"certificate: kind {rec['certificate']['kind']}, "
              f"{rec['certificate']['conclusion']} (assumes a non-split link)")
    print(f"result: {'fail' if failed else 'ok'}")
    return EXIT_COUNTEREXAMPLE if failed else EXIT_OK


def _parse_predicates(tokens: tuple[str, ...]) -> dict:
    kwargs = {}
    for token in tokens:
        name = token.strip().lower().replace("-", "").replace("_", "")
        value = True
        if name.startswith("not"):
            name = name[3:]
            value = False
        field = _PREDICATE_FIELDS.get(name)
        if field is None:
            raise ValueError(f"unknown predicate {token!r}")
        kwargs[field] = value
    return kwargs


def cmd_enumerate(cfg: RunConfig) -> int:
    try:
        predicates = _parse_predicates(cfg.predicates)
    except ValueError as exc:
        return _fail(str(exc))
    spec = GenSpec(
        max_crossings=cfg.max_crossings,
        genus=cfg.genus,
        seed=cfg.seed,
        max_loops=cfg.max_loops,
        **predicates,
    )
    counts = {"pass": 0, "fail": 0, "inapplicable": 0}
    index = 0
    try:
        for d in enumerate_diagrams(spec):
            rep = bracket_report(d, jobs=cfg.jobs)
            verdict = check_jones_tait(d, jobs=cfg.jobs).verdict
            counts[verdict] += 1
            bits = z2_class(d)
            if cfg.fmt == "json-lines":
                _emit_json(
                    {
                        "record": "diagram",
                        "index": index,
                        "key": canonical_key(d),
                        "n": rep.n,
                        "genus": d.genus,
                        "diagram_genus": diagram_genus(d),
                        "z2": _z2_string(bits),
                        "value": str(rep.value),
                        "breadth": rep.breadth,
                        "theorem": verdict,
                    },
                    sys.stdout,
                )
            else:
                print(
                    f"#{index} n={rep.n} diagram_genus={diagram_genus(d)} "
                    f"z2={_z2_string(bits)} breadth={rep.breadth} "
                    f"theorem={verdict} value={rep.value}"
                )
            index += 1
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    summary = {
        "record": "summary",
        "total": index,
        "pass": counts["pass"],
        "fail": counts["fail"],
        "inapplicable": counts["inapplicable"],
    }
    if cfg.fmt == "json-lines":
        _emit_json(summary, sys.stdout)
    else:
        print(
            f"summary: {index} diagrams, pass {counts['pass']}, "
            f"fail {counts['fail']}, inapplicable {counts['inapplicable']}"
        )
    return EXIT_COUNTEREXAMPLE if counts["fail"] else EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kbdiag",
        description="Kauffman brackets of link diagrams in a disk with holes",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--format",
            choices=["human", "json-lines"],
            default="human",
            dest="fmt",
        )
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)

    for name in ("bracket", "check"):
        p = sub.add_parser(name)
        p.add_argument("path", nargs="?")
        p.add_argument("--input", dest="input_flag")
        p.add_argument("--max-crossings", type=int, default=BRACKET_CAP)
        add_common(p)

    p = sub.add_parser("enumerate")
    p.add_argument("--n-max", "--max-crossings", type=int, required=True,
                   dest="n_max")
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--max-loops", type=int, default=2)
    p.add_argument("--predicate", action="append", default=[],
                   help="filter; repeatable, comma lists allowed")
    add_common(p)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.subcommand in ("bracket", "check"):
        path = args.input_flag or args.path
        if path is None:
            return _fail("an input path is required")
        cfg = RunConfig(
            subcommand=args.subcommand,
            input=path,
            fmt=args.fmt,
            jobs=args.jobs,
            max_crossings=args.max_crossings,
            seed=args.seed,
        )
        return cmd_bracket(cfg) if args.subcommand == "bracket" else cmd_check(cfg)
    predicates = tuple(
        t for chunk in args.predicate for t in chunk.split(",") if t.strip()
    )
    cfg = RunConfig(
        subcommand="enumerate",
        fmt=args.fmt,
        jobs=args.jobs,
        max_crossings=args.n_max,
        seed=args.seed,
        genus=args.genus,
        max_loops=args.max_loops,
        predicates=predicates,
    )
    return cmd_enumerate(cfg)


if __name__ == "__main__":
    sys.exit(main())
