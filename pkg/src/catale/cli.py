"""Command-line front end.

Inputs are JSON files, ``-`` for stdin, or ``fixture:NAME``.  Exit codes:
0 success or property holds, 1 property fails, 2 invalid input,
3 search bound exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable

from . import bridge, docs, fincat, locales, psemi, smallgen
from ._report import Report, SearchBoundError, StructureError, Verdict
from .fincat import FinCategory
from .locales import FinSpace, MeetSemilattice
from .psemi import PartialSemigroup

OK, FAILS, INVALID, BOUND = 0, 1, 2, 3


class _Exit(Exception):
    def __init__(self, code: int, msg: str) -> None:
        super().__init__(msg)
        self.code = code


def load(source: str):
    if source.startswith("fixture:"):
        try:
            return smallgen.fixture(source[len("fixture:"):])
        except KeyError as exc:
            raise _Exit(INVALID, str(exc.args[0])) from None
        except SearchBoundError as exc:
            raise _Exit(INVALID, str(exc)) from None
    try:
        text = sys.stdin.read() if source == "-" else Path(source).read_text()
    except OSError as exc:
        raise _Exit(INVALID, f"cannot read {source}: {exc.strerror}") from None
    return docs.loads(text)


def _validate(s) -> Report:
    if isinstance(s, FinCategory):
        return fincat.validate_category(s)
    if isinstance(s, PartialSemigroup):
        return psemi.validate_psg(s)
    if isinstance(s, FinSpace):
        return locales.validate_space(s)
    return locales.validate_msl(s)


def _expect(s, *kinds):
    if not isinstance(s, kinds):
        wanted = " or ".join(k.__name__ for k in kinds)
        raise _Exit(INVALID, f"expected a {wanted}, got a {type(s).__name__}")
    r = _validate(s)
    if not r:
        raise _Exit(INVALID, f"invalid input: {r.violations[0]}")
    return s


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return sorted(items, key=json.dumps) if isinstance(x, (set, frozenset)) else items
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if hasattr(x, "item"):  # numpy scalars
        return x.item()
    return str(x)


# --- outputs ---------------------------------------------------------------------

class Result:
    """What a subcommand produced: a structure, or a judgement with details."""

    def __init__(self, structure=None, holds: bool | None = None, info: dict | None = None,
                 lines: list[str] | None = None) -> None:
        self.structure = structure
        self.holds = holds
        self.info = info or {}
        self.lines = lines


def _text(s) -> str:
    if isinstance(s, FinCategory):
        out = [f"objects: {' '.join(s.objects)}"]
        out += [f"{s.names[f]}: {s.objects[s.dom[f]]} -> {s.objects[s.cod[f]]}"
                + (" (identity)" if s.is_identity(f) else "") for f in range(s.n_morphisms)]
        out += [f"{g} . {f} = {h}" for g, f, h in docs.to_doc(s)["compose"]]
        return "\n".join(out)
    if isinstance(s, PartialSemigroup):
        out = [f"elements: {' '.join(s.elements)}"]
        out += [f"{a} * {b} = {c}" for a, b, c in docs.to_doc(s)["product"]]
        return "\n".join(out)
    if isinstance(s, FinSpace):
        return "\n".join([f"points: {' '.join(s.points)}"]
                         + ["open: {" + ",".join(u) + "}" for u in s.open_sets()])
    d = docs.to_doc(s)
    return "\n".join([f"elements: {' '.join(d['elements'])}", f"top: {d['top']}"]
                     + [f"{a} <= {b}" for a, b in d["leq"]])


def emit(res: Result, fmt: str, out) -> int:
    if res.lines is not None:
        for line in res.lines:
            print(line, file=out)
    elif res.structure is not None:
        if fmt == "dot":
            out.write(docs.to_dot(res.structure))
        elif fmt == "text":
            print(_text(res.structure), file=out)
        else:
            print(docs.dumps(res.structure), file=out)
    else:
        if fmt == "dot":
            raise _Exit(INVALID, "this subcommand has no DOT output")
        payload = {"holds": res.holds, **res.info}
        if fmt == "text":
            print("holds" if res.holds else "fails", file=out)
            for k, v in res.info.items():
                print(f"{k}: {v if isinstance(v, str) else json.dumps(_jsonable(v))}", file=out)
        else:
            print(json.dumps(_jsonable(payload), separators=(",", ":")), file=out)
    return OK if res.holds in (None, True) else FAILS


def _report(r: Report, **extra) -> Result:
    info = {"violations": r.violations}
    if r.notes:
        info["notes"] = r.notes
    info.update(extra)
    return Result(holds=r.ok, info=info)


def _verdict(v: Verdict, **extra) -> Result:
    info = {} if v.holds else {"witness": v.witness}
    info.update(extra)
    return Result(holds=v.holds, info=info)


# --- subcommands -------------------------------------------------------------------

def cmd_validate(a) -> Result:
    s = load(a.input)
    r = _validate(s)
    if not r:
        for v in r.violations:
            print(v, file=sys.stderr)
        raise _Exit(INVALID, f"invalid {type(s).__name__}")
    return _report(r, kind=docs.kind_of(docs.to_doc(s)))


def cmd_idempotents(a) -> Result:
    s = _expect(load(a.input), FinCategory, PartialSemigroup)
    if isinstance(s, FinCategory):
        names = [s.names[f] for f in fincat.idempotents(s)]
    else:
        names = [s.elements[f] for f in psemi.idempotents_psg(s)]
    return Result(holds=True, info={"idempotents": names})


def _cat(a) -> FinCategory:
    return _expect(load(a.input), FinCategory)


def cmd_karoubi(a) -> Result:
    return Result(fincat.karoubi(_cat(a))[0])


def cmd_skeleton(a) -> Result:
    return Result(fincat.skeleton(_cat(a))[0])


def cmd_taut(a) -> Result:
    return Result(fincat.taut_completion(_cat(a))[0])


def cmd_is_taut(a) -> Result:
    return _verdict(fincat.is_taut(_cat(a)))


def cmd_to_psg(a) -> Result:
    return Result(bridge.cat_to_psg(_cat(a)))


def cmd_to_cat(a) -> Result:
    A = _expect(load(a.input), PartialSemigroup)
    return Result(bridge.catale_to_cat(A) if a.catale else bridge.psg_to_cat(A))


def cmd_is_catale(a) -> Result:
    s = load(a.input)
    if a.via == "to-psg":
        s = bridge.cat_to_psg(_expect(s, FinCategory))
    A = _expect(s, PartialSemigroup)
    r = psemi.is_catale(A)
    extra = {}
    if "witness" in r.data:
        w = r.data["witness"]
        extra["witness"] = [w[0]] + [_names(A, x) for x in w[1:]]
    return _report(r, **extra)


def _names(A: PartialSemigroup, x):
    if isinstance(x, tuple):
        return [_names(A, y) for y in x]
    return A.elements[x]


def cmd_roundtrip(a) -> Result:
    s = _expect(load(a.input), FinCategory, PartialSemigroup)
    r = bridge.verify_equivalence(C=s) if isinstance(s, FinCategory) else bridge.verify_equivalence(A=s)
    return _report(r)


def cmd_adjunction_verify(a) -> Result:
    C = _expect(load(a.input), FinCategory)
    A = _expect(load(a.psg), PartialSemigroup)
    r = bridge.verify_adjunction(C, A, a.max_search)
    return _report(r, functors=r.data["functors"], homs=r.data["homs"])


def _space(a) -> FinSpace:
    return _expect(load(a.input), FinSpace)


def _msl(a) -> MeetSemilattice:
    return _expect(load(a.input), MeetSemilattice)


def cmd_opens(a) -> Result:
    return Result(locales.opens(_space(a)))


def cmd_points(a) -> Result:
    return Result(locales.points(_msl(a), a.point_variant))


def cmd_soberify(a) -> Result:
    return Result(locales.soberify(_space(a), a.point_variant))


def cmd_spatialize(a) -> Result:
    return Result(locales.spatialize(_msl(a), a.point_variant))


def cmd_is_sober(a) -> Result:
    return Result(holds=locales.is_sober(_space(a), a.point_variant))


def cmd_is_spatial(a) -> Result:
    return Result(holds=locales.is_spatial(_msl(a), a.point_variant))


def cmd_is_frame(a) -> Result:
    return _verdict(locales.is_frame(_msl(a)))


_ENUMERATORS: dict[str, Callable] = {
    "psg": lambda n, d: smallgen.enum_psgs(n, dedup=d),
    "topology": lambda n, d: smallgen.enum_topologies(n),
    "msl": lambda n, d: smallgen.enum_msls(n, dedup=d),
    "monoid": lambda n, d: smallgen.enum_monoids(n, dedup=d),
    "category": lambda n, d: smallgen.enum_categories(n, n, dedup=d),
}


def cmd_enumerate(a) -> Result:
    if a.seed is not None:
        if a.kind == "psg":
            stream = smallgen.random_psgs(a.count or 10, a.seed, n=a.size)
        elif a.kind == "category":
            stream = smallgen.random_categories(a.count or 10, a.seed)
        else:
            raise _Exit(INVALID, f"no seeded sampler for {a.kind}")
    else:
        stream = _ENUMERATORS[a.kind](a.size, a.dedup)
        if a.dedup and a.kind == "topology":
            seen = set()
            stream = (X for X in stream
                      if (c := smallgen.certificate_of(X)) not in seen and not seen.add(c))
    lines = []
    for k, s in enumerate(stream):
        if a.count is not None and k >= a.count:
            break
        lines.append(docs.dumps(s))
    return Result(lines=lines, holds=True)


def cmd_suite(a) -> Result:
    from . import suite
    results = suite.run(a.criteria or None)
    return Result(lines=[r.line() for r in results], holds=all(r.passed for r in results))


COMMANDS: dict[str, tuple[Callable, str]] = {
    "validate": (cmd_validate, "check a document against its axioms"),
    "idempotents": (cmd_idempotents, "list idempotents of a category or psg"),
    "karoubi": (cmd_karoubi, "Karoubi envelope of a category"),
    "skeleton": (cmd_skeleton, "skeleton of a category"),
    "taut": (cmd_taut, "taut completion of a category"),
    "is-taut": (cmd_is_taut, "is the category skeletal and absolutely complete"),
    "to-psg": (cmd_to_psg, "partial semigroup of a category"),
    "to-cat": (cmd_to_cat, "category of idempotents of a psg"),
    "is-catale": (cmd_is_catale, "check the catale axioms"),
    "roundtrip": (cmd_roundtrip, "taut/catale equivalence round trip"),
    "adjunction-verify": (cmd_adjunction_verify, "check the adjunction bijection for C and A"),
    "opens": (cmd_opens, "semilattice of opens of a space"),
    "points": (cmd_points, "space of points of a semilattice"),
    "soberify": (cmd_soberify, "points of the opens of a space"),
    "spatialize": (cmd_spatialize, "opens of the points of a semilattice"),
    "is-sober": (cmd_is_sober, "is the unit a homeomorphism"),
    "is-spatial": (cmd_is_spatial, "is the counit an order isomorphism"),
    "is-frame": (cmd_is_frame, "is the semilattice a frame"),
    "enumerate": (cmd_enumerate, "stream small structures as JSON lines"),
    "suite": (cmd_suite, "run the acceptance criteria"),
}


def parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "dot"), default="json")
    common.add_argument("--dot", dest="format", action="store_const", const="dot",
                        help="same as --format dot")
    common.add_argument("--point-variant", choices=locales.VARIANTS, default="strict")
    common.add_argument("--max-search", type=int, default=bridge.DEFAULT_MAX_SEARCH)
    common.add_argument("--seed", type=int, default=None)
    p = argparse.ArgumentParser(prog="catale", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, (fn, helptext) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.set_defaults(fn=fn)
        if name == "enumerate":
            sp.add_argument("kind", choices=sorted(_ENUMERATORS))
            sp.add_argument("size", type=int)
            sp.add_argument("--dedup", action="store_true")
            sp.add_argument("--count", type=int, default=None)
        elif name == "suite":
            sp.add_argument("criteria", type=int, nargs="*", choices=range(1, 10))
        else:
            sp.add_argument("input", help="JSON file, '-' for stdin, or fixture:NAME")
        if name == "adjunction-verify":
            sp.add_argument("psg", help="the partial semigroup A")
        if name == "to-cat":
            sp.add_argument("--catale", action="store_true",
                            help="identities as objects (input must be a catale)")
        if name == "is-catale":
            sp.add_argument("--via", choices=("to-psg",), default=None,
                            help="read a category and test its partial semigroup")
    return p


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = parser().parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else INVALID
    try:
        return emit(args.fn(args), args.format, out)
    except _Exit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except SearchBoundError as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return BOUND
    except (StructureError, ValueError, KeyError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
