"""Command-line front end speaking a JSON request/response format.

A request is one JSON document::

    {"command": "normalize", "ring": {"kind": "Z"}, "atoms": 2,
     "args": {"terms": [{"coeff": "2", "idem": [0, 1]}]}}

``--ring``, ``--atoms`` and ``--command`` override the matching fields.
Responses are written with sorted keys and no trailing whitespace, so the
same request always produces the same bytes.  Failures produce
``{"ok": false, "error": {...}}`` and a nonzero exit status: 2 for
malformed requests, 1 for everything else.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Any, Callable

from .boolean_algebra import BAElement, FiniteBooleanAlgebra
from .core import (
    FormalCombination,
    FosterFunction,
    SpeckerAlgebra,
    SpeckerElement,
    foster_add,
    foster_mul,
    foster_neg,
    foster_scalar,
    from_pointwise,
    is_faithful,
    is_faithful_generating,
    is_idempotent,
    normalize,
    quotient_mod_prime,
)
from .errors import NotWeakBaerAt, ParseError, SpeckerError
from .functors import (
    DEFAULT_EXHAUSTIVE_LIMIT,
    base_algebra,
    enumerate_algebra_homs,
    equivalence_report,
)
from .order import abs_, f_ring_axiom_check, is_positive, is_positive_orthogonal, join, leq, meet
from .rings import Integers, Modular, Product, Rationals, RingBackend, idempotent_ba
from .spectra import annihilator_of_set, baer_report, injective_hull, min_spectrum, verify_annihilator

__all__ = ["run_command", "handle", "main", "parse_ring", "format_ring", "COMMANDS"]

_INT = re.compile(r"\s*[+-]?\d+\s*")
_RAT = re.compile(r"\s*[+-]?\d+(/\d+)?\s*")


class Context:
    """Ring, algebra and options shared by one request."""

    def __init__(self, ring: RingBackend, atoms: int, seed: int, exhaustive_limit: int):
        self.ring = ring
        self.S = SpeckerAlgebra(ring, FiniteBooleanAlgebra(atoms))
        self.seed = seed
        self.exhaustive_limit = exhaustive_limit

    # values

    def value(self, raw: Any, path: str, ring: RingBackend | None = None):
        return parse_value(ring or self.ring, raw, path)

    def fmt(self, v, ring: RingBackend | None = None):
        return format_value(ring or self.ring, v)

    # elements

    def idem(self, raw: Any, path: str) -> BAElement:
        if not isinstance(raw, list):
            raise ParseError("expected a list of atom indices", path)
        n = self.S.atom_count
        for i, a in enumerate(raw):
            if isinstance(a, bool) or not isinstance(a, int) or not 0 <= a < n:
                raise ParseError(f"atom index must be an integer in 0..{n - 1}", f"{path}[{i}]")
        return self.S.algebra.element(raw)

    def terms(self, raw: Any, path: str) -> list[tuple]:
        if not isinstance(raw, list):
            raise ParseError("expected a list of {coeff, idem} terms", path)
        out = []
        for i, t in enumerate(raw):
            p = f"{path}[{i}]"
            if not isinstance(t, dict) or set(t) != {"coeff", "idem"}:
                raise ParseError("a term has exactly the keys coeff and idem", p)
            out.append((self.value(t["coeff"], f"{p}.coeff"), self.idem(t["idem"], f"{p}.idem")))
        return out

    def element(self, raw: Any, path: str) -> SpeckerElement:
        if not isinstance(raw, dict) or not raw or not set(raw) <= {"pointwise", "orthogonal"}:
            raise ParseError("an element is {pointwise: [...]} or {orthogonal: [...]}", path)
        found = []
        if "pointwise" in raw:
            vals = raw["pointwise"]
            if not isinstance(vals, list) or len(vals) != self.S.atom_count:
                raise ParseError(f"expected {self.S.atom_count} values", f"{path}.pointwise")
            found.append(self.S.element(self.value(v, f"{path}.pointwise[{i}]") for i, v in enumerate(vals)))
        if "orthogonal" in raw:
            terms = self.terms(raw["orthogonal"], f"{path}.orthogonal")
            covered: set = set()
            for i, (_, e) in enumerate(terms):
                if covered & e.atoms:
                    raise ParseError("orthogonal idempotents must be disjoint", f"{path}.orthogonal[{i}].idem")
                covered |= e.atoms
            found.append(FormalCombination(self.S, tuple(terms)).evaluate())
        if len(found) == 2 and found[0] != found[1]:
            raise ParseError("pointwise and orthogonal descriptions disagree", path)
        return found[0]

    def elements(self, raw: Any, path: str) -> list[SpeckerElement]:
        if not isinstance(raw, list):
            raise ParseError("expected a list of elements", path)
        return [self.element(e, f"{path}[{i}]") for i, e in enumerate(raw)]

    def out_parts(self, parts) -> list:
        return [{"coeff": self.fmt(a), "idem": e.sorted_atoms()} for a, e in parts]

    def out_element(self, s: SpeckerElement) -> dict:
        return {
            "pointwise": [format_value(s.parent.ring, v) for v in s.values],
            "orthogonal": [
                {"coeff": format_value(s.parent.ring, a), "idem": e.sorted_atoms()}
                for a, e in from_pointwise(s).parts
            ],
        }


# values and rings


def parse_value(ring: RingBackend, raw: Any, path: str):
    if isinstance(ring, Product):
        if not isinstance(raw, list) or len(raw) != 2:
            raise ParseError("product values are two-element arrays", path)
        return (parse_value(ring.left, raw[0], f"{path}[0]"), parse_value(ring.right, raw[1], f"{path}[1]"))
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise ParseError("ring values are decimal strings", path)
    text = str(raw)
    if isinstance(ring, Rationals):
        if not _RAT.fullmatch(text):
            raise ParseError(f"{text!r} is not of the form p or p/q", path)
        try:
            return Fraction(text.strip())
        except ZeroDivisionError:
            raise ParseError("zero denominator", path) from None
    if not _INT.fullmatch(text):
        raise ParseError(f"{text!r} is not a decimal integer", path)
    return ring.coerce(int(text))


def format_value(ring: RingBackend, v) -> Any:
    if isinstance(ring, Product):
        return [format_value(ring.left, v[0]), format_value(ring.right, v[1])]
    if isinstance(ring, Rationals):
        return f"{v.numerator}/{v.denominator}"
    return str(v)


def parse_ring(raw: Any, path: str = "$.ring") -> RingBackend:
    if isinstance(raw, str):
        try:
            raw = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseError(f"ring descriptor is not JSON: {exc.msg}", f"{path}@{exc.lineno}:{exc.colno}") from None
    if not isinstance(raw, dict) or "kind" not in raw:
        raise ParseError("ring descriptor needs a kind", path)
    kind = raw["kind"]
    if kind == "Z":
        return Integers()
    if kind == "Q":
        return Rationals()
    if kind == "Zmod":
        n = raw.get("modulus")
        if isinstance(n, str) and _INT.fullmatch(n):
            n = int(n)
        if isinstance(n, bool) or not isinstance(n, int) or n < 2:
            raise ParseError("modulus must be an integer >= 2", f"{path}.modulus")
        return Modular(n)
    if kind == "product":
        for side in ("left", "right"):
            if side not in raw:
                raise ParseError(f"product needs a {side} factor", path)
        return Product(parse_ring(raw["left"], f"{path}.left"), parse_ring(raw["right"], f"{path}.right"))
    raise ParseError(f"unknown ring kind {kind!r}", f"{path}.kind")


def format_ring(ring: RingBackend) -> dict:
    if isinstance(ring, Integers):
        return {"kind": "Z"}
    if isinstance(ring, Rationals):
        return {"kind": "Q"}
    if isinstance(ring, Modular):
        return {"kind": "Zmod", "modulus": ring.modulus}
    if isinstance(ring, Product):
        return {"kind": "product", "left": format_ring(ring.left), "right": format_ring(ring.right)}
    raise TypeError(f"no wire format for {ring!r}")


def _require(args: dict, key: str) -> Any:
    if key not in args:
        raise ParseError(f"missing argument {key!r}", "$.args")
    return args[key]


def _hom_out(ctx: Context, alpha) -> dict:
    out = {
        "dual_map": list(alpha.datum.dual_map),
        "atom_images": [ctx.out_element(img) for img in alpha.atom_images],
    }
    if alpha.target.atom_count == 1 and alpha.target.idempotents.k == 1:
        out["evaluates_at"] = alpha.datum.dual_map[0]
    return out


# commands


def cmd_normalize(ctx: Context, args: dict) -> dict:
    c = FormalCombination(ctx.S, tuple(ctx.terms(_require(args, "terms"), "$.args.terms")))
    o = normalize(c)
    return {"parts": ctx.out_parts(o.parts), "element": ctx.out_element(o.to_pointwise())}


_FOSTER_BINARY = {"add": foster_add, "mul": foster_mul}


def cmd_arith(ctx: Context, args: dict) -> dict:
    op = _require(args, "op")
    left = FosterFunction.from_element(ctx.element(_require(args, "left"), "$.args.left"))
    if op in _FOSTER_BINARY:
        right = FosterFunction.from_element(ctx.element(_require(args, "right"), "$.args.right"))
        f = _FOSTER_BINARY[op](left, right)
    elif op == "sub":
        right = FosterFunction.from_element(ctx.element(_require(args, "right"), "$.args.right"))
        f = foster_add(left, foster_neg(right))
    elif op == "neg":
        f = foster_neg(left)
    elif op == "scale":
        f = foster_scalar(ctx.value(_require(args, "scalar"), "$.args.scalar"), left)
    else:
        raise ParseError(f"unknown arith op {op!r}", "$.args.op")
    cells = sorted(f.as_dict().items(), key=lambda kv: kv[1].least_atom())
    return {
        "result": ctx.out_element(f.to_element()),
        "foster": [{"value": ctx.fmt(a), "idem": e.sorted_atoms()} for a, e in cells],
    }


def cmd_idempotents(ctx: Context, args: dict) -> dict:
    rba = idempotent_ba(ctx.ring)
    ida = ctx.S.idempotents
    return {
        "ring_idempotents": [ctx.fmt(a) for a in ctx.ring.idempotents()],
        "ring_atoms": [ctx.fmt(a) for a in rba.atoms],
        "count": str(ida.size),
        "atoms": [ctx.out_element(ida.atom_element(i)) for i in ida.algebra.atoms],
    }


def cmd_faithful(ctx: Context, args: dict) -> dict:
    out: dict = {}
    if "element" in args:
        s = ctx.element(args["element"], "$.args.element")
        idem = is_idempotent(s)
        out["idempotent"] = idem
        out["faithful"] = idem and not s.is_zero and is_faithful(s)
    if "generators" in args:
        rep = is_faithful_generating(ctx.S, ctx.elements(args["generators"], "$.args.generators"))
        out["generation"] = {
            "closure_size": len(rep.closure),
            "blocks": [ctx.out_element(b) for b in rep.blocks],
            "all_faithful": rep.all_faithful,
            "spans": rep.spans,
            "faithful_generating": rep.faithful_generating,
        }
    if not out:
        raise ParseError("faithful needs an element or generators", "$.args")
    return out


def cmd_homs(ctx: Context, args: dict) -> dict:
    target = args.get("target", "ring")
    if target == "ring":
        T = base_algebra(ctx.ring)
    elif isinstance(target, dict) and set(target) == {"atoms"}:
        m = target["atoms"]
        if isinstance(m, bool) or not isinstance(m, int) or m < 1:
            raise ParseError("target atoms must be a positive integer", "$.args.target.atoms")
        T = SpeckerAlgebra(ctx.ring, FiniteBooleanAlgebra(m))
    else:
        raise ParseError('target is "ring" or {atoms: n}', "$.args.target")
    homs = enumerate_algebra_homs(ctx.S, T)
    return {"count": len(homs), "homs": [_hom_out(ctx, a) for a in homs]}


def cmd_minspec(ctx: Context, args: dict) -> dict:
    spec = min_spectrum(ctx.S)
    out = {
        "points": [_hom_out(ctx, p.hom) for p in spec.primes],
        "bijective": spec.is_bijective(),
        "discrete": spec.space.is_discrete(),
    }
    if "elements" in args:
        rows = []
        for s in ctx.elements(args["elements"], "$.args.elements"):
            rows.append({
                "zero_set": sorted(spec.space.zero_set(s)),
                "zero_locus": sorted(spec.zero_locus(s)),
                "subbasis_ok": spec.space.check_subbasis(s),
            })
        out["elements"] = rows
    return out


def cmd_ann(ctx: Context, args: dict) -> dict:
    I = ctx.elements(_require(args, "elements"), "$.args.elements")
    e = annihilator_of_set(ctx.S, I)
    return {
        "annihilator": ctx.out_element(e),
        "verified": verify_annihilator(I, e, ctx.exhaustive_limit, ctx.seed),
    }


def cmd_baer(ctx: Context, args: dict) -> dict:
    rep = baer_report(ctx.S)
    return {
        "weak_baer": rep.weak_baer,
        "baer": rep.baer,
        "id_complete": rep.id_complete,
        "witness_failure": None if rep.witness_failure is None else ctx.fmt(rep.witness_failure),
    }


def cmd_hull(ctx: Context, args: dict) -> dict:
    h = injective_hull(ctx.S, ctx.exhaustive_limit)
    return {
        "hull_atoms": h.algebra.atom_count,
        "embedding": {"dual_map": list(h.embedding.datum.dual_map)},
        "embedding_bijective": h.embedding_bijective,
        "baer": h.baer,
    }


def cmd_lattice(ctx: Context, args: dict) -> dict:
    op = _require(args, "op")
    if op == "f_ring":
        a, b, c = (ctx.element(_require(args, k), f"$.args.{k}") for k in "abc")
        chk = f_ring_axiom_check(a, b, c)
        return {"holds": chk.holds, "applicable": chk.applicable}
    f = ctx.element(_require(args, "left"), "$.args.left")
    if op == "abs":
        return {"result": ctx.out_element(abs_(f))}
    if op == "positive":
        return {"pointwise": is_positive(f), "orthogonal": is_positive_orthogonal(f)}
    g = ctx.element(_require(args, "right"), "$.args.right")
    if op == "join":
        return {"result": ctx.out_element(join(f, g))}
    if op == "meet":
        return {"result": ctx.out_element(meet(f, g))}
    if op == "leq":
        return {"result": leq(f, g)}
    raise ParseError(f"unknown lattice op {op!r}", "$.args.op")


def cmd_equivalence_report(ctx: Context, args: dict) -> dict:
    sizes = args.get("sizes", list(range(1, ctx.S.atom_count + 1)))
    if not isinstance(sizes, list) or not all(isinstance(n, int) and not isinstance(n, bool) and n >= 1 for n in sizes):
        raise ParseError("sizes must be a list of positive integers", "$.args.sizes")
    rep = equivalence_report(ctx.ring, sizes, ctx.exhaustive_limit)
    rows = [
        {
            "atoms": r.atoms,
            "unit_is_iso": r.unit_is_iso,
            "counit_is_iso": r.counit_is_iso,
            "id_atoms": r.id_atoms,
            "counit_kernel": None if r.counit_kernel is None else ctx.out_element(r.counit_kernel),
        }
        for r in rep.rows
    ]
    return {"rows": rows, "holds": rep.holds, "indecomposable": rep.indecomposable, "consistent": rep.consistent}


def cmd_quotient(ctx: Context, args: dict) -> dict:
    p = ctx.value(_require(args, "prime"), "$.args.prime")
    T, project = quotient_mod_prime(ctx.S, p)
    out = {"ring": format_ring(T.ring), "id_atoms": T.idempotents.algebra.atom_count}
    if "element" in args:
        out["image"] = ctx.out_element(project(ctx.element(args["element"], "$.args.element")))
    return out


COMMANDS: dict[str, Callable[[Context, dict], dict]] = {
    "normalize": cmd_normalize,
    "arith": cmd_arith,
    "idempotents": cmd_idempotents,
    "faithful": cmd_faithful,
    "homs": cmd_homs,
    "minspec": cmd_minspec,
    "ann": cmd_ann,
    "baer": cmd_baer,
    "hull": cmd_hull,
    "lattice": cmd_lattice,
    "equivalence-report": cmd_equivalence_report,
    "quotient": cmd_quotient,
}


def run_command(request: dict, seed: int = 0, exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> dict:
    """Dispatch a parsed request; module errors propagate."""
    if not isinstance(request, dict):
        raise ParseError("request must be a JSON object")
    command = request.get("command")
    if command not in COMMANDS:
        raise ParseError(f"unknown command {command!r}", "$.command")
    ring = parse_ring(request.get("ring"))
    atoms = request.get("atoms")
    if isinstance(atoms, bool) or not isinstance(atoms, int) or atoms < 1:
        raise ParseError("atoms must be a positive integer", "$.atoms")
    args = request.get("args", {})
    if not isinstance(args, dict):
        raise ParseError("args must be an object", "$.args")
    ctx = Context(ring, atoms, seed, exhaustive_limit)
    try:
        result = COMMANDS[command](ctx, args)
    except NotWeakBaerAt as exc:
        err = {"code": exc.code, "message": str(exc), "value": format_value(exc.ring or ring, exc.value)}
        raise _Reported(err, 1) from exc
    return {"ok": True, "command": command, "result": result}


class _Reported(Exception):
    def __init__(self, error: dict, status: int):
        super().__init__(error["message"])
        self.error = error
        self.status = status


def handle(text: str, overrides: dict | None = None, seed: int = 0,
           exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> tuple[str, int]:
    """Run one request given as JSON text; return the response text and exit status."""
    try:
        try:
            request = json.loads(text) if text.strip() else {}
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, f"{exc.lineno}:{exc.colno}") from None
        if overrides:
            if not isinstance(request, dict):
                raise ParseError("request must be a JSON object")
            request = {**request, **overrides}
        response, status = run_command(request, seed, exhaustive_limit), 0
    except ParseError as exc:
        response, status = {"ok": False, "error": exc.to_dict()}, 2
    except _Reported as exc:
        response, status = {"ok": False, "error": exc.error}, exc.status
    except SpeckerError as exc:
        response, status = {"ok": False, "error": exc.to_dict()}, 1
    return dump(response), status


def dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="specker", description="Boolean powers of rings, computed exactly.")
    p.add_argument("--ring", help='ring descriptor as JSON, e.g. \'{"kind":"Zmod","modulus":6}\'')
    p.add_argument("--atoms", type=int, help="number of atoms of the Boolean algebra")
    p.add_argument("--in", dest="infile", default=None, help="request file, or - for stdin")
    p.add_argument("--out", dest="outfile", default="-", help="response file, or - for stdout")
    p.add_argument("--command", choices=sorted(COMMANDS), help="command to run")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    p.add_argument("--exhaustive-limit", type=int, default=DEFAULT_EXHAUSTIVE_LIMIT,
                   help="largest carrier checked exhaustively")
    return p


def main(argv: list[str] | None = None) -> int:
    opts = _build_parser().parse_args(argv)
    if opts.infile == "-":
        text = sys.stdin.read()
    elif opts.infile:
        with open(opts.infile, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = ""
    overrides: dict = {}
    if opts.ring is not None:
        overrides["ring"] = opts.ring
    if opts.atoms is not None:
        overrides["atoms"] = opts.atoms
    if opts.command is not None:
        overrides["command"] = opts.command
    out, status = handle(text, overrides, opts.seed, opts.exhaustive_limit)
    if opts.outfile == "-":
        sys.stdout.write(out)
    else:
        with open(opts.outfile, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(out)
    return status
