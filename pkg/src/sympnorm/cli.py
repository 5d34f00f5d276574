"""Command-line front end.  Every command prints one JSON document on stdout.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage or parse
error, 3 unsupported ring or ideal for the requested operation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .errors import ParseError, SympnormError
from .forms import C_of, R_of, make_se, sp_check
from .harness import SUITES, TrialConfig, run_suite, selftest
from .ideals import parse_ideal
from .matrix import Matrix, from_doc, pfaffian, to_doc
from .relative import RelativeWord, normality_witness, relative_factorize, relative_from_doc, relative_to_doc
from .rings import ring_make
from .standard_form import cert_to_doc, random_pf1_form, reduce_to_psi_corner
from .words import form_from_json, word_from_doc


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def _load_matrix(path: str) -> Matrix:
    return from_doc(_load_json(path))


def _load_form(ref: str, ring_text: str | None):
    if ref.startswith("psi:"):
        if ring_text is None:
            raise ParseError("--ring is required with a psi:n form")
        return form_from_json(ref, ring_make(ring_text))
    doc = _load_json(ref)
    ring = ring_make(ring_text) if ring_text else None
    return form_from_json(doc, ring)


def _parse_vector(ring, text: str):
    text = text.strip()
    if text.startswith("["):
        try:
            items = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad vector {text!r}") from exc
    else:
        items = [x for x in text.split(",")]
    return [ring.parse(str(x)) for x in items]


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")


def cmd_pfaffian(args) -> int:
    _emit({"pfaffian": str(pfaffian(_load_matrix(args.matrix)))})
    return 0


def cmd_se(args) -> int:
    ring = ring_make(args.ring)
    M = make_se(ring, args.n, args.i, args.j, ring.parse(args.a))
    _emit(to_doc(M))
    return 0


def cmd_gen(args) -> int:
    F = _load_form(args.form, args.ring)
    v = _parse_vector(F.ring, args.v)
    M = (C_of if args.kind == "C" else R_of)(F, v)
    ok = sp_check(F.phi, M)
    _emit({"kind": args.kind, "matrix": to_doc(M), "symplectic": ok})
    return 0 if ok else 1


def cmd_reduce(args) -> int:
    _emit(cert_to_doc(reduce_to_psi_corner(_load_matrix(args.matrix))))
    return 0


def cmd_verify(args) -> int:
    cfg = TrialConfig(
        ring=args.ring,
        n=args.n,
        trials=args.trials,
        seed=args.seed,
        min_len=args.min_len,
        max_len=args.max_len,
        ideal=args.ideal,
    )
    out = run_suite(args.suite, cfg)
    _emit(out)
    return 0 if out["passed"] else 1


def cmd_factor_relative(args) -> int:
    w = word_from_doc(_load_json(args.word))
    ideal = parse_ideal(w.ring, args.ideal)
    _emit(relative_to_doc(relative_factorize(w, ideal)))
    return 0


def cmd_witness(args) -> int:
    F = _load_form(args.form, args.ring)
    gdoc = _load_json(args.gamma)
    gamma = word_from_doc(gdoc, form=F) if isinstance(gdoc, dict) and "atoms" in gdoc else from_doc(gdoc, F.ring)
    ddoc = _load_json(args.delta)
    if isinstance(ddoc, dict) and "pairs" in ddoc:
        delta = relative_from_doc(ddoc, F.ring)
        delta = RelativeWord(F, delta.pairs, delta.ideal)
    else:
        delta = word_from_doc(ddoc, form=F)
    ideal = parse_ideal(F.ring, args.ideal) if args.ideal else None
    report = normality_witness(F, gamma, delta, ideal, certificate=not args.no_certificate)
    _emit(report)
    return 0 if report["passed"] else 1


def cmd_randform(args) -> int:
    F = random_pf1_form(ring_make(args.ring), args.n, args.steps, args.seed)
    _emit(to_doc(F.phi))
    return 0


def cmd_selftest(args) -> int:
    out = selftest(seed=args.seed, trials=args.trials)
    _emit(out)
    return 0 if out["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sympnorm", description="Exact symplectic-group computations over commutative rings.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("pfaffian", help="Pfaffian of a skew matrix document")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_pfaffian)

    s = sub.add_parser("se", help="elementary symplectic generator se_ij(a)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--i", type=int, required=True)
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--a", required=True)
    s.add_argument("--ring", required=True)
    s.set_defaults(func=cmd_se)

    s = sub.add_parser("gen", help="C or R generator for a form")
    s.add_argument("--kind", choices=("C", "R"), required=True)
    s.add_argument("--form", required=True, help="matrix document path or psi:n")
    s.add_argument("--v", required=True, help="comma-separated entries or a JSON list")
    s.add_argument("--ring")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("reduce", help="certificate eps0 with (1+eps0)^t psi (1+eps0) = phi")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("verify", help="run one seeded property suite")
    s.add_argument("--suite", choices=sorted(SUITES), required=True)
    s.add_argument("--ring", required=True)
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--trials", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--min-len", type=int, default=1)
    s.add_argument("--max-len", type=int, default=4)
    s.add_argument("--ideal")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("factor-relative", help="factor a word trivial modulo an ideal")
    s.add_argument("word")
    s.add_argument("--ideal", required=True)
    s.set_defaults(func=cmd_factor_relative)

    s = sub.add_parser("witness", help="normality witness report for gamma delta gamma^-1")
    s.add_argument("--form", required=True)
    s.add_argument("--gamma", required=True)
    s.add_argument("--delta", required=True)
    s.add_argument("--ideal")
    s.add_argument("--ring")
    s.add_argument("--no-certificate", action="store_true")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("randform", help="seeded random form of Pfaffian 1")
    s.add_argument("--ring", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--steps", type=int, default=6)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_randform)

    s = sub.add_parser("selftest", help="every suite at default sizes")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=3)
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SympnormError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
