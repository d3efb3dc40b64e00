"""Command-line driver: ``dnlab check | consequence | prove | verify | enumerate``.

Exit codes: 0 pass / holds / found, 1 fails / not found, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .algebra import check_distributive, check_nearlattice
from .consequence import MODES, consequence
from .enumerate import MAX_ENUM_SIZE, catalog_up_to, enumerate_dn, enumerate_modal, write_catalog
from .errors import DNLabError
from .formulas import Signature, parse_formula
from .gentzen import check_proof, parse_sequent, read_certificate, search, write_certificate
from .io import load_algebra, load_class
from .modal import check_identity_M, check_modal


def _signature(algebras) -> Signature:
    consts: list[str] = []
    for A in algebras:
        consts += [c for c in A.constants if c not in consts]
    return Signature(tuple(consts), any(A.box is not None for A in algebras))


def cmd_check(args) -> int:
    A = load_algebra(args.path)
    nl = check_nearlattice(A)
    parts = [f"nearlattice: {nl.describe(A)}"]
    ok = nl.ok
    if nl:
        dist = check_distributive(A)
        parts.append(f"distributive: {dist.describe(A)}")
        ok &= dist.ok
    else:
        parts.append("distributive: skipped")
    print("; ".join(parts))
    top = A.top if nl else None
    print(f"greatest element: {A.names[top] if top is not None else 'none'}")
    if A.box is not None and ok:
        if "top" not in A.constants:
            print("modal: skipped (no const top declared)")
        else:
            mod = check_modal(A)
            line = f"modal: {mod.describe(A)}"
            if A.box[A.constants["top"]] == A.constants["top"]:
                line += f"; identity M: {check_identity_M(A).describe(A)}"
            print(line)
            ok &= mod.ok
    return 0 if ok else 1


def cmd_consequence(args) -> int:
    algebras = load_class(args.class_path)
    sig = _signature(algebras)
    premises = [parse_formula(p, sig) for p in args.premises.split(";") if p.strip()]
    conclusion = parse_formula(args.conclusion, sig)
    v = consequence(premises, conclusion, algebras, args.mode)
    print(f"{args.mode}: {v.describe()}")
    return 0 if v.holds else 1


def cmd_prove(args) -> int:
    seq = parse_sequent(args.sequent)
    rep = search(seq, depth=args.depth, mn_bound=args.mn_bound)
    if rep.found:
        cert = write_certificate(rep.proof)
        print(rep.describe())
        if args.certificate and args.certificate != "-":
            Path(args.certificate).write_text(cert)
        else:
            sys.stdout.write(cert)
        return 0
    print(rep.describe())
    if seq.premises:
        v = consequence(seq.sorted_premises(), seq.conclusion, catalog_up_to(3))
        if not v.holds:
            print(f"countermodel: {v.describe()}")
    return 1


def cmd_verify(args) -> int:
    proof = read_certificate(Path(args.certificate).read_text())
    chk = check_proof(proof)
    if chk:
        print(f"valid: {proof.sequent}")
        return 0
    print(f"invalid at node path {list(chk.path)}: {chk.reason}")
    return 1


def cmd_enumerate(args) -> int:
    algebras = list(enumerate_dn(args.size))
    if args.modal:
        algebras = enumerate_modal(algebras)
    counts = write_catalog(algebras, args.out)
    for size, count in sorted(counts.items()):
        print(f"size {size} count {count}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dnlab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate an .alg file")
    p.add_argument("path")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("consequence", help="decide a consequence over a class of algebras")
    p.add_argument("--class", dest="class_path", required=True,
                   help="directory of .alg files, a file, or a path missing its .alg suffix")
    p.add_argument("--premises", default="", help="formulas separated by ';'")
    p.add_argument("--conclusion", required=True)
    p.add_argument("--mode", choices=MODES, default="plain")
    p.set_defaults(func=cmd_consequence)

    p = sub.add_parser("prove", help="search for a derivation of a sequent")
    p.add_argument("sequent", help="e.g. 'x0|x1 |- x1|x0'")
    p.add_argument("--depth", type=int, default=64)
    p.add_argument("--mn-bound", type=int, default=6)
    p.add_argument("--certificate", help="write the certificate here instead of stdout")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("verify", help="check a proof certificate")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="write a catalog of algebras of one size")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--modal", action="store_true", help="box expansions instead of plain algebras")
    p.add_argument("--out", default="catalog")
    p.set_defaults(func=cmd_enumerate)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (DNLabError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
