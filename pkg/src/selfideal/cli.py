"""Command line front end.

Exit codes: 0 success, 2 parse/usage error, 3 domain error, 4 budget exceeded,
5 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor

from . import element as el
from .factor import (
    _LocalAtoms,
    count_factorizations,
    enumerate_factorizations,
    factor_irreducibles,
    partitions,
    prime_power_table,
)
from .lengths import (
    FamilyDescriptor,
    UnrealizableError,
    catenary_of,
    deltas,
    family_classify,
    length_set,
    lengths_of,
    local_length_set,
    witness_for,
)
from .ring import INF, DomainError, ring_from_spec

EXIT_USAGE, EXIT_DOMAIN, EXIT_BUDGET, EXIT_IO = 2, 3, 4, 5

DEFAULT_BUDGET = 2_000_000
ORACLE_AUTO_MAX_EXPONENT = 6


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False)


def _fmt_k(k):
    return "inf" if k == INF else k


def _ring(args):
    try:
        return ring_from_spec(args.ring, args.char)
    except ValueError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from None


def _element(args, R):
    try:
        return el.parse_element(args.element, R)
    except ValueError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from None


def _max_exponent(x) -> int:
    R = x.ring
    target = x.b if R.is_zero(x.a) else x.a
    if R.is_zero(target) or R.is_unit(target):
        return 0
    return max(e for _, e in R.factor(target).factors)


def _oracle_enabled(args, x) -> bool:
    if args.oracle == "on":
        return True
    if args.oracle == "off":
        return False
    return _max_exponent(x) <= ORACLE_AUTO_MAX_EXPONENT


def cmd_classify(args) -> dict:
    R = _ring(args)
    x = _element(args, R)
    kind = el.classify_irreducible(x)
    prof = el.local_profile(x)
    return {
        "element": x.to_json(),
        "classification": el.classify(x).value,
        "irreducible": kind.value if kind else None,
        "prime": el.is_prime(x),
        "canonical": el.canonicalize(x).to_json(),
        "local_profile": None
        if prof is None
        else {"p": R.format(prof.p), "n": prof.n, "k": _fmt_k(prof.k)},
    }


def cmd_factor(args) -> dict:
    R = _ring(args)
    x = _element(args, R)
    if args.mode == "witness":
        return factor_irreducibles(x).to_json()
    if args.mode == "count":
        return {"target": x.to_json(), "count": count_factorizations(x)}
    fs = enumerate_factorizations(x)
    return {
        "target": x.to_json(),
        "count": len(fs),
        "factorizations": [[f.to_json() for f in fz.factors] for fz in fs],
    }


def _elasticity(L):
    lo, hi = min(L), max(L)
    g = math.gcd(lo, hi)
    return f"{hi // g}/{lo // g}"


def cmd_invariants(args) -> dict:
    R = _ring(args)
    x = _element(args, R)
    L = length_set(x)
    fam = family_classify(L)
    out = {
        "element": x.to_json(),
        "lengths": sorted(L),
        "delta": sorted(deltas(L)),
        "elasticity": None,
        "catenary": None,
        "family": fam.to_json() if fam else None,
        "oracle_agrees": None,
    }
    if el.is_unit(x):
        out["catenary"] = 0
        return out
    out["elasticity"] = _elasticity(L)
    if count_factorizations(x) > args.budget:
        raise CliError(EXIT_BUDGET, f"more than {args.budget} factorizations")
    fs = enumerate_factorizations(x)
    out["catenary"] = catenary_of(fs)
    if _oracle_enabled(args, x):
        out["oracle_agrees"] = lengths_of(fs) == L
    return out


def cmd_witness(args) -> dict:
    R = _ring(args)
    try:
        obj = json.loads(args.family)
        if not isinstance(obj, dict):
            raise ValueError("descriptor must be a JSON object")
        fam = FamilyDescriptor.from_json(obj)
    except (ValueError, KeyError) as exc:
        raise CliError(EXIT_USAGE, f"bad family descriptor: {exc}") from None
    x = witness_for(fam, R)
    L = length_set(x)
    out = {
        "family": fam.to_json(),
        "element": x.to_json(),
        "lengths": sorted(L),
        "verified": L == fam.members(),
        "oracle_agrees": None,
    }
    if args.oracle != "off" and (args.oracle == "on" or count_factorizations(x) <= args.budget):
        out["oracle_agrees"] = lengths_of(enumerate_factorizations(x)) == L
    return out


ATLAS_HEADER = ["p", "n", "b", "k", "min_len", "max_len", "delta", "catenary", "num_factorizations", "family"]


def _family_cell(f) -> str:
    if f is None:
        return "none"
    if f.clause in ("singleton0", "singleton1"):
        return f.clause
    return f"{f.clause}:{f.m}:{f.n}"


def atlas_cost(R, p, n: int) -> int:
    """Number of atom multisets of total exponent ``n`` (the work of one table)."""
    atoms = _LocalAtoms(R, p)
    total = 0
    for parts in partitions(n):
        term = 1
        for l, m in Counter(parts).items():
            term *= math.comb(R.quotient_size(atoms.power(l)) + m - 1, m)
        total += term
    return total


def atlas_rows(R, p, n: int, check_oracle: bool = True) -> list[list]:
    """Rows for every residue b mod p^n, followed by the extra b = 0 row."""
    table = prime_power_table(R, p, n)
    modulus = R.power(p, n)
    rows = []
    for b in [*R.residues(modulus), R.zero]:
        fs = table.get(b, [])
        k = R.valuation(p, b)
        L = local_length_set(n, k, R.quotient_size(p))
        if check_oracle and lengths_of(fs) != L:
            raise AssertionError(f"closed form and enumeration disagree at ({R.format(modulus)}, {R.format(b)})")
        rows.append([
            R.format(p), n, R.format(b), _fmt_k(k), min(L), max(L),
            ";".join(map(str, sorted(deltas(L)))), catenary_of(fs), len(fs), _family_cell(family_classify(L)),
        ])
    return rows


def _atlas_job(job):
    kind, char, p_text, n, check = job
    R = ring_from_spec(kind, char)
    return atlas_rows(R, R.parse(p_text), n, check)


def atlas_csv(R, p, max_n: int, jobs: int = 1, check_oracle: bool = True) -> str:
    kind = "z" if R.name == "Z" else "fp"
    char = getattr(R, "p", None) if kind == "fp" else None
    work = [(kind, char, R.format(p), n, check_oracle) for n in range(1, max_n + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_atlas_job, work))
    else:
        chunks = [_atlas_job(w) for w in work]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ATLAS_HEADER)
    for rows in chunks:
        w.writerows(rows)
    return buf.getvalue()


def cmd_atlas(args) -> str:
    R = _ring(args)
    try:
        p = R.parse(args.prime)
    except ValueError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from None
    if not R.is_prime_elem(p):
        raise CliError(EXIT_USAGE, f"{args.prime!r} is not a prime of {R.name}")
    p = R.normalize(p)[0]
    if args.max_n < 1:
        raise CliError(EXIT_USAGE, "--max-n must be at least 1")
    cost = sum(atlas_cost(R, p, n) for n in range(1, args.max_n + 1))
    if cost > args.budget:
        raise CliError(EXIT_BUDGET, f"atlas needs {cost} atom multisets, budget is {args.budget}")
    text = atlas_csv(R, p, args.max_n, args.jobs, args.oracle != "off")
    if args.out == "-":
        return text
    try:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {args.out}: {exc}") from None
    return None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="selfideal", description="Factorization in the self-idealization of a PID.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--ring", default="z", help="z (integers) or fp (polynomials over F_p)")
        sp.add_argument("--char", type=int, default=None, help="characteristic for --ring fp")
        sp.add_argument("--oracle", choices=["auto", "on", "off"], default="auto",
                        help="cross-check closed forms against enumeration (auto: exponents <= 6)")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="enumeration budget")

    sp = sub.add_parser("classify", help="classify an element")
    common(sp)
    sp.add_argument("element", help='element as "<a> ; <b>"')
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("factor", help="factor into irreducibles")
    common(sp)
    sp.add_argument("--mode", choices=["witness", "all", "count"], default="witness")
    sp.add_argument("element")
    sp.set_defaults(func=cmd_factor)

    sp = sub.add_parser("invariants", help="sets of lengths and derived invariants")
    common(sp)
    sp.add_argument("element")
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("atlas", help="CSV sweep over all (p^n, b)")
    common(sp)
    sp.add_argument("--prime", required=True)
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--out", default="-", help="output path, - for standard output")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_atlas)

    sp = sub.add_parser("witness", help="element realizing a family descriptor")
    common(sp)
    sp.add_argument("--family", required=True, help='JSON such as {"clause":"interval","m":2,"n":5}')
    sp.set_defaults(func=cmd_witness)
    return parser


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (UnrealizableError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if isinstance(result, str):
        stdout.write(result)
    elif result is not None:
        stdout.write(_dump(result) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
