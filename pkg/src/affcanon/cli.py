"""Command line front end.

    affcanon canon FILE [--format text|json] [--witness]
    affcanon equiv FILE1 FILE2 [--witness]
    affcanon laurent FILE | -e EXPR
    affcanon selftest [--trials N] [--seed S] [--dims 1,2,3,4]
    affcanon bench --n 1000,2000 --d 2 --bits 32 [--seed S]

Exit codes: 0 success / equivalent, 1 not equivalent or a failed self-test,
2 malformed input.
"""

import argparse
import csv
import gc
import json
import random
import sys
import time
from fractions import Fraction

from . import canon, eqframes, exactla, oracle, weighted
from .core import PointSet, WeightedPointSet, apply_affinity


class InputError(ValueError):
    def __init__(self, msg, line=None, col=None):
        where = ""
        if line is not None:
            where = f"line {line}, column {col}: "
        super().__init__(where + msg)
        self.line = line
        self.col = col


# ---------------------------------------------------------------- formats

def _int_at(tok, line, col):
    try:
        return int(tok)
    except ValueError:
        raise InputError(f"expected an integer, got {tok!r}", line, col) from None


def _fields(s, line, offset):
    """Whitespace separated tokens of ``s`` with their 1-based columns."""
    out = []
    i = 0
    while i < len(s):
        if s[i].isspace():
            i += 1
            continue
        j = i
        while j < len(s) and not s[j].isspace():
            j += 1
        out.append((s[i:j], offset + i + 1))
        i = j
    return out


def parse_points_text(text, dim=None):
    """One point per line, optional ``" : w"`` weight, ``#`` comments."""
    pts, weighted_rows, plain_rows = [], 0, 0
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        weight = None
        if ":" in body:
            k = body.index(":")
            wf = _fields(body[k + 1:], ln, k + 1)
            if len(wf) != 1:
                raise InputError("expected exactly one weight after ':'", ln, k + 1)
            weight = _int_at(wf[0][0], ln, wf[0][1])
            if weight == 0:
                raise InputError("weights must be nonzero", ln, wf[0][1])
            body = body[:k]
            weighted_rows += 1
        else:
            plain_rows += 1
        coords = _fields(body, ln, 0)
        if not coords:
            raise InputError("missing coordinates", ln, 1)
        p = tuple(_int_at(t, ln, c) for t, c in coords)
        if dim is None:
            dim = len(p)
        elif len(p) != dim:
            raise InputError(f"expected {dim} coordinates, got {len(p)}", ln, coords[0][1])
        if weighted_rows and plain_rows:
            raise InputError("either every point carries a weight or none does", ln, 1)
        pts.append((p, weight))
    if dim is None:
        raise InputError("no points and no dimension given")
    if weighted_rows:
        W = WeightedPointSet(pts, dim=dim)
        return W
    return PointSet([p for p, _ in pts], dim=dim)


def _json_load(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(e.msg, e.lineno, e.colno) from None


def _check_vec(v, dim, what):
    if not isinstance(v, list) or len(v) != dim or not all(
        isinstance(c, int) and not isinstance(c, bool) for c in v
    ):
        raise InputError(f"{what} must be a list of {dim} integers, got {v!r}")
    return tuple(v)


def parse_points_json(text):
    doc = _json_load(text)
    if not isinstance(doc, dict) or "dim" not in doc:
        raise InputError('expected an object with a "dim" field')
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InputError('"dim" must be a positive integer')
    if "points" in doc:
        return PointSet([_check_vec(p, dim, "point") for p in doc["points"]], dim=dim)
    if "terms" in doc:
        items = []
        for t in doc["terms"]:
            if not isinstance(t, dict) or "exp" not in t or "coef" not in t:
                raise InputError('each term needs "exp" and "coef"')
            c = t["coef"]
            if not isinstance(c, int) or isinstance(c, bool):
                raise InputError(f"coefficient must be an integer, got {c!r}")
            items.append((_check_vec(t["exp"], dim, "exponent"), c))
        return WeightedPointSet(items, dim=dim)
    raise InputError('expected a "points" or "terms" field')


def format_points_text(X):
    if isinstance(X, WeightedPointSet):
        lines = [" ".join(map(str, p)) + f" : {w}" for p, w in X.items]
    else:
        lines = [" ".join(map(str, p)) for p in X.points]
    return "".join(line + "\n" for line in lines)


def to_json_doc(X):
    if isinstance(X, WeightedPointSet):
        return {"dim": X.dim, "terms": [{"exp": list(p), "coef": w} for p, w in X.items]}
    return {"dim": X.dim, "points": [list(p) for p in X.points]}


def format_witness_text(psi):
    out = ["A:"]
    out += [" ".join(map(str, row)) for row in psi.A]
    out += ["b:", " ".join(map(str, psi.b))]
    return "".join(line + "\n" for line in out)


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load_set(path, fmt):
    text = _read(path)
    return parse_points_json(text) if fmt == "json" else parse_points_text(text)


# ---------------------------------------------------------------- commands

def cmd_canon(args, out):
    L = load_set(args.input, args.format)
    if args.witness and len(L):
        omega, psi = canon.canonical_form_with_witness(L)
    else:
        omega, psi = canon.canonical_form(L), None
    if args.format == "json":
        doc = to_json_doc(omega)
        if psi is not None:
            doc["A"] = [list(r) for r in psi.A]
            doc["b"] = list(psi.b)
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        out.write(format_points_text(omega))
        if psi is not None:
            out.write(format_witness_text(psi))
    return 0


def cmd_equiv(args, out):
    L1 = load_set(args.input1, args.format)
    L2 = load_set(args.input2, args.format)
    if L1.dim != L2.dim:
        raise InputError(f"dimension mismatch: {L1.dim} vs {L2.dim}")
    phi = canon.are_equivalent(L1, L2)
    if phi is None:
        out.write("NOT EQUIVALENT\n")
        return 1
    out.write("EQUIVALENT\n")
    if args.witness:
        out.write(format_witness_text(phi))
    return 0


def cmd_laurent(args, out):
    if args.expr is not None:
        P = weighted.parse_laurent(args.expr, dim=args.dim)
    elif args.format == "json":
        W = parse_points_json(_read(args.input))
        if not isinstance(W, WeightedPointSet):
            raise InputError('Laurent input needs a "terms" field')
        if not len(W):
            raise weighted.ZeroPolynomialError("polynomial is zero")
        P = weighted.LaurentPoly(W.dim, W)
    else:
        text = " ".join(
            line.split("#", 1)[0] for line in _read(args.input).splitlines()
        )
        P = weighted.parse_laurent(text, dim=args.dim)
    C = weighted.canonicalize_laurent(P)
    if args.format == "json":
        out.write(json.dumps(to_json_doc(C.terms), sort_keys=True) + "\n")
    else:
        out.write(weighted.print_laurent(C) + "\n")
    return 0


# ---------------------------------------------------------------- self-test

def _suite_invariance(rng, trials, dims, max_fs):
    ok = 0
    for k in range(trials):
        d = dims[k % len(dims)]  # cycle so every requested dimension is exercised
        L = oracle.random_point_set(d, rng.randint(1, 24), rng.choice([2, 4, 8, 16, 64]), rng)
        phi = oracle.random_affinity(d, rng, rng.randint(0, 40), 3)
        st = eqframes.FrameStats()
        omega, psi = canon.canonical_form_with_witness(L, stats=st)
        max_fs[d] = max(max_fs.get(d, 0), st.max_frameset)
        good = (
            canon.canonical_form(apply_affinity(phi, L)) == omega
            and apply_affinity(psi, L) == omega
            and canon.canonical_form(omega) == omega
        )
        ok += good
    return ok


def _suite_oracle(rng, trials, dims, max_fs):
    ok = 0
    for k in range(trials):
        while True:
            L1 = oracle.random_point_set(2, rng.randint(3, 8), 3, rng)
            L1 = PointSet([tuple(c + 4 for c in p) for p in L1], dim=2)  # coordinates in [0, 8)
            if exactla.affine_rank(L1.points) == 2:
                break
        if k % 2 == 0:
            L2 = apply_affinity(oracle.random_affinity(2, rng, 10, 2), L1)
        else:
            while True:
                L2 = PointSet({(rng.randrange(8), rng.randrange(8)) for _ in range(len(L1))}, dim=2)
                if len(L2) == len(L1) and exactla.affine_rank(L2.points) == 2:
                    break
        ok += (canon.are_equivalent(L1, L2) is not None) == (
            oracle.brute_force_equivalent(L1, L2) is not None)
    return ok


def _random_rational_frame(rng, d, size):
    while True:
        Q = tuple(tuple(Fraction(rng.randint(-6, 6), rng.choice([1, 2, 3])) for _ in range(d))
                  for _ in range(size))
        if exactla.affine_rank(Q) == size - 1:
            return Q


def _suite_frames(rng, trials, dims, max_fs):
    ok = 0
    for k in range(trials):
        d = dims[k % len(dims)]
        L = oracle.random_point_set(d, rng.randint(1, 12), rng.choice([2, 4, 8]), rng)
        phi = oracle.random_affinity(d, rng, rng.randint(0, 40), 3)
        if k % 3 == 2:
            S = eqframes.equivariant_frames_ref(L)
            T = eqframes.equivariant_frames_ref(apply_affinity(phi, L))
            Q = ()
        else:
            Q = _random_rational_frame(rng, d, rng.randint(1, d)) if k % 3 == 1 else ()
            S = eqframes.equivariant_frames2(L, Q)
            max_fs[d] = max(max_fs[d], len(S))
            T = eqframes.equivariant_frames2(apply_affinity(phi, L), apply_affinity(phi, Q) if Q else ())
        ok += T == frozenset(apply_affinity(phi, R) if R else () for R in S)
    return ok


def _suite_laurent(rng, trials, dims, max_fs):
    ok = 0
    ldims = [d for d in dims if d <= 3] or [1]
    for _ in range(trials):
        d = rng.choice(ldims)
        terms = {tuple(rng.randint(-4, 4) for _ in range(d)): rng.choice([-3, -2, -1, 1, 2, 3])
                 for _ in range(rng.randint(1, 12))}
        P = weighted.LaurentPoly.from_dict(terms, d)
        phi = oracle.random_affinity(d, rng, rng.randint(0, 40), 3)
        W = apply_affinity(phi, P.terms)
        Q = weighted.LaurentPoly(d, W if rng.random() < 0.5 else -W)
        a = weighted.canonicalize_laurent(P)
        ok += a == weighted.canonicalize_laurent(Q) and a.leading()[1] > 0
    return ok


def _suite_hnf(rng, trials, dims, max_fs):
    ok = 0
    for _ in range(trials):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        M = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)]
        H, U = exactla.hnf_with_transform(M)
        V = oracle.random_unimodular(m, rng, 12, 3)
        H2 = exactla.hnf_with_transform(exactla.matmul(V, M)).H
        ok += (exactla.matmul(U, M) == H and abs(exactla.det(U)) == 1
               and exactla.is_hnf(H) and H2 == H)
    return ok


SUITES = [
    ("invariance+witness+idempotence", _suite_invariance),
    ("oracle-agreement", _suite_oracle),
    ("frame-equivariance", _suite_frames),
    ("laurent-invariance", _suite_laurent),
    ("hnf-contract", _suite_hnf),
]


def cmd_selftest(args, out):
    dims = _int_list(args.dims)
    if not dims or any(d < 1 for d in dims):
        raise InputError("--dims must list positive dimensions")
    rng = random.Random(args.seed)
    max_fs = {d: 0 for d in dims}
    failed = 0
    for name, fn in SUITES:
        ok = fn(rng, args.trials, dims, max_fs)
        status = "ok" if ok == args.trials else "FAIL"
        failed += args.trials - ok
        out.write(f"{name}: {ok}/{args.trials} {status}\n")
    for d in sorted(max_fs):
        out.write(f"max |FrameSet| d={d}: {max_fs[d]}\n")
    out.write("all passed\n" if not failed else f"{failed} failures\n")
    return 0 if not failed else 1


# ---------------------------------------------------------------- bench

def cmd_bench(args, out):
    ns = _int_list(args.n)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["n", "d", "bits", "seconds", "max_frameset"])
    for n in ns:
        L = oracle.random_point_set(args.d, n, args.bits, random.Random(f"{args.seed}:{n}"))
        dt = None
        for _ in range(max(args.repeat, 1)):
            st = eqframes.FrameStats()
            # like timeit, keep cyclic GC pauses out of the measurement
            gc_was_on = gc.isenabled()
            gc.disable()
            try:
                t0 = time.perf_counter()
                canon.canonical_form(L, stats=st)
                t = time.perf_counter() - t0
            finally:
                if gc_was_on:
                    gc.enable()
            dt = t if dt is None else min(dt, t)
        w.writerow([n, args.d, args.bits, f"{dt:.6f}", st.max_frameset])
        out.flush()
    return 0


def _int_list(s):
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected a comma separated list of integers, got {s!r}") from None


def build_parser():
    ap = argparse.ArgumentParser(
        prog="affcanon",
        description="Canonical forms of lattice point sets under integer affine maps.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("canon", help="print the canonical form of a point set")
    p.add_argument("input", help="input file, '-' for stdin")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--witness", action="store_true", help="also print A and b with A p + b = form")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("equiv", help="decide whether two point sets are equivalent")
    p.add_argument("input1")
    p.add_argument("input2")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--witness", action="store_true", help="print an affinity mapping set 1 onto set 2")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("laurent", help="canonicalise a Laurent polynomial")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("-e", "--expr", help="polynomial given on the command line")
    p.add_argument("--dim", type=int, default=None, help="number of variables (default: inferred)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_laurent)

    p = sub.add_parser("selftest", help="run the randomized property suites")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dims", default="1,2,3,4")
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("bench", help="time canonical_form on random sets, CSV output")
    p.add_argument("--n", default="1000,2000,4000,8000,16000")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--bits", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeat", type=int, default=1, help="report the fastest of this many runs")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (InputError, ValueError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
