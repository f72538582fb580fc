"""Weighted point sets and Laurent polynomials.

A Laurent polynomial in ``t1..td`` is the weighted set of its exponent
vectors, weighted by coefficients.  A change of variables ``t -> t^A`` and
multiplication by a monomial ``t^b`` act on the exponents by ``x -> A x + b``,
so canonicalising the weighted set handles both.  The global sign is dealt
with by canonicalising ``P`` and ``-P`` and keeping the smaller.
"""

import re
from dataclasses import dataclass
from typing import Dict, Optional

from .canon import canonical_form
from .core import WeightedPointSet, cmp_sets


class LaurentSyntaxError(ValueError):
    """Malformed polynomial text; ``pos`` is the 0-based offset of the problem."""

    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class ZeroPolynomialError(ValueError):
    pass


def canonical_form_weighted(W: WeightedPointSet) -> WeightedPointSet:
    """Canonical form of a weighted set; weights are carried and compared."""
    if not isinstance(W, WeightedPointSet):
        W = WeightedPointSet(W)
    return canonical_form(W)


@dataclass(frozen=True)
class LaurentPoly:
    dim: int
    terms: WeightedPointSet

    @classmethod
    def from_dict(cls, terms: Dict[tuple, int], dim: Optional[int] = None):
        W = WeightedPointSet(terms, dim=dim)
        return cls(W.dim, W)

    def as_dict(self):
        return self.terms.as_dict()

    def __neg__(self):
        return LaurentPoly(self.dim, -self.terms)

    def __len__(self):
        return len(self.terms)

    def leading(self):
        """``(exponent, coefficient)`` of the lexicographically greatest exponent."""
        return self.terms.items[-1]

    def __str__(self):
        return print_laurent(self)


def canonicalize_laurent(P: LaurentPoly) -> LaurentPoly:
    if not len(P.terms):
        raise ZeroPolynomialError("the zero polynomial has no canonical form")
    pos = canonical_form_weighted(P.terms)
    neg = canonical_form_weighted(-P.terms)
    best = pos if cmp_sets(pos, neg) <= 0 else neg
    if best.items[-1][1] < 0:
        best = -best
    return LaurentPoly(P.dim, best)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>t(?P<idx>\d+))|(?P<op>[-+*^])|(?P<bad>\S))")


def _tokens(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace is left
            break
        if m.group("bad") is not None:
            raise LaurentSyntaxError(f"unexpected character {m.group('bad')!r}", m.start("bad"))
        if m.group("num") is not None:
            out.append(("num", int(m.group("num")), m.start("num")))
        elif m.group("var") is not None:
            out.append(("var", int(m.group("idx")), m.start("var")))
        else:
            out.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def parse_laurent(text: str, dim: Optional[int] = None) -> LaurentPoly:
    """Parse e.g. ``"1 + t1 - 3*t2^-3"``; ``dim`` defaults to the largest variable index."""
    toks = _tokens(text)
    i = 0
    raw = []  # (coef, {var: exp})

    def peek():
        return toks[i]

    def expect_int():
        nonlocal i
        sign = 1
        kind, val, pos = toks[i]
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
            kind, val, pos = toks[i]
        if kind != "num":
            raise LaurentSyntaxError("expected an integer exponent", pos)
        i += 1
        return sign * val

    first = True
    while True:
        kind, val, pos = peek()
        sign = 1
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
        elif not first:
            raise LaurentSyntaxError("expected '+' or '-'", pos)
        elif kind == "end":
            raise LaurentSyntaxError("empty polynomial", pos)
        first = False
        coef = 1
        kind, val, pos = peek()
        seen = False
        if kind == "num":
            coef = val
            i += 1
            seen = True
        exps: Dict[int, int] = {}
        while True:
            kind, val, pos = peek()
            if kind == "op" and val == "*":
                if not seen:
                    raise LaurentSyntaxError("'*' without a left operand", pos)
                i += 1
                kind, val, pos = peek()
                if kind != "var":
                    raise LaurentSyntaxError("expected a variable after '*'", pos)
            if kind != "var":
                break
            if val < 1:
                raise LaurentSyntaxError("variables are numbered from t1", pos)
            i += 1
            e = 1
            if peek()[0] == "op" and peek()[1] == "^":
                i += 1
                e = expect_int()
            exps[val] = exps.get(val, 0) + e
            seen = True
        if not seen:
            raise LaurentSyntaxError("expected a coefficient or a variable", peek()[2])
        raw.append((sign * coef, exps))
        if peek()[0] == "end":
            break
    top = max((v for _, e in raw for v in e), default=0)
    if dim is None:
        dim = max(top, 1)
    elif top > dim:
        raise LaurentSyntaxError(f"variable t{top} exceeds dimension {dim}", 0)
    W = WeightedPointSet(
        [(tuple(e.get(k + 1, 0) for k in range(dim)), c) for c, e in raw], dim=dim
    )
    if not len(W):
        raise ZeroPolynomialError("polynomial is zero")
    return LaurentPoly(dim, W)


def _monomial(exp):
    parts = []
    for k, e in enumerate(exp, start=1):
        if e == 1:
            parts.append(f"t{k}")
        elif e:
            parts.append(f"t{k}^{e}")
    return "*".join(parts)


def print_laurent(P: LaurentPoly) -> str:
    """Terms by descending exponent, e.g. ``3*t1^2*t2^-1 - t2 + 1``."""
    out = []
    for exp, c in reversed(P.terms.items):
        mono = _monomial(exp)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out) if out else "0"
