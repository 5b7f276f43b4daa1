"""Normal-ordered expressions over the canonical pair (r_i, p_i).

A term is ``r_x**a r_y**b r_z**c * g(p)``: every position generator sits to the
left of all momentum dependence, which lives in a :class:`Coef`.  Moving a
momentum function left past positions uses

    g(p) r^beta = sum_{gamma <= beta} C(beta, gamma) r^(beta - gamma) (-i hbar d_p)^gamma g

which encodes ``[r_i, p_j] = i hbar delta_ij`` and ``[r_i, S**-1] = -2 i hbar p_i S**-2``.
"""

from __future__ import annotations

from itertools import product
from math import comb
from typing import Dict, Iterable, Tuple

from chronon.exact import ExactComplex, I
from chronon.ncalg.ring import HBAR, MOMENTUM, PX, S_POLY, Coef, format_coef, poly_mul

RWord = Tuple[int, int, int]
AXES = "xyz"

_NO_R: RWord = (0, 0, 0)


class NCExpr:
    """Immutable sum of normal-ordered terms ``{r-word: coefficient}``."""

    __slots__ = ("terms", "_key")

    def __init__(self, terms: Dict[RWord, Coef] | None = None):
        clean = {w: c for w, c in (terms or {}).items() if not c.is_zero()}
        self.terms = clean
        self._key = tuple(sorted((w, c._key) for w, c in clean.items()))

    # constructors -----------------------------------------------------------
    @classmethod
    def scalar(cls, value) -> "NCExpr":
        c = value if isinstance(value, Coef) else Coef.const(value)
        return cls({_NO_R: c})

    @classmethod
    def r(cls, axis: int) -> "NCExpr":
        word = [0, 0, 0]
        word[axis] = 1
        return cls({tuple(word): Coef.const(1)})

    @classmethod
    def p(cls, axis: int) -> "NCExpr":
        return cls({_NO_R: Coef.symbol(MOMENTUM[axis])})

    @classmethod
    def zero(cls) -> "NCExpr":
        return cls()

    # algebra ----------------------------------------------------------------
    def __add__(self, other) -> "NCExpr":
        other = _lift(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return NCExpr(out)

    __radd__ = __add__

    def __neg__(self) -> "NCExpr":
        return NCExpr({w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> "NCExpr":
        return self + (-_lift(other))

    def __rsub__(self, other) -> "NCExpr":
        return _lift(other) - self

    def __mul__(self, other) -> "NCExpr":
        return nc_multiply(self, _lift(other))

    def __rmul__(self, other) -> "NCExpr":
        return nc_multiply(_lift(other), self)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, NCExpr):
            try:
                other = _lift(other)
            except TypeError:
                return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def sorted_terms(self) -> Iterable[Tuple[RWord, Coef]]:
        return sorted(self.terms.items(), key=lambda t: (t[0], t[1]._key))

    def map_coefs(self, fn) -> "NCExpr":
        return NCExpr({w: fn(c) for w, c in self.terms.items()})

    def term_strings(self) -> list[str]:
        out = []
        for w, c in self.sorted_terms():
            word = "*".join(
                f"r_{AXES[i]}" if e == 1 else f"r_{AXES[i]}^{e}" for i, e in enumerate(w) if e
            )
            coef = format_coef(c)
            out.append(f"{word} * ({coef})" if word else f"({coef})")
        return out

    def __str__(self):
        return " + ".join(self.term_strings()) or "0"

    __repr__ = __str__


def _lift(x) -> NCExpr:
    if isinstance(x, NCExpr):
        return x
    if isinstance(x, Coef):
        return NCExpr.scalar(x)
    return NCExpr.scalar(ExactComplex.coerce(x))


_MINUS_I_HBAR = Coef.symbol(HBAR, 1, -I)


def _move_left(g: Coef, beta: RWord):
    """Expand ``g(p) r^beta`` into normal-ordered pieces ``(r-word, coef)``."""
    for gamma in product(*(range(b + 1) for b in beta)):
        weight = 1
        d = g
        for axis, (b, k) in enumerate(zip(beta, gamma)):
            weight *= comb(b, k)
            for _ in range(k):
                d = d.deriv(PX + axis)
            if d.is_zero():
                break
        if d.is_zero():
            continue
        order = sum(gamma)
        coef = d * weight
        for _ in range(order):
            coef = coef * _MINUS_I_HBAR
        yield tuple(b - k for b, k in zip(beta, gamma)), coef


def nc_multiply(a: NCExpr, b: NCExpr) -> NCExpr:
    """Product of two normal-ordered expressions, returned in normal form."""
    out: Dict[RWord, Coef] = {}
    for wa, ga in a.terms.items():
        for wb, hb in b.terms.items():
            for wmid, coef in _move_left(ga, wb):
                word = tuple(x + y for x, y in zip(wa, wmid))
                c = coef * hb
                out[word] = out[word] + c if word in out else c
    return NCExpr(out)


def commutator(a: NCExpr, b: NCExpr) -> NCExpr:
    return nc_multiply(a, b) - nc_multiply(b, a)


# L = 0 constraint ------------------------------------------------------------


def constraint_reduce(e: NCExpr) -> NCExpr:
    """Apply the vanishing-angular-momentum rewrite ``r_i p_j -> r_j p_i``.

    Within a normal-ordered term ``r^alpha p^beta`` the swap preserves the
    combined index multiset ``alpha + beta`` and the position degree, so each
    position degree ``k`` is fused into the single rational function
    ``sum_alpha p^alpha g_alpha(p)``, reduced there, and split back with the
    ``k`` smallest indices assigned to the position word.  This makes the
    result a unique representative of its class, hence idempotent.
    """
    by_degree: Dict[int, Coef] = {}
    for word, coef in e.terms.items():
        mono = [0] * 6
        for axis, n in enumerate(word):
            mono[MOMENTUM[axis]] = n
        fused = Coef({tuple(mono): ExactComplex(1)}) * coef
        k = sum(word)
        by_degree[k] = by_degree[k] + fused if k in by_degree else fused

    out: Dict[RWord, Coef] = {}
    for k, fused in by_degree.items():
        if fused.is_zero():
            continue
        num, sk = fused.num, fused.k
        # every monomial must carry at least k momentum factors to split back
        while any(sum(m[PX:]) < k for m in num):
            num = poly_mul(num, S_POLY)
            sk += 1
        split: Dict[RWord, dict] = {}
        for mono, c in num.items():
            counts = list(mono[PX:])
            word = [0, 0, 0]
            need = k
            for axis in range(3):
                take = min(need, counts[axis])
                word[axis] += take
                counts[axis] -= take
                need -= take
            rest = tuple(mono[:PX]) + tuple(counts)
            split.setdefault(tuple(word), {})[rest] = c
        for word, poly in split.items():
            c = Coef(poly, sk)
            out[word] = out[word] + c if word in out else c
    return NCExpr(out)
