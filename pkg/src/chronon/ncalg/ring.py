"""Commutative coefficient ring for the operator algebra.

Elements are ``N / S**k`` where ``S = p_x**2 + p_y**2 + p_z**2`` and ``N`` is a
polynomial in the momentum components with coefficients that are Laurent
monomials in the central symbols hbar, m, c (so ``1/c`` is allowed, a general
rational function is not).  Canonical form: ``N`` is not divisible by ``S``
whenever ``k > 0``; zero is ``({}, 0)``.
"""

from __future__ import annotations

from typing import Dict, Iterable, Tuple

from chronon.exact import ExactComplex, ONE, ZERO

# Monomial exponent vector layout: (hbar, m, c, px, py, pz).
HBAR, MASS, LIGHT, PX, PY, PZ = range(6)
NVARS = 6
SYMBOLS = ("hbar", "m", "c", "p_x", "p_y", "p_z")
MOMENTUM = (PX, PY, PZ)

Monomial = Tuple[int, int, int, int, int, int]
Poly = Dict[Monomial, ExactComplex]

_UNIT: Monomial = (0, 0, 0, 0, 0, 0)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))  # type: ignore[return-value]


def poly_add(a: Poly, b: Poly, scale: ExactComplex = ONE) -> Poly:
    out = dict(a)
    for mono, coef in b.items():
        v = out.get(mono, ZERO) + coef * scale
        if v:
            out[mono] = v
        else:
            out.pop(mono, None)
    return out


def poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            mono = _mono_mul(ma, mb)
            v = out.get(mono, ZERO) + ca * cb
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
    return out


def poly_scale(a: Poly, s: ExactComplex) -> Poly:
    if not s:
        return {}
    return {mono: coef * s for mono, coef in a.items()}


def poly_deriv(a: Poly, var: int) -> Poly:
    out: Poly = {}
    for mono, coef in a.items():
        e = mono[var]
        if e == 0:
            continue
        if var in MOMENTUM and e < 0:
            raise ValueError("negative momentum exponent in polynomial")
        new = list(mono)
        new[var] -= 1
        out[tuple(new)] = coef * e
    return out


S_POLY: Poly = {
    (0, 0, 0, 2, 0, 0): ONE,
    (0, 0, 0, 0, 2, 0): ONE,
    (0, 0, 0, 0, 0, 2): ONE,
}


def poly_div_S(a: Poly):
    """Exact quotient ``a / S`` or ``None`` when ``S`` does not divide ``a``.

    Uses the single-divisor division algorithm with leading term ``p_x**2``;
    for one divisor the remainder is unique, so a zero remainder decides
    divisibility.
    """
    rem = dict(a)
    quot: Poly = {}
    while True:
        cands = [mono for mono in rem if mono[PX] >= 2]
        if not cands:
            break
        mono = max(cands, key=lambda mm: (mm[PX], mm))
        coef = rem[mono]
        q = list(mono)
        q[PX] -= 2
        qm = tuple(q)
        quot[qm] = quot.get(qm, ZERO) + coef
        rem = poly_add(rem, poly_mul({qm: coef}, S_POLY), scale=ExactComplex(-1))
    if rem:
        return None
    return {m: c for m, c in quot.items() if c}


class Coef:
    """Element ``num / S**k`` of the localized coefficient ring."""

    __slots__ = ("num", "k", "_key")

    def __init__(self, num: Poly | None = None, k: int = 0):
        num = {m: c for m, c in (num or {}).items() if c}
        if k < 0:
            num = poly_mul(num, _S_pow(-k))
            k = 0
        if not num:
            k = 0
        while k > 0:
            q = poly_div_S(num)
            if q is None:
                break
            num, k = q, k - 1
        self.num = num
        self.k = k
        self._key = (tuple(sorted(num.items(), key=lambda t: t[0])), k)

    # constructors -----------------------------------------------------------
    @classmethod
    def const(cls, value) -> "Coef":
        value = ExactComplex.coerce(value)
        return cls({_UNIT: value}) if value else cls()

    @classmethod
    def symbol(cls, var: int, power: int = 1, coef=1) -> "Coef":
        mono = [0] * NVARS
        mono[var] = power
        return cls({tuple(mono): ExactComplex.coerce(coef)})

    @classmethod
    def inv_S(cls, power: int = 1) -> "Coef":
        return cls({_UNIT: ONE}, power)

    # ring operations --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other: "Coef") -> "Coef":
        if not isinstance(other, Coef):
            other = Coef.const(other)
        k = max(self.k, other.k)
        a = poly_mul(self.num, _S_pow(k - self.k)) if k > self.k else self.num
        b = poly_mul(other.num, _S_pow(k - other.k)) if k > other.k else other.num
        return Coef(poly_add(a, b), k)

    __radd__ = __add__

    def __neg__(self) -> "Coef":
        return Coef(poly_scale(self.num, ExactComplex(-1)), self.k)

    def __sub__(self, other: "Coef") -> "Coef":
        if not isinstance(other, Coef):
            other = Coef.const(other)
        return self + (-other)

    def __mul__(self, other) -> "Coef":
        if not isinstance(other, Coef):
            other = ExactComplex.coerce(other)
            return Coef(poly_scale(self.num, other), self.k)
        return Coef(poly_mul(self.num, other.num), self.k + other.k)

    __rmul__ = __mul__

    def deriv(self, var: int) -> "Coef":
        """Partial derivative; for momentum variables includes the ``S**-k`` factor."""
        dn = poly_deriv(self.num, var)
        if var not in MOMENTUM or self.k == 0:
            return Coef(dn, self.k)
        # d(N S^-k) = (S dN - 2k p_var N) / S^(k+1)
        mono = [0] * NVARS
        mono[var] = 1
        term = poly_mul({tuple(mono): ExactComplex(-2 * self.k)}, self.num)
        return Coef(poly_add(poly_mul(S_POLY, dn), term), self.k + 1)

    def substitute_scale(self, var: int, factor) -> "Coef":
        """Replace symbol ``var`` by ``factor * var`` (``factor`` rational, nonzero)."""
        factor = ExactComplex.coerce(factor)
        out: Poly = {}
        for mono, coef in self.num.items():
            out[mono] = coef * factor ** mono[var]
        return Coef(out, self.k)

    # comparison ---------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Coef):
            try:
                other = Coef.const(other)
            except TypeError:
                return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def terms(self) -> Iterable[Tuple[Monomial, ExactComplex]]:
        return sorted(self.num.items(), key=lambda t: t[0])

    def __str__(self):
        return format_coef(self)

    def __repr__(self):
        return f"Coef({format_coef(self)})"


_S_CACHE: Dict[int, Poly] = {0: {_UNIT: ONE}}


def _S_pow(n: int) -> Poly:
    if n not in _S_CACHE:
        _S_CACHE[n] = poly_mul(_S_pow(n - 1), S_POLY)
    return _S_CACHE[n]


def format_monomial(mono: Monomial) -> str:
    parts = []
    for name, e in zip(SYMBOLS, mono):
        if e == 1:
            parts.append(name)
        elif e != 0:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_coef(c: Coef) -> str:
    if not c.num:
        return "0"
    pieces = []
    for mono, coef in c.terms():
        m = format_monomial(mono)
        if not m:
            pieces.append(str(coef))
        elif coef == 1:
            pieces.append(m)
        elif coef == -1:
            pieces.append("-" + m)
        else:
            pieces.append(f"{coef}*{m}")
    body = " + ".join(pieces)
    if c.k:
        suffix = "/S" if c.k == 1 else f"/S^{c.k}"
        return f"({body}){suffix}"
    return body
