"""Homogeneous polynomials in sparse exponent-tuple form.

Two flavours share one implementation: :class:`Form` lives in the dual ring
``K[X1..Xr]`` and :class:`Operator` in ``R = K[x1..xr]``.  Both are immutable
and hashable.  Terms are kept in graded-lex order with ``X1 > X2 > ...``.
"""
from __future__ import annotations

import re
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import (
    FormSyntaxError,
    InhomogeneousFormError,
    VariableIndexError,
    ZeroFormError,
)
from .scalars import QQ, FieldSpec

ALIASES = "XYZW"

Exponent = tuple  # tuple[int, ...] of length r


@lru_cache(maxsize=None)
def _monomials(r: int, d: int) -> tuple:
    if r == 0:
        return ((),) if d == 0 else ()
    out = []
    for a in range(d, -1, -1):
        out.extend((a,) + rest for rest in _monomials(r - 1, d - a))
    return tuple(out)


def monomial_basis(r: int, d: int) -> list[Exponent]:
    """All exponent tuples of degree ``d`` in ``r`` variables, graded-lex descending."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    return list(_monomials(r, d))


def dim_component(r: int, d: int) -> int:
    """``dim R_d = C(d+r-1, r-1)``; zero for negative ``d``."""
    if d < 0:
        return 0
    if r == 0:
        return 1 if d == 0 else 0
    return comb(d + r - 1, r - 1)


def _var_name(k: int, r: int, upper: bool) -> str:
    name = ALIASES[k] if r <= len(ALIASES) else f"X{k + 1}"
    return name if upper else name.lower()


def _monomial_str(e: Exponent, upper: bool) -> str:
    r = len(e)
    parts = []
    for k, a in enumerate(e):
        if a == 0:
            continue
        v = _var_name(k, r, upper)
        parts.append(v if a == 1 else f"{v}^{a}")
    return "*".join(parts)


class _Homogeneous:
    __slots__ = ("nvars", "degree", "field", "_terms", "_hash")
    _upper = True

    def __init__(self, terms: Mapping[Exponent, object], nvars: int, degree: int | None = None,
                 field: FieldSpec = QQ):
        clean = {}
        for e, c in terms.items():
            e = tuple(int(a) for a in e)
            if len(e) != nvars or any(a < 0 for a in e):
                raise ValueError(f"exponent {e} does not fit {nvars} variables")
            c = field.coerce(c)
            if c:
                clean[e] = field.add(clean[e], c) if e in clean else c
                if not clean[e]:
                    del clean[e]
        degs = {sum(e) for e in clean}
        if len(degs) > 1:
            raise InhomogeneousFormError(degs)
        if degs:
            (d,) = degs
            if degree is not None and degree != d:
                raise ValueError(f"terms have degree {d}, expected {degree}")
            degree = d
        elif degree is None:
            raise ValueError("a zero polynomial needs an explicit degree")
        self.nvars = nvars
        self.degree = degree
        self.field = field
        self._terms = dict(sorted(clean.items(), reverse=True))
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int, degree: int, field: FieldSpec):
        # terms must already be nonzero, reduced and of the right degree
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.degree = degree
        obj.field = field
        obj._terms = dict(sorted(terms.items(), reverse=True))
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars: int, degree: int, field: FieldSpec = QQ):
        return cls._raw({}, nvars, degree, field)

    @classmethod
    def monomial(cls, e: Exponent, coeff=1, field: FieldSpec = QQ):
        e = tuple(e)
        return cls({e: coeff}, len(e), sum(e), field)

    @classmethod
    def variable(cls, k: int, nvars: int, field: FieldSpec = QQ):
        return cls.monomial(tuple(int(i == k) for i in range(nvars)), 1, field)

    @classmethod
    def linear(cls, coeffs: Sequence, field: FieldSpec = QQ):
        r = len(coeffs)
        return cls({tuple(int(i == k) for i in range(r)): c for k, c in enumerate(coeffs)}, r, 1, field)

    @classmethod
    def from_vector(cls, vec: Sequence, nvars: int, degree: int, field: FieldSpec = QQ):
        basis = _monomials(nvars, degree)
        if len(vec) != len(basis):
            raise ValueError("vector length does not match the monomial basis")
        return cls._raw({e: c for e, c in zip(basis, vec) if c}, nvars, degree, field)

    # -- access ------------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, e: Exponent):
        return self._terms.get(tuple(e), self.field.zero)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def to_vector(self) -> tuple:
        z = self.field.zero
        return tuple(self._terms.get(e, z) for e in _monomials(self.nvars, self.degree))

    def variables_used(self) -> set[int]:
        return {k for e in self._terms for k, a in enumerate(e) if a}

    # -- arithmetic --------------------------------------------------------
    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.nvars != self.nvars or other.field != self.field:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other):
        if not isinstance(other, _Homogeneous):
            return NotImplemented
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if other.degree != self.degree:
            raise InhomogeneousFormError({self.degree, other.degree})
        f = self.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = f.add(out[e], c) if e in out else c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return type(self)._raw(out, self.nvars, self.degree, f)

    def __neg__(self):
        f = self.field
        return type(self)._raw({e: f.neg(c) for e, c in self._terms.items()}, self.nvars, self.degree, f)

    def __sub__(self, other):
        if not isinstance(other, _Homogeneous):
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        f = self.field
        c = f.coerce(c)
        if not c:
            return type(self).zero(self.nvars, self.degree, f)
        return type(self)._raw({e: f.mul(c, a) for e, a in self._terms.items()}, self.nvars, self.degree, f)

    def monic(self):
        """Scale so the leading coefficient (graded-lex) is 1."""
        if not self._terms:
            return self
        return self.scale(self.field.inv(next(iter(self._terms.values()))))

    def __mul__(self, other):
        if isinstance(other, _Homogeneous):
            return multiply(self, other)
        if isinstance(other, (int,)) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, _Homogeneous):
            return NotImplemented
        return self.__mul__(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = type(self)({(0,) * self.nvars: 1}, self.nvars, 0, self.field)
        base = self
        while n:
            if n & 1:
                result = multiply(result, base)
            n >>= 1
            if n:
                base = multiply(base, base)
        return result

    def __eq__(self, other):
        if not isinstance(other, _Homogeneous):
            return NotImplemented
        return (
            type(self) is type(other)
            and self.nvars == other.nvars
            and self.degree == other.degree
            and self.field == other.field
            and self._terms == other._terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.nvars, self.degree, self.field,
                               tuple(self._terms.items())))
        return self._hash

    # -- printing ----------------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for n, (e, c) in enumerate(self._terms.items()):
            neg = c < 0
            a = -c if neg else c
            mono = _monomial_str(e, self._upper)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if n == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r}, r={self.nvars}, field={self.field})"


class Form(_Homogeneous):
    """Homogeneous form in the dual ring (variables ``X1..Xr``)."""

    __slots__ = ()
    _upper = True


class Operator(_Homogeneous):
    """Homogeneous element of ``R`` (variables ``x1..xr``), acting on forms."""

    __slots__ = ()
    _upper = False


def multiply(a: _Homogeneous, b: _Homogeneous) -> _Homogeneous:
    """Exact product of two homogeneous polynomials of the same ring."""
    a._check(b)
    f = a.field
    out = {}
    for ea, ca in a._terms.items():
        for eb, cb in b._terms.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            c = f.mul(ca, cb)
            s = f.add(out[e], c) if e in out else c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return type(a)._raw(out, a.nvars, a.degree + b.degree, f)


_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>\d+(?:\s*/\s*\d+)?)"
    r"|(?P<var>[A-Za-z]\d*)"
    r"|(?P<op>[-+*^−])"
    r")"
)


def _tokenize(text: str):
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "op" and value == "−":
            value = "-"
        yield kind, value, start
        pos = m.end()
    yield "end", "", n


def _var_index(name: str, r: int, pos: int) -> int:
    letter, digits = name[0].upper(), name[1:]
    if digits:
        if letter != "X":
            raise FormSyntaxError(f"unknown variable {name!r}", pos)
        k = int(digits) - 1
        if k < 0:
            raise VariableIndexError(f"variable {name!r} at position {pos}: indices start at 1")
    else:
        if letter not in ALIASES:
            raise FormSyntaxError(f"unknown variable {name!r}", pos)
        if r > len(ALIASES):
            raise VariableIndexError(
                f"alias {name!r} at position {pos} is only available for r <= {len(ALIASES)}; use X1..X{r}"
            )
        k = ALIASES.index(letter)
    if k >= r:
        raise VariableIndexError(f"variable {name!r} at position {pos} is out of range for r={r}")
    return k


def _parse_terms(text: str, r: int) -> list[tuple[Exponent, object, int]]:
    toks = list(_tokenize(text))
    i = 0
    terms = []

    def peek():
        return toks[i]

    kind, val, pos = peek()
    if kind == "end":
        raise FormSyntaxError("empty expression", pos)
    sign = 1
    if kind == "op" and val in "+-":
        sign = -1 if val == "-" else 1
        i += 1
    while True:
        kind, val, pos = peek()
        term_pos = pos
        coeff = None
        exps = [0] * r
        if kind == "num":
            coeff = val.replace(" ", "")
            num, _, den = coeff.partition("/")
            if den and int(den) == 0:
                raise FormSyntaxError("zero denominator", pos)
            i += 1
            kind, val, pos = peek()
            if kind == "op" and val == "*":
                i += 1
                kind, val, pos = peek()
                if kind != "var":
                    raise FormSyntaxError("expected a variable after '*'", pos)
        if kind != "var" and coeff is None:
            raise FormSyntaxError("expected a coefficient or variable", pos)
        while kind == "var":
            k = _var_index(val, r, pos)
            i += 1
            e = 1
            kind, val, pos = peek()
            if kind == "op" and val == "^":
                i += 1
                kind, val, pos = peek()
                if kind != "num" or "/" in val:
                    raise FormSyntaxError("expected an integer exponent after '^'", pos)
                e = int(val)
                i += 1
                kind, val, pos = peek()
            exps[k] += e
            if kind == "op" and val == "*":
                i += 1
                kind, val, pos = peek()
                if kind != "var":
                    raise FormSyntaxError("expected a variable after '*'", pos)
        terms.append((tuple(exps), (sign, coeff or "1"), term_pos))
        if kind == "end":
            break
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
            continue
        raise FormSyntaxError(f"unexpected {val!r}", pos)
    return terms


def _parse(cls, text: str, r: int, field: FieldSpec, allow_zero: bool):
    if r < 1:
        raise ValueError("need at least one variable")
    raw = _parse_terms(text, r)
    degs = {sum(e) for e, _, _ in raw}
    if len(degs) > 1:
        raise InhomogeneousFormError(degs)
    terms = {}
    for e, (sign, coeff), _ in raw:
        c = field.coerce(coeff)
        if sign < 0:
            c = field.neg(c)
        terms[e] = field.add(terms[e], c) if e in terms else c
    (deg,) = degs
    poly = cls(terms, r, deg, field)
    if poly.is_zero() and not allow_zero:
        raise ZeroFormError(f"{text!r} is the zero polynomial, which has no well-defined degree")
    return poly


def parse_form(text: str, r: int, field: FieldSpec = QQ) -> Form:
    """Parse a nonzero homogeneous form such as ``"X^4 + X*Y^3"`` or ``"X1^2*X2 - 3*X3^3"``."""
    return _parse(Form, text, r, field, allow_zero=False)


def parse_operator(text: str, r: int, field: FieldSpec = QQ, allow_zero: bool = False) -> Operator:
    return _parse(Operator, text, r, field, allow_zero)


def infer_nvars(texts: Iterable[str]) -> int:
    """Smallest ``r`` that covers every variable mentioned in the texts."""
    r = 1
    for text in texts:
        for kind, val, _ in _tokenize(text):
            if kind != "var":
                continue
            letter, digits = val[0].upper(), val[1:]
            if digits:
                r = max(r, int(digits))
            elif letter in ALIASES:
                r = max(r, ALIASES.index(letter) + 1)
    return r
