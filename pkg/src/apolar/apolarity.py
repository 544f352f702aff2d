"""The action of R on the dual ring, catalecticants, and derivative spaces.

Two actions are available.  Contraction (``x^a o X^b = X^(b-a)``) works in
every characteristic and is the default; under it the coefficients of a form
are read as divided-power coordinates.  Differentiation carries the
falling-factorial coefficients of ordinary partial derivatives and is only
allowed when ``char K`` is 0 or exceeds the degree of the forms involved.

The two actions give different ranks on the same coefficient vector (a
power ``L^j`` of a linear form has rank-one catalecticants only under
differentiation).  They agree after :func:`to_divided_powers`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import prod
from typing import Sequence

from .errors import ActionCharacteristicError, DependentFormsError
from .forms import Form, Operator, _monomials, monomial_basis
from .scalars import ExactMatrix, FieldSpec


class ActionKind(enum.Enum):
    DIFFERENTIATION = "diff"
    CONTRACTION = "contract"

    @classmethod
    def parse(cls, text: str) -> "ActionKind":
        t = text.strip().lower()
        for kind in cls:
            if t in (kind.value, kind.name.lower()):
                return kind
        raise ValueError(f"unknown action {text!r}; use 'diff' or 'contract'")


CONTRACTION = ActionKind.CONTRACTION
DIFFERENTIATION = ActionKind.DIFFERENTIATION


def check_action(action: ActionKind, field: FieldSpec, degree: int) -> None:
    """Raise unless ``action`` is faithful for forms of ``degree`` over ``field``."""
    p = field.characteristic()
    if action is DIFFERENTIATION and p and p <= degree:
        raise ActionCharacteristicError(
            f"differentiation degenerates in characteristic {p} for degree {degree}; "
            "use the contraction action"
        )


def _falling(b: int, a: int) -> int:
    return prod(range(b - a + 1, b + 1))


def _factor(a, c) -> int:
    # coefficient picked up by d^a/dX^a applied to X^(a+c)
    return prod(_falling(ak + ck, ak) for ak, ck in zip(a, c))


def apply(h: Operator, F: Form, action: ActionKind = CONTRACTION) -> Form:
    """``h o F``: a form of degree ``deg F - deg h``."""
    if h.nvars != F.nvars or h.field != F.field:
        raise ValueError("operator and form live in different rings")
    if h.degree > F.degree:
        raise ValueError(f"operator degree {h.degree} exceeds form degree {F.degree}")
    check_action(action, F.field, F.degree)
    f = F.field
    out = {}
    for a, ca in h.items():
        for b, cb in F.items():
            if any(x > y for x, y in zip(a, b)):
                continue
            c = tuple(y - x for x, y in zip(a, b))
            v = f.mul(ca, cb)
            if action is DIFFERENTIATION:
                v = f.mul(v, f.coerce(_factor(a, c)))
            s = f.add(out[c], v) if c in out else v
            if s:
                out[c] = s
            else:
                out.pop(c, None)
    return Form._raw(out, F.nvars, F.degree - h.degree, f)


@dataclass(frozen=True)
class Catalecticant:
    """Matrix of ``R_u -> D_{j-u}, h -> h o F``.

    Rows follow ``monomial_basis(r, j-u)``, columns ``monomial_basis(r, u)``.
    """

    form: Form
    order: int
    matrix: ExactMatrix
    action: ActionKind

    @property
    def rank(self) -> int:
        return self.matrix.rank()


def catalecticant_matrix(F: Form, u: int, action: ActionKind = CONTRACTION) -> ExactMatrix:
    j = F.degree
    if not 0 <= u <= j:
        raise ValueError(f"order {u} outside 0..{j}")
    check_action(action, F.field, j)
    f = F.field
    r = F.nvars
    rows = _monomials(r, j - u)
    cols = _monomials(r, u)
    zero = f.zero
    terms = F._terms
    entries = []
    for c in rows:
        row = []
        for a in cols:
            v = terms.get(tuple(x + y for x, y in zip(a, c)), zero)
            if v and action is DIFFERENTIATION:
                v = f.mul(v, f.coerce(_factor(a, c)))
            row.append(v)
        entries.append(row)
    return ExactMatrix._trusted(entries, len(cols), f)


def catalecticant(F: Form, u: int, action: ActionKind = CONTRACTION) -> Catalecticant:
    return Catalecticant(F, u, catalecticant_matrix(F, u, action), action)


class FormSpace:
    """Span of linearly independent forms sharing degree, ring and field."""

    __slots__ = ("generators",)

    def __init__(self, generators: Sequence[Form]):
        gens = tuple(generators)
        if not gens:
            raise ValueError("a form space needs at least one generator")
        g0 = gens[0]
        for g in gens:
            if not isinstance(g, Form):
                raise TypeError("generators must be Forms")
            if (g.nvars, g.degree, g.field) != (g0.nvars, g0.degree, g0.field):
                raise ValueError("generators must share variables, degree and field")
        if ExactMatrix([g.to_vector() for g in gens], g0.field).rank() < len(gens):
            raise DependentFormsError("generators are linearly dependent")
        self.generators = gens

    def __repr__(self):
        return f"FormSpace([{', '.join(map(str, self.generators))}])"

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, k):
        return self.generators[k]

    @property
    def dim(self) -> int:
        return len(self.generators)

    @property
    def degree(self) -> int:
        return self.generators[0].degree

    @property
    def nvars(self) -> int:
        return self.generators[0].nvars

    @property
    def field(self) -> FieldSpec:
        return self.generators[0].field


def _as_space(W) -> FormSpace:
    if isinstance(W, FormSpace):
        return W
    if isinstance(W, Form):
        return FormSpace([W])
    return FormSpace(W)


def derivative_matrix(W: FormSpace, u: int, action: ActionKind = CONTRACTION) -> ExactMatrix:
    """Columns span ``R_u o W``: the catalecticants of all generators side by side."""
    W = _as_space(W)
    m = catalecticant_matrix(W[0], u, action)
    for g in W.generators[1:]:
        m = m.hstack(catalecticant_matrix(g, u, action))
    return m


def derivative_space(W, u: int, action: ActionKind = CONTRACTION) -> list[Form]:
    """An independent spanning set of ``R_u o W`` inside ``D_{j-u}``."""
    W = _as_space(W)
    m = derivative_matrix(W, u, action)
    return [
        Form.from_vector(m.column(k), W.nvars, W.degree - u, W.field) for k in m.pivot_columns()
    ]


def annihilator_component(W, u: int, action: ActionKind = CONTRACTION) -> list[Operator]:
    """Basis of ``(Ann W)_u = {h in R_u : h o F = 0 for all F in W}``."""
    W = _as_space(W)
    r, f = W.nvars, W.field
    if u > W.degree:
        return [Operator.monomial(e, 1, f) for e in monomial_basis(r, u)]
    m = catalecticant_matrix(W[0], u, action)
    for g in W.generators[1:]:
        m = m.vstack(catalecticant_matrix(g, u, action))
    return [Operator.from_vector(v, r, u, f) for v in m.kernel_basis()]


def _mfact(e) -> int:
    return prod(prod(range(2, a + 1)) for a in e)


def to_divided_powers(F: Form) -> Form:
    """Coordinates of ``F`` in the divided-power basis ``X^[m] = X^m / m!``.

    Contraction on the result has the same ranks as differentiation on ``F``.
    Needs ``char K`` to be 0 or larger than ``deg F``.
    """
    check_action(DIFFERENTIATION, F.field, F.degree)
    f = F.field
    return Form({e: f.mul(c, f.coerce(_mfact(e))) for e, c in F.items()}, F.nvars, F.degree, f)


def from_divided_powers(F: Form) -> Form:
    """Inverse of :func:`to_divided_powers`."""
    check_action(DIFFERENTIATION, F.field, F.degree)
    f = F.field
    return Form({e: f.div(c, f.coerce(_mfact(e))) for e, c in F.items()}, F.nvars, F.degree, f)
