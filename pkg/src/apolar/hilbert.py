"""Hilbert functions of inverse systems and the numeric predicates around them."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, NamedTuple, Sequence

from .apolarity import (
    CONTRACTION,
    ActionKind,
    FormSpace,
    _as_space,
    annihilator_component,
    apply,
    catalecticant_matrix,
    derivative_matrix,
    derivative_space,
)
from .errors import DimensionMismatchError, OverlapMismatchError, ZeroFormError
from .forms import Form, Operator, dim_component, monomial_basis, multiply
from .scalars import ExactMatrix, span_dim, subspace_dims


@dataclass(frozen=True)
class HilbertSeq:
    """A finite sequence ``(h_0, ..., h_j)`` of non-negative integers.

    ``r`` is the number of ambient variables when known; it caps each entry
    by ``dim R_u``.  ``<=`` and ``>=`` compare termwise (a partial order).
    """

    values: tuple
    r: int | None = field(default=None, compare=False)

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if any(v < 0 for v in vals):
            raise ValueError(f"negative entry in {vals}")
        if self.r is not None:
            for u, h in enumerate(vals):
                if h > dim_component(self.r, u):
                    raise ValueError(f"h_{u} = {h} exceeds dim R_{u} = {dim_component(self.r, u)}")

    @property
    def j(self) -> int:
        return len(self.values) - 1

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def __str__(self):
        return " ".join(map(str, self.values))

    def _same_shape(self, other) -> "HilbertSeq":
        other = other if isinstance(other, HilbertSeq) else HilbertSeq(tuple(other))
        if len(other) != len(self):
            raise DimensionMismatchError(f"sequences of lengths {len(self)} and {len(other)}")
        return other

    def __le__(self, other):
        other = self._same_shape(other)
        return all(a <= b for a, b in zip(self, other))

    def __ge__(self, other):
        other = self._same_shape(other)
        return all(a >= b for a, b in zip(self, other))

    def __add__(self, other):
        other = self._same_shape(other)
        return HilbertSeq(tuple(a + b for a, b in zip(self, other)), self.r)

    def __sub__(self, other):
        other = self._same_shape(other)
        return HilbertSeq(tuple(a - b for a, b in zip(self, other)), self.r)

    def reversed(self) -> "HilbertSeq":
        return HilbertSeq(self.values[::-1])

    def to_json(self) -> str:
        return json.dumps(list(self.values))

    @classmethod
    def from_json(cls, text: str, r: int | None = None) -> "HilbertSeq":
        return cls(tuple(json.loads(text)), r)


def termwise_max(seqs: Iterable[HilbertSeq]) -> HilbertSeq:
    seqs = list(seqs)
    return HilbertSeq(tuple(max(col) for col in zip(*seqs)), seqs[0].r)


def hilbert_of_form(F: Form, action: ActionKind = CONTRACTION) -> HilbertSeq:
    """``(H_F)_{j-u} = rank Cat_u(F)``."""
    if F.is_zero():
        raise ZeroFormError("the zero form has no Hilbert function")
    j = F.degree
    vals = [0] * (j + 1)
    for u in range(j + 1):
        vals[j - u] = catalecticant_matrix(F, u, action).rank()
    return HilbertSeq(tuple(vals), F.nvars)


def hilbert_of_space(W, action: ActionKind = CONTRACTION) -> HilbertSeq:
    """``H(A)_{j-u} = dim R_u o W`` for ``A = R / Ann W``."""
    W = _as_space(W)
    j = W.degree
    vals = [0] * (j + 1)
    for u in range(j + 1):
        vals[j - u] = derivative_matrix(W, u, action).rank()
    return HilbertSeq(tuple(vals), W.nvars)


def _vectors(forms: Sequence[Form]) -> list[tuple]:
    return [g.to_vector() for g in forms]


def overlap_dimension(F: Form, G: Form, action: ActionKind = CONTRACTION) -> tuple:
    """``d_i = dim <R_u o F> ∩ <R_u o G>`` for ``i = j - u``.

    Computed both as a direct intersection and as ``(H_F)_i + (H_G)_i - H(A)_i``;
    an :class:`OverlapMismatchError` is raised if the two disagree.
    """
    W = FormSpace([F, G])
    j = W.degree
    hf, hg, ha = hilbert_of_form(F, action), hilbert_of_form(G, action), hilbert_of_space(W, action)
    arithmetic = [hf[i] + hg[i] - ha[i] for i in range(j + 1)]
    direct = [0] * (j + 1)
    for u in range(j + 1):
        dims = subspace_dims(
            _vectors(derivative_space(F, u, action)),
            _vectors(derivative_space(G, u, action)),
            F.field,
        )
        direct[j - u] = dims.dint
    if direct != arithmetic:
        raise OverlapMismatchError(f"intersection gives d={direct}, Hilbert arithmetic gives d={arithmetic}")
    return tuple(direct)


def t_dimension(F: Form, G: Form, action: ActionKind = CONTRACTION) -> tuple:
    """``t_i = dim ((Ann F)_u o G) ∩ ((Ann G)_u o F)`` for ``i = j - u``."""
    W = FormSpace([F, G])
    j = W.degree
    t = [0] * (j + 1)
    for u in range(j + 1):
        left = [apply(h, G, action).to_vector() for h in annihilator_component(F, u, action)]
        right = [apply(h, F, action).to_vector() for h in annihilator_component(G, u, action)]
        if left and right:
            t[j - u] = subspace_dims(left, right, F.field).dint
    return tuple(t)


@dataclass(frozen=True)
class OverlapProfile:
    d: tuple
    t: tuple


def overlap_profile(F: Form, G: Form, action: ActionKind = CONTRACTION) -> OverlapProfile:
    return OverlapProfile(overlap_dimension(F, G, action), t_dimension(F, G, action))


def hplus_sum(h1, h2, r: int | None = None) -> HilbertSeq:
    """``min(dim R_i, h1_i + h2_i)`` termwise."""
    h1 = h1 if isinstance(h1, HilbertSeq) else HilbertSeq(tuple(h1), r)
    h2 = h2 if isinstance(h2, HilbertSeq) else HilbertSeq(tuple(h2), r)
    if len(h1) != len(h2):
        raise DimensionMismatchError(f"sequences of lengths {len(h1)} and {len(h2)}")
    rs = {x for x in (r, h1.r, h2.r) if x is not None}
    if len(rs) != 1:
        raise DimensionMismatchError("need one common variable count r")
    (r,) = rs
    return HilbertSeq(
        tuple(min(dim_component(r, i), a + b) for i, (a, b) in enumerate(zip(h1, h2))), r
    )


def macaulay_representation(a: int, d: int) -> list[tuple[int, int]]:
    """The ``d``-binomial expansion ``a = C(k_d, d) + C(k_{d-1}, d-1) + ...``.

    Returned as ``[(k_d, d), (k_{d-1}, d-1), ...]`` with ``k_d > k_{d-1} > ... >= i``.
    """
    if a < 0 or d < 1:
        raise ValueError("need a >= 0 and d >= 1")
    rep = []
    i = d
    while a > 0 and i > 0:
        k = i
        while comb(k + 1, i) <= a:
            k += 1
        rep.append((k, i))
        a -= comb(k, i)
        i -= 1
    return rep


def macaulay_bound(a: int, d: int) -> int:
    """Largest ``h_{d+1}`` allowed after ``h_d = a``."""
    return sum(comb(k + 1, i + 1) for k, i in macaulay_representation(a, d))


class OSequenceCheck(NamedTuple):
    ok: bool
    index: int | None = None

    def __bool__(self):
        return self.ok


def is_o_sequence(h) -> OSequenceCheck:
    """Macaulay's criterion; ``index`` is the first entry that violates it."""
    vals = list(h)
    if not vals:
        return OSequenceCheck(True)
    for k, v in enumerate(vals):
        if v < 0:
            return OSequenceCheck(False, k)
    if vals[0] != 1:
        return OSequenceCheck(False, 0)
    for d in range(1, len(vals) - 1):
        if vals[d + 1] > macaulay_bound(vals[d], d):
            return OSequenceCheck(False, d + 1)
    return OSequenceCheck(True)


def symmetry_check(h) -> bool:
    vals = list(h)
    return vals == vals[::-1]


def compressed_bound(r: int, j: int, t: int) -> HilbertSeq:
    """``min(dim R_i, t * dim R_{j-i})``: the largest level Hilbert function of type ``t``."""
    if t < 1:
        raise ValueError("type must be at least 1")
    return HilbertSeq(
        tuple(min(dim_component(r, i), t * dim_component(r, j - i)) for i in range(j + 1)), r
    )


def socle_type(W, action: ActionKind = CONTRACTION) -> tuple:
    """Number of new generators of the module ``R o W`` in each degree.

    Entry ``i`` is ``dim M_i - dim R_1 o M_{i+1}``; a level algebra of type ``t``
    gives ``(0, ..., 0, t)``.
    """
    W = _as_space(W)
    r, j, f = W.nvars, W.degree, W.field
    xs = [Operator.variable(k, r, f) for k in range(r)]
    comps = [derivative_space(W, j - i, action) for i in range(j + 1)]
    out = []
    for i in range(j + 1):
        if i == j:
            below = 0
        else:
            images = [apply(x, g, action).to_vector() for g in comps[i + 1] for x in xs]
            below = span_dim(images, f, dim_component(r, i))
        out.append(len(comps[i]) - below)
    return tuple(out)


def colon_component(W, i: int, action: ActionKind = CONTRACTION) -> list[Operator]:
    """Basis of ``I_j : R_{j-i} = {f in R_i : R_{j-i} f ⊂ I_j}`` with ``I_j = (Ann W)_j``."""
    W = _as_space(W)
    r, j, fld = W.nvars, W.degree, W.field
    basis_i = [Operator.monomial(e, 1, fld) for e in monomial_basis(r, i)]
    mults = [Operator.monomial(e, 1, fld) for e in monomial_basis(r, j - i)]
    rows = []
    for m in mults:
        prods = [multiply(m, e) for e in basis_i]
        for F in W:
            rows.append([apply(p, F, action).coefficient((0,) * r) for p in prods])
    kernel = ExactMatrix(rows, fld, cols=len(basis_i)).kernel_basis()
    return [Operator.from_vector(v, r, i, fld) for v in kernel]


def check_level_condition(W, action: ActionKind = CONTRACTION) -> bool:
    """True when every ``I_i`` with ``0 < i <= j`` equals ``I_j : R_{j-i}``."""
    W = _as_space(W)
    for i in range(1, W.degree + 1):
        colon = [h.to_vector() for h in colon_component(W, i, action)]
        ann = [h.to_vector() for h in annihilator_component(W, i, action)]
        if len(colon) != len(ann):
            return False
        if colon and subspace_dims(colon, ann, W.field).dint != len(ann):
            return False
    return True
