"""Pencils ``F + λG``: sweeps over λ, the generic Hilbert function, and verifiers.

The generic Hilbert function is the termwise maximum over the computed
fibers.  Over a small prime field every point of P^1 can be visited; over Q
a seeded sample of small integers is used together with λ = 0 and λ = ∞.
"""
from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import NamedTuple

from .apolarity import CONTRACTION, ActionKind, FormSpace, _as_space, catalecticant_matrix
from .errors import ConfigError, DependentFormsError, InsufficientFieldError
from .forms import Form, dim_component
from .hilbert import (
    HilbertSeq,
    compressed_bound,
    hilbert_of_space,
    hplus_sum,
    is_o_sequence,
    overlap_dimension,
    symmetry_check,
    t_dimension,
    termwise_max,
)
from .scalars import FieldSpec

log = logging.getLogger(__name__)

DEFAULT_SAMPLES = 8
EXHAUSTIVE_LIMIT = 257
LAMBDA_RANGE = 10**4


class _Infinity:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


def lambda_key(lam):
    return (1, 0) if lam is INFINITY else (0, lam)


def format_lambda(lam) -> str:
    return str(lam)


def parse_lambda(text: str, fld: FieldSpec):
    if text.strip().lower() in ("inf", "infinity", "∞"):
        return INFINITY
    return fld.coerce(text)


def pencil_member(F: Form, G: Form, lam) -> Form:
    """``F + λG``, with ``G`` itself at λ = ∞."""
    if lam is INFINITY:
        return G
    return F + G.scale(lam)


@dataclass(frozen=True)
class PencilPoint:
    lam: object
    H: HilbertSeq
    member: Form | None = field(default=None, compare=False, repr=False)


def sample_lambdas(fld: FieldSpec, samples: int, seed: int, exhaustive: bool) -> list:
    """λ values to visit, always including 0 and ∞, sorted with ∞ last."""
    if exhaustive:
        if not fld.is_finite:
            raise ConfigError("an exhaustive sweep needs a finite field")
        lams = list(fld.elements())
    else:
        rng = random.Random(seed)
        if fld.is_finite:
            if samples + 2 > fld.p + 1:
                raise InsufficientFieldError(
                    f"{samples} samples plus 0 and ∞ do not fit in P^1 over GF({fld.p})"
                )
            lams = [0] + rng.sample(range(1, fld.p), samples)
        else:
            # nonzero integers in [-LAMBDA_RANGE, LAMBDA_RANGE]
            picks = rng.sample(range(2 * LAMBDA_RANGE), samples)
            lams = [Fraction(0)] + [
                Fraction(v - LAMBDA_RANGE if v < LAMBDA_RANGE else v - LAMBDA_RANGE + 1) for v in picks
            ]
    lams = sorted((fld.coerce(x) for x in lams), key=lambda_key)
    return lams + [INFINITY]


class Theorem1Verdict(NamedTuple):
    holds: bool
    lower_margins: dict
    upper_margins: dict

    def as_dict(self):
        return {
            "holds": self.holds,
            "lower_margins": {f"{u},{i}": m for (u, i), m in self.lower_margins.items()},
            "upper_margins": {f"{u},{i}": m for (u, i), m in self.upper_margins.items()},
        }


class CorollaryVerdict(NamedTuple):
    hypotheses_met: bool
    first_partials: int
    variables_involved: int
    generic_count: int
    r: int

    @property
    def holds(self) -> bool | None:
        return self.generic_count == self.r if self.hypotheses_met else None

    @property
    def status(self) -> str:
        if not self.hypotheses_met:
            return "hypotheses not met"
        return "pass" if self.holds else "fail"

    def as_dict(self):
        return {
            "status": self.status,
            "first_partials": self.first_partials,
            "variables_involved": self.variables_involved,
            "generic_count": self.generic_count,
            "r": self.r,
        }


@dataclass(frozen=True)
class PencilReport:
    H_F: HilbertSeq
    H_G: HilbertSeq
    H_A: HilbertSeq
    d: tuple
    t: tuple
    H_gen: HilbertSeq
    points: tuple
    verdicts: dict
    sampling: dict

    @property
    def j(self) -> int:
        return self.H_A.j

    @property
    def special_fibers(self) -> tuple:
        return tuple(p for p in self.points if p.H != self.H_gen)

    @property
    def special_lambdas(self) -> list:
        return [p.lam for p in self.special_fibers]

    def fiber(self, lam) -> PencilPoint:
        for p in self.points:
            if p.lam is lam or (lam is not INFINITY and p.lam is not INFINITY and p.lam == lam):
                return p
        raise KeyError(lam)

    @property
    def passed(self) -> bool:
        return all(v.get("status") != "fail" for v in self.verdicts.values())

    def to_dict(self) -> dict:
        return {
            "H_F": list(self.H_F),
            "H_G": list(self.H_G),
            "H_A": list(self.H_A),
            "d": list(self.d),
            "t": list(self.t),
            "H_gen": list(self.H_gen),
            "special_lambdas": [
                {"lambda": format_lambda(p.lam), "H": list(p.H)} for p in self.special_fibers
            ],
            "verdicts": self.verdicts,
            "sampling": self.sampling,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> "PencilReport":
        sampling = data["sampling"]
        fld = FieldSpec.parse(sampling["field"])
        r = sampling["r"]
        H_gen = HilbertSeq(tuple(data["H_gen"]), r)
        special = {s["lambda"]: HilbertSeq(tuple(s["H"]), r) for s in data["special_lambdas"]}
        points = tuple(
            PencilPoint(parse_lambda(text, fld), special.get(text, H_gen)) for text in sampling["lambdas"]
        )
        return cls(
            HilbertSeq(tuple(data["H_F"]), r),
            HilbertSeq(tuple(data["H_G"]), r),
            HilbertSeq(tuple(data["H_A"]), r),
            tuple(data["d"]),
            tuple(data["t"]),
            H_gen,
            points,
            data["verdicts"],
            sampling,
        )

    @classmethod
    def from_json(cls, text: str) -> "PencilReport":
        return cls.from_dict(json.loads(text))


def _check_pair(F: Form, G: Form) -> FormSpace:
    try:
        return FormSpace([F, G])
    except DependentFormsError:
        raise DependentFormsError("F and G must be linearly independent") from None


def fiber_hilbert(F: Form, G: Form, lams, action: ActionKind = CONTRACTION) -> list[HilbertSeq]:
    """Hilbert functions of ``F + λG`` for each λ, from the linear family of catalecticants."""
    j = F.degree
    cats = [(catalecticant_matrix(F, u, action), catalecticant_matrix(G, u, action)) for u in range(j + 1)]
    out = []
    for lam in lams:
        vals = [0] * (j + 1)
        for u, (cf, cg) in enumerate(cats):
            m = cg if lam is INFINITY else (cf + cg.scale(lam) if lam else cf)
            vals[j - u] = m.rank()
        out.append(HilbertSeq(tuple(vals), F.nvars))
    return out


def sweep(
    F: Form,
    G: Form,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    exhaustive: bool | None = None,
    action: ActionKind = CONTRACTION,
) -> PencilReport:
    """Analyse the pencil ``F + λG`` and run every verifier on it."""
    W = _check_pair(F, G)
    fld = F.field
    if exhaustive is None:
        exhaustive = fld.is_finite and fld.p <= EXHAUSTIVE_LIMIT
    lams = sample_lambdas(fld, samples, seed, exhaustive)
    hs = fiber_hilbert(F, G, lams, action)
    points = tuple(PencilPoint(lam, h, pencil_member(F, G, lam)) for lam, h in zip(lams, hs))
    H_F = next(p.H for p in points if p.lam is not INFINITY and p.lam == 0)
    H_G = points[-1].H
    H_A = hilbert_of_space(W, action)
    d = overlap_dimension(F, G, action)
    t = t_dimension(F, G, action)
    H_gen = termwise_max(hs)

    r, j = F.nvars, F.degree
    certified = bool(exhaustive) and fld.p + 1 > sum(compressed_bound(r, j, 1))
    if exhaustive and not certified:
        log.info("GF(%d) may be too small for the generic Hilbert function to be attained", fld.p)
    sampling = {
        "field": str(fld),
        "action": action.value,
        "r": r,
        "seed": seed,
        "samples": samples,
        "exhaustive": bool(exhaustive),
        "sampled_only": not exhaustive,
        "generic_certified": certified,
        "lambdas": [format_lambda(lam) for lam in lams],
    }
    report = PencilReport(H_F, H_G, H_A, d, t, H_gen, points, {}, sampling)
    report.verdicts.update(_evaluate(F, G, report))
    return report


def verify_theorem1(F: Form, G: Form, report: PencilReport) -> Theorem1Verdict:
    """Check ``H(A)_u - d_i <= H_gen_i`` and ``H_λ_i <= H(A)_u - t_i`` for ``0 < u < j``.

    The upper bound is checked at every computed λ other than 0 and ∞.
    """
    H_A, d, t, H_gen, j = report.H_A, report.d, report.t, report.H_gen, report.j
    inner = [p for p in report.points if p.lam is not INFINITY and p.lam != 0]
    lower, upper = {}, {}
    for u in range(1, j):
        i = j - u
        lower[(u, i)] = H_gen[i] - (H_A[u] - d[i])
        if inner:
            upper[(u, i)] = min(H_A[u] - t[i] - p.H[i] for p in inner)
    holds = all(m >= 0 for m in lower.values()) and all(m >= 0 for m in upper.values())
    return Theorem1Verdict(holds, lower, upper)


def theorem2_bound(H_A) -> dict:
    """Lower bounds for ``H_gen_i`` that depend on ``H(A)`` alone, keyed by ``(u, i)``.

    For ``0 < u <= i = j - u``: with ``δ' = (2 H(A)_u - 2 - H(A)_i) / 3`` the
    bound is ``H(A)_u - ceil(δ')`` when ``δ' >= 0`` and ``H(A)_u`` otherwise.
    """
    h = list(H_A)
    j = len(h) - 1
    out = {}
    for u in range(1, j // 2 + 1):
        i = j - u
        delta = Fraction(2 * h[u] - 2 - h[i], 3)
        out[(u, i)] = h[u] - ceil(delta) if delta >= 0 else h[u]
    return out


def verify_corollary_partials(F: Form, G: Form, report: PencilReport | None = None, **sweep_kwargs) -> CorollaryVerdict:
    """Generic number of first partials when ``F, G`` have ``>= 2r-2`` of them and use all variables."""
    if report is None:
        report = sweep(F, G, **sweep_kwargs)
    r, j = F.nvars, F.degree
    partials = report.H_A[j - 1]
    involved = report.H_A[1]
    met = partials >= 2 * r - 2 and involved == r
    return CorollaryVerdict(met, partials, involved, report.H_gen[j - 1], r)


class GHMSDecomposition(NamedTuple):
    H_B: HilbertSeq
    H_C: HilbertSeq
    o_seq_ok: bool


def ghms_decomposition(W, v_index: int, action: ActionKind = CONTRACTION) -> GHMSDecomposition:
    """Split ``H(A) = H(B_V) + H(C)`` for the line ``V`` spanned by generator ``v_index``.

    ``o_seq_ok`` reports whether the reversed ``H(C)`` is an O-sequence.
    """
    W = _as_space(W)
    if W.dim != 2:
        raise ValueError("the decomposition needs a two-dimensional space of forms")
    H_A = hilbert_of_space(W, action)
    H_B = hilbert_of_space(FormSpace([W[v_index]]), action)
    diff = [a - b for a, b in zip(H_A, H_B)]
    if any(x < 0 for x in diff):
        raise ArithmeticError(f"negative entry in H(A) - H(B) = {diff}")
    H_C = HilbertSeq(tuple(diff), W.nvars)
    return GHMSDecomposition(H_B, H_C, bool(is_o_sequence(H_C.values[1:][::-1])))


def ghms_upper_bound(r: int, j: int, c: int) -> HilbertSeq:
    """Upper bound on a type-two ``H(A)`` whose generic Gorenstein quotient has ``r`` first partials.

    ``c = H(A)_{j-1} - r``.  The reversed ``H(C)`` starts ``(1, c, ...)`` and is an
    O-sequence, so it is at most the Hilbert function of a polynomial ring in
    ``c`` variables; the Gorenstein part is at most the compressed sequence.
    """
    tail = HilbertSeq(tuple(dim_component(c, j - i) for i in range(j + 1)))
    return hplus_sum(compressed_bound(r, j, 1), tail, r)


class GHMSCheck(NamedTuple):
    applicable: bool
    ok: bool
    index: int | None
    bound: HilbertSeq | None


def ghms_check(H, r: int) -> GHMSCheck:
    """Necessary condition on a candidate type-two Hilbert function ``H``.

    Applies when ``H_1 = r``, ``H_j = 2`` and ``H_{j-1} >= 2r - 2``; ``index`` is
    the first degree where ``H`` exceeds :func:`ghms_upper_bound`.
    """
    h = list(H)
    j = len(h) - 1
    if j < 2 or h[1] != r or h[j] != 2 or h[j - 1] < 2 * r - 2:
        return GHMSCheck(False, True, None, None)
    bound = ghms_upper_bound(r, j, h[j - 1] - r)
    for i, (a, b) in enumerate(zip(h, bound)):
        if a > b:
            return GHMSCheck(True, False, i, bound)
    return GHMSCheck(True, True, None, bound)


def _status(ok) -> str:
    return "pass" if ok else "fail"


def _evaluate(F: Form, G: Form, report: PencilReport) -> dict:
    H_A, H_gen, d, t, j = report.H_A, report.H_gen, report.d, report.t, report.j
    out = {}

    th1 = verify_theorem1(F, G, report)
    out["theorem1"] = {"status": _status(th1.holds), **th1.as_dict()}

    bounds = theorem2_bound(H_A)
    th2_ok = all(b <= H_gen[i] and b <= H_gen[u] for (u, i), b in bounds.items())
    out["theorem2"] = {
        "status": _status(th2_ok),
        "bounds": {f"{u},{i}": b for (u, i), b in bounds.items()},
    }

    out["corollary_partials"] = verify_corollary_partials(F, G, report).as_dict()

    exact_ok = all(H_A[i] + d[i] == report.H_F[i] + report.H_G[i] for i in range(j + 1))
    out["exact_sequence"] = {"status": _status(exact_ok)}
    out["t_le_d"] = {"status": _status(all(a <= b for a, b in zip(t, d)))}
    out["symmetric_fibers"] = {"status": _status(all(symmetry_check(p.H) for p in report.points))}
    o_ok = all(is_o_sequence(h) for h in [H_A, H_gen] + [p.H for p in report.points])
    out["o_sequence"] = {"status": _status(o_ok)}

    below = [i for i in range(j + 1) if sum(2 * p.H[i] < H_A[i] for p in report.points) >= 2]
    out["no_two_below_half"] = {"status": _status(not below), "degrees": below}

    inner_special = [
        p for p in report.special_fibers if p.lam is not INFINITY and p.lam != 0
    ]
    semi_ok = all(p.H <= H_gen for p in report.points)
    if not report.sampling["exhaustive"] and len(inner_special) > 2:
        log.warning(
            "%d sampled fibers miss the generic Hilbert function; consider more samples",
            len(inner_special),
        )
    out["semicontinuity"] = {"status": _status(semi_ok), "non_generic_samples": len(inner_special)}
    return out
