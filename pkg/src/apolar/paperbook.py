"""Golden regression cases: worked pencils with their known Hilbert functions.

Every case writes its forms in ordinary power notation, so the
differentiation action is used; cases are skipped when the field's
characteristic does not exceed the socle degree.  Forms described only as
"general" are drawn from a seeded generator and checked against their
required Hilbert function, with a bounded number of redraws.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .apolarity import DIFFERENTIATION, annihilator_component, apply
from .config import RunConfig
from .errors import ApolarError, ConfigError, DependentFormsError
from .forms import Form, parse_form, parse_operator
from .hilbert import (
    HilbertSeq,
    compressed_bound,
    hilbert_of_form,
    hilbert_of_space,
    hplus_sum,
    t_dimension,
)
from .pencil import INFINITY, ghms_check, sweep, theorem2_bound
from .scalars import QQ, FieldSpec

D = DIFFERENTIATION
MAX_DRAWS = 20
COEFF_RANGE = 9


class GenerationError(ApolarError, RuntimeError):
    """No seeded draw produced a form with the required Hilbert function."""


# -- forms ------------------------------------------------------------------

def binary_quartic_pair(fld: FieldSpec = QQ):
    return parse_form("X^4", 2, fld), parse_form("X*Y^3", 2, fld)


def three_partials_pair(fld: FieldSpec = QQ):
    X, Y, Z = (Form.variable(k, 3, fld) for k in range(3))
    return X**4 + Y**4, (X + Y) ** 4 + Z**4


def deficient_partials_pair(fld: FieldSpec = QQ):
    return parse_form("X*Z^3", 3, fld), parse_form("Y*Z^3", 3, fld)


def compressed_pair(fld: FieldSpec = QQ, a=1, b=1):
    F = Form(
        {(3, 1, 0): 1, (2, 0, 2): 1, (1, 0, 3): a, (0, 1, 3): b}, 3, 4, fld
    )
    G = Form(
        {(3, 0, 1): 1, (2, 2, 0): 1, (2, 1, 1): 1, (1, 2, 1): 3 * a, (0, 3, 1): b}, 3, 4, fld
    )
    return F, G


def _rand_coeff(rng: random.Random, nonzero: bool = False) -> int:
    while True:
        c = rng.randint(-COEFF_RANGE, COEFF_RANGE)
        if c or not nonzero:
            return c


def random_linear_form(rng: random.Random, r: int, fld: FieldSpec) -> Form:
    while True:
        L = Form.linear([_rand_coeff(rng, nonzero=True) for _ in range(r)], fld)
        if L:
            return L


def random_binary_form(rng: random.Random, first: Form, second: Form, degree: int) -> Form:
    """Dense random form of ``degree`` in the two linear forms ``first`` and ``second``."""
    fld = first.field
    total = Form.zero(first.nvars, degree, fld)
    for k in range(degree + 1):
        c = _rand_coeff(rng)
        if c:
            total = total + (first**k * second ** (degree - k)).scale(c)
    return total


def _draw(name: str, seed: int, build: Callable, accept: Callable):
    rng = random.Random(f"{name}:{seed}")
    for _ in range(MAX_DRAWS):
        out = build(rng)
        if accept(out):
            return out
    raise GenerationError(f"no acceptable draw for {name} after {MAX_DRAWS} attempts (seed {seed})")


def no_minimum_pair(fld: FieldSpec = QQ, seed: int = 0):
    """``F`` a sum of five general eighth powers, ``G = X^8 + Y^4 Z^4``.

    A draw is accepted when ``H_F`` is right and the derivatives of ``F`` meet
    those of ``G`` as little as possible, i.e. ``H(A) = H_F +_h H_G``.
    """
    want = (1, 3, 5, 5, 5, 5, 5, 3, 1)
    G = parse_form("X^8 + Y^4*Z^4", 3, fld)
    H_G = hilbert_of_form(G, D)

    def accept(F):
        if not F:
            return False
        H_F = hilbert_of_form(F, D)
        return tuple(H_F) == want and hilbert_of_space([F, G], D) == hplus_sum(H_F, H_G)

    def build(rng):
        Ls = [random_linear_form(rng, 3, fld) for _ in range(5)]
        F = Ls[0] ** 8
        for L in Ls[1:]:
            F = F + L**8
        return F

    return _draw("no-minimum", seed, build, accept), G


def power_pencil_pair(fld: FieldSpec = QQ, seed: int = 0):
    """``F = Z*P(X,Y) + Q(X,Y)`` with ``P, Q`` general binary forms, ``G = L^6``.

    ``L`` is accepted when its powers avoid the derivatives of ``F``.
    """
    X, Y, Z = (Form.variable(k, 3, fld) for k in range(3))
    want = (1, 3, 5, 7, 5, 3, 1)

    def build(rng):
        F = Z * random_binary_form(rng, X, Y, 5) + random_binary_form(rng, X, Y, 6)
        return F, random_linear_form(rng, 3, fld) ** 6

    def accept(pair):
        F, G = pair
        if not F or tuple(hilbert_of_form(F, D)) != want:
            return False
        try:
            H_A = hilbert_of_space([F, G], D)
        except DependentFormsError:
            return False
        return H_A == hplus_sum(hilbert_of_form(F, D), hilbert_of_form(G, D))

    return _draw("power-pencil", seed, build, accept)


def binary_pencil_pair(fld: FieldSpec = QQ, seed: int = 0):
    """``F`` a general binary sextic in ``X, Y``; ``G`` a general sextic in ``X+Y, Z``."""
    X, Y, Z = (Form.variable(k, 3, fld) for k in range(3))
    want = (1, 2, 3, 4, 3, 2, 1)

    def build(rng):
        return random_binary_form(rng, X, Y, 6), random_binary_form(rng, X + Y, Z, 6)

    def accept(pair):
        return all(g and tuple(hilbert_of_form(g, D)) == want for g in pair)

    return _draw("binary-pencil", seed, build, accept)


# -- cases ------------------------------------------------------------------

@dataclass
class Check:
    label: str
    ok: bool
    detail: str = ""


@dataclass
class CaseResult:
    key: str
    title: str
    status: str
    checks: list = field(default_factory=list)
    note: str = ""

    @property
    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.ok), None)


def _eq(label, got, want) -> Check:
    got_t = tuple(got) if not isinstance(got, (int, bool, str)) else got
    want_t = tuple(want) if not isinstance(want, (int, bool, str)) else want
    return Check(label, got_t == want_t, f"got {_fmt(got)}, expected {_fmt(want)}")


def _fmt(x) -> str:
    if isinstance(x, (HilbertSeq, tuple, list)):
        return "(" + ",".join(map(str, x)) + ")"
    return str(x)


def _sweep(F, G, config: RunConfig):
    return sweep(F, G, samples=config.samples, seed=config.seed, exhaustive=config.exhaustive, action=D)


def _lams(rep, predicate) -> list:
    return [p.lam for p in rep.points if predicate(p)]


def case_binary_quartic(config: RunConfig) -> list[Check]:
    F, G = binary_quartic_pair(config.field)
    rep = _sweep(F, G, config)
    ann3 = annihilator_component([F, G], 3, D)
    x2y = parse_operator("x^2*y", 2, config.field)
    return [
        _eq("H_F", rep.H_F, (1, 1, 1, 1, 1)),
        _eq("H_G", rep.H_G, (1, 2, 2, 2, 1)),
        _eq("H(A)", rep.H_A, (1, 2, 3, 3, 2)),
        _eq("H_gen", rep.H_gen, (1, 2, 3, 2, 1)),
        Check("special fibers are 0 and inf", rep.special_lambdas == [0, INFINITY],
              f"got {[str(x) for x in rep.special_lambdas]}"),
        Check("(Ann W)_3 = <x^2*y>", len(ann3) == 1 and ann3[0].monic() == x2y,
              f"got {[str(h) for h in ann3]}"),
        Check("all verdicts pass", rep.passed),
    ]


def case_three_partials(config: RunConfig) -> list[Check]:
    F, G = three_partials_pair(config.field)
    rep = _sweep(F, G, config)
    deficient = _lams(rep, lambda p: p.lam is not INFINITY and p.H[3] < 3)
    cor = rep.verdicts["corollary_partials"]
    return [
        _eq("joint first partials", rep.H_A[3], 4),
        _eq("generic first partials", rep.H_gen[3], 3),
        Check("corollary applies and holds", cor["status"] == "pass", cor["status"]),
        Check("only finite deficient fiber is 0", deficient == [0], f"got {[str(x) for x in deficient]}"),
        Check("all verdicts pass", rep.passed),
    ]


def case_deficient_partials(config: RunConfig) -> list[Check]:
    F, G = deficient_partials_pair(config.field)
    rep = _sweep(F, G, config)
    t = t_dimension(F, G, D)
    cor = rep.verdicts["corollary_partials"]
    return [
        _eq("joint first partials", rep.H_A[3], 3),
        Check("every fiber has 2 first partials", all(p.H[3] == 2 for p in rep.points),
              f"got {[p.H[3] for p in rep.points]}"),
        _eq("t_3", t[3], 1),
        _eq("upper bound H(A)_1 - t_3", rep.H_A[1] - t[3], 2),
        Check("corollary hypotheses not met", cor["status"] == "hypotheses not met", cor["status"]),
        Check("all verdicts pass", rep.passed),
    ]


def case_no_minimum(config: RunConfig) -> list[Check]:
    F, G = no_minimum_pair(config.field, config.seed)
    rep = _sweep(F, G, config)
    incomparable = not (rep.H_F <= rep.H_G) and not (rep.H_G <= rep.H_F)
    return [
        _eq("H_F", rep.H_F, (1, 3, 5, 5, 5, 5, 5, 3, 1)),
        _eq("H_G", rep.H_G, (1, 3, 4, 5, 6, 5, 4, 3, 1)),
        _eq("H(A)", rep.H_A, (1, 3, 6, 10, 11, 10, 9, 6, 2)),
        _eq("H(A) = H_F +_h H_G", rep.H_A, hplus_sum(rep.H_F, rep.H_G)),
        _eq("H_gen", rep.H_gen, (1, 3, 6, 10, 11, 10, 6, 3, 1)),
        Check("special fibers are 0 and inf", rep.special_lambdas == [0, INFINITY],
              f"got {[str(x) for x in rep.special_lambdas]}"),
        Check("H_F and H_G incomparable", incomparable),
        Check("all verdicts pass", rep.passed),
    ]


def case_level_rejection(config: RunConfig) -> list[Check]:
    out = []
    for cand, idx in (((1, 3, 6, 8, 4, 2), 3), ((1, 3, 6, 10, 12, 7, 4, 2), 4)):
        res = ghms_check(cand, 3)
        out.append(Check(f"{_fmt(cand)} rejected at degree {idx}",
                         res.applicable and not res.ok and res.index == idx,
                         f"applicable={res.applicable} ok={res.ok} index={res.index} bound={_fmt(res.bound or ())}"))
    bound = hplus_sum(compressed_bound(3, 5, 1), (1,) * 6, 3)
    out.append(_eq("compressed +_h ones, j=5", bound, (1, 3, 6, 7, 4, 2)))
    return out


def case_power_pencil(config: RunConfig) -> list[Check]:
    F, G = power_pencil_pair(config.field, config.seed)
    rep = _sweep(F, G, config)
    return [
        _eq("H_F", rep.H_F, (1, 3, 5, 7, 5, 3, 1)),
        _eq("H_G", rep.H_G, (1,) * 7),
        _eq("H(A)", rep.H_A, (1, 3, 6, 8, 6, 4, 2)),
        _eq("H_gen", rep.H_gen, (1, 3, 6, 8, 6, 3, 1)),
        Check("fiber at inf has H = (1,...,1)", rep.fiber(INFINITY).H == HilbertSeq((1,) * 7, 3)),
        Check("all verdicts pass", rep.passed),
    ]


def case_binary_pencil(config: RunConfig) -> list[Check]:
    F, G = binary_pencil_pair(config.field, config.seed)
    rep = _sweep(F, G, config)
    ones = HilbertSeq((1,) * 7, 3)
    return [
        _eq("H_F", rep.H_F, (1, 2, 3, 4, 3, 2, 1)),
        _eq("H_G", rep.H_G, (1, 2, 3, 4, 3, 2, 1)),
        _eq("H(A)", rep.H_A, (1, 3, 6, 8, 6, 4, 2)),
        _eq("H_gen", rep.H_gen, (1, 3, 6, 8, 6, 3, 1)),
        Check("no fiber has H = (1,...,1)", all(p.H != ones for p in rep.points)),
        Check("all verdicts pass", rep.passed),
    ]


def case_compressed(config: RunConfig) -> list[Check]:
    fld = config.field
    F, G = compressed_pair(fld)
    rep = _sweep(F, G, config)
    lams = [p.lam for p in rep.points if p.lam is not INFINITY and p.lam != 0][:3]
    members_ok = []
    for lam in lams:
        h = parse_operator("y^2", 3, fld) - parse_operator("z^2", 3, fld).scale(lam)
        members_ok.append(apply(h, F + G.scale(lam), D).is_zero())
    bound = theorem2_bound(rep.H_A)[(2, 2)]
    return [
        _eq("H(A)", rep.H_A, (1, 3, 6, 6, 2)),
        _eq("H(A) compressed", rep.H_A, compressed_bound(3, 4, 2)),
        _eq("H_gen", rep.H_gen, (1, 3, 5, 3, 1)),
        Check("H_gen not compressed", rep.H_gen != compressed_bound(3, 4, 1)),
        Check("(y^2 - λz^2) kills F + λG", len(lams) == 3 and all(members_ok),
              f"λ = {[str(x) for x in lams]}"),
        _eq("lower bound at u=i=2", bound, 4),
        Check("bound below H_gen_2", bound <= rep.H_gen[2]),
        Check("all verdicts pass", rep.passed),
    ]


@dataclass(frozen=True)
class Case:
    key: str
    title: str
    run: Callable
    degree: int | None  # socle degree, for the characteristic guard; None if no forms


CASES = (
    Case("binary-quartic", "X^4, XY^3: level (1,2,3,3,2), generic (1,2,3,2,1)", case_binary_quartic, 4),
    Case("three-partials", "X^4+Y^4, (X+Y)^4+Z^4: generic fiber has 3 first partials", case_three_partials, 4),
    Case("deficient-partials", "XZ^3, YZ^3: every fiber has 2 first partials", case_deficient_partials, 4),
    Case("no-minimum", "sum of five L^8 and X^8+Y^4Z^4: no minimum fiber", case_no_minimum, 8),
    Case("level-rejection", "(1,3,..,8,4,2) and (1,3,..,12,7,4,2) are not type-two level", case_level_rejection, None),
    Case("power-pencil", "H_F=(1,3,5,7,5,3,1), G=L^6", case_power_pencil, 6),
    Case("binary-pencil", "two general binary sextics in different planes", case_binary_pencil, 6),
    Case("compressed", "compressed type two, generic quotient (1,3,5,3,1)", case_compressed, 4),
)


def run_case(case: Case, config: RunConfig) -> CaseResult:
    if case.degree is not None:
        try:
            config.check_pencil()
        except ConfigError as exc:
            return CaseResult(case.key, case.title, "config-error", note=str(exc))
        p = config.field.characteristic()
        if p and p <= case.degree:
            return CaseResult(case.key, case.title, "skip",
                              note=f"needs differentiation in characteristic > {case.degree}")
    try:
        checks = case.run(config)
    except GenerationError as exc:
        return CaseResult(case.key, case.title, "fail", note=str(exc))
    status = "pass" if all(c.ok for c in checks) else "fail"
    return CaseResult(case.key, case.title, status, checks)


def run_paperbook(config: RunConfig | None = None, keys=None) -> list[CaseResult]:
    config = config or RunConfig()
    return [run_case(c, config) for c in CASES if keys is None or c.key in keys]
