"""Acceptance gate: one check per criterion, each with its own time budget.

Run with ``pytest tests/test_acceptance.py`` (a PASS/FAIL line per criterion is
printed in the terminal summary) or directly with ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import itertools
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest
import sympy

sys.path.insert(0, str(Path(__file__).parent))

from apolar.apolarity import (  # noqa: E402
    CONTRACTION,
    DIFFERENTIATION,
    annihilator_component,
    apply,
    catalecticant_matrix,
    derivative_space,
    to_divided_powers,
)
from apolar.errors import DependentFormsError  # noqa: E402
from apolar.forms import Form, monomial_basis, parse_operator  # noqa: E402
from apolar.hilbert import (  # noqa: E402
    HilbertSeq,
    compressed_bound,
    hilbert_of_form,
    hplus_sum,
    is_o_sequence,
    symmetry_check,
)
from apolar.paperbook import (  # noqa: E402
    binary_pencil_pair,
    binary_quartic_pair,
    compressed_pair,
    deficient_partials_pair,
    no_minimum_pair,
    power_pencil_pair,
    three_partials_pair,
)
from apolar.pencil import INFINITY, ghms_check, sweep, theorem2_bound  # noqa: E402
from apolar.scalars import QQ, ExactMatrix, FieldSpec, subspace_dims  # noqa: E402

from oracles import naive_rank, random_matrix  # noqa: E402

D = DIFFERENTIATION
GF101 = FieldSpec.prime(101)
RESULTS: dict[int, tuple[bool, float, float, str]] = {}


def _fmt(h) -> str:
    return "(" + ",".join(map(str, h)) + ")"


def record(number: int, limit: float, body) -> tuple[bool, str]:
    start = time.perf_counter()
    ok, detail = body()
    elapsed = time.perf_counter() - start
    if elapsed >= limit:
        ok, detail = False, f"{detail}; over time budget"
    RESULTS[number] = (ok, elapsed, limit, detail)
    return ok, detail


class Checks:
    """Accumulates named equalities and keeps the first mismatch."""

    def __init__(self):
        self.failures = []
        self.count = 0

    def eq(self, label, got, want):
        self.expect(label, tuple(got) == tuple(want) if not isinstance(want, int) else got == want,
                    f"{label}: got {got if isinstance(got, int) else _fmt(got)}, "
                    f"expected {want if isinstance(want, int) else _fmt(want)}")

    def expect(self, label, ok, why=None):
        self.count += 1
        if not ok:
            self.failures.append(why or label)

    def result(self) -> tuple[bool, str]:
        if self.failures:
            return False, "; ".join(self.failures)
        return True, f"{self.count} checks"


# -- exact special-fiber oracle ----------------------------------------------

def _sym(x):
    return sympy.Rational(x.numerator, x.denominator)


def finite_special_lambdas(F: Form, G: Form, action=D) -> set:
    """Every finite λ (over an algebraic closure) where some rank of F + λG drops.

    For each order u the catalecticant of the pencil is a matrix over Q[λ];
    its rank drops exactly at the common roots of its maximal nonvanishing minors.
    """
    lam = sympy.Symbol("lam")
    roots = set()
    for u in range(F.degree + 1):
        A = catalecticant_matrix(F, u, action)
        B = catalecticant_matrix(G, u, action)
        M = sympy.Matrix(A.rows, A.cols, lambda i, k: _sym(A.entries[i][k]) + lam * _sym(B.entries[i][k]))
        k = M.rank()
        if k == 0:
            continue
        g = sympy.Integer(0)
        for rows in itertools.combinations(range(M.rows), k):
            for cols in itertools.combinations(range(M.cols), k):
                g = sympy.gcd(g, M.extract(list(rows), list(cols)).det())
                if g.is_number:
                    break
            if g.is_number:
                break
        if not g.is_number:
            roots |= set(sympy.roots(sympy.Poly(g, lam)).keys())
    return roots


# -- criteria -----------------------------------------------------------------

def criterion_1():
    c = Checks()
    F, G = binary_quartic_pair()
    rep = sweep(F, G, action=D)
    c.eq("H_F", rep.H_F, (1, 1, 1, 1, 1))
    c.eq("H_G", rep.H_G, (1, 2, 2, 2, 1))
    c.eq("H(A)", rep.H_A, (1, 2, 3, 3, 2))
    c.eq("H_gen", rep.H_gen, (1, 2, 3, 2, 1))
    c.expect("sampled special fibers", rep.special_lambdas == [0, INFINITY],
             f"sampled special fibers {rep.special_lambdas}")
    exact = finite_special_lambdas(F, G)
    c.expect("exact special fibers", exact == {0}, f"finite special λ {exact}")
    c.expect("λ = inf special", hilbert_of_form(G, D) != rep.H_gen)
    ann3 = annihilator_component([F, G], 3, D)
    c.expect("(Ann W)_3", len(ann3) == 1 and ann3[0].monic() == parse_operator("x^2*y", 2),
             f"(Ann W)_3 = {[str(h) for h in ann3]}")
    return c.result()


def criterion_2():
    c = Checks()
    F, G = three_partials_pair()
    rep = sweep(F, G, action=D)
    c.eq("generic first partials", rep.H_gen[3], 3)
    deficient = [p.lam for p in rep.points if p.lam is not INFINITY and p.H[3] < 3]
    c.expect("sampled deficient", deficient == [0], f"deficient sampled λ {deficient}")
    # exact: first partials are rank Cat_1; its rank drops only at λ = 0
    lam = sympy.Symbol("lam")
    A, B = catalecticant_matrix(F, 1, D), catalecticant_matrix(G, 1, D)
    M = sympy.Matrix(A.rows, A.cols, lambda i, k: _sym(A.entries[i][k]) + lam * _sym(B.entries[i][k]))
    g = sympy.Integer(0)
    for rows in itertools.combinations(range(M.rows), 3):
        g = sympy.gcd(g, M.extract(list(rows), [0, 1, 2]).det())
    c.expect("exact deficient", set(sympy.roots(sympy.Poly(g, lam))) == {0}, f"gcd of minors {g}")
    # G = (X+Y)^4 + Z^4 has partials (X+Y)^3 and Z^3 only
    c.eq("first partials at inf", hilbert_of_form(G, D)[3], 2)

    F, G = deficient_partials_pair()
    rep = sweep(F, G, action=D)
    c.expect("every fiber 2 partials", all(p.H[3] == 2 for p in rep.points),
             f"first partials {[p.H[3] for p in rep.points]}")
    # F + λG = (X + λY) Z^3 for every λ, so the count is 2 on the whole line
    X, Y, Z = (Form.variable(k, 3) for k in range(3))
    lam_vals = [Fraction(v) for v in (-3, 1, 7)]
    c.expect("closed form", all(F + G.scale(v) == (X + Y.scale(v)) * Z**3 for v in lam_vals))
    c.eq("t_3", rep.t[3], 1)
    return c.result()


def criterion_3():
    c = Checks()
    F, G = no_minimum_pair(QQ, seed=0)
    c.eq("validated H_F", hilbert_of_form(F, D), (1, 3, 5, 5, 5, 5, 5, 3, 1))
    rep = sweep(F, G, action=D)
    c.eq("H(A)", rep.H_A, (1, 3, 6, 10, 11, 10, 9, 6, 2))
    c.eq("H_gen", rep.H_gen, (1, 3, 6, 10, 11, 10, 6, 3, 1))
    c.expect("incomparable", not (rep.H_F <= rep.H_G) and not (rep.H_G <= rep.H_F))
    minima = [p.lam for p in rep.points if all(p.H <= q.H for q in rep.points)]
    c.expect("no minimum fiber", not minima, f"termwise-minimum fibers at {minima}")
    return c.result()


def criterion_4():
    c = Checks()
    F, G = compressed_pair(QQ, 1, 1)
    rep = sweep(F, G, action=D)
    c.eq("H(A)", rep.H_A, (1, 3, 6, 6, 2))
    c.eq("H(A) compressed", rep.H_A, compressed_bound(3, 4, 2))
    c.eq("H_gen", rep.H_gen, (1, 3, 5, 3, 1))
    c.expect("H_gen not compressed", rep.H_gen != compressed_bound(3, 4, 1))
    lams = [p.lam for p in rep.points if p.lam is not INFINITY and p.lam != 0][:3]
    kills = [apply(parse_operator("y^2", 3) - parse_operator("z^2", 3).scale(v), F + G.scale(v), D).is_zero()
             for v in lams]
    c.expect("membership", len(kills) == 3 and all(kills), f"(y^2 - λz^2) o (F + λG) at {lams}: {kills}")
    b = theorem2_bound(rep.H_A)[(2, 2)]
    c.eq("theorem 2 bound", b, 4)
    c.expect("bound <= H_gen_2", b <= rep.H_gen[2] == 5)
    return c.result()


def criterion_5():
    c = Checks()
    ones = HilbertSeq((1,) * 7)
    F, G = power_pencil_pair(QQ, seed=0)
    rep1 = sweep(F, G, action=D)
    c.eq("construction 1 H(A)", rep1.H_A, (1, 3, 6, 8, 6, 4, 2))
    c.eq("construction 1 H_gen", rep1.H_gen, (1, 3, 6, 8, 6, 3, 1))
    c.expect("construction 1 fiber at inf", rep1.fiber(INFINITY).H == ones)
    F, G = binary_pencil_pair(QQ, seed=0)
    rep2 = sweep(F, G, action=D)
    c.eq("construction 2 H(A)", rep2.H_A, (1, 3, 6, 8, 6, 4, 2))
    c.eq("construction 2 H_gen", rep2.H_gen, (1, 3, 6, 8, 6, 3, 1))
    c.expect("construction 2 has no (1,...,1) fiber", all(p.H != ones for p in rep2.points))
    return c.result()


def criterion_6():
    c = Checks()
    cand = (1, 3, 6, 8, 4, 2)
    bound = hplus_sum(compressed_bound(3, 5, 1), (1,) * 6, 3)
    c.eq("bound", bound, (1, 3, 6, 7, 4, 2))
    flagged = next((i for i, (a, b) in enumerate(zip(cand, bound)) if a > b), None)
    res = ghms_check(cand, 3)
    c.expect("rejected", res.applicable and not res.ok, f"ghms_check -> {res}")
    c.expect("flagged index", res.index == flagged == 3, f"index {res.index}, direct {flagged}")
    return c.result()


def _random_pencil(rng: random.Random):
    r = rng.choice([2, 3])
    j = rng.randint(2, 6)
    kind = rng.choice(["dense", "sparse", "powers", "shared"])
    basis = monomial_basis(r, j)

    def dense(density):
        return Form({e: rng.randrange(101) for e in basis if rng.random() < density}, r, j, GF101)

    def powers():
        out = Form.zero(r, j, GF101)
        for _ in range(rng.randint(1, 4)):
            out = out + Form.linear([rng.randrange(101) for _ in range(r)], GF101) ** j
        return out

    if kind == "dense":
        return dense(1.0), dense(1.0)
    if kind == "sparse":
        return dense(0.25), dense(0.25)
    if kind == "powers":
        return powers(), powers()
    common = powers()
    return common + dense(0.2), common + powers()


def criterion_7(count: int = 200, seed: int = 2024):
    rng = random.Random(seed)
    violations = []
    done = attempts = 0
    while done < count:
        attempts += 1
        F, G = _random_pencil(rng)
        if F.is_zero() or G.is_zero():
            continue
        action = CONTRACTION if done % 2 == 0 else D
        try:
            rep = sweep(F, G, exhaustive=True, action=action)
        except DependentFormsError:
            continue
        done += 1
        j = rep.j
        H_A, d, t, H_gen = rep.H_A, rep.d, rep.t, rep.H_gen
        inner = [p for p in rep.points if p.lam is not INFINITY and p.lam != 0]
        bad = []
        for u in range(1, j):
            i = j - u
            if H_A[u] - d[i] > H_gen[i]:
                bad.append(f"lower bound at u={u}")
            if any(p.H[i] > H_A[u] - t[i] for p in inner):
                bad.append(f"upper bound at u={u}")
        for i in range(j + 1):
            if H_A[i] + d[i] != rep.H_F[i] + rep.H_G[i]:
                bad.append(f"exact sequence at {i}")
            if t[i] > d[i]:
                bad.append(f"t > d at {i}")
        if not all(symmetry_check(p.H) for p in rep.points):
            bad.append("asymmetric fiber")
        if not is_o_sequence(H_A):
            bad.append("H(A) not an O-sequence")
        direct = []
        for u in range(j + 1):
            left = [g.to_vector() for g in derivative_space(F, u, action)]
            right = [g.to_vector() for g in derivative_space(G, u, action)]
            direct.append(subspace_dims(left, right, GF101).dint)
        if tuple(reversed(direct)) != tuple(d):
            bad.append("intersection d differs from Hilbert-function d")
        if bad:
            violations.append((str(F), str(G), action.value, bad))
    if violations:
        return False, f"{len(violations)} violating pencils, first {violations[0]}"
    return True, f"{count} pencils ({attempts - count} redrawn), zero violations"


def criterion_8(count: int = 60, seed: int = 8):
    rng = random.Random(seed)
    bad = []
    for n in range(count):
        r, j = rng.choice([2, 3, 4]), rng.randint(2, 6)
        F = Form({e: Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for e in monomial_basis(r, j)}, r, j)
        if F.is_zero():
            continue
        for u in range(j + 1):
            if catalecticant_matrix(F, u, D).rank() != catalecticant_matrix(F, u, CONTRACTION).rank():
                bad.append((str(F), u))
        # the exact correspondence holds for every form, not only general ones
        for special in (F, Form.linear([rng.randint(-3, 3) or 1 for _ in range(r)]) ** j):
            if hilbert_of_form(special, D) != hilbert_of_form(to_divided_powers(special), CONTRACTION):
                bad.append(("divided powers", str(special)))
    if bad:
        return False, f"{len(bad)} rank mismatches, first {bad[0]}"
    return True, f"{count} forms, zero violations"


def criterion_9(per_field: int = 120, seed: int = 9):
    rng = random.Random(seed)
    bad = []
    for field in (QQ, GF101):
        for _ in range(per_field):
            n, m = rng.randint(1, 12), rng.randint(1, 12)
            low = rng.choice([None, rng.randint(1, min(n, m))])
            rows = random_matrix(rng, n, m, field.p, density=rng.choice([1.0, 0.5, 0.15]), low_rank=low)
            if ExactMatrix(rows, field).rank() != naive_rank(rows, field.p):
                bad.append((str(field), n, m))
    if bad:
        return False, f"{len(bad)} disagreements, first {bad[0]}"
    return True, f"{2 * per_field} matrices, zero violations"


CRITERIA = {
    1: ("binary quartic pencil, exact", 1.0, criterion_1),
    2: ("first-partial counts", 1.0, criterion_2),
    3: ("sum of five eighth powers, no minimum fiber", 30.0, criterion_3),
    4: ("compressed type two, non-compressed generic quotient", 5.0, criterion_4),
    5: ("two constructions with equal H(A) and H_gen", 10.0, criterion_5),
    6: ("rejection of (1,3,6,8,4,2)", 1.0, criterion_6),
    7: ("bounds as oracles on 200 random pencils over GF(101)", 300.0, criterion_7),
    8: ("differentiation and contraction ranks over Q", 60.0, criterion_8),
    9: ("rank against a naive oracle", 30.0, criterion_9),
}


def summary_lines() -> list[str]:
    out = []
    for n in sorted(RESULTS):
        ok, elapsed, limit, detail = RESULTS[n]
        title = CRITERIA[n][0]
        out.append(f"criterion {n}: {'PASS' if ok else 'FAIL'}  [{elapsed:.2f}s / {limit:.0f}s]  {title}: {detail}")
    return out


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    _, limit, body = CRITERIA[number]
    ok, detail = record(number, limit, body)
    assert ok, detail


if __name__ == "__main__":
    for number, (_, limit, body) in CRITERIA.items():
        record(number, limit, body)
        print(summary_lines()[-1], flush=True)
    sys.exit(0 if all(v[0] for v in RESULTS.values()) else 1)
