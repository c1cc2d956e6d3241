"""Verification suites run by ``volpres verify`` and by the acceptance tests.

Each suite returns a :class:`SuiteResult`.  Randomised suites take a seed; the
corpus size follows ``scale`` ("full" meets the acceptance counts, "small" is a
quick smoke run).  The default scale comes from ``VOLPRES_SUITE_SCALE``.
"""

from __future__ import annotations

import itertools
import json
import os
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import closed_forms as cf
from . import io
from . import operators as ops
from .corpus import (
    FAMILIES,
    matroid_corpus,
    random_homogeneous,
    random_lorentzian_candidate,
    random_operator,
    random_rat,
    random_sparse,
)
from .geometry import Polytope, four_divisor_expected, four_divisor_family, volume_polynomial
from .lorentzian import certify_lorentzian, hessian_positive_count, is_m_convex_support
from .matroids import (
    bases_polynomial,
    coefficient_gap,
    extension_gap_bound,
    generic_extension_polynomial,
    independent_polynomial,
)
from .oracles import oracle_positive_eigenvalues
from .poly import (
    Polynomial,
    antiderivative,
    apply_diff_operator,
    derivative,
    dual,
    factorial_vec,
    normalize,
    truncate_lower,
)


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    info: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.checks > 0 and not self.failures

    def check(self, ok: bool, message: str) -> None:
        self.checks += 1
        if not ok and len(self.failures) < 50:
            self.failures.append(message)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = "".join(f" {k}={v}" for k, v in sorted(self.info.items()))
        return f"[{status}] {self.name}: {self.checks} checks, {len(self.failures)} failures ({self.seconds:.1f}s){extra}"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "failures": self.failures,
            "info": {k: str(v) for k, v in self.info.items()},
        }


def default_scale() -> str:
    scale = os.environ.get("VOLPRES_SUITE_SCALE", "full")
    if scale not in ("small", "full"):
        raise ValueError(f"VOLPRES_SUITE_SCALE must be 'small' or 'full', got {scale!r}")
    return scale


def _count(scale: str, full: int) -> int:
    return full if scale == "full" else max(full // 10, 5)


def _kappas(n_max: int, k_max: int, n_min: int = 1):
    for n in range(n_min, n_max + 1):
        yield from itertools.product(range(k_max + 1), repeat=n)


# ---------------------------------------------------------------------------


def suite_symbols(seed: int = 0, scale: str = "full", k_max: int | None = None) -> SuiteResult:
    """symbol(builtin) equals the factored closed form, for every kappa in range."""
    res = SuiteResult("symbols")
    rng = random.Random(seed)
    if k_max is None:
        k_max = 3 if scale == "full" else 2
    n_max = 3 if scale == "full" else 2

    def compare(T: ops.LinearOperator):
        got = ops.symbol(T)
        want = cf.expected_symbol(T.name, T.params)
        res.check(got == want, f"{T.name} {T.params}: symbol {got} != closed form {want}")
        if got:
            res.check(got.is_homogeneous(T.k + T.shift), f"{T.name} {T.params}: symbol not of degree k+l")

    for kappa in _kappas(n_max, k_max):
        n = len(kappa)
        compare(ops.identity(kappa))
        compare(ops.normalization(kappa))
        for gamma in itertools.product(*(range(k + 1) for k in kappa)):
            compare(ops.trunc_upper(gamma, kappa))
            compare(ops.trunc_lower(gamma, kappa))
        for i in range(n):
            for j in range(n):
                compare(ops.creation(Fraction(rng.randint(1, 9), rng.randint(1, 4)), i, j, kappa))
                if i != j:
                    compare(ops.diag_normalized(kappa, i, j))
        s = random_sparse(rng, kappa, signed=True)
        deg = max(sum(e) for e in s.terms)
        s = Polynomial(n, {e: c for e, c in s.terms.items() if sum(e) == deg})
        compare(ops.diff_op(s, kappa))
        g = random_homogeneous(rng, tuple(min(k, 1) + 1 for k in kappa))
        compare(ops.mult_normalized(g, kappa))
    for kappa in _kappas(n_max - 1, k_max, n_min=0):
        for k in range(k_max + 1):
            compare(ops.polarization(kappa, k))
    for n in range(2, n_max + 1):
        for theta in (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1)):
            compare(ops.exclusion(theta, n))
    return res


def suite_oracle(
    seed: int = 0, scale: str = "full", per_family: int | None = None, k_max: int = 3
) -> SuiteResult:
    """apply_via_symbol(T, f) == apply(T, f) for random operators and inputs."""
    res = SuiteResult("oracle")
    rng = random.Random(seed)
    per_family = per_family or _count(scale, 200)
    for family in FAMILIES:
        for _ in range(per_family):
            T = random_operator(rng, family, k_max=k_max)
            f = random_homogeneous(rng, T.kappa)
            direct = ops.apply(T, f)
            via = ops.apply_via_symbol(T, f)
            res.check(direct == via, f"{family} {T.params}: T(f)={direct} but D-contraction gives {via}")
    res.info["per_family"] = per_family
    return res


def suite_dual(seed: int = 0, scale: str = "full", trials: int | None = None) -> SuiteResult:
    """d_s(x^kappa) == kappa! * s^v."""
    res = SuiteResult("dual")
    rng = random.Random(seed)
    for _ in range(trials or _count(scale, 500)):
        kappa = tuple(rng.randint(0, 4) for _ in range(rng.randint(1, 4)))
        s = random_sparse(rng, kappa)
        lhs = apply_diff_operator(s, Polynomial.monomial(kappa))
        rhs = dual(s, kappa).scale(factorial_vec(kappa))
        res.check(lhs == rhs, f"kappa={kappa}, s={s}: {lhs} != {rhs}")
    return res


def suite_truncation(seed: int = 0, scale: str = "full", trials: int | None = None) -> SuiteResult:
    """f_{>=gamma} == antiderivative(d^gamma f, gamma)."""
    res = SuiteResult("truncation")
    rng = random.Random(seed)
    for _ in range(trials or _count(scale, 500)):
        kappa = tuple(rng.randint(0, 4) for _ in range(rng.randint(1, 4)))
        f = random_sparse(rng, kappa)
        gamma = tuple(rng.randint(0, k + 1) for k in kappa)
        lhs = truncate_lower(f, gamma)
        rhs = antiderivative(derivative(f, gamma), gamma)
        res.check(lhs == rhs, f"f={f}, gamma={gamma}: {lhs} != {rhs}")
    return res


def suite_fourdivisor(seed: int = 0, scale: str = "full", q_max: int = 6) -> SuiteResult:
    """Intersection expansion equals 2q xz + 2p(xw+yz) + 2(q-p)(zw+xy) + 2q yw."""
    res = SuiteResult("fourdivisor")
    for q in range(q_max + 1):
        for p in range(q + 1):
            f, wit = four_divisor_family(p, q)
            res.check(f == four_divisor_expected(p, q), f"(p,q)=({p},{q}): got {f}")
            squares = [f.coeff(tuple(2 * int(k == i) for k in range(4))) for i in range(4)]
            res.check(all(c == 0 for c in squares), f"(p,q)=({p},{q}): non-zero squares {squares}")
    f, wit = four_divisor_family(1, 2, 2)
    res.check(
        f == Polynomial(4, {(1, 0, 1, 0): 4, (1, 0, 0, 1): 2, (0, 1, 1, 0): 2, (0, 0, 1, 1): 2, (1, 1, 0, 0): 2, (0, 1, 0, 1): 4}),
        f"(1,2,2): got {f}",
    )
    res.check((wit["a"], wit["b"], wit["c"], wit["r"]) == (2, 3, 3, 6), f"(1,2,2) data {wit}")
    return res


def suite_mixedvol(seed: int = 0, scale: str = "full", trials: int | None = None) -> SuiteResult:
    """Boxes: vol(x A + y B) == prod(a_i x + b_i y); triangle and square give x^2/2 + 2xy + y^2."""
    res = SuiteResult("mixedvol")
    rng = random.Random(seed)
    x, y = Polynomial.variable(0, 2), Polynomial.variable(1, 2)
    for _ in range(trials or _count(scale, 50)):
        d = rng.randint(1, 3)
        a = [random_rat(rng, 1, 7, 5) for _ in range(d)]
        b = [random_rat(rng, 1, 7, 5) for _ in range(d)]
        got = volume_polynomial([Polytope.box(a), Polytope.box(b)])
        want = Polynomial.constant(1, 2)
        for ai, bi in zip(a, b):
            want = want * (x.scale(ai) + y.scale(bi))
        res.check(got == want, f"boxes a={a}, b={b}: {got} != {want}")
    T = Polytope.from_points([(0, 0), (1, 0), (0, 1)])
    S = Polytope.box([1, 1])
    got = volume_polynomial([T, S])
    want = Polynomial(2, {(2, 0): Fraction(1, 2), (1, 1): 2, (0, 2): 1})
    res.check(got == want, f"triangle/square: {got}")
    return res


def suite_matroid(seed: int = 0, scale: str = "full", ms=(10, 100, 1000)) -> SuiteResult:
    """generic_extension_polynomial(M, m) -> N(I_M) with gap <= C/m."""
    res = SuiteResult("matroid")
    measured = Fraction(0)
    for name, M in sorted(matroid_corpus().items()):
        target = normalize(independent_polynomial(M))
        bound = extension_gap_bound(M.r)
        for m in ms:
            gap = coefficient_gap(generic_extension_polynomial(M, m), target)
            measured = max(measured, gap * m)
            res.check(gap <= bound / m, f"{name}, m={m}: gap {gap} exceeds {bound}/m")
            if m == 1000:
                res.check(gap <= Fraction(1, 100), f"{name}: gap at m=1000 is {gap}")
    U23 = matroid_corpus()["U23"]
    for m in ms:
        gap = coefficient_gap(generic_extension_polynomial(U23, m), normalize(independent_polynomial(U23)))
        res.check(gap == Fraction(1, 2 * m), f"U23, m={m}: gap {gap} != 1/(2m)")
    res.info["measured_C"] = measured
    res.info["bound_C"] = extension_gap_bound(max(M.r for M in matroid_corpus().values()))
    return res


def lorentzian_operator_catalogue() -> list[ops.LinearOperator]:
    """Operator instances used by the Lorentzian preservation suite."""
    out: list[ops.LinearOperator] = []
    kappas = [(2,), (3,), (1, 1), (2, 1), (2, 2), (1, 1, 1), (2, 1, 1)]
    for kappa in kappas:
        n = len(kappa)
        out.append(ops.identity(kappa))
        out.append(ops.normalization(kappa))
        out.append(ops.diff_op(Polynomial.variable(0, n), kappa))
        out.append(ops.diff_op(Polynomial.linear_form([1] * n), kappa))
        if n >= 2:
            h2 = Polynomial(n, {(2, 0) + (0,) * (n - 2): 1, (1, 1) + (0,) * (n - 2): 1, (0, 2) + (0,) * (n - 2): 1})
            out.append(ops.diff_op(h2, kappa))
            out.append(ops.diag_normalized(kappa, 0, 1))
            out.append(ops.creation(Fraction(3, 2), 0, 1, kappa))
            out.append(ops.creation(Fraction(1), 1, 0, kappa))
        out.append(ops.mult_normalized(Polynomial.linear_form([1 + i for i in range(n)]), kappa))
        out.append(ops.trunc_upper(tuple(max(k - 1, 0) for k in kappa), kappa))
        out.append(ops.trunc_lower(tuple(min(k, 1) for k in kappa), kappa))
    for kappa in [(), (1,), (2,), (1, 1)]:
        for k in (1, 2):
            out.append(ops.polarization(kappa, k))
    for n in (2, 3):
        for theta in (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1)):
            out.append(ops.exclusion(theta, n))
    return out


def suite_lorentzian(seed: int = 0, scale: str = "full", inputs: int | None = None) -> SuiteResult:
    """Operators with Lorentzian symbols map certified inputs to certified outputs."""
    res = SuiteResult("lorentzian")
    rng = random.Random(seed)
    inputs = inputs or _count(scale, 100)
    used, skipped = 0, []
    for T in lorentzian_operator_catalogue():
        label = f"{T.name}{T.kappa}"
        if not certify_lorentzian(ops.symbol(T)):
            skipped.append(label)
            continue
        used += 1
        done = 0
        attempts = 0
        while done < inputs and attempts < 20 * inputs:
            attempts += 1
            f = random_lorentzian_candidate(rng, T.kappa)
            if not certify_lorentzian(f):
                continue
            done += 1
            out = ops.apply(T, f)
            report = certify_lorentzian(out)
            res.check(report.certified, f"{label}: input {f} certified but output {out} refuted ({report.detail})")
        res.check(done >= inputs, f"{label}: only {done} certified inputs generated")
    res.info["operators"] = used
    res.info["skipped"] = ",".join(skipped) or "none"
    return res


def suite_certifier(seed: int = 0, scale: str = "full", matrices: int | None = None) -> SuiteResult:
    """Certifier ground truth: corpus B_M certify, x^2+y^2 refutes, Hessian counts match the oracle."""
    res = SuiteResult("certifier")
    rng = random.Random(seed)
    for name, M in sorted(matroid_corpus().items()):
        rep = certify_lorentzian(bases_polynomial(M))
        res.check(rep.certified, f"B_{name} refuted: {rep.detail}")
    rep = certify_lorentzian(Polynomial(2, {(2, 0): 1, (0, 2): 1}))
    res.check(rep.verdict == "refuted" and rep.stage == "hessian" and "hessian" in rep.witness, f"x^2+y^2: {rep}")
    for _ in range(matrices or _count(scale, 1000)):
        n = rng.randint(1, 4)
        nonneg = rng.random() < 0.5
        H = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                if rng.random() < 0.15:
                    v = Fraction(0)
                else:
                    v = Fraction(rng.randint(0 if nonneg else -6, 6), rng.randint(1, 3))
                H[i][j] = H[j][i] = v
        if rng.random() < 0.2:
            v = [Fraction(rng.randint(0 if nonneg else -3, 3)) for _ in range(n)]
            H = [[a * b for b in v] for a in v]
        q = quadratic_form(H)
        want = oracle_positive_eigenvalues(H)
        got = hessian_positive_count(q, (0,) * n) if q else 0
        res.check(got == want, f"H={H}: certifier count {got}, oracle {want}")
        if q:
            expected_verdict = (
                q.has_nonnegative_coefficients() and is_m_convex_support(q).certified and want <= 1
            )
            res.check(
                certify_lorentzian(q).certified == expected_verdict,
                f"H={H}: verdict disagrees with oracle-based verdict {expected_verdict}",
            )
    return res


def quadratic_form(H) -> Polynomial:
    """The quadratic polynomial whose Hessian is the symmetric matrix H."""
    n = len(H)
    terms = {}
    for i in range(n):
        for j in range(i, n):
            exp = [0] * n
            exp[i] += 1
            exp[j] += 1
            terms[tuple(exp)] = Fraction(H[i][i], 2) if i == j else Fraction(H[i][j])
    return Polynomial(n, terms)


def sample_emissions(seed: int = 0, count: int = 20) -> list[str]:
    """A deterministic batch of JSON documents of every kind the tool emits."""
    rng = random.Random(seed)
    docs = []
    for _ in range(count):
        family = rng.choice(FAMILIES)
        T = random_operator(rng, family, n_max=2, k_max=2)
        f = random_homogeneous(rng, T.kappa)
        docs.append(io.dumps(io.operator_to_json(T)))
        docs.append(io.dumps(io.poly_to_json(ops.symbol(T))))
        docs.append(io.dumps(io.poly_to_json(ops.apply(T, f))))
        docs.append(io.dumps(certify_lorentzian(f).to_json()))
    for M in matroid_corpus().values():
        docs.append(io.dumps(io.matroid_to_json(M)))
        docs.append(io.dumps(io.poly_to_json(independent_polynomial(M))))
    docs.append(io.dumps(io.poly_to_json(volume_polynomial([Polytope.box([1, 2]), Polytope.segment([1, 1])]))))
    return docs


def suite_roundtrip(seed: int = 0, scale: str = "full") -> SuiteResult:
    """Emissions are byte-stable for a fixed seed and re-parse to identical values."""
    res = SuiteResult("roundtrip")
    first = sample_emissions(seed)
    second = sample_emissions(seed)
    res.check(first == second, "emissions differ between two runs with the same seed")
    for doc in first:
        data = json.loads(doc)
        if "nvars" in data:
            again = io.dumps(io.poly_to_json(io.poly_from_json(data)))
        elif "images" in data:
            again = io.dumps(io.operator_to_json(io.operator_from_json(data)))
        elif "bases" in data:
            again = io.dumps(io.matroid_to_json(io.matroid_from_json(data)))
        else:
            again = io.dumps(data)
        res.check(again == doc, f"re-emission differs for {doc[:80]}...")
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "symbols": suite_symbols,
    "oracle": suite_oracle,
    "dual": suite_dual,
    "truncation": suite_truncation,
    "fourdivisor": suite_fourdivisor,
    "mixedvol": suite_mixedvol,
    "matroid": suite_matroid,
    "lorentzian": suite_lorentzian,
    "certifier": suite_certifier,
    "roundtrip": suite_roundtrip,
}


SUITE_ALIASES = {"lemma312": "fourdivisor"}


def run_suite(name: str, seed: int = 0, scale: str | None = None, max_kappa: int | None = None) -> SuiteResult:
    """Run one suite; ``max_kappa`` caps the exponent range of the operator suites."""
    name = SUITE_ALIASES.get(name, name)
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    extra = {"k_max": max_kappa} if max_kappa is not None and name in ("symbols", "oracle") else {}
    start = time.perf_counter()
    res = SUITES[name](seed=seed, scale=scale or default_scale(), **extra)
    res.seconds = time.perf_counter() - start
    return res
