"""Nonnegative tridiagonal systems with constant row sum.

The central object is a (D+1)x(D+1) tridiagonal matrix with zero top-left
entry, unit first subdiagonal entry, positive off-diagonals and every row
summing to kappa.  Such a matrix has D+1 distinct real eigenvalues with
kappa the largest; the remaining D are the eigenvalues of a D x D reduced
matrix whose leading principal characteristic polynomials F_0, ..., F_D
satisfy a three-term recurrence, and consecutive F_i strictly interlace.

Two eigenvalue inequalities are verified with exact equality detection:

  pair bound:   (t_1 + 1)(t_D + 1) <= -beta_1, equality exactly when D = 2;
  triple bound: for D >= 3, comparing beta_2 + gamma_3 with kappa + 1 picks
                the branch; the lower branch asserts
                (t_1+1)(t_{D-1}+1)(t_D+1) >= -beta_1(kappa+1-beta_2-gamma_3),
                the upper one the mirrored <= with t_2; equality exactly
                when D = 3.  On the boundary both branches are evaluated.

Entry indexing: alpha[i] is the diagonal entry alpha_i (0..D), beta[i] is
beta_i (0..D-1), gamma[j] is gamma_{j+1} (the stored list starts at
gamma_1).

Entries are Fractions for ordinary systems; the same checks also accept
number-field elements (FieldElement) so Krein matrices with algebraic
entries reuse every code path.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebraics import (
    AlgebraicReal,
    ProductValue,
    compare,
    compare_rational,
    isolate_real_roots,
    refine_budget,
)
from .numberfield import (
    exact_sign,
    is_exact_zero,
    kp_eval,
    kp_mul,
    kp_sub,
    kp_trim,
    scalar_as_fraction,
    scalar_to_algebraic,
)
from .polynomials import RationalPoly
from .serialize import parse_rat, rat_str, value_json


@dataclass(frozen=True)
class TridiagonalSystem:
    d: int
    alpha: tuple
    beta: tuple
    gamma: tuple
    kappa: object

    @classmethod
    def from_entries(cls, alpha: Sequence, beta: Sequence, gamma: Sequence, kappa) -> "TridiagonalSystem":
        return cls(len(alpha) - 1, tuple(alpha), tuple(beta), tuple(gamma), kappa)

    @classmethod
    def from_intersection_numbers(cls, b: Sequence, c: Sequence) -> "TridiagonalSystem":
        """From b_0..b_{D-1} and c_1..c_D with row sum b_0."""
        d = len(b)
        if len(c) != d:
            raise ValueError("need as many c entries as b entries")
        k = Fraction(b[0])
        bb = [Fraction(v) for v in b]
        cc = [Fraction(v) for v in c]
        alpha = [Fraction(0)]
        for i in range(1, d):
            alpha.append(k - bb[i] - cc[i - 1])
        alpha.append(k - cc[d - 1])
        return cls(d, tuple(alpha), tuple(bb), tuple(cc), k)

    def is_rational(self) -> bool:
        vals = list(self.alpha) + list(self.beta) + list(self.gamma) + [self.kappa]
        return all(scalar_as_fraction(v) is not None for v in vals)

    def to_json_dict(self) -> dict:
        return {
            "kappa": rat_str(scalar_as_fraction(self.kappa)),
            "alpha": [rat_str(scalar_as_fraction(v)) for v in self.alpha],
            "beta": [rat_str(scalar_as_fraction(v)) for v in self.beta],
            "gamma": [rat_str(scalar_as_fraction(v)) for v in self.gamma],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "TridiagonalSystem":
        for key in ("kappa", "alpha", "beta", "gamma"):
            if key not in obj:
                raise ValueError(f"missing field {key!r}")
        kappa = parse_rat(obj["kappa"])
        alpha = tuple(parse_rat(v) for v in obj["alpha"])
        beta = tuple(parse_rat(v) for v in obj["beta"])
        gamma = tuple(parse_rat(v) for v in obj["gamma"])
        if len(beta) != len(alpha) - 1 or len(gamma) != len(alpha) - 1:
            raise ValueError("alpha must have one more entry than beta and gamma")
        return cls(len(alpha) - 1, alpha, beta, gamma, kappa)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...]


def validate(system: TridiagonalSystem) -> ValidationReport:
    """Check every clause of the row-sum condition; report-style, never raises."""
    v: list[str] = []
    d = system.d
    if d < 2:
        v.append("D must be at least 2")
    if len(system.alpha) != d + 1 or len(system.beta) != d or len(system.gamma) != d:
        v.append("entry counts must be alpha: D+1, beta: D, gamma: D")
        return ValidationReport(False, tuple(v))
    if exact_sign(system.kappa) <= 0:
        v.append("kappa must be positive")
    if not is_exact_zero(system.alpha[0]):
        v.append("alpha_0 must equal 0")
    for i, a in enumerate(system.alpha):
        if exact_sign(a) < 0:
            v.append(f"alpha_{i} must be nonnegative")
    for i, b in enumerate(system.beta):
        if exact_sign(b) <= 0:
            v.append(f"beta_{i} must be positive")
    if not is_exact_zero(system.gamma[0] - 1):
        v.append("gamma_1 must equal 1")
    for j, g in enumerate(system.gamma):
        if exact_sign(g) <= 0:
            v.append(f"gamma_{j + 1} must be positive")
    for i in range(d + 1):
        total = system.alpha[i]
        if i < d:
            total = total + system.beta[i]
        if i >= 1:
            total = total + system.gamma[i - 1]
        if not is_exact_zero(total - system.kappa):
            v.append(f"row {i} must sum to kappa")
    return ValidationReport(not v, tuple(v))


def require_valid(system: TridiagonalSystem) -> None:
    rep = validate(system)
    if not rep.ok:
        raise ValueError("invalid tridiagonal system: " + "; ".join(rep.violations))


def reduced_matrix(system: TridiagonalSystem) -> tuple[tuple, ...]:
    """The D x D reduced matrix carrying the non-principal eigenvalues.

    Diagonal (-gamma_1, kappa-beta_1-gamma_2, ..., kappa-beta_{D-1}-gamma_D),
    superdiagonal beta_1..beta_{D-1}, subdiagonal gamma_1..gamma_{D-1}.
    """
    require_valid(system)
    d = system.d
    beta, gamma, kappa = system.beta, system.gamma, system.kappa
    zero = kappa * 0
    rows = []
    for i in range(d):
        row = [zero] * d
        row[i] = -gamma[0] if i == 0 else kappa - beta[i] - gamma[i]
        if i + 1 < d:
            row[i + 1] = beta[i + 1]
        if i >= 1:
            row[i - 1] = gamma[i - 1]
        rows.append(tuple(row))
    return tuple(rows)


def f_polynomials(system: TridiagonalSystem) -> list:
    """F_0 = 1, F_1 = x + 1, then
    F_i = (x - kappa + beta_{i-1} + gamma_i) F_{i-1} - beta_{i-1} gamma_{i-1} F_{i-2}.

    Rational systems get RationalPoly values; systems with field entries get
    coefficient lists (constant term first).
    """
    require_valid(system)
    if system.is_rational():
        kappa = scalar_as_fraction(system.kappa)
        beta = [scalar_as_fraction(x) for x in system.beta]
        gamma = [scalar_as_fraction(x) for x in system.gamma]
        fs = [RationalPoly.one(), RationalPoly((1, 1))]
        for i in range(2, system.d + 1):
            shift = RationalPoly((beta[i - 1] + gamma[i - 1] - kappa, 1))
            fs.append(shift * fs[i - 1] - fs[i - 2].scale(beta[i - 1] * gamma[i - 2]))
        return fs
    one = system.kappa * 0 + 1
    kappa, beta, gamma = system.kappa, system.beta, system.gamma
    fs: list[list] = [[one], [one, one]]
    for i in range(2, system.d + 1):
        shift = [beta[i - 1] + gamma[i - 1] - kappa, one]
        fs.append(kp_trim(kp_sub(kp_mul(shift, fs[i - 1]), kp_mul([beta[i - 1] * gamma[i - 2]], fs[i - 2]))))
    return fs


def charpoly_by_cofactor(matrix: Sequence[Sequence[Fraction]]) -> RationalPoly:
    """det(xI - M) by recursive cofactor expansion along the first row.

    Deliberately generic (no tridiagonal shortcuts): this is the independent
    oracle against which the recurrence is checked.
    """
    n = len(matrix)
    x = RationalPoly.x()
    cells = [
        [
            x - RationalPoly.constant(matrix[i][j]) if i == j else RationalPoly.constant(-matrix[i][j])
            for j in range(n)
        ]
        for i in range(n)
    ]

    def det(rows: tuple[int, ...], cols: tuple[int, ...]) -> RationalPoly:
        if len(rows) == 1:
            return cells[rows[0]][cols[0]]
        acc = RationalPoly.zero()
        r0, rest = rows[0], rows[1:]
        for k, c in enumerate(cols):
            entry = cells[r0][c]
            if entry.is_zero:
                continue
            term = entry * det(rest, cols[:k] + cols[k + 1 :])
            acc = acc + term if k % 2 == 0 else acc - term
        return acc

    idx = tuple(range(n))
    return det(idx, idx)


@dataclass(frozen=True)
class SpectrumReport:
    system: TridiagonalSystem
    eigenvalues: tuple  # theta_0 = kappa > theta_1 > ... > theta_D
    f_polys: tuple
    root_table: tuple  # root_table[i-1] = roots of F_i, descending (rational systems)

    @property
    def nonprincipal(self) -> tuple:
        return self.eigenvalues[1:]


def spectrum(system: TridiagonalSystem, known_roots: Sequence | None = None) -> SpectrumReport:
    """Exact eigenvalues, plus the full F_i root table for rational systems.

    Systems with field-element entries require known_roots: candidate
    eigenvalues that are certified by exact evaluation of F_D and pairwise
    distinctness, which proves they are precisely the spectrum.
    """
    require_valid(system)
    fs = f_polynomials(system)
    d = system.d
    if system.is_rational():
        table = []
        for i in range(1, d + 1):
            roots = isolate_real_roots(fs[i])
            if len(roots) != i:
                raise AssertionError(f"F_{i} must have {i} distinct real roots, found {len(roots)}")
            table.append(tuple(reversed(roots)))
        top = AlgebraicReal.from_rational(scalar_as_fraction(system.kappa))
        eigen = (top,) + table[-1]
        if compare(eigen[0], eigen[1]) <= 0:
            raise AssertionError("kappa must be the strictly largest eigenvalue")
        return SpectrumReport(system, eigen, tuple(fs), tuple(table))

    if known_roots is None:
        raise ValueError("systems with algebraic entries need candidate eigenvalues")
    cands = list(known_roots)
    if len(cands) != d:
        raise ValueError(f"expected {d} candidate eigenvalues, got {len(cands)}")
    fd = fs[d]
    for cand in cands:
        if not is_exact_zero(kp_eval(fd, cand)):
            raise AssertionError("candidate eigenvalue does not annihilate F_D")
    ordered = _sort_descending_exact(cands)
    eigen = (system.kappa,) + tuple(ordered)
    if exact_sign(system.kappa - ordered[0]) <= 0:
        raise AssertionError("kappa must be the strictly largest eigenvalue")
    return SpectrumReport(system, eigen, tuple(fs), ())


def _sort_descending_exact(vals: list) -> list:
    out: list = []
    for v in vals:
        pos = 0
        for pos, w in enumerate(out + [None]):
            if w is None:
                break
            s = exact_sign(v - w)
            if s == 0:
                raise AssertionError("candidate eigenvalues are not distinct")
            if s > 0:
                break
        out.insert(pos, v)
    return out


@dataclass(frozen=True)
class InterlacingResult:
    passed: bool
    failures: tuple[str, ...]


def interlacing_check(report: SpectrumReport) -> InterlacingResult:
    """Roots of consecutive F_i strictly interlace (exact comparisons)."""
    failures = []
    table = report.root_table
    for i in range(2, len(table) + 1):
        upper = table[i - 1]  # alpha_{i,1} > ... > alpha_{i,i}
        lower = table[i - 2]
        for j in range(1, i):
            between = compare(upper[j], lower[j - 1]) < 0 and compare(lower[j - 1], upper[j - 1]) < 0
            if not between:
                failures.append(f"interlacing fails at i={i}, j={j}")
    return InterlacingResult(not failures, tuple(failures))


# -- two-point comparison lemma ------------------------------------------------------


@dataclass(frozen=True)
class LemmaResult:
    f_t: AlgebraicReal
    g_t: AlgebraicReal
    holds: bool
    equality: bool


def endpoint_product_bound(a, b, c, d, t) -> LemmaResult:
    """For a <= b < c <= d and t in [b, c]: (t-a)(t-d) <= (t-b)(t-c).

    Interior equality forces a = b and c = d; a breach of that implication
    raises, since it would falsify the statement rather than an input.
    """
    a, b, c, d, t = (scalar_to_algebraic(v) for v in (a, b, c, d, t))
    if not (compare(a, b) <= 0 and compare(b, c) < 0 and compare(c, d) <= 0):
        raise ValueError("need a <= b < c <= d")
    if not (compare(b, t) <= 0 and compare(t, c) <= 0):
        raise ValueError("need t in [b, c]")
    f_t = (t - a) * (t - d)
    g_t = (t - b) * (t - c)
    cmp = compare(f_t, g_t)
    equality = cmp == 0
    if equality and compare(b, t) < 0 and compare(t, c) < 0:
        if not (compare(a, b) == 0 and compare(c, d) == 0):
            raise AssertionError("interior equality without a=b and c=d")
    return LemmaResult(f_t, g_t, cmp <= 0, equality)


# -- products of shifted roots --------------------------------------------------------


def shifted_subset_product(poly: RationalPoly, roots: Sequence[AlgebraicReal], subset: Sequence[int], s):
    """prod_{i in subset} (roots[i] + s), exact.

    roots must be ALL real roots of the squarefree poly (which must be
    totally real), ascending.  Returns a Fraction when the value is
    rational, else an AlgebraicReal.  Whichever of the subset and its
    complement carries fewer irrational factors is materialized: either the
    subset factors are multiplied out directly, or the full product
    (poly evaluated at -s) is divided by the complement factors.
    """
    s = Fraction(s)
    subset = set(subset)
    for i in subset:
        if compare_rational(roots[i], -s) == 0:
            return Fraction(0)
    complement = [i for i in range(len(roots)) if i not in subset]
    sub_irr = [i for i in subset if roots[i].as_rational() is None]
    comp_irr = [i for i in complement if roots[i].as_rational() is None]

    if len(sub_irr) <= len(comp_irr):
        acc = Fraction(1)
        for i in subset:
            r = roots[i].as_rational()
            if r is not None:
                acc *= r + s
        value = AlgebraicReal.from_rational(acc)
        for i in sub_irr:
            value = value * roots[i].add_rational(s)
        rat = value.as_rational()
        return rat if rat is not None else value

    work = poly
    acc = Fraction(1)
    for i in complement:
        r = roots[i].as_rational()
        if r is not None:
            if r == -s:
                work = work.exact_div(RationalPoly((-r, 1)))
            else:
                acc *= r + s
    n = work.degree
    full = (-1) ** n * work.evaluate(-s) / work.leading
    value = AlgebraicReal.from_rational(full / acc)
    for i in comp_irr:
        value = value * roots[i].add_rational(s).inverse()
    rat = value.as_rational()
    return rat if rat is not None else value


def _materialization_cost(roots: Sequence[AlgebraicReal], subset: Sequence[int]) -> int:
    """Number of irrational factors on the cheaper side of the split."""
    sub = set(subset)
    sub_irr = sum(1 for i in sub if roots[i].as_rational() is None)
    comp_irr = sum(1 for i in range(len(roots)) if i not in sub and roots[i].as_rational() is None)
    return min(sub_irr, comp_irr)


def compare_shifted_product(
    poly: RationalPoly, roots: Sequence[AlgebraicReal], subset: Sequence[int], s, rhs
) -> int:
    """Exact sign of prod_{i in subset}(roots[i] + s) - rhs.

    Cheap when either side of the subset split has at most one irrational
    root.  Otherwise interval refinement decides strict cases within the
    refinement budget, and ties fall through to the subset-product
    resolvent: the characteristic polynomial of a compound matrix, whose
    roots are all |subset|-fold products of shifted roots, pins the value
    without ever expanding a high-degree resultant chain.
    """
    s, rhs = Fraction(s), Fraction(rhs)
    subset = list(subset)
    if _materialization_cost(roots, subset) <= 1:
        val = shifted_subset_product(poly, roots, subset, s)
        if isinstance(val, Fraction):
            return (val > rhs) - (val < rhs)
        return compare_rational(val, rhs)
    factors = [roots[i] for i in subset]

    def enclosure(fs):
        lo = hi = Fraction(1)
        for f in fs:
            a, b = f.lo + s, f.hi + s
            corners = (lo * a, lo * b, hi * a, hi * b)
            lo, hi = min(corners), max(corners)
        return lo, hi

    for _ in range(refine_budget()):
        lo, hi = enclosure(factors)
        if rhs < lo:
            return 1
        if rhs > hi:
            return -1
        factors = [f.refine() for f in factors]

    # exact phase: the true product is a root of the resolvent
    shifted = poly.shift(-s)  # roots are roots(poly) + s
    resolvent = _subset_product_resolvent(shifted, len(subset))
    res_roots = isolate_real_roots(resolvent)
    while True:
        lo, hi = enclosure(factors)
        if rhs < lo:
            return 1
        if rhs > hi:
            return -1
        hits = [r for r in res_roots if not (r.hi < lo or hi < r.lo)]
        if len(hits) == 1 and compare_rational(hits[0], rhs) == 0:
            return 0
        factors = [f.refine() for f in factors]
        res_roots = [r.refine() for r in res_roots]


def _subset_product_resolvent(h: RationalPoly, k: int) -> RationalPoly:
    """Polynomial whose roots are the k-fold products of the roots of h.

    The k-th compound of the companion matrix of h has exactly those
    products as eigenvalues; its characteristic polynomial (degree
    C(deg h, k)) comes from exact determinants at interpolation nodes.
    """
    from itertools import combinations

    from .algebraics import _newton_interpolate

    hm = h.monic()
    n = hm.degree
    if not 1 <= k <= n:
        raise ValueError("subset size out of range")
    companion = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n):
        companion[i][i - 1] = Fraction(1)
    for i in range(n):
        companion[i][n - 1] = -hm.coeffs[i]
    subsets = list(combinations(range(n), k))
    dim = len(subsets)
    compound = [
        [_fraction_det([[companion[r][c] for c in cols] for r in rows]) for cols in subsets]
        for rows in subsets
    ]
    xs = list(range(dim + 1))
    ys = []
    for t in xs:
        m = [[(t if i == j else 0) - compound[i][j] for j in range(dim)] for i in range(dim)]
        ys.append(_fraction_det(m))
    return _newton_interpolate(xs, ys)


def _fraction_det(m: list[list[Fraction]]) -> Fraction:
    n = len(m)
    if n == 0:
        return Fraction(1)
    m = [row[:] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def _report_value(poly: RationalPoly, roots: Sequence[AlgebraicReal], subset: Sequence[int], s):
    """The subset product for a report: exact scalar when cheap, factored otherwise."""
    if _materialization_cost(roots, subset) <= 1:
        return shifted_subset_product(poly, roots, subset, s)
    return ProductValue([roots[i].add_rational(s) for i in sorted(subset, reverse=True)])


# -- the two main checks ----------------------------------------------------------------


@dataclass(frozen=True)
class BoundCheck:
    lhs: object
    rhs: object
    relation: str  # "<=" or ">="
    holds: bool
    equality: bool

    def to_json_dict(self) -> dict:
        return {
            "lhs": value_json(self.lhs),
            "rhs": value_json(self.rhs),
            "relation": self.relation,
            "holds": self.holds,
            "equality": self.equality,
        }


def pair_bound(system: TridiagonalSystem, report: SpectrumReport | None = None, known_roots=None) -> BoundCheck:
    """(theta_1 + 1)(theta_D + 1) <= -beta_1; equality exactly when D = 2."""
    require_valid(system)
    if system.d < 2:
        raise ValueError("need D >= 2")
    if report is None:
        report = spectrum(system, known_roots)
    if system.is_rational():
        fd = report.f_polys[-1]
        asc = list(reversed(report.root_table[-1]))
        subset = [len(asc) - 1, 0]  # theta_1 (largest) and theta_D (smallest)
        rhs = -scalar_as_fraction(system.beta[1])
        cmp = compare_shifted_product(fd, asc, subset, 1, rhs)
        lhs = _report_value(fd, asc, subset, 1)
        return BoundCheck(lhs, rhs, "<=", cmp <= 0, cmp == 0)
    th = report.nonprincipal
    lhs = (th[0] + 1) * (th[-1] + 1)
    rhs = -system.beta[1]
    sign = exact_sign(lhs - rhs)
    return BoundCheck(lhs, rhs, "<=", sign <= 0, sign == 0)


@dataclass(frozen=True)
class BranchCheck:
    branch: str  # "lower" (relation >=) or "upper" (relation <=)
    check: BoundCheck


@dataclass(frozen=True)
class TripleBoundResult:
    hypothesis_sign: int  # sign of beta_2 + gamma_3 - (kappa + 1)
    branches: tuple[BranchCheck, ...]

    @property
    def holds(self) -> bool:
        return all(b.check.holds for b in self.branches)

    @property
    def equality(self) -> bool:
        return all(b.check.equality for b in self.branches)


def triple_bound(system: TridiagonalSystem, report: SpectrumReport | None = None, known_roots=None) -> TripleBoundResult:
    """The D >= 3 triple-product bound; both branches run on the boundary."""
    require_valid(system)
    d = system.d
    if d < 3:
        raise ValueError("need D >= 3")
    if report is None:
        report = spectrum(system, known_roots)
    hyp = exact_sign(system.beta[2] + system.gamma[2] - system.kappa - 1)
    rhs_exact = -system.beta[1] * (system.kappa + 1 - system.beta[2] - system.gamma[2])
    names = (["lower"] if hyp >= 0 else []) + (["upper"] if hyp <= 0 else [])
    branches = []
    if system.is_rational():
        fd = report.f_polys[-1]
        asc = list(reversed(report.root_table[-1]))  # index 0 = theta_D, last = theta_1
        rhs = scalar_as_fraction(rhs_exact)
        for name in names:
            if name == "lower":
                subset, rel = sorted({d - 1, 1, 0}), ">="  # theta_1, theta_{D-1}, theta_D
            else:
                subset, rel = sorted({d - 1, d - 2, 0}), "<="  # theta_1, theta_2, theta_D
            cmp = compare_shifted_product(fd, asc, subset, 1, rhs)
            holds = cmp >= 0 if rel == ">=" else cmp <= 0
            lhs = _report_value(fd, asc, subset, 1)
            branches.append(BranchCheck(name, BoundCheck(lhs, rhs, rel, holds, cmp == 0)))
    else:
        th = report.nonprincipal  # descending theta_1 .. theta_D
        for name in names:
            if name == "lower":
                lhs, rel = (th[0] + 1) * (th[d - 2] + 1) * (th[d - 1] + 1), ">="
            else:
                lhs, rel = (th[0] + 1) * (th[1] + 1) * (th[d - 1] + 1), "<="
            sign = exact_sign(lhs - rhs_exact)
            holds = sign >= 0 if rel == ">=" else sign <= 0
            branches.append(BranchCheck(name, BoundCheck(lhs, rhs_exact, rel, holds, sign == 0)))
    return TripleBoundResult(hyp, tuple(branches))


# -- randomized generation -----------------------------------------------------------------


def random_fraction(rng: random.Random, max_num: int = 12, max_den: int = 6) -> Fraction:
    return Fraction(rng.randint(1, max_num), rng.randint(1, max_den))


def random_system(rng: random.Random, d: int, max_tries: int = 5000) -> TridiagonalSystem:
    """Rejection sampling: draw kappa, beta_i, gamma_i; keep when all alpha_i >= 0."""
    for _ in range(max_tries):
        kappa = Fraction(rng.randint(6, 28), rng.randint(1, 2))
        beta = [kappa] + [random_fraction(rng) for _ in range(d - 1)]
        gamma = [Fraction(1)] + [random_fraction(rng) for _ in range(d - 1)]
        alpha = [Fraction(0)]
        ok = True
        for i in range(1, d):
            a = kappa - beta[i] - gamma[i - 1]
            if a < 0:
                ok = False
                break
            alpha.append(a)
        if not ok:
            continue
        a_last = kappa - gamma[d - 1]
        if a_last < 0:
            continue
        alpha.append(a_last)
        system = TridiagonalSystem(d, tuple(alpha), tuple(beta), tuple(gamma), kappa)
        if validate(system).ok:
            return system
    raise RuntimeError("random system generation failed to satisfy constraints")
