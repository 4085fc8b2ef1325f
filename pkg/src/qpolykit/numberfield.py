"""Arithmetic in real algebraic number fields, with lazy modulus splitting.

A RealAlgebraicField is Q[y] modulo a monic squarefree rational polynomial,
together with an isolating interval selecting one real root gamma of the
modulus.  Elements are polynomials in gamma of degree below the modulus.

The modulus is not required to be irreducible.  Whenever a computation
meets a zero divisor (a gcd between an element and the modulus), the
modulus is replaced by the factor that still has gamma as a root. This
"evaluate dynamically, split on demand" discipline gives field semantics
relative to gamma without ever factoring polynomials over Q.  The modulus
only ever shrinks to a divisor, so existing element representations stay
valid.

Several algebraic numbers are combined into one field with adjoin_root,
which finds a primitive element gamma_old + t*beta through a minimal
polynomial computed in the tensor ring and rewrites both generators in
terms of it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .algebraics import AlgebraicReal, _interval_eval, apply_rational_poly
from .polynomials import RationalPoly, count_real_roots, poly_gcd, squarefree_part


class RealAlgebraicField:
    """Q[y]/(modulus) with a selected real root of the modulus."""

    def __init__(self, modulus: RationalPoly, lo, hi):
        modulus = squarefree_part(modulus).monic()
        gen = AlgebraicReal(modulus, Fraction(lo), Fraction(hi))
        rat = gen.as_rational()
        if rat is not None:
            modulus = RationalPoly((-rat, 1))
            self._modulus = modulus
            self._lo = self._hi = rat
        else:
            self._modulus = gen.poly
            self._lo, self._hi = gen.lo, gen.hi
        self._pow_cache_mod: RationalPoly | None = None
        self._pow_cache: list[tuple[Fraction, ...]] = []

    @classmethod
    def rationals(cls) -> "RealAlgebraicField":
        return cls(RationalPoly((0, 1)), 0, 0)

    @classmethod
    def from_root(cls, a: AlgebraicReal) -> tuple["RealAlgebraicField", "FieldElement"]:
        f = cls(a.poly, a.lo, a.hi)
        return f, f.generator()

    # -- basic state --------------------------------------------------------

    @property
    def degree(self) -> int:
        return self._modulus.degree

    @property
    def modulus(self) -> RationalPoly:
        return self._modulus

    def generator(self) -> "FieldElement":
        return FieldElement(self, (Fraction(0), Fraction(1)))

    def generator_value(self) -> AlgebraicReal:
        if self._lo == self._hi:
            return AlgebraicReal.from_rational(self._lo)
        return AlgebraicReal(self._modulus, self._lo, self._hi, _checked=True)

    def element(self, coeffs: Sequence[Fraction | int]) -> "FieldElement":
        return FieldElement(self, tuple(Fraction(c) for c in coeffs))

    def constant(self, c: Fraction | int) -> "FieldElement":
        return FieldElement(self, (Fraction(c),))

    def __repr__(self) -> str:
        return f"RealAlgebraicField({self._modulus.to_str()} @ [{self._lo}, {self._hi}])"

    # -- generator interval -----------------------------------------------------

    def _refine_generator(self) -> None:
        if self._lo == self._hi:
            return
        mid = (self._lo + self._hi) / 2
        s = self._modulus.sign_at(mid)
        if s == 0:
            # rational generator discovered: collapse the field to degree one
            self._shrink_modulus(RationalPoly((-mid, 1)))
            self._lo = self._hi = mid
            return
        if s == self._modulus.sign_at(self._lo):
            self._lo = mid
        else:
            self._hi = mid

    def _shrink_modulus(self, new_modulus: RationalPoly) -> None:
        self._modulus = new_modulus.monic()

    # -- reduction ---------------------------------------------------------------

    def _powers(self, upto: int) -> list[tuple[Fraction, ...]]:
        """y^k mod modulus for k = 0..upto, cached for the current modulus."""
        if self._pow_cache_mod is not self._modulus:
            self._pow_cache_mod = self._modulus
            self._pow_cache = [(Fraction(1),)]
        d = self._modulus.degree
        mcoeffs = self._modulus.coeffs
        while len(self._pow_cache) <= upto:
            prev = self._pow_cache[-1]
            nxt = [Fraction(0)] * (len(prev) + 1)
            for i, c in enumerate(prev):
                nxt[i + 1] = c
            if len(nxt) > d:  # reduce the single overflow term by the monic modulus
                top = nxt.pop()
                if top != 0:
                    for i in range(d):
                        nxt[i] -= top * mcoeffs[i]
            self._pow_cache.append(tuple(nxt))
        return self._pow_cache

    def reduce(self, coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
        d = self._modulus.degree
        out = [Fraction(0)] * d
        if len(coeffs) > d:
            powers = self._powers(len(coeffs) - 1)
            for k, c in enumerate(coeffs):
                if c == 0:
                    continue
                if k < d:
                    out[k] += c
                else:
                    for i, pc in enumerate(powers[k]):
                        out[i] += c * pc
        else:
            for k, c in enumerate(coeffs):
                out[k] = c
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    # -- exact predicates -----------------------------------------------------------

    def is_zero_coeffs(self, coeffs: Sequence[Fraction]) -> bool:
        red = self.reduce(coeffs)
        if not red:
            return True
        e = RationalPoly(red)
        g = poly_gcd(e, self._modulus)
        if g.degree == 0:
            return False
        if self._root_of(g):
            self._shrink_modulus(g)
            return True
        self._shrink_modulus(self._modulus.exact_div(g))
        return False

    def _root_of(self, g: RationalPoly) -> bool:
        """Is the selected root gamma a root of g (a divisor of the modulus)?"""
        if self._lo == self._hi:
            return g.sign_at(self._lo) == 0
        return count_real_roots(g, self._lo, self._hi) == 1

    def sign_coeffs(self, coeffs: Sequence[Fraction]) -> int:
        if self.is_zero_coeffs(coeffs):
            return 0
        e = RationalPoly(self.reduce(coeffs))
        while True:
            if self._lo == self._hi:
                v = e.evaluate(self._lo)
                return (v > 0) - (v < 0)
            lo, hi = _interval_eval(e, self._lo, self._hi)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            self._refine_generator()

    def inverse_coeffs(self, coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if self.is_zero_coeffs(coeffs):
            raise ZeroDivisionError("inverse of zero field element")
        while True:
            e = RationalPoly(self.reduce(coeffs))
            g, u = _half_ext_gcd(e, self._modulus)
            if g.degree == 0:
                inv = u.scale(1 / g[0])
                return self.reduce(inv.coeffs)
            # zero divisor: gamma is a root of exactly one coprime factor
            if self._root_of(g):
                self._shrink_modulus(g)
            else:
                self._shrink_modulus(self._modulus.exact_div(g))

    def to_algebraic_coeffs(self, coeffs: Sequence[Fraction]) -> AlgebraicReal:
        red = self.reduce(coeffs)
        if not red:
            return AlgebraicReal.from_rational(0)
        return apply_rational_poly(RationalPoly(red), self.generator_value())


def _half_ext_gcd(a: RationalPoly, b: RationalPoly) -> tuple[RationalPoly, RationalPoly]:
    """(g, u) with u*a = g mod b, g = gcd(a, b) up to normalization."""
    r0, r1 = a, b
    u0, u1 = RationalPoly.one(), RationalPoly.zero()
    while not r1.is_zero:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
    return r0, u0


class FieldElement:
    """A value p(gamma) in a RealAlgebraicField; supports exact field arithmetic."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: RealAlgebraicField, coeffs: Sequence[Fraction | int]):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    # -- state ----------------------------------------------------------------

    def reduced(self) -> "FieldElement":
        return FieldElement(self.field, self.field.reduce(self.coeffs))

    def is_zero(self) -> bool:
        return self.field.is_zero_coeffs(self.coeffs)

    def sign(self) -> int:
        return self.field.sign_coeffs(self.coeffs)

    def as_fraction(self) -> Fraction | None:
        if self.is_zero():
            return Fraction(0)
        red = self.field.reduce(self.coeffs)
        if len(red) == 1:
            return red[0]
        return None

    def equals_rational(self, r: Fraction | int) -> bool:
        return (self - Fraction(r)).is_zero()

    def to_algebraic(self) -> AlgebraicReal:
        return self.field.to_algebraic_coeffs(self.coeffs)

    def approx_float(self) -> float:
        return self.to_algebraic().approx_float()

    def __repr__(self) -> str:
        red = self.field.reduce(self.coeffs)
        return f"FieldElement({RationalPoly(red).to_str('g')})"

    # -- arithmetic ---------------------------------------------------------------

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements of different fields; join them first")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, (Fraction(other),))
        raise TypeError(f"cannot mix FieldElement with {type(other).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return FieldElement(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return FieldElement(self.field, ())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return FieldElement(self.field, self.field.reduce(out))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inverse_coeffs(self.coeffs))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (FieldElement, int, Fraction)):
            return (self - other).is_zero()
        return NotImplemented

    __hash__ = None


# -- scalar helpers shared across modules ------------------------------------------


def exact_sign(x) -> int:
    """Sign of an exact scalar (Fraction, int, FieldElement, AlgebraicReal)."""
    if isinstance(x, (int, Fraction)):
        return (x > 0) - (x < 0)
    if isinstance(x, FieldElement):
        return x.sign()
    if isinstance(x, AlgebraicReal):
        return x.sign()
    raise TypeError(f"not an exact scalar: {type(x).__name__}")


def is_exact_zero(x) -> bool:
    return exact_sign(x) == 0


def scalar_as_fraction(x) -> Fraction | None:
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, FieldElement):
        return x.as_fraction()
    if isinstance(x, AlgebraicReal):
        return x.as_rational()
    raise TypeError(f"not an exact scalar: {type(x).__name__}")


def scalar_to_algebraic(x) -> AlgebraicReal:
    if isinstance(x, (int, Fraction)):
        return AlgebraicReal.from_rational(x)
    if isinstance(x, FieldElement):
        return x.to_algebraic()
    if isinstance(x, AlgebraicReal):
        return x
    raise TypeError(f"not an exact scalar: {type(x).__name__}")


def scalar_inverse(x):
    if isinstance(x, int):
        return Fraction(1, x)
    if isinstance(x, Fraction):
        return 1 / x
    if isinstance(x, FieldElement):
        return x.inverse()
    raise TypeError(f"cannot invert {type(x).__name__}")


# -- polynomials with field coefficients ---------------------------------------------
#
# Represented as plain lists, constant term first.  Only what the tridiagonal
# recurrence and the adjoin-root gcd need: ring operations, evaluation, and
# Euclidean division over a field.


def kp_trim(p: list) -> list:
    while p and is_exact_zero(p[-1]):
        p.pop()
    return p


def kp_add(p: list, q: list) -> list:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return kp_trim(out)


def kp_neg(p: list) -> list:
    return [-c for c in p]


def kp_sub(p: list, q: list) -> list:
    return kp_add(p, kp_neg(q))


def kp_mul(p: list, q: list) -> list:
    if not p or not q:
        return []
    zero = p[0] * 0
    out = [zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return kp_trim(out)

def kp_scale(p: list, c) -> list:
    return kp_trim([a * c for a in p])


def kp_eval(p: list, t):
    acc = None
    for c in reversed(p):
        acc = c if acc is None else acc * t + c
    return acc if acc is not None else 0


def kp_divmod(p: list, q: list) -> tuple[list, list]:
    """Euclidean division over a field; q's leading coefficient must be a unit.

    Intermediate coefficients may be non-canonical representations of zero;
    the returned quotient and remainder are trimmed semantically.
    """
    q = kp_trim(list(q))
    if not q:
        raise ZeroDivisionError("division by zero polynomial")
    rem = list(p)
    n, m = len(rem), len(q)
    if n < m:
        return [], kp_trim(rem)
    inv_lead = scalar_inverse(q[-1])
    quo = [q[-1] * 0] * (n - m + 1)
    for k in range(n - m, -1, -1):
        c = rem[k + m - 1] * inv_lead
        quo[k] = c
        for j, d in enumerate(q):
            rem[k + j] = rem[k + j] - c * d
    return kp_trim(quo), kp_trim(rem)


def kp_gcd_monic(p: list, q: list) -> list:
    """Monic gcd of field-coefficient polynomials (Euclid)."""
    a, b = kp_trim(list(p)), kp_trim(list(q))
    while b:
        _, r = kp_divmod(a, b)
        a, b = b, kp_trim(r)
    if a:
        a = kp_scale(a, scalar_inverse(a[-1]))
    return a


# -- adjoining roots -------------------------------------------------------------------


def adjoin_root(
    field: RealAlgebraicField, beta: AlgebraicReal
) -> tuple[RealAlgebraicField, FieldElement, FieldElement]:
    """Smallest common home for field's generator and beta.

    Returns (new_field, old_generator_image, beta_image).  The new field's
    generator is gamma_old + t*beta for the first t that makes the rewriting
    gcd linear; its modulus is the (squarefree) minimal polynomial of that
    sum over the tensor ring, so both images are exact.
    """
    rb = beta.as_rational()
    if rb is not None:
        gen = field.generator()
        return field, gen, field.constant(rb)
    if field.degree == 1:
        g0 = field.generator_value().as_rational()
        assert g0 is not None
        nf, nb = RealAlgebraicField.from_root(beta)
        return nf, nf.constant(g0), nb

    m1 = field.modulus
    pb = beta.poly
    d1, d2 = m1.degree, pb.degree
    for t in range(1, 8 * d1 * d2 + 2):
        mpoly = _tensor_min_poly(m1, pb, t)
        # isolate gamma_old + t*beta among the roots of mpoly
        glo, ghi, blo, bhi = field._lo, field._hi, beta.lo, beta.hi
        cur_b = beta
        while True:
            lo, hi = glo + t * blo, ghi + t * bhi
            if (
                lo < hi
                and mpoly.sign_at(lo) != 0
                and mpoly.sign_at(hi) != 0
                and count_real_roots(mpoly, lo, hi) == 1
            ):
                break
            field._refine_generator()
            glo, ghi = field._lo, field._hi
            cur_b = cur_b.refine()
            blo, bhi = cur_b.lo, cur_b.hi
        new_field = RealAlgebraicField(mpoly, lo, hi)
        gamma = new_field.generator()
        # rewrite: beta is the unique common root of pb(x) and m1(gamma - t*x)
        f1 = [new_field.constant(c) for c in pb.coeffs]
        f2 = _compose_linear_in_x(m1, gamma, -t)
        g = kp_gcd_monic(f1, f2)
        if len(g) == 2:  # linear: x + g0
            beta_img = -g[0]
            gen_img = gamma - t * beta_img
            return new_field, gen_img, beta_img
    raise RuntimeError("no primitive element found; adjoin_root exhausted candidates")


def field_containing(values: Sequence[AlgebraicReal]) -> tuple[RealAlgebraicField, list[FieldElement]]:
    """One field holding every given algebraic real, with their images.

    Roots are adjoined left to right; earlier images are rewritten through
    the old generator's image after every extension.  After each join the
    known vanishing relations p_v(image) = 0 are pushed through the exact
    zero test, which splits the working modulus down to (the Galois orbit
    of) the actual compositum instead of the full tensor degree.
    """
    field = RealAlgebraicField.rationals()
    elems: list[FieldElement] = []
    defining: list[RationalPoly | None] = []
    rationals = {val.as_rational() for val in values} - {None}
    for val in values:
        r = val.as_rational()
        if r is not None:
            elems.append(field.constant(r))
            defining.append(None)
            continue
        # strip rational sibling roots: smaller defining polynomials keep the
        # tensor ring (hence the working modulus) small
        p = val.poly
        for rr in rationals:
            if p.degree > 1 and p.sign_at(rr) == 0:
                p = p.exact_div(RationalPoly((-rr, 1)))
        slim = AlgebraicReal(p, val.lo, val.hi) if p is not val.poly else val
        field, old_img, beta_img = adjoin_root(field, slim)
        elems = [rebase_element(el, old_img) for el in elems]
        elems.append(beta_img)
        defining.append(p)
        for dp, el in zip(defining, elems):
            if dp is not None and not _eval_rational_poly(dp, el).is_zero():
                raise AssertionError("adjoined root lost its defining relation")
    elems = [field.element(el.coeffs) for el in elems]
    return field, elems


def _eval_rational_poly(p: RationalPoly, el: FieldElement) -> FieldElement:
    acc = el.field.constant(0)
    for c in reversed(p.coeffs):
        acc = acc * el + c
    return acc


def rebase_element(el: FieldElement, old_gen_img: FieldElement) -> FieldElement:
    """Rewrite an element of the previous field through its generator's image."""
    field = old_gen_img.field
    acc = field.constant(0)
    for c in reversed(el.coeffs):
        acc = acc * old_gen_img + c
    return acc


def _compose_linear_in_x(m: RationalPoly, gamma: FieldElement, s: int) -> list:
    """m(gamma + s*x) as a polynomial in x with FieldElement coefficients."""
    field = gamma.field
    acc: list[FieldElement] = [field.constant(0)]
    for c in reversed(m.coeffs):
        # acc <- acc*(gamma + s*x) + c
        nxt = [field.constant(0)] * (len(acc) + 1)
        for i, a in enumerate(acc):
            nxt[i] = nxt[i] + a * gamma
            nxt[i + 1] = nxt[i + 1] + a * s
        nxt[0] = nxt[0] + c
        acc = nxt
    return kp_trim(acc)


def _tensor_min_poly(m1: RationalPoly, m2: RationalPoly, t: int) -> RationalPoly:
    """Squarefree monic polynomial vanishing on a + t*b in Q[a,b]/(m1(a), m2(b)).

    This is the minimal polynomial of multiplication by (a + t*b) in the
    tensor ring, found as the first linear dependency among its powers; the
    ring is semisimple, so the result is squarefree.
    """
    d1, d2 = m1.degree, m2.degree
    dim = d1 * d2

    def reduce_mod(poly_coeffs: list[Fraction], modulus: RationalPoly) -> list[Fraction]:
        d = modulus.degree
        out = list(poly_coeffs)
        for k in range(len(out) - 1, d - 1, -1):
            c = out[k]
            if c == 0:
                continue
            out[k] = Fraction(0)
            for i in range(d):
                out[k - d + i] -= c * modulus.coeffs[i]
        del out[d:]
        while len(out) < d:
            out.append(Fraction(0))
        return out

    # elements: matrix elem[i][j] = coeff of a^i b^j
    def mul_by_gamma(e: list[list[Fraction]]) -> list[list[Fraction]]:
        # multiply by a: shift in i; by t*b: shift in j
        bya = [[Fraction(0)] * d2 for _ in range(d1 + 1)]
        for i in range(d1):
            for j in range(d2):
                bya[i + 1][j] = e[i][j]
        # reduce in a
        for j in range(d2):
            col = [bya[i][j] for i in range(d1 + 1)]
            col = reduce_mod(col, m1)
            for i in range(d1):
                bya[i][j] = col[i]
        bya = [row for row in bya[:d1]]
        byb = [[Fraction(0)] * (d2 + 1) for _ in range(d1)]
        for i in range(d1):
            for j in range(d2):
                byb[i][j + 1] = e[i][j] * t
        for i in range(d1):
            row = reduce_mod(list(byb[i]), m2)
            byb[i] = row
        return [[bya[i][j] + byb[i][j] for j in range(d2)] for i in range(d1)]

    one = [[Fraction(0)] * d2 for _ in range(d1)]
    one[0][0] = Fraction(1)
    powers: list[list[Fraction]] = []
    cur = one
    # incremental Gaussian elimination over the flattened vectors
    basis: list[tuple[list[Fraction], list[Fraction]]] = []  # (reduced vector, combo)
    k = 0
    while True:
        vec = [cur[i][j] for i in range(d1) for j in range(d2)]
        combo = [Fraction(0)] * (dim + 1)
        combo[k] = Fraction(1)
        # reduce vec against basis
        for bvec, bcombo in basis:
            piv = next((idx for idx, v in enumerate(bvec) if v != 0), None)
            if piv is None or vec[piv] == 0:
                continue
            f = vec[piv] / bvec[piv]
            for idx in range(dim):
                vec[idx] -= f * bvec[idx]
            for idx in range(dim + 1):
                combo[idx] -= f * bcombo[idx]
        if all(v == 0 for v in vec):
            mp = RationalPoly(combo[: k + 1])
            return squarefree_part(mp.monic())
        basis.append((vec, combo))
        powers.append(vec)
        cur = mul_by_gamma(cur)
        k += 1
        if k > dim:
            raise AssertionError("tensor minimal polynomial not found")
