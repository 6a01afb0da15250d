"""Pairings on Grothendieck groups of perfect complexes.

The integer form counts homotopy classes of maps; the Laurent form records
them over all shifts at once as an element of Z[t, 1/t].  Neither group is
built explicitly: formal sums of complexes plus these pairings carry all the
checkable content.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import homotopy as ho
from .errors import NotSymmetric


def _clean(coeffs: dict) -> dict:
    return {int(k): int(v) for k, v in coeffs.items() if v}


@dataclass(frozen=True)
class LaurentValue:
    """Finitely supported Laurent polynomial, stored as exponent -> coefficient."""

    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _clean(self.coeffs))

    @classmethod
    def const(cls, c: int) -> "LaurentValue":
        return cls({0: c})

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "LaurentValue":
        return cls({k: c})

    @classmethod
    def coerce(cls, v) -> "LaurentValue":
        return v if isinstance(v, LaurentValue) else cls.const(int(v))

    def is_zero(self) -> bool:
        return not self.coeffs

    def bar(self) -> "LaurentValue":
        """The involution t -> 1/t."""
        return LaurentValue({-k: c for k, c in self.coeffs.items()})

    def shift(self, k: int) -> "LaurentValue":
        """Multiply by t^k."""
        return LaurentValue({e + k: c for e, c in self.coeffs.items()})

    def at_one(self) -> int:
        return sum(self.coeffs.values())

    def __add__(self, other):
        other = LaurentValue.coerce(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return LaurentValue(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentValue({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-LaurentValue.coerce(other))

    def __rsub__(self, other):
        return LaurentValue.coerce(other) - self

    def __mul__(self, other):
        other = LaurentValue.coerce(other)
        out: dict = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return LaurentValue(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = LaurentValue.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentValue.const(other)
        if not isinstance(other, LaurentValue):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                power = "t" if k == 1 else f"t^{k}"
                body = power if mag == 1 else f"{mag}*{power}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentValue({self})"


T = LaurentValue.monomial(1)


@dataclass(frozen=True, eq=False)
class RationalValue:
    """Unreduced quotient of Laurent polynomials; equality by cross-multiplication."""

    num: LaurentValue
    den: LaurentValue = field(default_factory=lambda: LaurentValue.const(1))

    def __post_init__(self):
        object.__setattr__(self, "num", LaurentValue.coerce(self.num))
        object.__setattr__(self, "den", LaurentValue.coerce(self.den))
        if self.den.is_zero():
            raise ZeroDivisionError("rational value with zero denominator")

    @classmethod
    def coerce(cls, v) -> "RationalValue":
        return v if isinstance(v, RationalValue) else cls(LaurentValue.coerce(v))

    def bar(self) -> "RationalValue":
        return RationalValue(self.num.bar(), self.den.bar())

    def __add__(self, other):
        o = RationalValue.coerce(other)
        return RationalValue(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalValue(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalValue.coerce(other))

    def __rsub__(self, other):
        return RationalValue.coerce(other) - self

    def __mul__(self, other):
        o = RationalValue.coerce(other)
        return RationalValue(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RationalValue.coerce(other)
        return RationalValue(self.num * o.den, self.den * o.num)

    def __eq__(self, other):
        if isinstance(other, (int, LaurentValue)):
            other = RationalValue.coerce(other)
        if not isinstance(other, RationalValue):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __str__(self) -> str:
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RationalValue{self}"


def sigma(r: int) -> LaurentValue:
    """1 + t + ... + t^r."""
    return LaurentValue({k: 1 for k in range(r + 1)})


@dataclass
class FormalSum:
    """Integer combination of indecomposable complexes, isomorphic terms merged."""

    terms: list = field(default_factory=list)  # [(PerfectComplex, int)]

    @classmethod
    def of(cls, *pairs) -> "FormalSum":
        out = cls()
        for c, k in pairs:
            out.add(c, k)
        return out

    def add(self, c: ho.PerfectComplex, k: int = 1) -> "FormalSum":
        m = ho.minimize(c)
        if m.is_zero() or not k:
            return self
        for idx, (d, j) in enumerate(self.terms):
            if d.alg is m.alg and ho.is_isomorphic(d, m):
                self.terms[idx] = (d, j + k)
                break
        else:
            self.terms.append((m, k))
        self.terms = [(d, j) for d, j in self.terms if j]
        return self

    def coefficient_sum(self) -> int:
        return sum(k for _, k in self.terms)

    def __len__(self) -> int:
        return len(self.terms)


def _as_sum(x) -> FormalSum:
    return x if isinstance(x, FormalSum) else FormalSum.of((x, 1))


def pairing(a, b) -> int:
    """Bilinear extension of dim Hom_K over formal sums (or single complexes)."""
    a, b = _as_sum(a), _as_sum(b)
    total = 0
    for c, i in a.terms:
        for d, j in b.terms:
            total += i * j * ho.hom_dim(c, d)
    return total


def shift_window(c: ho.PerfectComplex, d: ho.PerfectComplex) -> range:
    """Shifts i for which Hom(c, d[i]) can be nonzero: the degree spans must overlap."""
    if c.is_zero() or d.is_zero():
        return range(0)
    return range(c.lo - d.hi, c.hi - d.lo + 1)


def pairing_t(c: ho.PerfectComplex, d: ho.PerfectComplex) -> LaurentValue:
    """Sum over i of t^i dim Hom_K(c, d[i])."""
    ho.same_algebra(c, d)
    c, d = ho.minimize(c), ho.minimize(d)
    out = {}
    for i in shift_window(c, d):
        out[i] = ho.hom_dim(c, ho.shift(d, i))
    return LaurentValue(out)


def pairing_t_sums(a, b) -> LaurentValue:
    a, b = _as_sum(a), _as_sum(b)
    total = LaurentValue()
    for c, i in a.terms:
        for d, j in b.terms:
            total = total + pairing_t(c, d) * (i * j)
    return total


def hat_element(tri) -> FormalSum:
    """[Z] + [X] - sum of the indecomposable summands of Y, with multiplicity."""
    out = FormalSum.of((tri.z, 1), (tri.x, 1))
    for y, mult in tri.y_summands():
        out.add(y, -mult)
    return out


def hermitian_check(c: ho.PerfectComplex, d: ho.PerfectComplex) -> bool:
    if not c.alg.is_symmetric:
        raise NotSymmetric(f"{c.alg.name} has no certified symmetrizing form")
    return pairing_t(c, d) == pairing_t(d, c).bar()


def dual_check(tri, m: ho.PerfectComplex) -> LaurentValue:
    """The Laurent pairing of m against the hat element of the triangle."""
    return pairing_t_sums(m, hat_element(tri))


def predicted_pairing(m: int, n: int, base, same_component: bool) -> RationalValue:
    """Closed-form value of the Laurent pairing of C_m with D_n from that of C_0 with D_0."""
    if m < 0 or n < 0:
        raise ValueError("positions along the sectional path are non-negative")
    base = RationalValue.coerce(base)
    factor = RationalValue(sigma(m) * sigma(n).bar())
    if not same_component:
        return factor * base
    mu = max(m, n)
    one = LaurentValue.const(1)
    correction = RationalValue((one + T) * (one - T**mu), one - T ** (mu + 1))
    return factor * (base - correction)
