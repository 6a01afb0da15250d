"""Finite-dimensional algebras of operators: idempotent search and locality.

Both module and complex decomposition reduce to the same question about a
subalgebra ``A`` of ``End_k(V)`` given by a spanning list of matrices: does
``A`` contain a nontrivial idempotent, or is it local?  A split is found by
factoring minimal polynomials of (pseudo-)random elements; locality is
certified by exhibiting a nilpotent, multiplicatively closed subspace of
codimension one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sympy import Poly, symbols

from . import exactla as la
from .errors import Inconclusive, SplitnessViolation

SPLIT_TRIALS = 24
_X = symbols("x")


@dataclass(frozen=True)
class LocalityCertificate:
    """Evidence that an operator algebra is local.

    ``scalars[k]`` is the unique eigenvalue of basis operator ``k``;
    ``radical`` holds matrices spanning ``span{op_k - scalars[k]}``, which was
    checked to be closed under products, nilpotent of index ``nilpotency`` and
    of codimension one.
    """

    scalars: tuple
    radical: np.ndarray
    nilpotency: int

    @property
    def radical_dim(self) -> int:
        return self.radical.shape[0]


def minimal_polynomial(m: np.ndarray, p: int) -> list[int]:
    """Monic minimal polynomial of a square matrix, coefficients low degree first."""
    n = m.shape[0]
    powers = [la.identity(n)]
    while True:
        # stop at the first power that depends on the earlier ones
        stack = np.stack([q.reshape(-1) for q in powers], axis=1)
        if la.rank(stack, p) < len(powers):
            break
        powers.append(la.matmul(powers[-1], m, p))
    deg = len(powers) - 1
    coeffs = la.solve(stack[:, :deg], (-stack[:, deg]) % p, p)
    return [int(c) for c in coeffs] + [1]


def _poly(coeffs_low_first, p: int) -> Poly:
    return Poly(list(reversed([int(c) % p for c in coeffs_low_first])), _X, modulus=p)


def _coeffs(poly: Poly, p: int) -> list[int]:
    return [int(c) % p for c in reversed(poly.all_coeffs())]


def poly_at(coeffs_low_first, m: np.ndarray, p: int) -> np.ndarray:
    n = m.shape[0]
    out = la.zeros(n, n)
    for c in reversed(coeffs_low_first):
        out = (la.matmul(out, m, p) + int(c) * la.identity(n)) % p
    return out


def factor(coeffs_low_first, p: int) -> list[tuple[list[int], int]]:
    _, facs = _poly(coeffs_low_first, p).factor_list()
    return [(_coeffs(f, p), e) for f, e in facs]


def fitting_idempotent(m: np.ndarray, p: int):
    """Idempotent polynomial in ``m`` splitting off one primary component.

    Returns None when the minimal polynomial is a power of one irreducible,
    along with the degree of that irreducible.
    """
    mp = minimal_polynomial(m, p)
    facs = factor(mp, p)
    if len(facs) < 2:
        return None, (len(facs[0][0]) - 1 if facs else 1)
    f0, e0 = facs[0]
    q1 = _poly(f0, p) ** e0
    q2 = _poly(mp, p).exquo(q1)
    s, t, h = q1.gcdex(q2)
    # s*q1 + t*q2 = 1, so t*q2 is 1 on ker q1(m) and 0 on ker q2(m)
    e = poly_at(_coeffs(t * q2, p), m, p)
    return e, 1


def combine(coeffs, ops: np.ndarray, p: int) -> np.ndarray:
    return np.tensordot(np.asarray(coeffs, dtype=np.int64), ops, 1) % p


def independent(ops: np.ndarray, p: int) -> list:
    """Indices of a maximal linearly independent subset of ``ops``."""
    if not ops.shape[0]:
        return []
    _, _, pivots = la.rref(ops.reshape(ops.shape[0], -1).T, p)
    return [int(c) for c in pivots]


def find_split(ops: np.ndarray, p: int, rng: np.random.Generator, trials: int = SPLIT_TRIALS):
    """A nontrivial idempotent in the span of ``ops``, or a locality certificate.

    Returns ``("split", coeffs, matrix)`` or ``("local", certificate)``.
    Raises SplitnessViolation if the algebra looks local with a residue field
    bigger than F_p, and Inconclusive if neither outcome can be certified.
    """
    k, n, _ = ops.shape
    nonsplit_seen = False
    basis = ops[independent(ops, p)]
    candidates = list(basis)
    for _ in range(trials):
        candidates.append(combine(rng.integers(0, p, size=len(basis)), basis, p))
    for m in candidates:
        e, deg = fitting_idempotent(m, p)
        if e is not None:
            coeffs = la.solve(ops.reshape(k, -1).T, e.reshape(-1), p)
            if coeffs is None:
                raise Inconclusive("operator span is not closed under multiplication")
            return "split", coeffs, e
        if deg > 1:
            nonsplit_seen = True
    if nonsplit_seen:
        raise SplitnessViolation("endomorphism algebra has a residue field larger than F_p")
    return "local", locality_certificate(ops, p)


def locality_certificate(ops: np.ndarray, p: int) -> LocalityCertificate:
    k, n, _ = ops.shape
    # the eigenvalue is linear on a local split algebra, so compute it on a
    # basis and extend
    idx = independent(ops, p)
    base = []
    for i in idx:
        facs = factor(minimal_polynomial(ops[i], p), p)
        if len(facs) != 1 or len(facs[0][0]) != 2:
            raise Inconclusive(f"basis operator {i} has no single eigenvalue")
        base.append((-facs[0][0][0]) % p)
    flat_ops = ops.reshape(k, -1)
    expand = la.solve(flat_ops[idx].T, flat_ops.T, p) if idx else la.zeros(0, k)
    scalars = [int(v) for v in la.matmul(np.asarray(base, dtype=np.int64).reshape(1, -1), expand, p)[0]] if idx else [0] * k
    shifted = [(ops[i] - scalars[i] * la.identity(n)) % p for i in range(k)]
    flat = np.stack([s.reshape(-1) for s in shifted]) if shifted else la.zeros(0, n * n)
    basis = la.row_basis(flat, p)
    if basis.shape[0] != la.rank(ops.reshape(k, -1), p) - 1:
        raise Inconclusive("candidate radical does not have codimension one")
    rad = basis.reshape(-1, n, n)
    # closed under products and nilpotent: powers of the span shrink to zero
    power = rad
    index = 1
    while power.shape[0]:
        prods = np.stack([la.matmul(a, b, p).reshape(-1) for a in power for b in rad])
        if not la.in_span(prods.T, basis.T, p):
            raise Inconclusive("candidate radical is not closed under products")
        power = la.row_basis(prods, p).reshape(-1, n, n)
        index += 1
        if index > n + 1:
            raise Inconclusive("candidate radical is not nilpotent")
    return LocalityCertificate(tuple(scalars), rad, index)


def check_certificate(cert: LocalityCertificate, ops: np.ndarray, p: int) -> bool:
    """Recheck a certificate against the operators it claims to describe."""
    k, n, _ = ops.shape
    rad = cert.radical
    flat = rad.reshape(rad.shape[0], n * n)
    if la.rank(flat, p) != la.rank(ops.reshape(k, -1), p) - 1:
        return False
    for i, lam in enumerate(cert.scalars):
        shifted = (ops[i] - lam * la.identity(n)) % p
        if not la.in_span(shifted.reshape(-1), flat.T, p):
            return False
    power = rad
    for _ in range(cert.nilpotency):
        if not power.shape[0]:
            return True
        prods = np.stack([la.matmul(a, b, p).reshape(-1) for a in power for b in rad])
        power = la.row_basis(prods, p).reshape(-1, n, n)
    return not power.shape[0]
