"""Bounded complexes of projective modules and their homotopy category.

Conventions used throughout:

* Homological grading, ``d_n : C_n -> C_{n-1}``.
* A term ``C_n`` is an ordered list of idempotent indices ``(i_1, ..., i_m)``
  standing for ``Λe_{i_1} ⊕ ... ⊕ Λe_{i_m}``.
* Maps between such sums are *element matrices*: arrays of shape
  ``(m_src, m_tgt, dim Λ)`` whose ``(a, b)`` entry lies in ``e_{i_a} Λ e_{j_b}``.
  A row vector ``(x_a)`` is sent to ``(Σ_a x_a · A[a, b])_b``, so composing
  "first A then B" is the element-matrix product ``A · B``.
* A chain map ``F`` from ``C`` to ``D`` satisfies ``D^C_n F_{n-1} = F_n D^D_n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import endo
from . import exactla as la
from . import modrep as mr
from .algebra import ValidatedAlgebra, require_self_injective
from .errors import AlgebraMismatch, DimensionMismatch, Inconclusive, SplitnessViolation, ZeroModule

ISO_TRIALS = 8


# -- element matrices -------------------------------------------------------


def ezeros(alg: ValidatedAlgebra, rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols, alg.dim), dtype=np.int64)


def _needs_objects(p: int, inner: int) -> bool:
    return inner * (p - 1) ** 2 > 2**62


def emul(alg: ValidatedAlgebra, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Element-matrix product; either factor may carry one leading batch axis."""
    p = alg.p
    if a.shape[-2] != b.shape[-3]:
        raise DimensionMismatch(f"cannot compose element matrices {a.shape} and {b.shape}")
    batch = a.shape[:-3] or b.shape[:-3]
    out_shape = batch + (a.shape[-3], b.shape[-2], alg.dim)
    if a.shape[-2] == 0 or 0 in out_shape:
        return np.zeros(out_shape, dtype=np.int64)
    T = alg.T
    if _needs_objects(p, max(alg.dim, a.shape[-2] * alg.dim)):
        a, b, T = a.astype(object), b.astype(object), T.astype(object)
    x = np.einsum("...abi,ijk->...abjk", a, T) % p
    if b.ndim == 4:
        out = np.einsum("abjk,ubcj->uack", x, b)
    else:
        out = np.einsum("...abjk,bcj->...ack", x, b)
    return (out % p).astype(np.int64)


def eidentity(alg: ValidatedAlgebra, types) -> np.ndarray:
    m = len(types)
    out = ezeros(alg, m, m)
    for a, t in enumerate(types):
        out[a, a, alg.idempotents[t]] = 1
    return out


def etop(alg: ValidatedAlgebra, a: np.ndarray, src, tgt) -> np.ndarray:
    """Scalar matrix of the map modulo the radical."""
    out = la.zeros(len(src), len(tgt))
    for i, s in enumerate(src):
        for j, t in enumerate(tgt):
            if s == t:
                out[i, j] = a[i, j, alg.idempotents[s]]
    return out % alg.p


def elift(alg: ValidatedAlgebra, scalars: np.ndarray, src, tgt) -> np.ndarray:
    """Element matrix with entry ``scalars[a, b] e_i`` where the types agree."""
    out = ezeros(alg, len(src), len(tgt))
    for i, s in enumerate(src):
        for j, t in enumerate(tgt):
            if s == t:
                out[i, j, alg.idempotents[s]] = scalars[i, j] % alg.p
            elif scalars[i, j] % alg.p:
                raise DimensionMismatch("scalar entry between different simple types")
    return out


def eplain(alg: ValidatedAlgebra, a: np.ndarray, src, tgt) -> np.ndarray:
    """k-linear matrix (column convention) of an element matrix."""
    dsrc = [alg.projective_dim(t) for t in src]
    dtgt = [alg.projective_dim(t) for t in tgt]
    out = la.zeros(sum(dtgt), sum(dsrc))
    ro = np.concatenate([[0], np.cumsum(dtgt)]).astype(int)
    co = np.concatenate([[0], np.cumsum(dsrc)]).astype(int)
    for i, s in enumerate(src):
        for j, t in enumerate(tgt):
            if a[i, j].any():
                out[ro[j] : ro[j + 1], co[i] : co[i + 1]] = alg.right_block(a[i, j], s, t)
    return out


def einverse(alg: ValidatedAlgebra, v: np.ndarray, types) -> np.ndarray:
    """Inverse of an element matrix whose top is invertible."""
    top = etop(alg, v, types, types)
    v0 = elift(alg, la.inverse(top, alg.p), types, types)
    ident = eidentity(alg, types)
    r = (ident - emul(alg, v0, v)) % alg.p
    total = ident.copy()
    power = ident
    for _ in range(alg.radical_nilpotency + 1):
        power = emul(alg, power, r)
        if not power.any():
            break
        total = (total + power) % alg.p
    return emul(alg, total, v0)


def eis_radical(alg: ValidatedAlgebra, a: np.ndarray, src, tgt) -> bool:
    return not etop(alg, a, src, tgt).any()


# -- complexes --------------------------------------------------------------


class PerfectComplex:
    """A bounded complex of finitely generated projective modules."""

    def __init__(self, alg: ValidatedAlgebra, types: dict, diffs: dict | None = None, check: bool = True):
        self.alg = alg
        self.types = {int(n): tuple(int(i) for i in t) for n, t in sorted(types.items()) if len(t)}
        for t in self.types.values():
            for i in t:
                if not 0 <= i < alg.n_simples:
                    raise DimensionMismatch(f"idempotent index {i} out of range")
        diffs = diffs or {}
        self.diffs = {}
        for n in self.types:
            if n - 1 in self.types:
                shape = (len(self.types[n]), len(self.types[n - 1]), alg.dim)
                d = np.asarray(diffs.get(n, np.zeros(shape, dtype=np.int64)), dtype=np.int64) % alg.p
                if d.shape != shape:
                    raise DimensionMismatch(f"differential {n} has shape {d.shape}, expected {shape}")
                self.diffs[n] = d
        for n, d in diffs.items():
            if int(n) not in self.diffs and np.asarray(d).size and np.asarray(d).any():
                raise DimensionMismatch(f"nonzero differential {n} between missing terms")
        if check:
            self.check()

    def __repr__(self):
        shape = ", ".join(f"{n}:{self.multiplicities(n)}" for n in self.types)
        return f"PerfectComplex({self.alg.name}; {shape})"

    @property
    def p(self) -> int:
        return self.alg.p

    def term(self, n: int) -> tuple:
        return self.types.get(n, ())

    def diff(self, n: int) -> np.ndarray:
        if n in self.diffs:
            return self.diffs[n]
        return ezeros(self.alg, len(self.term(n)), len(self.term(n - 1)))

    def is_zero(self) -> bool:
        return not self.types

    @property
    def lo(self) -> int:
        return min(self.types) if self.types else 0

    @property
    def hi(self) -> int:
        return max(self.types) if self.types else -1

    @property
    def length(self) -> int:
        return self.hi - self.lo + 1 if self.types else 0

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def multiplicities(self, n: int) -> tuple:
        t = self.term(n)
        return tuple(t.count(i) for i in range(self.alg.n_simples))

    @property
    def terms(self) -> dict:
        return {n: self.multiplicities(n) for n in self.types}

    def term_dim(self, n: int) -> int:
        return sum(self.alg.projective_dim(t) for t in self.term(n))

    def total_dim(self) -> int:
        return sum(self.term_dim(n) for n in self.types)

    def check(self) -> None:
        alg = self.alg
        for n in self.types:
            d = self.diff(n)
            for a, s in enumerate(self.term(n)):
                for b, t in enumerate(self.term(n - 1)):
                    if d[a, b].any() and not la.in_span(d[a, b], alg.corners[(s, t)][0].T, alg.p):
                        raise DimensionMismatch(f"entry ({a},{b}) of d_{n} is not in e_{s}Λe_{t}")
            if n - 1 in self.types and n - 2 in self.types:
                if emul(alg, d, self.diff(n - 1)).any():
                    raise DimensionMismatch(f"d_{n - 1} ∘ d_{n} is not zero")

    def plain_diff(self, n: int) -> np.ndarray:
        return eplain(self.alg, self.diff(n), self.term(n), self.term(n - 1))

    def is_minimal(self) -> bool:
        return all(eis_radical(self.alg, d, self.term(n), self.term(n - 1)) for n, d in self.diffs.items())

    def same_shape(self, other: "PerfectComplex") -> bool:
        return self.terms == other.terms


def same_algebra(c, d) -> None:
    if c.alg is not d.alg:
        if c.alg.p != d.alg.p:
            raise AlgebraMismatch(f"characteristics differ: {c.alg.p} vs {d.alg.p}")
        if not (c.alg.name == d.alg.name and np.array_equal(c.alg.T, d.alg.T)):
            raise AlgebraMismatch(f"complexes over different algebras {c.alg.name!r}, {d.alg.name!r}")


def zero_complex(alg: ValidatedAlgebra) -> PerfectComplex:
    return PerfectComplex(alg, {}, {}, check=False)


def stalk(alg: ValidatedAlgebra, types, degree: int = 0) -> PerfectComplex:
    """Projective module ⊕Λe_i concentrated in one degree."""
    return PerfectComplex(alg, {degree: tuple(types)}, {}, check=False)


def regular_complex(alg: ValidatedAlgebra, degree: int = 0) -> PerfectComplex:
    """Λ itself in one degree (as the sum of all indecomposable projectives)."""
    return stalk(alg, range(alg.n_simples), degree)


def shift(c: PerfectComplex, j: int) -> PerfectComplex:
    """(C[j])_n = C_{n-j}, differential multiplied by (-1)^j."""
    sign = -1 if j % 2 else 1
    types = {n + j: t for n, t in c.types.items()}
    diffs = {n + j: (sign * d) % c.p for n, d in c.diffs.items()}
    return PerfectComplex(c.alg, types, diffs, check=False)


def direct_sum(*cs: PerfectComplex) -> PerfectComplex:
    alg = cs[0].alg
    for c in cs[1:]:
        same_algebra(cs[0], c)
    degrees = sorted({n for c in cs for n in c.types})
    types = {n: sum((c.term(n) for c in cs), ()) for n in degrees}
    diffs = {}
    for n in degrees:
        if n - 1 not in types:
            continue
        out = ezeros(alg, len(types[n]), len(types[n - 1]))
        r = q = 0
        for c in cs:
            a, b = len(c.term(n)), len(c.term(n - 1))
            out[r : r + a, q : q + b] = c.diff(n)
            r, q = r + a, q + b
        diffs[n] = out
    return PerfectComplex(alg, types, diffs, check=False)


# -- chain maps -------------------------------------------------------------


@dataclass(eq=False)
class ChainMap:
    source: PerfectComplex
    target: PerfectComplex
    maps: dict = field(default_factory=dict)

    def at(self, n: int) -> np.ndarray:
        if n in self.maps:
            return self.maps[n]
        return ezeros(self.source.alg, len(self.source.term(n)), len(self.target.term(n)))

    def then(self, other: "ChainMap") -> "ChainMap":
        alg = self.source.alg
        degrees = set(self.source.types) & set(other.target.types)
        return ChainMap(self.source, other.target, {n: emul(alg, self.at(n), other.at(n)) for n in degrees})

    def scale_add(self, other: "ChainMap", c: int = 1) -> "ChainMap":
        p = self.source.p
        degrees = set(self.maps) | set(other.maps)
        return ChainMap(self.source, self.target, {n: (self.at(n) + c * other.at(n)) % p for n in degrees})

    def is_chain_map(self) -> bool:
        alg = self.source.alg
        for n in set(self.source.types) | set(self.target.types):
            lhs = emul(alg, self.source.diff(n), self.at(n - 1))
            rhs = emul(alg, self.at(n), self.target.diff(n))
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def is_zero(self) -> bool:
        return not any(m.any() for m in self.maps.values())

    def plain(self) -> np.ndarray:
        """Block-diagonal k-linear matrix over all degrees of source and target."""
        alg = self.source.alg
        degrees = sorted(set(self.source.types) | set(self.target.types))
        blocks = [eplain(alg, self.at(n), self.source.term(n), self.target.term(n)) for n in degrees]
        rows = sum(b.shape[0] for b in blocks)
        cols = sum(b.shape[1] for b in blocks)
        out = la.zeros(rows, cols)
        r = c = 0
        for b in blocks:
            out[r : r + b.shape[0], c : c + b.shape[1]] = b
            r, c = r + b.shape[0], c + b.shape[1]
        return out

    def is_isomorphism(self) -> bool:
        alg = self.source.alg
        if not self.source.same_shape(self.target):
            return False
        for n in self.source.types:
            top = etop(alg, self.at(n), self.source.term(n), self.target.term(n))
            if not la.is_invertible(top, alg.p):
                return False
        return True


def identity_map(c: PerfectComplex) -> ChainMap:
    return ChainMap(c, c, {n: eidentity(c.alg, t) for n, t in c.types.items()})


def zero_map(c: PerfectComplex, d: PerfectComplex) -> ChainMap:
    return ChainMap(c, d, {})


def shift_map(f: ChainMap, j: int) -> ChainMap:
    return ChainMap(shift(f.source, j), shift(f.target, j), {n + j: m for n, m in f.maps.items()})


def cone(f: ChainMap) -> PerfectComplex:
    """Mapping cone: term_n = src_{n-1} ⊕ tgt_n, differential [[-d_src, f], [0, d_tgt]]."""
    s, t = f.source, f.target
    same_algebra(s, t)
    alg = s.alg
    degrees = sorted({n + 1 for n in s.types} | set(t.types))
    types = {n: s.term(n - 1) + t.term(n) for n in degrees}
    diffs = {}
    for n in degrees:
        if n - 1 not in types:
            continue
        a1, a2 = len(s.term(n - 1)), len(t.term(n))
        b1, b2 = len(s.term(n - 2)), len(t.term(n - 1))
        d = ezeros(alg, a1 + a2, b1 + b2)
        d[:a1, :b1] = (-s.diff(n - 1)) % alg.p
        d[:a1, b1:] = f.at(n - 1)
        d[a1:, b1:] = t.diff(n)
        diffs[n] = d
    return PerfectComplex(alg, types, diffs, check=True)


# -- minimisation -----------------------------------------------------------


@dataclass(eq=False)
class MinimalModel:
    """A minimal complex with homotopy inverse maps to and from the original."""

    complex: PerfectComplex
    projection: ChainMap  # original -> minimal
    inclusion: ChainMap  # minimal -> original


def _find_unit(alg, types, diffs):
    for n in sorted(diffs):
        d = diffs[n]
        src, tgt = types[n], types[n - 1]
        for a, s in enumerate(src):
            for b, t in enumerate(tgt):
                if s == t and d[a, b, alg.idempotents[s]] % alg.p:
                    return n, a, b
    return None


def minimize_with_maps(c: PerfectComplex) -> MinimalModel:
    """Cancel unit entries one at a time (Gaussian elimination of contractible summands)."""
    alg, p = c.alg, c.p
    types = {n: list(t) for n, t in c.types.items()}
    diffs = {n: d.copy() for n, d in c.diffs.items()}
    proj = {n: eidentity(alg, t) for n, t in c.types.items()}  # C_n -> current_n
    incl = {n: eidentity(alg, t) for n, t in c.types.items()}  # current_n -> C_n
    while True:
        found = _find_unit(alg, types, diffs)
        if found is None:
            break
        n, a, b = found
        d = diffs[n]
        rows = [r for r in range(d.shape[0]) if r != a]
        cols = [q for q in range(d.shape[1]) if q != b]
        uinv = alg.unit_inverse(d[a, b]).reshape(1, 1, -1)
        beta = d[a : a + 1, cols]
        gamma = d[rows][:, b : b + 1]
        delta = d[rows][:, cols]
        ug = emul(alg, gamma, uinv)  # γu⁻¹
        new_d = (delta - emul(alg, ug, beta)) % p
        ub = emul(alg, uinv, beta)  # u⁻¹β

        # step maps on degrees n and n-1
        f_n = eidentity(alg, types[n])[:, rows]
        f_n1 = eidentity(alg, types[n - 1])[:, cols]
        f_n1[b] = (-ub[0]) % p
        g_n = eidentity(alg, types[n])[rows]
        g_n[:, a] = (-ug[:, 0]) % p
        g_n1 = eidentity(alg, types[n - 1])[cols]

        proj[n] = emul(alg, proj[n], f_n)
        proj[n - 1] = emul(alg, proj[n - 1], f_n1)
        incl[n] = emul(alg, g_n, incl[n])
        incl[n - 1] = emul(alg, g_n1, incl[n - 1])

        diffs[n] = new_d
        if n + 1 in diffs:
            diffs[n + 1] = diffs[n + 1][:, rows]
        if n - 1 in diffs:
            diffs[n - 1] = diffs[n - 1][cols]
        types[n] = [types[n][r] for r in rows]
        types[n - 1] = [types[n - 1][q] for q in cols]
    keep = {n: tuple(t) for n, t in types.items() if t}
    minimal = PerfectComplex(alg, keep, {n: d for n, d in diffs.items() if n in keep and n - 1 in keep}, check=False)
    projection = ChainMap(c, minimal, {n: m for n, m in proj.items() if n in keep})
    inclusion = ChainMap(minimal, c, {n: m for n, m in incl.items() if n in keep})
    return MinimalModel(minimal, projection, inclusion)


def minimize(c: PerfectComplex) -> PerfectComplex:
    return minimize_with_maps(c).complex


# -- homology ---------------------------------------------------------------


def term_module(c: PerfectComplex, n: int) -> mr.ModuleRep:
    return mr.projective_sum(c.alg, c.term(n))


def homology_data(c: PerfectComplex, n: int) -> mr.Subquotient:
    p = c.p
    ambient = term_module(c, n)
    dim = ambient.dim
    if dim == 0:
        return mr.subquotient(ambient, la.zeros(0, 0), la.zeros(0, 0))
    if n - 1 in c.types:
        ker = la.kernel_basis(c.plain_diff(n), p).T.copy()
    else:
        ker = la.identity(dim)
    if n + 1 in c.types:
        img = la.column_basis(c.plain_diff(n + 1), p)
    else:
        img = la.zeros(dim, 0)
    return mr.subquotient(ambient, ker, img)


def homology(c: PerfectComplex, n: int) -> mr.ModuleRep:
    """H_n(C) = ker d_n / im d_{n+1} with the induced action."""
    return homology_data(c, n).module


def homology_dims(c: PerfectComplex) -> dict:
    return {n: homology(c, n).dim for n in c.degrees()}


def homology_support(c: PerfectComplex) -> list:
    return [n for n in c.degrees() if homology(c, n).dim]


def induced_homology_map(f: ChainMap, n: int) -> mr.ModHom:
    src = homology_data(f.source, n)
    tgt = homology_data(f.target, n)
    alg = f.source.alg
    plain = eplain(alg, f.at(n), f.source.term(n), f.target.term(n))
    if src.module.dim == 0 or tgt.module.dim == 0:
        return mr.ModHom(src.module, tgt.module, la.zeros(tgt.module.dim, src.module.dim))
    moved = la.matmul(plain, src.complement, alg.p)
    return mr.ModHom(src.module, tgt.module, tgt.coordinates(moved))


# -- Hom in the homotopy category ------------------------------------------


class HomotopyHomSpace:
    """Degree-zero chain maps C -> D modulo null-homotopic maps.

    Chain maps are coordinatised by one corner-basis coordinate vector per
    block ``(a, b)`` of each ``F_n``; ``chainmap_basis`` spans all chain maps
    and ``homotopy_image`` spans the null-homotopic ones inside that space.
    """

    def __init__(self, c: PerfectComplex, d: PerfectComplex):
        same_algebra(c, d)
        self.source, self.target = c, d
        alg, p = c.alg, c.p
        self.alg = alg
        self.layout = []  # (degree, a, b, offset, size)
        off = 0
        self.degrees = [n for n in c.types if n in d.types]
        for n in self.degrees:
            for a, s in enumerate(c.term(n)):
                for b, t in enumerate(d.term(n)):
                    size = alg.corner_dim(s, t)
                    if size:
                        self.layout.append((n, a, b, off, size))
                        off += size
        self.n_coords = off
        self._phi = {n: self._unit_maps(n) for n in self.degrees}
        self._gather = self._gather_indices()

        eq_blocks = []
        for n in sorted(set(c.types) | set(d.types)):
            if n not in c.types or n - 1 not in d.types:
                continue
            cols = []
            if n - 1 in self._phi:
                lo, hi, phi = self._phi[n - 1]
                contrib = emul(alg, c.diff(n), phi)
                block = np.zeros((self.n_coords, contrib[0].size), dtype=np.int64)
                block[lo:hi] = contrib.reshape(phi.shape[0], -1)
                cols.append(block)
            if n in self._phi:
                lo, hi, phi = self._phi[n]
                contrib = emul(alg, phi, d.diff(n))
                block = np.zeros((self.n_coords, contrib[0].size), dtype=np.int64)
                block[lo:hi] = (-contrib.reshape(phi.shape[0], -1)) % p
                cols.append(block)
            if cols:
                eq_blocks.append(sum(cols) % p)
        if self.n_coords == 0:
            self.chainmap_basis = la.zeros(0, 0)
        elif eq_blocks:
            self.chainmap_basis = la.kernel_basis(np.hstack(eq_blocks).T, p)
        else:
            self.chainmap_basis = la.identity(self.n_coords)
        self.homotopy_image = self._homotopy_image()
        self.nullhomotopic_subspace_dim = la.rank(self.homotopy_image, p) if self.homotopy_image.size else 0
        if self.chainmap_basis.shape[0]:
            reps = la.complement_columns(self.homotopy_image.T, self.chainmap_basis.T, p)
            self.representatives = reps.T.copy()
        else:
            self.representatives = la.zeros(0, self.n_coords)
        self.dim = self.chainmap_basis.shape[0] - self.nullhomotopic_subspace_dim

    def _unit_maps(self, n):
        entries = [e for e in self.layout if e[0] == n]
        if not entries:
            return (0, 0, np.zeros((0, len(self.source.term(n)), len(self.target.term(n)), self.alg.dim), dtype=np.int64))
        lo = entries[0][3]
        hi = entries[-1][3] + entries[-1][4]
        phi = np.zeros((hi - lo, len(self.source.term(n)), len(self.target.term(n)), self.alg.dim), dtype=np.int64)
        for _, a, b, off, size in entries:
            basis = self.alg.corners[(self.source.term(n)[a], self.target.term(n)[b])][0]
            phi[off - lo : off - lo + size, a, b] = basis
        return lo, hi, phi

    def _gather_indices(self) -> dict:
        # per degree: coordinate positions and the flat entries of F_n they read
        pos, flat = {}, {}
        alg = self.alg
        for n, a, b, off, size in self.layout:
            piv = np.asarray(alg.corners[(self.source.term(n)[a], self.target.term(n)[b])][1], dtype=np.int64)
            width = len(self.target.term(n))
            pos.setdefault(n, []).append(np.arange(off, off + size))
            flat.setdefault(n, []).append((a * width + b) * alg.dim + piv)
        return {n: (np.concatenate(pos[n]), np.concatenate(flat[n])) for n in pos}

    def _homotopy_image(self) -> np.ndarray:
        c, d, alg, p = self.source, self.target, self.alg, self.alg.p
        blocks = []
        for m in c.types:
            if m + 1 not in d.types:
                continue
            src, tgt = c.term(m), d.term(m + 1)
            hs = []
            for a, s in enumerate(src):
                for b, t in enumerate(tgt):
                    for vec in alg.corners[(s, t)][0]:
                        h = ezeros(alg, len(src), len(tgt))
                        h[a, b] = vec
                        hs.append(h)
            if not hs:
                continue
            batch = np.stack(hs)
            maps = {}
            if m + 1 in c.types:
                maps[m + 1] = emul(alg, c.diff(m + 1), batch)
            if m in d.types:
                maps[m] = emul(alg, batch, d.diff(m + 1))
            blocks.append(self.coords_batch(maps, len(hs)))
        if not blocks:
            return la.zeros(0, self.n_coords)
        return np.vstack(blocks)

    # conversions
    def coords_batch(self, maps: dict, count: int) -> np.ndarray:
        """Coordinates of ``count`` maps given per degree as stacked element matrices."""
        out = np.zeros((count, self.n_coords), dtype=np.int64)
        for n, (pos, flat) in self._gather.items():
            if n in maps:
                out[:, pos] = np.asarray(maps[n]).reshape(count, -1)[:, flat]
        return out % self.alg.p

    def coords_of(self, maps: dict) -> np.ndarray:
        out = np.zeros(self.n_coords, dtype=np.int64)
        for n, (pos, flat) in self._gather.items():
            if n in maps:
                out[pos] = np.asarray(maps[n]).reshape(-1)[flat]
        return out % self.alg.p

    def chain_map(self, vec) -> ChainMap:
        vec = np.asarray(vec, dtype=np.int64)
        maps = {}
        for n in self.degrees:
            lo, hi, phi = self._phi[n]
            maps[n] = np.tensordot(vec[lo:hi], phi, 1) % self.alg.p if hi > lo else ezeros(
                self.alg, len(self.source.term(n)), len(self.target.term(n))
            )
        return ChainMap(self.source, self.target, maps)

    def basis_maps(self) -> list:
        """Chain maps whose classes form a basis of Hom_K(C, D)."""
        return [self.chain_map(v) for v in self.representatives]

    def strict_maps(self) -> list:
        return [self.chain_map(v) for v in self.chainmap_basis]

    def is_nullhomotopic(self, f: ChainMap) -> bool:
        v = self.coords_of(f.maps)
        if not self.homotopy_image.shape[0]:
            return not v.any()
        return la.in_span(v, self.homotopy_image.T, self.alg.p)

    def class_coordinates(self, f: ChainMap) -> np.ndarray:
        """Coordinates of the homotopy class of ``f`` in terms of :meth:`basis_maps`."""
        v = self.coords_of(f.maps)
        basis = np.vstack([self.representatives, self.homotopy_image]).T
        x = la.solve(basis, v, self.alg.p)
        if x is None:
            raise DimensionMismatch("not a chain map between these complexes")
        return x[: self.representatives.shape[0]]


def hom_space(c: PerfectComplex, d: PerfectComplex) -> HomotopyHomSpace:
    return HomotopyHomSpace(c, d)


def hom_dim(c: PerfectComplex, d: PerfectComplex) -> int:
    return HomotopyHomSpace(c, d).dim


# -- Nakayama functor -------------------------------------------------------


@lru_cache(maxsize=None)
def nakayama_element_maps(alg: ValidatedAlgebra) -> dict:
    """``(i, j) -> N`` with ``ν(x·) = (N @ x)·`` for x in e_iΛe_j, after fixing ν(Λe_i) ≅ Λe_{π(i)}."""
    perm = require_self_injective(alg)
    n = alg.n_simples
    if alg.is_symmetric:
        return {(i, j): la.identity(alg.dim) for i in range(n) for j in range(n)}
    p = alg.p
    projs = [mr.projective(alg, i) for i in range(n)]
    psi = []
    for i in range(n):
        nu = mr.nakayama_module(projs[i])
        iso = mr.isomorphism(nu, projs[perm[i]])
        if iso is None:
            raise Inconclusive(f"ν(P_{i}) is not isomorphic to P_{perm[i]}")
        psi.append((iso, la.inverse(iso, p)))
    out = {}
    for i in range(n):
        gen = np.zeros(alg.projective_dim(perm[i]), dtype=np.int64)
        B, piv = alg.projective_bases[perm[i]]
        gen = alg.idempotent(perm[i])[piv]
        for j in range(n):
            basis, cpiv = alg.corners[(i, j)]
            Bj, _ = alg.projective_bases[perm[j]]
            mat = la.zeros(alg.dim, alg.dim)
            images = []
            for r in basis:
                rho = mr.ModHom(projs[i], projs[j], alg.right_block(r, i, j))
                nrho = mr.nakayama_map(rho).matrix
                m = la.matmul(la.matmul(psi[j][0], nrho, p), psi[i][1], p)
                images.append(la.matmul(Bj, la.matmul(m, gen.reshape(-1, 1), p), p)[:, 0])
            for k, img in enumerate(images):
                mat[:, cpiv[k]] = img
            out[(i, j)] = mat
    return out


@lru_cache(maxsize=None)
def _inverse_element_maps(alg: ValidatedAlgebra) -> dict:
    perm = require_self_injective(alg)
    fwd = nakayama_element_maps(alg)
    p = alg.p
    out = {}
    n = alg.n_simples
    for i in range(n):
        for j in range(n):
            basis, cpiv = alg.corners[(i, j)]
            tgt_basis, tpiv = alg.corners[(perm[i], perm[j])]
            images = la.matmul(fwd[(i, j)], basis.T, p) if basis.shape[0] else la.zeros(alg.dim, 0)
            mat = la.zeros(alg.dim, alg.dim)
            for k, y in enumerate(tgt_basis):
                x = la.solve(images, y, p)
                if x is None:
                    raise Inconclusive("Nakayama map on corners is not invertible")
                mat[:, tpiv[k]] = la.matmul(basis.T, x.reshape(-1, 1), p)[:, 0]
            out[(perm[i], perm[j])] = mat
    return out


def _apply_element_maps(alg, a: np.ndarray, src, tgt, maps) -> np.ndarray:
    out = np.zeros_like(a)
    for x, s in enumerate(src):
        for y, t in enumerate(tgt):
            if a[x, y].any():
                out[x, y] = la.matmul(maps[(s, t)], a[x, y].reshape(-1, 1), alg.p)[:, 0]
    return out


def nakayama_complex(c: PerfectComplex, power: int = 1) -> PerfectComplex:
    """ν^power applied termwise (power may be negative)."""
    alg = c.alg
    if power == 0:
        return c
    perm = require_self_injective(alg)
    inv = alg.nakayama_perm_inverse
    step, table, mp = (1, nakayama_element_maps(alg), perm) if power > 0 else (-1, _inverse_element_maps(alg), inv)
    out = c
    for _ in range(abs(power)):
        types = {n: tuple(mp[i] for i in t) for n, t in out.types.items()}
        diffs = {n: _apply_element_maps(alg, d, out.term(n), out.term(n - 1), table) for n, d in out.diffs.items()}
        out = PerfectComplex(alg, types, diffs, check=False)
    return out


# -- decomposition ----------------------------------------------------------


@dataclass(eq=False)
class ComplexPiece:
    complex: PerfectComplex
    inclusion: ChainMap  # piece -> minimal complex
    projection: ChainMap  # minimal complex -> piece
    certificate: endo.LocalityCertificate
    class_index: int = -1


@dataclass(eq=False)
class ComplexDecomposition:
    minimal: MinimalModel
    pieces: list
    summands: list  # [(PerfectComplex, multiplicity)]


def top_operator(f: ChainMap) -> np.ndarray:
    """Block-diagonal scalar matrix of an endomorphism acting on the tops of all terms."""
    c = f.source
    blocks = [etop(c.alg, f.at(n), c.term(n), c.term(n)) for n in sorted(c.types)]
    size = sum(b.shape[0] for b in blocks)
    out = la.zeros(size, size)
    r = 0
    for b in blocks:
        out[r : r + b.shape[0], r : r + b.shape[0]] = b
        r += b.shape[0]
    return out


def strict_end_operators(c: PerfectComplex, space: HomotopyHomSpace | None = None):
    """Strict chain endomorphisms of ``c`` and their action on tops.

    Taking tops is an algebra map whose kernel (maps with radical entries) is
    nilpotent, so idempotents and locality can be decided on the small top
    matrices and lifted back.
    """
    space = space or HomotopyHomSpace(c, c)
    maps = space.strict_maps()
    if not maps:
        return space, maps, np.zeros((0, 0, 0), dtype=np.int64)
    return space, maps, np.stack([top_operator(f) for f in maps])


def lift_idempotent(a: ChainMap) -> ChainMap:
    """Idempotent chain map congruent to ``a`` modulo nilpotents (a is idempotent on tops)."""
    p = a.source.p
    for _ in range(64):
        sq = a.then(a)
        if all(np.array_equal(sq.at(n), a.at(n)) for n in a.source.types):
            return a
        cube = sq.then(a)
        a = sq.scale_add(sq, 2).scale_add(cube, (-2) % p)  # 3a^2 - 2a^3
    raise DimensionMismatch("idempotent lifting did not converge")


def _combine_maps(maps: list, coeffs) -> ChainMap:
    out = zero_map(maps[0].source, maps[0].target)
    for f, c in zip(maps, coeffs):
        if int(c) % maps[0].source.p:
            out = out.scale_add(f, int(c))
    return out


def _split_by_idempotent(c: PerfectComplex, e: ChainMap):
    """Split a complex along an idempotent chain map; returns two (piece, incl, proj) triples."""
    alg, p = c.alg, c.p
    V, Vinv, split = {}, {}, {}
    new_types = {}
    for n, types in c.types.items():
        En = e.at(n)
        top = etop(alg, En, types, types)
        m = len(types)
        img_rows, ker_rows, img_types, ker_types = [], [], [], []
        for t in sorted(set(types)):
            idx = [a for a in range(m) if types[a] == t]
            sub = top[np.ix_(idx, idx)]
            im = la.row_basis(sub, p)
            kr = la.kernel_basis(sub.T, p)  # x with x·sub = 0
            for row in im:
                full = np.zeros(m, dtype=np.int64)
                full[idx] = row
                img_rows.append(full)
                img_types.append(t)
            for row in kr:
                full = np.zeros(m, dtype=np.int64)
                full[idx] = row
                ker_rows.append(full)
                ker_types.append(t)
        qbar = np.array(img_rows + ker_rows, dtype=np.int64).reshape(m, m)
        ntypes = tuple(img_types + ker_types)
        # Q sends new summand r to old summand c with scalar qbar[r, c]
        Q = ezeros(alg, m, m)
        for r in range(m):
            for col in range(m):
                if qbar[r, col]:
                    Q[r, col, alg.idempotents[types[col]]] = qbar[r, col]
        Qinv = einverse_rect(alg, Q, ntypes, types)
        E1 = emul(alg, emul(alg, Q, En), Qinv)
        r = len(img_rows)
        D = ezeros(alg, m, m)
        for k in range(r):
            D[k, k, alg.idempotents[ntypes[k]]] = 1
        ident = eidentity(alg, ntypes)
        u = (emul(alg, D, E1) + emul(alg, (ident - D) % p, (ident - E1) % p)) % p
        Vn = emul(alg, u, Q)
        V[n] = Vn
        Vinv[n] = einverse_rect(alg, Vn, ntypes, types)
        split[n] = r
        new_types[n] = ntypes
    diffs = {}
    for n in c.diffs:
        diffs[n] = emul(alg, emul(alg, V[n], c.diff(n)), Vinv[n - 1])
    out = []
    for part in (0, 1):
        types, dd, incl, proj = {}, {}, {}, {}
        for n, ntypes in new_types.items():
            r = split[n]
            sl = slice(0, r) if part == 0 else slice(r, len(ntypes))
            types[n] = ntypes[sl]
            incl[n] = V[n][sl]
            proj[n] = Vinv[n][:, sl]
        for n in c.diffs:
            r0, r1 = split[n], split[n - 1]
            rs = slice(0, r0) if part == 0 else slice(r0, None)
            cs = slice(0, r1) if part == 0 else slice(r1, None)
            if diffs[n][rs][:, slice(r1, None) if part == 0 else slice(0, r1)].any():
                raise DimensionMismatch("idempotent does not commute with the differential")
            dd[n] = diffs[n][rs][:, cs]
        piece = PerfectComplex(alg, types, dd, check=False)
        keep = piece.types
        out.append(
            (
                piece,
                ChainMap(piece, c, {n: m for n, m in incl.items() if n in keep}),
                ChainMap(c, piece, {n: m for n, m in proj.items() if n in keep}),
            )
        )
    return out


def einverse_rect(alg, v: np.ndarray, src_types, tgt_types) -> np.ndarray:
    """Inverse of an isomorphism between two orderings of the same projective."""
    top = etop(alg, v, src_types, tgt_types)
    v0 = elift(alg, la.inverse(top, alg.p), tgt_types, src_types)
    ident = eidentity(alg, src_types)
    r = (ident - emul(alg, v, v0)) % alg.p  # v·v0 = 1 - r on the source
    total = ident.copy()
    power = ident
    for _ in range(alg.radical_nilpotency + 1):
        power = emul(alg, power, r)
        if not power.any():
            break
        total = (total + power) % alg.p
    return emul(alg, v0, total)


def _split_complex(c: PerfectComplex, rng) -> list:
    space, maps, ops = strict_end_operators(c)
    if not maps:
        return []
    outcome = endo.find_split(ops, c.p, rng)
    if outcome[0] == "local":
        return [ComplexPiece(c, identity_map(c), identity_map(c), outcome[1])]
    e = lift_idempotent(_combine_maps(maps, outcome[1]))
    pieces = []
    for piece, incl, proj in _split_by_idempotent(c, e):
        if piece.is_zero():
            continue
        for sub in _split_complex(piece, rng):
            pieces.append(
                ComplexPiece(sub.complex, sub.inclusion.then(incl), proj.then(sub.projection), sub.certificate)
            )
    return pieces


def decompose_complex_cert(c: PerfectComplex, seed: int = 0) -> ComplexDecomposition:
    model = minimize_with_maps(c)
    rng = np.random.default_rng(seed)
    pieces = _split_complex(model.complex, rng) if not model.complex.is_zero() else []
    classes: list = []
    for piece in pieces:
        for idx, (rep, _) in enumerate(classes):
            if _indecomposables_isomorphic(rep, piece.complex):
                piece.class_index = idx
                classes[idx][1] += 1
                break
        else:
            piece.class_index = len(classes)
            classes.append([piece.complex, 1])
    return ComplexDecomposition(model, pieces, [(rep, mult) for rep, mult in classes])


def decompose_complex(c: PerfectComplex, seed: int = 0) -> list:
    """[(indecomposable minimal complex, multiplicity)]."""
    return decompose_complex_cert(c, seed).summands


def is_indecomposable(c: PerfectComplex, seed: int = 0) -> bool:
    m = minimize(c)
    if m.is_zero():
        return False
    _, maps, ops = strict_end_operators(m)
    return endo.find_split(ops, c.p, np.random.default_rng(seed))[0] == "local"


def _indecomposables_isomorphic(c: PerfectComplex, d: PerfectComplex) -> bool:
    """Exact test for minimal indecomposables: some basis chain map C -> D is invertible."""
    return _indecomposable_iso(c, d) is not None


def _indecomposable_iso(c: PerfectComplex, d: PerfectComplex):
    if not c.same_shape(d):
        return None
    for f in HomotopyHomSpace(c, d).strict_maps():
        if f.is_isomorphism():
            return f
    return None


def complex_isomorphism(c: PerfectComplex, d: PerfectComplex, seed: int = 0):
    """A chain isomorphism between the minimal models of C and D, or None."""
    same_algebra(c, d)
    mc, md = minimize(c), minimize(d)
    if not mc.same_shape(md):
        return None
    if mc.is_zero():
        return ChainMap(mc, md, {})
    space = HomotopyHomSpace(mc, md)
    maps = space.strict_maps()
    for f in maps:
        if f.is_isomorphism():
            return f
    rng = np.random.default_rng(seed)
    k = space.chainmap_basis.shape[0]
    for _ in range(ISO_TRIALS if k else 0):
        v = la.matmul(rng.integers(0, c.p, size=(1, k)), space.chainmap_basis, c.p)[0]
        f = space.chain_map(v)
        if f.is_isomorphism():
            return f
    try:
        dc, dd = decompose_complex_cert(mc, seed), decompose_complex_cert(md, seed)
    except SplitnessViolation as exc:
        raise Inconclusive(f"isomorphism search failed and decomposition is unavailable: {exc}") from None
    if len(dc.pieces) != len(dd.pieces):
        return None
    free = list(dd.pieces)
    total = None
    for a in dc.pieces:
        for idx, b in enumerate(free):
            iso = _indecomposable_iso(a.complex, b.complex)
            if iso is not None:
                free.pop(idx)
                # mc -> a -> b -> md
                part = a.projection.then(iso).then(b.inclusion)
                total = part if total is None else total.scale_add(part)
                break
        else:
            return None
    return ChainMap(mc, md, total.maps)


def is_isomorphic(c: PerfectComplex, d: PerfectComplex, seed: int = 0) -> bool:
    return complex_isomorphism(c, d, seed) is not None


def is_shift_of(c: PerfectComplex, d: PerfectComplex, window: int | None = None):
    """The j with C ≅ D[j], or None."""
    mc, md = minimize(c), minimize(d)
    if mc.is_zero() or md.is_zero():
        return 0 if mc.is_zero() and md.is_zero() else None
    j = mc.lo - md.lo
    if mc.hi - md.hi != j:
        return None
    return j if is_isomorphic(mc, shift(md, j)) else None


# -- resolutions ------------------------------------------------------------


def from_resolution(m: mr.ModuleRep, n: int) -> PerfectComplex:
    """P_n -> ... -> P_0, the start of a minimal projective resolution (degrees n..0)."""
    if m.dim == 0:
        raise ZeroModule("resolution of the zero module")
    alg, p = m.alg, m.p
    types = {}
    diffs = {}
    current = m
    embed = None  # columns: current module inside the previous projective
    prev_types = None
    for deg in range(n + 1):
        if current.dim == 0:
            break
        gens = mr.top_generators(current)
        cover, surj = mr.projective_cover(current)
        types[deg] = tuple(i for i, _ in gens)
        if deg > 0:
            d = ezeros(alg, len(gens), len(prev_types))
            for b, (j, v) in enumerate(gens):
                amb = la.matmul(embed, v.reshape(-1, 1), p)[:, 0]
                off = 0
                for a, t in enumerate(prev_types):
                    dt = alg.projective_dim(t)
                    B, _ = alg.projective_bases[t]
                    d[b, a] = la.matmul(B, amb[off : off + dt].reshape(-1, 1), p)[:, 0]
                    off += dt
            diffs[deg] = d
        ker = la.kernel_basis(surj.matrix, p).T.copy()
        if ker.shape[1]:
            ker = la.column_basis(ker, p)
        current = mr.submodule(cover, ker) if ker.shape[1] else mr.zero_module(alg)
        embed = ker
        prev_types = types[deg]
    return PerfectComplex(alg, types, diffs)
