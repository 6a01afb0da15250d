"""Split basic finite-dimensional algebras given by structure constants.

An algebra is stored as a multiplication tensor ``T`` with
``T[i, j]`` the coordinate vector of ``b_i * b_j``.  The basis must contain
the primitive idempotents and a basis of the radical; everything else (Loewy
length, Cartan matrix, Nakayama permutation, symmetrizing form) is derived
and certified by explicit checks in :func:`validate`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import exactla as la
from .errors import (
    FormatError,
    NoUnit,
    NotAssociative,
    NotSelfInjective,
    NotSplitBasic,
    RadicalNotIdeal,
    RadicalNotNilpotent,
    SimpleProjective,
)

FORM_SEARCH_TRIALS = 64


@dataclass(frozen=True, eq=False)
class AlgebraSpec:
    name: str
    p: int
    dim: int
    basis_labels: tuple
    idempotent_indices: tuple
    radical_indices: tuple
    mult: np.ndarray  # (dim, dim, dim)

    @classmethod
    def from_dict(cls, data: dict) -> "AlgebraSpec":
        try:
            p = la.check_prime(data["p"])
            dim = int(data["dim"])
            basis = tuple(str(b) for b in data["basis"])
            idem = tuple(int(i) for i in data["idempotents"])
            rad = tuple(int(i) for i in data["radical"])
            mult = np.array(data["mult"], dtype=object)
            name = str(data["name"])
        except KeyError as exc:
            raise FormatError(f"algebra file is missing field {exc}") from None
        except (TypeError, ValueError) as exc:
            raise FormatError(f"algebra file is malformed: {exc}") from None
        if len(basis) != dim or mult.shape != (dim, dim, dim):
            raise FormatError(
                f"expected {dim} basis labels and a {dim}x{dim}x{dim} mult table, "
                f"got {len(basis)} labels and shape {mult.shape}"
            )
        for i in idem + rad:
            if not 0 <= i < dim:
                raise FormatError(f"basis index {i} out of range")
        mult = (mult % p).astype(np.int64)
        return cls(name, p, dim, basis, idem, rad, mult)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "p": self.p,
            "dim": self.dim,
            "basis": list(self.basis_labels),
            "idempotents": list(self.idempotent_indices),
            "radical": list(self.radical_indices),
            "mult": self.mult.tolist(),
        }


class ValidatedAlgebra:
    """An :class:`AlgebraSpec` whose axioms have been checked.

    Do not construct directly; use :func:`validate`.  Instances are treated
    as immutable, and derived data is cached on first use.
    """

    def __init__(self, spec: AlgebraSpec, loewy_length: int):
        self.spec = spec
        self.name = spec.name
        self.p = spec.p
        self.dim = spec.dim
        self.T = spec.mult
        self.T.setflags(write=False)
        self.idempotents = spec.idempotent_indices
        self.n_simples = len(self.idempotents)
        self.radical_indices = spec.radical_indices
        self.radical_nilpotency = loewy_length

    def __repr__(self):
        return f"ValidatedAlgebra({self.name!r}, p={self.p}, dim={self.dim})"

    # -- elements -----------------------------------------------------------

    def element(self, coeffs) -> np.ndarray:
        return la.asmat(coeffs, self.p).reshape(self.dim)

    def basis_element(self, k: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[k] = 1
        return v

    def idempotent(self, i: int) -> np.ndarray:
        return self.basis_element(self.idempotents[i])

    @cached_property
    def one(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[list(self.idempotents)] = 1
        return v

    def mul(self, x, y) -> np.ndarray:
        return la.matmul(self.L(x), np.asarray(y, dtype=np.int64), self.p)

    @cached_property
    def left_regular(self) -> list:
        """``left_regular[i] @ v`` is ``b_i * v``."""
        return [np.ascontiguousarray(self.T[i].T) for i in range(self.dim)]

    @cached_property
    def right_regular(self) -> list:
        """``right_regular[i] @ v`` is ``v * b_i``."""
        return [np.ascontiguousarray(self.T[:, i, :].T) for i in range(self.dim)]

    @cached_property
    def _left_stack(self) -> np.ndarray:
        return np.stack(self.left_regular)

    @cached_property
    def _right_stack(self) -> np.ndarray:
        return np.stack(self.right_regular)

    def L(self, x) -> np.ndarray:
        return np.tensordot(np.asarray(x, dtype=np.int64) % self.p, self._left_stack, 1) % self.p

    def R(self, x) -> np.ndarray:
        return np.tensordot(np.asarray(x, dtype=np.int64) % self.p, self._right_stack, 1) % self.p

    def top_coefficient(self, x, i: int) -> int:
        """Image of ``x`` in the top of ``e_i Λ e_i`` (coefficient of ``e_i``)."""
        return int(x[self.idempotents[i]]) % self.p

    def is_radical(self, x) -> bool:
        return not any(int(x[k]) % self.p for k in self.idempotents)

    def unit_inverse(self, u) -> np.ndarray:
        """Inverse of a unit ``u`` of the local ring ``e_i Λ e_i``."""
        i = self.corner_type(u)
        lam = self.top_coefficient(u, i)
        if lam == 0:
            raise ZeroDivisionError("element is not a unit of its corner ring")
        e = self.idempotent(i)
        scaled = (u * la.inv_scalar(lam, self.p)) % self.p
        r = (e - scaled) % self.p
        total = e.copy()
        power = e.copy()
        for _ in range(self.radical_nilpotency):
            power = self.mul(power, r)
            if not power.any():
                break
            total = (total + power) % self.p
        return (total * la.inv_scalar(lam, self.p)) % self.p

    def corner_type(self, x) -> int:
        for i in range(self.n_simples):
            if self.top_coefficient(x, i):
                return i
        raise ZeroDivisionError("radical element has no corner type")

    # -- corners e_i Λ e_j --------------------------------------------------

    @cached_property
    def corners(self) -> dict:
        """``(i, j) -> (basis, pivots)`` for ``e_i Λ e_j``; basis rows in echelon form."""
        out = {}
        for i in range(self.n_simples):
            Li = self.left_regular[self.idempotents[i]]
            for j in range(self.n_simples):
                Rj = self.right_regular[self.idempotents[j]]
                proj = la.matmul(Li, Rj, self.p)
                r, red, piv = la.rref(proj.T, self.p)
                out[(i, j)] = (red[:r].copy(), piv)
        return out

    def corner_dim(self, i: int, j: int) -> int:
        return self.corners[(i, j)][0].shape[0]

    @cached_property
    def cartan(self) -> np.ndarray:
        n = self.n_simples
        return np.array([[self.corner_dim(i, j) for j in range(n)] for i in range(n)], dtype=np.int64)

    # -- projectives Λ e_i --------------------------------------------------

    @cached_property
    def projective_bases(self) -> list:
        """Per simple: ``(B, pivots)`` with columns of B a basis of Λe_i in Λ-coordinates."""
        out = []
        for i in range(self.n_simples):
            Ri = self.right_regular[self.idempotents[i]]
            r, red, piv = la.rref(Ri.T, self.p)
            out.append((red[:r].T.copy(), piv))
        return out

    def projective_dim(self, i: int) -> int:
        return self.projective_bases[i][0].shape[1]

    @cached_property
    def projective_actions(self) -> list:
        """Per simple: array (dim, d_i, d_i) of the left action on Λe_i."""
        out = []
        for i in range(self.n_simples):
            B, piv = self.projective_bases[i]
            acts = np.stack([la.matmul(Lk, B, self.p)[piv] for Lk in self.left_regular])
            out.append(acts)
        return out

    @cached_property
    def right_blocks(self) -> dict:
        """``(i, j) -> array (dim, d_j, d_i)``: right multiplication Λe_i -> Λe_j per basis element."""
        out = {}
        for i in range(self.n_simples):
            Bi, _ = self.projective_bases[i]
            for j in range(self.n_simples):
                _, pj = self.projective_bases[j]
                out[(i, j)] = np.stack([la.matmul(Rk, Bi, self.p)[pj] for Rk in self.right_regular])
        return out

    def right_block(self, x, i: int, j: int) -> np.ndarray:
        """Matrix of ``v -> v*x`` from Λe_i to Λe_j in projective coordinates."""
        return np.tensordot(np.asarray(x, dtype=np.int64), self.right_blocks[(i, j)], 1) % self.p

    # -- radical, socles ----------------------------------------------------

    @cached_property
    def radical_powers(self) -> list:
        """Column bases of rad^k for k = 0 .. Loewy length."""
        full = la.identity(self.dim)
        rad = np.zeros((self.dim, len(self.radical_indices)), dtype=np.int64)
        for c, k in enumerate(self.radical_indices):
            rad[k, c] = 1
        powers = [full, rad]
        current = rad
        while current.shape[1]:
            prods = [la.matmul(self.left_regular[k], current, self.p) for k in self.radical_indices]
            current = la.column_basis(np.hstack(prods), self.p) if prods else current[:, :0]
            powers.append(current)
        return powers

    @cached_property
    def generator_indices(self) -> tuple:
        """Basis indices generating Λ as an algebra: idempotents plus rad/rad^2 representatives."""
        rad2 = self.radical_powers[2]
        chosen = list(self.idempotents)
        span = rad2
        for k in self.radical_indices:
            v = self.basis_element(k).reshape(-1, 1)
            if not la.in_span(v, span, self.p):
                chosen.append(k)
                span = np.hstack([span, v])
        return tuple(chosen)

    def _rad_action_stack(self, i: int) -> np.ndarray:
        acts = self.projective_actions[i]
        return np.vstack([acts[k] for k in self.radical_indices]) if self.radical_indices else np.zeros((0, self.projective_dim(i)), dtype=np.int64)

    @cached_property
    def projective_socles(self) -> list:
        """Per simple: columns spanning soc(Λe_i) in projective coordinates."""
        out = []
        for i in range(self.n_simples):
            out.append(la.kernel_basis(self._rad_action_stack(i), self.p).T.copy())
        return out

    @cached_property
    def socle_types(self) -> list:
        """Per simple i: list of simple types occurring in soc(Λe_i) (with multiplicity)."""
        out = []
        for i in range(self.n_simples):
            soc = self.projective_socles[i]
            acts = self.projective_actions[i]
            types = []
            for j in range(self.n_simples):
                e = acts[self.idempotents[j]]
                types += [j] * la.rank(la.matmul(e, soc, self.p), self.p)
            out.append(types)
        return out

    @cached_property
    def is_self_injective(self) -> bool:
        types = self.socle_types
        if any(len(t) != 1 for t in types):
            return False
        return len({t[0] for t in types}) == self.n_simples

    @cached_property
    def nakayama_perm(self) -> tuple | None:
        """π with ν(Λe_j) ≅ Λe_{π(j)}, i.e. soc(Λe_{π(j)}) ≅ S_j; None if not self-injective."""
        if not self.is_self_injective:
            return None
        perm = [0] * self.n_simples
        for i, types in enumerate(self.socle_types):
            perm[types[0]] = i
        return tuple(perm)

    @cached_property
    def nakayama_perm_inverse(self) -> tuple | None:
        perm = self.nakayama_perm
        if perm is None:
            return None
        inv = [0] * len(perm)
        for j, i in enumerate(perm):
            inv[i] = j
        return tuple(inv)

    @cached_property
    def has_semisimple_summand(self) -> bool:
        return any(self.projective_dim(i) == 1 for i in range(self.n_simples))

    def socle_element(self, i: int) -> np.ndarray:
        """Nonzero element of e_i Λ e_{π(i)} spanning the socle of Λe_{π(i)}.

        Right multiplication by it maps Λe_i onto soc(νΛe_i), sending the top
        of Λe_i isomorphically to the socle.
        """
        perm = require_self_injective(self)
        target = perm[i]
        soc = self.projective_socles[target]
        B, _ = self.projective_bases[target]
        v = la.matmul(B, soc, self.p)[:, 0]
        return v

    @cached_property
    def symmetrizing_form(self) -> np.ndarray | None:
        return find_symmetrizing_form(self)

    @cached_property
    def is_symmetric(self) -> bool:
        return self.symmetrizing_form is not None


def require_self_injective(alg: ValidatedAlgebra) -> tuple:
    perm = alg.nakayama_perm
    if perm is None:
        raise NotSelfInjective(f"{alg.name} is not self-injective (some projective has non-simple socle)")
    return perm


def validate(spec: AlgebraSpec) -> ValidatedAlgebra:
    """Check every algebra axiom and return the validated algebra."""
    p, d, T = spec.p, spec.dim, spec.mult
    idem = list(spec.idempotent_indices)
    rad = list(spec.radical_indices)
    if set(idem) & set(rad) or sorted(idem + rad) != list(range(d)):
        raise NotSplitBasic("idempotent and radical indices must partition the basis", sorted(set(idem) & set(rad)))

    # (b_i b_j) b_k == b_i (b_j b_k) for all triples
    left = np.einsum("ijm,mkn->ijkn", T, T) % p
    right = np.einsum("jkm,imn->ijkn", T, T) % p
    bad = np.argwhere((left != right).any(axis=3))
    if bad.size:
        raise NotAssociative(f"associativity fails on basis triple {tuple(bad[0])}", tuple(int(x) for x in bad[0]))

    one = np.zeros(d, dtype=np.int64)
    one[idem] = 1
    L1 = np.tensordot(one, T, axes=(0, 0)) % p  # (j, k): coords of 1*b_j
    R1 = np.tensordot(one, T, axes=(0, 1)) % p  # (i, k): coords of b_i*1
    eye = np.eye(d, dtype=np.int64)
    if not (np.array_equal(L1, eye) and np.array_equal(R1, eye)):
        bad = [j for j in range(d) if not (np.array_equal(L1[j], eye[j]) and np.array_equal(R1[j], eye[j]))]
        raise NoUnit("sum of idempotent basis elements is not a two-sided unit", bad)

    for a, i in enumerate(idem):
        for b, j in enumerate(idem):
            expect = eye[i] if i == j else np.zeros(d, dtype=np.int64)
            if not np.array_equal(T[i, j], expect):
                raise NotSplitBasic(f"idempotents {i}, {j} are not orthogonal idempotents", (i, j))

    rad_mask = np.zeros(d, dtype=bool)
    rad_mask[rad] = True
    for r in rad:
        for k in range(d):
            for prod in (T[r, k], T[k, r]):
                if prod[~rad_mask].any():
                    raise RadicalNotIdeal(f"product of basis {r} and {k} leaves the radical", (r, k))

    # nilpotency: rad^(d+1) must vanish
    current = np.zeros((d, len(rad)), dtype=np.int64)
    for c, k in enumerate(rad):
        current[k, c] = 1
    loewy = 1
    while current.shape[1]:
        prods = [np.tensordot(T[k], current, axes=(0, 0)) % p for k in rad]
        current = la.column_basis(np.hstack(prods), p) if prods else current[:, :0]
        loewy += 1
        if loewy > d + 1:
            raise RadicalNotNilpotent("radical is not nilpotent", rad)
    return ValidatedAlgebra(spec, loewy)


def find_symmetrizing_form(alg: ValidatedAlgebra, trials: int = FORM_SEARCH_TRIALS, seed: int = 0):
    """Gram matrix of a nondegenerate symmetric associative form, or None.

    Associative forms are ``(x, y) -> f(xy)`` for a linear functional ``f``;
    symmetry is the linear condition ``f(xy - yx) = 0``.  Candidates are the
    solution basis vectors first, then seeded random combinations.
    """
    p, d, T = alg.p, alg.dim, alg.T
    comm = (T - T.transpose(1, 0, 2)) % p
    sols = la.kernel_basis(comm.reshape(d * d, d), p)
    if sols.shape[0] == 0:
        return None
    rng = np.random.default_rng(seed)
    candidates = list(sols)
    for _ in range(trials):
        c = rng.integers(0, p, size=sols.shape[0])
        candidates.append(la.matmul(c.reshape(1, -1), sols, p)[0])
    for f in candidates:
        gram = np.tensordot(T, f, axes=(2, 0)) % p
        if la.is_invertible(gram, p):
            return gram
    return None


def heart_dimension(alg: ValidatedAlgebra, i: int) -> int:
    if alg.projective_dim(i) == 1:
        raise SimpleProjective(f"P_{i} is simple")
    return alg.projective_dim(i) - 2
