"""Exact graded linear algebra over the chosen field.

Elements are `GradedVector`s: per-degree sparse coefficient maps over the
normal-word basis. Subspaces keep one reduced-row-echelon block per degree
(monic pivots, fully back-reduced, rows sorted by pivot ordinal), so equal
subspaces have literally equal rows and every certificate is canonical.

Block internals are dense numpy arrays: int64 residues for F_p (with
matrix products routed through float64 BLAS whenever the exactness bound
inner*(p-1)^2 < 2^53 holds), `Fraction` object arrays for Q. The sparse
form is the interchange format (vectors, certificates, cache); the dense
form is what makes m=3 runs finish.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .errors import SpecMismatch
from .fields import Coeff, Field
from .words import AlgebraSpec, Word, dim_component, word_index

_FRACTION_ZERO = Fraction(0)


class _Arith:
    """Exact dense kernels for one field."""

    def __init__(self, field: Field):
        self.field = field
        self.p = field.p
        self.dtype = np.int64 if self.p is not None else object

    def zeros(self, shape) -> np.ndarray:
        if self.p is not None:
            return np.zeros(shape, dtype=np.int64)
        a = np.empty(shape, dtype=object)
        a[...] = _FRACTION_ZERO
        return a

    def array(self, rows: Sequence[Sequence[Coeff]]) -> np.ndarray:
        if self.p is not None:
            return np.array(rows, dtype=np.int64) % self.p
        a = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
        for i, r in enumerate(rows):
            for j, c in enumerate(r):
                a[i, j] = Fraction(c)
        return a

    def mod(self, a: np.ndarray) -> np.ndarray:
        return a % self.p if self.p is not None else a

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Exact product of reduced (entries in [0, p)) operand matrices."""
        if self.p is None:
            return a.dot(b)
        inner = a.shape[-1]
        bound = inner * (self.p - 1) ** 2
        if bound < 2**53:
            c = np.dot(a.astype(np.float64), b.astype(np.float64))
            return c.astype(np.int64) % self.p
        if bound < 2**63:
            return np.dot(a, b) % self.p
        return np.array(a.astype(object).dot(b.astype(object)) % self.p, dtype=np.int64)

    def inv(self, x) -> Coeff:
        return self.field.inv(x if self.p is None else int(x))

    def nonzero_rows(self, m: np.ndarray) -> np.ndarray:
        return np.flatnonzero((m != 0).any(axis=1)) if m.size else np.empty(0, dtype=np.intp)


class GradedVector:
    """Sparse element of the truncated algebra: degree -> {ordinal: coeff}.

    Immutable by convention; all operations return fresh vectors. Zero
    coefficients are never stored.
    """

    __slots__ = ("spec", "parts")

    def __init__(self, spec: AlgebraSpec, parts: Mapping[int, Mapping[int, Coeff]] | None = None):
        self.spec = spec
        f = spec.field
        clean: dict[int, dict[int, Coeff]] = {}
        for d, comp in (parts or {}).items():
            if not 1 <= d <= spec.max_degree:
                raise SpecMismatch(f"degree {d} outside truncation range")
            kept = {o: f.elem(c) for o, c in comp.items() if not f.is_zero(f.elem(c))}
            if kept:
                clean[d] = kept
        self.parts = clean

    @classmethod
    def zero(cls, spec: AlgebraSpec) -> "GradedVector":
        return cls(spec)

    @classmethod
    def from_word(cls, spec: AlgebraSpec, w: Word, coeff: Coeff = 1) -> "GradedVector":
        d, o = word_index(spec, w)
        return cls(spec, {d: {o: coeff}})

    def is_zero(self) -> bool:
        return not self.parts

    def degrees(self) -> list[int]:
        return sorted(self.parts)

    def terms(self, d: int) -> list[tuple[int, Coeff]]:
        """Sorted (ordinal, coeff) pairs at one degree."""
        return sorted(self.parts.get(d, {}).items())

    def homogeneous_part(self, d: int) -> "GradedVector":
        return GradedVector(self.spec, {d: self.parts[d]} if d in self.parts else {})

    def dense(self, d: int, arith: _Arith) -> np.ndarray:
        v = arith.zeros(dim_component(self.spec, d))
        for o, c in self.parts.get(d, {}).items():
            v[o] = c
        return v

    # -- linear operations ---------------------------------------------------

    def _check(self, other: "GradedVector") -> None:
        if self.spec != other.spec:
            raise SpecMismatch("vectors over different algebra specs")

    def __add__(self, other: "GradedVector") -> "GradedVector":
        self._check(other)
        f = self.spec.field
        parts = {d: dict(comp) for d, comp in self.parts.items()}
        for d, comp in other.parts.items():
            tgt = parts.setdefault(d, {})
            for o, c in comp.items():
                tgt[o] = f.add(tgt.get(o, f.zero), c)
        return GradedVector(self.spec, parts)

    def __sub__(self, other: "GradedVector") -> "GradedVector":
        return self + other.scale(self.spec.field.neg(self.spec.field.one))

    def scale(self, c: Coeff) -> "GradedVector":
        f = self.spec.field
        c = f.elem(c)
        return GradedVector(
            self.spec, {d: {o: f.mul(c, x) for o, x in comp.items()} for d, comp in self.parts.items()}
        )

    def __neg__(self) -> "GradedVector":
        return self.scale(self.spec.field.neg(self.spec.field.one))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GradedVector)
            and self.spec == other.spec
            and self.parts == other.parts
        )

    def __repr__(self) -> str:
        from .words import format_word, normal_words

        if self.is_zero():
            return "0"
        bits = []
        for d in self.degrees():
            basis = normal_words(self.spec, d)
            for o, c in self.terms(d):
                bits.append(f"{self.spec.field.format_coeff(c)}*{format_word(self.spec, basis[o])}")
        return " + ".join(bits)


def vec_add(u: GradedVector, v: GradedVector) -> GradedVector:
    return u + v


def vec_scale(c: Coeff, v: GradedVector) -> GradedVector:
    return v.scale(c)


def vec_from_word(spec: AlgebraSpec, w: Word, coeff: Coeff = 1) -> GradedVector:
    return GradedVector.from_word(spec, w, coeff)


class _Block:
    """RREF rows of one graded component. ``full`` marks the whole component."""

    __slots__ = ("arith", "dim", "_rows", "pivots", "full")

    def __init__(self, arith: _Arith, dim: int, full: bool = False):
        self.arith = arith
        self.dim = dim
        self.full = full
        self._rows: Optional[np.ndarray] = None if full else arith.zeros((0, dim))
        self.pivots = np.arange(dim, dtype=np.intp) if full else np.empty(0, dtype=np.intp)

    @property
    def rank(self) -> int:
        return self.dim if self.full else self._rows.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        """RREF rows, materializing the identity for a full block."""
        if self.full and self._rows is None:
            eye = self.arith.zeros((self.dim, self.dim))
            for i in range(self.dim):
                eye[i, i] = self.arith.field.one
            self._rows = eye
        return self._rows

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Remainder of v modulo the row space (v is consumed)."""
        if self.full:
            return self.arith.zeros(self.dim)
        if self.rank == 0:
            return self.arith.mod(v)
        coeffs = v[self.pivots]
        return self.arith.mod(v - self.arith.matmul(coeffs[None, :], self._rows)[0])

    def reduce_matrix(self, m: np.ndarray) -> np.ndarray:
        if self.full:
            return self.arith.zeros(m.shape)
        if self.rank == 0 or m.shape[0] == 0:
            return self.arith.mod(m)
        return self.arith.mod(m - self.arith.matmul(m[:, self.pivots], self._rows))

    def _insert_reduced(self, v: np.ndarray) -> None:
        """v is already reduced and nonzero; make monic, back-reduce, insert."""
        nz = np.flatnonzero(v != 0)
        piv = int(nz[0])
        inv = self.arith.inv(v[piv])
        if inv != 1:
            v = self.arith.mod(v * inv)
        if self.rank:
            col = self._rows[:, piv].copy()
            hit = np.flatnonzero(col != 0)
            if hit.size:
                self._rows[hit] = self.arith.mod(self._rows[hit] - col[hit, None] * v[None, :])
        pos = int(np.searchsorted(self.pivots, piv))
        self._rows = np.insert(self._rows, pos, v, axis=0)
        self.pivots = np.insert(self.pivots, pos, piv)
        if self.rank == self.dim:
            self.full = True  # rows are now exactly the identity

    def insert(self, v: np.ndarray) -> bool:
        if self.full:
            return False
        r = self.reduce(v)
        if not (r != 0).any():
            return False
        self._insert_reduced(r)
        return True

    def insert_matrix(self, m: np.ndarray, chunk: int = 1024) -> int:
        """Insert many candidate rows; returns the rank growth."""
        grew = 0
        for lo in range(0, m.shape[0], chunk):
            if self.full:
                break
            c = self.reduce_matrix(self.arith.mod(m[lo : lo + chunk]))
            keep = self.arith.nonzero_rows(c)
            for i in keep:
                if self.insert(c[i].copy()):
                    grew += 1
        return grew

    def contains_matrix(self, m: np.ndarray) -> Optional[int]:
        """Index of the first row not in the span, or None if all are."""
        if self.full:
            return None
        for lo in range(0, m.shape[0], 1024):
            c = self.reduce_matrix(self.arith.mod(m[lo : lo + 1024].copy()))
            bad = self.arith.nonzero_rows(c)
            if bad.size:
                return lo + int(bad[0])
        return None

    def sparse_rows(self) -> list[list[tuple[int, Coeff]]]:
        f = self.arith.field
        out = []
        for row in self.matrix:
            nz = np.flatnonzero(row != 0)
            out.append([(int(o), f.elem(row[o])) for o in nz])
        return out


class Subspace:
    """Graded subspace as one echelon block per degree."""

    def __init__(self, spec: AlgebraSpec, full: bool = False):
        self.spec = spec
        self.arith = _Arith(spec.field)
        self._blocks: dict[int, _Block] = {}
        self._full = full

    @classmethod
    def full_space(cls, spec: AlgebraSpec) -> "Subspace":
        return cls(spec, full=True)

    def block(self, d: int) -> _Block:
        if d not in self._blocks:
            self._blocks[d] = _Block(self.arith, dim_component(self.spec, d), full=self._full)
        return self._blocks[d]

    def _check(self, spec: AlgebraSpec) -> None:
        if spec != self.spec:
            raise SpecMismatch("operands over different algebra specs")

    # -- span building -------------------------------------------------------

    def insert(self, v: GradedVector) -> dict[int, bool]:
        """Insert each homogeneous part; returns degree -> grew."""
        self._check(v.spec)
        return {d: self.block(d).insert(v.dense(d, self.arith)) for d in v.degrees()}

    def insert_rows(self, d: int, m: np.ndarray) -> int:
        return self.block(d).insert_matrix(m)

    # -- queries -------------------------------------------------------------

    def contains(self, v: GradedVector) -> bool:
        self._check(v.spec)
        for d in v.degrees():
            r = self.block(d).reduce(v.dense(d, self.arith))
            if (r != 0).any():
                return False
        return True

    def dim_at(self, d: int) -> int:
        if not 1 <= d <= self.spec.max_degree:
            return 0
        blk = self._blocks.get(d)
        if blk is None:
            return dim_component(self.spec, d) if self._full else 0
        return blk.rank

    def dims(self, all_degrees: bool = False) -> list[tuple[int, int]]:
        """(degree, rank) table; by default only degrees with rank > 0."""
        out = []
        for d in range(1, self.spec.max_degree + 1):
            r = self.dim_at(d)
            if r or all_degrees:
                out.append((d, r))
        return out

    def equal_at(self, other: "Subspace", d: int) -> bool:
        self._check(other.spec)
        if self.dim_at(d) != other.dim_at(d):
            return False
        if self.dim_at(d) == 0:
            return True
        return other.block(d).contains_matrix(self.block(d).matrix) is None

    def contains_subspace(self, other: "Subspace") -> bool:
        for d in range(1, self.spec.max_degree + 1):
            if other.dim_at(d) == 0:
                continue
            if self.block(d).contains_matrix(other.block(d).matrix) is not None:
                return False
        return True

    def basis_vectors(self, d: int) -> list[GradedVector]:
        if self.dim_at(d) == 0:
            return []
        return [
            GradedVector(self.spec, {d: dict(row)})
            for row in self.block(d).sparse_rows()
        ]

    def copy(self) -> "Subspace":
        out = Subspace(self.spec, full=self._full)
        for d, blk in self._blocks.items():
            nb = out.block(d)
            nb.full = blk.full
            if blk.full:
                nb._rows = None
                nb.pivots = np.arange(blk.dim, dtype=np.intp)
            else:
                nb._rows = blk.matrix.copy()
                nb.pivots = blk.pivots.copy()
        return out

    def __repr__(self) -> str:
        return f"Subspace({self.spec.m} gens, dims={self.dims()})"


def subspace_insert(s: Subspace, v: GradedVector) -> dict[int, bool]:
    return s.insert(v)


def subspace_contains(s: Subspace, v: GradedVector) -> bool:
    return s.contains(v)


def subspace_equal_at(s: Subspace, t: Subspace, d: int) -> bool:
    return s.equal_at(t, d)


def subspace_dims(s: Subspace) -> list[tuple[int, int]]:
    return s.dims()


def span(spec: AlgebraSpec, vectors: Iterable[GradedVector]) -> Subspace:
    s = Subspace(spec)
    for v in vectors:
        s.insert(v)
    return s
