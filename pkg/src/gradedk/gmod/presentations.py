"""Graded projective modules as homogeneous idempotent presentations.

A module is P = e * (A(s_1) + ... + A(s_k)) for a k x k idempotent matrix
e whose (i, j) entry is homogeneous of degree s_i - s_j, acting on column
vectors from the left; the shift convention is P(g)_h = P_{g+h}.  The
degree-h component is the image of e on the stacked component spaces
A_{s_i + h}, so every question about P reduces to exact linear algebra
in a fixed degree.

Degree-zero maps between presentations are matrices of homogeneous
entries intertwining the idempotents.  Maps whose source lives over the
embedded zero part of the target algebra (or vice versa) are supported
through a label-wise coercion, which is how the restriction and
induction functors act on components.
"""

from __future__ import annotations

import threading
from typing import Sequence

from .. import _kernel
from ..algebra import GradedAlgebra
from ..grading import Degree


class PresentationError(ValueError):
    pass


# -- entry-matrix helpers (entries: HomogeneousElement or None for zero) ----


def entry_add(x, y):
    if x is None:
        return y
    if y is None:
        return x
    z = x + y
    return None if z.is_zero() else z


def entry_mul(x, y):
    if x is None or y is None:
        return None
    z = x * y
    return None if z.is_zero() else z


def entries_matmul(X, Y):
    n = len(X)
    mid = len(Y)
    m = len(Y[0]) if mid else 0
    out = [[None] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = None
            for t in range(mid):
                acc = entry_add(acc, entry_mul(X[i][t], Y[t][j]))
            out[i][j] = acc
    return out


def entries_add(X, Y):
    return [
        [entry_add(a, b) for a, b in zip(rx, ry)]
        for rx, ry in zip(X, Y)
    ]


def entries_eq(X, Y):
    for rx, ry in zip(X, Y):
        for a, b in zip(rx, ry):
            if a is None and b is None:
                continue
            if a is None:
                if not b.is_zero():
                    return False
            elif b is None:
                if not a.is_zero():
                    return False
            elif a.degree != b.degree or a.coords != b.coords:
                return False
    return True


def entries_are_zero(X):
    return all(e is None or e.is_zero() for row in X for e in row)


def identity_entries(A: GradedAlgebra, shifts):
    k = len(shifts)
    one = A.one()
    return [[one if i == j else None for j in range(k)] for i in range(k)]


class ComponentSpace:
    """The degree-h component of a presentation, with a chosen basis."""

    __slots__ = (
        "degree",
        "block_degrees",
        "block_dims",
        "offsets",
        "ambient_dim",
        "matrix",
        "basis_columns",
        "dim",
        "_char",
    )

    def __init__(self, pres: "ProjectivePresentation", h: Degree):
        A = pres.algebra
        char = A.field.char
        self._char = char
        self.degree = h
        self.block_degrees = [s + h for s in pres.shifts]
        self.block_dims = [A.component_dim(d) for d in self.block_degrees]
        self.offsets = []
        off = 0
        for d in self.block_dims:
            self.offsets.append(off)
            off += d
        self.ambient_dim = off
        self.matrix = _entries_component_matrix(
            A, pres.entries, self.block_degrees, self.block_dims, self.block_degrees, self.block_dims
        )
        # image basis: pivot columns of the idempotent's component matrix
        if self.ambient_dim:
            _red, pivots = _kernel.rref(self.matrix, char)
            self.basis_columns = [
                [self.matrix[r][c] for r in range(self.ambient_dim)] for c in pivots
            ]
        else:
            self.basis_columns = []
        self.dim = len(self.basis_columns)

    def express(self, vec):
        """Coordinates of an ambient vector in the image basis (must lie in)."""
        if self.dim == 0:
            if any(vec):
                raise PresentationError("vector does not lie in the component")
            return []
        cols = [[self.basis_columns[j][r] for j in range(self.dim)] for r in range(self.ambient_dim)]
        sol = _kernel.solve(cols, [[x] for x in vec], self._char)
        if sol is None:
            raise PresentationError("vector does not lie in the component")
        return [row[0] for row in sol]


def _entries_component_matrix(tgt_alg, entries, src_degrees, src_dims, tgt_degrees, tgt_dims):
    """Matrix (stacked tgt components) x (stacked src components) of the
    entry matrix acting by left multiplication; src vectors are already
    coerced into tgt_alg coordinates."""
    F = tgt_alg.field
    n_rows = sum(tgt_dims)
    n_cols = sum(src_dims)
    mat = [[F.zero] * n_cols for _ in range(n_rows)]
    col = 0
    tgt_offsets = []
    off = 0
    for d in tgt_dims:
        tgt_offsets.append(off)
        off += d
    for j, (dj, nj) in enumerate(zip(src_degrees, src_dims)):
        for b in range(nj):
            x = tgt_alg.basis_element(dj, b)
            for i in range(len(entries)):
                ent = entries[i][j]
                if ent is None:
                    continue
                prod = ent * x
                if prod.degree != tgt_degrees[i]:  # pragma: no cover
                    raise PresentationError("entry degree bookkeeping failed")
                base = tgt_offsets[i]
                for r, c in enumerate(prod.coords):
                    if c:
                        mat[base + r][col] = F.add(mat[base + r][col], c)
            col += 1
    return mat


class ProjectivePresentation:
    """A finitely generated graded projective right module, e * (free)."""

    def __init__(self, algebra: GradedAlgebra, shifts: Sequence[Degree], entries, *, check: bool = True):
        self.algebra = algebra
        self.shifts = tuple(shifts)
        k = len(self.shifts)
        if any(s.group != algebra.group for s in self.shifts):
            raise PresentationError("shifts must live in the algebra grading group")
        if len(entries) != k or any(len(row) != k for row in entries):
            raise PresentationError("idempotent matrix shape must match the shifts")
        self.entries = [list(row) for row in entries]
        self._spaces = {}
        self._lock = threading.Lock()
        if check:
            self._validate()

    def _validate(self):
        k = len(self.shifts)
        A = self.algebra
        for i in range(k):
            for j in range(k):
                ent = self.entries[i][j]
                want = self.shifts[i] - self.shifts[j]
                if ent is None:
                    continue
                if ent.algebra is not A:
                    raise PresentationError("idempotent entry from a different algebra")
                if ent.degree != want:
                    raise PresentationError(
                        f"entry ({i},{j}) has degree {ent.degree}, expected {want}"
                    )
                if ent.is_zero():
                    self.entries[i][j] = None
        ee = entries_matmul(self.entries, self.entries)
        if not entries_eq(ee, self.entries):
            raise PresentationError("matrix is not idempotent (e*e != e)")

    # -- basic data ----------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.shifts)

    def space(self, h: Degree) -> ComponentSpace:
        with self._lock:
            hit = self._spaces.get(h)
            if hit is not None:
                return hit
        sp = ComponentSpace(self, h)
        with self._lock:
            self._spaces[h] = sp
        return sp

    def dim(self, h: Degree) -> int:
        return self.space(h).dim

    def dims(self, window) -> dict:
        return {h: self.dim(h) for h in window}

    def is_zero(self) -> bool:
        return entries_are_zero(self.entries)

    def shift(self, g: Degree) -> "ProjectivePresentation":
        """The shifted module P(g): component(P(g), h) = component(P, g+h)."""
        return ProjectivePresentation(
            self.algebra, tuple(s + g for s in self.shifts), self.entries, check=False
        )

    def __repr__(self):
        return (
            f"<presentation rank {self.rank} over {self.algebra.describe()} "
            f"shifts [{','.join(str(s) for s in self.shifts)}]>"
        )


def free_module(A: GradedAlgebra, shifts) -> ProjectivePresentation:
    shifts = [s if isinstance(s, Degree) else A.deg(s) for s in shifts]
    return ProjectivePresentation(A, shifts, identity_entries(A, shifts), check=False)


def regular_module(A: GradedAlgebra) -> ProjectivePresentation:
    return free_module(A, [A.group.zero])


def zero_module(A: GradedAlgebra) -> ProjectivePresentation:
    return ProjectivePresentation(A, (), [], check=False)


def direct_sum(*parts: ProjectivePresentation) -> ProjectivePresentation:
    if not parts:
        raise PresentationError("direct sum of nothing (algebra unknown)")
    A = parts[0].algebra
    if any(p.algebra is not A for p in parts):
        raise PresentationError("direct sum requires one common algebra")
    shifts = tuple(s for p in parts for s in p.shifts)
    k = len(shifts)
    entries = [[None] * k for _ in range(k)]
    off = 0
    for p in parts:
        for i in range(p.rank):
            for j in range(p.rank):
                entries[off + i][off + j] = p.entries[i][j]
        off += p.rank
    return ProjectivePresentation(A, shifts, entries, check=False)


def restrict_rows(P: ProjectivePresentation, rows) -> ProjectivePresentation:
    """Sub-presentation on a subset of ambient summands.

    Only valid when the idempotent is block diagonal with respect to the
    split (checked); used for the slices of restricted modules.
    """
    rows = list(rows)
    rest = [i for i in range(P.rank) if i not in rows]
    for i in rows:
        for j in rest:
            if P.entries[i][j] is not None and not P.entries[i][j].is_zero():
                raise PresentationError("idempotent is not block diagonal on the split")
            if P.entries[j][i] is not None and not P.entries[j][i].is_zero():
                raise PresentationError("idempotent is not block diagonal on the split")
    shifts = [P.shifts[i] for i in rows]
    entries = [[P.entries[i][j] for j in rows] for i in rows]
    return ProjectivePresentation(P.algebra, shifts, entries, check=False)


# -- coercion between an algebra and its embedded zero part -----------------


def _coercion_mode(src: GradedAlgebra, tgt: GradedAlgebra) -> str:
    if src is tgt:
        return "id"
    if tgt.group.free_rank >= 1 and src is tgt.zero_part_embedded():
        return "embed"
    if src.group.free_rank >= 1 and tgt is src.zero_part_embedded():
        return "project"
    raise PresentationError(
        "maps are supported between presentations over one algebra or its "
        "embedded zero part"
    )


def _coerce_coords(mode: str, src: GradedAlgebra, tgt: GradedAlgebra, deg: Degree, coords):
    """Coordinates of a src component vector inside tgt's component.

    Label-wise: the embedded zero part shares basis labels with its parent
    in first-coordinate-zero degrees and is zero elsewhere.
    """
    if mode == "id":
        return coords
    tdim = tgt.component_dim(deg)
    if mode == "embed":
        if not coords:
            return [tgt.field.zero] * tdim
        if deg.values[0] != 0:  # pragma: no cover - embed source is zero there
            raise PresentationError("embedded zero part has support in degree zero")
        if src.component_basis(deg) != tgt.component_basis(deg):  # pragma: no cover
            raise PresentationError("zero part basis mismatch")
        return list(coords)
    # project
    if deg.values[0] != 0:
        return [tgt.field.zero] * tdim
    if src.component_basis(deg) != tgt.component_basis(deg):  # pragma: no cover
        raise PresentationError("zero part basis mismatch")
    return list(coords)


class GradedMap:
    """A degree-zero homogeneous-entry map between presentations.

    Entries live in the algebra of the target; (i, j) has degree
    (target shift i) - (source shift j).  When source and target algebras
    differ by the zero-part embedding, source vectors are coerced
    label-wise before multiplying.
    """

    def __init__(self, source: ProjectivePresentation, target: ProjectivePresentation, entries, *, normalize: bool = True, check: bool = True):
        self.source = source
        self.target = target
        self.mode = _coercion_mode(source.algebra, target.algebra)
        rows = target.rank
        cols = source.rank
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise PresentationError("map matrix shape mismatch")
        self.entries = [list(r) for r in entries]
        A = target.algebra
        if check:
            for i in range(rows):
                for j in range(cols):
                    ent = self.entries[i][j]
                    if ent is None:
                        continue
                    if ent.algebra is not A:
                        raise PresentationError("map entry must live in the target algebra")
                    want = target.shifts[i] - source.shifts[j]
                    if ent.degree != want:
                        raise PresentationError(
                            f"map entry ({i},{j}) has degree {ent.degree}, expected {want}"
                        )
        if normalize:
            tgt_e = self.target.entries
            src_e = self._source_entries_in_target()
            self.entries = entries_matmul(entries_matmul(tgt_e, self.entries), src_e)

    def _source_entries_in_target(self):
        """Source idempotent with entries reinterpreted in the target algebra
        (possible exactly in the label-wise coercion situations)."""
        if self.mode == "id":
            return self.source.entries
        A = self.target.algebra
        out = []
        for i, si in enumerate(self.source.shifts):
            row = []
            for j, sj in enumerate(self.source.shifts):
                ent = self.source.entries[i][j]
                if ent is None:
                    row.append(None)
                    continue
                coords = _coerce_coords(
                    self.mode, self.source.algebra, A, ent.degree, ent.coords
                )
                elt = A.element(ent.degree, coords) if any(coords) else None
                row.append(elt)
            out.append(row)
        return out

    # -- per-degree realization ----------------------------------------------
    def component_matrix(self, h: Degree):
        """The field matrix of P_h -> Q_h in the chosen component bases."""
        src_sp = self.source.space(h)
        tgt_sp = self.target.space(h)
        A = self.target.algebra
        F = A.field
        # coerce source ambient basis vectors into target-algebra coordinates
        src_degrees = src_sp.block_degrees
        coerced_dims = [A.component_dim(d) for d in src_degrees]
        # ambient action matrix of the entries on coerced source coordinates
        act = _entries_component_matrix(
            A, self.entries, src_degrees, coerced_dims, tgt_sp.block_degrees, tgt_sp.block_dims
        )
        cols = []
        for basis_col in src_sp.basis_columns:
            coerced = []
            off = 0
            for d, n_src in zip(src_degrees, src_sp.block_dims):
                chunk = basis_col[off : off + n_src]
                off += n_src
                coerced.extend(
                    _coerce_coords(self.mode, self.source.algebra, A, d, chunk)
                )
            if act and coerced:
                img = [row for row in _kernel.mat_mul(act, [[x] for x in coerced], F.char)]
                vec = [r[0] for r in img]
            else:
                vec = [F.zero] * tgt_sp.ambient_dim
            cols.append(tgt_sp.express(vec))
        # assemble (dim target) x (dim source)
        out = [[F.zero] * src_sp.dim for _ in range(tgt_sp.dim)]
        for c, col in enumerate(cols):
            for r, x in enumerate(col):
                out[r][c] = x
        return out

    def is_iso_on(self, window) -> bool:
        char = self.target.algebra.field.char
        for h in window:
            m = self.component_matrix(h)
            n_rows = len(m)
            n_cols = len(m[0]) if m else self.source.dim(h)
            if self.source.dim(h) != self.target.dim(h):
                return False
            if n_rows and _kernel.rank(m, char) != n_rows:
                return False
        return True

    def compose(self, inner: "GradedMap") -> "GradedMap":
        """self o inner (same-algebra maps only)."""
        if self.mode != "id" or inner.mode != "id":
            raise PresentationError("symbolic composition needs one common algebra")
        if inner.target is not self.source:
            raise PresentationError("composition target/source mismatch")
        return GradedMap(
            inner.source,
            self.target,
            entries_matmul(self.entries, inner.entries),
            normalize=False,
            check=False,
        )

    def __add__(self, other: "GradedMap"):
        if self.source is not other.source or self.target is not other.target:
            raise PresentationError("sum of maps with different ends")
        return GradedMap(
            self.source,
            self.target,
            entries_add(self.entries, other.entries),
            normalize=False,
            check=False,
        )


def identity_map(P: ProjectivePresentation) -> GradedMap:
    return GradedMap(P, P, P.entries, normalize=False, check=False)


def zero_map(P: ProjectivePresentation, Q: ProjectivePresentation) -> GradedMap:
    return GradedMap(
        P, Q, [[None] * P.rank for _ in range(Q.rank)], normalize=False, check=False
    )


def component_matrix(f: GradedMap, h: Degree):
    """Spec-level accessor: the matrix of f on the degree-h components."""
    return f.component_matrix(h)


# -- randomized test modules -------------------------------------------------


def random_presentation(A: GradedAlgebra, shifts, rng, density: int = 2) -> ProjectivePresentation:
    """A random projective presentation: a 0/1 diagonal idempotent
    conjugated by unitriangular matrices (exactly invertible)."""
    shifts = [s if isinstance(s, Degree) else A.deg(s) for s in shifts]
    k = len(shifts)
    F = A.field
    diag = [rng.randint(0, 1) for _ in range(k)]
    if not any(diag):
        diag[rng.randrange(k)] = 1
    one = A.one()
    d_entries = [[one if (i == j and diag[i]) else None for j in range(k)] for i in range(k)]

    def random_entry(i, j):
        d = shifts[i] - shifts[j]
        n = A.component_dim(d)
        if n == 0:
            return None
        coords = [F.of_int(rng.randint(-density, density)) for _ in range(n)]
        if not any(coords):
            return None
        return A.element(d, coords)

    def unitriangular(strict_lower: bool):
        N = [[None] * k for _ in range(k)]
        for i in range(k):
            for j in range(k):
                if (i > j) if strict_lower else (i < j):
                    if rng.random() < 0.75:
                        N[i][j] = random_entry(i, j)
        G = [[one if i == j else N[i][j] for j in range(k)] for i in range(k)]
        # inverse of 1 + N via the finite Neumann series (N is nilpotent)
        inv = identity_entries(A, shifts)
        power = [[N[i][j] for j in range(k)] for i in range(k)]
        sign = -1
        for _ in range(k):
            if entries_are_zero(power):
                break
            term = [
                [None if power[i][j] is None else power[i][j].scale(F.of_int(sign)) for j in range(k)]
                for i in range(k)
            ]
            inv = entries_add(inv, term)
            power = entries_matmul(power, [[N[i][j] for j in range(k)] for i in range(k)])
            sign = -sign
        return G, inv

    L, Linv = unitriangular(True)
    U, Uinv = unitriangular(False)
    g = entries_matmul(L, U)
    ginv = entries_matmul(Uinv, Linv)
    e = entries_matmul(entries_matmul(g, d_entries), ginv)
    return ProjectivePresentation(A, shifts, e, check=True)
