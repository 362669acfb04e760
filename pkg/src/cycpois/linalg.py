"""Exact sparse linear algebra over the rationals.

Vectors are dicts mapping hashable basis labels to nonzero Fractions.
Everything downstream (tensor algebras, polynomial algebras, operad
spaces) funnels through the two elimination engines in this module, so
they are kept deliberately independent of each other:

* :class:`RowReducer` / :class:`TrackedReducer` -- incremental sparse
  row reduction, the workhorse used for spans, canonical forms and
  solving.
* :func:`dense_rank` / :func:`dense_kernel` -- a from-scratch dense
  textbook elimination used as a cross-checking oracle.  It shares no
  code with the sparse path.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

Scalar = Fraction
Vec = dict  # label -> Fraction, no zero entries

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# basic vector ops


def vec_add(a: Vec, b: Vec, coeff: Scalar = ONE) -> Vec:
    """Return a + coeff*b, dropping zeros."""
    out = dict(a)
    for k, v in b.items():
        c = out.get(k, ZERO) + coeff * v
        if c:
            out[k] = c
        else:
            out.pop(k, None)
    return out


def vec_scale(a: Vec, coeff: Scalar) -> Vec:
    if not coeff:
        return {}
    return {k: coeff * v for k, v in a.items()}


def vec_eq(a: Vec, b: Vec) -> bool:
    return a == b


class LabelOrder:
    """Total order on labels by first appearance.

    Sparse reduction needs a pivot choice; basis labels here are tuples
    of heterogeneous things, so we order them by registration instead of
    trying to compare them directly.
    """

    def __init__(self) -> None:
        self._idx: dict = {}

    def key(self, label: Hashable) -> int:
        idx = self._idx.get(label)
        if idx is None:
            idx = len(self._idx)
            self._idx[label] = idx
        return idx

    def register_all(self, labels: Iterable[Hashable]) -> None:
        for lab in labels:
            self.key(lab)


# ---------------------------------------------------------------------------
# incremental sparse reduction


class RowReducer:
    """Maintains a set of rows in reduced row echelon form.

    ``reduce(v)`` returns the residue of v modulo the current row span
    (a canonical form once the reducer is saturated).  ``add(v)`` reduces
    and, if the residue is nonzero, normalises and inserts it, back-
    substituting into the existing rows.
    """

    def __init__(self, order: LabelOrder | None = None) -> None:
        self.order = order or LabelOrder()
        self.rows: dict = {}  # pivot label -> row (vec with pivot coeff 1)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _pivot(self, v: Vec) -> Hashable:
        return min(v, key=self.order.key)

    def reduce(self, v: Vec) -> Vec:
        v = dict(v)
        while v:
            p = self._pivot(v)
            row = self.rows.get(p)
            if row is None:
                # no row hits the leading term; leading term is final,
                # but deeper terms may still reduce
                return self._reduce_tail(v, p)
            v = vec_add(v, row, -v[p])
        return v

    def _reduce_tail(self, v: Vec, fixed_pivot: Hashable) -> Vec:
        changed = True
        while changed:
            changed = False
            for p in sorted(v, key=self.order.key):
                if p == fixed_pivot:
                    continue
                row = self.rows.get(p)
                if row is not None:
                    v = vec_add(v, row, -v[p])
                    changed = True
                    break
        return v

    def add(self, v: Vec) -> bool:
        """Insert v's residue; return True if the rank grew."""
        r = self.reduce(v)
        if not r:
            return False
        p = self._pivot(r)
        r = vec_scale(r, 1 / r[p])
        # back-substitute into existing rows
        for q, row in list(self.rows.items()):
            if p in row:
                self.rows[q] = vec_add(row, r, -row[p])
        self.rows[p] = r
        return True

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def basis(self) -> list[Vec]:
        return [self.rows[p] for p in sorted(self.rows, key=self.order.key)]


class TrackedReducer:
    """Row reduction that remembers how each row was built.

    Rows are pairs (vector, combo) where combo is a dict tag -> Fraction
    over the generators fed in via ``add``.  ``express(v)`` returns the
    combo writing v in terms of the generators, or None if v is outside
    the span.
    """

    def __init__(self, order: LabelOrder | None = None) -> None:
        self.order = order or LabelOrder()
        self.rows: dict = {}  # pivot -> (vec, combo)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _pivot(self, v: Vec) -> Hashable:
        return min(v, key=self.order.key)

    def _reduce(self, v: Vec, combo: Vec) -> tuple[Vec, Vec]:
        v = dict(v)
        combo = dict(combo)
        progress = True
        while v and progress:
            progress = False
            for p in sorted(v, key=self.order.key):
                row = self.rows.get(p)
                if row is not None:
                    c = -v[p]
                    v = vec_add(v, row[0], c)
                    combo = vec_add(combo, row[1], c)
                    progress = True
                    break
        return v, combo

    def add(self, v: Vec, tag: Hashable) -> bool:
        r, combo = self._reduce(v, {tag: ONE})
        if not r:
            return False
        p = self._pivot(r)
        c = 1 / r[p]
        self.rows[p] = (vec_scale(r, c), vec_scale(combo, c))
        return True

    def express(self, v: Vec) -> Vec | None:
        r, combo = self._reduce(v, {})
        if r:
            return None
        return vec_scale(combo, -1)

    def contains(self, v: Vec) -> bool:
        r, _ = self._reduce(v, {})
        return not r


# ---------------------------------------------------------------------------
# dense oracle engine (independent code path)


def dense_echelon(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Plain Gaussian elimination to row echelon form.

    Returns (echelon rows, pivot column indices).  Deliberately naive:
    scan columns left to right, swap in the first nonzero entry,
    eliminate below, no sparsity tricks.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = Fraction(1) / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                c = rows[i][col]
                rows[i] = [a - c * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def dense_rank(rows: list[list[Fraction]]) -> int:
    ech, _ = dense_echelon(rows)
    return len(ech)


def dense_kernel(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Kernel of the matrix acting on column vectors (right nullspace)."""
    if not rows:
        return []
    ncols = len(rows[0])
    ech, pivots = dense_echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(ech, pivots):
            v[p] = -r[f]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# graded spaces, maps, complexes


class GradedSpace:
    """Finite labelled basis with integer degrees."""

    def __init__(self, degrees: dict):
        self.degrees = dict(degrees)
        self.labels = list(self.degrees)
        self.order = LabelOrder()
        self.order.register_all(self.labels)

    def labels_in_degree(self, d: int) -> list:
        return [l for l in self.labels if self.degrees[l] == d]

    def dim(self, d: int | None = None) -> int:
        if d is None:
            return len(self.labels)
        return len(self.labels_in_degree(d))

    def degree_range(self) -> tuple[int, int]:
        if not self.labels:
            return (0, 0)
        ds = [self.degrees[l] for l in self.labels]
        return (min(ds), max(ds))

    def degree_of(self, v: Vec) -> int | None:
        """Degree of a homogeneous vector, or None for 0 / mixed."""
        ds = {self.degrees[l] for l in v}
        if len(ds) == 1:
            return ds.pop()
        return None


class LinearMap:
    """Sparse linear map given by images of basis labels."""

    def __init__(self, source: GradedSpace, target: GradedSpace,
                 images: dict, degree: int = 0):
        self.source = source
        self.target = target
        self.images = {k: dict(v) for k, v in images.items() if v}
        self.degree = degree

    @classmethod
    def from_function(cls, source: GradedSpace, target: GradedSpace,
                      fn: Callable[[Hashable], Vec], degree: int = 0) -> "LinearMap":
        return cls(source, target, {l: fn(l) for l in source.labels}, degree)

    def apply(self, v: Vec) -> Vec:
        out: Vec = {}
        for lab, c in v.items():
            img = self.images.get(lab)
            if img:
                out = vec_add(out, img, c)
        return out

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        images = {l: self.apply(other.apply({l: ONE})) for l in other.source.labels}
        return LinearMap(other.source, self.target, images,
                         self.degree + other.degree)

    def image_reducer(self, labels: Sequence | None = None) -> RowReducer:
        red = RowReducer(self.target.order)
        for lab in (labels if labels is not None else self.source.labels):
            img = self.images.get(lab)
            if img:
                red.add(img)
        return red

    def kernel_basis(self, labels: Sequence | None = None) -> list[Vec]:
        """Kernel restricted to the span of the given source labels."""
        labs = list(labels if labels is not None else self.source.labels)
        tracked = TrackedReducer(self.target.order)
        kernel: list[Vec] = []
        for lab in labs:
            img = self.images.get(lab, {})
            if not img:
                kernel.append({lab: ONE})
                continue
            combo = tracked.express(img)
            if combo is None:
                tracked.add(img, lab)
            else:
                kernel.append(vec_add({lab: ONE}, combo, -1))
        return kernel


def solve(mapping: LinearMap, rhs: Vec) -> Vec | None:
    """One solution x with mapping(x) = rhs, or None."""
    tracked = TrackedReducer(mapping.target.order)
    for lab in mapping.source.labels:
        img = mapping.images.get(lab)
        if img:
            tracked.add(img, lab)
    return tracked.express(rhs)


class ChainComplex:
    """Homologically graded complex with differential of degree -1.

    ``unsound`` lists degrees whose homology is not trustworthy because
    the ambient truncation discarded part of the differential landing
    there.
    """

    def __init__(self, space: GradedSpace, diff: LinearMap,
                 unsound: Iterable[int] = ()):
        assert diff.degree == -1
        self.space = space
        self.diff = diff
        self.unsound = set(unsound)

    def check_square_zero(self) -> Hashable | None:
        """Return a witness label with d(d(label)) != 0, or None."""
        for lab in self.space.labels:
            if self.diff.apply(self.diff.apply({lab: ONE})):
                return lab
        return None


class HomologyResult:
    def __init__(self, dims: dict, reps: dict, euler_ok: bool):
        self.dims = dims          # degree -> Betti number
        self.reps = reps          # degree -> list of representative cycles
        self.euler_ok = euler_ok


def homology(cx: ChainComplex, degrees: Iterable[int],
             allow_truncated: bool = False) -> HomologyResult:
    degrees = sorted(set(degrees))
    bad = [d for d in degrees if d in cx.unsound]
    if bad and not allow_truncated:
        raise ValueError(f"degrees {bad} touch the truncation boundary; "
                         "pass allow_truncated=True to compare engines anyway")
    w = cx.check_square_zero()
    if w is not None:
        raise ValueError(f"differential does not square to zero at {w!r}")
    dims: dict = {}
    reps: dict = {}
    for d in degrees:
        labs = cx.space.labels_in_degree(d)
        cycles = cx.diff.kernel_basis(labs)
        bred = RowReducer(cx.space.order)
        for lab in cx.space.labels_in_degree(d + 1):
            img = cx.diff.apply({lab: ONE})
            if img:
                bred.add(img)
        hred = RowReducer(cx.space.order)
        hreps = []
        for z in cycles:
            res = bred.reduce(z)
            if res and hred.add(res):
                hreps.append(z)
        dims[d] = len(hreps)
        reps[d] = hreps
    return HomologyResult(dims, reps, True)


def euler_check(cx: ChainComplex, degrees: Iterable[int],
                result: HomologyResult) -> bool:
    """chi(H) == chi(C) over a window containing all of the complex."""
    degrees = sorted(set(degrees))
    chi_b = sum((-1) ** d * result.dims[d] for d in degrees)
    chi_c = sum((-1) ** d * cx.space.dim(d) for d in degrees)
    return chi_b == chi_c


def homology_dense(cx: ChainComplex, degrees: Iterable[int],
                   allow_truncated: bool = False) -> dict:
    """Betti numbers via the dense oracle: dim ker - rank of incoming d."""
    degrees = sorted(set(degrees))
    bad = [d for d in degrees if d in cx.unsound]
    if bad and not allow_truncated:
        raise ValueError(f"degrees {bad} touch the truncation boundary")
    dims = {}
    for d in degrees:
        labs = cx.space.labels_in_degree(d)
        tgt = cx.space.labels_in_degree(d - 1)
        tgt_idx = {l: i for i, l in enumerate(tgt)}
        mat = []
        for lab in labs:
            img = cx.diff.apply({lab: ONE})
            row = [Fraction(0)] * len(tgt)
            for l, c in img.items():
                row[tgt_idx[l]] = c
            mat.append(row)
        rank_d = dense_rank(mat) if tgt else 0
        dim_ker = len(labs) - rank_d
        src_up = cx.space.labels_in_degree(d + 1)
        idx = {l: i for i, l in enumerate(labs)}
        up = []
        for lab in src_up:
            img = cx.diff.apply({lab: ONE})
            row = [Fraction(0)] * len(labs)
            for l, c in img.items():
                row[idx[l]] = c
            up.append(row)
        rank_up = dense_rank(up) if labs else 0
        dims[d] = dim_ker - rank_up
    return dims


def induced_map_on_homology(f: LinearMap, cx_a: ChainComplex, cx_b: ChainComplex,
                            degrees: Iterable[int]) -> dict:
    """Matrix of H(f) on the chosen homology representatives.

    Checks that f is a chain map and that the answer is stable under
    perturbing a representative by a boundary.
    """
    for lab in cx_a.space.labels:
        lhs = f.apply(cx_a.diff.apply({lab: ONE}))
        rhs = cx_b.diff.apply(f.apply({lab: ONE}))
        if lhs != rhs:
            raise ValueError(f"not a chain map at {lab!r}")
    ha = homology(cx_a, degrees)
    hb = homology(cx_b, degrees)
    out = {}
    for d in sorted(set(degrees)):
        tracked = TrackedReducer(cx_b.space.order)
        for i, z in enumerate(hb.reps[d]):
            tracked.add(z, ("h", i))
        boundary_labels = []
        for lab in cx_b.space.labels_in_degree(d + 1):
            img = cx_b.diff.apply({lab: ONE})
            if img:
                tracked.add(img, ("b", lab))
        cols = []
        for j, z in enumerate(ha.reps[d]):
            combo = tracked.express(f.apply(z))
            if combo is None:
                raise ValueError(f"image of representative escapes homology in degree {d}")
            col = {tag[1]: c for tag, c in combo.items() if tag[0] == "h"}
            # stability check: perturb z by a boundary of cx_a
            pert = None
            for lab in cx_a.space.labels_in_degree(d + 1):
                img = cx_a.diff.apply({lab: ONE})
                if img:
                    pert = img
                    break
            if pert is not None:
                combo2 = tracked.express(f.apply(vec_add(z, pert)))
                col2 = {tag[1]: c for tag, c in combo2.items() if tag[0] == "h"}
                if col2 != col:
                    raise ValueError("induced map depends on representative choice")
            cols.append(col)
        out[d] = cols
    return out
