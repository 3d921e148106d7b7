"""Graded vector spaces with named bases, cochain complexes and homology.

Conventions (used consistently across the package):

* cohomological grading, differentials have degree +1;
* shift (V[n])^i = V^{i+n}, so [1] moves a degree-1 element to degree 0,
  and the differential of c[n] is (-1)^n times the differential of c;
* Koszul rule: transposing x past y costs (-1)^{|x| |y|};
  d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy.
"""

from __future__ import annotations

from fractions import Fraction

from .exactlin import SparseMatrix, kernel_basis, rank
from .linear import add_to, add_vec, matrix_of


class CurvedComplexError(Exception):
    """Raised when an operation requires an honest (uncurved) complex."""


class ShapeMismatch(Exception):
    """Raised when degrees or dimensions of maps disagree."""


class GradedSpace:
    """Finite graded vector space with an ordered, labeled basis per degree."""

    def __init__(self, basis_by_degree):
        self.basis = {}
        self.index = {}
        for deg, labels in basis_by_degree.items():
            labels = tuple(labels)
            if not labels:
                continue
            if len(set(labels)) != len(labels):
                raise ValueError("duplicate labels in degree %d" % deg)
            self.basis[int(deg)] = labels
            self.index[int(deg)] = {lab: i for i, lab in enumerate(labels)}

    def degrees(self):
        return sorted(self.basis)

    def dim(self, deg: int) -> int:
        return len(self.basis.get(deg, ()))

    def dims(self) -> dict:
        return {d: len(b) for d, b in self.basis.items()}

    def total_dim(self) -> int:
        return sum(len(b) for b in self.basis.values())

    def labels(self, deg: int):
        return self.basis.get(deg, ())

    def degree_of(self, label):
        for d, idx in self.index.items():
            if label in idx:
                return d
        raise KeyError(label)

    def __eq__(self, other):
        return isinstance(other, GradedSpace) and self.basis == other.basis

    def __repr__(self):
        return "GradedSpace(%s)" % (self.dims(),)


class ChainComplex:
    """Cochain complex: graded space plus degree +1 differentials.

    differentials[i] : degree i -> degree i+1.  Missing matrices are zero.
    curvature[i], when present/nonzero, declares the defect d^{i+1} d^i; an
    honest complex has none.  The d^2 = defect identity is asserted exactly
    at construction.
    """

    def __init__(self, space: GradedSpace, differentials=None, curvature=None):
        self.space = space
        self.d = {}
        for i, m in (differentials or {}).items():
            i = int(i)
            expect = (space.dim(i + 1), space.dim(i))
            if (m.rows, m.cols) != expect:
                raise ShapeMismatch(
                    "differential at degree %d has shape %s, expected %s"
                    % (i, (m.rows, m.cols), expect)
                )
            if m.entries:
                self.d[i] = m
        self.curvature = {}
        for i, m in (curvature or {}).items():
            if m.entries:
                self.curvature[int(i)] = m
        self._assert_d_squared()

    def _assert_d_squared(self):
        for i in self.space.degrees():
            dd = self.diff(i + 1).matmul(self.diff(i))
            defect = self.curvature.get(i)
            if defect is None:
                if not dd.is_zero():
                    raise ValueError(
                        "d^2 != 0 at degree %d on an honest complex" % i
                    )
            elif dd != defect:
                raise ValueError("d^2 differs from declared curvature at %d" % i)

    def is_curved(self) -> bool:
        return bool(self.curvature)

    def diff(self, i: int) -> SparseMatrix:
        m = self.d.get(i)
        if m is not None:
            return m
        return SparseMatrix.zero(self.space.dim(i + 1), self.space.dim(i))

    def apply_d(self, deg: int, v: dict) -> dict:
        """Differential applied to a Vec supported in a single degree."""
        m = self.diff(deg)
        out = {}
        idx = self.space.index.get(deg, {})
        tgt = self.space.labels(deg + 1)
        cols = {idx[lab]: c for lab, c in v.items()}
        for (i, j), a in m.entries.items():
            c = cols.get(j)
            if c is not None:
                add_to(out, tgt[i], a * c)
        return out

    def __repr__(self):
        return "ChainComplex(dims=%s%s)" % (
            self.space.dims(),
            ", curved" if self.is_curved() else "",
        )


def complex_from_map(basis_by_degree, d_of_label, curvature=None) -> ChainComplex:
    """Build a ChainComplex from a function sending a basis label to a Vec."""
    space = GradedSpace(basis_by_degree)
    diffs = {}
    for i in space.degrees():
        idx_up = space.index.get(i + 1, {})

        def img(label, _i=i):
            out = d_of_label(label)
            for lab in out:
                if lab not in idx_up:
                    raise ShapeMismatch(
                        "d of degree-%d label %r leaves degree %d" % (_i, label, _i + 1)
                    )
            return out

        diffs[i] = matrix_of(img, space.labels(i), idx_up)
    return ChainComplex(space, diffs, curvature)


class ChainMap:
    """Degree-0 map of complexes; commutation with d is asserted exactly."""

    def __init__(self, source: ChainComplex, target: ChainComplex, components, check=True):
        self.source = source
        self.target = target
        self.f = {}
        for i, m in components.items():
            i = int(i)
            expect = (target.space.dim(i), source.space.dim(i))
            if (m.rows, m.cols) != expect:
                raise ShapeMismatch(
                    "chain map at degree %d has shape %s, expected %s"
                    % (i, (m.rows, m.cols), expect)
                )
            if m.entries:
                self.f[i] = m
        if check:
            bad = self.first_noncommuting_degree()
            if bad is not None:
                raise ValueError("f d != d f at degree %d" % bad)

    def component(self, i: int) -> SparseMatrix:
        m = self.f.get(i)
        if m is not None:
            return m
        return SparseMatrix.zero(self.target.space.dim(i), self.source.space.dim(i))

    def first_noncommuting_degree(self):
        degs = set(self.source.space.degrees()) | set(self.target.space.degrees())
        for i in sorted(degs):
            lhs = self.component(i + 1).matmul(self.source.diff(i))
            rhs = self.target.diff(i).matmul(self.component(i))
            if lhs != rhs:
                return i
        return None

    @classmethod
    def identity(cls, c: ChainComplex) -> "ChainMap":
        comps = {
            i: SparseMatrix.identity(c.space.dim(i)) for i in c.space.degrees()
        }
        return cls(c, c, comps, check=False)

    @classmethod
    def zero(cls, source: ChainComplex, target: ChainComplex) -> "ChainMap":
        return cls(source, target, {}, check=False)


class Homotopy:
    """Degree -1 collection of maps h^i: source^i -> target^{i-1}."""

    def __init__(self, source: ChainComplex, target: ChainComplex, components):
        self.source = source
        self.target = target
        self.h = {}
        for i, m in components.items():
            i = int(i)
            expect = (target.space.dim(i - 1), source.space.dim(i))
            if (m.rows, m.cols) != expect:
                raise ShapeMismatch(
                    "homotopy at degree %d has shape %s, expected %s"
                    % (i, (m.rows, m.cols), expect)
                )
            if m.entries:
                self.h[i] = m

    def component(self, i: int) -> SparseMatrix:
        m = self.h.get(i)
        if m is not None:
            return m
        return SparseMatrix.zero(self.target.space.dim(i - 1), self.source.space.dim(i))


def verify_homotopy(f: ChainMap, g: ChainMap, h: Homotopy):
    """Check f - g = d h + h d exactly.

    Returns (True, None) or (False, (degree, label)) with the first basis
    vector on which the identity fails.
    """
    if f.source is not g.source and f.source.space.basis != g.source.space.basis:
        raise ShapeMismatch("f and g have different sources")
    if f.target is not g.target and f.target.space.basis != g.target.space.basis:
        raise ShapeMismatch("f and g have different targets")
    src, tgt = f.source, f.target
    degs = set(src.space.degrees()) | set(tgt.space.degrees())
    for i in sorted(degs):
        lhs = f.component(i) - g.component(i)
        rhs = tgt.diff(i - 1).matmul(h.component(i)) + h.component(i + 1).matmul(
            src.diff(i)
        )
        if lhs != rhs:
            delta = lhs - rhs
            bad_col = min(j for (_, j) in delta.entries)
            return False, (i, src.space.labels(i)[bad_col])
    return True, None


class HomologyResult:
    def __init__(self, dims, representatives):
        self.dims = dims
        self.representatives = representatives

    def __eq__(self, other):
        if isinstance(other, dict):
            return self.dims == other
        return isinstance(other, HomologyResult) and self.dims == other.dims

    def __getitem__(self, deg):
        return self.dims[deg]

    def __repr__(self):
        return "Homology(%s)" % (self.dims,)


def homology(c: ChainComplex, window) -> HomologyResult:
    """Per-degree homology dimensions and representative cycles in a window.

    window is an inclusive (lo, hi) pair.  Requires the complex to be honest
    (zero curvature) on [lo - 1, hi + 1].
    """
    lo, hi = window
    for i, defect in c.curvature.items():
        if lo - 1 <= i <= hi + 1 and not defect.is_zero():
            raise CurvedComplexError(
                "curvature at degree %d inside requested window" % i
            )
    dims = {}
    reps = {}
    for i in range(lo, hi + 1):
        ker = kernel_basis(c.diff(i))
        rk_in = rank(c.diff(i - 1))
        dims[i] = len(ker) - rk_in
        # Representatives: kernel vectors independent modulo the image.
        im_vectors = []
        d_prev = c.diff(i - 1)
        for j in range(d_prev.cols):
            col = d_prev.column(j)
            if any(col):
                im_vectors.append(col)
        chosen = []
        n = c.space.dim(i)
        base_rank = _span_rank(im_vectors, n)
        current = list(im_vectors)
        for v in ker:
            if _span_rank(current + [v], n) > _span_rank(current, n):
                current.append(v)
                chosen.append(v)
            if len(chosen) == dims[i]:
                break
        labels = c.space.labels(i)
        reps[i] = [
            {labels[k]: coeff for k, coeff in enumerate(v) if coeff}
            for v in chosen
        ]
        assert len(reps[i]) == dims[i], "representative extraction failed"
        del base_rank
    return HomologyResult(dims, reps)


def _span_rank(vectors, n):
    if not vectors:
        return 0
    entries = {}
    for i, v in enumerate(vectors):
        for j, x in enumerate(v):
            if x:
                entries[(i, j)] = x
    return rank(SparseMatrix(len(vectors), n, entries))


def is_quasi_iso(f: ChainMap, window):
    """True iff f induces homology isomorphisms on every degree of window.

    On failure returns (False, (degree, certificate)) where the certificate
    records the two homology dimensions and the induced rank.
    """
    lo, hi = window
    for cx in (f.source, f.target):
        for i, defect in cx.curvature.items():
            if lo - 1 <= i <= hi + 1 and not defect.is_zero():
                raise CurvedComplexError("curved complex in is_quasi_iso window")
    hs = homology(f.source, window)
    ht = homology(f.target, window)
    for i in range(lo, hi + 1):
        if hs.dims[i] != ht.dims[i]:
            return False, (i, {"source_dim": hs.dims[i], "target_dim": ht.dims[i]})
        # Induced map injective <=> rank([f(cycles) + boundaries]) grows by dim H.
        n = f.target.space.dim(i)
        boundaries = []
        d_prev = f.target.diff(i - 1)
        for j in range(d_prev.cols):
            col = d_prev.column(j)
            if any(col):
                boundaries.append(col)
        fmat = f.component(i)
        images = []
        src_idx = f.source.space.index.get(i, {})
        for repv in hs.representatives[i]:
            dense = [Fraction(0)] * f.source.space.dim(i)
            for lab, coeff in repv.items():
                dense[src_idx[lab]] = coeff
            images.append(fmat.mul_vec(dense))
        r0 = _span_rank(boundaries, n)
        r1 = _span_rank(boundaries + images, n)
        if r1 - r0 != hs.dims[i]:
            return False, (
                i,
                {
                    "source_dim": hs.dims[i],
                    "target_dim": ht.dims[i],
                    "induced_rank": r1 - r0,
                },
            )
    return True, None


def tensor(c1: ChainComplex, c2: ChainComplex) -> ChainComplex:
    """Tensor product with Koszul-signed differential; labels are pairs."""
    basis = {}
    for d1 in c1.space.degrees():
        for d2 in c2.space.degrees():
            deg = d1 + d2
            for x in c1.space.labels(d1):
                for y in c2.space.labels(d2):
                    basis.setdefault(deg, []).append((x, y))
    degree_of_1 = {
        lab: d for d in c1.space.degrees() for lab in c1.space.labels(d)
    }
    degree_of_2 = {
        lab: d for d in c2.space.degrees() for lab in c2.space.labels(d)
    }

    def d_label(pair):
        x, y = pair
        dx_deg = degree_of_1[x]
        dy_deg = degree_of_2[y]
        out = {}
        for lab, coeff in c1.apply_d(dx_deg, {x: Fraction(1)}).items():
            add_to(out, (lab, y), coeff)
        sign = -1 if dx_deg % 2 else 1
        for lab, coeff in c2.apply_d(dy_deg, {y: Fraction(1)}).items():
            add_to(out, (x, lab), sign * coeff)
        return out

    if c1.is_curved() or c2.is_curved():
        raise CurvedComplexError("tensor of curved complexes is not supported")
    return complex_from_map(basis, d_label)


class _Shifted:
    """Label wrapper marking an n-fold shift; equal labels shift equally."""

    __slots__ = ("label", "n")

    def __init__(self, label, n):
        self.label = label
        self.n = n

    def __eq__(self, other):
        return (
            isinstance(other, _Shifted)
            and self.label == other.label
            and self.n == other.n
        )

    def __hash__(self):
        return hash(("_Shifted", self.label, self.n))

    def __repr__(self):
        return "s%+d(%r)" % (-self.n, self.label)


def _mk_shift(label, n: int):
    """Wrap a label in an n-fold shift; shifts of shifts collapse."""
    if isinstance(label, _Shifted):
        label, n = label.label, label.n + n
    if n == 0:
        return label
    return _Shifted(label, n)


def shift(c: ChainComplex, n: int) -> ChainComplex:
    """Shifted complex c[n]: (c[n])^i = c^{i+n}, differential times (-1)^n."""
    if n == 0:
        return c
    basis = {}
    unwrap = {}
    for d in c.space.degrees():
        labs = []
        for lab in c.space.labels(d):
            wrapped = _mk_shift(lab, n)
            unwrap[wrapped] = lab
            labs.append(wrapped)
        basis[d - n] = labs
    sign = -1 if n % 2 else 1

    def d_label(slab):
        lab = unwrap[slab]
        inner = c.apply_d(c.space.degree_of(lab), {lab: Fraction(1)})
        return {_mk_shift(t, n): sign * coeff for t, coeff in inner.items()}

    curvature = None
    if c.curvature:
        curvature = {i - n: m for i, m in c.curvature.items()}
        space = GradedSpace(basis)
        diffs = {}
        for i in space.degrees():
            idx_up = space.index.get(i + 1, {})
            diffs[i] = matrix_of(d_label, space.labels(i), idx_up)
        return ChainComplex(space, diffs, curvature)
    return complex_from_map(basis, d_label)


def unshift_label(label):
    return label.label if isinstance(label, _Shifted) else label
