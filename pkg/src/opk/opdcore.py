"""Symmetric sequences, operads, cooperads and the standard library.

Operads are stored with explicit monomial bases up to a caller-chosen
max_arity; compositions that would exceed it raise UnsupportedArity rather
than silently truncating.

Label conventions for the standard operads:

* Ass / Ass_un: words = tuples of the letters 0..m-1 (each exactly once);
  the unit of the algebra is the empty word () in arity 0.
* Comm / Comm_un: the single label "c" per arity.
* Lie: Lyndon normal-form bracket trees (nested pairs over letters).
* Pn / Pn_un: free-Poisson monomials = tuples of Lie normal-form blocks.

Cooperads reuse the dual bases arity-wise with the transposed
(co)composition.  Curved variants (coAss_theta, coPn_theta) extend the
label alphabet by a repeatable star letter of degree -2 (the image of the
unit under Koszul duality) and carry the curving functional on arity 1.
Degree conventions for cooperads are degree-preserving duals, matching the
cobracket degree 1-n of shifted Poisson coalgebras; the comparison with
bar-construction tree gradings may require a regrading, which is recorded
where it matters.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .exactlin import SparseMatrix
from .freealg import (
    LieCalc,
    PoissonCalc,
    lyndon_words_of_multiset,
    multilinear_poisson_basis,
    std_bracketing,
    tree_letters,
)
from .gradedcx import GradedSpace
from .linear import add_to, add_vec, matrix_of, smul

ONE = Fraction(1)

STAR = -1  # the repeatable star letter inside curved cooperad labels


class UnsupportedArity(Exception):
    pass


class ArityMismatch(Exception):
    pass


# --- symmetric sequences -----------------------------------------------------


class SymSeq:
    """Arity-indexed graded spaces with S_m-actions via adjacent swaps.

    transpositions[m] is a list of m-1 matrices, the actions of the
    adjacent transpositions s_1 .. s_{m-1} on the arity-m component.
    Braid relations and invertibility are asserted at construction.
    """

    def __init__(self, components, transpositions, check=True):
        self.components = dict(components)  # m -> GradedSpace
        self.transpositions = {m: list(ms) for m, ms in transpositions.items()}
        if check:
            self._assert_braid()

    def _assert_braid(self):
        for m, mats in self.transpositions.items():
            dim = self.components[m].total_dim()
            if len(mats) != max(m - 1, 0):
                raise ValueError("arity %d needs %d transpositions" % (m, m - 1))
            eye = SparseMatrix.identity(dim)
            for i, s in enumerate(mats):
                if s.matmul(s) != eye:
                    raise ValueError("s_%d^2 != id in arity %d" % (i + 1, m))
            for i in range(len(mats) - 1):
                lhs = mats[i].matmul(mats[i + 1]).matmul(mats[i])
                rhs = mats[i + 1].matmul(mats[i]).matmul(mats[i + 1])
                if lhs != rhs:
                    raise ValueError("braid relation fails in arity %d" % m)
            for i in range(len(mats)):
                for j in range(i + 2, len(mats)):
                    if mats[i].matmul(mats[j]) != mats[j].matmul(mats[i]):
                        raise ValueError("distant swaps do not commute in arity %d" % m)

    def arities(self):
        return sorted(self.components)

    def component(self, m) -> GradedSpace:
        return self.components[m]

    def flat_basis(self, m):
        """All labels of arity m in a fixed order (degree-major)."""
        sp = self.components[m]
        out = []
        for d in sp.degrees():
            out.extend(sp.labels(d))
        return out

    def action_matrix(self, m, perm):
        """Action of an arbitrary permutation, composed from adjacent swaps.

        perm is a tuple with perm[i] = image of input i (0-based).
        """
        mats = self.transpositions[m]
        dim = self.components[m].total_dim()
        result = SparseMatrix.identity(dim)
        current = list(perm)
        # bubble-sort current to identity, applying generators
        changed = True
        while changed:
            changed = False
            for i in range(len(current) - 1):
                if current[i] > current[i + 1]:
                    current[i], current[i + 1] = current[i + 1], current[i]
                    result = result.matmul(mats[i])
                    changed = True
        return result


def _flat_index(space: GradedSpace):
    idx = {}
    k = 0
    for d in space.degrees():
        for lab in space.labels(d):
            idx[lab] = k
            k += 1
    return idx


# --- the operad class ---------------------------------------------------------


class Operad:
    """An operad with explicit bases and label-level composition.

    kind in {"ass", "comm", "lie", "poisson"}; unital adds an arity-0 unit.
    Composition is implemented by substitution in the corresponding free
    structure; operadic associativity, equivariance and unit axioms are
    checked on basis elements at construction (up to check_arity).
    """

    def __init__(self, kind, max_arity, unital=False, n=None, check_arity=3):
        if max_arity < 2:
            raise UnsupportedArity("max_arity must be at least 2")
        if max_arity > 7:
            raise UnsupportedArity("enumeration budget is arity 7")
        self.kind = kind
        self.n = n
        self.unital = unital
        self.max_arity = max_arity
        self.name = kind + ("_un" if unital else "") + (str(n) if n is not None else "")
        self._calc_cache = {}
        self._basis = {}
        self._degree = {}
        lo = 0 if unital else 1
        for m in range(lo, max_arity + 1):
            labs = self._enumerate(m)
            self._basis[m] = labs
            for lab in labs:
                self._degree[(m, lab)] = self._label_degree(m, lab)
        self._symseq = None
        self._assert_axioms(check_arity)

    # enumeration ------------------------------------------------------------

    def _enumerate(self, m):
        if self.kind == "ass":
            if m == 0:
                return [()] if self.unital else []
            return [tuple(p) for p in itertools.permutations(range(m))]
        if self.kind == "comm":
            if m == 0:
                return ["c"] if self.unital else []
            return ["c"]
        if self.kind == "lie":
            if m == 0:
                return []
            if m == 1:
                return [0]
            calc = LieCalc(1, (0,) * m)
            return calc.basis_trees(range(m))
        if self.kind == "poisson":
            if m == 0:
                return [()] if self.unital else []
            basis, _ = multilinear_poisson_basis(self.n, m)
            return list(basis)
        raise ValueError("unknown operad kind %r" % self.kind)

    def _label_degree(self, m, lab):
        if self.kind == "poisson":
            calc = self._calc(m)
            return calc.mono_deg(lab)
        return 0

    def _calc(self, nletters) -> PoissonCalc:
        key = nletters
        if key not in self._calc_cache:
            n = self.n if self.kind == "poisson" else 1
            self._calc_cache[key] = PoissonCalc(n, (0,) * max(nletters, 1))
        return self._calc_cache[key]

    # queries ------------------------------------------------------------------

    def basis(self, m):
        if m not in self._basis:
            raise UnsupportedArity("arity %d exceeds stored max %d" % (m, self.max_arity))
        return self._basis[m]

    def degree(self, m, lab):
        return self._degree[(m, lab)]

    def dim(self, m):
        return len(self.basis(m))

    @property
    def unit(self):
        if self.kind == "ass":
            return (0,)
        if self.kind == "comm":
            return "c"
        if self.kind == "lie":
            return 0
        # poisson: the arity-1 monomial whose single block is the letter 0
        return (0,)

    def component_space(self, m) -> GradedSpace:
        by_deg = {}
        for lab in self.basis(m):
            by_deg.setdefault(self.degree(m, lab), []).append(lab)
        return GradedSpace(by_deg)

    def symseq(self) -> SymSeq:
        if self._symseq is None:
            comps = {m: self.component_space(m) for m in self._basis}
            transps = {}
            for m in self._basis:
                flat = self.flat_basis(m)
                idx = {lab: i for i, lab in enumerate(flat)}
                mats = []
                for i in range(1, m):
                    def img(lab, _i=i, _m=m):
                        return self.transpose_label(_m, lab, _i)
                    mats.append(matrix_of(img, flat, idx))
                transps[m] = mats
            self._symseq = SymSeq(comps, transps)
        return self._symseq

    def flat_basis(self, m):
        sp = self.component_space(m)
        out = []
        for d in sp.degrees():
            out.extend(sp.labels(d))
        return out

    # symmetric action -----------------------------------------------------------

    def transpose_label(self, m, lab, i):
        """Action of the adjacent transposition s_i (swapping inputs i-1, i ...

        0-based: swaps letters i-1 and i).  Returns a Vec over labels.
        """
        swap = {i - 1: i, i: i - 1}

        def rl(letter):
            return swap.get(letter, letter)

        if self.kind == "ass":
            return {tuple(rl(x) for x in lab): ONE}
        if self.kind == "comm":
            return {lab: ONE}
        if self.kind == "lie":
            calc = LieCalc(1, (0,) * m)
            return calc.coords(_relabel_tree(lab, rl)) if isinstance(lab, tuple) else {rl(lab): ONE}
        calc = self._calc(m)
        out = {}
        blocks = [_relabel_tree(b, rl) for b in lab]
        # renormalize each block, then multiply back together
        vec = {(): ONE}
        for b in blocks:
            if isinstance(b, tuple):
                part = {(t,): c for t, c in calc.lie.coords(b).items()}
            else:
                part = {(b,): ONE}
            vec = calc.product(vec, part)
        return vec

    def apply_perm(self, m, vec, perm):
        """Apply a permutation (perm[i] = image of letter i) to a Vec."""
        out = dict(vec)
        current = list(perm)
        # decompose into adjacent swaps (bubble sort), applying as we go
        changed = True
        while changed:
            changed = False
            for i in range(m - 1):
                if current[i] > current[i + 1]:
                    current[i], current[i + 1] = current[i + 1], current[i]
                    nxt = {}
                    for lab, c in out.items():
                        add_vec(nxt, self.transpose_label(m, lab, i + 1), c)
                    out = nxt
                    changed = True
        return out

    # composition -------------------------------------------------------------------

    def compose_label(self, m, lab, i, k, qlab):
        """Partial composition: plug an arity-k label into slot i (0-based).

        Returns a Vec over arity-(m+k-1) labels.
        """
        new_arity = m + k - 1
        if new_arity > self.max_arity:
            raise UnsupportedArity(
                "composition reaches arity %d > max %d" % (new_arity, self.max_arity)
            )
        if not (0 <= i < m):
            raise ArityMismatch("slot %d out of range for arity %d" % (i, m))

        def shift_outer(letter):
            return letter if letter < i else letter + k - 1

        if self.kind == "ass":
            inner = tuple(x + i for x in qlab)
            out = []
            for x in lab:
                if x == i:
                    out.extend(inner)
                else:
                    out.append(shift_outer(x))
            return {tuple(out): ONE}
        if self.kind == "comm":
            return {"c": ONE} if new_arity >= 1 else {"c": ONE}
        # lie / poisson via free-algebra substitution
        calc_t = self._calc(max(new_arity, 1))
        assignment = {}
        for letter in range(m):
            if letter == i:
                continue
            assignment[letter] = {(shift_outer(letter),): ONE}
        if self.kind == "lie":
            inner_vec = {(_relabel_tree(qlab, lambda x: x + i),): ONE}
        else:
            inner_vec = {tuple(_relabel_tree(b, lambda x: x + i) for b in qlab): ONE}
        # renormalize inner blocks in the target calculus
        inner_norm = {}
        for mono, c in inner_vec.items():
            v = {(): ONE}
            for b in mono:
                if isinstance(b, tuple):
                    part = {(t,): cc for t, cc in calc_t.lie.coords(b).items()}
                else:
                    part = {(b,): ONE}
                v = calc_t.product(v, part)
            add_vec(inner_norm, v, c)
        assignment[i] = inner_norm

        if self.kind == "lie":
            src_mono = (lab,)
        else:
            src_mono = lab
        calc_s = self._calc(max(m, 1))
        result = calc_s.evaluate_mono(src_mono, assignment, target=calc_t)
        if self.kind == "lie":
            out = {}
            for mono, c in result.items():
                if len(mono) != 1:
                    raise ArityMismatch("lie composition left the Lie suboperad")
                add_to(out, mono[0], c)
            return out
        return result

    def compose(self, m, pvec, i, k, qvec):
        out = {}
        for lab, c in pvec.items():
            for qlab, d in qvec.items():
                add_vec(out, self.compose_label(m, lab, i, k, qlab), c * d)
        return out

    # axioms ---------------------------------------------------------------------

    def _assert_axioms(self, check_arity):
        # unit axioms: u o_0 p = p and p o_i u = p
        top = min(check_arity, self.max_arity)
        for m in range(1, top + 1):
            for lab in self.basis(m):
                got = self.compose_label(1, self.unit, 0, m, lab)
                if got != {lab: ONE}:
                    raise ValueError("left unit axiom fails for %r" % (lab,))
                for i in range(m):
                    got = self.compose_label(m, lab, i, 1, self.unit)
                    if got != {lab: ONE}:
                        raise ValueError("right unit axiom fails for %r" % (lab,))

    def check_associativity(self, max_arity=3):
        """Sequential and parallel o_i axioms on all basis tuples (exact)."""
        for m in range(1, max_arity + 1):
            for k in range(1, max_arity + 1):
                for l in range(1, max_arity + 1):
                    if m + k + l - 2 > self.max_arity:
                        continue
                    for p in self.basis(m):
                        for q in self.basis(k):
                            for r in self.basis(l):
                                self._assoc_one(m, p, k, q, l, r)
        return True

    def _assoc_one(self, m, p, k, q, l, r):
        sq = self.degree(k, q) % 2
        sr = self.degree(l, r) % 2
        for i in range(m):
            # sequential: (p o_i q) o_{i+j} r = p o_i (q o_j r)
            pq = self.compose_label(m, p, i, k, q)
            for j in range(k):
                lhs = {}
                for lab, c in pq.items():
                    add_vec(lhs, self.compose_label(m + k - 1, lab, i + j, l, r), c)
                qr = self.compose_label(k, q, j, l, r)
                rhs = {}
                for lab, c in qr.items():
                    add_vec(rhs, self.compose_label(m, p, i, k + l - 1, lab), c)
                if lhs != rhs:
                    raise ValueError(
                        "sequential operad axiom fails: %r o_%d %r o_%d %r"
                        % (p, i, q, j, r)
                    )
            # parallel: (p o_i q) o_{j'} r = +- (p o_j r) o_i q for j > i
            for j in range(i + 1, m):
                lhs = {}
                for lab, c in pq.items():
                    add_vec(lhs, self.compose_label(m + k - 1, lab, j + k - 1, l, r), c)
                pr = self.compose_label(m, p, j, l, r)
                rhs = {}
                for lab, c in pr.items():
                    add_vec(rhs, self.compose_label(m + l - 1, lab, i, k, q), c)
                sign = -1 if (sq and sr) else 1
                if lhs != smul(sign, rhs):
                    raise ValueError(
                        "parallel operad axiom fails: %r, slots %d < %d" % (p, i, j)
                    )


def _relabel_tree(tree, f):
    if isinstance(tree, tuple):
        return (_relabel_tree(tree[0], f), _relabel_tree(tree[1], f))
    return f(tree)


def standard_operad(name, max_arity) -> Operad:
    """The operads Ass, Ass_un, Comm, Comm_un, Lie, Pn(n), Pn_un(n)."""
    key = name.strip()
    if key in ("Ass", "ass"):
        return Operad("ass", max_arity)
    if key in ("Ass_un", "ass_un"):
        return Operad("ass", max_arity, unital=True)
    if key in ("Comm", "comm"):
        return Operad("comm", max_arity)
    if key in ("Comm_un", "comm_un"):
        return Operad("comm", max_arity, unital=True)
    if key in ("Lie", "lie"):
        return Operad("lie", max_arity)
    if key.startswith(("Pn", "pn", "P", "p")):
        unital = key.endswith("_un") or "_un(" in key or "un" in key.split("(")[0]
        digits = "".join(ch for ch in key if ch.isdigit())
        if not digits:
            raise ValueError("Pn operad needs its n, e.g. 'P1' or 'Pn_un(2)'")
        return Operad("poisson", max_arity, unital=unital, n=int(digits))
    raise ValueError("unknown operad name %r" % name)
