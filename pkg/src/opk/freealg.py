"""Free graded-algebra combinatorics shared by the operad and bar machinery.

Contents:

* Koszul sign utilities for sorting and shuffling graded letters;
* Lyndon words and their standard bracketings;
* a normal-form calculus for free graded Lie algebras whose bracket has
  degree 1-n (n = 1 is the ordinary case), realized by expanding
  commutators in the tensor algebra on regraded letters and solving
  against a super-Lyndon basis;
* a free Poisson (P_n) monomial calculus: monomials are products of Lie
  normal forms, with product, bracket and substitution.

All identities about signs in this file are pinned by the relation tests
(antisymmetry, Jacobi, Leibniz, operad dimensions) rather than trusted.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .exactlin import SparseMatrix, solve
from .linear import add_to, add_vec, smul

ONE = Fraction(1)


# --- Koszul signs -----------------------------------------------------------


def koszul_sign_of_sort(keys, degrees):
    """Stable-sort positions by key; return (order, sign) or (order, 0).

    order is the list of original positions in sorted order.  The sign is
    the Koszul sign of the permutation (product of (-1)^{d_i d_j} over
    transposed pairs).  If two positions carry equal keys and odd degrees,
    the sign is 0 (odd squares vanish in a graded-commutative context);
    callers that do not want this behaviour should make keys distinct.
    """
    order = sorted(range(len(keys)), key=lambda i: (keys[i], i))
    sign = 1
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            i, j = order[a], order[b]
            if i > j and degrees[i] % 2 and degrees[j] % 2:
                sign = -sign
    for a in range(len(order) - 1):
        i, j = order[a], order[a + 1]
        if keys[i] == keys[j] and degrees[i] % 2 and degrees[j] % 2:
            return order, 0
    return order, sign


def koszul_transposition_sign(degrees, i):
    """Sign for swapping adjacent letters i, i+1."""
    return -1 if (degrees[i] % 2 and degrees[i + 1] % 2) else 1


def shuffle_sign(positions, degrees_left, degrees_right):
    """Koszul sign of the shuffle putting left letters at `positions`.

    positions is the sorted tuple of slots (0-based, within the merged word)
    taken by the left word; the remaining slots take the right word in
    order.  The sign counts right-letters jumped over by left-letters.
    """
    p, q = len(degrees_left), len(degrees_right)
    total = p + q
    posset = set(positions)
    sign = 1
    right_seen = 0
    li = 0
    for slot in range(total):
        if slot in posset:
            # left letter li passed right_seen right letters
            if degrees_left[li] % 2:
                for rj in range(right_seen):
                    if degrees_right[rj] % 2:
                        sign = -sign
            li += 1
        else:
            right_seen += 1
    return sign


def shuffles(p, q):
    """All (p, q)-shuffles as sorted tuples of the p slots of the left word."""
    return itertools.combinations(range(p + q), p)


# --- Lyndon words -----------------------------------------------------------


def is_lyndon(word):
    if not word:
        return False
    n = len(word)
    for i in range(1, n):
        if word[i:] <= word:
            return False
    return True


def lyndon_words_of_multiset(letters):
    """All Lyndon words using exactly the given multiset of letters."""
    seen = set()
    out = []
    for perm in itertools.permutations(sorted(letters)):
        if perm in seen:
            continue
        seen.add(perm)
        if is_lyndon(perm):
            out.append(perm)
    return sorted(out)


def std_bracketing(word):
    """Standard (Shirshov) bracketing of a Lyndon word, as nested pairs."""
    if len(word) == 1:
        return word[0]
    # split at the longest proper Lyndon suffix
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return (std_bracketing(word[:i]), std_bracketing(word[i:]))
    raise ValueError("not a Lyndon word: %r" % (word,))


def tree_letters(tree):
    if isinstance(tree, tuple):
        return tree_letters(tree[0]) + tree_letters(tree[1])
    return (tree,)


def tree_weight(tree):
    return len(tree_letters(tree))


# --- free graded Lie calculus ----------------------------------------------


class LieCalc:
    """Normal forms in the free Lie-type algebra with bracket degree 1 - n.

    Letters are integers 0..k-1 with the given degrees.  Trees are nested
    pairs over letters.  Normal forms are standard bracketings of Lyndon
    words, plus squares (t, t) of Lyndon trees of odd regraded degree.

    Everything is computed through the faithful expansion into the tensor
    algebra on letters regraded by +(n-1), with a decalage prefactor
    (-1)^{(n-1) deg(left)} per bracket node.
    """

    def __init__(self, n, degrees):
        self.n = n
        self.degrees = tuple(int(d) for d in degrees)
        self._coord_cache = {}

    # degrees

    def pdeg(self, tree):
        letters = tree_letters(tree)
        return sum(self.degrees[l] for l in letters) + (len(letters) - 1) * (1 - self.n)

    def rdeg(self, tree):
        letters = tree_letters(tree)
        return sum(self.degrees[l] + self.n - 1 for l in letters)

    # expansion into the tensor algebra on regraded letters

    def expand(self, tree):
        if not isinstance(tree, tuple):
            return {(tree,): ONE}
        a, b = tree
        ea, eb = self.expand(a), self.expand(b)
        out = {}
        swap_sign = -1 if (self.rdeg(a) % 2 and self.rdeg(b) % 2) else 1
        for wa, ca in ea.items():
            for wb, cb in eb.items():
                add_to(out, wa + wb, ca * cb)
                add_to(out, wb + wa, -swap_sign * ca * cb)
        if (self.n - 1) % 2 and self.pdeg(a) % 2:
            out = smul(-1, out)
        return out

    # normal-form basis for a letter multiset

    def basis_trees(self, letters):
        """Normal-form trees whose letter multiset is exactly `letters`."""
        letters = tuple(sorted(letters))
        trees = [std_bracketing(w) for w in lyndon_words_of_multiset(letters)]
        # squares of odd Lyndon trees for even-length multisets
        w = len(letters)
        if w % 2 == 0 and w >= 2:
            half_multisets = set()
            counts = {}
            for l in letters:
                counts[l] = counts.get(l, 0) + 1
            if all(c % 2 == 0 for c in counts.values()):
                half = tuple(
                    sorted(
                        itertools.chain.from_iterable(
                            [l] * (c // 2) for l, c in counts.items()
                        )
                    )
                )
                half_multisets.add(half)
            for half in half_multisets:
                for word in lyndon_words_of_multiset(half):
                    t = std_bracketing(word)
                    if self.rdeg(t) % 2:
                        trees.append((t, t))
        return trees

    def _coord_solver(self, letters):
        letters = tuple(sorted(letters))
        key = letters
        cached = self._coord_cache.get(key)
        if cached is not None:
            return cached
        basis = self.basis_trees(letters)
        expansions = [self.expand(t) for t in basis]
        words = sorted({w for e in expansions for w in e})
        word_index = {w: i for i, w in enumerate(words)}
        entries = {}
        for j, e in enumerate(expansions):
            for w, c in e.items():
                entries[(word_index[w], j)] = c
        mat = SparseMatrix(len(words), len(basis), entries)
        cached = (basis, word_index, mat)
        self._coord_cache[key] = cached
        return cached

    def coords(self, tree):
        """Express a bracket tree in the normal-form basis: Vec over trees."""
        letters = tuple(sorted(tree_letters(tree)))
        basis, word_index, mat = self._coord_solver(letters)
        target = self.expand(tree)
        b = [Fraction(0)] * mat.rows
        for w, c in target.items():
            if w not in word_index:
                raise ValueError("expansion left the component: %r" % (w,))
            b[word_index[w]] = c
        x = solve(mat, b)
        if x is None:
            raise ValueError(
                "tree %r is not in the span of the Lie normal forms" % (tree,)
            )
        out = {}
        for j, c in enumerate(x):
            if c:
                out[basis[j]] = c
        return out

    def bracket_nf(self, u, v):
        """Normal-form coordinates of [u, v] for normal-form trees u, v."""
        return self.coords((u, v))


# --- free Poisson (P_n) monomial calculus ------------------------------------


def _block_key(tree):
    return (tree_letters(tree), repr(tree))


class PoissonCalc:
    """Monomials in the free P_n-algebra on graded letters.

    A monomial is a tuple of Lie normal-form blocks in canonical order
    (sorted by letter content).  Vec values are dicts monomial -> Fraction.
    The commutative product has degree 0; the bracket has degree 1 - n and
    bottoms out in LieCalc.
    """

    def __init__(self, n, degrees):
        self.n = n
        self.degrees = tuple(int(d) for d in degrees)
        self.lie = LieCalc(n, degrees)

    def block_deg(self, tree):
        return self.lie.pdeg(tree)

    def mono_deg(self, mono):
        return sum(self.block_deg(b) for b in mono)

    def canon(self, blocks):
        """Canonically sort a block list; returns (monomial, sign) or (None, 0)."""
        keys = [_block_key(b) for b in blocks]
        degs = [self.block_deg(b) for b in blocks]
        order, sign = koszul_sign_of_sort(keys, degs)
        if sign == 0:
            return None, 0
        return tuple(blocks[i] for i in order), sign

    def mono_vec(self, blocks, coeff=ONE):
        mono, sign = self.canon(list(blocks))
        if sign == 0:
            return {}
        return {mono: coeff * sign}

    def product(self, u, v):
        """Product of Vecs of monomials."""
        out = {}
        for m1, c1 in u.items():
            for m2, c2 in v.items():
                mono, sign = self.canon(list(m1 + m2))
                if sign:
                    add_to(out, mono, c1 * c2 * sign)
        return out

    def bracket(self, u, v):
        out = {}
        for m1, c1 in u.items():
            for m2, c2 in v.items():
                add_vec(out, self._bracket_mono(m1, m2), c1 * c2)
        return out

    def _bracket_mono(self, m1, m2):
        if not m1 or not m2:
            return {}
        if len(m2) > 1:
            # {a, bc} = {a, b} c + (-1)^{|b||c|} {a, c} b  (paper's Leibniz form)
            b_block, rest = m2[0], m2[1:]
            b_vec = {(b_block,): ONE}
            rest_vec = {rest: ONE}
            term1 = self.product(self._bracket_mono(m1, (b_block,)), rest_vec)
            sign = -1 if (self.block_deg(b_block) % 2 and self.mono_deg(rest) % 2) else 1
            term2 = self.product(self._bracket_mono(m1, rest), b_vec)
            out = dict(term1)
            add_vec(out, term2, sign)
            return out
        if len(m1) > 1:
            # flip with {x, y} = (-1)^{n + |x||y|} {y, x}
            s = self.n + self.mono_deg(m1) * self.mono_deg(m2)
            flipped = self._bracket_mono(m2, m1)
            return smul(-1 if s % 2 else 1, flipped)
        nf = self.lie.bracket_nf(m1[0], m2[0])
        return {(t,): c for t, c in nf.items()}

    def evaluate_tree(self, tree, assignment):
        if not isinstance(tree, tuple):
            return assignment[tree]
        a, b = tree
        return self.bracket(self.evaluate_tree(a, assignment), self.evaluate_tree(b, assignment))

    def evaluate_mono(self, mono, assignment, target=None):
        """Substitute letter -> Vec (in `target` calculus, default self)."""
        tgt = target or self
        out = None
        for block in mono:
            val = tgt.evaluate_tree(block, assignment)
            out = val if out is None else tgt.product(out, val)
        return out if out is not None else {(): ONE}

    def evaluate_vec(self, vec, assignment, target=None):
        tgt = target or self
        out = {}
        for mono, c in vec.items():
            add_vec(out, self.evaluate_mono(mono, assignment, target), c)
        return out


def set_partitions(items):
    """All set partitions of a list, as tuples of tuples."""
    items = list(items)
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        # first joins an existing block
        for i in range(len(part)):
            yield part[:i] + ((first,) + part[i],) + part[i + 1:]
        # first alone
        yield ((first,),) + part


def multilinear_poisson_basis(n, m, degrees=None):
    """Basis monomials of P_n(m) on letters 0..m-1 (degree 0 by default)."""
    degrees = degrees or (0,) * m
    calc = PoissonCalc(n, degrees)
    out = []
    for part in set_partitions(range(m)):
        blocks_choices = []
        for block in part:
            trees = [std_bracketing(w) for w in lyndon_words_of_multiset(block)]
            blocks_choices.append(trees)
        for combo in itertools.product(*blocks_choices):
            mono, sign = calc.canon(list(combo))
            assert sign in (1, -1)
            out.append(mono)
    return sorted(set(out), key=repr), calc
