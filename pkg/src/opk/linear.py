"""Sparse linear combinations over Q, keyed by arbitrary hashable basis labels.

A Vec is just a dict {label: nonzero Fraction}.  Functions here keep the
no-stored-zero invariant so that equality of dicts is equality of vectors.
"""

from __future__ import annotations

from fractions import Fraction

from .exactlin import SparseMatrix, scalar


def vec(*pairs) -> dict:
    out = {}
    for label, c in pairs:
        add_to(out, label, c)
    return out


def add_to(acc: dict, label, c) -> dict:
    """acc += c * label, in place."""
    c = scalar(c)
    if c == 0:
        return acc
    s = acc.get(label)
    if s is None:
        acc[label] = c
    else:
        s = s + c
        if s == 0:
            del acc[label]
        else:
            acc[label] = s
    return acc


def add_vec(acc: dict, v: dict, c=1) -> dict:
    """acc += c * v, in place."""
    c = scalar(c)
    if c == 0:
        return acc
    for label, w in v.items():
        add_to(acc, label, c * w)
    return acc


def smul(c, v: dict) -> dict:
    c = scalar(c)
    if c == 0:
        return {}
    return {k: c * w for k, w in v.items()}


def vec_sub(u: dict, v: dict) -> dict:
    out = dict(u)
    add_vec(out, v, -1)
    return out


def is_zero(v: dict) -> bool:
    return not v


def matrix_of(image, domain_basis, codomain_index) -> SparseMatrix:
    """Matrix (codomain x domain) of a linear map given on basis labels.

    image(label) must return a Vec on codomain labels; codomain_index maps a
    codomain label to its row index.
    """
    entries = {}
    for j, label in enumerate(domain_basis):
        for out_label, c in image(label).items():
            entries[(codomain_index[out_label], j)] = c
    return SparseMatrix(len(codomain_index), len(domain_basis), entries)


def apply_matrix(m: SparseMatrix, v: dict, domain_index, codomain_basis) -> dict:
    """Apply a SparseMatrix to a Vec expressed on the domain basis."""
    out = {}
    cols = {}
    for label, c in v.items():
        cols[domain_index[label]] = c
    for (i, j), a in m.entries.items():
        c = cols.get(j)
        if c is not None:
            add_to(out, codomain_basis[i], a * c)
    return out
