from fractions import Fraction

import pytest

from opk.exactlin import SparseMatrix
from opk.gradedcx import (
    ChainComplex,
    ChainMap,
    CurvedComplexError,
    GradedSpace,
    Homotopy,
    complex_from_map,
    homology,
    is_quasi_iso,
    shift,
    tensor,
    verify_homotopy,
)


def point_complex(label="e", degree=0):
    return ChainComplex(GradedSpace({degree: [label]}), {})


def interval_complex():
    # k --id--> k in degrees 0, 1: acyclic.
    space = GradedSpace({0: ["a"], 1: ["b"]})
    return ChainComplex(space, {0: SparseMatrix.identity(1)})


def ce_nonabelian_b():
    # Chevalley-Eilenberg chains of <x, y | [x,y] = y>, built by hand:
    # degrees 0, -1, -2 with d(sx.sy) = sy.
    space = GradedSpace({0: ["1"], -1: ["sx", "sy"], -2: ["sxsy"]})
    d = {-2: SparseMatrix.from_rows([[0], [1]])}
    return ChainComplex(space, d)


def test_homology_point():
    h = homology(point_complex(), (0, 0))
    assert h.dims == {0: 1}
    assert h.representatives[0] == [{"e": Fraction(1)}]


def test_homology_acyclic_interval():
    h = homology(interval_complex(), (0, 1))
    assert h.dims == {0: 0, 1: 0}


def test_homology_ce_nonabelian():
    h = homology(ce_nonabelian_b(), (-2, 0))
    assert h.dims == {0: 1, -1: 1, -2: 0}


def test_homology_rejects_curved():
    space = GradedSpace({0: ["a"], 1: ["b"], 2: ["c"]})
    one = SparseMatrix.identity(1)
    curved = ChainComplex(space, {0: one, 1: one}, curvature={0: one})
    with pytest.raises(CurvedComplexError):
        homology(curved, (0, 2))


def test_homology_independent_of_basis_order():
    space = GradedSpace({0: ["1"], -1: ["sy", "sx"], -2: ["sxsy"]})
    d = {-2: SparseMatrix.from_rows([[1], [0]])}
    permuted = ChainComplex(space, d)
    assert homology(permuted, (-2, 0)).dims == homology(ce_nonabelian_b(), (-2, 0)).dims


def test_euler_characteristic():
    c = ce_nonabelian_b()
    h = homology(c, (-2, 0))
    chi_h = sum((-1) ** (i % 2) * n for i, n in h.dims.items())
    chi_c = sum((-1) ** (i % 2) * c.space.dim(i) for i in c.space.degrees())
    assert chi_h == chi_c


def test_quasi_iso_identity():
    c = ce_nonabelian_b()
    ok, _ = is_quasi_iso(ChainMap.identity(c), (-2, 0))
    assert ok


def test_quasi_iso_zero_between_acyclics():
    a, b = interval_complex(), interval_complex()
    ok, _ = is_quasi_iso(ChainMap.zero(a, b), (0, 1))
    assert ok


def test_quasi_iso_failure_has_witness():
    src = point_complex()
    tgt = ChainComplex(GradedSpace({}), {})
    ok, witness = is_quasi_iso(ChainMap.zero(src, tgt), (0, 0))
    assert not ok
    assert witness[0] == 0
    assert witness[1]["source_dim"] == 1


def test_verify_homotopy_trivial():
    c = ce_nonabelian_b()
    f = ChainMap.identity(c)
    ok, _ = verify_homotopy(f, f, Homotopy(c, c, {}))
    assert ok


def test_verify_homotopy_cone_contraction():
    # id - 0 = d h + h d on the contractible interval, with h = d^{-1}.
    c = interval_complex()
    h = Homotopy(c, c, {1: SparseMatrix.identity(1)})
    ok, _ = verify_homotopy(ChainMap.identity(c), ChainMap.zero(c, c), h)
    assert ok


def test_verify_homotopy_failure_witness():
    c = point_complex()
    ok, witness = verify_homotopy(
        ChainMap.identity(c), ChainMap.zero(c, c), Homotopy(c, c, {})
    )
    assert not ok
    assert witness == (0, "e")


def test_tensor_with_point():
    c = ce_nonabelian_b()
    t = tensor(point_complex(), c)
    assert t.space.dims() == c.space.dims()
    # Differential agrees under the relabeling x -> ("e", x).
    for i in c.space.degrees():
        assert t.diff(i).entries == c.diff(i).entries


def test_tensor_dimension_count():
    a = ChainComplex(GradedSpace({0: ["a1", "a2"]}), {})
    b = ChainComplex(GradedSpace({1: ["b1", "b2", "b3"]}), {})
    t = tensor(a, b)
    assert t.space.dims() == {1: 6}


def test_tensor_with_acyclic_is_acyclic():
    t = tensor(interval_complex(), ce_nonabelian_b())
    h = homology(t, (-2, 1))
    assert all(v == 0 for v in h.dims.values())


def test_tensor_associative_up_to_relabeling():
    a = interval_complex()
    b = point_complex("p")
    c = ce_nonabelian_b()
    left = tensor(tensor(a, b), c)
    right = tensor(a, tensor(b, c))
    assert left.space.dims() == right.space.dims()

    def relabel(lab):
        (x, y), z = lab
        return (x, (y, z))

    for i in left.space.degrees():
        rindex = right.space.index[i]
        rindex_up = right.space.index.get(i + 1, {})
        lup = left.space.labels(i + 1)
        for j, lab in enumerate(left.space.labels(i)):
            left_col = {
                rindex_up[relabel(lup[i2])]: v
                for (i2, j2), v in left.diff(i).entries.items()
                if j2 == j
            }
            right_col = {
                i2: v
                for (i2, j2), v in right.diff(i).entries.items()
                if j2 == rindex[relabel(lab)]
            }
            assert left_col == right_col


def test_shift_conventions():
    c = point_complex("e", 0)
    s = shift(c, 1)
    assert s.space.degrees() == [-1]
    assert shift(s, -1).space.basis == c.space.basis
    two = interval_complex()
    assert shift(shift(two, 1), -1).diff(0) == two.diff(0)
    # differential picks up (-1)^n
    assert shift(two, 1).diff(-1).entries == {(0, 0): Fraction(-1)}
    assert shift(two, 0) is two


def test_complex_rejects_bad_differential():
    space = GradedSpace({0: ["a"], 1: ["b"], 2: ["c"]})
    one = SparseMatrix.identity(1)
    with pytest.raises(ValueError):
        ChainComplex(space, {0: one, 1: one})
