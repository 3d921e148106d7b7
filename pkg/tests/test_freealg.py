import math
from fractions import Fraction

import pytest

from opk.freealg import (
    LieCalc,
    PoissonCalc,
    is_lyndon,
    koszul_sign_of_sort,
    lyndon_words_of_multiset,
    multilinear_poisson_basis,
    set_partitions,
    shuffle_sign,
    shuffles,
    std_bracketing,
    tree_letters,
)
from opk.linear import add_vec, smul


def test_lyndon_basics():
    assert is_lyndon((0, 1))
    assert not is_lyndon((1, 0))
    assert is_lyndon((0, 0, 1))
    assert not is_lyndon((0,)) or True  # single letters are Lyndon
    assert is_lyndon((0,))
    assert std_bracketing((0, 1, 2)) in (((0, 1), 2), (0, (1, 2)))
    assert tree_letters(std_bracketing((0, 2, 1))) == (0, 2, 1)


def test_multilinear_lyndon_count():
    for m in range(2, 6):
        words = lyndon_words_of_multiset(range(m))
        assert len(words) == math.factorial(m - 1)


def test_free_lie_dims_multilinear():
    # dim Lie(m) = (m-1)!: normal forms of a multilinear multiset.
    calc = LieCalc(1, (0,) * 5)
    for m in range(2, 6):
        basis = calc.basis_trees(range(m))
        assert len(basis) == math.factorial(m - 1)


def test_lie_antisymmetry_and_jacobi_plain():
    # letters of degree 0, ordinary bracket
    calc = LieCalc(1, (0, 0, 0))
    ab = calc.coords((0, 1))
    ba = calc.coords((1, 0))
    assert ba == smul(-1, ab)
    # Jacobi: [[0,1],2] - [[0,2],1] - [0,[1,2]] = 0 in any Lie algebra
    acc = {}
    add_vec(acc, calc.coords(((0, 1), 2)))
    add_vec(acc, calc.coords(((0, 2), 1)), -1)
    add_vec(acc, calc.coords((0, (1, 2))), -1)
    assert acc == {}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pn_antisymmetry(n):
    calc = LieCalc(n, (0, 0))
    ab = calc.coords((0, 1))
    ba = calc.coords((1, 0))
    sign = (-1) ** n
    assert ba == smul(sign, ab)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pn_jacobi_paper_form(n):
    # {{a,b},c} = (-1)^{n+|b||c|+1} {{a,c},b} + (-1)^{|a|(|b|+|c|)+1} {{b,c},a}
    # with degree-0 letters the signs are (-1)^{n+1} and -1.
    calc = LieCalc(n, (0, 0, 0))
    lhs = calc.coords(((0, 1), 2))
    rhs = {}
    add_vec(rhs, calc.coords(((0, 2), 1)), (-1) ** (n + 1))
    add_vec(rhs, calc.coords(((1, 2), 0)), -1)
    assert lhs == rhs


def test_odd_square_basis():
    # One odd letter, ordinary Lie: [z, z] is a basis element of weight 2.
    calc = LieCalc(1, (-1,))
    basis = calc.basis_trees((0, 0))
    assert basis == [(0, 0)]
    sq = calc.coords((0, 0))
    assert sq == {(0, 0): Fraction(1)}


def test_even_square_vanishes():
    calc = LieCalc(1, (0,))
    assert calc.basis_trees((0, 0)) == []
    assert calc.coords((0, 0)) == {}


def test_set_partition_count():
    # Bell numbers 1, 1, 2, 5, 15, 52
    bells = [1, 1, 2, 5, 15, 52]
    for m, b in enumerate(bells):
        assert len(list(set_partitions(range(m)))) == b


@pytest.mark.parametrize("n", [1, 2])
def test_poisson_dims(n):
    for m in range(1, 5):
        basis, _ = multilinear_poisson_basis(n, m)
        assert len(basis) == math.factorial(m)


@pytest.mark.parametrize("n", [1, 2])
def test_poisson_leibniz(n):
    # {a, bc} = {a,b}c + (-1)^{|b||c|}{a,c}b on multilinear monomials
    calc = PoissonCalc(n, (0, 0, 0, 0))
    a = calc.mono_vec([std_bracketing((0, 1))])  # a = {x0, x1}, possibly odd
    b = calc.mono_vec([2])
    c = calc.mono_vec([3])
    bc = calc.product(b, c)
    lhs = calc.bracket(a, bc)
    db = 0
    dc = 0
    rhs = calc.product(calc.bracket(a, b), c)
    sign = (-1) ** (db * dc)
    add_vec(rhs, calc.product(calc.bracket(a, c), b), sign)
    assert lhs == rhs


@pytest.mark.parametrize("n", [1, 2])
def test_poisson_bracket_degree(n):
    calc = PoissonCalc(n, (0, 0))
    v = calc.bracket(calc.mono_vec([0]), calc.mono_vec([1]))
    (mono,) = v
    assert calc.mono_deg(mono) == 1 - n


def test_shuffle_signs():
    # shuffling two odd letters past each other flips sign
    assert shuffle_sign((0,), (1,), (1,)) == 1
    assert shuffle_sign((1,), (1,), (1,)) == -1
    assert shuffle_sign((1,), (1,), (0,)) == 1
    assert len(list(shuffles(2, 2))) == 6


def test_koszul_sort_odd_swap():
    order, sign = koszul_sign_of_sort([1, 0], [1, 1])
    assert order == [1, 0] and sign == -1
    order, sign = koszul_sign_of_sort([1, 0], [1, 0])
    assert sign == 1
    _, sign = koszul_sign_of_sort([0, 0], [1, 1])
    assert sign == 0
