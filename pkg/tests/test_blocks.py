import itertools
import json

import pytest

from coxkl.blocks import (
    andersen_dims,
    andersen_table,
    equivariant_hom_series,
    make_block,
    total_hom_dim,
)

from oracles import poly_ring_series


def all_subsets(rank):
    out = []
    for r in range(rank + 1):
        out.extend(itertools.combinations(range(rank), r))
    return out


def test_make_block_examples(system):
    W = system("A2")
    regular = make_block(W, [])
    assert len(regular.cosets) == 6
    assert regular.w_iota == W.identity
    assert regular.w_long.length == 3

    singular = make_block(W, [1])
    assert [W.format_element(c.max_rep) for c in singular.cosets] == ["t", "st", "sts"]
    assert singular.w_iota == W.parse_element("t")

    W3 = system("A3")
    assert len(make_block(W3, [0, 1]).cosets) == 4


def test_coset_of(system):
    W = system("A2")
    block = make_block(W, [1])
    assert block.coset_of(W.parse_element("ts")) == block.coset_of(W.parse_element("sts"))
    assert block.coset_of(W.identity).max_rep == W.parse_element("t")


def test_andersen_dims_examples(system, algebra):
    W3, A3 = system("A3"), algebra("A3")
    regular = make_block(W3, [])
    c_of = regular.coset_of
    same = c_of(W3.parse_element("s2"))
    assert andersen_dims(regular, A3, same, same) == {0: 1}
    got = andersen_dims(regular, A3, c_of(W3.parse_element("s2")), c_of(W3.parse_element("s2s1s3s2")))
    assert got == {1: 1, 3: 1}

    W, A = system("A2"), algebra("A2")
    block = make_block(W, [1])
    ybar = block.coset_of(W.identity)  # max rep t
    xbar = block.coset_of(W.parse_element("ts"))  # max rep sts
    assert andersen_dims(block, A, ybar, xbar) == {2: 1}
    # empty when not Bruhat-comparable (longest reps)
    assert andersen_dims(block, A, xbar, ybar) == {}


def test_total_hom_dim(system, algebra):
    W3, A3 = system("A3"), algebra("A3")
    regular = make_block(W3, [])
    ybar = regular.coset_of(W3.parse_element("s2"))
    xbar = regular.coset_of(W3.parse_element("s2s1s3s2"))
    assert total_hom_dim(regular, A3, ybar, ybar) == 1
    assert total_hom_dim(regular, A3, ybar, xbar) == 2
    assert total_hom_dim(regular, A3, xbar, ybar) == 0


def test_andersen_table_a1(system, algebra):
    W, A = system("A1"), algebra("A1")
    table = andersen_table(make_block(W, []), A)
    assert table.row_labels == ("e", "s")
    assert table.cells == {
        ("e", "e"): {0: 1},
        ("s", "s"): {0: 1},
        ("e", "s"): {1: 1},
    }


@pytest.mark.parametrize("code", ["A3", "B2"])
def test_andersen_table_invariants(code, system, algebra):
    W, A = system(code), algebra(code)
    for I in all_subsets(W.rank):
        block = make_block(W, I)
        table = andersen_table(block, A)
        labels = {block.label(c): c for c in block.cosets}
        for (rl, cl), cell in table.cells.items():
            y, x = labels[rl].max_rep, labels[cl].max_rep
            d = x.length - y.length
            assert W.bruhat_leq(y, x)
            assert all(0 <= i <= d and (d - i) % 2 == 0 for i in cell)
            assert sum(cell.values()) == A.kl_polynomial(y, x).eval_at_one()
        for c in block.cosets:
            lab = block.label(c)
            assert table.cells[(lab, lab)] == {0: 1}


def test_singular_consistent_with_regular(system, algebra):
    # A cell depends only on the longest representatives: the same pair
    # queried through the regular block gives the same answer.
    W, A = system("A3"), algebra("A3")
    regular = make_block(W, [])
    for I in all_subsets(W.rank):
        block = make_block(W, I)
        for yc in block.cosets:
            for xc in block.cosets:
                via_block = andersen_dims(block, A, yc, xc)
                via_regular = andersen_dims(
                    regular, A, regular.coset_of(yc.max_rep), regular.coset_of(xc.max_rep)
                )
                assert via_block == via_regular


def test_equivariant_examples(system, algebra):
    W, A = system("A1"), algebra("A1")
    block = make_block(W, [])
    e_bar = block.coset_of(W.identity)
    s_bar = block.coset_of(W.parse_element("s"))
    dims = equivariant_hom_series(block, A, e_bar, s_bar, 9, rank=1)
    assert dims == [0, 1, 0, 1, 0, 1, 0, 1, 0, 1]
    assert dims[0] == 0  # no degree-0 maps below the diagonal
    dims2 = equivariant_hom_series(block, A, s_bar, s_bar, 8, rank=2)
    assert dims2 == [1, 0, 2, 0, 3, 0, 4, 0, 5]


def test_equivariant_default_rank(system, algebra):
    W, A = system("A2"), algebra("A2")
    block = make_block(W, [])
    e_bar = block.coset_of(W.identity)
    assert equivariant_hom_series(block, A, e_bar, e_bar, 4) == equivariant_hom_series(
        block, A, e_bar, e_bar, 4, rank=W.rank
    )
    assert equivariant_hom_series(block, A, e_bar, e_bar, 6, rank=1) == poly_ring_series(1, 6)


def test_equivariant_convolution_crosscheck(system, algebra):
    W, A = system("A3"), algebra("A3")
    for I in ([], [1], [0, 2]):
        block = make_block(W, I)
        for rank in (1, 2, 3):
            series = poly_ring_series(rank, 12)
            for yc in block.cosets:
                for xc in block.cosets:
                    dims = andersen_dims(block, A, yc, xc)
                    expect = [
                        sum(c * (series[n - i] if 0 <= n - i else 0) for i, c in dims.items())
                        for n in range(13)
                    ]
                    got = equivariant_hom_series(block, A, yc, xc, 12, rank)
                    assert got == expect


def test_equivariant_monotone_consistency(system, algebra):
    W, A = system("B2"), algebra("B2")
    block = make_block(W, [0])
    ys, xs = block.cosets[0], block.cosets[-1]
    short = equivariant_hom_series(block, A, ys, xs, 6)
    long = equivariant_hom_series(block, A, ys, xs, 12)
    assert long[:7] == short


def test_equivariant_validation(system, algebra):
    W, A = system("A1"), algebra("A1")
    block = make_block(W, [])
    c = block.cosets[0]
    with pytest.raises(ValueError):
        equivariant_hom_series(block, A, c, c, -1)
    with pytest.raises(ValueError):
        equivariant_hom_series(block, A, c, c, 4, rank=0)


def test_dimtable_serializations(system, algebra):
    W, A = system("A2"), algebra("A2")
    table = andersen_table(make_block(W, [1]), A)
    data = json.loads(table.to_json())
    assert data["rows"] == ["t", "st", "sts"]
    assert data["cols"] == ["t", "st", "sts"]
    assert data["cells"]["t,sts"] == {"2": 1}
    assert data["display_names"] == ["lambda[t]", "lambda[st]", "lambda[sts]"]

    csv = table.to_csv()
    lines = csv.strip().splitlines()
    assert lines[0] == "row,col,i,dim"
    assert "t,sts,2,1" in lines
    assert len(lines) == 1 + 6  # header + one line per nonzero (cell, i)

    text = table.to_text()
    assert "{2:1}" in text
    assert text.endswith("\n")


def test_dimtable_text_golden(system, algebra):
    table = andersen_table(make_block(system("A2"), [1]), algebra("A2"))
    body = table.to_text().splitlines()[1:]  # caption line is prose
    assert body == [
        "        t    st   sts",
        "t   {0:1} {1:1} {2:1}",
        "st      . {0:1} {1:1}",
        "sts     .     . {0:1}",
    ]
