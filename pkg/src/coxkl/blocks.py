"""
Singular-block combinatorics and graded Hom-dimension tables.

A block datum is a pair: an ambient finite Coxeter system W (the integral
Weyl group of the block) and a generator subset I whose parabolic subgroup
W_I is the stabilizer of the weight.  Cosets x*W_I are addressed by their
longest representatives; the highest weights attached to a block are labeled
symbolically by those cosets (no weight coordinates are ever computed).

The two deliverables are

* ``andersen_dims``: the dimensions of the graded pieces of the Andersen
  filtration on Hom(Verma, tilting) for a pair of cosets, which equal the
  coefficients h^i_{y,x} of the KL family for the longest representatives,
  and
* ``equivariant_hom_series``: the torus-equivariant graded Hom dimensions,
  obtained by convolving those coefficients with the Hilbert series of a
  polynomial ring whose generators sit in degree 2.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb
from typing import Iterable

from .coxeter import Coset, CoxeterError, CoxeterSystem, Element
from .hecke import HeckeAlgebra

__all__ = [
    "BlockData",
    "DimTable",
    "make_block",
    "andersen_dims",
    "total_hom_dim",
    "andersen_table",
    "equivariant_hom_series",
]


@dataclass(frozen=True)
class BlockData:
    """A singular block: ambient system, parabolic subset and its cosets.

    ``cosets`` is sorted by (length, word) of the maximal representatives,
    which fixes the row/column order of every table built from the block.
    """

    system: CoxeterSystem
    parabolic: tuple[int, ...]
    w_long: Element
    w_iota: Element
    cosets: tuple[Coset, ...]
    _by_min: dict[Element, Coset] = field(repr=False, hash=False, compare=False, default_factory=dict)

    def coset_of(self, a: Element) -> Coset:
        """The coset a*W_I containing a."""
        if not self._by_min:
            for c in self.cosets:
                self._by_min[c.min_rep] = c
        key = self.system.coset_min_rep(self.parabolic, a)
        return self._by_min[key]

    def label(self, c: Coset) -> str:
        """Canonical coset label: the word of the longest representative."""
        return self.system.format_element(c.max_rep)

    def weight_name(self, c: Coset) -> str:
        """Symbolic highest-weight name attached to the coset.

        Reads as "w_long * xbar * lambda" acted through the dot action; only
        the coset label varies, no coordinates are involved.
        """
        return f"lambda[{self.label(c)}]"


def make_block(system: CoxeterSystem, parabolic: Iterable[int]) -> BlockData:
    """Assemble the block datum for (W, I)."""
    I = tuple(sorted(set(parabolic)))
    cosets = sorted(system.cosets(I), key=lambda c: c.max_rep.sort_key)
    return BlockData(
        system=system,
        parabolic=I,
        w_long=system.longest_element(),
        w_iota=system.longest_element(I),
        cosets=tuple(cosets),
    )


def andersen_dims(
    block: BlockData, algebra: HeckeAlgebra, ybar: Coset, xbar: Coset
) -> dict[int, int]:
    """Graded dimensions {i: dim} of the filtration subquotients for a pair.

    Equals {i: h^i_{y,x}} with y, x the longest coset representatives; the
    map is empty when y is not below x in the Bruhat order.
    """
    if algebra.system is not block.system:
        raise CoxeterError("algebra and block live over different systems")
    h = algebra.h_poly(ybar.max_rep, xbar.max_rep)
    return {i: c for i, c in h.pairs()}


def total_hom_dim(block: BlockData, algebra: HeckeAlgebra, ybar: Coset, xbar: Coset) -> int:
    """Total Hom dimension: sum over i of the graded dimensions, = P_{y,x}(1)."""
    return sum(andersen_dims(block, algebra, ybar, xbar).values())


@dataclass(frozen=True)
class DimTable:
    """A coset-by-coset table of graded dimension maps.

    ``cells`` maps (row label, column label) to {i: dim}, with zero cells
    omitted.  Labels are the words of the longest coset representatives;
    ``display_names`` carries the symbolic weight names for captions.
    """

    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    display_names: tuple[str, ...]
    cells: dict[tuple[str, str], dict[int, int]]
    caption: str

    def to_json(self) -> str:
        payload = {
            "rows": list(self.row_labels),
            "cols": list(self.col_labels),
            "display_names": list(self.display_names),
            "caption": self.caption,
            "cells": {
                f"{r},{c}": {str(i): n for i, n in sorted(cell.items())}
                for (r, c), cell in sorted(self.cells.items())
            },
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    def to_csv(self) -> str:
        lines = ["row,col,i,dim"]
        for r in self.row_labels:
            for c in self.col_labels:
                cell = self.cells.get((r, c))
                if cell:
                    for i, n in sorted(cell.items()):
                        lines.append(f"{r},{c},{i},{n}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        def fmt_cell(cell: dict[int, int] | None) -> str:
            if not cell:
                return "."
            return "{" + ",".join(f"{i}:{n}" for i, n in sorted(cell.items())) + "}"

        rows = []
        for r in self.row_labels:
            rows.append([fmt_cell(self.cells.get((r, c))) for c in self.col_labels])
        widths = [
            max(len(self.col_labels[j]), max(len(row[j]) for row in rows))
            for j in range(len(self.col_labels))
        ]
        head_w = max((len(r) for r in self.row_labels), default=1)
        out = [self.caption]
        out.append(
            " ".join([" " * head_w] + [self.col_labels[j].rjust(widths[j]) for j in range(len(widths))])
        )
        for r, row in zip(self.row_labels, rows):
            out.append(" ".join([r.ljust(head_w)] + [row[j].rjust(widths[j]) for j in range(len(widths))]))
        return "\n".join(out) + "\n"


def andersen_table(block: BlockData, algebra: HeckeAlgebra) -> DimTable:
    """The full graded dimension table over all coset pairs of the block."""
    labels = tuple(block.label(c) for c in block.cosets)
    names = tuple(block.weight_name(c) for c in block.cosets)
    cells: dict[tuple[str, str], dict[int, int]] = {}
    for yc, ylab in zip(block.cosets, labels):
        for xc, xlab in zip(block.cosets, labels):
            cell = andersen_dims(block, algebra, yc, xc)
            if cell:
                cells[(ylab, xlab)] = cell
    caption = (
        "graded dims of Hom(Delta(lambda[row]), K(lambda[col])); "
        "lambda[x] = w_long.x.lambda for the coset with longest representative x"
    )
    return DimTable(
        row_labels=labels,
        col_labels=labels,
        display_names=names,
        cells=cells,
        caption=caption,
    )


def _poly_ring_dim(rank: int, degree: int) -> int:
    # Monomial count in `rank` generators of degree 2 at the given degree.
    if degree < 0 or degree % 2:
        return 0
    return comb(degree // 2 + rank - 1, rank - 1)


def equivariant_hom_series(
    block: BlockData,
    algebra: HeckeAlgebra,
    ybar: Coset,
    xbar: Coset,
    n_max: int,
    rank: int | None = None,
) -> list[int]:
    """Equivariant graded Hom dimensions dims[0..n_max] for a coset pair.

    dims[n] = sum_i h^i_{y,x} * M(rank, n - i), where M(r, k) counts degree-k
    monomials in r polynomial generators of degree 2.  ``rank`` defaults to
    the rank of the ambient system; rank 1 models the one-parameter torus
    specialization.
    """
    if rank is None:
        rank = block.system.rank
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    dims = andersen_dims(block, algebra, ybar, xbar)
    return [sum(c * _poly_ring_dim(rank, n - i) for i, c in dims.items()) for n in range(n_max + 1)]
