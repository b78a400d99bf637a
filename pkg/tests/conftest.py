"""Shared hypothesis strategies and fixtures."""

from __future__ import annotations

import hypothesis.strategies as st

from diagsynth import gf2
from diagsynth.csscode import CssCode
from diagsynth.gates import (
    BlockProductGate,
    LocalDiag,
    QfdGate,
    transversal_zrot,
)
from diagsynth.gf2 import BitMat, BitVec


@st.composite
def bitvecs(draw, n: int | None = None, max_n: int = 10):
    if n is None:
        n = draw(st.integers(1, max_n))
    bits = draw(st.integers(0, (1 << n) - 1))
    return BitVec(n, bits)


@st.composite
def bitmats(draw, n: int | None = None, max_n: int = 10, max_rows: int = 6):
    if n is None:
        n = draw(st.integers(1, max_n))
    rows = draw(st.lists(bitvecs(n=n), max_size=max_rows))
    return BitMat(n, rows)


@st.composite
def css_codes(draw, max_n: int = 8, min_k: int = 0):
    """Random valid CSS code: pick Z-stabilizers, then X-stabilizers as a
    subspace of the dual, then a random character vector."""
    n = draw(st.integers(2, max_n))
    z_raw = draw(st.lists(st.integers(0, (1 << n) - 1), max_size=n - 1 - min_k))
    z_mat, _ = gf2.rref(BitMat(n, [BitVec(n, r) for r in z_raw if r]))
    c1 = gf2.dual_basis(z_mat)
    dim1 = c1.num_rows
    max_x = max(0, dim1 - min_k)
    n_combos = draw(st.integers(0, max_x))
    x_rows = []
    for _ in range(n_combos):
        mask = draw(st.integers(1, (1 << dim1) - 1)) if dim1 else 0
        acc = 0
        for j in range(dim1):
            if (mask >> j) & 1:
                acc ^= c1.rows[j].bits
        if acc:
            x_rows.append(BitVec(n, acc))
    x_mat, _ = gf2.rref(BitMat(n, x_rows))
    while x_mat.num_rows > max_x:
        x_mat = BitMat(n, x_mat.rows[:-1])
    y = draw(bitvecs(n=n))
    return CssCode(n, x_mat, z_mat, y)


@st.composite
def local_diags(draw, max_b: int = 2, max_level: int = 3):
    b = draw(st.integers(1, max_b))
    level = draw(st.integers(1, max_level))
    exps = tuple(
        draw(st.integers(0, (1 << level) - 1)) for _ in range(1 << b)
    )
    return LocalDiag(b, level, exps)


@st.composite
def block_gates(draw, n: int, max_level: int = 3):
    """Random block-product gate on n qubits (some qubits may be identity)."""
    order = draw(st.permutations(list(range(n))))
    blocks = []
    i = 0
    while i < len(order):
        if draw(st.booleans()) and i + 1 < len(order) and draw(st.booleans()):
            qubits = (order[i], order[i + 1])
            i += 2
        else:
            qubits = (order[i],)
            i += 1
        if draw(st.integers(0, 3)) == 0:
            continue  # leave these qubits as identity
        level = draw(st.integers(1, max_level))
        exps = tuple(
            draw(st.integers(0, (1 << level) - 1)) for _ in range(1 << len(qubits))
        )
        blocks.append((qubits, LocalDiag(len(qubits), level, exps)))
    return BlockProductGate(n, tuple(blocks))


@st.composite
def qfd_gates(draw, n: int, max_level: int = 3):
    level = draw(st.integers(1, max_level))
    mod = 1 << level
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = draw(st.integers(0, mod - 1))
            rows[i][j] = v
            rows[j][i] = v
    return QfdGate(n, level, tuple(tuple(r) for r in rows))


@st.composite
def diagonal_gates(draw, n: int, max_level: int = 3):
    which = draw(st.integers(0, 2 if n <= 8 else 1))
    if which == 0:
        return transversal_zrot(n, draw(st.integers(1, max_level)))
    if which == 1:
        return draw(block_gates(n, max_level))
    return draw(qfd_gates(n, max_level))


@st.composite
def codes_with_gates(draw, max_n: int = 8, min_k: int = 0):
    code = draw(css_codes(max_n=max_n, min_k=min_k))
    gate = draw(diagonal_gates(code.n))
    return code, gate
