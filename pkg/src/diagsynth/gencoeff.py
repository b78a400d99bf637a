"""Exact generator-coefficient engine.

For a code with Z-stabilizer signs fixed by the character vector y and a
diagonal gate with entries d_u and Pauli expansion f(v), the coefficient
attached to X-syndrome mu and Z-logical gamma is the signed coset sum

    A(mu, gamma) = sum_{z in C1perp + mu + gamma} (-1)^(z.y) f(z)
                 = |C1|^-1 sum_{u in C1 + y} (-1)^((mu^gamma).(y^u)) d_u.

Both forms are implemented; the engine enumerates whichever side is
smaller.  Transversal rotations (and any gate whose entry exponent is
affine in the Hamming weight) get a vectorized kernel that reduces a coset
walk to a signed weight enumerator; everything else falls back to a plain
Python walk with a budget guard.  All results are exact ring elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import gf2
from .csscode import CssCode, LogicalFrame
from .cyclo import ONE, Cyclo
from .errors import BudgetExceeded, NonUnimodularEntry, NotPreserved
from .gates import (
    BlockProductGate,
    DiagonalGate,
    entry_exponent_int,
    pauli_coeff,
    weight_affine_form,
    _block_pauli_table,
)
from .gf2 import BitVec

_PY_SPAN_CAP = 1 << 16  # generic Python walks beyond this are refused
_ROW_CAP = 1 << 12  # full rows/tables above this need explicit sampling
_SCAN_CHUNK = 1 << 22  # words per numpy chunk in the codeword scan


# ----------------------------------------------------------------------
# coset-sum kernels


def _span_cache(code: CssCode, key: str, basis_ints: list[int]) -> list[int]:
    cache = code._caches.setdefault("spans", {})
    if key not in cache:
        cache[key] = gf2.span_ints(basis_ints)
    return cache[key]


@lru_cache(maxsize=None)
def _rot_powers(local, n: int) -> tuple[tuple[Cyclo, ...], tuple[Cyclo, ...]]:
    """Powers of the two single-qubit Pauli coefficients of a uniform
    rotation block, cached per block."""
    table = _block_pauli_table(local)
    f0, f1 = table[0], table[1]
    p0 = [ONE]
    p1 = [ONE]
    for _ in range(n):
        p0.append(p0[-1] * f0)
        p1.append(p1[-1] * f1)
    return tuple(p0), tuple(p1)


def _sum_x_side(
    code: CssCode, gate: DiagonalGate, sign_mask: int, budget: int
) -> Cyclo:
    """|C1|^-1 sum_{c in C1} (-1)^(c.sign) d_(y ^ c), exact."""
    basis = code.c1.row_ints()
    dim = len(basis)
    n, y = code.n, code.y.bits
    affine = weight_affine_form(gate)
    if affine is not None and n <= 64:
        off, slope, level = affine
        mod = 1 << level
        counts_w = gf2.signed_weight_counts(basis, y, sign_mask, n, budget)
        counts = [0] * mod
        for w, c in enumerate(counts_w):
            if c:
                counts[(off + slope * w) % mod] += c
        return Cyclo.from_root_counts(level, counts, dim)
    if 1 << dim > min(budget, _PY_SPAN_CAP):
        raise BudgetExceeded(f"2^{dim} X-side walk", required_log2=dim)
    mod = 1 << gate.level
    counts = [0] * mod
    for c in _span_cache(code, "c1", basis):
        k = entry_exponent_int(gate, y ^ c)
        if (c & sign_mask).bit_count() & 1:
            counts[k] -= 1
        else:
            counts[k] += 1
    return Cyclo.from_root_counts(gate.level, counts, dim)


def _sum_z_side(
    code: CssCode, gate: DiagonalGate, shift: int, budget: int
) -> Cyclo:
    """sum_{z in C1perp + shift} (-1)^(z.y) f(z), exact."""
    basis = code.z_stab.row_ints()
    dim = len(basis)
    n, y = code.n, code.y.bits
    affine = weight_affine_form(gate)
    if affine is not None and n <= 64 and isinstance(gate, BlockProductGate):
        counts_w = gf2.signed_weight_counts(basis, shift, y, n, budget)
        p0, p1 = _rot_powers(gate.blocks[0][1], n)
        acc = Cyclo.zero()
        for w, c in enumerate(counts_w):
            if c:
                acc = acc + p0[n - w] * p1[w] * c
        if (shift & y).bit_count() & 1:
            acc = -acc
        return acc
    if 1 << dim > min(budget, _PY_SPAN_CAP):
        raise BudgetExceeded(f"2^{dim} Z-side walk", required_log2=dim)
    acc = Cyclo.zero()
    for c in _span_cache(code, "c1perp", basis):
        z = c ^ shift
        f = pauli_coeff(gate, BitVec(n, z))
        if f.is_zero():
            continue
        if (z & y).bit_count() & 1:
            acc = acc - f
        else:
            acc = acc + f
    return acc


def _side_order(code: CssCode) -> list[str]:
    return ["x", "z"] if code.dim_c1 <= code.dim_c1perp else ["z", "x"]


def _coefficient_int(
    code: CssCode, gate: DiagonalGate, s: int, budget: int
) -> Cyclo:
    """A for mu ^ gamma = s, trying the cheaper side first."""
    last_exc: BudgetExceeded | None = None
    for side in _side_order(code):
        try:
            if side == "x":
                return _sum_x_side(code, gate, s, budget)
            return _sum_z_side(code, gate, s, budget)
        except BudgetExceeded as exc:
            last_exc = exc
    assert last_exc is not None
    raise last_exc


# ----------------------------------------------------------------------
# public coefficient API


@dataclass
class GenCoeffRow:
    """Trivial-syndrome (or fixed-syndrome) coefficient row."""

    code: CssCode
    mu: BitVec
    entries: dict[BitVec, Cyclo]
    exactness: str  # "exact-full" | "exact-sampled"

    def values(self) -> list[Cyclo]:
        return list(self.entries.values())

    def norm(self) -> Cyclo:
        acc = Cyclo.zero()
        for v in self.entries.values():
            acc = acc + v.abs_sq()
        return acc

    def to_json(self) -> list[dict]:
        return [
            {"gamma": g.to01(), "value": v.serialize()}
            for g, v in self.entries.items()
        ]


def _check_gate(code: CssCode, gate: DiagonalGate) -> None:
    if gate.n != code.n:
        raise ValueError(f"gate on {gate.n} qubits vs code on {code.n}")


def coefficient(
    code: CssCode,
    gate: DiagonalGate,
    mu: BitVec,
    gamma: BitVec,
    budget: int = gf2.DEFAULT_BUDGET,
) -> Cyclo:
    """Exact coefficient for syndrome representative mu and Z-logical
    representative gamma (gamma must lie in C2-perp)."""
    _check_gate(code, gate)
    if mu.n != code.n or gamma.n != code.n:
        raise ValueError("mu and gamma must have length n")
    if not code.c2perp_reducer.contains(gamma):
        raise ValueError("gamma is not a Z-logical representative (not in C2-perp)")
    return _coefficient_int(code, gate, mu.bits ^ gamma.bits, budget)


def trivial_row(
    code: CssCode,
    gate: DiagonalGate,
    gammas: Sequence[BitVec] | None = None,
    budget: int = gf2.DEFAULT_BUDGET,
) -> GenCoeffRow:
    """All coefficients for the trivial syndrome, or a sampled subset when
    an explicit gamma list is supplied."""
    _check_gate(code, gate)
    if gammas is None:
        if 1 << code.k > _ROW_CAP:
            raise BudgetExceeded(
                f"full row has 2^{code.k} entries; pass an explicit gamma subset",
                required_log2=code.k,
            )
        gammas = [code.z_logical(a) for a in range(1 << code.k)]
        exactness = "exact-full"
    else:
        exactness = "exact-sampled"
        for g in gammas:
            if not code.c2perp_reducer.contains(g):
                raise ValueError(f"gamma {g.to01()} is not in C2-perp")
    entries = {
        g: _coefficient_int(code, gate, g.bits, budget) for g in gammas
    }
    return GenCoeffRow(code, BitVec.zeros(code.n), entries, exactness)


def syndrome_row(
    code: CssCode,
    gate: DiagonalGate,
    mu: BitVec,
    gammas: Sequence[BitVec] | None = None,
    budget: int = gf2.DEFAULT_BUDGET,
) -> GenCoeffRow:
    """Like trivial_row but for an arbitrary syndrome representative."""
    _check_gate(code, gate)
    if gammas is None:
        if 1 << code.k > _ROW_CAP:
            raise BudgetExceeded(
                f"full row has 2^{code.k} entries", required_log2=code.k
            )
        gammas = [code.z_logical(a) for a in range(1 << code.k)]
        exactness = "exact-full"
    else:
        exactness = "exact-sampled"
    entries = {
        g: _coefficient_int(code, gate, mu.bits ^ g.bits, budget) for g in gammas
    }
    return GenCoeffRow(code, mu, entries, exactness)


def full_table(
    code: CssCode,
    gate: DiagonalGate,
    budget: int = gf2.DEFAULT_BUDGET,
) -> dict[BitVec, GenCoeffRow]:
    """Complete coefficient table over all syndromes and logicals."""
    _check_gate(code, gate)
    if (code.dim_c2 + code.k) > 16:
        raise BudgetExceeded(
            f"table has 2^{code.dim_c2 + code.k} entries",
            required_log2=code.dim_c2 + code.k,
        )
    return {
        mu: syndrome_row(code, gate, mu, budget=budget)
        for mu in code.syndrome_reps()
    }


# ----------------------------------------------------------------------
# preservation


@dataclass(frozen=True)
class PreservationResult:
    preserved: bool
    norm: Cyclo | None  # exact trivial-row norm when computed
    method: str  # "coefficient-norm" | "codeword-diagonal"
    witness: tuple[int, Cyclo] | None = None  # offending (beta, entry)


def is_preserved(
    code: CssCode,
    gate: DiagonalGate,
    budget: int = gf2.DEFAULT_BUDGET,
) -> PreservationResult:
    """Exact preservation decision.

    Small codes get the trivial-row norm (preserved iff it equals one);
    codes with many logicals but a small X-stabilizer group are decided by
    scanning the induced diagonal for unimodularity, which is equivalent.
    """
    _check_gate(code, gate)
    norm_exc: BudgetExceeded | None = None
    if 1 << code.k <= _ROW_CAP:
        try:
            row = trivial_row(code, gate, budget=budget)
            norm = row.norm()
            return PreservationResult(norm == ONE, norm, "coefficient-norm")
        except BudgetExceeded as exc:
            norm_exc = exc
    try:
        ok, _, witness = _codeword_diagonal(code, gate, budget)
        return PreservationResult(ok, None, "codeword-diagonal", witness)
    except BudgetExceeded as exc:
        raise norm_exc or exc


# ----------------------------------------------------------------------
# induced logical diagonal


@dataclass(frozen=True)
class LogicalDiagonal:
    """Diagonal of the trivial-syndrome logical operator in the code's
    logical frame: entry at beta is zeta_{2^level}^exps[beta]."""

    k: int
    level: int
    exps: tuple[int, ...]
    frame: LogicalFrame


def _entry_from_counts(level: int, counts: Sequence[int], m: int) -> Cyclo:
    return Cyclo.from_root_counts(level, counts, m)


def _codeword_diagonal(
    code: CssCode, gate: DiagonalGate, budget: int
) -> tuple[bool, list[int] | None, tuple[int, Cyclo] | None]:
    """Induced-diagonal scan via codeword sums:
    entry(beta) = 2^-m sum_{x in C2} d(beta.Gx ^ x ^ y).

    Returns (all_unimodular, exponents at gate level or None, witness).
    """
    k, m, n = code.k, code.dim_c2, code.n
    if k + m > 26 or (1 << (k + m)) > budget * 4:
        raise BudgetExceeded(
            f"2^{k + m} codeword scan", required_log2=k + m
        )
    affine = weight_affine_form(gate)
    level = gate.level
    mod = 1 << level
    half = mod >> 1
    y = code.y.bits
    if affine is not None and n <= 64:
        off, slope, _ = affine
        c2 = gf2.span_array(code.x_stab.row_ints(), n)
        xspan = gf2.span_array(code.frame.x_logical_basis.row_ints(), n)
        exps: list[int] = []
        rows_per_chunk = max(1, _SCAN_CHUNK // max(1, c2.size))
        for start in range(0, xspan.size, rows_per_chunk):
            chunk = xspan[start : start + rows_per_chunk]
            words = chunk[:, None] ^ c2[None, :] ^ np.uint64(y)
            w = np.bitwise_count(words).astype(np.int64)
            r = (off + slope * w) % mod
            coefs = np.zeros((chunk.size, half), dtype=np.int64)
            for j in range(half):
                coefs[:, j] = (r == j).sum(axis=1) - (r == j + half).sum(axis=1)
            hits = np.abs(coefs) == (1 << m)
            ok_rows = (hits.sum(axis=1) == 1) & (
                np.abs(coefs).sum(axis=1) == (1 << m)
            )
            for i in range(chunk.size):
                if not ok_rows[i]:
                    # exact fallback: non-root pattern, decide by |entry|^2
                    counts = [0] * mod
                    for j in range(half):
                        c = int(coefs[i, j])
                        if c >= 0:
                            counts[j] = c
                        else:
                            counts[j + half] = -c
                    val = _entry_from_counts(level, counts, m)
                    if val.abs_sq() != ONE:
                        return False, None, (start + i, val)
                    raise NonUnimodularEntry(
                        "diagonal entry is unimodular but not a root of unity",
                        witness=(start + i, val),
                    )
                j = int(np.argmax(hits[i]))
                exps.append(j if coefs[i, j] > 0 else j + half)
        return True, exps, None
    # generic Python path
    if 1 << (k + m) > _PY_SPAN_CAP:
        raise BudgetExceeded(
            f"2^{k + m} codeword scan (generic gate)", required_log2=k + m
        )
    c2_span = _span_cache(code, "c2", code.x_stab.row_ints())
    exps = []
    for beta in range(1 << k):
        base = code.x_word(beta).bits ^ y
        counts = [0] * mod
        for x in c2_span:
            counts[entry_exponent_int(gate, base ^ x)] += 1
        val = _entry_from_counts(level, counts, m)
        root = val.promote(level).as_root_of_unity()
        if root is None:
            if val.abs_sq() != ONE:
                return False, None, (beta, val)
            raise NonUnimodularEntry(
                "diagonal entry is unimodular but not a root of unity",
                witness=(beta, val),
            )
        exps.append(root)
    return True, exps, None


def logical_diagonal_exponents(
    code: CssCode, gate: DiagonalGate, budget: int = gf2.DEFAULT_BUDGET
) -> list[int]:
    """Exponents (at the gate's level) of the induced logical diagonal,
    computed from codeword sums.  Raises NotPreserved when the diagonal is
    not unitary."""
    ok, exps, witness = _codeword_diagonal(code, gate, budget)
    if not ok:
        raise NotPreserved(f"code is not preserved; witness entry {witness}")
    assert exps is not None
    return exps


def induced_logical(
    code: CssCode,
    gate: DiagonalGate,
    budget: int = gf2.DEFAULT_BUDGET,
) -> LogicalDiagonal:
    """The logical diagonal induced on a preserved code, with exact
    root-of-unity entries in the code's logical frame."""
    _check_gate(code, gate)
    exps = logical_diagonal_exponents(code, gate, budget)
    return LogicalDiagonal(code.k, gate.level, tuple(exps), code.frame)


def diagonal_from_row(row: GenCoeffRow, level: int) -> list[Cyclo]:
    """Hadamard resynthesis: entry(beta) = sum_alpha A(g(alpha)) (-1)^(alpha.beta).

    Requires an exact-full row in frame order.  Used to cross-check the
    codeword-sum route."""
    k = row.code.k
    values = row.values()
    assert len(values) == 1 << k
    out = []
    for beta in range(1 << k):
        acc = Cyclo.zero()
        for alpha, v in enumerate(values):
            if (alpha & beta).bit_count() & 1:
                acc = acc - v
            else:
                acc = acc + v
        out.append(acc)
    return out


def coefficients_from_diagonal(
    exps: Sequence[int], level: int, k: int, alphas: Sequence[int]
) -> list[Cyclo]:
    """Inverse Hadamard: A(g(alpha)) = 2^-k sum_beta (-1)^(alpha.beta)
    zeta^exps[beta], vectorized over beta."""
    mod = 1 << level
    arr = np.asarray(exps, dtype=np.int64)
    betas = np.arange(1 << k, dtype=np.uint64)
    out = []
    for alpha in alphas:
        signs = (np.bitwise_count(betas & np.uint64(alpha)) & np.uint8(1)).astype(bool)
        pos = np.bincount(arr[~signs], minlength=mod)
        neg = np.bincount(arr[signs], minlength=mod)
        counts = [int(p) - int(q) for p, q in zip(pos, neg)]
        out.append(Cyclo.from_root_counts(level, counts, k))
    return out


# ----------------------------------------------------------------------
# split quantities


def split_values(
    code: CssCode,
    gate: DiagonalGate,
    w0: BitVec,
    gammas: Sequence[BitVec] | None = None,
    budget: int = gf2.DEFAULT_BUDGET,
) -> dict[BitVec, Cyclo]:
    """The per-logical split quantities attached to a new X-logical w0:

        s(gamma) = |C1|^-1 sum_{u in C1 + w0} (-1)^(gamma.u) d(u ^ y).

    Splitting a coefficient A into the two coefficients of the code with w0
    adjoined gives (A + s)/2 and (A - s)/2.
    """
    _check_gate(code, gate)
    if w0.n != code.n:
        raise ValueError("w0 must have length n")
    if code.c1_reducer.contains(w0):
        raise ValueError("w0 lies in C1: removal would not create a new logical")
    if gammas is None:
        if 1 << code.k > _ROW_CAP:
            raise BudgetExceeded(
                f"full split with 2^{code.k} entries", required_log2=code.k
            )
        gammas = [code.z_logical(a) for a in range(1 << code.k)]
    basis = code.c1.row_ints()
    dim = len(basis)
    n, y = code.n, code.y.bits
    shift = w0.bits ^ y
    affine = weight_affine_form(gate)
    direct_ok = (affine is not None and n <= 64 and 1 << dim <= budget) or (
        1 << dim <= min(budget, _PY_SPAN_CAP)
    )
    out: dict[BitVec, Cyclo] = {}
    if direct_ok:
        for gamma in gammas:
            s = gamma.bits
            if affine is not None and n <= 64:
                off, slope, level = affine
                mod = 1 << level
                counts_w = gf2.signed_weight_counts(basis, shift, s, n, budget)
                counts = [0] * mod
                for w, c in enumerate(counts_w):
                    if c:
                        counts[(off + slope * w) % mod] += c
                val = Cyclo.from_root_counts(level, counts, dim)
            else:
                mod = 1 << gate.level
                counts = [0] * mod
                for c in _span_cache(code, "c1", basis):
                    kexp = entry_exponent_int(gate, shift ^ c)
                    if (c & s).bit_count() & 1:
                        counts[kexp] -= 1
                    else:
                        counts[kexp] += 1
                val = Cyclo.from_root_counts(gate.level, counts, dim)
            if (w0.bits & s).bit_count() & 1:
                val = -val
            out[gamma] = val
        return out
    # dual route: the difference of the two split halves on the shrunk
    # code recovers each value from cheaper stabilizer-side walks
    new_z, gamma0 = gf2.restrict_to_hyperplane(code.z_stab, w0)
    split_code = CssCode(code.n, code.x_stab, new_z, BitVec(code.n, y))
    for gamma in gammas:
        a_plus = _coefficient_int(split_code, gate, gamma.bits, budget)
        a_minus = _coefficient_int(
            split_code, gate, gamma.bits ^ gamma0.bits, budget
        )
        out[gamma] = a_plus - a_minus
    return out


# ----------------------------------------------------------------------
# sampled certificates


def sampled_certificate(
    code: CssCode,
    gate: DiagonalGate,
    n_gamma: int,
    n_syndrome_pairs: int,
    seed: int = 0,
    budget: int = gf2.DEFAULT_BUDGET,
) -> dict:
    """Exact-sampled preservation evidence for codes whose full row is out
    of reach: sampled trivial-row values plus sampled nontrivial-syndrome
    coefficients that must vanish on a preserved code."""
    import random

    _check_gate(code, gate)
    rng = random.Random(seed)
    k = code.k
    alphas = (
        sorted({rng.randrange(1, 1 << k) for _ in range(n_gamma)}) if k else []
    )
    gammas = [code.z_logical(a) for a in alphas]
    row = trivial_row(code, gate, gammas=gammas, budget=budget)
    syndromes = code.syndrome_reps()
    pairs = []
    zero_ok = True
    first_nonzero = None
    for _ in range(n_syndrome_pairs):
        mu = syndromes[rng.randrange(1, len(syndromes))]
        gamma = code.z_logical(rng.randrange(0, 1 << k))
        val = _coefficient_int(code, gate, mu.bits ^ gamma.bits, budget)
        ok = val.is_zero()
        zero_ok = zero_ok and ok
        if not ok and first_nonzero is None:
            first_nonzero = (mu, gamma, val)
        pairs.append((mu, gamma, ok))
    return {
        "sampled_row": row,
        "syndrome_pairs_zero": zero_ok,
        "syndrome_pair_count": len(pairs),
        "nonzero_witness": first_nonzero,
    }
