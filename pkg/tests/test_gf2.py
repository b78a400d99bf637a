"""GF(2) core: row reduction, duals, cosets, bounded minimum weight."""

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from diagsynth.errors import LengthMismatch
from diagsynth.gf2 import (
    BitMat,
    BitVec,
    Reducer,
    WeightResult,
    coset_reps,
    contains,
    dual_basis,
    min_weight_excluding,
    quotient_basis,
    rref,
    signed_weight_counts,
    span_ints,
)

from conftest import bitmats

STEANE_H = ["1111000", "1100110", "1010101"]


class TestBitVec:
    def test_string_round_trip(self):
        v = BitVec.from_string("0110")
        assert v.support() == (1, 2)
        assert v.to01() == "0110"
        assert v.weight() == 2

    def test_xor_and_dot(self):
        a = BitVec.from_string("110")
        b = BitVec.from_string("011")
        assert (a ^ b).to01() == "101"
        assert a.dot(b) == 1
        assert a.dot(a) == 0

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            BitVec.from_string("01") ^ BitVec.from_string("011")

    def test_concat_orders_first_block_low(self):
        v = BitVec.from_string("10").concat(BitVec.from_string("01"))
        assert v.to01() == "1001"


class TestRref:
    def test_forced_example(self):
        r, piv = rref(BitMat.from_strings(["110", "011"]))
        assert [x.to01() for x in r.rows] == ["101", "011"]
        assert piv == (0, 1)

    def test_duplicate_rows_collapse(self):
        r, piv = rref(BitMat.from_strings(["111", "111"]))
        assert [x.to01() for x in r.rows] == ["111"]
        assert piv == (0,)

    def test_steane_rows(self):
        r, piv = rref(BitMat.from_strings(STEANE_H))
        assert r.num_rows == 3
        assert piv == (0, 1, 2)

    @given(bitmats(max_n=8))
    def test_idempotent_and_same_span(self, m):
        r, piv = rref(m)
        r2, piv2 = rref(r)
        assert r == r2 and piv == piv2
        red = Reducer(r)
        for row in m:
            assert red.contains(row)
        assert len(piv) == len(r.rows)
        assert list(piv) == sorted(piv)


class TestDual:
    def test_repetition_n2_self_dual(self):
        d = dual_basis(BitMat.from_strings(["11"]))
        assert [x.to01() for x in d.rows] == ["11"]

    def test_repetition_n4_parity(self):
        d = dual_basis(BitMat.from_strings(["1111"]))
        assert d.num_rows == 3
        assert all(r.weight() % 2 == 0 for r in d.rows)

    def test_steane_dual_contains_row_space(self):
        h = BitMat.from_strings(STEANE_H)
        d = dual_basis(h)
        assert d.num_rows == 4
        for a in d.rows:
            for b in h.rows:
                assert a.dot(b) == 0
        red = Reducer(d)
        for b in h.rows:
            assert red.contains(b)

    @given(bitmats(max_n=10))
    def test_rank_nullity(self, m):
        r, piv = rref(m)
        d = dual_basis(m)
        assert len(piv) + d.num_rows == m.n

    @given(bitmats(max_n=8))
    def test_double_dual_same_span(self, m):
        r, _ = rref(m)
        dd, _ = rref(dual_basis(dual_basis(m)))
        assert dd == r


class TestContains:
    def test_examples(self):
        assert contains(BitMat.from_strings(["11"]), BitVec.from_string("11"))
        assert not contains(BitMat.from_strings(["11"]), BitVec.from_string("01"))

    def test_422_logical(self):
        c2perp = dual_basis(BitMat.from_strings(["1111"]))
        assert contains(c2perp, BitVec.from_string("0110"))


class TestCosetReps:
    def test_trivial_sub(self):
        reps = coset_reps(BitMat.from_strings(["11"]), BitMat.empty(2))
        assert [r.to01() for r in reps] == ["00", "11"]

    def test_full_mod_repetition(self):
        reps = coset_reps(BitMat.identity(2), BitMat.from_strings(["11"]))
        assert reps[0] == BitVec.zeros(2)
        # the nonzero coset is {01, 10}; reducing either against the
        # repetition basis (pivot on qubit 0) leaves 01
        assert [r.to01() for r in reps] == ["00", "01"]

    def test_422_logicals(self):
        sup = dual_basis(BitMat.from_strings(["1111"]))
        sub = BitMat.from_strings(["1111"])
        reps = coset_reps(sup, sub)
        assert len(reps) == 4
        strs = {r.to01() for r in reps}
        assert {"0011", "0110"} <= strs

    @given(bitmats(max_n=8, max_rows=8))
    @settings(max_examples=200)
    def test_reps_cover_quotient_exactly_once(self, sup):
        sup_c, _ = rref(sup)
        if sup_c.num_rows == 0:
            return
        sub = BitMat(sup.n, sup_c.rows[: sup_c.num_rows // 2])
        reps = coset_reps(sup_c, sub)
        red = Reducer(sub)
        # pairwise incongruent
        canon = {red.reduce(r).to01() for r in reps}
        assert len(canon) == len(reps)
        # cover: every span element reduces to one of the reps
        sup_red = Reducer(sup_c)
        for v in span_ints(sup_red.rows):
            assert red.reduce_int(v) in {r.bits for r in reps}


class TestQuotientBasis:
    def test_not_contained_raises(self):
        with pytest.raises(ValueError):
            quotient_basis(BitMat.from_strings(["10"]), BitMat.from_strings(["01"]))


class TestMinWeight:
    def test_422_dz(self):
        sup = dual_basis(BitMat.from_strings(["1111"]))
        sub = BitMat.from_strings(["1111"])
        assert min_weight_excluding(sup, sub) == WeightResult(2, True)

    def test_steane_dz(self):
        h = BitMat.from_strings(STEANE_H)
        assert min_weight_excluding(dual_basis(h), h) == WeightResult(3, True)

    def test_empty_difference(self):
        m = BitMat.from_strings(["11"])
        with pytest.raises(ValueError, match="empty difference"):
            min_weight_excluding(m, m)

    def test_bounded_mode_flag(self):
        # force the bounded path with a tiny budget
        big = BitMat.identity(10)
        small = BitMat.from_strings(["1111111111"])
        res = min_weight_excluding(big, small, w_max=1, budget=4)
        assert res == WeightResult(1, True)
        # parity code minus the repetition code has minimum weight 2, so a
        # w_max=1 bounded search can only report the lower bound
        par = dual_basis(BitMat.from_strings(["1111111111"]))
        rep = BitMat.from_strings(["1111111111"])
        res2 = min_weight_excluding(par, rep, w_max=1, budget=4)
        assert res2 == WeightResult(2, False)
        res3 = min_weight_excluding(par, rep, w_max=3, budget=4)
        assert res3 == WeightResult(2, True)

    @given(bitmats(n=8, max_rows=8), st.integers(0, 3))
    @settings(max_examples=150)
    def test_exact_matches_bruteforce(self, big, cut):
        big_c, _ = rref(big)
        if big_c.num_rows < 2:
            return
        small = BitMat(8, big_c.rows[: min(cut, big_c.num_rows - 1)])
        res = min_weight_excluding(big_c, small)
        red = Reducer(small)
        brute = min(
            v.bit_count()
            for v in span_ints(big_c.row_ints())
            if not red.contains_int(v)
        )
        assert res == WeightResult(brute, True)


class TestSignedWeightCounts:
    @given(
        st.integers(2, 16),
        st.lists(st.integers(1, 1 << 16), max_size=8),
        st.integers(0, 1 << 16),
        st.integers(0, 1 << 16),
    )
    @settings(max_examples=150)
    def test_matches_direct_enumeration(self, n, basis, shift, sign):
        mask = (1 << n) - 1
        basis = [b & mask for b in basis if b & mask]
        basis = list(dict.fromkeys(basis))
        shift &= mask
        sign &= mask
        counts = signed_weight_counts(basis, shift, sign, n)
        direct = [0] * (n + 1)
        for c in span_ints(basis):
            w = (c ^ shift).bit_count()
            direct[w] += -1 if (c & sign).bit_count() & 1 else 1
        assert counts == direct


def test_exact_mode_at_dimension_12():
    # full-enumeration mode against brute force at the documented bound
    import random

    rng = random.Random(7)
    n = 14
    rows = [BitVec(n, rng.getrandbits(n) | 1) for _ in range(12)]
    big, _ = rref(BitMat(n, rows))
    small = BitMat(n, big.rows[:2])
    res = min_weight_excluding(big, small)
    red = Reducer(small)
    brute = min(
        v.bit_count()
        for v in span_ints(big.row_ints())
        if not red.contains_int(v)
    )
    assert res == WeightResult(brute, True)


def test_bounded_search_finds_weight_exactly():
    # second-order Reed-Muller words of weight 4 under a tiny budget
    from diagsynth.families import rm_generator

    rm24 = rm_generator(2, 4)
    rep = BitMat.from_strings(["1" * 16])
    res = min_weight_excluding(rm24, rep, w_max=6, budget=2)
    assert res == WeightResult(4, True)
    # and the bounded lower-bound flag on the first-order code (min weight 8)
    rm14 = rm_generator(1, 4)
    res2 = min_weight_excluding(rm14, rep, w_max=6, budget=2)
    assert res2 == WeightResult(7, False)
