"""Classical component code constructions.

Oracles: direct polynomial-evaluation enumeration for GRS codewords,
exhaustive membership filtration for subfield subcodes, and brute-force
weight enumeration for distances.
"""
from __future__ import annotations

import itertools

import numpy as np
import pytest

from pccss.codes import (
    ExpanderGraph,
    GrsSpec,
    LinearCode,
    certify_distance,
    code_from_text,
    code_to_text,
    dual,
    lift_block,
    make_alternant,
    make_expander,
    make_grs,
    make_random_gv,
    make_repetition,
    min_weight,
    probe_min_weight,
)
from pccss.galois import GF2, FieldSpec, field_of_size
from pccss.matgf import MatrixGF, in_rowspace, mul, rank, rref, transpose

GF4 = field_of_size(4)
GF8 = field_of_size(8)


def codeword_set(code: LinearCode) -> set[tuple[int, ...]]:
    f = code.field
    out = set()
    for coeffs in itertools.product(range(f.size), repeat=code.k):
        acc = [0] * code.n
        for c, row in zip(coeffs, code.G.data):
            for j in range(code.n):
                acc[j] = f.add(acc[j], f.mul(c, int(row[j])))
        out.add(tuple(acc))
    return out


# ------------------------------------------------------------- repetition

def test_repetition_3():
    c = make_repetition(3)
    assert (c.n, c.k, c.d_certified) == (3, 1, 3)
    assert c.H.data.tolist() == [[1, 0, 1], [0, 1, 1]]
    assert c.G.data.tolist() == [[1, 1, 1]]


def test_repetition_2_and_5():
    c2 = make_repetition(2)
    assert c2.H.data.tolist() == [[1, 1]]
    assert c2.G.data.tolist() == [[1, 1]]
    assert make_repetition(5).d_certified == 5
    with pytest.raises(ValueError):
        make_repetition(1)


def test_repetition_distance_brute_force_agrees():
    for n0 in (2, 3, 5, 7):
        c = make_repetition(n0)
        assert min_weight(c.G) == c.d_certified


# ------------------------------------------------------------------ lift

def test_lift_block_diagonal():
    c = lift_block(make_repetition(3), 3)
    assert (c.n, c.k, c.d_certified) == (9, 3, 3)
    H = c.H.data
    assert H.shape == (6, 9)
    assert H[:2, :3].tolist() == [[1, 0, 1], [0, 1, 1]]
    assert not H[:2, 3:].any()
    assert H[4:, 6:].tolist() == [[1, 0, 1], [0, 1, 1]]


def test_lift_identity_copy():
    inner = make_repetition(4)
    assert lift_block(inner, 1).H == inner.H


def test_lift_rep2_twice():
    c = lift_block(make_repetition(2), 2)
    assert (c.n, c.k) == (4, 2)
    assert min_weight(c.G) == 2 == c.d_certified


# ------------------------------------------------------------------- GRS

def oracle_grs_codewords(field, a, v, k) -> set[tuple[int, ...]]:
    """Evaluate every polynomial of degree < k at the points, times multipliers."""
    out = set()
    for coeffs in itertools.product(range(field.size), repeat=k):
        cw = []
        for ai, vi in zip(a, v):
            acc = 0
            for c in reversed(coeffs):  # Horner
                acc = field.add(field.mul(acc, ai), c)
            cw.append(field.mul(vi, acc))
        out.add(tuple(cw))
    return out


def test_grs_gf4_full_support():
    spec = GrsSpec(GF4, a=(0, 1, 2, 3), v=(1, 1, 1, 1), k=2)
    code = make_grs(spec)
    assert (code.n, code.k, code.d_certified) == (4, 2, 3)
    assert codeword_set(code) == oracle_grs_codewords(GF4, spec.a, spec.v, 2)
    assert min_weight(code.G) == 3


def test_grs_single_parity():
    spec = GrsSpec(GF8, a=tuple(range(8)), v=(1,) * 8, k=7)
    code = make_grs(spec)
    assert code.d_certified == 2
    assert code.H.rows == 1


def test_grs_mds_brute_force():
    spec = GrsSpec(GF8, a=tuple(range(1, 8)), v=(1,) * 7, k=2)
    code = make_grs(spec)
    assert min_weight(code.G) == 6 == code.n - code.k + 1


def test_grs_dual_is_grs_with_y_multipliers():
    spec = GrsSpec(GF8, a=tuple(range(8)), v=(3, 1, 4, 1, 5, 2, 6, 5), k=3)
    code = make_grs(spec)
    dual_spec = GrsSpec(GF8, a=spec.a, v=spec.y, k=code.n - spec.k)
    dual_code = make_grs(dual_spec)
    assert rref(code.H).matrix == rref(dual_code.G).matrix


def test_grs_annihilation_and_spec_validation():
    spec = GrsSpec(GF8, a=(1, 2, 3, 4, 5), v=(1, 1, 2, 3, 7), k=2)
    code = make_grs(spec)
    assert not mul(code.G, transpose(code.H)).data.any()
    with pytest.raises(ValueError):
        GrsSpec(GF8, a=(1, 1, 2), v=(1, 1, 1), k=2)  # repeated point
    with pytest.raises(ValueError):
        GrsSpec(GF8, a=(1, 2, 3), v=(1, 0, 1), k=2)  # zero multiplier
    with pytest.raises(ValueError):
        GrsSpec(GF8, a=(1, 2, 3), v=(1, 1, 1), k=3)  # k = n


# -------------------------------------------------------------- alternant

def test_alternant_hamming_7_4_3():
    f = FieldSpec(2, 1, 3)
    alpha = [f.pow(2, i) for i in range(7)]
    code = make_alternant(f, a=alpha, y=alpha, r=1)
    assert (code.n, code.k) == (7, 4)
    assert code.k >= code.n - 3 * 1
    code = certify_distance(code)
    assert code.d_certified == 3


def test_alternant_dimension_bound_holds():
    f = FieldSpec(2, 1, 4)
    pts = [f.pow(3, i) for i in range(8)]  # any 8 distinct nonzero points
    assert len(set(pts)) == 8
    for r in (1, 2, 3):
        code = make_alternant(f, a=pts, y=[1] * 8, r=r)
        assert code.k >= code.n - 4 * r
        assert code.provenance["d_lower"] == r + 1


def test_alternant_distance_bound_small_instances():
    f = FieldSpec(2, 1, 3)
    alpha = [f.pow(2, i) for i in range(7)]
    for r in (1, 2):
        code = make_alternant(f, a=alpha, y=alpha, r=r)
        if code.k:
            assert min_weight(code.G) >= r + 1


def test_alternant_equals_filtered_grs_nullspace():
    # membership by direct evaluation over the extension field, n <= 10
    f = FieldSpec(2, 1, 3)
    a = [f.pow(2, i) for i in range(6)]
    y = [f.pow(2, 2 * i + 1) for i in range(6)]
    code = make_alternant(f, a=a, y=y, r=2)
    members = set()
    for v in itertools.product((0, 1), repeat=6):
        ok = True
        for j in range(2):
            acc = 0
            for ai, yi, vi in zip(a, y, v):
                if vi:
                    acc = f.add(acc, f.mul(yi, f.pow(ai, j)))
            if acc:
                ok = False
                break
        if ok:
            members.add(v)
    assert codeword_set(code) == members


def test_alternant_full_redundancy_gives_length_distance():
    f = FieldSpec(2, 1, 3)
    alpha = [f.pow(2, i) for i in range(7)]
    code = make_alternant(f, a=alpha, y=alpha, r=6)
    assert code.k == 1
    code = certify_distance(code)
    assert code.d_certified == 7


# -------------------------------------------------------------- random GV

def test_random_gv_12_4():
    code = make_random_gv(12, 4, seed=7)
    assert code.d_certified is not None and code.d_certified >= 4
    assert code.d_method == "exhaustive"
    assert min_weight(code.G) == code.d_certified


def test_random_gv_identity_edge():
    code = make_random_gv(5, 5, seed=0)
    assert code.k == 5 and code.d_certified == 1
    assert code.H.rows == 0


def test_random_gv_7_4():
    assert make_random_gv(7, 4, seed=3).d_certified >= 2


def test_random_gv_rejects_uncertifiable_length():
    with pytest.raises(ValueError):
        make_random_gv(29, 5, seed=0)


# --------------------------------------------------------------- expander

def test_expander_small_instance():
    code, graph = make_expander(10, 3, 6, seed=1)
    assert code.n == 10
    assert graph.r == 5
    assert code.k >= 5
    assert code.k == 10 - rank(code.H)
    assert all(len(nb) == 3 and len(set(nb)) == 3 for nb in graph.left)
    assert all(len(nb) == 6 and len(set(nb)) == 6 for nb in graph.right)
    # adjacency consistent with H
    for i, nbs in enumerate(graph.left):
        assert sorted(np.nonzero(code.H.data[:, i])[0].tolist()) == sorted(nbs)


def test_expander_degree_accounting_error():
    with pytest.raises(ValueError):
        make_expander(10, 3, 4, seed=0)


def test_expander_deterministic_in_seed():
    c1, g1 = make_expander(24, 2, 4, seed=9)
    c2, g2 = make_expander(24, 2, 4, seed=9)
    assert c1.H == c2.H and g1 == g2


def test_expander_probe_records_no_low_weight_words():
    code, _ = make_expander(1002, 3, 6, seed=5)
    assert probe_min_weight(code, trials=2000, seed=0) > 20


# ------------------------------------------------------------------- dual

def test_dual_of_repetition_is_single_parity():
    d = dual(make_repetition(3))
    assert (d.n, d.k) == (3, 2)
    assert min_weight(d.G) == 2
    assert codeword_set(d) == {(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)}


def test_dual_involution_row_space():
    code = make_random_gv(10, 4, seed=2)
    dd = dual(dual(code))
    assert rref(dd.G).matrix == rref(code.G).matrix
    assert rref(dd.H).matrix == rref(code.H).matrix


def test_hamming_dual_simplex_nested():
    f = FieldSpec(2, 1, 3)
    alpha = [f.pow(2, i) for i in range(7)]
    ham = make_alternant(f, a=alpha, y=alpha, r=1)
    simplex = dual(ham)
    assert (simplex.n, simplex.k) == (7, 3)
    assert min_weight(simplex.G) == 4
    ham_space = rref(ham.G)
    for row in simplex.G.data:
        assert in_rowspace(ham_space, row)


# ---------------------------------------------------------------- bundles

def test_bundle_round_trip_plain():
    code = make_random_gv(9, 3, seed=4)
    text = code_to_text(code)
    assert text.startswith("linearcode 2 9 3\n")
    code2, graph2 = code_from_text(text)
    assert graph2 is None
    assert code2.G == code.G and code2.H == code.H
    assert (code2.d_certified, code2.d_method) == (code.d_certified, code.d_method)
    assert code_to_text(code2) == text


def test_bundle_round_trip_expander():
    code, graph = make_expander(12, 2, 4, seed=3)
    text = code_to_text(code, graph)
    code2, graph2 = code_from_text(text)
    assert graph2 == graph
    assert code2.H == code.H
    assert code_to_text(code2, graph2) == text


def test_bundle_without_distance_line():
    code, _ = make_expander(12, 2, 4, seed=3)
    text = code_to_text(code)
    assert "\nd " not in text
    code2, _ = code_from_text(text)
    assert code2.d_certified is None


# -------------------------------------------------------------- invariants

def test_all_constructions_annihilate():
    f = FieldSpec(2, 1, 3)
    alpha = [f.pow(2, i) for i in range(7)]
    cases = [
        make_repetition(4),
        lift_block(make_repetition(3), 2),
        make_grs(GrsSpec(GF8, a=tuple(range(8)), v=(1,) * 8, k=4)),
        make_alternant(f, a=alpha, y=alpha, r=2),
        make_random_gv(8, 3, seed=1),
        make_expander(12, 2, 4, seed=1)[0],
    ]
    for code in cases:
        assert not mul(code.G, transpose(code.H)).data.any()
        assert rank(code.G) == code.k
        assert rank(code.H) == code.n - code.k
