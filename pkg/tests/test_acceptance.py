"""End-to-end acceptance gate.

Every check is an exact integer equality; nothing here is tolerance
based.  The seeded sweeps are sized to finish well within five minutes
on commodity hardware.
"""

import json
import random
import time
from fractions import Fraction
from math import comb

import pytest

from trisecant import (
    Form,
    LinearChange,
    OrbitClass,
    apolar_piece,
    apply_diff,
    build_flattening,
    canonical_form,
    classify_orbit,
    conormal_space,
    flattening_rank,
    hilbert_function,
    in_sigma2,
    in_sigma3,
    membership_verdict,
    monomial_basis,
    sample_rank_le,
    smoothness_at,
    span_of,
    substitute_linear,
)
from trisecant.cli import main

SAMPLES = 100


def random_change(rng: random.Random, nvars: int) -> LinearChange:
    while True:
        rows = tuple(
            tuple(Fraction(rng.randint(-3, 3)) for _ in range(nvars)) for _ in range(nvars)
        )
        try:
            return LinearChange(rows)
        except ValueError:
            continue


def random_dense_form(rng: random.Random, d: int, nvars: int, bound: int = 1000) -> Form:
    coeffs = {expo: Fraction(rng.randint(-bound, bound)) for expo in monomial_basis(nvars, d)}
    return Form(nvars, d, coeffs)


def form_from_row(nvars: int, degree: int, row) -> Form:
    basis = monomial_basis(nvars, degree)
    return Form(nvars, degree, dict(zip(basis, row)))


def test_full_table_sweep(capsys):
    started = time.monotonic()
    code = main(["verify-table", "--d-range", "3..7", "--n-range", "2..4", "--json"])
    elapsed = time.monotonic() - started
    out = capsys.readouterr().out
    assert code == 0
    assert elapsed < 300.0
    report = json.loads(out)
    assert report["verdict"] == "ok"
    cells = report["parameters"]["cells"]
    assert len(cells) == 57
    singular = {(c["d"], c["n"], c["kind"]) for c in cells if c["verdict"] == "singular"}
    assert singular == {(4, 3, "degenerate-binary"), (4, 4, "degenerate-binary")}
    for c in cells:
        assert c["ok"], c
        if c["d"] == 3:
            assert c["verdict"] == "d3-classified"
        elif c["verdict"] == "smooth":
            assert c["conormal_dim"] == c["expected_codim"]


def test_ternary_conormal_dimensions():
    for d in range(4, 9):
        expected = comb(d + 2, 2) - 9
        for kind in ("unmixed", "mixed"):
            f = canonical_form(kind, d, 2)
            assert conormal_space(f).dim == expected, (kind, d)


def test_essentially_binary_conormal_dimensions():
    quartic = [conormal_space(canonical_form("degenerate-binary", 4, n)).dim for n in (2, 3, 4)]
    assert quartic == [comb(4 + n, 4) - 5 - 4 * (n - 1) for n in (2, 3, 4)]
    assert quartic == [6, 22, 53]
    quintic = [conormal_space(canonical_form("degenerate-binary", 5, n)).dim for n in (2, 3, 4)]
    assert quintic == [comb(5 + n, 5) - 6 - 3 * (n - 1) for n in (2, 3, 4)]
    assert quintic == [12, 44, 111]
    assert conormal_space(canonical_form("degenerate-binary", 6, 2)).dim == comb(8, 2) - 3 - 6 == 19


def squared_net(generators: list[Form]) -> list[Form]:
    return [generators[i] * generators[j] for i in range(3) for j in range(i, 3)]


def test_hilbert_brute_matches_closed_form():
    def closed(d: int) -> int:
        return 6 * comb(d - 2, 2) - 6 * comb(d - 3, 2) + comb(d - 4, 2)

    y0y2 = Form.monomial(3, (1, 0, 1))
    y1y1 = Form.monomial(3, (0, 2, 0))
    y1y2 = Form.monomial(3, (0, 1, 1))
    y2y2 = Form.monomial(3, (0, 0, 2))
    for d in range(2, 11):
        nets = [
            [y0y2, y1y1, y1y2],
            [y0y2 - Fraction(d - 1, 2) * y1y1, y1y2, y2y2],
        ]
        for net in nets:
            value = hilbert_function(squared_net(net), d)
            assert value == (closed(d) if d >= 4 else 0), d


def test_flattening_transpose_property():
    rng = random.Random(101)
    for _ in range(SAMPLES):
        d = rng.randint(3, 5)
        nv = rng.randint(2, 3)
        f = random_dense_form(rng, d, nv, bound=50)
        k = rng.randint(1, d - 1)
        assert build_flattening(f, k).matrix.transpose() == build_flattening(f, d - k).matrix


def test_power_sum_rank_bound():
    grid = [(3, 2), (4, 2), (4, 3), (5, 2), (5, 3)]
    for r in range(1, 5):
        for i in range(25):
            d, n = grid[i % len(grid)]
            f = sample_rank_le(r, d, n, seed=1000 * r + i)
            for k in range(1, d):
                assert flattening_rank(f, k) <= r


def test_apolar_ideal_closure_property():
    rng = random.Random(202)
    checked = 0
    while checked < SAMPLES:
        d = rng.randint(4, 5)
        if rng.random() < 0.5:
            f = sample_rank_le(rng.randint(1, 3), d, 2, seed=rng.randint(0, 10**6))
        else:
            f = random_dense_form(rng, d, 3, bound=20)
        a = rng.randint(1, d - 1)
        b = rng.randint(1, d - a)
        pa, pb = apolar_piece(f, a), apolar_piece(f, b)
        if pa.dim == 0 or pb.dim == 0:
            continue
        g1 = form_from_row(3, a, pa.basis.entries[rng.randrange(pa.dim)])
        g2 = form_from_row(3, b, pb.basis.entries[rng.randrange(pb.dim)])
        assert apply_diff(g1 * g2, f).is_zero()
        checked += 1


def test_span_dimension_bound():
    grid = [(3, 2), (4, 2), (4, 3), (5, 3), (6, 2)]
    for i in range(SAMPLES):
        d, n = grid[i % len(grid)]
        f = sample_rank_le(3, d, n, seed=31 * i)
        if f.is_zero():
            continue
        assert span_of(f).dim <= 3


def test_substitution_invariance():
    rng = random.Random(303)
    kinds = ("fermat", "unmixed", "mixed", "degenerate-binary")
    pool = [(canonical_form(k, d, n), True) for k in kinds for d in (4, 5) for n in (2, 3)]
    for s in range(8):
        f = sample_rank_le(3, 4, 2, seed=s)
        if not f.is_zero():
            pool.append((f, False))
    for i in range(SAMPLES):
        f, canonical = pool[i % len(pool)]
        g = substitute_linear(f, random_change(rng, f.nvars))
        d = f.degree
        assert [flattening_rank(f, k) for k in range(1, d)] == [
            flattening_rank(g, k) for k in range(1, d)
        ]
        vf, vg = membership_verdict(f), membership_verdict(g)
        assert (vf.in_sigma1, vf.in_sigma2, vf.in_sigma3, vf.in_D) == (
            vg.in_sigma1,
            vg.in_sigma2,
            vg.in_sigma3,
            vg.in_D,
        )
        assert smoothness_at(f).verdict == smoothness_at(g).verdict
        if canonical:
            assert classify_orbit(f) == classify_orbit(g)


def test_membership_nesting_property():
    rng = random.Random(404)
    for i in range(SAMPLES):
        d = rng.randint(3, 5)
        n = rng.randint(2, 3)
        if i % 3 == 0:
            f = random_dense_form(rng, d, n + 1, bound=30)
        else:
            f = sample_rank_le(rng.randint(1, 3), d, n, seed=rng.randint(0, 10**6))
        v = membership_verdict(f)
        if v.in_sigma1:
            assert v.in_sigma2
        if v.in_sigma2:
            assert v.in_sigma3
        if v.in_D:
            assert v.in_sigma3 and not v.in_sigma2


def test_two_power_membership_split():
    grid = [(3, 2), (4, 2), (4, 3), (5, 2), (6, 3)]
    for i in range(SAMPLES):
        d, n = grid[i % len(grid)]
        f = sample_rank_le(2, d, n, seed=7 * i + 1)
        assert in_sigma2(f)
    for d in range(3, 8):
        for n in (2, 3, 4):
            assert not in_sigma2(canonical_form("fermat", d, n))


EXPECTED_CLASS = {
    "fermat": OrbitClass.FERMAT,
    "unmixed": OrbitClass.UNMIXED,
    "mixed": OrbitClass.MIXED,
    "degenerate-binary": OrbitClass.DEGENERATE_BINARY,
}


@pytest.mark.parametrize("kind", sorted(EXPECTED_CLASS))
def test_orbit_classification_stable_under_coordinate_changes(kind):
    rng = random.Random(sum(ord(c) for c in kind))
    for d in range(4, 8):
        for n in (2, 3, 4):
            f = canonical_form(kind, d, n)
            assert classify_orbit(f) == EXPECTED_CLASS[kind]
            for _ in range(20):
                g = substitute_linear(f, random_change(rng, n + 1))
                assert classify_orbit(g) == EXPECTED_CLASS[kind], (kind, d, n)


def test_generic_quartics_fall_outside_third_secant():
    for seed in range(50):
        rng = random.Random(seed)
        f = random_dense_form(rng, 4, 3, bound=1000)
        assert not in_sigma3(f), seed
        assert in_sigma3(sample_rank_le(3, 4, 2, seed=seed)), seed
