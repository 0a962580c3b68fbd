import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nhosc.algebra import (NATURAL, OSCILLATOR, BiState, LadderKind, add, apply_ladder,
                           commutator_check, displacement_series, inner, ladder_matrices,
                           quadrature_moments)

KINDS = [NATURAL, OSCILLATOR] + [LadderKind.distorted(w) for w in (0.0, 0.5, 1.0, 5.0, 20.0)]


@pytest.mark.parametrize("kind", KINDS, ids=lambda k: f"{k.tag}-{k.w}")
def test_commutators_interior_block(kind):
    dev = commutator_check(kind, 16)
    assert max(dev.values()) < 1e-10


def test_natural_commutator_frozen_diagonal():
    low, up, ident, _ = ladder_matrices(NATURAL, 6)
    # [A, A+] on psi_n is 2(3(2n-1)+1)(2n) = 8n(3n-1)
    assert np.allclose(np.diag(ident), [8 * n * (3 * n - 1) for n in range(6)])


def test_distorted_identity_operator():
    _, _, ident, _ = ladder_matrices(LadderKind.distorted(3.5), 5)
    assert np.allclose(np.diag(ident), [0, 3.5, 1, 1, 1])


coeffs = st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
                  min_size=1, max_size=8)


@settings(max_examples=60, deadline=None)
@given(u=coeffs, v=coeffs, ru=st.integers(0, 4), rv=st.integers(0, 4),
       k=st.sampled_from(KINDS))
def test_raise_is_adjoint_of_lower(u, v, ru, rv, k):
    su, sv = BiState(ru, u), BiState(rv, v)
    lhs = inner(su, apply_ladder(sv, k, "lower"))
    rhs = inner(apply_ladder(su, k, "raise"), sv)
    assert lhs == pytest.approx(rhs, abs=1e-9 * (1 + abs(lhs)))


@settings(max_examples=60, deadline=None)
@given(u=coeffs, r=st.integers(0, 4), k=st.sampled_from(KINDS))
def test_ladder_action_matches_matrices(u, r, k):
    s = BiState(r, u)
    dim = r + len(u) + 2
    low, up, ident, _ = ladder_matrices(k, dim)
    v = s.to_dense(dim)
    assert np.allclose(apply_ladder(s, k, "lower").to_dense(dim), low @ v)
    assert np.allclose(apply_ladder(s, k, "raise").to_dense(dim), up @ v)
    assert np.allclose(apply_ladder(s, k, "identity_op").to_dense(dim), ident @ v)


def test_bistate_validation():
    with pytest.raises(ValueError):
        BiState(-1, [1.0])
    with pytest.raises(ValueError):
        BiState(0, [np.nan])
    with pytest.raises(ValueError):
        BiState(0, [1.0], basis="position")
    s = BiState(2, [1, 2])
    assert s.K == 1 and list(s.levels) == [2, 3]
    with pytest.raises(ValueError):
        s.to_dense(3)


def test_add_aligns_offsets():
    s = add(BiState(1, [1.0]), BiState(3, [2.0]))
    assert s.offset_r == 1
    assert np.allclose(s.coeffs, [1, 0, 2])


def test_lower_on_offset_zero_drops_ground():
    s = apply_ladder(BiState(0, [5.0, 1.0]), OSCILLATOR, "lower")
    assert s.offset_r == 0 and np.allclose(s.coeffs, [math.sqrt(2)])


def test_oscillator_vacuum_moments():
    m = quadrature_moments(BiState(0, [1.0]), OSCILLATOR)
    assert m.var_X == pytest.approx(0.5) and m.var_P == pytest.approx(0.5)
    assert m.bound == pytest.approx(0.5)


def test_moments_require_normalization():
    with pytest.raises(ValueError):
        quadrature_moments(BiState(0, [2.0]), OSCILLATOR)


@pytest.mark.parametrize("w", [0.5, 1.0, 5.0])
def test_displacement_series_normalized(w):
    s = displacement_series(0.7 + 0.2j, w, 60)
    assert s.norm2() == pytest.approx(1.0, abs=1e-14)
    assert s.offset_r == 1


def test_displacement_series_tail_guard():
    with pytest.raises(ValueError):
        displacement_series(5.0, 1.0, 10)


def test_displacement_of_ground_is_trivial():
    s = displacement_series(1.0, 2.0, 10, fiducial=0)
    assert s.offset_r == 0 and np.allclose(s.coeffs, [1.0])
