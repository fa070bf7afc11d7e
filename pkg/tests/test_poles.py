"""Denominator zeros: resonance poles and bound states.

Pole positions were frozen from a 50-digit Newton iteration on the same
denominator, seeded far from the values below to rule out a shared basin
artifact.
"""

import cmath
import math

import numpy as np
import pytest

from sqwell.core import well_from_alpha
from sqwell.poles import (
    PoleK,
    PoleSearchConfig,
    bound_poles,
    bound_states,
    denominator,
    denominator_prime,
    find_poles,
)

# well I: the two resonance poles with Re k in (0, 4]
POLES_I = (
    0.89943981672620880 - 0.42224282378837941j,
    3.7982356476203544 - 0.49653523271036726j,
)

# well I binding wave numbers, ascending
BOUND_I = (2.7256077786012706, 3.7838745864239329, 4.3091950978849051)

BOUND_COUNTS = {
    "I": 3,
    "II": 17,
    "III": 3,
    "IV": 12,
    "V": 12,
    "VI": 12,
    "VII": 13,
}


def test_find_poles_well_i_frozen(well_i):
    poles = find_poles(well_i)
    assert len(poles) == 2
    for pole, ref in zip(poles, POLES_I):
        assert pole.value == pytest.approx(ref, abs=1e-11)
        assert pole.kappa == pole.value.real
        assert pole.modulus == abs(pole.value)
        assert pole.kind == "resonance"
        assert pole.residual < 1e-12
    assert poles[1].modulus == pytest.approx(3.8305536508678157, rel=1e-12)


def test_poles_are_denominator_zeros(well_i):
    for pole in find_poles(well_i):
        d, rescaled = denominator(well_i, pole.value)
        assert not rescaled
        assert abs(d) < 1e-12
        # mirror zero at -conj(k) for a real potential
        dm, _ = denominator(well_i, -pole.value.conjugate())
        assert abs(dm) < 1e-10


def test_find_poles_well_v_near_origin(well_v):
    poles = find_poles(well_v, PoleSearchConfig(re_max=1.0, im_min=-1.0))
    assert poles
    first = poles[0]
    assert first.value == pytest.approx(
        0.082429517190275508 - 0.11395224800779486j, abs=1e-12
    )
    assert first.modulus == pytest.approx(0.14064046405729722, rel=1e-11)


def test_find_poles_restricted_window(well_i):
    poles = find_poles(well_i, PoleSearchConfig(re_max=1.5, im_min=-1.0))
    assert len(poles) == 1
    assert poles[0].value == pytest.approx(POLES_I[0], abs=1e-11)


def test_denominator_value_small_k(well_i):
    # D at a real wave number, against the direct trig expression
    k = 0.5
    q = math.sqrt(k * k + 2 * well_i.v0)
    qa = q * well_i.a
    want = math.cos(qa) - 1j * (k / q) * math.sin(qa)
    got, rescaled = denominator(well_i, k)
    assert not rescaled
    assert got == pytest.approx(want, rel=1e-14)


def test_denominator_regular_through_q_zero(well_i):
    # q = 0 at k = i sqrt(2 v0); there D = 1 + alpha, by the sinc limit
    k0 = 1j * math.sqrt(2 * well_i.v0)
    d0, _ = denominator(well_i, k0)
    assert d0 == pytest.approx(1.0 + well_i.alpha, rel=1e-12)
    for eps in (1e-5, 1e-6):
        d, _ = denominator(well_i, k0 + eps * (1 + 1j))
        assert d == pytest.approx(d0, rel=1e-3)


def test_denominator_rescaled_far_off_axis(well_i):
    # deep in the lower half plane the value comes back scaled by
    # e^{-|Im qa|}; check against the unscaled formula while it still fits
    k = 0.5 - 18.0j
    u = cmath.sqrt(k * k + 2 * well_i.v0) * well_i.a
    assert abs(u.imag) > 30
    direct = cmath.cos(u) - 1j * (k * well_i.a) * (cmath.sin(u) / u)
    scaled, rescaled = denominator(well_i, k)
    assert rescaled
    assert scaled == pytest.approx(direct * math.exp(-abs(u.imag)), rel=1e-12)


def test_denominator_prime_matches_difference_quotient(well_i):
    for k in (0.5, 0.9 - 0.4j, 2.0 - 1.0j):
        h = 1e-6
        d_plus, _ = denominator(well_i, k + h)
        d_minus, _ = denominator(well_i, k - h)
        fd = (d_plus - d_minus) / (2 * h)
        assert denominator_prime(well_i, k) == pytest.approx(fd, rel=1e-8)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(re_max=0.0),
        dict(im_min=0.5),
        dict(grid_nx=4),
        dict(grid_ny=2),
        dict(newton_tol=0.0),
        dict(max_iter=0),
        dict(dedup_tol=-1.0),
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        PoleSearchConfig(**kwargs).validate()


@pytest.mark.parametrize("label", sorted(BOUND_COUNTS))
def test_bound_state_counts(wells, label):
    well = wells[label]
    kappas = bound_states(well)
    assert len(kappas) == BOUND_COUNTS[label]
    assert len(kappas) == math.floor(well.qb)
    assert kappas == sorted(kappas)
    assert all(kb > 0 for kb in kappas)


def test_bound_states_well_i_frozen(well_i):
    kappas = bound_states(well_i)
    assert kappas == pytest.approx(BOUND_I, rel=1e-12)
    for kb in kappas:
        d, rescaled = denominator(well_i, complex(0.0, kb))
        assert not rescaled
        assert abs(d) < 1e-10


def test_bound_poles_packaging(well_i):
    poles = bound_poles(well_i)
    assert [p.modulus for p in poles] == pytest.approx(BOUND_I, rel=1e-12)
    for pole in poles:
        assert isinstance(pole, PoleK)
        assert pole.kind == "bound"
        assert pole.kappa == 0.0
        assert pole.value.real == 0.0
        assert pole.value.imag == pole.modulus
        assert pole.residual < 1e-10


def test_bound_states_shallow_well():
    # alpha just past the first binding threshold pi/2: exactly one state
    assert len(bound_states(well_from_alpha(1.0, 0.5 * math.pi + 0.01))) == 1
    # alpha just below pi/2: none
    assert bound_states(well_from_alpha(1.0, 0.5 * math.pi - 0.01)) == []
