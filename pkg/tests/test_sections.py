"""Section library against independent dimensional formulas."""

import numpy as np
import pytest

from gridsizer.sections import (BEAM_SECTIONS, COLUMN_SECTIONS,
                                STEEL_DENSITY_PCF, section_for,
                                section_properties, sub_library)

# Independent oracle: plate dimensions (d, bf, tf, tw) for the W21 family.
W21_DIMS = {
    "W 21x44": (20.7, 6.50, 0.450, 0.350),
    "W 21x48": (20.6, 8.14, 0.430, 0.350),
    "W 21x50": (20.8, 6.53, 0.535, 0.380),
    "W 21x57": (21.1, 6.56, 0.650, 0.405),
    "W 21x62": (21.0, 8.24, 0.615, 0.400),
    "W 21x68": (21.1, 8.27, 0.685, 0.430),
    "W 21x73": (21.2, 8.30, 0.740, 0.455),
    "W 21x83": (21.4, 8.36, 0.835, 0.515),
    "W 21x93": (21.6, 8.42, 0.930, 0.580),
}
HSS_THICKNESS = {
    "HSSQ 16x16x0.375": 0.375,
    "HSSQ 16x16x0.5": 0.5,
    "HSSQ 16x16x0.625": 0.625,
    "HSSQ 16x16x0.75": 0.75,
    "HSSQ 16x16x0.875": 0.875,
}


def test_library_counts():
    assert len(COLUMN_SECTIONS) == 5
    assert len(BEAM_SECTIONS) == 9


@pytest.mark.parametrize("name,t", HSS_THICKNESS.items())
def test_hss_box_formulas(name, t):
    sec = section_properties(name)
    B = 16.0
    inner = B - 2 * t
    assert sec.A == pytest.approx(B**2 - inner**2, rel=1e-9)
    assert sec.Ix == pytest.approx((B**4 - inner**4) / 12, rel=1e-6)
    assert sec.Iy == sec.Ix
    assert sec.J == pytest.approx(t * (B - t) ** 3, rel=1e-6)


def test_hss_first_area_value():
    # box formula with B=16, t=0.375: 16^2 - 15.25^2
    assert section_properties("HSSQ 16x16x0.375").A == pytest.approx(23.4375)


@pytest.mark.parametrize("name,dims", W21_DIMS.items())
def test_w21_plate_formulas(name, dims):
    d, bf, tf, tw = dims
    sec = section_properties(name)
    h = d - 2 * tf
    assert sec.A == pytest.approx(2 * bf * tf + h * tw, rel=1e-9)
    assert sec.Ix == pytest.approx((bf * d**3 - (bf - tw) * h**3) / 12, rel=1e-6)
    assert sec.Iy == pytest.approx((2 * tf * bf**3 + h * tw**3) / 12, rel=1e-6)
    assert sec.J == pytest.approx((2 * bf * tf**3 + h * tw**3) / 3, rel=1e-6)


def test_unit_weight_consistent_with_density():
    for sec in COLUMN_SECTIONS + BEAM_SECTIONS:
        assert sec.unit_weight == pytest.approx(
            sec.A * STEEL_DENSITY_PCF / 144.0, rel=1e-12)


def test_column_area_monotonic_in_wall_thickness():
    areas = [s.A for s in COLUMN_SECTIONS]
    assert areas == sorted(areas)
    assert section_properties("HSSQ 16x16x0.375").A < \
        section_properties("HSSQ 16x16x0.875").A


def test_beam_weights_nondecreasing_in_listing_order():
    weights = [s.unit_weight for s in BEAM_SECTIONS]
    assert all(a <= b for a, b in zip(weights, weights[1:]))


def test_unknown_designation_rejected():
    with pytest.raises(KeyError):
        section_properties("W 14x99")


def test_section_for_bounds():
    assert section_for("column", 0).name == "HSSQ 16x16x0.375"
    assert section_for("beam", 8).name == "W 21x93"
    with pytest.raises(IndexError):
        section_for("column", 5)
    with pytest.raises(ValueError):
        sub_library("brace")


def test_all_properties_positive():
    for sec in COLUMN_SECTIONS + BEAM_SECTIONS:
        assert min(sec.A, sec.Ix, sec.Iy, sec.J, sec.unit_weight) > 0
