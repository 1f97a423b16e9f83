"""Cross-section library for the frame members.

The library is fixed: 5 square hollow columns (16x16 with increasing wall
thickness) and 9 wide-flange beams (21-inch family, increasing weight).
Properties are frozen from dimensional formulas applied to nominal plate
dimensions (sharp-corner box formulas for the hollow squares; flange/web
plate sums for the wide flanges), so ``unit_weight == area * density``
holds exactly with the steel density used for mass accounting.

Units: in^2 for area, in^4 for inertia/torsion, lb/ft for unit weight.
"""

from __future__ import annotations

from dataclasses import dataclass

STEEL_DENSITY_PCF = 490.0  # lb/ft^3
E_KSI = 29000.0  # Young's modulus, both steels
G_KSI = 11200.0  # shear modulus

COLUMN = "column"
BEAM = "beam"


@dataclass(frozen=True)
class Section:
    name: str
    kind: str  # "column" | "beam"
    A: float   # in^2
    Ix: float  # in^4, strong axis
    Iy: float  # in^4, weak axis
    J: float   # in^4, torsion
    unit_weight: float  # lb/ft

    def __post_init__(self) -> None:
        if min(self.A, self.Ix, self.Iy, self.J, self.unit_weight) <= 0:
            raise ValueError(f"non-positive property in section {self.name}")


def _hss(name: str, A: float, I: float, J: float) -> Section:
    return Section(name, COLUMN, A, I, I, J, A * STEEL_DENSITY_PCF / 144.0)


def _w21(name: str, A: float, Ix: float, Iy: float, J: float) -> Section:
    return Section(name, BEAM, A, Ix, Iy, J, A * STEEL_DENSITY_PCF / 144.0)


# Frozen from the box formulas A = B^2-(B-2t)^2, I = (B^4-(B-2t)^4)/12,
# J = t(B-t)^3 with B = 16 in and nominal t (no design-wall reduction).
COLUMN_SECTIONS = (
    _hss("HSSQ 16x16x0.375", 23.4375, 954.224121, 1430.511475),
    _hss("HSSQ 16x16x0.5", 31.0, 1242.583333, 1861.9375),
    _hss("HSSQ 16x16x0.625", 38.4375, 1516.879720, 2271.566162),
    _hss("HSSQ 16x16x0.75", 45.75, 1777.578125, 2659.934082),
    _hss("HSSQ 16x16x0.875", 52.9375, 2025.134928, 3027.569580),
)

# Frozen from plate sums over (d, bf, tf, tw): A = 2*bf*tf + (d-2tf)*tw,
# Ix/Iy rectangle compositions, J = sum(b*t^3)/3.
BEAM_SECTIONS = (
    _w21("W 21x44", 12.78, 826.218225, 20.66761875, 0.67785),
    _w21("W 21x48", 13.9094, 936.4502430866663, 38.72417136166668, 0.7135754866666666),
    _w21("W 21x50", 14.4845, 960.7263592041667, 24.91823807916667, 1.0275024191666668),
    _w21("W 21x57", 16.547, 1153.8887166666675, 30.692154772916656, 1.6394654916666667),
    _w21("W 21x62", 18.0432, 1310.8076024400004, 57.45175295999999, 1.6995553399999999),
    _w21("W 21x68", 19.8138, 1456.1526270600014, 64.70444923499998, 2.2949818125),
    _w21("W 21x73", 21.2566, 1576.8876444533344, 70.67519270958334, 2.8614236383333336),
    _w21("W 21x83", 24.12215, 1806.5413519279173, 81.53646845697915, 4.143011877916666),
    _w21("W 21x93", 27.1104, 2045.7182563200004, 92.84785088, 5.79896092),
)

N_COLUMN_SECTIONS = len(COLUMN_SECTIONS)
N_BEAM_SECTIONS = len(BEAM_SECTIONS)
# Width of the shared one-hot slot space (columns use slots 0..4, beams 0..8).
N_SECTION_SLOTS = N_BEAM_SECTIONS

_BY_NAME = {s.name: s for s in COLUMN_SECTIONS + BEAM_SECTIONS}


def section_properties(name: str) -> Section:
    """Look up a section by designation; raises KeyError outside the library."""
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(f"unknown section designation: {name!r}") from None


def sub_library(kind: str) -> tuple[Section, ...]:
    if kind == COLUMN:
        return COLUMN_SECTIONS
    if kind == BEAM:
        return BEAM_SECTIONS
    raise ValueError(f"unknown bar kind: {kind!r}")


def section_for(kind: str, index: int) -> Section:
    lib = sub_library(kind)
    if not 0 <= index < len(lib):
        raise IndexError(f"section index {index} out of range for {kind}")
    return lib[index]
