"""Bundled witness configurations: ``cp``, ``c4``, ``s3`` and ``sec6``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .abelian import GroupSpec
from .cyclotomic import Cyclotomic
from .polynomial import ExactPolynomial, parse_polynomial
from .separation import MatrixGroup, build_regular_representation

PRESETS = ("cp", "c4", "s3", "sec6")


@dataclass
class WitnessPreset:
    name: str
    group: MatrixGroup
    spec: Optional[GroupSpec]
    v: tuple
    w: tuple
    names: list[str]
    invariants: dict[str, ExactPolynomial] = field(default_factory=dict)
    expected_v: dict[str, Fraction] = field(default_factory=dict)
    expected_w: dict[str, Fraction] = field(default_factory=dict)
    expected_unseparated: int = 0
    expected_separated: int = 0
    separator: Optional[str] = None

    @property
    def action(self) -> Union[GroupSpec, MatrixGroup]:
        """Regular actions of abelian groups use the character route."""
        return self.spec if self.spec is not None else self.group


def _vec(*xs) -> tuple:
    return tuple(Fraction(x) for x in xs)


def cp_preset(p: int = 3) -> WitnessPreset:
    """v = d_1 - d_g against -v in the regular representation of C_p."""
    if p < 2:
        raise ValueError("p must be at least 2")
    spec = GroupSpec((p,))
    v = [0] * p
    v[0], v[1] = 1, -1
    names = [f"x{i}" for i in range(p)]
    group = build_regular_representation(spec)
    # orbit sum of x_1^2 x_g, with x_i the coordinate of d_i
    exp = [0] * p
    exp[0] += 2
    exp[1] += 1
    from .separation import reynolds_orbit_sum

    orbit_sum = reynolds_orbit_sum(exp, group)
    preset = WitnessPreset(
        name=f"cp{p}",
        group=group,
        spec=spec,
        v=_vec(*v),
        w=_vec(*(-x for x in v)),
        names=names,
        invariants={"orbit_sum_x1^2xg": orbit_sum},
        expected_unseparated=2,
        expected_separated=3 if p > 2 else 0,
    )
    if p > 2:
        preset.expected_v = {"orbit_sum_x1^2xg": Fraction(-1)}
        preset.expected_w = {"orbit_sum_x1^2xg": Fraction(1)}
        preset.separator = "orbit_sum_x1^2xg"
    return preset


C4_GENERATORS = {
    "f1": "x1 + x2 + x3 + x4",
    "f2": "x1^2 + x2^2 + x3^2 + x4^2",
    "f3": "x1 x2 + x2 x3 + x3 x4 + x4 x1",
    "f4": "x1^3 + x2^3 + x3^3 + x4^3",
    "f5": "x1 x2^2 + x2 x3^2 + x3 x4^2 + x4 x1^2",
    "f6": "x1^4 + x2^4 + x3^4 + x4^4",
    "f7": "x1 x2^3 + x2 x3^3 + x3 x4^3 + x4 x1^3",
}


def c4_preset() -> WitnessPreset:
    spec = GroupSpec((4,))
    names = ["x1", "x2", "x3", "x4"]
    invariants = {k: parse_polynomial(t, names) for k, t in C4_GENERATORS.items()}
    vals_v = [0, 50, 0, 0, 0, 674, 168]
    vals_w = [0, 50, 0, 0, 0, 1250, 0]
    return WitnessPreset(
        name="c4",
        group=build_regular_representation(spec),
        spec=spec,
        v=_vec(3, 4, -3, -4),
        w=_vec(5, 0, -5, 0),
        names=names,
        invariants=invariants,
        expected_v={k: Fraction(x) for k, x in zip(invariants, vals_v)},
        expected_w={k: Fraction(x) for k, x in zip(invariants, vals_w)},
        expected_unseparated=3,
        expected_separated=4,
        separator="f6",
    )


def s3_group() -> MatrixGroup:
    """Permutation representation of S_3 on x1..x3 plus the sign on y."""
    transposition = [
        [0, 1, 0, 0],
        [1, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, -1],
    ]
    three_cycle = [
        [0, 0, 1, 0],
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
    ]
    return MatrixGroup([transposition, three_cycle], name="S3 perm+sign")


S3_INVARIANTS = {
    "s1": "x1 + x2 + x3",
    "s2": "x1 x2 + x2 x3 + x1 x3",
    "s3": "x1 x2 x3",
    "y2": "y^2",
}


def s3_preset() -> WitnessPreset:
    names = ["x1", "x2", "x3", "y"]
    invariants = {k: parse_polynomial(t, names) for k, t in S3_INVARIANTS.items()}
    x1, x2, x3, y = (ExactPolynomial.variable(4, i) for i in range(4))
    invariants["a"] = y * (x2 - x1) * (x3 - x2) * (x3 - x1)
    return WitnessPreset(
        name="s3",
        group=s3_group(),
        spec=None,
        v=_vec(2, 1, 0, 1),
        w=_vec(2, 1, 0, -1),
        names=names,
        invariants=invariants,
        expected_v={"s1": Fraction(3), "s2": Fraction(2), "s3": Fraction(0), "y2": Fraction(1), "a": Fraction(-2)},
        expected_w={"s1": Fraction(3), "s2": Fraction(2), "s3": Fraction(0), "y2": Fraction(1), "a": Fraction(2)},
        expected_unseparated=3,
        expected_separated=4,
        separator="a",
    )


# degree <= 3 generators, then the degree 4 and degree 5 ones
SEC6_LOW = [
    "x5^2 + x6^2",
    "x3^2 + x4^2",
    "x1^2 + x2^2",
    "x5^2 x6 - 1/3 x6^3",
    "x5^3 - 3 x5 x6^2",
    "x2 x3 x5 + x1 x4 x5 - x1 x3 x6 + x2 x4 x6",
    "x1 x3 x5 - x2 x4 x5 + x2 x3 x6 + x1 x4 x6",
    "x3^2 x4 - 1/3 x4^3",
    "x3^3 - 3 x3 x4^2",
    "x1^2 x2 - 1/3 x2^3",
    "x1^3 - 3 x1 x2^2",
]

SEC6_HIGH = [
    "x1 x3 x5^2 - x2 x4 x5^2 - 2 x2 x3 x5 x6 - 2 x1 x4 x5 x6 - x1 x3 x6^2 + x2 x4 x6^2",
    "x2 x3 x5^2 + x1 x4 x5^2 + 2 x1 x3 x5 x6 - 2 x2 x4 x5 x6 - x2 x3 x6^2 - x1 x4 x6^2",
    "x1 x3^2 x5 + 2 x2 x3 x4 x5 - x1 x4^2 x5 + x2 x3^2 x6 - 2 x1 x3 x4 x6 - x2 x4^2 x6",
    "x2 x3^2 x5 - 2 x1 x3 x4 x5 - x2 x4^2 x5 - x1 x3^2 x6 - 2 x2 x3 x4 x6 + x1 x4^2 x6",
    "x1^2 x3 x5 - x2^2 x3 x5 + 2 x1 x2 x4 x5 - 2 x1 x2 x3 x6 + x1^2 x4 x6 - x2^2 x4 x6",
    "x1 x2 x3 x5 - 1/2 x1^2 x4 x5 + 1/2 x2^2 x4 x5 + 1/2 x1^2 x3 x6 - 1/2 x2^2 x3 x6 + x1 x2 x4 x6",
    "x2 x3^2 x5^2 - 2 x1 x3 x4 x5^2 - x2 x4^2 x5^2 + 2 x1 x3^2 x5 x6 + 4 x2 x3 x4 x5 x6"
    " - 2 x1 x4^2 x5 x6 - x2 x3^2 x6^2 + 2 x1 x3 x4 x6^2 + x2 x4^2 x6^2",
    "x1 x3^2 x5^2 + 2 x2 x3 x4 x5^2 - x1 x4^2 x5^2 - 2 x2 x3^2 x5 x6 + 4 x1 x3 x4 x5 x6"
    " + 2 x2 x4^2 x5 x6 - x1 x3^2 x6^2 - 2 x2 x3 x4 x6^2 + x1 x4^2 x6^2",
    "x1 x2 x3 x5^2 - 1/2 x1^2 x4 x5^2 + 1/2 x2^2 x4 x5^2 - x1^2 x3 x5 x6 + x2^2 x3 x5 x6"
    " - 2 x1 x2 x4 x5 x6 - x1 x2 x3 x6^2 + 1/2 x1^2 x4 x6^2 - 1/2 x2^2 x4 x6^2",
    "x1^2 x3 x5^2 - x2^2 x3 x5^2 + 2 x1 x2 x4 x5^2 + 4 x1 x2 x3 x5 x6 - 2 x1^2 x4 x5 x6"
    " + 2 x2^2 x4 x5 x6 - x1^2 x3 x6^2 + x2^2 x3 x6^2 - 2 x1 x2 x4 x6^2",
    "x1 x2 x3^2 x5 + x1^2 x3 x4 x5 - x2^2 x3 x4 x5 - x1 x2 x4^2 x5 + 1/2 x1^2 x3^2 x6"
    " - 1/2 x2^2 x3^2 x6 - 2 x1 x2 x3 x4 x6 - 1/2 x1^2 x4^2 x6 + 1/2 x2^2 x4^2 x6",
    "x1^2 x3^2 x5 - x2^2 x3^2 x5 - 4 x1 x2 x3 x4 x5 - x1^2 x4^2 x5 + x2^2 x4^2 x5"
    " - 2 x1 x2 x3^2 x6 - 2 x1^2 x3 x4 x6 + 2 x2^2 x3 x4 x6 + 2 x1 x2 x4^2 x6",
]

SEC6_NAMES = [f"x{i}" for i in range(1, 7)]


def sqrt3() -> Cyclotomic:
    """sqrt(3) = w_12 + w_12^-1 inside Q(w_12)."""
    return Cyclotomic.root(12, 1) + Cyclotomic.root(12, 11)


def sec6_group() -> MatrixGroup:
    """C3 x C3 acting on R^6 by 120-degree rotations of coordinate planes."""
    half = Fraction(1, 2)
    s = sqrt3() * half
    rot = [[-half, -s], [s, -half]]
    one = [[1, 0], [0, 1]]

    def block_diag(*blocks):
        m = [[0] * 6 for _ in range(6)]
        for b, blk in enumerate(blocks):
            for i in range(2):
                for j in range(2):
                    m[2 * b + i][2 * b + j] = blk[i][j]
        return m

    return MatrixGroup([block_diag(rot, one, rot), block_diag(one, rot, rot)], name="sec6")


def sec6_invariants() -> tuple[list[ExactPolynomial], list[ExactPolynomial]]:
    low = [parse_polynomial(t, SEC6_NAMES) for t in SEC6_LOW]
    high = [parse_polynomial(t, SEC6_NAMES) for t in SEC6_HIGH]
    return low, high


def load_preset(name: str, p: int = 3) -> WitnessPreset:
    name = name.lower()
    if name == "cp":
        return cp_preset(p)
    if name == "c4":
        return c4_preset()
    if name == "s3":
        return s3_preset()
    raise KeyError(f"unknown witness preset {name!r}; choose from cp, c4, s3 (sec6 has its own runner)")
