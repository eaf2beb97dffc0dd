"""Circle-equivariant CW complexes with finite isotropy.

Only the data the closed torsion formula consumes is modeled: the number
of cell orbits per dimension and the order of the finite cyclic isotropy
group of each orbit.  The orbifold Euler characteristic is the isotropy-
weighted alternating cell count, and the torsion of such a complex is
max{1, t^k}^(-chi_orb) for the fiber value k of the class.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .seifert import SeifertInvariants, chi_orb
from .torsion import TorsionFunction


@dataclass(frozen=True)
class S1CWComplex:
    """cells[n] lists the isotropy orders of the n-cell orbits."""

    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "cells", tuple(tuple(int(a) for a in dim) for dim in self.cells)
        )
        for dim in self.cells:
            for a in dim:
                if a < 1:
                    raise ValidationError(f"isotropy order {a} must be >= 1")

    def attach(self, dimension: int, isotropy_order: int) -> "S1CWComplex":
        """New complex with one extra cell orbit attached."""
        cells = [list(d) for d in self.cells]
        while len(cells) <= dimension:
            cells.append([])
        cells[dimension].append(isotropy_order)
        return S1CWComplex(tuple(tuple(d) for d in cells))


def chi_orb_cw(X: S1CWComplex) -> Fraction:
    """Sum over dimensions n of (-1)^n sum_i 1/|H_i|."""
    total = Fraction(0)
    for n, dim in enumerate(X.cells):
        sign = -1 if n % 2 else 1
        total += sign * sum((Fraction(1, a) for a in dim), Fraction(0))
    return total


def cw_torsion(X: S1CWComplex, k) -> TorsionFunction:
    """Torsion max{1, t^k}^(-chi_orb) of the complex.

    The caller is responsible for the injectivity hypothesis on the orbit
    map composed with the homomorphism; it is not visible in this data.
    """
    return TorsionFunction.rational_pow(Fraction(k), -chi_orb_cw(X))


def circle() -> S1CWComplex:
    """The circle: one free 0-cell orbit."""
    return S1CWComplex(((1,),))


def torus() -> S1CWComplex:
    """S1 x S1: one free 0-orbit and one free 1-orbit."""
    return S1CWComplex(((1,), (1,)))


def solid_torus() -> S1CWComplex:
    """S1 x D2: free orbits mirroring a CW structure of the disk."""
    return S1CWComplex(((1,), (1,), (1,)))


def seifert_to_s1cw(S: SeifertInvariants) -> S1CWComplex:
    """Equivariant cell structure of a Seifert piece with orientable base.

    One 0-cell orbit of isotropy a_i per exceptional fiber; free cells
    mirror a cell structure of the punctured-and-recapped base surface,
    so the alternating sum reproduces chi_orb.  Non-orientable bases
    admit no circle action and are rejected.
    """
    if not S.base_orientable:
        raise ValidationError(
            "no circle action: base surface is non-orientable"
        )
    n = len(S.exceptional)
    zero_cells = [a for a, _ in S.exceptional] + [1]
    if S.is_closed:
        one_count = 2 * S.genus + n
        two_count = 1
    else:
        one_count = 2 * S.genus + S.boundary_count - 1 + n
        two_count = 0
    cells = [tuple(zero_cells), (1,) * one_count]
    if two_count:
        cells.append((1,) * two_count)
    X = S1CWComplex(tuple(cells))
    assert chi_orb_cw(X) == chi_orb(S)
    return X


def check_product_formula(
    tau_X: TorsionFunction, tau_Y: TorsionFunction, tau_XY: TorsionFunction
) -> bool:
    """Subcomplex factorization: tau(Y) * tau(X,Y) = tau(X)."""
    return tau_Y.mul(tau_XY).eq(tau_X)


def check_gluing_formula(
    tau_X0: TorsionFunction,
    tau_X1: TorsionFunction,
    tau_X2: TorsionFunction,
    tau_X3: TorsionFunction,
) -> bool:
    """Pushout multiplicativity: tau(X3) * tau(X0) = tau(X1) * tau(X2)."""
    return tau_X3.mul(tau_X0).eq(tau_X1.mul(tau_X2))
