"""Combinatorial model of Seifert fibered spaces.

A Seifert fibered space is described by its base surface (orientable
genus g or crosscap number k, with b boundary circles), the index/slope
pairs (a_i, b_i) of its exceptional fibers, and, when closed, the Euler
obstruction e0.  From this data we build the abelianized fundamental
group presentation, the orbifold Euler characteristic of the base, and
the exclusion/asphericity report consumed by the norm engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import ValidationError
from .exact_algebra import AbelianPresentation, IntMatrix

# Exclusion reasons.  These manifolds (or bases) fall outside the closed
# formulas: the product S1 x S2, the solid torus S1 x D2, and fibrations
# over RP2.
EXCL_S1XS2 = "S1xS2"
EXCL_S1XD2 = "S1xD2"
EXCL_RP2_BASE = "RP2-base"


@dataclass(frozen=True)
class SeifertInvariants:
    """Seifert invariants: base, boundary, exceptional fibers, obstruction.

    genus is the orientable genus if base_orientable, else the crosscap
    number (>= 1).  euler_obstruction must be present exactly when the
    manifold is closed (boundary_count == 0).
    """

    base_orientable: bool
    genus: int
    boundary_count: int
    exceptional: tuple[tuple[int, int], ...] = ()
    euler_obstruction: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "exceptional", tuple(
            (int(a), int(b)) for a, b in self.exceptional
        ))
        if self.genus < 0:
            raise ValidationError("genus must be nonnegative")
        if not self.base_orientable and self.genus < 1:
            raise ValidationError("non-orientable base needs crosscap number >= 1")
        if self.boundary_count < 0:
            raise ValidationError("boundary_count must be nonnegative")
        for a, b in self.exceptional:
            if a < 2:
                raise ValidationError(f"exceptional fiber index {a} must be >= 2")
            if gcd(a, b) != 1:
                raise ValidationError(f"exceptional pair ({a},{b}) is not coprime")
        closed = self.boundary_count == 0
        if closed and self.euler_obstruction is None:
            raise ValidationError("closed manifold needs an euler_obstruction")
        if not closed and self.euler_obstruction is not None:
            raise ValidationError("euler_obstruction only makes sense for closed manifolds")

    @property
    def is_closed(self) -> bool:
        return self.boundary_count == 0

    def mirrored(self) -> "SeifertInvariants":
        """Orientation-reversed copy: slopes and obstruction change sign."""
        e0 = None if self.euler_obstruction is None else -self.euler_obstruction
        return SeifertInvariants(
            self.base_orientable,
            self.genus,
            self.boundary_count,
            tuple((a, -b) for a, b in self.exceptional),
            e0,
        )


@dataclass(frozen=True)
class FiberedManifoldReport:
    """Exclusion and asphericity summary for one Seifert piece."""

    chi_base: Fraction
    chi_orb: Fraction
    excluded: str | None  # one of EXCL_* or None
    chi_orb_negative: bool


def chi_base(S: SeifertInvariants) -> Fraction:
    """Euler characteristic of the base surface."""
    if S.base_orientable:
        return Fraction(2 - 2 * S.genus - S.boundary_count)
    return Fraction(2 - S.genus - S.boundary_count)


def chi_orb(S: SeifertInvariants) -> Fraction:
    """Orbifold Euler characteristic: chi(base) - sum(1 - 1/a_i)."""
    return chi_base(S) - sum(
        (Fraction(a - 1, a) for a, _ in S.exceptional), Fraction(0)
    )


def generator_names(S: SeifertInvariants) -> tuple[str, ...]:
    names: list[str] = []
    if S.base_orientable:
        for i in range(1, S.genus + 1):
            names += [f"x{i}", f"y{i}"]
    else:
        names += [f"z{i}" for i in range(1, S.genus + 1)]
    names += [f"q{i}" for i in range(1, len(S.exceptional) + 1)]
    names += [f"d{i}" for i in range(1, S.boundary_count + 1)]
    names.append("h")
    return tuple(names)


def fiber_generator_index(S: SeifertInvariants) -> int:
    """Index of the regular-fiber generator h (always last)."""
    return len(generator_names(S)) - 1


def boundary_generator_index(S: SeifertInvariants, slot: int) -> int:
    """Index of the section curve d_{slot+1} of the given boundary torus."""
    if not (0 <= slot < S.boundary_count):
        raise ValidationError(
            f"boundary slot {slot} out of range (boundary_count={S.boundary_count})"
        )
    surface = 2 * S.genus if S.base_orientable else S.genus
    return surface + len(S.exceptional) + slot


def abelianized_presentation(S: SeifertInvariants) -> AbelianPresentation:
    """Abelianized standard presentation of pi_1.

    Relations: a_i q_i + b_i h = 0 per exceptional fiber; the base-surface
    relation sum(q_i) + sum(d_j) (+ e0 h when closed) (+ 2 sum(z_j) for
    non-orientable base) = 0; and 2h = 0 for non-orientable base, where
    the fiber orientation reverses over each crosscap loop.  Surface
    generators x_i, y_i enter only through commutators and survive freely.
    """
    names = generator_names(S)
    n = len(names)
    surface = 2 * S.genus if S.base_orientable else S.genus
    nexc = len(S.exceptional)
    h = n - 1

    rows: list[list[int]] = []
    for i, (a, b) in enumerate(S.exceptional):
        row = [0] * n
        row[surface + i] = a
        row[h] = b
        rows.append(row)

    base_row = [0] * n
    for i in range(nexc):
        base_row[surface + i] = 1
    for j in range(S.boundary_count):
        base_row[surface + nexc + j] = 1
    if not S.base_orientable:
        for j in range(S.genus):
            base_row[j] = 2
    if S.is_closed:
        base_row[h] += S.euler_obstruction
    rows.append(base_row)

    if not S.base_orientable:
        half_lives = [0] * n
        half_lives[h] = 2
        rows.append(half_lives)

    relations = (
        IntMatrix.from_rows(rows) if rows else IntMatrix(0, n, ())
    )
    return AbelianPresentation(names, relations)


def exclusion_report(S: SeifertInvariants) -> FiberedManifoldReport:
    """Flag the excluded manifolds and report asphericity data.

    S1 x D2 covers every fibered solid torus: a disk base with at most one
    exceptional fiber.  S1 x S2 is the unfibered sphere bundle (sphere
    base, no exceptional fibers, zero obstruction).  Any fibration over a
    base with crosscap number one and no boundary sits over RP2.
    """
    cb = chi_base(S)
    co = chi_orb(S)
    excluded = None
    if S.base_orientable and S.genus == 0 and S.boundary_count == 1 and len(S.exceptional) <= 1:
        excluded = EXCL_S1XD2
    elif (
        S.base_orientable
        and S.genus == 0
        and S.is_closed
        and not S.exceptional
        and S.euler_obstruction == 0
    ):
        excluded = EXCL_S1XS2
    elif not S.base_orientable and S.genus == 1 and S.is_closed:
        excluded = EXCL_RP2_BASE
    return FiberedManifoldReport(cb, co, excluded, co < 0)


def certified_infinite_pi1(S: SeifertInvariants) -> bool:
    """Sufficient combinatorial test for infinite fundamental group.

    Pieces with boundary and aspherical closed pieces (chi_orb <= 0)
    qualify; closed pieces with chi_orb > 0 are the finite-pi_1 danger
    zone and are reported as uncertified.
    """
    return S.boundary_count >= 1 or chi_orb(S) <= 0
