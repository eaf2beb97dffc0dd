"""Thurston norm and torsion of a single Seifert piece.

The norm of a Seifert fibered space M with infinite fundamental group is
|chi_orb(M) * k_phi| where k_phi is the value of the class on a regular
fiber; the torsion class is then max{1, t^norm} whenever the fiber has
infinite order under the chosen homomorphism.  This module certifies the
hypotheses for the abelianization and lets callers assert them for
anything stronger.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ExclusionError, HypothesisError, ValidationError
from .exact_algebra import (
    AbelianPresentation,
    class_image_order,
    nullspace_basis,
    violated_relations,
)
from .seifert import (
    SeifertInvariants,
    abelianized_presentation,
    certified_infinite_pi1,
    chi_orb,
    exclusion_report,
    fiber_generator_index,
)
from .torsion import TorsionFunction


@dataclass(frozen=True)
class CohomologyClass:
    """Rational cohomology class given by its values on the generators."""

    values: tuple[Fraction, ...]

    @classmethod
    def of(cls, values: Sequence) -> "CohomologyClass":
        return cls(tuple(Fraction(v) for v in values))

    def __len__(self) -> int:
        return len(self.values)

    def scale(self, factor) -> "CohomologyClass":
        factor = Fraction(factor)
        return CohomologyClass(tuple(factor * v for v in self.values))

    def add(self, other: "CohomologyClass") -> "CohomologyClass":
        return CohomologyClass(tuple(a + b for a, b in zip(self.values, other.values)))


@dataclass(frozen=True)
class NormResult:
    k_phi: Fraction
    chi_orb: Fraction
    norm: Fraction
    hypothesis_fiber_infinite_order: bool


def require_valid_class(P: AbelianPresentation, phi: CohomologyClass) -> None:
    bad = violated_relations(P, phi.values)
    if bad:
        detail = "; ".join(
            f"relation {i} ({_relation_text(P, i)}) evaluates to {r}" for i, r in bad
        )
        raise ValidationError(f"class does not vanish on all relations: {detail}")


def _relation_text(P: AbelianPresentation, i: int) -> str:
    terms = [
        f"{c}*{name}" for c, name in zip(P.relations.row(i), P.generators) if c != 0
    ]
    return " + ".join(terms) if terms else "0"


def k_phi(S: SeifertInvariants, phi: CohomologyClass) -> Fraction:
    """Value of the class on the regular fiber."""
    P = abelianized_presentation(S)
    require_valid_class(P, phi)
    return phi.values[fiber_generator_index(S)]


def thurston_norm_sfs(S: SeifertInvariants, phi: CohomologyClass) -> NormResult:
    """Thurston norm |chi_orb * k_phi| of a non-excluded Seifert piece."""
    report = exclusion_report(S)
    if report.excluded is not None:
        raise ExclusionError(f"manifold is excluded: {report.excluded}")
    if not certified_infinite_pi1(S):
        raise HypothesisError(
            "cannot certify infinite fundamental group: closed manifold with "
            f"chi_orb = {chi_orb(S)} > 0"
        )
    k = k_phi(S, phi)
    P = abelianized_presentation(S)
    order = class_image_order(P, fiber_generator_index(S))
    return NormResult(
        k_phi=k,
        chi_orb=chi_orb(S),
        norm=abs(chi_orb(S) * k),
        hypothesis_fiber_infinite_order=order is None,
    )


def fibered_norm(genus: int, boundary: int) -> Fraction:
    """Norm of the fiber class of a surface bundle over the circle."""
    chi = 2 - 2 * genus - boundary
    return Fraction(max(0, -chi))


def sfs_torsion(
    S: SeifertInvariants, phi: CohomologyClass, assert_hypothesis: bool = False
) -> TorsionFunction:
    """Torsion class max{1, t^norm} of a Seifert piece.

    Requires the regular fiber to have infinite order in H1, unless the
    caller asserts the hypothesis for a finer homomorphism.
    """
    result = thurston_norm_sfs(S, phi)
    if not result.hypothesis_fiber_infinite_order and not assert_hypothesis:
        P = abelianized_presentation(S)
        order = class_image_order(P, fiber_generator_index(S))
        raise HypothesisError(
            f"regular fiber has finite order {order} in H1; pass "
            "assert_hypothesis=True to assert infinite order under a finer "
            "homomorphism",
            fiber_order=order,
        )
    return TorsionFunction.from_exponent(result.norm, 1)


def valid_class_basis(P: AbelianPresentation) -> list[CohomologyClass]:
    """Spanning set of the space of valid rational classes."""
    return [CohomologyClass.of(v) for v in nullspace_basis(P.relations)]


def product_bundle(genus: int) -> SeifertInvariants:
    """Closed trivial circle bundle over the orientable genus-g surface."""
    return SeifertInvariants(True, genus, 0, (), 0)


def fibration_class(genus: int, k=1) -> CohomologyClass:
    """Class on the trivial bundle evaluating to k on the fiber."""
    values = [Fraction(0)] * (2 * genus) + [Fraction(k)]
    return CohomologyClass.of(values)


@dataclass(frozen=True)
class CoveringReport:
    """Comparison of a product bundle with its pulled-back surface cover."""

    genus: int
    degree: int
    cover_genus: int
    chi_orb: Fraction
    chi_orb_cover: Fraction
    norm: Fraction
    norm_cover: Fraction
    chi_scales: bool
    norm_scales: bool

    @property
    def passed(self) -> bool:
        return self.chi_scales and self.norm_scales


def covering_check_product(
    g: int, d: int, phi: CohomologyClass
) -> CoveringReport:
    """Check chi_orb and norm multiplicativity under a degree-d base cover.

    The cover of S1 x Sigma_g induced by a degree-d surface cover has
    genus d(g-1)+1; the fiber degree is one, so the pulled-back class
    takes the same value on the fiber.
    """
    if g < 1 or d < 2:
        raise ValidationError("need base genus >= 1 and covering degree >= 2")
    S = product_bundle(g)
    P = abelianized_presentation(S)
    require_valid_class(P, phi)
    g_cover = d * (g - 1) + 1
    S_cover = product_bundle(g_cover)
    k = phi.values[fiber_generator_index(S)]
    phi_cover = fibration_class(g_cover, k)

    base = thurston_norm_sfs(S, phi)
    cover = thurston_norm_sfs(S_cover, phi_cover)
    return CoveringReport(
        genus=g,
        degree=d,
        cover_genus=g_cover,
        chi_orb=chi_orb(S),
        chi_orb_cover=chi_orb(S_cover),
        norm=base.norm,
        norm_cover=cover.norm,
        chi_scales=chi_orb(S_cover) == d * chi_orb(S),
        norm_scales=cover.norm == d * base.norm,
    )
