"""Typed errors shared across the package.

The CLI maps these onto its exit-code contract: validation and exclusion
problems exit 1, unmet torsion hypotheses exit 2.
"""


class ValidationError(ValueError):
    """Malformed input: bad invariants, dimension mismatches, invalid classes."""


class ExclusionError(ValidationError):
    """The manifold is one of the excluded cases (S1xS2, S1xD2, RP2 base)."""


class HypothesisError(Exception):
    """A theorem hypothesis cannot be certified (finite pi_1, torsion fiber)."""

    def __init__(self, message, fiber_order=None):
        super().__init__(message)
        self.fiber_order = fiber_order
