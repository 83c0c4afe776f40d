"""Exception types shared across the package."""


class CapacityError(Exception):
    """An enumeration limit (Weyl rank cap, basis size cap) was exceeded."""


class UnverifiedTypeError(Exception):
    """Operation on an exceptional type without the explicit override flag."""


class ToleranceError(Exception):
    """A numeric residual exceeded its contract; results are never rounded past it."""


class NegativeStructureError(Exception):
    """A fusion coefficient came out negative; construction aborts with diagnostics."""


class ConventionError(Exception):
    """Internal cross-check failure (two formulas disagree, or a guard tripped)."""


class IncompleteTableError(Exception):
    """A fusion-rule table does not carry values deep enough for the requested check."""
