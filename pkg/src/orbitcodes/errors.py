"""Exception types shared across the package.

All exceptions derive from OrbitcodesError so the CLI can turn any
anticipated failure into a structured error report.  The distinction
mirrors how callers should react:

* ParameterError      -- the caller passed something invalid (bad prime,
                         constant base polynomial, malformed rate).
* ConfigurationError  -- the requested construction cannot exist in the
                         chosen ambient field (too small to split, no
                         free point).
* BudgetError         -- the computation would exceed a stated size
                         budget; refuse rather than grind.
* ConstraintViolation -- a polynomial failed a message-space constraint;
                         the message names the violated bound.
* InternalError       -- an invariant that should be unbreakable broke.
"""


class OrbitcodesError(Exception):
    """Base class for all package errors."""


class ParameterError(OrbitcodesError, ValueError):
    pass


class ConfigurationError(OrbitcodesError):
    pass


class BudgetError(OrbitcodesError):
    pass


class ConstraintViolation(OrbitcodesError, ValueError):
    pass


class InternalError(OrbitcodesError, AssertionError):
    pass
