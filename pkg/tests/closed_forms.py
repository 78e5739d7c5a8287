"""Independent closed-form tables used as oracles by the tests."""

from equicohom.mackey import Catalog


def point_table(a: int, b: int) -> Catalog:
    """The nine cases for H^{a+bΛ}(pt; A)."""
    if (a, b) == (0, 0):
        return Catalog.A
    if a + b == 0:
        if a < 0 and a % 2 == 0:
            return Catalog.R
        if a <= 1 and a % 2:
            return Catalog.R_MINUS
        if a > 0 and a % 2 == 0:
            return Catalog.L
        if a > 1 and a % 2:
            return Catalog.L_MINUS
    if a == 0:
        return Catalog.BRACKET_Z
    if a + b > 0 and a < 0 and a % 2 == 0:
        return Catalog.BRACKET_Z2
    if a + b < 0 and a > 1 and a % 2:
        return Catalog.BRACKET_Z2
    return Catalog.ZERO


def ep_integer_pattern(a: int) -> Catalog:
    if a == 0:
        return Catalog.R
    return Catalog.BRACKET_Z2 if a > 0 and a % 2 == 0 else Catalog.ZERO


def ep_lambda_pattern(a: int) -> Catalog:
    return Catalog.BRACKET_Z2 if a >= 0 and a % 2 == 0 else Catalog.ZERO
