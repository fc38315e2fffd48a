"""Point estimators of the population mean computed from a realized sample.

All estimators take pre-computed summary inputs (the non-response-adjusted
sample mean, the auxiliary sample mean, and the known auxiliary population
mean) so that the closed-form theory and the simulation harness exercise one
and the same code path.
"""
from __future__ import annotations

from dataclasses import dataclass

from .design import SampleRealization
from .errors import DomainError, SingularityError


@dataclass(frozen=True)
class FamilyParams:
    """Parameters (alpha, g, a, b) of the general estimator family.

    The family rescales the adjusted sample mean by
    [(a*Xbar + b) / (alpha*(a*xbar + b) + (1 - alpha)*(a*Xbar + b))]^g,
    so alpha = 0 reproduces the plain adjusted mean, and (alpha=1, g=1) /
    (alpha=1, g=-1) with a=1, b=0 give the classical ratio / product
    estimators.
    """

    alpha: float
    g: float = 1.0
    a: float = 1.0
    b: float = 0.0

    def __post_init__(self) -> None:
        if self.a == 0:
            raise DomainError("family parameter a must be nonzero")


def lambda_coefficient(params: FamilyParams, pop_mean_x: float) -> float:
    """Relative weight a*Xbar / (a*Xbar + b) of the auxiliary mean in the bracket."""
    scaled = params.a * pop_mean_x
    denom = scaled + params.b
    if denom == 0:
        raise DomainError("a*Xbar + b is zero: lambda undefined for this population")
    return scaled / denom


def hh_mean(realization: SampleRealization) -> float:
    """Hansen-Hurwitz mean: respondents and follow-up sub-sample weighted n1:n2.

    Reduces to the plain sample mean under full response.
    """
    n = len(realization.units)
    n1 = len(realization.respondents)
    n2 = len(realization.nonrespondents)
    h2 = len(realization.subsample)
    if n1 + h2 == 0:
        raise DomainError("no observed study values in this realization")
    total = 0.0
    if n1 > 0:
        ybar_n1 = sum(realization.y_observed[u] for u in sorted(realization.respondents)) / n1
        total += n1 * ybar_n1
    if n2 > 0:
        ybar_h2 = sum(realization.y_observed[u] for u in sorted(realization.subsample)) / h2
        total += n2 * ybar_h2
    return total / n


def aux_mean(realization: SampleRealization) -> float:
    """Arithmetic mean of the auxiliary variable over all n sample units."""
    return sum(realization.x_observed) / len(realization.x_observed)


def family_estimate(
    ybar_star: float, xbar: float, pop_mean_x: float, p: FamilyParams
) -> float:
    """Evaluate the general family at the given summary inputs.

    Raises SingularityError on a zero denominator (or a zero bracket base
    with negative g) and DomainError when the bracket base is not positive
    while g is non-integer, which signals an (a, b) choice invalid for this
    sample rather than a numerical accident.
    """
    t_pop = p.a * pop_mean_x + p.b
    t_smp = p.a * xbar + p.b
    denom = p.alpha * t_smp + (1.0 - p.alpha) * t_pop
    if denom == 0:
        raise SingularityError("family denominator is zero for this sample")
    if p.g == 0.0:
        return ybar_star
    # g = +-1 covers the ratio/product sub-family; a single division avoids
    # the double rounding of base**g there.
    if p.g == 1.0:
        return ybar_star * (t_pop / denom)
    if p.g == -1.0:
        if t_pop == 0:
            raise SingularityError("bracket base is zero with negative exponent")
        return ybar_star * (denom / t_pop)
    base = t_pop / denom
    if base < 0 and not float(p.g).is_integer():
        raise DomainError(
            f"negative bracket base {base} with non-integer exponent g={p.g}"
        )
    if base == 0:
        if p.g < 0:
            raise SingularityError("bracket base is zero with negative exponent")
        if not float(p.g).is_integer():
            raise DomainError(f"zero bracket base with non-integer exponent g={p.g}")
    return ybar_star * base**p.g


def ratio_estimate(ybar_star: float, xbar: float, pop_mean_x: float) -> float:
    """Classical ratio estimator: adjusted mean scaled by Xbar/xbar."""
    if xbar == 0:
        raise SingularityError("auxiliary sample mean is zero: ratio undefined")
    return ybar_star * (pop_mean_x / xbar)


def product_estimate(ybar_star: float, xbar: float, pop_mean_x: float) -> float:
    """Classical product estimator: adjusted mean scaled by xbar/Xbar."""
    if pop_mean_x == 0:
        raise SingularityError("auxiliary population mean is zero: product undefined")
    return ybar_star * (xbar / pop_mean_x)
