"""Closed-form upper bounds on tree isolation numbers, regime
classification, and per-instance equality reporting.

All values are exact rationals; equality detection is the whole point, so
floating point never appears.  Bounds whose hypotheses fail are reported
as explicit not-applicable entries with a reason.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .graphs import Tree, is_any_star, is_star
from .solver import iota_tree_dp

ORDER_MINUS_LEAVES = "order_minus_leaves"   # (n - l) / 2
ORDER_PLUS_LEAVES = "order_plus_leaves"     # (n + l) / 4
CARO_TREES = "caro_trees"                   # n / (k + 2)
STAR_BOUND = "star_bound"                   # (n + l) / (2k + 1)
SUPPORT_BOUND = "support_bound"             # (n - l + 2s) / 4
BOUTRIG = "boutrig"                         # (n - l + s) / 3
CARO_THIRD = "caro_third"                   # n / 3

BOUND_NAMES = (
    ORDER_MINUS_LEAVES,
    ORDER_PLUS_LEAVES,
    CARO_TREES,
    STAR_BOUND,
    SUPPORT_BOUND,
    BOUTRIG,
    CARO_THIRD,
)


@dataclass
class BoundReport:
    """Every applicable bound value for one (tree, k) instance."""

    n: int
    l: int
    s: int
    k: int
    iota: int
    regime: str
    bounds: dict[str, Fraction]
    not_applicable: dict[str, str]
    equality: dict[str, bool]
    notes: dict[str, str] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        rendered: dict[str, str] = {}
        for name in BOUND_NAMES:
            if name in self.bounds:
                f = self.bounds[name]
                rendered[name] = f"{f.numerator}/{f.denominator}"
            else:
                rendered[name] = f"N/A: {self.not_applicable[name]}"
        out = {
            "n": self.n,
            "l": self.l,
            "s": self.s,
            "k": self.k,
            "iota": self.iota,
            "regime": self.regime,
            "bounds": rendered,
            "equality": dict(self.equality),
        }
        if self.notes:
            out["notes"] = dict(self.notes)
        return out


def regime_classify(n: int, l: int, k: int) -> str:
    """Label the (n, l) regime that selects the active piecewise bound."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if not (0 <= l <= n):
        raise ValueError(f"leaf order {l} out of range for n={n}")
    if k == 1:
        third = Fraction(n, 3)
        if l < third:
            return "ℓ < n/3"
        if l == third:
            return "ℓ = n/3"
        return "ℓ > n/3"
    low = Fraction((k - 1) * n, k + 2)
    high = Fraction(k * n, k + 2)
    if l < low:
        return "ℓ < (k-1)n/(k+2)"
    if l == low:
        return "ℓ = (k-1)n/(k+2)"
    if l < high:
        return "(k-1)n/(k+2) < ℓ < kn/(k+2)"
    if l == high:
        return "ℓ = kn/(k+2)"
    return "ℓ > kn/(k+2)"


def evaluate_bounds(t: Tree, k: int) -> BoundReport:
    """Evaluate every bound for (t, k) with exact equality flags.

    Hypotheses are enforced: bounds built on leaf removal are not
    applicable to stars (removing all leaves would leave a single vertex,
    where the domination step fails), and the remaining conditions follow
    each bound's stated requirements.
    """
    n, l, s = t.n, t.leaf_order, t.support_count
    iota = iota_tree_dp(t, k).size
    bounds: dict[str, Fraction] = {}
    na: dict[str, str] = {}
    notes: dict[str, str] = {}

    star_any = is_any_star(t)
    if n < 3:
        na[ORDER_MINUS_LEAVES] = "requires n >= 3"
    elif star_any:
        na[ORDER_MINUS_LEAVES] = "star: removing the leaves leaves a single vertex"
    else:
        bounds[ORDER_MINUS_LEAVES] = Fraction(n - l, 2)

    bounds[ORDER_PLUS_LEAVES] = Fraction(n + l, 4)

    if is_star(t, k):
        na[CARO_TREES] = f"tree is the k-star K(1,{k})"
    else:
        bounds[CARO_TREES] = Fraction(n, k + 2)

    bounds[STAR_BOUND] = Fraction(n + l, 2 * k + 1)
    if k == 1:
        notes[STAR_BOUND] = "informational at k=1: not sharp, dominated by order_plus_leaves"

    if n < 3:
        na[SUPPORT_BOUND] = "requires n >= 3"
    elif s == 1:
        na[SUPPORT_BOUND] = "requires s != 1"
    else:
        bounds[SUPPORT_BOUND] = Fraction(n - l + 2 * s, 4)

    if n < 3:
        na[BOUTRIG] = "requires n >= 3"
    elif star_any:
        na[BOUTRIG] = "star: removing the leaves leaves a single vertex"
    else:
        bounds[BOUTRIG] = Fraction(n - l + s, 3)

    if n == 2:
        na[CARO_THIRD] = "tree is K_2"
    else:
        bounds[CARO_THIRD] = Fraction(n, 3)

    equality = {name: Fraction(iota) == value for name, value in bounds.items()}
    return BoundReport(
        n=n, l=l, s=s, k=k, iota=iota,
        regime=regime_classify(n, l, k),
        bounds=bounds, not_applicable=na, equality=equality, notes=notes,
    )


def gap_order_plus_leaves(t: Tree) -> Fraction:
    """(n + l)/4 minus the isolation number, exactly."""
    return Fraction(t.n + t.leaf_order, 4) - iota_tree_dp(t, 1).size


def regime_table_violations(t: Tree, k: int, iota: int) -> list[str]:
    """Check the active piecewise-table row for (t, k) exactly.

    Applies to n >= 3 and non-star trees (stars sit outside the rows that
    rest on leaf removal).  Returns human-readable violations; empty means
    the row holds.
    """
    n, l = t.n, t.leaf_order
    if n < 3 or is_any_star(t):
        return []
    regime = regime_classify(n, l, k)
    io = Fraction(iota)
    plus4 = Fraction(n + l, 4)
    minus2 = Fraction(n - l, 2)
    violations: list[str] = []

    def check(cond: bool, text: str) -> None:
        if not cond:
            violations.append(f"[{regime}] {text}")

    if k == 1:
        third = Fraction(n, 3)
        if regime == "ℓ < n/3":
            check(io <= plus4, f"iota={iota} > (n+l)/4={plus4}")
            check(plus4 < third, f"(n+l)/4={plus4} not < n/3={third}")
        elif regime == "ℓ = n/3":
            check(plus4 == minus2 == third, f"(n+l)/4={plus4}, (n-l)/2={minus2}, n/3={third} differ")
            check(io <= third, f"iota={iota} > n/3={third}")
        else:
            check(io <= minus2, f"iota={iota} > (n-l)/2={minus2}")
            check(minus2 < third, f"(n-l)/2={minus2} not < n/3={third}")
        return violations

    star = Fraction(n + l, 2 * k + 1)
    caro = Fraction(n, k + 2)
    if regime == "ℓ < (k-1)n/(k+2)":
        check(io <= star, f"iota={iota} > (n+l)/(2k+1)={star}")
        check(star < caro, f"(n+l)/(2k+1)={star} not < n/(k+2)={caro}")
    elif regime == "ℓ = (k-1)n/(k+2)":
        check(star == caro, f"(n+l)/(2k+1)={star} != n/(k+2)={caro}")
        check(io <= star, f"iota={iota} > (n+l)/(2k+1)={star}")
    elif regime == "(k-1)n/(k+2) < ℓ < kn/(k+2)":
        check(io <= caro, f"iota={iota} > n/(k+2)={caro}")
    elif regime == "ℓ = kn/(k+2)":
        check(minus2 == caro, f"(n-l)/2={minus2} != n/(k+2)={caro}")
        check(io <= minus2, f"iota={iota} > (n-l)/2={minus2}")
    else:
        check(io <= minus2, f"iota={iota} > (n-l)/2={minus2}")
        check(minus2 < caro, f"(n-l)/2={minus2} not < n/(k+2)={caro}")
    return violations
