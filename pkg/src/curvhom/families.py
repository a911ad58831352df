"""Built-in metric families and their closed-form curvature oracles.

Two one-function families on R^3 with coordinates (t, x, y):

  * f-family, profile f = f(x):   g_tt = exp(2 f),  g_xy = 1
  * h-family, profile h = h(t):   g_tt = 1,  g_xy = 1,  g_xx = -2 h

Both are Lorentzian wherever defined.  All curvature of the f-family is
carried by the scalar delta = f'' + (f')^2 and its x-derivatives; the
h-family's curvature is carried by derivatives of h.  The oracles
materialize the closed-form component arrays directly from jets of the
profile function, independently of the geometry engine, so the two can be
checked against each other componentwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import jets
from .expr import Expr, eval_jet, parse, pretty, variables_of
from .geometry import MetricField, Point
from .jets import Jet, jet_derivative, jet_mul
from .tensor import TensorAtPoint

_ZERO = parse("0")
_ONE = parse("1")

T, X, Y = 0, 1, 2


@dataclass(frozen=True)
class FamilySpec:
    """Which built-in family a metric belongs to, and its profile function."""

    family: str  # "f", "h" or "custom"
    function: Optional[Expr] = None
    matrix: Optional[tuple[tuple[Expr, ...], ...]] = None

    def __post_init__(self):
        if self.family not in ("f", "h", "custom"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.family in ("f", "h") and self.function is None:
            raise ValueError(f"family {self.family!r} needs a profile function")
        if self.family == "custom" and self.matrix is None:
            raise ValueError("custom family needs a metric matrix")


def family_f_metric(f: Expr) -> MetricField:
    """Metric with g_tt = exp(2 f(x)) and g_xy = 1; f may depend on x only."""
    bad = variables_of(f) - {"x"}
    if bad:
        raise ValueError(f"f-family profile must depend on x only, found {sorted(bad)}")
    gtt = parse(f"exp(2*({pretty(f)}))")
    matrix = ((gtt, _ZERO, _ZERO), (_ZERO, _ZERO, _ONE), (_ZERO, _ONE, _ZERO))
    return MetricField.from_matrix(matrix, family=FamilySpec("f", f))


def family_h_metric(h: Expr) -> MetricField:
    """Metric with g_tt = 1, g_xy = 1, g_xx = -2 h(t); h may depend on t only."""
    bad = variables_of(h) - {"t"}
    if bad:
        raise ValueError(f"h-family profile must depend on t only, found {sorted(bad)}")
    gxx = parse(f"-2*({pretty(h)})")
    matrix = ((_ONE, _ZERO, _ZERO), (_ZERO, gxx, _ONE), (_ZERO, _ONE, _ZERO))
    return MetricField.from_matrix(matrix, family=FamilySpec("h", h))


def custom_metric(matrix) -> MetricField:
    return MetricField.from_matrix(matrix, family=FamilySpec("custom", matrix=tuple(tuple(r) for r in matrix)))


def delta_jet(f: Expr, p: Point, order: int) -> Jet:
    """Jet of delta = f'' + (f')^2 at p, to the given order."""
    fj = eval_jet(f, p, order + 2)
    f1 = jet_derivative(fj, X)
    f2 = jet_derivative(f1, X)
    return f2 + jet_mul(f1.truncate(order), f1.truncate(order))


def delta_derivatives(f: Expr, p: Point, kmax: int) -> list[float]:
    """[delta, delta', ..., delta^(kmax)] evaluated at p."""
    dj = delta_jet(f, p, kmax)
    return [jets.partial(dj, (0, k, 0)) for k in range(kmax + 1)]


def profile_derivatives(h: Expr, p: Point, kmax: int) -> list[float]:
    """[h, h', ..., h^(kmax)] at p for a t-profile."""
    hj = eval_jet(h, p, kmax)
    return [jets.partial(hj, (k, 0, 0)) for k in range(kmax + 1)]


def _place_curvature_block(components: np.ndarray, pair: tuple[int, int], value: float, tail: tuple[int, ...]):
    """Write one curvature entry and its sign images into a component array.

    pair = (a, b) names the entry T(a, b, b, a) = value; the images
    (b, a, a, b) = value and (a, b, a, b) = (b, a, b, a) = -value follow from
    the algebraic curvature symmetries.
    """
    a, b = pair
    components[(a, b, b, a) + tail] = value
    components[(b, a, a, b) + tail] = value
    components[(a, b, a, b) + tail] = -value
    components[(b, a, b, a) + tail] = -value


def family_f_oracle(f: Expr, p: Point, k: int) -> TensorAtPoint:
    """Closed-form nabla^k R for the f-family.

    The only entries, up to curvature symmetries, are
    nabla^k R(dx, dt, dt, dx; dx, ..., dx) = -exp(2 f) * delta^(k).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    e2f = np.exp(2.0 * eval_jet(f, p, 0).value)
    dk = delta_derivatives(f, p, k)[k]
    comp = np.zeros((3,) * (4 + k))
    _place_curvature_block(comp, (X, T), -e2f * dk, (X,) * k)
    return TensorAtPoint(0, 4 + k, comp)


def family_h_oracle(h: Expr, p: Point, k: int) -> TensorAtPoint:
    """Closed-form nabla^k R for the h-family, available for k <= 2.

    Entries up to curvature symmetries:
        R(dt, dx, dx, dt)               = h''
        nabla R(dt, dx, dx, dt; dt)     = h'''
        nabla^2 R(dt, dx, dx, dt; dt, dt) = h''''
        nabla^2 R(dt, dx, dx, dt; dx, dx) = -h' h'''

    The (; dx, dx) sign is what the covariant-derivative recursion yields:
    the only surviving term is -Gamma^t_{xx} nabla R(dt, dx, dx, dt; dt).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > 2:
        raise ValueError("h-family closed forms stop at k = 2; use the geometry engine")
    d = profile_derivatives(h, p, k + 2)
    comp = np.zeros((3,) * (4 + k))
    if k == 0:
        _place_curvature_block(comp, (T, X), d[2], ())
    elif k == 1:
        _place_curvature_block(comp, (T, X), d[3], (T,))
    else:
        _place_curvature_block(comp, (T, X), d[4], (T, T))
        _place_curvature_block(comp, (T, X), -d[1] * d[3], (X, X))
    return TensorAtPoint(0, 4 + k, comp)
