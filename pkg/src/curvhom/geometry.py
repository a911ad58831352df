"""Levi-Civita connection, Riemann tensor and covariant derivatives on R^3.

A MetricField holds the 3x3 symmetric matrix of scalar expressions.  All
curvature quantities are computed at a point on the coordinate frame:
metric entries are evaluated to jets at a sufficient order, Christoffels
and the curvature components become jets themselves, and each covariant
derivative trades one jet order for one extra tensor slot:

    (nabla T)_{i1..in; m} = d_m T_{i1..in} - sum_s Gamma^a_{m i_s} T_{..a..}

New differentiation slots are appended last, so nabla^k R is a (0, 4+k)
tensor with slots (i, j, k, l; v_1, ..., v_k).  Requesting nabla^k R
evaluates the metric to jet order k + 2.

The recursion runs on coefficient arrays stacked over all tensor
components at once; the Leibniz products against the fixed Christoffel
jets are precomputed as small dense operators, which keeps the order-5
derivative of the curvature well under a second per point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import jets
from .expr import Expr, eval_jet
from .jets import Jet, jet_derivative, jet_mul
from .tensor import DET_FLOOR, TensorAtPoint

Point = tuple[float, float, float]


@dataclass(frozen=True)
class MetricField:
    """3x3 symmetric matrix of scalar expressions in coordinates (t, x, y).

    Only the upper triangle of the constructor argument is read; the lower
    triangle is mirrored, so the field is symmetric by construction.
    """

    entries: tuple[tuple[Expr, ...], ...]
    family: Optional[object] = field(default=None, compare=False)

    @staticmethod
    def from_matrix(matrix, family=None) -> "MetricField":
        rows = []
        for i in range(3):
            rows.append(tuple(matrix[min(i, j)][max(i, j)] for j in range(3)))
        return MetricField(tuple(rows), family)

    def entry(self, i: int, j: int) -> Expr:
        return self.entries[i][j]

    def scaled(self, c: float) -> "MetricField":
        """Metric multiplied by a constant; (0, 4+k) curvature scales by c."""
        from .expr import BinOp, Num

        num = Num(float(c))
        rows = tuple(tuple(BinOp("*", num, e) for e in row) for row in self.entries)
        return MetricField(rows, None)

    def component_matrix(self, p: Point) -> np.ndarray:
        m = np.empty((3, 3))
        for i in range(3):
            for j in range(i, 3):
                m[i, j] = m[j, i] = eval_jet(self.entries[i][j], p, 0).value
        return m

    def tensor_at(self, p: Point) -> TensorAtPoint:
        return TensorAtPoint(0, 2, self.component_matrix(p))


@dataclass(frozen=True)
class ConnectionJet:
    """Christoffel symbols Gamma^a_{ij} as jets at a base point."""

    point: Point
    order: int
    gamma: tuple[tuple[tuple[Jet, ...], ...], ...]  # [a][i][j], symmetric in (i, j)

    def symbol(self, a: int, i: int, j: int) -> Jet:
        return self.gamma[a][i][j]

    def values(self) -> np.ndarray:
        out = np.empty((3, 3, 3))
        for a in range(3):
            for i in range(3):
                for j in range(3):
                    out[a, i, j] = self.gamma[a][i][j].value
        return out


def _metric_jets(g: MetricField, p: Point, order: int) -> list[list[Jet]]:
    m = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(i, 3):
            jet = eval_jet(g.entry(i, j), p, order)
            m[i][j] = m[j][i] = jet
    return m


def _inverse_metric_jets(m: list[list[Jet]], g: MetricField, p: Point) -> list[list[Jet]]:
    c = {}
    for i in range(3):
        i1, i2 = [a for a in range(3) if a != i]
        for j in range(3):
            j1, j2 = [b for b in range(3) if b != j]
            minor = jet_mul(m[i1][j1], m[i2][j2]) - jet_mul(m[i1][j2], m[i2][j1])
            c[i, j] = minor if (i + j) % 2 == 0 else -minor
    det = jet_mul(m[0][0], c[0, 0]) + jet_mul(m[0][1], c[0, 1]) + jet_mul(m[0][2], c[0, 2])
    if abs(det.value) <= DET_FLOOR:
        raise ValueError(f"metric is degenerate at {p}: |det| = {abs(det.value):.3e}")
    recip = 1.0 / det
    inv = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            inv[i][j] = jet_mul(c[j, i], recip)
    return inv


def christoffel(g: MetricField, p: Point, order: int = 0) -> ConnectionJet:
    """Christoffel symbols of the Levi-Civita connection as jets at p.

    Gamma^a_{ij} = (1/2) g^{ab} (d_i g_{jb} + d_j g_{ib} - d_b g_{ij});
    metric entries are evaluated to jet order `order` + 1.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    m = _metric_jets(g, p, order + 1)
    inv = _inverse_metric_jets(m, g, p)
    dg = [[[jet_derivative(m[i][j], l) for j in range(3)] for i in range(3)] for l in range(3)]
    first = {}
    for b in range(3):
        for i in range(3):
            for j in range(i, 3):
                val = 0.5 * (dg[i][j][b] + dg[j][i][b] - dg[b][i][j])
                first[b, i, j] = first[b, j, i] = val
    gamma = [[[None] * 3 for _ in range(3)] for _ in range(3)]
    for a in range(3):
        for i in range(3):
            for j in range(i, 3):
                acc = jet_mul(inv[a][0].truncate(order), first[0, i, j])
                for b in (1, 2):
                    acc = acc + jet_mul(inv[a][b].truncate(order), first[b, i, j])
                gamma[a][i][j] = gamma[a][j][i] = acc
    return ConnectionJet(p, order, tuple(tuple(tuple(row) for row in plane) for plane in gamma))


def _riemann_jets(g: MetricField, p: Point, order: int, conn: ConnectionJet | None = None) -> np.ndarray:
    """Stacked coefficient array of the (0,4) curvature jets R_{ijkl}."""
    if conn is None or conn.order < order + 1:
        conn = christoffel(g, p, order + 1)
    ga = conn.gamma
    m = _metric_jets(g, p, order)
    dga = [
        [[[jet_derivative(ga[a][i][j].truncate(order + 1), l) for j in range(3)] for i in range(3)] for a in range(3)]
        for l in range(3)
    ]
    n = jets.table_size(order)
    out = np.empty((n, 3, 3, 3, 3))
    for i in range(3):
        for j in range(3):
            if j <= i:
                continue  # antisymmetric pair; fill below
            for k in range(3):
                up = []
                for a in range(3):
                    acc = dga[i][a][j][k] - dga[j][a][i][k]
                    for b in range(3):
                        acc = acc + jet_mul(ga[a][i][b].truncate(order), ga[b][j][k].truncate(order))
                        acc = acc - jet_mul(ga[a][j][b].truncate(order), ga[b][i][k].truncate(order))
                    up.append(acc)
                for l in range(3):
                    acc = jet_mul(m[l][0], up[0])
                    for a in (1, 2):
                        acc = acc + jet_mul(m[l][a], up[a])
                    out[:, i, j, k, l] = acc.coeffs
    for i in range(3):
        out[:, i, i, :, :] = 0.0
        for j in range(i):
            out[:, i, j, :, :] = -out[:, j, i, :, :]
    return out


def _gamma_stack(conn: ConnectionJet, order: int) -> np.ndarray:
    n = jets.table_size(order)
    stack = np.empty((n, 3, 3, 3))
    for a in range(3):
        for i in range(3):
            for j in range(3):
                stack[:, a, i, j] = conn.gamma[a][i][j].coeffs[:n]
    return stack


def _gamma_operator(gamma_stack: np.ndarray, order_out: int) -> np.ndarray:
    """Dense Leibniz operator for multiplying a field by Gamma^a_{m i}.

    W[p, q, a, m, i] contracts field coefficients q into product
    coefficients p for each symbol; built once per output order.
    """
    a_pos, b_pos, out_pos, coef = jets.product_table(order_out)
    n = jets.table_size(order_out)
    w = np.zeros((n, n, 3, 3, 3))
    np.add.at(w, (out_pos, b_pos), coef[:, None, None, None] * gamma_stack[a_pos])
    return w


def _covariant_step(field: np.ndarray, order_in: int, w: np.ndarray) -> np.ndarray:
    """One covariant derivative of a stacked (0,n) jet field.

    field has shape (table_size(order_in), 3, ..., 3); the result gains a
    trailing slot for the derivative direction and drops one jet order.
    """
    n_out = jets.table_size(order_in - 1)
    parts = [field[jets.shift_table(order_in, c)] for c in range(3)]
    out = np.stack(parts, axis=-1)
    nslots = field.ndim - 1
    for s in range(nslots):
        tmov = np.moveaxis(field[:n_out], 1 + s, -1)
        corr = np.einsum("pqami,q...a->p...im", w, tmov)
        out -= np.moveaxis(corr, -2, 1 + s)
    return _impose_curvature_slot_symmetries(out)


def _impose_curvature_slot_symmetries(field: np.ndarray) -> np.ndarray:
    """Project onto the exact symmetries every nabla^k R carries in its first
    four slots: antisymmetry in (1,2) and (3,4), symmetry under pair swap.

    Covariant differentiation preserves these identically, so the projection
    changes nothing mathematically; it removes the round-off that would
    otherwise pollute the components forced to vanish by index patterns.
    """
    f = 0.5 * (field - np.swapaxes(field, 1, 2))
    f = 0.5 * (f - np.swapaxes(f, 3, 4))
    return 0.5 * (f + np.moveaxis(f, (1, 2, 3, 4), (3, 4, 1, 2)))


def nabla_riemann_sequence(g: MetricField, p: Point, kmax: int) -> list[TensorAtPoint]:
    """[R, nabla R, ..., nabla^kmax R] at p, each a (0, 4+k) TensorAtPoint."""
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    conn = christoffel(g, p, kmax + 1)
    field = _riemann_jets(g, p, kmax, conn)
    seq = [TensorAtPoint(0, 4, field[0].copy())]
    for j in range(kmax):
        order_in = kmax - j
        w = _gamma_operator(_gamma_stack(conn, order_in - 1), order_in - 1)
        field = _covariant_step(field, order_in, w)
        seq.append(TensorAtPoint(0, 4 + j + 1, field[0].copy()))
    return seq


def riemann(g: MetricField, p: Point) -> TensorAtPoint:
    """Riemann tensor R(d_i, d_j, d_k, d_l) = g(R(d_i, d_j) d_k, d_l) at p."""
    return nabla_riemann_sequence(g, p, 0)[0]


def nabla_k_riemann(g: MetricField, p: Point, k: int) -> TensorAtPoint:
    """k-th covariant derivative of the Riemann tensor at p; k = 0 is riemann."""
    return nabla_riemann_sequence(g, p, k)[k]
