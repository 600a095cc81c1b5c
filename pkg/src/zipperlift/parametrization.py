"""Evaluate the linear parametrization of a zipper by a line zipper.

Given a spatial zipper S with vertices z_0..z_m and a line zipper T with
the same signature, there is a unique continuous f: [0, 1] -> attractor
with f(t_i) = z_i that intertwines the two families: composing f with an
interval map equals composing the matching spatial map with f.  Evaluation
descends through interval addresses: each digit picks the subinterval
containing t, pulls t back through that interval map, and applies the
matching spatial map on the way out.  The descent stops once the product
of contraction factors certifies the requested accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OutOfDomain, ToleranceUnreachable
from .zipper import check_pairing

#: Hard cap on address digits before giving up on a tolerance.
MAX_DEPTH = 10_000


@dataclass(frozen=True)
class Address:
    """Interval address of a parameter: digit choices, outermost first.

    ``digits`` are 1-based interval indices; ``orientation`` is the net
    orientation (+1 or -1) after signature flips along the digits; ``anchor``
    is the residual parameter in [0, 1] once the digits are stripped.
    Applying the digit interval maps to the anchor reproduces the parameter.
    """

    digits: tuple[int, ...]
    orientation: int
    anchor: float


@dataclass(frozen=True, eq=False)
class ParamEvaluation:
    """A curve point with a certified error radius and the depth used."""

    value: np.ndarray
    error_bound: float
    depth: int


def address_of(t, line, depth):
    """Greedy interval descent of ``t`` to exactly ``depth`` digits.

    At each level the digit is the unique interval containing the current
    parameter, with node points assigned to the interval starting there and
    t = 1 assigned to the last interval; the parameter is then pulled back
    through that interval map (reversing where the signature bit is set).
    """
    if not 0.0 <= t <= 1.0:
        raise OutOfDomain(f"parameter {t!r} outside [0, 1]")
    digits = []
    orientation = 1
    u = float(t)
    for _ in range(int(depth)):
        index = line.interval_of(u)
        digits.append(index)
        if line.signature[index - 1]:
            orientation = -orientation
        u = float(line.inverse(index, u))
    return Address(tuple(digits), orientation, u)


def _node_row(zipper, line, u):
    """Vertex row for an exact node hit, or None."""
    index = int(np.searchsorted(line.nodes, u))
    if index < line.nodes.size and line.nodes[index] == u:
        return zipper.vertices[index]
    return None


def _contraction_data(zipper):
    norms = np.array(zipper.linear_norms)
    if norms.max() >= 1.0:
        raise ValueError(
            "parametrization evaluation needs every map to contract; "
            f"worst operator norm is {norms.max():.6g}"
        )
    return norms, zipper.diameter_bound


def eval_f(t, zipper, line, tol=1e-9, max_depth=MAX_DEPTH):
    """Evaluate the parametrization at ``t`` with guaranteed accuracy ``tol``.

    Digits are consumed until the accumulated contraction product times the
    attractor reach bound drops below ``tol``; an exact node hit on the way
    terminates with an exact vertex image and a zero bound.  Otherwise the
    returned point is the digit-map image of the first vertex and the bound
    is the contraction product times the reach bound (always <= ``tol``).
    """
    if not 0.0 <= t <= 1.0:
        raise OutOfDomain(f"parameter {t!r} outside [0, 1]")
    check_pairing(zipper, line)
    norms, diameter = _contraction_data(zipper)
    n = zipper.dimension
    linear = np.eye(n)
    offset = np.zeros(n)
    factor = 1.0
    depth = 0
    u = float(t)
    while True:
        anchor_row = _node_row(zipper, line, u)
        if anchor_row is not None:
            value = linear @ anchor_row + offset
            value.setflags(write=False)
            return ParamEvaluation(value, 0.0, depth)
        if factor * diameter <= tol:
            value = linear @ zipper.vertices[0] + offset
            value.setflags(write=False)
            return ParamEvaluation(value, factor * diameter, depth)
        if depth >= max_depth:
            raise ToleranceUnreachable(
                f"tolerance {tol:g} not reached within {max_depth} digits"
            )
        index = line.interval_of(u)
        spatial = zipper.maps[index - 1]
        offset = linear @ spatial.translation + offset
        linear = linear @ spatial.linear
        factor *= norms[index - 1]
        u = float(line.inverse(index, u))
        depth += 1


def eval_f_many(ts, zipper, line, tol=1e-9, max_depth=MAX_DEPTH):
    """Vectorized :func:`eval_f` over an array of parameters.

    Returns ``(values, bounds)`` with ``values`` of shape (N, n) and
    per-point certified error radii.  Bit-identical to the scalar evaluator
    on each entry.
    """
    ts = np.asarray(ts, dtype=float).ravel()
    if ts.size == 0:
        return np.zeros((0, zipper.dimension)), np.zeros(0)
    if float(ts.min()) < 0.0 or float(ts.max()) > 1.0:
        raise OutOfDomain("parameters must lie in [0, 1]")
    check_pairing(zipper, line)
    norms, diameter = _contraction_data(zipper)
    n = zipper.dimension
    m = zipper.map_count
    count = ts.size
    nodes = line.nodes

    u = ts.copy()
    linear = np.broadcast_to(np.eye(n), (count, n, n)).copy()
    offset = np.zeros((count, n))
    factor = np.ones(count)
    anchor_index = np.full(count, -1, dtype=int)
    active = np.ones(count, dtype=bool)

    level = 0
    while active.any():
        hit = active & np.isin(u, nodes)
        if hit.any():
            anchor_index[hit] = np.searchsorted(nodes, u[hit])
            active[hit] = False
        certified = active & (factor * diameter <= tol)
        active[certified] = False
        if not active.any():
            break
        if level >= max_depth:
            raise ToleranceUnreachable(
                f"tolerance {tol:g} not reached within {max_depth} digits"
            )
        intervals = np.searchsorted(nodes, u, side="right") - 1
        np.clip(intervals, 0, m - 1, out=intervals)
        for k in range(m):
            mask = active & (intervals == k)
            if not mask.any():
                continue
            spatial = zipper.maps[k]
            offset[mask] += np.einsum("pij,j->pi", linear[mask], spatial.translation)
            linear[mask] = linear[mask] @ spatial.linear
            factor[mask] *= norms[k]
            if line.signature[k]:
                u[mask] = np.clip((nodes[k + 1] - u[mask]) / line.ratios[k], 0.0, 1.0)
            else:
                u[mask] = np.clip((u[mask] - nodes[k]) / line.ratios[k], 0.0, 1.0)
        level += 1

    anchors = np.empty((count, n))
    anchors[:] = zipper.vertices[0]
    finished = anchor_index >= 0
    anchors[finished] = zipper.vertices[anchor_index[finished]]
    values = np.einsum("pij,pj->pi", linear, anchors) + offset
    bounds = np.where(finished, 0.0, factor * diameter)
    return values, bounds


def eval_f_at_address(zipper, line, address):
    """Evaluate the parametrization at an explicit interval address.

    Exact (zero bound) when the anchor is a node of the line zipper;
    otherwise returns the digit-map image of the first vertex with the
    usual contraction-product error radius.  Useful for checking that the
    two addresses of a boundary parameter agree.
    """
    check_pairing(zipper, line)
    norms, diameter = _contraction_data(zipper)
    n = zipper.dimension
    linear = np.eye(n)
    offset = np.zeros(n)
    factor = 1.0
    for digit in address.digits:
        spatial = zipper.maps[digit - 1]
        offset = linear @ spatial.translation + offset
        linear = linear @ spatial.linear
        factor *= norms[digit - 1]
    anchor_row = _node_row(zipper, line, address.anchor)
    if anchor_row is not None:
        value = linear @ anchor_row + offset
        bound = 0.0
    else:
        value = linear @ zipper.vertices[0] + offset
        bound = factor * diameter
    value.setflags(write=False)
    return ParamEvaluation(value, bound, len(address.digits))
