"""Smooth lift of a zipper: the running integral of its parametrization.

For a zipper S with first vertex at the origin, parametrized by a line
zipper T, the running integral g(t) of the parametrization f is a
differentiable curve.  Everything needed to evaluate g comes from finitely
much data:

* the total integral h = g(1), the solution of a small fixed-point linear
  system assembled from the interval widths and the normal-form linear
  parts;
* the node integrals g(t_i), obtained by accumulating one closed-form
  increment per interval;
* a self-referential recursion expressing g on each subinterval through g
  on all of [0, 1], which both evaluates g to certified accuracy and
  packages the graph of g as the attractor of an explicit self-affine
  zipper on R^{n+1} (the "lifted" zipper).

This module computes all three, plus the inverse design problem for the
two-map increasing interval family: recovering curve heights from two
integral values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInput, OutOfDomain, ToleranceUnreachable
from .geometry import AffineMap, solve_linear
from .parametrization import MAX_DEPTH
from .zipper import check_pairing, similarity_decomposition, validate_zipper


@dataclass(frozen=True, eq=False)
class SmoothLift:
    """Solved integral data for one (zipper, line zipper) pair.

    ``h`` is the total integral g(1); ``node_integrals`` stacks
    g(t_0)..g(t_m) row-wise (the first row is zero and the last equals
    ``h``); ``lifted_maps`` are the affine maps on R^{n+1} whose attractor
    is the graph of g; ``source_signature`` records the shared signature.
    """

    h: np.ndarray
    node_integrals: np.ndarray
    lifted_maps: tuple[AffineMap, ...]
    source_signature: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class GEvaluation:
    """An integral-curve point with certified error radius and depth used."""

    value: np.ndarray
    error_bound: float
    depth: int


def solve_h(zipper, line):
    """Total integral of the parametrization over [0, 1].

    Solves ``(Id - sum sign_i q_i A_i) h = sum q_i offset_i`` where q_i are
    the interval widths and (offset_i, A_i, sign_i) is the normal-form
    decomposition of each map.  Requires the first vertex at the origin
    (:class:`NotNormalized` otherwise) and propagates
    :class:`SingularSystem` when the system matrix is not invertible.
    """
    check_pairing(zipper, line)
    decomposition = similarity_decomposition(zipper)
    n = zipper.dimension
    matrix = np.eye(n)
    rhs = np.zeros(n)
    for part, width in zip(decomposition, line.ratios):
        matrix -= part.sign * width * part.linear_part
        rhs += width * part.offset
    return solve_linear(matrix, rhs)


def node_integrals(zipper, line, h):
    """Integral values at every node, as an (m+1, n) array.

    The increment over interval i is ``offset_i q_i + sign_i q_i A_i h``;
    accumulating from zero makes the first row exactly zero and the last
    row equal to ``h`` up to roundoff.
    """
    check_pairing(zipper, line)
    decomposition = similarity_decomposition(zipper)
    h = np.asarray(h, dtype=float)
    increments = [
        part.offset * width + part.sign * width * (part.linear_part @ h)
        for part, width in zip(decomposition, line.ratios)
    ]
    values = np.zeros((zipper.map_count + 1, zipper.dimension))
    np.cumsum(increments, axis=0, out=values[1:])
    values.setflags(write=False)
    return values


def _lifted_maps(zipper, line, g_nodes):
    """Affine maps on R^{n+1} whose attractor is the graph of g.

    Map i translates by the lifted entry vertex (t, g(t)) at t_{i-1} (or
    t_i when orientation-reversing) and scales by sign * q_i times a block
    matrix: first row (1, 0..0), first column the entry vertex of the
    spatial zipper, lower-right block sign * A_i.
    """
    decomposition = similarity_decomposition(zipper)
    n = zipper.dimension
    built = []
    for k, (part, width) in enumerate(zip(decomposition, line.ratios)):
        block = np.zeros((n + 1, n + 1))
        block[0, 0] = 1.0
        block[1:, 0] = part.offset
        block[1:, 1:] = part.sign * part.linear_part
        entry = k + zipper.signature[k]
        translation = np.concatenate([[line.nodes[entry]], g_nodes[entry]])
        built.append(AffineMap(part.sign * width * block, translation))
    return tuple(built)


def build_lift(zipper, line):
    """Solve the integral data and assemble the :class:`SmoothLift`."""
    h = solve_h(zipper, line)
    g_nodes = node_integrals(zipper, line, h)
    return SmoothLift(
        h=h,
        node_integrals=g_nodes,
        lifted_maps=_lifted_maps(zipper, line, g_nodes),
        source_signature=zipper.signature,
    )


def smooth_zipper(zipper, line, lift):
    """The lifted maps as a validated zipper on R^{n+1}.

    Vertices are (t_i, g(t_i)) with the source signature.  Validation runs
    in eventual-contraction mode (word length up to 8): lifted linear parts
    need not contract map by map even though their word products do.
    """
    vertices = np.column_stack([line.nodes, lift.node_integrals])
    return validate_zipper(
        lift.lifted_maps, vertices, zipper.signature,
        contraction="eventual", word_length=8,
    )


def _sup_integral_bound(zipper):
    """Certified bound on sup |g| over [0, 1].

    |g(t)| <= sup |f| <= reach of the attractor around the origin, which is
    exactly the zipper's cached reach bound (the first vertex is the origin
    for every lift).
    """
    return zipper.diameter_bound


def eval_g(t, zipper, line, lift, tol=1e-9, max_depth=MAX_DEPTH):
    """Evaluate the integral curve at ``t`` with guaranteed accuracy ``tol``.

    Descends the same interval addresses as the parametrization, but each
    digit contributes a closed-form affine part plus a rescaled call of g
    on [0, 1]; the rescaling gains a factor q_i |A_i| per digit, so the
    descent stops once the accumulated factor times a precomputed bound on
    sup |g| drops below ``tol``.  Node hits terminate exactly through the
    solved node integrals.
    """
    if not 0.0 <= t <= 1.0:
        raise OutOfDomain(f"parameter {t!r} outside [0, 1]")
    check_pairing(zipper, line)
    decomposition = similarity_decomposition(zipper)
    norms = np.array(zipper.linear_norms)
    sup_g = _sup_integral_bound(zipper)
    g_nodes = lift.node_integrals
    nodes = line.nodes
    n = zipper.dimension

    linear = np.eye(n)
    offset = np.zeros(n)
    factor = 1.0
    depth = 0
    u = float(t)
    while True:
        index = int(np.searchsorted(nodes, u))
        if index < nodes.size and nodes[index] == u:
            value = linear @ g_nodes[index] + offset
            value.setflags(write=False)
            return GEvaluation(value, 0.0, depth)
        if factor * sup_g <= tol:
            offset.setflags(write=False)
            return GEvaluation(offset, factor * sup_g, depth)
        if depth >= max_depth:
            raise ToleranceUnreachable(
                f"tolerance {tol:g} not reached within {max_depth} digits"
            )
        i = line.interval_of(u)
        part = decomposition[i - 1]
        width = line.ratios[i - 1]
        scaled = width * part.linear_part
        if zipper.signature[i - 1]:
            # orientation-reversing interval: the affine part uses the exit
            # vertex and subtracts the rescaled total integral
            local = g_nodes[i - 1] + part.offset * (u - nodes[i - 1]) - scaled @ lift.h
        else:
            local = g_nodes[i - 1] + part.offset * (u - nodes[i - 1])
        offset = offset + linear @ local
        linear = linear @ scaled
        factor *= width * norms[i - 1]
        u = float(line.inverse(i, u))
        depth += 1


def inverse_design(q1, q2, x1, g1, g2):
    """Recover the two curve heights of the increasing two-map interval
    family from its integral data.

    Given interval widths (q1, q2) with split node x1 = q1, the integral
    value g1 at the split and the total integral g2, returns the heights
    (y1, y2) whose family reproduces exactly these integrals.  Defined only
    for the scalar two-map family with plain orientation.  Raises
    :class:`DegenerateInput` when g1 = 0, widths leave (0, 1), the widths
    do not sum to 1, or the split node disagrees with q1.
    """
    q1, q2, x1 = float(q1), float(q2), float(x1)
    g1 = float(np.asarray(g1, dtype=float).reshape(()))
    g2 = float(np.asarray(g2, dtype=float).reshape(()))
    if not (0.0 < q1 < 1.0 and 0.0 < q2 < 1.0):
        raise DegenerateInput(f"interval widths must lie in (0, 1), got {q1}, {q2}")
    if abs(q1 + q2 - 1.0) > 1e-12:
        raise DegenerateInput(f"interval widths must sum to 1, got {q1 + q2}")
    if abs(q1 - x1) > 1e-12:
        raise DegenerateInput(f"split node {x1} must equal the first width {q1}")
    if g1 == 0.0:
        raise DegenerateInput("split integral g1 must be nonzero")
    y1 = (1.0 / q1 - 1.0 / q2) * g1 + (1.0 / q2 - 1.0) * g2
    y2 = (q1 * g2 / g1) * y1
    return y1, y2
