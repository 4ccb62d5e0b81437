"""
Subspace identification of (A, B, x(0)) from input/output records.

The plain path projects the inputs out of the output Hankel matrix, takes the
dominant left singular subspace as the extended observability span, fixes the
state coordinates from the known output map C and reads A from the shift
invariance of that span. The instrumental-variable path replaces the
projected outputs by their correlation with past data.
"""
import math

import attr
import numpy as np
import scipy.linalg
from oslo_log import log as logging

from networking_topoid.common import config
from networking_topoid.common import constants
from networking_topoid.common import exceptions
from networking_topoid.common import utils
from networking_topoid.identification import hankel

LOG = logging.getLogger(__name__)

IV_CHUNK = 2048


@attr.s(frozen=True)
class ProjectionReport(object):
    rank = attr.ib()
    required = attr.ib()
    condition_ratio = attr.ib()
    annihilation = attr.ib()


@attr.s(frozen=True, eq=False)
class SubspaceEstimate(object):
    """Observability basis W, its singular values and the derived system."""

    W = attr.ib(converter=utils.frozen)
    singular_values = attr.ib(converter=utils.frozen)
    T_hat = attr.ib(default=None)
    A_hat = attr.ib(default=None)
    B_hat = attr.ib(default=None)
    x0_hat = attr.ib(default=None)
    non_unique = attr.ib(default=False)
    diagnostics = attr.ib(factory=dict)

    @W.validator
    def _check_orthonormal(self, attribute, value):
        n = value.shape[1]
        gap = np.linalg.norm(value.T.dot(value) - np.eye(n))
        if gap > constants.ORTHOGONALITY_TOL * max(1, n):
            raise exceptions.InvalidInput(name="W",
                                          reason="columns not orthonormal")

    @singular_values.validator
    def _check_sorted(self, attribute, value):
        if np.any(np.diff(value) > 0):
            raise exceptions.InvalidInput(name="singular values",
                                          reason="not non-increasing")

    @property
    def n_states(self):
        return self.W.shape[1]

    def to_dict(self):
        return {
            "W": utils.array_document(self.W),
            "singular_values": [float(s) for s in self.singular_values],
            "T_hat": utils.array_document(self.T_hat),
            "A_hat": utils.array_document(self.A_hat),
            "B_hat": utils.array_document(self.B_hat),
            "x0_hat": utils.array_document(self.x0_hat),
            "non_unique": bool(self.non_unique),
            "diagnostics": self.diagnostics,
        }

    @classmethod
    def from_dict(cls, document):
        return cls(W=utils.array_from_document(document["W"]),
                   singular_values=document["singular_values"],
                   T_hat=utils.array_from_document(document.get("T_hat")),
                   A_hat=utils.array_from_document(document.get("A_hat")),
                   B_hat=utils.array_from_document(document.get("B_hat")),
                   x0_hat=utils.array_from_document(document.get("x0_hat")),
                   non_unique=document.get("non_unique", False),
                   diagnostics=document.get("diagnostics", {}))


def _excitation(singular_values, floor):
    top = singular_values[0] if singular_values.size else 0.0
    if top <= 0:
        return 0, 0.0
    rank = int(np.sum(singular_values > floor * top))
    return rank, float(singular_values[-1] / top)


def project_out_inputs(h, floor=None):
    """Y Pi with Pi = I - U^T (U U^T)^-1 U applied through a QR of U^T.

    Returns the projected outputs and a ProjectionReport.
    """
    floor = config.option("IDENTIFICATION", "excitation_floor", floor)
    rows = h.U.shape[0]
    if rows > h.T:
        raise exceptions.InsufficientExcitation(rank=h.T, required=rows)
    rank, ratio = _excitation(scipy.linalg.svdvals(h.U), floor)
    if rank < rows:
        raise exceptions.InsufficientExcitation(rank=rank, required=rows)
    q, _ = scipy.linalg.qr(h.U.T, mode="economic")
    projected = h.Y - h.Y.dot(q).dot(q.T)
    residual = h.U - h.U.dot(q).dot(q.T)
    annihilation = np.linalg.norm(residual) / np.linalg.norm(h.U)
    LOG.debug("Projected out inputs of rank {}, annihilation {:.3g}"
              .format(rank, annihilation))
    return projected, ProjectionReport(rank=rank, required=rows,
                                       condition_ratio=ratio,
                                       annihilation=float(annihilation))


def _dominant_subspace(matrix, n_states, floor, name):
    if n_states > min(matrix.shape):
        raise exceptions.InsufficientData(
            reason="{} states exceed the {} data dimensions".format(
                n_states, matrix.shape))
    left, values, _ = scipy.linalg.svd(matrix, full_matrices=False)
    top = values[0] if values.size else 0.0
    if top <= 0 or values[n_states - 1] <= floor * top:
        ratio = values[n_states - 1] / top if top > 0 else 0.0
        raise exceptions.RankDeficient(
            name=name,
            reason="insufficient excitation or wrong state dimension, "
                   "sigma_N / sigma_1 = {:.3g}".format(ratio))
    following = values[n_states] if values.size > n_states else 0.0
    diagnostics = {
        "rank_gap": (float(values[n_states - 1] / following)
                     if following > 0 else float("inf")),
        "trailing_ratio": float(following / top),
        "leading_singular_values": [float(v) for v in
                                    values[:2 * n_states + 1]],
    }
    return left[:, :n_states], values[:n_states], diagnostics


def estimate_observability_span(projected, n_states, floor=None):
    """Top-N left singular subspace of the projected outputs."""
    floor = config.option("IDENTIFICATION", "rank_floor", floor)
    w, values, diagnostics = _dominant_subspace(projected, n_states, floor,
                                                "projected outputs")
    diagnostics["method"] = constants.METHOD_PLAIN
    return SubspaceEstimate(W=w, singular_values=values,
                            diagnostics=diagnostics)


def estimate_T(W, C):
    """Similarity fixing state coordinates: (J W)^+ C.

    When C has rank below N the solution of (J W) T = C is not unique; the
    representative (J W)^+ C + (I - (J W)^+ J W) is returned, which keeps the
    realised output map equal to C and is invertible for generic data.

    Returns (T_hat, non_unique).
    """
    C = np.atleast_2d(np.asarray(C, dtype=float))
    n = W.shape[1]
    jw = W[:C.shape[0]]
    pseudo = np.linalg.pinv(jw)
    t_hat = pseudo.dot(C) + (np.eye(n) - pseudo.dot(jw))
    non_unique = bool(np.linalg.matrix_rank(C) < n)
    if non_unique:
        LOG.warning("Output map has rank {} < {}: the state coordinates are "
                    "identified up to a similarity".format(
                        np.linalg.matrix_rank(C), n))
    return t_hat, non_unique


def estimate_A(W, T_hat, n_outputs):
    """Least-squares solution of J_u W T A = J_l W T."""
    gamma = np.asarray(W).dot(T_hat)
    upper = gamma[:-n_outputs]
    lower = gamma[n_outputs:]
    values = scipy.linalg.svdvals(upper)
    if (upper.shape[0] < upper.shape[1] or values[0] <= 0 or
            values[-1] <= 1e-12 * values[0]):
        raise exceptions.RankDeficient(
            name="shift invariance",
            reason="J_u W T is not full column-rank; increase alpha or T")
    a_hat, _, _, _ = scipy.linalg.lstsq(upper, lower)
    return a_hat


def _regressor_blocks(traj, a_hat, C, D, chunk):
    """Yield (rows of Psi, y - D u) over consecutive sample chunks."""
    n = a_hat.shape[0]
    p = traj.n_inputs
    ca = np.array(C, dtype=float)
    memory = np.zeros((n, n * p))
    eye = np.eye(n)
    for start in range(0, traj.q, chunk):
        stop = min(traj.q, start + chunk)
        rows = []
        for k in range(start, stop):
            rows.append(np.hstack([ca, C.dot(memory)]))
            memory = a_hat.dot(memory) + np.kron(traj.inputs[k][None, :],
                                                 eye)
            ca = ca.dot(a_hat)
        rhs = traj.outputs[start:stop] - traj.inputs[start:stop].dot(D.T)
        yield np.vstack(rows), rhs.ravel()


def estimate_B_x0(traj, A_hat, C, D=None):
    """Joint least squares for x(0) and vec(B) with A fixed.

    y(k) - D u(k) = C A^k x(0) + sum_j (u(j)^T kron C A^(k-1-j)) vec(B)

    The stacked system is reduced chunk by chunk with QR so the full
    regressor is never held in memory.

    Returns (B_hat, x0_hat, residual) with residual the mean squared output
    error per sample.
    """
    A_hat = np.asarray(A_hat, dtype=float)
    C = np.atleast_2d(np.asarray(C, dtype=float))
    n = A_hat.shape[0]
    p = traj.n_inputs
    D = np.zeros((C.shape[0], p)) if D is None else np.asarray(D, float)
    unknowns = n + n * p
    if traj.q * C.shape[0] < unknowns:
        raise exceptions.InsufficientData(
            reason="{} unknowns need at least {} samples, got {}".format(
                unknowns, int(math.ceil(unknowns / float(C.shape[0]))),
                traj.q))
    chunk = max(1, int(math.ceil(2.0 * unknowns / C.shape[0])))
    r = None
    z = None
    energy = 0.0
    for rows, rhs in _regressor_blocks(traj, A_hat, C, D, chunk):
        energy += float(rhs.dot(rhs))
        if r is not None:
            rows = np.vstack([r, rows])
            rhs = np.concatenate([z, rhs])
        q, r = np.linalg.qr(rows)
        z = q.T.dot(rhs)
    diagonal = np.abs(np.diag(r))
    if r.shape[0] < unknowns or diagonal.min() <= 1e-12 * diagonal.max():
        raise exceptions.RankDeficient(
            name="input regressor",
            reason="inputs do not excite x(0) and B jointly")
    theta = scipy.linalg.solve_triangular(r, z)
    residual = max(0.0, energy - float(z.dot(z))) / traj.q
    x0_hat = theta[:n]
    b_hat = theta[n:].reshape((n, p), order="F")
    return b_hat, x0_hat, residual


def iv_subspace(traj, alpha, n_states, beta=None, floor=None,
                excitation_floor=None, chunk=IV_CHUNK):
    """Instrumental-variable observability span.

    G1 = Y2 Pi(U2) Z1^T / T with Z1 = [U1; Y1], past depth beta and future
    depth gamma = alpha - beta. Products are accumulated over column chunks
    in Gram form so the Hankel matrices are never materialised.
    """
    floor = config.option("IDENTIFICATION", "rank_floor", floor)
    excitation_floor = config.option("IDENTIFICATION", "excitation_floor",
                                     excitation_floor)
    beta = alpha // 2 if beta is None else beta
    gamma = alpha - beta
    if beta < 1:
        raise exceptions.InvalidConfig(field="beta", reason="must be >= 1")
    if gamma <= n_states:
        raise exceptions.DepthTooSmall(alpha=gamma, n_states=n_states)
    hankel.check_depth(alpha, n_states, traj.q)
    columns = traj.q - alpha + 1
    P = traj.n_inputs
    if gamma * P > columns:
        raise exceptions.InsufficientExcitation(rank=columns,
                                                required=gamma * P)

    s_yz = s_yu = s_uu = s_uz = 0.0
    for start in range(0, columns, chunk):
        blocks = hankel.HankelBlocks(
            Y=hankel.block_hankel(traj.outputs, alpha, start, start + chunk),
            U=hankel.block_hankel(traj.inputs, alpha, start, start + chunk),
            alpha=alpha, n_states=n_states)
        y1, u1, y2, u2 = blocks.split(beta)
        z1 = np.vstack([u1, y1])
        s_yz = s_yz + y2.dot(z1.T)
        s_yu = s_yu + y2.dot(u2.T)
        s_uu = s_uu + u2.dot(u2.T)
        s_uz = s_uz + u2.dot(z1.T)

    eigen = np.clip(np.linalg.eigvalsh(s_uu)[::-1], 0.0, None)
    rank, _ = _excitation(np.sqrt(eigen), excitation_floor)
    if rank < gamma * P:
        raise exceptions.InsufficientExcitation(rank=rank,
                                                required=gamma * P)
    factor = scipy.linalg.cho_factor(s_uu)
    g1 = (s_yz - s_yu.dot(scipy.linalg.cho_solve(factor, s_uz))) / columns
    w, values, diagnostics = _dominant_subspace(g1, n_states, floor,
                                                "instrumented outputs")
    diagnostics.update({"method": constants.METHOD_IV, "beta": beta,
                        "gamma": gamma, "columns": columns})
    LOG.debug("IV subspace with past depth {} and future depth {}".format(
        beta, gamma))
    return SubspaceEstimate(W=w, singular_values=values,
                            diagnostics=diagnostics)


def identify(traj, alpha, n_states, C=None, D=None,
             method=constants.METHOD_PLAIN, beta=None, estimate_input=True):
    """Full pipeline: observability span, T, A and optionally B, x(0)."""
    C = np.eye(n_states) if C is None else np.atleast_2d(C)
    if C.shape != (traj.n_outputs, n_states):
        raise exceptions.ShapeMismatch(name="C",
                                       expected=(traj.n_outputs, n_states),
                                       actual=C.shape)
    if method == constants.METHOD_PLAIN:
        blocks = hankel.build_hankel(traj, alpha, n_states)
        projected, report = project_out_inputs(blocks)
        estimate = estimate_observability_span(projected, n_states)
        estimate.diagnostics["excitation_ratio"] = report.condition_ratio
    elif method == constants.METHOD_IV:
        estimate = iv_subspace(traj, alpha, n_states, beta=beta)
    else:
        raise exceptions.InvalidConfig(field="method",
                                       reason="unknown method '{}'".format(
                                           method))
    t_hat, non_unique = estimate_T(estimate.W, C)
    a_hat = estimate_A(estimate.W, t_hat, C.shape[0])
    b_hat = x0_hat = None
    diagnostics = dict(estimate.diagnostics)
    if estimate_input:
        b_hat, x0_hat, residual = estimate_B_x0(traj, a_hat, C, D)
        diagnostics["input_residual"] = residual
    LOG.info("Identified a {}-state system with the {} method".format(
        n_states, method))
    return attr.evolve(estimate, T_hat=t_hat, A_hat=a_hat, B_hat=b_hat,
                       x0_hat=x0_hat, non_unique=non_unique,
                       diagnostics=diagnostics)


def principal_angles(w1, w2):
    """Principal angles in radians between two column spans, descending."""
    return scipy.linalg.subspace_angles(np.asarray(w1), np.asarray(w2))


def automatic_order(singular_values):
    """State dimension at the largest singular-value gap (experimental)."""
    values = np.asarray(singular_values, dtype=float)
    values = values[values > 0]
    if values.size < 2:
        return int(values.size)
    LOG.warning("Automatic order selection is experimental; pass the node "
                "count when it is known")
    return int(np.argmax(values[:-1] / values[1:]) + 1)
