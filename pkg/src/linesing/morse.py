"""The Morse short exact sequence of triangles and the invariant-
subspace trace obstruction.

A Morse sequence splices the vanishing-cycle triangle of a line
singularity (dimensions lambda1, lambda0) between a point-supported
triangle of rank mu0 and a middle triangle of rank zeta = mu0 + lambda0,
with the V-row of the sequence being 0 -> id -> id -> 0.  The Milnor
monodromy acts on the whole sequence; A'Campo's Lefschetz-number
computation pins the traces of its action on the mu0 and lambda1 pieces
to (-1)^n, and comparing traces across the one-dimensional quotient
im beta / im theta is what powers the obstruction verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .errors import (DimensionError, InputError, InvariantViolationError,
                     MonodromyError, SesValidationError, TraceConstraintError)
from .fields import same_field
from .linalg import (Matrix, Subspace, image_basis, induced_on_quotient,
                     kernel_basis, restrict_to_invariant)
from .triangles import MVMorphism, MVSes, MVTriangle


class MorseSes:
    """Validated data of a Morse short exact sequence.

    Matrix shapes: nu is lambda1 x lambda1, theta is zeta x lambda1,
    omega is lambda1 x zeta, beta is zeta x mu0, pi is lambda0 x zeta,
    gamma is lambda0 x lambda1, delta is lambda1 x lambda0.
    """

    __slots__ = ("field", "mu0", "lambda1", "lambda0", "zeta", "nu",
                 "theta", "omega", "beta", "pi", "gamma", "delta")

    def __init__(self, field, mu0, lambda1, lambda0, zeta, nu, theta,
                 omega, beta, pi, gamma, delta, check: bool = True):
        if zeta != mu0 + lambda0:
            raise SesValidationError(
                f"zeta = {zeta} must equal mu0 + lambda0 = {mu0 + lambda0}")
        shapes = {
            "nu": (nu, lambda1, lambda1), "theta": (theta, zeta, lambda1),
            "omega": (omega, lambda1, zeta), "beta": (beta, zeta, mu0),
            "pi": (pi, lambda0, zeta), "gamma": (gamma, lambda0, lambda1),
            "delta": (delta, lambda1, lambda0),
        }
        for name, (m, r, c) in shapes.items():
            same_field(field, m.field)
            if (m.nrows, m.ncols) != (r, c):
                raise DimensionError(
                    f"{name} must be {r}x{c}, got {m.nrows}x{m.ncols}")
        self.field = field
        self.mu0, self.lambda1, self.lambda0, self.zeta = (
            mu0, lambda1, lambda0, zeta)
        self.nu, self.theta, self.omega = nu, theta, omega
        self.beta, self.pi, self.gamma, self.delta = beta, pi, gamma, delta
        if check:
            self.validate()

    # the three triangles of the sequence ----------------------------

    def left_triangle(self) -> MVTriangle:
        f = self.field
        return MVTriangle(f, Matrix.zeros(f, 0, 0),
                          Matrix.zeros(f, self.mu0, 0),
                          Matrix.zeros(f, 0, self.mu0))

    def middle_triangle(self) -> MVTriangle:
        return MVTriangle(self.field, self.nu, self.theta, self.omega)

    def right_triangle(self) -> MVTriangle:
        return MVTriangle(self.field, self.nu, self.gamma, self.delta)

    def to_mv_ses(self) -> MVSes:
        """The literal short exact sequence, fully revalidated."""
        f = self.field
        left, middle, right = (self.left_triangle(), self.middle_triangle(),
                               self.right_triangle())
        inj = MVMorphism(left, middle, Matrix.zeros(f, self.lambda1, 0),
                         self.beta)
        surj = MVMorphism(middle, right,
                          Matrix.identity(f, self.lambda1), self.pi)
        return MVSes(inj, surj)

    def validate(self):
        if self.theta.rank() != self.lambda1:
            raise SesValidationError("theta is not injective")
        if not (self.gamma - self.pi @ self.theta).is_zero():
            raise SesValidationError("gamma differs from pi . theta")
        if not (self.omega - self.delta @ self.pi).is_zero():
            raise SesValidationError("omega differs from delta . pi")
        # triangle axioms, commuting squares, W-row and V-row exactness
        self.to_mv_ses()

    def im_theta(self) -> Subspace:
        return image_basis(self.theta)

    def im_beta(self) -> Subspace:
        return image_basis(self.beta)

    def __repr__(self):
        return (f"MorseSes(mu0={self.mu0}, lambda1={self.lambda1}, "
                f"lambda0={self.lambda0}, zeta={self.zeta}, "
                f"field={self.field!r})")


def build_morse_ses(field, mu0, lambda1, lambda0, zeta, nu, theta, omega,
                    beta, pi, gamma, delta) -> MorseSes:
    return MorseSes(field, mu0, lambda1, lambda0, zeta, nu, theta, omega,
                    beta, pi, gamma, delta)


class MonodromyAction:
    """Milnor monodromy data on a Morse sequence: one automorphism per
    W-vertex plus the shared V-automorphism, for f on C^(n+1)."""

    __slots__ = ("field", "n", "t_v", "t_w1", "t_w2", "t_w3")

    def __init__(self, field, n: int, t_v: Matrix, t_w1: Matrix,
                 t_w2: Matrix, t_w3: Matrix):
        if n < 2:
            raise InputError("monodromy data needs ambient dimension n >= 2")
        for name, m in (("t_v", t_v), ("t_w1", t_w1), ("t_w2", t_w2),
                        ("t_w3", t_w3)):
            same_field(field, m.field)
            if m.nrows != m.ncols:
                raise DimensionError(f"{name} must be square")
        self.field = field
        self.n = n
        self.t_v, self.t_w1, self.t_w2, self.t_w3 = t_v, t_w1, t_w2, t_w3

    @classmethod
    def identity(cls, ses: MorseSes, n: int) -> "MonodromyAction":
        f = ses.field
        return cls(f, n, Matrix.identity(f, ses.lambda1),
                   Matrix.identity(f, ses.mu0),
                   Matrix.identity(f, ses.zeta),
                   Matrix.identity(f, ses.lambda0))


@dataclass
class MonodromyReport:
    """Validation outcome; failures are (identity name, residual) pairs."""
    ok: bool
    failures: list = dc_field(default_factory=list)

    def first(self):
        return self.failures[0] if self.failures else None

    def commutation_failures(self):
        return [f for f in self.failures if "invertible" not in f[0]]

    def invertibility_failures(self):
        return [f for f in self.failures if "invertible" in f[0]]


def validate_monodromy(ses: MorseSes, act: MonodromyAction) -> MonodromyReport:
    """Check that the action is an automorphism of the whole sequence."""
    if (act.t_v.nrows != ses.lambda1 or act.t_w1.nrows != ses.mu0
            or act.t_w2.nrows != ses.zeta or act.t_w3.nrows != ses.lambda0):
        raise DimensionError("monodromy blocks do not fit the sequence")
    failures = []
    for name, m in (("t_v", act.t_v), ("t_w1", act.t_w1),
                    ("t_w2", act.t_w2), ("t_w3", act.t_w3)):
        if not m.is_invertible():
            failures.append((f"{name} invertible",
                             kernel_basis(m).basis))
    identities = [
        ("t_v . nu = nu . t_v", act.t_v @ ses.nu - ses.nu @ act.t_v),
        ("t_w2 . theta = theta . t_v",
         act.t_w2 @ ses.theta - ses.theta @ act.t_v),
        ("omega . t_w2 = t_v . omega",
         ses.omega @ act.t_w2 - act.t_v @ ses.omega),
        ("t_w2 . beta = beta . t_w1",
         act.t_w2 @ ses.beta - ses.beta @ act.t_w1),
        ("pi . t_w2 = t_w3 . pi", ses.pi @ act.t_w2 - act.t_w3 @ ses.pi),
    ]
    for name, residual in identities:
        if not residual.is_zero():
            failures.append((name, residual))
    return MonodromyReport(ok=not failures, failures=failures)


def acampo_trace(n: int, field):
    """The forced Lefschetz trace (-1)^n, as an element of the field."""
    if n < 2:
        raise InputError(
            "the trace constraint applies to line singularities in "
            "C^(n+1) with n >= 2")
    return field.one if n % 2 == 0 else field.neg(field.one)


def check_trace_constraints(act: MonodromyAction) -> bool:
    """True iff tr(T_W1) = tr(T_V) = (-1)^n in the working field."""
    expected = acampo_trace(act.n, act.field)
    return (act.t_w1.trace() == expected and act.t_v.trace() == expected)


def equality_criterion(ses: MorseSes) -> bool:
    """Does the stalk bound dim ker gamma <= lambda1 hold with equality?

    The three equivalent statements (dim ker gamma = lambda1, gamma = 0,
    im theta <= im beta) are all evaluated; any disagreement would mean
    an invalid sequence slipped through and raises.
    """
    by_kernel = kernel_basis(ses.gamma).dim == ses.lambda1
    by_zero = ses.gamma.is_zero()
    by_images = ses.im_beta().contains(ses.im_theta())
    if not (by_kernel == by_zero == by_images):
        raise SesValidationError(
            "internal inconsistency in the equality criterion: "
            f"kernel={by_kernel}, zero={by_zero}, images={by_images}")
    return by_kernel


def euler_relation(ses: MorseSes) -> bool:
    """dim coker gamma - dim ker gamma = lambda0 - lambda1, always."""
    ker = kernel_basis(ses.gamma).dim
    coker = ses.lambda0 - ses.gamma.rank()
    if coker - ker != ses.lambda0 - ses.lambda1:
        raise SesValidationError("rank-nullity violated; corrupt data")
    return True


@dataclass
class ContradictionWitness:
    """Certificate that supplied monodromy data is internally impossible:
    the induced map on the one-dimensional quotient im beta / im theta
    has trace zero, but an automorphism would induce an invertible map
    there."""
    im_theta: Subspace
    im_beta: Subspace
    trace_theta: object
    trace_beta: object
    quotient_trace: object
    quotient_map: Matrix


@dataclass
class ObstructionVerdict:
    """Outcome of the trace obstruction for one (sequence, monodromy)
    pair.  Bounds are on reduced Milnor-fibre cohomology at the origin,
    strict when the hypothesis mu0 = 1 + lambda1 holds."""
    hypothesis_holds: bool
    bound_deg_nminus1: int
    bound_deg_n: int
    strict: bool
    contradiction_witness: Optional[ContradictionWitness] = None
    warnings: list = dc_field(default_factory=list)


def trace_obstruction(ses: MorseSes, act: MonodromyAction) -> ObstructionVerdict:
    """Run the invariant-subspace obstruction on explicit data.

    Gate order: the action must commute with every map of the sequence,
    the A'Campo traces must hold, and im theta / im beta must be
    T_W2-invariant; violations raise.  If mu0 = 1 + lambda1 and
    im theta <= im beta, the induced map on the one-dimensional
    quotient is computed and its forced zero trace is returned as a
    contradiction witness: no automorphism is compatible with such a
    configuration, so the data cannot come from an actual singularity.
    Away from that branch the monodromy must be genuinely invertible
    and the verdict carries the strict cohomology bounds.
    """
    same_field(ses.field, act.field)
    report = validate_monodromy(ses, act)
    commutation = report.commutation_failures()
    if commutation:
        name, _ = commutation[0]
        raise MonodromyError(f"monodromy does not commute: {name}")
    if not check_trace_constraints(act):
        expected = acampo_trace(act.n, act.field)
        raise TraceConstraintError(
            "A'Campo trace constraint violated: need tr(T_W1) = tr(T_V) "
            f"= {act.field.format(expected)}, got tr(T_W1) = "
            f"{act.field.format(act.t_w1.trace())}, tr(T_V) = "
            f"{act.field.format(act.t_v.trace())}")
    im_theta = ses.im_theta()
    im_beta = ses.im_beta()
    try:
        t_on_theta = restrict_to_invariant(act.t_w2, im_theta)
        t_on_beta = restrict_to_invariant(act.t_w2, im_beta)
    except InvariantViolationError as exc:
        raise InvariantViolationError(
            "T_W2 does not preserve im theta / im beta: " + str(exc),
            witness=exc.witness, image=exc.image) from exc

    warnings = []
    if ses.field.characteristic:
        warnings.append(
            f"traces compared in GF({ses.field.characteristic}); the "
            "contradiction only needs 0 != (-1)^n, which holds in every "
            "field")

    hypothesis = ses.mu0 == 1 + ses.lambda1
    if not hypothesis:
        return ObstructionVerdict(
            hypothesis_holds=False, bound_deg_nminus1=ses.lambda1,
            bound_deg_n=ses.lambda0, strict=False, warnings=warnings)

    if im_beta.contains(im_theta):
        expected = acampo_trace(act.n, act.field)
        tr_theta = t_on_theta.trace()
        tr_beta = t_on_beta.trace()
        if tr_theta != expected or tr_beta != expected:
            raise TraceConstraintError(
                "restricted traces break the A'Campo constraint: "
                f"tr on im theta = {act.field.format(tr_theta)}, "
                f"tr on im beta = {act.field.format(tr_beta)}")
        quotient = induced_on_quotient(act.t_w2, im_theta, im_beta)
        q_trace = quotient.trace()
        if q_trace != act.field.sub(tr_beta, tr_theta):
            raise SesValidationError("trace additivity violated; "
                                     "corrupt data")
        if not act.field.is_zero(q_trace):
            raise SesValidationError(
                "unreachable: equal restricted traces with a nonzero "
                "quotient trace")
        witness = ContradictionWitness(
            im_theta=im_theta, im_beta=im_beta, trace_theta=tr_theta,
            trace_beta=tr_beta, quotient_trace=q_trace,
            quotient_map=quotient)
        return ObstructionVerdict(
            hypothesis_holds=True, bound_deg_nminus1=ses.lambda1 - 1,
            bound_deg_n=ses.lambda0 - 1, strict=True,
            contradiction_witness=witness, warnings=warnings)

    # genuine instance: the action must be an actual automorphism
    inv_failures = report.invertibility_failures()
    if inv_failures:
        name, _ = inv_failures[0]
        raise MonodromyError(f"monodromy block is singular: {name}")
    ker_dim = kernel_basis(ses.gamma).dim
    coker_dim = ses.lambda0 - ses.gamma.rank()
    if ker_dim > ses.lambda1 - 1 or coker_dim > ses.lambda0 - 1:
        raise SesValidationError(
            "unreachable: strict bounds fail although gamma != 0")
    return ObstructionVerdict(
        hypothesis_holds=True, bound_deg_nminus1=ses.lambda1 - 1,
        bound_deg_n=ses.lambda0 - 1, strict=True, warnings=warnings)
