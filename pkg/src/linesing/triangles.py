"""Perverse sheaves on a line as MacPherson-Vilonen triangle data.

A triangle is a pair of spaces V, W with an invertible internal
monodromy nu on V, a canonical map gamma: V -> W and a variation map
delta: W -> V subject to the single axiom

    delta . gamma = id - nu.

Everything a perverse sheaf on the disk (stratified by the origin)
knows is encoded here: stalk cohomology at the origin is ker/coker of
gamma, the hypercohomology of the punctured disk is ker/coker of
(id - nu), and Verdier duality transposes the triangle.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .errors import (DimensionError, MorphismError, SesValidationError,
                     TriangleAxiomError)
from .fields import same_field
from .linalg import (Matrix, Subspace, image_basis, induced_between_quotients,
                     induced_on_quotient, kernel_basis, restrict_between)


@dataclass
class TriangleReport:
    """Outcome of a triangle validation run."""
    ok: bool
    failures: list = dc_field(default_factory=list)

    def first(self):
        return self.failures[0] if self.failures else None


@dataclass(frozen=True)
class StalkCohomology:
    """Stalk dimensions at the origin: (degree -1, degree 0)."""
    dim_deg_minus1: int
    dim_deg0: int


class MVTriangle:
    """A MacPherson-Vilonen triangle (V, W, nu, gamma, delta)."""

    __slots__ = ("field", "dim_v", "dim_w", "nu", "gamma", "delta")

    def __init__(self, field, nu: Matrix, gamma: Matrix, delta: Matrix,
                 check: bool = True):
        same_field(field, nu.field)
        same_field(field, gamma.field)
        same_field(field, delta.field)
        dim_v, dim_w = gamma.ncols, gamma.nrows
        if nu.nrows != dim_v or nu.ncols != dim_v:
            raise DimensionError("nu must be square of size dim V")
        if delta.nrows != dim_v or delta.ncols != dim_w:
            raise DimensionError("delta must map W to V")
        self.field = field
        self.dim_v = dim_v
        self.dim_w = dim_w
        self.nu = nu
        self.gamma = gamma
        self.delta = delta
        if check:
            report = validate_triangle(self)
            if not report.ok:
                name, _ = report.first()
                raise TriangleAxiomError(
                    f"triangle axiom violated: {name}", report=report)

    def __eq__(self, other):
        return (isinstance(other, MVTriangle) and self.field == other.field
                and self.nu == other.nu and self.gamma == other.gamma
                and self.delta == other.delta)

    def __hash__(self):
        return hash((self.nu, self.gamma, self.delta))

    def __repr__(self):
        return (f"MVTriangle(dimV={self.dim_v}, dimW={self.dim_w}, "
                f"field={self.field!r})")

    @classmethod
    def zero(cls, field) -> "MVTriangle":
        e = Matrix.zeros(field, 0, 0)
        return cls(field, e, e, e)


def validate_triangle(t: MVTriangle) -> TriangleReport:
    """Check the triangle axioms; collect every violated identity.

    Each failure is a pair (identity name, offending data): a residual
    matrix for the composition axiom, a kernel witness vector for
    invertibility, a stray vector for the cosupport inclusion.
    """
    failures = []
    ident = Matrix.identity(t.field, t.dim_v)
    residual = (t.delta @ t.gamma) - (ident - t.nu)
    if not residual.is_zero():
        failures.append(("delta.gamma = id - nu", residual))
    if not t.nu.is_invertible():
        witness = kernel_basis(t.nu)
        failures.append(("nu invertible", witness.basis))
    # implied by the composition axiom, but checked independently so a
    # broken triangle reports every defect it has
    ker_gamma = kernel_basis(t.gamma)
    ker_id_nu = kernel_basis(ident - t.nu)
    if not ker_id_nu.contains(ker_gamma):
        for col in ker_gamma.basis.columns():
            if not ker_id_nu.contains_vector(col):
                failures.append(("ker gamma inside ker(id - nu)",
                                 Matrix.from_columns(t.field, [col],
                                                     t.dim_v)))
                break
    return TriangleReport(ok=not failures, failures=failures)


def stalk_cohomology(t: MVTriangle) -> StalkCohomology:
    """Dimensions of the stalk cohomology at the origin."""
    k = kernel_basis(t.gamma).dim
    c = t.dim_w - t.gamma.rank()
    return StalkCohomology(dim_deg_minus1=k, dim_deg0=c)


def punctured_hypercohomology(t: MVTriangle) -> tuple[int, int]:
    """(dim ker(id - nu), dim coker(id - nu)) for the punctured disk.

    Also re-asserts the cosupport inclusion ker gamma <= ker(id - nu).
    """
    ident = Matrix.identity(t.field, t.dim_v)
    id_nu = ident - t.nu
    ker = kernel_basis(id_nu)
    if not ker.contains(kernel_basis(t.gamma)):
        raise TriangleAxiomError("cosupport inclusion fails")
    return ker.dim, t.dim_v - id_nu.rank()


def dual_triangle(t: MVTriangle) -> MVTriangle:
    """The Verdier dual: transpose everything and swap gamma with delta."""
    return MVTriangle(t.field, t.nu.transpose(), t.delta.transpose(),
                      t.gamma.transpose())


def direct_sum(a: MVTriangle, b: MVTriangle) -> MVTriangle:
    same_field(a.field, b.field)
    return MVTriangle(a.field,
                      _block_diag(a.nu, b.nu),
                      _block_diag(a.gamma, b.gamma),
                      _block_diag(a.delta, b.delta))


def _block_diag(a: Matrix, b: Matrix) -> Matrix:
    f = a.field
    z = f.zero
    rows = []
    for r in a.rows:
        rows.append(list(r) + [z] * b.ncols)
    for r in b.rows:
        rows.append([z] * a.ncols + list(r))
    return Matrix(f, rows, a.ncols + b.ncols)


class MVMorphism:
    """A morphism of triangles: tau on V-parts, eta on W-parts.

    Both squares must commute: gamma' tau = eta gamma and
    delta' eta = tau delta.  (tau nu = nu' tau then follows.)
    """

    __slots__ = ("source", "target", "tau", "eta")

    def __init__(self, source: MVTriangle, target: MVTriangle,
                 tau: Matrix, eta: Matrix, check: bool = True):
        same_field(source.field, target.field)
        if tau.ncols != source.dim_v or tau.nrows != target.dim_v:
            raise DimensionError("tau has the wrong shape")
        if eta.ncols != source.dim_w or eta.nrows != target.dim_w:
            raise DimensionError("eta has the wrong shape")
        self.source = source
        self.target = target
        self.tau = tau
        self.eta = eta
        if check:
            sq1 = (target.gamma @ tau) - (eta @ source.gamma)
            if not sq1.is_zero():
                raise MorphismError("gamma square does not commute")
            sq2 = (target.delta @ eta) - (tau @ source.delta)
            if not sq2.is_zero():
                raise MorphismError("delta square does not commute")
            sq3 = (tau @ source.nu) - (target.nu @ tau)
            if not sq3.is_zero():
                raise MorphismError("tau does not intertwine nu")

    def is_isomorphism(self) -> bool:
        return self.tau.is_invertible() and self.eta.is_invertible()

    @classmethod
    def identity(cls, t: MVTriangle) -> "MVMorphism":
        return cls(t, t, Matrix.identity(t.field, t.dim_v),
                   Matrix.identity(t.field, t.dim_w))

    def compose(self, earlier: "MVMorphism") -> "MVMorphism":
        """self . earlier (earlier is applied first)."""
        if earlier.target is not self.source and earlier.target != self.source:
            raise MorphismError("composition endpoints do not match")
        return MVMorphism(earlier.source, self.target,
                          self.tau @ earlier.tau, self.eta @ earlier.eta)


@dataclass
class IsomorphismResult:
    """Verdict of the isomorphism search between two triangles."""
    isomorphic: bool
    witness: Optional[MVMorphism]
    certificate: str
    search_bounded: bool = False

    def __bool__(self):
        return self.isomorphic


def morphism_space(a: MVTriangle, b: MVTriangle) -> list[tuple[Matrix, Matrix]]:
    """Basis of the space of morphisms a -> b as (tau, eta) pairs.

    The commuting-square conditions are linear in the entries of tau
    and eta, so the morphism space is the kernel of one big matrix.
    """
    same_field(a.field, b.field)
    f = a.field
    v, w = a.dim_v, a.dim_w
    vp, wp = b.dim_v, b.dim_w
    n_tau = vp * v
    n_unknowns = n_tau + wp * w
    rows = []
    # gamma' tau - eta gamma = 0, one equation per (i, j) in w' x v
    for i in range(wp):
        for j in range(v):
            row = [f.zero] * n_unknowns
            for k in range(vp):
                row[k * v + j] = f.add(row[k * v + j], b.gamma.entry(i, k))
            for l in range(w):
                idx = n_tau + i * w + l
                row[idx] = f.sub(row[idx], a.gamma.entry(l, j))
            rows.append(row)
    # delta' eta - tau delta = 0, one equation per (i, j) in v' x w
    for i in range(vp):
        for j in range(w):
            row = [f.zero] * n_unknowns
            for l in range(wp):
                idx = n_tau + l * w + j
                row[idx] = f.add(row[idx], b.delta.entry(i, l))
            for k in range(v):
                row[i * v + k] = f.sub(row[i * v + k], a.delta.entry(k, j))
            rows.append(row)
    system = Matrix(f, rows, n_unknowns)
    basis = []
    for col in system.nullspace().basis.columns():
        tau = Matrix(f, [[col[i * v + j] for j in range(v)]
                         for i in range(vp)], v)
        eta = Matrix(f, [[col[n_tau + i * w + j] for j in range(w)]
                         for i in range(wp)], w)
        basis.append((tau, eta))
    return basis


def is_isomorphic(a: MVTriangle, b: MVTriangle, seed: int = 0,
                  tries: int = 300) -> IsomorphismResult:
    """Search for an isomorphism a -> b.

    Cheap separating invariants run first (dimensions, stalk
    cohomology).  Otherwise the morphism space is computed exactly and
    swept for a pair (tau, eta) of invertible components: every single
    basis element first, then seeded random small-height combinations.
    A negative answer after the sweep is a bounded-search certificate,
    not a proof of non-isomorphism.
    """
    import random as _random

    same_field(a.field, b.field)
    if (a.dim_v, a.dim_w) != (b.dim_v, b.dim_w):
        return IsomorphismResult(False, None, "dimension mismatch")
    if stalk_cohomology(a) != stalk_cohomology(b):
        return IsomorphismResult(False, None, "stalk cohomology mismatch")
    if a.dim_v == 0 and a.dim_w == 0:
        return IsomorphismResult(True, MVMorphism.identity(a),
                                 "zero triangle")
    basis = morphism_space(a, b)
    if not basis:
        return IsomorphismResult(False, None,
                                 "morphism space is zero")

    def check(tau, eta):
        if tau.is_invertible() and eta.is_invertible():
            return MVMorphism(a, b, tau, eta)
        return None

    for tau, eta in basis:
        m = check(tau, eta)
        if m is not None:
            return IsomorphismResult(True, m, "basis element witness")
    f = a.field
    rng = _random.Random(seed)
    for _ in range(tries):
        tau = Matrix.zeros(f, b.dim_v, a.dim_v)
        eta = Matrix.zeros(f, b.dim_w, a.dim_w)
        for bt, be in basis:
            if f.characteristic == 0:
                c = f.coerce(rng.randint(-3, 3))
            else:
                c = f.random(rng)
            tau = tau + bt.scale(c)
            eta = eta + be.scale(c)
        m = check(tau, eta)
        if m is not None:
            return IsomorphismResult(True, m, "random combination witness")
    return IsomorphismResult(
        False, None,
        f"no invertible solution found in a {len(basis)}-dimensional "
        f"morphism space after {tries} samples", search_bounded=True)


def siersma_sum_test(t: MVTriangle, seed: int = 0) -> bool:
    """Is t the sum of a point-supported triangle and a constant local
    system, i.e. gamma = 0, delta = 0 and nu = id?

    The block answer is cross-checked against the isomorphism search
    with the literal direct sum.
    """
    block = (t.gamma.is_zero() and t.delta.is_zero()
             and t.nu.is_identity())
    f = t.field
    point_part = MVTriangle(f, Matrix.zeros(f, 0, 0),
                            Matrix.zeros(f, t.dim_w, 0),
                            Matrix.zeros(f, 0, t.dim_w))
    constant_part = MVTriangle(f, Matrix.identity(f, t.dim_v),
                               Matrix.zeros(f, 0, t.dim_v),
                               Matrix.zeros(f, t.dim_v, 0))
    displayed = direct_sum(point_part, constant_part)
    search = is_isomorphic(t, displayed, seed=seed)
    if block and not search.isomorphic:
        raise TriangleAxiomError(
            "internal inconsistency: block form matches but search failed")
    if not block and search.isomorphic:
        raise TriangleAxiomError(
            "internal inconsistency: search found an impossible witness")
    return block


# -- short exact sequences ----------------------------------------------

class MVSes:
    """A short exact sequence of triangles 0 -> left -> middle -> right -> 0.

    Exactness is checked separately on V-parts and on W-parts:
    injectivity on the left, image equals kernel in the middle,
    surjectivity on the right, and zero composite.
    """

    __slots__ = ("left", "middle", "right", "inj", "surj")

    def __init__(self, inj: MVMorphism, surj: MVMorphism,
                 check: bool = True):
        if inj.target is not surj.source and inj.target != surj.source:
            raise SesValidationError("morphisms do not share the middle")
        self.left = inj.source
        self.middle = inj.target
        self.right = surj.target
        self.inj = inj
        self.surj = surj
        if check:
            self.validate()

    def validate(self):
        for name, first, second in (("V", self.inj.tau, self.surj.tau),
                                    ("W", self.inj.eta, self.surj.eta)):
            if not (second @ first).is_zero():
                raise SesValidationError(
                    f"{name}-part composite is not zero")
            if first.rank() != first.ncols:
                raise SesValidationError(
                    f"{name}-part injection is not injective")
            if second.rank() != second.nrows:
                raise SesValidationError(
                    f"{name}-part surjection is not surjective")
            if image_basis(first) != kernel_basis(second):
                raise SesValidationError(
                    f"{name}-part exactness fails in the middle")


# -- kernels and cokernels of morphisms ----------------------------------

def morphism_kernel(m: MVMorphism) -> tuple[MVTriangle, MVMorphism]:
    """Componentwise kernel with induced maps, revalidated."""
    kv = kernel_basis(m.tau)
    kw = kernel_basis(m.eta)
    src = m.source
    nu_k = restrict_between(src.nu, kv, kv)
    gamma_k = restrict_between(src.gamma, kv, kw)
    delta_k = restrict_between(src.delta, kw, kv)
    ker_tri = MVTriangle(src.field, nu_k, gamma_k, delta_k)
    incl = MVMorphism(ker_tri, src, kv.basis, kw.basis)
    return ker_tri, incl


def morphism_cokernel(m: MVMorphism) -> tuple[MVTriangle, MVMorphism]:
    """Componentwise cokernel with induced maps, revalidated."""
    iv = image_basis(m.tau)
    iw = image_basis(m.eta)
    tgt = m.target
    f = tgt.field
    full_v = Subspace.full(f, tgt.dim_v)
    full_w = Subspace.full(f, tgt.dim_w)
    nu_c = induced_on_quotient(tgt.nu, iv, full_v)
    gamma_c = induced_between_quotients(tgt.gamma, iv, iw)
    delta_c = induced_between_quotients(tgt.delta, iw, iv)
    coker_tri = MVTriangle(f, nu_c, gamma_c, delta_c)
    proj = MVMorphism(tgt, coker_tri,
                      _quotient_projection(iv), _quotient_projection(iw))
    return coker_tri, proj


def _quotient_projection(sub: Subspace) -> Matrix:
    """Projection of the ambient space onto the completed-basis quotient."""
    from .linalg import _complete_basis
    f = sub.field
    n = sub.ambient_dim
    comp = _complete_basis(sub, Subspace.full(f, n))
    frame = Matrix.from_columns(f, list(sub.basis.columns()) + comp, n)
    inv = frame.inverse()
    return Matrix(f, [inv.rows[i] for i in range(sub.dim, n)], n)
