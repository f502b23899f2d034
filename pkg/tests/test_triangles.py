import random
from fractions import Fraction

import pytest

from linesing.errors import MorphismError, SesValidationError, TriangleAxiomError
from linesing.fields import QQ, PrimeField
from linesing.linalg import Matrix, kernel_basis
from linesing.randgen import random_triangle
from linesing.triangles import (MVMorphism, MVSes, MVTriangle, direct_sum,
                                dual_triangle, is_isomorphic,
                                morphism_cokernel, morphism_kernel,
                                punctured_hypercohomology, siersma_sum_test,
                                stalk_cohomology, validate_triangle)

GF101 = PrimeField(101)


def bouquet_triangle(field=QQ):
    """dimV=1, dimW=5, nu=id, gamma includes e1, delta reads e2.

    This is the vanishing-cycle triangle of the cusp degeneration used
    throughout the test suite; its Milnor fibre is a bouquet of four
    2-spheres.
    """
    nu = Matrix.identity(field, 1)
    gamma = Matrix(field, [[1], [0], [0], [0], [0]])
    delta = Matrix(field, [[0, 1, 0, 0, 0]])
    return MVTriangle(field, nu, gamma, delta)


# -- validation ----------------------------------------------------------

def test_validate_identity_monodromy_zero_maps():
    t = MVTriangle(QQ, Matrix(QQ, [[1]]), Matrix(QQ, [[0]]),
                   Matrix(QQ, [[0]]))
    assert validate_triangle(t).ok


def test_validate_rejects_non_invertible_nu():
    # delta.gamma = 1 forces nu = 0, which is not invertible
    with pytest.raises(TriangleAxiomError):
        MVTriangle(QQ, Matrix(QQ, [[0]]), Matrix(QQ, [[1]]),
                   Matrix(QQ, [[1]]))
    t = MVTriangle(QQ, Matrix(QQ, [[0]]), Matrix(QQ, [[1]]),
                   Matrix(QQ, [[1]]), check=False)
    report = validate_triangle(t)
    assert not report.ok
    assert report.first()[0] == "nu invertible"


def test_validate_fractional_monodromy():
    t = MVTriangle(QQ, Matrix(QQ, [[Fraction(1, 2)]]), Matrix(QQ, [[1]]),
                   Matrix(QQ, [[Fraction(1, 2)]]))
    assert validate_triangle(t).ok


def test_validate_reports_residual():
    t = MVTriangle(QQ, Matrix(QQ, [[1]]), Matrix(QQ, [[1]]),
                   Matrix(QQ, [[1]]), check=False)
    report = validate_triangle(t)
    assert not report.ok
    name, residual = report.first()
    assert name == "delta.gamma = id - nu"
    assert residual == Matrix(QQ, [[1]])


# -- stalk cohomology ------------------------------------------------------

def test_stalk_zero_map():
    t = MVTriangle(QQ, Matrix.identity(QQ, 1), Matrix.zeros(QQ, 5, 1),
                   Matrix.zeros(QQ, 1, 5))
    s = stalk_cohomology(t)
    assert (s.dim_deg_minus1, s.dim_deg0) == (1, 5)


def test_stalk_bouquet():
    s = stalk_cohomology(bouquet_triangle())
    assert (s.dim_deg_minus1, s.dim_deg0) == (0, 4)


def test_stalk_invertible_gamma():
    # delta.gamma = 2 = 1 - nu, so nu = -1
    t = MVTriangle(QQ, Matrix(QQ, [[-1]]), Matrix(QQ, [[2]]),
                   Matrix(QQ, [[1]]))
    s = stalk_cohomology(t)
    assert (s.dim_deg_minus1, s.dim_deg0) == (0, 0)


# -- punctured disk ---------------------------------------------------------

def test_punctured_identity_monodromy():
    t = MVTriangle(QQ, Matrix.identity(QQ, 3), Matrix.zeros(QQ, 2, 3),
                   Matrix.zeros(QQ, 3, 2))
    assert punctured_hypercohomology(t) == (3, 3)


def test_punctured_rotation():
    nu = Matrix(QQ, [[0, 1], [-1, 0]])
    gamma = Matrix.identity(QQ, 2)
    delta = Matrix.identity(QQ, 2) - nu
    t = MVTriangle(QQ, nu, gamma, delta)
    assert punctured_hypercohomology(t) == (0, 0)


def test_punctured_bouquet():
    assert punctured_hypercohomology(bouquet_triangle()) == (1, 1)


# -- duality ----------------------------------------------------------------

def test_dual_fixed_point():
    t = MVTriangle(QQ, Matrix.identity(QQ, 1), Matrix.zeros(QQ, 1, 1),
                   Matrix.zeros(QQ, 1, 1))
    assert dual_triangle(t) == t


def test_dual_of_bouquet():
    d = dual_triangle(bouquet_triangle())
    assert d.gamma == Matrix(QQ, [[0], [1], [0], [0], [0]])
    assert d.delta == Matrix(QQ, [[1, 0, 0, 0, 0]])
    assert d.nu == Matrix.identity(QQ, 1)


def test_dual_is_involution_random():
    rng = random.Random(10)
    for field in (QQ, GF101):
        for _ in range(50):
            t = random_triangle(field, rng, rng.randint(0, 3),
                                rng.randint(0, 3))
            assert dual_triangle(dual_triangle(t)) == t


# -- direct sums --------------------------------------------------------------

def test_sum_with_zero_triangle():
    t = bouquet_triangle()
    z = MVTriangle.zero(QQ)
    assert direct_sum(t, z) == t


def test_displayed_sum_shape():
    # (dims 0, lambda0) + (dims 1, 0 with nu = id)
    f = QQ
    lam0 = 5
    point = MVTriangle(f, Matrix.zeros(f, 0, 0), Matrix.zeros(f, lam0, 0),
                       Matrix.zeros(f, 0, lam0))
    const = MVTriangle(f, Matrix.identity(f, 1), Matrix.zeros(f, 0, 1),
                       Matrix.zeros(f, 1, 0))
    s = direct_sum(point, const)
    assert (s.dim_v, s.dim_w) == (1, lam0)
    assert s.gamma.is_zero() and s.delta.is_zero() and s.nu.is_identity()


def test_stalk_additivity_random():
    rng = random.Random(11)
    for _ in range(30):
        a = random_triangle(QQ, rng, rng.randint(0, 3), rng.randint(0, 3))
        b = random_triangle(QQ, rng, rng.randint(0, 3), rng.randint(0, 3))
        s = stalk_cohomology(direct_sum(a, b))
        sa, sb = stalk_cohomology(a), stalk_cohomology(b)
        assert s.dim_deg_minus1 == sa.dim_deg_minus1 + sb.dim_deg_minus1
        assert s.dim_deg0 == sa.dim_deg0 + sb.dim_deg0


# -- morphisms and isomorphism search ------------------------------------------

def test_identity_morphism():
    t = bouquet_triangle()
    m = MVMorphism.identity(t)
    assert m.is_isomorphism()


def test_morphism_rejects_bad_squares():
    t = bouquet_triangle()
    bad_eta = Matrix.zeros(QQ, 5, 5)
    with pytest.raises(MorphismError):
        MVMorphism(t, t, Matrix.identity(QQ, 1), bad_eta)


def test_self_isomorphism():
    t = bouquet_triangle()
    res = is_isomorphic(t, t)
    assert res.isomorphic and res.witness.is_isomorphism()


def test_bouquet_self_dual():
    t = bouquet_triangle()
    d = dual_triangle(t)
    res = is_isomorphic(t, d)
    assert res.isomorphic
    w = res.witness
    assert w.is_isomorphism()
    # witness really intertwines the structure maps
    assert (d.gamma @ w.tau) == (w.eta @ t.gamma)
    assert (d.delta @ w.eta) == (w.tau @ t.delta)
    # the swap of the first two W-coordinates is one valid witness
    swap = Matrix(QQ, [[0, 1, 0, 0, 0], [1, 0, 0, 0, 0], [0, 0, 1, 0, 0],
                       [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
    MVMorphism(t, d, Matrix.identity(QQ, 1), swap)   # validates


def test_non_isomorphic_stalk_certificate():
    a = MVTriangle(QQ, Matrix.identity(QQ, 1), Matrix.zeros(QQ, 1, 1),
                   Matrix.zeros(QQ, 1, 1))
    b = MVTriangle(QQ, Matrix.identity(QQ, 1), Matrix(QQ, [[1]]),
                   Matrix(QQ, [[0]]))
    res = is_isomorphic(a, b)
    assert not res.isomorphic
    assert res.certificate == "stalk cohomology mismatch"


def test_non_isomorphic_dimension_certificate():
    a = bouquet_triangle()
    b = MVTriangle.zero(QQ)
    res = is_isomorphic(a, b)
    assert not res.isomorphic
    assert res.certificate == "dimension mismatch"


def test_isomorphism_found_after_conjugation():
    rng = random.Random(12)
    for field in (QQ, GF101):
        for _ in range(10):
            t = random_triangle(field, rng, 2, 2)
            # conjugate by invertible maps to hide the isomorphism
            from linesing.randgen import random_invertible
            p = random_invertible(field, rng, 2)
            q = random_invertible(field, rng, 2)
            t2 = MVTriangle(field,
                            p @ t.nu @ p.inverse(),
                            q @ t.gamma @ p.inverse(),
                            p @ t.delta @ q.inverse())
            res = is_isomorphic(t, t2, seed=7)
            assert res.isomorphic
            assert res.witness.is_isomorphism()


# -- Siersma sum test -----------------------------------------------------------

def test_siersma_block_form_true():
    t = MVTriangle(QQ, Matrix.identity(QQ, 1), Matrix.zeros(QQ, 5, 1),
                   Matrix.zeros(QQ, 1, 5))
    assert siersma_sum_test(t)


def test_siersma_bouquet_false():
    assert not siersma_sum_test(bouquet_triangle())


def test_siersma_nontrivial_monodromy_false():
    t = MVTriangle(QQ, Matrix(QQ, [[Fraction(1, 2)]]), Matrix(QQ, [[1]]),
                   Matrix(QQ, [[Fraction(1, 2)]]))
    assert not siersma_sum_test(t)


# -- exact sequences --------------------------------------------------------------

def test_ses_direct_sum_split():
    a = bouquet_triangle()
    b = MVTriangle(QQ, Matrix.identity(QQ, 1), Matrix.zeros(QQ, 2, 1),
                   Matrix.zeros(QQ, 1, 2))
    s = direct_sum(a, b)
    za = Matrix.zeros(QQ, b.dim_v, a.dim_v)
    zw = Matrix.zeros(QQ, b.dim_w, a.dim_w)
    inj = MVMorphism(a, s,
                     _stack(Matrix.identity(QQ, a.dim_v), za),
                     _stack(Matrix.identity(QQ, a.dim_w), zw))
    surj = MVMorphism(s, b,
                      _paste(Matrix.zeros(QQ, b.dim_v, a.dim_v),
                             Matrix.identity(QQ, b.dim_v)),
                      _paste(Matrix.zeros(QQ, b.dim_w, a.dim_w),
                             Matrix.identity(QQ, b.dim_w)))
    MVSes(inj, surj)   # validates


def _stack(top, bottom):
    return Matrix(top.field, [list(r) for r in top.rows]
                  + [list(r) for r in bottom.rows], top.ncols)


def _paste(left, right):
    return Matrix(left.field,
                  [list(a) + list(b) for a, b in zip(left.rows, right.rows)],
                  left.ncols + right.ncols)


def test_ses_rejects_broken_exactness():
    a = bouquet_triangle()
    s = direct_sum(a, a)
    inj = MVMorphism(a, s, _stack(Matrix.identity(QQ, 1),
                                  Matrix.zeros(QQ, 1, 1)),
                     _stack(Matrix.identity(QQ, 5), Matrix.zeros(QQ, 5, 5)))
    surj_bad = MVMorphism(s, a,
                          _paste(Matrix.identity(QQ, 1),
                                 Matrix.zeros(QQ, 1, 1)),
                          _paste(Matrix.identity(QQ, 5),
                                 Matrix.zeros(QQ, 5, 5)))
    with pytest.raises(SesValidationError):
        MVSes(inj, surj_bad)


# -- kernels and cokernels ----------------------------------------------------------

def test_kernel_and_cokernel_of_projection():
    a = bouquet_triangle()
    s = direct_sum(a, a)
    proj = MVMorphism(s, a,
                      _paste(Matrix.identity(QQ, 1), Matrix.zeros(QQ, 1, 1)),
                      _paste(Matrix.identity(QQ, 5), Matrix.zeros(QQ, 5, 5)))
    ker_tri, incl = morphism_kernel(proj)
    assert (ker_tri.dim_v, ker_tri.dim_w) == (1, 5)
    assert validate_triangle(ker_tri).ok
    assert incl.tau.rank() == 1 and incl.eta.rank() == 5
    coker_tri, q = morphism_cokernel(proj)
    assert (coker_tri.dim_v, coker_tri.dim_w) == (0, 0)


def test_cokernel_of_inclusion():
    a = bouquet_triangle()
    s = direct_sum(a, a)
    incl = MVMorphism(a, s, _stack(Matrix.identity(QQ, 1),
                                   Matrix.zeros(QQ, 1, 1)),
                      _stack(Matrix.identity(QQ, 5), Matrix.zeros(QQ, 5, 5)))
    coker_tri, proj = morphism_cokernel(incl)
    assert (coker_tri.dim_v, coker_tri.dim_w) == (1, 5)
    assert validate_triangle(coker_tri).ok
    assert proj.tau.rank() == 1 and proj.eta.rank() == 5
    s2 = stalk_cohomology(coker_tri)
    assert (s2.dim_deg_minus1, s2.dim_deg0) == (0, 4)


# -- axiom preservation properties -----------------------------------------------------

def test_axiom_preservation_random():
    rng = random.Random(13)
    for field in (QQ, GF101):
        for _ in range(60):
            t = random_triangle(field, rng, rng.randint(0, 3),
                                rng.randint(0, 4))
            assert validate_triangle(t).ok
            assert validate_triangle(dual_triangle(t)).ok
            u = random_triangle(field, rng, rng.randint(0, 2),
                                rng.randint(0, 2))
            assert validate_triangle(direct_sum(t, u)).ok
            # cosupport inclusion
            ident = Matrix.identity(field, t.dim_v)
            assert kernel_basis(ident - t.nu).contains(
                kernel_basis(t.gamma))
            # euler characteristic of the stalk
            s = stalk_cohomology(t)
            assert s.dim_deg0 - s.dim_deg_minus1 == t.dim_w - t.dim_v
            # rank identities behind the stalk duality swap
            assert t.gamma.rank() == t.gamma.transpose().rank()
