"""Seeded random generators for triangles, exact sequences and
monodromy data.

The constructions here are used by the property-test suite, so they are
careful to produce data that is valid *by construction* wherever
possible and to leave every other degree of freedom genuinely random.
"""

from __future__ import annotations

from .linalg import Matrix, Subspace
from .triangles import MVTriangle


def random_matrix(field, rng, nrows: int, ncols: int,
                  height: int = 4) -> Matrix:
    return Matrix(field, [[field.random(rng, height) for _ in range(ncols)]
                          for _ in range(nrows)], ncols)


def random_invertible(field, rng, n: int, height: int = 4) -> Matrix:
    while True:
        m = random_matrix(field, rng, n, n, height)
        if m.is_invertible():
            return m


def random_triangle(field, rng, dim_v: int, dim_w: int) -> MVTriangle:
    """A uniform-ish valid triangle: sample an invertible nu and an
    arbitrary gamma, then solve delta.gamma = id - nu for delta.

    The system is solvable iff ker gamma <= ker(id - nu).  Failing
    samples are redrawn a few times; once gamma has a forced kernel
    (e.g. dim_w < dim_v) rejection almost never succeeds, so nu is then
    built directly to fix ker gamma pointwise.
    """
    ident = Matrix.identity(field, dim_v)
    gamma = random_matrix(field, rng, dim_w, dim_v)
    for _ in range(20):
        nu = random_invertible(field, rng, dim_v)
        sol = gamma.transpose().solve((ident - nu).transpose())
        if sol is not None:
            return MVTriangle(field, nu, gamma, sol.transpose())
        gamma = random_matrix(field, rng, dim_w, dim_v)
    # structured fallback: in a frame extending ker gamma, nu is block
    # [[I, B], [0, C]] with C invertible, so id - nu kills the kernel
    ker = gamma.nullspace()
    k = ker.dim
    frame_cols = list(ker.basis.columns())
    for c in Subspace.full(field, dim_v).basis.columns():
        trial = Matrix.from_columns(field, frame_cols + [c], dim_v)
        if trial.rank() == len(frame_cols) + 1:
            frame_cols.append(c)
    frame = Matrix.from_columns(field, frame_cols, dim_v)
    b = random_matrix(field, rng, k, dim_v - k)
    c = random_invertible(field, rng, dim_v - k)
    block = [[field.one if i == j else field.zero for j in range(k)]
             + list(b.rows[i]) for i in range(k)]
    block += [[field.zero] * k + list(c.rows[i]) for i in range(dim_v - k)]
    nu = frame @ Matrix(field, block, dim_v) @ frame.inverse()
    sol = gamma.transpose().solve((ident - nu).transpose())
    return MVTriangle(field, nu, gamma, sol.transpose())


def random_invariant_chain(field, rng, n: int):
    """(t, u, w) with u <= w both t-invariant, built in a random frame."""
    s = random_invertible(field, rng, n)
    k = rng.randint(0, n)
    m = rng.randint(k, n)
    block = [[field.zero if (i >= k and j < k) or (i >= m and j < m)
              else field.random(rng) for j in range(n)] for i in range(n)]
    t = s @ Matrix(field, block, n) @ s.inverse()
    cols = s.columns()
    u = Subspace.from_columns(field, n, cols[:k])
    w = Subspace.from_columns(field, n, cols[:m])
    return t, u, w


def _stack(top: Matrix, bottom: Matrix) -> Matrix:
    return Matrix(top.field, [list(r) for r in top.rows]
                  + [list(r) for r in bottom.rows], top.ncols)


def _sequence_frame(field, rng, mu0: int, lambda0: int):
    """(beta, pi) with beta injective, pi surjective, im beta = ker pi,
    hidden inside a random change of basis of K^zeta."""
    zeta = mu0 + lambda0
    s = random_invertible(field, rng, zeta)
    s_inv = s.inverse()
    beta = Matrix(field, [list(s.rows[i])[lambda0:] for i in range(zeta)],
                  mu0)
    pi = Matrix(field, [list(s_inv.rows[i]) for i in range(lambda0)], zeta)
    return beta, pi, s


def random_valid_ses(field, rng, lambda1: int, mu0: int,
                     lambda0: int) -> "MorseSes":
    """A valid Morse sequence with the given dimensions.

    The right-hand triangle is drawn first; theta is then any injective
    lift of gamma through pi, and omega = delta . pi makes the middle
    triangle axiom hold automatically.
    """
    from .morse import MorseSes

    right = random_triangle(field, rng, lambda1, lambda0)
    beta, pi, s = _sequence_frame(field, rng, mu0, lambda0)
    for _ in range(100):
        lift = _stack(right.gamma, random_matrix(field, rng, mu0, lambda1))
        if lift.rank() == lambda1:
            break
    else:
        raise ValueError("could not make theta injective; "
                         "lambda1 exceeds mu0 + lambda0?")
    theta = s @ lift
    omega = right.delta @ pi
    return MorseSes(field, mu0, lambda1, lambda0, mu0 + lambda0,
                    right.nu, theta, omega, beta, pi, right.gamma,
                    right.delta)


def _with_trace(field, rng, n: int, target):
    """Random invertible n x n matrix with the given trace."""
    if n == 0:
        raise ValueError("cannot prescribe a trace on a 0x0 matrix")
    while True:
        m = [[field.random(rng) for _ in range(n)] for _ in range(n)]
        partial = field.zero
        for i in range(n - 1):
            partial = field.add(partial, m[i][i])
        m[n - 1][n - 1] = field.sub(target, partial)
        cand = Matrix(field, m, n)
        if cand.is_invertible():
            return cand


def adversarial_obstruction_attempt(field, rng, n: int = 2):
    """One attempt at building data that the obstruction says cannot
    exist: a valid sequence with mu0 = 1 + lambda1 and im theta inside
    im beta, together with monodromy shooting for commutation and
    traces (-1)^n.

    Different strategies cut different corners; every one of them must
    end in a validation failure or a quotient-trace contradiction.
    Returns (ses, act, strategy_name).
    """
    from .morse import MonodromyAction, MorseSes, acampo_trace

    lambda1 = rng.randint(1, 2)
    mu0 = lambda1 + 1
    lambda0 = rng.randint(lambda1, 3)   # keep delta surjectable
    zeta = mu0 + lambda0
    # im theta <= im beta forces gamma = 0, hence nu = id on the nose
    nu = Matrix.identity(field, lambda1)
    gamma = Matrix.zeros(field, lambda0, lambda1)
    while True:
        delta = random_matrix(field, rng, lambda1, lambda0)
        if delta.rank() == lambda1:
            break
    beta, pi, s = _sequence_frame(field, rng, mu0, lambda0)
    while True:
        j = random_matrix(field, rng, mu0, lambda1)
        if j.rank() == lambda1:
            break
    theta = beta @ j
    omega = delta @ pi
    ses = MorseSes(field, mu0, lambda1, lambda0, zeta, nu, theta, omega,
                   beta, pi, gamma, delta)

    target = acampo_trace(n, field)
    t_v = _with_trace(field, rng, lambda1, target)
    strategy = rng.choice(("random-w1", "trace-only-w1", "equivariant-w1"))
    if strategy == "random-w1":
        t_w1 = random_invertible(field, rng, mu0)
    elif strategy == "trace-only-w1":
        t_w1 = _with_trace(field, rng, mu0, target)
    else:
        # honor t_w1 . j = j . t_v exactly, then force the trace; the
        # resulting block is necessarily singular, which is the point
        frame_cols = list(j.columns())
        for c in Subspace.full(field, mu0).basis.columns():
            trial = Matrix.from_columns(field, frame_cols + [c], mu0)
            if trial.rank() == len(frame_cols) + 1:
                frame_cols.append(c)
        frame = Matrix.from_columns(field, frame_cols, mu0)
        frame_inv = frame.inverse()
        free = random_matrix(field, rng, mu0, mu0 - lambda1)
        t_w1 = _assemble_with_trace(field, j @ t_v, free, frame,
                                    frame_inv, target)
    # t_w3 solves delta . t_w3 = t_v . delta (delta is surjective)
    t_w3 = _solve_right(delta, t_v @ delta, field, rng)
    # block lower-triangular in the frame of the sequence: preserves im beta
    y = random_matrix(field, rng, mu0, lambda0)
    block = [[*t_w3.rows[i], *([field.zero] * mu0)]
             for i in range(lambda0)]
    block += [[*y.rows[i], *t_w1.rows[i]] for i in range(mu0)]
    t_w2 = s @ Matrix(field, block, zeta) @ s.inverse()
    act = MonodromyAction(field, n, t_v, t_w1, t_w2, t_w3)
    return ses, act, strategy


def _assemble_with_trace(field, image_cols: Matrix, free: Matrix,
                         frame: Matrix, frame_inv: Matrix, target):
    """Build m = [image_cols | free] . frame_inv, then adjust one free
    entry so that trace(m) = target."""
    lambda1 = image_cols.ncols
    mu0 = frame.nrows
    cols = image_cols.columns() + free.columns()
    m = Matrix.from_columns(field, cols, mu0)
    current = (m @ frame_inv).trace()
    err = field.sub(target, current)
    if not field.is_zero(err):
        # entry free[k][i] feeds the trace with weight frame_inv[lambda1+i][k]
        done = False
        for i in range(mu0 - lambda1):
            for k in range(mu0):
                w = frame_inv.rows[lambda1 + i][k]
                if not field.is_zero(w):
                    bump = field.div(err, w)
                    cols_adj = [list(c) for c in cols]
                    cols_adj[lambda1 + i][k] = field.add(
                        cols_adj[lambda1 + i][k], bump)
                    m = Matrix.from_columns(
                        field, [tuple(c) for c in cols_adj], mu0)
                    done = True
                    break
            if done:
                break
    return m @ frame_inv


def _solve_right(a: Matrix, rhs: Matrix, field, rng) -> Matrix:
    """Some x with a @ x = rhs, randomized over the solution space."""
    particular = a.solve(rhs)
    if particular is None:
        raise ValueError("system unexpectedly inconsistent")
    hom = a.nullspace()
    if hom.dim == 0:
        return particular
    mix = particular
    for col in hom.basis.columns():
        coeffs = [field.random(rng) for _ in range(rhs.ncols)]
        scaled_cols = [tuple(field.mul(coeffs[j], col[i])
                             for i in range(len(col)))
                       for j in range(rhs.ncols)]
        mix = mix + Matrix.from_columns(field, scaled_cols, len(col))
    return mix
