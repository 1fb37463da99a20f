"""Independent numerical oracles used by the test suite.

Deliberately implemented from first principles (Taylor series, Gauss-Legendre
quadrature) with no dependence on the package or on scipy, so they can
arbitrate the production linear algebra.  Slow and simple on purpose.
"""

import numpy as np


def taylor_expm(mat: np.ndarray, min_terms: int = 50, max_terms: int = 200) -> np.ndarray:
    """Matrix exponential by scaled Taylor series with repeated squaring.

    The argument is scaled by 2**-s until its max-abs norm is <= 0.5, the
    series is summed to machine convergence (at least ``min_terms`` terms),
    and the result is squared s times.  Scaling first keeps every series
    term positive-definite in magnitude ordering, so no catastrophic
    cancellation occurs.
    """
    mat = np.asarray(mat, dtype=float)
    norm = np.abs(mat).max()
    s = 0
    while norm > 0.5:
        norm /= 2.0
        s += 1
    scaled = mat / (2.0**s)
    acc = np.eye(mat.shape[0])
    term = np.eye(mat.shape[0])
    for i in range(1, max_terms + 1):
        term = term @ scaled / i
        acc = acc + term
        if i >= min_terms and np.abs(term).max() < 1e-300:
            break
    for _ in range(s):
        acc = acc @ acc
    return acc


def quad_sigma(f: np.ndarray, q: float, dt: float, nodes: int = 80) -> np.ndarray:
    """Process-noise covariance by direct quadrature of its defining integral.

    Sigma = int_0^dt  e^{F (dt - tau)} L q L^T e^{F (dt - tau)}^T  dtau with
    L = (0, 1)^T, so the integrand is q * outer(b, b) where b is the second
    column of e^{F (dt - tau)}.  The integrand is entire, so Gauss-Legendre
    converges superexponentially in the node count.
    """
    f = np.asarray(f, dtype=float)
    x, w = np.polynomial.legendre.leggauss(nodes)
    tau = 0.5 * dt * (x + 1.0)
    weights = 0.5 * dt * w
    sigma = np.zeros((f.shape[0], f.shape[0]))
    for t, wt in zip(tau, weights):
        b = taylor_expm(f * (dt - t))[:, -1]
        sigma += wt * q * np.outer(b, b)
    return sigma


def underdamped_transition(m: float, zeta: float, k_total: float, dt: float) -> np.ndarray:
    """Closed-form transition matrix for the underdamped (zeta < 1) oscillator.

    Third, fully symbolic route to A for triangulating the other two:
    with wn = sqrt(k'/m), wd = wn sqrt(1 - zeta^2), e = exp(-zeta wn dt),

        A = e * [[cos + (zeta wn / wd) sin,              sin / wd],
                 [-wn^2 sin / wd,          cos - (zeta wn / wd) sin]]

    evaluated at wd dt.
    """
    if not zeta < 1.0:
        raise ValueError("closed form implemented for the underdamped case only")
    wn = np.sqrt(k_total / m)
    wd = wn * np.sqrt(1.0 - zeta**2)
    e = np.exp(-zeta * wn * dt)
    c = np.cos(wd * dt)
    s = np.sin(wd * dt)
    g = zeta * wn / wd
    return e * np.array(
        [[c + g * s, s / wd], [-(wn**2) * s / wd, c - g * s]]
    )
