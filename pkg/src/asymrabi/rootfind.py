"""Scalar root finding for the displacement conditions.

``safeguarded_newton`` keeps a sign-change bracket and falls back to
bisection whenever a Newton step leaves it. ``continue_root`` follows the
root that starts at ``x = 0`` when the couplings are scaled from zero up to
their target values, so the branch picked out is the one connected to the
uncoupled limit.
"""
import math

from .errors import RootAmbiguous, RootNotFound


def safeguarded_newton(func, lo, hi, x0=None, xtol=1e-15, maxiter=200):
    """Root of ``func`` in ``[lo, hi]``; ``func(x)`` returns ``(f, df/dx)``."""
    flo = func(lo)[0]
    fhi = func(hi)[0]
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo < 0) == (fhi < 0):
        raise RootNotFound(f"no sign change on [{lo}, {hi}] (f={flo:.3g}, {fhi:.3g})")
    if lo > hi:
        lo, hi, flo, fhi = hi, lo, fhi, flo

    x = x0 if x0 is not None and lo < x0 < hi else 0.5 * (lo + hi)
    for _ in range(maxiter):
        f, df = func(x)
        if f == 0.0:
            return x
        if (f < 0) == (flo < 0):
            lo, flo = x, f
        else:
            hi = x
        step_ok = df != 0.0 and math.isfinite(df)
        xn = x - f / df if step_ok else None
        if xn is None or not lo < xn < hi:
            xn = 0.5 * (lo + hi)
        if abs(xn - x) <= xtol * max(1.0, abs(x)) or hi - lo <= xtol * max(1.0, abs(x)):
            return xn
        x = xn
    return x


def polish(func, x, iterations=3):
    """A few plain Newton steps, kept only while the residual shrinks."""
    f = func(x)[0]
    for _ in range(iterations):
        f0, df = func(x)
        if df == 0.0 or f0 == 0.0:
            break
        xn = x - f0 / df
        fn = func(xn)[0]
        if abs(fn) >= abs(f):
            break
        x, f = xn, fn
    return x


def _local_bracket(g, center, h0, h_max):
    h = h0
    f_c = g(center)[0]
    if f_c == 0.0:
        return center, center
    while h <= h_max:
        lo, hi = center - h, center + h
        flo, fhi = g(lo)[0], g(hi)[0]
        # Prefer the side nearest the predictor.
        if (flo < 0) != (f_c < 0):
            return lo, center
        if (fhi < 0) != (f_c < 0):
            return center, hi
        h *= 2.0
    return None


def continue_root(func, n_steps=16, min_step=1e-7, window=0.5):
    """Follow the root of ``func(x, s) = 0`` from ``(x, s) = (0, 0)`` to ``s = 1``.

    ``func(x, s)`` returns ``(f, df/dx)``. Each step predicts the root by
    secant extrapolation in ``s``, brackets the sign change closest to the
    prediction, and refines it with :func:`safeguarded_newton`. Steps are
    halved when no sign change is found within ``window``.

    Raises
    ------
    RootNotFound
        If ``x = 0`` is not a root at ``s = 0``.
    RootAmbiguous
        If the branch cannot be continued even with the smallest step
        (a fold, where the tracked root annihilates with a neighbour).
    """
    f0 = func(0.0, 0.0)[0]
    if abs(f0) > 1e-12:
        raise RootNotFound(f"x=0 is not a root of the uncoupled condition (f={f0:.3g})")

    s, x = 0.0, 0.0
    s_prev = x_prev = None
    ds = 1.0 / n_steps
    while s < 1.0:
        s_new = min(1.0, s + ds)
        g = lambda y, _s=s_new: func(y, _s)
        if s_prev is None:
            xp = x
        else:
            xp = x + (x - x_prev) * (s_new - s) / (s - s_prev)
        h0 = max(1e-6, 1e-3 * abs(xp), 2.0 * abs(xp - x))
        br = _local_bracket(g, xp, h0, window)
        if br is None:
            ds *= 0.5
            if ds < min_step:
                raise RootAmbiguous(
                    f"root branch lost near s={s:.6g}, x={x:.6g} (fold in the condition)"
                )
            continue
        lo, hi = br
        xn = lo if lo == hi else safeguarded_newton(g, lo, hi, x0=xp)
        s_prev, x_prev, s, x = s, x, s_new, xn
        ds = min(ds * 1.5, 1.0 / n_steps)
    return polish(lambda y: func(y, 1.0), x)
