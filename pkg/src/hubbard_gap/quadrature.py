"""Thin wrapper around QUADPACK with explicit failure semantics."""

import math

from scipy.integrate import quad

from .errors import ConvergenceError


def adaptive_quad(f, a, b, *, rel_tol, abs_tol, limit, name):
    """Adaptive Gauss-Kronrod integral of ``f`` over ``[a, b]``.

    Raises ConvergenceError, naming the integral, when the result is not
    finite or QUADPACK flags a failure whose error estimate sits far above
    the requested tolerance.  Roundoff warnings within tolerance pass.
    """
    out = quad(f, a, b, epsabs=abs_tol, epsrel=rel_tol,
               limit=max(int(limit), 1), full_output=1)
    value, abserr = out[0], out[1]
    flagged = len(out) > 3  # QUADPACK appended a failure message
    allowed = 1e3 * max(abs_tol, rel_tol * abs(value))
    if not math.isfinite(value) or (flagged and abserr > allowed):
        raise ConvergenceError(
            f"{name}: quadrature did not converge "
            f"(value {value:.6e}, error estimate {abserr:.2e})")
    return value
