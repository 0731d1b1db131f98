"""The orbit cocycle θ between two skew products over the same base.

θ((t, n), (x, f)) = (t·f⁻¹·c(n, x)⁻¹·c′(n, x)·f, n) satisfies
α̃_{(t,n)}(x, f) = α̃′_{θ((t,n),(x,f))}(x, f), so the identity map on points is
an orbit equivalence whose cocycle is θ. Swapping c and c′ gives its inverse.
"""

from __future__ import annotations

from typing import Any

import numpy as np

from coe_rigidity.cocycle.level_cocycle import CocycleTable
from coe_rigidity.skew.system import GroupElement, Point, SkewSystem, act_arrays, require_same_base
from coe_rigidity.trace import TraceLog


def theta(sys: SkewSystem, sys_prime: SkewSystem, g: GroupElement, p: Point) -> GroupElement:
    require_same_base(sys, sys_prime)
    t, n = g
    x, f = p
    sys.base.check_state(x)
    group = sys.group
    twist = group.mul(group.inverse(sys.cocycle.value(n, x)), sys_prime.cocycle.value(n, x))
    value = group.mul(group.mul(group.mul(t, group.inverse(f)), twist), f)
    return int(value), n


def theta_arrays(
    sys: SkewSystem,
    g: tuple[Any, int],
    xs: np.ndarray,
    fs: np.ndarray,
    table: CocycleTable,
    table_prime: CocycleTable,
) -> np.ndarray:
    """F-component of θ(g, ·) over point arrays; the Z-component is always n.

    The F-part of ``g`` may itself be a per-point index array.
    """
    t, n = g
    group = sys.group
    twist = group.mul(group.inverse(table.row(n)[xs]), table_prime.row(n)[xs])
    return group.mul(group.mul(group.mul(t, group.inverse(fs)), twist), fs)


def _theta_identity_failure(
    sys: SkewSystem,
    tables: tuple[CocycleTable, CocycleTable],
    left: list[GroupElement],
    right_window: int,
) -> dict[str, Any] | None:
    """First failure of θ(g1g2, p) = θ(g1, α̃_{g2}p)·θ(g2, p) for g1 in ``left``."""
    table, table_prime = tables
    group = sys.group
    xs, fs = sys.point_arrays()
    for t2 in group.elements:
        for n2 in range(-right_window, right_window + 1):
            x2, f2 = act_arrays(sys, (t2, n2), xs, fs, table)
            second = theta_arrays(sys, (t2, n2), xs, fs, table, table_prime)
            for t1, n1 in left:
                first = theta_arrays(sys, (t1, n1), x2, f2, table, table_prime)
                whole = theta_arrays(sys, (int(group.mul(t1, t2)), n1 + n2), xs, fs, table, table_prime)
                bad = np.flatnonzero(whole != group.mul(first, second))
                if bad.size:
                    return {"g1": [t1, n1], "g2": [t2, n2], "point": list(sys.point(int(bad[0])))}
    return None


def verify_theta_cocycle(sys: SkewSystem, sys_prime: SkewSystem, window: int = 6) -> dict[str, Any] | None:
    """Exhaustive θ cocycle identity for |n₁|, |n₂| ≤ window and every t₁, t₂, point.

    Returns the first counterexample, or None when the identity holds.
    """
    require_same_base(sys, sys_prime)
    tables = (sys.cocycle_table(2 * window), sys_prime.cocycle_table(2 * window))
    left = [(t, n) for t in sys.group.elements for n in range(-window, window + 1)]
    return _theta_identity_failure(sys, tables, left, window)


def verify_coe(
    sys: SkewSystem,
    sys_prime: SkewSystem,
    window: int | None = None,
    trace: TraceLog | None = None,
    tables: tuple[CocycleTable, CocycleTable] | None = None,
) -> bool:
    """Check that the identity map with cocycle θ is an orbit equivalence.

    Runs on |n| ≤ window (default 2·n_L) and every point:

    - α̃_{(t,n)}(p) = α̃′_{θ((t,n),p)}(p);
    - θ′ built from (c′, c) undoes θ: θ′(θ(g, p), p) = g;
    - θ and θ′ satisfy the cocycle identity against the generators (e, ±1).

    ``tables`` may supply the c and c′ window tables directly (window + 1 or more).
    """
    require_same_base(sys, sys_prime)
    trace = trace if trace is not None else TraceLog(subject="coe")
    window = window if window is not None else 2 * sys.base.modulus
    if tables is None:
        tables = (sys.cocycle_table(window + 1), sys_prime.cocycle_table(window + 1))
    table, table_prime = tables
    group = sys.group
    xs, fs = sys.point_arrays()

    for t in group.elements:
        for n in range(-window, window + 1):
            x_new, f_new = act_arrays(sys, (t, n), xs, fs, table)
            image = theta_arrays(sys, (t, n), xs, fs, table, table_prime)
            f_alt = group.mul(group.mul(table_prime.row(n)[xs], fs), group.inverse(image))
            bad = np.flatnonzero((x_new != (xs + n) % sys.base.modulus) | (f_new != f_alt))
            if bad.size:
                trace.fail("coe_identity", f"g=({t},{n}) point={sys.point(int(bad[0]))}")
                return False

            back = theta_arrays(sys, (image, n), xs, fs, table_prime, table)
            bad = np.flatnonzero(back != t)
            if bad.size:
                trace.fail("inverse_cocycle", f"g=({t},{n}) point={sys.point(int(bad[0]))}")
                return False
    trace.ok("coe_identity", f"window={window}")
    trace.ok("inverse_cocycle")

    generators = [(group.identity, 1), (group.identity, -1)]
    for name, pair in (("theta_cocycle", (table, table_prime)), ("theta_inverse_cocycle", (table_prime, table))):
        failure = _theta_identity_failure(sys, pair, generators, window - 1)
        if failure is not None:
            trace.fail(name, str(failure))
            return False
        trace.ok(name)
    return True
