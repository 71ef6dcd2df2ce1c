"""Truncated third-order multivariate Taylor jets with exact chain rule, and
a central-finite-difference oracle used to cross-check every derivative."""

from __future__ import annotations

from numbers import Rational

import numpy as np


class DomainError(ValueError):
    """An operation left its numeric domain: division by zero, log of a
    nonpositive value, or a fractional power of a nonpositive base."""


def _mirror2(h: np.ndarray) -> np.ndarray:
    # the upper triangle is authoritative; mirroring makes symmetry exact
    n = h.shape[0]
    out = h.copy()
    for i in range(n):
        for j in range(i + 1, n):
            out[j, i] = out[i, j]
    return out


def _mirror3(t: np.ndarray) -> np.ndarray:
    n = t.shape[0]
    out = np.empty_like(t)
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                v = t[i, j, k]
                out[i, j, k] = out[i, k, j] = out[j, i, k] = v
                out[j, k, i] = out[k, i, j] = out[k, j, i] = v
    return out


def _sym3_grad_hess(g: np.ndarray, h: np.ndarray) -> np.ndarray:
    """g_i h_jk symmetrized over the three slots."""
    t = np.einsum("i,jk->ijk", g, h)
    return t + t.transpose(1, 0, 2) + t.transpose(2, 1, 0)


class Jet3:
    """Value, gradient, Hessian and third-derivative tensor of a scalar
    function of nvars variables, propagated through arithmetic and the
    elementary functions by the chain rule, exactly to third order.

    The Hessian and the third tensor are stored dense; the entries with
    sorted indices are authoritative and mirrored on construction, so both
    are symmetric to the last bit.
    """

    __slots__ = ("nvars", "value", "grad", "hess", "third")

    def __init__(self, nvars, value, grad=None, hess=None, third=None):
        n = int(nvars)
        if n < 0:
            raise ValueError("nvars must be nonnegative")
        self.nvars = n
        self.value = float(value)
        g = np.zeros(n) if grad is None else np.asarray(grad, dtype=float).copy()
        h = np.zeros((n, n)) if hess is None else np.asarray(hess, dtype=float)
        t = np.zeros((n, n, n)) if third is None else np.asarray(third, dtype=float)
        if g.shape != (n,) or h.shape != (n, n) or t.shape != (n, n, n):
            raise ValueError("derivative array shape mismatch")
        self.grad = g
        self.hess = _mirror2(h)
        self.third = _mirror3(t)

    # ------------------------------------------------------------------

    @staticmethod
    def constant(nvars: int, value) -> "Jet3":
        return Jet3(nvars, value)

    @staticmethod
    def seed(nvars: int, k: int, value) -> "Jet3":
        """The k-th coordinate function at the given value."""
        if not 0 <= k < nvars:
            raise ValueError("seed index out of range")
        g = np.zeros(nvars)
        g[k] = 1.0
        return Jet3(nvars, value, g)

    @staticmethod
    def seeds(values) -> "list[Jet3]":
        vals = list(values)
        return [Jet3.seed(len(vals), k, v) for k, v in enumerate(vals)]

    def _coerce(self, other) -> "Jet3":
        if isinstance(other, Jet3):
            if other.nvars != self.nvars:
                raise ValueError("jet dimension mismatch")
            return other
        return Jet3.constant(self.nvars, other)

    # ------------------------------------------------------------------

    def __add__(self, other) -> "Jet3":
        b = self._coerce(other)
        return Jet3(
            self.nvars,
            self.value + b.value,
            self.grad + b.grad,
            self.hess + b.hess,
            self.third + b.third,
        )

    __radd__ = __add__

    def __neg__(self) -> "Jet3":
        return Jet3(self.nvars, -self.value, -self.grad, -self.hess, -self.third)

    def __sub__(self, other) -> "Jet3":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Jet3":
        return (-self) + other

    def __mul__(self, other) -> "Jet3":
        b = self._coerce(other)
        a = self
        value = a.value * b.value
        grad = a.value * b.grad + b.value * a.grad
        hess = (
            a.value * b.hess
            + b.value * a.hess
            + np.outer(a.grad, b.grad)
            + np.outer(b.grad, a.grad)
        )
        third = (
            a.value * b.third
            + b.value * a.third
            + _sym3_grad_hess(a.grad, b.hess)
            + _sym3_grad_hess(b.grad, a.hess)
        )
        return Jet3(a.nvars, value, grad, hess, third)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Jet3":
        b = self._coerce(other)
        if b.value == 0.0:
            raise DomainError("division by a jet with zero value")
        v = b.value
        recip = _compose(b, 1.0 / v, -1.0 / v**2, 2.0 / v**3, -6.0 / v**4)
        return self * recip

    def __rtruediv__(self, other) -> "Jet3":
        return self._coerce(other) / self

    def __pow__(self, exponent) -> "Jet3":
        return power(self, exponent)

    # ------------------------------------------------------------------

    def derivative(self, index) -> float:
        """Partial derivative for a multi-index given as a tuple of variable
        positions (length 0 to 3)."""
        idx = tuple(index)
        if len(idx) == 0:
            return self.value
        if len(idx) == 1:
            return float(self.grad[idx[0]])
        if len(idx) == 2:
            return float(self.hess[idx[0], idx[1]])
        if len(idx) == 3:
            return float(self.third[idx[0], idx[1], idx[2]])
        raise ValueError("only derivatives up to order 3 are carried")

    def symmetry_ok(self) -> bool:
        return bool(
            np.array_equal(self.hess, self.hess.T)
            and all(
                np.array_equal(self.third, self.third.transpose(p))
                for p in ((0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))
            )
        )

    def __repr__(self) -> str:
        return f"Jet3(nvars={self.nvars}, value={self.value})"


def _compose(a: Jet3, f0: float, f1: float, f2: float, f3: float) -> Jet3:
    """Chain rule for a scalar function applied to a jet, given the
    function's derivatives at a.value."""
    g, h = a.grad, a.hess
    value = f0
    grad = f1 * g
    hess = f1 * h + f2 * np.outer(g, g)
    third = f1 * a.third + f2 * _sym3_grad_hess(g, h) + f3 * np.einsum("i,j,k->ijk", g, g, g)
    return Jet3(a.nvars, value, grad, hess, third)


def exp(a: Jet3) -> Jet3:
    e = float(np.exp(a.value))
    return _compose(a, e, e, e, e)


def ln(a: Jet3) -> Jet3:
    v = a.value
    if v <= 0.0:
        raise DomainError("log of a nonpositive value")
    return _compose(a, float(np.log(v)), 1.0 / v, -1.0 / v**2, 2.0 / v**3)


def power(a: Jet3, exponent) -> Jet3:
    """a**exponent; integer exponents go through repeated multiplication and
    are exact on polynomial jets, fractional exponents need a.value > 0."""
    e = exponent
    if isinstance(e, Rational) and e.denominator == 1:
        e = int(e)
    elif isinstance(e, float) and e.is_integer():
        e = int(e)
    if isinstance(e, (int, np.integer)):
        k = int(e)
        if k < 0:
            if a.value == 0.0:
                raise DomainError("negative power of a jet with zero value")
            return Jet3.constant(a.nvars, 1.0) / power(a, -k)
        out = Jet3.constant(a.nvars, 1.0)
        base = a
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out
    ef = float(e)
    v = a.value
    if v <= 0.0:
        raise DomainError("fractional power of a nonpositive base")
    return _compose(
        a,
        v**ef,
        ef * v ** (ef - 1.0),
        ef * (ef - 1.0) * v ** (ef - 2.0),
        ef * (ef - 1.0) * (ef - 2.0) * v ** (ef - 3.0),
    )


def jet_arith(a: Jet3, b: Jet3, op: str) -> Jet3:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown arithmetic op {op!r}")


def jet_func(a: Jet3, f: str, exponent=None) -> Jet3:
    if f == "exp":
        return exp(a)
    if f == "ln":
        return ln(a)
    if f == "pow":
        if exponent is None:
            raise ValueError("pow needs an exponent")
        return power(a, exponent)
    raise ValueError(f"unknown function {f!r}")


# ----------------------------------------------------------------------
# finite-difference oracle

# safety multipliers on the machine-epsilon step rule, per derivative order;
# chosen so rounding noise stays well below the documented tolerances while
# one Richardson refinement keeps truncation negligible
_STEP_FACTOR = {1: 1.0, 2: 3.0, 3: 2.0}


def _central(g, axis: int, h: float):
    def out(x):
        xp = x.copy()
        xp[axis] += h
        xm = x.copy()
        xm[axis] -= h
        return (g(xp) - g(xm)) / (2.0 * h)

    return out


def fd_oracle(f, point, index) -> tuple[float, float]:
    """Central-difference estimate of the partial derivative of f at point
    for a multi-index given as a tuple of variable positions (order 0 to 3).

    Step per axis: factor * max(|x_i|, 1) * eps**(1/(order+2)).  The estimate
    is refined once by Richardson extrapolation from steps (h, 2h); the
    second return value is the difference of the two raw estimates, an error
    indicator.  Non-finite samples raise ArithmeticError.
    """
    pt = np.asarray(point, dtype=float)
    idx = tuple(index)
    order = len(idx)

    def base(x):
        v = float(f(x))
        if not np.isfinite(v):
            raise ArithmeticError("non-finite sample in finite differences")
        return v

    if order == 0:
        return base(pt), 0.0
    if order > 3:
        raise ValueError("only orders up to 3 are supported")
    eps = float(np.finfo(float).eps)
    scale = _STEP_FACTOR[order] * eps ** (1.0 / (order + 2))

    def estimate(mult: float) -> float:
        g = base
        for ax in idx:
            h = mult * scale * max(abs(float(pt[ax])), 1.0)
            g = _central(g, ax, h)
        return g(pt)

    fine = estimate(1.0)
    coarse = estimate(2.0)
    refined = (4.0 * fine - coarse) / 3.0
    return refined, abs(fine - coarse)


# the oracle's own error floor per order: central differences with the step
# law above bottom out near eps**(2/5) for third derivatives, so orders 0-2
# can be held to 1e-8 but order 3 only to 1e-6 of the tensor scale
_COMPARE_REL = {0: 1e-8, 1: 1e-8, 2: 1e-8, 3: 1e-6}


def jet_fd_compare(f_jet, f_plain, point, rel=None, floor: float = 1e-10) -> dict:
    """Compare every partial of a jet evaluation against the oracle.

    f_jet maps a list of seed jets to a Jet3; f_plain maps a float array to a
    float.  Each derivative order is compared against the oracle with a
    tolerance relative to the largest oracle entry of that order, with an
    absolute floor.  rel may be a float or a per-order dict.
    """
    pt = np.asarray(point, dtype=float)
    n = pt.size
    jet = f_jet(Jet3.seeds(pt))
    report = {"point": [float(x) for x in pt], "orders": {}, "passed": True}
    for order in (0, 1, 2, 3):
        if rel is None:
            r = _COMPARE_REL[order]
        elif isinstance(rel, dict):
            r = rel[order]
        else:
            r = float(rel)
        indices = _sorted_indices(n, order)
        fd_vals = {}
        jet_vals = {}
        for ix in indices:
            est, _ = fd_oracle(f_plain, pt, ix)
            fd_vals[ix] = est
            jet_vals[ix] = jet.derivative(ix)
        scale = max((abs(v) for v in fd_vals.values()), default=0.0)
        tol = r * scale + floor
        worst = max((abs(fd_vals[ix] - jet_vals[ix]) for ix in indices), default=0.0)
        ok = worst <= tol
        report["orders"][order] = {"max_abs_diff": worst, "tolerance": tol, "passed": ok}
        report["passed"] = report["passed"] and ok
    return report


def _sorted_indices(n: int, order: int) -> list[tuple]:
    if order == 0:
        return [()]
    out = []

    def rec(prefix, start):
        if len(prefix) == order:
            out.append(tuple(prefix))
            return
        for k in range(start, n):
            rec(prefix + [k], k)

    rec([], 0)
    return out
