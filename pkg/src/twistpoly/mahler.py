"""Numerical Mahler measure for exact Laurent polynomials.

The one-variable measure is computed from roots: monomial units and zero
roots are stripped first, the remaining integer polynomial is split into
exact square-free factors (Yun's algorithm over the rationals), and each
factor is handed to a simultaneous Aberth-Ehrlich iteration.  Working on
square-free factors keeps repeated roots fully accurate, which matters when
certifying measure-1 products of cyclotomics.

The two-variable measure is a torus integral of log|p|.  It is evaluated on
uniform grids offset by half a step (so lattice-aligned zeros of p are never
sampled), doubling the resolution until successive estimates agree.  The
half-open uniform rule has spectral accuracy for smooth periodic integrands
and O(1/N) accuracy across integrable log singularities, which is all the
convergent-but-singular integrals here need.

All routines are stateless and deterministic: random perturbations are seeded
from the input coefficients and summation orders are fixed.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .polyring import HalfLaurent1, HalfLaurentN, length

_CONVERGE_EPS = 1e-13
_ITERATION_CAP = 500
_RESTARTS = 6
_CYCLO_ORDER_CAP = 10_000


class RootFindingError(ArithmeticError):
    """Aberth iteration failed to converge; carries the partial state."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class QuadratureError(ArithmeticError):
    """Torus quadrature exhausted its doubling budget before the tolerance."""

    def __init__(self, message, best=None, error=None):
        super().__init__(message)
        self.best = best
        self.error = error


@dataclass(frozen=True)
class RootSet:
    """All complex roots (with multiplicity) of the stripped polynomial part."""

    roots: tuple[complex, ...]
    leading_coeff_abs: float
    degree: int
    iterations: int
    residual: float


@dataclass(frozen=True)
class MeasureReport:
    mahler: float
    euclidean_mahler: float | None   # None only for the zero polynomial
    residual: float
    iterations: int


@dataclass(frozen=True)
class TorusReport:
    value: float
    error_estimate: float
    grid: int


# ----------------------------------------------------------------------
# exact helpers on dense integer/rational coefficient lists (ascending)
# ----------------------------------------------------------------------

def _strip_unit(p: HalfLaurent1) -> list[int]:
    """Ascending integer coefficients after unit stripping.

    The monomial unit t^(lo/2) is divided out first.  If every remaining
    exponent is integral the coefficients are indexed by powers of t; only a
    genuine mix of half- and whole-integer exponents falls back to powers of
    t^{1/2}.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no root data")
    lo = p.min_dexp()
    diffs = {d - lo for d in p.terms}
    step = 2 if all(d % 2 == 0 for d in diffs) else 1
    out = [0] * (max(diffs) // step + 1)
    for d, c in p.terms.items():
        out[(d - lo) // step] = c
    return out


def _q_trim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _q_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / b[-1]
        if c:
            q[i] = c
            for j, bc in enumerate(b):
                a[i + j] -= c * bc
    return q, _q_trim(a)

def _q_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a, b = _q_trim(list(a)), _q_trim(list(b))
    while b:
        _, r = _q_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _q_derivative(a: Sequence[Fraction]) -> list[Fraction]:
    return _q_trim([a[i] * i for i in range(1, len(a))])


def _to_primitive_int(a: Sequence[Fraction]) -> list[int]:
    den = math.lcm(*(c.denominator for c in a)) if a else 1
    ints = [int(c * den) for c in a]
    g = 0
    for c in ints:
        g = math.gcd(g, abs(c))
    g = g or 1
    sign = 1 if ints[-1] > 0 else -1
    return [sign * c // g for c in ints]


def square_free_factors(coeffs: Sequence[int]) -> list[tuple[list[int], int]]:
    """Yun's square-free decomposition; returns primitive (factor, multiplicity)."""
    f = _q_trim([Fraction(c) for c in coeffs])
    if len(f) <= 1:
        return []
    fp = _q_derivative(f)
    g = _q_gcd(f, fp)
    if len(g) <= 1:
        return [(_to_primitive_int(f), 1)]
    out = []
    w, _ = _q_divmod(f, g)
    y, _ = _q_divmod(fp, g)
    i = 1
    while len(w) > 1:
        z = _q_trim([yc - wc for yc, wc in
                     zip(y + [Fraction(0)] * len(w), _q_derivative(w) + [Fraction(0)] * len(y))])
        h = _q_gcd(w, z)
        if len(h) > 1:
            out.append((_to_primitive_int(h), i))
        w, _ = _q_divmod(w, h)
        y, _ = _q_divmod(z, h)
        i += 1
    return out


def _int_divmod_exact(a: Sequence[int], b: Sequence[int]):
    """Division of integer polynomials, exact or ValueError."""
    qa, r = _q_divmod([Fraction(c) for c in a], [Fraction(c) for c in b])
    if r:
        raise ValueError("inexact division")
    if any(c.denominator != 1 for c in qa):
        raise ValueError("non-integer quotient")
    return [int(c) for c in qa]


def _poly_eval_int(coeffs: Sequence[int], x: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


# ----------------------------------------------------------------------
# Aberth-Ehrlich simultaneous iteration
# ----------------------------------------------------------------------

def _aberth(coeffs: Sequence[int], seed: int):
    """Roots of a square-free integer polynomial; returns (roots, iterations)."""
    d = len(coeffs) - 1
    if d <= 0:
        return np.zeros(0, dtype=complex), 0
    if d == 1:
        return np.array([-coeffs[0] / coeffs[1]], dtype=complex), 0
    a = np.array([float(c) for c in coeffs], dtype=np.complex128)
    da = a[1:] * np.arange(1, d + 1)
    rng = random.Random(seed)
    cauchy = 1.0 + max(abs(a[:-1])) / abs(a[-1])
    total_iters = 0
    for attempt in range(_RESTARTS):
        radius = min(cauchy, max(0.25, abs(a[0] / a[-1]) ** (1.0 / d)))
        angles = 2.0 * np.pi * (np.arange(d) + 0.37) / d
        jitter = np.array([rng.uniform(-0.05, 0.05) + 1j * rng.uniform(-0.05, 0.05)
                           for _ in range(d)])
        z = radius * np.exp(1j * angles) * (1.0 + 0.1 * attempt) + jitter
        for it in range(_ITERATION_CAP):
            total_iters += 1
            pv = np.polyval(a[::-1], z)
            dv = np.polyval(da[::-1], z)
            dv = np.where(dv == 0, 1e-300, dv)
            w = pv / dv
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            denom = 1.0 - w * inv.sum(axis=1)
            denom = np.where(denom == 0, 1e-300, denom)
            step = w / denom
            z = z - step
            if np.all(np.abs(step) < _CONVERGE_EPS * (1.0 + np.abs(z))):
                return z, total_iters
    raise RootFindingError(
        f"Aberth iteration did not converge for degree {d}",
        partial=tuple(sorted(map(complex, z), key=lambda r: (abs(r), cmath.phase(r)))))


def roots(p: HalfLaurent1) -> RootSet:
    """All complex roots of p after stripping its monomial unit.

    Deterministic: roots are sorted by (modulus, argument) and iteration seeds
    derive from the coefficients.
    """
    coeffs = _strip_unit(p)
    lead = abs(coeffs[-1])
    factors = square_free_factors(coeffs)
    all_roots: list[complex] = []
    iters = 0
    for fac, mult in factors:
        seed = hash((tuple(fac), mult)) & 0x7FFFFFFF
        rts, it = _aberth(fac, seed)
        iters += it
        for r in rts:
            all_roots.extend([complex(r)] * mult)
    all_roots.sort(key=lambda r: (abs(r), cmath.phase(r)))
    degree = len(coeffs) - 1
    if len(all_roots) != degree:
        raise RootFindingError(
            f"found {len(all_roots)} roots for degree {degree}",
            partial=tuple(all_roots))
    residual = _reconstruction_residual(coeffs, all_roots)
    return RootSet(roots=tuple(all_roots), leading_coeff_abs=float(lead),
                   degree=degree, iterations=iters, residual=residual)


def _reconstruction_residual(coeffs: Sequence[int], rts: Sequence[complex]) -> float:
    lead = abs(coeffs[-1])
    worst = 0.0
    for j in range(5):
        x = cmath.exp(2j * math.pi * (j + 0.3) / 5)
        direct = abs(_poly_eval_int(coeffs, x))
        recon = lead
        for r in rts:
            recon *= abs(x - r)
        worst = max(worst, abs(direct - recon) / max(1.0, direct))
    return worst


def mahler_measure(p: HalfLaurent1) -> MeasureReport:
    """M(p) and the euclidean variant M_e(p) (root product without |lead|)."""
    if p.is_zero():
        return MeasureReport(mahler=0.0, euclidean_mahler=None, residual=0.0,
                             iterations=0)
    rs = roots(p)
    prod = 1.0
    for r in rs.roots:
        prod *= max(abs(r), 1.0)
    return MeasureReport(mahler=rs.leading_coeff_abs * prod,
                         euclidean_mahler=prod,
                         residual=rs.residual, iterations=rs.iterations)


# ----------------------------------------------------------------------
# cyclotomic products (Kronecker certification)
# ----------------------------------------------------------------------

_cyclotomic_cache: dict[int, list[int]] = {}


def _cyclotomic(n: int) -> list[int]:
    if n in _cyclotomic_cache:
        return _cyclotomic_cache[n]
    f = [-1] + [0] * (n - 1) + [1]          # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            f = _int_divmod_exact(f, _cyclotomic(d))
    _cyclotomic_cache[n] = f
    return f


def is_cyclotomic_product(p: HalfLaurent1) -> bool:
    """True iff p is +- a monomial times a product of cyclotomic polynomials.

    A numeric screen (every root within 1e-8 of the unit circle, monic up to
    sign) is confirmed by exact division against candidate cyclotomics whose
    orders are inferred from the root arguments.
    """
    coeffs = _strip_unit(p)
    if abs(coeffs[-1]) != 1 or abs(coeffs[0]) != 1:
        return False
    if len(coeffs) == 1:
        return True
    rs = roots(p)
    if any(abs(abs(r) - 1.0) > 1e-8 for r in rs.roots):
        return False
    orders = set()
    for r in rs.roots:
        theta = cmath.phase(r) / (2 * math.pi) % 1.0
        frac = Fraction(theta).limit_denominator(_CYCLO_ORDER_CAP)
        orders.add(frac.denominator)
    work = list(coeffs)
    if work[-1] < 0:
        work = [-c for c in work]
    for n in sorted(orders):
        if n > _CYCLO_ORDER_CAP:
            return False
        phi = _cyclotomic(n)
        while len(work) >= len(phi) > 1:
            try:
                work = _int_divmod_exact(work, phi)
            except ValueError:
                break
    return work == [1] or work == [-1]


# ----------------------------------------------------------------------
# torus quadrature
# ----------------------------------------------------------------------

def _double_until_agreement(evaluate: Callable[[int], float], tol: float,
                            n0: int, nmax: int) -> tuple[float, float, int]:
    prev = None
    n = n0
    while n <= nmax:
        val = evaluate(n)
        if prev is not None:
            err = abs(val - prev)
            if err <= 0.5 * tol * max(1.0, abs(val)):
                return val, err, n
        prev = val
        n *= 2
    raise QuadratureError(
        f"quadrature did not reach tolerance {tol} by {nmax} points",
        best=prev, error=None)


def _grid(n: int, offset: float = 0.5) -> np.ndarray:
    return (np.arange(n) + offset) / n


def _eval_1var_on_grid(p: HalfLaurent1, theta: np.ndarray) -> np.ndarray:
    """Values of p on the circle, reading doubled exponents as integer powers.

    Replacing t^{1/2} by the integration variable leaves the measure unchanged
    (Mahler measure is invariant under t -> t^k substitutions).
    """
    vals = np.zeros_like(theta, dtype=np.complex128)
    w = np.exp(2j * np.pi * theta)
    for d, c in sorted(p.terms.items()):
        vals += float(c) * w ** d
    return vals


def mahler_linear_z(a: HalfLaurent1, b: HalfLaurent1, tol: float = 1e-3,
                    nmax: int = 2 ** 16) -> float:
    """Mahler measure of A(x) + B(x) z via the inner Jensen integral.

    Integrating log|A + Bz| over the z-circle first gives log max(|A|, |B|),
    so only a 1-dimensional circle mean remains.
    """
    if a.is_zero() and b.is_zero():
        raise ValueError("A and B must not both be zero")

    def evaluate(n: int) -> float:
        theta = _grid(n)
        va = np.abs(_eval_1var_on_grid(a, theta))
        vb = np.abs(_eval_1var_on_grid(b, theta))
        m = np.maximum(va, vb)
        if np.any(m == 0):
            theta = _grid(n, offset=0.5 + 0.391)
            va = np.abs(_eval_1var_on_grid(a, theta))
            vb = np.abs(_eval_1var_on_grid(b, theta))
            m = np.maximum(va, vb)
        return float(np.mean(np.log(m)))

    mean, _err, _n = _double_until_agreement(evaluate, tol, 2 ** 8, nmax)
    return math.exp(mean)


def mahler_torus_2var(p: HalfLaurentN, tol: float = 1e-3,
                      nmax: int = 2 ** 13) -> TorusReport:
    """exp of the mean of log|p| over the 2-torus, by offset-grid doubling.

    Failure to converge raises QuadratureError rather than returning a bad
    value.  The per-dimension cap defaults to 2^13 (a 2^26-point top grid).
    """
    if len(p.vars) != 2:
        raise ValueError(f"need a 2-variable polynomial, got variables {p.vars}")
    if p.is_zero():
        raise ValueError("zero polynomial")

    slices = p.slice_by(p.vars[1])   # second-variable dexp -> poly in first var

    def evaluate(n: int) -> float:
        for offset in (0.5, 0.5 + 0.391, 0.5 + 0.173):
            theta1 = _grid(n, offset)
            theta2 = _grid(n, offset)
            w2 = np.exp(2j * np.pi * theta2)
            cols = {d: _eval_1var_on_grid(
                        HalfLaurent1({k[0]: c for k, c in sl.terms.items()}), theta1)
                    for d, sl in slices.items()}
            powers = {d: w2 ** d for d in slices}
            total = 0.0
            bad = False
            block = max(1, (1 << 22) // n)
            for start in range(0, n, block):
                stop = min(n, start + block)
                acc = np.zeros((stop - start, n), dtype=np.complex128)
                for d in sorted(slices):
                    acc += cols[d][start:stop, None] * powers[d][None, :]
                mags = np.abs(acc)
                if np.any(mags == 0):
                    bad = True
                    break
                total += float(np.sum(np.log(mags)))
            if not bad:
                return total / (n * n)
        raise QuadratureError(f"grid of size {n} keeps hitting zeros of p")

    mean, err, n = _double_until_agreement(evaluate, tol, 2 ** 8, nmax)
    return TorusReport(value=math.exp(mean), error_estimate=err, grid=n)


def linear_z_poly(a: HalfLaurent1, b: HalfLaurent1) -> HalfLaurentN:
    """Assemble A(x) + B(x)*z as a 2-variable polynomial."""
    terms: dict[tuple, int] = {}
    for d, c in a.terms.items():
        terms[(d, 0)] = terms.get((d, 0), 0) + c
    for d, c in b.terms.items():
        terms[(d, 2)] = terms.get((d, 2), 0) + c
    return HalfLaurentN(("x", "z"), terms)
