"""Small-modulus L-function engine.

Hurwitz zeta by Euler-Maclaurin, Dirichlet L-values built on it, the
reflection and functional-equation factors, a real-valued rotation of the
L-function on the critical line, sign-change zero scanning with gap
statistics, the signed triple-product ratio at a zero, and the desk-scale
smoothing weights (error-function step, Gaussian window, its oscillatory
transform and Mellin integral).
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

import numpy as np
from scipy.special import loggamma as _sc_loggamma

from .characters import DirichletCharacter
from .numerics import ConvergenceError, DomainError, integrate

_TWO_PI = 2.0 * math.pi

# B_2 .. B_24 as exact fractions, enough for the correction orders we allow
_BERNOULLI = (
    1.0 / 6,
    -1.0 / 30,
    1.0 / 42,
    -1.0 / 30,
    5.0 / 66,
    -691.0 / 2730,
    7.0 / 6,
    -3617.0 / 510,
    43867.0 / 798,
    -174611.0 / 330,
    854513.0 / 138,
    -236364091.0 / 2730,
)


class BranchError(RuntimeError):
    """Continuity or realness of the rotated line values broke down."""


# ---------------------------------------------------------------------------
# Hurwitz zeta


def _effective_shift(shift: int, t_abs: float) -> int:
    # Euler-Maclaurin needs the shifted argument to dominate |im s|
    return max(shift, int(0.9 * t_abs) + 20)


def _hurwitz_grid(s: np.ndarray, a: float, shift: int, order: int) -> np.ndarray:
    """Euler-Maclaurin evaluation for an array of s, common shift."""
    n_shift = _effective_shift(shift, float(np.max(np.abs(s.imag))))
    n = np.arange(n_shift, dtype=np.float64) + a
    direct = np.exp(-np.outer(np.log(n), s)).sum(axis=0)
    w = n_shift + a
    lw = math.log(w)
    w_pow = np.exp(-s * lw)
    out = direct + w * w_pow / (s - 1.0) + 0.5 * w_pow
    poch = s.copy()
    w_fall = w_pow / w
    fact = 2.0
    for k in range(1, order + 1):
        out = out + (_BERNOULLI[k - 1] / fact) * poch * w_fall
        poch = poch * (s + (2 * k - 1)) * (s + 2 * k)
        w_fall = w_fall / (w * w)
        fact *= (2 * k + 1) * (2 * k + 2)
    return out


def hurwitz_zeta(s: complex, a: float, shift: int = 30, order: int = 12) -> complex:
    """zeta(s, a) = sum over n >= 0 of (n+a)^(-s), continued in s.

    The shift grows automatically with |im s| so the stated error
    (relative 1e-12 for |im s| up to 1e3) holds; ``shift`` is a floor.
    """
    if not 0.0 < a <= 1.0:
        raise DomainError("a must lie in (0, 1]")
    if not 1 <= order <= len(_BERNOULLI):
        raise DomainError(f"order must be in 1..{len(_BERNOULLI)}")
    s = complex(s)
    if s == 1.0:
        raise DomainError("pole at s = 1")
    return complex(_hurwitz_grid(np.array([s]), a, shift, order)[0])


def hurwitz_zeta_ds(s: complex, a: float, shift: int = 30, order: int = 12) -> complex:
    """d/ds of hurwitz_zeta, term-by-term on the same expansion."""
    if not 0.0 < a <= 1.0:
        raise DomainError("a must lie in (0, 1]")
    s = complex(s)
    if s == 1.0:
        raise DomainError("pole at s = 1")
    n_shift = _effective_shift(shift, abs(s.imag))
    total = 0j
    for n in range(n_shift):
        ln = math.log(n + a)
        total += -ln * cmath.exp(-s * ln)
    w = n_shift + a
    lw = math.log(w)
    w_pow = cmath.exp(-s * lw)
    total += w * w_pow * (-lw / (s - 1.0) - 1.0 / (s - 1.0) ** 2)
    total += -lw * w_pow / 2.0
    poch = s
    psi_sum = 1.0 / s
    w_fall = w_pow / w
    fact = 2.0
    for k in range(1, order + 1):
        term = (_BERNOULLI[k - 1] / fact) * poch * w_fall
        total += term * (psi_sum - lw)
        psi_sum += 1.0 / (s + (2 * k - 1)) + 1.0 / (s + 2 * k)
        poch = poch * (s + (2 * k - 1)) * (s + 2 * k)
        w_fall = w_fall / (w * w)
        fact *= (2 * k + 1) * (2 * k + 2)
    return total


# ---------------------------------------------------------------------------
# Dirichlet L


def _l_series_parts(
    chi: DirichletCharacter, s: complex, shift: int, order: int, want_ds: bool
) -> complex:
    """q^s * L(s, chi) near s = 1 with the shifted-pole terms cancelled.

    Only valid for nonprincipal chi; the 1/(s-1) coefficients sum to zero
    across the character, so the pole is removed term by term and the
    remainder expanded in powers of (s - 1).
    """
    q = chi.modulus
    x = s - 1.0
    n_shift = _effective_shift(shift, abs(s.imag))
    total = 0j
    pole_val = 0j
    pole_ds = 0j
    for a in range(1, q + 1):
        c = chi(a)
        if c == 0:
            continue
        aq = a / q
        # regular Euler-Maclaurin pieces (direct, midpoint, Bernoulli tail)
        part = 0j
        part_ds = 0j
        for n in range(n_shift):
            ln = math.log(n + aq)
            e = cmath.exp(-s * ln)
            part += e
            part_ds += -ln * e
        w = n_shift + aq
        lw = math.log(w)
        w_pow = cmath.exp(-s * lw)
        part += 0.5 * w_pow
        part_ds += -0.5 * lw * w_pow
        poch = s
        psi_sum = 1.0 / s
        w_fall = w_pow / w
        fact = 2.0
        for k in range(1, order + 1):
            term = (_BERNOULLI[k - 1] / fact) * poch * w_fall
            part += term
            part_ds += term * (psi_sum - lw)
            psi_sum += 1.0 / (s + (2 * k - 1)) + 1.0 / (s + 2 * k)
            poch = poch * (s + (2 * k - 1)) * (s + 2 * k)
            w_fall = w_fall / (w * w)
            fact *= (2 * k + 1) * (2 * k + 2)
        total += c * (part_ds if want_ds else part)
        # pole factor w^{1-s}/(s-1) = e^{-x lw}/x: expand past the cancelled 1/x
        pv = 0j
        pd = 0j
        lw_pow = 1.0
        factm = 1.0
        for m in range(1, 16):
            lw_pow *= -lw
            factm *= m
            pv += lw_pow * x ** (m - 1) / factm
            if m >= 2:
                pd += (m - 1) * lw_pow * x ** (m - 2) / factm
        pole_val += c * pv
        pole_ds += c * pd
    return total + (pole_ds if want_ds else pole_val)


def l_function(s: complex, chi: DirichletCharacter, shift: int = 30, order: int = 12) -> complex:
    """L(s, chi) = q^(-s) sum_a chi(a) zeta(s, a/q).

    At s = 1 a nonprincipal character is evaluated by the pole-cancelled
    expansion; a principal one is a genuine pole.
    """
    s = complex(s)
    q = chi.modulus
    if chi.is_principal and s == 1.0:
        raise DomainError("pole at s = 1 for the principal character")
    if not chi.is_principal and abs(s - 1.0) < 1e-3:
        return cmath.exp(-s * math.log(q)) * _l_series_parts(chi, s, shift, order, False)
    total = 0j
    for a in range(1, q + 1):
        c = chi(a)
        if c != 0:
            total += c * hurwitz_zeta(s, a / q, shift, order)
    return cmath.exp(-s * math.log(q)) * total


def l_function_ds(s: complex, chi: DirichletCharacter, shift: int = 30, order: int = 12) -> complex:
    """d/ds L(s, chi), with the same pole-cancelled route near s = 1."""
    s = complex(s)
    q = chi.modulus
    lq = math.log(q)
    if chi.is_principal and s == 1.0:
        raise DomainError("pole at s = 1 for the principal character")
    if not chi.is_principal and abs(s - 1.0) < 1e-3:
        reg = _l_series_parts(chi, s, shift, order, True)
        return cmath.exp(-s * lq) * reg - lq * l_function(s, chi, shift=shift, order=order)
    total = 0j
    for a in range(1, q + 1):
        c = chi(a)
        if c != 0:
            total += c * hurwitz_zeta_ds(s, a / q, shift, order)
    return cmath.exp(-s * lq) * total - lq * l_function(s, chi, shift=shift, order=order)


# ---------------------------------------------------------------------------
# reflection and functional-equation factors


def vartheta(s: complex) -> complex:
    """zeta(s) = vartheta(s) zeta(1-s): 2 (2 pi)^(s-1) Gamma(1-s) sin(pi s / 2)."""
    s = complex(s)
    if s.imag == 0 and s.real >= 1 and s.real == int(s.real):
        raise DomainError("Gamma pole")
    # log-space to survive |im s| up to a few hundred
    lg = complex(_sc_loggamma(1.0 - s))
    return 2.0 * cmath.exp((s - 1.0) * math.log(_TWO_PI) + lg) * cmath.sin(
        math.pi * s / 2.0
    )


def gauss_sum(chi: DirichletCharacter) -> complex:
    from .characters import gauss_sum as _gs

    return _gs(chi)


def _root_number(theta: DirichletCharacter) -> tuple[complex, float]:
    """(epsilon, half_arg) for the completed-equation phase on the line."""
    q = theta.modulus
    tau = gauss_sum(theta)
    if theta.parity == 1:
        return tau / math.sqrt(q), 0.25
    return -1j * tau / math.sqrt(q), 0.75


def z_factor(s: complex, theta: DirichletCharacter) -> complex:
    """Ratio L(s, theta) / L(1-s, conj theta) for primitive theta."""
    if not theta.primitive:
        raise DomainError("z_factor needs a primitive character")
    s = complex(s)
    q = theta.modulus
    tau = gauss_sum(theta)
    base = cmath.exp((s - 0.5) * math.log(math.pi) - s * math.log(q))
    if theta.parity == 1:
        num, den = (1.0 - s) / 2.0, s / 2.0
        front: complex = tau
    else:
        num, den = (2.0 - s) / 2.0, (1.0 + s) / 2.0
        front = -1j * tau
    for pole_arg in (num, den):
        if pole_arg.imag == 0 and pole_arg.real <= 0 and pole_arg.real == int(pole_arg.real):
            raise DomainError("Gamma pole in the equation factor")
    return front * base * cmath.exp(complex(_sc_loggamma(num)) - complex(_sc_loggamma(den)))


def _arg_z_line(t: np.ndarray, theta: DirichletCharacter) -> np.ndarray:
    """Continuous arg Z(1/2 + it) along the line (vectorized in t)."""
    q = theta.modulus
    eps, half_arg = _root_number(theta)
    lg = _sc_loggamma(half_arg + 0.5j * t)
    return cmath.phase(eps) + t * math.log(math.pi / q) - 2.0 * np.imag(lg)


def _l_line(theta: DirichletCharacter, t: np.ndarray, shift: int = 30) -> np.ndarray:
    """L(1/2 + it, theta) over a t-grid, shared Euler-Maclaurin shift."""
    q = theta.modulus
    s = 0.5 + 1j * t
    total = np.zeros(len(t), dtype=np.complex128)
    for a in range(1, q + 1):
        c = theta(a)
        if c != 0:
            total += c * _hurwitz_grid(s, a / q, shift, 12)
    return np.exp(-s * math.log(q)) * total


def _m_raw_line(theta: DirichletCharacter, t: np.ndarray) -> np.ndarray:
    """Rotated line values exp(-i arg Z / 2) L(1/2+it) before sign anchoring."""
    vals = np.exp(-0.5j * _arg_z_line(t, theta)) * _l_line(theta, t)
    worst = float(np.max(np.abs(vals.imag))) if len(vals) else 0.0
    if worst > 1e-8:
        raise BranchError(f"rotation left imaginary residue {worst:.3e}")
    return vals.real


def _anchor_sign(theta: DirichletCharacter, t0: float) -> int:
    """Sign normalizing the rotation angle into (-pi/2, pi/2] at t0."""
    arg_y = -0.5 * float(_arg_z_line(np.array([t0]), theta)[0])
    k = -round(arg_y / math.pi)
    return -1 if k % 2 else 1


def m_function(t: float, psi: DirichletCharacter) -> float:
    """Real-valued rotation of L(1/2+it) under the continuous branch."""
    if t <= 0:
        raise DomainError("t must be positive")
    if not psi.primitive:
        raise DomainError("m_function needs a primitive character")
    return float(_m_raw_line(psi, np.array([float(t)]))[0])


# ---------------------------------------------------------------------------
# zero scanning


@dataclass(frozen=True)
class CriticalZero:
    """A bracketed simple sign change of the rotated line value."""

    gamma: float
    radius: float

    def __post_init__(self):
        if not self.radius < 1e-8:
            raise DomainError("bracket radius must be below 1e-8")
        if self.gamma <= 0:
            raise DomainError("ordinate must be positive")


@dataclass(frozen=True)
class ScanResult(Sequence):
    """Zeros found on a line segment plus any suspect flat intervals."""

    zeros: tuple[CriticalZero, ...]
    flagged: tuple[tuple[float, float], ...] = ()
    panels: int = 1

    def __len__(self) -> int:
        return len(self.zeros)

    def __getitem__(self, i):
        return self.zeros[i]

    def __iter__(self) -> Iterator[CriticalZero]:
        return iter(self.zeros)


_PANEL_POINTS = 4000


def find_zeros(
    psi: DirichletCharacter, t_min: float, t_max: float, step: float = 0.02
) -> ScanResult:
    """Sign-change scan refined by bisection to bracket radius 1e-9.

    The grid is split into panels; each panel re-anchors the rotation sign
    at its own origin and panels are stitched by comparing the shared
    endpoint value.  A grid point where the value dips near zero without a
    sign change is flagged as a suspected double zero, never dropped
    silently.
    """
    if not psi.primitive:
        raise DomainError("scan needs a primitive character")
    if not 0 < t_min < t_max:
        raise DomainError("need 0 < t_min < t_max")
    if not 0 < step <= 0.05:
        raise DomainError("step must be positive and at most 0.05")
    n_pts = int(math.floor((t_max - t_min) / step)) + 1
    grid = t_min + step * np.arange(n_pts)
    if grid[-1] < t_max - 1e-12:
        grid = np.append(grid, t_max)

    vals = np.empty(len(grid))
    n_panels = 0
    start = 0
    prev_edge = None
    while start < len(grid):
        stop = min(start + _PANEL_POINTS, len(grid))
        seg = grid[start:stop]
        sign = _anchor_sign(psi, float(seg[0]))
        seg_vals = sign * _m_raw_line(psi, seg)
        if prev_edge is not None:
            # stitch: the shared ordinate was evaluated by both panels
            if prev_edge * seg_vals[0] < 0:
                seg_vals = -seg_vals
            if abs(prev_edge - seg_vals[0]) > 1e-9 * (1.0 + abs(prev_edge)):
                raise BranchError("panel stitch mismatch")
            # drop the duplicated point
            vals[start:stop] = seg_vals
        else:
            vals[start:stop] = seg_vals
        prev_edge = float(seg_vals[-1])
        n_panels += 1
        if stop == len(grid):
            break
        start = stop - 1  # overlap one point

    zeros = []
    flagged = []
    scale = float(np.median(np.abs(vals))) or 1.0
    for i in range(len(grid) - 1):
        a, b = float(grid[i]), float(grid[i + 1])
        fa, fb = float(vals[i]), float(vals[i + 1])
        if fa == 0.0:
            prev = float(vals[i - 1]) if i > 0 else -fb
            fa = math.copysign(1e-300, prev)
        if fa * fb < 0:
            lo, hi, flo = a, b, fa
            while (hi - lo) / 2.0 >= 1e-9:
                mid = 0.5 * (lo + hi)
                fm = m_function(mid, psi)
                if flo * fm <= 0:
                    hi = mid
                else:
                    lo, flo = mid, fm
            zeros.append(CriticalZero(0.5 * (lo + hi), (hi - lo) / 2.0))
        elif 0 < i and abs(vals[i]) < 1e-7 * scale and fa * float(vals[i - 1]) > 0:
            flagged.append((float(grid[i - 1]), b))
    return ScanResult(tuple(zeros), tuple(flagged), n_panels)


@dataclass(frozen=True)
class GapStats:
    count: int
    mean: float
    minimum: float
    maximum: float
    histogram: tuple[tuple[float, float, int], ...]
    note: str = ""


def gap_stats(zeros: Union[ScanResult, Iterable[CriticalZero]], bins: int = 10) -> GapStats:
    """Consecutive-gap summary; flagged intervals are excluded and noted."""
    note = ""
    if isinstance(zeros, ScanResult) and zeros.flagged:
        note = f"{len(zeros.flagged)} flagged interval(s) excluded from statistics"
    gammas = sorted(z.gamma for z in zeros)
    if len(gammas) < 2:
        raise DomainError("need at least two zeros for gap statistics")
    gaps = np.diff(gammas)
    edges = np.linspace(0.0, float(gaps.max()), bins + 1)
    counts, _ = np.histogram(gaps, bins=edges)
    hist = tuple(
        (float(edges[i]), float(edges[i + 1]), int(counts[i])) for i in range(bins)
    )
    return GapStats(len(gaps), float(gaps.mean()), float(gaps.min()), float(gaps.max()), hist, note)


def c_star(rho: CriticalZero, psi: DirichletCharacter, alpha_hat: float) -> float:
    """Signed triple-product ratio at a zero with shifts i j alpha_hat.

    -i M(rho+b1) M(rho+b2) M(rho+b3) / M'(rho), where b_j = i j alpha_hat and
    the derivative is a central difference along the line (h = 1e-6).  The
    value is branch-independent: flipping the rotation sign flips all four
    factors.
    """
    if alpha_hat <= 0:
        raise DomainError("alpha_hat must be positive")
    g = rho.gamma
    h = 1e-6
    pts = np.array([g + alpha_hat, g + 2 * alpha_hat, g + 3 * alpha_hat, g + h, g - h])
    vals = np.exp(-0.5j * _arg_z_line(pts, psi)) * _l_line(psi, pts)
    m1, m2, m3, m_up, m_dn = (complex(v) for v in vals)
    m_prime = -1j * (m_up - m_dn) / (2.0 * h)
    if abs(m_prime) < 1e-10:
        raise DomainError("degenerate zero: derivative vanishes")
    val = -1j * m1 * m2 * m3 / m_prime
    flipped = -1j * (-m1) * (-m2) * (-m3) / (-m_prime)
    if abs(val - flipped) > 1e-12 * (1.0 + abs(val)):
        raise BranchError("branch dependence detected in triple product")
    if abs(val.imag) > 1e-6:
        raise BranchError(f"triple product not real: residue {val.imag:.3e}")
    return val.real


# ---------------------------------------------------------------------------
# smoothing weights


@dataclass(frozen=True)
class WeightParams:
    """Desk-scale stand-ins for the smoothing parameters.

    t0 of at least 10 * L2 keeps the window comfortably oscillatory; the
    narrow-window accuracy of the transform, by contrast, improves only as
    t0 / L2^2 shrinks.
    """

    S: float = 10.0
    L2: float = 50.0
    t0: float = 2000.0

    def __post_init__(self):
        if self.S <= 0 or self.L2 <= 0 or self.t0 <= 0:
            raise DomainError("all weight parameters must be positive")

    @property
    def s0(self) -> complex:
        return 0.5 + _TWO_PI * 1j * self.t0


def g_weight(x: float, s_param: float) -> float:
    """Smooth step (1 + erf(S log x)) / 2; complements to 1 under x -> 1/x."""
    if x <= 0:
        raise DomainError("x must be positive")
    if s_param <= 0:
        raise DomainError("smoothing must be positive")
    return 0.5 * (1.0 + math.erf(s_param * math.log(x)))


def omega_weight(s: complex, p: WeightParams) -> complex:
    """Gaussian window sqrt(pi)/L2 * exp((s - s0)^2 / (4 L2^2))."""
    d = complex(s) - p.s0
    return math.sqrt(math.pi) / p.L2 * cmath.exp(d * d / (4.0 * p.L2 * p.L2))


def _u_cut(p: WeightParams) -> float:
    # truncate where the Gaussian factor drops below 1e-16
    return math.sqrt(16.0 * math.log(10.0)) / p.L2


def delta_fn(x: float, p: WeightParams, tol: float = 1e-12) -> complex:
    """Oscillatory transform of the window at frequency x, by quadrature."""
    if x <= 0:
        raise DomainError("x must be positive")
    umax = _u_cut(p)
    s0 = p.s0
    l2sq = p.L2 * p.L2

    def f(u):
        return np.exp(s0 * u - l2sq * u * u - _TWO_PI * 1j * x * (np.exp(u) - 1.0))

    res = integrate(f, -umax, 0.0, tol=tol / 2, max_panels=8192)
    res2 = integrate(f, 0.0, umax, tol=tol / 2, max_panels=8192)
    return res.value + res2.value


_GL15 = np.polynomial.legendre.leggauss(15)


def _delta_batch(xs: np.ndarray, p: WeightParams, x_top: float = 0.0) -> np.ndarray:
    """delta_fn over an array of x on one fixed phase-budgeted panel grid."""
    umax = _u_cut(p)
    x_top = max(x_top, float(np.max(xs)))
    total_phase = _TWO_PI * x_top * (math.exp(umax) - math.exp(-umax))
    n_panels = max(8, int(total_phase / 12.0) + 1)
    edges = np.linspace(-umax, umax, n_panels + 1)
    half = 0.5 * (edges[1] - edges[0])
    mids = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mids[:, None] + half * _GL15[0][None, :]).ravel()
    weights = (half * np.broadcast_to(_GL15[1], (n_panels, 15))).ravel()
    base = np.exp(p.s0 * nodes - (p.L2 * nodes) ** 2) * weights
    osc = np.exp(-_TWO_PI * 1j * np.outer(np.exp(nodes) - 1.0, xs))
    return base @ osc


def delta_mellin(s: complex, p: WeightParams, tol: float = 1e-9) -> complex:
    """Mellin integral of the transform over its effective support.

    The transform lives where log(x / t0) is within a few 1/L2 (narrow
    window, large t0) or where x - t0 is within a few L2 (wide window,
    decoherence of the slowly-turning phase); the x-range is the union of
    both, cut where the induced Gaussian drops below 1e-16.
    """
    s = complex(s)
    c = math.sqrt(40.0) / p.L2
    w_add = math.sqrt(40.0) * p.L2 / math.pi
    x_lo = max(1e-12, min(p.t0 * math.exp(-c), p.t0 - w_add))
    x_hi = max(p.t0 * math.exp(c), p.t0 + w_add)

    def f(x):
        x = np.asarray(x, dtype=np.float64)
        return _delta_batch(x, p, x_top=x_hi) * np.exp((s - 1.0) * np.log(x))

    res = integrate(f, x_lo, x_hi, tol=tol, max_panels=8192)
    return res.value


# ---------------------------------------------------------------------------
# export


def export_zeros_csv(
    path: str,
    scan: ScanResult,
    psi: DirichletCharacter,
    alpha_hat: float,
) -> int:
    """Write gamma, radius, c_star, forward_gap rows; returns the row count."""
    rows = []
    zs = list(scan)
    for i, z in enumerate(zs):
        gap = zs[i + 1].gamma - z.gamma if i + 1 < len(zs) else None
        try:
            cs = f"{c_star(z, psi, alpha_hat):.12g}"
        except (DomainError, BranchError, ConvergenceError):
            cs = ""
        rows.append(
            (f"{z.gamma:.12f}", f"{z.radius:.3e}", cs, f"{gap:.12f}" if gap else "")
        )
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(("gamma", "radius", "c_star", "forward_gap"))
        writer.writerows(rows)
    return len(rows)
