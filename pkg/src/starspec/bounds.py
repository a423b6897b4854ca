"""Eigenvalue bounds for starlike domains and the majorization machinery.

Each bound compares a scale-invariant functional of the normalized
eigenvalues of a domain, e.g. lambda_j V^{2/d} / G, with the same functional
of the unit ball's eigenvalues lambda_j(B) V(B)^{2/d}.  The ball value is
``bound_value``; when a computed spectrum is supplied the domain value is
``normalized_lhs`` and

* for maximum-type functionals (direction '<='): margin = bound - lhs;
* for minimum-type functionals (zeta, heat; direction '>='): margin = lhs - bound;

so margin >= 0 always means the inequality holds.
"""

from dataclasses import asdict, dataclass, field
import math
from typing import Optional

import numpy as np

from . import quadrature as quad
from .ball import ball_spectrum, ball_values
from .errors import InvalidArgument, InvalidDomain, Unsupported
from .factors import g_combo

# ---------------------------------------------------------------------------
# concave functionals


class ConcaveFunctional:
    """An increasing concave function Phi used in Phi-sums.

    Kinds: ``power`` (a^s, 0 < s <= 1), ``log``, ``neg_power`` (-a^s, s < 0),
    ``neg_exp`` (-exp(-t a), t > 0), ``sloshing_D`` (sqrt(a) coth(sqrt(a) L)),
    ``sloshing_N`` (sqrt(a) tanh(sqrt(a) L)), ``piecewise_linear`` (linear
    interpolation of samples, extended with the end slopes), ``threshold``
    (min(a, c)) and ``identity``.
    """

    def __init__(self, kind, param=None):
        self.kind = kind
        self.param = param
        if kind == "power" and not (0 < param <= 1):
            raise InvalidArgument(f"power exponent must lie in (0, 1], got {param}")
        if kind == "neg_power" and not param < 0:
            raise InvalidArgument(f"zeta exponent must be negative, got {param}")
        if kind in ("neg_exp", "sloshing_D", "sloshing_N") and not param > 0:
            raise InvalidArgument(f"{kind} parameter must be positive, got {param}")
        if kind == "piecewise_linear":
            xs, ys = (np.asarray(v, float) for v in param)
            if len(xs) < 2 or np.any(np.diff(xs) <= 0):
                raise InvalidArgument("piecewise-linear abscissae must be strictly increasing")
            slopes = np.diff(ys) / np.diff(xs)
            if np.any(slopes < -1e-12) or np.any(np.diff(slopes) > 1e-12):
                raise InvalidArgument("piecewise-linear samples are not increasing and concave")
            self._xs, self._ys, self._slopes = xs, ys, slopes
        if kind not in ("power", "log", "neg_power", "neg_exp", "sloshing_D", "sloshing_N",
                        "piecewise_linear", "threshold", "identity"):
            raise InvalidArgument(f"unknown functional kind {kind!r}")

    def __call__(self, a):
        a = np.asarray(a, dtype=float)
        k, p = self.kind, self.param
        if k == "identity":
            return a
        if k == "power":
            return a**p
        if k == "log":
            return np.log(a)
        if k == "neg_power":
            return -(a**p)
        if k == "neg_exp":
            return -np.exp(-p * a)
        if k == "threshold":
            return np.minimum(a, p)
        if k == "sloshing_N":
            return sloshing_phi(a, p, "N")
        if k == "sloshing_D":
            return sloshing_phi(a, p, "D")
        xs, ys, sl = self._xs, self._ys, self._slopes
        out = np.interp(a, xs, ys)
        out = np.where(a < xs[0], ys[0] + sl[0] * (a - xs[0]), out)
        return np.where(a > xs[-1], ys[-1] + sl[-1] * (a - xs[-1]), out)

    def domain_ok(self, a):
        a = np.asarray(a, float)
        if self.kind in ("log", "neg_power"):
            return bool(np.all(a > 0))
        if self.kind in ("power", "sloshing_D", "sloshing_N"):
            return bool(np.all(a >= 0))
        return True

    def check_concave(self, grid=None, rel_tol=1e-9):
        """Second-difference probe of monotonicity and concavity.

        Differences are compared with a rounding-noise floor so that
        functions that are nearly linear on the probe grid are not rejected.
        """
        if grid is None:
            grid = np.logspace(-6, 4, 2001)
        grid = np.asarray(grid, float)
        v = self(grid)
        if not np.all(np.isfinite(v)):
            return False
        eps = np.finfo(float).eps
        mag = np.maximum(np.abs(v[:-1]), np.abs(v[1:]))
        dv = np.diff(v)
        if np.any(dv < -8 * eps * mag):
            return False
        h = np.diff(grid)
        d1 = dv / h
        noise = 8 * eps * mag / h
        floor = noise[:-1] + noise[1:] + rel_tol * np.maximum(np.abs(d1[:-1]), np.abs(d1[1:]))
        return bool(np.all(np.diff(d1) <= floor))

    def __repr__(self):
        return f"ConcaveFunctional({self.kind!r}, {self.param!r})"


def sloshing_phi(a, L, kind):
    """sqrt(a) coth(sqrt(a) L) (kind 'D') or sqrt(a) tanh(sqrt(a) L) (kind 'N')."""
    if not L > 0:
        raise InvalidArgument(f"depth L must be positive, got {L}")
    a = np.asarray(a, dtype=float)
    r = np.sqrt(np.maximum(a, 0.0))
    x = r * L
    with np.errstate(divide="ignore", invalid="ignore"):
        if kind == "N":
            return np.where(x > 0, r * np.tanh(x), a * L)
        return np.where(x > 0, r / np.tanh(x), 1.0 / L + 0.0 * a)


def apply_concave(phi, values):
    """Phi applied to increasing positive values, after checking the contract."""
    v = np.asarray(values, float)
    if np.any(np.diff(v) < 0):
        raise InvalidArgument("values must be nondecreasing")
    if not phi.domain_ok(v):
        raise InvalidArgument(f"{phi!r} is not defined on all values")
    if phi.kind == "piecewise_linear":
        ConcaveFunctional("piecewise_linear", (phi._xs, phi._ys))  # re-validates
    elif not phi.check_concave():
        raise InvalidArgument(f"{phi!r} failed the concavity probe")
    return phi(v)


# ---------------------------------------------------------------------------
# functional specifications


@dataclass(frozen=True)
class Functional:
    """A scalar functional of the normalized eigenvalue list.

    ``name`` is one of sum, power_mean, geo_mean, zeta, heat, lambda1,
    lambda2, phi_sum.
    """

    name: str
    param: Optional[float] = None
    phi: Optional[ConcaveFunctional] = None

    @property
    def direction(self):
        return ">=" if self.name in ("zeta", "heat") else "<="

    @property
    def label(self):
        if self.name == "phi_sum" and self.phi is not None:
            return f"phi_sum[{self.phi.kind}:{self.phi.param}]"
        return self.name if self.param is None else f"{self.name}:{self.param:g}"

    def __call__(self, a):
        a = np.asarray(a, float)
        n, p = self.name, self.param
        if n == "sum":
            return float(np.sum(a))
        if n == "power_mean":
            return float(np.sum(a**p) ** (1.0 / p))
        if n == "geo_mean":
            return float(np.exp(np.mean(np.log(a))))
        if n == "zeta":
            return float(np.sum(a**p))
        if n == "heat":
            return float(np.sum(np.exp(-p * a)))
        if n == "lambda1":
            return float(a[0])
        if n == "lambda2":
            return float(a[1])
        if n == "phi_sum":
            return float(np.sum(self.phi(a)))
        raise InvalidArgument(f"unknown functional {n!r}")


def parse_functional(spec):
    """'sum', 'power_mean:0.5', 'geo_mean', 'zeta:-1', 'heat:0.1', 'lambda1', 'lambda2'."""
    if isinstance(spec, Functional):
        return spec
    if isinstance(spec, ConcaveFunctional):
        return Functional("phi_sum", phi=spec)
    name, _, arg = str(spec).partition(":")
    name = name.strip().lower()
    aliases = {"mu2": "lambda2", "power": "power_mean", "geometric_mean": "geo_mean", "product": "geo_mean"}
    name = aliases.get(name, name)
    param = float(arg) if arg else None
    if name == "power_mean":
        param = 1.0 if param is None else param
        if not 0 < param <= 1:
            raise InvalidArgument(f"power_mean exponent must lie in (0, 1], got {param}")
    elif name == "zeta":
        param = -1.0 if param is None else param
        if not param < 0:
            raise InvalidArgument(f"zeta exponent must be negative, got {param}")
    elif name == "heat":
        param = 1.0 if param is None else param
        if not param > 0:
            raise InvalidArgument(f"heat time must be positive, got {param}")
    elif name not in ("sum", "geo_mean", "lambda1", "lambda2"):
        raise InvalidArgument(f"unknown functional {spec!r}")
    return Functional(name, param)


# ---------------------------------------------------------------------------
# reports


@dataclass
class BoundReport:
    functional: str
    bc: str
    n: int
    bound_value: float
    direction: str
    factor: str
    factor_value: float
    normalized_lhs: Optional[float] = None
    margin: Optional[float] = None
    error_estimate: Optional[float] = None
    verdict: Optional[str] = None
    extra: dict = field(default_factory=dict)

    def attach(self, lhs, err, slack=3.0):
        self.normalized_lhs = float(lhs)
        self.error_estimate = float(err)
        if self.direction == "<=":
            self.margin = self.bound_value - self.normalized_lhs
        else:
            self.margin = self.normalized_lhs - self.bound_value
        self.verdict = "PASS" if self.margin >= -slack * self.error_estimate else "FAIL"
        return self

    @property
    def passed(self):
        return self.verdict == "PASS"

    def to_dict(self):
        return asdict(self)


def _values_and_errors(spectrum):
    if spectrum is None:
        return None, None
    if hasattr(spectrum, "values"):
        return np.asarray(spectrum.values, float), np.asarray(getattr(spectrum, "errors", 0 * spectrum.values), float)
    v = np.asarray(spectrum, float)
    return v, np.zeros_like(v)


def _propagate(fun, a, da):
    """Error of fun(a) from absolute errors da by one-sided perturbations.

    Every functional here is monotone in each argument, so its range over
    the box [a - da, a + da] is attained at the two corners.
    """
    lo = np.maximum(a - da, 1e-300)
    base = fun(a)
    return max(abs(fun(a + da) - base), abs(fun(lo) - base))


def _ball_scale(dim):
    return quad.ball_volume(dim) ** (2.0 / dim)


def dirichlet_bound(f, functional="sum", n=10, spectrum=None):
    """Dirichlet bound for a functional of lambda_1..lambda_n.

    lambda1 and lambda2 are normalized by G0, everything else by G.
    ``spectrum`` (DiscreteSpectrum or array of at least n values) attaches the
    domain side.
    """
    fn = parse_functional(functional)
    _check_n(n, 1)
    if fn.name == "lambda2" and n < 2:
        n = 2
    d = f.dim
    b = ball_values("dirichlet", d, n) * _ball_scale(d)
    use_g0 = fn.name in ("lambda1", "lambda2")
    g = f.g0 if use_g0 else f.g
    rep = BoundReport(fn.label, "dirichlet", n, fn(b), fn.direction, "G0" if use_g0 else "G", g)
    vals, errs = _values_and_errors(spectrum)
    if vals is not None:
        _attach(rep, fn, vals[:n], errs[:n], f.volume ** (2.0 / d) / g)
    return rep


def neumann_bound(f, functional="sum", n=10, spectrum=None):
    """Neumann bound for a functional of mu_2..mu_n (mu_1 = 0 is dropped), factor G."""
    fn = parse_functional(functional)
    _check_n(n, 2)
    if fn.name == "lambda1":
        raise InvalidArgument("the first Neumann eigenvalue is zero; use lambda2 (mu2)")
    d = f.dim
    if fn.name == "lambda2":
        # mu_2 is the first entry of the list that starts at j = 2
        fn = Functional("lambda1")
        label = "mu2"
    else:
        label = fn.label
    b = ball_values("neumann", d, n)[1:] * _ball_scale(d)
    rep = BoundReport(label, "neumann", n, fn(b), fn.direction, "G", f.g)
    vals, errs = _values_and_errors(spectrum)
    if vals is not None:
        _attach(rep, fn, vals[1:n], errs[1:n], f.volume ** (2.0 / d) / f.g)
    return rep


def _attach(rep, fn, vals, errs, scale):
    if len(vals) < rep.n - (1 if rep.bc == "neumann" else 0):
        raise InvalidArgument(f"spectrum has {len(vals)} values, {rep.n} needed")
    a = np.asarray(vals) * scale
    da = np.asarray(errs) * scale
    rep.attach(fn(a), _propagate(fn, a, da))


def _check_n(n, lo):
    if int(n) != n or n < lo:
        raise InvalidArgument(f"n must be an integer >= {lo}, got {n}")


def improved_dirichlet_bound(f, n=10, spectrum=None, bc="dirichlet"):
    """Per-mode bound sum_j lambda_j V^{2/d} <= sum_j lambda_j(B) V(B)^{2/d} G(alpha_j).

    The plain bound G * sum_j lambda_j(B) V(B)^{2/d} is reported in
    ``extra['plain_bound']``.  With bc='neumann' the sums run over j >= 2.
    """
    _check_n(n, 1 if bc == "dirichlet" else 2)
    d = f.dim
    sp = ball_spectrum(bc, d, n)
    start = 0 if bc == "dirichlet" else 1
    b = sp.values[start:] * _ball_scale(d)
    alpha = sp.alphas[start:]
    gj = np.array([g_combo(a, f) for a in alpha])
    bound = float(np.sum(b * gj))
    plain = float(f.g * np.sum(b))
    rep = BoundReport("improved_sum", bc, n, bound, "<=", "G(alpha)", float("nan"),
                      extra={"plain_bound": plain, "alphas": alpha.tolist(), "factors": gj.tolist()})
    vals, errs = _values_and_errors(spectrum)
    if vals is not None:
        fn = Functional("sum")
        _attach(rep, fn, vals[start:n], errs[start:n], f.volume ** (2.0 / d))
    return rep


# ---------------------------------------------------------------------------
# Robin


def check_robin_parameters(hbar, sigma):
    """Reject parameters outside the range the Robin bounds cover (hbar > 0, sigma >= 0)."""
    ctx = ("bound_engine", "robin_parameters")
    if sigma < 0:
        raise Unsupported("negative Robin parameters are outside the supported range (sigma >= 0)", context=ctx)
    if not hbar > 0:
        raise InvalidArgument("hbar must be positive", context=ctx)


def robin_parameters(f, hbar, sigma, first=True):
    """Scaled (hbar, sigma) at which the domain eigenvalue is compared.

    ``first=True`` gives (hbar Rbar / G0^{1/2}, sigma Rbar / G_Robin^{1/2}) with
    Rbar the radius of the ball of equal volume; otherwise
    (hbar V^{1/d} / G^{1/2}, sigma V^{1/d} / G_Robin^{1/2}).
    """
    check_robin_parameters(hbar, sigma)
    d = f.dim
    if first:
        rbar = (f.volume / quad.ball_volume(d)) ** (1.0 / d)
        return hbar * rbar / math.sqrt(f.g0), sigma * rbar / math.sqrt(f.g_robin)
    v = f.volume ** (1.0 / d)
    return hbar * v / math.sqrt(f.g), sigma * v / math.sqrt(f.g_robin)


def robin_first_bound(f, hbar=1.0, sigma=1.0, spectrum=None):
    """rho_1(Omega, scaled parameters) <= rho_1(B, hbar, sigma).

    ``spectrum`` must be computed at ``robin_parameters(f, hbar, sigma)``.
    """
    h, s = robin_parameters(f, hbar, sigma, first=True)
    b = ball_values("robin", f.dim, 1, hbar, sigma) if sigma > 0 else hbar**2 * ball_values("neumann", f.dim, 1)
    rep = BoundReport("robin_first", "robin", 1, float(b[0]), "<=", "G0,G_Robin", f.g0,
                      extra={"hbar": hbar, "sigma": sigma, "domain_hbar": h, "domain_sigma": s})
    vals, errs = _values_and_errors(spectrum)
    if vals is not None:
        rep.attach(vals[0], errs[0])
    return rep


def robin_bounds(f, hbar=1.0, sigma=1.0, n=10, phi="sum", spectrum=None):
    """Phi-sum of rho_j(Omega, hbar V^{1/d}/G^{1/2}, sigma V^{1/d}/G_Robin^{1/2}), j = 1..n.

    The ball side uses rho_j(B, hbar V(B)^{1/d}, sigma V(B)^{1/d}).  With
    sigma = 0 the ball values are the Neumann values scaled by the squared
    Planck constant, so the report matches the Neumann family exactly.
    """
    fn = parse_functional(phi)
    _check_n(n, 1)
    h, s = robin_parameters(f, hbar, sigma, first=False)
    d = f.dim
    vb = quad.ball_volume(d) ** (1.0 / d)
    hb, sb = hbar * vb, sigma * vb
    if sigma == 0:
        # same scale factor as the Neumann family, so hbar = 1 reproduces it exactly
        b = ball_values("neumann", d, n) * (hbar**2 * _ball_scale(d))
    else:
        b = ball_values("robin", d, n, hb, sb)
    rep = BoundReport(f"robin_{fn.label}", "robin", n, fn(b), fn.direction, "G,G_Robin", f.g,
                      extra={"hbar": hbar, "sigma": sigma, "domain_hbar": h, "domain_sigma": s,
                             "ball_hbar": hb, "ball_sigma": sb})
    vals, errs = _values_and_errors(spectrum)
    if vals is not None:
        _attach(rep, fn, vals[:n], errs[:n], 1.0)
    return rep


# ---------------------------------------------------------------------------
# sloshing


def sloshing_values(values, L, kind="N"):
    """Sloshing eigenvalues sqrt(a) tanh(sqrt(a) L) (kind 'N') or sqrt(a) coth(sqrt(a) L) ('D')."""
    kind = kind.upper()[0]
    if kind not in "DN":
        raise InvalidArgument("kind must be 'D' or 'N'")
    return sloshing_phi(values, L, kind)


def sloshing_bound(f, n=6, L=1.0, spectrum=None, kind="N"):
    """sum_{j=2}^n Phi_N(mu_j V^{2/d}/G) maximal at the ball (Dirichlet analogue from j = 1)."""
    if not L > 0:
        raise InvalidArgument(f"depth L must be positive, got {L}")
    phi = ConcaveFunctional("sloshing_N" if kind.upper().startswith("N") else "sloshing_D", L)
    if phi.kind == "sloshing_N":
        rep = neumann_bound(f, phi, n, spectrum)
    else:
        rep = dirichlet_bound(f, phi, n, spectrum)
    rep.functional = "sloshing_sum"
    rep.extra.update(L=L, kind=kind.upper()[0])
    return rep


# ---------------------------------------------------------------------------
# perturbations


class TrigProfile:
    """P(theta) = sum a_k cos(k theta) + b_k sin(k theta) with derivative."""

    def __init__(self, cos=(), sin=()):
        n = max(len(cos), len(sin), 1)
        self.a = np.zeros(n)
        self.b = np.zeros(n)
        self.a[: len(cos)] = cos
        self.b[: len(sin)] = sin
        self.b[0] = 0.0
        self.k = np.arange(n)

    @classmethod
    def parse(cls, text):
        """'cos:3', 'sin:2', 'const:-1' or sums like 'cos:3+0.5*sin:1'."""
        cos, sin = {}, {}
        for term in str(text).replace(" ", "").split("+"):
            coef = 1.0
            if "*" in term:
                c, term = term.split("*", 1)
                coef = float(c)
            kind, _, k = term.partition(":")
            if kind == "const":
                cos[0] = cos.get(0, 0.0) + coef * float(k or 1)
            elif kind in ("cos", "sin"):
                tgt = cos if kind == "cos" else sin
                kk = int(k)
                tgt[kk] = tgt.get(kk, 0.0) + coef
            else:
                raise InvalidArgument(f"cannot parse profile term {term!r}")
        n = max(list(cos) + list(sin) + [0]) + 1
        a = np.zeros(n)
        b = np.zeros(n)
        for k, v in cos.items():
            a[k] = v
        for k, v in sin.items():
            b[k] = v
        return cls(a, b)

    def __call__(self, t):
        kt = np.outer(np.atleast_1d(t), self.k)
        return np.cos(kt) @ self.a + np.sin(kt) @ self.b

    def derivative(self, t):
        kt = np.outer(np.atleast_1d(t), self.k)
        return -np.sin(kt) @ (self.k * self.a) + np.cos(kt) @ (self.k * self.b)


def perturb_disk_bounds(P, eps, n_quad=1024):
    """Upper bounds for Omega_eps = {r < 1 + eps P(theta)}.

    Returns a dict with ``lambda1`` = 1 + eps^2 avg[P'^2 / (1 + eps P)^2] (the
    bound on lambda_1 A / (j01^2 pi)), ``inertia`` = avg[(1+eps P)^4] /
    avg[(1+eps P)^2]^2 and ``sums`` = max of the two (the bound for
    eigenvalue sums and power means).
    """
    if isinstance(P, str):
        P = TrigProfile.parse(P)
    t = 2 * np.pi * np.arange(n_quad) / n_quad
    r = 1 + eps * P(t)
    if np.min(r) <= 0:
        raise InvalidDomain("radius 1 + eps P must stay positive")
    dp = P.derivative(t)
    first = 1 + eps**2 * np.mean(dp**2 / r**2)
    # scale-free form: exactly 1 for a constant radius
    rn = r / np.max(r)
    inertia = np.mean(rn**4) / np.mean(rn**2) ** 2
    if np.ptp(r) == 0:
        inertia = 1.0
    return {"lambda1": float(first), "inertia": float(inertia), "sums": float(max(first, inertia))}


def perturb_disk_bound(P, eps, n_quad=1024):
    """1 + eps^2 avg[P'^2 / (1 + eps P)^2], the bound on lambda_1 A / (pi j01^2)."""
    return perturb_disk_bounds(P, eps, n_quad)["lambda1"]


def richardson_eps2(eps, values):
    """epsilon^2 coefficient of G(eps) - 1 from three values by Richardson elimination.

    Fits (G - 1)/eps^2 = c2 + c3 eps + c4 eps^2 exactly and returns c2, c3, c4.
    """
    e = np.asarray(eps, float)
    y = (np.asarray(values, float) - 1) / e**2
    if len(e) != 3:
        raise InvalidArgument("Richardson fit uses exactly three epsilon values")
    V = np.vander(e, 3, increasing=True)
    return np.linalg.solve(V, y)


def parse_harmonic_profile(text):
    """'Y:2:0', '0.5*Y:1:1+Y:2:-2' -> list of (l, m, c)."""
    out = []
    for term in str(text).replace(" ", "").split("+"):
        coef = 1.0
        if "*" in term:
            c, term = term.split("*", 1)
            coef = float(c)
        parts = term.split(":")
        if len(parts) != 3 or parts[0] != "Y":
            raise InvalidArgument(f"cannot parse harmonic term {term!r}; expected Y:l:m")
        out.append((int(parts[1]), int(parts[2]), coef))
    return out


def perturb_ball_expansion(P, eps_list=(0.01, 0.02, 0.04), dim=3, quadrature_order=None):
    """Fit the eps^2 coefficient of G0(Omega_eps) for R = 1 + eps P.

    ``P`` is a list of (l, m, c) real spherical-harmonic coefficients (d = 3)
    or a TrigProfile / profile string (d = 2).  Returns the fitted and the
    formula coefficient avg|grad P|^2 - (d-2) avg (P - Pbar)^2, plus a flag
    telling whether the fitted higher-order terms look like O(eps^3).
    """
    from .domain import FourierDomain, HarmonicDomain
    from .factors import g0

    eps_list = [float(e) for e in eps_list]
    if dim == 2:
        prof = TrigProfile.parse(P) if isinstance(P, str) else P

        def make(e):
            return FourierDomain(np.r_[1.0 + e * prof.a[0], e * prof.a[1:]], e * prof.b, quadrature_order)

        base = FourierDomain(prof.a, prof.b, quadrature_order)
    elif dim == 3:
        coeffs = [(int(l), int(m), float(c)) for l, m, c in P]

        def make(e):
            return HarmonicDomain([(l, m, e * c) for l, m, c in coeffs], 1.0, quadrature_order)

        base = HarmonicDomain(coeffs, 0.0, quadrature_order)
    else:
        raise Unsupported("perturbation expansions are provided for d = 2 and d = 3")
    vals = []
    for e in eps_list:
        dom = make(e)
        if np.min(dom.node_values()[1]) <= 0:
            raise InvalidDomain(f"radius 1 + eps P is not positive for eps = {e}")
        vals.append(g0(dom))
    c2, c3, c4 = richardson_eps2(eps_list, vals)
    rule = base.rule
    _, p, gp = base.node_values()
    pbar = rule.average(p)
    formula = rule.average(np.sum(gp * gp, -1)) - (dim - 2) * rule.average((p - pbar) ** 2)
    emax = max(eps_list)
    consistent = abs(c3) * emax + abs(c4) * emax**2 <= 0.5 * max(abs(c2), 1e-12) + 1e-9
    return {"eps": eps_list, "g0": vals, "fitted": float(c2), "formula": float(formula),
            "higher_order": [float(c3), float(c4)], "consistent": bool(consistent),
            "mean_square": float(rule.average(p * p))}


# ---------------------------------------------------------------------------
# majorization


def _check_increasing_positive(a, name):
    a = np.asarray(a, float)
    if a.ndim != 1 or len(a) == 0:
        raise InvalidArgument(f"{name} must be a nonempty sequence")
    if np.any(np.diff(a) < 0):
        raise InvalidArgument(f"{name} must be nondecreasing")
    if np.any(a <= 0):
        raise InvalidArgument(f"{name} must be positive")
    return a


def majorize_check(a, b):
    """True iff every partial sum of a is at most the matching partial sum of b."""
    a = _check_increasing_positive(a, "a")
    b = _check_increasing_positive(b, "b")
    if len(a) != len(b):
        raise InvalidArgument("sequences must have equal length")
    ca, cb = np.cumsum(a), np.cumsum(b)
    return bool(np.all(ca <= cb + 1e-12 * np.maximum(np.abs(cb), 1)))


def threshold_witness(a, b):
    """A threshold c with sum min(a, c) > sum min(b, c), or None.

    When a is not majorized by b such a c exists among the values of a and b.
    """
    a = _check_increasing_positive(a, "a")
    b = _check_increasing_positive(b, "b")
    for c in np.unique(np.r_[a, b]):
        if np.sum(np.minimum(a, c)) > np.sum(np.minimum(b, c)) + 1e-12:
            return float(c)
    return None
