"""Family check suites, the derived-vs-printed comparison, and the
identity catalog.

Every family in the registry gets a consolidated suite: constructor
invariants, a distribution cross-check against a closed-form route that
is independent of the constructor's recurrences, its ladder relations in
generic and literal form, the step maps between neighboring members
where they exist, and the deformed-oscillator axiom battery.

The identity catalog assigns a tag (E1, E2, ...) to each relation the
project implements; the errata helpers evaluate the printed closed forms
that the derivation's source gets wrong and report them next to the
derived values rather than silently correcting them.
"""

from __future__ import annotations

import cmath
import math
from typing import Any, Callable

import numpy as np

from .core import (
    FockState,
    add,
    annihilation,
    apply,
    compose,
    diag_op,
    number_op,
    scale,
    sub,
)
from .ladder import (
    CoeffFn,
    GdoTriple,
    added_coherent_lowering,
    added_coherent_pair,
    added_lowered_pair,
    added_raising_ladder,
    bs_ladder,
    eigen_check,
    finite_gdo,
    gdo_axiom_checks,
    general_gdo,
    ggs_ladder,
    gs_lowering,
    gs_pair,
    hgs_ladder,
    kerr_lowering,
    ladder_general,
    ladder_lowering_finite,
    ladder_raising_shifted,
    nbs_lowering,
    nnbs_lowering,
    pbps_ladder,
    ps_ladder,
    rbs_ladder,
    relation_check,
    shifted_gdo,
    shifted_lowered_pair,
    step_down_f,
    step_down_g,
    step_up_f,
    step_up_g,
)
from .reporting import CheckResult, Tolerances, VerificationReport
from .states import (
    IntermediateParams,
    ParameterError,
    PhaseGrid,
    coherent,
    coherent_coeffs,
    format_complex,
    geometric,
    geometric_coeffs,
    intermediate_nlcs,
    kerr,
    kerr_coeffs,
    negative_binomial,
    negative_binomial_coeffs,
    new_negative_binomial,
    pegg_barnett_phase,
    photon_add,
    binomial,
    generalized_geometric,
    hypergeometric,
    polya,
    reciprocal_binomial,
)
from .twophoton import (
    ecs_sector_coeffs,
    even_odd_coherent,
    embedding_checks,
    ocs_sector_coeffs,
    pair_lowering,
    sector_dim,
    sector_embed,
    sfes_lowering,
    sfes_sector_coeffs,
    squeezed_first_excited,
    squeezed_vacuum,
    su11,
    su11_axiom_checks,
    svs_lowering,
    svs_sector_coeffs,
    two_photon_gdo,
    two_photon_ladder,
    verify_disentangling,
)

# --- identity catalog ---
# Tags are this project's stable identifiers for the relations it
# implements; the coverage meta-test in the test suite asserts that every
# tag below is exercised by at least one check over the extended grid.
# E77 and E78 name a generic two-photon nonlinear family that is not
# instantiated here, so they carry no checkable content and are absent.

EQUATION_CATALOG: dict[str, str] = {
    "E1": "deformed oscillator axioms: number commutators and F products",
    "E2": "finite expansion |x,M> = sum C(n)|n>",
    "E3": "f(N) a action on a finite expansion",
    "E4": "step-down f(N) = C(N,M-1)/(sqrt(N+1) C(N+1,M))",
    "E5": "f(N) a maps the M-member to the (M-1)-member",
    "E6": "g(N) sqrt(M-N) maps the M-member to the (M-1)-member",
    "E7": "step-down g(N) = C(N,M-1)/(sqrt(M-N) C(N,M))",
    "E8": "the two step-down routes agree on the state",
    "E9": "[N + (M-N)C(N)/(sqrt(N+1)C(N+1)) a] eigenvalue M",
    "E10": "finite lowering generator definition, raising by adjoint",
    "E11": "finite ladder algebra [N,A+-]=+-A+-, A+A-=F(N), A-A+=F(N+1)",
    "E12": "finite structure function F(N)=(M-N+1)^2 C^2(N-1)/C^2(N)",
    "E13": "(N + A-)|x,M> = M|x,M>",
    "E14": "binomial state expansion",
    "E15": "binomial state ladder identity",
    "E16": "hypergeometric state expansion",
    "E17": "generalized binomial coefficient",
    "E18": "hypergeometric state ladder identity",
    "E19": "Polya state expansion coefficients",
    "E20": "Polya normalization product",
    "E21": "Polya ladder identity (printed numerator offset corrected)",
    "E22": "reciprocal binomial expansion (printed prefactor lacks a root)",
    "E23": "reciprocal binomial ladder identity",
    "E24": "phase state expansion",
    "E25": "phase grid theta_m = theta_0 + 2 pi m/(s+1)",
    "E26": "phase state ladder identity",
    "E27": "generalized geometric expansion",
    "E28": "generalized geometric ladder identity",
    "E29": "printed finite structure functions (all six corrected)",
    "E30": "shifted expansion on n >= M",
    "E31": "photon-added state definition N_M a+^M |psi>",
    "E32": "general base expansion",
    "E33": "f(N) a+ maps the shifted M-member to the (M+1)-member",
    "E34": "g(N) sqrt(N-M) maps the shifted M-member to the (M+1)-member",
    "E35": "step-up f(N) = D(N,M+1)/(sqrt(N) D(N-1,M))",
    "E36": "step-up g(N) = D(N,M+1)/(sqrt(N-M) D(N,M))",
    "E37": "shifted raising ladder identity, eigenvalue M",
    "E38": "shifted lowered relation (N+1-M) a",
    "E39": "photon-added expansion C(n-M) sqrt(n!/(n-M)!)",
    "E40": "added raising ladder identity, eigenvalue M",
    "E41": "added lowered relation against the base-coefficient diagonal",
    "E42": "shifted raising generator definition, lowering by adjoint",
    "E43": "shifted ladder algebra with G products",
    "E44": "shifted structure function G(N)=(N-M)^2 D^2(N)/D^2(N-1)",
    "E45": "(N - B+)|x,M> = M|x,M>",
    "E46": "coherent state expansion",
    "E47": "added coherent lowered relation (N+1-M) a vs alpha (N+1)",
    "E48": "[1 - M/(N+1)] a eigenvalue alpha on the added coherent state",
    "E49": "nonlinear coherent eigen relation f(N) a",
    "E50": "shifted negative binomial expansion",
    "E51": "[sqrt(N+1-M)/(N+1)] a eigenvalue sqrt(1-eta)",
    "E52": "general raising-form relation, eigenvalue 0",
    "E53": "general lowering-form relation",
    "E54": "general GDO generators from coefficient ratios",
    "E55": "coherent annihilation eigenvalue",
    "E56": "geometric state expansion",
    "E57": "geometric pair relation a vs sqrt(1-eta) sqrt(N+1)",
    "E58": "[1/sqrt(N+1)] a eigenvalue sqrt(1-eta)",
    "E59": "negative binomial expansion",
    "E60": "[1/sqrt(M+N)] a eigenvalue sqrt(eta)",
    "E61": "Kerr state expansion",
    "E62": "Kerr lowering identity (printed exponent sign corrected)",
    "E63": "intermediate state eigen relation and recursion",
    "E64": "squeezed vacuum definition S(xi)|0>",
    "E65": "even/odd sector span",
    "E66": "su(1,1) sector actions of K+, K-, K0",
    "E67": "disentangled form of the squeezing operator",
    "E68": "squeezed vacuum expansion",
    "E69": "even/odd sector expansions",
    "E70": "even sector number operator K0 - 1/4",
    "E71": "odd sector number operator K0 - 3/4",
    "E72": "even sector raising-form ladder",
    "E73": "odd sector raising-form ladder",
    "E74": "even sector lowering-form relation",
    "E75": "odd sector lowering-form relation",
    "E76": "[1/(N+1)] a^2 eigenvalue on the squeezed vacuum",
    "E79": "squeezed first excited definition S(xi)|1>",
    "E80": "squeezed first excited expansion",
    "E81": "[1/(N+2)] a^2 eigenvalue (printed state label corrected)",
    "E82": "even coherent expansion",
    "E83": "odd coherent expansion",
    "E84": "a^2 eigenvalue alpha^2 on the even/odd coherent states",
    "E85": "even sector GDO generators",
    "E86": "odd sector GDO generators",
    "E87": "sector structure functions F_e and F_o",
}

# --- family registry and fixed parameter grids ---

FAMILIES: dict[str, tuple[str, ...]] = {
    "binomial": ("eta", "M"),
    "hypergeometric": ("L", "eta", "M"),
    "polya": ("eta", "gamma", "M"),
    "reciprocal_binomial": ("theta", "M"),
    "pegg_barnett_phase": ("theta0", "m", "M"),
    "generalized_geometric": ("Y", "M"),
    "coherent": ("alpha",),
    "geometric": ("eta",),
    "negative_binomial": ("eta", "M"),
    "new_negative_binomial": ("eta", "M"),
    "kerr": ("alpha", "theta"),
    "svs": ("r", "theta"),
    "sfes": ("r", "theta"),
    "ecs": ("alpha",),
    "ocs": ("alpha",),
    "pacs": ("alpha", "M"),
    "intermediate": ("eta", "alpha"),
}

CORE_FAMILIES: tuple[str, ...] = tuple(list(FAMILIES)[:15])

_GGS_Y = cmath.rect(0.3, math.pi / 3)


def _grid_nonlinearity(n: int) -> complex:
    return cmath.exp(-0.2j * n)


_grid_nonlinearity.label = "exp(-0.2i*n)"

# Fixed, versioned parameters: the reproducible acceptance run. The first
# fifteen rows are the canonical families the batch contract counts.
ACCEPTANCE_GRID: tuple[tuple[str, dict[str, Any], int], ...] = (
    ("binomial", {"eta": 0.5, "M": 4}, 12),
    ("hypergeometric", {"L": 40.0, "eta": 0.5, "M": 5}, 13),
    ("polya", {"eta": 0.4, "gamma": 0.7, "M": 5}, 13),
    ("reciprocal_binomial", {"theta": 0.7, "M": 4}, 12),
    ("pegg_barnett_phase", {"theta0": 0.0, "m": 2, "M": 7}, 15),
    ("generalized_geometric", {"Y": _GGS_Y, "M": 6}, 14),
    ("coherent", {"alpha": 1.0 + 0.0j}, 64),
    ("geometric", {"eta": 0.4}, 128),
    ("negative_binomial", {"eta": 0.3, "M": 3}, 256),
    ("new_negative_binomial", {"eta": 0.3, "M": 2}, 256),
    ("kerr", {"alpha": 1.0 + 0.0j, "theta": 0.3}, 64),
    ("svs", {"r": 0.8, "theta": 0.5}, 128),
    ("sfes", {"r": 0.8, "theta": 0.5}, 128),
    ("ecs", {"alpha": 1.1 + 0.0j}, 128),
    ("ocs", {"alpha": 1.1 + 0.0j}, 128),
)

# The added and intermediate families run on top of the canonical grid;
# the intermediate row uses an eigenvalue that truncates the recursion so
# the state is exactly supported inside the window.
EXTENDED_GRID: tuple[tuple[str, dict[str, Any], int], ...] = ACCEPTANCE_GRID + (
    ("pacs", {"alpha": 1.0 + 0.0j, "M": 1}, 64),
    (
        "intermediate",
        {"eta": 0.5, "alpha": math.sqrt(0.5) * 4, "f": _grid_nonlinearity},
        16,
    ),
)


def _require(family: str, params: dict[str, Any]) -> dict[str, Any]:
    known = set(FAMILIES[family]) | ({"f"} if family == "intermediate" else set())
    for key in params:
        if key not in known:
            raise ParameterError(f"unknown parameter '{key}' for family '{family}'")
    for key in FAMILIES[family]:
        if key not in params or params[key] is None:
            raise ParameterError(f"family '{family}' requires parameter '{key}'")
    return params


def _echo_params(family: str, p: dict[str, Any]) -> dict[str, Any]:
    echo: dict[str, Any] = {}
    for k, v in p.items():
        if isinstance(v, complex):
            echo[k] = format_complex(v)
        elif callable(v):
            echo[k] = getattr(v, "label", getattr(v, "__name__", "callable"))
        else:
            echo[k] = v
    if family == "pegg_barnett_phase":
        echo["theta_m"] = PhaseGrid(p["theta0"], p["M"], p["m"]).theta_m
    return echo


# --- constructors and closed-form coefficient routes ---


def build_state(family: str, params: dict[str, Any], dim: int) -> FockState:
    """Construct the named family member; the entry point the CLI uses."""
    if family not in FAMILIES:
        raise ParameterError(f"unknown family '{family}'")
    p = _require(family, dict(params))
    if family == "binomial":
        return binomial(p["eta"], p["M"], dim)
    if family == "hypergeometric":
        return hypergeometric(p["L"], p["eta"], p["M"], dim)
    if family == "polya":
        return polya(p["eta"], p["gamma"], p["M"], dim)
    if family == "reciprocal_binomial":
        return reciprocal_binomial(p["theta"], p["M"], dim)
    if family == "pegg_barnett_phase":
        grid = PhaseGrid(p["theta0"], p["M"], p["m"])
        return pegg_barnett_phase(grid, p["M"], dim)
    if family == "generalized_geometric":
        return generalized_geometric(p["Y"], p["M"], dim)
    if family == "coherent":
        return coherent(p["alpha"], dim)
    if family == "geometric":
        return geometric(p["eta"], dim)
    if family == "negative_binomial":
        return negative_binomial(p["eta"], p["M"], dim)
    if family == "new_negative_binomial":
        return new_negative_binomial(p["eta"], p["M"], dim)
    if family == "kerr":
        return kerr(p["alpha"], p["theta"], dim)
    if family == "svs":
        return squeezed_vacuum(p["r"], p["theta"], dim)
    if family == "sfes":
        return squeezed_first_excited(p["r"], p["theta"], dim)
    if family == "ecs":
        return even_odd_coherent(p["alpha"], "even", dim)
    if family == "ocs":
        return even_odd_coherent(p["alpha"], "odd", dim)
    if family == "pacs":
        return photon_add(coherent(p["alpha"], dim), p["M"])
    ip = IntermediateParams(p["eta"], p["alpha"], p.get("f"))
    return intermediate_nlcs(ip, dim)


def _log_comb(a: float, b: float) -> float:
    return math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)


def _cf_binomial(eta: float, M: int) -> CoeffFn:
    def c(n: int) -> complex:
        if not 0 <= n <= M:
            return 0.0
        return math.exp(
            0.5
            * (_log_comb(M, n) + n * math.log(eta) + (M - n) * math.log(1 - eta))
        )

    return c


def _cf_hypergeometric(L: float, eta: float, M: int) -> CoeffFn:
    # lgamma route; valid while L eta >= M and L(1-eta) >= M, which the
    # parameter validation guarantees
    Le, Lb = L * eta, L * (1 - eta)
    logZ = _log_comb(L, M)

    def c(n: int) -> complex:
        if not 0 <= n <= M:
            return 0.0
        return math.exp(0.5 * (_log_comb(Le, n) + _log_comb(Lb, M - n) - logZ))

    return c


def _cf_polya(eta: float, gamma: float, M: int) -> CoeffFn:
    def log_rising(x: float, m: int) -> float:
        if m == 0:
            return 0.0
        return m * math.log(gamma) + math.lgamma(x / gamma + m) - math.lgamma(x / gamma)

    logZ = log_rising(1.0, M)

    def c(n: int) -> complex:
        if not 0 <= n <= M:
            return 0.0
        return math.exp(
            0.5
            * (
                _log_comb(M, n)
                + log_rising(eta, n)
                + log_rising(1 - eta, M - n)
                - logZ
            )
        )

    return c


def _cf_reciprocal_binomial(theta: float, M: int) -> CoeffFn:
    Z = math.sqrt(sum(1.0 / math.comb(M, k) for k in range(M + 1)))

    def c(n: int) -> complex:
        if not 0 <= n <= M:
            return 0.0
        return cmath.exp(1j * n * theta) / math.sqrt(math.comb(M, n)) / Z

    return c


def _cf_phase(theta_m: float, M: int) -> CoeffFn:
    pref = 1.0 / math.sqrt(M + 1)

    def c(n: int) -> complex:
        if not 0 <= n <= M:
            return 0.0
        return pref * cmath.exp(1j * n * theta_m)

    return c


def _cf_generalized_geometric(Y: complex, M: int) -> CoeffFn:
    root = cmath.sqrt(Y)
    mod = abs(Y)
    pref = math.sqrt((1 - mod) / (1 - mod ** (M + 1)))

    def c(n: int) -> complex:
        if not 0 <= n <= M:
            return 0.0
        return pref * root**n

    return c


def _cf_nnbs(eta: float, M: int) -> CoeffFn:
    # exact closed-form normalization: sum comb(n,M) (1-eta)^(n-M) over
    # n >= M is eta^-(M+1)
    log_pref = 0.5 * (M + 1) * math.log(eta)

    def c(n: int) -> complex:
        if n < M:
            return 0.0
        return math.exp(
            log_pref
            + 0.5 * (_log_comb(n, M) + (n - M) * math.log(1 - eta))
        )

    return c


def _cf_pacs(alpha: complex, M: int, dim: int) -> CoeffFn:
    alpha = complex(alpha)

    def raw(n: int) -> complex:
        if n < M:
            return 0.0
        if alpha == 0:
            return 1.0 if n == M else 0.0
        return cmath.exp(
            (n - M) * cmath.log(alpha)
            + 0.5 * math.lgamma(n + 1)
            - math.lgamma(n - M + 1)
        )

    # the tail above the window is far below the comparison tolerance at
    # any dim the registry uses, so a window normalization is exact enough
    K = 1.0 / math.sqrt(sum(abs(raw(n)) ** 2 for n in range(dim)))

    def c(n: int) -> complex:
        return K * raw(n)

    return c


def closed_form_coeffs(
    family: str, params: dict[str, Any], dim: int
) -> CoeffFn | None:
    """Coefficient route independent of the constructors' recurrences.

    Two-photon families index the sector basis.  The intermediate family
    has no closed form (its coefficients are the recursion output), so it
    returns None.
    """
    p = dict(params)
    if family == "binomial":
        return _cf_binomial(p["eta"], p["M"])
    if family == "hypergeometric":
        return _cf_hypergeometric(p["L"], p["eta"], p["M"])
    if family == "polya":
        return _cf_polya(p["eta"], p["gamma"], p["M"])
    if family == "reciprocal_binomial":
        return _cf_reciprocal_binomial(p["theta"], p["M"])
    if family == "pegg_barnett_phase":
        grid = PhaseGrid(p["theta0"], p["M"], p["m"])
        return _cf_phase(grid.theta_m, p["M"])
    if family == "generalized_geometric":
        return _cf_generalized_geometric(p["Y"], p["M"])
    if family == "coherent":
        return coherent_coeffs(p["alpha"])
    if family == "geometric":
        return geometric_coeffs(p["eta"])
    if family == "negative_binomial":
        return negative_binomial_coeffs(p["eta"], p["M"])
    if family == "new_negative_binomial":
        return _cf_nnbs(p["eta"], p["M"])
    if family == "kerr":
        return kerr_coeffs(p["alpha"], p["theta"])
    if family == "svs":
        return svs_sector_coeffs(p["r"], p["theta"])
    if family == "sfes":
        return sfes_sector_coeffs(p["r"], p["theta"])
    if family == "ecs":
        return ecs_sector_coeffs(p["alpha"])
    if family == "ocs":
        return ocs_sector_coeffs(p["alpha"])
    if family == "pacs":
        return _cf_pacs(p["alpha"], p["M"], dim)
    return None


_FINITE = (
    "binomial",
    "hypergeometric",
    "polya",
    "reciprocal_binomial",
    "pegg_barnett_phase",
    "generalized_geometric",
)
_GENERAL = ("coherent", "geometric", "negative_binomial", "kerr", "intermediate")
_TWO_PHOTON = ("svs", "sfes", "ecs", "ocs")


def build_gdo(family: str, params: dict[str, Any], dim: int) -> GdoTriple:
    """The family's deformed-oscillator triple at the given truncation."""
    if family not in FAMILIES:
        raise ParameterError(f"unknown family '{family}'")
    p = _require(family, dict(params))
    cf = closed_form_coeffs(family, p, dim)
    if family in _FINITE:
        return finite_gdo(cf, p["M"], dim)
    if family in ("new_negative_binomial", "pacs"):
        return shifted_gdo(cf, p["M"], dim)
    if family in _TWO_PHOTON:
        j = 0 if family in ("svs", "ecs") else 1
        return two_photon_gdo(cf, j, sector_dim(dim, j))
    if family == "intermediate":
        s = build_state(family, p, dim)
        return general_gdo(s.amplitudes)
    return general_gdo(cf, dim)


# --- check helpers ---


def _norm_check(s: FockState, equation: str, tol: Tolerances) -> CheckResult:
    return CheckResult.from_residual(
        "state-normalization",
        equation,
        abs(1.0 - float(np.linalg.norm(s.amplitudes))),
        tol.oracle,
        leak=s.leak,
        leak_tolerance=tol.leak,
        detail=f"norm_constant={s.norm_constant!r}",
    )


def _distribution_check(
    s: FockState, cf: CoeffFn, equation: str, tol: Tolerances
) -> CheckResult:
    window = np.array([cf(n) for n in range(s.dim)], dtype=complex)
    expected = np.abs(window) ** 2
    expected /= expected.sum()
    residual = float(np.max(np.abs(expected - np.abs(s.amplitudes) ** 2)))
    return CheckResult.from_residual(
        "distribution-crosscheck",
        equation,
        residual,
        tol.oracle,
        detail="|amplitude|^2 against the closed-form route, window-normalized",
    )


def _state_map_check(
    name: str,
    equation: str,
    op,
    s: FockState,
    target: FockState,
    tol: Tolerances,
) -> CheckResult:
    image = apply(op, s)
    residual = float(np.linalg.norm(image.amplitudes - target.amplitudes))
    return CheckResult.from_residual(
        name,
        equation,
        residual,
        tol.residual,
        leak=image.leak,
        leak_tolerance=tol.leak,
        detail=f"image compared to the constructed target {target.label}",
    )


def _structure_closed_form_check(
    t: GdoTriple, expected: Callable[[int], float], equation: str, tol: Tolerances
) -> CheckResult:
    values = np.array([t.structure_fn(n) for n in range(t.dim)])
    wanted = np.array([expected(n) for n in range(t.dim)])
    # F grows with n for the infinite families, so the comparison is
    # scaled; for F of order one this reduces to the absolute residual
    residual = float(np.max(np.abs(values - wanted) / np.maximum(1.0, np.abs(wanted))))
    return CheckResult.from_residual(
        "structure-fn-closed-form",
        equation,
        residual,
        tol.oracle,
        detail="operational F against the closed coefficient-ratio form, "
        "scaled by max(1, F)",
    )


def _axiom_dim(dim: int, n_min: int = 0) -> int:
    # the dense axiom battery is specified in the small-truncation regime;
    # large windows only add rounding on large F values
    return min(dim, max(16, n_min + 9))


def _ratio_sq(cf: CoeffFn, num_idx: int, den_idx: int) -> float:
    num = cf(num_idx)
    if num == 0:
        return 0.0
    return abs(num / cf(den_idx)) ** 2


# --- family suites ---


def _suite_finite(family: str, p: dict[str, Any], dim: int, tol: Tolerances):
    M = p["M"]
    s = build_state(family, p, dim)
    cf = closed_form_coeffs(family, p, dim)
    literal = {
        "binomial": (lambda: bs_ladder(p["eta"], M, dim), "E15"),
        "hypergeometric": (lambda: hgs_ladder(p["L"], p["eta"], M, dim), "E18"),
        "polya": (lambda: ps_ladder(p["eta"], p["gamma"], M, dim), "E21"),
        "reciprocal_binomial": (lambda: rbs_ladder(p["theta"], M, dim), "E23"),
        "pegg_barnett_phase": (
            lambda: pbps_ladder(PhaseGrid(p["theta0"], M, p["m"]).theta_m, M, dim),
            "E26",
        ),
        "generalized_geometric": (lambda: ggs_ladder(p["Y"], M, dim), "E28"),
    }[family]
    expansion_eq = {
        "binomial": "E2 E14",
        "hypergeometric": "E16 E17",
        "polya": "E19 E20",
        "reciprocal_binomial": "E22",
        "pegg_barnett_phase": "E24 E25",
        "generalized_geometric": "E27",
    }[family]
    dist_eq = {
        "binomial": "E14",
        "hypergeometric": "E16 E17",
        "polya": "E19 E20",
        "reciprocal_binomial": "E22",
        "pegg_barnett_phase": "E24",
        "generalized_geometric": "E27",
    }[family]

    checks = [
        _norm_check(s, expansion_eq, tol),
        _distribution_check(s, cf, dist_eq, tol),
        eigen_check(
            "ladder-eigen-generic",
            "E9 E10 E13",
            add(number_op(dim), ladder_lowering_finite(cf, M, dim)),
            s,
            M,
            tol,
        ),
        eigen_check("ladder-eigen-literal", literal[1], literal[0](), s, M, tol),
    ]

    # step maps to the (M-1)-member; the reduced member keeps x fixed,
    # which for the phase family means keeping theta_m itself
    reduced = dict(p)
    reduced["M"] = M - 1
    if family == "pegg_barnett_phase":
        theta_m = PhaseGrid(p["theta0"], M, p["m"]).theta_m
        reduced.update({"theta0": theta_m, "m": 0})
    target = build_state(family, reduced, dim)
    cf_down = closed_form_coeffs(family, reduced, dim)
    c0 = [cf(n) for n in range(dim)]
    c1 = [cf_down(n) for n in range(dim)]
    f_op = step_down_f(c0, c1, M)
    g_op = step_down_g(c0, c1, M)
    checks += [
        _state_map_check("step-down-f", "E3 E4 E5", f_op, s, target, tol),
        _state_map_check("step-down-g", "E6 E7", g_op, s, target, tol),
        relation_check("step-down-equality", "E8", f_op, g_op, s, tol),
    ]

    checks += gdo_axiom_checks(
        finite_gdo(cf, M, _axiom_dim(dim, M)), tol, equation="E1 E11"
    )

    def expected_F(n: int) -> float:
        if n < 1 or n > M:
            return 0.0
        return (M - n + 1) ** 2 * _ratio_sq(cf, n - 1, n)

    t = finite_gdo(cf, M, dim)
    checks.append(_structure_closed_form_check(t, expected_F, "E12", tol))
    return checks, _echo_params(family, p)


def _suite_new_negative_binomial(p: dict[str, Any], dim: int, tol: Tolerances):
    eta, M = p["eta"], p["M"]
    s = build_state("new_negative_binomial", p, dim)
    cf = closed_form_coeffs("new_negative_binomial", p, dim)

    checks = [
        _norm_check(s, "E30 E50", tol),
        _distribution_check(s, cf, "E50", tol),
        eigen_check(
            "ladder-eigen-generic",
            "E37 E42 E45",
            sub(number_op(dim), ladder_raising_shifted(cf, M, dim)),
            s,
            M,
            tol,
        ),
        relation_check(
            "shifted-lowered-relation",
            "E38",
            *shifted_lowered_pair(cf, M, dim),
            s,
            tol,
        ),
        eigen_check(
            "ladder-eigen-literal",
            "E51",
            nnbs_lowering(M, dim),
            s,
            math.sqrt(1 - eta),
            tol,
        ),
    ]

    raised = dict(p)
    raised["M"] = M + 1
    target = build_state("new_negative_binomial", raised, dim)
    cf_up = closed_form_coeffs("new_negative_binomial", raised, dim)
    c0 = [cf(n) for n in range(dim)]
    c1 = [cf_up(n) for n in range(dim)]
    checks += [
        _state_map_check(
            "step-up-f", "E33 E35", step_up_f(c0, c1, M), s, target, tol
        ),
        _state_map_check(
            "step-up-g", "E34 E36", step_up_g(c0, c1, M), s, target, tol
        ),
    ]

    checks += gdo_axiom_checks(
        shifted_gdo(cf, M, _axiom_dim(dim, M)), tol, equation="E1 E43"
    )

    def expected_G(n: int) -> float:
        if n <= M or n >= dim:
            return 0.0
        return (n - M) ** 2 * _ratio_sq(cf, n, n - 1)

    t = shifted_gdo(cf, M, dim)
    checks.append(_structure_closed_form_check(t, expected_G, "E44", tol))
    return checks, _echo_params("new_negative_binomial", p)


def _suite_pacs(p: dict[str, Any], dim: int, tol: Tolerances):
    alpha, M = complex(p["alpha"]), p["M"]
    s = build_state("pacs", p, dim)
    cf = closed_form_coeffs("pacs", p, dim)
    base_cf = coherent_coeffs(alpha)

    checks = [
        _norm_check(s, "E31 E32 E39", tol),
        _distribution_check(s, cf, "E39", tol),
        eigen_check(
            "ladder-eigen-raising",
            "E40",
            added_raising_ladder(base_cf, M, dim),
            s,
            M,
            tol,
        ),
        relation_check(
            "added-lowered-relation",
            "E41",
            *added_lowered_pair(base_cf, M, dim),
            s,
            tol,
        ),
        relation_check(
            "added-coherent-relation",
            "E47",
            *added_coherent_pair(alpha, M, dim),
            s,
            tol,
        ),
        eigen_check(
            "ladder-eigen-lowering",
            "E48",
            added_coherent_lowering(alpha, M, dim),
            s,
            alpha,
            tol,
        ),
    ]

    checks += gdo_axiom_checks(
        shifted_gdo(cf, M, _axiom_dim(dim, M)), tol, equation="E1 E43"
    )

    def expected_G(n: int) -> float:
        if n <= M or n >= dim:
            return 0.0
        return (n - M) ** 2 * _ratio_sq(cf, n, n - 1)

    t = shifted_gdo(cf, M, dim)
    checks.append(_structure_closed_form_check(t, expected_G, "E44", tol))
    return checks, _echo_params("pacs", p)


def _suite_general(family: str, p: dict[str, Any], dim: int, tol: Tolerances):
    s = build_state(family, p, dim)
    cf = closed_form_coeffs(family, p, dim)
    coeffs = cf if cf is not None else s.amplitudes
    norm_eq = {
        "coherent": "E46",
        "geometric": "E56",
        "negative_binomial": "E59",
        "kerr": "E61",
        "intermediate": "E63",
    }[family]

    checks = [_norm_check(s, norm_eq, tol)]
    if cf is not None:
        checks.append(_distribution_check(s, cf, norm_eq, tol))

    raising_form, lowering_form = ladder_general(coeffs, dim)
    checks += [
        eigen_check("ladder-raising-form", "E52", raising_form, s, 0.0, tol),
        eigen_check("ladder-lowering-form", "E53", lowering_form, s, 0.0, tol),
    ]

    if family == "coherent":
        checks.append(
            eigen_check(
                "ladder-eigen-literal", "E55", annihilation(dim), s, p["alpha"], tol
            )
        )
    elif family == "geometric":
        checks += [
            relation_check(
                "geometric-pair-relation", "E57", *gs_pair(p["eta"], dim), s, tol
            ),
            eigen_check(
                "ladder-eigen-literal",
                "E58",
                gs_lowering(dim),
                s,
                math.sqrt(1 - p["eta"]),
                tol,
            ),
        ]
    elif family == "negative_binomial":
        checks.append(
            eigen_check(
                "ladder-eigen-literal",
                "E60",
                nbs_lowering(p["M"], dim),
                s,
                math.sqrt(p["eta"]),
                tol,
            )
        )
    elif family == "kerr":
        checks.append(
            eigen_check(
                "ladder-eigen-literal",
                "E49 E62",
                kerr_lowering(p["theta"], dim),
                s,
                p["alpha"],
                tol,
            )
        )
    else:  # intermediate
        eta = p["eta"]
        ip = IntermediateParams(eta, p["alpha"], p.get("f"))
        root = math.sqrt(1 - eta)
        op = add(
            scale(number_op(dim), math.sqrt(eta)),
            compose(diag_op(lambda t: root * ip.f_at(t), dim), annihilation(dim)),
        )
        checks.append(
            eigen_check("ladder-eigen-literal", "E49 E63", op, s, p["alpha"], tol)
        )

    checks += gdo_axiom_checks(
        general_gdo(coeffs, _axiom_dim(dim)), tol, equation="E1 E54"
    )
    getter = cf if cf is not None else (
        lambda n: complex(s.amplitudes[n]) if 0 <= n < dim else 0.0
    )

    def expected_F(n: int) -> float:
        if n < 1 or n >= dim:
            return 0.0
        return n**2 * _ratio_sq(getter, n, n - 1)

    t = general_gdo(coeffs, dim)
    checks.append(_structure_closed_form_check(t, expected_F, "E54", tol))
    return checks, _echo_params(family, p)


def _suite_two_photon(family: str, p: dict[str, Any], dim: int, tol: Tolerances):
    s = build_state(family, p, dim)
    sec = sector_embed(s)
    j = 0 if family in ("svs", "ecs") else 1
    cf = closed_form_coeffs(family, p, dim)
    norm_eq = {"svs": "E68", "sfes": "E79 E80", "ecs": "E82", "ocs": "E83"}[family]

    checks = [_norm_check(s, norm_eq, tol), _distribution_check(sec, cf, norm_eq, tol)]

    rep = su11(j, sec.dim)
    checks += su11_axiom_checks(rep, tol)
    checks += embedding_checks(rep, dim, tol)

    up, down = two_photon_ladder(cf, j, sec.dim)
    up_eq = "E69 E72" if j == 0 else "E69 E73"
    down_eq = "E74" if j == 0 else "E75"
    checks += [
        eigen_check("sector-raising-form", up_eq, up, sec, 0.0, tol),
        # the lowering form references one amplitude beyond the truncation
        # at the top sector index, so that component is excluded
        eigen_check("sector-lowering-form", down_eq, down, sec, 0.0, tol, edge_exclude=1),
    ]

    if family == "svs":
        lam = cmath.exp(1j * p["theta"]) * math.tanh(p["r"])
        checks.append(
            eigen_check("pair-lowering-eigen", "E76", svs_lowering(dim), s, lam, tol)
        )
    elif family == "sfes":
        lam = cmath.exp(1j * p["theta"]) * math.tanh(p["r"])
        checks.append(
            eigen_check("pair-lowering-eigen", "E81", sfes_lowering(dim), s, lam, tol)
        )
    else:
        lam = complex(p["alpha"]) ** 2
        checks.append(
            eigen_check("pair-lowering-eigen", "E84", pair_lowering(dim), s, lam, tol)
        )

    sector_eq = "E1 E85" if j == 0 else "E1 E86"
    checks += gdo_axiom_checks(
        two_photon_gdo(cf, j, _axiom_dim(sec.dim)), tol, equation=sector_eq
    )

    def expected_F(n: int) -> float:
        if n < 1 or n >= sec.dim:
            return 0.0
        return n**2 * _ratio_sq(cf, n, n - 1)

    t = two_photon_gdo(cf, j, sec.dim)
    checks.append(_structure_closed_form_check(t, expected_F, "E87", tol))

    if family in ("svs", "sfes"):
        rep_dis = verify_disentangling(
            p["r"],
            p["theta"],
            dim,
            excitation=0 if family == "svs" else 1,
            tolerances=tol,
        )
        checks += list(rep_dis.checks)
    return checks, _echo_params(family, p)


def run_family_suite(
    family: str,
    params: dict[str, Any],
    dim: int,
    tolerances: Tolerances | None = None,
) -> VerificationReport:
    """All of the family's checks at one parameter point, consolidated."""
    if family not in FAMILIES:
        raise ParameterError(f"unknown family '{family}'")
    tol = tolerances or Tolerances()
    p = _require(family, dict(params))
    if family in _FINITE:
        checks, echo = _suite_finite(family, p, dim, tol)
    elif family == "new_negative_binomial":
        checks, echo = _suite_new_negative_binomial(p, dim, tol)
    elif family == "pacs":
        checks, echo = _suite_pacs(p, dim, tol)
    elif family in _TWO_PHOTON:
        checks, echo = _suite_two_photon(family, p, dim, tol)
    else:
        checks, echo = _suite_general(family, p, dim, tol)
    return VerificationReport(
        family=family, params=echo, dim=dim, tolerances=tol, checks=tuple(checks)
    )


def run_grid(
    grid=None, tolerances: Tolerances | None = None
) -> list[VerificationReport]:
    return [
        run_family_suite(family, params, dim, tolerances)
        for family, params, dim in (grid if grid is not None else ACCEPTANCE_GRID)
    ]


def grid_manifest() -> list[dict[str, Any]]:
    """The canonical grid in the batch manifest schema (JSON-ready).

    Unlike report headers, manifest entries hold exactly the parameters a
    suite accepts; complex values become a+bi text.
    """
    return [
        {
            "family": family,
            "params": {
                k: format_complex(v) if isinstance(v, complex) else v
                for k, v in params.items()
            },
            "dim": dim,
        }
        for family, params, dim in ACCEPTANCE_GRID
    ]


# --- derived vs printed comparison ---


def _printed_structure_fn(family: str, p: dict[str, Any]) -> Callable[[int], complex]:
    M = p["M"]
    if family == "binomial":
        eta = p["eta"]
        return lambda n: (M - n + 1) ** 3 * (1 - eta) / eta
    if family == "hypergeometric":
        L, eta = p["L"], p["eta"]
        return lambda n: (M - n + 1) ** 3 * (L * (1 - eta) - M + n) / (L * eta - n + 1)
    if family == "polya":
        eta, g = p["eta"], p["gamma"]
        return lambda n: (
            (M - n + 1) ** 3 * ((1 - eta) + (M + n - 2) * g) / (eta + (n - 1) * g)
        )
    if family == "reciprocal_binomial":
        theta = p["theta"]
        return lambda n: cmath.exp(-2j * theta) * (M - n + 1) ** 5 / n**2
    if family == "pegg_barnett_phase":
        theta_m = PhaseGrid(p["theta0"], M, p["m"]).theta_m
        return lambda n: cmath.exp(-2j * theta_m) * (M - n + 1) ** 4 / n
    if family == "generalized_geometric":
        Y = p["Y"]
        return lambda n: (M - n + 1) ** 4 / (Y * n)
    raise ParameterError(f"no printed structure function for '{family}'")


def derived_vs_printed_rows(
    family: str, params: dict[str, Any], dim: int
) -> list[dict[str, Any]]:
    """Tabulate F(n) from coefficient ratios against the printed closed
    form on n in [0, M].  A vanishing printed denominator is recorded as
    an infinite magnitude."""
    if family not in _FINITE:
        raise ParameterError(f"no printed structure function for '{family}'")
    p = _require(family, dict(params))
    M = p["M"]
    cf = closed_form_coeffs(family, p, dim)
    printed_fn = _printed_structure_fn(family, p)
    rows = []
    for n in range(M + 1):
        derived = 0.0 if n == 0 else (M - n + 1) ** 2 * _ratio_sq(cf, n - 1, n)
        try:
            printed = complex(printed_fn(n))
        except ZeroDivisionError:
            printed = complex(math.inf, 0.0)
        finite = math.isfinite(printed.real) and math.isfinite(printed.imag)
        match = bool(
            finite and abs(printed - derived) <= 1e-9 * max(1.0, abs(derived))
        )
        rows.append(
            {
                "n": n,
                "derived": float(derived),
                "printed_re": float(printed.real),
                "printed_im": float(printed.imag),
                "match": match,
            }
        )
    return rows


def errata_table() -> dict[str, Any]:
    """Every place the printed identities disagree with the derived ones,
    tabulated at the registry's grid parameters.  Reported, not corrected:
    the constructors and ladder builders use the derived forms, and this
    table is the record of what the printed source says instead."""
    tol = Tolerances()
    families = []
    for family, params, dim in ACCEPTANCE_GRID[:6]:
        if family == "pegg_barnett_phase":
            # the registry's theta0 = 0 puts theta_m at pi/2, where the
            # printed phase factor degenerates to -1; a generic offset
            # keeps the non-real printed values visible
            params = dict(params, theta0=0.3)
        families.append(
            {
                "family": family,
                "equation": "E12 E29",
                "params": _echo_params(family, params),
                "M": params["M"],
                "rows": derived_vs_printed_rows(family, params, dim),
            }
        )

    notes = []

    # Polya ladder numerator offset
    _, ps_params, ps_dim = ACCEPTANCE_GRID[2]
    ps_state = build_state("polya", ps_params, ps_dim)
    M = ps_params["M"]
    printed_res = eigen_check(
        "polya-printed",
        "E21",
        ps_ladder(ps_params["eta"], ps_params["gamma"], M, ps_dim, variant="printed"),
        ps_state,
        M,
        tol,
    ).residual
    derived_res = eigen_check(
        "polya-derived",
        "E21",
        ps_ladder(ps_params["eta"], ps_params["gamma"], M, ps_dim),
        ps_state,
        M,
        tol,
    ).residual
    notes.append(
        {
            "equation": "E21",
            "family": "polya",
            "text": (
                "the printed ladder numerator offset (M+N-1)gamma fails the "
                "eigenvalue relation; it holds with (M-N-1)gamma"
            ),
            "residual_printed": printed_res,
            "residual_derived": derived_res,
        }
    )

    # Reciprocal binomial normalization prefactor
    _, rbs_params, rbs_dim = ACCEPTANCE_GRID[3]
    rbs_state = build_state("reciprocal_binomial", rbs_params, rbs_dim)
    Mr = rbs_params["M"]
    inv_sum = sum(1.0 / math.comb(Mr, k) for k in range(Mr + 1))
    printed_prefactor = 1.0 / inv_sum
    printed_norm = printed_prefactor * math.sqrt(inv_sum)
    notes.append(
        {
            "equation": "E22",
            "family": "reciprocal_binomial",
            "text": (
                "the printed prefactor 1/sum C(M,n)^-1 is the square of the "
                "normalizing constant; constructors renormalize numerically "
                "and record the constant"
            ),
            "printed_prefactor": printed_prefactor,
            "printed_prefactor_norm": printed_norm,
            "recorded_constant": float(rbs_state.norm_constant),
        }
    )

    # Kerr lowering exponent sign
    _, ks_params, ks_dim = ACCEPTANCE_GRID[10]
    ks_state = build_state("kerr", ks_params, ks_dim)
    alpha = ks_params["alpha"]
    printed_res = eigen_check(
        "kerr-printed",
        "E62",
        kerr_lowering(ks_params["theta"], ks_dim, variant="printed"),
        ks_state,
        alpha,
        tol,
    ).residual
    derived_res = eigen_check(
        "kerr-derived",
        "E62",
        kerr_lowering(ks_params["theta"], ks_dim),
        ks_state,
        alpha,
        tol,
    ).residual
    notes.append(
        {
            "equation": "E62",
            "family": "kerr",
            "text": (
                "the printed lowering identity carries exp(-2i N theta); the "
                "relation holds with exp(+2i theta N)"
            ),
            "residual_printed": printed_res,
            "residual_derived": derived_res,
        }
    )

    # First-excited pair relation printed with the squeezed-vacuum label
    _, sv_params, sv_dim = ACCEPTANCE_GRID[11]
    lam = cmath.exp(1j * sv_params["theta"]) * math.tanh(sv_params["r"])
    op = sfes_lowering(sv_dim)
    svs_state = build_state("svs", sv_params, sv_dim)
    sfes_state = build_state("sfes", sv_params, sv_dim)
    res_labeled = eigen_check("sfes-on-svs", "E81", op, svs_state, lam, tol).residual
    res_intended = eigen_check("sfes-on-sfes", "E81", op, sfes_state, lam, tol).residual
    notes.append(
        {
            "equation": "E81",
            "family": "sfes",
            "text": (
                "the printed relation names the squeezed vacuum on its "
                "left-hand side; it holds on the squeezed first excited state"
            ),
            "residual_labeled_state": res_labeled,
            "residual_intended_state": res_intended,
        }
    )

    return {
        "schema": "errata-1",
        "derived_form": "F(n) = (M-n+1)^2 |C(n-1)/C(n)|^2 with F(0) = 0",
        "families": families,
        "notes": notes,
    }
