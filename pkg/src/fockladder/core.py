"""Truncated Fock-space states and the band-operator algebra.

A state is a complex amplitude vector over the basis |0>, ..., |dim-1>.
An operator is a finite sum of terms (shift k, diag d), each a diagonal
function of the number operator composed with a pure ladder shift:

    k >= 0:  |n> -> d(n) * sqrt((n+1)(n+2)...(n+k)) |n+k>
    k <  0:  |n> -> d(n) * sqrt(n(n-1)...(n+k+1))   |n+k>   (zero for n < -k)

The diagonal is evaluated lazily, per integer index, and only where both
the ladder factor and the incoming amplitude are nonzero; expressions
like (M - N) or 1/sqrt(N + 1) are therefore exact at integer arguments
and never see an index outside their domain.  Amplitude mass pushed past
the truncation is accumulated into a reported leak, never silently lost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

DiagFn = Callable[[int], complex]


class DimensionMismatchError(ValueError):
    """Operands live on different truncations."""


class OperatorEvaluationError(ValueError):
    """A diagonal evaluated to a non-finite value at an occupied index."""


def _ladder_prod(n: int, k: int) -> int:
    """Squared ladder factor of a^k (k<0) or a†^k (k>0) on |n>, as an
    exact integer (0 when the shift annihilates the index)."""
    if k >= 0:
        prod = 1
        for i in range(1, k + 1):
            prod *= n + i
    else:
        m = -k
        if n < m:
            return 0
        prod = 1
        for i in range(m):
            prod *= n - i
    return prod


def ladder_factor(n: int, k: int) -> float:
    """Ladder factor of a^k (k<0) or a†^k (k>0) on |n>.

    The product under the root is an exact integer, so perfect squares
    (and in particular 0 and 1) come out exact.
    """
    return math.sqrt(_ladder_prod(n, k))


@dataclass(frozen=True, eq=False)
class FockState:
    """Amplitude vector on a truncated Fock basis plus construction metadata.

    support is the index pair outside which amplitudes are exactly zero,
    (0, -1) for the zero vector.  norm_constant records the normalization
    factor applied at construction.  leak is the squared amplitude mass
    dropped in producing this state (truncation tail for constructors,
    out-of-range mass for operator images).
    """

    amplitudes: np.ndarray
    dim: int
    support: tuple[int, int]
    parity: str = "full"
    norm_constant: float = 1.0
    label: str = ""
    leak: float = 0.0

    def __post_init__(self) -> None:
        arr = np.asarray(self.amplitudes, dtype=np.complex128).copy()
        if arr.ndim != 1 or arr.shape[0] != self.dim:
            raise DimensionMismatchError(
                f"amplitude vector has length {arr.shape}, expected ({self.dim},)"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "amplitudes", arr)
        if self.parity not in ("full", "even", "odd"):
            raise ValueError(f"unknown parity {self.parity!r}")
        n_min, n_max = self.support
        if np.any(arr[:n_min] != 0) or np.any(arr[n_max + 1 :] != 0):
            raise ValueError("amplitudes nonzero outside the declared support")
        if self.parity == "even" and np.any(arr[1::2] != 0):
            raise ValueError("even-parity state has odd-index amplitudes")
        if self.parity == "odd" and np.any(arr[0::2] != 0):
            raise ValueError("odd-parity state has even-index amplitudes")

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def relabeled(self, label: str) -> "FockState":
        return replace(self, label=label)


def make_state(
    amplitudes: Sequence[complex] | np.ndarray,
    *,
    parity: str | None = None,
    norm_constant: float = 1.0,
    label: str = "",
    leak: float = 0.0,
) -> FockState:
    """Build a FockState, deriving support (and parity when not given)."""
    arr = np.asarray(amplitudes, dtype=np.complex128)
    nz = np.nonzero(arr)[0]
    support = (int(nz[0]), int(nz[-1])) if nz.size else (0, -1)
    if parity is None:
        if nz.size and np.all(nz % 2 == 0):
            parity = "even"
        elif nz.size and np.all(nz % 2 == 1):
            parity = "odd"
        else:
            parity = "full"
    return FockState(
        amplitudes=arr,
        dim=arr.shape[0],
        support=support,
        parity=parity,
        norm_constant=norm_constant,
        label=label,
        leak=leak,
    )


def basis_state(n: int, dim: int) -> FockState:
    if not 0 <= n < dim:
        raise ValueError(f"basis index {n} outside [0, {dim - 1}]")
    amps = np.zeros(dim, dtype=np.complex128)
    amps[n] = 1.0
    return make_state(amps, label=f"|{n}>")


def overlap(x: FockState, y: FockState) -> complex:
    if x.dim != y.dim:
        raise DimensionMismatchError(f"dims {x.dim} and {y.dim} differ")
    return complex(np.vdot(x.amplitudes, y.amplitudes))


def fidelity(x: FockState, y: FockState) -> float:
    return abs(overlap(x, y)) ** 2


@dataclass(frozen=True)
class OperatorExpr:
    """Finite sum of (shift, diagonal) band terms on a fixed truncation."""

    terms: tuple[tuple[int, DiagFn], ...]
    domain_dim: int

    @property
    def max_shift(self) -> int:
        return max((abs(k) for k, _ in self.terms), default=0)


def _one(_: int) -> complex:
    return 1.0


def _merge_terms(
    terms: Sequence[tuple[int, DiagFn]],
) -> tuple[tuple[int, DiagFn], ...]:
    groups: dict[int, list[DiagFn]] = {}
    for k, d in terms:
        groups.setdefault(k, []).append(d)
    merged = []
    for k in sorted(groups):
        fns = tuple(groups[k])
        if len(fns) == 1:
            merged.append((k, fns[0]))
        else:
            merged.append((k, _sum_diag(fns)))
    return tuple(merged)


def _sum_diag(fns: tuple[DiagFn, ...]) -> DiagFn:
    def d(n: int) -> complex:
        return sum((f(n) for f in fns), 0j)

    return d


def operator(terms: Sequence[tuple[int, DiagFn]], dim: int) -> OperatorExpr:
    return OperatorExpr(terms=_merge_terms(terms), domain_dim=dim)


def annihilation(dim: int) -> OperatorExpr:
    return operator([(-1, _one)], dim)


def creation(dim: int) -> OperatorExpr:
    return operator([(+1, _one)], dim)


def diag_op(fn: DiagFn, dim: int) -> OperatorExpr:
    return operator([(0, fn)], dim)


def number_op(dim: int) -> OperatorExpr:
    return diag_op(lambda n: complex(n), dim)


def identity_op(dim: int) -> OperatorExpr:
    return diag_op(_one, dim)


def scale(op: OperatorExpr, c: complex) -> OperatorExpr:
    def scaled(d: DiagFn) -> DiagFn:
        return lambda n: c * d(n)

    return operator([(k, scaled(d)) for k, d in op.terms], op.domain_dim)


def add(x: OperatorExpr, y: OperatorExpr) -> OperatorExpr:
    _check_dims(x, y)
    return operator(list(x.terms) + list(y.terms), x.domain_dim)


def sub(x: OperatorExpr, y: OperatorExpr) -> OperatorExpr:
    return add(x, scale(y, -1.0))


def _check_dims(x: OperatorExpr, y: OperatorExpr) -> None:
    if x.domain_dim != y.domain_dim:
        raise DimensionMismatchError(
            f"operator dims {x.domain_dim} and {y.domain_dim} differ"
        )


def _composed_diag(k1: int, d1: DiagFn, k2: int, d2: DiagFn) -> DiagFn:
    # Ladder numerators first: when the inner shifts annihilate the index
    # the term is zero and neither diagonal is evaluated, so composed
    # expressions never divide by a vanished ladder factor.  The ratio of
    # squared ladder products is an integer-valued polynomial of n (the
    # normal-ordering factor), so it is computed in exact integer
    # arithmetic and rooted once.
    k = k1 + k2

    def d(n: int) -> complex:
        num = _ladder_prod(n, k2) * _ladder_prod(n + k2, k1)
        if num == 0:
            return 0.0
        quot, rem = divmod(num, _ladder_prod(n, k))
        ratio = math.sqrt(quot) if rem == 0 else math.sqrt(num / _ladder_prod(n, k))
        return d1(n + k2) * d2(n) * ratio

    return d


def compose(x: OperatorExpr, y: OperatorExpr) -> OperatorExpr:
    """Operator product: apply(compose(x, y), s) == apply(x, apply(y, s))
    for every image that stays inside the truncation."""
    _check_dims(x, y)
    terms = [
        (k1 + k2, _composed_diag(k1, d1, k2, d2))
        for k1, d1 in x.terms
        for k2, d2 in y.terms
    ]
    return operator(terms, x.domain_dim)


def adjoint(x: OperatorExpr) -> OperatorExpr:
    # A term (k, d) has matrix elements <n+k| . |n> = d(n) L(n, k); its
    # adjoint carries the conjugate to the reversed shift, and the ladder
    # factors match exactly: L(m, -k) at m = n + k equals L(n, k).
    def flipped(k: int, d: DiagFn) -> DiagFn:
        return lambda m: complex(d(m - k)).conjugate()

    return operator([(-k, flipped(k, d)) for k, d in x.terms], x.domain_dim)


def commutator(x: OperatorExpr, y: OperatorExpr) -> OperatorExpr:
    return sub(compose(x, y), compose(y, x))


def apply(op: OperatorExpr, s: FockState) -> FockState:
    """Apply op to s, returning the (generally unnormalized) image.

    Image amplitudes landing at index >= dim are dropped and their squared
    magnitude accumulated into the result's leak.  Components annihilated
    by a ladder factor never evaluate the diagonal (numerator-first rule);
    a non-finite diagonal at a contributing index is an error naming it.
    """
    if op.domain_dim != s.dim:
        raise DimensionMismatchError(
            f"operator dim {op.domain_dim} does not match state dim {s.dim}"
        )
    dim = s.dim
    amps = s.amplitudes
    occupied = [int(n) for n in np.nonzero(amps)[0]]
    out = np.zeros(dim, dtype=np.complex128)
    leak = 0.0
    for k, d in op.terms:
        for n in occupied:
            factor = ladder_factor(n, k)
            if factor == 0.0:
                continue
            value = complex(d(n))
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise OperatorEvaluationError(
                    f"diagonal evaluated to {value} at occupied index {n}"
                )
            contrib = amps[n] * value * factor
            target = n + k
            if target >= dim:
                leak += abs(contrib) ** 2
            else:
                out[target] += contrib
    return make_state(
        out,
        parity=_image_parity(s.parity, op),
        norm_constant=1.0,
        label=s.label,
        leak=leak,
    )


def _image_parity(parity: str, op: OperatorExpr) -> str | None:
    if parity == "full":
        return "full"
    shifts = {k % 2 for k, _ in op.terms}
    if shifts == {0}:
        return parity
    if shifts == {1}:
        return "odd" if parity == "even" else "even"
    return None  # mixed parity shifts: derive from the image


def to_matrix(op: OperatorExpr) -> np.ndarray:
    """Dense oracle: materialize op entrywise on its truncation.

    Test-only path by design; apply() is the production route.
    """
    dim = op.domain_dim
    mat = np.zeros((dim, dim), dtype=np.complex128)
    for k, d in op.terms:
        for n in range(dim):
            factor = ladder_factor(n, k)
            if factor == 0.0:
                continue
            target = n + k
            if not 0 <= target < dim:
                continue
            value = complex(d(n))
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise OperatorEvaluationError(
                    f"diagonal evaluated to {value} at index {n}"
                )
            mat[target, n] += value * factor
    return mat
