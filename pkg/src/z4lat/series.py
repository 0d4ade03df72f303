"""Truncated q-series with exponents in (1/4)Z, Jacobi thetas, and shadow theory.

Exponents are stored as integer quarter-steps ``k`` (meaning ``q^(k/4)``), so
lattice theta series and shadow series share one representation.  A series
knows its coefficients for ``0 <= k < order``.  Coefficients are Python ints
or :class:`fractions.Fraction`; nothing here touches floating point.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

#: default truncation, in quarter-steps (i.e. through q^11.75)
DEFAULT_ORDER = 48


class InsufficientOrder(ValueError):
    pass


class NonIntegralAlpha(ValueError):
    pass


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class QuarterSeries:
    """``sum_k c_k q^(k/4)`` known modulo ``q^(order/4)``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Mapping[int, Rational] | Sequence[Rational] = (), order: int = DEFAULT_ORDER):
        if order < 0:
            raise ValueError("order must be nonnegative")
        dense = [0] * order
        items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
        for k, c in items:
            if k < 0:
                raise ValueError("negative exponent")
            if k < order:
                dense[k] += c
        self.coeffs = [_norm(c) for c in dense]
        self.order = order

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> QuarterSeries:
        return cls({0: 1}, order)

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> QuarterSeries:
        return cls({}, order)

    @classmethod
    def from_integer_exponents(cls, coeffs: Sequence[Rational], order: int | None = None) -> QuarterSeries:
        """Build from ``[N_0, N_1, ...]`` meaning ``sum N_m q^m``."""
        if order is None:
            order = 4 * (len(coeffs) - 1) + 1
        return cls({4 * m: c for m, c in enumerate(coeffs)}, order)

    def __getitem__(self, k: int):
        if not 0 <= k < self.order:
            raise IndexError(f"quarter-step {k} outside known range [0, {self.order})")
        return self.coeffs[k]

    def coefficient(self, exponent) -> Rational:
        """Coefficient of ``q^exponent`` (exponent a multiple of 1/4)."""
        k = Fraction(exponent) * 4
        if k.denominator != 1:
            raise ValueError(f"exponent {exponent} is not a multiple of 1/4")
        return self[int(k)]

    @property
    def valuation(self) -> int:
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return self.order

    def items(self):
        """Nonzero ``(quarter_step, coefficient)`` pairs."""
        return [(k, c) for k, c in enumerate(self.coeffs) if c]

    def integer_coefficients(self) -> list:
        """``[N_0, N_1, ...]`` for a series supported on integer exponents."""
        if any(c for k, c in enumerate(self.coeffs) if k % 4):
            raise ValueError("series has non-integral exponents")
        return [self.coeffs[k] for k in range(0, self.order, 4)]

    def truncate(self, order: int) -> QuarterSeries:
        return QuarterSeries(self.coeffs[:order], min(order, self.order))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuarterSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def agrees_with(self, other: QuarterSeries) -> bool:
        """Equal on the common known range."""
        o = min(self.order, other.order)
        return self.coeffs[:o] == other.coeffs[:o]

    def __repr__(self) -> str:
        return f"QuarterSeries({self.to_poly_string()})"

    def __neg__(self) -> QuarterSeries:
        return QuarterSeries([-c for c in self.coeffs], self.order)

    def __add__(self, other):
        if isinstance(other, QuarterSeries):
            o = min(self.order, other.order)
            return QuarterSeries([a + b for a, b in zip(self.coeffs[:o], other.coeffs[:o])], o)
        return self + QuarterSeries({0: other}, self.order)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QuarterSeries):
            return QuarterSeries([c * other for c in self.coeffs], self.order)
        va, vb = self.valuation, other.valuation
        o = min(self.order + vb, other.order + va)
        out = [0] * o
        bc = other.coeffs
        for i, a in enumerate(self.coeffs):
            if not a or i >= o:
                continue
            for j in range(vb, min(len(bc), o - i)):
                b = bc[j]
                if b:
                    out[i + j] += a * b
        return QuarterSeries(out, o)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return QuarterSeries([Fraction(c) / scalar for c in self.coeffs], self.order)

    def __pow__(self, e: int) -> QuarterSeries:
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = QuarterSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result.truncate(self.order) if result.order > self.order else result

    def substitute_q2(self) -> QuarterSeries:
        """``f(q^2)``."""
        return QuarterSeries({2 * k: c for k, c in enumerate(self.coeffs)}, 2 * self.order)

    def is_nonnegative_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 and c >= 0 for c in self.coeffs)

    def to_lines(self) -> list[str]:
        return [f"q^{{{k}/4}}: {c}" for k, c in self.items()]

    def to_poly_string(self, var: str = "q") -> str:
        parts = []
        for k, c in self.items():
            e = Fraction(k, 4)
            if e == 0:
                mono = ""
            elif e == 1:
                mono = var
            else:
                mono = f"{var}^{e}" if e.denominator == 1 else f"{var}^({e})"
            if mono and c == 1:
                term = mono
            elif mono and c == -1:
                term = f"-{mono}"
            else:
                term = f"{c}{' ' + mono if mono else ''}"
            parts.append(term)
        body = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        return f"{body} + O({var}^{Fraction(self.order, 4)})"


# ---------------------------------------------------------------------------
# Jacobi thetas and friends


def _square_series(order: int, residue: int, step: int, scale: int, signed: bool = False) -> QuarterSeries:
    """``sum over integers m = residue (mod step) of (+-1) q^(m^2 * scale / 4)``."""
    coeffs: dict[int, int] = {}
    bound = 0
    while bound * bound * scale < order:
        bound += 1
    for m in range(-bound, bound + 1):
        if m % step != residue % step:
            continue
        k = m * m * scale
        if k < order:
            sign = -1 if signed and m % 2 else 1
            coeffs[k] = coeffs.get(k, 0) + sign
    return QuarterSeries(coeffs, order)


def theta3(order: int = DEFAULT_ORDER) -> QuarterSeries:
    """``sum_m q^(m^2)``."""
    return _square_series(order, 0, 1, 4)


def theta4(order: int = DEFAULT_ORDER) -> QuarterSeries:
    return _square_series(order, 0, 1, 4, signed=True)


def theta2(order: int = DEFAULT_ORDER) -> QuarterSeries:
    """``sum_m q^((m+1/2)^2)``, i.e. odd squares in quarter-steps."""
    return _square_series(order, 1, 2, 1)


def theta4_of_q2(order: int = DEFAULT_ORDER) -> QuarterSeries:
    return _square_series(order, 0, 1, 8, signed=True)


def theta_z_class(residue: int, order: int = DEFAULT_ORDER) -> QuarterSeries:
    """``sum_{m = residue (mod 4)} q^(m^2/4)``: one coordinate of a Construction A lattice."""
    return _square_series(order, residue, 4, 1)


def delta8(order: int = DEFAULT_ORDER) -> QuarterSeries:
    """``q * prod_{m>=1} (1 - q^(2m-1))^8 (1 - q^(4m))^8``."""
    prod = QuarterSeries.one(order)
    m = 1
    while 4 * (2 * m - 1) < order:
        prod = prod * QuarterSeries({0: 1, 4 * (2 * m - 1): -1}, order) ** 8
        if 16 * m < order:
            prod = prod * QuarterSeries({0: 1, 16 * m: -1}, order) ** 8
        m += 1
    return QuarterSeries({k + 4: c for k, c in enumerate(prod.coeffs)}, order)


# ---------------------------------------------------------------------------
# odd unimodular decomposition and the shadow


@dataclass(frozen=True)
class ThetaDecomposition:
    """``theta = sum_j a_j theta3^(n-8j) Delta8^j`` for ``j = 0..floor(n/8)``."""

    n: int
    a: tuple[Fraction, ...]

    def basis(self, order: int = DEFAULT_ORDER) -> list[QuarterSeries]:
        return decomposition_basis(self.n, order)

    def reconstruct(self, order: int = DEFAULT_ORDER) -> QuarterSeries:
        total = QuarterSeries.zero(order)
        for a_j, b in zip(self.a, decomposition_basis(self.n, order)):
            total = total + b * a_j
        return total


def decomposition_basis(n: int, order: int = DEFAULT_ORDER) -> list[QuarterSeries]:
    t3, d8 = theta3(order), delta8(order)
    return [(t3 ** (n - 8 * j) * d8 ** j).truncate(order) for j in range(n // 8 + 1)]


def decompose(theta: QuarterSeries, n: int) -> ThetaDecomposition:
    """Solve for the ``a_j`` from the first ``floor(n/8) + 1`` coefficients.

    Basis element ``j`` starts at ``q^j`` with coefficient 1, so the system is
    unit lower triangular.
    """
    top = n // 8
    if theta.order <= 4 * top:
        raise InsufficientOrder(f"need coefficients through q^{top}, series known below q^{Fraction(theta.order, 4)}")
    return decompose_partial(theta, n, top)


def shadow(dec: ThetaDecomposition, order: int = DEFAULT_ORDER) -> QuarterSeries:
    """``sum_j (-1)^j 16^-j a_j theta2^(n-8j) theta4(q^2)^(8j)``."""
    t2, t4 = theta2(order), theta4_of_q2(order)
    total = QuarterSeries.zero(order)
    for j, a_j in enumerate(dec.a):
        if not a_j:
            continue
        term = (t2 ** (dec.n - 8 * j) * t4 ** (8 * j)).truncate(order)
        total = total + term * (Fraction((-1) ** j, 16 ** j) * a_j)
    return total


@dataclass
class ConstraintReport:
    """Outcome of the shadow conditions for minimum norm ``mu``.

    Each condition maps to ``(passed, witnesses)`` where witnesses are
    ``(exponent, coefficient)`` pairs that violate it.
    """

    mu: int
    conditions: dict[str, tuple[bool, list]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(p for p, _ in self.conditions.values())

    def lines(self) -> list[str]:
        out = []
        for name, (passed, wit) in self.conditions.items():
            tail = "" if passed else "  witnesses: " + ", ".join(f"q^{e}:{c}" for e, c in wit)
            out.append(f"{'pass' if passed else 'FAIL'}  {name}{tail}")
        return out


def shadow_constraints(S: QuarterSeries, mu: int) -> ConstraintReport:
    """Check the shadow of an odd unimodular lattice of minimum norm ``mu``.

    Conditions: at most one nonzero ``B_r`` with ``r < (mu+2)/2``; ``B_r = 0``
    for ``r < mu/4``; ``B_r <= 2`` for ``r < mu/2``; every ``B_r`` a
    nonnegative integer.  Exponents beyond the known range are not inspected.
    """
    rep = ConstraintReport(mu)
    terms = [(Fraction(k, 4), c) for k, c in S.items()]
    low = [(e, c) for e, c in terms if e < Fraction(mu + 2, 2)]
    rep.conditions["at_most_one_below_(mu+2)/2"] = (len(low) <= 1, low if len(low) > 1 else [])
    bad = [(e, c) for e, c in terms if e < Fraction(mu, 4)]
    rep.conditions["zero_below_mu/4"] = (not bad, bad)
    bad = [(e, c) for e, c in terms if e < Fraction(mu, 2) and c > 2]
    rep.conditions["at_most_2_below_mu/2"] = (not bad, bad)
    bad = [(e, c) for e, c in terms if Fraction(c).denominator != 1 or c < 0]
    rep.conditions["nonnegative_integers"] = (not bad, bad)
    return rep


@dataclass(frozen=True)
class Dim41Result:
    alpha: int
    beta: int
    decomposition: ThetaDecomposition
    theta: QuarterSeries
    shadow: QuarterSeries
    base_n4: int


def odd_unimodular_prefix(n: int, mu: int, order: int = DEFAULT_ORDER) -> ThetaDecomposition:
    """The ``a_j`` forced by ``N_0 = 1`` and ``N_1 = ... = N_(mu-1) = 0``."""
    top = min(mu - 1, n // 8)
    prefix = QuarterSeries.from_integer_exponents([1] + [0] * top)
    return decompose_partial(prefix, n, top)


def decompose_partial(theta: QuarterSeries, n: int, top: int) -> ThetaDecomposition:
    """Like :func:`decompose` but only for ``a_0..a_top``."""
    N = theta.integer_coefficients()
    basis = decomposition_basis(n, 4 * top + 1)
    a: list[Fraction] = []
    for j in range(top + 1):
        a.append(Fraction(N[j]) - sum((a[l] * basis[l][4 * j] for l in range(j)), Fraction(0)))
    return ThetaDecomposition(n, tuple(a))


def dim41_analysis(n4: int, shadow_has_quarter_norm: bool = False, order: int = 44) -> Dim41Result:
    """Resolve ``a_4 = 2^7 alpha`` and ``a_5 = -2^19 beta`` for a dimension-41 lattice of minimum 4.

    ``alpha`` comes from the kissing number ``n4``.  The shadow conditions
    leave ``beta = 0`` or ``alpha = 79 beta``; the second branch is taken
    only when ``alpha`` allows it and the caller says the shadow has vectors
    of norm 1/4.
    """
    n, a4_unit, a5_unit = 41, 2 ** 7, -(2 ** 19)
    head = odd_unimodular_prefix(n, 4)
    basis = decomposition_basis(n, 17)
    base = sum((a * b[16] for a, b in zip(head.a, basis)), Fraction(0))
    step = a4_unit * basis[4][16]
    alpha = (Fraction(n4) - base) / step
    if alpha.denominator != 1:
        raise NonIntegralAlpha(f"N4 = {n4} gives alpha = {alpha}")
    alpha = int(alpha)
    beta = 0
    if shadow_has_quarter_norm and alpha > 0 and alpha % 79 == 0:
        beta = alpha // 79
    dec = ThetaDecomposition(n, head.a + (Fraction(a4_unit * alpha), Fraction(a5_unit * beta)))
    return Dim41Result(alpha, beta, dec, dec.reconstruct(order), shadow(dec, order), int(base))
