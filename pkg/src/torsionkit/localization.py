"""Exterior-algebra model of H^*(U(1)^{2g}; Q) and the U(1) specialization
of the localization integrand.

Classes live in the exterior algebra on generators ``e_1 .. e_{2g}`` (all
of degree 1) with coefficients that are polynomials in the level ``k``.
The symplectic class is ``Omega = e_1 e_2 + e_3 e_4 + ... + e_{2g-1} e_{2g}``
and integration picks out the coefficient of ``e_1 ... e_{2g}`` (unit
volume normalization).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping, Sequence

from .errors import GenusMismatchError, InvalidInputError, NonNilpotentInputError
from .linalg import format_rational, parse_rational


class KPoly:
    """Polynomial in the level ``k`` with rational coefficients (constant term first)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [x if type(x) is Fraction else Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def constant(cls, c) -> "KPoly":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c=1) -> "KPoly":
        return cls([0] * degree + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_monomial(self) -> bool:
        return sum(1 for c in self.coeffs if c) == 1

    def __call__(self, k) -> Fraction:
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * k + c
        return out

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = KPoly.constant(other)
        if not isinstance(other, KPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = KPoly.constant(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return KPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return KPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return KPoly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return KPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return KPoly(out)

    __rmul__ = __mul__

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(str(c) if i == 0 else f"{c}*k" if i == 1 else f"{c}*k^{i}")
        return " + ".join(parts)

    def to_json(self) -> list:
        return [format_rational(c) for c in self.coeffs]


K = KPoly.monomial(1)


def _merge_sign(a: tuple, b: tuple) -> tuple[int, tuple] | None:
    """Sign and sorted index tuple of ``e_a ^ e_b``; None if they overlap."""
    if set(a) & set(b):
        return None
    inversions = sum(1 for x in a for y in b if x > y)
    return (-1 if inversions % 2 else 1), tuple(sorted(a + b))


class ExteriorClass:
    """Element of Lambda(e_1..e_{2g}) (x) Q[k], keyed by sorted index tuples."""

    __slots__ = ("genus", "terms")

    def __init__(self, genus: int, terms: Mapping[Sequence[int], object] | None = None):
        if genus < 0:
            raise ValueError("genus must be non-negative")
        self.genus = genus
        acc: dict[tuple, KPoly] = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if any(not 1 <= i <= 2 * genus for i in idx):
                raise InvalidInputError(f"generator index out of range in {idx} for genus {genus}")
            if len(set(idx)) != len(idx):
                continue
            order = sorted(range(len(idx)), key=idx.__getitem__)
            inversions = sum(1 for p in range(len(order)) for q in range(p + 1, len(order))
                             if order[p] > order[q])
            c = c if isinstance(c, KPoly) else KPoly.constant(c)
            if inversions % 2:
                c = -c
            key = tuple(sorted(idx))
            acc[key] = acc.get(key, KPoly()) + c
        self.terms = {k: v for k, v in acc.items() if v}

    @classmethod
    def one(cls, genus: int) -> "ExteriorClass":
        return cls(genus, {(): 1})

    @classmethod
    def generator(cls, genus: int, i: int) -> "ExteriorClass":
        return cls(genus, {(i,): 1})

    @classmethod
    def top(cls, genus: int) -> "ExteriorClass":
        return cls(genus, {tuple(range(1, 2 * genus + 1)): 1})

    def _check(self, other):
        if not isinstance(other, ExteriorClass):
            raise TypeError(f"expected ExteriorClass, got {type(other).__name__}")
        if other.genus != self.genus:
            raise GenusMismatchError(f"genus {self.genus} vs {other.genus}")

    def __eq__(self, other):
        if not isinstance(other, ExteriorClass):
            return NotImplemented
        return self.genus == other.genus and self.terms == other.terms

    def __hash__(self):
        return hash((self.genus, frozenset(self.terms.items())))

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, KPoly()) + v
        return ExteriorClass(self.genus, acc)

    def __neg__(self):
        return ExteriorClass(self.genus, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ExteriorClass":
        """Multiply every coefficient by a scalar or a :class:`KPoly`."""
        return ExteriorClass(self.genus, {k: v * c for k, v in self.terms.items()})

    def __xor__(self, other):
        return wedge(self, other)

    def degrees(self) -> set[int]:
        return {len(k) for k in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def part(self, degree: int) -> "ExteriorClass":
        return ExteriorClass(self.genus, {k: v for k, v in self.terms.items() if len(k) == degree})

    def __repr__(self):
        if not self.terms:
            return f"ExteriorClass(g={self.genus}, 0)"
        body = " + ".join(f"({v})*e{''.join(map(str, k)) or '0'}" if k else f"({v})"
                          for k, v in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])))
        return f"ExteriorClass(g={self.genus}, {body})"

    def to_json(self) -> dict:
        return {"genus": self.genus,
                "terms": [{"generators": list(k), "coeff": [v.to_json()]}
                          for k, v in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))]}

    @classmethod
    def from_json(cls, obj) -> "ExteriorClass":
        try:
            genus = obj["genus"]
            terms = {}
            for t in obj["terms"]:
                coeff = t["coeff"]
                # accept both [[c0, c1, ...]] and [c0, c1, ...]
                if coeff and isinstance(coeff[0], list):
                    coeff = coeff[0]
                key = tuple(t["generators"])
                poly = KPoly(parse_rational(c) for c in coeff)
                cls(genus, {key: 1})  # range check
                terms[key] = terms.get(key, KPoly()) + poly
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"malformed exterior class: {exc}") from None
        return cls(genus, terms)


def wedge(a: ExteriorClass, b: ExteriorClass) -> ExteriorClass:
    a._check(b)
    acc: dict[tuple, KPoly] = {}
    for ka, va in a.terms.items():
        for kb, vb in b.terms.items():
            merged = _merge_sign(ka, kb)
            if merged is None:
                continue
            sign, key = merged
            acc[key] = acc.get(key, KPoly()) + va * vb * sign
    return ExteriorClass(a.genus, acc)


def wedge_power(a: ExteriorClass, m: int) -> ExteriorClass:
    out = ExteriorClass.one(a.genus)
    for _ in range(m):
        out = wedge(out, a)
    return out


def symplectic_class(genus: int) -> ExteriorClass:
    """``Omega = sum_p e_{2p-1} e_{2p}``."""
    return ExteriorClass(genus, {(2 * p - 1, 2 * p): 1 for p in range(1, genus + 1)})


def exp_class(a: ExteriorClass) -> ExteriorClass:
    """``sum_m a^m / m!``; terminates because ``a`` has no degree-0 part."""
    if () in a.terms:
        raise NonNilpotentInputError("exponential needs a class without degree-0 part")
    out = ExteriorClass.one(a.genus)
    power = ExteriorClass.one(a.genus)
    for m in range(1, 2 * a.genus + 1):
        power = wedge(power, a)
        if not power.terms:
            break
        out = out + power.scale(Fraction(1, factorial(m)))
    return out


def integrate_top(a: ExteriorClass) -> KPoly:
    """Coefficient of ``e_1 ... e_{2g}``."""
    return a.terms.get(tuple(range(1, 2 * a.genus + 1)), KPoly())


# ---------------------------------------------------------------------------
# A-hat genus

def bernoulli_numbers(n: int) -> list[Fraction]:
    """``B_0 .. B_n`` with ``B_1 = -1/2``."""
    b = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        b[m] = Fraction(1) if m == 0 else -sum(
            Fraction(factorial(m + 1), factorial(j) * factorial(m + 1 - j)) * b[j] for j in range(m)
        ) / (m + 1)
    return b


def a_hat_coefficients(order: int) -> list[Fraction]:
    """Taylor coefficients ``c_0 .. c_order`` of ``(x/2) / sinh(x/2)``.

    Uses ``t / sinh t = sum_n (2 - 2^{2n}) B_{2n} t^{2n} / (2n)!`` with ``t = x/2``.
    Odd coefficients vanish.
    """
    b = bernoulli_numbers(order)
    out = [Fraction(0)] * (order + 1)
    for m in range(0, order + 1, 2):
        n = m // 2
        out[m] = (2 - 2 ** (2 * n)) * b[m] / factorial(m) / 2 ** m
    return out


def a_hat_series(roots: Sequence[ExteriorClass], order: int, genus: int | None = None) -> ExteriorClass:
    """``prod_j (x_j/2)/sinh(x_j/2)`` truncated at ``x^order`` for each root."""
    if genus is None:
        if not roots:
            raise ValueError("genus is required when no roots are given")
        genus = roots[0].genus
    coeffs = a_hat_coefficients(order)
    out = ExteriorClass.one(genus)
    for x in roots:
        if x.genus != genus:
            raise GenusMismatchError(f"root of genus {x.genus} in genus-{genus} product")
        if () in x.terms:
            raise NonNilpotentInputError("Chern roots must have no degree-0 part")
        factor = ExteriorClass(genus)
        power = ExteriorClass.one(genus)
        for m, c in enumerate(coeffs):
            if m:
                power = wedge(power, x)
            if c:
                factor = factor + power.scale(c)
        out = wedge(out, factor)
    return out


# ---------------------------------------------------------------------------
# eta-invariant prefactor and the U(1) partition function

@dataclass(frozen=True)
class EtaPrefactor:
    """``exp(-i pi eta0 / 2)`` kept exact: the angle is ``angle_over_pi * pi``."""

    eta0: Fraction
    angle_over_pi: Fraction

    @property
    def phase(self) -> tuple[int, int] | None:
        """``(cos, sin)`` when both are rational (angle a multiple of pi/2), else None."""
        q = self.angle_over_pi * 2
        if q.denominator != 1:
            return None
        return [(1, 0), (0, 1), (-1, 0), (0, -1)][q.numerator % 4]

    def to_json(self) -> dict:
        return {"eta0": format_rational(self.eta0),
                "angle_over_pi": format_rational(self.angle_over_pi),
                "phase": list(self.phase) if self.phase is not None else None}


def eta_prefactor(n: int, dim_g: int = 1) -> EtaPrefactor:
    eta0 = Fraction(-n * dim_g, 6)
    return EtaPrefactor(eta0, -eta0 / 2)


@dataclass(frozen=True)
class FormalCoupling:
    """The formal expression ``2 pi / (k + shift)``."""

    shift: Fraction = Fraction(0)

    def __str__(self):
        return "2*pi/k" if self.shift == 0 else f"2*pi/(k + {self.shift})"


@dataclass(frozen=True)
class LocalizationData:
    n: int
    dim_g: int = 1
    dual_coxeter: Fraction = Fraction(0)
    theta_class: int = 0  # degree-normalized Poincare bundle has c_1 = 0

    @property
    def eta0(self) -> Fraction:
        return eta_prefactor(self.n, self.dim_g).eta0

    @property
    def epsilon(self) -> FormalCoupling:
        return FormalCoupling()

    @property
    def epsilon_r(self) -> FormalCoupling:
        return FormalCoupling(Fraction(self.dual_coxeter))

    def to_json(self) -> dict:
        return {"n": self.n, "dim_G": self.dim_g, "eta0": format_rational(self.eta0),
                "dual_coxeter": format_rational(self.dual_coxeter),
                "epsilon": str(self.epsilon), "epsilon_r": str(self.epsilon_r),
                "theta_class": self.theta_class}


@dataclass(frozen=True)
class BWPartition:
    genus: int
    n: int
    level: int
    polynomial: KPoly
    magnitude: Fraction
    k_exponent: int
    eta: EtaPrefactor
    components: int = 1

    def to_json(self) -> dict:
        return {"genus": self.genus, "n": self.n, "level": self.level,
                "polynomial": self.polynomial.to_json(),
                "magnitude": format_rational(self.magnitude),
                "k_exponent": self.k_exponent, "components": self.components,
                "eta": self.eta.to_json()}


def localization_integrand(genus: int, data: LocalizationData) -> ExteriorClass:
    """``A-hat * exp(k Omega + c_1/2 + Theta-term)`` on the torus ``U(1)^{2g}``.

    The torus has trivial tangent bundle, so every Chern root and ``c_1``
    vanish; ``Theta`` is ``data.theta_class`` (zero for U(1)).  The
    ``1/(2 pi eps)`` normalization of Omega is absorbed so the exponent
    reads ``k Omega``.
    """
    if data.theta_class != 0:
        raise NotImplementedError("only the Theta = 0 specialization is supported")
    zero_root = ExteriorClass(genus)
    roots = [zero_root] * genus
    a_hat = a_hat_series(roots, order=2 * genus, genus=genus)
    c1 = ExteriorClass(genus)
    exponent = symplectic_class(genus).scale(K) + c1.scale(Fraction(1, 2))
    return wedge(a_hat, exp_class(exponent))


@lru_cache(maxsize=64)
def _integrated(genus: int, data: LocalizationData) -> KPoly:
    return integrate_top(localization_integrand(genus, data))


def _integrand_key(data: LocalizationData) -> LocalizationData:
    # the specialized integrand only sees theta_class, not n
    return LocalizationData(1, theta_class=data.theta_class)


def bw_partition_torus(genus: int, n: int, k: int, components: int = 1) -> BWPartition:
    """Integral of the specialized integrand over ``U(1)^{2g}``, evaluated at level ``k``.

    The infinite center normalization ``1/|Gamma|`` is dropped.
    """
    if genus < 0:
        raise ValueError("genus must be non-negative")
    if n < 1:
        raise ValueError("Euler degree must be at least 1")
    if k < 1:
        raise ValueError("level must be at least 1")
    data = LocalizationData(n)
    poly = _integrated(genus, _integrand_key(data)) * components
    return BWPartition(genus, n, k, poly, poly(k), poly.degree, eta_prefactor(n, data.dim_g),
                       components)
