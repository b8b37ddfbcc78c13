"""Based chain complexes over Q, their homology, and Reidemeister torsion.

A complex is stored as its chain ranks ``degrees = (n_0, ..., n_top)``
and the list of boundary maps ``boundaries[i - 1] = d_i : C_i -> C_{i-1}``
for ``i = 1 .. top``.  Use :meth:`BasedChainComplex.d` to get ``d_i`` for
any ``i``; out-of-range degrees give the appropriate zero map.  The
preferred basis of every ``C_i`` is the standard one.

Torsion convention
------------------
For each degree ``i`` the new basis of ``C_i`` is, in this order,

* lifts of the chosen basis of ``B_{i-1}`` (the ``b~^i``),
* the chosen basis of ``B_i``, i.e. ``d_{i+1}(b~^{i+1})``,
* the homology representatives ``h~^i``,

and the torsion is ``prod_{i >= 0} det_i ** ((-1) ** (i + 1))`` where
``det_i`` is the determinant of the matrix whose columns are that basis.
The magnitude is basis-choice independent; the sign is only meaningful
for this fixed ordering.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (BadHomologyBasisError, IndependenceViolatedError, InvalidInputError,
                     MissingHomologyBasisError, NotAComplexError, ShapeMismatchError)
from .linalg import (RationalMatrix, _Matrix, as_integer, as_rational,
                     determinant, format_rational, image_basis, kernel_basis,
                     matrix_of_columns, parse_rational, preimage, rank, smith_normal_form)


@dataclass(frozen=True)
class BasedChainComplex:
    degrees: tuple[int, ...]
    boundaries: tuple[RationalMatrix, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(n) for n in self.degrees))
        object.__setattr__(self, "boundaries", tuple(as_rational(b) for b in self.boundaries))

    @classmethod
    def from_boundaries(cls, degrees: Sequence[int], boundaries: Sequence[_Matrix]):
        return cls(tuple(degrees), tuple(boundaries))

    @property
    def top(self) -> int:
        return len(self.degrees) - 1

    def rank_of(self, i: int) -> int:
        return self.degrees[i] if 0 <= i < len(self.degrees) else 0

    def d(self, i: int) -> RationalMatrix:
        """The boundary ``d_i : C_i -> C_{i-1}`` (zero map outside the stored range)."""
        if 1 <= i <= len(self.boundaries):
            return self.boundaries[i - 1]
        return RationalMatrix.zeros(self.rank_of(i - 1), self.rank_of(i))

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * n for i, n in enumerate(self.degrees))

    def is_acyclic(self) -> bool:
        return not any(betti_numbers(self))

    def to_json(self) -> dict:
        return {"degrees": list(self.degrees), "boundaries": [b.to_json() for b in self.boundaries]}

    @classmethod
    def from_json(cls, obj) -> "BasedChainComplex":
        if not isinstance(obj, dict) or "degrees" not in obj:
            raise InvalidInputError("complex must be an object with 'degrees' and 'boundaries'")
        degrees = obj["degrees"]
        if not isinstance(degrees, list) or not all(isinstance(n, int) and n >= 0 for n in degrees):
            raise InvalidInputError("'degrees' must be a list of non-negative integers")
        boundaries = [RationalMatrix.from_json(b) for b in obj.get("boundaries", [])]
        return cls(tuple(degrees), tuple(boundaries))


@dataclass(frozen=True)
class HomologyBasis:
    """Cycle representatives per degree; degrees not listed are empty."""

    vectors: Mapping[int, tuple] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(i): tuple(tuple(Fraction(x) for x in v) for v in vs)
                 for i, vs in dict(self.vectors).items()}
        object.__setattr__(self, "vectors", clean)

    def in_degree(self, i: int) -> tuple:
        return self.vectors.get(i, ())

    def rescaled(self, degree: int, index: int, factor) -> "HomologyBasis":
        vs = dict(self.vectors)
        reps = list(vs[degree])
        reps[index] = tuple(Fraction(factor) * x for x in reps[index])
        vs[degree] = tuple(reps)
        return HomologyBasis(vs)

    def to_json(self) -> list:
        return [{"degree": i, "vectors": [[format_rational(x) for x in v] for v in vs]}
                for i, vs in sorted(self.vectors.items())]

    @classmethod
    def from_json(cls, obj) -> "HomologyBasis":
        items = obj if isinstance(obj, list) else [obj]
        vectors = {}
        for item in items:
            if not isinstance(item, dict) or "degree" not in item or "vectors" not in item:
                raise InvalidInputError("homology basis entries need 'degree' and 'vectors'")
            vectors[int(item["degree"])] = tuple(tuple(parse_rational(x) for x in v)
                                                 for v in item["vectors"])
        return cls(vectors)


@dataclass(frozen=True)
class TorsionValue:
    magnitude: Fraction
    sign: int  # relative to the fixed basis ordering

    @property
    def signed(self) -> Fraction:
        return self.sign * self.magnitude

    def to_json(self) -> dict:
        return {"magnitude": format_rational(self.magnitude), "sign": self.sign}


# ---------------------------------------------------------------------------
# validation and homology

def validate(c: BasedChainComplex) -> None:
    """Raise unless boundary shapes fit the degrees and ``d o d = 0``."""
    if len(c.boundaries) > max(len(c.degrees) - 1, 0):
        raise ShapeMismatchError(
            f"{len(c.boundaries)} boundary maps for {len(c.degrees)} degrees")
    for i in range(1, len(c.boundaries) + 1):
        d = c.d(i)
        if d.shape != (c.degrees[i - 1], c.degrees[i]):
            raise ShapeMismatchError(
                f"d_{i} has shape {d.shape}, expected {(c.degrees[i - 1], c.degrees[i])}",
                degree=i)
    for i in range(2, len(c.boundaries) + 1):
        if not (c.d(i - 1) @ c.d(i)).is_zero():
            raise NotAComplexError(f"d_{i - 1} o d_{i} is nonzero", degree=i)


def betti_numbers(c: BasedChainComplex) -> list[int]:
    ranks = [rank(c.d(i)) for i in range(len(c.degrees) + 1)]
    return [n - ranks[i] - ranks[i + 1] for i, n in enumerate(c.degrees)]


def integral_homology(c: BasedChainComplex) -> list[dict]:
    """Per degree ``{"free_rank": r, "torsion": [f_1, ...]}`` over Z.

    Boundary entries must be integers.  Torsion coefficients are the
    invariant factors of ``d_{i+1}`` that exceed 1.
    """
    validate(c)
    snfs = []
    for i in range(len(c.degrees) + 1):
        try:
            snfs.append(smith_normal_form(as_integer(c.d(i))))
        except TypeError:
            raise InvalidInputError(f"d_{i} has non-integral entries") from None
    out = []
    for i, n in enumerate(c.degrees):
        free = n - snfs[i].rank - snfs[i + 1].rank
        tors = [f for f in snfs[i + 1].invariant_factors if f > 1]
        out.append({"free_rank": free, "torsion": tors})
    return out


def default_homology_basis(c: BasedChainComplex) -> HomologyBasis:
    """Cycles completing a basis of ``B_i`` to one of ``Z_i``, greedily."""
    out = {}
    for i, n in enumerate(c.degrees):
        chosen = list(image_basis(c.d(i + 1)))
        base = len(chosen)
        for z in kernel_basis(c.d(i)):
            if rank(matrix_of_columns(chosen + [z], n)) > len(chosen):
                chosen.append(z)
        if len(chosen) > base:
            out[i] = tuple(chosen[base:])
    return HomologyBasis(out)


def check_homology_basis(c: BasedChainComplex, h: HomologyBasis) -> None:
    bettis = betti_numbers(c)
    for i in h.vectors:
        if not 0 <= i < len(c.degrees):
            raise BadHomologyBasisError(f"homology basis given in absent degree {i}", degree=i)
    for i, n in enumerate(c.degrees):
        reps = list(h.in_degree(i))
        if len(reps) != bettis[i]:
            raise BadHomologyBasisError(
                f"degree {i}: {len(reps)} representatives for Betti number {bettis[i]}", degree=i)
        if not reps:
            continue
        if any(len(v) != n for v in reps):
            raise BadHomologyBasisError(f"degree {i}: representative of wrong length", degree=i)
        d = c.d(i)
        if any(any(d.apply(v)) for v in reps):
            raise BadHomologyBasisError(f"degree {i}: representative is not a cycle", degree=i)
        bounds = image_basis(c.d(i + 1))
        if rank(matrix_of_columns(bounds + reps, n)) != len(bounds) + len(reps):
            raise BadHomologyBasisError(
                f"degree {i}: representatives are dependent modulo boundaries", degree=i)


# ---------------------------------------------------------------------------
# torsion

def _random_invertible(rng: random.Random, n: int) -> list[list[Fraction]]:
    while True:
        m = [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)]
        if n == 0 or determinant(RationalMatrix.from_rows(m, n)):
            return m


def _combine(vectors, coeffs, dim):
    out = [Fraction(0)] * dim
    for v, a in zip(vectors, coeffs):
        if a:
            for k, x in enumerate(v):
                out[k] += a * x
    return tuple(out)


def _torsion(c: BasedChainComplex, h: HomologyBasis, rng: random.Random | None) -> TorsionValue:
    top = len(c.degrees)
    # basis b^i of B_i = im d_{i+1}, optionally re-drawn
    b = []
    for i in range(top):
        base = image_basis(c.d(i + 1))
        if rng is not None and base:
            mix = _random_invertible(rng, len(base))
            base = [_combine(base, row, c.degrees[i]) for row in mix]
            rng.shuffle(base)
        b.append(base)
    # lifts b~^{i+1} in C_{i+1} of b^i, optionally shifted by cycles
    lifts = [[] for _ in range(top + 1)]
    for i in range(top):
        if not b[i]:
            continue
        dmap = c.d(i + 1)
        kern = kernel_basis(dmap) if rng is not None else []
        for v in b[i]:
            w = preimage(dmap, v)
            if kern:
                w = tuple(x + y for x, y in zip(w, _combine(kern, [rng.randint(-3, 3) for _ in kern],
                                                            len(w))))
            lifts[i + 1].append(w)
    value = Fraction(1)
    for i, n in enumerate(c.degrees):
        reps = list(h.in_degree(i))
        if rng is not None and reps and b[i]:
            reps = [tuple(x + y for x, y in zip(r, _combine(b[i], [rng.randint(-3, 3) for _ in b[i]], n)))
                    for r in reps]
        cols = lifts[i] + b[i] + reps
        if len(cols) != n:
            raise BadHomologyBasisError(f"degree {i}: new basis has {len(cols)} vectors, expected {n}",
                                        degree=i)
        det = determinant(matrix_of_columns(cols, n))
        if det == 0:
            raise BadHomologyBasisError(f"degree {i}: new basis is degenerate", degree=i)
        value *= det if i % 2 else 1 / det
    return TorsionValue(abs(value), 1 if value > 0 else -1)


def torsion(c: BasedChainComplex, h: HomologyBasis | None = None) -> TorsionValue:
    """Reidemeister torsion of a based complex with homology basis ``h``.

    ``h`` may be omitted only for acyclic complexes.
    """
    validate(c)
    if h is None:
        if not c.is_acyclic():
            raise MissingHomologyBasisError("complex is not acyclic; a homology basis is required",
                                            betti=betti_numbers(c))
        h = HomologyBasis()
    check_homology_basis(c, h)
    return _torsion(c, h, None)


def torsion_choice_independence_check(c: BasedChainComplex, h: HomologyBasis | None = None,
                                      trials: int = 100, seed: int = 0) -> TorsionValue:
    """Recompute torsion with ``trials`` random choices of ``b^i`` and lifts.

    Returns the common value; raises :class:`IndependenceViolatedError` on
    any disagreement in magnitude.
    """
    reference = torsion(c, h)
    h = h or HomologyBasis()
    rng = random.Random(seed)
    for trial in range(trials):
        other = _torsion(c, h, rng)
        if other.magnitude != reference.magnitude:
            raise IndependenceViolatedError(
                "torsion depends on the choice of bases",
                trial=trial, expected=format_rational(reference.magnitude),
                got=format_rational(other.magnitude))
    return reference


# ---------------------------------------------------------------------------
# constructions

def direct_sum(c: BasedChainComplex, d: BasedChainComplex) -> BasedChainComplex:
    top = max(len(c.degrees), len(d.degrees))
    degrees = [c.rank_of(i) + d.rank_of(i) for i in range(top)]
    bounds = [RationalMatrix.block_diagonal([c.d(i), d.d(i)]) for i in range(1, top)]
    return BasedChainComplex(tuple(degrees), tuple(bounds))


def tensor_product(c: BasedChainComplex, d: BasedChainComplex) -> BasedChainComplex:
    """``(C (x) D)_k = sum_{i+j=k} C_i (x) D_j`` with the Koszul sign.

    Degree ``k`` is ordered by blocks ``(i, k - i)`` with ``i`` ascending;
    inside a block, ``x_a (x) y_b`` sits at position ``a * dim D_j + b``.
    """
    top = len(c.degrees) + len(d.degrees) - 1
    if not c.degrees or not d.degrees:
        return BasedChainComplex(())
    blocks = []  # per k: list of (i, j, offset)
    degrees = []
    for k in range(top):
        offset = 0
        bl = []
        for i in range(len(c.degrees)):
            j = k - i
            if 0 <= j < len(d.degrees):
                bl.append((i, j, offset))
                offset += c.degrees[i] * d.degrees[j]
        blocks.append(bl)
        degrees.append(offset)

    bounds = []
    for k in range(1, top):
        src = {(i, j): off for i, j, off in blocks[k]}
        dst = {(i, j): off for i, j, off in blocks[k - 1]}
        out = [[Fraction(0)] * degrees[k] for _ in range(degrees[k - 1])]
        for (i, j), off in src.items():
            nc, nd = c.degrees[i], d.degrees[j]
            if (i - 1, j) in dst:
                dc, t = c.d(i), dst[(i - 1, j)]
                for a in range(nc):
                    for bb in range(nd):
                        for a2 in range(c.degrees[i - 1]):
                            x = dc[a2, a]
                            if x:
                                out[t + a2 * nd + bb][off + a * nd + bb] += x
            if (i, j - 1) in dst:
                dd, t = d.d(j), dst[(i, j - 1)]
                sign = -1 if i % 2 else 1
                nd2 = d.degrees[j - 1]
                for a in range(nc):
                    for bb in range(nd):
                        for b2 in range(nd2):
                            y = dd[b2, bb]
                            if y:
                                out[t + a * nd2 + b2][off + a * nd + bb] += sign * y
        bounds.append(RationalMatrix.from_rows(out, degrees[k]))
    return BasedChainComplex(tuple(degrees), tuple(bounds))


def point() -> BasedChainComplex:
    return BasedChainComplex((1,))


def circle() -> BasedChainComplex:
    """Cellular complex of S^1 with one 0-cell and one 1-cell."""
    return BasedChainComplex((1, 1), (RationalMatrix.zeros(1, 1),))


def surface(genus: int) -> BasedChainComplex:
    """Standard CW structure on a closed orientable surface: ranks (1, 2g, 1)."""
    return BasedChainComplex((1, 2 * genus, 1),
                             (RationalMatrix.zeros(1, 2 * genus), RationalMatrix.zeros(2 * genus, 1)))


def torus() -> BasedChainComplex:
    return surface(1)


def integer_complex(degrees: Sequence[int], boundaries: Sequence[_Matrix]) -> BasedChainComplex:
    """Convenience constructor checking that boundaries are integral."""
    return BasedChainComplex(tuple(degrees), tuple(as_integer(b).to_rational() for b in boundaries))


__all__ = [
    "BasedChainComplex", "HomologyBasis", "TorsionValue",
    "validate", "betti_numbers", "integral_homology", "default_homology_basis",
    "check_homology_basis", "torsion", "torsion_choice_independence_check",
    "direct_sum", "tensor_product", "point", "circle", "surface", "torus", "integer_complex",
]
