"""Group-ring chain complexes of presentation 2-complexes and their
specialization through matrix representations.

For a presentation ``<x_1..x_m | r_1..r_k>`` the cellular chains of the
universal cover of the presentation 2-complex have one 0-cell, ``m``
1-cells and ``k`` 2-cells.  The boundaries are ``d_1 = [x_j - 1]`` and
``d_2[j, r] = D_j(r)`` where ``D_j`` is the right-handed Fox derivative,
i.e. the derivation satisfying ``w - 1 = sum_j (x_j - 1) D_j(w)``.  With
that choice, substituting ``w -> rho(w)`` blockwise yields a complex of
Q-vector spaces for any homomorphism ``rho``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .chain import BasedChainComplex, validate
from .errors import (InvalidInputError, NotAComplexAfterSpecializationError, NotAComplexError,
                     RelatorNotKilledError, SingularConjugatorError, UnknownGeneratorError)
from .group import GroupPresentation, Word, format_word
from .linalg import RationalMatrix, as_rational, determinant


def reduce_word(w: Word) -> Word:
    """Free reduction: cancel adjacent ``x x^-1`` pairs."""
    out = []
    for g, e in w:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


class GroupRingElement:
    """Finite integer combination of (freely reduced) words."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, int] | None = None):
        acc = defaultdict(int)
        for w, c in (terms or {}).items():
            acc[reduce_word(tuple(w))] += c
        self._terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def word(cls, w: Word, coeff: int = 1) -> "GroupRingElement":
        return cls({tuple(w): coeff})

    @classmethod
    def one(cls) -> "GroupRingElement":
        return cls({(): 1})

    @classmethod
    def zero(cls) -> "GroupRingElement":
        return cls()

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = GroupRingElement({(): other})
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = GroupRingElement({(): other})
        acc = defaultdict(int, self._terms)
        for w, c in other._terms.items():
            acc[w] += c
        return GroupRingElement(acc)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement({w: c * other for w, c in self._terms.items()})
        acc = defaultdict(int)
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                acc[u + v] += a * b
        return GroupRingElement(acc)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for w, c in sorted(self._terms.items(), key=lambda t: (len(t[0]), t[0])):
            parts.append(f"{c}*({format_word(w)})" if c != 1 else f"({format_word(w)})")
        return " + ".join(parts)

    def evaluate(self, rho: "Representation") -> RationalMatrix:
        out = RationalMatrix.zeros(rho.dimension, rho.dimension)
        for w, c in self._terms.items():
            out = out + rho(w).scale(c)
        return out

    def to_json(self) -> list:
        return [[c, [[g, e] for g, e in w]] for w, c in
                sorted(self._terms.items(), key=lambda t: (len(t[0]), t[0]))]

    @classmethod
    def from_json(cls, obj) -> "GroupRingElement":
        terms = defaultdict(int)
        for c, w in obj:
            terms[tuple((g, e) for g, e in w)] += int(c)
        return cls(terms)


def fox_derivative(w: Word, x: str, side: str = "left") -> GroupRingElement:
    """Fox free derivative of ``w`` with respect to generator ``x``.

    ``side="left"`` is the classical derivation
    ``D(uv) = D(u) + u D(v)``; ``side="right"`` is its mirror
    ``D(uv) = D(u) v + D(v)``.  Both send ``x -> 1``, ``y -> 0`` and
    ``x^-1 -> -x^-1``.
    """
    w = tuple(w)
    terms = defaultdict(int)
    if side == "left":
        for m, (g, e) in enumerate(w):
            if g != x:
                continue
            prefix = w[:m]
            if e == 1:
                terms[prefix] += 1
            else:
                terms[prefix + ((g, -1),)] -= 1
    elif side == "right":
        for m, (g, e) in enumerate(w):
            if g != x:
                continue
            suffix = w[m + 1:]
            if e == 1:
                terms[suffix] += 1
            else:
                terms[((g, -1),) + suffix] -= 1
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    return GroupRingElement(terms)


GroupRingMatrix = tuple  # tuple of rows of GroupRingElement


@dataclass(frozen=True)
class GroupRingComplex:
    presentation: GroupPresentation
    degrees: tuple[int, ...]
    boundaries: tuple[GroupRingMatrix, ...]

    def d(self, i: int) -> GroupRingMatrix:
        return self.boundaries[i - 1]

    def specialize(self, rho: "Representation") -> BasedChainComplex:
        return specialize(self, rho)

    def to_json(self) -> dict:
        return {"presentation": self.presentation.to_json(), "degrees": list(self.degrees),
                "boundaries": [[[e.to_json() for e in row] for row in m] for m in self.boundaries]}


def presentation_complex(p: GroupPresentation) -> GroupRingComplex:
    """Cellular chains of the universal cover of the presentation 2-complex.

    Trailing empty degrees are dropped, so ``<t | >`` has degrees (1, 1)
    and ``< | >`` is a single point.
    """
    gens, rels = p.generators, p.relators
    degrees = [1, len(gens), len(rels)]
    while len(degrees) > 1 and degrees[-1] == 0:
        degrees.pop()
    one = GroupRingElement.one()
    bounds = []
    if len(degrees) > 1:
        bounds.append((tuple(GroupRingElement.word(((g, 1),)) - one for g in gens),))
    if len(degrees) > 2:
        bounds.append(tuple(tuple(fox_derivative(r, g, side="right") for r in rels) for g in gens))
    return GroupRingComplex(p, tuple(degrees), tuple(bounds))


class Representation:
    """Homomorphism from a presented group to GL(d, Q).

    Construction checks that every image is invertible and that every
    relator maps to the identity.
    """

    def __init__(self, presentation: GroupPresentation, images: Mapping[str, RationalMatrix],
                 dimension: int | None = None):
        self.presentation = presentation
        missing = [g for g in presentation.generators if g not in images]
        if missing:
            raise InvalidInputError(f"no image for generators {missing}")
        extra = [g for g in images if g not in presentation.generators]
        if extra:
            raise UnknownGeneratorError(f"images given for undeclared generators {extra}")
        images = {g: as_rational(m) for g, m in images.items()}
        dims = {m.shape for m in images.values()}
        if len(dims) > 1 or any(r != c for r, c in dims):
            raise InvalidInputError(f"images must be square and of one size, got {sorted(dims)}")
        self.dimension = dims.pop()[0] if dims else (1 if dimension is None else dimension)
        if dimension is not None and dimension != self.dimension:
            raise InvalidInputError(f"declared dimension {dimension} but images are "
                                    f"{self.dimension}x{self.dimension}")
        self.images = {g: images[g] for g in presentation.generators}
        self._inverses = {}
        for g, m in self.images.items():
            if determinant(m) == 0:
                raise InvalidInputError(f"image of {g} is singular", generator=g)
            self._inverses[g] = m.inverse()
        ident = RationalMatrix.identity(self.dimension)
        for k, r in enumerate(presentation.relators):
            if self(r) != ident:
                raise RelatorNotKilledError(f"relator {k} ({format_word(r)}) does not map to the identity",
                                            relator=k)

    def __call__(self, w: Word) -> RationalMatrix:
        out = RationalMatrix.identity(self.dimension)
        for g, e in w:
            out = out @ (self.images[g] if e == 1 else self._inverses[g])
        return out

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return self.presentation == other.presentation and self.images == other.images

    def __repr__(self):
        return f"Representation(dim={self.dimension}, images={self.images})"

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "images": {g: m.to_json() for g, m in self.images.items()}}

    @classmethod
    def from_json(cls, presentation: GroupPresentation, obj) -> "Representation":
        if not isinstance(obj, dict) or "images" not in obj:
            raise InvalidInputError("representation must be an object with 'dimension' and 'images'")
        images = {g: RationalMatrix.from_json(m) for g, m in obj["images"].items()}
        return cls(presentation, images, obj.get("dimension"))


def trivial_representation(p: GroupPresentation, dimension: int = 1) -> Representation:
    ident = RationalMatrix.identity(dimension)
    return Representation(p, {g: ident for g in p.generators}, dimension)


def conjugate_representation(rho: Representation, h: RationalMatrix) -> Representation:
    """``g -> h rho(g) h^-1``."""
    h = as_rational(h)
    if h.shape != (rho.dimension, rho.dimension):
        raise InvalidInputError(f"conjugator has shape {h.shape}, expected {rho.dimension}x{rho.dimension}")
    if determinant(h) == 0:
        raise SingularConjugatorError("conjugating matrix is singular")
    hinv = h.inverse()
    return Representation(rho.presentation, {g: h @ m @ hinv for g, m in rho.images.items()},
                          rho.dimension)


def adjoint_representation(rho: Representation) -> Representation:
    """Action of ``rho`` on d x d matrices by conjugation, ``X -> rho X rho^-1``.

    Matrices are flattened row-major, so the image of ``g`` is
    ``rho(g) (x) rho(g)^-T``.  For a 1-dimensional ``rho`` this is the
    trivial representation.
    """
    return Representation(rho.presentation,
                          {g: m.kron(rho._inverses[g].T) for g, m in rho.images.items()},
                          rho.dimension ** 2)


def specialize(c: GroupRingComplex, rho: Representation) -> BasedChainComplex:
    """Replace each entry ``sum c_w w`` by the block ``sum c_w rho(w)``."""
    if rho.presentation != c.presentation:
        raise InvalidInputError("representation is for a different presentation")
    d = rho.dimension
    bounds = []
    for i, m in enumerate(c.boundaries, start=1):
        rows, cols = c.degrees[i - 1], c.degrees[i]
        out = [[Fraction(0)] * (cols * d) for _ in range(rows * d)]
        for r in range(rows):
            for s in range(cols):
                block = m[r][s].evaluate(rho)
                for a in range(d):
                    for b in range(d):
                        out[r * d + a][s * d + b] = block[a, b]
        bounds.append(RationalMatrix.from_rows(out, cols * d))
    out_complex = BasedChainComplex(tuple(n * d for n in c.degrees), tuple(bounds))
    try:
        validate(out_complex)
    except NotAComplexError as exc:
        raise NotAComplexAfterSpecializationError(str(exc), **exc.details) from None
    return out_complex


def twisted_complex(p: GroupPresentation, rho: Representation) -> BasedChainComplex:
    return specialize(presentation_complex(p), rho)


def circle_presentation(name: str = "t") -> GroupPresentation:
    return GroupPresentation((name,), ())


def group_ring_matrix_to_json(m: GroupRingMatrix) -> list:
    return [[e.to_json() for e in row] for row in m]


__all__ = [
    "GroupRingElement", "GroupRingComplex", "Representation", "fox_derivative", "reduce_word",
    "presentation_complex", "specialize", "twisted_complex", "trivial_representation",
    "conjugate_representation", "adjoint_representation", "circle_presentation",
    "group_ring_matrix_to_json",
]
