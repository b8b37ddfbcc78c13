"""Finitely presented groups and the Seifert-manifold fundamental group.

Words are tuples of letters ``(generator, +1 | -1)`` stored exactly as
written; nothing is reduced because abelianization only needs exponent
sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

from .errors import InvalidInputError, UnknownGeneratorError
from .linalg import IntegerMatrix, smith_normal_form

Letter = tuple  # (generator name, +1 or -1)
Word = tuple  # tuple[Letter, ...]


def letter(gen: str, exp: int = 1) -> Letter:
    if exp not in (1, -1):
        raise ValueError(f"letters have exponent +1 or -1, got {exp}")
    return (gen, exp)


def power(gen: str, n: int) -> Word:
    """``gen ** n`` spelled out letter by letter."""
    e = 1 if n >= 0 else -1
    return tuple((gen, e) for _ in range(abs(n)))


def inverse(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u v u^-1 v^-1``."""
    return tuple(u) + tuple(v) + inverse(u) + inverse(v)


def conjugate(w: Word, by: Word) -> Word:
    return tuple(by) + tuple(w) + inverse(by)


def exponent_sum(w: Word, gen: str) -> int:
    return sum(e for g, e in w if g == gen)


def format_word(w: Word) -> str:
    if not w:
        return "1"
    return " ".join(g if e == 1 else f"{g}^-1" for g, e in w)


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise InvalidInputError("duplicate generator names")
        rels = tuple(tuple((str(g), int(e)) for g, e in r) for r in self.relators)
        known = set(gens)
        for r in rels:
            for g, e in r:
                if g not in known:
                    raise UnknownGeneratorError(f"relator uses undeclared generator {g!r}", generator=g)
                if e not in (1, -1):
                    raise InvalidInputError(f"letter exponent must be +1 or -1, got {e}")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", rels)

    def __str__(self):
        return f"< {', '.join(self.generators)} | {', '.join(format_word(r) for r in self.relators)} >"

    def to_json(self) -> dict:
        return {"generators": list(self.generators),
                "relators": [[[g, e] for g, e in r] for r in self.relators]}

    @classmethod
    def from_json(cls, obj) -> "GroupPresentation":
        if not isinstance(obj, dict) or "generators" not in obj:
            raise InvalidInputError("presentation must be an object with 'generators' and 'relators'")
        gens = obj["generators"]
        if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
            raise InvalidInputError("'generators' must be a list of strings")
        rels = []
        for r in obj.get("relators", []):
            word = []
            for item in r:
                if (not isinstance(item, list) or len(item) != 2 or not isinstance(item[0], str)
                        or isinstance(item[1], bool) or not isinstance(item[1], int)):
                    raise InvalidInputError(f"bad letter {item!r}; expected [generator, +1|-1]")
                word.append((item[0], item[1]))
            rels.append(tuple(word))
        return cls(tuple(gens), tuple(rels))


@dataclass(frozen=True)
class AbelianGroupDescription:
    """``Z^free_rank + Z/t_1 + ... + Z/t_m`` with ``t_1 | t_2 | ...``."""

    free_rank: int
    torsion_coefficients: tuple[int, ...] = ()

    def __str__(self):
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{t}" for t in self.torsion_coefficients]
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion_coefficients": list(self.torsion_coefficients)}


def seifert_generators(genus: int) -> tuple[str, ...]:
    gens = []
    for p in range(1, genus + 1):
        gens += [f"a{p}", f"b{p}"]
    return tuple(gens) + ("h",)


def seifert_presentation(genus: int, euler: int) -> GroupPresentation:
    """pi_1 of the degree-``euler`` circle bundle over the genus-``genus`` surface.

    Relators are ``[a_p, h]``, ``[b_p, h]`` for each ``p`` followed by
    ``prod_p [a_p, b_p] * h^-euler``.
    """
    if genus < 0:
        raise ValueError("genus must be non-negative")
    h = (("h", 1),)
    rels = []
    for p in range(1, genus + 1):
        rels.append(commutator(((f"a{p}", 1),), h))
        rels.append(commutator(((f"b{p}", 1),), h))
    last = ()
    for p in range(1, genus + 1):
        last += commutator(((f"a{p}", 1),), ((f"b{p}", 1),))
    last += power("h", -euler)
    rels.append(last)
    return GroupPresentation(seifert_generators(genus), tuple(rels))


def surface_presentation(genus: int) -> GroupPresentation:
    """``< a_1, b_1, ..., a_g, b_g | prod [a_p, b_p] >``."""
    gens = seifert_generators(genus)[:-1]
    rel = ()
    for p in range(1, genus + 1):
        rel += commutator(((f"a{p}", 1),), ((f"b{p}", 1),))
    return GroupPresentation(gens, (rel,) if genus else ())


def abelianization_matrix(p: GroupPresentation) -> IntegerMatrix:
    """Relation matrix: row ``r``, column ``j`` is the exponent sum of generator ``j`` in relator ``r``."""
    return IntegerMatrix.from_rows([[exponent_sum(r, g) for g in p.generators] for r in p.relators],
                                   len(p.generators))


def first_homology(p: GroupPresentation) -> AbelianGroupDescription:
    snf = smith_normal_form(abelianization_matrix(p))
    factors = snf.invariant_factors
    return AbelianGroupDescription(len(p.generators) - len(factors),
                                   tuple(f for f in factors if f > 1))


def dim_H1_real(p: GroupPresentation) -> int:
    """dim H^1(-; R) = rank Hom(H_1, R); torsion does not contribute."""
    return first_homology(p).free_rank


def torsion_subgroup_order(p: GroupPresentation) -> int:
    return prod(first_homology(p).torsion_coefficients)


# Tietze-style moves used to test invariance.

def permute_relators(p: GroupPresentation, order: Sequence[int]) -> GroupPresentation:
    return GroupPresentation(p.generators, tuple(p.relators[i] for i in order))


def invert_relator(p: GroupPresentation, index: int) -> GroupPresentation:
    rels = list(p.relators)
    rels[index] = inverse(rels[index])
    return GroupPresentation(p.generators, tuple(rels))


def conjugate_relator(p: GroupPresentation, index: int, gen: str, exp: int = 1) -> GroupPresentation:
    rels = list(p.relators)
    rels[index] = conjugate(rels[index], ((gen, exp),))
    return GroupPresentation(p.generators, tuple(rels))
