"""Small named permutation groups."""

from __future__ import annotations

from .group import PermGroup
from .perm import Permutation


def symmetric(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("S(n) needs n >= 1")
    gens = []
    if n >= 2:
        gens.append(Permutation.from_cycles(n, [list(range(n))]))
        gens.append(Permutation.from_cycles(n, [[0, 1]]))
    return PermGroup(gens, degree=n)


def alternating(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("A(n) needs n >= 1")
    gens = [Permutation.from_cycles(n, [[0, 1, i]]) for i in range(2, n)]
    return PermGroup(gens, degree=n)


def cyclic(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("C(n) needs n >= 1")
    gens = [Permutation.from_cycles(n, [list(range(n))])] if n > 1 else []
    return PermGroup(gens, degree=n)


def dihedral(order: int) -> PermGroup:
    """Dihedral group of the given order acting on the vertices of an (order/2)-gon."""
    if order % 2 or order < 6:
        raise ValueError("D(2n) needs an even order >= 6")
    n = order // 2
    rot = Permutation.from_cycles(n, [list(range(n))])
    refl = Permutation([(-i) % n for i in range(n)])
    return PermGroup([rot, refl], degree=n)


def klein_four() -> PermGroup:
    return PermGroup(
        [Permutation.from_cycles(4, [[0, 1], [2, 3]]), Permutation.from_cycles(4, [[0, 2], [1, 3]])],
        degree=4,
    )


def frobenius20() -> PermGroup:
    """AGL(1,5): x -> ax + b on Z/5."""
    return PermGroup(
        [Permutation([(x + 1) % 5 for x in range(5)]), Permutation([(2 * x) % 5 for x in range(5)])],
        degree=5,
    )


def affine_line(p: int, multipliers: int | None = None) -> PermGroup:
    """Affine maps x -> ax + b on Z/p (p prime), with a ranging over the subgroup
    generated by ``multipliers`` (default: a primitive root, giving AGL(1,p))."""
    if multipliers is None:
        multipliers = next(a for a in range(2, p) if len({pow(a, k, p) for k in range(p - 1)}) == p - 1)
    return PermGroup(
        [Permutation([(x + 1) % p for x in range(p)]), Permutation([(multipliers * x) % p for x in range(p)])],
        degree=p,
    )


def projective_line(p: int, full: bool = False) -> PermGroup:
    """PSL(2,p), or PGL(2,p) when ``full``, on the p+1 points of the projective line
    (point p stands for infinity)."""
    inf = p

    def mobius(f):
        return Permutation([f(x) for x in range(p + 1)])

    shift = mobius(lambda x: inf if x == inf else (x + 1) % p)
    flip = mobius(lambda x: 0 if x == inf else inf if x == 0 else (-pow(x, -1, p)) % p)
    gens = [shift, flip]
    if full:
        a = next(a for a in range(2, p) if len({pow(a, k, p) for k in range(p - 1)}) == p - 1)
        gens.append(mobius(lambda x: inf if x == inf else (a * x) % p))
    return PermGroup(gens, degree=p + 1)


def affine_cube() -> PermGroup:
    """AGL(3,2) on the 8 vectors of F_2^3 (points are bitmasks)."""

    def linear(cols):
        def f(v):
            out = 0
            for i, c in enumerate(cols):
                if v >> i & 1:
                    out ^= c
            return out

        return Permutation([f(v) for v in range(8)])

    return PermGroup(
        [Permutation([v ^ 1 for v in range(8)]), linear([2, 4, 1]), linear([1 | 2, 2, 4])],
        degree=8,
    )


def transitive_catalog(max_degree: int = 5) -> dict[str, PermGroup]:
    """Every transitive group of degree 2..max_degree up to permutation isomorphism (max_degree <= 5),
    keyed by a short name."""
    if max_degree > 5:
        raise ValueError("the complete transitive catalog is only tabulated up to degree 5")
    table = {
        "C2": lambda: cyclic(2),
        "C3": lambda: cyclic(3),
        "S3": lambda: symmetric(3),
        "C4": lambda: cyclic(4),
        "V4": klein_four,
        "D8": lambda: dihedral(8),
        "A4": lambda: alternating(4),
        "S4": lambda: symmetric(4),
        "C5": lambda: cyclic(5),
        "D10": lambda: dihedral(10),
        "F20": frobenius20,
        "A5": lambda: alternating(5),
        "S5": lambda: symmetric(5),
    }
    out = {}
    for name, make in table.items():
        grp = make()
        if grp.degree <= max_degree:
            out[name] = grp
    return out


def extended_catalog(max_degree: int = 8) -> dict[str, PermGroup]:
    """Named transitive families (C_n, D_2n, A_n, S_n) plus the degree <= 5 table."""
    out = dict(transitive_catalog(min(max_degree, 5)))
    for n in range(6, max_degree + 1):
        out[f"C{n}"] = cyclic(n)
        out[f"D{2 * n}"] = dihedral(2 * n)
        out[f"A{n}"] = alternating(n)
        out[f"S{n}"] = symmetric(n)
    extras = {
        "PSL(2,5)": lambda: projective_line(5),
        "PGL(2,5)": lambda: projective_line(5, full=True),
        "F21": lambda: affine_line(7, 2),
        "F42": lambda: affine_line(7),
        "PSL(2,7)": lambda: projective_line(7),
        "PGL(2,7)": lambda: projective_line(7, full=True),
        "AGL(3,2)": affine_cube,
    }
    for name, make in extras.items():
        grp = make()
        if grp.degree <= max_degree:
            out[name] = grp
    return out
