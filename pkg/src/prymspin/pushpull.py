"""Pushforward and pullback calculus between the quotient spaces.

This module carries the whole intersection-theoretic toolbox: pushforward
of boundary classes along the finite covers from the 6- and 5-marked
rational curve spaces (declarative tables of image names and mapping
degrees), derivation of the linear and quadratic boundary relations from
the four-point relations, the Hodge-class identity chains, the full
intersection-number tables of boundary divisors against codimension-2
strata, and the base-space numbers they calibrate against.

Intersection numbers follow the convention d . s = n [x] with [x] the
plain class of a general point; in the invariant-ring model this becomes
n = C * integral(rep(d) * rep(s)) / |G| where the constant C is pinned
once by the anchor value d0''.[E',']_Q = 1/4 and then frozen; every other
table entry is a check, not an input.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .exact_linear import QMatrix, Rational, kernel_basis, rank, rref
from .keel_ring import (BoundaryIndex, GradedBasis, RingElement,
                        build_graded_basis, canonicalize, four_point_relation)
from .space_registry import SpaceDescriptor, load_space, pullback_delta
from .symmetry import act, standard_group

# Frozen by the single documented calibration (see intersection_number).
INTERSECTION_CALIBRATION = Fraction(4)

QUOTIENT_TAGS = ("R2", "S2plus", "S2minus")


# -- linear combinations of named classes -------------------------------------

@dataclass
class NamedCombo:
    """A rational combination of formal products of class names on a space.

    Keys are sorted tuples of names; the empty tuple is the unit.  This is
    the exchange format for derived relations: symbolic enough to print
    against the reference tables, and evaluable in the invariant ring.
    """
    space: str
    terms: dict[tuple[str, ...], Fraction] = field(default_factory=dict)

    def add(self, names: tuple[str, ...], coeff) -> None:
        key = tuple(sorted(names))
        c = self.terms.get(key, Fraction(0)) + Fraction(coeff)
        if c:
            self.terms[key] = c
        else:
            self.terms.pop(key, None)

    def scaled(self, c) -> "NamedCombo":
        out = NamedCombo(self.space)
        for k, v in self.terms.items():
            out.add(k, v * Fraction(c))
        return out

    def plus(self, other: "NamedCombo") -> "NamedCombo":
        out = NamedCombo(self.space, dict(self.terms))
        for k, v in other.terms.items():
            out.add(k, v)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def normalized(self) -> "NamedCombo":
        """Primitive integer coefficients, first term positive, for stable
        comparison against the reference relations."""
        if not self.terms:
            return NamedCombo(self.space)
        keys = sorted(self.terms)
        denom = 1
        for v in self.terms.values():
            denom = denom * v.denominator // _gcd(denom, v.denominator)
        ints = [self.terms[k] * denom for k in keys]
        g = 0
        for v in ints:
            g = _gcd(g, abs(int(v)))
        sign = 1 if ints[0] > 0 else -1
        out = NamedCombo(self.space)
        for k, v in zip(keys, ints):
            out.add(k, Fraction(int(v) * sign, g))
        return out

    def evaluate(self, space: SpaceDescriptor) -> RingElement:
        gb = space.gb
        degrees = set()
        for names in self.terms:
            d = sum(_name_degree(space, nm) for nm in names)
            degrees.add(d)
        if len(degrees) > 1:
            raise ValueError(f"inhomogeneous combination: degrees {degrees}")
        degree = degrees.pop() if degrees else 0
        acc = RingElement.zero(space.n, degree)
        for names, c in self.terms.items():
            prod = RingElement.unit(space.n)
            for nm in names:
                prod = gb.multiply(prod, space.named_class(nm).value)
            acc = acc + prod.scale(c)
        return gb.reduce(acc)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            mono = "*".join(k) if k else "1"
            parts.append(f"({self.terms[k]})*{mono}")
        return " + ".join(parts)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a) if a else abs(b)


def _name_degree(space: SpaceDescriptor, name: str) -> int:
    if name in space.boundary or name == space.lambda_name:
        return 1
    if name in space.strata:
        return len(space.strata[name].rep)
    raise KeyError(f"unknown class {name!r} on {space.tag}")


# -- pushforward along the 6-marked covers ------------------------------------

def boundary_pushforward_table(space: SpaceDescriptor) -> dict[BoundaryIndex, tuple[str, int]]:
    """Every canonical boundary divisor upstairs with its image name and
    the mapping degree onto it."""
    table = {}
    for e in space.boundary.values():
        for d in e.orbit:
            table[d] = (e.name, e.degree)
    return table


def pushforward(space: SpaceDescriptor, element: RingElement) -> NamedCombo:
    """Proper pushforward of an upstairs divisor combination, converted to
    stack-weighted coordinates: a divisor mapping with degree k onto W
    contributes k [W] = k * aut(W) * w."""
    if element.degree != 1:
        raise ValueError("tabled pushforward covers divisor classes")
    table = boundary_pushforward_table(space)
    out = NamedCombo(space.tag)
    for mono, c in element.coeffs.items():
        (div,) = mono
        if div not in table:
            raise KeyError(f"divisor {div} not tabled for {space.tag}")
        name, degree = table[div]
        out.add((name,), c * degree * space.aut_number(name))
    return out


def derive_linear_relation(space_tag: str) -> NamedCombo:
    """Push every four-point relation through the cover and echelonize: the
    span of the images is the module of linear relations between the
    boundary classes downstairs (zero for the odd spin space)."""
    space = load_space(space_tag)
    names = list(space.boundary)
    rows = []
    for quad in itertools.combinations(range(1, space.n + 1), 4):
        for rel in four_point_relation(space.n, *quad):
            combo = pushforward(space, rel)
            row = [combo.terms.get((nm,), Fraction(0)) for nm in names]
            if any(row):
                rows.append(row)
    if not rows:
        return NamedCombo(space_tag)
    red, pivots = rref(QMatrix(rows))
    if not pivots:
        return NamedCombo(space_tag)
    if len(pivots) > 1:
        raise AssertionError("more than one independent linear relation")
    out = NamedCombo(space_tag)
    for nm, c in zip(names, red.rows[0]):
        if c:
            out.add((nm,), c)
    return out.normalized()


# -- the 5-marked boundary covers ---------------------------------------------

# The glued point of the 5-marked space is mark 5; marks 1..4 sit on the
# moving component.  Each table sends the 2-subset side of a boundary
# divisor to (image stratum, mapping degree).
H_TABLES = {
    "h0p": ("R2", {
        frozenset({1, 2}): ("Ep_pp", 2),
        frozenset({3, 4}): ("Ep_p", 2),
        frozenset({1, 3}): ("Ep_r", 1), frozenset({1, 4}): ("Ep_r", 1),
        frozenset({2, 3}): ("Ep_r", 1), frozenset({2, 4}): ("Ep_r", 1),
        frozenset({5, 1}): ("F11p", 2), frozenset({5, 2}): ("F11p", 2),
        frozenset({5, 3}): ("F1p", 2), frozenset({5, 4}): ("F1p", 2),
    }),
    "h0alpha": ("S2minus", {
        frozenset({2, 3}): ("Cm", 2), frozenset({2, 4}): ("Cm", 2),
        frozenset({3, 4}): ("Cm", 2),
        frozenset({1, 2}): ("Dm", 2), frozenset({1, 3}): ("Dm", 2),
        frozenset({1, 4}): ("Dm", 2),
        frozenset({5, 1}): ("Xm", 6),
        frozenset({5, 2}): ("Ym", 2), frozenset({5, 3}): ("Ym", 2),
        frozenset({5, 4}): ("Ym", 2),
    }),
}


def _divisor_two_subset(d: BoundaryIndex) -> frozenset[int]:
    """The 2-element side of a 5-marked boundary divisor."""
    if len(d.key) == 2:
        return d.members
    return frozenset(range(1, d.n + 1)) - d.members


def pushforward_m05(table_name: str, element: RingElement) -> NamedCombo:
    """Pushforward along a 5-marked boundary cover, in stack coordinates."""
    space_tag, table = H_TABLES[table_name]
    space = load_space(space_tag)
    out = NamedCombo(space_tag)
    for mono, c in element.coeffs.items():
        (div,) = mono
        name, degree = table[_divisor_two_subset(div)]
        out.add((name,), c * degree * space.aut_number(name))
    return out


def derive_m05_relations() -> list[NamedCombo]:
    """The three relations obtained by pushing four-point relations of the
    5-marked space through the boundary covers, after rewriting transverse
    stratum classes as products and splitting reducible intersections."""
    rel_a = _m05_relation_element((5, 1, 2, 3), which=1)   # [51]+[23] = [53]+[12]
    rel_b = _m05_relation_element((1, 2, 3, 4), which=0)   # [12]+[34] = [13]+[24]

    # (1) through the cover of the divisor D0' on R2, with all four image
    # strata rewritten as transverse products of boundary classes.
    combo1 = pushforward_m05("h0p", rel_a)
    out1 = NamedCombo("R2")
    substitution = {"F11p": ("d0p", "d11"), "Ep_r": ("d0p", "d0r"),
                    "F1p": ("d0p", "d1"), "Ep_pp": ("d0p", "d0pp")}
    for (name,), c in combo1.terms.items():
        out1.add(substitution[name], c)
    out1 = out1.normalized()

    # (2) through the cover of A0- on the odd spin space, using that the
    # intersection of A0- and A1- splits into the two strata X- and Y-.
    combo2 = pushforward_m05("h0alpha", rel_a)
    out2 = NamedCombo("S2minus")
    for (name,), c in combo2.terms.items():
        if name == "Dm":
            out2.add(("a0m", "b0m"), c)
        elif name == "Ym":
            out2.add(("a0m", "a1m"), c)     # [Y-] = a0m a1m - [X-]
            out2.add(("Xm",), -c)
        else:
            out2.add((name,), c)
    out2 = out2.normalized()

    # (3) through the D0' cover again: a pure stratum-class relation.
    combo3 = pushforward_m05("h0p", rel_b)
    return [out1, out2, combo3.normalized()]


def _m05_relation_element(marks, which: int) -> RingElement:
    return four_point_relation(5, *marks)[which]


# -- intersection numbers ------------------------------------------------------

def intersection_number(space: SpaceDescriptor, divisor_name: str,
                        stratum_name: str) -> Rational:
    """The rational n with d . [S]_Q = n [x], [x] the plain class of a
    general point of the space."""
    gb = space.gb
    d = space.named_class(divisor_name).value
    s = space.named_class(stratum_name).value
    total = gb.integrate(gb.multiply(d, s))
    return INTERSECTION_CALIBRATION * total / space.group.order


def codim2_strata(space: SpaceDescriptor) -> list[str]:
    return [name for name, e in space.strata.items() if len(e.rep) == 2]


def intersection_table(space_tag: str):
    """Rows: codimension-2 strata (in registry order); columns: boundary
    divisors.  Returns (row names, column names, QMatrix)."""
    space = load_space(space_tag)
    rows = codim2_strata(space)
    cols = list(space.boundary)
    mat = QMatrix([[intersection_number(space, c, r) for c in cols]
                   for r in rows])
    return rows, cols, mat


def mumford_base_numbers() -> dict[str, Rational]:
    """The four base-space pairings delta_i . [stratum]_Q computed inside
    the full symmetric-group invariants."""
    m2 = load_space("M2")
    out = {}
    for div in ("delta0", "delta1"):
        for stratum in ("Delta00", "Delta01"):
            out[f"{div}.{stratum}"] = intersection_number(m2, div, stratum)
    return out


# -- ring checks of named relations -------------------------------------------

def check_combo_vanishes(combo: NamedCombo) -> tuple[bool, RingElement]:
    space = load_space(combo.space)
    residue = combo.evaluate(space)
    return residue.is_zero(), residue


def m2_relation_verdicts() -> dict[str, bool]:
    """The quadratic base relation and the two cross-check variants; each
    is evaluated, never assumed."""
    m2 = load_space("M2")
    gb = m2.gb
    d0 = m2.named_class("delta0").value
    d1 = m2.named_class("delta1").value

    def z(x):
        return gb.reduce(x).is_zero()

    sq = gb.multiply
    out = {}
    out["12*delta1^2 + delta0*delta1"] = z(
        sq(d1, d1).scale(12) + sq(d0, d1))
    out["delta0*delta1 + 12*delta0^2"] = z(
        sq(d0, d1) + sq(d0, d0).scale(12))
    d1cube = sq(sq(d1, d1), d1)
    d0cube = sq(sq(d0, d0), d0)
    out["528*delta1^3 + delta0^3"] = z(d1cube.scale(528) + d0cube)
    return out


# -- Hodge class identity chains ----------------------------------------------

# Each chain replays a projection-formula computation: the stack class y
# equals (1/factor) f_*(1) for a boundary cover f, the Hodge class pulls
# back to a combination of genus-1 boundary symbols (after the one-twelfth
# identity on the elliptic base), and the table of f-pushforwards lands the
# product back in boundary products downstairs.
GENUS1_FACTS = [
    ("elliptic one-marked cover", "td0pp = td0r",
     "both boundary classes pull back from the same projective line"),
    ("elliptic Hodge class", "tlambda = (1/12) tdelta0",
     "degree of the Hodge bundle on the one-marked elliptic base"),
    ("square-root elliptic Hodge class", "tl = (1/4) td0r",
     "one twelfth of td0pp + 2 td0r combined with td0pp = td0r"),
    ("even spin elliptic cover", "talpha0p = tbeta0p",
     "two boundary classes of a projective-line quotient"),
    ("even spin Hodge pullback", "tlp = (1/4) talpha0p",
     "one twelfth of talpha0p + 2 tbeta0p combined with the line relation"),
]

LAMBDA_CHAINS = [
    # (space, y, factor, [(coeff, product names)], morphism note)
    ("R2", "d11", Fraction(1, 2),
     [(Fraction(1, 4), ("d0r", "d11")), (Fraction(1, 4), ("d0r", "d11"))],
     "two-elliptic cover of D1:1: Hodge class restricts as (1/4) td0r on "
     "each factor; each factor pushes to d0r*d11"),
    ("R2", "d0pp", Fraction(1, 2),
     [(Fraction(1, 12), ("d0p", "d0pp")), (Fraction(1, 12), ("d0p", "d0pp"))],
     "two-marked elliptic cover of D0'': Hodge class restricts as one "
     "twelfth of the nodal class, which pushes to 2 d0p*d0pp"),
    ("R2", "d0p", Fraction(1, 2),
     [(Fraction(1, 3), ("Ep_p",)), (Fraction(1, 6), ("d0p", "d0pp")),
      (Fraction(1, 3), ("d0p", "d0r"))],
     "five-marked cover of D0': Hodge class pulls back to one sixth of the "
     "three boundary classes, which push to 2[E',']_Q, d0p*d0pp and "
     "2 d0p*d0r"),
    ("S2plus", "b0p", Fraction(1, 2),
     [(Fraction(1, 4), ("a0p", "b0p")), (Fraction(1, 4), ("a0p", "b0p"))],
     "two-marked even spin cover of B0+: Hodge class restricts as a "
     "quarter of talpha0p, which pushes to 2 a0p*b0p"),
    ("S2plus", "a1p", Fraction(1, 4),
     [(Fraction(1, 4), ("a0p", "a1p")), (Fraction(1, 4), ("a0p", "a1p")),
      (Fraction(1, 4), ("a0p", "a1p")), (Fraction(1, 4), ("a0p", "a1p"))],
     "product of two one-marked even spin curves over A1+: each factor "
     "contributes a quarter of talpha0p, pushing to 2 a0p*a1p"),
    ("S2plus", "b1p", Fraction(1, 4),
     [(Fraction(1, 12), ("a0p", "b1p")), (Fraction(1, 12), ("a0p", "b1p")),
      (Fraction(1, 12), ("a0p", "b1p")), (Fraction(1, 12), ("a0p", "b1p"))],
     "product of two elliptic curves over B1+: each factor contributes one "
     "twelfth of the nodal class, pushing to 2 a0p*b1p"),
    ("S2minus", "b0m", Fraction(1, 2),
     [(Fraction(1, 12), ("a0m", "b0m")), (Fraction(1, 12), ("a0m", "b0m"))],
     "two-marked elliptic cover of B0-: Hodge class restricts as one "
     "twelfth of the nodal class, pushing to 2 a0m*b0m"),
    ("S2minus", "a0m", Fraction(1, 2),
     [(Fraction(1, 3), ("Cm",)), (Fraction(1, 3), ("a0m", "b0m"))],
     "twisted two-marked cover of A0-: Hodge class pulls back to one "
     "twelfth of (alpha-check + 2 beta-check), which push to 4[C-]_Q and "
     "2 a0m*b0m"),
]

LAMBDA_VANISHING = [
    ("R2", ("l", "l", "d0p")), ("R2", ("l", "l", "d0pp")),
    ("R2", ("l", "l", "d0r")),
    ("S2plus", ("lp", "lp", "a0p")), ("S2plus", ("lp", "lp", "b0p")),
    ("S2minus", ("lm", "lm", "a0m")), ("S2minus", ("lm", "lm", "b0m")),
]


def verify_lambda_identities() -> dict[str, dict]:
    """Replays each Hodge-class chain and checks it in the invariant ring,
    then checks the square-of-Hodge vanishings.  Returns a report keyed by
    identity text."""
    report = {}
    for space_tag, y, factor, pushes, note in LAMBDA_CHAINS:
        space = load_space(space_tag)
        lam = space.lambda_name
        lhs = NamedCombo(space_tag)
        lhs.add((y, lam), 1)
        rhs = NamedCombo(space_tag)
        for coeff, names in pushes:
            rhs.add(names, factor * coeff)
        diff = lhs.plus(rhs.scaled(-1))
        ok, residue = check_combo_vanishes(diff)
        report[f"{y}*{lam} = {rhs}"] = {
            "holds": ok, "space": space_tag, "note": note,
            "residue": residue.serialize()}
    for space_tag, names in LAMBDA_VANISHING:
        combo = NamedCombo(space_tag)
        combo.add(names, 1)
        ok, residue = check_combo_vanishes(combo)
        report["*".join(names) + " = 0"] = {
            "holds": ok, "space": space_tag,
            "note": "square of the Hodge class vanishes against this "
                    "boundary divisor (pullback from a one-dimensional base)",
            "residue": residue.serialize()}
    return report


# -- pushforward to the base and the projection formula ------------------------

def push_to_base(space: SpaceDescriptor, element: RingElement) -> RingElement:
    """Pushforward of an invariant class to the full symmetric-group
    invariants (the base space): sum over cosets, i.e. the symmetric-group
    symmetrization divided by the group order of the source."""
    gb = space.gb
    s6 = standard_group("M2", space.n)
    acc = RingElement.zero(space.n, element.degree)
    for g in s6.elements:
        acc = acc + act(g, element, gb)
    return gb.reduce(acc.scale(Fraction(1, space.group.order)))


def base_class_coordinates(element: RingElement):
    """Express a symmetric invariant element in the named base classes of
    its degree; returns dict name -> coefficient or None if outside the
    span (degree 1 and 2 supported)."""
    m2 = load_space("M2")
    gb = m2.gb
    if element.degree == 0:
        return {"1": element.coeffs.get((), Fraction(0))}
    names = (["delta0", "delta1"] if element.degree == 1
             else [n for n in m2.strata if len(m2.strata[n].rep) == element.degree])
    basis_elems = [m2.named_class(nm).value for nm in names]
    ambient = gb.basis[element.degree]
    mat = QMatrix([[b.coeffs.get(mn, Fraction(0)) for b in basis_elems]
                   for mn in ambient])
    from .exact_linear import solve
    sol = solve(mat, [element.coeffs.get(mn, Fraction(0)) for mn in ambient])
    if sol is None:
        return None
    return dict(zip(names, sol))


def stratum_pushforward_check(space_tag: str) -> dict[str, bool]:
    """Ring-level audit of every stratum's pushforward column entry: the
    coset-sum pushforward of its class must equal the stated multiple of
    the named base stratum class."""
    space = load_space(space_tag)
    m2 = load_space("M2")
    out = {}
    for name, e in space.strata.items():
        if e.pushforward_target is None:
            continue
        pushed = push_to_base(space, space.named_class(name).value)
        target = m2.named_class(e.pushforward_target).value
        out[name] = pushed == space.gb.reduce(
            target.scale(e.pushforward_coeff))
    for name, e in space.boundary.items():
        pushed = push_to_base(space, space.named_class(name).value)
        coords = base_class_coordinates(pushed)
        out[name] = coords is not None
    return out
