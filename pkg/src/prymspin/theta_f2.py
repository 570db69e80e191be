"""Two-torsion and theta characteristics of a hyperelliptic curve in the
field-of-two-elements model.

The 2-torsion of a double cover of the line branched at 2g+2 points is the
even-weight subsets of the branch points modulo complementation, with the
intersection pairing |S meet T| mod 2.  Square roots of the trivial bundle
correspond to balanced partitions of the branch points into even parts;
theta characteristics correspond to the partitions of the opposite parity,
with the parity of sections given by the residue of g - n + 1 modulo 4.
All of this is checked against a brute-force Arf census of quadratic
refinements of the standard symplectic form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb


@dataclass(frozen=True)
class TorsionVector:
    """An even-weight indicator vector on the 2g+2 branch points, modulo
    the all-ones vector; stored canonically (smaller weight, and for
    balanced weight the side not containing the first point)."""
    g: int
    bits: int       # subset of {0 .. 2g+1} as a bitmask

    @classmethod
    def from_subset(cls, g: int, subset) -> "TorsionVector":
        n_pts = 2 * g + 2
        bits = 0
        for i in subset:
            if not 1 <= i <= n_pts:
                raise ValueError(f"branch point {i} out of range")
            bits |= 1 << (i - 1)
        if bits.bit_count() % 2:
            raise ValueError("torsion vectors have even weight")
        return cls(g, _canonical_bits(bits, n_pts))

    def is_zero(self) -> bool:
        return self.bits == 0

    def weight(self) -> int:
        return self.bits.bit_count()

    def pairing(self, other: "TorsionVector") -> int:
        """The symplectic pairing |S meet T| mod 2 (well defined on the
        quotient because all weights are even)."""
        return (self.bits & other.bits).bit_count() % 2

    def __add__(self, other: "TorsionVector") -> "TorsionVector":
        n_pts = 2 * self.g + 2
        return TorsionVector(self.g, _canonical_bits(self.bits ^ other.bits, n_pts))


def _canonical_bits(bits: int, n_pts: int) -> int:
    comp = bits ^ ((1 << n_pts) - 1)
    w, wc = bits.bit_count(), comp.bit_count()
    if w < wc:
        return bits
    if wc < w:
        return comp
    return bits if not (bits & 1) else comp


@dataclass(frozen=True)
class PartitionClass:
    """An unordered partition of the 2g+2 branch points into a part of size
    n and its complement; stored as the smaller part (for the balanced case
    the part containing the first point)."""
    g: int
    side: frozenset[int]

    @classmethod
    def make(cls, g: int, part) -> "PartitionClass":
        n_pts = 2 * g + 2
        part = frozenset(part)
        if not all(1 <= i <= n_pts for i in part):
            raise ValueError("branch point out of range")
        comp = frozenset(range(1, n_pts + 1)) - part
        if len(part) > len(comp):
            part = comp
        elif len(part) == len(comp) and 1 not in part:
            part = comp
        return cls(g, part)

    @property
    def n(self) -> int:
        return len(self.side)


def partition_classes(g: int, n: int) -> list[PartitionClass]:
    """All partitions of the branch points with a distinguished part of
    size n (equivalently 2g+2-n)."""
    n_pts = 2 * g + 2
    if not 0 <= n <= n_pts:
        raise ValueError("part size out of range")
    out = {PartitionClass.make(g, c)
           for c in itertools.combinations(range(1, n_pts + 1), n)}
    return sorted(out, key=lambda p: sorted(p.side))


def count_partitions(g: int, n: int) -> int:
    """|P_n| in closed form: binomial, halved for the balanced case."""
    n_pts = 2 * g + 2
    if n == n_pts - n:
        return comb(n_pts, n) // 2
    return comb(n_pts, min(n, n_pts - n))


def phi_R(p: PartitionClass) -> TorsionVector:
    """The square root of the trivial bundle attached to an even balanced-
    or-smaller partition: the indicator vector of the distinguished part.
    Nontrivial for every admissible part size."""
    if p.n % 2 != 0 or not 2 <= p.n <= p.g + 1:
        raise ValueError("need an even part of size between 2 and g+1")
    return TorsionVector.from_subset(p.g, p.side)


def spin_parity(g: int, n: int) -> str:
    """Parity of the theta characteristic attached to a size-n partition:
    'even' exactly when g - n + 1 is divisible by 4."""
    if n % 2 != (g + 1) % 2 or not 0 <= n <= g + 1:
        raise ValueError("part size incompatible with the genus")
    return "even" if (g - n + 1) % 4 == 0 else "odd"


def arf_census(g: int) -> tuple[int, int]:
    """Brute-force count of even and odd quadratic refinements of the
    standard symplectic form on a 2g-dimensional space over the field with
    two elements.  A refinement is even when it has 2^(2g-1) + 2^(g-1)
    zeros; the census comes out (2^(2g-1)+2^(g-1), 2^(2g-1)-2^(g-1))."""
    if g < 1 or g > 8:
        raise ValueError("census supported for genus 1..8")
    dim = 2 * g
    size = 1 << dim
    # bitmask over all x of q0(x) = sum x_{2i} x_{2i+1}
    q0_mask = 0
    for x in range(size):
        val = 0
        for i in range(g):
            val ^= (x >> (2 * i)) & (x >> (2 * i + 1)) & 1
        if val:
            q0_mask |= 1 << x
    # linear-form masks l_i(x) = x_i
    lin = []
    for i in range(dim):
        mask = 0
        for x in range(size):
            if (x >> i) & 1:
                mask |= 1 << x
        lin.append(mask)
    even_zero_count = (1 << (dim - 1)) + (1 << (g - 1))
    even = odd = 0
    for c in range(size):
        qc = q0_mask
        for i in range(dim):
            if (c >> i) & 1:
                qc ^= lin[i]
        zeros = size - qc.bit_count()
        if zeros == even_zero_count:
            even += 1
        else:
            odd += 1
    return even, odd


def torsion_census(g: int) -> dict:
    """Counts on the partition side: square roots of the trivial bundle per
    even part size, and theta characteristics split by parity."""
    prym_sizes = [n for n in range(2, g + 2) if n % 2 == 0]
    spin_sizes = [n for n in range(0, g + 2) if n % 2 == (g + 1) % 2]
    prym = {n: count_partitions(g, n) for n in prym_sizes}
    even = sum(count_partitions(g, n) for n in spin_sizes
               if spin_parity(g, n) == "even")
    odd = sum(count_partitions(g, n) for n in spin_sizes
              if spin_parity(g, n) == "odd")
    return {"prym_by_size": prym, "prym_total": sum(prym.values()),
            "spin_even": even, "spin_odd": odd}


def verify_bijections(g: int) -> dict:
    """Checks the three counting statements: the even partitions biject
    with the nonzero 2-torsion (injectivity checked pointwise), and the
    partition parity census equals the brute-force Arf census."""
    if g > 8:
        raise ValueError("desk-scale genus only")
    census = torsion_census(g)
    prym_expected = (1 << (2 * g)) - 1
    images = set()
    injective = True
    for n in census["prym_by_size"]:
        for p in partition_classes(g, n):
            v = phi_R(p)
            if v.is_zero() or v in images:
                injective = False
            images.add(v)
    surjective = len(images) == prym_expected
    arf_even, arf_odd = arf_census(g)
    return {
        "genus": g,
        "prym_count_matches": census["prym_total"] == prym_expected,
        "phi_injective": injective,
        "phi_bijective": injective and surjective,
        "spin_census": (census["spin_even"], census["spin_odd"]),
        "arf_census": (arf_even, arf_odd),
        "census_match": (census["spin_even"], census["spin_odd"]) == (arf_even, arf_odd),
    }
