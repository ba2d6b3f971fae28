"""k-wise independent single-bit hash family over GF(2^kappa).

A hash function is a degree-(k-1) polynomial with k coefficients drawn
uniformly from GF(2^kappa); evaluation interprets the kappa-bit input as a
field element, runs Horner's rule, and outputs the least significant bit
of the result. On any j <= k distinct inputs the field values are jointly
uniform (Vandermonde rank j), and lsb is a balanced linear map, so the
output bits are exactly jointly uniform -- the property the pad bits of
the encryption scheme inherit.

Field elements are plain ints (bit i = coefficient of x^i); the reduction
modulus per kappa is fixed by table so that serialized keys are bit-exact
across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

# Irreducible modulus for GF(2^kappa), bitmask with the leading x^kappa term.
# kappa = 1 is plain GF(2) (modulus x). Verified irreducible; the inverse
# property test in the suite re-checks small kappa exhaustively.
IRREDUCIBLE = {
    1: 0b10,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011011,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100010001000011,
    15: 0b1000000000000011,
    16: 0b10001000000001011,
}

MAX_KAPPA = max(IRREDUCIBLE)

# Do not enumerate hash families larger than this (2^(k*kappa) members).
FAMILY_CAP = 1 << 20


def _check_kappa(kappa):
    if not 1 <= kappa <= MAX_KAPPA:
        raise ValueError(f"kappa must be in 1..{MAX_KAPPA}, got {kappa}")


def gf_add(a: int, b: int) -> int:
    """Addition in GF(2^kappa) is XOR."""
    return a ^ b


def gf_mul(a: int, b: int, kappa: int) -> int:
    """Carry-less product reduced by the fixed modulus."""
    _check_kappa(kappa)
    modulus = IRREDUCIBLE[kappa]
    top = 1 << kappa
    result = 0
    while b:
        if b & 1:
            result ^= a
        a <<= 1
        if a & top:
            a ^= modulus
        b >>= 1
    return result


@dataclass(frozen=True)
class HashFunction:
    """h(r) = lsb(sum_i c_i r^i) over GF(2^kappa), coefficients c_0..c_{k-1}."""

    kappa: int
    k: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        _check_kappa(self.kappa)
        if self.k < 1:
            raise ValueError("independence order k must be >= 1")
        if len(self.coefficients) != self.k:
            raise ValueError(f"need exactly {self.k} coefficients")
        if any(not 0 <= c < (1 << self.kappa) for c in self.coefficients):
            raise ValueError("coefficient outside GF(2^kappa)")
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))

    def __call__(self, r: int) -> int:
        return eval_hash(self, r)

    @property
    def bit_length(self) -> int:
        """Exact description length: k coefficients of kappa bits each."""
        return self.k * self.kappa

    def to_bits(self) -> str:
        """Coefficients as big-endian kappa-bit strings, concatenated, c_0 first."""
        return "".join(format(c, f"0{self.kappa}b") for c in self.coefficients)

    @classmethod
    def from_bits(cls, kappa, k, bits) -> "HashFunction":
        if len(bits) != k * kappa:
            raise ValueError(f"expected {k * kappa} bits, got {len(bits)}")
        coeffs = tuple(int(bits[i * kappa : (i + 1) * kappa], 2) for i in range(k))
        return cls(kappa, k, coeffs)


def sample_hash(kappa: int, k: int, rng) -> HashFunction:
    """Draw a uniform member of the family (seedable via the generator)."""
    _check_kappa(kappa)
    if k < 1:
        raise ValueError("independence order k must be >= 1")
    rng = as_rng(rng)
    coeffs = tuple(int(c) for c in rng.integers(0, 1 << kappa, size=k))
    return HashFunction(kappa, k, coeffs)


def eval_hash(h: HashFunction, r: int) -> int:
    """Horner evaluation of the key polynomial at r, then lsb."""
    if not 0 <= r < (1 << h.kappa):
        raise ValueError(f"input must be a {h.kappa}-bit value, got {r}")
    acc = 0
    for c in reversed(h.coefficients):
        acc = gf_mul(acc, r, h.kappa) ^ c
    return acc & 1


def enumerate_family(kappa: int, k: int):
    """Iterate over all 2^(k*kappa) members of the family.

    Only feasible for toy parameters; guarded by FAMILY_CAP.
    """
    _check_kappa(kappa)
    size = 1 << (k * kappa)
    if size > FAMILY_CAP:
        raise ValueError(f"family of size 2^{k * kappa} exceeds the enumeration cap")
    for coeffs in product(range(1 << kappa), repeat=k):
        yield HashFunction(kappa, k, coeffs)


@lru_cache(maxsize=8)
def family_truth_tables(kappa: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Output bit of every family member on every input, precomputed.

    Row f is the truth table of the f-th member over inputs 0..2^kappa-1.
    Used by the exact security checker and the independence tests.
    """
    tables = []
    for h in enumerate_family(kappa, k):
        tables.append(tuple(eval_hash(h, r) for r in range(1 << kappa)))
    return tuple(tables)


def as_rng(rng) -> np.random.Generator:
    """Accept a Generator, a seed, or None (fresh entropy)."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)
