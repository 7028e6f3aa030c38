"""Bit-packed Pauli strings, real-weighted Pauli sums and Majorana operators.

A string is stored as an x-mask, a z-mask and a power of i, representing
``i**phase * prod_q X_q**x_q Z_q**z_q``.  Bit q of a mask addresses qubit q,
and qubit 0 is the leftmost tensor factor of the dense matrix.  The
canonical phase of a mask pair is ``popcount(x & z) mod 4`` (one factor of
i per Y), which makes every canonical string Hermitian; PauliSum keys all
carry the canonical phase so that Hermitian operators have real weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

_DENSE_CAP = 12  # qubits; dense matrices are a debugging/small-n tool

_SINGLE = {
    (0, 0): np.eye(2, dtype=complex),
    (1, 0): np.array([[0, 1], [1, 0]], dtype=complex),        # X
    (0, 1): np.array([[1, 0], [0, -1]], dtype=complex),       # Z
    (1, 1): np.array([[0, -1], [1, 0]], dtype=complex),       # XZ = -iY
}

_PHASE = (1, 1j, -1, -1j)


@dataclass(frozen=True)
class PauliString:
    """``i**phase * X^x Z^z`` on ``n`` qubits, masks bit-packed."""

    n: int
    x: int
    z: int
    phase: int = 0  # power of i, mod 4

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one qubit")
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask:
            raise ValueError("mask exceeds qubit count")
        object.__setattr__(self, "phase", self.phase % 4)

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n, 0, 0, 0)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Build from a label like ``"XIZ"``, ``"-YZ"`` or ``"iXX"``."""
        body = label
        phase = 0
        if body.startswith("-i"):
            phase, body = 3, body[2:]
        elif body.startswith("-"):
            phase, body = 2, body[1:]
        elif body.startswith("i"):
            phase, body = 1, body[1:]
        x = z = 0
        for q, ch in enumerate(body):
            if ch == "X":
                x |= 1 << q
            elif ch == "Y":
                x |= 1 << q
                z |= 1 << q
                phase += 1  # Y = i XZ
            elif ch == "Z":
                z |= 1 << q
            elif ch != "I":
                raise ValueError(f"bad Pauli letter {ch!r}")
        return cls(len(body), x, z, phase % 4)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliString":
        if not 0 <= qubit < n:
            raise ValueError("qubit index out of range")
        label = "".join(letter if q == qubit else "I" for q in range(n))
        return cls.from_label(label)

    # -- structure ---------------------------------------------------------

    @property
    def canonical_phase(self) -> int:
        return (self.x & self.z).bit_count() % 4

    def canonical(self) -> tuple["PauliString", complex]:
        """Split into (Hermitian canonical string, residual scalar)."""
        k0 = self.canonical_phase
        return (
            PauliString(self.n, self.x, self.z, k0),
            _PHASE[(self.phase - k0) % 4],
        )

    def is_hermitian(self) -> bool:
        return (self.phase - self.canonical_phase) % 2 == 0

    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def support(self) -> tuple[int, ...]:
        m = self.x | self.z
        return tuple(q for q in range(self.n) if (m >> q) & 1)

    def commutes(self, other: "PauliString") -> bool:
        if self.n != other.n:
            raise ValueError("qubit counts differ")
        return ((self.x & other.z).bit_count()
                + (self.z & other.x).bit_count()) % 2 == 0

    # -- algebra -----------------------------------------------------------

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.n != other.n:
            raise ValueError("qubit counts differ")
        phase = self.phase + other.phase + 2 * (self.z & other.x).bit_count()
        return PauliString(self.n, self.x ^ other.x, self.z ^ other.z, phase)

    def dagger(self) -> "PauliString":
        return PauliString(
            self.n, self.x, self.z,
            -self.phase + 2 * (self.x & self.z).bit_count(),
        )

    def to_dense(self) -> np.ndarray:
        if self.n > _DENSE_CAP:
            raise ValueError(f"dense conversion capped at {_DENSE_CAP} qubits")
        mats = [
            _SINGLE[((self.x >> q) & 1, (self.z >> q) & 1)]
            for q in range(self.n)
        ]
        return _PHASE[self.phase] * reduce(np.kron, mats)

    def __str__(self) -> str:
        letters = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
        body = "".join(
            letters[((self.x >> q) & 1, (self.z >> q) & 1)]
            for q in range(self.n)
        )
        prefix = {0: "", 1: "i", 2: "-", 3: "-i"}[
            (self.phase - self.canonical_phase) % 4
        ]
        return prefix + body


class PauliSum:
    """Complex linear combination of canonical (Hermitian) Pauli strings."""

    def __init__(self, n: int, terms: dict[tuple[int, int], complex] | None = None):
        self.n = n
        self.terms: dict[tuple[int, int], complex] = dict(terms or {})

    @classmethod
    def from_string(cls, ps: PauliString, coeff: complex = 1.0) -> "PauliSum":
        out = cls(ps.n)
        out.add_string(ps, coeff)
        return out

    @classmethod
    def identity(cls, n: int, coeff: complex = 1.0) -> "PauliSum":
        return cls.from_string(PauliString.identity(n), coeff)

    def add_string(self, ps: PauliString, coeff: complex = 1.0) -> None:
        canon, residual = ps.canonical()
        key = (canon.x, canon.z)
        val = self.terms.get(key, 0j) + coeff * residual
        if val == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = val

    def strings(self):
        """Iterate (canonical PauliString, coefficient) pairs."""
        for (x, z), coeff in self.terms.items():
            k0 = (x & z).bit_count() % 4
            yield PauliString(self.n, x, z, k0), coeff

    def copy(self) -> "PauliSum":
        return PauliSum(self.n, self.terms)

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if self.n != other.n:
            raise ValueError("qubit counts differ")
        out = self.copy()
        for (x, z), coeff in other.terms.items():
            key = (x, z)
            val = out.terms.get(key, 0j) + coeff
            if val == 0:
                out.terms.pop(key, None)
            else:
                out.terms[key] = val
        return out

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + other.scale(-1)

    def scale(self, factor: complex) -> "PauliSum":
        if factor == 0:
            return PauliSum(self.n)
        return PauliSum(self.n, {k: factor * v for k, v in self.terms.items()})

    def __mul__(self, other: "PauliSum") -> "PauliSum":
        if self.n != other.n:
            raise ValueError("qubit counts differ")
        out = PauliSum(self.n)
        for pa, ca in self.strings():
            for pb, cb in other.strings():
                out.add_string(pa * pb, ca * cb)
        return out

    def dagger(self) -> "PauliSum":
        # Keys are Hermitian strings, so adjoint conjugates the weights.
        return PauliSum(self.n, {k: v.conjugate() for k, v in self.terms.items()})

    def trace(self) -> complex:
        return self.terms.get((0, 0), 0j) * (2 ** self.n)

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return all(abs(v.imag) <= tol for v in self.terms.values())

    def to_dense(self) -> np.ndarray:
        if self.n > _DENSE_CAP:
            raise ValueError(f"dense conversion capped at {_DENSE_CAP} qubits")
        out = np.zeros((2 ** self.n, 2 ** self.n), dtype=complex)
        for ps, coeff in self.strings():
            out += coeff * ps.to_dense()
        return out


def trace_inner(a: PauliSum, b: PauliSum) -> complex:
    """Hilbert-Schmidt inner product Tr[a^dagger b] from coefficients."""
    if a.n != b.n:
        raise ValueError("qubit counts differ")
    acc = 0j
    for key, va in a.terms.items():
        vb = b.terms.get(key)
        if vb is not None:
            acc += va.conjugate() * vb
    return acc * (2 ** a.n)


def rotate_qubit(op, qubit: int, axis: str, angle: float):
    """Conjugate by ``exp(-i * angle * P_qubit / 2)`` for P in {X, Y, Z}.

    Accepts a PauliString (returns a PauliSum) or a PauliSum.
    """
    if axis not in ("X", "Y", "Z"):
        raise ValueError(f"axis must be X, Y or Z, got {axis!r}")
    if isinstance(op, PauliString):
        op = PauliSum.from_string(op)
    gen = PauliString.single(op.n, qubit, axis)
    out = PauliSum(op.n)
    c, s = np.cos(angle), np.sin(angle)
    for ps, coeff in op.strings():
        if ps.commutes(gen):
            out.add_string(ps, coeff)
        else:
            # R T R^dag = cos(angle) T - i sin(angle) (P T) for {P, T} = 0.
            out.add_string(ps, coeff * c)
            out.add_string(gen * ps, coeff * s * -1j)
    return out


# -- Majorana operators ----------------------------------------------------

def majorana(mu: int, n: int) -> PauliString:
    """Majorana operator c_mu, 1-indexed, under the Jordan-Wigner map.

    ``c_{2k-1} = Z^(k-1) X I^(n-k)`` and ``c_{2k} = Z^(k-1) Y I^(n-k)``.
    """
    if not 1 <= mu <= 2 * n:
        raise ValueError(f"need 1 <= mu <= 2n, got mu={mu}, n={n}")
    k = (mu + 1) // 2  # mode, 1-indexed
    x = 1 << (k - 1)
    z = (1 << (k - 1)) - 1
    if mu % 2 == 0:
        z |= 1 << (k - 1)
    ps = PauliString(n, x, z, 0)
    return PauliString(n, x, z, ps.canonical_phase)


def majorana_product(mus, n: int) -> PauliString:
    """Ordered product of Majorana operators with exact phase tracking."""
    out = PauliString.identity(n)
    for mu in mus:
        out = out * majorana(mu, n)
    return out


def majorana_weight(ps: PauliString) -> int:
    """Number of Majorana factors in the unique expansion of a string."""
    lam = 0
    t = 0  # parity of Majorana count on higher modes
    for q in reversed(range(ps.n)):
        xq = (ps.x >> q) & 1
        zq = (ps.z >> q) & 1
        m2 = zq ^ t
        m1 = xq ^ m2
        lam += m1 + m2
        t ^= xq
    return lam


def multipartite_label(ps: PauliString) -> tuple[int, ...]:
    """Support pattern of a string as a 0/1 tuple over qubits."""
    m = ps.x | ps.z
    return tuple((m >> q) & 1 for q in range(ps.n))
