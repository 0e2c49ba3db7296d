"""Stabilizer tableaux: state representation, Clifford gate rules, canonical
form, and a small-scale state-vector oracle.

A tableau holds n commuting, independent Pauli generators as an n x (2n+1) bit
structure. Row i encodes the generator +/-P_{i,0}...P_{i,n-1}, where the letter
on qubit j is determined by the bit pair (x_{i,j}, z_{i,j}):
(0,0)=I, (1,0)=X, (0,1)=Z, (1,1)=Y, and the extra bit r_i stores the sign.
Global phase is deliberately unrepresentable: generator sets cannot see it, so
states differing only by a scalar factor collapse to one tableau.

Internally each row is packed into one Python integer (bit j = x_{i,j},
bit n+j = z_{i,j}) and the n sign bits into another integer, which keeps gate
application and GF(2) row reduction cheap for any qubit count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate, GateKind

# ---------------------------------------------------------------------------
# Pauli algebra tables
# ---------------------------------------------------------------------------

_LETTERS = ("I", "X", "Z", "Y")  # indexed by x + 2z
_BITS_BY_LETTER = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}

# Exponent of i in the single-qubit product P_a * P_b, indexed by the nibble
# (x_a << 3 | z_a << 2 | x_b << 1 | z_b). Derived from the 2x2 matrix
# products: X*Z = -iY, Z*X = +iY, X*Y = +iZ, Y*X = -iZ, Y*Z = +iX, Z*Y = -iX.
PHASE_EXPONENT = (0, 0, 0, 0, 0, 0, 1, -1, 0, -1, 0, 1, 0, 1, -1, 0)

# Gate codes for the packed fast path.
_H, _S, _X, _Y, _Z, _CNOT = range(6)

_KIND_CODE = {
    GateKind.H: _H,
    GateKind.S: _S,
    GateKind.X: _X,
    GateKind.Y: _Y,
    GateKind.Z: _Z,
    GateKind.CNOT: _CNOT,
}


# ---------------------------------------------------------------------------
# Packed-row core (private): rows is a mutable list of ints, signs a bitmask
# ---------------------------------------------------------------------------

def _apply_gate_packed(n: int, rows: list[int], signs: int, code: int, a: int, b: int) -> int:
    """Apply one gate in place to packed rows; returns the new sign bitmask.

    For CNOT, a is the control and b the target.
    """
    if code == _H:
        flip = (1 << a) | (1 << (n + a))
        for i in range(n):
            row = rows[i]
            xb = (row >> a) & 1
            zb = (row >> (n + a)) & 1
            signs ^= (xb & zb) << i
            if xb != zb:
                rows[i] = row ^ flip
    elif code == _S:
        for i in range(n):
            row = rows[i]
            xb = (row >> a) & 1
            signs ^= (xb & ((row >> (n + a)) & 1)) << i
            rows[i] = row ^ (xb << (n + a))
    elif code == _CNOT:
        for i in range(n):
            row = rows[i]
            xc = (row >> a) & 1
            zc = (row >> (n + a)) & 1
            xt = (row >> b) & 1
            zt = (row >> (n + b)) & 1
            signs ^= (xc & zt & (xt ^ zc ^ 1)) << i
            rows[i] = row ^ (xc << b) ^ (zt << (n + a))
    elif code == _X:
        for i in range(n):
            signs ^= ((rows[i] >> (n + a)) & 1) << i
    elif code == _Z:
        for i in range(n):
            signs ^= ((rows[i] >> a) & 1) << i
    elif code == _Y:
        for i in range(n):
            row = rows[i]
            signs ^= (((row >> a) ^ (row >> (n + a))) & 1) << i
    else:
        raise ValueError(f"unknown gate code {code}")
    return signs


def _product_phase_mod4(n: int, row_a: int, row_b: int) -> int:
    """Sum of per-qubit i-exponents for (row a generator) * (row b generator), mod 4.

    Bit-parallel evaluation of PHASE_EXPONENT: one popcount for the +1 qubits
    and one for the -1 qubits.
    """
    mask = (1 << n) - 1
    xa = row_a & mask
    za = (row_a >> n) & mask
    xb = row_b & mask
    zb = (row_b >> n) & mask
    nxa = xa ^ mask
    nza = za ^ mask
    nxb = xb ^ mask
    nzb = zb ^ mask
    plus = (nxa & za & xb & nzb) | (xa & nza & xb & zb) | (xa & za & nxb & zb)
    minus = (xa & nza & nxb & zb) | (xa & za & xb & nzb) | (nxa & za & xb & zb)
    return (plus.bit_count() - minus.bit_count()) % 4


def _row_multiply_packed(n: int, rows: list[int], signs: int, a: int, b: int) -> int:
    """Replace row a by the group product (row a)*(row b); returns new signs."""
    phase = _product_phase_mod4(n, rows[a], rows[b])
    if phase & 1:
        raise ValueError("rows anticommute; tableau invariant violated")
    sa = (signs >> a) & 1
    sb = (signs >> b) & 1
    new_sa = sa ^ sb ^ (phase >> 1)
    if new_sa != sa:
        signs ^= 1 << a
    rows[a] ^= rows[b]
    return signs


def _canonicalize_packed(n: int, rows: list[int], signs: int) -> tuple[list[int], int]:
    """Bring packed rows to reduced row echelon form over GF(2), tracking signs.

    Column order is x_0..x_{n-1}, z_0..z_{n-1} (bit order of the packing).
    Raises ValueError if the rows are linearly dependent.
    """
    rank = 0
    for col in range(2 * n):
        bit = 1 << col
        pivot = -1
        for i in range(rank, n):
            if rows[i] & bit:
                pivot = i
                break
        if pivot < 0:
            continue
        if pivot != rank:
            rows[pivot], rows[rank] = rows[rank], rows[pivot]
            if ((signs >> pivot) ^ (signs >> rank)) & 1:
                signs ^= (1 << pivot) | (1 << rank)
        for i in range(n):
            if i != rank and rows[i] & bit:
                signs = _row_multiply_packed(n, rows, signs, i, rank)
        rank += 1
        if rank == n:
            break
    if rank < n:
        raise ValueError("tableau rows are linearly dependent over GF(2)")
    return rows, signs


def _commute_packed(n: int, row_a: int, row_b: int) -> bool:
    mask = (1 << n) - 1
    xa, za = row_a & mask, (row_a >> n) & mask
    xb, zb = row_b & mask, (row_b >> n) & mask
    return (((xa & zb).bit_count() + (xb & za).bit_count()) & 1) == 0


# ---------------------------------------------------------------------------
# Public value types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PauliLabel:
    """Human-readable form of one tableau row: a sign and one letter per qubit.

    Letter position j is qubit j, so "+ZI" is Z on qubit 0 of a 2-qubit row.
    """

    sign: str
    letters: str

    def __post_init__(self) -> None:
        if self.sign not in "+-":
            raise ValueError(f"sign must be '+' or '-', got {self.sign!r}")
        if not self.letters or any(ch not in "IXYZ" for ch in self.letters):
            raise ValueError(f"letters must be a nonempty string over IXYZ, got {self.letters!r}")

    @classmethod
    def parse(cls, text: str) -> PauliLabel:
        if not text:
            raise ValueError("empty Pauli label")
        return cls(text[0], text[1:])

    @classmethod
    def from_bits(cls, x_bits: list[int] | tuple[int, ...], z_bits: list[int] | tuple[int, ...], r: int) -> PauliLabel:
        letters = "".join(_LETTERS[x + 2 * z] for x, z in zip(x_bits, z_bits, strict=True))
        return cls("-" if r else "+", letters)

    def to_bits(self) -> tuple[tuple[int, ...], tuple[int, ...], int]:
        """Inverse of from_bits: per-qubit x bits, z bits, and the sign bit."""
        pairs = [_BITS_BY_LETTER[ch] for ch in self.letters]
        return tuple(p[0] for p in pairs), tuple(p[1] for p in pairs), int(self.sign == "-")

    def __str__(self) -> str:
        return self.sign + self.letters


class Tableau:
    """Immutable stabilizer tableau over n qubits.

    Exposes the bit matrices x, z and the sign vector r as numpy arrays;
    storage is bit-packed. Tableaux compare and hash by value.
    """

    __slots__ = ("n", "_rows", "_signs")

    n: int

    def __init__(self, x, z, r):
        x = np.asarray(x, dtype=np.uint8)
        z = np.asarray(z, dtype=np.uint8)
        r = np.asarray(r, dtype=np.uint8)
        if x.ndim != 2 or x.shape[0] != x.shape[1]:
            raise ValueError(f"x must be square, got shape {x.shape}")
        n = x.shape[0]
        if n == 0:
            raise ValueError("tableau needs at least one qubit")
        if z.shape != (n, n) or r.shape != (n,):
            raise ValueError("x, z, r shapes are inconsistent")
        if (x > 1).any() or (z > 1).any() or (r > 1).any():
            raise ValueError("tableau entries must be bits")
        rows = []
        for i in range(n):
            row = 0
            for j in range(n):
                row |= int(x[i, j]) << j
                row |= int(z[i, j]) << (n + j)
            rows.append(row)
        signs = 0
        for i in range(n):
            signs |= int(r[i]) << i
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_rows", tuple(rows))
        object.__setattr__(self, "_signs", signs)

    # Packed constructors bypass the array round trip; internal use.
    @classmethod
    def _from_packed(cls, n: int, rows: tuple[int, ...], signs: int) -> Tableau:
        t = object.__new__(cls)
        object.__setattr__(t, "n", n)
        object.__setattr__(t, "_rows", tuple(rows))
        object.__setattr__(t, "_signs", signs)
        return t

    def _packed(self) -> tuple[tuple[int, ...], int]:
        return self._rows, self._signs

    def __setattr__(self, name, value):
        raise AttributeError("Tableau is immutable")

    @property
    def x(self) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=np.uint8)
        for i, row in enumerate(self._rows):
            for j in range(self.n):
                out[i, j] = (row >> j) & 1
        return out

    @property
    def z(self) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=np.uint8)
        for i, row in enumerate(self._rows):
            for j in range(self.n):
                out[i, j] = (row >> (self.n + j)) & 1
        return out

    @property
    def r(self) -> np.ndarray:
        return np.array([(self._signs >> i) & 1 for i in range(self.n)], dtype=np.uint8)

    def row_label(self, i: int) -> PauliLabel:
        if not 0 <= i < self.n:
            raise IndexError(f"row {i} out of range for n={self.n}")
        row = self._rows[i]
        letters = "".join(
            _LETTERS[((row >> j) & 1) + 2 * ((row >> (self.n + j)) & 1)] for j in range(self.n)
        )
        return PauliLabel("-" if (self._signs >> i) & 1 else "+", letters)

    def labels(self) -> list[PauliLabel]:
        return [self.row_label(i) for i in range(self.n)]

    def validate(self) -> None:
        """Raise ValueError if rows are dependent or any pair anticommutes."""
        for a in range(self.n):
            for b in range(a + 1, self.n):
                if not _commute_packed(self.n, self._rows[a], self._rows[b]):
                    raise ValueError(f"rows {a} and {b} anticommute")
        _canonicalize_packed(self.n, list(self._rows), self._signs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tableau):
            return NotImplemented
        return self.n == other.n and self._rows == other._rows and self._signs == other._signs

    def __hash__(self) -> int:
        return hash((self.n, self._rows, self._signs))

    def __str__(self) -> str:
        return "\n".join(str(label) for label in self.labels())

    def __repr__(self) -> str:
        inside = ", ".join(str(label) for label in self.labels())
        return f"Tableau(n={self.n}, [{inside}])"


# ---------------------------------------------------------------------------
# Construction and gate application
# ---------------------------------------------------------------------------

def tableau_from_basis_state(bits: str) -> Tableau:
    """Tableau of the computational basis state with qubit i set to bits[i].

    Row i is Z on qubit i with sign bit bits[i], so -Z_i stabilizes qubit i
    in state 1.
    """
    if not bits:
        raise ValueError("empty bit string")
    if any(ch not in "01" for ch in bits):
        raise ValueError(f"bit string must be over 0/1, got {bits!r}")
    n = len(bits)
    rows = tuple(1 << (n + i) for i in range(n))
    signs = 0
    for i, ch in enumerate(bits):
        signs |= (ch == "1") << i
    return Tableau._from_packed(n, rows, signs)


def _check_qubit(t: Tableau, j: int) -> None:
    if not 0 <= j < t.n:
        raise IndexError(f"qubit {j} out of range for n={t.n}")


def apply_h(t: Tableau, j: int) -> Tableau:
    """Hadamard on qubit j: r_i ^= x_ij*z_ij, then swap x_ij and z_ij, per row."""
    _check_qubit(t, j)
    rows = list(t._rows)
    signs = _apply_gate_packed(t.n, rows, t._signs, _H, j, 0)
    return Tableau._from_packed(t.n, tuple(rows), signs)


def apply_s(t: Tableau, j: int) -> Tableau:
    """Phase gate on qubit j: r_i ^= x_ij*z_ij, then z_ij ^= x_ij, per row."""
    _check_qubit(t, j)
    rows = list(t._rows)
    signs = _apply_gate_packed(t.n, rows, t._signs, _S, j, 0)
    return Tableau._from_packed(t.n, tuple(rows), signs)


def apply_cnot(t: Tableau, c: int, tgt: int) -> Tableau:
    """CNOT with control c and target tgt:
    r_i ^= x_ic*z_it*(x_it ^ z_ic ^ 1), then x_it ^= x_ic and z_ic ^= z_it.
    """
    _check_qubit(t, c)
    _check_qubit(t, tgt)
    if c == tgt:
        raise ValueError("CNOT control and target must differ")
    rows = list(t._rows)
    signs = _apply_gate_packed(t.n, rows, t._signs, _CNOT, c, tgt)
    return Tableau._from_packed(t.n, tuple(rows), signs)


def apply_gate(t: Tableau, g: Gate) -> Tableau:
    """Apply one gate by its kind-specific rule.

    X, Y, Z use the direct sign-flip rules (X on q_j: r_i ^= z_ij; Z: r_i ^=
    x_ij; Y: r_i ^= x_ij ^ z_ij), which agree with their {H,S} decompositions.
    """
    code = _KIND_CODE[g.kind]
    if code == _CNOT:
        return apply_cnot(t, g.control, g.target)
    _check_qubit(t, g.target)
    rows = list(t._rows)
    signs = _apply_gate_packed(t.n, rows, t._signs, code, g.target, 0)
    return Tableau._from_packed(t.n, tuple(rows), signs)


def apply_circuit(t: Tableau, c: Circuit) -> Tableau:
    """Apply every gate of the circuit in order."""
    if c.num_qubits != t.n:
        raise ValueError(f"circuit acts on {c.num_qubits} qubits, tableau has {t.n}")
    rows = list(t._rows)
    signs = t._signs
    for g in c.gates:
        code = _KIND_CODE[g.kind]
        a = g.control if g.control is not None else g.target
        signs = _apply_gate_packed(t.n, rows, signs, code, a, g.target)
    return Tableau._from_packed(t.n, tuple(rows), signs)


def row_multiply(t: Tableau, a: int, b: int) -> Tableau:
    """Replace row a by the Pauli group product (row a)*(row b).

    The sign obeys r_a ^= r_b ^ [sum of per-qubit i-exponents == 2 mod 4];
    the sum is always 0 or 2 mod 4 because tableau rows commute.
    """
    if not 0 <= a < t.n or not 0 <= b < t.n:
        raise IndexError(f"row index out of range for n={t.n}")
    if a == b:
        raise ValueError("cannot multiply a row by itself")
    rows = list(t._rows)
    signs = _row_multiply_packed(t.n, rows, t._signs, a, b)
    return Tableau._from_packed(t.n, tuple(rows), signs)


def canonicalize(t: Tableau) -> Tableau:
    """Unique reduced form of the generator set: GF(2) reduced row echelon over
    the n x 2n bit matrix (columns x_0..x_{n-1}, z_0..z_{n-1}), signs updated
    by phase-tracked row products. Two tableaux canonicalize identically iff
    they stabilize the same state.
    """
    rows, signs = _canonicalize_packed(t.n, list(t._rows), t._signs)
    return Tableau._from_packed(t.n, tuple(rows), signs)


# ---------------------------------------------------------------------------
# State-vector oracle (desk scale)
# ---------------------------------------------------------------------------

_MAX_ORACLE_QUBITS = 10


def _apply_pauli_row(n: int, row: int, sign_bit: int, vec: np.ndarray) -> np.ndarray:
    """Multiply the dense vector by the row's Pauli operator.

    On basis index b the operator acts as
    (-1)^r * i^{#Y} * (-1)^{popcount(b & z)} |b ^ x>,
    with qubit j at bit j of the index.
    """
    mask = (1 << n) - 1
    xmask = row & mask
    zmask = (row >> n) & mask
    ycount = (xmask & zmask).bit_count()
    prefactor = (-1.0) ** sign_bit * 1j ** (ycount % 4)
    idx = np.arange(1 << n)
    parity = np.bitwise_count(idx & zmask) & 1
    out = np.empty_like(vec)
    out[idx ^ xmask] = vec * (prefactor * (1.0 - 2.0 * parity))
    return out


def to_statevector(t: Tableau) -> np.ndarray:
    """Reconstruct the unit state vector stabilized by the tableau.

    Computed as the projector product prod_i (I + g_i)/2 applied to the first
    basis probe vector with a nonzero image, normalized, with global phase
    fixed by making the first nonzero amplitude real and positive. Amplitude
    index b has qubit j at bit j.
    """
    n = t.n
    if n > _MAX_ORACLE_QUBITS:
        raise ValueError(f"state-vector oracle supports n <= {_MAX_ORACLE_QUBITS}, got {n}")
    dim = 1 << n
    for probe in range(dim):
        vec = np.zeros(dim, dtype=np.complex128)
        vec[probe] = 1.0
        for i in range(n):
            vec = 0.5 * (vec + _apply_pauli_row(n, t._rows[i], (t._signs >> i) & 1, vec))
        norm = float(np.linalg.norm(vec))
        if norm > 1e-6:
            vec /= norm
            first = np.flatnonzero(np.abs(vec) > 1e-8)[0]
            vec *= np.abs(vec[first]) / vec[first]
            return vec
    raise ValueError("projector annihilated every probe; tableau invariants violated")
