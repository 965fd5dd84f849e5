"""Z2-symmetry detection and qubit tapering.

Each Pauli string is encoded as a 2n-bit symplectic vector (x | z).  Strings
commuting with every Hamiltonian term form the kernel, over GF(2), of the
matrix whose rows are the terms' vectors with blocks swapped.  Tapering
conjugates the Hamiltonian with one Clifford per symmetry so the symmetry
becomes a single-qubit X, substitutes the chosen +/-1 sector eigenvalue,
and drops the qubit.
"""

import itertools

import numpy as np

from .pauli import PauliOperator, PauliString, TooManyQubitsError

_SQRT2_INV = 2**-0.5

AUTO_SECTOR_MAX_QUBITS = 10


class NotASymmetryError(ValueError):
    """A supplied string fails to commute with the Hamiltonian (or with a
    fellow symmetry)."""


class SectorArityMismatchError(ValueError):
    """Sector sign count differs from the symmetry count."""


class SingularSystemError(ValueError):
    """A linear subproblem has no usable solution (no valid tapered-qubit
    assignment here; also raised by the imaginary-time workflow when its
    regularized solve fails)."""


def _symplectic(string: PauliString, n: int) -> np.ndarray:
    vec = np.zeros(2 * n, dtype=np.uint8)
    for q, axis in string.factors:
        if axis in ("X", "Y"):
            vec[q] = 1
        if axis in ("Z", "Y"):
            vec[n + q] = 1
    return vec


def _string_from_symplectic(vec: np.ndarray, n: int) -> PauliString:
    axes = {}
    for q in range(n):
        x, z = vec[q], vec[n + q]
        if x and z:
            axes[q] = "Y"
        elif x:
            axes[q] = "X"
        elif z:
            axes[q] = "Z"
    return PauliString(axes)


def _gf2_kernel(matrix: np.ndarray) -> list:
    """Kernel basis of a GF(2) matrix; Gaussian elimination with the lowest
    usable column pivoted first, so the basis is reproducible."""
    m = matrix.copy() % 2
    rows, cols = m.shape
    pivot_cols = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if m[i, c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[[r, pivot]] = m[[pivot, r]]
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] ^= m[r]
        pivot_cols.append(c)
        r += 1
        if r == rows:
            break
    free_cols = [c for c in range(cols) if c not in pivot_cols]
    basis = []
    for free in free_cols:
        vec = np.zeros(cols, dtype=np.uint8)
        vec[free] = 1
        for row, pc in enumerate(pivot_cols):
            if m[row, free]:
                vec[pc] = 1
        basis.append(vec)
    return basis


def find_z2_symmetries(hamiltonian: PauliOperator, num_qubits: int = None) -> list:
    """Pauli strings commuting with every term of ``hamiltonian``.

    Computes the GF(2) kernel of the symplectic products with all terms and
    keeps a mutually commuting subset of its basis (the kernel itself may
    contain anticommuting pairs, e.g. all-X and all-Z on an odd chain,
    which cannot be tapered jointly).  Deterministic for a given operator;
    empty if no symmetry exists.
    """
    n = hamiltonian.width if num_qubits is None else num_qubits
    strings = [s for s, _ in hamiltonian.terms() if not s.is_identity]
    if n == 0 or not strings:
        return []
    # Row blocks swapped: row . (x_g | z_g) = symplectic product with the term.
    rows = []
    for s in strings:
        v = _symplectic(s, n)
        rows.append(np.concatenate([v[n:], v[:n]]))
    basis = _gf2_kernel(np.array(rows, dtype=np.uint8))
    symmetries = []
    for vec in basis:
        candidate = _string_from_symplectic(vec, n)
        if candidate.is_identity:
            continue
        if all(candidate.commutes_with(kept) for kept in symmetries):
            symmetries.append(candidate)
    return symmetries


def _single_qubit_partner(symmetry, others, used):
    """Lowest-index (qubit, axis) single-qubit Pauli anticommuting with
    ``symmetry`` and commuting with every other symmetry."""
    for q in symmetry.support:
        if q in used:
            continue
        for axis in ("X", "Y", "Z"):
            candidate = PauliString({q: axis})
            if candidate.commutes_with(symmetry):
                continue
            if all(candidate.commutes_with(o) for o in others):
                return q, candidate
    return None, None


def taper(hamiltonian: PauliOperator, symmetries, sector) -> PauliOperator:
    """Project onto a symmetry sector and drop one qubit per symmetry.

    The spectrum of the result equals the spectrum of ``hamiltonian``
    restricted to the chosen sector; remaining qubits are reindexed to
    0..m-1 preserving order.

    Raises:
        NotASymmetryError: a string does not commute with the Hamiltonian
            or the strings do not mutually commute.
        SectorArityMismatchError: one sign per symmetry is required.
        SingularSystemError: no valid tapered-qubit assignment exists.
    """
    symmetries = list(symmetries)
    sector = list(sector)
    if len(sector) != len(symmetries):
        raise SectorArityMismatchError(
            f"{len(symmetries)} symmetries but {len(sector)} sector signs"
        )
    if any(s not in (1, -1) for s in sector):
        raise SectorArityMismatchError("sector signs must be +1 or -1")
    term_strings = [s for s, _ in hamiltonian.terms()]
    for sym in symmetries:
        bad = [t for t in term_strings if not t.commutes_with(sym)]
        if bad:
            raise NotASymmetryError(f"{sym} anticommutes with the term {bad[0]}")
    for a, b in itertools.combinations(symmetries, 2):
        if not a.commutes_with(b):
            raise NotASymmetryError(f"symmetries {a} and {b} do not commute")

    used = {}
    for i, sym in enumerate(symmetries):
        others = symmetries[:i] + symmetries[i + 1 :]
        q, partner = _single_qubit_partner(sym, others, used)
        if q is None:
            raise SingularSystemError(
                f"no single-qubit partner found for symmetry {sym}"
            )
        used[q] = (sym, partner)

    h = hamiltonian
    for q, (sym, partner) in used.items():
        clifford = _SQRT2_INV * (
            PauliOperator.from_string(partner) + PauliOperator.from_string(sym)
        )
        h = clifford * h * clifford
    # Align every single-qubit image onto X only after all symmetry
    # conjugations: the alignment rotation need not commute with the other,
    # still-unprocessed symmetries, but it cannot touch their (single-qubit,
    # other-qubit) images.
    for q, (sym, partner) in used.items():
        if partner.axis_on(q) != "X":
            rot = _SQRT2_INV * (
                PauliOperator.from_string(PauliString({q: "X"}))
                + PauliOperator.from_string(partner)
            )
            h = rot * h * rot

    tapered_qubits = sorted(used)
    signs = {}
    for sym, sign in zip(symmetries, sector):
        for q, (owner, _) in used.items():
            if owner is sym:
                signs[q] = sign
    remaining = [q for q in range(h.width) if q not in used]
    index_map = {q: i for i, q in enumerate(remaining)}

    out = {}
    for string, coeff in h.terms():
        factor = 1.0
        axes = {}
        for q, axis in string.factors:
            if q in signs:
                if axis != "X":
                    raise SingularSystemError(
                        f"tapered qubit {q} carries {axis} after rotation"
                    )
                factor *= signs[q]
            else:
                axes[index_map.get(q, q)] = axis
        new = PauliString(axes)
        out[new] = out.get(new, 0j) + coeff * factor
    return PauliOperator(out)


def auto_sector(hamiltonian: PauliOperator, symmetries) -> list:
    """Sector signs whose tapered operator keeps the global ground energy.

    Enumerates all 2^k sectors, dense-diagonalising each tapered operator;
    ties within 1e-12 resolve toward +1 (sectors are enumerated with +1
    first).

    Raises:
        TooManyQubitsError: the Hamiltonian is too wide to diagonalise.
    """
    symmetries = list(symmetries)
    if not symmetries:
        return []
    n = hamiltonian.width
    if n > AUTO_SECTOR_MAX_QUBITS:
        raise TooManyQubitsError(
            f"auto_sector dense check capped at {AUTO_SECTOR_MAX_QUBITS} qubits, got {n}"
        )
    best_sector = None
    best_min = np.inf
    for sector in itertools.product((1, -1), repeat=len(symmetries)):
        tapered = taper(hamiltonian, symmetries, sector)
        if tapered.width == 0:
            low = tapered.constant.real
        else:
            low = float(np.linalg.eigvalsh(tapered.to_matrix()).min())
        if low < best_min - 1e-12:
            best_min = low
            best_sector = list(sector)
    return best_sector
