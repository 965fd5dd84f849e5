"""Pauli-string algebra for Hamiltonians and observables.

Operators are complex-weighted sums of n-qubit Pauli strings.  Strings are
sparse: qubits not listed carry the identity, so the same operator value can
be used on any register wide enough to hold its support.  Qubit 0 is the
least-significant bit everywhere in this package.
"""

import re

import numpy as np

# Coefficients below this magnitude are treated as numerical noise.
COEFF_EPS = 1e-12

# to_matrix is dense; 2^12 x 2^12 complex is already ~0.25 GB.
MAX_DENSE_QUBITS = 12

_AXES = ("X", "Y", "Z")

_AXIS_MATRIX = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# Single-qubit products (a, b) -> (phase, axis); None means identity.
_AXIS_PRODUCT = {
    ("X", "X"): (1, None),
    ("Y", "Y"): (1, None),
    ("Z", "Z"): (1, None),
    ("X", "Y"): (1j, "Z"),
    ("Y", "Z"): (1j, "X"),
    ("Z", "X"): (1j, "Y"),
    ("Y", "X"): (-1j, "Z"),
    ("Z", "Y"): (-1j, "X"),
    ("X", "Z"): (-1j, "Y"),
}


class TooManyQubitsError(ValueError):
    """Raised when a dense representation would be too large."""


class IndexTooLargeError(ValueError):
    """Raised when an operator references a qubit outside the register."""


class ParseError(ValueError):
    """Malformed operator text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PauliString:
    """An immutable product of single-qubit X/Y/Z factors.

    Internally a sorted tuple of (qubit, axis) pairs; qubits not present
    carry the identity.  Hashable, so usable as a dict key.
    """

    __slots__ = ("_factors",)

    def __init__(self, axes=()):
        if isinstance(axes, dict):
            items = axes.items()
        else:
            items = tuple(axes)
        factors = []
        seen = set()
        for qubit, axis in sorted(items):
            if not isinstance(qubit, int) or qubit < 0:
                raise ValueError(f"qubit index must be a non-negative int, got {qubit!r}")
            if axis not in _AXES:
                raise ValueError(f"axis must be one of X, Y, Z, got {axis!r}")
            if qubit in seen:
                raise ValueError(f"duplicate qubit {qubit} in Pauli string")
            seen.add(qubit)
            factors.append((qubit, axis))
        object.__setattr__(self, "_factors", tuple(factors))

    @property
    def factors(self) -> tuple:
        return self._factors

    @property
    def support(self) -> tuple:
        """Qubits on which the string acts non-trivially, ascending."""
        return tuple(q for q, _ in self._factors)

    @property
    def width(self) -> int:
        """1 + highest qubit index touched (0 for the identity)."""
        return self._factors[-1][0] + 1 if self._factors else 0

    @property
    def is_identity(self) -> bool:
        return not self._factors

    def axis_on(self, qubit: int) -> str:
        for q, axis in self._factors:
            if q == qubit:
                return axis
        return "I"

    def multiply(self, other: "PauliString") -> tuple:
        """Product of two strings as (phase, string); phase in {1, -1, i, -i}."""
        phase = 1 + 0j
        axes = dict(self._factors)
        for qubit, axis in other._factors:
            mine = axes.get(qubit)
            if mine is None:
                axes[qubit] = axis
                continue
            p, res = _AXIS_PRODUCT[(mine, axis)]
            phase *= p
            if res is None:
                del axes[qubit]
            else:
                axes[qubit] = res
        return phase, PauliString(axes)

    def commutes_with(self, other: "PauliString") -> bool:
        """True iff the strings commute (even number of clashing qubits)."""
        other_axes = dict(other._factors)
        clashes = sum(
            1
            for q, axis in self._factors
            if q in other_axes and other_axes[q] != axis
        )
        return clashes % 2 == 0

    def sort_key(self) -> tuple:
        return self._factors

    def __eq__(self, other):
        return isinstance(other, PauliString) and self._factors == other._factors

    def __hash__(self):
        return hash(self._factors)

    def __str__(self):
        if not self._factors:
            return "I"
        return "*".join(f"{axis}({q})" for q, axis in self._factors)

    def __repr__(self):
        return f"PauliString({dict(self._factors)!r})"


_IDENTITY_STRING = PauliString()


class PauliOperator:
    """A complex-weighted sum of Pauli strings.

    Values are immutable after construction and always kept simplified:
    coefficients with magnitude below ``COEFF_EPS`` are dropped.  The empty
    string holds scalar/constant offsets.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        merged = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for string, coeff in items:
                if not isinstance(string, PauliString):
                    raise TypeError(f"term keys must be PauliString, got {type(string).__name__}")
                merged[string] = merged.get(string, 0j) + complex(coeff)
        pruned = {s: c for s, c in merged.items() if abs(c) >= COEFF_EPS}
        object.__setattr__(self, "_terms", pruned)

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, coeff=1.0) -> "PauliOperator":
        return cls({_IDENTITY_STRING: coeff})

    @classmethod
    def from_string(cls, string: PauliString, coeff=1.0) -> "PauliOperator":
        return cls({string: coeff})

    @classmethod
    def zero(cls) -> "PauliOperator":
        return cls()

    # -- inspection --------------------------------------------------------

    def terms(self) -> list:
        """(string, coefficient) pairs in canonical (lexicographic) order."""
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    def coefficient(self, string: PauliString) -> complex:
        return self._terms.get(string, 0j)

    @property
    def constant(self) -> complex:
        return self._terms.get(_IDENTITY_STRING, 0j)

    @property
    def num_terms(self) -> int:
        return len(self._terms)

    @property
    def width(self) -> int:
        """1 + highest qubit index referenced by any term."""
        return max((s.width for s in self._terms), default=0)

    @property
    def is_hermitian(self) -> bool:
        return all(abs(c.imag) < COEFF_EPS for c in self._terms.values())

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def simplify(self) -> "PauliOperator":
        """Re-merge and prune terms; idempotent (construction already simplifies)."""
        return PauliOperator(self._terms)

    # -- algebra -----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for s, c in other._terms.items():
            terms[s] = terms.get(s, 0j) + c
        return PauliOperator(terms)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-1.0) * other

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-1.0) * self

    def __neg__(self):
        return (-1.0) * self

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return PauliOperator({s: c * other for s, c in self._terms.items()})
        if isinstance(other, PauliOperator):
            out = {}
            for sa, ca in self._terms.items():
                for sb, cb in other._terms.items():
                    phase, string = sa.multiply(sb)
                    coeff = ca * cb * phase
                    out[string] = out.get(string, 0j) + coeff
            return PauliOperator(out)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, PauliOperator) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def isclose(self, other: "PauliOperator", tol: float = 1e-10) -> bool:
        """Term-wise coefficient comparison within ``tol``."""
        keys = set(self._terms) | set(other._terms)
        return all(abs(self.coefficient(k) - other.coefficient(k)) <= tol for k in keys)

    # -- dense form --------------------------------------------------------

    def to_matrix(self, num_qubits=None) -> np.ndarray:
        """Dense 2^n x 2^n matrix with qubit 0 as the least-significant bit.

        Raises:
            IndexTooLargeError: a term references a qubit >= num_qubits.
            TooManyQubitsError: num_qubits exceeds MAX_DENSE_QUBITS.
        """
        n = self.width if num_qubits is None else num_qubits
        if n > MAX_DENSE_QUBITS:
            raise TooManyQubitsError(
                f"dense matrix for {n} qubits exceeds the {MAX_DENSE_QUBITS}-qubit cap"
            )
        if self.width > n:
            raise IndexTooLargeError(
                f"operator touches qubit {self.width - 1} but the register has {n} qubits"
            )
        dim = 2**n
        out = np.zeros((dim, dim), dtype=complex)
        for string, coeff in self._terms.items():
            acc = np.array([[1.0 + 0j]])
            # Rightmost Kronecker factor is qubit 0 (least-significant bit).
            for q in range(n - 1, -1, -1):
                acc = np.kron(acc, _AXIS_MATRIX[string.axis_on(q)])
            out += coeff * acc
        return out

    # -- printing ----------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0.0"
        parts = []
        for string, coeff in self.terms():
            parts.append(_format_term(string, coeff, first=not parts))
        return "".join(parts)

    def __repr__(self):
        return f"PauliOperator({self.__str__()!r})"


def _coerce(value):
    if isinstance(value, PauliOperator):
        return value
    if isinstance(value, (int, float, complex)):
        return PauliOperator.identity(value)
    return NotImplemented


def _format_coeff(coeff: complex) -> str:
    if abs(coeff.imag) < COEFF_EPS:
        return repr(coeff.real)
    if abs(coeff.real) < COEFF_EPS:
        return repr(coeff.imag) + "j"
    sign = "+" if coeff.imag >= 0 else "-"
    return f"({coeff.real!r}{sign}{abs(coeff.imag)!r}j)"


def _format_term(string: PauliString, coeff: complex, first: bool) -> str:
    text = _format_coeff(coeff)
    negated = text.startswith("-")
    body = text[1:] if negated else text
    if not string.is_identity:
        body = f"{body}*{string}"
    if first:
        return f"-{body}" if negated else body
    return f" - {body}" if negated else f" + {body}"


# -- convenience constructors ----------------------------------------------


def X(qubit: int) -> PauliOperator:
    return PauliOperator.from_string(PauliString({qubit: "X"}))


def Y(qubit: int) -> PauliOperator:
    return PauliOperator.from_string(PauliString({qubit: "Y"}))


def Z(qubit: int) -> PauliOperator:
    return PauliOperator.from_string(PauliString({qubit: "Z"}))


def identity(coeff=1.0) -> PauliOperator:
    return PauliOperator.identity(coeff)


def commutator(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    """ab - ba."""
    return a * b - b * a


# -- text grammar ------------------------------------------------------------
#
# operator  := term (('+' | '-') term)*
# term      := [sign] factor ('*' factor)*
# factor    := coefficient | axis '(' int ')'
# axis      := 'X' | 'Y' | 'Z'
#
# Coefficients are real ("0.5", "-1e-3"), imaginary ("2j"), or parenthesised
# complex ("(1.5-0.5j)").  The canonical printer (str()) round-trips.

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<complex>\([^()]*\))
  | (?P<number>(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?j?)
  | (?P<axis>[XYZ]\(\s*\d+\s*\))
  | (?P<op>[+\-*])
    """,
    re.VERBOSE,
)

_AXIS_FACTOR_RE = re.compile(r"([XYZ])\(\s*(\d+)\s*\)")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    return tokens


def _parse_complex(token: str, pos: int) -> complex:
    try:
        return complex(token.replace(" ", ""))
    except ValueError:
        raise ParseError(f"bad coefficient {token!r}", pos) from None


def parse(text: str) -> PauliOperator:
    """Parse operator text like ``"-0.5*Z(0)*Z(1) + X(2) - 0.25"``.

    Raises:
        ParseError: on malformed input, with the offending position.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty operator expression", 0)
    result = {}
    i = 0
    n = len(tokens)
    while i < n:
        sign = 1.0
        # Leading +/- of this term.
        while i < n and tokens[i][0] == "op" and tokens[i][1] in "+-":
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        if i >= n:
            raise ParseError("dangling sign", tokens[-1][2])
        coeff = complex(sign)
        string = _IDENTITY_STRING
        expect_factor = True
        saw_factor = False
        while i < n:
            kind, value, pos = tokens[i]
            if kind == "op" and value == "*":
                if expect_factor:
                    raise ParseError("'*' without preceding factor", pos)
                expect_factor = True
                i += 1
                continue
            if kind == "op":
                break  # +/- starts the next term
            if not expect_factor:
                raise ParseError("missing '*' between factors", pos)
            if kind in ("number", "complex"):
                coeff *= _parse_complex(value, pos)
            else:
                m = _AXIS_FACTOR_RE.fullmatch(value)
                phase, string = string.multiply(PauliString({int(m.group(2)): m.group(1)}))
                coeff *= phase
            saw_factor = True
            expect_factor = False
            i += 1
        if not saw_factor:
            raise ParseError("empty term", tokens[i][2] if i < n else tokens[-1][2])
        if expect_factor:
            raise ParseError("dangling '*'", tokens[i - 1][2])
        result[string] = result.get(string, 0j) + coeff
    return PauliOperator(result)
