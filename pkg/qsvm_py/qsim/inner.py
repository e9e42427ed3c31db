from typing import Tuple, Dict, Any, Sequence, Union, NamedTuple

import math

from qsvm_py.common.constant import PAULI_SYMBOLS
from qsvm_py.errors import InvalidParameterError, DimensionMismatchError


class PauliString(NamedTuple):
    """An n-qubit Pauli string such as "XIZY"

    Symbol k acts on qubit k, the (n-1-k)-th bit of a basis index, so a string
    is the Kronecker product of its symbols from left to right.
    """

    symbols: str

    @staticmethod
    def parse(label: Union[str, "PauliString"]) -> "PauliString":
        if isinstance(label, PauliString):
            label = label.symbols
        symbols = str(label).strip().upper()
        if not symbols:
            raise InvalidParameterError("empty Pauli string")
        bad = [c for c in symbols if c not in PAULI_SYMBOLS]
        if bad:
            raise InvalidParameterError(f"Pauli string {label!r} has invalid symbols {''.join(bad)!r}")
        return PauliString(symbols)

    @property
    def n(self) -> int:
        return len(self.symbols)

    @property
    def x_mask(self) -> int:
        """Bits flipped by the string (X or Y positions)"""

        mask = 0
        for k, c in enumerate(self.symbols):
            if c in "XY":
                mask |= 1 << (self.n - 1 - k)
        return mask

    @property
    def z_mask(self) -> int:
        """Bits contributing a (-1)^bit sign (Z or Y positions)"""

        mask = 0
        for k, c in enumerate(self.symbols):
            if c in "ZY":
                mask |= 1 << (self.n - 1 - k)
        return mask

    @property
    def y_count(self) -> int:
        return self.symbols.count("Y")

    @property
    def is_diagonal(self) -> bool:
        """Only I and Z symbols, i.e. <0^n|P|0^n> = 1"""

        return all(c in "IZ" for c in self.symbols)

    def commutes_with(self, other: "PauliString") -> bool:
        if self.n != other.n:
            raise DimensionMismatchError(f"Pauli strings of length {self.n} and {other.n}")

        anti = 0
        for a, b in zip(self.symbols, other.symbols):
            if a != "I" and b != "I" and a != b:
                anti += 1
        return anti % 2 == 0

    def __str__(self) -> str:
        return self.symbols


class EncodingSpec(NamedTuple):
    """Data encoding U(x) = (prod_j exp(-i x_j P_j t / s))^s"""

    n: int
    paulis: Tuple[PauliString, ...]
    t: float
    s: int

    @staticmethod
    def build(
        paulis: Sequence[Union[str, PauliString]],
        t: float,
        s: int,
        n: int = 0,
    ) -> "EncodingSpec":
        ps = tuple(PauliString.parse(p) for p in paulis)
        if not n and ps:
            n = ps[0].n
        spec = EncodingSpec(n=int(n), paulis=ps, t=float(t), s=int(s))
        spec.validate()
        return spec

    @property
    def d(self) -> int:
        return len(self.paulis)

    def validate(self):
        if self.n < 1:
            raise InvalidParameterError(f"qubit count must be >= 1, got {self.n}")
        if self.d < 1:
            raise InvalidParameterError("an encoding needs at least one Pauli string")
        if self.s < 1 or int(self.s) != self.s:
            raise InvalidParameterError(f"Trotter steps must be a positive integer, got {self.s}")
        if not math.isfinite(self.t) or self.t <= 0:
            raise InvalidParameterError(f"evolution time must be > 0, got {self.t}")
        for p in self.paulis:
            if p.n != self.n:
                raise DimensionMismatchError(f"Pauli string {p.symbols} has length {p.n}, expected {self.n}")

    def with_time(self, t: float) -> "EncodingSpec":
        return self._replace(t=float(t))

    def with_steps(self, s: int) -> "EncodingSpec":
        return self._replace(s=int(s))

    def all_commute(self) -> bool:
        return all(
            self.paulis[i].commutes_with(self.paulis[j]) for i in range(self.d) for j in range(i + 1, self.d)
        )

    def descriptor(self) -> Dict[str, Any]:
        return {
            "kind": "quantum",
            "n": self.n,
            "paulis": [p.symbols for p in self.paulis],
            "t": self.t,
            "s": self.s,
        }
