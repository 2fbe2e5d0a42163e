"""Generator sets, stabilizer groups, recombinations, and named codes.

A generator set holds N independent, mutually commuting Pauli operators; the
stabilizer group it spans contains the 2^N phaseless products, indexed by the
N-bit exponent vector selecting which generators enter the product.  All
stabilizers carry an implicit +1 phase.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .binary import (
    BitMatrix,
    PauliOperator,
    anticommutation_mask,
    multiply,
    parse_pauli,
    pauli_from_row,
    pauli_row,
    rank_mod2,
    rows_rank,
    rows_rref,
)

__all__ = [
    "GeneratorSet",
    "StabilizerGroup",
    "RecombinationMatrix",
    "GeneratorSubset",
    "InvalidGeneratorSetError",
    "InvalidRecombinationError",
    "SubgroupClosureError",
    "span_group",
    "span_paulis",
    "recombine",
    "build_color_code",
    "subgroup_key",
    "basis_key",
    "code_to_json",
    "code_from_json",
    "load_named_code",
    "NAMED_CODES",
]

# Materializing 2^N elements beyond this point is almost certainly a mistake.
MAX_SPAN_QUBITS = 20


class InvalidGeneratorSetError(ValueError):
    """Generators are not independent or do not mutually commute."""


class InvalidRecombinationError(ValueError):
    """Recombination matrix is not square and non-singular."""


class SubgroupClosureError(ValueError):
    """Element set is not closed under multiplication."""


@dataclass(frozen=True)
class GeneratorSet:
    """N independent, mutually commuting Pauli operators on N qubits."""

    n_qubits: int
    generators: tuple[PauliOperator, ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        gens = self.generators
        if len(gens) != self.n_qubits:
            raise InvalidGeneratorSetError(
                f"expected {self.n_qubits} generators, got {len(gens)}"
            )
        if any(g.n_qubits != self.n_qubits for g in gens):
            raise InvalidGeneratorSetError("generator size mismatch")
        if self.labels is not None and len(self.labels) != len(gens):
            raise InvalidGeneratorSetError("label count mismatch")
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if bin(anticommutation_mask(gens[i], gens[j])).count("1") % 2:
                    raise InvalidGeneratorSetError(
                        f"generators {i} and {j} anticommute"
                    )
        if rows_rank(pauli_row(g) for g in gens) != len(gens):
            raise InvalidGeneratorSetError("generators are not independent")

    @classmethod
    def from_texts(
        cls,
        texts: Sequence[str],
        labels: Optional[Sequence[str]] = None,
    ) -> "GeneratorSet":
        gens = tuple(parse_pauli(t) for t in texts)
        if not gens:
            raise InvalidGeneratorSetError("no generators given")
        return cls(
            gens[0].n_qubits,
            gens,
            tuple(labels) if labels is not None else None,
        )

    def binary_matrix(self) -> BitMatrix:
        """2N x N matrix whose column i is generator i (Z-block on top)."""
        n = self.n_qubits
        rows = []
        for mu in range(n):  # Z-block rows
            bits = 0
            for i, g in enumerate(self.generators):
                if (g.z_bits >> mu) & 1:
                    bits |= 1 << i
            rows.append(bits)
        for mu in range(n):  # X-block rows
            bits = 0
            for i, g in enumerate(self.generators):
                if (g.x_bits >> mu) & 1:
                    bits |= 1 << i
            rows.append(bits)
        return BitMatrix(2 * n, n, tuple(rows))


@dataclass(frozen=True)
class StabilizerGroup:
    """The 2^N products of a generator set, indexed by exponent vector."""

    generator_set: GeneratorSet
    elements: tuple[PauliOperator, ...] = field(repr=False)

    @property
    def n_qubits(self) -> int:
        return self.generator_set.n_qubits

    def element(self, exponent: int) -> PauliOperator:
        return self.elements[exponent]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p: PauliOperator) -> bool:
        return self.exponent_of(p) is not None

    def exponent_of(self, p: PauliOperator) -> Optional[int]:
        return self._index().get((p.z_bits, p.x_bits))

    def _index(self) -> dict[tuple[int, int], int]:
        cached = getattr(self, "_index_cache", None)
        if cached is None:
            cached = {
                (e.z_bits, e.x_bits): i for i, e in enumerate(self.elements)
            }
            object.__setattr__(self, "_index_cache", cached)
        return cached

    def non_identity(self) -> tuple[PauliOperator, ...]:
        return self.elements[1:]


def span_paulis(paulis: Sequence[PauliOperator]) -> list[PauliOperator]:
    """All 2^k phaseless products of k Paulis, indexed by exponent vector."""
    if not paulis:
        raise ValueError("cannot span an empty sequence")
    n = paulis[0].n_qubits
    out = [PauliOperator.identity(n)]
    for e in range(1, 1 << len(paulis)):
        low = e & -e
        out.append(multiply(out[e ^ low], paulis[low.bit_length() - 1]))
    return out


def span_group(s: GeneratorSet) -> StabilizerGroup:
    """Materialize the full 2^N-element group spanned by a generator set."""
    if s.n_qubits > MAX_SPAN_QUBITS:
        raise ValueError(
            f"refusing to materialize 2^{s.n_qubits} elements "
            f"(cap is {MAX_SPAN_QUBITS} qubits)"
        )
    elements = tuple(span_paulis(s.generators))
    if len({(e.z_bits, e.x_bits) for e in elements}) != len(elements):
        raise InvalidGeneratorSetError("spanned elements are not distinct")
    return StabilizerGroup(s, elements)


@dataclass(frozen=True)
class RecombinationMatrix:
    """A non-singular square binary matrix selecting generator products.

    Row i lists (as bits over the old generator indices) the factors entering
    new generator i.
    """

    matrix: BitMatrix

    def __post_init__(self) -> None:
        m = self.matrix
        if m.n_rows != m.n_cols:
            raise InvalidRecombinationError("recombination matrix must be square")
        if rank_mod2(m) != m.n_rows:
            raise InvalidRecombinationError("recombination matrix is singular")

    @classmethod
    def identity(cls, n: int) -> "RecombinationMatrix":
        return cls(BitMatrix.identity(n))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "RecombinationMatrix":
        return cls(BitMatrix.from_rows(rows))

    @property
    def size(self) -> int:
        return self.matrix.n_rows


def recombine(s: GeneratorSet, r: RecombinationMatrix) -> GeneratorSet:
    """New generator i is the product of the old generators with bit set in
    row i of the recombination matrix; the spanned group is unchanged."""
    if r.size != len(s.generators):
        raise InvalidRecombinationError(
            f"recombination size {r.size} does not match "
            f"{len(s.generators)} generators"
        )
    new_gens = []
    for row in r.matrix.row_bits:
        z = x = 0
        rest = row
        while rest:
            low = rest & -rest
            g = s.generators[low.bit_length() - 1]
            z ^= g.z_bits
            x ^= g.x_bits
            rest ^= low
        new_gens.append(PauliOperator(s.n_qubits, z, x))
    return GeneratorSet(s.n_qubits, tuple(new_gens))


@dataclass(frozen=True)
class GeneratorSubset:
    """Commuting stabilizers tied to a qubit subset, a witness candidate.

    ``omega`` holds sorted 1-based qubit labels with one stabilizer per
    label.  Only structural consistency is enforced here; the algebraic
    requirements (independence, commutation, locality) are what
    ``check_direct`` decides.
    """

    omega: tuple[int, ...]
    stabilizers: tuple[PauliOperator, ...]

    def __post_init__(self) -> None:
        if not self.stabilizers:
            raise ValueError("subset needs at least one stabilizer")
        n_qubits = self.stabilizers[0].n_qubits
        if any(p.n_qubits != n_qubits for p in self.stabilizers):
            raise ValueError("stabilizer size mismatch")
        if len(self.omega) != len(self.stabilizers):
            raise ValueError(
                f"{len(self.omega)} qubits vs {len(self.stabilizers)} stabilizers"
            )
        if list(self.omega) != sorted(set(self.omega)):
            raise ValueError("omega must be sorted and duplicate-free")
        if self.omega and not (1 <= self.omega[0] and self.omega[-1] <= n_qubits):
            raise ValueError(f"omega outside 1..{n_qubits}")

    @property
    def n_qubits(self) -> int:
        return self.stabilizers[0].n_qubits

    @property
    def size(self) -> int:
        return len(self.stabilizers)

    @property
    def omega_mask(self) -> int:
        mask = 0
        for q in self.omega:
            mask |= 1 << (q - 1)
        return mask


def basis_key(paulis: Iterable[PauliOperator]) -> tuple[int, ...]:
    """Canonical key of the subgroup spanned by the given Paulis.

    The key is the reduced row-echelon basis of the packed 2N-bit rows,
    sorted descending; equal subgroups always yield equal keys.
    """
    return tuple(rows_rref(pauli_row(p) for p in paulis))


def subgroup_key(elements: Iterable[PauliOperator]) -> tuple[int, ...]:
    """Canonical key of a multiplicatively closed element set.

    Raises SubgroupClosureError if the set is not a subgroup (must contain
    the identity and be closed under products).
    """
    elems = list(elements)
    if not elems:
        raise SubgroupClosureError("empty set is not a subgroup")
    n = elems[0].n_qubits
    rows = {pauli_row(p) for p in elems}
    if 0 not in rows:
        raise SubgroupClosureError("subgroup must contain the identity")
    basis = rows_rref(rows)
    if (1 << len(basis)) != len(rows):
        raise SubgroupClosureError(
            f"{len(rows)} elements cannot span a rank-{len(basis)} subgroup"
        )
    return tuple(basis)


def key_elements(key: tuple[int, ...], n_qubits: int) -> list[PauliOperator]:
    """Expand a subgroup key back into its 2^k member operators."""
    basis = [pauli_from_row(row, n_qubits) for row in key]
    if not basis:
        return [PauliOperator.identity(n_qubits)]
    return span_paulis(basis)


# ---------------------------------------------------------------------------
# Named codes and the code-definition JSON format.
# ---------------------------------------------------------------------------

_COLOR_CODE_TEXTS = (
    ("ZZZZIII", "s_R^Z"),
    ("IZZIZZI", "s_B^Z"),
    ("IIZZIZZ", "s_G^Z"),
    ("XXXXIII", "s_R^X"),
    ("IXXIXXI", "s_B^X"),
    ("IIXXIXX", "s_G^X"),
    ("XXXXXXX", "s_L^X"),
)


def build_color_code() -> GeneratorSet:
    """The seven-qubit color code: three Z plaquettes, three X plaquettes,
    and the all-X logical operator, on the triangular seven-qubit layout."""
    texts = [t for t, _ in _COLOR_CODE_TEXTS]
    labels = [l for _, l in _COLOR_CODE_TEXTS]
    return GeneratorSet.from_texts(texts, labels)


NAMED_CODES = {"color_code_7": build_color_code}


def code_to_json(s: GeneratorSet, name: str = "custom") -> str:
    payload = {
        "name": name,
        "n_qubits": s.n_qubits,
        "generators": [g.to_text() for g in s.generators],
    }
    if s.labels is not None:
        payload["labels"] = list(s.labels)
    return json.dumps(payload, indent=2)


def code_from_json(text: str) -> tuple[str, GeneratorSet]:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid code JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ValueError("code JSON must be an object")
    try:
        name = payload["name"]
        n_qubits = payload["n_qubits"]
        texts = payload["generators"]
    except KeyError as exc:
        raise ValueError(f"code JSON missing field {exc}") from exc
    labels = payload.get("labels")
    gens = GeneratorSet.from_texts(texts, labels)
    if gens.n_qubits != n_qubits:
        raise ValueError(
            f"declared n_qubits {n_qubits} does not match generators"
        )
    return name, gens


def load_named_code(name: str) -> GeneratorSet:
    try:
        return NAMED_CODES[name]()
    except KeyError:
        raise KeyError(
            f"unknown code {name!r}; known: {sorted(NAMED_CODES)}"
        ) from None
