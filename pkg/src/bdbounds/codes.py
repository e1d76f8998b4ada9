"""Binary linear block codes.

Generator-matrix representation, exhaustive codeword enumeration, weight
enumerators, BPSK modulation, the two built-in example codes, and a
line-oriented text format for loading codes from files.

Codeword index 0 is always the all-zero word; by linearity plus the symmetry
of the AWGN channel, error rates do not depend on the transmitted codeword,
and the simulator leans on that convention.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "CapacityError",
    "RankDeficientError",
    "CodeFileError",
    "ENUMERATION_CAP_K",
    "GeneratorMatrix",
    "WeightEnumerator",
    "LinearCode",
    "ParsedCode",
    "enumerate_codewords",
    "weight_enumerator",
    "bpsk_modulate",
    "builtin_extended_hamming_8_4",
    "builtin_ldpc_128_64_weight_enum",
    "parse_code_text",
    "load_code_file",
]

# Exact simulation needs the full codeword list; past 2^24 words that is no
# longer a sensible tool and the enumerator-based bounds module is the right
# one instead.
ENUMERATION_CAP_K = 24


class CapacityError(RuntimeError):
    """The request needs an explicit codeword list that is too large to build."""


class RankDeficientError(ValueError):
    """Generator matrix rows are linearly dependent over GF(2)."""


class CodeFileError(ValueError):
    """A code file failed to parse; the message carries the line number."""


def _gf2_rank(bits: np.ndarray) -> int:
    # rows packed into Python ints; eliminate the leading bit of the largest
    # remaining row from every other row that shares it
    rows = [int("".join(map(str, row)), 2) for row in bits.tolist()]
    rank = 0
    while rows:
        pivot = max(rows)
        if pivot == 0:
            break
        rank += 1
        rows.remove(pivot)
        top = 1 << (pivot.bit_length() - 1)
        rows = [r ^ pivot if r & top else r for r in rows]
    return rank


@dataclass(frozen=True)
class GeneratorMatrix:
    """A k x n binary generator matrix with full row rank over GF(2)."""

    bits: np.ndarray

    def __post_init__(self) -> None:
        bits = np.asarray(self.bits, dtype=np.uint8)
        if bits.ndim != 2:
            raise ValueError(f"generator must be 2-D, got shape {bits.shape}")
        k, n = bits.shape
        if not 1 <= k <= n:
            raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
        if np.any(bits > 1):
            raise ValueError("generator entries must be 0 or 1")
        if _gf2_rank(bits) != k:
            raise RankDeficientError(
                f"generator rows are not independent over GF(2) "
                f"(rank < k={k})")
        bits = bits.copy()
        bits.flags.writeable = False
        object.__setattr__(self, "bits", bits)

    @property
    def k(self) -> int:
        return self.bits.shape[0]

    @property
    def n(self) -> int:
        return self.bits.shape[1]


@dataclass(frozen=True)
class WeightEnumerator:
    """Codeword counts A_w by Hamming weight w.

    A complete enumerator covers the whole code: A_0 = 1 and the counts sum
    to 2^k.  A ``truncated`` enumerator records only the low-weight terms
    that are known (the usual situation for larger codes); bounds computed
    from one are flagged accordingly downstream.
    """

    n: int
    d_min: int
    coeffs: dict[int, int]
    truncated: bool = False

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"block length must be >= 1, got {self.n}")
        if not 1 <= self.d_min <= self.n:
            raise ValueError(
                f"d_min must be in [1, {self.n}], got {self.d_min}")
        coeffs = {int(w): int(c) for w, c in self.coeffs.items()}
        for w, c in coeffs.items():
            if not 0 <= w <= self.n:
                raise ValueError(f"weight {w} outside [0, {self.n}]")
            if c < 0:
                raise ValueError(f"count A_{w} = {c} is negative")
            if 0 < w < self.d_min and c != 0:
                raise ValueError(
                    f"A_{w} = {c} nonzero below d_min = {self.d_min}")
        positive = [w for w, c in coeffs.items() if w > 0 and c > 0]
        if positive and min(positive) != self.d_min:
            raise ValueError(
                f"smallest positive weight {min(positive)} does not match "
                f"d_min = {self.d_min}")
        if not self.truncated:
            if coeffs.get(0, 0) != 1:
                raise ValueError("complete enumerator must have A_0 = 1")
            total = sum(coeffs.values())
            if total & (total - 1):
                raise ValueError(
                    f"complete enumerator total {total} is not a power of "
                    f"two; mark it truncated or fix the counts")
        object.__setattr__(self, "coeffs", coeffs)

    def coefficient(self, w: int) -> int:
        return self.coeffs.get(w, 0)

    def positive_weights(self) -> list[int]:
        """Weights of incorrect codewords: w > 0 with A_w > 0, ascending."""
        return sorted(w for w, c in self.coeffs.items() if w > 0 and c > 0)

    def total(self) -> int:
        return sum(self.coeffs.values())

    def as_list(self) -> list[int]:
        """[A_0, A_1, ..., A_n]; complete enumerators only."""
        if self.truncated:
            raise ValueError("as_list() is meaningless for a truncated "
                             "enumerator; use coefficient(w)")
        return [self.coefficient(w) for w in range(self.n + 1)]

    @property
    def k(self) -> int:
        """Message length implied by a complete enumerator's total 2^k."""
        if self.truncated:
            raise ValueError("k is unknown for a truncated enumerator")
        return self.total().bit_length() - 1


def enumerate_codewords(g: GeneratorMatrix) -> np.ndarray:
    """All 2^k codewords of the code generated by ``g``, as a (2^k, n) uint8
    array.

    Row m is the encoding of message index m read as a k-bit binary counter
    (most significant message bit first), so row 0 is the all-zero codeword
    and the order is deterministic.
    """
    if g.k > ENUMERATION_CAP_K:
        raise CapacityError(
            f"k = {g.k} exceeds the enumeration cap of {ENUMERATION_CAP_K} "
            f"(2^{g.k} codewords); use a weight enumerator instead")
    k = g.k
    messages = ((np.arange(1 << k, dtype=np.int64)[:, None]
                 >> np.arange(k - 1, -1, -1)[None, :]) & 1).astype(np.uint8)
    return (messages @ g.bits) % 2


def _enum_from_codewords(codewords: np.ndarray, n: int) -> WeightEnumerator:
    weights = Counter(np.asarray(codewords).sum(axis=1).tolist())
    positive = [w for w in weights if w > 0]
    d_min = min(positive) if positive else n
    return WeightEnumerator(n=n, d_min=d_min,
                            coeffs={int(w): int(c) for w, c in weights.items()})


@dataclass(frozen=True)
class LinearCode:
    """A binary (n, k) linear code with its codeword list and enumerator.

    Immutable after construction; safe to share across threads.
    """

    generator: GeneratorMatrix
    codewords: np.ndarray | None
    weight_enum: WeightEnumerator

    def __post_init__(self) -> None:
        if self.codewords is not None:
            cws = np.asarray(self.codewords, dtype=np.uint8)
            expected = (1 << self.generator.k, self.generator.n)
            if cws.shape != expected:
                raise ValueError(
                    f"codeword list shape {cws.shape} != {expected}")
            if cws[0].any():
                raise ValueError("codeword index 0 must be the all-zero word")
            cws = cws.copy()
            cws.flags.writeable = False
            object.__setattr__(self, "codewords", cws)

    @classmethod
    def from_generator(cls, bits) -> "LinearCode":
        g = GeneratorMatrix(np.asarray(bits))
        cws = enumerate_codewords(g)
        return cls(generator=g, codewords=cws,
                   weight_enum=_enum_from_codewords(cws, g.n))

    @property
    def n(self) -> int:
        return self.generator.n

    @property
    def k(self) -> int:
        return self.generator.k

    @property
    def rate(self) -> float:
        return self.generator.k / self.generator.n


def weight_enumerator(code: LinearCode) -> WeightEnumerator:
    """Exact weight enumerator computed from the explicit codeword list."""
    if code.codewords is None:
        raise ValueError("code has no codeword list to count")
    return _enum_from_codewords(code.codewords, code.n)


def bpsk_modulate(word) -> np.ndarray:
    """Map bits to antipodal unit-amplitude symbols: 0 -> +1, 1 -> -1.

    With this scaling the Euclidean distance between two modulated codewords
    is 2 sqrt(d) for Hamming distance d, so half the distance to a weight-w
    codeword is sqrt(w).  Accepts a single word or a stack of words.
    """
    return 1.0 - 2.0 * np.asarray(word, dtype=np.float64)


def builtin_extended_hamming_8_4() -> LinearCode:
    """The (8, 4) extended Hamming code: the (7, 4) Hamming code plus an
    overall parity bit.  Weight enumerator {1,0,0,0,14,0,0,0,1}, d_min = 4."""
    parity = np.array([[1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1]],
                      dtype=np.uint8)
    g7 = np.hstack([np.eye(4, dtype=np.uint8), parity])
    g8 = np.hstack([g7, (g7.sum(axis=1) % 2)[:, None]])
    return LinearCode.from_generator(g8)


def builtin_ldpc_128_64_weight_enum() -> WeightEnumerator:
    """Truncated weight enumerator of a (128, 64) LDPC code designed for
    telecommand, with d_min = 14; only the leading terms are known from
    computer search, so the enumerator is marked truncated and there is no
    codeword list."""
    return WeightEnumerator(
        n=128, d_min=14,
        coeffs={14: 16, 15: 0, 16: 512, 17: 0, 18: 5344},
        truncated=True)


# ---------------------------------------------------------------------------
# Code file format
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParsedCode:
    """Result of loading a code file.

    Generator-mode files produce a full :class:`LinearCode`; enumerator-mode
    files produce only the weight enumerator (``code`` is None).  ``k`` is
    None when the file does not determine it (truncated enumerator without an
    explicit ``k`` line).
    """

    name: str
    n: int
    k: int | None
    weight_enum: WeightEnumerator
    code: LinearCode | None = None


def _fail(source: str, lineno: int, reason: str) -> CodeFileError:
    return CodeFileError(f"{source}:{lineno}: {reason}")


def parse_code_text(text: str, source: str = "<string>") -> ParsedCode:
    """Parse the line-oriented code format.

    Generator mode::

        code <name>
        n <int>
        k <int>
        <k rows of n characters from {0,1}>

    Enumerator mode::

        code <name>
        n <int>
        k <int>          # optional; needed for the rate when truncated
        dmin <int>
        A <w> <count>    # ascending w
        truncated        # optional marker

    Lines starting with ``#`` and blank lines are ignored.
    """
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(no, ln) for no, ln in lines if ln and not ln.startswith("#")]
    pos = 0

    def peek():
        return lines[pos] if pos < len(lines) else (len(text.splitlines()) + 1, None)

    def take():
        nonlocal pos
        no, ln = peek()
        pos += 1
        return no, ln

    def expect_kv(key: str) -> tuple[int, str]:
        no, ln = take()
        if ln is None or not ln.startswith(key + " "):
            raise _fail(source, no, f"expected '{key} <value>' line, got {ln!r}")
        return no, ln[len(key) + 1:].strip()

    def parse_int(no: int, s: str, what: str) -> int:
        try:
            return int(s)
        except ValueError:
            raise _fail(source, no, f"{what} is not an integer: {s!r}") from None

    _, name = expect_kv("code")
    no_n, n_str = expect_kv("n")
    n = parse_int(no_n, n_str, "n")
    if n < 1:
        raise _fail(source, no_n, f"n must be >= 1, got {n}")

    k = None
    no, ln = peek()
    if ln is not None and ln.startswith("k "):
        take()
        k = parse_int(no, ln[2:].strip(), "k")
        if not 1 <= k <= n:
            raise _fail(source, no, f"k must be in [1, {n}], got {k}")

    no, ln = peek()
    if ln is not None and ln.startswith("dmin "):
        return _parse_enumerator_mode(source, take, peek, name, n, k)
    if k is None:
        raise _fail(source, no, "expected 'k <int>' (generator mode) or "
                                "'dmin <int>' (enumerator mode)")
    return _parse_generator_mode(source, take, name, n, k)


def _parse_generator_mode(source, take, name, n, k) -> ParsedCode:
    rows = []
    for _ in range(k):
        no, ln = take()
        if ln is None:
            raise _fail(source, no, f"expected {k} generator rows, "
                                    f"got {len(rows)}")
        if len(ln) != n or set(ln) - {"0", "1"}:
            raise _fail(source, no, f"generator row must be {n} characters "
                                    f"from {{0,1}}, got {ln!r}")
        rows.append([int(c) for c in ln])
    no, ln = take()
    if ln is not None:
        raise _fail(source, no, f"unexpected content after generator rows: {ln!r}")
    try:
        code = LinearCode.from_generator(np.array(rows, dtype=np.uint8))
    except (RankDeficientError, ValueError) as exc:
        raise CodeFileError(f"{source}: invalid generator matrix: {exc}") from exc
    return ParsedCode(name=name, n=n, k=k, weight_enum=code.weight_enum,
                      code=code)


def _parse_enumerator_mode(source, take, peek, name, n, k) -> ParsedCode:
    no_d, ln = take()
    d_min = int(ln.split()[1]) if len(ln.split()) == 2 and ln.split()[1].lstrip("-").isdigit() else None
    if d_min is None:
        raise _fail(source, no_d, f"malformed dmin line: {ln!r}")
    coeffs: dict[int, int] = {}
    truncated = False
    last_w = -1
    while True:
        no, ln = take()
        if ln is None:
            break
        if ln == "truncated":
            truncated = True
            no, ln = take()
            if ln is not None:
                raise _fail(source, no, f"unexpected content after "
                                        f"'truncated': {ln!r}")
            break
        parts = ln.split()
        if len(parts) != 3 or parts[0] != "A":
            raise _fail(source, no, f"expected 'A <w> <count>' or "
                                    f"'truncated', got {ln!r}")
        try:
            w, count = int(parts[1]), int(parts[2])
        except ValueError:
            raise _fail(source, no, f"non-integer A line: {ln!r}") from None
        if w <= last_w:
            raise _fail(source, no, f"A lines must have ascending weights; "
                                    f"{w} after {last_w}")
        last_w = w
        coeffs[w] = count
    try:
        we = WeightEnumerator(n=n, d_min=d_min, coeffs=coeffs,
                              truncated=truncated)
    except ValueError as exc:
        raise CodeFileError(f"{source}: invalid enumerator: {exc}") from exc
    if k is None and not truncated:
        k = we.k
    return ParsedCode(name=name, n=n, k=k, weight_enum=we, code=None)


def load_code_file(path) -> ParsedCode:
    """Load a code description from a file; parse errors identify the line."""
    p = Path(path)
    return parse_code_text(p.read_text(encoding="utf-8"), source=str(p))
