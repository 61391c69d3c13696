"""Self-complementary binary codes and the Grey-Rankin bound.

A real +-1/sqrt(M) frame and a self-complementary (M, 2N) binary code are two
views of the same object: column signs map to bits (+ -> 0, - -> 1), the
second half of the code is the complement of the first, and distance-bound
equality for the code is Welch-bound equality for the frame.  All arithmetic
in this module is exact (bits and integers, no tolerances).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import (
    CodeFormatError,
    NotRealConstantAmplitude,
    NotSelfComplementary,
    TooFewWords,
)
from .frames import Frame, _numeric
from .metrics import certify_etf


@dataclass(frozen=True)
class BinaryCode:
    """Distinct length-m bit vectors; when self_complementary, word n+N is
    the complement of word n for the first half n = 0..N-1."""

    m: int
    words: tuple[tuple[int, ...], ...]
    self_complementary: bool

    def __post_init__(self):
        if any(len(w) != self.m or any(b not in (0, 1) for b in w) for w in self.words):
            raise CodeFormatError("every codeword must be a 0/1 vector of the stated length")
        if len(set(self.words)) != len(self.words):
            raise CodeFormatError("codewords must be distinct")
        if self.self_complementary:
            count = len(self.words)
            if count % 2:
                raise NotSelfComplementary("self-complementary codes have an even word count")
            half = count // 2
            for i in range(half):
                comp = tuple(1 - b for b in self.words[i])
                if self.words[i + half] != comp:
                    raise NotSelfComplementary(
                        f"word {i + half} is not the complement of word {i}")

    @property
    def count(self) -> int:
        return len(self.words)

    def to_text(self) -> str:
        header = f"# etfkit-code m={self.m} n={self.count} selfcomp={int(self.self_complementary)}"
        lines = ["".join(str(b) for b in w) for w in self.words]
        return "\n".join([header] + lines) + "\n"


def parse_code(text: str) -> BinaryCode:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("# etfkit-code"):
        raise CodeFormatError("missing '# etfkit-code' header line")
    fields = dict(tok.split("=") for tok in lines[0].split()[2:])
    try:
        m, count, selfcomp = int(fields["m"]), int(fields["n"]), bool(int(fields["selfcomp"]))
    except (KeyError, ValueError) as e:
        raise CodeFormatError(f"bad header: {e}") from e
    words = []
    for ln in lines[1:]:
        if len(ln) != m or any(c not in "01" for c in ln):
            raise CodeFormatError(f"bad codeword line {ln!r}")
        words.append(tuple(int(c) for c in ln))
    if len(words) != count:
        raise CodeFormatError(f"header says {count} words, file has {len(words)}")
    return BinaryCode(m=m, words=tuple(words), self_complementary=selfcomp)


def frame_to_code(frame: Frame) -> BinaryCode:
    """Column signs to bits (+ -> 0, - -> 1), then append all complements.

    The frame must be in exact sign form (+-1/sqrt(M) entries); the result is
    a self-complementary (M, 2N) code that round-trips with code_to_frame.
    """
    if not frame.is_sign_matrix:
        raise NotRealConstantAmplitude(
            "frame is not in exact sign form; only +-1/sqrt(M) frames convert to codes")
    signs = frame.exact_ints
    first = [tuple(0 if signs[i, col] == 1 else 1 for i in range(frame.m))
             for col in range(frame.n)]
    second = [tuple(1 - b for b in w) for w in first]
    return BinaryCode(m=frame.m, words=tuple(first + second), self_complementary=True)


def code_to_frame(code: BinaryCode) -> Frame:
    """Exponentiate the first half of a self-complementary code back into the
    M x N sign-form frame."""
    if not code.self_complementary:
        raise NotSelfComplementary("only self-complementary codes map back to frames")
    half = code.count // 2
    ints = np.array([[1 if code.words[col][i] == 0 else -1 for col in range(half)]
                     for i in range(code.m)], dtype=np.int64)
    frame = Frame(entries=_numeric(ints, code.m), exact_ints=ints, scale_sq=code.m,
                  provenance={"construction": "from-code", "m": code.m, "n": half})
    frame.check_unit_norm()
    return frame


def hamming(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    return sum(x != y for x, y in zip(a, b))


def distance(code: BinaryCode) -> int:
    """Minimum pairwise Hamming distance over all codewords."""
    if code.count < 2:
        raise TooFewWords("distance needs at least two codewords")
    arr = np.array(code.words, dtype=np.int8)
    diffs = (arr[:, None, :] != arr[None, :, :]).sum(axis=2)
    return int(diffs[np.triu_indices(len(arr), k=1)].min())


@dataclass(frozen=True)
class BoundReport:
    """Grey-Rankin word-count ceiling 8 d (m - d) / (m - (m - 2d)^2), valid
    only when the denominator is positive."""

    m: int
    delta: int
    applicable: bool
    value: Fraction | None

    def as_dict(self) -> dict:
        return {
            "report": "grey-rankin-bound",
            "passed": self.applicable,
            "m": self.m,
            "delta": self.delta,
            "applicable": self.applicable,
            "value": None if self.value is None else
                     (int(self.value) if self.value.denominator == 1 else str(self.value)),
        }


def grey_rankin_bound(m: int, delta: int) -> BoundReport:
    """Bound on 2N for a self-complementary (m, 2N) code of distance delta;
    NotApplicable (value None) when 2*delta <= m - sqrt(m)."""
    denom = m - (m - 2 * delta) ** 2
    if denom <= 0:
        return BoundReport(m=m, delta=delta, applicable=False, value=None)
    return BoundReport(m=m, delta=delta, applicable=True,
                       value=Fraction(8 * delta * (m - delta), denom))


@dataclass(frozen=True)
class GrbeCertificate:
    """Both sides of the distance/coherence equivalence, independently run.

    bound_equality checks 2N against the exact Grey-Rankin value; etf_passed
    runs the exact ETF certificate on the exponentiated first half.  The two
    verdicts agreeing is itself the equivalence under test, so agreement is
    reported rather than assumed.
    """

    m: int
    count: int
    delta: int
    bound_applicable: bool
    bound_value: Fraction | None
    bound_equality: bool
    etf_passed: bool

    @property
    def agrees(self) -> bool:
        return self.bound_equality == self.etf_passed

    def as_dict(self) -> dict:
        return {
            "report": "grbe-certificate",
            "passed": self.bound_equality and self.etf_passed,
            "m": self.m,
            "words": self.count,
            "delta": self.delta,
            "bound_applicable": self.bound_applicable,
            "bound_value": None if self.bound_value is None else
                           (int(self.bound_value) if self.bound_value.denominator == 1
                            else str(self.bound_value)),
            "bound_equality": self.bound_equality,
            "etf_passed": self.etf_passed,
            "verdicts_agree": self.agrees,
        }


def certify_grbe(code: BinaryCode) -> GrbeCertificate:
    """Certify Grey-Rankin equality and cross-check it against the exact ETF
    certificate of the corresponding sign frame."""
    if not code.self_complementary:
        raise NotSelfComplementary("Grey-Rankin certification applies to self-complementary codes")
    delta = distance(code)
    bound = grey_rankin_bound(code.m, delta)
    equality = bound.applicable and bound.value == code.count
    if code.count >= 4:
        # exact path: the frame from a code always carries integer form, so
        # the certificate tolerance plays no role in the verdict comparison
        etf_passed = certify_etf(code_to_frame(code)).passed
    else:
        etf_passed = False  # a lone vector and its complement span no ETF
    return GrbeCertificate(
        m=code.m, count=code.count, delta=delta,
        bound_applicable=bound.applicable, bound_value=bound.value,
        bound_equality=equality, etf_passed=etf_passed,
    )


@dataclass(frozen=True)
class LinearityReport:
    """Closure of the word set under bitwise addition, plus the dimension
    families a linear bound-equality code is allowed to have."""

    linear: bool
    witness: tuple[int, int] | None
    family: str | None

    def as_dict(self) -> dict:
        return {
            "report": "linearity",
            "passed": self.linear,
            "linear": self.linear,
            "witness": list(self.witness) if self.witness else None,
            "family": self.family,
        }


def _classify_linear_dimensions(m: int, count: int) -> str | None:
    """Which allowed family (if any) a linear bound-equality code of these
    dimensions falls into: the simplex family m = 2^(j+1) - 1 with 2^(j+2)
    words, or m = 2^j (2^(j+1) +- 1) with 2^(2j+3) words."""
    j = 1
    while 2 ** (j + 2) <= count or 2 ** (2 * j + 3) <= count:
        if m == 2 ** (j + 1) - 1 and count == 2 ** (j + 2):
            return "simplex"
        if count == 2 ** (2 * j + 3):
            if m == 2 ** j * (2 ** (j + 1) - 1):
                return "bent-minus"
            if m == 2 ** j * (2 ** (j + 1) + 1):
                return "bent-plus"
        j += 1
    return None


def is_linear(code: BinaryCode) -> LinearityReport:
    """Exhaustive XOR closure scan; when closed, also report the allowed
    dimension family for linear bound-equality codes (None if neither fits)."""
    wordset = set(code.words)
    zero = (0,) * code.m
    if zero not in wordset:
        return LinearityReport(linear=False, witness=None, family=None)
    words = list(code.words)
    for i, j in combinations(range(len(words)), 2):
        sxor = tuple(a ^ b for a, b in zip(words[i], words[j]))
        if sxor not in wordset:
            return LinearityReport(linear=False, witness=(i, j), family=None)
    return LinearityReport(linear=True, witness=None,
                           family=_classify_linear_dimensions(code.m, code.count))
