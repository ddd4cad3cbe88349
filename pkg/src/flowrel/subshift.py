"""Finitely described bi-infinite symbolic sequences and finite-horizon
evidence checkers for proximality and syndetic proximality.

The checkers return certificates, not truth values: a proximal witness is
a shift time at which two radius-n windows agree, a gap violation is an
agreement-free interval of prescribed length, and the only pairs reported
as provably distal are structural dual pairs, which differ at every
coordinate at every shift.  Limit statements about the underlying systems
are semi-decidable at best, and the verdict vocabulary keeps the
distinction between "proved" and "evidenced" explicit.
"""

from __future__ import annotations

from dataclasses import dataclass
from threading import RLock

import numpy as np

MAX_BLOCK_LENGTH = 10**7


@dataclass(frozen=True)
class Substitution:
    """A letter-to-word substitution on a finite alphabet."""

    alphabet: str
    rule: dict[str, str]

    def __post_init__(self):
        for c in self.alphabet:
            if c not in self.rule or not self.rule[c]:
                raise ValueError(f"substitution needs a nonempty image for {c!r}")
        for img in self.rule.values():
            if any(c not in self.alphabet for c in img):
                raise ValueError("substitution image leaves the alphabet")

    def __hash__(self):
        return hash((self.alphabet, tuple(sorted(self.rule.items()))))

    def expand(self, word: str) -> str:
        return "".join(self.rule[c] for c in word)

    @property
    def is_dual_closed(self) -> bool:
        """True when swapping 0 and 1 commutes with the substitution."""
        if set(self.alphabet) != {"0", "1"}:
            return False
        return all(dual_word(self.rule[c]) == self.rule[dual_word(c)] for c in "01")


def dual_word(word: str) -> str:
    return word.translate(str.maketrans("01", "10"))


def morse_square() -> Substitution:
    """The square of the binary Thue-Morse substitution: 0 -> 0110, 1 -> 1001."""
    return Substitution("01", {"0": "0110", "1": "1001"})


class BiSeq:
    """A bi-infinite sequence evaluable on any finite window.

    ``segment(lo, hi)`` returns the letters at coordinates lo..hi
    inclusive; ``window(n)`` is the block on [-n, n].  Instances memoize
    grown cores and are intended to be confined to one thread each.
    """

    alphabet: str = "01"

    def segment(self, lo: int, hi: int) -> str:
        raise NotImplementedError

    def window(self, n: int) -> str:
        if n < 0:
            raise ValueError("window radius must be nonnegative")
        return self.segment(-n, n)

    def at(self, i: int) -> str:
        return self.segment(i, i)

    def describe(self) -> dict:
        raise NotImplementedError

    def normalized(self) -> "BiSeq":
        return self

    def canonical_key(self):
        return _tree(self.normalized().describe())


def _tree(obj):
    if isinstance(obj, dict):
        return tuple(sorted((k, _tree(v)) for k, v in obj.items()))
    if isinstance(obj, (list, tuple)):
        return tuple(_tree(v) for v in obj)
    return obj


class SubstFixed(BiSeq):
    """A bi-infinite fixed point of a substitution, described by a seed
    pair l.r: the left half is the limit of the images of l (aligned to
    end at coordinate -1) and the right half the limit of the images of r
    (starting at coordinate 0).  Requires rule(l) to end with l and
    rule(r) to start with r, with strictly growing images."""

    def __init__(self, left_seed: str, right_seed: str, substitution: Substitution | None = None):
        sub = substitution or morse_square()
        if len(left_seed) != 1 or len(right_seed) != 1:
            raise ValueError("seeds are single letters")
        if not sub.rule[left_seed].endswith(left_seed) or len(sub.rule[left_seed]) < 2:
            raise ValueError(f"left seed {left_seed!r} is not extendable")
        if not sub.rule[right_seed].startswith(right_seed) or len(sub.rule[right_seed]) < 2:
            raise ValueError(f"right seed {right_seed!r} is not extendable")
        self.sub = sub
        self.alphabet = sub.alphabet
        self.left_seed = left_seed
        self.right_seed = right_seed
        self._left = left_seed
        self._right = right_seed
        self._lock = RLock()

    def _grow(self, need: int):
        with self._lock:
            while len(self._left) < need:
                self._left = self.sub.expand(self._left)
            while len(self._right) < need:
                self._right = self.sub.expand(self._right)

    def segment(self, lo: int, hi: int) -> str:
        if hi < lo:
            return ""
        self._grow(max(-lo, hi + 1, 1))
        out = []
        for i in range(lo, hi + 1):
            out.append(self._right[i] if i >= 0 else self._left[len(self._left) + i])
        return "".join(out)

    def describe(self) -> dict:
        return {
            "type": "substitution_fixed_point",
            "rule": dict(sorted(self.sub.rule.items())),
            "left_seed": self.left_seed,
            "right_seed": self.right_seed,
        }


def morse_fixed_points() -> dict[str, SubstFixed]:
    """The four fixed points of the square substitution, keyed a, b, abar,
    bbar by their seed pairs 1.1, 0.1, 0.0, 1.0."""
    q = morse_square()
    return {
        "a": SubstFixed("1", "1", q),
        "b": SubstFixed("0", "1", q),
        "abar": SubstFixed("0", "0", q),
        "bbar": SubstFixed("1", "0", q),
    }


# --------------------------------------------------------------------------
# Chacon system

_BLOCK_CACHE: list[str] = ["0", "0010"]


def chacon_block(k: int) -> str:
    """The k-th block of the rank-one tower coding: B_0 = 0, B_1 = 0010,
    B_{k+1} = B_k B_k 1 B_k, of length (3^{k+1} - 1) / 2."""
    if k < 0:
        raise ValueError("block index must be nonnegative")
    if (3 ** (k + 1) - 1) // 2 > MAX_BLOCK_LENGTH:
        raise OverflowError(f"block {k} exceeds the {MAX_BLOCK_LENGTH}-letter guard")
    while len(_BLOCK_CACHE) <= k:
        b = _BLOCK_CACHE[-1]
        _BLOCK_CACHE.append(b + b + "1" + b)
    return _BLOCK_CACHE[k]


def _block_index_for(need: int) -> int:
    k = 0
    while (3 ** (k + 1) - 1) // 2 < need:
        k += 1
    return k


class ChaconPoint(BiSeq):
    """The two distinguished points of the Chacon subshift: x1 is the
    block limit read both ways across the origin, x2 the same with a
    single spacer 1 inserted at coordinate 0."""

    def __init__(self, kind: str):
        if kind not in ("x1", "x2"):
            raise ValueError("kind must be x1 or x2")
        self.kind = kind

    def segment(self, lo: int, hi: int) -> str:
        if hi < lo:
            return ""
        b = chacon_block(_block_index_for(max(-lo, hi + 1, 1) + 1))
        out = []
        for i in range(lo, hi + 1):
            if self.kind == "x1":
                out.append(b[i] if i >= 0 else b[len(b) + i])
            else:
                if i == 0:
                    out.append("1")
                elif i > 0:
                    out.append(b[i - 1])
                else:
                    out.append(b[len(b) + i])
        return "".join(out)

    def describe(self) -> dict:
        return {"type": "chacon_point", "kind": self.kind}


class ChaconXi(BiSeq):
    """A Chacon point addressed by a block-nesting itinerary over
    {1, 2, 3}: at stage k the current block sits first, second or third
    inside the next one.  The origin anchors the innermost block.
    Itineraries that are eventually 1 or eventually 3 stop growing on one
    side and reduce to shifts of x1 (the completion without the extra
    spacer); all other itineraries define the point outright."""

    def __init__(self, prefix: tuple[int, ...], tail: int):
        if tail not in (1, 2, 3):
            raise ValueError("tail must be 1, 2 or 3")
        if any(v not in (1, 2, 3) for v in prefix):
            raise ValueError("itinerary entries must be 1, 2 or 3")
        self.prefix = tuple(prefix)
        self.tail = tail
        self._reduction: BiSeq | None = None
        if tail != 2:
            offset = self._anchor_offset(len(self.prefix))
            if tail == 1:
                self._reduction = Shift(ChaconPoint("x1"), offset)
            else:
                rho = len(chacon_block(len(self.prefix))) - 1 - offset
                self._reduction = Shift(ChaconPoint("x1"), -(rho + 1))

    def _xi(self, k: int) -> int:
        return self.prefix[k] if k < len(self.prefix) else self.tail

    def _anchor_offset(self, k: int) -> int:
        """Offset of the innermost block's origin inside block k."""
        off = 0
        for j in range(k):
            step = self._xi(j)
            blen = len(chacon_block(j))
            if step == 2:
                off += blen
            elif step == 3:
                off += 2 * blen + 1
        return off

    def segment(self, lo: int, hi: int) -> str:
        if self._reduction is not None:
            return self._reduction.segment(lo, hi)
        if hi < lo:
            return ""
        k = len(self.prefix)
        while True:
            off = self._anchor_offset(k)
            b = chacon_block(k)
            if -off <= lo and hi <= len(b) - 1 - off:
                return "".join(b[i + off] for i in range(lo, hi + 1))
            k += 1

    def describe(self) -> dict:
        d = {"type": "chacon_itinerary", "prefix": list(self.prefix), "tail": self.tail}
        if self._reduction is not None:
            d["reduces_to"] = self._reduction.describe()
        return d

    def normalized(self) -> BiSeq:
        if self._reduction is not None:
            return self._reduction.normalized()
        return self


# --------------------------------------------------------------------------
# Generic constructions


class EventuallyConstant(BiSeq):
    """A finite center word with constant fills on both sides."""

    def __init__(self, center: str, start: int = 0, left_fill: str = "0",
                 right_fill: str = "0", alphabet: str = "01"):
        if len(left_fill) != 1 or len(right_fill) != 1:
            raise ValueError("fills are single letters")
        bad = set(center + left_fill + right_fill) - set(alphabet)
        if bad:
            raise ValueError(f"letters {bad} outside alphabet {alphabet!r}")
        self.alphabet = alphabet
        self.center = center
        self.start = start
        self.left_fill = left_fill
        self.right_fill = right_fill

    def segment(self, lo: int, hi: int) -> str:
        out = []
        for i in range(lo, hi + 1):
            j = i - self.start
            if j < 0:
                out.append(self.left_fill)
            elif j < len(self.center):
                out.append(self.center[j])
            else:
                out.append(self.right_fill)
        return "".join(out)

    def describe(self) -> dict:
        return {
            "type": "eventually_constant",
            "center": self.center,
            "start": self.start,
            "left_fill": self.left_fill,
            "right_fill": self.right_fill,
        }

    def normalized(self) -> BiSeq:
        center, start = self.center, self.start
        while center and center[0] == self.left_fill:
            center, start = center[1:], start + 1
        while center and center[-1] == self.right_fill:
            center = center[:-1]
        if (center, start) == (self.center, self.start):
            return self
        return EventuallyConstant(center, start, self.left_fill, self.right_fill, self.alphabet)


class Shift(BiSeq):
    """The shifted sequence: value(i) = inner(i + k)."""

    def __init__(self, inner: BiSeq, k: int):
        self.inner = inner
        self.k = int(k)
        self.alphabet = inner.alphabet

    def segment(self, lo: int, hi: int) -> str:
        return self.inner.segment(lo + self.k, hi + self.k)

    def describe(self) -> dict:
        return {"type": "shift", "by": self.k, "inner": self.inner.describe()}

    def normalized(self) -> BiSeq:
        inner = self.inner.normalized()
        k = self.k
        while isinstance(inner, Shift):
            k += inner.k
            inner = inner.inner
        if k == 0:
            return inner
        return Shift(inner, k)


class Dual(BiSeq):
    """0 and 1 interchanged everywhere (binary alphabets only)."""

    def __init__(self, inner: BiSeq):
        if set(inner.alphabet) != {"0", "1"}:
            raise ValueError("dual is only defined on the binary alphabet")
        self.inner = inner
        self.alphabet = inner.alphabet

    def segment(self, lo: int, hi: int) -> str:
        return dual_word(self.inner.segment(lo, hi))

    def describe(self) -> dict:
        return {"type": "dual", "inner": self.inner.describe()}

    def normalized(self) -> BiSeq:
        inner = self.inner.normalized()
        if isinstance(inner, Dual):
            return inner.inner
        if isinstance(inner, Shift):
            return Shift(Dual(inner.inner), inner.k).normalized()
        if isinstance(inner, SubstFixed) and inner.sub.is_dual_closed:
            return SubstFixed(dual_word(inner.left_seed), dual_word(inner.right_seed), inner.sub)
        if isinstance(inner, EventuallyConstant):
            return EventuallyConstant(
                dual_word(inner.center), inner.start,
                dual_word(inner.left_fill), dual_word(inner.right_fill), inner.alphabet,
            ).normalized()
        return Dual(inner)


class AdicImage(BiSeq):
    """The sliding mod-2 sum of adjacent coordinates of a binary sequence:
    value(i) = inner(i) + inner(i+1)."""

    def __init__(self, inner: BiSeq):
        if set(inner.alphabet) != {"0", "1"}:
            raise ValueError("the adjacent-sum factor needs a binary alphabet")
        self.inner = inner
        self.alphabet = "01"

    def segment(self, lo: int, hi: int) -> str:
        raw = self.inner.segment(lo, hi + 1)
        return "".join(
            str((int(raw[j]) + int(raw[j + 1])) % 2) for j in range(hi - lo + 1)
        )

    def describe(self) -> dict:
        return {"type": "adjacent_sum", "inner": self.inner.describe()}

    def normalized(self) -> BiSeq:
        return AdicImage(self.inner.normalized())


def adic_factor_H(x: BiSeq) -> BiSeq:
    return AdicImage(x)


def is_dual_pair(x: BiSeq, y: BiSeq) -> bool:
    """Structural proof that y is the 0/1 interchange of x; such pairs
    differ at every coordinate at every shift."""
    try:
        return Dual(x).normalized().canonical_key() == y.canonical_key()
    except ValueError:
        return False


# --------------------------------------------------------------------------
# Evidence checkers


@dataclass(frozen=True)
class EvidenceVerdict:
    """A replayable finite-horizon verdict for one pair of sequences."""

    outcome: str
    depth: int
    horizon: int
    gap_bound: int | None = None
    witness_time: int | None = None
    interval: tuple[int, int] | None = None
    max_gap: int | None = None

    def as_json(self) -> dict:
        d = {"outcome": self.outcome, "depth": self.depth, "horizon": self.horizon}
        if self.gap_bound is not None:
            d["gap_bound"] = self.gap_bound
        if self.witness_time is not None:
            d["witness_time"] = self.witness_time
        if self.interval is not None:
            d["interval"] = list(self.interval)
        if self.max_gap is not None:
            d["max_gap"] = self.max_gap
        return d


def agreement_times(x: BiSeq, y: BiSeq, n: int, horizon: int) -> np.ndarray:
    """All shift times t in [-H, H] at which the radius-n windows of the
    two shifted sequences coincide."""
    lo, hi = -horizon - n, horizon + n
    xa = np.frombuffer(x.segment(lo, hi).encode(), dtype=np.uint8)
    ya = np.frombuffer(y.segment(lo, hi).encode(), dtype=np.uint8)
    mism = np.concatenate(([0], np.cumsum(xa != ya)))
    ts = np.arange(-horizon, horizon + 1)
    starts = ts - n - lo
    return ts[mism[starts + 2 * n + 1] - mism[starts] == 0]


def proximal_witness(x: BiSeq, y: BiSeq, n: int, horizon: int) -> EvidenceVerdict:
    """First shift time (smallest absolute value, positive preferred) at
    which the radius-n windows agree; dual pairs are provably distal."""
    if n < 0 or horizon < 0:
        raise ValueError("depth and horizon must be nonnegative")
    if is_dual_pair(x, y):
        return EvidenceVerdict("distal_at_all_shifts", n, horizon)
    ts = agreement_times(x, y, n, horizon)
    if ts.size == 0:
        return EvidenceVerdict("inconclusive", n, horizon)
    best = min(ts, key=lambda t: (abs(int(t)), int(t) < 0))
    return EvidenceVerdict("proximal_witness", n, horizon, witness_time=int(best))


def syndetic_check(x: BiSeq, y: BiSeq, n: int, gap_bound: int, horizon: int) -> EvidenceVerdict:
    """Scan the agreement times at depth n on [-H, H]: report the first
    agreement-free interval of length ``gap_bound``, or the maximum gap
    observed when none exists."""
    if not (0 < gap_bound <= horizon):
        raise ValueError("need 0 < gap_bound <= horizon")
    ts = agreement_times(x, y, n, horizon)
    bounds = np.concatenate(([-horizon - 1], ts, [horizon + 1]))
    for left, right in zip(bounds[:-1], bounds[1:]):
        free = int(right - left - 1)
        if free >= gap_bound:
            start = int(left + 1)
            return EvidenceVerdict(
                "gap_violation", n, horizon, gap_bound=gap_bound,
                interval=(start, start + gap_bound - 1),
            )
    max_gap = int(np.diff(ts).max()) if ts.size > 1 else 1
    return EvidenceVerdict(
        "syndetic_up_to_horizon", n, horizon, gap_bound=gap_bound, max_gap=max_gap,
    )


@dataclass(frozen=True)
class ClassifyParams:
    depth: int = 8
    gap: int = 256
    horizon: int = 4096

    def as_json(self) -> dict:
        return {"depth": self.depth, "gap": self.gap, "horizon": self.horizon}


@dataclass(frozen=True)
class PairReport:
    x: dict
    y: dict
    params: ClassifyParams
    proximal: EvidenceVerdict
    syndetic: EvidenceVerdict | None
    labels: tuple[str, ...]

    def as_json(self) -> dict:
        return {
            "x": self.x,
            "y": self.y,
            "params": self.params.as_json(),
            "proximal": self.proximal.as_json(),
            "syndetic": self.syndetic.as_json() if self.syndetic else None,
            "labels": list(self.labels),
        }


def classify_pair(x: BiSeq, y: BiSeq, params: ClassifyParams = ClassifyParams()) -> PairReport:
    """Bundle witness scan, gap scan and dual detection into one verdict.

    Labels: proven-D for structural dual pairs; evidence-P when a witness
    exists, plus evidence-not-SP when the agreement times also violate the
    gap bound; inconclusive otherwise.  Nothing stronger than the computed
    evidence is ever claimed.
    """
    pw = proximal_witness(x, y, params.depth, params.horizon)
    if pw.outcome == "distal_at_all_shifts":
        return PairReport(x.describe(), y.describe(), params, pw, None, ("proven-D",))
    syn = syndetic_check(x, y, params.depth, params.gap, params.horizon)
    labels: list[str] = []
    if pw.outcome == "proximal_witness":
        labels.append("evidence-P")
        if syn.outcome == "gap_violation":
            labels.append("evidence-not-SP")
    else:
        labels.append("inconclusive")
    return PairReport(x.describe(), y.describe(), params, pw, syn, tuple(labels))
