"""Exact arithmetic for tower-sized schedule constants.

The transference schedule works with numbers like 9**(12**14) whose decimal
expansions cannot be materialised.  PowNum keeps such values as sparse
base-B positional integers: a sorted tuple of (exponent, digit) pairs with
digits in [1, B).  Addition, multiplication, small powers and comparisons
all stay in this representation; nothing is ever rounded.

Comparisons against fractional powers k**(p/q) never compute roots: the
ordering of x versus k**(p/q) * y is the ordering of x**q versus k**p * y**q
(everything here is nonnegative), which is plain integer arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Union

from .errors import PreconditionError

MATERIALIZE_BIT_CAP = 1 << 22  # refuse to expand PowNums beyond ~4M bits

ExactValue = Union[int, "PowNum"]


def _normalize(base: int, raw: dict[int, int]) -> tuple[tuple[int, int], ...]:
    """Carry digits into [0, base) and drop zeros; returns pairs sorted descending."""
    pending = dict(raw)
    out: dict[int, int] = {}
    while pending:
        e = min(pending)
        c = pending.pop(e) + out.pop(e, 0)
        if c < 0:
            raise PreconditionError("PowNum digits must stay nonnegative")
        q, rem = divmod(c, base)
        if rem:
            out[e] = rem
        if q:
            pending[e + 1] = pending.get(e + 1, 0) + q
    return tuple(sorted(out.items(), reverse=True))


class PowNum:
    """A nonnegative integer as sparse digits in a fixed base."""

    __slots__ = ("base", "digits")

    def __init__(self, base: int, digits):
        if base < 2:
            raise PreconditionError("PowNum base must be >= 2")
        self.base = base
        self.digits = _normalize(base, dict(digits))

    # --- constructors ---

    @staticmethod
    def from_int(n: int, base: int) -> "PowNum":
        if n < 0:
            raise PreconditionError("PowNum is nonnegative")
        digits = {}
        e = 0
        while n:
            n, rem = divmod(n, base)
            if rem:
                digits[e] = rem
            e += 1
        return PowNum(base, digits)

    @staticmethod
    def power(base: int, exponent: int, coeff: int = 1) -> "PowNum":
        """coeff * base**exponent."""
        return PowNum(base, {exponent: coeff})

    def _coerce(self, other) -> Optional["PowNum"]:
        if isinstance(other, PowNum):
            if other.base != self.base:
                raise PreconditionError("mixed PowNum bases")
            return other
        if isinstance(other, int):
            return PowNum.from_int(other, self.base)
        return None

    # --- structure ---

    def is_zero(self) -> bool:
        return not self.digits

    def bit_estimate(self) -> int:
        if not self.digits:
            return 0
        return (self.digits[0][0] + 1) * max(self.base.bit_length(), 1)

    def to_int(self, bit_cap: int = MATERIALIZE_BIT_CAP) -> int:
        if self.bit_estimate() > bit_cap:
            raise PreconditionError(
                f"PowNum too large to materialise (~{self.bit_estimate()} bits)")
        total = 0
        for e, c in self.digits:
            total += c * self.base ** e
        return total

    # --- arithmetic (no subtraction: digits stay nonnegative) ---

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        raw: dict[int, int] = {}
        for e, c in self.digits + o.digits:
            raw[e] = raw.get(e, 0) + c
        return PowNum(self.base, raw)

    __radd__ = __add__

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        raw: dict[int, int] = {}
        for e1, c1 in self.digits:
            for e2, c2 in o.digits:
                e = e1 + e2
                raw[e] = raw.get(e, 0) + c1 * c2
        return PowNum(self.base, raw)

    __rmul__ = __mul__

    def __pow__(self, p: int):
        if not isinstance(p, int) or p < 0:
            return NotImplemented
        if p == 0:
            return PowNum.from_int(1, self.base)
        if len(self.digits) == 1:
            e, c = self.digits[0]
            return PowNum(self.base, {e * p: c ** p})
        if p > 64:
            raise PreconditionError("refusing large power of a multi-digit PowNum")
        out = self
        for _ in range(p - 1):
            out = out * self
        return out

    # --- ordering ---

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare PowNum with {type(other).__name__}")
        a, b = self.digits, o.digits
        i = j = 0
        while i < len(a) or j < len(b):
            ea = a[i][0] if i < len(a) else None
            eb = b[j][0] if j < len(b) else None
            if eb is None or (ea is not None and ea > eb):
                return 1
            if ea is None or eb > ea:
                return -1
            if a[i][1] != b[j][1]:
                return 1 if a[i][1] > b[j][1] else -1
            i += 1
            j += 1
        return 0

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.base, self.digits))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # --- formatting ---

    def __repr__(self):
        return f"PowNum({self.to_string()!r})"

    def to_string(self) -> str:
        if not self.digits:
            return "0"
        terms = []
        for e, c in self.digits:
            if e == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(f"{self.base}^{e}")
            else:
                terms.append(f"{c}*{self.base}^{e}")
        return "+".join(terms)

    @staticmethod
    def parse(text: str) -> "PowNum":
        text = text.strip().replace(" ", "")
        if not text:
            raise PreconditionError("empty PowNum string")
        digits: dict[int, int] = {}
        base = None
        for term in text.split("+"):
            if "^" in term:
                left, exp_s = term.split("^")
                if "*" in left:
                    coeff_s, base_s = left.split("*")
                else:
                    coeff_s, base_s = "1", left
                b = int(base_s)
                if base is None:
                    base = b
                elif base != b:
                    raise PreconditionError("mixed bases in PowNum string")
                e, c = int(exp_s), int(coeff_s)
            else:
                e, c = 0, int(term)
            digits[e] = digits.get(e, 0) + c
        if base is None:
            base = 2  # pure integer; base is immaterial
        return PowNum(base, digits)


# --- dispatching helpers over int | PowNum ---------------------------------


def exact_cmp(x, y) -> int:
    """Three-way comparison over int, Fraction and PowNum (nonnegative)."""
    if isinstance(x, PowNum):
        return x._cmp(_defract(y, x.base))
    if isinstance(y, PowNum):
        return -y._cmp(_defract(x, y.base))
    if x < y:
        return -1
    if x > y:
        return 1
    return 0


def _defract(v, base: int):
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return int(v)
        raise PreconditionError("cannot compare a non-integer Fraction with a PowNum directly")
    return v


def exact_mul(x, y):
    if isinstance(x, PowNum) or isinstance(y, PowNum):
        if isinstance(x, PowNum):
            return x * y
        return y * x
    return x * y


def exact_add(x, y):
    if isinstance(x, PowNum) or isinstance(y, PowNum):
        if isinstance(x, PowNum):
            return x + y
        return y + x
    return x + y


def exact_pow(x, p: int):
    if isinstance(x, PowNum):
        return x ** p
    return x ** p


def exact_to_string(x) -> str:
    if isinstance(x, PowNum):
        return x.to_string()
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(int(x))
    return str(x)


def parse_exact(text: str):
    """Inverse of exact_to_string: decimal int, "p/q" fraction, or a power sum."""
    t = text.strip()
    if "^" in t:
        return PowNum.parse(t)
    if "/" in t:
        num, den = t.split("/")
        return Fraction(int(num), int(den))
    return int(t)


def int_nthroot(n: int, q: int) -> Optional[int]:
    """The exact integer q-th root of n, or None if n is not a perfect power."""
    if n < 0 or q < 1:
        raise PreconditionError("nthroot needs n >= 0, q >= 1")
    if q == 1 or n in (0, 1):
        return n
    hi = 1 << (n.bit_length() // q + 1)
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** q < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** q == n else None


def exact_root(k, q: int):
    """The exact q-th root of k (int or PowNum), or None when irrational."""
    if isinstance(k, PowNum):
        if len(k.digits) == 1:
            e, c = k.digits[0]
            root_c = int_nthroot(c, q) if c > 1 else 1
            if e % q == 0 and root_c is not None:
                return PowNum(k.base, {e // q: root_c})
        try:
            as_int = k.to_int()
        except PreconditionError:
            return None
        r = int_nthroot(as_int, q)
        return None if r is None else PowNum.from_int(r, k.base)
    r = int_nthroot(k, q)
    return r


def cmp_power(x, k, p: int, q: int, scale=1) -> int:
    """Exact three-way comparison of x against k**(p/q) * scale.

    Everything must be nonnegative and exact (int or PowNum).  The comparison
    is cross-powered: sign(x - k**(p/q) * scale) = sign(x**q - k**p * scale**q),
    so no root is ever extracted and no rounding can occur.
    """
    if q < 1:
        raise PreconditionError("cmp_power needs q >= 1")
    if p < 0:
        raise PreconditionError("cmp_power needs p >= 0")
    lhs = exact_pow(x, q)
    rhs = exact_mul(exact_pow(k, p), exact_pow(scale, q))
    return exact_cmp(lhs, rhs)
