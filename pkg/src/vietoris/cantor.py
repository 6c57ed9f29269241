"""Order-preserving homeomorphisms of the middle-third Cantor set as tree pairs.

A binary word ``w`` names the clopen piece ``K_w`` of the Cantor set ``K``
whose ternary expansion starts with ``w`` (digit ``1`` standing for ternary
``2``).  An element is a pair of complete prefix codes listed left to right;
it sends ``d_i + s`` to ``r_i + s``.

On each piece this substitution is the restriction of an affine map of the
line, and consecutive pieces are separated by a deleted interval.  Extending
linearly across deleted intervals gives a PL homeomorphism of [0, 1]; the
extension is a group homomorphism, which is how Cantor elements reuse the
interval machinery (graphs, sup distance, certificates).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .geometry import ONE, ZERO, StaircaseCurve
from .homeo import PLHomeo, graph

THIRD = Fraction(1, 3)


def is_complete_code(words) -> bool:
    """True if ``words`` is a complete prefix code in left-to-right order."""
    words = list(words)
    if not words or any(set(w) - {"0", "1"} for w in words):
        return False
    if words != sorted(words):
        return False
    for a, b in zip(words, words[1:]):
        if b.startswith(a):
            return False
    return sum(Fraction(1, 2 ** len(w)) for w in words) == 1


def piece_start(word: str) -> Fraction:
    """Left endpoint of the interval spanned by ``K_word``."""
    return sum((Fraction(2, 3 ** (k + 1)) for k, c in enumerate(word) if c == "1"), ZERO)


def piece_length(word: str) -> Fraction:
    return THIRD ** len(word)


def address_value(prefix: str, tail: str) -> Fraction:
    """The point with address ``prefix`` followed by ``tail`` repeated forever."""
    value = piece_start(prefix)
    if tail == "1":
        value += piece_length(prefix)
    return value


def in_cantor_set(x: Fraction) -> bool:
    """Membership of a rational in the middle-third Cantor set."""
    x = Fraction(x)
    if not ZERO <= x <= ONE:
        return False
    seen = set()
    while x not in seen:
        seen.add(x)
        if x <= THIRD:
            x = 3 * x
        elif x >= 2 * THIRD:
            x = 3 * x - 2
        else:
            return False
    return True


@dataclass(frozen=True, order=True)
class CantorHomeo:
    domain: tuple[str, ...]
    range: tuple[str, ...]

    def __post_init__(self):
        dom, ran = tuple(self.domain), tuple(self.range)
        if len(dom) != len(ran):
            raise ValueError("domain and range partitions must have equal length")
        if not is_complete_code(dom) or not is_complete_code(ran):
            raise ValueError("partitions must be complete prefix codes in left-to-right order")
        dom, ran = _reduce(list(dom), list(ran))
        object.__setattr__(self, "domain", tuple(dom))
        object.__setattr__(self, "range", tuple(ran))

    @classmethod
    def identity(cls) -> CantorHomeo:
        return cls(("",), ("",))

    @property
    def depth(self) -> int:
        return max(len(w) for w in self.domain + self.range)

    def apply_word(self, word: str) -> str:
        """Image of every point whose address starts with ``word``.

        ``word`` must extend one of the domain leaves.
        """
        for d, r in zip(self.domain, self.range):
            if word.startswith(d):
                return r + word[len(d):]
        raise ValueError(f"address {word!r} is shallower than the partition")

    def apply_address(self, prefix: str, tail: str) -> tuple[str, str]:
        """Image of the eventually constant address ``prefix + tail*``."""
        word = prefix
        while not any(word.startswith(d) for d in self.domain):
            word += tail
        return self.apply_word(word), tail

    def __call__(self, x: Fraction) -> Fraction:
        return evaluate(self, x)

    def to_plhomeo(self) -> PLHomeo:
        """Extension to [0, 1]: affine on pieces, linear across deleted intervals."""
        pts = []
        for d, r in zip(self.domain, self.range):
            a, b = piece_start(d), piece_start(r)
            pts.append((a, b))
            pts.append((a + piece_length(d), b + piece_length(r)))
        return PLHomeo(tuple(pts))


def _reduce(dom: list[str], ran: list[str]) -> tuple[list[str], list[str]]:
    # Merge sibling leaf pairs (p0 -> q0, p1 -> q1) into p -> q until none remain.
    changed = True
    while changed:
        changed = False
        for i in range(len(dom) - 1):
            d0, d1, r0, r1 = dom[i], dom[i + 1], ran[i], ran[i + 1]
            if (
                d0 and r0
                and d0[:-1] == d1[:-1] and d0[-1] == "0" and d1[-1] == "1"
                and r0[:-1] == r1[:-1] and r0[-1] == "0" and r1[-1] == "1"
            ):
                dom[i:i + 2] = [d0[:-1]]
                ran[i:i + 2] = [r0[:-1]]
                changed = True
                break
    return dom, ran


def evaluate(u: CantorHomeo, x: Fraction) -> Fraction:
    """Value of the linear extension of ``u`` at ``x``."""
    return u.to_plhomeo()(x)


def cantor_inverse(u: CantorHomeo) -> CantorHomeo:
    return CantorHomeo(u.range, u.domain)


def cantor_compose(u: CantorHomeo, v: CantorHomeo) -> CantorHomeo:
    """The element ``u o v`` via a common refinement of v's range and u's domain."""
    dom: list[str] = []
    ran: list[str] = []
    for vd, vr in zip(v.domain, v.range):
        coarser = [(ud, ur) for ud, ur in zip(u.domain, u.range) if vr.startswith(ud)]
        if coarser:
            ud, ur = coarser[0]
            dom.append(vd)
            ran.append(ur + vr[len(ud):])
        else:
            for ud, ur in zip(u.domain, u.range):
                if ud.startswith(vr):
                    dom.append(vd + ud[len(vr):])
                    ran.append(ur)
    return CantorHomeo(tuple(dom), tuple(ran))


def cantor_graph(u: CantorHomeo) -> StaircaseCurve:
    """Monotone curve through the image of every piece, joined across deleted intervals."""
    return graph(u.to_plhomeo())


def gap_endpoints(depth: int) -> list[tuple[str, str]]:
    """Addresses of the endpoints of all deleted intervals of level < ``depth``, left to right."""
    out = []
    for n in range(depth):
        for bits in product("01", repeat=n):
            w = "".join(bits)
            out.append((w + "0", "1"))
            out.append((w + "1", "0"))
    out.sort(key=lambda a: address_value(*a))
    return out


def _random_code(rng, depth: int, leaves: int | None = None) -> list[str]:
    words = [""]
    target = leaves if leaves is not None else rng.randint(1, 2 ** depth)
    while len(words) < target:
        splittable = [i for i, w in enumerate(words) if len(w) < depth]
        i = rng.choice(splittable)
        w = words[i]
        words[i:i + 1] = [w + "0", w + "1"]
    return words


def random_cantor(rng, depth: int = 4) -> CantorHomeo:
    """A random element whose partitions have depth at most ``depth``."""
    dom = _random_code(rng, depth)
    ran = _random_code(rng, depth, leaves=len(dom))
    return CantorHomeo(tuple(dom), tuple(ran))
