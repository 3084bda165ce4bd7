"""The Kelly–Rival list of forbidden subposets and the planarity decision.

Stored cover data covers A_0, B, C, D, E_0, E_1, F_0, F_1, G_0 and H_0, plus
the auxiliary K_5, eight-element fence, eight-crown and encapsulated
2-ladder.  A_n is generated for every n as the bounded crown
``0 + crown(2n+6) + 1``.  Other family members are not stored; for those
only a lower bound on their size is known, which fixes the largest lattice
size for which :func:`is_planar` can still give a proof.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .embedding import Embedding, is_subposet
from .errors import CatalogIncomplete, NotTranscribed
from .lattice import (
    FiniteLattice,
    Poset,
    PosetSpec,
    chain,
    dual,
    lattice_from_covers,
    ordinal_sum,
    poset_from_covers,
)

FAMILIES = ("A", "E", "F", "G", "H")
SINGLES = ("B", "C", "D")
SELF_DUAL = frozenset("AFGH")
AUXILIARY = ("K5", "Fence8", "Crown8", "EncapsulatedLadder", "H0plus")

# (labels, cover tokens); token "xy" means y covers x
_COVERS: dict[str, tuple[str, str]] = {
    "A0": ("oiabcABC", "oa ob oc Ai Bi Ci aB aC bA bC cA cB"),
    "B": ("oiabcdefg", "oa ob oc od ae be bf bg cf dg ei fi gi"),
    "C": ("oiabcdefg", "ai bi ci da db eb ec fb gd ge og of"),
    "D": ("oiabcdefg", "oa ob ac ae ad be cf dg ef eg fi gi"),
    "E0": ("oiabcdefg", "ai bi ci db ea ed fd fc gb oe of og"),
    "E1": ("oiabcdefghj", "ai bi ca da ei fb fc gc gd hd he ja of og oh oj"),
    "F0": ("oiabcdefg", "ai bi ca da eb ec fe fd gc of og"),
    "F1": ("oiabcdefghj", "oa od ab ac ah be bf cf cg dg ei fj gj hj ji"),
    "G0": ("oiabcdefghj", "oa ob ac ad ag bd ce de df eh ej fj gj hi ji"),
    "H0": ("oiabcdefgh", "oa ob oc ad bd be bh cg df dg eg fi gi hi"),
    "K5": ("oiabcdefghjk", "oa ob ac bc bd ce cf df eg fg fh gj gk hk ji ki"),
    "Fence8": ("abcdefgh", "ab cb cd ed ef gf gh"),
    "Crown8": ("abcdefgh", "ab cb cd ed ef gf gh ah"),
    "EncapsulatedLadder": ("oiabcdefgj", "oa od ab ac be bf cf cg dg ei fj gj ji"),
}


@dataclass(frozen=True, order=True)
class KRName:
    family: str
    index: int | None = None

    def __post_init__(self) -> None:
        base = self.family.removeprefix("dual-")
        indexed = base in FAMILIES
        valid = (
            base in FAMILIES + SINGLES and (not self.family.startswith("dual-") or base in "BCDE")
        ) or self.family in AUXILIARY
        if not valid:
            raise ValueError(f"unknown catalog name {self.family!r}")
        if indexed and (self.index is None or self.index < 0):
            raise ValueError(f"{self.family} needs a nonnegative index")
        if not indexed and self.index is not None:
            raise ValueError(f"{self.family} takes no index")

    @classmethod
    def parse(cls, text: str, index: int | str | None = None) -> "KRName":
        """Accepts ``F0``, ``F_0``, ``F 0``, ``dual-E1``, ``dual E_1``, ``K5`` and so on."""
        text = " ".join([text] + ([str(index)] if index is not None else [])).strip()
        for aux in AUXILIARY:
            if text.lower().replace("_", "").replace("-", "") == aux.lower():
                return cls(aux)
        m = re.fullmatch(r"(?i)(dual[- ]?)?([A-H])[ _]?(\d+)?", text)
        if not m:
            raise ValueError(f"cannot parse catalog name {text!r}")
        fam = m.group(2).upper()
        if m.group(1):
            fam = "dual-" + fam
        return cls(fam, int(m.group(3)) if m.group(3) is not None else None)

    @property
    def base(self) -> str:
        return self.family.removeprefix("dual-")

    @property
    def is_dual(self) -> bool:
        return self.family.startswith("dual-")

    def __str__(self) -> str:
        return self.family + ("" if self.index is None else f"_{self.index}")


def member_size(name: KRName) -> tuple[int, bool]:
    """``(size, exact)``; when ``exact`` is False the size is only a lower bound."""
    b, n = name.base, name.index
    if name.family in AUXILIARY:
        if name.family == "H0plus":
            return 11, False
        return len(_COVERS[name.family][0]), True
    if b in SINGLES:
        return 9, True
    if b == "A":
        return 8 + 2 * n, True
    if b in "EF":
        return 9 + 2 * n, True
    if n == 0:
        return {"G": 11, "H": 10}[b], True
    # K5 (12 elements) is a proper sublattice of G_n and H_n for n >= 1,
    # and sizes strictly increase with n
    return 12 + n, False


def is_transcribed(name: KRName) -> bool:
    if name.family in AUXILIARY:
        return name.family in _COVERS
    if name.base == "A":
        return True
    key = name.base if name.index is None else f"{name.base}{name.index}"
    return key in _COVERS


@lru_cache(maxsize=None)
def kr_member(name: KRName) -> FiniteLattice | Poset:
    """Build a catalog member; fences and crowns come back as plain posets."""
    if not is_transcribed(name):
        raise NotTranscribed(f"{name} is not in the stored catalog")
    if name.is_dual:
        return dual(kr_member(KRName(name.base, name.index)))
    if name.family in ("Fence8", "Crown8"):
        return poset_from_covers(PosetSpec.parse(*_COVERS[name.family]))
    if name.base == "A" and name.index:
        return bounded_crown(2 * name.index + 6)
    key = name.family if name.index is None else f"{name.family}{name.index}"
    return lattice_from_covers(PosetSpec.parse(*_COVERS[key]))


def bounded_crown(k: int) -> FiniteLattice:
    """``0 + crown + 1`` where the crown has ``k/2`` atoms and ``k/2`` coatoms in a cycle."""
    if k < 6 or k % 2:
        raise ValueError("crown needs an even number of at least 6 elements")
    h = k // 2
    if h > 24:
        raise ValueError("crown too large for single-character labels")
    lo = "abcdefghjklmnpqrstuvwxyz"[:h]
    hi = "ABCDEFGHJKLMNPQRSTUVWXYZ"[:h]
    labels = "o" + lo + hi + "i"
    covers = [("o", x) for x in lo] + [(y, "i") for y in hi]
    for j in range(h):
        covers.append((lo[j], hi[j]))
        covers.append((lo[(j + 1) % h], hi[j]))
    return lattice_from_covers(PosetSpec(tuple(labels), tuple(covers)))


def kr_names_up_to(size: int) -> tuple[list[KRName], list[KRName]]:
    """Catalog names whose members may have at most ``size`` elements.

    Returns ``(available, missing)``: the transcribed members with exact size
    ``<= size`` in increasing size order, and the untranscribed ones whose
    size lower bound does not rule them out.
    """
    available: list[KRName] = []
    missing: list[KRName] = []

    def consider(name: KRName) -> bool:
        s, exact = member_size(name)
        if s > size:
            return False
        if is_transcribed(name) and exact:
            available.append(name)
        else:
            missing.append(name)
        return True

    for fam in SINGLES:
        consider(KRName(fam))
        consider(KRName("dual-" + fam))
    for fam in FAMILIES:
        n = 0
        while consider(KRName(fam, n)):
            if fam == "E":
                consider(KRName("dual-E", n))
            n += 1
    order = {f: k for k, f in enumerate("ABCDEFGH")}
    available.sort(key=lambda nm: (member_size(nm)[0], order[nm.base], nm.index or 0, nm.is_dual))
    return available, missing


def completeness_horizon() -> int:
    """Largest lattice size for which the stored catalog is complete."""
    size = 1
    while not kr_names_up_to(size + 1)[1]:
        size += 1
    return size


@dataclass(frozen=True)
class PlanarityVerdict:
    planar: bool
    member: KRName | None = None
    embedding: Embedding | None = None
    checked: int = 0

    def certificate(self, lattice: FiniteLattice) -> str:
        if self.planar:
            return f"no KR subposet up to size {lattice.n}"
        src = kr_member(self.member)  # type: ignore[arg-type]
        pairs = " ".join(f"{a}->{lattice.labels[t]}" for a, t in zip(src.labels, self.embedding))  # type: ignore[arg-type]
        return f"{self.member} embeds: {pairs}"


def is_planar(lattice: FiniteLattice, prefer: KRName | None = None) -> PlanarityVerdict:
    """Decide planarity by searching for a Kelly–Rival subposet.

    A found embedding is a certificate of non-planarity.  A planar verdict is
    returned only when every member that could fit has been searched;
    otherwise :class:`CatalogIncomplete` is raised.
    """
    available, missing = kr_names_up_to(lattice.n)
    if prefer is not None and prefer in available:
        available.remove(prefer)
        available.insert(0, prefer)
    for k, name in enumerate(available, 1):
        phi = is_subposet(kr_member(name), lattice)
        if phi is not None:
            return PlanarityVerdict(False, name, phi, k)
    if missing:
        raise CatalogIncomplete(lattice.n, [str(m) for m in missing])
    return PlanarityVerdict(True, checked=len(available))


def sharpness_witness(n: int) -> FiniteLattice:
    """F_0 with an (n-9)-element chain on top: n elements, 83*2^(n-8) - 1 sublattices."""
    if n < 9:
        raise ValueError(f"sharpness witness needs n >= 9, got {n}")
    f0 = kr_member(KRName("F", 0))
    if n == 9:
        return f0  # type: ignore[return-value]
    return ordinal_sum(f0, chain(n - 9))  # type: ignore[arg-type]
