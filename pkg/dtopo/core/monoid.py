"""
Finite monoids with a distinguished subset S, the closure
S̄ = {h | h∘g in S for some g in S}, and the insertion check for pairs of
maps between two complexes.
"""

from itertools import product as cartesian
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from dtopo.core.complex import PrecubicalSet
from dtopo.core.maps import AdmissibleMap, compose, enumerate_maps, identity_map, same_complex
from dtopo.errors import MonoidError
from dtopo.logging_config import get_logger

logger = get_logger(__name__)


class MonoidTable:
    """A finite monoid given by its composition table.

    table[i, j] is the index of elements[i] ∘ elements[j] (j applied first).
    subset holds the indices of the distinguished set S.
    """

    def __init__(self, elements: Sequence[Hashable], table: np.ndarray, identity: int, subset: Iterable[int]):
        self.elements = list(elements)
        self.table = np.asarray(table, dtype=int)
        self.identity = identity
        self.subset: FrozenSet[int] = frozenset(subset)
        self.validate()

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"MonoidTable(size={len(self)}, |S|={len(self.subset)})"

    def validate(self) -> None:
        """
        Check shape, range, identity and associativity laws.

        Raises:
            MonoidError: If any law fails
        """
        n = len(self.elements)
        T = self.table
        if T.shape != (n, n):
            raise MonoidError(f"table shape {T.shape} does not match {n} elements")
        if n and (T.min() < 0 or T.max() >= n):
            raise MonoidError("table entries outside the element range")
        if not 0 <= self.identity < n:
            raise MonoidError(f"identity index {self.identity} out of range")
        if any(not 0 <= s < n for s in self.subset):
            raise MonoidError("distinguished subset names unknown elements")
        everything = np.arange(n)
        if not (np.array_equal(T[self.identity], everything) and np.array_equal(T[:, self.identity], everything)):
            raise MonoidError("identity law fails")
        # (i∘j)∘k against i∘(j∘k)
        if not np.array_equal(T[T], T[:, T]):
            raise MonoidError("composition is not associative")

    def mask(self, indices: Iterable[int]) -> np.ndarray:
        result = np.zeros(len(self), dtype=bool)
        result[list(indices)] = True
        return result

    def is_submonoid(self, indices: Iterable[int]) -> bool:
        indices = frozenset(indices)
        if self.identity not in indices:
            return False
        members = self.mask(indices)
        idx = sorted(indices)
        return bool(members[self.table[np.ix_(idx, idx)]].all())

    @classmethod
    def from_maps(cls, maps: Sequence[AdmissibleMap], subset: Callable[[AdmissibleMap], bool]) -> "MonoidTable":
        """
        The monoid of the given endomaps under composition.

        Raises:
            MonoidError: If the maps are not closed under composition or lack the identity
        """
        if not maps:
            raise MonoidError("no maps given")
        index = {f: i for i, f in enumerate(maps)}
        X = maps[0].source
        try:
            identity = index[identity_map(X)]
        except KeyError:
            raise MonoidError(f"the identity of {X.name!r} is missing")
        table = np.zeros((len(maps), len(maps)), dtype=int)
        for i, g in enumerate(maps):
            for j, f in enumerate(maps):
                composite = compose(g, f)
                if composite not in index:
                    raise MonoidError(f"{g!r} after {f!r} is not among the given maps")
                table[i, j] = index[composite]
        return cls(maps, table, identity, [i for i, f in enumerate(maps) if subset(f)])


def chain_monoid(n: int, subset: Optional[Callable[[Tuple[int, ...]], bool]] = None) -> MonoidTable:
    """Monotone self-maps of the chain 0 < 1 < ... < n-1, as value tuples."""
    if n < 1:
        raise MonoidError(f"chain length must be positive, got {n}")
    elements = [m for m in cartesian(range(n), repeat=n) if all(a <= b for a, b in zip(m, m[1:]))]
    index = {m: i for i, m in enumerate(elements)}
    table = np.array([[index[tuple(g[x] for x in f)] for f in elements] for g in elements], dtype=int)
    subset = subset or (lambda m: True)
    return MonoidTable(elements, table, index[tuple(range(n))], [i for i, m in enumerate(elements) if subset(m)])


def fixes_endpoints(m: Tuple[int, ...]) -> bool:
    return m[0] == 0 and m[-1] == len(m) - 1


def monoid_closure(M: MonoidTable) -> FrozenSet[int]:
    """S̄ = {h | h∘g in S for some g in S}."""
    if not M.subset:
        return frozenset()
    members = M.mask(M.subset)
    S = sorted(M.subset)
    hits = members[M.table[:, S]].any(axis=1)
    return frozenset(int(i) for i in np.flatnonzero(hits))


def inessentiality_counterexample(M: MonoidTable) -> Optional[Tuple[int, int]]:
    """A pair (g, h) with h in S, h∘g in S and g outside S, if one exists."""
    members = M.mask(M.subset)
    for h in sorted(M.subset):
        for g in np.flatnonzero(members[M.table[h]] & ~members):
            return int(g), h
    return None


def verify_inessentiality_property(M: MonoidTable) -> bool:
    """h in S and h∘g in S force g in S."""
    return inessentiality_counterexample(M) is None


def verify_closure_2of3(M: MonoidTable) -> bool:
    """
    Check that S̄ contains S, is a submonoid and has the 2-out-of-3 property.

    Raises:
        MonoidError: If M lacks the inessentiality property
    """
    witness = inessentiality_counterexample(M)
    if witness is not None:
        g, h = witness
        raise MonoidError(
            f"inessentiality property fails: {M.elements[h]} and {M.elements[h]}∘{M.elements[g]} "
            f"lie in S but {M.elements[g]} does not"
        )
    closure = monoid_closure(M)
    if not M.subset <= closure:
        return False
    if not M.is_submonoid(closure):
        return False
    inside = M.mask(closure)
    # count of {g, h, g∘h} in S̄ may never be exactly two
    count = inside[:, None].astype(int) + inside[None, :].astype(int) + inside[M.table].astype(int)
    return not bool((count == 2).any())


class MapFamily:
    """A distinguished set S of endomaps of one complex.

    Membership in S̄ is decided either from an explicit member list or by a
    supplied closure test (for S = inessential maps this is the rather
    inessential check).
    """

    def __init__(self, complex: PrecubicalSet, members: Optional[Iterable[AdmissibleMap]] = None,
                 closure_test: Optional[Callable[[AdmissibleMap], bool]] = None, budget: Optional[int] = None):
        if members is None and closure_test is None:
            raise MonoidError("a map family needs members or a closure test")
        self.complex = complex
        self.members = list(members) if members is not None else None
        self._closure_test = closure_test
        self.budget = budget
        self._universe: Optional[List[AdmissibleMap]] = None
        self._closure: Dict[AdmissibleMap, bool] = {}

    @property
    def universe(self) -> List[AdmissibleMap]:
        """All admissible endomaps of the complex."""
        if self._universe is None:
            self._universe = enumerate_maps(self.complex, self.complex, budget=self.budget)
        return self._universe

    def in_closure(self, h: AdmissibleMap) -> bool:
        if h not in self._closure:
            if self._closure_test is not None:
                self._closure[h] = bool(self._closure_test(h))
            else:
                member_set = set(self.members)
                self._closure[h] = any(compose(h, g) in member_set for g in self.members)
        return self._closure[h]

    def closure_members(self) -> List[AdmissibleMap]:
        return [h for h in self.universe if self.in_closure(h)]

    def monoid(self) -> MonoidTable:
        """The endomap monoid with S = the explicit members."""
        if self.members is None:
            raise MonoidError("family has no explicit member list")
        member_set = set(self.members)
        return MonoidTable.from_maps(self.universe, lambda f: f in member_set)


def verify_insertion(F: AdmissibleMap, G: AdmissibleMap, family_x: MapFamily, family_y: MapFamily) -> bool:
    """
    Check that F∘h∘G lies in the closure on Y for every h in the closure on X.

    Raises:
        MonoidError: If G∘F or F∘G is outside the respective closure
    """
    if not (same_complex(F.source, family_x.complex) and same_complex(F.target, family_y.complex)):
        raise MonoidError(f"{F.label} does not run between the families' complexes")
    if not (same_complex(G.source, family_y.complex) and same_complex(G.target, family_x.complex)):
        raise MonoidError(f"{G.label} does not run between the families' complexes")
    gf = compose(G, F)
    if not family_x.in_closure(gf):
        raise MonoidError(f"G after F is outside the closure: {gf!r}")
    fg = compose(F, G)
    if not family_y.in_closure(fg):
        raise MonoidError(f"F after G is outside the closure: {fg!r}")
    for h in family_x.closure_members():
        inserted = compose(F, compose(h, G))
        if not family_y.in_closure(inserted):
            logger.info(f"Insertion fails for {h!r}: {inserted!r}")
            return False
    return True
