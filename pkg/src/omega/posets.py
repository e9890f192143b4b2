"""Finite closed subposets of the truncated pattern poset.

Everything is truncated at an even ``d``.  Under the default ``"matched"``
parity policy only patterns with ``norm = d (mod 2)`` are kept, since only
those label cells of the space of degree-``d`` polynomials.  The ``"all"``
policy keeps every norm ``<= d`` and exists for investigating Euler counts.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

from .patterns import Pattern, _successors, compositions, sort_key

__all__ = [
    "PARITY_POLICIES",
    "FAMILIES",
    "PosetSpec",
    "ClosedPoset",
    "PosetError",
    "enumerate_patterns",
    "closure",
    "build_poset",
    "maximal_elements",
    "is_closed",
    "lift_poset",
    "is_profinite",
    "check_lambda",
]

PARITY_POLICIES = ("matched", "all")

FAMILIES = (
    "reduced_norm_at_least",
    "max_entry_at_least",
    "entries_le2_at_most_one_2_complement",
    "strictly_below",
    "at_or_below",
    "full",
)

_FAMILY_PARAMS = {
    "reduced_norm_at_least": ("k", "q"),
    "max_entry_at_least": ("k",),
    "entries_le2_at_most_one_2_complement": (),
    "strictly_below": ("omega",),
    "at_or_below": ("omega",),
    "full": (),
}


class PosetError(ValueError):
    pass


@dataclass(frozen=True)
class PosetSpec:
    """Provenance of a closed poset: a generator list or a named family.

    Exactly one of ``generators`` / ``family`` is set.  ``params`` holds the
    family arguments as a sorted tuple of ``(name, value)`` pairs so the value
    stays hashable.
    """

    generators: Optional[tuple[Pattern, ...]] = None
    family: Optional[str] = None
    params: tuple = ()

    def __post_init__(self):
        if (self.generators is None) == (self.family is None):
            raise PosetError("PosetSpec needs exactly one of generators or family")
        if self.family is not None:
            if self.family not in _FAMILY_PARAMS:
                raise PosetError(f"unknown family {self.family!r}")
            names = tuple(sorted(_FAMILY_PARAMS[self.family]))
            if tuple(k for k, _ in self.params) != names:
                raise PosetError(f"family {self.family} takes parameters {names}, got {self.params}")
        else:
            object.__setattr__(self, "generators", tuple(Pattern(g) for g in self.generators))

    @classmethod
    def from_generators(cls, generators: Iterable) -> "PosetSpec":
        gens = [Pattern.parse(g) if isinstance(g, str) else Pattern(g) for g in generators]
        return cls(generators=tuple(gens))

    @classmethod
    def make_family(cls, name: str, **params) -> "PosetSpec":
        if name == "reduced_norm_at_least":
            params.setdefault("q", 0)
        if "omega" in params:
            w = params["omega"]
            params["omega"] = Pattern.parse(w) if isinstance(w, str) else Pattern(w)
        return cls(family=name, params=tuple(sorted(params.items())))

    @classmethod
    def reduced_norm_at_least(cls, k: int, q: int = 0) -> "PosetSpec":
        return cls.make_family("reduced_norm_at_least", k=k, q=q)

    @classmethod
    def max_entry_at_least(cls, k: int) -> "PosetSpec":
        return cls.make_family("max_entry_at_least", k=k)

    @classmethod
    def free_group_complement(cls) -> "PosetSpec":
        return cls.make_family("entries_le2_at_most_one_2_complement")

    @classmethod
    def strictly_below(cls, omega) -> "PosetSpec":
        return cls.make_family("strictly_below", omega=omega)

    @classmethod
    def at_or_below(cls, omega) -> "PosetSpec":
        return cls.make_family("at_or_below", omega=omega)

    @classmethod
    def full(cls) -> "PosetSpec":
        return cls.make_family("full")

    def param(self, name: str):
        return dict(self.params)[name]

    def to_json(self) -> dict:
        if self.generators is not None:
            return {"generators": [str(g) for g in self.generators]}
        fam = {"type": self.family}
        for k, v in self.params:
            fam[k] = str(v) if isinstance(v, Pattern) else v
        return {"family": fam}

    @classmethod
    def from_json(cls, obj: dict) -> "PosetSpec":
        if "generators" in obj and "family" in obj:
            raise PosetError("spec has both generators and family")
        if "generators" in obj:
            return cls.from_generators(obj["generators"])
        if "family" not in obj:
            raise PosetError("spec has neither generators nor family")
        fam = dict(obj["family"])
        name = fam.pop("type")
        return cls.make_family(name, **fam)

    def canonical_json(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class ClosedPoset:
    d: int
    members: tuple[Pattern, ...]
    spec: PosetSpec
    parity_policy: str = "matched"
    _index: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {w: i for i, w in enumerate(self.members)})

    @property
    def parity(self) -> Optional[int]:
        """Norm residue class kept, or None under the ``"all"`` policy."""
        return self.d % 2 if self.parity_policy == "matched" else None

    def __contains__(self, w) -> bool:
        return w in self._index

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def index(self, w: Pattern) -> int:
        return self._index[w]

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "parity_policy": self.parity_policy,
            **self.spec.to_json(),
            "members": [str(w) for w in self.members],
        }


def _check_d(d: int) -> None:
    if isinstance(d, bool) or not isinstance(d, int) or d < 2 or d % 2:
        raise PosetError(f"d must be an even integer >= 2, got {d!r}")


def _check_policy(policy: str) -> None:
    if policy not in PARITY_POLICIES:
        raise PosetError(f"parity policy must be one of {PARITY_POLICIES}, got {policy!r}")


def _sorted(ws: Iterable[Pattern]) -> tuple[Pattern, ...]:
    return tuple(sorted(set(ws), key=sort_key))


@lru_cache(maxsize=64)
def enumerate_patterns(d: int, parity_policy: str = "matched") -> tuple[Pattern, ...]:
    """All patterns of norm ``<= d`` admitted by the parity policy, canonically sorted."""
    _check_policy(parity_policy)
    step = 2 if parity_policy == "matched" else 1
    start = d % 2 if parity_policy == "matched" else 0
    return _sorted(w for n in range(start, d + 1, step) for w in compositions(n))


def closure(seeds: Iterable[Pattern], d: int) -> tuple[Pattern, ...]:
    """Smallest successor-closed set of norm-``<= d`` patterns containing ``seeds``."""
    seen = set()
    todo = deque()
    for s in seeds:
        if s not in seen:
            seen.add(s)
            todo.append(s)
    while todo:
        w = todo.popleft()
        for v in _successors(w, d):
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return _sorted(seen)


def _admissible(w: Pattern, d: int, policy: str) -> Optional[str]:
    if w.norm > d:
        return f"{w} has norm {w.norm} > d={d}"
    if policy == "matched" and (w.norm - d) % 2:
        return f"{w} has norm {w.norm} of parity different from d={d}"
    return None


def _family_members(spec: PosetSpec, d: int, policy: str) -> tuple[Pattern, ...]:
    name = spec.family
    if name in ("strictly_below", "at_or_below"):
        w = spec.param("omega")
        problem = _admissible(w, d, policy)
        if problem:
            raise PosetError(problem)
        seeds = list(_successors(w, d))
        members = closure(seeds, d)
        if name == "at_or_below":
            members = _sorted(members + (w,))
        return members
    pool = enumerate_patterns(d, policy)
    if name == "full":
        return pool
    if name == "reduced_norm_at_least":
        k, q = spec.param("k"), spec.param("q")
        return tuple(w for w in pool if w.reduced_norm >= k and w.norm >= q)
    if name == "max_entry_at_least":
        k = spec.param("k")
        return tuple(w for w in pool if w and max(w) >= k)
    if name == "entries_le2_at_most_one_2_complement":
        return tuple(w for w in pool if not (all(e <= 2 for e in w) and w.count(2) <= 1))
    raise PosetError(f"unknown family {name!r}")  # pragma: no cover


def build_poset(spec: PosetSpec, d: int, parity_policy: str = "matched") -> ClosedPoset:
    """Materialize ``spec`` inside the truncation at ``d``."""
    _check_d(d)
    _check_policy(parity_policy)
    if spec.generators is not None:
        for g in spec.generators:
            problem = _admissible(g, d, parity_policy)
            if problem:
                raise PosetError(f"generator rejected: {problem}")
        members = closure(spec.generators, d)
    else:
        members = _family_members(spec, d, parity_policy)
    return ClosedPoset(d=d, members=members, spec=spec, parity_policy=parity_policy)


def maximal_elements(theta: ClosedPoset) -> tuple[Pattern, ...]:
    """Members that are not a successor of any other member."""
    hit = set()
    for w in theta.members:
        hit.update(_successors(w, theta.d))
    return tuple(w for w in theta.members if w not in hit)


def is_closed(members: Iterable[Pattern], d: int) -> tuple[bool, Optional[tuple[Pattern, Pattern]]]:
    """Return ``(True, None)`` or ``(False, (member, missing_successor))``."""
    ms = _sorted(members)
    present = set(ms)
    for w in ms:
        # successors in operation order: merges M_1.. then inserts I_0..
        for v in _successors(w, d):
            if v not in present:
                return False, (w, v)
    return True, None


def lift_poset(theta: ClosedPoset, d_new: int) -> ClosedPoset:
    """Smallest closed poset at ``d_new`` containing the members of ``theta``."""
    _check_d(d_new)
    if d_new < theta.d:
        raise PosetError(f"cannot lift from d={theta.d} down to d'={d_new}")
    if (d_new - theta.d) % 2:
        raise PosetError(f"parity mismatch: d={theta.d}, d'={d_new}")
    if d_new == theta.d:
        return theta
    return ClosedPoset(
        d=d_new,
        members=closure(theta.members, d_new),
        spec=theta.spec,
        parity_policy=theta.parity_policy,
    )


def is_profinite(spec: PosetSpec) -> bool:
    """Decide whether the untruncated poset has finitely many elements per reduced norm.

    Generator closures are profinite: each step raises the reduced norm by
    one, so the elements of reduced norm ``<= t`` lie within ``t`` steps of a
    generator.  The other families contain an infinite family of patterns of
    bounded reduced norm, for instance ``(1,...,1,k+1)``.
    """
    if spec.generators is not None:
        return True
    if spec.family in ("strictly_below", "at_or_below"):
        return True
    if spec.family in (
        "reduced_norm_at_least",
        "max_entry_at_least",
        "entries_le2_at_most_one_2_complement",
        "full",
    ):
        return False
    raise PosetError(f"profiniteness undecidable for this descriptor: {spec.family!r}")


def profinite_witness(spec: PosetSpec, m: int) -> Optional[Pattern]:
    """A member of the ``m``-th pattern in an infinite bounded-reduced-norm family.

    Returns None for profinite specs.  Used to illustrate ``is_profinite``.
    """
    ones = (1,) * m
    if spec.family == "reduced_norm_at_least":
        return Pattern(ones + (spec.param("k") + 1,))
    if spec.family == "max_entry_at_least":
        return Pattern(ones + (spec.param("k"),))
    if spec.family == "entries_le2_at_most_one_2_complement":
        return Pattern(ones + (3,))
    if spec.family == "full":
        return Pattern(ones)
    return None


def check_lambda(theta: ClosedPoset) -> bool:
    """True iff the empty pattern is not a member."""
    return Pattern() not in theta
