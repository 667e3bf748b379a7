"""Permutations of {0, ..., k-1}.

Actions in this package are *pushforward* actions: a permutation ``g`` moves
whatever sits at position ``i`` to position ``g(i)``.  Composition ``g * h``
means "apply h, then g", so acting by ``g * h`` equals acting by h and then g.
"""

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Sequence


@dataclass(frozen=True)
class Perm:
    images: tuple

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a permutation of 0..{len(imgs) - 1}: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, k: int) -> "Perm":
        return cls(tuple(range(k)))

    @classmethod
    def from_one_based(cls, images: Sequence[int]) -> "Perm":
        return cls(tuple(i - 1 for i in images))

    @classmethod
    def cycle(cls, k: int, *cycle: int) -> "Perm":
        """Cycle in 1-based notation: ``Perm.cycle(3, 1, 2, 3)`` is (1 2 3)."""
        imgs = list(range(k))
        pts = [c - 1 for c in cycle]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            imgs[a] = b
        return cls(tuple(imgs))

    @property
    def k(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Perm") -> "Perm":
        if self.k != other.k:
            raise ValueError("permutations of different degree")
        return Perm(tuple(self.images[other.images[i]] for i in range(self.k)))

    def inverse(self) -> "Perm":
        inv = [0] * self.k
        for i, g in enumerate(self.images):
            inv[g] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == g for i, g in enumerate(self.images))

    def one_based(self) -> tuple:
        return tuple(i + 1 for i in self.images)

    def __repr__(self):
        return f"Perm{self.one_based()}"


def all_perms(k: int) -> Iterator[Perm]:
    for imgs in permutations(range(k)):
        yield Perm(imgs)


def block_perm(g: Perm, sizes: Sequence[int]) -> Perm:
    """The permutation of ``sum(sizes)`` points moving block i (of length
    ``sizes[i]``) rigidly to block slot ``g(i)``."""
    if len(sizes) != g.k:
        raise ValueError("one block size per point of g")
    new_sizes = [0] * g.k
    for i, s in enumerate(sizes):
        new_sizes[g(i)] = s
    new_start = [0] * g.k
    acc = 0
    for i in range(g.k):
        new_start[i] = acc
        acc += new_sizes[i]
    imgs = []
    for i, s in enumerate(sizes):
        imgs.extend(new_start[g(i)] + t for t in range(s))
    return Perm(tuple(imgs))


def block_sum(perms: Sequence[Perm]) -> Perm:
    """Direct sum: each perm acts inside its own consecutive block."""
    imgs = []
    off = 0
    for p in perms:
        imgs.extend(off + i for i in p.images)
        off += p.k
    return Perm(tuple(imgs))
