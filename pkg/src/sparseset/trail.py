"""Choice-point trail for sparse-set domains.

Only sizes are trailed.  remove and bind swap entries at indices below the
current size and never write above it, so the multiset of values in
``dom[0:saved_size]`` is the same at pop time as at record time; writing
``saved_size`` back therefore restores exactly the recorded member set.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass

from .core import SparseSet, SparseSetError


class TrailError(SparseSetError, RuntimeError):
    """Misuse of the trail: no open frame, or popping out of LIFO order."""


@dataclass(frozen=True)
class FrameToken:
    serial: int
    depth: int


@dataclass(slots=True)
class Mark:
    domain: SparseSet
    saved_size: int


class Trail:
    def __init__(self):
        self._marks: list[Mark] = []
        self._starts: list[int] = []
        self._touched: list[set[int]] = []
        self._tokens: list[FrameToken] = []
        self._serial = 0

    @property
    def depth(self) -> int:
        return len(self._tokens)

    def push_frame(self) -> FrameToken:
        self._serial += 1
        token = FrameToken(self._serial, len(self._tokens) + 1)
        self._starts.append(len(self._marks))
        self._touched.append(set())
        self._tokens.append(token)
        return token

    def record(self, s: SparseSet) -> None:
        """Save ``s.size`` in the innermost frame unless already saved there."""
        if not self._tokens:
            raise TrailError("record() needs an open frame")
        touched = self._touched[-1]
        key = id(s)
        if key not in touched:
            touched.add(key)
            self._marks.append(Mark(s, s.size))

    def pop_frame(self, token: FrameToken) -> None:
        if not self._tokens or self._tokens[-1] != token:
            raise TrailError(f"{token} is not the innermost open frame")
        start = self._starts.pop()
        marks = self._marks
        for i in range(len(marks) - 1, start - 1, -1):
            m = marks[i]
            m.domain.size = m.saved_size
        del marks[start:]
        self._touched.pop()
        self._tokens.pop()

    @contextmanager
    def frame(self):
        token = self.push_frame()
        try:
            yield token
        finally:
            self.pop_frame(token)

    def frame_marks(self, token: FrameToken | None = None) -> list[Mark]:
        """Marks recorded in ``token``'s frame (innermost frame by default)."""
        if not self._tokens:
            return []
        k = len(self._tokens) - 1 if token is None else self._tokens.index(token)
        end = self._starts[k + 1] if k + 1 < len(self._starts) else len(self._marks)
        return self._marks[self._starts[k]:end]

    def all_marks(self) -> list[Mark]:
        return list(self._marks)


def push_frame(t: Trail) -> FrameToken:
    return t.push_frame()


def record(t: Trail, s: SparseSet) -> None:
    t.record(s)


def pop_frame(t: Trail, token: FrameToken) -> None:
    t.pop_frame(token)
