"""Archives of maps in the face-list text format and comparison up to isomorphism."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from ..hmap import Hypermap, canonical_form, format_face_list, from_face_list, read_face_lists, to_face_list
from .generate import GenParams, SearchState, initial_state, run


class DuplicateEntry(ValueError):
    pass


@dataclass
class Archive:
    maps: list = field(default_factory=list)  # Hypermap entries

    def __len__(self):
        return len(self.maps)

    def __iter__(self):
        return iter(self.maps)

    @classmethod
    def from_face_lists(cls, lists):
        return cls([from_face_list(f) for f in lists])

    def canonical_forms(self):
        return [canonical_form(h, allow_improper=True) for h in self.maps]

    def duplicates(self):
        """Index pairs (i, j), i < j, of isomorphic entries."""
        first = {}
        out = []
        for j, key in enumerate(self.canonical_forms()):
            if key in first:
                out.append((first[key], j))
            else:
                first[key] = j
        return out

    def check_distinct(self):
        dup = self.duplicates()
        if dup:
            raise DuplicateEntry(f"isomorphic entries {dup[0]}")


def read_archive(path) -> Archive:
    with open(path, encoding="utf-8") as fh:
        return Archive.from_face_lists(read_face_lists(fh))


def write_archive(path, archive: Archive, header: str | None = None):
    lines = [f"# {line}" for line in (header or "").splitlines()]
    lines += [format_face_list(to_face_list(h)) for h in archive]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


@dataclass
class Comparison:
    missing: list  # entries of the first archive with no match in the second
    extra: list  # entries of the second archive with no match in the first

    @property
    def same(self) -> bool:
        return not self.missing and not self.extra


def compare(a1: Archive, a2: Archive) -> Comparison:
    """Entries present on one side only, up to proper or improper isomorphism."""
    k1 = a1.canonical_forms()
    k2 = a2.canonical_forms()
    s1, s2 = set(k1), set(k2)
    return Comparison(
        [h for h, k in zip(a1, k1) if k not in s2],
        [h for h, k in zip(a2, k2) if k not in s1],
    )


def enumerate_archive(params: GenParams, budget=None, resume: SearchState | None = None) -> Archive:
    """Generate every complete map for ``params`` into an isomorph-free archive.
    ResourceBudgetExceeded carries the state to pass back as ``resume``."""
    state = resume if resume is not None else initial_state(params)
    run(state, params, budget)
    return Archive.from_face_lists(state.found.values())


def as_hypermap(x) -> Hypermap:
    return x if isinstance(x, Hypermap) else from_face_list(x)
