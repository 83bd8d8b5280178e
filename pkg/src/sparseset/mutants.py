"""Deliberately broken remove/bind variants used to show the checks have teeth."""

from .core import SparseSet
from .oracle import Implementation


def _remove_skip_map_update(s, v):
    # Moves the last member into v's slot but never tells map about it.
    i, last = s.map[v], s.size - 1
    w = s.dom[last]
    s.dom[i], s.dom[last] = w, v
    s.map[v] = last
    s.size = last


def _remove_double_decrement(s, v):
    SparseSet.remove(s, v)
    s.size -= 1


def _remove_swap_only_dom(s, v):
    i, last = s.map[v], s.size - 1
    s.dom[i], s.dom[last] = s.dom[last], s.dom[i]
    s.size = last


def _remove_no_decrement(s, v):
    i, last = s.map[v], s.size - 1
    s.swap_entries(i, last)


def _remove_swap_with_first(s, v):
    # Off-by-one on the target slot: parks v at index 0 instead of size-1.
    s.swap_entries(s.map[v], 0)
    s.size -= 1


def _bind_without_swap(s, v):
    s.size = 1


def _bind_keep_size(s, v):
    s.swap_entries(s.map[v], 0)


MUTANTS = {
    m.name: m
    for m in (
        Implementation("skip-map-update", _remove_skip_map_update, SparseSet.bind),
        Implementation("double-decrement", _remove_double_decrement, SparseSet.bind),
        Implementation("swap-only-dom", _remove_swap_only_dom, SparseSet.bind),
        Implementation("no-decrement", _remove_no_decrement, SparseSet.bind),
        Implementation("swap-with-first", _remove_swap_with_first, SparseSet.bind),
        Implementation("bind-without-swap", SparseSet.remove, _bind_without_swap),
        Implementation("bind-keep-size", SparseSet.remove, _bind_keep_size),
    )
}
