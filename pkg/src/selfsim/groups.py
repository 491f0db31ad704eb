"""Bundled group definitions and loading helpers.

Three stock actions ship as JSON files in the wire format understood by
:meth:`WreathRecursion.from_dict`:

``odometer``
    binary +1 with the leftmost letter least significant: a swaps and
    restricts to (e, a).
``grigorchuk``
    a swaps with trivial restrictions; b = (a, c), c = (a, d), d = (e, b)
    act without moving the first letter.
``basilica``
    a swaps with restrictions (b, e); b fixes letters with restrictions
    (a, e).
"""

from __future__ import annotations

import json
from importlib import resources

from .automaton import DEFAULT_STATE_CAP, Action, WreathRecursion
from .errors import InputError

BUILTIN_NAMES = ("odometer", "grigorchuk", "basilica")

# basilica balls out to the stabilized horizontal-estimate radius (9) hold
# about 160k canonical states, past the default cap meant to flag runaways
_STATE_CAPS = {"basilica": 400_000}


def builtin_text(name):
    """Raw JSON text of a bundled definition."""
    if name not in BUILTIN_NAMES:
        raise InputError(
            f"unknown builtin {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    return (resources.files(__package__) / "groups" / f"{name}.json").read_text()


def builtin_recursion(name):
    return WreathRecursion.from_json(builtin_text(name))


def builtin_action(name, **kwargs):
    """Action for a bundled group, sized so its stock workloads fit."""
    kwargs.setdefault("state_cap", _STATE_CAPS.get(name, DEFAULT_STATE_CAP))
    return Action(builtin_recursion(name), **kwargs)


def load_recursion(path):
    """Read a group definition from a JSON file on disk."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read group file: {exc}") from None
    return WreathRecursion.from_json(text)


def normalized_json(recursion):
    """Canonical serialization used for hashing a group definition."""
    return json.dumps(recursion.to_dict(), sort_keys=True, separators=(",", ":"))
