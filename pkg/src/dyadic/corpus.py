"""Named test corpora.

A corpus file is INI-style, one section per entry::

    [cok]
    input = O(q -> r/p) -> (O(q/p) -> O(r/p))
    expected = Proven
    notes = conditional distribution axiom

``input`` is a formula, or a sequent when it contains ``|-``.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .formula import parse
from .hypersequent import Sequent, parse_sequent

__all__ = ["CorpusEntry", "CorpusError", "load_corpus", "shipped_corpora", "entry_sequent"]

EXPECTED = ("Proven", "Refuted")


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    input: str
    expected: str
    notes: str = ""


def shipped_corpora() -> list[str]:
    folder = resources.files("dyadic") / "data" / "corpora"
    return sorted(p.name[: -len(".corpus")] for p in folder.iterdir() if p.name.endswith(".corpus"))


def _resolve(source: str | Path) -> str:
    path = Path(source)
    if path.exists():
        return path.read_text()
    if str(source) in shipped_corpora():
        return (resources.files("dyadic") / "data" / "corpora" / f"{source}.corpus").read_text()
    raise CorpusError(f"no corpus file or shipped corpus named {str(source)!r}")


def load_corpus(source: str | Path) -> list[CorpusEntry]:
    """Load a corpus from a path or by the name of a shipped corpus."""
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(_resolve(source))
    except configparser.Error as exc:
        raise CorpusError(str(exc)) from None
    entries = []
    for name in parser.sections():
        sec = parser[name]
        if "input" not in sec or "expected" not in sec:
            raise CorpusError(f"entry {name!r} needs 'input' and 'expected'")
        if sec["expected"] not in EXPECTED:
            raise CorpusError(f"entry {name!r}: expected must be one of {EXPECTED}")
        entries.append(CorpusEntry(name, sec["input"], sec["expected"], sec.get("notes", "")))
    return entries


def entry_sequent(text: str, allow_bet: bool = False) -> Sequent:
    if "|-" in text:
        return parse_sequent(text, allow_bet)
    return Sequent.of((), (parse(text, allow_bet),))
