"""Structured verification reports: violations are data, not exceptions."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Violation:
    """One violated axiom instance.

    ``law`` is a short tag (e.g. "assoc", "unit-left", "identity-below-hom"),
    ``site`` locates the instance (object/element indices), ``detail`` is a
    human-readable rendering.
    """

    law: str
    site: tuple
    detail: str

    def __str__(self) -> str:
        return f"[{self.law}] at {self.site}: {self.detail}"
