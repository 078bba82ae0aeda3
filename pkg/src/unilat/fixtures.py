"""Shipped example files (codes, lattices, matrices, ideals)."""

from __future__ import annotations

from importlib import resources

from . import formats


def path(name: str):
    return resources.files(__package__).joinpath("data", name)


def text(name: str) -> str:
    return path(name).read_text()


def names() -> list[str]:
    return sorted(p.name for p in resources.files(__package__).joinpath("data").iterdir()
                  if not p.name.startswith("."))


def lattice(name: str):
    return formats.parse_lattice(text(name if "." in name else name + ".lat"))


def code(name: str):
    return formats.parse_code(text(name if "." in name else name + ".code"))


def matrix(name: str):
    return formats.parse_matrix(text(name if "." in name else name + ".mat"))


def e8_ideal_spec():
    """``(Z[zeta_15], b_alpha)`` with the shipped alpha: an even unimodular
    lattice of dimension 8."""
    from .cyclotomic import CycloField, IdealLatticeSpec, parse_element

    ideal = formats.parse_ideal(text("e8_m15.ideal"))
    alpha = parse_element(CycloField(15), text("e8_m15.alpha"))
    return IdealLatticeSpec(ideal, alpha)
