#!/usr/bin/env python3
"""
Code Catalog for QEC Coding Maps
Built-in codes, concatenation recipes, and resolution of names or spec-file paths
"""

import logging
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, List, Tuple, Union

from pauli_algebra import PauliString
from qec_errors import CodeSpecError
from stabilizer_codes import (
    CodeSpec,
    StabilizerCode,
    correctable_probability_poly,
    load_code,
    paulis_of_weight,
    read_code_spec,
    residual_logical_class,
    success_polynomial,
)

logger = logging.getLogger(__name__)

CATALOG_SPECS: Dict[str, CodeSpec] = {
    "bitflip": CodeSpec(
        name="bitflip", n=3,
        generators=("+ZZI", "+IZZ"),
        logical_x="+XXX", logical_z="+ZZZ",
    ),
    "phaseflip": CodeSpec(
        name="phaseflip", n=3,
        generators=("+XXI", "+IXX"),
        logical_x="+XXX", logical_z="+ZZZ",
    ),
    # |0> -> |+++>: the logical roles of X and Z swap relative to phaseflip
    "phaseflip_prime": CodeSpec(
        name="phaseflip_prime", n=3,
        generators=("+XXI", "+IXX"),
        logical_x="+ZZZ", logical_z="+XXX",
    ),
    "steane": CodeSpec(
        name="steane", n=7,
        generators=(
            "+IIIXXXX", "+IXXIIXX", "+XIXIXIX",
            "+IIIZZZZ", "+IZZIIZZ", "+ZIZIZIZ",
        ),
        logical_x="+XXXXXXX", logical_z="+ZZZZZZZ",
    ),
    "five_bit": CodeSpec(
        name="five_bit", n=5,
        generators=("+XZZXI", "+IXZZX", "+XIXZZ", "+ZXIXZ"),
        logical_x="+XXXXX", logical_z="+ZZZZZ",
    ),
}

# outermost first
CATALOG_RECIPES: Dict[str, Tuple[str, ...]] = {
    "shor": ("phaseflip", "bitflip"),
    "shor_prime": ("phaseflip_prime", "bitflip"),
}


@dataclass(frozen=True)
class CodeRecipe:
    """Concatenated code; components run from the outermost code to the innermost"""
    name: str
    components: Tuple[StabilizerCode, ...]

    def __post_init__(self):
        if not self.components:
            raise CodeSpecError("a concatenation recipe needs at least one component", field="concat")

    @property
    def n(self) -> int:
        total = 1
        for code in self.components:
            total *= code.n
        return total

    @property
    def outermost(self) -> StabilizerCode:
        return self.components[0]

    @property
    def innermost(self) -> StabilizerCode:
        return self.components[-1]

    def describe(self) -> Dict:
        return {"name": self.name, "n": self.n, "concat": [c.name for c in self.components]}


AnyCode = Union[StabilizerCode, CodeRecipe]


def normalize_name(name: str) -> str:
    """'Shor′', "five-bit" and 'phaseflip'' map to catalog keys"""
    key = name.strip().lower().replace("-", "_")
    for mark in ("′", "'"):
        if key.endswith(mark):
            key = key[: -len(mark)] + "_prime"
    return key


def catalog_names() -> List[str]:
    return sorted(list(CATALOG_SPECS) + list(CATALOG_RECIPES))


def catalog_code(name: str) -> AnyCode:
    return _catalog_entry(normalize_name(name))


@lru_cache(maxsize=None)
def _catalog_entry(key: str) -> AnyCode:
    if key in CATALOG_SPECS:
        return load_code(CATALOG_SPECS[key])
    if key in CATALOG_RECIPES:
        return make_recipe(key, [catalog_code(part) for part in CATALOG_RECIPES[key]])
    raise CodeSpecError(f"unknown catalog code {key!r}; known: {', '.join(catalog_names())}")


def make_recipe(name: str, parts: List[AnyCode]) -> CodeRecipe:
    """Flatten nested recipes into one outermost-first chain of codes"""
    components: List[StabilizerCode] = []
    for part in parts:
        components.extend(part.components if isinstance(part, CodeRecipe) else (part,))
    return CodeRecipe(name, tuple(components))


def resolve_code(ref: str, _seen: FrozenSet[str] = frozenset()) -> AnyCode:
    """Catalog name or path to a JSON code-spec file"""
    if normalize_name(ref) in CATALOG_SPECS or normalize_name(ref) in CATALOG_RECIPES:
        return catalog_code(ref)
    if not os.path.isfile(ref):
        raise CodeSpecError(f"{ref!r} is neither a catalog code ({', '.join(catalog_names())}) nor a spec file")
    path = os.path.abspath(ref)
    if path in _seen:
        raise CodeSpecError(f"spec file {ref!r} includes itself", field="concat")
    spec = read_code_spec(ref)
    if not spec.is_recipe:
        return load_code(spec)
    base = os.path.dirname(path)
    parts = []
    for part in spec.concat:
        candidate = part if os.path.isabs(part) else os.path.join(base, part)
        target = candidate if os.path.isfile(candidate) else part
        parts.append(resolve_code(target, _seen | {path}))
    recipe = make_recipe(spec.name, parts)
    logger.info(f"Loaded recipe {recipe.name}: {' of '.join(c.name for c in recipe.components)}")
    return recipe


def code_components(code: AnyCode) -> Tuple[StabilizerCode, ...]:
    return code.components if isinstance(code, CodeRecipe) else (code,)


def block_logical_class(components: Tuple[StabilizerCode, ...], letters: str) -> str:
    """Decode block by block from the innermost code outwards and return the final logical class"""
    *outer, inner = components
    block = inner.n
    classes = "".join(
        residual_logical_class(inner, PauliString.from_letters(letters[i:i + block]))
        for i in range(0, len(letters), block)
    )
    if not outer:
        return classes
    return block_logical_class(tuple(outer), classes)


def recipe_correctable_poly(recipe: CodeRecipe, max_weight: int = 2) -> Dict[int, Fraction]:
    """Success probability of the block decoder under symmetric Pauli noise, errors up to max_weight"""
    counts = [
        sum(1 for e in paulis_of_weight(recipe.n, w)
            if block_logical_class(recipe.components, e.letters()) == "I")
        for w in range(min(max_weight, recipe.n) + 1)
    ]
    logger.debug(f"{recipe.name}: correctable counts by weight {counts}")
    return success_polynomial(recipe.n, counts)


def correctable_poly(code: AnyCode, max_weight: int = 2) -> Dict[int, Fraction]:
    if isinstance(code, CodeRecipe):
        return recipe_correctable_poly(code, max_weight)
    return correctable_probability_poly(code, max_weight)
