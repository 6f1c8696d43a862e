"""Layering: simulation core must stay import-clean of io and presentation.

The core modules are pure compute over in-memory values; everything that
touches files, formats, or terminals lives on top of them.  Walking the ASTs
keeps the rule enforced even for imports hidden inside functions.
"""

from __future__ import annotations

import ast
from pathlib import Path

import ubisim

PKG_DIR = Path(ubisim.__file__).parent

CORE = ("model", "economy", "simulate", "sweep")
IO_LAYER = ("config", "export", "cli")

# Modules whose presence in the core would mean file, format, or terminal
# coupling has leaked downward.
FORBIDDEN_IN_CORE = {
    "argparse",
    "csv",
    "io",
    "json",
    "matplotlib",
    "pathlib",
    "sys",
    "yaml",
}


def _imports_of(module_name: str) -> set[str]:
    tree = ast.parse((PKG_DIR / f"{module_name}.py").read_text())
    found: set[str] = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.Import):
            for alias in node.names:
                found.add(alias.name)
        elif isinstance(node, ast.ImportFrom):
            if node.level:  # relative: record the sibling module names
                found.add(node.module or "")
            else:
                found.add(node.module)
    return found


def test_core_modules_never_import_io_facilities():
    for name in CORE:
        imported = _imports_of(name)
        roots = {i.split(".")[0] for i in imported}
        bad = roots & FORBIDDEN_IN_CORE
        assert not bad, f"{name} imports forbidden module(s): {sorted(bad)}"


def test_core_modules_never_import_the_io_layer():
    for name in CORE:
        imported = _imports_of(name)
        bad = {i for i in imported if i.split(".")[0] in IO_LAYER}
        assert not bad, f"{name} depends on io layer: {sorted(bad)}"


def test_io_layer_sits_on_top_of_the_core():
    # Direction sanity: each io module consumes at least one core module.
    for name in IO_LAYER:
        imported = _imports_of(name)
        assert any(i.split(".")[0] in CORE for i in imported), (
            f"{name} does not import any core module"
        )


def test_every_module_is_covered_by_the_layering_rule():
    modules = {p.stem for p in PKG_DIR.glob("*.py")} - {"__init__"}
    assert modules == set(CORE) | set(IO_LAYER)
