"""Example lattices shipped as JSON, with an index of captions and expected regularity."""
import json
from importlib import resources
from pathlib import Path
from typing import Dict, Optional

from ..lattice import Lattice, load_lattice


def _dir(root: Optional[Path] = None) -> Path:
    return Path(root) if root is not None else Path(str(resources.files(__package__)))


def index(root: Optional[Path] = None) -> Dict[str, dict]:
    return json.loads((_dir(root) / "index.json").read_text())


def load(name: str, root: Optional[Path] = None) -> Lattice:
    L = load_lattice(_dir(root) / f"{name}.json")
    L.name = name
    return L
