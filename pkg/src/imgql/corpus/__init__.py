"""Bundled ImgQL scripts."""

from __future__ import annotations

from pathlib import Path

_HERE = Path(__file__).resolve().parent


def corpus_dir() -> Path:
    return _HERE


def corpus() -> dict[str, Path]:
    """Name -> path of every bundled ``.imgql`` file."""
    return {p.name: p for p in sorted(_HERE.glob("*.imgql"))}


def corpus_file(name: str) -> Path:
    files = corpus()
    if name not in files:
        raise FileNotFoundError(f"no bundled script named {name!r} (have: {', '.join(files)})")
    return files[name]
