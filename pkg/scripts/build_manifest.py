#!/usr/bin/env python3
"""Regenerate data/corpus_manifest.json from the family builders."""

import pathlib

from qpolykit.families import manifest
from qpolykit.serialize import dump_json_pretty

target = pathlib.Path(__file__).resolve().parent.parent / "data" / "corpus_manifest.json"
target.write_text(dump_json_pretty(manifest()) + "\n")
print(f"wrote {target}")
