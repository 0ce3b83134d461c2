#!/usr/bin/env python3
"""Regenerate the committed golden files from scratch.

Every golden is the exact JSON document that ``torquot run`` emits for
that experiment (plus the one committed SVG figure).  Run this after a
deliberate change to report payloads, then review the diff by hand —
a golden that moves without an intentional payload change is a bug.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from torquot.cli import experiment_document  # noqa: E402

GOLDEN_RUNS = [
    ("table1", ()),
    ("q-delta2-3-count", ()),
    ("lm-iso", ("m=2",)),
    ("lm-iso", ("m=3",)),
    ("blowup", ("d=2",)),
    ("blowup", ("d=3",)),
    ("nonreduced-f40", ()),
    ("f2-singular", ()),
    ("hexagon-remark", ()),
    ("cayley-example", ()),
]


def main() -> int:
    here = os.path.dirname(os.path.abspath(__file__))
    golden_dir = os.path.join(here, "..", "src", "torquot", "golden")
    os.makedirs(golden_dir, exist_ok=True)
    for name, params in GOLDEN_RUNS:
        slug, text, artifacts, report = experiment_document(name, params)
        path = os.path.join(golden_dir, slug + ".json")
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)
        print(f"wrote {os.path.relpath(path)} ({report.verdict})")
        if "svg" in artifacts:
            spath = os.path.join(golden_dir, slug + ".svg")
            with open(spath, "w", encoding="ascii") as fh:
                fh.write(artifacts["svg"])
            print(f"wrote {os.path.relpath(spath)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
