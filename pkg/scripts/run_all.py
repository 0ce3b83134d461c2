#!/usr/bin/env python3
"""Run every registered experiment and collect reports under one directory.

Usage: python3 scripts/run_all.py [outdir]

The heavy quotient builds are cached in-process, so this finishes in a
few minutes.  Experiments whose job is to exhibit a counterexample count
as reproduced when they report "witness"; two experiments ("table1" and
"blowup" at d=3) reproduce published tables that the computation
genuinely disagrees with, so they report "fail"/"witness" by design —
the summary marks those as expected.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from torquot.cli import _REGISTRY, experiment_document  # noqa: E402

RUNS = [
    ("table1", ()),
    ("q-delta2-3-count", ()),
    ("hexagon-remark", ()),
    ("f2-singular", ()),
    ("blowup", ("d=1",)),
    ("blowup", ("d=2",)),
    ("blowup", ("d=3",)),
    ("lm-iso", ("m=1",)),
    ("lm-iso", ("m=2",)),
    ("lm-iso", ("m=3",)),
    ("nonreduced-f40", ()),
    ("delta-reduced", ("d=1", "m=2")),
    ("delta-reduced", ("d=1", "m=3")),
    ("delta-reduced", ("d=1", "m=4")),
    ("delta-reduced", ("d=2", "m=2")),
    ("figure5", ()),
    ("cayley-example", ()),
    ("m2-lemma", ("P=triangle",)),
    ("m2-lemma", ("P=f2",)),
    ("m2-lemma", ("P=f40",)),
]

# these runs reproduce a published claim the computation contradicts;
# their non-pass verdict is the documented outcome, not a regression
KNOWN_DISAGREEMENTS = {"table1", "blowup-3"}


def main() -> int:
    outdir = sys.argv[1] if len(sys.argv) > 1 else "out"
    os.makedirs(outdir, exist_ok=True)
    rows = []
    for name, params in RUNS:
        slug, text, artifacts, report = experiment_document(name, params)
        with open(os.path.join(outdir, slug + ".json"), "w",
                  encoding="ascii") as fh:
            fh.write(text)
        if "svg" in artifacts:
            with open(os.path.join(outdir, slug + ".svg"), "w",
                      encoding="ascii") as fh:
                fh.write(artifacts["svg"])
        expected = _REGISTRY[name].expected
        if report.verdict == expected:
            status = "ok"
        elif slug in KNOWN_DISAGREEMENTS:
            status = "ok (documented disagreement)"
        else:
            status = "UNEXPECTED"
        rows.append((slug, report.verdict, status))
        print(f"{slug:<24} {report.verdict:<8} {status}")
    bad = [r for r in rows if r[2] == "UNEXPECTED"]
    print(f"\n{len(rows)} experiments, {len(bad)} unexpected")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
