"""Write the bundled .sik files from the recipes in khinv.corpus.

    python3 tools/make_corpus.py

Also copies the reference tables to khinv/data/reference_tables.json so that
`khinv corpus` works from an installed package.
"""
from __future__ import annotations

import shutil
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from khinv import corpus  # noqa: E402
from khinv.diagram import dumps, validate  # noqa: E402


def main():
    corpus.DATA.mkdir(exist_ok=True)
    for name in corpus.ALL:
        D = corpus.build(name)
        problems = validate(D)
        if problems:
            raise SystemExit(f"{name}: {problems}")
        (corpus.DATA / f"{name}.sik").write_text(dumps(D))
        print(f"{name}: {D.n} crossings, writhe {D.writhe}, basepoint {D.basepoint}")
    shutil.copy(ROOT / "tests" / "data" / "expected_tables.json", corpus.DATA / "reference_tables.json")


if __name__ == "__main__":
    main()
