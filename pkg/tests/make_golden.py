"""Regenerate tests/golden/*.json from the current engine.

Run only after a change in the output has been reviewed:

    python tests/make_golden.py
"""

import contextlib
import io
from pathlib import Path

from bordered_hfk.cli import main
from bordered_hfk.knots import builtin_names

GOLDEN = Path(__file__).parent / "golden"


def golden_output(name: str) -> str:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["compute", "-i", name, "--json", "--emit", "all"])
    if code != 0:
        raise SystemExit(f"{name}: exit {code}")
    return buf.getvalue()


if __name__ == "__main__":
    GOLDEN.mkdir(exist_ok=True)
    for name in builtin_names():
        (GOLDEN / f"{name}.json").write_text(golden_output(name), encoding="utf-8")
        print("wrote", name)
