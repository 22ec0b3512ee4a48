"""Chung-Lu sweeps: mean target degree (default) or partite count via --axis k."""

import sys

from _common import run

if __name__ == "__main__":
    if "--axis" in sys.argv:
        i = sys.argv.index("--axis")
        axis = sys.argv[i + 1]
        del sys.argv[i : i + 2]
    else:
        axis = "lambda"
    values = ["1", "2", "5", "10", "20"] if axis == "lambda" else ["1", "2", "4", "6", "8", "10"]
    run("chung_lu.cfg", axis, values, __doc__)
