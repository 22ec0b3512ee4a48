"""Greedy prefilter threshold sweep; the dmc rows give the exact-solver reference."""

from _common import run

if __name__ == "__main__":
    run("greedy_eps.cfg", "epsilon", ["0", "10", "100", "1000"], __doc__)
