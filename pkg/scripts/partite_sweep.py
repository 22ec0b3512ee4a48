"""Score against the number of partite groups for ER(100, 0.5) random-walk pairs."""

from _common import run

if __name__ == "__main__":
    run("er_partite.cfg", "k", ["2", "4", "6", "8", "10"], __doc__)
