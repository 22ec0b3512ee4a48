"""Score decay as the edge-deletion probability grows on BA(500, 5)."""

from _common import run

if __name__ == "__main__":
    run("ba_noise.cfg", "p_d", [f"{0.01 * i:.2f}" for i in range(1, 11)], __doc__)
