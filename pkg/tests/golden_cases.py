"""CLI invocations pinned by golden files (run from the tests directory)."""

CASES = {
    "types_colorful_2_3": ["types", "--d", "2", "--r", "3", "--colorful"],
    "types_colorful_3334": ["types", "--d", "3", "--r", "4", "--colorful", "--sizes", "3,3,3,4"],
    "types_1_2": ["types", "--d", "1", "--r", "2", "--classify"],
    "appendix": ["appendix"],
    "tverberg_sierksma": ["tverberg", "data/sierksma_2_3.csv", "--r", "3"],
    "tverberg_planar_4": ["tverberg", "data/planar_4.csv", "--r", "2"],
    "tverberg_diagonal": ["tverberg", "data/diagonal_2_3.csv", "--r", "3"],
    "stair_1_3": ["stair", "data/stair_1_3.csv", "--r", "3", "--both"],
    "stair_2_3": ["stair", "data/stair_2_3.csv", "--r", "3", "--both"],
    "stair_3_3": ["stair", "data/stair_3_3.csv", "--r", "3", "--oracle"],
    "grid_diagonal_2_3": ["grid", "--d", "2", "--r", "3", "--diagonal"],
    "grid_random_2_2": ["grid", "--d", "2", "--r", "2", "--random", "--trials", "3", "--seed", "1"],
    "eval_1368": ["eval", "1368(27:459)", "--d", "4", "--n", "9"],
    "eval_parity": ["eval", "--parity-suite", "--d", "4", "--n", "9"],
    "scan_sixpt": ["scan", "sixpt", "--d", "2", "--max-n", "7", "--budget", "30", "--seed", "2"],
}


if __name__ == "__main__":
    import contextlib
    import io
    import os
    from pathlib import Path

    from tverberg_lab.cli import main

    here = Path(__file__).parent
    os.chdir(here)
    for name, argv in sorted(CASES.items()):
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            main(["--no-timing", *argv])
        (here / "golden" / f"{name}.json").write_text(buf.getvalue())
        print(name)
