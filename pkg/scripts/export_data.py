"""Write the example plane pair data as CLI input files into data/."""
import pathlib

from hodgeloci.cli import format_datum
from hodgeloci.scenarios import example_a_datum, example_b_datum, example_c_datum


def main():
    out = pathlib.Path(__file__).resolve().parent.parent / "data"
    out.mkdir(exist_ok=True)
    for name, build in (("example-a", example_a_datum), ("example-b", example_b_datum),
                        ("example-c", example_c_datum)):
        (out / f"{name}.txt").write_text(format_datum(build()))
        print(out / f"{name}.txt")


if __name__ == "__main__":
    main()
