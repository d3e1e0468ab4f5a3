#!/usr/bin/env python3
"""Show what the loop unroller and the lowering pipeline produce.

Prints the counted-loop module next to its unrolled form, then the
dynamically-allocating Bell module next to its base-profile lowering.
"""

import pathlib
import sys

from qirtk import lower_to_base, parse_module, print_module, unroll_and_fold

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "corpus"


def show(title: str, text: str) -> None:
    print(f"==== {title} " + "=" * max(0, 60 - len(title)))
    print(text)


def main() -> int:
    loop_text = (CORPUS / "hadamard_loop.ll").read_text()
    show("counted loop, as written", loop_text)
    show("counted loop, unrolled",
         print_module(unroll_and_fold(parse_module(loop_text))))

    dynamic_text = (CORPUS / "bell_dynamic.ll").read_text()
    show("dynamic bell, as written", dynamic_text)
    show("dynamic bell, lowered to the base profile",
         print_module(lower_to_base(parse_module(dynamic_text))))
    return 0


if __name__ == "__main__":
    sys.exit(main())
