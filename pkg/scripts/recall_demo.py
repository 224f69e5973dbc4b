#!/usr/bin/env python3
"""Probe a parallel recall memory with every possible input.

Builds a bank of threshold-memory instances, one per stored sample, and
shows what each probe retrieves under first-non-NULL arbitration, then how
chaining a translation stage after the bank transforms the recalled value.
"""

import argparse

from frnet import parse_text, run

DOCUMENT = """\
domain M size {n} null
family mem over M = threshold_memory(theta={theta})
family shift over M = affine_mod(a=1)
{frs}
fr step1 = shift(1)
net recall = [{bank}] @first
net nearest = [{bank}] @best
net shifted = [{bank}] @first -> step1
"""


def build_model(n, theta, stored):
    frs = "\n".join(f"fr s{v} = mem({v})" for v in stored)
    bank = " | ".join(f"s{v}" for v in stored)
    text = DOCUMENT.format(n=n, theta=theta, frs=frs, bank=bank)
    model, diagnostics = parse_text(text)
    if model is None:
        raise SystemExit("\n".join(d.render() for d in diagnostics))
    return model


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=8, help="number of storable values")
    parser.add_argument("--theta", type=int, default=1, help="recall threshold")
    parser.add_argument("--stored", type=int, nargs="+", default=[2, 6])
    args = parser.parse_args()

    model = build_model(args.size, args.theta, args.stored)
    null = args.size

    def show(value):
        return "NULL" if value == null else str(value)

    print(f"stored samples: {args.stored}   threshold: {args.theta}")
    print(f"{'probe':>5}  {'first':>6}  {'best':>6}  {'first->shift':>12}")
    for probe in range(args.size):
        print(
            f"{probe:>5}  {show(run(model.nets['recall'], probe)):>6}  "
            f"{show(run(model.nets['nearest'], probe)):>6}  "
            f"{show(run(model.nets['shifted'], probe)):>12}"
        )


if __name__ == "__main__":
    main()
