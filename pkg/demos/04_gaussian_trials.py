"""Sparsest-consistent decoding from Gaussian sign measurements.

With dense Gaussian rows there is no combinatorial structure to exploit, so
the decoder enumerates supports and checks each one with a small linear
program. At n = 10 that is cheap enough to run a batch of random trials.
"""

from __future__ import annotations

from fractions import Fraction

from onebitcs import ExperimentConfig, SignalFamily, run_experiment


def main():
    family = SignalFamily("random", eta=Fraction(2), trials=40)
    for m in (15, 30, 60):
        cfg = ExperimentConfig("gaussian", 10, 2, Fraction(1, 2), family, eta=Fraction(2), m=m, seed=1)
        s = run_experiment(cfg).summary
        print(f"m = {m:>3}: {s.trials - s.violations}/{s.trials} trials within the error budget,"
              f" worst false positives {s.max_fp}, worst false negatives {s.max_fn}")


if __name__ == "__main__":
    main()
