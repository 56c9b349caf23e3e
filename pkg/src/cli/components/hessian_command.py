"""
Hessian Command Component

`hessian --n <int> --r <real>`: prints the Hessian block of the Casorati
quadratic form, its eigenvalues and the closed-form comparison.

Usage:
    from cli.components.hessian_command import HessianCommand
"""

import argparse

import numpy as np

from core.inequality_suite import hessian_spectrum
from core.suite_runner import EXIT_INPUT_ERROR, EXIT_OK, EXIT_VIOLATION

from .log_component import LogComponent


class HessianCommand:
    """
    Reports the Hessian spectrum for one (n, r).

    Attributes:
        log (LogComponent): Console output
    """

    name = 'hessian'

    def __init__(self, log: LogComponent):
        self.log = log

    def register(self, subparsers) -> argparse.ArgumentParser:
        parser = subparsers.add_parser(self.name, help="Hessian spectrum of the Casorati quadratic form")
        parser.add_argument('--n', type=int, required=True, help="submanifold dimension (>= 3)")
        parser.add_argument('--r', type=float, required=True, help="positive parameter r")
        return parser

    def run(self, args: argparse.Namespace) -> int:
        try:
            spectrum = hessian_spectrum(args.n, args.r)
        except ValueError as e:
            self.log.error(str(e))
            return EXIT_INPUT_ERROR

        with np.printoptions(precision=6, suppress=True):
            self.log.message(f"H1 (n={spectrum.n}, r={spectrum.r:g}):\n{spectrum.H1}")
        self.log.message("eigenvalue        closed form       match")
        for value, expected, match in zip(spectrum.eigenvalues, spectrum.closed_form, spectrum.matches):
            self.log.message(f"{value:<17.10g} {expected:<17.10g} {'yes' if match else 'no'}")
        self.log.message(f"kernel residual: {spectrum.kernel_residual:.3e}")

        ok = spectrum.psd and spectrum.zero_multiplicity == 1 and all(spectrum.matches)
        self.log.status(f"PSD={spectrum.psd}, zero multiplicity={spectrum.zero_multiplicity}", ok=ok)
        return EXIT_OK if ok else EXIT_VIOLATION
