"""hetsqueeze - heterodyne detection with a squeezed local oscillator, in truncated Fock space."""

__version__ = "0.1.0"
