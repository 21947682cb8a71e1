from __future__ import annotations


class NonPrimeModulus(ValueError):
    pass


class UnsupportedConductor(ValueError):
    pass
