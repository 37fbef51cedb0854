"""Shared random generators for configuration and line sweeps."""

import random

from coamoeba.errors import InputError
from coamoeba.gale_plane import BConfig, validate_bconfig
from coamoeba.line_model import line_from_forms


def random_bconfig(rng: random.Random, max_n: int = 7) -> BConfig:
    """A valid configuration with N <= max_n and small entries; repeated
    vectors are allowed and do occur."""
    while True:
        size = rng.randrange(3, max_n + 2)
        vecs = []
        for _ in range(size - 1):
            v = (0, 0)
            while v == (0, 0):
                v = (rng.randrange(-3, 4), rng.randrange(-3, 4))
            vecs.append(v)
        closing = (-sum(x for x, _ in vecs), -sum(y for _, y in vecs))
        if closing == (0, 0):
            continue
        vecs.append(closing)
        try:
            return validate_bconfig(vecs)
        except InputError:
            continue


def random_line_forms(rng: random.Random, max_n: int = 6) -> list[tuple[int, int]]:
    """Form lists accepted by line_from_forms: a positive constant is
    appended last and at least one form must have a finite zero."""
    while True:
        size = rng.randrange(2, max_n + 1)
        forms = []
        for _ in range(size):
            f = (0, 0)
            while f == (0, 0):
                f = (rng.randrange(-4, 5), rng.randrange(-4, 5))
            forms.append(f)
        forms.append((0, rng.randrange(1, 4)))
        if all(a == 0 for a, _ in forms[:-1]):
            continue
        try:
            line_from_forms(forms)
        except InputError:
            continue
        return forms
