import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ordgl.formulas import BOT, TOP, And, Box, Diamond, Implies, Not, Or, Var
from ordgl.ordinals import ZERO, CnfOrdinal, add, omega_power

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def _from_exponents(pairs):
    out = ZERO
    for e, c in sorted(pairs, key=lambda p: p[0], reverse=True):
        out = add(out, omega_power(e, c))
    return out


def ordinals(nesting=3, max_terms=3, max_coeff=5):
    """Ordinals whose exponents nest at most ``nesting`` levels."""
    if nesting == 0:
        return st.integers(0, max_coeff).map(CnfOrdinal.of)
    term = st.tuples(ordinals(nesting - 1, max_terms, max_coeff), st.integers(1, max_coeff))
    return st.lists(term, max_size=max_terms, unique_by=lambda t: t[0]).map(_from_exponents)


def nonzero_ordinals(nesting=3):
    return ordinals(nesting).filter(lambda a: not a.is_zero)


def limit_ordinals(nesting=3):
    return ordinals(nesting).filter(lambda a: a.is_limit)


def formulas(depth=3, nvars=2):
    atoms = st.sampled_from([Var(i) for i in range(nvars)] + [TOP, BOT])
    if depth == 0:
        return atoms
    sub = formulas(depth - 1, nvars)
    return st.one_of(
        atoms,
        sub.map(Not), sub.map(Box), sub.map(Diamond),
        st.builds(And, sub, sub), st.builds(Or, sub, sub), st.builds(Implies, sub, sub),
    )
