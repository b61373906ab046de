"""Named constants as tight interval enclosures."""

from functools import lru_cache

from .atan import pi_interval
from .interval import Interval


def _i(x) -> Interval:
    return Interval.point(x)


@lru_cache(maxsize=None)
def pi() -> Interval:
    return pi_interval()


@lru_cache(maxsize=None)
def sqrt2() -> Interval:
    return _i(2).sqrt()


@lru_cache(maxsize=None)
def sqrt5() -> Interval:
    return _i(5).sqrt()


@lru_cache(maxsize=None)
def sqrt8() -> Interval:
    return _i(8).sqrt()


@lru_cache(maxsize=None)
def t_dod() -> Interval:
    """Circumradius of the dodecahedron whose inradius is 1: sqrt(3) tan(pi/5)."""
    return (_i(15) - 6 * sqrt5()).sqrt()


@lru_cache(maxsize=None)
def delta_tet() -> Interval:
    """Density of four unit balls in the regular tetrahedron of edge 2."""
    return sqrt8() * (sqrt2() / 5).atan()


@lru_cache(maxsize=None)
def m0() -> Interval:
    return _i(1) / (3 * delta_tet())


@lru_cache(maxsize=None)
def m_dod() -> Interval:
    return Interval.from_decimal("0.42755")


@lru_cache(maxsize=None)
def t0() -> Interval:
    return Interval.from_decimal("1.255")


@lru_cache(maxsize=None)
def sin72() -> Interval:
    # sin(2 pi / 5) = sqrt(10 + 2 sqrt 5) / 4
    return (10 + 2 * sqrt5()).sqrt() / 4


@lru_cache(maxsize=None)
def omega_dod() -> Interval:
    """Volume of the dodecahedron with inradius 1."""
    t = t_dod()
    return 10 * (t.sqr() - 1) * sin72()


@lru_cache(maxsize=None)
def mu_dod() -> Interval:
    return omega_dod() - 4 * pi() * m_dod()


CONSTANTS = {
    "pi": pi,
    "sqrt2": sqrt2,
    "sqrt5": sqrt5,
    "sqrt8": sqrt8,
    "t_dod": t_dod,
    "delta_tet": delta_tet,
    "M_0": m0,
    "M_dod": m_dod,
    "t_0": t0,
    "omega_dod": omega_dod,
    "mu_dod": mu_dod,
}


def constant(name: str) -> Interval:
    try:
        return CONSTANTS[name]()
    except KeyError:
        raise KeyError(f"unknown constant {name!r}") from None
