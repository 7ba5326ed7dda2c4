"""Complex literals and JSON family descriptors."""
from __future__ import annotations

import json
import re

_NUM = r"[0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?"
_COMPLEX_RE = re.compile(
    rf"^\s*(?:(?P<re>[+-]?{_NUM})(?:(?P<im>[+-](?:{_NUM})?)i)?|(?P<pure>[+-]?(?:{_NUM})?)i)\s*$"
)


def parse_complex(text) -> complex:
    """Parse ``a``, ``bi``, ``a+bi`` or ``a-bi`` (decimal only)."""
    if isinstance(text, (int, float, complex)):
        return complex(text)
    m = _COMPLEX_RE.match(str(text))
    if m is None:
        raise ValueError(f"not a complex literal: {text!r}")
    if m.group("pure") is not None:
        return complex(0.0, _coef(m.group("pure")))
    real = float(m.group("re"))
    im = m.group("im")
    return complex(real, _coef(im) if im is not None else 0.0)


def _coef(s: str) -> float:
    if s in ("", "+"):
        return 1.0
    if s == "-":
        return -1.0
    return float(s)


def format_complex(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return repr(float(z.real))
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def measure_from_descriptor(desc):
    """Build a :class:`MeasureModel` from a dict or JSON string.

    >>> measure_from_descriptor('{"family":"geronimus","alpha":"-0.5"}').alpha(3)
    (-0.5+0j)
    """
    from . import measures as M

    if isinstance(desc, str):
        desc = json.loads(desc)
    family = str(desc.get("family", "")).lower()
    mass = float(desc.get("totalMass", 1.0))
    if family == "lebesgue":
        return M.lebesgue()
    if family == "geronimus":
        return M.geronimus(parse_complex(desc["alpha"]))
    if family in ("qhyper", "q", "q-hyper"):
        return M.qhyper(float(desc["q"]), parse_complex(desc["b"]))
    if family in ("hyper", "hyperjacobi", "hyper-jacobi"):
        return M.hyper_jacobi(parse_complex(desc["b"]))
    if family in ("explicit-alpha", "explicitalpha"):
        return M.explicit_alpha([parse_complex(a) for a in desc["alpha"]], mass)
    if family in ("explicit-cg", "explicitcg"):
        return M.explicit_cg(desc["c"], desc["g"], mass)
    raise ValueError(f"unknown measure family: {family!r}")
