"""Registry of builtin example maps.

The four ``ex-*`` entries are the explicit examples on flat R^4 and R^8 with
their published slant angles and dilations. The remaining entries are extra
test maps with non-constant dilation or curved fibres:

* ``holo-z2``   (x3^2 - x4^2, 2 x3 x4), i.e. z2 -> z2^2; dilation 2|z2|.
* ``holo-z1z2`` (x1 x3 - x2 x4, x1 x4 + x2 x3), i.e. (z1, z2) -> z1 z2; fibres
  are curved complex curves and the dilation is |(z1, z2)|.
* ``inv-r3``    inversion of (x1, x2, x3) in the unit sphere; R^4 -> R^3 with
  dilation 1/|(x1, x2, x3)|^2 and straight vertical lines along e4.
"""

import math
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import UnknownExample
from .mapdsl import eval_constant, parse_map


@dataclass(frozen=True)
class BallExclusion:
    """Excludes points whose projection onto ``coords`` (1-based) lies in a ball."""

    coords: tuple
    radius: float

    def __call__(self, p):
        sub = np.asarray(p, dtype=float)[[c - 1 for c in self.coords]]
        return bool(np.linalg.norm(sub) < self.radius)

    def describe(self):
        names = ",".join(f"x{c}" for c in self.coords)
        return f"|({names})| < {self.radius:g}"


@dataclass(frozen=True)
class Example:
    id: str
    text: str
    summary: str
    angles: str
    dilation: str
    published: bool = True
    exclusion: object = None
    expected: object = None  # callable params -> (theta_I, theta_J, theta_K, dilation)


def _angles_expected(params):
    s = params["alpha"] + params["beta"]
    return (math.acos(min(1.0, abs(math.sin(s)))), math.pi / 2,
            math.acos(min(1.0, abs(math.cos(s)))), math.exp(5))


EXAMPLES = {
    e.id: e
    for e in [
        Example(
            "ex-r4-axes",
            "dim 4 -> 2\nf1 = e^2 * x4\nf2 = e^2 * x3\n",
            "R^4 -> R^2, e^2 (x4, x3)",
            "θ_I = 0, θ_J = π/2, θ_K = π/2",
            "λ = e^2",
            expected=lambda _: (0.0, math.pi / 2, math.pi / 2, math.exp(2)),
        ),
        Example(
            "ex-r8-diag",
            "dim 8 -> 4\n"
            "f1 = e^4 * (x1 - x4) / sqrt(2)\n"
            "f2 = e^4 * (x5 - x8) / sqrt(2)\n"
            "f3 = e^4 * x7\n"
            "f4 = e^4 * x2\n",
            "R^8 -> R^4, e^4 ((x1 - x4)/√2, (x5 - x8)/√2, x7, x2)",
            "θ_I = π/4, θ_J = π/4, θ_K = π/2",
            "λ = e^4",
            expected=lambda _: (math.pi / 4, math.pi / 4, math.pi / 2, math.exp(4)),
        ),
        Example(
            "ex-r4-angles",
            "dim 4 -> 2\n"
            "param alpha = 0.3\n"
            "param beta = 0.4\n"
            "f1 = e^5 * (x1 * cos(alpha) - x3 * sin(alpha))\n"
            "f2 = e^5 * (x2 * sin(beta) - x4 * cos(beta))\n",
            "R^4 -> R^2, e^5 (x1 cos α - x3 sin α, x2 sin β - x4 cos β)",
            "cos θ_I = |sin(α + β)|, θ_J = π/2, cos θ_K = |cos(α + β)|",
            "λ = e^5",
            expected=_angles_expected,
        ),
        Example(
            "ex-r4-sixth",
            "dim 4 -> 2\nf1 = e^7 * x1\nf2 = e^7 * (sqrt(3) / 2 * x2 - 1 / 2 * x4)\n",
            "R^4 -> R^2, e^7 (x1, (√3/2) x2 - (1/2) x4)",
            "θ_I = π/6, θ_J = π/2, θ_K = π/3",
            "λ = e^7",
            expected=lambda _: (math.pi / 6, math.pi / 2, math.pi / 3, math.exp(7)),
        ),
        Example(
            "holo-z2",
            "dim 4 -> 2\nf1 = x3^2 - x4^2\nf2 = 2 * x3 * x4\n",
            "R^4 -> R^2, (x3^2 - x4^2, 2 x3 x4)",
            "θ_I = 0, θ_J = π/2, θ_K = π/2",
            "λ = 2 |(x3, x4)|",
            published=False,
            exclusion=BallExclusion((3, 4), 0.2),
        ),
        Example(
            "holo-z1z2",
            "dim 4 -> 2\nf1 = x1 * x3 - x2 * x4\nf2 = x1 * x4 + x2 * x3\n",
            "R^4 -> R^2, (x1 x3 - x2 x4, x1 x4 + x2 x3)",
            "θ_I = 0, θ_J = π/2, θ_K = π/2",
            "λ = |x|",
            published=False,
            exclusion=BallExclusion((1, 2, 3, 4), 0.3),
        ),
        Example(
            "inv-r3",
            "dim 4 -> 3\n"
            "f1 = x1 / (x1^2 + x2^2 + x3^2)\n"
            "f2 = x2 / (x1^2 + x2^2 + x3^2)\n"
            "f3 = x3 / (x1^2 + x2^2 + x3^2)\n",
            "R^4 -> R^3, inversion of (x1, x2, x3) in the unit sphere",
            "θ_I = θ_J = θ_K = π/2",
            "λ = 1 / |(x1, x2, x3)|^2",
            published=False,
            exclusion=BallExclusion((1, 2, 3), 0.4),
        ),
    ]
}

_ID_RE = re.compile(r"^\s*([A-Za-z0-9_-]+)\s*(?:\((.*)\))?\s*$", re.S)


def split_example_id(text):
    """Split ``"ex-r4-angles(alpha=0.3, 0.4)"`` into an id and parameter bindings."""
    m = _ID_RE.match(text)
    if m is None:
        raise UnknownExample(f"malformed example id {text!r}")
    ident, args = m.group(1), m.group(2)
    positional, named = [], {}
    if args and args.strip():
        for piece in args.split(","):
            if "=" in piece:
                key, val = piece.split("=", 1)
                named[key.strip()] = eval_constant(val)
            else:
                positional.append(eval_constant(piece))
    return ident, positional, named


def builtin_example(ident, **params):
    """Return the :class:`~submersion_lab.mapdsl.MapSpec` for a registry id.

    Parameters may be given inline (``"ex-r4-angles(pi/4, pi/4)"``) or as
    keyword arguments; ``α``/``β`` are accepted as aliases.
    """
    name, positional, named = split_example_id(ident)
    entry = EXAMPLES.get(name)
    if entry is None:
        raise UnknownExample(f"unknown example {name!r}; known: {', '.join(EXAMPLES)}")
    spec = parse_map(entry.text).with_name(name)
    names = [k for k, _ in spec.params]
    if len(positional) > len(names):
        raise UnknownExample(f"{name} takes at most {len(names)} parameters")
    bound = dict(zip(names, positional))
    aliases = {"α": "alpha", "β": "beta"}
    for key, val in {**named, **params}.items():
        key = aliases.get(key, key)
        if key not in names:
            raise UnknownExample(f"{name} has no parameter {key!r}")
        bound[key] = float(val)
    return spec.with_params(**bound) if bound else spec


def example_entry(ident):
    name = split_example_id(ident)[0]
    try:
        return EXAMPLES[name]
    except KeyError:
        raise UnknownExample(f"unknown example {name!r}") from None


def expected_values(spec):
    """Reference (θ_I, θ_J, θ_K, λ) for a published example, else ``None``."""
    entry = EXAMPLES.get(spec.name)
    if entry is None or entry.expected is None:
        return None
    return entry.expected(spec.param_dict)


__all__ = ["BallExclusion", "Example", "EXAMPLES", "builtin_example",
           "example_entry", "expected_values", "split_example_id"]
