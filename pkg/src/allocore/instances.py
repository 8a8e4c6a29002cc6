"""Reading and writing game instance files.

Two JSON formats are supported:

explicit games::

    {"format": "explicit", "n": 3,
     "costs": {"1": "1", "2": "1", "1,2": "1", ...},
     "default": "1"}          # optional cost for unlisted coalitions

spanning-tree games::

    {"format": "mst", "n": 3,
     "edges": [[0, 1, "1"], [1, 3, "1/4"], ...]}

Coalition keys are comma-separated strictly increasing agent lists; the
empty coalition is implicitly free and must not appear. Weights and costs
are integers or "p/q" strings; serialized files always use strings.
``serialize`` produces a normalized form on which parse/serialize round
trips are the identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import InstanceParseError, PreconditionError
from .games import ENUM_LIMIT, ExplicitGame, Game
from .mstgame import GraphInstance, MstGame

EXPLICIT = "explicit"
MST = "mst"


@dataclass(frozen=True)
class InstanceFile:
    """Parsed contents of an instance file, in canonical order."""

    format: str
    n: int
    costs: tuple[tuple[int, Fraction], ...] | None = None  # (bits, cost), ascending
    default: Fraction | None = None
    edges: tuple[tuple[int, int, Fraction], ...] | None = None  # (i, j, w), i < j


def _parse_rational(value: object, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise InstanceParseError(f"{where}: values must be integers or 'p/q' strings")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InstanceParseError(f"{where}: bad rational {value!r} ({exc})") from None
    raise InstanceParseError(f"{where}: values must be integers or 'p/q' strings")


def _parse_coalition_key(key: str, n: int) -> int:
    if key == "":
        raise InstanceParseError(
            "the empty coalition must not be listed; its cost is implicitly 0"
        )
    bits = 0
    previous = 0
    for part in key.split(","):
        try:
            agent = int(part)
        except ValueError:
            raise InstanceParseError(f"malformed coalition key {key!r}") from None
        if agent <= previous:
            raise InstanceParseError(
                f"coalition key {key!r} must list agents in strictly increasing order"
            )
        if agent > n:
            raise InstanceParseError(f"coalition key {key!r} names agent {agent} > n={n}")
        bits |= 1 << (agent - 1)
        previous = agent
    return bits


def _reject_duplicate_pairs(pairs):
    seen = set()
    out = {}
    for key, value in pairs:
        if key in seen:
            raise InstanceParseError(f"duplicate key {key!r}")
        seen.add(key)
        out[key] = value
    return out


def parse(text: str) -> InstanceFile:
    try:
        data = json.loads(text, object_pairs_hook=_reject_duplicate_pairs)
    except json.JSONDecodeError as exc:
        raise InstanceParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise InstanceParseError("top level must be a JSON object")
    fmt = data.get("format")
    if fmt not in (EXPLICIT, MST):
        raise InstanceParseError(f"format must be '{EXPLICIT}' or '{MST}', got {fmt!r}")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InstanceParseError(f"n must be a positive integer, got {n!r}")

    if fmt == EXPLICIT:
        if n > ENUM_LIMIT:
            raise InstanceParseError(f"explicit games are limited to n <= {ENUM_LIMIT}")
        raw = data.get("costs")
        if not isinstance(raw, dict):
            raise InstanceParseError("explicit instances need a 'costs' object")
        default = None
        if "default" in data:
            default = _parse_rational(data["default"], "default")
        costs: dict[int, Fraction] = {}
        for key, value in raw.items():
            bits = _parse_coalition_key(key, n)
            costs[bits] = _parse_rational(value, f"cost of {key!r}")
        if default is None:
            missing = (1 << n) - 1 - len(costs)
            if missing:
                raise InstanceParseError(
                    f"{missing} nonempty coalitions are missing and no default cost is declared"
                )
        return InstanceFile(
            format=EXPLICIT,
            n=n,
            costs=tuple(sorted(costs.items())),
            default=default,
        )

    raw_edges = data.get("edges")
    if not isinstance(raw_edges, list):
        raise InstanceParseError("mst instances need an 'edges' array")
    edges = []
    seen = set()
    for idx, entry in enumerate(raw_edges):
        if not isinstance(entry, list) or len(entry) != 3:
            raise InstanceParseError(f"edge #{idx}: expected [i, j, weight]")
        i, j, wv = entry
        if not isinstance(i, int) or not isinstance(j, int) or isinstance(i, bool) or isinstance(j, bool):
            raise InstanceParseError(f"edge #{idx}: endpoints must be integers")
        if not (0 <= i <= n and 0 <= j <= n) or i == j:
            raise InstanceParseError(f"edge #{idx}: bad endpoints ({i},{j}) for n={n}")
        a, b = min(i, j), max(i, j)
        if (a, b) in seen:
            raise InstanceParseError(f"edge #{idx}: duplicate edge ({a},{b})")
        seen.add((a, b))
        w = _parse_rational(wv, f"edge ({a},{b})")
        if w < 0:
            raise InstanceParseError(f"edge ({a},{b}): negative weight {w}")
        edges.append((a, b, w))
    return InstanceFile(format=MST, n=n, edges=tuple(sorted(edges)))


def load(path: str) -> InstanceFile:
    with open(path, "r", encoding="utf-8") as handle:
        return parse(handle.read())


def serialize(instance: InstanceFile) -> str:
    """Normalized JSON text, one coalition or edge per line; parse(serialize(x)) == x."""
    lines = ["{", f'  "format": {json.dumps(instance.format)},', f'  "n": {instance.n},']
    if instance.format == EXPLICIT:
        entries = []
        for bits, value in instance.costs:
            key = ",".join(str(i + 1) for i in range(instance.n) if (bits >> i) & 1)
            entries.append(f"    {json.dumps(key)}: {json.dumps(str(value))}")
        body = '  "costs": {\n' + ",\n".join(entries) + "\n  }"
        if instance.default is not None:
            body += f',\n  "default": {json.dumps(str(instance.default))}'
        lines.append(body)
    else:
        entries = [f"    [{i}, {j}, {json.dumps(str(w))}]" for i, j, w in instance.edges]
        lines.append('  "edges": [\n' + ",\n".join(entries) + "\n  ]")
    return "\n".join(lines) + "\n}\n"


def to_graph(instance: InstanceFile) -> GraphInstance:
    if instance.format != MST:
        raise PreconditionError("this command needs an mst-format instance")
    return GraphInstance.from_edges(instance.n, instance.edges)


def to_game(instance: InstanceFile, monotonize: bool = False) -> Game:
    if instance.format == EXPLICIT:
        if monotonize:
            raise PreconditionError("--monotonize applies to mst instances only")
        table = [Fraction(0)] * (1 << instance.n)
        listed = dict(instance.costs)
        for bits in range(1, 1 << instance.n):
            value = listed.get(bits, instance.default)
            # parse() guarantees completeness when there is no default
            table[bits] = value
        return ExplicitGame(instance.n, table)
    return MstGame(to_graph(instance), monotonized=monotonize)


def explicit_instance_from_table(n: int, table, default: Fraction | None = None) -> InstanceFile:
    """An explicit InstanceFile for a full 2^n table (entry 0 must be 0)."""
    costs = tuple((bits, table[bits]) for bits in range(1, 1 << n))
    return InstanceFile(format=EXPLICIT, n=n, costs=costs, default=default)


def mst_instance_from_graph(graph: GraphInstance) -> InstanceFile:
    edges = tuple(
        (i, j, graph.weights[i][j])
        for i in range(graph.n + 1)
        for j in range(i + 1, graph.n + 1)
    )
    return InstanceFile(format=MST, n=graph.n, edges=edges)
