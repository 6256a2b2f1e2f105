"""JSON fan/cone files and deterministic report rendering."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

from .errors import ConeError, ParseError
from .fan import Cone, Fan
from .homology import BettiTable
from .linalg import primitive

CORPUS_PACKAGE = "toriclink.corpus"


def corpus_names() -> list[str]:
    """Names of the bundled example inputs."""
    root = resources.files(CORPUS_PACKAGE)
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def resolve_input(name: str | Path) -> Path | Any:
    """A filesystem path if it exists, else a bundled corpus entry by name."""
    path = Path(name)
    if path.exists():
        return path
    stem = path.name[:-5] if path.name.endswith(".json") else path.name
    entry = resources.files(CORPUS_PACKAGE) / f"{stem}.json"
    if entry.is_file():
        return entry
    raise ParseError(f"no such file or bundled input: {name}")


def _int_vector(raw, where: str) -> tuple[int, ...]:
    if not isinstance(raw, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in raw):
        raise ParseError(f"{where} must be a list of integers, got {raw!r}")
    return tuple(raw)


def load_fan_data(data: dict) -> Fan | Cone:
    """Validate a decoded FanFile document.

    Without ``max_cones`` the rays define a single cone.
    """
    if not isinstance(data, dict):
        raise ParseError("top level must be a JSON object")
    for key in ("ambient_rank", "rays"):
        if key not in data:
            raise ParseError(f"missing field '{key}'")
    n = data["ambient_rank"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ParseError(f"ambient_rank must be a nonnegative integer, got {n!r}")
    if not isinstance(data["rays"], list):
        raise ParseError("rays must be a list")
    rays = []
    seen: dict[tuple[int, ...], int] = {}
    for i, raw in enumerate(data["rays"]):
        r = _int_vector(raw, f"ray {i}")
        if len(r) != n:
            raise ParseError(f"ray {i} has length {len(r)}, expected ambient_rank {n}")
        if not any(r):
            raise ParseError(f"ray {i} is the zero vector")
        p = primitive(r)
        if p in seen:
            raise ParseError(f"ray {i} {list(r)} duplicates ray {seen[p]}")
        seen[p] = i
        rays.append(p)
    name = str(data.get("name", ""))
    if "max_cones" not in data:
        if not rays:
            raise ParseError("a single-cone file needs at least one ray")
        try:
            return Cone(rays, n)
        except ConeError as exc:
            raise ParseError(f"invalid cone: {exc}") from exc
    if not isinstance(data["max_cones"], list):
        raise ParseError("max_cones must be a list")
    cones = []
    for k, raw in enumerate(data["max_cones"]):
        idx = _int_vector(raw, f"max cone {k}")
        for i in idx:
            if not 0 <= i < len(rays):
                raise ParseError(f"max cone {k} references ray index {i} out of range 0..{len(rays) - 1}")
        if len(set(idx)) != len(idx):
            raise ParseError(f"max cone {k} repeats a ray index")
        cones.append(idx)
    try:
        return Fan(rays, cones, n, name=name)
    except ConeError as exc:
        raise ParseError(f"invalid fan: {exc}") from exc


def parse_fan_file(path: str | Path) -> Fan | Cone:
    source = resolve_input(path)
    try:
        text = source.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON in {path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return load_fan_data(data)


def fan_to_data(f: Fan | Cone, name: str = "") -> dict:
    if isinstance(f, Cone):
        return {"name": name, "ambient_rank": f.ambient_rank, "rays": [list(r) for r in f.rays]}
    return {"name": name or f.name, "ambient_rank": f.ambient_rank,
            "rays": [list(r) for r in f.rays], "max_cones": [list(c) for c in f.max_cones]}


def dumps(obj: Any) -> str:
    """Stable JSON: fixed indentation, trailing newline."""
    return json.dumps(obj, indent=2, ensure_ascii=False, default=_default) + "\n"


def _default(o):
    if isinstance(o, (tuple, frozenset, set)):
        return sorted(o) if isinstance(o, (frozenset, set)) else list(o)
    if isinstance(o, BettiTable):
        return list(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def betti_table_text(b: BettiTable, title: str = "") -> str:
    width = max(len(str(x)) for x in (*b.betti, len(b) - 1))
    degrees = " ".join(str(k).rjust(width) for k in range(len(b)))
    values = " ".join(str(x).rjust(width) for x in b.betti)
    return f"{title or 'Betti numbers'} (euler {b.euler})\nk  {degrees}\nb  {values}\n"


def checks_text(checks: list[dict]) -> str:
    lines = []
    for ch in checks:
        flag = "PASS" if ch["pass"] else "FAIL"
        lines.append(f"  [{flag}] {ch['name']}: expected {ch['expected']}, got {ch['actual']}")
    return "\n".join(lines) + "\n"


def link_report_text(d: dict) -> str:
    out = [f"{d['name'] or 'cone'}: f1={d['f1']} f2={d['f2']} facets={d['facets']}",
           f"  link betti      {' '.join(map(str, d['link_betti']))}",
           f"  b2              {d['b2']}",
           f"  m               {d['m']}  facet edges {d['facet_edge_counts']}"]
    if d["intersection_space_betti"] is not None:
        out.append(f"  intersection    {' '.join(map(str, d['intersection_space_betti']))}"
                   f"  ({d['intersection_regime']})")
    if d["base_betti"] is not None:
        proj = d["projection"]
        out.append(f"  projected along {proj['interior_ray']}: base betti "
                   f"{' '.join(map(str, d['base_betti']))}, b = {d['b_projection']}")
    out.append(f"  {'all checks pass' if d['passed'] else 'SOME CHECKS FAILED'}")
    return "\n".join(out) + "\n" + checks_text(d["checks"])


def projection_text(d: dict, b: BettiTable) -> str:
    fan = d["base_fan"]
    lines = [f"projection along {d['interior_ray']}",
             f"  quotient map rows: {d['quotient_map']}",
             f"  rays ({len(fan['rays'])}): {fan['rays']}",
             f"  max cones ({len(fan['max_cones'])}): {fan['max_cones']}",
             f"  valid complete fan: {d['validation']['ok']}"]
    return "\n".join(lines) + "\n" + betti_table_text(b, "base variety")
