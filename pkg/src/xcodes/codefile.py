"""JSON and 0/1 matrix file formats for codes.

Points and rows are 1-indexed in files and 0-indexed in memory.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Optional

from .columns import BitColumn, Triple, support
from .verify import XCode

FORMAT_TAG = "xcode/1"


@dataclass(frozen=True)
class CodeFile:
    code: XCode
    certificate: Optional[dict] = None

    def __post_init__(self):
        c = self.code
        if c.is_triple_code:
            blocks = tuple(sorted(c.blocks))
        else:
            blocks = tuple(sorted(c.blocks, key=lambda b: support(b.bits)))
        object.__setattr__(self, "code", XCode(c.m, c.d, c.x, blocks, verified=c.verified))

    @property
    def weight(self) -> Optional[int]:
        weights = {bin(mk).count("1") for mk in self.code.masks()}
        return weights.pop() if len(weights) == 1 else None

    def to_dict(self) -> dict:
        c = self.code
        out = {
            "format": FORMAT_TAG,
            "m": c.m,
            "n": c.n,
            "d": c.d,
            "x": c.x,
            "weight": self.weight,
            "blocks": [[p + 1 for p in support(mk)] for mk in c.masks()],
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


_NUMBER_LIST = re.compile(r"\[\s*(-?\d+(?:,\s*-?\d+)*)\s*\]")


def serialize(cf: CodeFile) -> str:
    """Indented JSON with each block kept on one line."""
    text = json.dumps(cf.to_dict(), indent=2)
    inline = _NUMBER_LIST.sub(lambda mt: "[" + re.sub(r"\s+", "", mt.group(1)).replace(",", ", ") + "]", text)
    return inline + "\n"


def parse(text: str) -> CodeFile:
    try:
        data = json.loads(text)
        m, d, x = int(data["m"]), int(data["d"]), int(data["x"])
        raw = [[int(p) - 1 for p in block] for block in data["blocks"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed code file: {exc}") from None
    for block in raw:
        if any(not 0 <= p < m for p in block):
            raise ValueError(f"block {[p + 1 for p in block]} has a point outside 1..{m}")
    if raw and all(len(b) == 3 for b in raw):
        blocks = tuple(Triple(b) for b in raw)
    else:
        blocks = tuple(BitColumn.from_support(b, m) for b in raw)
    return CodeFile(XCode(m, d, x, blocks), data.get("certificate"))


def to_matrix(code: XCode) -> str:
    """``m`` lines of ``n`` characters, columns in block order."""
    masks = code.masks()
    lines = ["".join("1" if (mk >> row) & 1 else "0" for mk in masks) for row in range(code.m)]
    return "\n".join(lines) + "\n"


def from_matrix(text: str, d: int, x: int) -> XCode:
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [r for r in rows if r and not r.startswith("#")]
    if not rows:
        raise ValueError("empty matrix")
    n = len(rows[0])
    if any(len(r) != n for r in rows) or any(ch not in "01" for r in rows for ch in r):
        raise ValueError("matrix rows must be equal-length strings over {0,1}")
    m = len(rows)
    cols = [BitColumn(sum(1 << i for i in range(m) if rows[i][j] == "1"), m) for j in range(n)]
    if cols and all(c.weight == 3 for c in cols):
        return XCode(m, d, x, tuple(Triple(support(c.bits)) for c in cols))
    return XCode(m, d, x, tuple(cols))


def looks_like_json(text: str) -> bool:
    return text.lstrip().startswith("{")
