"""Text formats: matrices, partitions, chain manifests and TF-chain manifests.

Matrix files start with a ``rows cols`` header followed by one line per row.
Partition files hold lines ``I: e e|e`` listing each vertex's blocks as edge
labels ``i->j#k``; vertices that are not listed keep a single block.
Manifests refer to other files by paths relative to the manifest.
"""

from pathlib import Path

import numpy as np

from . import _arith
from .errors import MalformedInput
from .graph_core import from_matrix
from .splitting import in_partition, out_partition, out_split
from .sse import ElementaryEquivalence, SSEChain
from .transpose_free import DIRECT, OUT_AMALGAMATE, OUT_SPLIT, TRANSPOSED, TFChain, make_step


def parse_matrix(text):
    rows = []
    header = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values = [int(tok) for tok in line.split()]
        except ValueError:
            raise MalformedInput(f"non-integer entry in line {line!r}") from None
        if header is None:
            if len(values) != 2:
                raise MalformedInput("matrix header must be 'rows cols'")
            header = values
            continue
        rows.append(values)
    if header is None:
        raise MalformedInput("empty matrix file")
    r, c = header
    if len(rows) != r or any(len(row) != c for row in rows):
        raise MalformedInput(f"header says {r}x{c} but body does not match")
    if any(v < 0 for row in rows for v in row):
        raise MalformedInput("matrix entries must be nonnegative")
    return _arith.as_int_array(np.array(rows, dtype=object).reshape(r, c))


def format_matrix(M):
    M = np.asarray(M)
    lines = [f"{M.shape[0]} {M.shape[1]}"]
    lines += [" ".join(str(int(v)) for v in row) for row in M]
    return "\n".join(lines) + "\n"


def read_matrix(path):
    return parse_matrix(Path(path).read_text())


def _partition_lines(G, text):
    blocks = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise MalformedInput(f"expected 'I: blocks', got {line!r}")
        head, body = line.split(":", 1)
        try:
            v = int(head.strip()) - 1
        except ValueError:
            raise MalformedInput(f"bad vertex {head.strip()!r}") from None
        if not 0 <= v < G.n_vertices:
            raise MalformedInput(f"vertex {v + 1} out of range")
        if v in blocks:
            raise MalformedInput(f"vertex {v + 1} listed twice")
        blocks[v] = [[G.edge_by_label(lbl).id for lbl in part.split()] for part in body.split("|")]
    return blocks


def parse_out_partition(G, text):
    return out_partition(G, _partition_lines(G, text))


def parse_in_partition(G, text):
    return in_partition(G, _partition_lines(G, text))


def format_partition(G, P):
    lines = []
    for v, vblocks in enumerate(P.blocks):
        body = " | ".join(" ".join(G.edges[e].label for e in block) for block in vblocks)
        lines.append(f"{v + 1}: {body}")
    return "\n".join(lines) + "\n"


def _manifest_lines(path):
    path = Path(path)
    for raw in path.read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield path.parent, line.split()


def read_chain_manifest(path):
    """Lines ``step <C-file> <D-file>``; intermediate matrices are cross-checked."""
    steps = []
    for base, tok in _manifest_lines(path):
        if tok[0] != "step" or len(tok) != 3:
            raise MalformedInput(f"expected 'step <C> <D>', got {' '.join(tok)!r}")
        C = read_matrix(base / tok[1])
        D = read_matrix(base / tok[2])
        steps.append(ElementaryEquivalence.from_witness(C, D))
    if not steps:
        raise MalformedInput("chain manifest has no steps")
    return SSEChain(tuple(steps))


def read_tf_manifest(path):
    """Lines ``tf <side> <move> <matrix-file> <partition-file>``.

    The matrix file holds the unsplit matrix in its direct orientation; the
    partition lists out-edge blocks of the graph on the stated side (the
    transposed graph when ``side`` is ``transposed``).
    """
    steps = []
    for base, tok in _manifest_lines(path):
        if tok[0] != "tf" or len(tok) != 5:
            raise MalformedInput(f"expected 'tf <side> <move> <matrix> <partition>', got {' '.join(tok)!r}")
        side, move = tok[1], tok[2]
        if side not in (DIRECT, TRANSPOSED) or move not in (OUT_SPLIT, OUT_AMALGAMATE):
            raise MalformedInput(f"unknown side/move {side}/{move}")
        M = read_matrix(base / tok[3])
        if side == TRANSPOSED:
            M = M.T
        G = from_matrix(M)
        P = parse_out_partition(G, (base / tok[4]).read_text())
        steps.append(make_step(out_split(G, P), side, move))
    if not steps:
        raise MalformedInput("tf manifest has no steps")
    return TFChain(tuple(steps))
