"""Text formats shared by the command line: string files, alignment files,
scoring schemes.  DAG and bundle formats live with their types."""

from __future__ import annotations

from .diploid import PairwiseAlignment
from .errors import InputError
from .strings_core import GAP, NEG_INFINITY, Alphabet, ScoringScheme


def _header(lines: list[str], kind: str) -> Alphabet:
    if not lines:
        raise InputError(f"empty {kind} file")
    parts = lines[0].split()
    if len(parts) != 2 or parts[0] != "alphabet":
        raise InputError(f"{kind} file must start with 'alphabet <symbols>'")
    return Alphabet(parts[1])


def parse_string_file(text: str) -> tuple[Alphabet, str]:
    """``alphabet <chars>`` then at most one string line (absent means empty)."""
    lines = text.splitlines()
    alpha = _header(lines, "string")
    body = [ln.strip() for ln in lines[1:] if ln.strip()]
    if len(body) > 1:
        raise InputError("a string file holds a single string")
    return alpha, alpha.validate(body[0] if body else "")


def format_string_file(alpha: Alphabet, s: str) -> str:
    return f"alphabet {alpha.symbols}\n{s}\n"


def parse_alignment_file(text: str) -> tuple[Alphabet, list[PairwiseAlignment]]:
    """``alphabet <chars>`` then pairs of gapped rows, pairs separated by blank lines."""
    lines = text.splitlines()
    alpha = _header(lines, "alignment")
    blocks: list[list[str]] = [[]]
    for ln in lines[1:]:
        if ln.strip():
            blocks[-1].append(ln.strip())
        elif blocks[-1]:
            blocks.append([])
    blocks = [b for b in blocks if b]
    if not blocks:
        raise InputError("alignment file holds no alignment")
    out = []
    for b in blocks:
        if len(b) != 2:
            raise InputError(f"an alignment has two rows, got {len(b)}")
        for row in b:
            alpha.validate(row, allow_gap=True)
        out.append(PairwiseAlignment(b[0], b[1]))
    return alpha, out


def format_alignment_file(alpha: Alphabet, alignments) -> str:
    blocks = [f"{a.row_a}\n{a.row_b}\n" for a in alignments]
    return f"alphabet {alpha.symbols}\n" + "\n".join(blocks)


def parse_scheme(text: str) -> ScoringScheme:
    """Inverse of :meth:`ScoringScheme.format`."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0][0] != "scheme" or lines[0][-1] != GAP:
        raise InputError("scheme file must start with 'scheme <symbols> -'")
    syms = lines[0][1:]
    alpha = Alphabet("".join(syms[:-1]))
    if len(lines) != len(syms) + 1:
        raise InputError("scheme needs one row per symbol")
    table = {}
    for row in lines[1:]:
        if len(row) != len(syms) + 1 or row[0] not in syms:
            raise InputError(f"bad scheme row {' '.join(row)!r}")
        for b, v in zip(syms, row[1:]):
            try:
                table[row[0], b] = NEG_INFINITY if v == "-inf" else int(v)
            except ValueError:
                raise InputError(f"bad score {v!r}") from None
    return ScoringScheme(alpha, table)
