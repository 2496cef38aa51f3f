"""Reconstruction of the classic tic-tac-toe endgame dataset.

Enumerates every board reachable in play (x moves first) at the moment
the game ends — a completed three-in-a-row or a full board — and labels
it positive when x has won. The enumeration yields exactly 958 distinct
boards (626 positive, 332 negative), matching the published benchmark,
so the package always has one real evaluation dataset available offline.
"""

from __future__ import annotations

from .data import Dataset, load_dataset

SQUARE_NAMES = (
    "top-left-square",
    "top-middle-square",
    "top-right-square",
    "middle-left-square",
    "middle-middle-square",
    "middle-right-square",
    "bottom-left-square",
    "bottom-middle-square",
    "bottom-right-square",
)

CLASS_NAME = "class"

_LINES = (
    (0, 1, 2), (3, 4, 5), (6, 7, 8),  # rows
    (0, 3, 6), (1, 4, 7), (2, 5, 8),  # columns
    (0, 4, 8), (2, 4, 6),             # diagonals
)


def _winner(board: str) -> str | None:
    for a, b, c in _LINES:
        if board[a] != "b" and board[a] == board[b] == board[c]:
            return board[a]
    return None


def terminal_boards() -> list[str]:
    """All end-of-game boards, sorted; 9-character strings over {x,o,b}."""
    visited: set[str] = set()
    boards: set[str] = set()

    def play(board: str, to_move: str) -> None:
        if board in visited:
            return
        visited.add(board)
        if _winner(board) is not None or "b" not in board:
            boards.add(board)
            return
        other = "o" if to_move == "x" else "x"
        for i in range(9):
            if board[i] == "b":
                play(board[:i] + to_move + board[i + 1:], other)

    play("b" * 9, "x")
    return sorted(boards)


def endgame_rows() -> list[tuple[str, ...]]:
    """One row per terminal board: nine square values plus the label
    ('positive' iff x completed three in a row)."""
    rows = []
    for board in terminal_boards():
        label = "positive" if _winner(board) == "x" else "negative"
        rows.append(tuple(board) + (label,))
    return rows


def write_endgame_csv(path) -> None:
    lines = [",".join(SQUARE_NAMES + (CLASS_NAME,))]
    lines.extend(",".join(row) for row in endgame_rows())
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def endgame_dataset(path=None) -> Dataset:
    """The endgame benchmark as a Dataset; writes and loads a CSV when a
    path is given, otherwise builds it in memory."""
    if path is not None:
        write_endgame_csv(path)
        return load_dataset(path, CLASS_NAME, name="tictactoe")
    rows = endgame_rows()
    columns = {
        name: [row[i] for row in rows]
        for i, name in enumerate(SQUARE_NAMES + (CLASS_NAME,))
    }
    return Dataset.from_tokens(columns, CLASS_NAME, name="tictactoe")
