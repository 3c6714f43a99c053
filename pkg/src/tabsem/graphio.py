"""Graph files and deterministic rendering of path results.

Graph file lines are ``tail head weight [label]``; a line holding a single
token declares a state with no arrows. ``#`` starts a comment line.
"""
from __future__ import annotations

import json
import math

from .errors import (
    DuplicateLabelError,
    InvalidLetterError,
    NegativeWeightError,
    ParseError,
)
from .scalars import format_value, parse_value
from .semimatrix import Arrow, SquareMatrix, WeightedGraph
from .tables import check_letter, parse_word


def parse_graph(text: str) -> WeightedGraph:
    states = {}
    arrows = []
    labels = set()
    pending = []  # (lineno, index) of unlabeled arrows, filled in after all user labels are known
    for lineno, line in enumerate(text.splitlines(), start=1):
        fields = line.split()
        if not fields or fields[0].startswith("#"):
            continue
        if len(fields) == 1:
            states.setdefault(fields[0], None)
            continue
        if len(fields) not in (3, 4):
            raise ParseError(f"expected 'tail head weight [label]', got {line.strip()!r}", lineno)
        tail, head, raw_weight = fields[:3]
        try:
            weight = parse_value(raw_weight)
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None
        if weight < 0:
            raise NegativeWeightError(f"line {lineno}: negative weight {raw_weight}")
        states.setdefault(tail, None)
        states.setdefault(head, None)
        label = None
        if len(fields) == 4:
            label = fields[3]
            try:
                check_letter(label)
            except InvalidLetterError as exc:
                raise ParseError(str(exc), lineno) from None
            if label in labels:
                raise DuplicateLabelError(f"line {lineno}: label {label!r} used twice")
            labels.add(label)
        else:
            pending.append((lineno, len(arrows)))
        arrows.append([tail, head, weight, label])
    for lineno, k in pending:
        label = f"e{k}"
        if label in labels:
            raise DuplicateLabelError(f"line {lineno}: generated label {label!r} is already in use")
        labels.add(label)
        arrows[k][3] = label
    return WeightedGraph(tuple(states), tuple(Arrow(*a) for a in arrows))


def render_graph(g: WeightedGraph) -> str:
    """Canonical text: every state declared in order, then one line per arrow."""
    lines = list(g.states)
    lines += [f"{a.tail} {a.head} {format_value(a.weight)} {a.label}" for a in g.arrows]
    return "".join(line + "\n" for line in lines)


def _address_word(w) -> str:
    # addresses always use the dotted join, even for one multi-character letter
    return ".".join(w) if w else "@eps"


def apsp_records(g: WeightedGraph, result: SquareMatrix) -> list:
    records = []
    for i, src in enumerate(g.states):
        for j, dst in enumerate(g.states):
            m = result[i, j]
            records.append((src, dst, m.cost, [_address_word(w) for w in m.sorted_addresses()]))
    return records


def render_apsp(g: WeightedGraph, result: SquareMatrix, fmt: str = "tsv") -> str:
    records = apsp_records(g, result)
    if fmt == "tsv":
        out = []
        for src, dst, cost, addresses in records:
            addr = ",".join(addresses) if addresses else "{}"
            out.append(f"{src}\t{dst}\t{format_value(cost)}\t{addr}\n")
        return "".join(out)
    if fmt == "json":
        rows = []
        for src, dst, cost, addresses in records:
            if math.isinf(cost):
                cost = "inf"
            elif cost == int(cost):
                cost = int(cost)
            rows.append({"src": src, "dst": dst, "cost": cost, "addresses": addresses})
        return json.dumps(rows, indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def parse_morphism(text: str) -> dict:
    """Letter map file: ``letter<TAB>word`` per line, ``@eps`` for the empty image."""
    h = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        fields = line.split()
        if not fields or fields[0].startswith("#"):
            continue
        if len(fields) != 2:
            raise ParseError(f"expected 'letter word', got {line.strip()!r}", lineno)
        letter, image = fields
        if letter in h:
            raise ParseError(f"letter {letter!r} mapped twice", lineno)
        try:
            check_letter(letter)
            h[letter] = parse_word(image)
        except (InvalidLetterError, ParseError) as exc:
            raise ParseError(str(exc), lineno) from None
    return h
