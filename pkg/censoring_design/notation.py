#!/usr/bin/env python3
# encoding : utf-8
# create at: 2026/9/20-下午4:12
# compact scheme notation: "a*b" stands for b consecutive removals of a, e.g. "0*3,5" is (0,0,0,5)
import itertools
import re
from typing import List

from censoring_design import errors
from censoring_design.scheme import CensoringScheme, count_schemes


def capture(*res: str):
    return f"({''.join(res)})"


def anchored(*res: str):
    return f"^{''.join(res)}$"


__count = r"[0-9]+"
TokenRegexp = re.compile(anchored(capture(__count), r"(?:\s*\*\s*", capture(__count), r")?"))


def _expand(text: str) -> List[int]:
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    removals: List[int] = []
    for token in body.split(","):
        match = TokenRegexp.match(token.strip())
        if match is None:
            raise errors.SchemeNotationError(token, "expected an integer or a*b")
        value, repeat = match.groups()
        if repeat is not None and int(repeat) < 1:
            raise errors.SchemeNotationError(token, "repeat count must be >= 1")
        removals.extend([int(value)] * (int(repeat) if repeat is not None else 1))
    return removals


def parse_scheme_notation(text: str, n: int, m: int) -> CensoringScheme:
    count_schemes(n, m)
    removals = _expand(text)
    if len(removals) != m:
        raise errors.SchemeNotationError(text, f"expands to {len(removals)} removals, expected m={m}")
    if sum(removals) != n - m:
        raise errors.SchemeNotationError(text, f"removals sum to {sum(removals)}, expected n-m={n - m}")
    return CensoringScheme.of(n, m, removals)


def format_scheme_notation(scheme: CensoringScheme) -> str:
    tokens = []
    for value, run in itertools.groupby(scheme.removals):
        length = len(list(run))
        tokens.append(f"{value}*{length}" if length >= 2 else str(value))
    return ",".join(tokens)
