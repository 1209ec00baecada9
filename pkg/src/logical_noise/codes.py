"""Built-in stabilizer codes, structural validation, and the code file format."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .pauli import (
    CheckMatrix,
    GroupSet,
    PauliOp,
    commutes,
    mul,
    rank_gf2,
    support_mask,
    weight,
)


class CodeParseError(ValueError):
    """Raised for a malformed code-definition file."""


class CodeValidationError(ValueError):
    """Raised when a parsed code violates the stabilizer-code invariants."""


@dataclass(frozen=True)
class StabilizerCode:
    """An [n, 1] stabilizer code: n-1 generators plus one logical X/Z pair."""

    name: str
    n: int
    generators: tuple[PauliOp, ...]
    logical_x: PauliOp
    logical_z: PauliOp

    @cached_property
    def check(self) -> CheckMatrix:
        return CheckMatrix(self.n, self.generators)

    @cached_property
    def group(self) -> GroupSet:
        # cached_property gives the single-initialization guarantee under the GIL
        return GroupSet(self.generators)

    @property
    def logical_y(self) -> PauliOp:
        return mul(self.logical_x, self.logical_z)

    def __repr__(self) -> str:
        return f"StabilizerCode({self.name!r}, n={self.n})"


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_code(code: StabilizerCode) -> ValidationReport:
    """List every violated structural invariant; an empty report means valid."""
    report = ValidationReport()
    v = report.violations
    if len(code.generators) != code.n - 1:
        v.append(
            f"expected {code.n - 1} generators for a [{code.n}, 1] code, "
            f"got {len(code.generators)}"
        )
    for op in (*code.generators, code.logical_x, code.logical_z):
        if op.n != code.n:
            v.append(f"operator {op} is not on {code.n} qubits")
            return report
    gens = code.generators
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            if commutes(a, b):
                v.append(f"generators {a} and {b} anticommute")
    if rank_gf2(gens, code.n) != len(gens):
        v.append("generators are dependent over GF(2)")
    if not report.ok:
        return report
    for lbl, op in (("logical_x", code.logical_x), ("logical_z", code.logical_z)):
        bad = [str(g) for g in gens if commutes(g, op)]
        if bad:
            v.append(f"{lbl} anticommutes with generator(s) {', '.join(bad)}")
    if commutes(code.logical_x, code.logical_z) != 1:
        v.append("logical_x and logical_z do not anticommute")
    group = GroupSet(gens)
    for lbl, op in (("logical_x", code.logical_x), ("logical_z", code.logical_z)):
        if op in group:
            v.append(f"{lbl} is in the stabilizer group")
    return report


def _code(name, gens, xl, zl):
    p = PauliOp.from_string
    return StabilizerCode(
        name=name,
        n=len(xl),
        generators=tuple(p(g) for g in gens),
        logical_x=p(xl),
        logical_z=p(zl),
    )


def _build_catalog() -> dict[str, StabilizerCode]:
    codes = [
        _code("bit3", ["ZZI", "IZZ"], xl="XXX", zl="ZZZ"),
        _code("phase3", ["XXI", "IXX"], xl="ZZZ", zl="XXX"),
        _code(
            "five",
            ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"],
            xl="XXXXX",
            zl="ZZZZZ",
        ),
        _code(
            "steane",
            [
                "IIIXXXX",
                "IXXIIXX",
                "XIXIXIX",
                "IIIZZZZ",
                "IZZIIZZ",
                "ZIZIZIZ",
            ],
            xl="XXXXXXX",
            zl="ZZZZZZZ",
        ),
        _code(
            "surface9",
            [
                "XXIXXIIII",
                "IZZIZZIII",
                "IIIZZIZZI",
                "IIIIXXIXX",
                "ZIIZIIIII",
                "IXXIIIIII",
                "IIIIIIXXI",
                "IIIIIZIIZ",
            ],
            xl="XIIXIIXII",
            zl="ZZZIIIIII",
        ),
        _code(
            "shor9",
            [
                "ZZIIIIIII",
                "IZZIIIIII",
                "IIIZZIIII",
                "IIIIZZIII",
                "IIIIIIZZI",
                "IIIIIIIZZ",
                "XXXXXXIII",
                "IIIXXXXXX",
            ],
            # The repetition-of-repetitions structure swaps the logical roles.
            xl="ZZZZZZZZZ",
            zl="XXXXXXXXX",
        ),
        _code(
            "eleven",
            [
                "ZZZZZZIIIII",
                "ZYXIIIZYXII",
                "XZYIIIXZYII",
                "IIIZYXXYZII",
                "IIIXZYZXYII",
                "XXXXXXIIIII",
                "IIIZXYYYYXZ",
                "IIIXYZZZZYX",
                "ZXYIIIZZZXY",
                "YZXIIIYYYZX",
            ],
            xl="IIIIIIXXXXX",
            zl="IIIIIIZZZZZ",
        ),
    ]
    return {c.name: c for c in codes}


_CATALOG = _build_catalog()

CODE_NAMES = tuple(_CATALOG)


def get_code(name: str) -> StabilizerCode:
    """Look up a built-in code by name (bit3, phase3, five, steane, surface9,
    shor9, eleven)."""
    try:
        return _CATALOG[name]
    except KeyError:
        raise KeyError(
            f"unknown code {name!r}; available: {', '.join(_CATALOG)}"
        ) from None


def parse_code_file(text: str, name: str = "custom") -> StabilizerCode:
    """Parse the code-definition format.

    Line 1 is ``n <count>``, then n-1 generator Pauli strings, then
    ``XL <string>`` and ``ZL <string>``.  ``#`` starts a comment.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise CodeParseError("empty code definition")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "n":
        raise CodeParseError(f"first line must be 'n <count>', got {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError:
        raise CodeParseError(f"invalid qubit count {head[1]!r}") from None
    if len(lines) != 1 + (n - 1) + 2:
        raise CodeParseError(
            f"expected {n - 1} generator lines plus XL and ZL for n={n}, "
            f"got {len(lines) - 1} body lines"
        )

    def parse_op(s: str, what: str) -> PauliOp:
        try:
            op = PauliOp.from_string(s)
        except ValueError as exc:
            raise CodeParseError(f"{what}: {exc}") from None
        if op.n != n:
            raise CodeParseError(f"{what} is on {op.n} qubits, expected {n}")
        return op

    gens = tuple(
        parse_op(line, f"generator {i + 1}") for i, line in enumerate(lines[1:n])
    )
    logicals = {}
    for line in lines[n:]:
        parts = line.split()
        if len(parts) != 2 or parts[0] not in ("XL", "ZL"):
            raise CodeParseError(f"expected 'XL <string>' or 'ZL <string>', got {line!r}")
        logicals[parts[0]] = parse_op(parts[1], parts[0])
    if set(logicals) != {"XL", "ZL"}:
        raise CodeParseError("need exactly one XL line and one ZL line")
    code = StabilizerCode(name, n, gens, logicals["XL"], logicals["ZL"])
    report = validate_code(code)
    if not report.ok:
        raise CodeValidationError("; ".join(report.violations))
    return code


def format_code_file(code: StabilizerCode) -> str:
    """Inverse of :func:`parse_code_file`."""
    lines = [f"n {code.n}"]
    lines += [g.to_string() for g in code.generators]
    lines.append(f"XL {code.logical_x.to_string()}")
    lines.append(f"ZL {code.logical_z.to_string()}")
    return "\n".join(lines) + "\n"


def min_weight_in_centralizer_not_stabilizer(code: StabilizerCode, max_weight: int):
    """Smallest weight <= max_weight of an element of Z(S) \\ S, or None.

    Brute force over all Pauli errors up to max_weight; used for distance
    spot checks.
    """
    from itertools import combinations, product

    group = code.group
    check = code.check
    from .pauli import syndrome as syndrome_of

    for w in range(1, max_weight + 1):
        for qubits in combinations(range(code.n), w):
            for letters in product("XYZ", repeat=w):
                x = z = 0
                for k, ch in zip(qubits, letters):
                    if ch != "Z":
                        x |= 1 << k
                    if ch != "X":
                        z |= 1 << k
                op = PauliOp(code.n, x, z)
                if syndrome_of(check, op) == 0 and op not in group:
                    return w
    return None
