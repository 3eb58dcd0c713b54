"""Circuit file parsing and serialization.

Line-oriented format; ``#`` starts a comment, ``;`` separates statements on
one line.  Directives:

    PORT_SHUNT RC G=<f> C=<f>
    SHUNT RC G=<f> C=<f>
    SERIES STATIC KIND=TANH_PLUS_ID [MU=<f> LAMBDA=<f>]
    SERIES STATIC KIND=SATURATION LIMIT=<f> [MU=<f> LAMBDA=<f>]
    SERIES STATIC KIND=LINEAR R=<f>
    SERIES STATIC KIND=PWL FILE=<path> [MU=<f> LAMBDA=<f>]
    REPEAT <k> ... END        (non-nested)

Consecutive series or shunt statements are joined with inert Open/Short
fillers so the stored chain alternates.  PWL files are resolved relative to
the circuit file and hold the impedance map (voltage per current); builtin
static kinds are stored admittance-oriented, matching how they enter the
node equations.
"""

from __future__ import annotations

from pathlib import Path

from .elements import (
    CircuitChain,
    Element,
    LinearResistor,
    Open,
    Orientation,
    PwlTable,
    Saturation,
    SectorBound,
    Short,
    ShuntRC,
    StaticNL,
    TanhPlusId,
    load_pwl,
    save_pwl,
    static_nl,
)

__all__ = ["ParseError", "parse_circuit_file", "load_circuit", "serialize_chain", "write_circuit_file"]


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{where}")


def _statements(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        code = raw.split("#", 1)[0]
        for piece in code.split(";"):
            tokens = piece.split()
            if tokens:
                out.append((lineno, tokens))
    return out


def _attrs(tokens: list[str], lineno: int) -> dict[str, str]:
    attrs = {}
    for tok in tokens:
        if "=" not in tok:
            raise ParseError(f"expected key=value, got {tok!r}", lineno)
        key, value = tok.split("=", 1)
        attrs[key.upper()] = value
    return attrs


def _number(attrs: dict[str, str], key: str, lineno: int) -> float:
    if key not in attrs:
        raise ParseError(f"missing attribute {key}", lineno)
    try:
        return float(attrs[key])
    except ValueError:
        raise ParseError(f"malformed number for {key}: {attrs[key]!r}", lineno) from None


def _sector_override(attrs: dict[str, str], lineno: int) -> SectorBound | None:
    has_mu, has_lam = "MU" in attrs, "LAMBDA" in attrs
    if has_mu != has_lam:
        raise ParseError("MU and LAMBDA must be given together", lineno)
    if not has_mu:
        return None
    return SectorBound(_number(attrs, "MU", lineno), _number(attrs, "LAMBDA", lineno))


def _series_element(tokens: list[str], lineno: int, base_dir: Path | None) -> Element:
    if not tokens or tokens[0].upper() != "STATIC":
        raise ParseError("SERIES supports only STATIC elements", lineno)
    attrs = _attrs(tokens[1:], lineno)
    kind = attrs.get("KIND", "").upper()
    sector = _sector_override(attrs, lineno)
    if kind == "TANH_PLUS_ID":
        if sector is not None:
            return StaticNL(TanhPlusId(), Orientation.ADMITTANCE, sector)
        return static_nl(TanhPlusId(), Orientation.ADMITTANCE)
    if kind == "SATURATION":
        limit = _number(attrs, "LIMIT", lineno)
        if sector is not None:
            return StaticNL(Saturation(limit), Orientation.ADMITTANCE, sector)
        return static_nl(Saturation(limit), Orientation.ADMITTANCE)
    if kind == "LINEAR":
        return LinearResistor(_number(attrs, "R", lineno))
    if kind == "PWL":
        if "FILE" not in attrs:
            raise ParseError("PWL element needs FILE=<path>", lineno)
        path = Path(attrs["FILE"])
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        try:
            table = load_pwl(path.read_text())
        except OSError as exc:
            raise ParseError(f"cannot read PWL file {path}: {exc}", lineno) from exc
        if sector is not None:
            return StaticNL(table, Orientation.IMPEDANCE, sector)
        return static_nl(table, Orientation.IMPEDANCE)
    raise ParseError(f"unknown static kind {attrs.get('KIND')!r}", lineno)


def _shunt_element(tokens: list[str], lineno: int) -> Element:
    if not tokens or tokens[0].upper() != "RC":
        raise ParseError("SHUNT supports only RC elements", lineno)
    attrs = _attrs(tokens[1:], lineno)
    return ShuntRC(_number(attrs, "G", lineno), _number(attrs, "C", lineno))


def parse_circuit_file(text: str, base_dir: str | Path | None = None) -> CircuitChain:
    """Parse circuit text into a chain; errors carry the offending line."""
    base = Path(base_dir) if base_dir is not None else None
    statements = _statements(text)

    # expand REPEAT blocks (non-nested)
    expanded: list[tuple[int, list[str]]] = []
    i = 0
    while i < len(statements):
        lineno, tokens = statements[i]
        if tokens[0].upper() == "REPEAT":
            if len(tokens) != 2:
                raise ParseError("REPEAT needs a count", lineno)
            try:
                count = int(tokens[1])
            except ValueError:
                raise ParseError(f"malformed repeat count {tokens[1]!r}", lineno) from None
            if count < 0:
                raise ParseError("repeat count must be nonnegative", lineno)
            block = []
            i += 1
            while i < len(statements) and statements[i][1][0].upper() != "END":
                if statements[i][1][0].upper() == "REPEAT":
                    raise ParseError("nested REPEAT blocks are not supported", statements[i][0])
                block.append(statements[i])
                i += 1
            if i >= len(statements):
                raise ParseError("REPEAT block missing END", lineno)
            i += 1  # consume END
            expanded.extend(block * count)
        elif tokens[0].upper() == "END":
            raise ParseError("END without REPEAT", lineno)
        else:
            expanded.append((lineno, tokens))
            i += 1

    slots: list[Element] = []

    def push(element: Element, want: Orientation, lineno: int) -> None:
        parity = Orientation.IMPEDANCE if len(slots) % 2 == 0 else Orientation.ADMITTANCE
        if parity is not want:
            slots.append(Short() if parity is Orientation.IMPEDANCE else Open())
        slots.append(element)

    for idx, (lineno, tokens) in enumerate(expanded):
        directive = tokens[0].upper()
        if directive == "PORT_SHUNT":
            if idx != 0:
                raise ParseError("PORT_SHUNT must be the first directive", lineno)
            push(_shunt_element(tokens[1:], lineno), Orientation.ADMITTANCE, lineno)
        elif directive == "SHUNT":
            push(_shunt_element(tokens[1:], lineno), Orientation.ADMITTANCE, lineno)
        elif directive == "SERIES":
            push(_series_element(tokens[1:], lineno, base), Orientation.IMPEDANCE, lineno)
        else:
            raise ParseError(f"unknown directive {tokens[0]!r}", lineno)

    if not slots:
        raise ParseError("no port element")
    return CircuitChain(tuple(slots))


def load_circuit(path: str | Path) -> CircuitChain:
    path = Path(path)
    return parse_circuit_file(path.read_text(), base_dir=path.parent)


def _format_static(e: StaticNL, pwl_name: str | None) -> str:
    sector = f" MU={e.sector.mu:.17g} LAMBDA={e.sector.lam:.17g}"
    if isinstance(e.map, TanhPlusId):
        if e.orientation is not Orientation.ADMITTANCE:
            raise ValueError("cannot serialize an impedance-oriented TANH_PLUS_ID")
        return f"SERIES STATIC KIND=TANH_PLUS_ID{sector}"
    if isinstance(e.map, Saturation):
        if e.orientation is not Orientation.ADMITTANCE:
            raise ValueError("cannot serialize an impedance-oriented SATURATION")
        return f"SERIES STATIC KIND=SATURATION LIMIT={e.map.limit:.17g}{sector}"
    if isinstance(e.map, PwlTable):
        if e.orientation is not Orientation.IMPEDANCE:
            raise ValueError("cannot serialize an admittance-oriented PWL element")
        assert pwl_name is not None
        return f"SERIES STATIC KIND=PWL FILE={pwl_name}{sector}"
    raise ValueError(f"cannot serialize static map {type(e.map).__name__}")


def serialize_chain(chain: CircuitChain, pwl_prefix: str = "tail") -> tuple[str, dict[str, str]]:
    """Circuit text plus any PWL side files, as {name: contents}.

    Inert fillers are skipped; the parser reinserts them, so parsing the
    output reproduces the chain.
    """
    lines: list[str] = []
    side: dict[str, str] = {}
    for k, e in enumerate(chain.slots):
        if isinstance(e, (Short, Open)):
            continue  # filler
        if isinstance(e, ShuntRC):
            word = "PORT_SHUNT" if not lines and k == 1 else "SHUNT"
            lines.append(f"{word} RC G={e.conductance:.17g} C={e.capacitance:.17g}")
        elif isinstance(e, LinearResistor):
            if chain.slot_orientation(k) is Orientation.IMPEDANCE:
                lines.append(f"SERIES STATIC KIND=LINEAR R={e.resistance:.17g}")
            else:
                lines.append(f"SHUNT RC G={1.0 / e.resistance:.17g} C=0")
        elif isinstance(e, StaticNL):
            name = None
            if isinstance(e.map, PwlTable):
                name = f"{pwl_prefix}_{len(side)}.pwl"
                side[name] = save_pwl(e.map)
            lines.append(_format_static(e, name))
        else:
            raise ValueError(f"cannot serialize {type(e).__name__}")
    return "\n".join(lines) + "\n", side


def write_circuit_file(chain: CircuitChain, path: str | Path) -> list[Path]:
    """Write the circuit and its PWL side files next to it; returns all paths."""
    path = Path(path)
    text, side = serialize_chain(chain, pwl_prefix=path.stem)
    written = [path]
    path.write_text(text)
    for name, contents in side.items():
        side_path = path.parent / name
        side_path.write_text(contents)
        written.append(side_path)
    return written
