"""Line-oriented netlist text format.

::

    # comment
    R1 1 0 50
    Cc 2 1 5f
    PORT 2 0

Element lines are ``<K><label> <n1> <n2> <value>`` with ``K`` one of R, L, C;
the whole first token is the element label. Exactly one ``PORT`` line is
required. Values accept the SI suffixes f p n u m k M G.
"""

from __future__ import annotations

from .circuit import KINDS, Element, Netlist
from .errors import InvalidElement, InvalidNetlist, ParseError
from .units import parse_si


def _node(token: str, lineno: int) -> int:
    if not token.isdigit():
        raise ParseError(lineno, f"node id {token!r} is not a non-negative integer")
    return int(token)


def parse_netlist(text: str) -> Netlist:
    elements: list[Element] = []
    labels: set[str] = set()
    port = None
    port_line = None
    lineno = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        head = fields[0]

        if head == "PORT":
            if port is not None:
                raise ParseError(lineno, f"second PORT line (first on line {port_line})")
            if len(fields) != 3:
                raise ParseError(lineno, "PORT line needs exactly two node ids")
            port = (_node(fields[1], lineno), _node(fields[2], lineno))
            port_line = lineno
            continue

        kind = head[0]
        if kind not in KINDS:
            raise ParseError(lineno, f"unknown element kind {kind!r} in {head!r}")
        if len(fields) != 4:
            raise ParseError(lineno, f"expected '<label> <n1> <n2> <value>', got {len(fields)} fields")
        if head in labels:
            raise ParseError(lineno, f"duplicate label {head!r}")
        try:
            value = parse_si(fields[3])
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
        n1 = _node(fields[1], lineno)
        n2 = _node(fields[2], lineno)
        try:
            elements.append(Element(kind, n1, n2, value, head))
        except InvalidElement as exc:
            raise ParseError(lineno, str(exc)) from None
        labels.add(head)

    if port is None:
        raise ParseError(lineno + 1, "missing PORT line")
    try:
        return Netlist(tuple(elements), port)
    except InvalidNetlist as exc:
        raise ParseError(port_line, str(exc)) from None


def serialize_netlist(net: Netlist, header: str | None = None) -> str:
    """Render ``net`` in the text format; ``parse_netlist`` inverts this exactly."""
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    for e in net.elements:
        lines.append(f"{e.label} {e.n1} {e.n2} {e.value!r}")
    lines.append(f"PORT {net.port[0]} {net.port[1]}")
    return "\n".join(lines) + "\n"


def read_netlist(path) -> Netlist:
    with open(path, encoding="utf-8") as fh:
        return parse_netlist(fh.read())
