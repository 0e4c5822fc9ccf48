"""The :mod:`~feeder_scheduler.models.network.case` submodule loads radial distribution
cases.

A case file is a plain text file split into sections, each introduced by a header in
square brackets and holding comma separated rows with a column header line:

.. code-block:: text

    [bus]
    id,p_kw,q_kvar
    1,0,0
    2,100,60
    [line]
    from,to,r_ohm,x_ohm,amp
    1,2,0.0922,0.0470,
    [der]
    node,type,rating
    2,BESS,3000

The ``bus`` and ``line`` sections are required and the ``der`` section is optional. The
``amp`` column may be missing or left empty, in which case the configured default
ampacity is used. DER types are ``SPV``, ``WT``, ``MT`` and ``BESS``, with ratings in kW
(kWh for BESS). Blank lines and lines starting with ``#`` are ignored.

Loading checks that the lines form a tree rooted at the substation (bus 1) and that
every DER sits on a known bus. The resulting
:class:`~feeder_scheduler.models.network.case.CaseData` also holds the
bus-injection-to-branch-current matrix used by the power flow solver.
"""  # noqa: D205, D415

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from io import StringIO
from pathlib import Path

import numpy as np
import pandas as pd
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components

from feeder_scheduler.core.exceptions import (
    CaseReferenceError,
    InputError,
    TopologyError,
)
from feeder_scheduler.core.logger import LOGGER
from feeder_scheduler.models.network.constants import NetworkConsts

DER_KINDS: tuple[str, ...] = ("SPV", "WT", "MT", "BESS")
"""The supported DER placement types."""

SECTION_COLUMNS: dict[str, tuple[str, ...]] = {
    "bus": ("id", "p_kw", "q_kvar"),
    "line": ("from", "to", "r_ohm", "x_ohm"),
    "der": ("node", "type", "rating"),
}
"""The required columns of each case file section."""

_SECTION_HEADER = re.compile(r"^\[(\w+)\]$")


@dataclass(frozen=True)
class Bus:
    """A feeder bus and its nominal demand."""

    id: int
    """The bus id."""
    p_load: float
    """Nominal active demand, [kW]."""
    q_load: float
    """Nominal reactive demand, [kVar]."""


@dataclass(frozen=True)
class Line:
    """A feeder line."""

    from_bus: int
    """The bus id at one end of the line."""
    to_bus: int
    """The bus id at the other end of the line."""
    r: float
    """Resistance, [ohm]."""
    x: float
    """Reactance, [ohm]."""
    ampacity: float
    """Current limit, [A]."""


@dataclass(frozen=True)
class DerPlacement:
    """A DER unit placed on a bus."""

    node: int
    """The bus id hosting the unit."""
    kind: str
    """One of ``SPV``, ``WT``, ``MT`` or ``BESS``."""
    rating: float
    """Rated power [kW], or energy capacity [kWh] for a BESS."""


@dataclass
class CaseData:
    """A radial distribution case.

    The derived arrays are computed from the buses and lines on creation and are read
    only. Bus arrays follow the order of :attr:`buses` and line arrays the order of
    :attr:`lines`.

    Raises:
        TopologyError: if the lines do not form a tree rooted at the substation.
        CaseReferenceError: if a line or DER placement refers to an unknown bus.
    """

    buses: tuple[Bus, ...]
    """The feeder buses."""
    lines: tuple[Line, ...]
    """The feeder lines."""
    ders: tuple[DerPlacement, ...] = ()
    """The DER placements."""
    digest: str = ""
    """A digest of the case source, used to check that compared runs share a case."""

    bus_index: dict[int, int] = field(init=False)
    """Mapping of bus id to position in the bus arrays."""
    root: int = field(init=False)
    """Position of the substation bus."""
    p_load: np.ndarray = field(init=False)
    """Nominal active demand per bus, [kW]."""
    q_load: np.ndarray = field(init=False)
    """Nominal reactive demand per bus, [kVar]."""
    r: np.ndarray = field(init=False)
    """Line resistances, [ohm]."""
    x: np.ndarray = field(init=False)
    """Line reactances, [ohm]."""
    ampacity: np.ndarray = field(init=False)
    """Line current limits, [A]."""
    bfs_order: np.ndarray = field(init=False)
    """Bus positions in breadth first order from the substation."""
    parent: np.ndarray = field(init=False)
    """Position of the upstream bus of each bus, -1 for the substation."""
    line_child: np.ndarray = field(init=False)
    """Position of the downstream bus of each line."""
    bibc: np.ndarray = field(init=False)
    """Bus-injection-to-branch-current matrix.

    Rows are lines, columns are the non-substation buses in bus order. An entry is one
    when the bus lies downstream of the line.
    """

    def __post_init__(self) -> None:
        ids = [bus.id for bus in self.buses]
        if len(set(ids)) != len(ids):
            to_raise = InputError("Duplicate bus ids in case")
            LOGGER.critical(to_raise)
            raise to_raise

        self.bus_index = {bus_id: idx for idx, bus_id in enumerate(ids)}

        if NetworkConsts.substation_bus not in self.bus_index:
            to_raise = TopologyError(
                f"Substation bus {NetworkConsts.substation_bus} missing from case"
            )
            LOGGER.critical(to_raise)
            raise to_raise

        self.root = self.bus_index[NetworkConsts.substation_bus]
        self._check_elements()

        self.p_load = _read_only([bus.p_load for bus in self.buses])
        self.q_load = _read_only([bus.q_load for bus in self.buses])
        self.r = _read_only([line.r for line in self.lines])
        self.x = _read_only([line.x for line in self.lines])
        self.ampacity = _read_only([line.ampacity for line in self.lines])

        self._build_tree()

    def _check_elements(self) -> None:
        """Check the values and references of lines and DER placements."""

        for bus in self.buses:
            if not (bus.p_load >= 0 and np.isfinite(bus.q_load)):
                to_raise = InputError(f"Invalid demand at bus {bus.id}")
                LOGGER.critical(to_raise)
                raise to_raise

        for line in self.lines:
            if line.from_bus == line.to_bus:
                to_raise = TopologyError(
                    f"Line {line.from_bus}->{line.to_bus} is a self loop"
                )
                LOGGER.critical(to_raise)
                raise to_raise
            for end in (line.from_bus, line.to_bus):
                if end not in self.bus_index:
                    to_raise = CaseReferenceError(
                        f"Line {line.from_bus}->{line.to_bus} refers to unknown "
                        f"bus {end}"
                    )
                    LOGGER.critical(to_raise)
                    raise to_raise
            if not (line.r >= 0 and line.x >= 0 and line.ampacity > 0):
                to_raise = InputError(
                    f"Line {line.from_bus}->{line.to_bus} needs r >= 0, x >= 0 "
                    "and a positive ampacity"
                )
                LOGGER.critical(to_raise)
                raise to_raise

        for der in self.ders:
            if der.node not in self.bus_index:
                to_raise = CaseReferenceError(
                    f"{der.kind} placed at unknown node {der.node}"
                )
                LOGGER.critical(to_raise)
                raise to_raise
            if der.kind not in DER_KINDS:
                to_raise = InputError(f"Unknown DER type {der.kind} at {der.node}")
                LOGGER.critical(to_raise)
                raise to_raise
            if not der.rating > 0:
                to_raise = InputError(f"{der.kind} at {der.node} needs a rating > 0")
                LOGGER.critical(to_raise)
                raise to_raise

    def _build_tree(self) -> None:
        """Check the radial topology and build the sweep matrices."""

        n_bus = len(self.buses)
        n_line = len(self.lines)

        if n_line != n_bus - 1:
            to_raise = TopologyError(
                f"{n_bus} buses need {n_bus - 1} lines for a radial feeder, "
                f"found {n_line}: the case has a cycle or is disconnected"
            )
            LOGGER.critical(to_raise)
            raise to_raise

        from_idx = np.array([self.bus_index[ln.from_bus] for ln in self.lines], int)
        to_idx = np.array([self.bus_index[ln.to_bus] for ln in self.lines], int)

        graph = coo_matrix(
            (np.ones(n_line), (from_idx, to_idx)), shape=(n_bus, n_bus)
        ).tocsr()
        n_components, _ = connected_components(graph, directed=False)
        if n_components != 1:
            to_raise = TopologyError(
                f"Case network is disconnected into {n_components} parts"
            )
            LOGGER.critical(to_raise)
            raise to_raise

        order, predecessors = breadth_first_order(
            graph, self.root, directed=False, return_predecessors=True
        )
        parent = np.where(predecessors < 0, -1, predecessors)
        self.bfs_order = _read_only(order, dtype=int)
        self.parent = _read_only(parent, dtype=int)

        line_child = np.where(parent[to_idx] == from_idx, to_idx, from_idx)
        self.line_child = _read_only(line_child, dtype=int)

        line_of_child = np.full(n_bus, -1, dtype=int)
        line_of_child[line_child] = np.arange(n_line)

        non_root = [idx for idx in range(n_bus) if idx != self.root]
        bibc = np.zeros((n_line, n_bus - 1))
        for col, bus_idx in enumerate(non_root):
            node = bus_idx
            while node != self.root:
                bibc[line_of_child[node], col] = 1.0
                node = parent[node]

        self.bibc = _read_only(bibc)

    @property
    def n_buses(self) -> int:
        """The number of buses."""
        return len(self.buses)

    @property
    def non_root(self) -> np.ndarray:
        """Positions of the buses other than the substation."""
        return np.delete(np.arange(self.n_buses), self.root)

    @property
    def head_bus(self) -> int:
        """Position of the bus at the far end of the first line leaving the root."""
        return int(self.bfs_order[1]) if self.n_buses > 1 else self.root

    def ders_of(self, kind: str) -> tuple[DerPlacement, ...]:
        """Return the DER placements of a given type."""
        return tuple(der for der in self.ders if der.kind == kind)


def _read_only(values: object, dtype: type = float) -> np.ndarray:
    array = np.array(values, dtype=dtype)
    array.flags.writeable = False
    return array


def _split_sections(source: str) -> dict[str, str]:
    """Split case file content into its sections."""

    sections: dict[str, list[str]] = {}
    current: str | None = None

    for raw in source.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        match = _SECTION_HEADER.match(line)
        if match:
            current = match.group(1).lower()
            if current in sections:
                to_raise = InputError(f"Repeated case file section: [{current}]")
                LOGGER.critical(to_raise)
                raise to_raise
            sections[current] = []
        elif current is None:
            to_raise = InputError("Case file content found before a section header")
            LOGGER.critical(to_raise)
            raise to_raise
        else:
            sections[current].append(line)

    return {name: "\n".join(rows) for name, rows in sections.items()}


def _read_section(sections: dict[str, str], name: str) -> pd.DataFrame:
    """Parse a case file section into a data frame with the required columns."""

    text = sections.get(name, "")
    if not text:
        return pd.DataFrame(columns=list(SECTION_COLUMNS[name]))

    try:
        frame = pd.read_csv(StringIO(text), skipinitialspace=True)
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as excep:
        to_raise = InputError(f"Could not parse case section [{name}]: {excep}")
        LOGGER.critical(to_raise)
        raise to_raise from excep

    frame.columns = [str(col).strip().lower() for col in frame.columns]
    missing = set(SECTION_COLUMNS[name]) - set(frame.columns)
    if missing:
        to_raise = InputError(
            f"Case section [{name}] missing columns: {', '.join(sorted(missing))}"
        )
        LOGGER.critical(to_raise)
        raise to_raise

    return frame


def load_case(
    source: str, default_ampacity: float = 400.0, digest: str = ""
) -> CaseData:
    """Load a radial distribution case from case file content.

    Args:
        source: The text content of a case file.
        default_ampacity: The current limit used for lines without an ampacity, [A].
        digest: An optional digest identifying the source.

    Raises:
        InputError: if the content is malformed or holds invalid values.
        TopologyError: if the lines do not form a tree rooted at bus 1.
        CaseReferenceError: if a DER or line refers to an unknown bus.
    """

    sections = _split_sections(source)
    for required in ("bus", "line"):
        if required not in sections:
            to_raise = InputError(f"Case file missing [{required}] section")
            LOGGER.critical(to_raise)
            raise to_raise

    bus_frame = _read_section(sections, "bus")
    line_frame = _read_section(sections, "line")
    der_frame = _read_section(sections, "der")

    try:
        buses = tuple(
            Bus(id=int(row.id), p_load=float(row.p_kw), q_load=float(row.q_kvar))
            for row in bus_frame.itertuples(index=False)
        )

        if "amp" not in line_frame.columns:
            line_frame["amp"] = np.nan
        amps = pd.to_numeric(line_frame["amp"], errors="coerce")
        n_defaulted = int(amps.isna().sum())
        if n_defaulted:
            LOGGER.warning(
                "Default ampacity of %s A applied to %i lines",
                default_ampacity,
                n_defaulted,
            )
        amps = amps.fillna(default_ampacity)

        lines = tuple(
            Line(
                from_bus=int(frm),
                to_bus=int(to),
                r=float(r_ohm),
                x=float(x_ohm),
                ampacity=float(amp),
            )
            for frm, to, r_ohm, x_ohm, amp in zip(
                line_frame["from"],
                line_frame["to"],
                line_frame["r_ohm"],
                line_frame["x_ohm"],
                amps,
            )
        )

        ders = tuple(
            DerPlacement(
                node=int(row.node),
                kind=str(row.type).strip().upper(),
                rating=float(row.rating),
            )
            for row in der_frame.itertuples(index=False)
        )
    except (TypeError, ValueError) as excep:
        to_raise = InputError(f"Invalid value in case file: {excep}")
        LOGGER.critical(to_raise)
        raise to_raise from excep

    case = CaseData(buses=buses, lines=lines, ders=ders, digest=digest)

    LOGGER.info(
        "Case loaded: %i buses, %i lines, %i DER units, load %.2f kW / %.2f kVar",
        case.n_buses,
        len(case.lines),
        len(case.ders),
        case.p_load.sum(),
        case.q_load.sum(),
    )
    return case


def load_case_file(path: Path, default_ampacity: float = 400.0) -> CaseData:
    """Load a radial distribution case from a case file.

    Args:
        path: The path to the case file.
        default_ampacity: The current limit used for lines without an ampacity, [A].

    Raises:
        InputError: if the file does not exist or cannot be decoded.
    """

    try:
        content = path.read_bytes()
    except (FileNotFoundError, IsADirectoryError) as excep:
        to_raise = InputError(f"case file not found: {path}")
        LOGGER.critical(to_raise)
        raise to_raise from excep

    try:
        text = content.decode("utf-8")
    except UnicodeDecodeError as excep:
        to_raise = InputError(f"Could not decode case file {path}: {excep}")
        LOGGER.critical(to_raise)
        raise to_raise from excep

    LOGGER.info("Loading case file: %s", path)
    return load_case(
        text,
        default_ampacity=default_ampacity,
        digest=hashlib.sha256(content).hexdigest(),
    )
