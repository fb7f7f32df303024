from typing import Dict, FrozenSet, Optional, Protocol, Tuple, Callable, Any
from enum import Enum, IntEnum
from dataclasses import dataclass, field
import hashlib

from typing_extensions import TypeAlias


ALGORITHM_VERSION = "crdeck-1"
MAX_ORDER = 64
DEFAULT_GUARD_NODES = 10_000_000

# 128-bit content digest of a color value
ColorId: TypeAlias = bytes
Vertex: TypeAlias = int
VertexSet: TypeAlias = FrozenSet[int]


class Command(Enum):
    """Subcommands of the command-line frontend"""
    REFINE = "refine"
    CR = "cr"
    DCR = "dcr"
    WL2 = "wl2"
    COMPARE = "compare"
    DECK = "deck"
    UNFOLD = "unfold"
    BLOCKCUT = "blockcut"
    ENUMERATE = "enumerate"
    CLASSIFY_DECK = "classify-deck"
    VERIFY = "verify"
    PROBE_OPENQ = "probe-openq"


class Experiment(Enum):
    """Corpus experiments reachable through `verify`"""
    MAIN = "main"
    HARARY = "harary"
    HIERARCHY = "hierarchy"
    LITTLE = "little"
    NASH = "nash"
    COVER = "cover"
    OPEN_QUESTION = "probe-openq"


class CompareMode(Enum):
    """How color classes are compared across graphs"""
    DIGEST = "digest"
    EXACT = "exact"


class OutputFormat(Enum):
    TEXT = "text"
    STRUCTURED = "structured"


class Connectedness(Enum):
    """Verdict of the deck-based connectedness classifier"""
    CONNECTED = "connected"
    DISCONNECTED = "disconnected"
    UNKNOWN = "unknown"


class Verdict(Enum):
    PASS = "PASS"
    FAIL = "FAIL"


class ExitCode(IntEnum):
    """Process exit codes"""
    OK = 0
    ATTENTION = 1
    USAGE = 2
    RESOURCE = 3
    INTEGRITY = 4


@dataclass(frozen=True)
class BlockCutTree:
    """Blocks, cut vertices and their incidence"""
    blocks: Tuple[VertexSet, ...]
    cut_vertices: VertexSet
    # (block index, cut vertex)
    incidence: Tuple[Tuple[int, int], ...]
    leaf_blocks: Tuple[VertexSet, ...]

    def blocks_of(self, vertex: Vertex) -> list[int]:
        return [i for i, block in enumerate(self.blocks) if vertex in block]


@dataclass(frozen=True)
class Coloring:
    """Vertex coloring produced at one refinement round"""
    round: int
    assignment: Tuple[ColorId, ...]

    def partition(self) -> list[VertexSet]:
        classes: Dict[ColorId, set[int]] = {}
        for vertex, color in enumerate(self.assignment):
            classes.setdefault(color, set()).add(vertex)
        return sorted((frozenset(c) for c in classes.values()), key=min)

    @property
    def class_count(self) -> int:
        return len(set(self.assignment))


@dataclass(frozen=True)
class CrInvariant:
    """Multiset of color digests read at a fixed round"""
    order: int
    rounds: int
    colors: Tuple[ColorId, ...]

    @classmethod
    def create(cls, order: int, rounds: int, colors: Tuple[ColorId, ...]) -> 'CrInvariant':
        return cls(order=order, rounds=rounds, colors=tuple(sorted(colors)))

    def sort_key(self) -> Tuple[int, int, Tuple[ColorId, ...]]:
        return (self.order, self.rounds, self.colors)

    def digest(self) -> bytes:
        h = hashlib.blake2b(digest_size=16, person=b"crdeck-cr-inv")
        h.update(self.order.to_bytes(2, "big"))
        h.update(self.rounds.to_bytes(2, "big"))
        for color in self.colors:
            h.update(color)
        return h.digest()

    def hex_colors(self) -> list[str]:
        return [c.hex() for c in self.colors]


@dataclass(frozen=True)
class Wl2Invariant:
    """Multiset of pair-color digests read at the stable round"""
    order: int
    rounds: int
    colors: Tuple[ColorId, ...]

    def digest(self) -> bytes:
        h = hashlib.blake2b(digest_size=16, person=b"crdeck-wl2-inv")
        h.update(self.order.to_bytes(2, "big"))
        h.update(self.rounds.to_bytes(4, "big"))
        for color in self.colors:
            h.update(color)
        return h.digest()


@dataclass(frozen=True)
class DeckInvariant:
    """Multiset of card invariants, one per vertex-deleted subgraph"""
    card_order: int
    cards: Tuple[CrInvariant, ...] = field(default_factory=tuple)

    @classmethod
    def create(cls, card_order: int, cards: list[CrInvariant]) -> 'DeckInvariant':
        return cls(card_order=card_order, cards=tuple(sorted(cards, key=CrInvariant.sort_key)))

    def digest(self) -> bytes:
        h = hashlib.blake2b(digest_size=16, person=b"crdeck-dcr-inv")
        h.update(self.card_order.to_bytes(2, "big"))
        for card in self.cards:
            h.update(card.digest())
        return h.digest()


@dataclass
class CliConfig:
    """Parsed command line"""
    command: Command
    graphs: list[str] = field(default_factory=list)
    n: Optional[int] = None
    depth: Optional[int] = None
    vertex: Optional[int] = None
    experiment: Optional[Experiment] = None
    mode: CompareMode = CompareMode.DIGEST
    output_format: OutputFormat = OutputFormat.TEXT
    jobs: int = 1
    corpus: Optional[str] = None
    out: Optional[str] = None
    index: Optional[str] = None
    guard_nodes: int = DEFAULT_GUARD_NODES
    verbose: bool = False
    quiet: bool = False


class CommandProtocol(Protocol):
    """Protocol for subcommand handlers"""
    def run(self, config: CliConfig) -> int: ...


# Type aliases
LineWriter = Callable[[str], None]
Record = Dict[str, Any]
